//! Möbius function and Euler characteristic.
//!
//! Two independent routes to the Euler characteristic are provided: the sum
//! of all entries of the inverse of the zeta matrix, and the alternating
//! count of strict chains (the simplices of the order complex).

use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

/// The inverse of the zeta matrix of one poset, in exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    n: usize,
    mu: Vec<i64>,
}

impl MobiusTable {
    /// Solves `mu(x,x) = 1`, `mu(x,y) = -sum_{x <= z < y} mu(x,z)` row by row.
    pub fn new(p: &Poset) -> Result<MobiusTable> {
        let n = p.len();
        let mut mu = vec![0i64; n * n];
        for x in p.elements() {
            let row = &mut mu[x * n..(x + 1) * n];
            for &y in p.linear_extension() {
                if !p.leq(x, y) {
                    continue;
                }
                if x == y {
                    row[y] = 1;
                    continue;
                }
                let mut acc = 0i64;
                for z in p.down_set(y, true).iter() {
                    if p.leq(x, z) {
                        acc = acc.checked_add(row[z]).ok_or(Error::Overflow)?;
                    }
                }
                row[y] = acc.checked_neg().ok_or(Error::Overflow)?;
            }
        }
        Ok(MobiusTable { n, mu })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: ElementId, y: ElementId) -> i64 {
        self.mu[x * self.n + y]
    }

    pub fn row(&self, x: ElementId) -> &[i64] {
        &self.mu[x * self.n..(x + 1) * self.n]
    }

    /// Sum of every entry.
    pub fn total(&self) -> Result<i64> {
        self.mu
            .iter()
            .try_fold(0i64, |acc, &v| acc.checked_add(v))
            .ok_or(Error::Overflow)
    }

    /// Checks `zeta * mu = mu * zeta = I` exactly.
    pub fn inverts_zeta_of(&self, p: &Poset) -> bool {
        if p.len() != self.n {
            return false;
        }
        let zeta = |a: usize, b: usize| i64::from(p.leq(a, b));
        for i in 0..self.n {
            for j in 0..self.n {
                let want = i64::from(i == j);
                let mut left = 0i64;
                let mut right = 0i64;
                for k in 0..self.n {
                    left += zeta(i, k) * self.get(k, j);
                    right += self.get(i, k) * zeta(k, j);
                }
                if left != want || right != want {
                    return false;
                }
            }
        }
        true
    }
}

pub fn mobius(p: &Poset) -> Result<MobiusTable> {
    MobiusTable::new(p)
}

/// Sum of all entries of the Möbius table; 0 for the empty poset.
pub fn euler_characteristic(p: &Poset) -> Result<i64> {
    MobiusTable::new(p)?.total()
}

/// `counts[k]` is the number of strict chains `x0 < x1 < ... < xk`.
pub fn chain_counts(p: &Poset) -> Result<Vec<u64>> {
    let n = p.len();
    // ending[x][k]: chains with k+1 elements whose top is x.
    let mut ending: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut counts: Vec<u64> = Vec::new();
    for &y in p.linear_extension() {
        let mut here = vec![1u64];
        for x in p.down_set(y, true).iter() {
            for (k, &c) in ending[x].iter().enumerate() {
                if here.len() <= k + 1 {
                    here.resize(k + 2, 0);
                }
                here[k + 1] = here[k + 1].checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        if counts.len() < here.len() {
            counts.resize(here.len(), 0);
        }
        for (k, &c) in here.iter().enumerate() {
            counts[k] = counts[k].checked_add(c).ok_or(Error::Overflow)?;
        }
        ending[y] = here;
    }
    Ok(counts)
}

/// Alternating sum of [`chain_counts`].
pub fn euler_characteristic_by_chains(p: &Poset) -> Result<i64> {
    let mut chi = 0i64;
    for (k, c) in chain_counts(p)?.into_iter().enumerate() {
        let c = i64::try_from(c).map_err(|_| Error::Overflow)?;
        chi = if k % 2 == 0 {
            chi.checked_add(c)
        } else {
            chi.checked_sub(c)
        }
        .ok_or(Error::Overflow)?;
    }
    Ok(chi)
}

/// `chi(P_{>x})` for every element, from one pass over the strict up-sets.
///
/// With `w(x) = 1 - chi(P_{>x})` the recursion is
/// `w(x) = 1 - sum_{y > x} w(y)`, the alternating count of chains starting
/// at `x`. Used by the reduction loops, which query every element after
/// every removal.
pub fn strict_up_characteristics(p: &Poset) -> Result<Vec<i64>> {
    let n = p.len();
    let mut weight = vec![0i64; n];
    for &x in p.linear_extension().iter().rev() {
        let mut above = 0i64;
        for y in p.up_set(x, true).iter() {
            above = above.checked_add(weight[y]).ok_or(Error::Overflow)?;
        }
        weight[x] = 1i64.checked_sub(above).ok_or(Error::Overflow)?;
    }
    weight
        .into_iter()
        .map(|w| 1i64.checked_sub(w).ok_or(Error::Overflow))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, n11};
    use crate::poset::ElementSet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chain_of_two() {
        let mu = mobius(&Poset::chain(2)).unwrap();
        assert_eq!(
            (mu.get(0, 0), mu.get(1, 1), mu.get(0, 1), mu.get(1, 0)),
            (1, 1, -1, 0)
        );
    }

    #[test]
    fn antichain_is_identity() {
        let mu = mobius(&Poset::antichain(3)).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(mu.get(x, y), i64::from(x == y));
            }
        }
        assert_eq!(euler_characteristic(&Poset::antichain(3)).unwrap(), 3);
    }

    #[test]
    fn diamond_top() {
        let mu = mobius(&fixtures::diamond()).unwrap();
        assert_eq!(mu.get(0, 3), 1);
        assert_eq!(mu.get(0, 1), -1);
        assert!(mu.inverts_zeta_of(&fixtures::diamond()));
    }

    #[test]
    fn empty_poset() {
        assert_eq!(euler_characteristic(&Poset::empty()).unwrap(), 0);
        assert_eq!(euler_characteristic_by_chains(&Poset::empty()).unwrap(), 0);
    }

    #[test]
    fn chain_counts_of_small_chain() {
        let p = Poset::chain(3);
        assert_eq!(chain_counts(&p).unwrap(), vec![3, 3, 1]);
        assert_eq!(euler_characteristic_by_chains(&p).unwrap(), 1);
    }

    #[test]
    fn positive_excursion_set_is_a_circle() {
        use n11::*;
        let p = n11::poset();
        let s = ElementSet::from_ids(11, [B3, M1, M2, M4, T1, T2, T3]).unwrap();
        let (q, _) = p.induced_subposet(&s);
        // 7 points, 11 comparable pairs, 4 three-element chains.
        assert_eq!(chain_counts(&q).unwrap(), vec![7, 11, 4]);
        assert_eq!(euler_characteristic_by_chains(&q).unwrap(), 0);
        assert_eq!(euler_characteristic(&q).unwrap(), 0);
    }

    #[test]
    fn circle_plus_point_has_characteristic_one() {
        let p = fixtures::circle_plus_point();
        assert_eq!(euler_characteristic(&p).unwrap(), 1);
        assert_eq!(euler_characteristic_by_chains(&p).unwrap(), 1);
    }

    #[test]
    fn opposite_has_transposed_mobius() {
        let p = n11::poset();
        let mu = mobius(&p).unwrap();
        let mu_op = mobius(&p.opposite()).unwrap();
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(mu.get(x, y), mu_op.get(y, x));
            }
        }
        assert_eq!(euler_characteristic(&p).unwrap(), 1);
        assert_eq!(euler_characteristic(&p.opposite()).unwrap(), 1);
    }

    #[test]
    fn strict_up_characteristics_match_induced_subposets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = Poset::random(8, 0.45, &mut rng);
            let fast = strict_up_characteristics(&p).unwrap();
            for x in p.elements() {
                let (q, _) = p.induced_subposet(&p.up_set(x, true));
                assert_eq!(fast[x], euler_characteristic(&q).unwrap());
            }
        }
    }
}
