//! Order isomorphism by backtracking.
//!
//! The search is exponential in the worst case and meant for small posets
//! such as cores. Candidates are pruned by a per-element invariant
//! (lower/upper cover degree, down-set and up-set size) and every partial
//! assignment is checked against all previously placed elements.

use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

pub const DEFAULT_ISOMORPHISM_LIMIT: usize = 24;

type Invariant = (usize, usize, usize, usize);

fn invariants(p: &Poset) -> Vec<Invariant> {
    p.elements()
        .map(|x| {
            (
                p.lower_covers(x).len(),
                p.upper_covers(x).len(),
                p.down_set(x, false).len(),
                p.up_set(x, false).len(),
            )
        })
        .collect()
}

/// True iff an order isomorphism `p -> q` exists. Fails with
/// [`Error::SizeLimitExceeded`] above [`DEFAULT_ISOMORPHISM_LIMIT`] elements.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    Ok(find_isomorphism(p, q, DEFAULT_ISOMORPHISM_LIMIT)?.is_some())
}

/// Returns `image` with `image[x]` the element of `q` matched to `x`.
pub fn find_isomorphism(p: &Poset, q: &Poset, limit: usize) -> Result<Option<Vec<ElementId>>> {
    let size = p.len().max(q.len());
    if size > limit {
        return Err(Error::SizeLimitExceeded {
            limit,
            actual: size,
        });
    }
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    let inv_p = invariants(p);
    let inv_q = invariants(q);
    let mut sorted_p = inv_p.clone();
    let mut sorted_q = inv_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(None);
    }

    let mut search = Search {
        p,
        q,
        inv_p: &inv_p,
        inv_q: &inv_q,
        order: p.linear_extension().to_vec(),
        image: vec![usize::MAX; p.len()],
        used: vec![false; q.len()],
    };
    Ok(search.extend(0).then_some(search.image))
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    inv_p: &'a [Invariant],
    inv_q: &'a [Invariant],
    order: Vec<ElementId>,
    image: Vec<ElementId>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in self.q.elements() {
            if self.used[y] || self.inv_p[x] != self.inv_q[y] || !self.consistent(depth, x, y) {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
        }
        self.image[x] = usize::MAX;
        false
    }

    fn consistent(&self, depth: usize, x: ElementId, y: ElementId) -> bool {
        self.order[..depth].iter().all(|&u| {
            let v = self.image[u];
            self.p.leq(u, x) == self.q.leq(v, y) && self.p.leq(x, u) == self.q.leq(y, v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn permuted_chain() {
        let p = Poset::chain(3);
        let q = Poset::from_covers(3, [(2, 0), (0, 1)]).unwrap();
        let image = find_isomorphism(&p, &q, 8).unwrap().unwrap();
        assert_eq!(image, vec![2, 0, 1]);
        assert!(are_isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn chain_is_not_antichain() {
        assert!(!are_isomorphic(&Poset::chain(3), &Poset::antichain(3)).unwrap());
    }

    #[test]
    fn crown_is_self_dual() {
        let c = fixtures::crown4();
        assert!(are_isomorphic(&c, &c.opposite()).unwrap());
    }

    #[test]
    fn two_edges_versus_v_plus_point() {
        let a = Poset::from_covers(4, [(0, 1), (2, 3)]).unwrap();
        let b = Poset::from_covers(4, [(0, 1), (0, 3)]).unwrap();
        assert!(!are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn equal_invariants_but_not_isomorphic() {
        // An 8-crown against two disjoint 4-crowns: every bottom has two
        // upper covers and every top two lower covers in both.
        let eight = Poset::from_covers(
            8,
            [
                (0, 4),
                (0, 5),
                (1, 5),
                (1, 6),
                (2, 6),
                (2, 7),
                (3, 7),
                (3, 4),
            ],
        )
        .unwrap();
        let two_fours = Poset::from_covers(
            8,
            [
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 6),
                (3, 7),
            ],
        )
        .unwrap();
        assert_eq!(
            {
                let mut v = invariants(&eight);
                v.sort();
                v
            },
            {
                let mut v = invariants(&two_fours);
                v.sort();
                v
            }
        );
        assert!(!are_isomorphic(&eight, &two_fours).unwrap());
        assert!(are_isomorphic(&eight, &eight.opposite()).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let big = Poset::chain(DEFAULT_ISOMORPHISM_LIMIT + 1);
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
