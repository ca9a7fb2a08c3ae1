//! Maps between posets and the transport of functions along them.

use crate::calculus::{integrate, PosetFunction};
use crate::error::{Error, Result};
use crate::mobius::euler_characteristic;
use crate::poset::{ElementId, ElementSet, Poset};
use crate::reduction::TieBreak;

/// A map of elements `domain -> codomain`, stored as the image of each
/// domain element. Order preservation is checked by the operations that
/// need it, not at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetMap {
    image: Vec<ElementId>,
    codomain_len: usize,
}

impl PosetMap {
    pub fn new(domain: &Poset, codomain: &Poset, image: Vec<ElementId>) -> Result<PosetMap> {
        if image.len() != domain.len() {
            return Err(Error::SizeMismatch {
                expected: domain.len(),
                actual: image.len(),
            });
        }
        for &y in &image {
            codomain.check_element(y)?;
        }
        Ok(PosetMap {
            image,
            codomain_len: codomain.len(),
        })
    }

    pub fn identity(p: &Poset) -> PosetMap {
        PosetMap {
            image: p.elements().collect(),
            codomain_len: p.len(),
        }
    }

    pub fn constant(domain: &Poset, codomain: &Poset, value: ElementId) -> Result<PosetMap> {
        PosetMap::new(domain, codomain, vec![value; domain.len()])
    }

    /// Inclusion of an induced subposet given by its parent ids.
    pub fn inclusion(parent_ids: &[ElementId], parent: &Poset) -> Result<PosetMap> {
        for &y in parent_ids {
            parent.check_element(y)?;
        }
        Ok(PosetMap {
            image: parent_ids.to_vec(),
            codomain_len: parent.len(),
        })
    }

    pub fn domain_len(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_len(&self) -> usize {
        self.codomain_len
    }

    pub fn image(&self) -> &[ElementId] {
        &self.image
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x]
    }

    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_ids(self.codomain_len, self.image.iter().copied())
            .expect("image ids are in range")
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PosetMap) -> Result<PosetMap> {
        if then.domain_len() != self.codomain_len {
            return Err(Error::SizeMismatch {
                expected: self.codomain_len,
                actual: then.domain_len(),
            });
        }
        Ok(PosetMap {
            image: self.image.iter().map(|&y| then.image[y]).collect(),
            codomain_len: then.codomain_len,
        })
    }

    /// `{x | f(x) in s}`.
    pub fn preimage(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.image.len());
        for (x, &y) in self.image.iter().enumerate() {
            if s.contains(y) {
                out.insert(x);
            }
        }
        out
    }

    fn check_shape(&self, domain: &Poset, codomain: &Poset) -> Result<()> {
        if self.image.len() != domain.len() {
            return Err(Error::SizeMismatch {
                expected: domain.len(),
                actual: self.image.len(),
            });
        }
        if self.codomain_len != codomain.len() {
            return Err(Error::SizeMismatch {
                expected: codomain.len(),
                actual: self.codomain_len,
            });
        }
        Ok(())
    }

    /// Fails on the first cover whose images are not ordered.
    pub fn check_order_preserving(&self, domain: &Poset, codomain: &Poset) -> Result<()> {
        self.check_shape(domain, codomain)?;
        for &(lower, upper) in domain.covers() {
            if !codomain.leq(self.image[lower], self.image[upper]) {
                return Err(Error::NotOrderPreserving { lower, upper });
            }
        }
        Ok(())
    }

    pub fn is_order_preserving(&self, domain: &Poset, codomain: &Poset) -> bool {
        self.check_order_preserving(domain, codomain).is_ok()
    }
}

/// `(f_* h)(x) = integral of h over f^{-1}(Q_{<=x})`, the preimage of the
/// prime ideal of `x` in the codomain. Empty preimages integrate to 0.
pub fn pushforward(
    domain: &Poset,
    codomain: &Poset,
    f: &PosetMap,
    h: &PosetFunction,
) -> Result<PosetFunction> {
    f.check_order_preserving(domain, codomain)?;
    h.check_len(domain)?;
    let values = codomain
        .elements()
        .map(|x| {
            let ideal = f.preimage(&codomain.down_set(x, false));
            let (sub, ids) = domain.induced_subposet(&ideal);
            integrate(&sub, &h.restrict(&ids))
        })
        .collect::<Result<Vec<_>>>()?;
    PosetFunction::new(codomain, values)
}

/// `f^* h = h ∘ f`. The map need not be order-preserving.
pub fn pullback(f: &PosetMap, h: &PosetFunction) -> Result<PosetFunction> {
    if h.len() != f.codomain_len() {
        return Err(Error::SizeMismatch {
            expected: f.codomain_len(),
            actual: h.len(),
        });
    }
    Ok(PosetFunction::from_values(
        f.image().iter().map(|&y| h.get(y)).collect(),
    ))
}

/// True iff `chi(f^{-1}(Q_{>=x})) = 1` for every codomain element `x`.
pub fn is_chi_distinguished(domain: &Poset, codomain: &Poset, f: &PosetMap) -> Result<bool> {
    f.check_order_preserving(domain, codomain)?;
    for x in codomain.elements() {
        let filter = f.preimage(&codomain.up_set(x, false));
        if euler_characteristic(&domain.induced_subposet(&filter).0)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `r` is idempotent and inflationary (`r(x) >= x`).
pub fn is_ascending_closure_operator(p: &Poset, r: &PosetMap) -> Result<bool> {
    if r.domain_len() != r.codomain_len() {
        return Err(Error::NotEndomap);
    }
    r.check_order_preserving(p, p)?;
    Ok(p.elements()
        .all(|x| r.apply(r.apply(x)) == r.apply(x) && p.leq(x, r.apply(x))))
}

/// Composite of down-beat retractions: up to `max_steps` times, take the
/// least down-beat point `x` of what remains (it has a single upper cover
/// `c`) and send everything currently mapped to `x` onto `c`. The result is
/// an ascending closure operator on `p` whose image is what remains.
pub fn down_beat_closure(p: &Poset, tie_break: &TieBreak, max_steps: usize) -> PosetMap {
    let rank = tie_break.ranks(p.len());
    let mut image: Vec<ElementId> = p.elements().collect();
    let mut keep = ElementSet::full(p.len());
    for _ in 0..max_steps {
        let (current, ids) = p.induced_subposet(&keep);
        let beat = current
            .elements()
            .filter(|&x| current.upper_covers(x).len() == 1)
            .min_by_key(|&x| rank[ids[x]]);
        let Some(x) = beat else { break };
        let (from, to) = (ids[x], ids[current.upper_covers(x)[0]]);
        for y in image.iter_mut() {
            if *y == from {
                *y = to;
            }
        }
        keep.remove(from);
    }
    PosetMap {
        image,
        codomain_len: p.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, n11};

    #[test]
    fn pushforward_to_a_point_is_the_integral() {
        let p = n11::poset();
        let h = PosetFunction::new(&p, n11::COUNTING.to_vec()).unwrap();
        let pt = Poset::chain(1);
        let f = PosetMap::constant(&p, &pt, 0).unwrap();
        assert_eq!(pushforward(&p, &pt, &f, &h).unwrap().values(), &[6]);
    }

    #[test]
    fn pushforward_along_identity() {
        let p = n11::poset();
        let h = PosetFunction::from_fn(&p, |x| (x as i64 * 7) % 5 - 2);
        assert_eq!(pushforward(&p, &p, &PosetMap::identity(&p), &h).unwrap(), h);
    }

    #[test]
    fn pushforward_of_point_into_chain() {
        let pt = Poset::chain(1);
        let uv = Poset::chain(2);
        let f = PosetMap::new(&pt, &uv, vec![1]).unwrap();
        let h = PosetFunction::new(&pt, vec![1]).unwrap();
        assert_eq!(pushforward(&pt, &uv, &f, &h).unwrap().values(), &[0, 1]);
    }

    #[test]
    fn pushforward_rejects_order_reversal() {
        let c = Poset::chain(2);
        let flip = PosetMap::new(&c, &c, vec![1, 0]).unwrap();
        let h = PosetFunction::constant(&c, 1);
        assert_eq!(
            pushforward(&c, &c, &flip, &h),
            Err(Error::NotOrderPreserving { lower: 0, upper: 1 })
        );
        // Pullback does not care.
        assert_eq!(
            pullback(&flip, &PosetFunction::new(&c, vec![3, 4]).unwrap())
                .unwrap()
                .values(),
            &[4, 3]
        );
    }

    #[test]
    fn pullbacks() {
        let p = n11::poset();
        let h = PosetFunction::new(&p, n11::COUNTING.to_vec()).unwrap();
        assert_eq!(pullback(&PosetMap::identity(&p), &h).unwrap(), h);
        let c = PosetMap::constant(&p, &p, n11::T2).unwrap();
        assert_eq!(pullback(&c, &h).unwrap(), PosetFunction::constant(&p, 4));

        let mut keep = ElementSet::full(11);
        keep.remove(n11::B2);
        let (sub, ids) = p.induced_subposet(&keep);
        let inc = PosetMap::inclusion(&ids, &p).unwrap();
        let pulled = pullback(&inc, &h).unwrap();
        assert_eq!(pulled.len(), 10);
        assert_eq!(pulled, h.restrict(&ids));
        assert!(is_chi_distinguished(&sub, &p, &inc).unwrap());
    }

    #[test]
    fn chi_distinguished_maps() {
        let p = n11::poset();
        assert!(is_chi_distinguished(&p, &p, &PosetMap::identity(&p)).unwrap());

        let crown = fixtures::crown4();
        let pt = Poset::chain(1);
        let f = PosetMap::new(&pt, &crown, vec![0]).unwrap();
        assert!(!is_chi_distinguished(&pt, &crown, &f).unwrap());

        // Removing a non-chi-point (a top) breaks the property.
        let mut keep = ElementSet::full(11);
        keep.remove(n11::T1);
        let (sub, ids) = p.induced_subposet(&keep);
        let inc = PosetMap::inclusion(&ids, &p).unwrap();
        assert!(!is_chi_distinguished(&sub, &p, &inc).unwrap());
    }

    #[test]
    fn closure_operators() {
        let c = Poset::chain(2);
        assert!(is_ascending_closure_operator(&c, &PosetMap::identity(&c)).unwrap());
        let up = PosetMap::constant(&c, &c, 1).unwrap();
        assert!(is_ascending_closure_operator(&c, &up).unwrap());
        let down = PosetMap::constant(&c, &c, 0).unwrap();
        assert!(!is_ascending_closure_operator(&c, &down).unwrap());

        let pt = Poset::chain(1);
        let into = PosetMap::new(&pt, &c, vec![0]).unwrap();
        assert_eq!(
            is_ascending_closure_operator(&c, &into),
            Err(Error::NotEndomap)
        );
    }

    #[test]
    fn retraction_closure_on_a_chain() {
        let c = Poset::chain(4);
        let r = down_beat_closure(&c, &TieBreak::Ascending, usize::MAX);
        assert_eq!(r.image(), &[3, 3, 3, 3]);
        assert!(is_ascending_closure_operator(&c, &r).unwrap());
        let r = down_beat_closure(&c, &TieBreak::Descending, 1);
        assert_eq!(r.image(), &[0, 1, 3, 3]);
        assert!(is_ascending_closure_operator(&c, &r).unwrap());
    }
}
