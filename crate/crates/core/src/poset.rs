//! Finite posets stored as a transitively reduced cover relation together
//! with its reflexive-transitive closure.
//!
//! Elements are dense indices `0..n`. Every subset of a poset is an
//! [`ElementSet`], a bitset over the same index range, so restricting to a
//! filter, an up-set or an excursion set is a cheap set operation.

use std::borrow::Cow;
use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Dense index of an element, `0..n` for a poset with `n` elements.
pub type ElementId = usize;

/// A subset of the elements of some poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_ids<I>(universe: usize, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementId>,
    {
        let mut set = ElementSet::empty(universe);
        for id in ids {
            if id >= universe {
                return Err(Error::ElementOutOfRange { id, len: universe });
            }
            set.bits.insert(id);
        }
        Ok(set)
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        ElementSet { bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Number of elements of the poset this set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.bits.contains(id)
    }

    /// Panics if `id` is outside the universe.
    pub fn insert(&mut self, id: ElementId) {
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: ElementId) {
        if id < self.bits.len() {
            self.bits.set(id, false);
        }
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElementSet { bits }
    }

    pub fn complement(&self) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElementSet { bits }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

/// A finite partial order.
///
/// The cover relation is always transitively reduced and acyclic. `up[x]`
/// holds every `y >= x` and `down[x]` every `y <= x`, both reflexive.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<Option<String>>,
    covers: Vec<(ElementId, ElementId)>,
    upper_covers: Vec<Vec<ElementId>>,
    lower_covers: Vec<Vec<ElementId>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    linear_extension: Vec<ElementId>,
    dropped_covers: Vec<(ElementId, ElementId)>,
}

impl Poset {
    /// Builds a poset from its Hasse diagram.
    ///
    /// Duplicate pairs are ignored. Pairs implied by a longer path are
    /// dropped and can be inspected through [`Poset::dropped_covers`].
    pub fn from_covers<I>(n: usize, covers: I) -> Result<Poset>
    where
        I: IntoIterator<Item = (ElementId, ElementId)>,
    {
        let mut pairs = BTreeSet::new();
        for (lower, upper) in covers {
            for id in [lower, upper] {
                if id >= n {
                    return Err(Error::ElementOutOfRange { id, len: n });
                }
            }
            if lower == upper {
                return Err(Error::CycleDetected(lower));
            }
            pairs.insert((lower, upper));
        }

        let mut successors = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(lower, upper) in &pairs {
            successors[lower].push(upper);
            indegree[upper] += 1;
        }

        // Kahn's algorithm; anything left unvisited sits on a cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<ElementId> = (0..n).filter(|&x| indegree[x] == 0).collect();
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &successors[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&x| indegree[x] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(stuck));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut reach = FixedBitSet::with_capacity(n);
            reach.insert(x);
            for &y in &successors[x] {
                reach.union_with(&up[y]);
            }
            up[x] = reach;
        }

        let mut poset = Poset::from_closure(vec![None; n], up);
        poset.dropped_covers = pairs
            .into_iter()
            .filter(|pair| poset.covers.binary_search(pair).is_err())
            .collect();
        Ok(poset)
    }

    /// Builds a poset from a reflexive, transitive, antisymmetric `up` relation.
    fn from_closure(labels: Vec<Option<String>>, up: Vec<FixedBitSet>) -> Poset {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, above) in up.iter().enumerate() {
            for y in above.ones() {
                down[y].insert(x);
            }
        }

        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].ones() {
                if a == b {
                    continue;
                }
                // a < b is a cover iff the open interval (a, b) is empty.
                let mut between = up[a].clone();
                between.intersect_with(&down[b]);
                if between.count_ones(..) == 2 {
                    covers.push((a, b));
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }

        // Strictly smaller elements have strictly smaller down-sets.
        let mut linear_extension: Vec<ElementId> = (0..n).collect();
        linear_extension.sort_by_key(|&x| (down[x].count_ones(..), x));

        Poset {
            labels,
            covers,
            upper_covers,
            lower_covers,
            up,
            down,
            linear_extension,
            dropped_covers: Vec::new(),
        }
    }

    pub fn empty() -> Poset {
        Poset::from_closure(Vec::new(), Vec::new())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        Poset::from_covers(n, (1..n).map(|i| (i - 1, i))).expect("chains are acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers(n, []).expect("antichains are acyclic")
    }

    /// Random poset on `n` elements: each pair of a hidden random linear
    /// order becomes a relation with probability `density`, and the result
    /// is transitively reduced. Element ids are not topologically sorted.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Poset {
        let mut perm: Vec<ElementId> = (0..n).collect();
        perm.shuffle(rng);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((perm[i], perm[j]));
                }
            }
        }
        Poset::from_covers(n, pairs).expect("pairs follow a linear order")
    }

    /// Attaches labels; `labels.len()` must equal the element count.
    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn label(&self, x: ElementId) -> Option<&str> {
        self.labels.get(x).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// The label of `x`, or its id when unlabeled.
    pub fn name(&self, x: ElementId) -> Cow<'_, str> {
        match self.label(x) {
            Some(label) => Cow::Borrowed(label),
            None => Cow::Owned(x.to_string()),
        }
    }

    /// Cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    /// Input pairs that [`Poset::from_covers`] discarded as transitively implied.
    pub fn dropped_covers(&self) -> &[(ElementId, ElementId)] {
        &self.dropped_covers
    }

    pub fn is_cover(&self, lower: ElementId, upper: ElementId) -> bool {
        self.covers.binary_search(&(lower, upper)).is_ok()
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: ElementId) -> &[ElementId] {
        &self.lower_covers[x]
    }

    /// Elements ordered so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> &[ElementId] {
        &self.linear_extension
    }

    /// `zeta(x, y)`: true iff `x <= y`.
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn check_element(&self, x: ElementId) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                id: x,
                len: self.len(),
            })
        }
    }

    pub fn check_set(&self, s: &ElementSet) -> Result<()> {
        if s.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.len(),
                actual: s.universe(),
            })
        }
    }

    /// `P_{>=x}`, or `P_{>x}` when `strict`.
    pub fn up_set(&self, x: ElementId, strict: bool) -> ElementSet {
        let mut bits = self.up[x].clone();
        if strict {
            bits.set(x, false);
        }
        ElementSet::from_bits(bits)
    }

    /// `P_{<=x}`, or `P_{<x}` when `strict`.
    pub fn down_set(&self, x: ElementId, strict: bool) -> ElementSet {
        let mut bits = self.down[x].clone();
        if strict {
            bits.set(x, false);
        }
        ElementSet::from_bits(bits)
    }

    /// Smallest filter containing `s`.
    pub fn up_closure(&self, s: &ElementSet) -> ElementSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in s.iter() {
            bits.union_with(&self.up[x]);
        }
        ElementSet::from_bits(bits)
    }

    /// Smallest ideal containing `s`.
    pub fn down_closure(&self, s: &ElementSet) -> ElementSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in s.iter() {
            bits.union_with(&self.down[x]);
        }
        ElementSet::from_bits(bits)
    }

    /// True iff `s` is closed upwards. The empty set is a filter.
    pub fn is_filter(&self, s: &ElementSet) -> bool {
        s.universe() == self.len() && s.iter().all(|x| self.up[x].is_subset(s.bits()))
    }

    pub fn is_ideal(&self, s: &ElementSet) -> bool {
        s.universe() == self.len() && s.iter().all(|x| self.down[x].is_subset(s.bits()))
    }

    pub fn minimal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for x in s.iter() {
            if !s.iter().any(|y| self.lt(y, x)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn maximal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for x in s.iter() {
            if !s.iter().any(|y| self.lt(x, y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Restriction of the order to `s`. Returns the subposet together with
    /// the parent id of each of its elements; covers are recomputed.
    pub fn induced_subposet(&self, s: &ElementSet) -> (Poset, Vec<ElementId>) {
        let parent_ids = s.to_vec();
        let k = parent_ids.len();
        let up = parent_ids
            .iter()
            .map(|&px| {
                let mut bits = FixedBitSet::with_capacity(k);
                for (cy, &py) in parent_ids.iter().enumerate() {
                    if self.leq(px, py) {
                        bits.insert(cy);
                    }
                }
                bits
            })
            .collect();
        let labels = parent_ids.iter().map(|&p| self.labels[p].clone()).collect();
        (Poset::from_closure(labels, up), parent_ids)
    }

    /// The poset with every relation reversed, `P^op`.
    pub fn opposite(&self) -> Poset {
        Poset::from_closure(self.labels.clone(), self.down.clone())
    }

    /// Same element count and same order relation; labels are ignored.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.up == other.up
    }
}
