//! Reducible points: beat points, weak beat points and chi-points, together
//! with the removal loops that produce cores and chi-minimal models.
//!
//! Naming follows the convention where a *down-beat* point `x` is one whose
//! strict up-set `P_{>x}` has a unique minimal element, i.e. `x` has exactly
//! one upper cover. Much of the finite-space literature calls this an
//! up-beat point; the two conventions differ only in the name.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::mobius::{euler_characteristic, strict_up_characteristics};
use crate::poset::{ElementId, ElementSet, Poset};

/// Which element to remove first when several qualify.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest id first.
    #[default]
    Ascending,
    /// Largest id first.
    Descending,
    /// Earlier in the list first; ids not listed go last, by ascending id.
    Priority(Vec<ElementId>),
}

impl TieBreak {
    /// A uniformly random priority order over `0..n`.
    pub fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TieBreak {
        let mut order: Vec<ElementId> = (0..n).collect();
        order.shuffle(rng);
        TieBreak::Priority(order)
    }

    pub(crate) fn ranks(&self, n: usize) -> Vec<usize> {
        match self {
            TieBreak::Ascending => (0..n).collect(),
            TieBreak::Descending => (0..n).map(|x| n - 1 - x).collect(),
            TieBreak::Priority(order) => {
                let mut rank: Vec<usize> = (0..n).map(|x| order.len() + x).collect();
                for (i, &x) in order.iter().enumerate() {
                    if x < n && rank[x] >= order.len() {
                        rank[x] = i;
                    }
                }
                rank
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PointFlags {
    pub down_beat: bool,
    pub up_beat: bool,
    pub weak_down_beat: bool,
    pub weak_up_beat: bool,
    pub chi_point: bool,
}

/// Per-element verdicts of [`classify_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    flags: Vec<PointFlags>,
}

impl PointClass {
    pub fn flags(&self, x: ElementId) -> PointFlags {
        self.flags[x]
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    fn select(&self, pick: impl Fn(&PointFlags) -> bool) -> ElementSet {
        let mut set = ElementSet::empty(self.flags.len());
        for (x, f) in self.flags.iter().enumerate() {
            if pick(f) {
                set.insert(x);
            }
        }
        set
    }

    pub fn down_beat(&self) -> ElementSet {
        self.select(|f| f.down_beat)
    }

    pub fn up_beat(&self) -> ElementSet {
        self.select(|f| f.up_beat)
    }

    pub fn beat(&self) -> ElementSet {
        self.select(|f| f.down_beat || f.up_beat)
    }

    pub fn weak_down_beat(&self) -> ElementSet {
        self.select(|f| f.weak_down_beat)
    }

    pub fn weak_up_beat(&self) -> ElementSet {
        self.select(|f| f.weak_up_beat)
    }

    pub fn chi_points(&self) -> ElementSet {
        self.select(|f| f.chi_point)
    }
}

/// Classifies every element straight from the definitions: unique minimal
/// element of `P_{>x}`, contractibility of `P_{>x}`, and `chi(P_{>x}) = 1`.
/// Up-flags are the down-flags of the opposite poset.
pub fn classify_points(p: &Poset) -> Result<PointClass> {
    let opposite = p.opposite();
    let down = down_flags(p)?;
    let up = down_flags(&opposite)?;
    let flags = down
        .into_iter()
        .zip(up)
        .map(
            |((down_beat, weak_down_beat, chi_point), (up_beat, weak_up_beat, _))| PointFlags {
                down_beat,
                up_beat,
                weak_down_beat,
                weak_up_beat,
                chi_point,
            },
        )
        .collect();
    Ok(PointClass { flags })
}

fn down_flags(p: &Poset) -> Result<Vec<(bool, bool, bool)>> {
    p.elements()
        .map(|x| {
            let above = p.up_set(x, true);
            let beat = p.minimal_elements(&above).len() == 1;
            let (sub, _) = p.induced_subposet(&above);
            let weak = is_contractible(&sub);
            let chi = euler_characteristic(&sub)? == 1;
            Ok((beat, weak, chi))
        })
        .collect()
}

/// Chi-points of `p`, i.e. elements with `chi(P_{>x}) = 1`.
pub fn chi_points(p: &Poset) -> Result<ElementSet> {
    let chi = strict_up_characteristics(p)?;
    ElementSet::from_ids(p.len(), p.elements().filter(|&x| chi[x] == 1))
}

/// Beat points of `p`: exactly one upper cover (down-beat) or exactly one
/// lower cover (up-beat).
pub fn beat_points(p: &Poset) -> ElementSet {
    let mut set = ElementSet::empty(p.len());
    for x in p.elements() {
        if p.upper_covers(x).len() == 1 || p.lower_covers(x).len() == 1 {
            set.insert(x);
        }
    }
    set
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RemovalReason {
    DownBeat,
    UpBeat,
    ChiPoint,
}

impl RemovalReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RemovalReason::DownBeat => "down_beat",
            RemovalReason::UpBeat => "up_beat",
            RemovalReason::ChiPoint => "chi_point",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    /// Id in the original poset.
    pub element: ElementId,
    pub reason: RemovalReason,
}

/// Outcome of a removal loop.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub removal_sequence: Vec<Removal>,
    pub result: Poset,
    /// Original id of each element of `result`.
    pub mapping: Vec<ElementId>,
    parent_len: usize,
}

impl ReductionReport {
    /// Surviving elements as a subset of the original poset.
    pub fn survivors(&self) -> ElementSet {
        ElementSet::from_ids(self.parent_len, self.mapping.iter().copied())
            .expect("mapping holds parent ids")
    }

    pub fn removed(&self) -> ElementSet {
        self.survivors().complement()
    }

    /// Re-applies the removal sequence to `original`.
    pub fn replay(&self, original: &Poset) -> Poset {
        let mut keep = ElementSet::full(original.len());
        for r in &self.removal_sequence {
            keep.remove(r.element);
        }
        original.induced_subposet(&keep).0
    }
}

fn reduce<F>(p: &Poset, tie_break: &TieBreak, mut candidates: F) -> Result<ReductionReport>
where
    F: FnMut(&Poset) -> Result<Vec<(ElementId, RemovalReason)>>,
{
    let rank = tie_break.ranks(p.len());
    let mut keep = ElementSet::full(p.len());
    let mut removal_sequence = Vec::new();
    loop {
        let (current, mapping) = p.induced_subposet(&keep);
        let next = candidates(&current)?
            .into_iter()
            .map(|(x, reason)| (mapping[x], reason))
            .min_by_key(|&(x, _)| rank[x]);
        match next {
            Some((element, reason)) => {
                keep.remove(element);
                removal_sequence.push(Removal { element, reason });
            }
            None => {
                return Ok(ReductionReport {
                    removal_sequence,
                    result: current,
                    mapping,
                    parent_len: p.len(),
                })
            }
        }
    }
}

/// Removes beat points one at a time, least under `tie_break` first, until
/// none remain. A point that is both down- and up-beat is reported as down-beat.
pub fn core(p: &Poset, tie_break: &TieBreak) -> ReductionReport {
    reduce(p, tie_break, |q| {
        Ok(q.elements()
            .filter_map(|x| {
                if q.upper_covers(x).len() == 1 {
                    Some((x, RemovalReason::DownBeat))
                } else if q.lower_covers(x).len() == 1 {
                    Some((x, RemovalReason::UpBeat))
                } else {
                    None
                }
            })
            .collect())
    })
    .expect("beat-point detection cannot fail")
}

/// True iff the core is a single point. The empty poset is not contractible.
pub fn is_contractible(p: &Poset) -> bool {
    !p.is_empty() && core(p, &TieBreak::Ascending).result.len() == 1
}

/// Removes chi-points one at a time, recomputing after every removal, until
/// none remain. With [`TieBreak::Ascending`] this is the canonical model.
pub fn chi_minimal_model(p: &Poset, tie_break: &TieBreak) -> Result<ReductionReport> {
    reduce(p, tie_break, |q| {
        let chi = strict_up_characteristics(q)?;
        Ok(q.elements()
            .filter(|&x| chi[x] == 1)
            .map(|x| (x, RemovalReason::ChiPoint))
            .collect())
    })
}
