//! Acyclic sensor networks.
//!
//! Targets sit on nodes or on cover edges of the Hasse diagram. The sensor at
//! `y` sees every target inside the prime ideal below it: a node target at
//! `a` when `a <= y`, an edge target on `(a, b)` when `b <= y`. The Euler
//! integral of the resulting counting function is the number of targets,
//! and readings at chi-points can be arbitrarily wrong without changing it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{integrate, integrate_excursion, PosetFunction};
use crate::error::{Error, Result};
use crate::poset::{ElementId, ElementSet, Poset};
use crate::reduction::{chi_minimal_model, TieBreak};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetPosition {
    Node(ElementId),
    /// On the cover edge `(lower, upper)`.
    Edge(ElementId, ElementId),
}

impl TargetPosition {
    pub fn validate(&self, p: &Poset) -> Result<()> {
        match *self {
            TargetPosition::Node(x) => p.check_element(x),
            TargetPosition::Edge(lower, upper) => {
                p.check_element(lower)?;
                p.check_element(upper)?;
                if p.is_cover(lower, upper) {
                    Ok(())
                } else {
                    Err(Error::NotACover { lower, upper })
                }
            }
        }
    }

    /// True iff the sensor at `sensor` detects a target here.
    pub fn detected_by(&self, p: &Poset, sensor: ElementId) -> bool {
        match *self {
            TargetPosition::Node(x) => p.leq(x, sensor),
            TargetPosition::Edge(_, upper) => p.leq(upper, sensor),
        }
    }
}

/// Multiset of target positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TargetSet {
    positions: Vec<TargetPosition>,
}

impl TargetSet {
    pub fn new(positions: Vec<TargetPosition>) -> TargetSet {
        TargetSet { positions }
    }

    pub fn positions(&self) -> &[TargetPosition] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn validate(&self, p: &Poset) -> Result<()> {
        self.positions.iter().try_for_each(|t| t.validate(p))
    }
}

impl FromIterator<TargetPosition> for TargetSet {
    fn from_iter<I: IntoIterator<Item = TargetPosition>>(iter: I) -> Self {
        TargetSet::new(iter.into_iter().collect())
    }
}

/// Sensor readings produced by `targets` on `p`.
pub fn counting_function(p: &Poset, targets: &TargetSet) -> Result<PosetFunction> {
    targets.validate(p)?;
    let mut values = vec![0i64; p.len()];
    for t in targets.positions() {
        let base = match *t {
            TargetPosition::Node(x) => x,
            TargetPosition::Edge(_, upper) => upper,
        };
        for y in p.up_set(base, false).iter() {
            values[y] += 1;
        }
    }
    PosetFunction::new(p, values)
}

#[derive(Clone, Debug)]
pub struct SensorNetwork {
    poset: Poset,
    targets: TargetSet,
    counting: PosetFunction,
}

impl SensorNetwork {
    pub fn new(poset: Poset, targets: TargetSet) -> Result<SensorNetwork> {
        let counting = counting_function(&poset, &targets)?;
        Ok(SensorNetwork {
            poset,
            targets,
            counting,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn targets(&self) -> &TargetSet {
        &self.targets
    }

    pub fn counting(&self) -> &PosetFunction {
        &self.counting
    }
}

/// The Euler integral of the network's readings.
pub fn enumerate_targets(net: &SensorNetwork) -> Result<i64> {
    integrate(&net.poset, &net.counting)
}

/// Replacement readings for broken sensors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NoiseSpec {
    pub corrupted: BTreeMap<ElementId, i64>,
    pub seed: Option<u64>,
}

impl NoiseSpec {
    pub fn new(corrupted: BTreeMap<ElementId, i64>) -> NoiseSpec {
        NoiseSpec {
            corrupted,
            seed: None,
        }
    }

    /// Uniform replacement values in `range` at each of `elements`.
    pub fn random(
        elements: &ElementSet,
        range: std::ops::RangeInclusive<i64>,
        seed: u64,
    ) -> NoiseSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let corrupted = elements
            .iter()
            .map(|x| (x, rng.gen_range(range.clone())))
            .collect();
        NoiseSpec {
            corrupted,
            seed: Some(seed),
        }
    }
}

/// The network's readings with the corrupted sensors replaced. The result
/// is generally not monotone; integrate it with [`integrate`].
pub fn corrupt(net: &SensorNetwork, noise: &NoiseSpec) -> Result<PosetFunction> {
    let mut h = net.counting.clone();
    for (&x, &value) in &noise.corrupted {
        net.poset.check_element(x)?;
        h.set(x, value);
    }
    Ok(h)
}

/// Result of counting on a chi-minimal model with zero readings dropped.
#[derive(Clone, Debug)]
pub struct ReducedEnumeration {
    pub count: i64,
    /// Elements of the original poset that carry the computation.
    pub support: ElementSet,
    /// Elements removed as chi-points, in removal order.
    pub removed: Vec<ElementId>,
}

/// Counts targets on the chi-minimal model of the network, restricted to
/// nodes with a positive reading, by the excursion-set route.
pub fn enumerate_reduced(net: &SensorNetwork, tie_break: &TieBreak) -> Result<ReducedEnumeration> {
    reduced_count(&net.poset, &net.counting, tie_break)
}

/// [`enumerate_reduced`] for raw readings, which must be monotone and
/// non-negative.
pub fn reduced_count(
    p: &Poset,
    readings: &PosetFunction,
    tie_break: &TieBreak,
) -> Result<ReducedEnumeration> {
    readings.check_len(p)?;
    readings.check_non_negative()?;
    readings.check_monotone(p)?;
    let model = chi_minimal_model(p, tie_break)?;
    let mut support = model.survivors();
    for x in model.mapping.iter().copied() {
        if readings.get(x) < 1 {
            support.remove(x);
        }
    }
    let (sub, ids) = p.induced_subposet(&support);
    let count = integrate_excursion(&sub, &readings.restrict(&ids))?;
    Ok(ReducedEnumeration {
        count,
        support,
        removed: model.removal_sequence.iter().map(|r| r.element).collect(),
    })
}

/// Nodes that must carry trusted sensors: the chi-minimal model.
pub fn sensor_placement_plan(p: &Poset, tie_break: &TieBreak) -> Result<ElementSet> {
    Ok(chi_minimal_model(p, tie_break)?.survivors())
}

/// Shape of a layered random network, bottom layer first.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkShape {
    pub layers: Vec<usize>,
    /// Probability of each cover between adjacent layers.
    pub density: f64,
}

/// Layered random network: covers only between adjacent layers, each with
/// probability `density`; targets uniform over nodes and cover edges.
/// Elements are numbered layer by layer from the bottom. Deterministic in `seed`.
pub fn random_network(
    shape: &NetworkShape,
    target_count: usize,
    seed: u64,
) -> Result<SensorNetwork> {
    if shape.layers.is_empty() {
        return Err(Error::InvalidShape("at least one layer is required".into()));
    }
    if !(0.0..=1.0).contains(&shape.density) {
        return Err(Error::InvalidShape(format!(
            "density {} is outside [0, 1]",
            shape.density
        )));
    }
    let n: usize = shape.layers.iter().sum();
    if n == 0 && target_count > 0 {
        return Err(Error::ImpossibleShape {
            elements: n,
            targets: target_count,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covers = Vec::new();
    let mut start = 0;
    for pair in shape.layers.windows(2) {
        let (lower, upper) = (
            start..start + pair[0],
            start + pair[0]..start + pair[0] + pair[1],
        );
        for a in lower {
            for b in upper.clone() {
                if rng.gen_bool(shape.density) {
                    covers.push((a, b));
                }
            }
        }
        start += pair[0];
    }
    let poset = Poset::from_covers(n, covers)?;

    let slots = n + poset.covers().len();
    let targets = (0..target_count)
        .map(|_| {
            let i = rng.gen_range(0..slots);
            if i < n {
                TargetPosition::Node(i)
            } else {
                let (a, b) = poset.covers()[i - n];
                TargetPosition::Edge(a, b)
            }
        })
        .collect();
    SensorNetwork::new(poset, targets)
}
