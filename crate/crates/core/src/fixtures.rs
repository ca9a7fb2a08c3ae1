//! Small reference posets and networks with hand-checked values, shared by
//! the unit tests, the integration suites and the CLI examples.

use crate::poset::{ElementId, Poset};
use crate::sensor::TargetPosition;

/// Three-layer network with 11 nodes: tops `t1..t3`, middles `m1..m4`,
/// bottoms `b1..b4`. It has no beat points, its only chi-points are `b2`
/// and `b3`, and the strict up-set of `b2` is the fence
/// `t1 > m1 < t2 > m3 < t3`.
pub mod n11 {
    use super::*;

    pub const T1: ElementId = 0;
    pub const T2: ElementId = 1;
    pub const T3: ElementId = 2;
    pub const M1: ElementId = 3;
    pub const M2: ElementId = 4;
    pub const M3: ElementId = 5;
    pub const M4: ElementId = 6;
    pub const B1: ElementId = 7;
    pub const B2: ElementId = 8;
    pub const B3: ElementId = 9;
    pub const B4: ElementId = 10;

    pub const LABELS: [&str; 11] = [
        "t1", "t2", "t3", "m1", "m2", "m3", "m4", "b1", "b2", "b3", "b4",
    ];

    pub const COVERS: [(ElementId, ElementId); 16] = [
        (M1, T1),
        (M2, T1),
        (M1, T2),
        (M2, T2),
        (M3, T2),
        (M4, T2),
        (M3, T3),
        (M4, T3),
        (B1, M1),
        (B2, M1),
        (B1, M2),
        (B3, M2),
        (B2, M3),
        (B4, M3),
        (B3, M4),
        (B4, M4),
    ];

    /// Sensor readings produced by [`targets`], indexed by element id.
    pub const COUNTING: [i64; 11] = [3, 4, 3, 1, 1, 0, 2, 0, 0, 1, 0];

    pub fn poset() -> Poset {
        Poset::from_covers(11, COVERS)
            .and_then(|p| p.with_labels(LABELS.iter().map(|l| Some(l.to_string())).collect()))
            .expect("fixture is a valid poset")
    }

    /// Six targets: five on edges and one sitting on node `b3`.
    pub fn targets() -> Vec<TargetPosition> {
        vec![
            TargetPosition::Edge(M1, T1),
            TargetPosition::Edge(M2, T2),
            TargetPosition::Edge(M4, T3),
            TargetPosition::Edge(B1, M1),
            TargetPosition::Edge(B4, M4),
            TargetPosition::Node(B3),
        ]
    }

    /// A different placement of six targets with the same readings.
    pub fn targets_moved() -> Vec<TargetPosition> {
        vec![
            TargetPosition::Edge(M1, T1),
            TargetPosition::Edge(M3, T2),
            TargetPosition::Edge(M4, T3),
            TargetPosition::Edge(B1, M1),
            TargetPosition::Edge(B4, M4),
            TargetPosition::Node(B3),
        ]
    }
}

/// Two tops over two bottoms (a circle) next to an isolated point.
/// Ids: tops 0, 1; bottoms 2, 3; isolated 4. Euler characteristic 1.
pub fn circle_plus_point() -> Poset {
    Poset::from_covers(5, [(2, 0), (3, 0), (2, 1), (3, 1)]).expect("valid fixture")
}

/// [`circle_plus_point`] with a new global minimum, id 5. The minimum is a
/// chi-point but not a weak down-beat point.
pub fn circle_plus_point_with_bottom() -> Poset {
    Poset::from_covers(6, [(2, 0), (3, 0), (2, 1), (3, 1), (5, 2), (5, 3), (5, 4)])
        .expect("valid fixture")
}

/// Bottoms 0, 1 below tops 2, 3; all four covers. A circle, Euler characteristic 0.
pub fn crown4() -> Poset {
    Poset::from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid fixture")
}

/// Bottom 0; middles 1, 2; top 3.
pub fn diamond() -> Poset {
    Poset::from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).expect("valid fixture")
}
