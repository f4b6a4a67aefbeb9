//! Worked examples bundled with the crate.

use crate::algebra::SquareMatrix;
use crate::arrangement::ArrangementSystem;
use crate::corridor::CorridorSet;
use crate::graph::LabeledDigraph;

pub const PROBABILISTIC_CAT: &str = include_str!("../fixtures/probabilistic_cat.json");
pub const PROBABILISTIC_CAT_CORRIDORS: &str = include_str!("../fixtures/probabilistic_cat_corridors.json");
pub const DISTANCE_CAT: &str = include_str!("../fixtures/distance_cat.json");
pub const DISTANCE_CAT_MATRIX: &str = include_str!("../fixtures/distance_cat_matrix.json");
pub const FINAL_EXAMPLE_SYSTEM: &str = include_str!("../fixtures/final_example_system.json");
pub const FINAL_EXAMPLE_MATRIX: &str = include_str!("../fixtures/final_example_matrix.json");

/// Six rooms with numeric transition probabilities.
pub fn probabilistic_cat() -> LabeledDigraph {
    serde_json::from_str(PROBABILISTIC_CAT).expect("bundled graph")
}

/// The corridor {2,3,4} with constant 1/5.
pub fn probabilistic_cat_corridors() -> Vec<CorridorSet> {
    serde_json::from_str(PROBABILISTIC_CAT_CORRIDORS).expect("bundled corridors")
}

/// Six rooms with symbolic directional distances.
pub fn distance_cat() -> LabeledDigraph {
    serde_json::from_str(DISTANCE_CAT).expect("bundled graph")
}

/// The published extended distance matrix of [`distance_cat`].
pub fn distance_cat_matrix() -> SquareMatrix {
    serde_json::from_str(DISTANCE_CAT_MATRIX).expect("bundled matrix")
}

/// Three generic lines in the plane glued to a point on the line by one corridor.
pub fn final_example_system() -> ArrangementSystem {
    serde_json::from_str(FINAL_EXAMPLE_SYSTEM).expect("bundled arrangement system")
}

/// The published 9×9 distance matrix of [`final_example_system`].
pub fn final_example_matrix() -> SquareMatrix {
    serde_json::from_str(FINAL_EXAMPLE_MATRIX).expect("bundled matrix")
}
