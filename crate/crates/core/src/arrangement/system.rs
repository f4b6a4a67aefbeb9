//! Several arrangements whose chamber graphs are glued along corridors.

use serde::{Deserialize, Serialize};

use super::{enumerate_faces, Arrangement, FaceSet};
use crate::corridor::{glue_system, CorridorSet};
use crate::error::{Error, Result};
use crate::factorization::{verify_distance_blocks, FactorizationReport};
use crate::graph::LabeledDigraph;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedArrangement {
    pub name: String,
    pub arrangement: Arrangement,
}

/// Chamber rooms are named `<part>:<sign vector>`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementSystem {
    pub parts: Vec<NamedArrangement>,
    pub corridors: Vec<CorridorSet>,
}

impl ArrangementSystem {
    pub fn face_sets(&self) -> Result<Vec<FaceSet>> {
        self.parts.iter().map(|p| enumerate_faces(&p.arrangement)).collect()
    }

    fn graph_from(&self, faces: &[FaceSet]) -> Result<LabeledDigraph> {
        let mut names: Vec<&str> = self.parts.iter().map(|p| p.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadArrangement("duplicate part names".into()));
        }
        let parts = self
            .parts
            .iter()
            .zip(faces)
            .map(|(p, f)| Ok(f.chamber_graph()?.with_prefix(&format!("{}:", p.name))))
            .collect::<Result<Vec<_>>>()?;
        glue_system(&parts, &self.corridors)
    }

    /// The glued distance graph.
    pub fn graph(&self) -> Result<LabeledDigraph> {
        self.graph_from(&self.face_sets()?)
    }
}

/// Corridor factors times one face product per arrangement; each block of the
/// corridor partition must be exactly the chamber set of one part.
pub fn verify_prop_arrangement_corridor(system: &ArrangementSystem) -> Result<FactorizationReport> {
    let faces = system.face_sets()?;
    let g = system.graph_from(&faces)?;
    verify_distance_blocks(&g, &system.corridors, |rooms, _| {
        let part = rooms[0].rsplit_once(':').map(|(p, _)| p).unwrap_or_default();
        let k = system
            .parts
            .iter()
            .position(|p| p.name == part)
            .ok_or_else(|| Error::UnknownRoom(rooms[0].clone()))?;
        let expected: Vec<String> = faces[k]
            .chamber_names()
            .into_iter()
            .map(|c| format!("{part}:{c}"))
            .collect();
        let mut got = rooms.to_vec();
        got.sort();
        let mut want = expected;
        want.sort();
        if got != want {
            return Err(Error::BadArrangement(format!(
                "block {{{}}} is not the chamber set of part `{part}`",
                rooms.join(",")
            )));
        }
        faces[k].varchenko_rhs()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_laplace, poly, Polynomial};
    use crate::fixtures;
    use crate::graph::extended_kernel;

    #[test]
    fn final_example_matrix_and_determinant() {
        let sys = fixtures::final_example_system();
        let g = sys.graph().unwrap();
        let k = extended_kernel(&g).unwrap();
        let published = fixtures::final_example_matrix();
        assert_eq!(k.matrix.permuted(published.labels()).unwrap(), published);
        let r = verify_prop_arrangement_corridor(&sys).unwrap();
        let expected = poly("1 - q^2") * poly("1 - h1^2").pow(9) * poly("1 - h2^2");
        assert_eq!(r.lhs, expected);
        assert!(r.equal);
    }

    #[test]
    fn any_chamber_can_be_the_entrance() {
        let mut sys = fixtures::final_example_system();
        sys.corridors[0].entrances = vec!["A1:---".into(), "A2:+".into()];
        let r = verify_prop_arrangement_corridor(&sys).unwrap();
        assert!(r.equal);
        sys.corridors.clear();
        // without a corridor the graph is disconnected
        assert!(sys.graph().is_err());
    }

    #[test]
    fn upper_left_block_is_the_three_line_chamber_matrix() {
        let sys = fixtures::final_example_system();
        let faces = sys.face_sets().unwrap();
        let m = faces[0].chamber_distance_matrix();
        let published = fixtures::final_example_matrix();
        let labels: Vec<String> = m.labels().iter().map(|c| format!("A1:{c}")).collect();
        let block = published.restrict(&labels).unwrap();
        for (i, a) in m.labels().iter().enumerate() {
            for (j, b) in m.labels().iter().enumerate() {
                assert_eq!(block.entry(&format!("A1:{a}"), &format!("A1:{b}")).unwrap(), m.get(i, j));
            }
        }
        assert_eq!(det_laplace(&m).unwrap(), poly("1 - h1^2").pow(9));
        assert_ne!(det_laplace(&m).unwrap(), Polynomial::one());
    }
}
