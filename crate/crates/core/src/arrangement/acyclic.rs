//! Distance graphs whose underlying undirected graph is a forest.

use serde::Serialize;

use crate::algebra::Polynomial;
use crate::corridor::CorridorSet;
use crate::error::{Error, Result};
use crate::factorization::{checked_det, verify_distance_blocks, Factor, FactorizationReport};
use crate::graph::{extended_kernel, LabeledDigraph, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicCheckResult {
    pub is_indirectly_acyclic: bool,
    /// Unordered pairs `{A, B}`, `A ≠ B`, joined by an edge in either direction.
    pub undirected_edges: Vec<(String, String)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn indirectly_acyclic(g: &LabeledDigraph) -> AcyclicCheckResult {
    let rooms = g.rooms();
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .filter(|(a, b, _)| a != b)
        .map(|(a, b, _)| {
            let (i, j) = (g.room_index(a).unwrap(), g.room_index(b).unwrap());
            (i.min(j), i.max(j))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut parent: Vec<usize> = (0..rooms.len()).collect();
    let mut acyclic = true;
    for &(i, j) in &pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            acyclic = false;
        } else {
            parent[ri] = rj;
        }
    }
    AcyclicCheckResult {
        is_indirectly_acyclic: acyclic,
        undirected_edges: pairs
            .into_iter()
            .map(|(i, j)| (rooms[i].clone(), rooms[j].clone()))
            .collect(),
    }
}

/// `1 − d(A,B)·d(B,A)` for every undirected edge, or `NotAcyclic`.
fn tree_factors(g: &LabeledDigraph) -> Result<Vec<Factor>> {
    let check = indirectly_acyclic(g);
    if !check.is_indirectly_acyclic {
        return Err(Error::NotAcyclic);
    }
    check
        .undirected_edges
        .iter()
        .map(|(a, b)| {
            let there = g.label(a, b).ok_or_else(|| Error::BadGraph(format!("missing edge {a} -> {b}")))?;
            let back = g.label(b, a).ok_or_else(|| Error::BadGraph(format!("missing edge {b} -> {a}")))?;
            Ok(Factor::new(format!("edge {{{a},{b}}}"), &Polynomial::one() - &(there * back)))
        })
        .collect()
}

pub fn verify_ledi(g: &LabeledDigraph) -> Result<FactorizationReport> {
    if g.mode() != Mode::Distance {
        return Err(Error::ModeMismatch("expected a distance graph".into()));
    }
    let factors = tree_factors(g)?;
    let kernel = extended_kernel(g)?;
    Ok(FactorizationReport::new(checked_det(&kernel.matrix)?, factors))
}

/// Corridor factors times one edge product per block; every block must induce a forest.
pub fn verify_prop_acyclic_corridor(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<FactorizationReport> {
    verify_distance_blocks(g, corridors, |rooms, _| {
        let sub = g.induced_subgraph(rooms)?;
        Ok(tree_factors(&sub)?.into_iter().map(|f| f.poly).product())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_laplace, poly};
    use crate::corridor::glue_system;
    use crate::fixtures;

    #[test]
    fn figure_graph_is_a_tree() {
        let g = fixtures::distance_cat();
        let check = indirectly_acyclic(&g);
        assert!(check.is_indirectly_acyclic);
        assert_eq!(check.undirected_edges.len(), 5);
        let r = verify_ledi(&g).unwrap();
        let expected = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|v| poly(&format!("1 - {v}+*{v}-")))
            .product::<Polynomial>();
        assert_eq!(r.lhs, expected);
        assert!(r.equal);
    }

    #[test]
    fn triangle_and_single_room() {
        let rooms: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let mut edges = Vec::new();
        for (i, a) in rooms.iter().enumerate() {
            for b in &rooms[i + 1..] {
                edges.push((a.clone(), b.clone(), poly("x")));
                edges.push((b.clone(), a.clone(), poly("x")));
            }
        }
        let g = LabeledDigraph::new(Mode::Distance, rooms, edges).unwrap();
        assert!(!indirectly_acyclic(&g).is_indirectly_acyclic);
        assert!(matches!(verify_ledi(&g), Err(Error::NotAcyclic)));
        let one = LabeledDigraph::new(Mode::Distance, vec!["A".into()], vec![]).unwrap();
        assert!(indirectly_acyclic(&one).is_indirectly_acyclic);
        assert_eq!(verify_ledi(&one).unwrap().lhs, Polynomial::one());
    }

    #[test]
    fn two_rooms() {
        let g = LabeledDigraph::new(
            Mode::Distance,
            vec!["A".into(), "B".into()],
            vec![("A".into(), "B".into(), poly("x")), ("B".into(), "A".into(), poly("y"))],
        )
        .unwrap();
        let r = verify_ledi(&g).unwrap();
        assert_eq!(r.rhs, poly("1 - x*y"));
        assert!(r.equal);
    }

    fn path(prefix: &str) -> LabeledDigraph {
        LabeledDigraph::new(
            Mode::Distance,
            vec![format!("{prefix}0"), format!("{prefix}1")],
            vec![
                (format!("{prefix}0"), format!("{prefix}1"), poly(&format!("x{prefix}"))),
                (format!("{prefix}1"), format!("{prefix}0"), poly(&format!("y{prefix}"))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_paths_glued() {
        let u = CorridorSet::new(["P0", "Q0"], poly("q"));
        let g = glue_system(&[path("P"), path("Q")], std::slice::from_ref(&u)).unwrap();
        let r = verify_prop_acyclic_corridor(&g, &[u]).unwrap();
        assert!(r.equal, "{r:?}");
        let oracle = det_laplace(&extended_kernel(&g).unwrap().matrix).unwrap();
        let expected = poly("1 + q") * poly("1 - q") * poly("1 - xP*yP") * poly("1 - xQ*yQ");
        assert_eq!(oracle, expected);
        assert_eq!(r.lhs, expected);
    }

    #[test]
    fn single_part_reduces_to_tree_product() {
        let g = fixtures::distance_cat();
        let a = verify_prop_acyclic_corridor(&g, &[]).unwrap();
        let b = verify_ledi(&g).unwrap();
        assert_eq!(a.lhs, b.lhs);
        assert_eq!(a.rhs, b.rhs);
    }
}
