//! Corridors: entrance-room sets that split a graph into apartments.
//!
//! A corridor `U` partitions the rooms into blocks, one entrance per block,
//! such that minimal sequences inside a block never leave it and minimal
//! sequences between blocks pass through the two entrances. Several disjoint
//! corridors refine each other into `Σ#U_i − r + 1` blocks.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, SquareMatrix};
use crate::error::{CorridorCondition, Error, Result};
use crate::graph::{check_label, LabeledDigraph, Mode};

/// Entrance rooms plus the constant label carried by every corridor edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorSet {
    pub entrances: Vec<String>,
    pub label: Polynomial,
}

impl CorridorSet {
    pub fn new(entrances: impl IntoIterator<Item = impl Into<String>>, label: Polynomial) -> Self {
        CorridorSet {
            entrances: entrances.into_iter().map(Into::into).collect(),
            label,
        }
    }

    pub fn width(&self) -> usize {
        self.entrances.len()
    }

    /// Checks the set against a host graph: entrances exist and are distinct,
    /// the label suits the mode, and every edge between distinct entrances
    /// exists and carries the label.
    pub fn validate_against(&self, g: &LabeledDigraph) -> Result<()> {
        if self.entrances.is_empty() {
            return Err(Error::BadGraph("corridor has no entrances".into()));
        }
        let mut seen = HashSet::new();
        for e in &self.entrances {
            g.room_index(e)?;
            if !seen.insert(e) {
                return Err(Error::BadGraph(format!("entrance `{e}` listed twice")));
            }
        }
        check_label(g.mode(), &self.label)?;
        if g.mode() == Mode::Distance {
            let single_var = self
                .label
                .as_monomial()
                .is_some_and(|m| m.degree() == 1);
            if !single_var {
                return Err(Error::BadLabel {
                    label: self.label.to_string(),
                    reason: "a distance corridor is labeled by a single variable".into(),
                });
            }
        }
        for a in &self.entrances {
            for b in &self.entrances {
                if a == b {
                    continue;
                }
                match g.label(a, b) {
                    None => {
                        return Err(Error::NotACorridor {
                            condition: CorridorCondition::OneEntrancePerBlock,
                            witness: (a.clone(), b.clone()),
                            detail: "entrances are not adjacent".into(),
                        })
                    }
                    Some(l) if *l != self.label => {
                        return Err(Error::NotACorridor {
                            condition: CorridorCondition::UniformLabel,
                            witness: (a.clone(), b.clone()),
                            detail: format!("edge label `{l}` differs from corridor label `{}`", self.label),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntrance {
    /// Position of the corridor in the input list.
    pub corridor: usize,
    pub room: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub rooms: Vec<String>,
    pub entrances: Vec<BlockEntrance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorPartition {
    pub blocks: Vec<Block>,
}

impl CorridorPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks as a set of room sets, independent of ordering.
    pub fn block_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.blocks
            .iter()
            .map(|b| b.rooms.iter().cloned().collect())
            .collect()
    }

    pub fn block_of(&self, room: &str) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.rooms.iter().any(|r| r == room))
    }
}

/// All-pairs edge distances of a connected graph.
pub(crate) fn all_distances(g: &LabeledDigraph) -> Vec<Vec<usize>> {
    (0..g.num_rooms())
        .map(|a| {
            g.distances_from(a)
                .into_iter()
                .map(|d| d.expect("connected graph"))
                .collect()
        })
        .collect()
}

/// Finds a pair in the block with a minimal sequence leaving the block.
///
/// A room `v` lies on some minimal sequence from `a` to `b` exactly when
/// `l(a,v) + l(v,b) = l(a,b)`.
fn closure_witness(dist: &[Vec<usize>], block: &[usize], inside: &[bool]) -> Option<(usize, usize, usize)> {
    for &a in block {
        for &b in block {
            if a == b {
                continue;
            }
            for v in 0..dist.len() {
                if !inside[v] && dist[a][v] + dist[v][b] == dist[a][b] {
                    return Some((a, b, v));
                }
            }
        }
    }
    None
}

fn not_corridor(g: &LabeledDigraph, condition: CorridorCondition, a: usize, b: usize, detail: String) -> Error {
    Error::NotACorridor {
        condition,
        witness: (g.rooms()[a].clone(), g.rooms()[b].clone()),
        detail,
    }
}

/// Partition of the rooms induced by a single corridor, with all three corridor conditions verified.
pub fn corridor_partition(g: &LabeledDigraph, u: &CorridorSet) -> Result<CorridorPartition> {
    u.validate_against(g)?;
    let n = g.num_rooms();
    let entrance_idx: Vec<usize> = u
        .entrances
        .iter()
        .map(|e| g.room_index(e))
        .collect::<Result<_>>()?;
    let is_entrance: Vec<bool> = (0..n).map(|i| entrance_idx.contains(&i)).collect();

    // candidate blocks: components once edges between distinct entrances are removed
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        component[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &y in g.neighbours(x) {
                if is_entrance[x] && is_entrance[y] {
                    continue;
                }
                if component[y] == usize::MAX {
                    component[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }

    // condition 1: one entrance per block
    let mut entrance_of_block = vec![None; components.len()];
    for &c in &entrance_idx {
        let id = component[c];
        if let Some(other) = entrance_of_block[id] {
            return Err(not_corridor(
                g,
                CorridorCondition::OneEntrancePerBlock,
                other,
                c,
                "two entrances fall into one block".into(),
            ));
        }
        entrance_of_block[id] = Some(c);
    }
    if let Some(id) = entrance_of_block.iter().position(Option::is_none) {
        let r = components[id][0];
        return Err(not_corridor(
            g,
            CorridorCondition::OneEntrancePerBlock,
            r,
            r,
            "block without an entrance".into(),
        ));
    }

    let dist = all_distances(g);
    // condition 2: blocks are closed under minimal sequences
    for members in &components {
        let inside: Vec<bool> = (0..n).map(|v| members.binary_search(&v).is_ok()).collect();
        if let Some((a, b, v)) = closure_witness(&dist, members, &inside) {
            return Err(not_corridor(
                g,
                CorridorCondition::BlockClosure,
                a,
                b,
                format!("a minimal sequence passes through `{}`", g.rooms()[v]),
            ));
        }
    }

    // condition 3: joining minimal sequences through the entrance pair stays minimal
    for a in 0..n {
        let ca = entrance_of_block[component[a]].unwrap();
        for b in 0..n {
            if component[a] == component[b] {
                continue;
            }
            let cb = entrance_of_block[component[b]].unwrap();
            if dist[a][ca] + 1 + dist[cb][b] != dist[a][b] {
                return Err(not_corridor(
                    g,
                    CorridorCondition::ConcatenationMinimal,
                    a,
                    b,
                    format!(
                        "route through `{}` and `{}` is not minimal",
                        g.rooms()[ca],
                        g.rooms()[cb]
                    ),
                ));
            }
        }
    }

    let mut blocks: Vec<Block> = components
        .iter()
        .zip(&entrance_of_block)
        .map(|(members, c)| Block {
            rooms: members.iter().map(|&i| g.rooms()[i].clone()).collect(),
            entrances: vec![BlockEntrance {
                corridor: 0,
                room: g.rooms()[c.unwrap()].clone(),
            }],
        })
        .collect();
    sort_blocks(g, &mut blocks);
    Ok(CorridorPartition { blocks })
}

fn sort_blocks(g: &LabeledDigraph, blocks: &mut [Block]) {
    let first = |b: &Block| {
        b.rooms
            .iter()
            .map(|r| g.room_index(r).unwrap())
            .min()
            .unwrap_or(usize::MAX)
    };
    blocks.sort_by_key(first);
}

/// Joint partition for several pairwise disjoint corridors.
///
/// Starts from the first corridor's partition and, for each further corridor,
/// refines the unique block holding all of its entrances by that corridor's
/// own partition.
pub fn multi_corridor_partition(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<CorridorPartition> {
    let mut used = HashSet::new();
    for u in corridors {
        for e in &u.entrances {
            if !used.insert(e.as_str()) {
                return Err(Error::BadGraph(format!("room `{e}` belongs to two corridors")));
            }
        }
    }
    let mut blocks: Vec<Block> = vec![Block {
        rooms: g.rooms().to_vec(),
        entrances: Vec::new(),
    }];
    for (k, u) in corridors.iter().enumerate() {
        let own = corridor_partition(g, u)?;
        let holders: BTreeSet<usize> = u
            .entrances
            .iter()
            .map(|e| {
                blocks
                    .iter()
                    .position(|b| b.rooms.contains(e))
                    .expect("blocks cover every room")
            })
            .collect();
        if holders.len() != 1 {
            return Err(Error::NotNested { corridor: k });
        }
        let host = blocks.remove(*holders.iter().next().unwrap());
        for piece in own.blocks {
            let rooms: Vec<String> = host
                .rooms
                .iter()
                .filter(|r| piece.rooms.contains(r))
                .cloned()
                .collect();
            let mut entrances: Vec<BlockEntrance> = host
                .entrances
                .iter()
                .filter(|e| rooms.contains(&e.room))
                .cloned()
                .collect();
            entrances.extend(piece.entrances.into_iter().map(|e| BlockEntrance {
                corridor: k,
                room: e.room,
            }));
            blocks.push(Block { rooms, entrances });
        }
    }
    sort_blocks(g, &mut blocks);
    for b in &mut blocks {
        b.entrances.sort_by_key(|e| e.corridor);
    }
    let partition = CorridorPartition { blocks };
    check_partition_properties(g, corridors, &partition)?;
    Ok(partition)
}

/// Re-checks the joint partition: block count `Σ#U_i − r + 1`, each block meets
/// at least one corridor and each corridor at most once, and every block is
/// closed under minimal sequences.
pub fn check_partition_properties(
    g: &LabeledDigraph,
    corridors: &[CorridorSet],
    partition: &CorridorPartition,
) -> Result<()> {
    let expected = corridors.iter().map(CorridorSet::width).sum::<usize>() + 1 - corridors.len();
    if partition.len() != expected {
        return Err(Error::BadGraph(format!(
            "partition has {} blocks, expected {expected}",
            partition.len()
        )));
    }
    let n = g.num_rooms();
    let mut covered = vec![false; n];
    let dist = all_distances(g);
    for block in &partition.blocks {
        let members: Vec<usize> = block
            .rooms
            .iter()
            .map(|r| g.room_index(r))
            .collect::<Result<_>>()?;
        let mut inside = vec![false; n];
        for &m in &members {
            if covered[m] {
                return Err(Error::BadGraph(format!("room `{}` lies in two blocks", g.rooms()[m])));
            }
            covered[m] = true;
            inside[m] = true;
        }
        let mut hits = 0;
        for u in corridors {
            let k = u.entrances.iter().filter(|e| block.rooms.contains(e)).count();
            if k > 1 {
                return Err(Error::BadGraph("a block meets one corridor twice".into()));
            }
            hits += k;
        }
        if hits == 0 && !corridors.is_empty() {
            return Err(Error::BadGraph("a block meets no corridor".into()));
        }
        if let Some((a, b, v)) = closure_witness(&dist, &members, &inside) {
            return Err(not_corridor(
                g,
                CorridorCondition::BlockClosure,
                a,
                b,
                format!("a minimal sequence passes through `{}`", g.rooms()[v]),
            ));
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::BadGraph("partition does not cover every room".into()));
    }
    Ok(())
}

/// Blocks `A_1 … A_r` with their distinguished first indices and the coupling `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGlueSpec {
    pub matrices: Vec<SquareMatrix>,
    pub first_index: Vec<String>,
    pub q: Polynomial,
}

impl BlockGlueSpec {
    /// Uses each block's first label as its distinguished index.
    pub fn with_leading_indices(matrices: Vec<SquareMatrix>, q: Polynomial) -> Self {
        let first_index = matrices
            .iter()
            .map(|m| m.labels().first().cloned().unwrap_or_default())
            .collect();
        BlockGlueSpec {
            matrices,
            first_index,
            q,
        }
    }

    fn first_positions(&self) -> Result<Vec<usize>> {
        if self.first_index.len() != self.matrices.len() {
            return Err(Error::BadMatrix("one distinguished index per block".into()));
        }
        let mut seen = HashSet::new();
        for m in &self.matrices {
            if m.size() == 0 {
                return Err(Error::BadMatrix("empty block".into()));
            }
            for l in m.labels() {
                if !seen.insert(l.as_str()) {
                    return Err(Error::BadMatrix(format!("label `{l}` appears in two blocks")));
                }
            }
        }
        self.matrices
            .iter()
            .zip(&self.first_index)
            .map(|(m, f)| {
                m.index_of(f)
                    .ok_or_else(|| Error::BadMatrix(format!("`{f}` does not index its block")))
            })
            .collect()
    }

    /// The distinguished diagonal entries `a_{i1,i1}` of every block.
    pub fn pivots(&self) -> Result<Vec<Polynomial>> {
        let pos = self.first_positions()?;
        Ok(self
            .matrices
            .iter()
            .zip(pos)
            .map(|(m, p)| m.get(p, p).clone())
            .collect())
    }
}

/// `M_q(A_1, …, A_r)`: diagonal blocks copied, off-diagonal entry
/// `(i ∈ I_h, j ∈ I_k)` equal to `q · a_{i, i1(h)} · a_{i1(k), j}`.
pub fn build_mq(spec: &BlockGlueSpec) -> Result<SquareMatrix> {
    let first = spec.first_positions()?;
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for (k, m) in spec.matrices.iter().enumerate() {
        for (i, l) in m.labels().iter().enumerate() {
            owner.push((k, i));
            labels.push(l.clone());
        }
    }
    SquareMatrix::from_fn(labels, |r, c| {
        let (h, i) = owner[r];
        let (k, j) = owner[c];
        if h == k {
            spec.matrices[h].get(i, j).clone()
        } else {
            let left = spec.matrices[h].get(i, first[h]);
            let right = spec.matrices[k].get(first[k], j);
            &(&spec.q * left) * right
        }
    })
}

/// Rooms of all parts side by side, with no edges between parts.
///
/// The result is not a valid graph on its own when there are several parts
/// (it is disconnected), so this returns raw edge lists.
type EdgeList = Vec<(String, String, Polynomial)>;

fn union_parts(parts: &[LabeledDigraph]) -> Result<(Mode, Vec<String>, EdgeList)> {
    let mode = parts
        .first()
        .ok_or_else(|| Error::BadGraph("nothing to glue".into()))?
        .mode();
    if let Some(p) = parts.iter().find(|p| p.mode() != mode) {
        return Err(Error::ModeMismatch(format!(
            "cannot glue a {} graph to a {mode} graph",
            p.mode()
        )));
    }
    let rooms = parts.iter().flat_map(|p| p.rooms().iter().cloned()).collect();
    let edges = parts
        .iter()
        .flat_map(|p| p.edges().map(|(a, b, l)| (a.to_owned(), b.to_owned(), l.clone())))
        .collect();
    Ok((mode, rooms, edges))
}

fn corridor_edges(u: &CorridorSet) -> EdgeList {
    let mut out = Vec::new();
    for a in &u.entrances {
        for b in &u.entrances {
            if a != b {
                out.push((a.clone(), b.clone(), u.label.clone()));
            }
        }
    }
    out
}

/// Disjoint union of the parts plus corridor edges, with every corridor validated.
pub fn glue_system(parts: &[LabeledDigraph], corridors: &[CorridorSet]) -> Result<LabeledDigraph> {
    let (mode, rooms, mut edges) = union_parts(parts)?;
    for u in corridors {
        check_label(mode, &u.label)?;
        edges.extend(corridor_edges(u));
    }
    let g = LabeledDigraph::new(mode, rooms, edges)?;
    for u in corridors {
        u.validate_against(&g)?;
    }
    Ok(g)
}

/// Glues one entrance room of each part with a single corridor labeled `label`.
///
/// Distance graphs stay valid under gluing. Probabilistic row sums change, so
/// a glued probabilistic graph generally fails [`crate::graph::validate_axioms`]
/// until the caller relabels it.
pub fn glue_graphs(parts: &[LabeledDigraph], entrances: &[String], label: &Polynomial) -> Result<LabeledDigraph> {
    if entrances.len() != parts.len() {
        return Err(Error::BadArity(format!(
            "{} entrances for {} parts",
            entrances.len(),
            parts.len()
        )));
    }
    for (p, e) in parts.iter().zip(entrances) {
        if !p.contains_room(e) {
            return Err(Error::UnknownRoom(e.clone()));
        }
    }
    let (mode, rooms, mut edges) = union_parts(parts)?;
    check_label(mode, label)?;
    edges.extend(corridor_edges(&CorridorSet::new(entrances.iter().cloned(), label.clone())));
    LabeledDigraph::new(mode, rooms, edges)
}

/// JSON glue request `{"parts": [...], "entrances": [...], "label": "q"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueRequest {
    pub parts: Vec<LabeledDigraph>,
    pub entrances: Vec<String>,
    pub label: Polynomial,
}

impl GlueRequest {
    pub fn glue(&self) -> Result<LabeledDigraph> {
        glue_graphs(&self.parts, &self.entrances, &self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_laplace, poly};
    use crate::fixtures;
    use crate::graph::{extended_kernel, validate_axioms};

    fn set(rooms: &[&str]) -> BTreeSet<String> {
        rooms.iter().map(|s| s.to_string()).collect()
    }

    fn path(prefix: &str, n: usize) -> LabeledDigraph {
        let rooms: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let mut edges = Vec::new();
        for i in 1..n {
            edges.push((rooms[i - 1].clone(), rooms[i].clone(), poly(&format!("{prefix}x{i}"))));
            edges.push((rooms[i].clone(), rooms[i - 1].clone(), poly(&format!("{prefix}y{i}"))));
        }
        LabeledDigraph::new(Mode::Distance, rooms, edges).unwrap()
    }

    #[test]
    fn figure_corridor_blocks() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["2", "3", "4"], poly("1/5"));
        let p = corridor_partition(&g, &u).unwrap();
        assert_eq!(p.block_sets(), [set(&["1", "2"]), set(&["3", "5"]), set(&["4", "6"])].into());
        assert_eq!(p.blocks[0].rooms, vec!["1", "2"]);
        assert_eq!(p.blocks[1].entrances[0].room, "3");
    }

    #[test]
    fn trivial_corridor() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["5"], poly("1/5"));
        let p = corridor_partition(&g, &u).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.blocks[0].rooms, g.rooms());
    }

    #[test]
    fn non_adjacent_entrances() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["1", "3"], poly("1/5"));
        match corridor_partition(&g, &u) {
            Err(Error::NotACorridor { condition, witness, .. }) => {
                assert_eq!(condition.number(), 1);
                assert_eq!(witness, ("1".to_owned(), "3".to_owned()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_label_and_closure_failures() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["2", "3", "4"], poly("1/4"));
        assert!(matches!(
            corridor_partition(&g, &u),
            Err(Error::NotACorridor { condition: CorridorCondition::UniformLabel, .. })
        ));
        // {2,3}: 4 ends up with 2's block but the 3-4 edge makes 4 reachable from 3's side
        let u = CorridorSet::new(["2", "3"], poly("1/5"));
        assert!(matches!(corridor_partition(&g, &u), Err(Error::NotACorridor { .. })));
    }

    #[test]
    fn closure_violation_on_cycle() {
        // 4-cycle a-b-c-d with corridor {a,b}: removing a-b leaves one component
        let rooms: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let mut edges = Vec::new();
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            edges.push((x.to_owned(), y.to_owned(), poly("q")));
            edges.push((y.to_owned(), x.to_owned(), poly("q")));
        }
        let g = LabeledDigraph::new(Mode::Distance, rooms, edges).unwrap();
        let err = corridor_partition(&g, &CorridorSet::new(["a", "b"], poly("q"))).unwrap_err();
        assert!(matches!(
            err,
            Error::NotACorridor { condition: CorridorCondition::OneEntrancePerBlock, .. }
        ));
    }

    #[test]
    fn concatenation_violation() {
        // triangle c1-c2-x plus x attached to both entrances: route c1->x is direct
        let rooms: Vec<String> = ["c1", "c2", "x"].iter().map(|s| s.to_string()).collect();
        let mut edges = Vec::new();
        for (a, b) in [("c1", "c2"), ("c2", "x"), ("x", "c1")] {
            edges.push((a.to_owned(), b.to_owned(), poly("q")));
            edges.push((b.to_owned(), a.to_owned(), poly("q")));
        }
        let g = LabeledDigraph::new(Mode::Distance, rooms, edges).unwrap();
        assert!(corridor_partition(&g, &CorridorSet::new(["c1", "c2"], poly("q"))).is_err());
    }

    #[test]
    fn chained_corridors_on_paths() {
        // four 1-room... apartments: path P0 (2 rooms), P1 (2 rooms), P2 (2 rooms)
        let parts = [path("a", 2), path("b", 2), path("c", 2)];
        let u1 = CorridorSet::new(["a1", "b0"], poly("q"));
        let u2 = CorridorSet::new(["b1", "c0"], poly("r"));
        let g = glue_system(&parts, &[u1.clone(), u2.clone()]).unwrap();
        let p = multi_corridor_partition(&g, &[u1.clone(), u2.clone()]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.block_sets(),
            [set(&["a0", "a1"]), set(&["b0", "b1"]), set(&["c0", "c1"])].into()
        );
        let rev = multi_corridor_partition(&g, &[u2, u1]).unwrap();
        assert_eq!(rev.block_sets(), p.block_sets());
        assert_eq!(p.blocks[1].entrances.len(), 2);
    }

    #[test]
    fn single_corridor_reduces() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["2", "3", "4"], poly("1/5"));
        assert_eq!(
            multi_corridor_partition(&g, std::slice::from_ref(&u)).unwrap().block_sets(),
            corridor_partition(&g, &u).unwrap().block_sets()
        );
        let none = multi_corridor_partition(&g, &[]).unwrap();
        assert_eq!(none.len(), 1);
    }

    #[test]
    fn overlapping_corridors_rejected() {
        let g = fixtures::probabilistic_cat();
        let u = CorridorSet::new(["2", "3", "4"], poly("1/5"));
        assert!(multi_corridor_partition(&g, &[u.clone(), u]).is_err());
    }

    fn symbolic(prefix: &str, n: usize) -> SquareMatrix {
        let labels = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        SquareMatrix::from_fn(labels, |i, j| poly(&format!("{prefix}{}{}", i + 1, j + 1))).unwrap()
    }

    #[test]
    fn mq_matches_the_worked_example() {
        let spec = BlockGlueSpec::with_leading_indices(vec![symbolic("a", 2), symbolic("b", 3)], poly("q"));
        let m = build_mq(&spec).unwrap();
        let expected = [
            ["a11", "a12", "q*a11*b11", "q*a11*b12", "q*a11*b13"],
            ["a21", "a22", "q*a21*b11", "q*a21*b12", "q*a21*b13"],
            ["q*a11*b11", "q*a12*b11", "b11", "b12", "b13"],
            ["q*a11*b21", "q*a12*b21", "b21", "b22", "b23"],
            ["q*a11*b31", "q*a12*b31", "b31", "b32", "b33"],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), &poly(e), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn mq_degenerate_cases() {
        let a = symbolic("a", 3);
        let one = build_mq(&BlockGlueSpec::with_leading_indices(vec![a.clone()], poly("q"))).unwrap();
        assert_eq!(one, a);
        let b = symbolic("b", 2);
        let direct = build_mq(&BlockGlueSpec::with_leading_indices(vec![a, b], Polynomial::zero())).unwrap();
        for i in 0..3 {
            for j in 3..5 {
                assert!(direct.get(i, j).is_zero() && direct.get(j, i).is_zero());
            }
        }
        let bad = BlockGlueSpec {
            matrices: vec![symbolic("a", 2)],
            first_index: vec!["zz".into()],
            q: poly("q"),
        };
        assert!(build_mq(&bad).is_err());
    }

    #[test]
    fn glue_two_single_rooms() {
        let r1 = LabeledDigraph::new(Mode::Distance, vec!["C1".into()], vec![]).unwrap();
        let r2 = LabeledDigraph::new(Mode::Distance, vec!["C2".into()], vec![]).unwrap();
        let g = glue_graphs(&[r1, r2], &["C1".into(), "C2".into()], &poly("q")).unwrap();
        assert!(validate_axioms(&g).passed);
        let k = extended_kernel(&g).unwrap();
        assert_eq!(k.matrix.rows(), vec![vec![poly("1"), poly("q")], vec![poly("q"), poly("1")]]);
        assert_eq!(det_laplace(&k.matrix).unwrap(), poly("1 - q^2"));
    }

    #[test]
    fn glue_rejects_mixed_modes_and_clashes() {
        let d = LabeledDigraph::new(Mode::Distance, vec!["x".into()], vec![]).unwrap();
        let p = LabeledDigraph::new(Mode::Probabilistic, vec!["y".into()], vec![("y".into(), "y".into(), poly("1"))])
            .unwrap();
        assert!(matches!(
            glue_graphs(&[d.clone(), p], &["x".into(), "y".into()], &poly("q")),
            Err(Error::ModeMismatch(_))
        ));
        assert!(glue_graphs(&[d.clone(), d.clone()], &["x".into(), "x".into()], &poly("q")).is_err());
        assert!(glue_graphs(&[d.clone(), d.with_prefix("b")], &["x".into(), "bx".into()], &poly("2*q")).is_err());
    }

    #[test]
    fn glue_request_json() {
        let json = r#"{"parts":[{"mode":"distance","rooms":["C1"],"edges":[]},{"mode":"distance","rooms":["C2"],"edges":[]}],"entrances":["C1","C2"],"label":"q"}"#;
        let req: GlueRequest = serde_json::from_str(json).unwrap();
        assert_eq!(req.glue().unwrap().num_rooms(), 2);
        let c: CorridorSet = serde_json::from_str(r#"{"entrances":["2","3","4"],"label":"1/5"}"#).unwrap();
        assert_eq!(c.width(), 3);
    }
}
