//! Walking-cat graphs: rooms joined by labeled directed edges.
//!
//! A graph is either *probabilistic* (labels are probabilities) or a
//! *distance* graph (labels are monomials). Labels on edges extend to every
//! ordered pair of rooms as the product along any minimal sequence, and the
//! kernel matrix stores `label(B, A)` at row `A`, column `B`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::is_probability;
use crate::algebra::{Polynomial, Rational, SquareMatrix};
use crate::error::{Error, Result};

/// Upper bound on the number of minimal sequences enumerated for one pair.
pub const SEQUENCE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Probabilistic,
    Distance,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Probabilistic => "probabilistic",
            Mode::Distance => "distance",
        })
    }
}

/// Checks that `label` is a legal edge label in `mode`.
pub fn check_label(mode: Mode, label: &Polynomial) -> Result<()> {
    let bad = |reason: &str| Error::BadLabel {
        label: label.to_string(),
        reason: reason.to_owned(),
    };
    match mode {
        Mode::Probabilistic => match label.as_constant() {
            Some(c) if is_probability(&c) => Ok(()),
            Some(_) => Err(bad("probability outside [0, 1]")),
            None => Err(bad("probabilistic labels must be rational constants")),
        },
        Mode::Distance => match label.as_monomial() {
            Some(_) => Ok(()),
            None => Err(bad("distance labels must be monomials with coefficient 1")),
        },
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    mode: Mode,
    rooms: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Polynomial>,
    /// Out-neighbours without self-loops, ascending.
    adjacency: Vec<Vec<usize>>,
}

impl LabeledDigraph {
    /// Builds and validates a graph.
    ///
    /// In distance mode missing self-loops default to `1`. The structural
    /// invariants (labels legal for the mode, self-loops present, symmetric
    /// edge set, connected) are enforced here; the walking-cat axioms are
    /// checked separately by [`validate_axioms`].
    pub fn new(
        mode: Mode,
        rooms: Vec<String>,
        edges: impl IntoIterator<Item = (String, String, Polynomial)>,
    ) -> Result<Self> {
        if rooms.is_empty() {
            return Err(Error::BadGraph("graph has no rooms".into()));
        }
        let mut index = HashMap::new();
        for (i, r) in rooms.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::BadGraph("empty room identifier".into()));
            }
            if index.insert(r.clone(), i).is_some() {
                return Err(Error::BadGraph(format!("duplicate room `{r}`")));
            }
        }
        let mut map = BTreeMap::new();
        for (from, to, label) in edges {
            let a = *index.get(&from).ok_or_else(|| Error::UnknownRoom(from.clone()))?;
            let b = *index.get(&to).ok_or_else(|| Error::UnknownRoom(to.clone()))?;
            check_label(mode, &label)?;
            if a == b && mode == Mode::Distance && !label.is_one() {
                return Err(Error::BadLabel {
                    label: label.to_string(),
                    reason: format!("self-loop of `{from}` must be 1 in distance mode"),
                });
            }
            if map.insert((a, b), label).is_some() {
                return Err(Error::BadGraph(format!("duplicate edge `{from}` -> `{to}`")));
            }
        }
        for (i, r) in rooms.iter().enumerate() {
            if let std::collections::btree_map::Entry::Vacant(e) = map.entry((i, i)) {
                match mode {
                    Mode::Distance => {
                        e.insert(Polynomial::one());
                    }
                    Mode::Probabilistic => {
                        return Err(Error::BadGraph(format!("room `{r}` has no self-loop")))
                    }
                }
            }
        }
        for &(a, b) in map.keys() {
            if !map.contains_key(&(b, a)) {
                return Err(Error::BadGraph(format!(
                    "edge `{}` -> `{}` has no reverse edge",
                    rooms[a], rooms[b]
                )));
            }
        }
        let mut adjacency = vec![Vec::new(); rooms.len()];
        for &(a, b) in map.keys() {
            if a != b {
                adjacency[a].push(b);
            }
        }
        let g = LabeledDigraph {
            mode,
            rooms,
            index,
            edges: map,
            adjacency,
        };
        if g.distances_from(0).iter().any(Option::is_none) {
            return Err(Error::BadGraph("underlying graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rooms(&self) -> &[String] {
        &self.rooms
    }

    pub fn num_rooms(&self) -> usize {
        self.rooms.len()
    }

    pub fn room_index(&self, room: &str) -> Result<usize> {
        self.index
            .get(room)
            .copied()
            .ok_or_else(|| Error::UnknownRoom(room.to_owned()))
    }

    pub fn contains_room(&self, room: &str) -> bool {
        self.index.contains_key(room)
    }

    pub fn label(&self, from: &str, to: &str) -> Option<&Polynomial> {
        let a = *self.index.get(from)?;
        let b = *self.index.get(to)?;
        self.edges.get(&(a, b))
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.label(from, to).is_some()
    }

    /// All edges including self-loops, as `(from, to, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &Polynomial)> {
        self.edges
            .iter()
            .map(|(&(a, b), l)| (self.rooms[a].as_str(), self.rooms[b].as_str(), l))
    }

    pub(crate) fn neighbours(&self, a: usize) -> &[usize] {
        &self.adjacency[a]
    }

    /// Breadth-first edge counts from `a`, ignoring self-loops.
    pub fn distances_from(&self, a: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.rooms.len()];
        dist[a] = Some(0);
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// `l(A, B)`: number of steps of a minimal sequence.
    pub fn length(&self, from: &str, to: &str) -> Result<usize> {
        let a = self.room_index(from)?;
        let b = self.room_index(to)?;
        self.distances_from(a)[b].ok_or_else(|| Error::Unreachable {
            from: from.to_owned(),
            to: to.to_owned(),
        })
    }

    /// Induced subgraph on `rooms`, in the given order.
    pub fn induced_subgraph(&self, rooms: &[String]) -> Result<LabeledDigraph> {
        let keep: HashSet<usize> = rooms
            .iter()
            .map(|r| self.room_index(r))
            .collect::<Result<_>>()?;
        let edges = self
            .edges
            .iter()
            .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
            .map(|(&(a, b), l)| (self.rooms[a].clone(), self.rooms[b].clone(), l.clone()));
        LabeledDigraph::new(self.mode, rooms.to_vec(), edges.collect::<Vec<_>>())
    }

    /// Same graph with every room renamed to `prefix + name`.
    pub fn with_prefix(&self, prefix: &str) -> LabeledDigraph {
        let rooms: Vec<String> = self.rooms.iter().map(|r| format!("{prefix}{r}")).collect();
        let edges = self
            .edges
            .iter()
            .map(|(&(a, b), l)| (rooms[a].clone(), rooms[b].clone(), l.clone()))
            .collect::<Vec<_>>();
        LabeledDigraph::new(self.mode, rooms, edges).expect("renaming preserves validity")
    }

    /// Same graph with the given extra edges; existing labels may not be overwritten.
    pub fn with_edges(
        &self,
        extra: impl IntoIterator<Item = (String, String, Polynomial)>,
    ) -> Result<LabeledDigraph> {
        let edges = self
            .edges()
            .map(|(a, b, l)| (a.to_owned(), b.to_owned(), l.clone()))
            .chain(extra)
            .collect::<Vec<_>>();
        LabeledDigraph::new(self.mode, self.rooms.clone(), edges)
    }

    /// Index-based minimal sequences from `a` to `b`.
    pub(crate) fn minimal_paths(&self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        if a == b {
            return Ok(vec![vec![a]]);
        }
        let dist = self.distances_from(a);
        let Some(len) = dist[b] else {
            return Err(Error::Unreachable {
                from: self.rooms[a].clone(),
                to: self.rooms[b].clone(),
            });
        };
        // count shortest paths level by level before enumerating
        let mut order: Vec<usize> = (0..self.rooms.len()).filter(|&v| dist[v].is_some()).collect();
        order.sort_by_key(|&v| dist[v]);
        let mut count = vec![0u64; self.rooms.len()];
        count[a] = 1;
        for &u in &order {
            if count[u] == 0 {
                continue;
            }
            for &v in &self.adjacency[u] {
                if dist[v] == dist[u].map(|d| d + 1) {
                    count[v] = count[v].saturating_add(count[u]);
                }
            }
        }
        if count[b] > SEQUENCE_CAP {
            return Err(Error::ExplosionCap {
                from: self.rooms[a].clone(),
                to: self.rooms[b].clone(),
                cap: SEQUENCE_CAP,
            });
        }
        // edges are symmetric, so BFS from `b` gives distances into `b`
        let to_target = self.distances_from(b);
        let mut out = Vec::with_capacity(count[b] as usize);
        let mut stack = vec![a];
        self.extend_paths(&to_target, b, len, &mut stack, &mut out);
        Ok(out)
    }

    fn extend_paths(
        &self,
        to_target: &[Option<usize>],
        target: usize,
        remaining: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *stack.last().unwrap();
        if u == target {
            out.push(stack.clone());
            return;
        }
        for &v in &self.adjacency[u] {
            if to_target[v] != Some(remaining - 1) {
                continue;
            }
            stack.push(v);
            self.extend_paths(to_target, target, remaining - 1, stack, out);
            stack.pop();
        }
    }

    fn path_labels(&self, path: &[usize]) -> Vec<Polynomial> {
        path.windows(2)
            .map(|w| self.edges[&(w[0], w[1])].clone())
            .collect()
    }

    /// Label product along one minimal sequence, or the self-loop label for `a == b`.
    pub(crate) fn extended_label(&self, a: usize, b: usize) -> Result<Polynomial> {
        if a == b {
            return Ok(self.edges[&(a, a)].clone());
        }
        let dist = self.distances_from(a);
        let mut cur = b;
        let mut product = Polynomial::one();
        // walk back along any predecessor on a shortest path
        while cur != a {
            let d = dist[cur].ok_or_else(|| Error::Unreachable {
                from: self.rooms[a].clone(),
                to: self.rooms[b].clone(),
            })?;
            let prev = (0..self.rooms.len())
                .find(|&p| dist[p] == Some(d - 1) && self.edges.contains_key(&(p, cur)))
                .expect("BFS predecessor exists");
            product = &self.edges[&(prev, cur)] * &product;
            cur = prev;
        }
        Ok(product)
    }
}

impl fmt::Debug for LabeledDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledDigraph")
            .field("mode", &self.mode)
            .field("rooms", &self.rooms)
            .field("edges", &self.edges().map(|(a, b, l)| format!("{a}->{b}: {l}")).collect::<Vec<_>>())
            .finish()
    }
}

/// The set `M(A, B)` of minimal sequences between two rooms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalSequenceSet {
    pub source: String,
    pub target: String,
    pub length: usize,
    pub sequences: Vec<Vec<String>>,
}

pub fn minimal_sequences(g: &LabeledDigraph, from: &str, to: &str) -> Result<MinimalSequenceSet> {
    let a = g.room_index(from)?;
    let b = g.room_index(to)?;
    let paths = g.minimal_paths(a, b)?;
    let length = paths[0].len() - 1;
    let mut sequences: Vec<Vec<String>> = paths
        .into_iter()
        .map(|p| p.into_iter().map(|i| g.rooms[i].clone()).collect())
        .collect();
    sequences.sort();
    Ok(MinimalSequenceSet {
        source: from.to_owned(),
        target: to.to_owned(),
        length,
        sequences,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub from: String,
    pub to: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_MULTISET: &str = "multiset";
pub const CHECK_EXTENSION: &str = "extension";
pub const CHECK_ROW_SUMS: &str = "row_sums";
pub const CHECK_UNIT_DIAGONAL: &str = "unit_diagonal";

/// Runs the walking-cat axioms and reports every violating pair.
pub fn validate_axioms(g: &LabeledDigraph) -> ValidationReport {
    let n = g.num_rooms();
    let mut multiset = Vec::new();
    let mut extension = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let paths = match g.minimal_paths(a, b) {
                Ok(p) => p,
                Err(e) => {
                    multiset.push(Violation {
                        from: g.rooms[a].clone(),
                        to: g.rooms[b].clone(),
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            let mut reference = g.path_labels(&paths[0]);
            reference.sort();
            let reference_product: Polynomial = reference.iter().cloned().product();
            for p in &paths[1..] {
                let mut labels = g.path_labels(p);
                let product: Polynomial = labels.iter().cloned().product();
                labels.sort();
                if labels != reference {
                    multiset.push(pair_violation(g, a, b, p, "label multiset differs"));
                }
                if product != reference_product {
                    extension.push(pair_violation(g, a, b, p, "label product differs"));
                }
            }
        }
    }
    let mut checks = vec![
        AxiomCheck {
            name: CHECK_MULTISET.into(),
            passed: multiset.is_empty(),
            violations: multiset,
        },
        AxiomCheck {
            name: CHECK_EXTENSION.into(),
            passed: extension.is_empty(),
            violations: extension,
        },
    ];
    let mut third = Vec::new();
    match g.mode {
        Mode::Probabilistic => {
            for a in 0..n {
                let mut sum = Rational::zero();
                for b in 0..n {
                    if let Ok(l) = g.extended_label(a, b) {
                        sum += l.as_constant().expect("probabilistic labels are constants");
                    }
                }
                if !sum.is_one() {
                    third.push(Violation {
                        from: g.rooms[a].clone(),
                        to: g.rooms[a].clone(),
                        detail: format!(
                            "outgoing probabilities sum to {}",
                            crate::algebra::rational::format_rational(&sum)
                        ),
                    });
                }
            }
            checks.push(AxiomCheck {
                name: CHECK_ROW_SUMS.into(),
                passed: third.is_empty(),
                violations: third,
            });
        }
        Mode::Distance => {
            for a in 0..n {
                if !g.edges[&(a, a)].is_one() {
                    third.push(Violation {
                        from: g.rooms[a].clone(),
                        to: g.rooms[a].clone(),
                        detail: "self distance is not 1".into(),
                    });
                }
            }
            checks.push(AxiomCheck {
                name: CHECK_UNIT_DIAGONAL.into(),
                passed: third.is_empty(),
                violations: third,
            });
        }
    }
    ValidationReport {
        mode: g.mode,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn pair_violation(g: &LabeledDigraph, a: usize, b: usize, path: &[usize], what: &str) -> Violation {
    let seq: Vec<&str> = path.iter().map(|&i| g.rooms[i].as_str()).collect();
    Violation {
        from: g.rooms[a].clone(),
        to: g.rooms[b].clone(),
        detail: format!("{what} along ({})", seq.join(",")),
    }
}

/// `S_G` or `D_G`: the extension of the edge labels to all pairs, laid out column-wise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedKernel {
    pub mode: Mode,
    pub matrix: SquareMatrix,
}

impl ExtendedKernel {
    /// Extended label `p(from, to)` / `d(from, to)`.
    pub fn value(&self, from: &str, to: &str) -> Result<&Polynomial> {
        self.matrix.entry(to, from)
    }

    /// Principal submatrix on a block of rooms.
    pub fn restrict(&self, rooms: &[String]) -> Result<ExtendedKernel> {
        Ok(ExtendedKernel {
            mode: self.mode,
            matrix: self.matrix.restrict(rooms)?,
        })
    }
}

pub fn extended_kernel(g: &LabeledDigraph) -> Result<ExtendedKernel> {
    let report = validate_axioms(g);
    if !report.passed {
        return Err(Error::AxiomViolation(Box::new(report)));
    }
    Ok(unchecked_kernel(g))
}

/// Kernel without axiom validation; the product along the first minimal sequence found.
pub(crate) fn unchecked_kernel(g: &LabeledDigraph) -> ExtendedKernel {
    let n = g.num_rooms();
    let mut rows = vec![vec![Polynomial::zero(); n]; n];
    for a in 0..n {
        for (b, row) in rows.iter_mut().enumerate() {
            row[a] = g.extended_label(a, b).expect("connected graph");
        }
    }
    ExtendedKernel {
        mode: g.mode,
        matrix: SquareMatrix::new(g.rooms.clone(), rows).expect("distinct rooms"),
    }
}

/// Whether `gp` is the normalization of `gd` at the point `sigma`:
/// `p(A,B) = d(A,B)(σ) / Σ_C d(A,C)(σ)` for every ordered pair.
pub fn check_dual(
    gp: &LabeledDigraph,
    gd: &LabeledDigraph,
    sigma: &HashMap<String, Rational>,
) -> Result<bool> {
    if gp.mode != Mode::Probabilistic || gd.mode != Mode::Distance {
        return Err(Error::ModeMismatch(
            "dual check needs a probabilistic and a distance graph".into(),
        ));
    }
    if gp.rooms != gd.rooms || gp.edges.keys().ne(gd.edges.keys()) {
        return Err(Error::BadGraph("dual graphs must share rooms and edges".into()));
    }
    let kp = unchecked_kernel(gp);
    let kd = unchecked_kernel(gd);
    let n = gd.num_rooms();
    for a in 0..n {
        let values = (0..n)
            .map(|b| kd.matrix.get(b, a).eval(sigma))
            .collect::<Result<Vec<_>>>()?;
        let total: Rational = values.iter().sum();
        for (b, d) in values.iter().enumerate() {
            let p = kp.matrix.get(b, a).as_constant().expect("constant");
            if total.is_zero() || p != d / &total {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Probabilistic graph on the same rooms and edges whose edge labels are the
/// normalized distances `d(A,B)(σ) / Σ_C d(A,C)(σ)`.
pub fn normalize_distance_graph(
    gd: &LabeledDigraph,
    sigma: &HashMap<String, Rational>,
) -> Result<LabeledDigraph> {
    if gd.mode != Mode::Distance {
        return Err(Error::ModeMismatch("normalization needs a distance graph".into()));
    }
    let kd = unchecked_kernel(gd);
    let n = gd.num_rooms();
    let mut totals = Vec::with_capacity(n);
    for a in 0..n {
        let mut t = Rational::zero();
        for b in 0..n {
            t += kd.matrix.get(b, a).eval(sigma)?;
        }
        totals.push(t);
    }
    let edges = gd
        .edges
        .iter()
        .map(|(&(a, b), l)| {
            let v = l.eval(sigma)? / &totals[a];
            Ok((gd.rooms[a].clone(), gd.rooms[b].clone(), Polynomial::constant(v)))
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDigraph::new(Mode::Probabilistic, gd.rooms.clone(), edges)
}

/// JSON graph format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub mode: Mode,
    pub rooms: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub label: Polynomial,
}

impl TryFrom<GraphFile> for LabeledDigraph {
    type Error = Error;
    fn try_from(f: GraphFile) -> Result<Self> {
        LabeledDigraph::new(
            f.mode,
            f.rooms,
            f.edges.into_iter().map(|e| (e.from, e.to, e.label)).collect::<Vec<_>>(),
        )
    }
}

impl From<&LabeledDigraph> for GraphFile {
    fn from(g: &LabeledDigraph) -> Self {
        GraphFile {
            mode: g.mode,
            rooms: g.rooms.clone(),
            edges: g
                .edges()
                .map(|(a, b, l)| EdgeRecord {
                    from: a.to_owned(),
                    to: b.to_owned(),
                    label: l.clone(),
                })
                .collect(),
        }
    }
}

impl Serialize for LabeledDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        LabeledDigraph::try_from(f).map_err(serde::de::Error::custom)
    }
}
