//! Real hyperplane arrangements with rational data.
//!
//! Faces are found by testing every sign vector for feasibility, so the
//! arrangement size is capped. Chambers carry the exponential distance
//! `v(A, B) = ∏ h_H^{ε_H(A)}` over the hyperplanes separating `A` from `B`.

pub mod acyclic;
pub mod feasibility;
pub mod system;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::is_valid_var_name;
use crate::algebra::rational::format_rational;
use crate::algebra::{parse_rational, Polynomial, Rational, SquareMatrix};
use crate::error::{Error, Result};
use crate::factorization::{checked_det, Factor, FactorizationReport};
use crate::graph::{LabeledDigraph, Mode};
use feasibility::{find_witness, Inequality};

pub use acyclic::{indirectly_acyclic, verify_ledi, verify_prop_acyclic_corridor, AcyclicCheckResult};
pub use system::{verify_prop_arrangement_corridor, ArrangementSystem, NamedArrangement};

pub const MAX_HYPERPLANES: usize = 8;
pub const MAX_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One sign per hyperplane, written as a string over `+0-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn is_chamber(&self) -> bool {
        self.0.iter().all(|s| *s != Sign::Zero)
    }

    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, s)| **s == Sign::Zero).map(|(i, _)| i)
    }

    /// `self ≤ other` in the face order: every sign of `self` is zero or agrees with `other`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == Sign::Zero || a == b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl std::str::FromStr for SignVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::parse(format!("bad sign `{c}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `{x : normal · x = offset}`; the positive side is `normal · x > offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub plus: String,
    pub minus: String,
}

impl Hyperplane {
    pub fn var(&self, side: Sign) -> Polynomial {
        match side {
            Sign::Plus => Polynomial::var(&self.plus),
            Sign::Minus => Polynomial::var(&self.minus),
            Sign::Zero => panic!("no variable for the hyperplane itself"),
        }
    }

    /// `sign · (normal · x − offset) ⊳ 0`, as one or two inequalities.
    fn constraints(&self, sign: Sign) -> Vec<Inequality> {
        let forward = Inequality::new(self.normal.clone(), -self.offset.clone(), sign != Sign::Zero);
        let backward = Inequality::new(
            self.normal.iter().map(|c| -c).collect(),
            self.offset.clone(),
            sign != Sign::Zero,
        );
        match sign {
            Sign::Plus => vec![forward],
            Sign::Minus => vec![backward],
            Sign::Zero => vec![forward, backward],
        }
    }

    fn side_of(&self, x: &[Rational]) -> Sign {
        let v: Rational = self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() - &self.offset;
        if v.is_positive() {
            Sign::Plus
        } else if v.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    /// Same point set as `other` (normals and offsets proportional).
    fn coincides_with(&self, other: &Hyperplane) -> bool {
        let Some(k) = self.normal.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if other.normal[k].is_zero() {
            return false;
        }
        let lambda = &other.normal[k] / &self.normal[k];
        self.normal.iter().zip(&other.normal).all(|(a, b)| &(a * &lambda) == b) && &self.offset * &lambda == other.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::BadArrangement(format!(
                    "hyperplane {i} has a normal of length {} in dimension {dim}",
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::BadArrangement(format!("hyperplane {i} has a zero normal")));
            }
            for name in [&h.plus, &h.minus] {
                if !is_valid_var_name(name) {
                    return Err(Error::BadArrangement(format!("bad variable name `{name}`")));
                }
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g.coincides_with(h)) {
                return Err(Error::BadArrangement(format!("hyperplanes {j} and {i} coincide")));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Sign vector of a point.
    pub fn locate(&self, x: &[Rational]) -> SignVector {
        SignVector(self.hyperplanes.iter().map(|h| h.side_of(x)).collect())
    }

    /// Separating variables `h_H^{ε_H(a)}` for `ε_H(a) = −ε_H(b) ≠ 0`.
    pub fn v(&self, a: &SignVector, b: &SignVector) -> Polynomial {
        self.hyperplanes
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .filter(|(_, (sa, sb))| **sa != Sign::Zero && sa.opposite() == **sb)
            .map(|(h, (sa, _))| h.var(*sa))
            .product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub signs: SignVector,
    pub witness: Vec<String>,
    pub dimension: usize,
}

/// All faces of an arrangement, chambers first.
#[derive(Clone, Debug)]
pub struct FaceSet {
    arrangement: Arrangement,
    faces: Vec<Face>,
}

/// Tests all `3^m` sign vectors for nonemptiness.
pub fn enumerate_faces(arr: &Arrangement) -> Result<FaceSet> {
    let m = arr.len();
    if m > MAX_HYPERPLANES {
        return Err(Error::SizeCap {
            what: "hyperplanes",
            size: m,
            cap: MAX_HYPERPLANES,
        });
    }
    if arr.dim > MAX_DIM {
        return Err(Error::SizeCap {
            what: "dimension",
            size: arr.dim,
            cap: MAX_DIM,
        });
    }
    let mut faces = Vec::new();
    for code in 0..3usize.pow(m as u32) {
        let mut rest = code;
        let signs: Vec<Sign> = (0..m)
            .map(|_| {
                let s = [Sign::Plus, Sign::Minus, Sign::Zero][rest % 3];
                rest /= 3;
                s
            })
            .collect();
        let system: Vec<Inequality> = arr
            .hyperplanes
            .iter()
            .zip(&signs)
            .flat_map(|(h, s)| h.constraints(*s))
            .collect();
        if let Some(x) = find_witness(arr.dim, &system) {
            let signs = SignVector(signs);
            debug_assert_eq!(arr.locate(&x), signs);
            let dimension = face_dimension(arr, &signs);
            faces.push(Face {
                signs,
                witness: x.iter().map(format_rational).collect(),
                dimension,
            });
        }
    }
    faces.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.signs.cmp(&b.signs)));
    Ok(FaceSet {
        arrangement: arr.clone(),
        faces,
    })
}

/// `dim − rank` of the normals of the hyperplanes containing the face.
fn face_dimension(arr: &Arrangement, signs: &SignVector) -> usize {
    let rows: Vec<Vec<Rational>> = signs.zeros().map(|i| arr.hyperplanes[i].normal.clone()).collect();
    arr.dim - rank(rows)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// How the chamber count behind one face multiplicity came out for each hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityCheck {
    pub face: SignVector,
    /// `(hyperplane index, number of chambers C with closure(C) ∩ H = closure(F))`.
    pub counts: Vec<(usize, usize)>,
}

impl FaceSet {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn chambers(&self) -> impl Iterator<Item = &SignVector> {
        self.faces.iter().map(|f| &f.signs).filter(|s| s.is_chamber())
    }

    pub fn non_chambers(&self) -> impl Iterator<Item = &SignVector> {
        self.faces.iter().map(|f| &f.signs).filter(|s| !s.is_chamber())
    }

    pub fn contains(&self, face: &SignVector) -> bool {
        self.faces.iter().any(|f| &f.signs == face)
    }

    /// `b_F = ∏_{H ⊇ F} h_H^+ h_H^-`.
    pub fn weight(&self, face: &SignVector) -> Result<Polynomial> {
        if face.is_chamber() {
            return Err(Error::IsChamber(face.to_string()));
        }
        Ok(face
            .zeros()
            .map(|i| {
                let h = &self.arrangement.hyperplanes[i];
                &h.var(Sign::Plus) * &h.var(Sign::Minus)
            })
            .product())
    }

    /// The face whose closure is `closure(chamber) ∩ H`: the largest face `G ≤ chamber` with
    /// `ε_H(G) = 0`. `None` when the closure misses `H`.
    pub fn closure_face_in(&self, chamber: &SignVector, h: usize) -> Option<&SignVector> {
        let candidates: Vec<&SignVector> = self
            .faces
            .iter()
            .map(|f| &f.signs)
            .filter(|g| g.0[h] == Sign::Zero && g.conforms_to(chamber))
            .collect();
        let top = candidates.iter().min_by_key(|g| g.zeros().count())?;
        debug_assert!(candidates.iter().all(|g| g.conforms_to(top)));
        Some(top)
    }

    /// Counts, per hyperplane containing `face`, the chambers whose closure meets it in `closure(face)`.
    pub fn multiplicity_counts(&self, face: &SignVector) -> Result<MultiplicityCheck> {
        if face.is_chamber() {
            return Err(Error::IsChamber(face.to_string()));
        }
        if !self.contains(face) {
            return Err(Error::BadArrangement(format!("`{face}` is not a face")));
        }
        let counts = face
            .zeros()
            .map(|h| {
                let n = self
                    .chambers()
                    .filter(|c| self.closure_face_in(c, h) == Some(face))
                    .count();
                (h, n)
            })
            .collect();
        Ok(MultiplicityCheck {
            face: face.clone(),
            counts,
        })
    }

    /// `β_F`, checked to be the same for every hyperplane containing the face.
    pub fn multiplicity(&self, face: &SignVector) -> Result<usize> {
        let check = self.multiplicity_counts(face)?;
        let first = check.counts[0].1;
        if check.counts.iter().any(|(_, n)| *n != first) {
            return Err(Error::MultiplicityMismatch {
                face: face.to_string(),
                counts: check.counts.iter().map(|(_, n)| *n).collect(),
            });
        }
        if first % 2 != 0 {
            return Err(Error::OddCount {
                face: face.to_string(),
                count: first,
            });
        }
        Ok(first / 2)
    }

    /// `(1 − b_F)^{β_F}` for every non-chamber face with `β_F > 0`.
    pub fn varchenko_factors(&self) -> Result<Vec<Factor>> {
        let mut out = Vec::new();
        for f in self.non_chambers() {
            let beta = self.multiplicity(f)?;
            if beta > 0 {
                let base = &Polynomial::one() - &self.weight(f)?;
                out.push(Factor::new(format!("face {f}"), base.pow(beta as u32)));
            }
        }
        Ok(out)
    }

    pub fn varchenko_rhs(&self) -> Result<Polynomial> {
        Ok(self.varchenko_factors()?.into_iter().map(|f| f.poly).product())
    }

    /// Chamber names in face order.
    pub fn chamber_names(&self) -> Vec<String> {
        self.chambers().map(ToString::to_string).collect()
    }

    /// Entry `(row A, column B)` is `v(B, A)`, matching the extended kernel layout.
    pub fn chamber_distance_matrix(&self) -> SquareMatrix {
        let chambers: Vec<&SignVector> = self.chambers().collect();
        SquareMatrix::from_fn(self.chamber_names(), |i, j| {
            self.arrangement.v(chambers[j], chambers[i])
        })
        .expect("chambers have distinct sign vectors")
    }

    /// Distance graph on the chambers: an edge `A → B` labeled `h_H^{ε_H(A)}`
    /// whenever exactly one hyperplane `H` separates them.
    pub fn chamber_graph(&self) -> Result<LabeledDigraph> {
        let chambers: Vec<&SignVector> = self.chambers().collect();
        let mut edges = Vec::new();
        let mut adjacent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, a) in chambers.iter().enumerate() {
            for (j, b) in chambers.iter().enumerate() {
                let differ: Vec<usize> = (0..a.0.len()).filter(|&k| a.0[k] != b.0[k]).collect();
                if differ.len() == 1 {
                    let h = &self.arrangement.hyperplanes[differ[0]];
                    edges.push((a.to_string(), b.to_string(), h.var(a.0[differ[0]])));
                    adjacent.entry(i).or_default().push(j);
                }
            }
        }
        let mut seen = vec![false; chambers.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in adjacent.get(&i).into_iter().flatten() {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        LabeledDigraph::new(Mode::Distance, self.chamber_names(), edges)
    }
}

/// Determinant of the chamber distance matrix against the product over faces.
pub fn verify_varchenko(arr: &Arrangement) -> Result<FactorizationReport> {
    let faces = enumerate_faces(arr)?;
    let lhs = checked_det(&faces.chamber_distance_matrix())?;
    Ok(FactorizationReport::new(lhs, faces.varchenko_factors()?))
}

/// JSON form `{"dim": 2, "hyperplanes": [{"normal": ["1","0"], "offset": "0", "plus": "h1+", "minus": "h1-"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneRecord {
    pub normal: Vec<String>,
    pub offset: String,
    pub plus: String,
    pub minus: String,
}

impl TryFrom<ArrangementFile> for Arrangement {
    type Error = Error;
    fn try_from(file: ArrangementFile) -> Result<Self> {
        let hyperplanes = file
            .hyperplanes
            .into_iter()
            .map(|h| {
                Ok(Hyperplane {
                    normal: h.normal.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?,
                    offset: parse_rational(&h.offset)?,
                    plus: h.plus,
                    minus: h.minus,
                })
            })
            .collect::<Result<_>>()?;
        Arrangement::new(file.dim, hyperplanes)
    }
}

impl From<&Arrangement> for ArrangementFile {
    fn from(a: &Arrangement) -> Self {
        ArrangementFile {
            dim: a.dim,
            hyperplanes: a
                .hyperplanes
                .iter()
                .map(|h| HyperplaneRecord {
                    normal: h.normal.iter().map(format_rational).collect(),
                    offset: format_rational(&h.offset),
                    plus: h.plus.clone(),
                    minus: h.minus.clone(),
                })
                .collect(),
        }
    }
}

impl Serialize for Arrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArrangementFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = ArrangementFile::deserialize(d)?;
        Arrangement::try_from(file).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::{det_laplace, poly};
    use crate::graph::{extended_kernel, validate_axioms};

    pub(crate) fn line(a: i64, b: i64, c: i64, plus: &str, minus: &str) -> Hyperplane {
        Hyperplane {
            normal: vec![int(a), int(b)],
            offset: int(c),
            plus: plus.into(),
            minus: minus.into(),
        }
    }

    pub(crate) fn plane(lines: Vec<Hyperplane>) -> Arrangement {
        Arrangement::new(2, lines).unwrap()
    }

    fn two_lines() -> Arrangement {
        plane(vec![line(1, 0, 0, "a+", "a-"), line(0, 1, 0, "b+", "b-")])
    }

    fn three_lines(vars: [(&str, &str); 3]) -> Arrangement {
        plane(vec![
            line(1, 0, 0, vars[0].0, vars[0].1),
            line(0, 1, 0, vars[1].0, vars[1].1),
            line(1, 1, 1, vars[2].0, vars[2].1),
        ])
    }

    fn count_by_dimension(f: &FaceSet) -> [usize; 3] {
        let mut out = [0; 3];
        for face in f.faces() {
            out[face.dimension] += 1;
        }
        out
    }

    #[test]
    fn face_counts() {
        let one = enumerate_faces(&plane(vec![line(1, 0, 0, "h+", "h-")])).unwrap();
        assert_eq!(one.faces().len(), 3);
        let two = enumerate_faces(&two_lines()).unwrap();
        assert_eq!(count_by_dimension(&two), [1, 4, 4]);
        let three = enumerate_faces(&three_lines([("h", "h"); 3])).unwrap();
        assert_eq!(count_by_dimension(&three), [3, 9, 7]);
        assert_eq!(three.faces().len(), 19);
        let parallel = enumerate_faces(&plane(vec![
            line(1, 0, 0, "a", "a"),
            line(1, 0, 1, "b", "b"),
            line(0, 1, 0, "c", "c"),
        ]))
        .unwrap();
        assert_eq!(count_by_dimension(&parallel), [2, 7, 6]);
    }

    #[test]
    fn witnesses_certify_faces() {
        let arr = three_lines([("h", "h"); 3]);
        let faces = enumerate_faces(&arr).unwrap();
        for f in faces.faces() {
            let x: Vec<Rational> = f.witness.iter().map(|s| parse_rational(s).unwrap()).collect();
            assert_eq!(arr.locate(&x), f.signs);
        }
    }

    #[test]
    fn euler_count_for_generic_lines() {
        let lines = [
            line(1, 0, 0, "a", "a"),
            line(0, 1, 0, "b", "b"),
            line(1, 1, 1, "c", "c"),
            line(1, -1, 3, "d", "d"),
        ];
        for m in 1..=4 {
            let f = enumerate_faces(&plane(lines[..m].to_vec())).unwrap();
            let [vertices, _, chambers] = count_by_dimension(&f);
            assert_eq!(chambers, 1 + m + vertices, "m = {m}");
            assert_eq!(vertices, m * (m - 1) / 2);
        }
    }

    #[test]
    fn single_hyperplane() {
        let f = enumerate_faces(&plane(vec![line(1, 0, 0, "h+", "h-")])).unwrap();
        let m = f.chamber_distance_matrix();
        assert_eq!(m.entry("+", "-").unwrap(), &poly("h-"));
        assert_eq!(m.entry("-", "+").unwrap(), &poly("h+"));
        let h = SignVector(vec![Sign::Zero]);
        assert_eq!(f.multiplicity(&h).unwrap(), 1);
        assert_eq!(f.weight(&h).unwrap(), poly("h+*h-"));
        assert_eq!(f.varchenko_rhs().unwrap(), poly("1 - h+*h-"));
        let r = verify_varchenko(f.arrangement()).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, poly("1 - h+*h-"));
        let chamber = SignVector(vec![Sign::Plus]);
        assert!(matches!(f.weight(&chamber), Err(Error::IsChamber(_))));
        assert!(matches!(f.multiplicity(&chamber), Err(Error::IsChamber(_))));
    }

    #[test]
    fn empty_arrangement() {
        let f = enumerate_faces(&Arrangement::new(2, vec![]).unwrap()).unwrap();
        assert_eq!(f.faces().len(), 1);
        let r = verify_varchenko(f.arrangement()).unwrap();
        assert_eq!(r.lhs, Polynomial::one());
        assert!(r.equal);
    }

    #[test]
    fn two_lines_multiplicities() {
        let f = enumerate_faces(&two_lines()).unwrap();
        for face in f.non_chambers() {
            let beta = f.multiplicity(face).unwrap();
            if face.zeros().count() == 2 {
                assert_eq!(beta, 0);
                assert_eq!(f.weight(face).unwrap(), poly("a+*a-*b+*b-"));
            } else {
                assert_eq!(beta, 1);
            }
        }
        let opposite = f.arrangement().v(&"++".parse().unwrap(), &"--".parse().unwrap());
        assert_eq!(opposite, poly("a+*b+"));
        let r = verify_varchenko(f.arrangement()).unwrap();
        assert!(r.equal);
        let oracle = det_laplace(&f.chamber_distance_matrix()).unwrap();
        assert_eq!(oracle, (poly("1 - a+*a-").pow(2)) * poly("1 - b+*b-").pow(2));
    }

    #[test]
    fn three_lines_multiplicities() {
        let f = enumerate_faces(&three_lines([("h1", "h1"); 3])).unwrap();
        for face in f.non_chambers() {
            let expected = if face.zeros().count() == 1 { 1 } else { 0 };
            assert_eq!(f.multiplicity(face).unwrap(), expected, "{face}");
            let counts = f.multiplicity_counts(face).unwrap();
            assert!(counts.counts.iter().all(|(_, n)| *n == 2 * expected));
        }
        assert_eq!(f.varchenko_rhs().unwrap(), poly("1 - h1^2").pow(9));
        assert!(verify_varchenko(f.arrangement()).unwrap().equal);
    }

    #[test]
    fn three_lines_distinct_variables() {
        let arr = three_lines([("a+", "a-"), ("b+", "b-"), ("c+", "c-")]);
        let r = verify_varchenko(&arr).unwrap();
        assert!(r.equal);
        let f = enumerate_faces(&arr).unwrap();
        assert_eq!(det_laplace(&f.chamber_distance_matrix()).unwrap(), r.lhs);
    }

    #[test]
    fn parallel_pair_with_transversal() {
        let arr = plane(vec![
            line(1, 0, 0, "a+", "a-"),
            line(1, 0, 1, "b+", "b-"),
            line(0, 1, 0, "c+", "c-"),
        ]);
        let r = verify_varchenko(&arr).unwrap();
        assert!(r.equal, "{r:?}");
    }

    #[test]
    fn chamber_graph_distances_match_v() {
        for arr in [two_lines(), three_lines([("a+", "a-"), ("b+", "b-"), ("c+", "c-")])] {
            let f = enumerate_faces(&arr).unwrap();
            let g = f.chamber_graph().unwrap();
            assert!(validate_axioms(&g).passed);
            let k = extended_kernel(&g).unwrap();
            assert_eq!(k.matrix, f.chamber_distance_matrix());
            for a in f.chambers() {
                for b in f.chambers() {
                    let value = k.value(&a.to_string(), &b.to_string()).unwrap();
                    let expected = if a == b { Polynomial::one() } else { arr.v(a, b) };
                    assert_eq!(value, &expected);
                }
            }
        }
    }

    #[test]
    fn rank_one_specialization_is_a_corridor() {
        let f = enumerate_faces(&plane(vec![line(0, 1, 2, "q", "q")])).unwrap();
        let m = f.chamber_distance_matrix();
        assert_eq!(m.rows(), vec![vec![poly("1"), poly("q")], vec![poly("q"), poly("1")]]);
        let closed = crate::factorization::corridor_closed_form(2, &poly("q"));
        assert_eq!(verify_varchenko(f.arrangement()).unwrap().lhs, closed);
    }

    #[test]
    fn coincident_hyperplanes_rejected() {
        let err = Arrangement::new(2, vec![line(1, 1, 1, "a", "a"), line(-2, -2, -2, "b", "b")]);
        assert!(matches!(err, Err(Error::BadArrangement(_))));
        // parallel is fine
        assert!(Arrangement::new(2, vec![line(1, 1, 1, "a", "a"), line(2, 2, 1, "b", "b")]).is_ok());
        assert!(Arrangement::new(2, vec![line(0, 0, 1, "a", "a")]).is_err());
    }

    #[test]
    fn caps() {
        let many: Vec<Hyperplane> = (0..9).map(|i| line(1, i, 0, "h", "h")).collect();
        assert!(matches!(enumerate_faces(&plane(many)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim":2,"hyperplanes":[{"normal":["1","0"],"offset":"0","plus":"h1+","minus":"h1-"},{"normal":["1/2","3"],"offset":"-1","plus":"h2+","minus":"h2-"}]}"#;
        let arr: Arrangement = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&arr).unwrap(), text);
    }

    #[test]
    fn three_dimensional_coordinate_planes() {
        let h = |v: [i64; 3], name: &str| Hyperplane {
            normal: v.iter().map(|&c| int(c)).collect(),
            offset: int(0),
            plus: format!("{name}+"),
            minus: format!("{name}-"),
        };
        let arr = Arrangement::new(3, vec![h([1, 0, 0], "x"), h([0, 1, 0], "y"), h([0, 0, 1], "z")]).unwrap();
        let f = enumerate_faces(&arr).unwrap();
        assert_eq!(f.faces().len(), 27);
        assert_eq!(f.chambers().count(), 8);
        assert!(verify_varchenko(&arr).unwrap().equal);
    }
}
