//! Determinant identities for glued block matrices and corridor graphs.
//!
//! Each `verify_*` computes the determinant directly (left-hand side) and the
//! claimed product of factors (right-hand side) and reports whether they agree
//! as canonical polynomials. A report with `equal == false` is a normal result.

use serde::Serialize;

use crate::algebra::det::ABSOLUTE_MAX_N;
use crate::algebra::{determinant, Polynomial, SquareMatrix};
use crate::corridor::{build_mq, corridor_partition, multi_corridor_partition, BlockGlueSpec, CorridorPartition, CorridorSet};
use crate::error::{Error, Result};
use crate::graph::{extended_kernel, ExtendedKernel, LabeledDigraph, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub desc: String,
    pub poly: Polynomial,
}

impl Factor {
    pub fn new(desc: impl Into<String>, poly: Polynomial) -> Self {
        Factor {
            desc: desc.into(),
            poly,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub lhs: Polynomial,
    pub factors: Vec<Factor>,
    pub rhs: Polynomial,
    pub equal: bool,
}

impl FactorizationReport {
    pub fn new(lhs: Polynomial, factors: Vec<Factor>) -> Self {
        let rhs: Polynomial = factors.iter().map(|f| f.poly.clone()).product();
        let equal = lhs == rhs;
        FactorizationReport {
            lhs,
            factors,
            rhs,
            equal,
        }
    }
}

pub(crate) fn checked_det(m: &SquareMatrix) -> Result<Polynomial> {
    if m.size() > ABSOLUTE_MAX_N {
        return Err(Error::SizeCap {
            what: "determinant",
            size: m.size(),
            cap: ABSOLUTE_MAX_N,
        });
    }
    Ok(determinant(m))
}

/// `1 + Σ_{K, #K ≥ 2} (−1)^{#K−1} (#K−1) ∏_{k∈K} x_k`, by direct subset enumeration.
pub fn corridor_sum_factor(values: &[Polynomial]) -> Polynomial {
    let r = values.len();
    assert!(r < 31, "subset enumeration over {r} values");
    let mut total = Polynomial::one();
    for mask in 0u32..(1 << r) {
        let size = mask.count_ones() as i64;
        if size < 2 {
            continue;
        }
        let product: Polynomial = (0..r)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| values[k].clone())
            .product();
        let coeff = if size % 2 == 0 { -(size - 1) } else { size - 1 };
        total += &(&Polynomial::int(coeff) * &product);
    }
    total
}

/// The matrix with `a_1 … a_n` on the diagonal and 1 elsewhere.
pub fn lemat_matrix(vars: &[Polynomial]) -> SquareMatrix {
    let labels = (1..=vars.len()).map(|i| i.to_string()).collect();
    SquareMatrix::from_fn(labels, |i, j| {
        if i == j {
            vars[i].clone()
        } else {
            Polynomial::one()
        }
    })
    .expect("distinct labels")
}

/// `∏ a_i + Σ_{I ⊆ [n], #I ≤ n−2} (−1)^{n−#I−1} (n−#I−1) ∏_{i∈I} a_i`.
pub fn lemat_rhs(vars: &[Polynomial]) -> Result<Polynomial> {
    let n = vars.len();
    if n < 2 {
        return Err(Error::BadArity(format!("need at least 2 variables, got {n}")));
    }
    if n > 24 {
        return Err(Error::SizeCap {
            what: "subset enumeration",
            size: n,
            cap: 24,
        });
    }
    let mut total: Polynomial = vars.iter().cloned().product();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size + 2 > n {
            continue;
        }
        let k = (n - size - 1) as i64;
        let coeff = if k % 2 == 0 { k } else { -k };
        let product: Polynomial = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| vars[i].clone())
            .product();
        total += &(&Polynomial::int(coeff) * &product);
    }
    Ok(total)
}

/// `a1 … an` as polynomials.
pub fn lemat_vars(n: usize) -> Vec<Polynomial> {
    (1..=n).map(|i| Polynomial::var(&format!("a{i}"))).collect()
}

pub fn verify_lemat(n: usize) -> Result<FactorizationReport> {
    let vars = lemat_vars(n);
    let rhs = lemat_rhs(&vars)?;
    let lhs = checked_det(&lemat_matrix(&vars))?;
    Ok(FactorizationReport::new(lhs, vec![Factor::new(format!("closed form, n = {n}"), rhs)]))
}

/// Right-hand side factors of the block gluing identity: the corridor factor
/// over `q·a_{i1,i1}` followed by `det A_k` for each block.
pub fn thmat_factors(spec: &BlockGlueSpec) -> Result<Vec<Factor>> {
    let pivots = spec.pivots()?;
    let values: Vec<Polynomial> = pivots.iter().map(|p| &spec.q * p).collect();
    let mut factors = vec![Factor::new("coupling", corridor_sum_factor(&values))];
    for (k, m) in spec.matrices.iter().enumerate() {
        factors.push(Factor::new(format!("det A{}", k + 1), checked_det(m)?));
    }
    Ok(factors)
}

pub fn verify_thmat(spec: &BlockGlueSpec) -> Result<FactorizationReport> {
    let m = build_mq(spec)?;
    let lhs = checked_det(&m)?;
    Ok(FactorizationReport::new(lhs, thmat_factors(spec)?))
}

/// `(1 + (m−1)q)(1 − q)^{m−1}`.
pub fn corridor_closed_form(width: usize, q: &Polynomial) -> Polynomial {
    let m = width as i64;
    let linear = &Polynomial::one() + &(&Polynomial::int(m - 1) * q);
    let base = &Polynomial::one() - q;
    &linear * &base.pow(width.saturating_sub(1) as u32)
}

/// Checks `(1 + (m−1)q)(1 − q)^{m−1} = 1 + Σ_{k=2}^{m} (−1)^{k−1}(k−1) C(m,k) q^k`.
pub fn th2_binomial_identity(m: usize) -> bool {
    if m == 0 {
        return false;
    }
    let q = Polynomial::var("q");
    let left = corridor_closed_form(m, &q);
    let mut right = Polynomial::one();
    let mut binom: i64 = m as i64; // C(m, 1)
    for k in 2..=m {
        binom = binom * (m as i64 - k as i64 + 1) / k as i64;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        right += &(&Polynomial::int(sign * (k as i64 - 1) * binom) * &q.pow(k as u32));
    }
    left == right
}

/// Graph, kernel and joint partition shared by the graph-level identities.
pub struct CorridorSystem {
    pub kernel: ExtendedKernel,
    pub partition: CorridorPartition,
}

pub fn prepare_system(g: &LabeledDigraph, corridors: &[CorridorSet], mode: Mode) -> Result<CorridorSystem> {
    if g.mode() != mode {
        return Err(Error::ModeMismatch(format!("expected a {mode} graph, got {}", g.mode())));
    }
    let kernel = extended_kernel(g)?;
    let partition = multi_corridor_partition(g, corridors)?;
    Ok(CorridorSystem { kernel, partition })
}

fn block_factors(
    sys: &CorridorSystem,
    mut per_block: impl FnMut(&[String], &ExtendedKernel) -> Result<Polynomial>,
) -> Result<Vec<Factor>> {
    sys.partition
        .blocks
        .iter()
        .map(|b| {
            let k = sys.kernel.restrict(&b.rooms)?;
            Ok(Factor::new(format!("block {{{}}}", b.rooms.join(",")), per_block(&b.rooms, &k)?))
        })
        .collect()
}

/// Probabilistic graph with constant-label corridors.
pub fn verify_th1(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<FactorizationReport> {
    let sys = prepare_system(g, corridors, Mode::Probabilistic)?;
    let lhs = checked_det(&sys.kernel.matrix)?;
    let mut factors = Vec::new();
    for (i, u) in corridors.iter().enumerate() {
        let values = u
            .entrances
            .iter()
            .map(|a| Ok(&u.label * g.label(a, a).ok_or_else(|| Error::UnknownRoom(a.clone()))?))
            .collect::<Result<Vec<_>>>()?;
        factors.push(Factor::new(
            format!("corridor {} {{{}}}", i + 1, u.entrances.join(",")),
            corridor_sum_factor(&values),
        ));
    }
    factors.extend(block_factors(&sys, |_, k| checked_det(&k.matrix))?);
    Ok(FactorizationReport::new(lhs, factors))
}

/// For each corridor, in order, the block containing each entrance right after
/// that corridor splits its host block.
fn entrance_blocks(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<Vec<Vec<Vec<String>>>> {
    let mut blocks: Vec<Vec<String>> = vec![g.rooms().to_vec()];
    let mut out = Vec::with_capacity(corridors.len());
    for (k, u) in corridors.iter().enumerate() {
        let own = corridor_partition(g, u)?;
        let host = blocks
            .iter()
            .position(|b| b.contains(&u.entrances[0]))
            .ok_or_else(|| Error::UnknownRoom(u.entrances[0].clone()))?;
        let host = blocks.remove(host);
        if u.entrances.iter().any(|e| !host.contains(e)) {
            return Err(Error::NotNested { corridor: k });
        }
        let pieces: Vec<Vec<String>> = own
            .blocks
            .iter()
            .map(|piece| host.iter().filter(|r| piece.rooms.contains(r)).cloned().collect())
            .collect();
        out.push(
            u.entrances
                .iter()
                .map(|e| pieces.iter().find(|p| p.contains(e)).cloned().expect("pieces cover the host"))
                .collect(),
        );
        blocks.extend(pieces);
    }
    Ok(out)
}

/// `2 − p + (1 − p)² · [S_W⁻¹]_{AA}` for entrance `A` with self-loop `p` in block `W`.
fn entrance_weight(kernel: &ExtendedKernel, block: &[String], a: &str, p: &Polynomial) -> Result<Polynomial> {
    let det_w = checked_det(&kernel.restrict(block)?.matrix)?;
    let rest: Vec<String> = block.iter().filter(|r| *r != a).cloned().collect();
    let cofactor = checked_det(&kernel.restrict(&rest)?.matrix)?;
    if det_w.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let one_minus = &Polynomial::one() - p;
    let correction = (&(&one_minus * &one_minus) * &cofactor).exact_div(&det_w)?;
    Ok(&(&Polynomial::int(2) - p) + &correction)
}

/// Probabilistic gluing identity with each entrance contributing `c_i · t_A`
/// instead of `c_i · p(A,A)`, where `t_A = 2 − p + (1 − p)² · [S_W⁻¹]_{AA}` and
/// `W` is the block of `A` right after its corridor is cut.
///
/// A corridor edge carries `c_i` between the entrances themselves, while the
/// block gluing construction puts `c_i · p(A,A) · p(B,B)` there; `t_A` absorbs
/// that difference (matrix determinant lemma). When `p(A,A) = 1` the two agree.
/// Requires every such block to have a nonzero determinant.
pub fn verify_th1_entrance_corrected(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<FactorizationReport> {
    let sys = prepare_system(g, corridors, Mode::Probabilistic)?;
    entrance_corrected_report(g, corridors, &sys)
}

fn entrance_corrected_report(
    g: &LabeledDigraph,
    corridors: &[CorridorSet],
    sys: &CorridorSystem,
) -> Result<FactorizationReport> {
    let lhs = checked_det(&sys.kernel.matrix)?;
    let mut factors = Vec::new();
    for (i, (u, blocks)) in corridors.iter().zip(entrance_blocks(g, corridors)?).enumerate() {
        let values = u
            .entrances
            .iter()
            .zip(&blocks)
            .map(|(a, w)| {
                let p = g.label(a, a).ok_or_else(|| Error::UnknownRoom(a.clone()))?;
                Ok(&u.label * &entrance_weight(&sys.kernel, w, a, p)?)
            })
            .collect::<Result<Vec<_>>>()?;
        factors.push(Factor::new(
            format!("corridor {} {{{}}}", i + 1, u.entrances.join(",")),
            corridor_sum_factor(&values),
        ));
    }
    factors.extend(block_factors(sys, |_, k| checked_det(&k.matrix))?);
    Ok(FactorizationReport::new(lhs, factors))
}

fn corridor_factors(corridors: &[CorridorSet]) -> Vec<Factor> {
    corridors
        .iter()
        .enumerate()
        .map(|(i, u)| {
            Factor::new(
                format!("corridor {} {{{}}}", i + 1, u.entrances.join(",")),
                corridor_closed_form(u.width(), &u.label),
            )
        })
        .collect()
}

/// Distance graph with single-variable corridors.
pub fn verify_th2(g: &LabeledDigraph, corridors: &[CorridorSet]) -> Result<FactorizationReport> {
    let sys = prepare_system(g, corridors, Mode::Distance)?;
    let lhs = checked_det(&sys.kernel.matrix)?;
    let mut factors = corridor_factors(corridors);
    factors.extend(block_factors(&sys, |_, k| checked_det(&k.matrix))?);
    Ok(FactorizationReport::new(lhs, factors))
}

/// Shared driver for identities whose block factors come from a closed form.
pub(crate) fn verify_distance_blocks(
    g: &LabeledDigraph,
    corridors: &[CorridorSet],
    per_block: impl FnMut(&[String], &ExtendedKernel) -> Result<Polynomial>,
) -> Result<FactorizationReport> {
    let sys = prepare_system(g, corridors, Mode::Distance)?;
    let lhs = checked_det(&sys.kernel.matrix)?;
    let mut factors = corridor_factors(corridors);
    factors.extend(block_factors(&sys, per_block)?);
    Ok(FactorizationReport::new(lhs, factors))
}
