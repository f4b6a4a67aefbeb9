//! Seeded generators for desk-scale instances.
//!
//! Every generator takes an explicit RNG so a seed fixes the output exactly.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::int;
use crate::algebra::{Monomial, Polynomial, SquareMatrix};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::corridor::{glue_system, BlockGlueSpec, CorridorSet};
use crate::error::Result;
use crate::graph::{LabeledDigraph, Mode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Square matrix of integers in `[lo, hi]`.
pub fn int_matrix<R: Rng>(rng: &mut R, labels: Vec<String>, lo: i64, hi: i64) -> SquareMatrix {
    let n = labels.len();
    let rows = (0..n)
        .map(|_| (0..n).map(|_| Polynomial::int(rng.gen_range(lo..=hi))).collect())
        .collect();
    SquareMatrix::new(labels, rows).expect("distinct labels")
}

/// Polynomial in `vars` with up to `terms` terms, small integer coefficients and degree ≤ 2 per variable.
pub fn small_poly<R: Rng>(rng: &mut R, vars: &[&str], terms: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let mono = Monomial::from_pairs(vars.iter().map(|v| (*v, rng.gen_range(0..=2u32))))
            .expect("valid variable names");
        let c = rng.gen_range(-3..=3i64);
        p += &Polynomial::term(int(c), mono);
    }
    p
}

/// Matrix whose entries are random polynomials in at most two variables.
pub fn poly_matrix<R: Rng>(rng: &mut R, n: usize) -> SquareMatrix {
    let vars = ["x", "y"];
    SquareMatrix::from_fn((0..n).map(|i| i.to_string()).collect(), |_, _| {
        let k = rng.gen_range(0..=2);
        small_poly(rng, &vars[..k], 2)
    })
    .expect("distinct labels")
}

/// `r` blocks of sizes in `1..=max_size` with integer entries in `[−3, 3]`,
/// a random distinguished index per block and symbolic `q`.
pub fn blocks<R: Rng>(rng: &mut R, r: usize, max_size: usize) -> BlockGlueSpec {
    let mut matrices = Vec::with_capacity(r);
    let mut first_index = Vec::with_capacity(r);
    for k in 0..r {
        let n = rng.gen_range(1..=max_size);
        let labels: Vec<String> = (0..n).map(|i| format!("B{}_{}", k + 1, i + 1)).collect();
        first_index.push(labels.choose(rng).expect("nonempty").clone());
        matrices.push(int_matrix(rng, labels, -3, 3));
    }
    BlockGlueSpec {
        matrices,
        first_index,
        q: Polynomial::var("q"),
    }
}

/// Random labeled tree on `n` rooms `<prefix>0 …`, with a distinct variable
/// per edge direction: `<prefix>u<i>` towards room `i`, `<prefix>w<i>` back.
pub fn tree<R: Rng>(rng: &mut R, n: usize, prefix: &str) -> LabeledDigraph {
    let rooms: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((rooms[parent].clone(), rooms[i].clone(), Polynomial::var(&format!("{prefix}u{i}"))));
        edges.push((rooms[i].clone(), rooms[parent].clone(), Polynomial::var(&format!("{prefix}w{i}"))));
    }
    LabeledDigraph::new(Mode::Distance, rooms, edges).expect("trees are valid distance graphs")
}

/// Apartments (random trees of at most `max_rooms` rooms) chained by
/// `corridors` corridors of width at most `max_width`.
///
/// Each corridor joins one unused room of an apartment already in the system
/// to one room of each of `width − 1` fresh apartments, so apartments and
/// corridors form a tree and the corridor conditions hold by construction.
pub fn corridor_system<R: Rng>(
    rng: &mut R,
    corridors: usize,
    max_width: usize,
    max_rooms: usize,
) -> Result<(LabeledDigraph, Vec<CorridorSet>)> {
    let apartment = |rng: &mut R, k: usize| {
        let n = rng.gen_range(1..=max_rooms);
        tree(rng, n, &format!("K{k}r"))
    };
    let mut parts = vec![apartment(rng, 0)];
    let mut free: Vec<String> = parts[0].rooms().to_vec();
    let mut sets = Vec::new();
    for c in 0..corridors {
        let Some(pos) = (!free.is_empty()).then(|| rng.gen_range(0..free.len())) else {
            break;
        };
        let mut entrances = vec![free.swap_remove(pos)];
        for _ in 1..rng.gen_range(2..=max_width.max(2)) {
            let k = parts.len();
            let part = apartment(rng, k);
            let rooms = part.rooms().to_vec();
            let e = rooms.choose(rng).expect("nonempty").clone();
            free.extend(rooms.into_iter().filter(|r| *r != e));
            entrances.push(e);
            parts.push(part);
        }
        sets.push(CorridorSet::new(entrances, Polynomial::var(&format!("q{}", c + 1))));
    }
    let g = glue_system(&parts, &sets)?;
    Ok((g, sets))
}

/// `m` random lines or planes through small integer data, none coincident.
pub fn arrangement<R: Rng>(rng: &mut R, m: usize, dim: usize) -> Arrangement {
    let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(m);
    while hyperplanes.len() < m {
        let normal: Vec<_> = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
        let i = hyperplanes.len() + 1;
        let h = Hyperplane {
            normal,
            offset: int(rng.gen_range(-3..=3)),
            plus: format!("h{i}+"),
            minus: format!("h{i}-"),
        };
        let mut candidate = hyperplanes.clone();
        candidate.push(h);
        if let Ok(a) = Arrangement::new(dim, candidate.clone()) {
            debug_assert_eq!(a.len(), candidate.len());
            hyperplanes = candidate;
        }
    }
    Arrangement::new(dim, hyperplanes).expect("checked while building")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corridor::multi_corridor_partition;
    use crate::graph::validate_axioms;

    #[test]
    fn deterministic() {
        let a = tree(&mut rng(7), 6, "R");
        let b = tree(&mut rng(7), 6, "R");
        assert_eq!(a, b);
        let s1 = blocks(&mut rng(3), 3, 4);
        let s2 = blocks(&mut rng(3), 3, 4);
        assert_eq!(s1, s2);
    }

    #[test]
    fn corridor_systems_partition_into_apartments() {
        let mut r = rng(11);
        for _ in 0..20 {
            let (g, sets) = corridor_system(&mut r, 3, 3, 4).unwrap();
            assert!(validate_axioms(&g).passed);
            let p = multi_corridor_partition(&g, &sets).unwrap();
            for b in &p.blocks {
                let prefix = b.rooms[0].split('r').next().unwrap();
                assert!(b.rooms.iter().all(|x| x.split('r').next().unwrap() == prefix));
            }
        }
    }

    #[test]
    fn arrangements_are_valid() {
        let mut r = rng(5);
        for _ in 0..10 {
            let a = arrangement(&mut r, 4, 2);
            assert_eq!(a.len(), 4);
        }
    }
}
