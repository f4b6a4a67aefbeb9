//! Exact feasibility of mixed strict/non-strict linear systems.
//!
//! Fourier–Motzkin elimination over the rationals, tracking strictness.
//! A feasible system yields a witness point by back-substitution.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// `coeffs · x + constant > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        Inequality {
            coeffs,
            constant,
            strict,
        }
    }

    /// Scales by a positive factor so the first nonzero entry has absolute value 1.
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(|c| c.abs());
        if let Some(lead) = lead {
            for c in &mut self.coeffs {
                *c = &*c / &lead;
            }
            self.constant = &self.constant / &lead;
        }
        self
    }

    fn value(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let v = self.value(x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    fn trivially_holds(&self) -> Option<bool> {
        if self.coeffs.iter().all(Zero::is_zero) {
            Some(if self.strict {
                self.constant.is_positive()
            } else {
                !self.constant.is_negative()
            })
        } else {
            None
        }
    }
}

/// Returns a point satisfying every inequality, or `None` if the system is infeasible.
pub fn find_witness(dim: usize, system: &[Inequality]) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<Inequality>> = Vec::with_capacity(dim + 1);
    let mut current: BTreeSet<Inequality> = BTreeSet::new();
    for ineq in system {
        assert_eq!(ineq.coeffs.len(), dim, "inequality of wrong dimension");
        match ineq.trivially_holds() {
            Some(true) => {}
            Some(false) => return None,
            None => {
                current.insert(ineq.clone().normalized());
            }
        }
    }
    // after reversal levels[k] constrains x_0 .. x_k; eliminate from the last coordinate down
    for k in (0..dim).rev() {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for ineq in &current {
            let a = &ineq.coeffs[k];
            if a.is_positive() {
                lower.push(ineq);
            } else if a.is_negative() {
                upper.push(ineq);
            } else {
                rest.insert(ineq.clone());
            }
        }
        let mut next = rest;
        for lo in &lower {
            for up in &upper {
                // lo: a x_k + L ⊳ 0 with a > 0; up: −b x_k + U ⊳ 0 with b > 0
                let a = &lo.coeffs[k];
                let b = -&up.coeffs[k];
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(l, u)| &b * l + a * u)
                    .collect();
                let combined = Inequality::new(coeffs, &b * &lo.constant + a * &up.constant, lo.strict || up.strict);
                match combined.trivially_holds() {
                    Some(true) => {}
                    Some(false) => return None,
                    None => {
                        next.insert(combined.normalized());
                    }
                }
            }
        }
        levels.push(current.into_iter().collect());
        current = next;
    }
    // with no variables left every surviving constraint was checked on creation
    debug_assert!(current.is_empty());
    levels.reverse();
    let mut x: Vec<Rational> = vec![Rational::zero(); dim];
    for k in 0..dim {
        x[k] = choose_coordinate(&levels[k], k, &x)?;
    }
    debug_assert!(system.iter().all(|i| i.holds_at(&x)));
    Some(x)
}

/// Picks x_k given fixed x_0 .. x_{k-1}, from the constraints mentioning x_0 .. x_k.
fn choose_coordinate(level: &[Inequality], k: usize, x: &[Rational]) -> Option<Rational> {
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for ineq in level {
        let a = &ineq.coeffs[k];
        if a.is_zero() {
            continue;
        }
        let rest: Rational = ineq.coeffs[..k]
            .iter()
            .zip(&x[..k])
            .fold(ineq.constant.clone(), |acc, (c, v)| acc + c * v);
        let bound = -rest / a;
        if a.is_positive() {
            let tighter = match &lower {
                None => true,
                Some((l, s)) => bound > *l || (bound == *l && ineq.strict && !s),
            };
            if tighter {
                lower = Some((bound, ineq.strict));
            }
        } else {
            let tighter = match &upper {
                None => true,
                Some((u, s)) => bound < *u || (bound == *u && ineq.strict && !s),
            };
            if tighter {
                upper = Some((bound, ineq.strict));
            }
        }
    }
    let one = Rational::one();
    match (lower, upper) {
        (None, None) => Some(Rational::zero()),
        (Some((l, _)), None) => Some(l + one),
        (None, Some((u, _))) => Some(u - one),
        (Some((l, ls)), Some((u, us))) => {
            if l < u {
                Some((l + u) / Rational::from_integer(2.into()))
            } else if l == u && !ls && !us {
                Some(l)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn ineq(coeffs: &[i64], c: i64, strict: bool) -> Inequality {
        Inequality::new(coeffs.iter().map(|&v| int(v)).collect(), int(c), strict)
    }

    #[test]
    fn open_interval() {
        // 0 < x < 1
        let sys = [ineq(&[1], 0, true), ineq(&[-1], 1, true)];
        let x = find_witness(1, &sys).unwrap();
        assert_eq!(x, vec![crate::algebra::rational::ratio(1, 2)]);
    }

    #[test]
    fn strictness_matters() {
        // x ≥ 0 and x ≤ 0 is a point; x > 0 and x ≤ 0 is empty
        assert_eq!(
            find_witness(1, &[ineq(&[1], 0, false), ineq(&[-1], 0, false)]),
            Some(vec![int(0)])
        );
        assert_eq!(find_witness(1, &[ineq(&[1], 0, true), ineq(&[-1], 0, false)]), None);
    }

    #[test]
    fn triangle_interior() {
        // x > 0, y > 0, x + y < 1
        let sys = [ineq(&[1, 0], 0, true), ineq(&[0, 1], 0, true), ineq(&[-1, -1], 1, true)];
        let x = find_witness(2, &sys).unwrap();
        assert!(sys.iter().all(|i| i.holds_at(&x)));
    }

    #[test]
    fn point_on_two_lines_outside_third() {
        // x = 0, y = 0, x + y > 1 is empty
        let sys = [
            ineq(&[1, 0], 0, false),
            ineq(&[-1, 0], 0, false),
            ineq(&[0, 1], 0, false),
            ineq(&[0, -1], 0, false),
            ineq(&[1, 1], -1, true),
        ];
        assert_eq!(find_witness(2, &sys), None);
    }

    #[test]
    fn unbounded_in_three_dimensions() {
        let sys = [ineq(&[1, 1, 1], -5, true), ineq(&[0, 0, 1], 0, false)];
        let x = find_witness(3, &sys).unwrap();
        assert!(sys.iter().all(|i| i.holds_at(&x)));
    }
}
