//! Exact Fourier-Motzkin elimination for the system `lambda . g >= 1`.
//!
//! Every derived inequality carries the nonnegative multipliers that produced it
//! from the original system, so an infeasible system yields a nonnegative
//! combination of generators summing to zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactlat::BigRat;

#[derive(Clone, Debug)]
struct Inequality {
    coeffs: Vec<BigRat>,
    rhs: BigRat,
    multipliers: Vec<BigRat>,
}

impl Inequality {
    /// Positive rescaling so that the first nonzero coefficient is +-1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            let inv = lead.recip();
            for c in self.coeffs.iter_mut() {
                *c *= &inv;
            }
            self.rhs *= &inv;
            for m in self.multipliers.iter_mut() {
                *m *= &inv;
            }
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum FmOutcome {
    /// A rational functional with `lambda . g >= 1` for every generator.
    Feasible(Vec<BigRat>),
    /// Natural coefficients, not all zero, whose combination of generators is zero.
    Infeasible(Vec<u64>),
}

pub(crate) fn find_grading(dim: usize, generators: &[Vec<i64>]) -> FmOutcome {
    let n = generators.len();
    let mut current: Vec<Inequality> = generators
        .iter()
        .enumerate()
        .map(|(j, g)| Inequality {
            coeffs: g.iter().map(|&x| BigRat::from_integer(x.into())).collect(),
            rhs: BigRat::one(),
            multipliers: (0..n).map(|k| if k == j { BigRat::one() } else { BigRat::zero() }).collect(),
        })
        .collect();

    let mut stages: Vec<(usize, Vec<Inequality>)> = Vec::with_capacity(dim);
    let mut remaining: Vec<usize> = (0..dim).collect();

    while !remaining.is_empty() {
        if let Some(bad) = current.iter().find(|q| q.is_constant() && q.rhs.is_positive()) {
            return FmOutcome::Infeasible(certificate(&bad.multipliers));
        }
        // eliminate the variable producing the fewest new inequalities
        let (pos_idx, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| {
                let pos = current.iter().filter(|q| q.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|q| q.coeffs[v].is_negative()).count();
                (pos * neg, v)
            })
            .expect("nonempty");
        remaining.remove(pos_idx);

        let mut next: Vec<Inequality> = Vec::new();
        let (with, without): (Vec<&Inequality>, Vec<&Inequality>) =
            current.iter().partition(|q| !q.coeffs[var].is_zero());
        next.extend(without.into_iter().cloned());
        let pos: Vec<&Inequality> = with.iter().copied().filter(|q| q.coeffs[var].is_positive()).collect();
        let neg: Vec<&Inequality> = with.iter().copied().filter(|q| q.coeffs[var].is_negative()).collect();
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[var].clone();
                let b = -q.coeffs[var].clone();
                let combine = |x: &BigRat, y: &BigRat| x * &b + y * &a;
                next.push(Inequality {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| combine(x, y)).collect(),
                    rhs: combine(&p.rhs, &q.rhs),
                    multipliers: p.multipliers.iter().zip(&q.multipliers).map(|(x, y)| combine(x, y)).collect(),
                });
            }
        }
        stages.push((var, current));
        current = dedupe(next);
    }
    if let Some(bad) = current.iter().find(|q| q.rhs.is_positive()) {
        return FmOutcome::Infeasible(certificate(&bad.multipliers));
    }

    let mut lambda = vec![BigRat::zero(); dim];
    for (var, system) in stages.iter().rev() {
        let mut lo: Option<BigRat> = None;
        let mut hi: Option<BigRat> = None;
        for q in system {
            let a = &q.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            let rest: BigRat = q
                .coeffs
                .iter()
                .enumerate()
                .filter(|(i, _)| i != var)
                .fold(BigRat::zero(), |acc, (i, c)| acc + c * &lambda[i]);
            let bound = (&q.rhs - rest) / a;
            if a.is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        lambda[*var] = pick_value(lo, hi);
    }
    FmOutcome::Feasible(lambda)
}

fn dedupe(ineqs: Vec<Inequality>) -> Vec<Inequality> {
    let mut best: HashMap<Vec<BigRat>, Inequality> = HashMap::new();
    let mut order: Vec<Vec<BigRat>> = Vec::new();
    for q in ineqs {
        let q = q.normalized();
        if q.is_constant() && !q.rhs.is_positive() {
            continue;
        }
        match best.get_mut(&q.coeffs) {
            Some(existing) => {
                if q.rhs > existing.rhs {
                    *existing = q;
                }
            }
            None => {
                order.push(q.coeffs.clone());
                best.insert(q.coeffs.clone(), q);
            }
        }
    }
    order.into_iter().map(|k| best.remove(&k).expect("present")).collect()
}

/// The integer of smallest magnitude in `[lo, hi]`, or `lo` itself if none exists.
fn pick_value(lo: Option<BigRat>, hi: Option<BigRat>) -> BigRat {
    let zero = BigRat::zero();
    match (lo, hi) {
        (None, None) => zero,
        (Some(l), None) => {
            if l <= zero {
                zero
            } else {
                l.ceil()
            }
        }
        (None, Some(h)) => {
            if h >= zero {
                zero
            } else {
                h.floor()
            }
        }
        (Some(l), Some(h)) => {
            if l <= zero && zero <= h {
                zero
            } else if l > zero {
                let c = l.ceil();
                if c <= h {
                    c
                } else {
                    l
                }
            } else {
                let f = h.floor();
                if f >= l {
                    f
                } else {
                    h
                }
            }
        }
    }
}

fn certificate(multipliers: &[BigRat]) -> Vec<u64> {
    let lcm = multipliers.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let ints: Vec<BigInt> = multipliers.iter().map(|m| (m * BigRat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_u64().expect("certificate coefficient fits in u64")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_feasible(gens: &[Vec<i64>], lambda: &[BigRat]) {
        for g in gens {
            let v: BigRat = g.iter().zip(lambda).map(|(&x, l)| l * BigRat::from_integer(x.into())).sum();
            assert!(v >= BigRat::one(), "{g:?} . {lambda:?} = {v}");
        }
    }

    #[test]
    fn two_generator_cone() {
        let gens = vec![vec![1, -1], vec![0, 1]];
        match find_grading(2, &gens) {
            FmOutcome::Feasible(l) => {
                assert_eq!(l, vec![BigRat::from_integer(2.into()), BigRat::one()]);
                check_feasible(&gens, &l);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn line_is_detected() {
        let gens = vec![vec![1, 0], vec![0, 1], vec![0, -1]];
        assert_eq!(find_grading(2, &gens), FmOutcome::Infeasible(vec![0, 1, 1]));
    }

    #[test]
    fn hidden_line_through_three_generators() {
        let gens = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        assert_eq!(find_grading(2, &gens), FmOutcome::Infeasible(vec![1, 1, 1]));
    }

    #[test]
    fn numerical_grading_is_one() {
        match find_grading(1, &[vec![3], vec![5]]) {
            FmOutcome::Feasible(l) => assert_eq!(l, vec![BigRat::one()]),
            other => panic!("{other:?}"),
        }
    }
}
