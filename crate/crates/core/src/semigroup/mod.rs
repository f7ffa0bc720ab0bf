//! Affine semigroups given by generators in `Z^d`.

mod numerical;
mod positivity;

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactlat::{BigRat, IntegerLattice, RatMatrix};
pub(crate) use numerical::{minimal_generators, NumericalTable};
use positivity::{find_grading, FmOutcome};

pub type Vector = Vec<i64>;

/// Outcome of a membership query. `Yes` carries generator coefficients that
/// reproduce the query exactly; `No` is only reported after an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipDecision {
    Yes(Vec<u64>),
    No,
    Unknown(u64),
}

impl MembershipDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, MembershipDecision::Yes(_))
    }
}

/// Certificate returned by [`AffineSemigroup::is_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityWitness {
    /// `lambda . g >= 1` for every generator `g`.
    Grading(Vec<BigRat>),
    /// Natural coefficients, not all zero, combining the generators to zero.
    ZeroSum(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Positivity {
    Positive { grading: Vec<BigRat>, weights: Vec<i64> },
    NotPositive { zero_sum: Vec<u64> },
}

/// A finitely generated submonoid of `Z^d`.
///
/// Zero generators and duplicates are dropped on construction (first occurrence
/// wins). Positivity and a grading are computed once, at construction.
#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    ambient_dim: usize,
    generators: Vec<Vector>,
    positivity: Positivity,
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.generators == other.generators
    }
}

impl Eq for AffineSemigroup {}

impl AffineSemigroup {
    pub fn new(ambient_dim: usize, generators: Vec<Vector>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.len() });
            }
            if g.iter().all(|&x| x == 0) || !seen.insert(g.clone()) {
                continue;
            }
            gens.push(g);
        }
        let positivity = match find_grading(ambient_dim, &gens) {
            FmOutcome::Feasible(grading) => {
                let lcm = grading.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                let weights = grading
                    .iter()
                    .map(|q| (q * BigRat::from_integer(lcm.clone())).to_integer().to_i64())
                    .collect::<Option<Vec<i64>>>()
                    .ok_or(Error::Overflow("grading weights"))?;
                Positivity::Positive { grading, weights }
            }
            FmOutcome::Infeasible(zero_sum) => Positivity::NotPositive { zero_sum },
        };
        Ok(AffineSemigroup { ambient_dim, generators: gens, positivity })
    }

    /// The trivial monoid `{0}` in `Z^d`.
    pub fn trivial(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, Vec::new()).expect("empty generator list is valid")
    }

    /// Numerical semigroup `<gens>` in `N`.
    pub fn numerical(gens: &[i64]) -> Result<Self> {
        Self::new(1, gens.iter().map(|&g| vec![g]).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: len });
        }
        Ok(())
    }

    /// Group of differences.
    pub fn gp(&self) -> IntegerLattice {
        IntegerLattice::from_rows(self.ambient_dim, &self.generators).expect("generator lengths were checked")
    }

    pub fn rank(&self) -> usize {
        self.gp().rank()
    }

    pub fn is_positive(&self) -> (bool, PositivityWitness) {
        match &self.positivity {
            Positivity::Positive { grading, .. } => (true, PositivityWitness::Grading(grading.clone())),
            Positivity::NotPositive { zero_sum } => (false, PositivityWitness::ZeroSum(zero_sum.clone())),
        }
    }

    pub fn positive(&self) -> bool {
        matches!(self.positivity, Positivity::Positive { .. })
    }

    /// The cached rational grading, when positive.
    pub fn grading(&self) -> Option<&[BigRat]> {
        match &self.positivity {
            Positivity::Positive { grading, .. } => Some(grading),
            Positivity::NotPositive { .. } => None,
        }
    }

    /// Integer multiple of the grading; every generator has weight at least one.
    pub fn weights(&self) -> Option<&[i64]> {
        match &self.positivity {
            Positivity::Positive { weights, .. } => Some(weights),
            Positivity::NotPositive { .. } => None,
        }
    }

    /// Integer degree `weights . x`.
    pub fn degree(&self, x: &[i64]) -> Option<i64> {
        self.weights().map(|w| dot(w, x))
    }

    /// Rational degree `lambda . x`.
    pub fn lambda(&self, x: &[i64]) -> Option<BigRat> {
        self.grading().map(|l| l.iter().zip(x).map(|(a, &b)| a * BigRat::from_integer(b.into())).sum())
    }

    /// The factor `L` with `weights = L * lambda`.
    pub fn grading_scale(&self) -> Option<i64> {
        let g = self.grading()?;
        g.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom())).to_i64()
    }

    /// Decides `x in S`. Positive semigroups are searched exhaustively along the
    /// grading; otherwise `bound` caps the total coefficient sum.
    pub fn member(&self, x: &[i64], bound: Option<u64>) -> Result<MembershipDecision> {
        self.check_dim(x.len())?;
        let n = self.generators.len();
        if x.iter().all(|&v| v == 0) {
            return Ok(MembershipDecision::Yes(vec![0; n]));
        }
        if !self.gp().contains(x)? {
            return Ok(MembershipDecision::No);
        }
        match &self.positivity {
            Positivity::Positive { weights, .. } => {
                let gen_weights: Vec<i64> = self.generators.iter().map(|g| dot(weights, g)).collect();
                let deg = dot(weights, x);
                if deg <= 0 {
                    return Ok(MembershipDecision::No);
                }
                let mut search =
                    GradedSearch { gens: &self.generators, gen_weights: &gen_weights, failed: HashSet::new() };
                let mut coeffs = vec![0u64; n];
                if search.run(0, x.to_vec(), deg, &mut coeffs) {
                    Ok(MembershipDecision::Yes(coeffs))
                } else {
                    Ok(MembershipDecision::No)
                }
            }
            Positivity::NotPositive { .. } => {
                let bound = bound.ok_or(Error::MissingBound)?;
                let mut search = BoundedSearch { gens: &self.generators, failed: HashMap::new() };
                let mut coeffs = vec![0u64; n];
                if search.run(0, x.to_vec(), bound, &mut coeffs) {
                    Ok(MembershipDecision::Yes(coeffs))
                } else {
                    Ok(MembershipDecision::Unknown(bound))
                }
            }
        }
    }

    /// Membership that must be decided; `Unknown` becomes [`Error::Undecided`].
    pub fn contains(&self, x: &[i64], bound: Option<u64>) -> Result<bool> {
        match self.member(x, bound)? {
            MembershipDecision::Yes(_) => Ok(true),
            MembershipDecision::No => Ok(false),
            MembershipDecision::Unknown(b) => Err(Error::Undecided(b)),
        }
    }

    /// Evaluates a coefficient vector against the generators.
    pub fn combine(&self, coeffs: &[u64]) -> Vector {
        let mut out = vec![0i64; self.ambient_dim];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for (o, &x) in out.iter_mut().zip(g) {
                *o += *c as i64 * x;
            }
        }
        out
    }

    /// `S1 + S2`: the union of the generator lists.
    pub fn sum(&self, other: &AffineSemigroup) -> Result<AffineSemigroup> {
        self.check_dim(other.ambient_dim)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        AffineSemigroup::new(self.ambient_dim, gens)
    }

    /// Rescaling `a S`.
    pub fn scale(&self, a: i64) -> Result<AffineSemigroup> {
        if a <= 0 {
            return Err(Error::ZeroScale);
        }
        let gens = self.generators.iter().map(|g| g.iter().map(|&x| x * a).collect()).collect();
        AffineSemigroup::new(self.ambient_dim, gens)
    }

    /// The semigroup generated by `A g` for the generators `g`.
    pub fn transform(&self, a: &RatMatrix) -> Result<AffineSemigroup> {
        if a.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: a.cols() });
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            match a.apply_integral(g)? {
                Some(img) => gens.push(img),
                None => return Err(Error::NonIntegralImage { generator: g.clone() }),
            }
        }
        AffineSemigroup::new(a.rows(), gens)
    }

    /// Whether the two generator lists generate the same submonoid.
    pub fn equal_as_submonoids(&self, other: &AffineSemigroup, bound: Option<u64>) -> Result<bool> {
        self.check_dim(other.ambient_dim)?;
        for g in &self.generators {
            if !other.contains(g, bound)? {
                return Ok(false);
            }
        }
        for g in &other.generators {
            if !self.contains(g, bound)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Positive and of rank at most one: embeddable in `N`.
    pub fn embeds_in_n(&self) -> bool {
        self.positive() && self.rank() <= 1
    }

    /// Submonoid of `N` with positive generators (the trivial monoid included).
    pub fn is_numerical(&self) -> bool {
        self.ambient_dim == 1 && self.generators.iter().all(|g| g[0] > 0)
    }

    fn numerical_values(&self) -> Result<Vec<i64>> {
        if !self.is_numerical() {
            return Err(Error::NotNumerical(format!(
                "expected positive generators in dimension 1, found {:?}",
                self.generators
            )));
        }
        Ok(self.generators.iter().map(|g| g[0]).collect())
    }

    pub(crate) fn numerical_table(&self) -> Result<NumericalTable> {
        Ok(NumericalTable::new(&self.numerical_values()?))
    }

    pub fn gcd_numerical(&self) -> Result<i64> {
        let vals = self.numerical_values()?;
        if vals.is_empty() {
            return Err(Error::NotNumerical("the trivial monoid has no gcd".into()));
        }
        Ok(vals.iter().fold(0i64, |g, &x| g.gcd(&x)))
    }

    /// Minimal generators of a numerical semigroup, in increasing order.
    pub fn minimal_numerical(&self) -> Result<AffineSemigroup> {
        let t = self.numerical_table()?;
        if t.gcd == 0 {
            return Ok(self.clone());
        }
        let limit = t.frobenius().unwrap_or(0) + t.multiplicity().expect("nontrivial");
        let gens = minimal_generators(|x| t.contains(x), t.gcd, limit);
        AffineSemigroup::numerical(&gens)
    }

    /// `S1 ∩ S2` for numerical semigroups, by minimal generators.
    pub fn intersect_numerical(&self, other: &AffineSemigroup) -> Result<AffineSemigroup> {
        let t1 = self.numerical_table()?;
        let t2 = other.numerical_table()?;
        if t1.gcd == 0 || t2.gcd == 0 {
            return Ok(AffineSemigroup::trivial(1));
        }
        let step = t1.gcd.lcm(&t2.gcd);
        let max_gen = self.generators.iter().chain(&other.generators).map(|g| g[0]).max().expect("nontrivial");
        let both = |x: i64| t1.contains(x) && t2.contains(x);
        // every multiple of `step` past both conductors is common
        let conductor = t1.conductor.max(t2.conductor);
        let window = conductor.max(4 * max_gen) * step / step.gcd(&1);
        let frobenius = (0..=window / step).rev().map(|k| k * step).find(|&x| !both(x)).unwrap_or(-step);
        let multiplicity = (1..).map(|k| k * step).find(|&x| both(x)).expect("multiples of step eventually common");
        // one extra window past the candidate Frobenius number must be gap-free
        let stable = (1..=multiplicity / step + 1).all(|k| both(frobenius + k * step));
        if !stable || frobenius >= window {
            return Err(Error::NotStabilized(format!("intersection up to {window}")));
        }
        let gens = minimal_generators(both, step, frobenius.max(0) + multiplicity);
        let out = AffineSemigroup::numerical(&gens)?;
        debug_assert_eq!(out.gcd_numerical().ok(), Some(step));
        Ok(out)
    }

    /// Every element of degree at most `max_degree`, sorted by degree then
    /// lexicographically. Requires positivity.
    pub fn elements_up_to_degree(&self, max_degree: i64) -> Result<Vec<(i64, Vector)>> {
        let weights = self.weights().ok_or_else(|| Error::NotPositive(format!("{:?}", self.generators)))?.to_vec();
        self.elements_by_weights(&weights, max_degree)
    }

    /// Elements `x` with `weights . x <= max_degree`, sorted by that degree and then
    /// lexicographically. Every generator must have positive weight.
    pub fn elements_by_weights(&self, weights: &[i64], max_degree: i64) -> Result<Vec<(i64, Vector)>> {
        self.check_dim(weights.len())?;
        if self.generators.iter().any(|g| dot(weights, g) <= 0) {
            return Err(Error::NotPositive(format!("generator weights under {weights:?}")));
        }
        let zero = vec![0i64; self.ambient_dim];
        let mut seen: HashSet<Vector> = HashSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for g in &self.generators {
                let w: Vector = v.iter().zip(g).map(|(a, b)| a + b).collect();
                if dot(weights, &w) <= max_degree && seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let mut out: Vec<(i64, Vector)> = seen.into_iter().map(|v| (dot(weights, &v), v)).collect();
        out.sort();
        Ok(out)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct GradedSearch<'a> {
    gens: &'a [Vector],
    gen_weights: &'a [i64],
    failed: HashSet<(usize, Vector)>,
}

impl GradedSearch<'_> {
    /// Lexicographically smallest coefficients for `rest` using generators `j..`.
    fn run(&mut self, j: usize, rest: Vector, deg: i64, coeffs: &mut [u64]) -> bool {
        if deg == 0 {
            return rest.iter().all(|&v| v == 0);
        }
        if j == self.gens.len() || self.failed.contains(&(j, rest.clone())) {
            return false;
        }
        let g = &self.gens[j];
        let w = self.gen_weights[j];
        if j + 1 == self.gens.len() {
            if deg % w == 0 {
                let c = deg / w;
                if rest.iter().zip(g).all(|(&r, &x)| r == c * x) {
                    coeffs[j] = c as u64;
                    return true;
                }
            }
            return false;
        }
        let mut cur = rest.clone();
        let mut c = 0;
        while c * w <= deg {
            coeffs[j] = c as u64;
            if self.run(j + 1, cur.clone(), deg - c * w, coeffs) {
                return true;
            }
            for (a, &x) in cur.iter_mut().zip(g) {
                *a -= x;
            }
            c += 1;
        }
        coeffs[j] = 0;
        self.failed.insert((j, rest));
        false
    }
}

struct BoundedSearch<'a> {
    gens: &'a [Vector],
    /// largest budget known to fail for a state
    failed: HashMap<(usize, Vector), u64>,
}

impl BoundedSearch<'_> {
    fn run(&mut self, j: usize, rest: Vector, budget: u64, coeffs: &mut [u64]) -> bool {
        if rest.iter().all(|&v| v == 0) {
            for c in coeffs[j..].iter_mut() {
                *c = 0;
            }
            return true;
        }
        if j == self.gens.len() {
            return false;
        }
        if let Some(&b) = self.failed.get(&(j, rest.clone())) {
            if budget <= b {
                return false;
            }
        }
        let g = &self.gens[j];
        let mut cur = rest.clone();
        for c in 0..=budget {
            coeffs[j] = c;
            if self.run(j + 1, cur.clone(), budget - c, coeffs) {
                return true;
            }
            for (a, &x) in cur.iter_mut().zip(g) {
                *a -= x;
            }
        }
        coeffs[j] = 0;
        self.failed.insert((j, rest), budget);
        false
    }
}
