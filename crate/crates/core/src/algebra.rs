//! Semigroup rings with explicit, possibly rational, exponent embeddings.
//!
//! A ring `k[u^S]` is stored as an integer semigroup together with a denominator
//! `m`: the monomial with integer exponent `e` stands for `u^(e/m)`. The field is
//! never materialized; everything happens at the level of exponents.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::apery::{flatness_verdict, FlatnessVerdict};
use crate::error::{Error, Result};
use crate::exactlat::{format_rational, BigRat, RatMatrix};
use crate::fibsum::{FiberedSumContext, TildePresentation};
use crate::semigroup::{AffineSemigroup, Vector};

/// `x, y, z, w` for up to four variables, `x1, x2, ...` beyond that.
pub fn default_var_names(dim: usize) -> Vec<String> {
    if dim <= 4 {
        ["x", "y", "z", "w"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

fn fresh_var_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("w{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedRing {
    semigroup: AffineSemigroup,
    denom: i64,
    var_names: Vec<String>,
}

impl EmbeddedRing {
    /// The denominator is reduced to the smallest value describing the same exponents.
    pub fn new(semigroup: AffineSemigroup, denom: i64, var_names: Option<Vec<String>>) -> Result<Self> {
        if denom < 1 {
            return Err(Error::InvalidArgument(format!("denominator must be positive, got {denom}")));
        }
        let d = semigroup.ambient_dim();
        let var_names = var_names.unwrap_or_else(|| default_var_names(d));
        if var_names.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: var_names.len() });
        }
        let distinct: HashSet<&String> = var_names.iter().collect();
        if distinct.len() != var_names.len() {
            return Err(Error::InvalidArgument(format!("variable names are not distinct: {var_names:?}")));
        }
        let g = semigroup.generators().iter().flatten().fold(denom, |acc, &x| acc.gcd(&x));
        let (semigroup, denom) = if g > 1 {
            let gens = semigroup.generators().iter().map(|v| v.iter().map(|x| x / g).collect()).collect();
            (AffineSemigroup::new(d, gens)?, denom / g)
        } else {
            (semigroup, denom)
        };
        Ok(EmbeddedRing { semigroup, denom, var_names })
    }

    /// Ring generated by monomials with the given rational exponent vectors.
    pub fn from_rational_generators(dim: usize, gens: &[Vec<BigRat>], var_names: Option<Vec<String>>) -> Result<Self> {
        let lcm = gens.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let m = lcm.to_i64().ok_or(Error::Overflow("ring denominator"))?;
        let scale = BigRat::from_integer(lcm);
        let mut int_gens = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
            let v: Option<Vector> = g.iter().map(|q| (q * &scale).to_integer().to_i64()).collect();
            int_gens.push(v.ok_or(Error::Overflow("ring exponents"))?);
        }
        Self::new(AffineSemigroup::new(dim, int_gens)?, m, var_names)
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn dim(&self) -> usize {
        self.semigroup.ambient_dim()
    }

    pub fn rational_generators(&self) -> Vec<Vec<BigRat>> {
        self.semigroup
            .generators()
            .iter()
            .map(|g| g.iter().map(|&x| BigRat::new(x.into(), self.denom.into())).collect())
            .collect()
    }

    /// The same ring with exponents written over the denominator `m`, a multiple of `denom`.
    pub fn semigroup_over(&self, m: i64) -> Result<AffineSemigroup> {
        if m % self.denom != 0 {
            return Err(Error::InvalidArgument(format!("{m} is not a multiple of {}", self.denom)));
        }
        self.semigroup.scale(m / self.denom)
    }

    /// The monomial with integer exponent `exponent` (read over `denom`).
    pub fn monomial(&self, exponent: &[i64]) -> Result<Monomial<'_>> {
        if !self.semigroup.contains(exponent, Some(crate::fibsum::DEFAULT_MEMBER_BOUND))? {
            return Err(Error::NotAMember(exponent.to_vec()));
        }
        Ok(Monomial { ring: self, exponent: exponent.to_vec() })
    }

    /// Monomial strings of the generators, in decreasing lexicographic order of exponents.
    pub fn generator_strings(&self) -> Vec<String> {
        let mut gens: Vec<&Vector> = self.semigroup.generators().iter().collect();
        gens.sort_by(|a, b| b.cmp(a));
        gens.into_iter().map(|g| format_monomial(g, self.denom, &self.var_names)).collect()
    }
}

impl fmt::Display for EmbeddedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.generator_strings().join(", "))
    }
}

/// Prints `u^(e/m)` as a product such as `x^4*y`, `x^(3/2)` or `1`.
pub fn format_monomial(exponent: &[i64], denom: i64, vars: &[String]) -> String {
    let parts: Vec<String> = exponent
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e != 0)
        .map(|(&e, v)| {
            let q = BigRat::new(e.into(), denom.into());
            if q.is_one() {
                v.clone()
            } else if q.is_integer() && q.is_positive() {
                format!("{v}^{}", q.to_integer())
            } else {
                format!("{v}^({})", format_rational(&q))
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial<'a> {
    ring: &'a EmbeddedRing,
    exponent: Vector,
}

impl<'a> Monomial<'a> {
    pub fn exponent(&self) -> &[i64] {
        &self.exponent
    }

    pub fn mul(&self, other: &Monomial<'_>) -> Result<Monomial<'a>> {
        if self.ring != other.ring {
            return Err(Error::InvalidArgument("monomials of different rings".into()));
        }
        Ok(Monomial {
            ring: self.ring,
            exponent: self.exponent.iter().zip(&other.exponent).map(|(a, b)| a + b).collect(),
        })
    }
}

impl fmt::Display for Monomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_monomial(&self.exponent, self.ring.denom, &self.ring.var_names))
    }
}

/// A change of embedding acting on rational exponent vectors; must be injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingChange {
    matrix: RatMatrix,
}

impl EmbeddingChange {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if matrix.rank() != matrix.cols() {
            return Err(Error::NonInvertible);
        }
        Ok(EmbeddingChange { matrix })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Inverse of a square change.
    pub fn inverse(&self) -> Result<EmbeddingChange> {
        Ok(EmbeddingChange { matrix: self.matrix.inverse()? })
    }
}

/// Applies `change` to the exponents of `ring`; new variables default to
/// [`default_var_names`].
pub fn reembed(ring: &EmbeddedRing, change: &EmbeddingChange, var_names: Option<Vec<String>>) -> Result<EmbeddedRing> {
    let c = &change.matrix;
    if c.cols() != ring.dim() {
        return Err(Error::DimensionMismatch { expected: ring.dim(), found: c.cols() });
    }
    let mut gens = Vec::new();
    for g in ring.rational_generators() {
        let img: Vec<BigRat> =
            (0..c.rows()).map(|i| c.row(i).iter().zip(&g).fold(BigRat::zero(), |acc, (a, b)| acc + a * b)).collect();
        gens.push(img);
    }
    EmbeddedRing::from_rational_generators(c.rows(), &gens, var_names)
}

/// Whether an embedding related by `v = u^s` is finer, i.e. `s` is a positive integer.
pub fn is_finer(s: &BigRat) -> bool {
    s.is_integer() && s.is_positive()
}

/// A semigroup algebra `R'/R` given by two rings in the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPair {
    pub ring: EmbeddedRing,
    pub base: EmbeddedRing,
}

impl AlgebraPair {
    pub fn new(ring: EmbeddedRing, base: EmbeddedRing) -> Result<Self> {
        if ring.dim() != base.dim() {
            return Err(Error::DimensionMismatch { expected: ring.dim(), found: base.dim() });
        }
        let pair = AlgebraPair { ring, base };
        let (r, b) = pair.common()?;
        for g in b.generators() {
            if !r.contains(g, Some(crate::fibsum::DEFAULT_MEMBER_BOUND))? {
                return Err(Error::ContainmentViolation(format!("base generator {g:?} is not in the ring")));
            }
        }
        Ok(pair)
    }

    /// Both semigroups written over the common denominator.
    pub fn common(&self) -> Result<(AffineSemigroup, AffineSemigroup)> {
        let m = self.common_denom();
        Ok((self.ring.semigroup_over(m)?, self.base.semigroup_over(m)?))
    }

    pub fn common_denom(&self) -> i64 {
        self.ring.denom.lcm(&self.base.denom)
    }

    /// The unique-representation verdict for `R'/R`.
    pub fn flatness(&self, bound: &BigRat) -> Result<FlatnessVerdict> {
        let (r, b) = self.common()?;
        flatness_verdict(&r, &b, bound, None)
    }
}

/// Builds the context `S -> S1`, `S -> S2` for two algebras over the same ring,
/// matching the base generators of the two pairs in order.
fn shared_context(p1: &AlgebraPair, p2: &AlgebraPair) -> Result<FiberedSumContext> {
    let (s1, sa) = p1.common()?;
    let (s2, sb) = p2.common()?;
    let ka = sa.generators().len();
    if ka != sb.generators().len() {
        return Err(Error::CoefficientRingMismatch(format!("{} versus {} base generators", ka, sb.generators().len())));
    }
    let to_rat = |v: &Vector| v.iter().map(|&x| BigRat::from_integer(x.into())).collect::<Vec<_>>();
    let h2 = if ka == 0 {
        RatMatrix::from_rows(sa.ambient_dim(), vec![vec![BigRat::zero(); sa.ambient_dim()]; sb.ambient_dim()])?
    } else {
        let a_t = RatMatrix::from_rows(sa.ambient_dim(), sa.generators().iter().map(to_rat).collect())?;
        let b_t = RatMatrix::from_rows(sb.ambient_dim(), sb.generators().iter().map(to_rat).collect())?;
        let h_t = a_t
            .solve_right(&b_t)?
            .ok_or_else(|| Error::CoefficientRingMismatch("the base generators satisfy different relations".into()))?;
        let rows: Vec<Vec<BigRat>> =
            (0..sb.ambient_dim()).map(|i| (0..sa.ambient_dim()).map(|j| h_t.get(j, i).clone()).collect()).collect();
        RatMatrix::from_rows(sa.ambient_dim(), rows)?
    };
    FiberedSumContext::new(&s1, &s2, &sa, None, Some(h2))
}

/// The flat base change `R1 (x)~ R2` together with its canonical maps.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub ring: EmbeddedRing,
    pub flatness: FlatnessVerdict,
    /// Set when flatness of `R2/R` was only verified up to a degree bound.
    pub caveat: Option<String>,
    pub context: FiberedSumContext,
    pub tilde: TildePresentation,
}

impl BaseChange {
    /// Image of the `R1` monomial with exponent `a` (over the common denominator of the first pair).
    pub fn image_left(&self, a: &[i64]) -> Result<Vector> {
        self.tilde.image_of(a, &vec![0; self.context.s2().ambient_dim()])
    }

    /// Image of the `R2` monomial with exponent `b`.
    pub fn image_right(&self, b: &[i64]) -> Result<Vector> {
        self.tilde.image_of(&vec![0; self.context.s1().ambient_dim()], b)
    }

    /// The subsemigroup generated by the images of `R2`.
    pub fn right_image_semigroup(&self) -> Result<AffineSemigroup> {
        AffineSemigroup::new(self.tilde.free_rank(), self.tilde.right_images.clone())
    }

    /// Pairs `(generator of R1, image)`.
    pub fn map_left(&self) -> Vec<(Vector, Vector)> {
        self.context.s1().generators().iter().cloned().zip(self.tilde.left_images.iter().cloned()).collect()
    }

    /// Pairs `(generator of R2, image)`.
    pub fn map_right(&self) -> Vec<(Vector, Vector)> {
        self.context.s2().generators().iter().cloned().zip(self.tilde.right_images.iter().cloned()).collect()
    }
}

/// The flat base change of `R1/R` by `R2/R`.
pub fn flat_base_change(p1: &AlgebraPair, p2: &AlgebraPair, bound: &BigRat) -> Result<BaseChange> {
    for (name, p) in [("R1", p1), ("R2", p2)] {
        if !p.ring.semigroup.positive() {
            return Err(Error::NotPositive(format!("{name} = {}", p.ring)));
        }
    }
    let context = shared_context(p1, p2)?;
    let flatness = p2.flatness(bound)?;
    let caveat = match &flatness {
        FlatnessVerdict::UniqueProven => None,
        FlatnessVerdict::UniqueUpTo(b) => Some(format!("flatness of R2/R verified only up to degree {b}")),
        FlatnessVerdict::NonUnique { s1, w1, s2, w2 } => {
            return Err(Error::NotFlat(format!("R2/R: {s1:?} + {w1:?} = {s2:?} + {w2:?}")));
        }
    };
    let tilde = context.tilde_presentation()?;
    let ring = EmbeddedRing::new(tilde.semigroup.clone(), 1, Some(fresh_var_names(tilde.free_rank())))?;
    Ok(BaseChange { ring, flatness, caveat, context, tilde })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorVerdict {
    Isomorphic {
        caveat: Option<String>,
    },
    /// A class of the given finite order in the relation quotient, split into its two components.
    NotIsomorphic {
        witness: (Vector, Vector),
        order: BigInt,
        caveat: Option<String>,
    },
    Undetermined {
        reason: String,
    },
}

/// Compares `R1 (x)_R R2` with the ring of the torsion-free fibered sum.
pub fn tensor_vs_fibersum(p1: &AlgebraPair, p2: &AlgebraPair, bound: &BigRat) -> Result<TensorVerdict> {
    let ctx = shared_context(p1, p2)?;
    let mut caveat = None;
    let mut flat_side = None;
    for (name, p) in [("R2", p2), ("R1", p1)] {
        if !p.ring.semigroup.positive() {
            continue;
        }
        match p.flatness(bound)? {
            FlatnessVerdict::UniqueProven => {
                flat_side = Some(name);
                caveat = None;
                break;
            }
            FlatnessVerdict::UniqueUpTo(b) => {
                flat_side = Some(name);
                caveat = Some(format!("flatness of {name}/R verified only up to degree {b}"));
                break;
            }
            FlatnessVerdict::NonUnique { .. } => {}
        }
    }
    if flat_side.is_none() {
        return Ok(TensorVerdict::Undetermined {
            reason: "neither algebra is positive with unique representation over R".into(),
        });
    }
    if ctx.is_torsion_free() {
        return Ok(TensorVerdict::Isomorphic { caveat });
    }
    let (v, order) = ctx.quotient().torsion_generators[0].clone();
    let v = crate::exactlat::from_big(&v)?;
    let d1 = ctx.s1().ambient_dim();
    Ok(TensorVerdict::NotIsomorphic { witness: (v[..d1].to_vec(), v[d1..].to_vec()), order, caveat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apery::apery_set;

    fn q(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn ring(dim: usize, gens: &[&[i64]], denom: i64) -> EmbeddedRing {
        let s = AffineSemigroup::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap();
        EmbeddedRing::new(s, denom, None).unwrap()
    }

    fn pair(r: EmbeddedRing, b: EmbeddedRing) -> AlgebraPair {
        AlgebraPair::new(r, b).unwrap()
    }

    #[test]
    fn twisted_cubic_reembedding() {
        let r = ring(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]], 1);
        let c = EmbeddingChange::new(
            RatMatrix::from_rows(2, vec![vec![q(4, 3), q(1, 3)], vec![q(0, 1), q(1, 1)]]).unwrap(),
        )
        .unwrap();
        let out = reembed(&r, &c, None).unwrap();
        assert_eq!(out, ring(2, &[&[4, 0], &[3, 1], &[2, 2], &[1, 3]], 1));
        assert_eq!(out.to_string(), "k[x^4, x^3*y, x^2*y^2, x*y^3]");
        let back = reembed(&out, &c.inverse().unwrap(), None).unwrap();
        assert_eq!(back, r);
        assert_eq!(reembed(&r, &EmbeddingChange::new(RatMatrix::identity(2)).unwrap(), None).unwrap(), r);
    }

    #[test]
    fn rectangular_lift() {
        let r = ring(2, &[&[2, 0], &[1, 1], &[0, 2]], 1);
        let c = EmbeddingChange::new(
            RatMatrix::from_rows(2, vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)], vec![q(0, 1), q(1, 1)]])
                .unwrap(),
        )
        .unwrap();
        let out = reembed(&r, &c, None).unwrap();
        assert_eq!(out, ring(3, &[&[2, 1, 0], &[1, 1, 1], &[0, 1, 2]], 1));
        assert_eq!(out.to_string(), "k[x^2*y, x*y*z, y*z^2]");
    }

    #[test]
    fn denominators_are_minimal_and_printed() {
        let r = ring(1, &[&[6], &[10]], 4);
        assert_eq!(r.denom(), 2);
        assert_eq!(r.semigroup().generators(), &[vec![3], vec![5]]);
        assert_eq!(r.to_string(), "k[x^(5/2), x^(3/2)]");
        let m = r.monomial(&[3]).unwrap();
        assert_eq!(m.mul(&m).unwrap().to_string(), "x^3");
        assert!(r.monomial(&[1]).is_err());
    }

    #[test]
    fn finer_embeddings() {
        assert!(is_finer(&q(3, 1)));
        assert!(!is_finer(&q(4, 3)));
        assert!(is_finer(&q(1, 1)));
        assert!(!is_finer(&q(0, 1)));
    }

    #[test]
    fn base_change_of_three_and_two_over_six() {
        let r = ring(1, &[&[6]], 1);
        let p1 = pair(ring(1, &[&[3]], 1), r.clone());
        let p2 = pair(ring(1, &[&[2]], 1), r);
        let bc = flat_base_change(&p1, &p2, &q(100, 1)).unwrap();
        assert!(bc.ring.semigroup().equal_as_submonoids(&AffineSemigroup::numerical(&[2, 3]).unwrap(), None).unwrap());
        assert_eq!(bc.ring.var_names(), &["w1".to_string()]);
        assert_eq!(bc.flatness, FlatnessVerdict::UniqueProven);
        let right = bc.right_image_semigroup().unwrap();
        let apery = apery_set(bc.ring.semigroup(), &right, &q(100, 1), None).unwrap();
        let images = vec![bc.image_left(&[0]).unwrap(), bc.image_left(&[3]).unwrap()];
        assert_eq!(apery.elements, images);
        assert_eq!(tensor_vs_fibersum(&p1, &p2, &q(100, 1)).unwrap(), TensorVerdict::Isomorphic { caveat: None });
    }

    #[test]
    fn folding_gives_rank_three() {
        let r = ring(2, &[&[1, 1]], 1);
        let p1 = pair(ring(2, &[&[1, 0], &[1, 1]], 1), r.clone());
        let p2 = pair(ring(2, &[&[1, 1], &[0, 1]], 1), r);
        let bc = flat_base_change(&p1, &p2, &q(100, 1)).unwrap();
        assert_eq!(bc.ring.dim(), 3);
        assert_eq!(bc.ring.semigroup().rank(), 3);
        assert_eq!(bc.ring.semigroup().generators().len(), 3);
    }

    #[test]
    fn torsion_blocks_isomorphism() {
        let r = ring(1, &[&[3], &[5]], 1);
        let p1 = pair(ring(1, &[&[3], &[10]], 2), r.clone());
        let p2 = pair(ring(1, &[&[6], &[5]], 2), r);
        match tensor_vs_fibersum(&p1, &p2, &q(100, 1)).unwrap() {
            TensorVerdict::NotIsomorphic { order, caveat, .. } => {
                assert_eq!(order, BigInt::from(2));
                assert!(caveat.is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let p1 = pair(ring(1, &[&[1]], 1), ring(1, &[&[2], &[3]], 1));
        let p2 = pair(ring(1, &[&[1]], 1), ring(1, &[&[2]], 1));
        assert!(matches!(tensor_vs_fibersum(&p1, &p2, &q(10, 1)), Err(Error::CoefficientRingMismatch(_))));
    }
}
