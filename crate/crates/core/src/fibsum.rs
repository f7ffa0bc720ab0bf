//! Fibered sums of cancellative monoids given by affine semigroups.
//!
//! A context records two homomorphisms `S -> S1` and `S -> S2`. Elements of the
//! fibered sum are pairs `a (+) b` with `a` in `S1` and `b` in `S2`; two pairs are
//! equal exactly when their difference lies in the relation lattice generated by
//! `(h1(g), -h2(g))`, and equal in the torsion-free quotient when the difference
//! lies in the saturation of that lattice.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlat::{
    from_big, hnf, quotient_structure, saturation, to_big, BigRat, IntMatrix, IntegerLattice, QuotientStructure,
    RatMatrix,
};
use crate::semigroup::{AffineSemigroup, Vector};

/// Coefficient-sum bound used when a membership check meets a non-positive semigroup.
pub const DEFAULT_MEMBER_BOUND: u64 = 64;
/// Coefficient-sum bound for the secondary `a, b in S` equality witness.
pub const DEFAULT_EQUALITY_WITNESS_BOUND: u64 = 20;
/// Coefficient-sum bound for the witness search in [`compare_with_sum`].
pub const DEFAULT_COMPARE_BOUND: u64 = 12;

/// A monoid homomorphism between affine semigroups, given by its extension to
/// groups of differences.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    source: AffineSemigroup,
    target: AffineSemigroup,
    matrix: RatMatrix,
}

impl MonoidHom {
    /// Checks that each generator of `source` maps to an integral member of `target`.
    /// `which` names the map in error messages.
    pub fn new(source: &AffineSemigroup, target: &AffineSemigroup, matrix: RatMatrix, which: &str) -> Result<Self> {
        if matrix.cols() != source.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: source.ambient_dim(), found: matrix.cols() });
        }
        if matrix.rows() != target.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: target.ambient_dim(), found: matrix.rows() });
        }
        for g in source.generators() {
            let img = matrix.apply_integral(g)?.ok_or_else(|| Error::NonIntegralImage { generator: g.clone() })?;
            if !target.contains(&img, Some(DEFAULT_MEMBER_BOUND))? {
                return Err(Error::HomImageNotInTarget { which: which.to_string(), generator: g.clone() });
            }
        }
        Ok(MonoidHom { source: source.clone(), target: target.clone(), matrix })
    }

    /// The inclusion of `source` into `target` inside a common `Z^d`.
    pub fn inclusion(source: &AffineSemigroup, target: &AffineSemigroup, which: &str) -> Result<Self> {
        Self::new(source, target, RatMatrix::identity(source.ambient_dim()), which)
    }

    pub fn source(&self) -> &AffineSemigroup {
        &self.source
    }

    pub fn target(&self) -> &AffineSemigroup {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Image of a vector of `gp(source)`.
    pub fn apply(&self, x: &[i64]) -> Result<Vector> {
        self.matrix.apply_integral(x)?.ok_or_else(|| Error::NonIntegralImage { generator: x.to_vec() })
    }
}

/// The data of `S -> S1` and `S -> S2` together with the derived lattices.
#[derive(Clone, Debug)]
pub struct FiberedSumContext {
    s1: AffineSemigroup,
    s2: AffineSemigroup,
    s: AffineSemigroup,
    h1: MonoidHom,
    h2: MonoidHom,
    rel: IntegerLattice,
    ambient: IntegerLattice,
    sat: IntegerLattice,
    quot: QuotientStructure,
}

impl FiberedSumContext {
    pub fn new(
        s1: &AffineSemigroup,
        s2: &AffineSemigroup,
        s: &AffineSemigroup,
        h1: Option<RatMatrix>,
        h2: Option<RatMatrix>,
    ) -> Result<Self> {
        let h1 = match h1 {
            Some(m) => MonoidHom::new(s, s1, m, "h1")?,
            None => MonoidHom::inclusion(s, s1, "h1")?,
        };
        let h2 = match h2 {
            Some(m) => MonoidHom::new(s, s2, m, "h2")?,
            None => MonoidHom::inclusion(s, s2, "h2")?,
        };
        let d1 = s1.ambient_dim();
        let d2 = s2.ambient_dim();
        let mut rel_rows = Vec::with_capacity(s.generators().len());
        for g in s.generators() {
            let mut row = h1.apply(g)?;
            row.extend(h2.apply(g)?.into_iter().map(|x| -x));
            rel_rows.push(row);
        }
        let rel = IntegerLattice::from_rows(d1 + d2, &rel_rows)?;
        let mut amb_rows: Vec<Vec<BigInt>> = Vec::new();
        for r in s1.gp().basis_rows() {
            let mut row = r;
            row.extend(std::iter::repeat_n(BigInt::zero(), d2));
            amb_rows.push(row);
        }
        for r in s2.gp().basis_rows() {
            let mut row = vec![BigInt::zero(); d1];
            row.extend(r);
            amb_rows.push(row);
        }
        let ambient = IntegerLattice::from_big_rows(d1 + d2, &amb_rows)?;
        let quot = quotient_structure(&ambient, &rel)?;
        let sat = saturation(&ambient, &rel)?;
        Ok(FiberedSumContext { s1: s1.clone(), s2: s2.clone(), s: s.clone(), h1, h2, rel, ambient, sat, quot })
    }

    /// Context for three submonoids of a common `Z^d` with inclusion maps.
    pub fn embedded(s1: &AffineSemigroup, s2: &AffineSemigroup, s: &AffineSemigroup) -> Result<Self> {
        Self::new(s1, s2, s, None, None)
    }

    pub fn s1(&self) -> &AffineSemigroup {
        &self.s1
    }

    pub fn s2(&self) -> &AffineSemigroup {
        &self.s2
    }

    pub fn s(&self) -> &AffineSemigroup {
        &self.s
    }

    pub fn h1(&self) -> &MonoidHom {
        &self.h1
    }

    pub fn h2(&self) -> &MonoidHom {
        &self.h2
    }

    pub fn rel(&self) -> &IntegerLattice {
        &self.rel
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn saturated_rel(&self) -> &IntegerLattice {
        &self.sat
    }

    pub fn quotient(&self) -> &QuotientStructure {
        &self.quot
    }

    /// The fibered sum is torsion free exactly when the relation lattice is saturated.
    pub fn is_torsion_free(&self) -> bool {
        self.quot.is_torsion_free()
    }

    /// The element `a (+) b`, after checking `a in S1` and `b in S2`.
    pub fn element(&self, a: &[i64], b: &[i64]) -> Result<FibElement<'_>> {
        if !self.s1.contains(a, Some(DEFAULT_MEMBER_BOUND))? {
            return Err(Error::NotAMember(a.to_vec()));
        }
        if !self.s2.contains(b, Some(DEFAULT_MEMBER_BOUND))? {
            return Err(Error::NotAMember(b.to_vec()));
        }
        Ok(FibElement { ctx: self, a: a.to_vec(), b: b.to_vec() })
    }

    fn joined(&self, a: &[i64], b: &[i64]) -> Vector {
        a.iter().chain(b).copied().collect()
    }

    /// Explicit presentation of the torsion-free fibered sum as an affine semigroup.
    pub fn tilde_presentation(&self) -> Result<TildePresentation> {
        let d1 = self.s1.ambient_dim();
        let d2 = self.s2.ambient_dim();
        let k = self.quot.free_rank;
        let mut raw: Vec<Vec<BigInt>> = Vec::new();
        for g in self.s1.generators() {
            raw.push(self.quot.project(&to_big(&self.joined(g, &vec![0; d2])))?);
        }
        for h in self.s2.generators() {
            raw.push(self.quot.project(&to_big(&self.joined(&vec![0; d1], h)))?);
        }
        // canonicalize by the Hermite form of the k x n matrix of images
        let images_t = IntMatrix::from_rows(raw.len(), &transpose(&raw, k))?;
        let (_, change) = hnf(&images_t);
        let gen_images: Vec<Vector> =
            raw.iter().map(|v| change.apply(v).and_then(|w| from_big(&w))).collect::<Result<_>>()?;
        let n1 = self.s1.generators().len();
        let semigroup = AffineSemigroup::new(k, gen_images.clone())?;
        Ok(TildePresentation {
            semigroup,
            left_images: gen_images[..n1].to_vec(),
            right_images: gen_images[n1..].to_vec(),
            change,
            quot: self.quot.clone(),
            d1,
        })
    }

    /// Searches for `a, b in S` with `x.a + h1(a) = y.a + h1(b)` and
    /// `x.b + h2(b) = y.b + h2(a)`, over elements of `S` with coefficient sum at most `bound`.
    pub fn find_equality_witness(
        &self,
        x: &FibElement<'_>,
        y: &FibElement<'_>,
        bound: u64,
    ) -> Result<Option<(Vector, Vector)>> {
        self.same_context(x, y)?;
        let elements = bounded_elements(&self.s, bound);
        let mut by_h1: HashMap<Vector, Vec<usize>> = HashMap::new();
        let mut h1_imgs = Vec::with_capacity(elements.len());
        let mut h2_imgs = Vec::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            let i1 = self.h1.apply(e)?;
            by_h1.entry(i1.clone()).or_default().push(i);
            h1_imgs.push(i1);
            h2_imgs.push(self.h2.apply(e)?);
        }
        for (ia, a) in elements.iter().enumerate() {
            let need: Vector = (0..x.a.len()).map(|t| x.a[t] - y.a[t] + h1_imgs[ia][t]).collect();
            if let Some(cands) = by_h1.get(&need) {
                for &ib in cands {
                    let ok = (0..x.b.len()).all(|t| x.b[t] + h2_imgs[ib][t] == y.b[t] + h2_imgs[ia][t]);
                    if ok {
                        return Ok(Some((a.clone(), elements[ib].clone())));
                    }
                }
            }
        }
        Ok(None)
    }

    fn same_context(&self, x: &FibElement<'_>, y: &FibElement<'_>) -> Result<()> {
        if std::ptr::eq(x.ctx, self) && std::ptr::eq(y.ctx, self) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// The gp-condition of the two images measured inside the tilde presentation.
    pub fn gp_condition_in_tilde(&self) -> Result<bool> {
        let t = self.tilde_presentation()?;
        let k = t.semigroup.ambient_dim();
        let g1 = IntegerLattice::from_rows(k, &t.left_images)?;
        let g2 = IntegerLattice::from_rows(k, &t.right_images)?;
        let mut s_imgs = Vec::new();
        for g in self.s.generators() {
            s_imgs.push(t.image_of(&self.h1.apply(g)?, &vec![0; self.s2.ambient_dim()])?);
        }
        let g0 = IntegerLattice::from_rows(k, &s_imgs)?;
        Ok(g1.intersect(&g2)? == g0)
    }

    /// Attempts to factor a cocone `phi1: S1 -> Z^m`, `phi2: S2 -> Z^m` through the
    /// tilde presentation.
    pub fn factor_cocone(&self, phi1: &RatMatrix, phi2: &RatMatrix) -> Result<CoconeFactoring> {
        let m = phi1.rows();
        if phi2.rows() != m {
            return Err(Error::DimensionMismatch { expected: m, found: phi2.rows() });
        }
        for g in self.s.generators() {
            let left = phi1.apply_int(&self.h1.apply(g)?)?;
            let right = phi2.apply_int(&self.h2.apply(g)?)?;
            if left != right {
                return Err(Error::EmbeddingDisagreement(g.clone()));
            }
        }
        let t = self.tilde_presentation()?;
        let k = t.semigroup.ambient_dim();
        let mut sources: Vec<Vec<BigRat>> = Vec::new();
        let mut targets: Vec<Vec<BigRat>> = Vec::new();
        for (g, img) in self.s1.generators().iter().zip(&t.left_images) {
            sources.push(img.iter().map(|&x| BigRat::from_integer(x.into())).collect());
            targets.push(phi1.apply_int(g)?);
        }
        for (h, img) in self.s2.generators().iter().zip(&t.right_images) {
            sources.push(img.iter().map(|&x| BigRat::from_integer(x.into())).collect());
            targets.push(phi2.apply_int(h)?);
        }
        let n = sources.len();
        // psi * G = Phi, solved as G^T psi^T = Phi^T
        let g_t = RatMatrix::from_rows(k, sources)?;
        let phi_t = RatMatrix::from_rows(m, targets)?;
        let unique = g_t.rank() == k;
        let solution = if n == 0 {
            Some(RatMatrix::from_rows(m, vec![vec![BigRat::zero(); m]; k])?)
        } else {
            g_t.solve_right(&phi_t)?
        };
        let matrix = match solution {
            Some(psi_t) => {
                let rows: Vec<Vec<BigRat>> =
                    (0..m).map(|i| (0..k).map(|j| psi_t.get(j, i).clone()).collect()).collect();
                Some(RatMatrix::from_rows(k, rows)?)
            }
            None => None,
        };
        Ok(CoconeFactoring { unique, matrix })
    }
}

fn transpose(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Result of factoring a cocone through the tilde presentation.
#[derive(Clone, Debug)]
pub struct CoconeFactoring {
    /// Whether the factoring map is determined by the generator images.
    pub unique: bool,
    /// The factoring map `Z^k -> Z^m`, when one exists.
    pub matrix: Option<RatMatrix>,
}

/// An element `a (+) b` of a fibered sum.
#[derive(Clone, Debug)]
pub struct FibElement<'a> {
    ctx: &'a FiberedSumContext,
    a: Vector,
    b: Vector,
}

impl<'a> FibElement<'a> {
    pub fn left(&self) -> &[i64] {
        &self.a
    }

    pub fn right(&self) -> &[i64] {
        &self.b
    }

    pub fn context(&self) -> &'a FiberedSumContext {
        self.ctx
    }

    fn difference(&self, other: &FibElement<'_>) -> Result<Vector> {
        if !std::ptr::eq(self.ctx, other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.a.iter().chain(&self.b).zip(other.a.iter().chain(&other.b)).map(|(x, y)| x - y).collect())
    }

    pub fn add(&self, other: &FibElement<'_>) -> Result<FibElement<'a>> {
        if !std::ptr::eq(self.ctx, other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(FibElement {
            ctx: self.ctx,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        })
    }
}

/// Equality in the fibered sum of cancellative monoids.
pub fn eq_cancellative(x: &FibElement<'_>, y: &FibElement<'_>) -> Result<bool> {
    let d = x.difference(y)?;
    x.ctx.rel.contains(&d)
}

/// Equality in the torsion-free quotient.
pub fn eq_torsionfree(x: &FibElement<'_>, y: &FibElement<'_>) -> Result<bool> {
    let d = x.difference(y)?;
    x.ctx.sat.contains(&d)
}

/// Whether `gp(S1) ∩ gp(S2) = gp(S)` for submonoids of a common `Z^d`.
pub fn gp_condition(s1: &AffineSemigroup, s2: &AffineSemigroup, s: &AffineSemigroup) -> Result<bool> {
    for g in s.generators() {
        for (name, t) in [("S1", s1), ("S2", s2)] {
            if !t.contains(g, Some(DEFAULT_MEMBER_BOUND))? {
                return Err(Error::ContainmentViolation(format!("generator {g:?} of S is not in {name}")));
            }
        }
    }
    Ok(s1.gp().intersect(&s2.gp())? == s.gp())
}

/// The torsion-free fibered sum as a semigroup in `Z^k`, together with the images
/// of the generators of both summands.
#[derive(Clone, Debug)]
pub struct TildePresentation {
    pub semigroup: AffineSemigroup,
    /// Images of the generators of `S1`, in order.
    pub left_images: Vec<Vector>,
    /// Images of the generators of `S2`, in order.
    pub right_images: Vec<Vector>,
    change: IntMatrix,
    quot: QuotientStructure,
    d1: usize,
}

impl TildePresentation {
    pub fn free_rank(&self) -> usize {
        self.semigroup.ambient_dim()
    }

    /// Image of `a (+) b` for `a in gp(S1)` and `b in gp(S2)`.
    pub fn image_of(&self, a: &[i64], b: &[i64]) -> Result<Vector> {
        if a.len() != self.d1 {
            return Err(Error::DimensionMismatch { expected: self.d1, found: a.len() });
        }
        let v: Vector = a.iter().chain(b).copied().collect();
        let p = self.quot.project(&to_big(&v))?;
        from_big(&self.change.apply(&p)?)
    }
}

/// Verdict of comparing `S1 + S2` inside a common target with the fibered sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumComparison {
    Isomorphic { reason: IsoReason },
    NotIsomorphic { witness: Option<SumWitness>, kernel_vector: Vector },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoReason {
    /// `rk S1 = rk S2 = rk S`.
    EqualRanks,
    /// `gp(S1) ∩ gp(S2) = gp(S)` inside the target.
    GpCondition,
    /// The sum map is injective on the torsion-free fibered sum.
    InjectiveSumMap,
}

/// Two elements `a1 (+) b1` and `a2 (+) b2`, distinct in the torsion-free fibered
/// sum, with the same image in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumWitness {
    pub first: (Vector, Vector),
    pub second: (Vector, Vector),
    pub image: Vector,
}

/// Compares `e1(S1) + e2(S2)` in `Z^m` with the torsion-free fibered sum.
pub fn compare_with_sum(ctx: &FiberedSumContext, e1: &RatMatrix, e2: &RatMatrix, bound: u64) -> Result<SumComparison> {
    let m = e1.rows();
    if e2.rows() != m {
        return Err(Error::DimensionMismatch { expected: m, found: e2.rows() });
    }
    let d1 = ctx.s1.ambient_dim();
    let d2 = ctx.s2.ambient_dim();
    for g in ctx.s.generators() {
        let left = e1.apply_int(&ctx.h1.apply(g)?)?;
        let right = e2.apply_int(&ctx.h2.apply(g)?)?;
        if left != right {
            return Err(Error::EmbeddingDisagreement(g.clone()));
        }
    }
    let sum_map = |v: &[BigInt]| -> Result<Vec<BigInt>> {
        let a = from_big(&v[..d1])?;
        let b = from_big(&v[d1..])?;
        let x = e1.apply_int(&a)?;
        let y = e2.apply_int(&b)?;
        x.into_iter()
            .zip(y)
            .map(|(p, q)| {
                let s = p + q;
                if s.is_integer() {
                    Ok(s.to_integer())
                } else {
                    Err(Error::NonIntegralImage { generator: from_big(v).unwrap_or_default() })
                }
            })
            .collect()
    };
    // kernel of the sum map on the ambient lattice
    let basis = ctx.ambient.basis_rows();
    let images: Vec<Vec<BigInt>> = basis.iter().map(|r| sum_map(r)).collect::<Result<_>>()?;
    let kernel = if images.is_empty() {
        IntegerLattice::zero(d1 + d2)
    } else {
        let img = IntMatrix::from_rows(m, &images)?;
        let (h, u) = hnf(&img);
        let rank = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
        let mut rows = Vec::new();
        for i in rank..u.rows() {
            rows.push(ctx.ambient.basis().left_apply(u.row(i))?);
        }
        IntegerLattice::from_big_rows(d1 + d2, &rows)?
    };
    if kernel == ctx.sat {
        let r = ctx.s.rank();
        let reason = if ctx.s1.rank() == r && ctx.s2.rank() == r {
            IsoReason::EqualRanks
        } else if images_gp_condition(ctx, e1, e2)? {
            IsoReason::GpCondition
        } else {
            IsoReason::InjectiveSumMap
        };
        return Ok(SumComparison::Isomorphic { reason });
    }
    let kernel_vector = kernel
        .basis_rows()
        .into_iter()
        .find(|r| !ctx.sat.contains_big(r).unwrap_or(true))
        .map(|r| from_big(&r))
        .transpose()?
        .unwrap_or_default();
    let witness = search_sum_witness(ctx, e1, e2, bound)?;
    Ok(SumComparison::NotIsomorphic { witness, kernel_vector })
}

fn images_gp_condition(ctx: &FiberedSumContext, e1: &RatMatrix, e2: &RatMatrix) -> Result<bool> {
    let m = e1.rows();
    let t1: Vec<Vector> = ctx.s1.generators().iter().map(|g| integral(e1, g)).collect::<Result<_>>()?;
    let t2: Vec<Vector> = ctx.s2.generators().iter().map(|g| integral(e2, g)).collect::<Result<_>>()?;
    let mut t0 = Vec::new();
    for g in ctx.s.generators() {
        t0.push(integral(e1, &ctx.h1.apply(g)?)?);
    }
    let l1 = IntegerLattice::from_rows(m, &t1)?;
    let l2 = IntegerLattice::from_rows(m, &t2)?;
    Ok(l1.intersect(&l2)? == IntegerLattice::from_rows(m, &t0)?)
}

fn integral(e: &RatMatrix, g: &[i64]) -> Result<Vector> {
    e.apply_integral(g)?.ok_or_else(|| Error::NonIntegralImage { generator: g.to_vec() })
}

/// Enumerates coefficient vectors over the generators of both summands by total
/// coefficient sum, then in decreasing lexicographic order, and returns the first
/// element whose image repeats that of an earlier, inequivalent element.
fn search_sum_witness(
    ctx: &FiberedSumContext,
    e1: &RatMatrix,
    e2: &RatMatrix,
    bound: u64,
) -> Result<Option<SumWitness>> {
    let n1 = ctx.s1.generators().len();
    let n2 = ctx.s2.generators().len();
    let t1: Vec<Vector> = ctx.s1.generators().iter().map(|g| integral(e1, g)).collect::<Result<_>>()?;
    let t2: Vec<Vector> = ctx.s2.generators().iter().map(|g| integral(e2, g)).collect::<Result<_>>()?;
    let m = e1.rows();
    let mut buckets: HashMap<Vector, Vec<(Vector, Vector)>> = HashMap::new();
    for total in 0..=bound {
        for coeffs in compositions_desc(n1 + n2, total) {
            let a = ctx.s1.combine(&coeffs[..n1]);
            let b = ctx.s2.combine(&coeffs[n1..]);
            let mut image = vec![0i64; m];
            for (c, t) in coeffs.iter().zip(t1.iter().chain(&t2)) {
                for (o, &x) in image.iter_mut().zip(t) {
                    *o += *c as i64 * x;
                }
            }
            let entry = buckets.entry(image.clone()).or_default();
            let joined: Vector = a.iter().chain(&b).copied().collect();
            for (pa, pb) in entry.iter() {
                let diff: Vector = joined.iter().zip(pa.iter().chain(pb)).map(|(x, y)| x - y).collect();
                if !ctx.sat.contains(&diff)? {
                    return Ok(Some(SumWitness { first: (a, b), second: (pa.clone(), pb.clone()), image }));
                }
            }
            if !entry.iter().any(|(pa, pb)| *pa == a && *pb == b) {
                entry.push((a, b));
            }
        }
    }
    Ok(None)
}

/// All natural vectors of length `n` summing to `total`, in decreasing lexicographic order.
pub(crate) fn compositions_desc(n: usize, total: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, total: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in (0..=total).rev() {
            prefix.push(c);
            rec(n - 1, total - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Distinct elements of `s` with coefficient sum at most `bound`, in order of discovery.
pub(crate) fn bounded_elements(s: &AffineSemigroup, bound: u64) -> Vec<Vector> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let n = s.generators().len();
    for total in 0..=bound {
        for c in compositions_desc(n, total) {
            let v = s.combine(&c);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(gens: &[i64]) -> AffineSemigroup {
        AffineSemigroup::numerical(gens).unwrap()
    }

    fn sg(d: usize, gens: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(d, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_and_three_over_six() {
        let ctx = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[6])).unwrap();
        assert_eq!(ctx.rel(), &IntegerLattice::from_rows(2, &[vec![6, -6]]).unwrap());
        assert!(ctx.is_torsion_free());
        let x = ctx.element(&[6], &[0]).unwrap();
        let y = ctx.element(&[0], &[6]).unwrap();
        assert!(eq_cancellative(&x, &y).unwrap());
        assert!(ctx.find_equality_witness(&x, &y, DEFAULT_EQUALITY_WITNESS_BOUND).unwrap().is_some());
        let t = ctx.tilde_presentation().unwrap();
        assert!(t.semigroup.equal_as_submonoids(&num(&[2, 3]), None).unwrap());
    }

    #[test]
    fn two_and_three_over_twelve_has_torsion() {
        let ctx = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[12])).unwrap();
        assert!(!ctx.is_torsion_free());
        assert_eq!(ctx.quotient().torsion_invariants, vec![BigInt::from(2)]);
        let x = ctx.element(&[6], &[0]).unwrap();
        let y = ctx.element(&[0], &[6]).unwrap();
        assert!(!eq_cancellative(&x, &y).unwrap());
        assert!(eq_torsionfree(&x, &y).unwrap());
        assert!(eq_cancellative(&x.add(&x).unwrap(), &y.add(&y).unwrap()).unwrap());
        assert!(eq_cancellative(&x, &x).unwrap());
    }

    #[test]
    fn trivial_base_gives_direct_sum() {
        let ctx = FiberedSumContext::embedded(&num(&[2, 3]), &num(&[5]), &AffineSemigroup::trivial(1)).unwrap();
        assert_eq!(ctx.rel(), &IntegerLattice::zero(2));
        assert!(ctx.is_torsion_free());
        assert_eq!(ctx.quotient().free_rank, 2);
    }

    #[test]
    fn rank_obstruction() {
        let s1 = sg(2, &[&[1, 0], &[1, 1]]);
        let s2 = sg(2, &[&[1, 1], &[0, 1]]);
        let s = sg(2, &[&[1, 1]]);
        let ctx = FiberedSumContext::embedded(&s1, &s2, &s).unwrap();
        assert_eq!(ctx.rel(), &IntegerLattice::from_rows(4, &[vec![1, 1, -1, -1]]).unwrap());
        let t = ctx.tilde_presentation().unwrap();
        assert_eq!(t.free_rank(), 3);
        assert_eq!(t.semigroup.generators().len(), 3);
        assert_eq!(t.semigroup.rank(), 3);
        let id = RatMatrix::identity(2);
        match compare_with_sum(&ctx, &id, &id, DEFAULT_COMPARE_BOUND).unwrap() {
            SumComparison::NotIsomorphic { witness: Some(w), .. } => {
                assert_eq!(w.first, (vec![1, 0], vec![0, 1]));
                assert_eq!(w.second, (vec![1, 1], vec![0, 0]));
                assert_eq!(w.image, vec![1, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn not_positive_tilde() {
        let s1 = sg(2, &[&[1, -1], &[0, 1]]);
        let s2 = sg(2, &[&[1, 1], &[0, -1]]);
        let s = sg(2, &[&[1, 1], &[1, -1]]);
        assert!(!gp_condition(&s1, &s2, &s).unwrap());
        let ctx = FiberedSumContext::embedded(&s1, &s2, &s).unwrap();
        let t = ctx.tilde_presentation().unwrap();
        assert_eq!(t.free_rank(), 2);
        assert!(!t.semigroup.positive());
    }

    #[test]
    fn numerical_sum_is_isomorphic() {
        let ctx = FiberedSumContext::embedded(&num(&[2, 5]), &num(&[3, 4, 5]), &num(&[4, 5, 6])).unwrap();
        let id = RatMatrix::identity(1);
        assert!(matches!(
            compare_with_sum(&ctx, &id, &id, DEFAULT_COMPARE_BOUND).unwrap(),
            SumComparison::Isomorphic { reason: IsoReason::EqualRanks }
        ));
        let t = ctx.tilde_presentation().unwrap();
        assert!(t.semigroup.equal_as_submonoids(&num(&[2, 3]), None).unwrap());
    }

    #[test]
    fn hom_image_outside_target_is_reported() {
        let err = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[4])).unwrap_err();
        assert_eq!(err, Error::HomImageNotInTarget { which: "h2".into(), generator: vec![4] });
    }

    #[test]
    fn elements_of_other_contexts_are_rejected() {
        let c1 = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[6])).unwrap();
        let c2 = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[12])).unwrap();
        let x = c1.element(&[2], &[0]).unwrap();
        let y = c2.element(&[2], &[0]).unwrap();
        assert_eq!(eq_cancellative(&x, &y), Err(Error::ContextMismatch));
        assert!(c1.element(&[3], &[0]).is_err());
    }

    #[test]
    fn cocones_factor_uniquely() {
        let ctx = FiberedSumContext::embedded(&num(&[2]), &num(&[3]), &num(&[6])).unwrap();
        let m = |k: i64| RatMatrix::from_i64_rows(1, &[vec![k]]).unwrap();
        let f = ctx.factor_cocone(&m(5), &m(5)).unwrap();
        assert!(f.unique);
        assert!(f.matrix.is_some());
        assert!(ctx.factor_cocone(&m(5), &m(4)).is_err());
    }
}
