//! Gluing of positive affine semigroups.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlat::{content, lattice_intersect, RatMatrix};
use crate::fibsum::{compare_with_sum, compositions_desc, FiberedSumContext, SumComparison, DEFAULT_COMPARE_BOUND};
use crate::semigroup::{AffineSemigroup, MembershipDecision, Vector};

pub const DEFAULT_SEARCH_BOUND: u64 = 8;

/// Rank of `gp(S1) ∩ gp(S2)` and, in rank one, its generator and primitive direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCriterion {
    pub rank: usize,
    pub generator: Option<Vector>,
    pub v0: Option<Vector>,
}

fn orient(v: Vector) -> Vector {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

pub fn lattice_criterion(s1: &AffineSemigroup, s2: &AffineSemigroup) -> Result<LatticeCriterion> {
    let l = lattice_intersect(&s1.gp(), &s2.gp())?;
    let rank = l.rank();
    if rank != 1 {
        return Ok(LatticeCriterion { rank, generator: None, v0: None });
    }
    let w = orient(l.basis_rows_i64()?.remove(0));
    let c = content(&w);
    let v0 = w.iter().map(|x| x / c).collect();
    Ok(LatticeCriterion { rank, generator: Some(w), v0: Some(v0) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingQuery {
    pub s1: AffineSemigroup,
    pub s2: AffineSemigroup,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingVerdict {
    Yes { a: i64, b: i64, w: Vector },
    No { a: i64, b: i64 },
    ImpossibleAllScales { rank: usize },
    NotFoundUpTo { bound: u64 },
}

/// A pair of monomials with the same image: exponents over the generators
/// `X_1..X_n` of `aS1` followed by `Y_1..Y_m` of `bS2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KernelBinomial {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub image: Vector,
}

impl KernelBinomial {
    /// Whether the binomial involves variables from both blocks, the first `split` being `X`.
    pub fn is_mixed(&self, split: usize) -> bool {
        let touches = |r: std::ops::Range<usize>| r.into_iter().any(|i| self.left[i] > 0 || self.right[i] > 0);
        touches(0..split) && touches(split..self.left.len())
    }

    pub fn degree(&self) -> u64 {
        self.left.iter().sum::<u64>().max(self.right.iter().sum())
    }

    pub fn format(&self, names: &[String]) -> String {
        let mono = |e: &[u64]| {
            let parts: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        format!("{} - {}", mono(&self.left), mono(&self.right))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub verdict: GluingVerdict,
    /// `aS1 + bS2` on a `Yes` verdict.
    pub glued: Option<AffineSemigroup>,
    /// `X^i - Y^j` with both sides mapping to `w`.
    pub binomial: Option<KernelBinomial>,
    /// Generators `X_1..X_n, Y_1..Y_m` of the glued semigroup before deduplication.
    pub named_generators: Vec<(String, Vector)>,
    /// Whether `aS1 + bS2` agrees with the torsion-free fibered sum over `N w`.
    pub fibered_sum_agrees: Option<bool>,
}

impl GluingReport {
    fn bare(verdict: GluingVerdict) -> Self {
        GluingReport { verdict, glued: None, binomial: None, named_generators: Vec::new(), fibered_sum_agrees: None }
    }
}

fn require_positive(s1: &AffineSemigroup, s2: &AffineSemigroup) -> Result<()> {
    if s1.ambient_dim() != s2.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: s1.ambient_dim(), found: s2.ambient_dim() });
    }
    for (name, s) in [("S1", s1), ("S2", s2)] {
        if !s.positive() {
            return Err(Error::NotPositive(name.into()));
        }
    }
    Ok(())
}

fn coefficients(s: &AffineSemigroup, x: &[i64]) -> Result<Option<Vec<u64>>> {
    Ok(match s.member(x, None)? {
        MembershipDecision::Yes(c) => Some(c),
        _ => None,
    })
}

/// Decides whether `aS1` and `bS2` glue for the given scalars.
pub fn can_glue_with(q: &GluingQuery) -> Result<GluingReport> {
    require_positive(&q.s1, &q.s2)?;
    let (s1, s2) = (q.s1.scale(q.a)?, q.s2.scale(q.b)?);
    let crit = lattice_criterion(&s1, &s2)?;
    let Some(w) = crit.generator else {
        return Ok(GluingReport::bare(GluingVerdict::ImpossibleAllScales { rank: crit.rank }));
    };
    let w = if w.iter().all(|&x| x >= 0) {
        w
    } else if w.iter().all(|&x| x <= 0) {
        w.iter().map(|x| -x).collect()
    } else {
        return Ok(GluingReport::bare(GluingVerdict::No { a: q.a, b: q.b }));
    };
    let (Some(left), Some(right)) = (coefficients(&s1, &w)?, coefficients(&s2, &w)?) else {
        return Ok(GluingReport::bare(GluingVerdict::No { a: q.a, b: q.b }));
    };
    let n = s1.generators().len();
    let mut named: Vec<(String, Vector)> =
        s1.generators().iter().enumerate().map(|(i, g)| (format!("X{}", i + 1), g.clone())).collect();
    named.extend(s2.generators().iter().enumerate().map(|(j, g)| (format!("Y{}", j + 1), g.clone())));
    let mut bl = left.clone();
    bl.extend(std::iter::repeat_n(0, s2.generators().len()));
    let mut br = vec![0; n];
    br.extend(right);
    let glued = s1.sum(&s2)?;
    let base = AffineSemigroup::new(s1.ambient_dim(), vec![w.clone()])?;
    let ctx = FiberedSumContext::embedded(&s1, &s2, &base)?;
    let id = RatMatrix::identity(s1.ambient_dim());
    let agrees = matches!(compare_with_sum(&ctx, &id, &id, DEFAULT_COMPARE_BOUND)?, SumComparison::Isomorphic { .. });
    Ok(GluingReport {
        verdict: GluingVerdict::Yes { a: q.a, b: q.b, w: w.clone() },
        glued: Some(glued),
        binomial: Some(KernelBinomial { left: bl, right: br, image: w }),
        named_generators: named,
        fibered_sum_agrees: Some(agrees),
    })
}

/// Scans `(a, b) ∈ [1, B]^2` by increasing `a + b`, then `a`; the first `Yes` wins.
pub fn search_gluing(s1: &AffineSemigroup, s2: &AffineSemigroup, bound: u64, parallel: bool) -> Result<GluingReport> {
    require_positive(s1, s2)?;
    let rank = lattice_criterion(s1, s2)?.rank;
    if rank != 1 {
        return Ok(GluingReport::bare(GluingVerdict::ImpossibleAllScales { rank }));
    }
    let b_max = i64::try_from(bound).map_err(|_| Error::Overflow("search bound"))?;
    let mut grid: Vec<(i64, i64)> = (1..=b_max).flat_map(|a| (1..=b_max).map(move |b| (a, b))).collect();
    grid.sort_by_key(|&(a, b)| (a + b, a));
    let attempt = |&(a, b): &(i64, i64)| -> Option<Result<GluingReport>> {
        let q = GluingQuery { s1: s1.clone(), s2: s2.clone(), a, b };
        match can_glue_with(&q) {
            Ok(r) if matches!(r.verdict, GluingVerdict::Yes { .. }) => Some(Ok(r)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    };
    let hit = if parallel { grid.par_iter().find_map_first(attempt) } else { grid.iter().find_map(attempt) };
    hit.unwrap_or(Ok(GluingReport::bare(GluingVerdict::NotFoundUpTo { bound })))
}

/// The gluing `b T1 + a T2` of numerical semigroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalGluing {
    /// Minimally generated.
    pub semigroup: AffineSemigroup,
    /// The element `ab` where `a` and `b` are identified.
    pub identified: i64,
    pub warnings: Vec<String>,
    /// Whether the torsion-free fibered sum of `bT1` and `aT2` over `ab N` has the same elements.
    pub fibered_sum_agrees: bool,
}

pub fn glue_numerical(t1: &AffineSemigroup, t2: &AffineSemigroup, a: i64, b: i64) -> Result<NumericalGluing> {
    for (name, t) in [("T1", t1), ("T2", t2)] {
        let g = t.gcd_numerical()?;
        if g != 1 {
            return Err(Error::GcdViolation(format!("gcd of {name} is {g}")));
        }
    }
    if a.gcd(&b) != 1 {
        return Err(Error::GcdViolation(format!("gcd({a}, {b}) = {}", a.gcd(&b))));
    }
    let mut warnings = Vec::new();
    for (name, t, x) in [("T1", t1, a), ("T2", t2, b)] {
        let table = t.numerical_table()?;
        if x <= 0 || !table.contains(x) {
            return Err(Error::ContainmentViolation(format!("{x} is not in {name}")));
        }
        if t.minimal_numerical()?.generators().contains(&vec![x]) {
            warnings.push(format!("{x} is a minimal generator of {name}"));
        }
    }
    let (bt1, at2) = (t1.scale(b)?, t2.scale(a)?);
    let semigroup = bt1.sum(&at2)?.minimal_numerical()?;
    let base = AffineSemigroup::numerical(&[a * b])?;
    let tilde = FiberedSumContext::embedded(&bt1, &at2, &base)?.tilde_presentation()?;
    let fibered_sum_agrees = tilde.semigroup.equal_as_submonoids(&semigroup, None)?;
    Ok(NumericalGluing { semigroup, identified: a * b, warnings, fibered_sum_agrees })
}

/// All pairs of distinct exponent tuples of total degree at most `degree` over
/// `gens` with equal image, each unordered pair once with the larger tuple on the left.
pub fn kernel_binomials(gens: &[Vector], degree: u64) -> Vec<KernelBinomial> {
    let n = gens.len();
    let dim = gens.first().map_or(0, Vec::len);
    let mut buckets: BTreeMap<Vector, Vec<Vec<u64>>> = BTreeMap::new();
    for total in 0..=degree {
        for c in compositions_desc(n, total) {
            let mut img = vec![0i64; dim];
            for (k, g) in c.iter().zip(gens) {
                for (acc, x) in img.iter_mut().zip(g) {
                    *acc += *k as i64 * x;
                }
            }
            buckets.entry(img).or_default().push(c);
        }
    }
    let mut out = Vec::new();
    for (img, tuples) in buckets {
        for i in 0..tuples.len() {
            for j in i + 1..tuples.len() {
                let (l, r) = if tuples[i] > tuples[j] { (&tuples[i], &tuples[j]) } else { (&tuples[j], &tuples[i]) };
                out.push(KernelBinomial { left: l.clone(), right: r.clone(), image: img.clone() });
            }
        }
    }
    out.sort_by(|x, y| (x.degree(), &x.left, &x.right).cmp(&(y.degree(), &y.left, &y.right)));
    out
}
