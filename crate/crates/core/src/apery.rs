//! Apéry elements of a semigroup over a subsemigroup, representations, and the
//! unique-representation test that decides flatness of the semigroup algebra.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactlat::BigRat;
use crate::fibsum::FiberedSumContext;
use crate::semigroup::{dot, AffineSemigroup, Vector};

/// Default bound on the rational degree for Apéry and flatness searches.
pub const DEFAULT_DEGREE_BOUND: i64 = 100;

/// Cooperative cancellation flag shared between a caller and a long enumeration.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

fn check(token: Option<&CancelToken>) -> Result<()> {
    match token {
        Some(t) if t.is_cancelled() => Err(Error::Cancelled),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyReport {
    /// Sorted by degree, then lexicographically.
    pub elements: Vec<Vector>,
    pub degree_bound: BigRat,
    /// True only when the listed elements are provably all of `Apr(S'/S)`.
    pub complete: bool,
    pub grading: Vec<BigRat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    UniqueProven,
    UniqueUpTo(BigRat),
    /// `s1 + w1 = s2 + w2` with `w1 != w2` Apéry.
    NonUnique {
        s1: Vector,
        w1: Vector,
        s2: Vector,
        w2: Vector,
    },
}

/// Which representation [`representation`] returns when several exist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepresentationPolicy {
    /// Smallest `lambda(s)`, ties broken lexicographically on `s`.
    #[default]
    MinDegree,
    /// Largest `lambda(s)`, ties broken lexicographically on `s`.
    MaxDegree,
}

struct Setting<'a> {
    sp: &'a AffineSemigroup,
    s: &'a AffineSemigroup,
    weights: Vec<i64>,
    scale: i64,
}

impl<'a> Setting<'a> {
    fn new(sp: &'a AffineSemigroup, s: &'a AffineSemigroup) -> Result<Self> {
        let weights = sp.weights().ok_or_else(|| Error::NotPositive(format!("{:?}", sp.generators())))?.to_vec();
        if s.ambient_dim() != sp.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: sp.ambient_dim(), found: s.ambient_dim() });
        }
        for g in s.generators() {
            if !sp.contains(g, None)? {
                return Err(Error::ContainmentViolation(format!("generator {g:?} of S is not in S'")));
            }
        }
        let scale = sp.grading_scale().expect("positive");
        Ok(Setting { sp, s, weights, scale })
    }

    fn max_degree(&self, bound: &BigRat) -> Result<i64> {
        (bound * BigRat::from_integer(self.scale.into()))
            .floor()
            .to_integer()
            .to_i64()
            .ok_or(Error::Overflow("degree bound"))
    }

    fn lambda(&self, x: &[i64]) -> BigRat {
        BigRat::new(dot(&self.weights, x).into(), self.scale.into())
    }

    /// Elements of `S'` up to `max_degree` with their Apéry flags.
    fn census(&self, max_degree: i64, token: Option<&CancelToken>) -> Result<Vec<(i64, Vector, bool)>> {
        let elements = self.sp.elements_by_weights(&self.weights, max_degree)?;
        let members: HashSet<&Vector> = elements.iter().map(|(_, v)| v).collect();
        let mut out = Vec::with_capacity(elements.len());
        for (i, (deg, w)) in elements.iter().enumerate() {
            if i % 1024 == 0 {
                check(token)?;
            }
            // anything in S' below w has smaller degree, hence is in the census
            let apery = self.s.generators().iter().all(|g| {
                let d: Vector = w.iter().zip(g).map(|(a, b)| a - b).collect();
                !members.contains(&d)
            });
            out.push((*deg, w.clone(), apery));
        }
        Ok(out)
    }

    fn is_apery(&self, w: &[i64]) -> Result<bool> {
        for g in self.s.generators() {
            let d: Vector = w.iter().zip(g).map(|(a, b)| a - b).collect();
            if self.sp.contains(&d, None)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Apéry elements of `sp` over `s` with `lambda(w) <= bound`.
pub fn apery_set(
    sp: &AffineSemigroup,
    s: &AffineSemigroup,
    bound: &BigRat,
    token: Option<&CancelToken>,
) -> Result<AperyReport> {
    let setting = Setting::new(sp, s)?;
    let grading = sp.grading().expect("positive").to_vec();
    let max_degree = setting.max_degree(bound)?;
    let listed: Vec<Vector> =
        setting.census(max_degree.max(0), token)?.into_iter().filter(|(_, _, a)| *a).map(|(_, w, _)| w).collect();
    let complete = match numerical_apery(&setting, token)? {
        Some(full) => full.iter().all(|w| setting.lambda(w) <= *bound),
        None => false,
    };
    Ok(AperyReport { elements: listed, degree_bound: bound.clone(), complete, grading })
}

/// The full Apéry set when `sp` is numerical and `s` is nontrivial, validated
/// against the count `n / gcd(sp)` over the cyclic subsemigroup `<n>`.
fn numerical_apery(setting: &Setting<'_>, token: Option<&CancelToken>) -> Result<Option<Vec<Vector>>> {
    if !setting.sp.is_numerical() || setting.s.is_trivial() {
        return Ok(None);
    }
    let table = setting.sp.numerical_table()?;
    let n = setting.s.generators().iter().map(|g| g[0]).min().expect("nontrivial");
    // every Apéry element over <n> lies below conductor + n
    let limit = table.conductor + n;
    let census = setting.census(limit, token)?;
    let over_cyclic = census.iter().filter(|(_, w, _)| w[0] < n || !table.contains(w[0] - n)).count() as i64;
    if over_cyclic != n / table.gcd {
        return Err(Error::NotStabilized(format!(
            "found {over_cyclic} Apéry elements over <{n}>, expected {}",
            n / table.gcd
        )));
    }
    Ok(Some(census.into_iter().filter(|(_, _, a)| *a).map(|(_, w, _)| w).collect()))
}

/// All representations `x = s + w` with `s in S` and `w` Apéry, ordered by
/// `lambda(s)` and then lexicographically on `s`.
pub fn representations(sp: &AffineSemigroup, s: &AffineSemigroup, x: &[i64]) -> Result<Vec<(Vector, Vector)>> {
    let setting = Setting::new(sp, s)?;
    if !sp.contains(x, None)? {
        return Err(Error::NotAMember(x.to_vec()));
    }
    let deg = dot(&setting.weights, x);
    let mut out = Vec::new();
    for (_, sv) in s.elements_by_weights(&setting.weights, deg)? {
        let w: Vector = x.iter().zip(&sv).map(|(a, b)| a - b).collect();
        if sp.contains(&w, None)? && setting.is_apery(&w)? {
            out.push((sv, w));
        }
    }
    Ok(out)
}

/// One representation of `x` over `s`, chosen by `policy`.
pub fn representation(
    sp: &AffineSemigroup,
    s: &AffineSemigroup,
    x: &[i64],
    policy: RepresentationPolicy,
) -> Result<(Vector, Vector)> {
    let mut all = representations(sp, s, x)?;
    let pick = match policy {
        RepresentationPolicy::MinDegree => {
            if all.is_empty() {
                None
            } else {
                Some(all.swap_remove(0))
            }
        }
        RepresentationPolicy::MaxDegree => {
            let top = all.last().map(|(sv, _)| dot(sp.weights().expect("positive"), sv));
            all.into_iter().find(|(sv, _)| Some(dot(sp.weights().expect("positive"), sv)) == top)
        }
    };
    pick.ok_or_else(|| Error::NotPositive("element without a representation".into()))
}

/// Decides whether every element of `sp` has a unique representation over `s`,
/// exhaustively up to `lambda`-degree `bound` unless `s` is cyclic.
pub fn flatness_verdict(
    sp: &AffineSemigroup,
    s: &AffineSemigroup,
    bound: &BigRat,
    token: Option<&CancelToken>,
) -> Result<FlatnessVerdict> {
    let setting = Setting::new(sp, s)?;
    if s.generators().len() <= 1 {
        return Ok(FlatnessVerdict::UniqueProven);
    }
    let max_degree = setting.max_degree(bound)?;
    let census = setting.census(max_degree.max(0), token)?;
    let apery: Vec<(i64, &Vector)> = census.iter().filter(|(_, _, a)| *a).map(|(d, w, _)| (*d, w)).collect();
    let base = s.elements_by_weights(&setting.weights, max_degree.max(0))?;
    // index every s + w by its value; keys sorted by (degree, value)
    let mut index: BTreeMap<(i64, Vector), Vec<(Vector, Vector)>> = BTreeMap::new();
    for (i, (ds, sv)) in base.iter().enumerate() {
        if i % 256 == 0 {
            check(token)?;
        }
        for (dw, w) in &apery {
            if ds + dw > max_degree {
                break;
            }
            let x: Vector = sv.iter().zip(w.iter()).map(|(a, b)| a + b).collect();
            index.entry((ds + dw, x)).or_default().push((sv.clone(), (*w).clone()));
        }
    }
    for (_, mut pairs) in index {
        if pairs.len() > 1 {
            pairs.sort_by(|a, b| a.1.cmp(&b.1));
            let (s1, w1) = pairs[0].clone();
            let (s2, w2) = pairs[1].clone();
            return Ok(FlatnessVerdict::NonUnique { s1, w1, s2, w2 });
        }
    }
    Ok(FlatnessVerdict::UniqueUpTo(bound.clone()))
}

/// Which hypothesis guarantees positivity of the torsion-free fibered sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityRule {
    /// Unique representation of `S2` over `S`.
    UniqueRepresentation,
    /// `S` embeds in `N`.
    NumericalBase,
}

impl PositivityRule {
    pub fn tag(&self) -> &'static str {
        match self {
            PositivityRule::UniqueRepresentation => "(i)",
            PositivityRule::NumericalBase => "(ii)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub guaranteed: bool,
    pub rule: Option<PositivityRule>,
    /// Set when the guarantee rests on a bounded unique-representation check.
    pub caveat: Option<String>,
    /// Direct positivity test of the tilde presentation.
    pub tilde_positive: bool,
}

/// Checks the sufficient conditions for positivity of the torsion-free fibered
/// sum and cross-checks against the presentation itself.
pub fn positivity_preservation(ctx: &FiberedSumContext, bound: &BigRat) -> Result<PositivityReport> {
    for (name, t) in [("S1", ctx.s1()), ("S2", ctx.s2())] {
        if !t.positive() {
            return Err(Error::NotPositive(format!("{name} = {:?}", t.generators())));
        }
    }
    let tilde_positive = ctx.tilde_presentation()?.semigroup.positive();
    let (rule, caveat) = if ctx.s().embeds_in_n() {
        (Some(PositivityRule::NumericalBase), None)
    } else {
        let image = ctx.s().transform(ctx.h2().matrix())?;
        match flatness_verdict(ctx.s2(), &image, bound, None)? {
            FlatnessVerdict::UniqueProven => (Some(PositivityRule::UniqueRepresentation), None),
            FlatnessVerdict::UniqueUpTo(b) => (
                Some(PositivityRule::UniqueRepresentation),
                Some(format!("unique representation verified only up to degree {b}")),
            ),
            FlatnessVerdict::NonUnique { .. } => (None, None),
        }
    };
    Ok(PositivityReport { guaranteed: rule.is_some(), rule, caveat, tilde_positive })
}
