use num_integer::Integer;

/// Membership table of a submonoid of `N`, exact past its conductor.
#[derive(Clone, Debug)]
pub(crate) struct NumericalTable {
    pub gcd: i64,
    /// `members[k]` says whether `k * gcd` belongs to the semigroup, for `k < len`.
    members: Vec<bool>,
    /// Smallest multiple of `gcd` from which every multiple of `gcd` belongs.
    pub conductor: i64,
}

impl NumericalTable {
    /// `gens` must be positive.
    pub fn new(gens: &[i64]) -> Self {
        if gens.is_empty() {
            return NumericalTable { gcd: 0, members: vec![true], conductor: i64::MAX };
        }
        let gcd = gens.iter().fold(0i64, |g, &x| g.gcd(&x));
        let scaled: Vec<usize> = gens.iter().map(|&x| (x / gcd) as usize).collect();
        let amin = *scaled.iter().min().expect("nonempty");
        let amax = *scaled.iter().max().expect("nonempty");
        // the Frobenius number of a gcd-one semigroup is below amin * amax
        let limit = amin * amax + amax + 1;
        let mut members = vec![false; limit];
        members[0] = true;
        for k in 1..limit {
            members[k] = scaled.iter().any(|&a| a <= k && members[k - a]);
        }
        let last_gap = members.iter().rposition(|&m| !m);
        let conductor = last_gap.map_or(0, |k| (k as i64 + 1) * gcd);
        NumericalTable { gcd, members, conductor }
    }

    pub fn contains(&self, x: i64) -> bool {
        if x == 0 {
            return true;
        }
        if x < 0 || self.gcd == 0 || x % self.gcd != 0 {
            return false;
        }
        if x >= self.conductor {
            return true;
        }
        self.members[(x / self.gcd) as usize]
    }

    /// Largest multiple of the gcd that is not a member, if any.
    pub fn frobenius(&self) -> Option<i64> {
        if self.gcd == 0 || self.conductor == 0 {
            None
        } else {
            Some(self.conductor - self.gcd)
        }
    }

    /// Smallest nonzero member.
    pub fn multiplicity(&self) -> Option<i64> {
        if self.gcd == 0 {
            return None;
        }
        (1..).map(|k| k * self.gcd).find(|&x| self.contains(x))
    }
}

/// Minimal generating set of the submonoid of `N` described by `contains`, given
/// that all minimal generators are at most `limit`.
pub(crate) fn minimal_generators(contains: impl Fn(i64) -> bool, step: i64, limit: i64) -> Vec<i64> {
    let members: Vec<i64> = (1..=limit / step).map(|k| k * step).filter(|&x| contains(x)).collect();
    let mut gens = Vec::new();
    for &x in &members {
        let decomposable = members.iter().take_while(|&&y| y <= x / 2).any(|&y| contains(x - y));
        if !decomposable {
            gens.push(x);
        }
    }
    gens
}
