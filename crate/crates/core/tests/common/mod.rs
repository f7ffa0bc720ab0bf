//! Brute-force oracles and seeded property checks shared by the integration
//! tests and the acceptance harness.

#![allow(dead_code)]

use std::collections::HashMap;

use affsemi::exactlat::{hnf, saturation, smith, IntMatrix, IntegerLattice};
use affsemi::fibsum::{eq_cancellative, eq_torsionfree, gp_condition, FiberedSumContext};
use affsemi::semigroup::{AffineSemigroup, MembershipDecision};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn num(gens: &[i64]) -> AffineSemigroup {
    AffineSemigroup::numerical(gens).unwrap()
}

pub fn sg(gens: &[&[i64]]) -> AffineSemigroup {
    AffineSemigroup::new(gens[0].len(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

/// Membership in a semigroup with nonnegative generators, by recursion on `x - g`.
pub fn member_oracle(gens: &[Vec<i64>], x: &[i64]) -> bool {
    fn go(gens: &[Vec<i64>], x: Vec<i64>, memo: &mut HashMap<Vec<i64>, bool>) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if let Some(&r) = memo.get(&x) {
            return r;
        }
        let mut found = false;
        for g in gens.iter().filter(|g| g.iter().any(|&v| v != 0)) {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            if y.iter().all(|&v| v >= 0) && go(gens, y, memo) {
                found = true;
                break;
            }
        }
        memo.insert(x, found);
        found
    }
    if x.iter().any(|&v| v < 0) {
        return false;
    }
    go(gens, x.to_vec(), &mut HashMap::new())
}

/// Elements of a numerical semigroup in `[0, limit]`.
pub fn numerical_oracle(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for x in 1..=limit {
        table[x as usize] = gens.iter().any(|&g| g <= x && table[(x - g) as usize]);
    }
    table
}

pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, max: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-max..=max)).collect()).collect();
    IntMatrix::from_i64_rows(cols, &data).unwrap()
}

/// A unimodular matrix as a product of random elementary row operations.
fn random_unimodular(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| big((i == j) as i64)).collect()).collect();
    for _ in 0..3 * n {
        let i = r.gen_range(0..n);
        let j = r.gen_range(0..n);
        match r.gen_range(0..3) {
            0 if i != j => {
                let k = big(r.gen_range(-3..=3));
                let add: Vec<BigInt> = rows[j].iter().map(|x| x * &k).collect();
                for (a, b) in rows[i].iter_mut().zip(add) {
                    *a += b;
                }
            }
            1 => rows.swap(i, j),
            _ => rows[i].iter_mut().for_each(|x| *x = -x.clone()),
        }
    }
    IntMatrix::from_rows(n, &rows).unwrap()
}

fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut zero_seen = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => zero_seen = true,
            Some(p) => {
                if zero_seen || last_pivot.is_some_and(|lp| p <= lp) || !row[p].is_positive() {
                    return false;
                }
                for k in 0..i {
                    let above = h.get(k, p);
                    if above.is_negative() || above >= &row[p] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// HNF and SNF on `count` random matrices with dimensions at most 5 and entries at most 20.
pub fn normal_forms(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let m = random_matrix(&mut r, rows, cols, 20);
        let (h, u) = hnf(&m);
        if u.mul(&m).unwrap() != h || u.determinant().unwrap().abs() != BigInt::one() || !is_hnf(&h) {
            return Err(format!("case {case}: HNF invariants fail for {m:?}"));
        }
        if hnf(&h).0 != h {
            return Err(format!("case {case}: HNF is not idempotent"));
        }
        let w = random_unimodular(&mut r, rows);
        if hnf(&w.mul(&m).unwrap()).0 != h {
            return Err(format!("case {case}: HNF depends on the row basis"));
        }
        let s = smith(&m);
        if s.u.mul(&m).unwrap().mul(&s.v).unwrap() != s.d {
            return Err(format!("case {case}: U M V != D"));
        }
        if s.v.mul(&s.v_inv).unwrap() != IntMatrix::identity(cols) {
            return Err(format!("case {case}: V V^-1 != I"));
        }
        for i in 0..rows {
            for j in 0..cols {
                let d = s.d.get(i, j);
                if (i != j || i >= s.rank) && !d.is_zero() {
                    return Err(format!("case {case}: D is not diagonal of rank {}", s.rank));
                }
            }
        }
        let inv = s.invariants();
        if inv.iter().any(|d| !d.is_positive()) || inv.windows(2).any(|p| !(&p[1] % &p[0]).is_zero()) {
            return Err(format!("case {case}: invariants {inv:?} are not a divisibility chain"));
        }
        if smith(&w.mul(&m).unwrap()).invariants() != inv {
            return Err(format!("case {case}: invariants depend on the row basis"));
        }
    }
    Ok(())
}

/// Membership against [`member_oracle`] on random positive semigroups in `N^d`.
pub fn membership(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let d = r.gen_range(1..=3);
        let k = r.gen_range(1..=4);
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|_| loop {
                let g: Vec<i64> = (0..d).map(|_| r.gen_range(0..=5)).collect();
                if g.iter().any(|&x| x > 0) {
                    break g;
                }
            })
            .collect();
        let x: Vec<i64> = (0..d).map(|_| r.gen_range(0..=12)).collect();
        let s = AffineSemigroup::new(d, gens.clone()).unwrap();
        let expected = member_oracle(&gens, &x);
        match s.member(&x, None).map_err(|e| e.to_string())? {
            MembershipDecision::Yes(c) => {
                if !expected || s.combine(&c) != x {
                    return Err(format!("case {case}: {x:?} in <{gens:?}> claimed with {c:?}"));
                }
            }
            MembershipDecision::No if !expected => {}
            other => return Err(format!("case {case}: {x:?} in <{gens:?}>: got {other:?}, oracle {expected}")),
        }
    }
    Ok(())
}

/// Saturation is idempotent, contains the lattice, stays in the ambient lattice,
/// and every element has a multiple in the original lattice.
pub fn saturation_laws(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let d = r.gen_range(1..=4);
        let amb_rows: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                (0..d).map(|j| if i == j { r.gen_range(1..=3) } else { r.gen_range(0..=2) * (j > i) as i64 }).collect()
            })
            .collect();
        let ambient = IntegerLattice::from_rows(d, &amb_rows).unwrap();
        let k = r.gen_range(0..=d);
        let sub_rows: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                let coeffs: Vec<i64> = (0..d).map(|_| r.gen_range(-4..=4)).collect();
                (0..d).map(|j| (0..d).map(|i| coeffs[i] * amb_rows[i][j]).sum()).collect()
            })
            .collect();
        let sub = IntegerLattice::from_rows(d, &sub_rows).unwrap();
        let sat = saturation(&ambient, &sub).map_err(|e| e.to_string())?;
        let again = saturation(&ambient, &sat).map_err(|e| e.to_string())?;
        if again != sat {
            return Err(format!("case {case}: saturation is not idempotent"));
        }
        if !sat.contains_lattice(&sub).unwrap() || !ambient.contains_lattice(&sat).unwrap() || sat.rank() != sub.rank()
        {
            return Err(format!("case {case}: inclusions or rank fail"));
        }
        for row in sat.basis_rows_i64().unwrap() {
            if !(1..=720).any(|n| sub.contains(&row.iter().map(|x| x * n).collect::<Vec<_>>()).unwrap()) {
                return Err(format!("case {case}: {row:?} has no small multiple in the sublattice"));
            }
        }
    }
    Ok(())
}

fn random_numerical(r: &mut ChaCha8Rng, max: i64) -> Vec<i64> {
    let k = r.gen_range(1..=3);
    (0..k).map(|_| r.gen_range(2..=max)).collect()
}

/// A random numerical context: `S` is generated by products of generators of `S1` and `S2`.
fn random_context(r: &mut ChaCha8Rng) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    let g1 = random_numerical(r, 9);
    let g2 = random_numerical(r, 9);
    let k = r.gen_range(1..=2);
    let g: Vec<i64> = (0..k).map(|_| g1[r.gen_range(0..g1.len())] * g2[r.gen_range(0..g2.len())]).collect();
    (g1, g2, g)
}

fn random_element(r: &mut ChaCha8Rng, gens: &[i64]) -> i64 {
    gens.iter().map(|g| g * r.gen_range(0..=3)).sum()
}

/// The cancellative equivalence on random numerical contexts is a congruence
/// and refines the torsion-free one.
pub fn congruence_laws(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let (g1, g2, g) = random_context(&mut r);
        let ctx = FiberedSumContext::embedded(&num(&g1), &num(&g2), &num(&g)).map_err(|e| e.to_string())?;
        let (a, b) = (random_element(&mut r, &g1), random_element(&mut r, &g2));
        let (s, t) = (random_element(&mut r, &g), random_element(&mut r, &g));
        let el = |p: i64, q: i64| ctx.element(&[p], &[q]).unwrap();
        let x = el(a + s + t, b);
        let y = el(a + t, b + s);
        let z = el(a, b + s + t);
        let w = el(random_element(&mut r, &g1), random_element(&mut r, &g2));
        let u = el(random_element(&mut r, &g1), random_element(&mut r, &g2));
        let eq = |p: &_, q: &_| eq_cancellative(p, q).unwrap();
        let laws = [
            ("reflexive", eq(&x, &x)),
            ("chain x~y", eq(&x, &y)),
            ("chain y~z", eq(&y, &z)),
            ("transitive", eq(&x, &z)),
            ("symmetric", eq(&u, &w) == eq(&w, &u)),
            ("additive", eq(&x.add(&w).unwrap(), &y.add(&w).unwrap())),
            ("refines", !eq(&u, &w) || eq_torsionfree(&u, &w).unwrap()),
        ];
        if let Some((name, _)) = laws.iter().find(|(_, ok)| !ok) {
            return Err(format!("case {case}: {name} fails for S1={g1:?} S2={g2:?} S={g:?}"));
        }
        if eq(&u, &w) != equal_by_search(&g, (u.left()[0], u.right()[0]), (w.left()[0], w.right()[0]), 12) {
            return Err(format!("case {case}: disagreement with direct witness search"));
        }
    }
    Ok(())
}

/// Direct search for `s, t` in `<g>` with `x.a + s = y.a + t` and `x.b + t = y.b + s`.
pub fn equal_by_search(g: &[i64], x: (i64, i64), y: (i64, i64), bound: usize) -> bool {
    let limit = g.iter().max().copied().unwrap_or(0) * bound as i64;
    let inside = numerical_oracle(g, limit.max(0));
    let elements: Vec<i64> = (0..=limit).filter(|&v| inside[v as usize]).collect();
    elements.iter().any(|&s| {
        let t = x.0 + s - y.0;
        t >= 0 && t <= limit && inside[t as usize] && x.1 + t == y.1 + s
    })
}

/// Torsion-freeness agrees with `lcm(gcd S1, gcd S2) = gcd S` on numerical triples.
pub fn torsion_free_iff_gp_condition(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let (g1, g2, g) = random_context(&mut r);
        let ctx = FiberedSumContext::embedded(&num(&g1), &num(&g2), &num(&g)).map_err(|e| e.to_string())?;
        let expected = gcd_all(&g1).lcm(&gcd_all(&g2)) == gcd_all(&g);
        let gp = gp_condition(&num(&g1), &num(&g2), &num(&g)).unwrap();
        if ctx.is_torsion_free() != expected || gp != expected {
            return Err(format!("case {case}: S1={g1:?} S2={g2:?} S={g:?}"));
        }
    }
    Ok(())
}

/// `gcd(S1 ∩ S2) = lcm(gcd S1, gcd S2)`, with the intersection checked elementwise.
pub fn gcd_law(seed: u64, count: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..count {
        let (g1, g2) = (random_numerical(&mut r, 12), random_numerical(&mut r, 12));
        let meet = num(&g1).intersect_numerical(&num(&g2)).map_err(|e| e.to_string())?;
        let mg: Vec<i64> = meet.generators().iter().map(|v| v[0]).collect();
        if gcd_all(&mg) != gcd_all(&g1).lcm(&gcd_all(&g2)) {
            return Err(format!("case {case}: gcd of {g1:?} ∩ {g2:?} is {}", gcd_all(&mg)));
        }
        let limit = 150;
        let (t1, t2, t) = (numerical_oracle(&g1, limit), numerical_oracle(&g2, limit), numerical_oracle(&mg, limit));
        if let Some(x) = (0..=limit as usize).find(|&x| (t1[x] && t2[x]) != t[x]) {
            return Err(format!("case {case}: {x} misclassified in {g1:?} ∩ {g2:?}"));
        }
    }
    Ok(())
}
