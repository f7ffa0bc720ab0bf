//! Bundled regression corpus of worked examples, each run through the CLI.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli;

#[derive(Clone, Debug)]
pub struct ExampleCase {
    pub id: &'static str,
    /// Arguments after `affsemi --format json`.
    pub args: Vec<String>,
    pub code: i32,
    /// JSON pointers into the first output document and their expected values.
    pub expect: Vec<(&'static str, Value)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn sg(gens: &[&[i64]]) -> String {
    json!({"kind": "semigroup", "dim": gens.first().map_or(1, |g| g.len()), "gens": gens}).to_string()
}

fn num(gens: &[i64]) -> String {
    let gens: Vec<Vec<i64>> = gens.iter().map(|&g| vec![g]).collect();
    json!({"kind": "semigroup", "dim": 1, "gens": gens}).to_string()
}

fn algebra(ring: Value, base: Value) -> String {
    json!({"kind": "algebra", "ring": ring, "base": base}).to_string()
}

fn args(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn case(id: &'static str, a: Vec<String>, code: i32, expect: Vec<(&'static str, Value)>) -> ExampleCase {
    ExampleCase { id, args: a, code, expect }
}

fn all_cases() -> Vec<ExampleCase> {
    let (n2, n3) = (num(&[2]), num(&[3]));
    let nc1 = sg(&[&[2, 1, 0], &[1, 1, 1], &[0, 1, 2]]);
    let nc2 = sg(&[&[1, 2, 0], &[1, 1, 1], &[1, 0, 2]]);
    let quad = sg(&[&[2, 0], &[1, 1], &[0, 2]]);
    let cubic = sg(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]);
    let gs1 = sg(&[&[4, 0, 0], &[3, 1, 0], &[2, 2, 0], &[1, 3, 0]]);
    let gs2 = sg(&[&[3, 3, 0], &[3, 2, 1], &[3, 1, 2], &[3, 0, 3]]);
    let base6 = json!({"dim": 1, "gens": [[6]]});
    let base12 = json!({"dim": 1, "gens": [[12]]});
    let base35 = json!({"dim": 1, "gens": [[3], [5]]});
    let base_xy = json!({"dim": 2, "gens": [[1, 1]]});
    vec![
        case(
            "ex-6Nvs12N-over-6N",
            args(&["fibsum", "--S1", &n2, "--S2", &n3, "--S", &num(&[6])]),
            0,
            vec![("/torsion_free", json!(true)), ("/free_rank", json!(1)), ("/tilde/gens", json!([[2], [3]]))],
        ),
        case(
            "ex-6Nvs12N-over-12N",
            args(&["fibsum", "--S1", &n2, "--S2", &n3, "--S", &num(&[12]), "--check", "torsionfree"]),
            0,
            vec![("/torsion_free", json!(false)), ("/torsion_invariants", json!(["2"]))],
        ),
        case(
            "ex-6Nvs12N-equality",
            args(&[
                "fibsum",
                "--S1",
                &n2,
                "--S2",
                &n3,
                "--S",
                &num(&[12]),
                "--check",
                "torsionfree",
                "--x",
                "6:0",
                "--y",
                "0:6",
            ]),
            0,
            vec![("/equality/eq_cancellative", json!(false)), ("/equality/eq_torsionfree", json!(true))],
        ),
        case(
            "ex-numerical-sum-over-4567",
            args(&["fibsum", "--S1", &num(&[2, 5]), "--S2", &num(&[3, 4, 5]), "--S", &num(&[4, 5, 6, 7])]),
            0,
            vec![
                ("/torsion_free", json!(true)),
                ("/tilde_minimal/gens", json!([[2], [3]])),
                ("/compare/reason", json!("EqualRanks")),
            ],
        ),
        case(
            "ex-numerical-torsion-3-10-5-6",
            args(&["fibsum", "--S1", &num(&[3, 10]), "--S2", &num(&[5, 6]), "--S", &num(&[6, 10])]),
            0,
            vec![("/torsion_invariants", json!(["2"])), ("/tilde_minimal/gens", json!([[3], [5]]))],
        ),
        case(
            "ex-rank-obstruction",
            args(&[
                "fibsum",
                "--S1",
                &sg(&[&[1, 0], &[1, 1]]),
                "--S2",
                &sg(&[&[1, 1], &[0, 1]]),
                "--S",
                &sg(&[&[1, 1]]),
            ]),
            0,
            vec![
                ("/free_rank", json!(3)),
                ("/compare/verdict", json!("NotIsomorphic")),
                ("/compare/witness/image", json!([1, 1])),
            ],
        ),
        case(
            "ex-not-positive",
            args(&[
                "fibsum",
                "--S1",
                &sg(&[&[1, -1], &[0, 1]]),
                "--S2",
                &sg(&[&[1, 1], &[0, -1]]),
                "--S",
                &sg(&[&[1, 1], &[1, -1]]),
                "--check",
                "tilde",
            ]),
            0,
            vec![("/tilde_positive", json!(false)), ("/gp_condition", json!(false))],
        ),
        case(
            "ex-degenerate-lattice-pair",
            args(&["fibsum", "--S1", &gs1, "--S2", &gs2, "--S", &sg(&[&[6, 6, 0]]), "--check", "tilde"]),
            0,
            vec![("/gp_condition", json!(true))],
        ),
        case(
            "ex-degenerate-lattice-pair-glue",
            args(&["glue", "--S1", &gs1, "--S2", &gs2, "--a", "1", "--b", "1"]),
            0,
            vec![("/verdict", json!("Yes")), ("/w", json!([6, 6, 0]))],
        ),
        case(
            "ex-normal-curves-glue",
            args(&["glue", "--S1", &nc1, "--S2", &nc2, "--a", "1", "--b", "1"]),
            0,
            vec![("/verdict", json!("Yes")), ("/w", json!([1, 1, 1])), ("/binomial", json!("X2 - Y2"))],
        ),
        case(
            "ex-normal-curves-search",
            args(&["glue", "--S1", &nc1, "--S2", &nc2, "--search", "5"]),
            0,
            vec![("/verdict", json!("Yes")), ("/a", json!(1)), ("/b", json!(1))],
        ),
        case(
            "ex-quadric-self-pair",
            args(&["glue", "--S1", &quad, "--S2", &quad, "--a", "2", "--b", "3"]),
            2,
            vec![("/verdict", json!("ImpossibleAllScales")), ("/rank", json!(2))],
        ),
        case(
            "ex-twisted-cubic-self-pair",
            args(&["glue", "--S1", &cubic, "--S2", &cubic]),
            2,
            vec![("/verdict", json!("ImpossibleAllScales"))],
        ),
        case(
            "ex-glue-numerical",
            args(&["glue", "--numerical", "--S1", &num(&[2, 3]), "--S2", &num(&[2, 5]), "--a", "3", "--b", "2"]),
            0,
            vec![("/glued/gens", json!([[4], [6], [15]])), ("/identified", json!(6))],
        ),
        case(
            "ex-flat-unique-up-to",
            args(&["flat", "--Sp", &num(&[3, 10]), "--S", &num(&[6, 10])]),
            0,
            vec![("/verdict", json!("UniqueUpTo")), ("/bound", json!(100))],
        ),
        case(
            "ex-flat-non-unique",
            args(&["flat", "--Sp", &num(&[3, 5]), "--S", &num(&[6, 10])]),
            0,
            vec![
                ("/verdict", json!("NonUnique")),
                ("/s1", json!([12])),
                ("/w1", json!([3])),
                ("/s2", json!([10])),
                ("/w2", json!([5])),
            ],
        ),
        case(
            "ex-flat-single-generator",
            args(&["flat", "--Sp", &num(&[3, 5]), "--S", &num(&[8])]),
            0,
            vec![("/verdict", json!("UniqueProven"))],
        ),
        case(
            "ex-apery-3-over-6",
            args(&["apery", "--Sp", &num(&[3]), "--S", &num(&[6])]),
            0,
            vec![("/elements", json!([[0], [3]])), ("/complete", json!(true))],
        ),
        case(
            "ex-basechange-6N",
            args(&[
                "basechange",
                "--A1",
                &algebra(json!({"dim": 1, "gens": [[3]]}), base6.clone()),
                "--A2",
                &algebra(json!({"dim": 1, "gens": [[2]]}), base6),
            ]),
            0,
            vec![("/ring_text", json!("k[w1^3, w1^2]")), ("/tensor/verdict", json!("Isomorphic"))],
        ),
        case(
            "ex-basechange-12N",
            args(&[
                "basechange",
                "--A1",
                &algebra(json!({"dim": 1, "gens": [[3]]}), base12.clone()),
                "--A2",
                &algebra(json!({"dim": 1, "gens": [[2]]}), base12),
            ]),
            0,
            vec![("/tensor/verdict", json!("NotIsomorphic")), ("/tensor/order", json!("2"))],
        ),
        case(
            "ex-basechange-half-exponents",
            args(&[
                "basechange",
                "--A1",
                &algebra(json!({"dim": 1, "gens": [["3/2"], [5]]}), base35.clone()),
                "--A2",
                &algebra(json!({"dim": 1, "gens": [[3], ["5/2"]]}), base35),
            ]),
            0,
            vec![("/tensor/verdict", json!("NotIsomorphic")), ("/flatness/verdict", json!("UniqueUpTo"))],
        ),
        case(
            "ex-basechange-folding",
            args(&[
                "basechange",
                "--A1",
                &algebra(json!({"dim": 2, "gens": [[1, 0], [1, 1]]}), base_xy.clone()),
                "--A2",
                &algebra(json!({"dim": 2, "gens": [[1, 1], [0, 1]]}), base_xy),
            ]),
            0,
            vec![("/ring/dim", json!(3)), ("/tensor/verdict", json!("Isomorphic"))],
        ),
        case(
            "ex-member-trivial",
            args(&["member", "--S", r#"{"kind":"semigroup","dim":1,"gens":[]}"#, "--x", "0"]),
            0,
            vec![("/verdict", json!("Yes")), ("/coefficients", json!([]))],
        ),
        case("ex-member-3-5", args(&["member", "--S", &num(&[3, 5]), "--x", "7"]), 0, vec![("/verdict", json!("No"))]),
        case(
            "ex-gp-cubic-cone",
            args(&["gp", "--S", &gs2, "--x", "2,1,1"]),
            0,
            vec![("/rank", json!(2)), ("/contains", json!(false))],
        ),
    ]
}

/// Cases whose id starts with `filter`, sorted by id.
pub fn cases(filter: Option<&str>) -> Vec<ExampleCase> {
    let mut cs: Vec<ExampleCase> =
        all_cases().into_iter().filter(|c| filter.is_none_or(|f| c.id.starts_with(f))).collect();
    cs.sort_by_key(|c| c.id);
    cs
}

pub fn run_case(c: &ExampleCase) -> CaseResult {
    let argv = ["affsemi", "--format", "json"].into_iter().map(String::from).chain(c.args.iter().cloned());
    let out = cli::run(argv);
    let fail = |detail: String| CaseResult { id: c.id, passed: false, detail };
    if out.code != c.code {
        return fail(format!("exit code {} (expected {}): {}", out.code, c.code, out.stderr.trim()));
    }
    let first = out.stdout.lines().next().unwrap_or("");
    let doc: Value = match serde_json::from_str(first) {
        Ok(v) => v,
        Err(e) => return fail(format!("unreadable output: {e}")),
    };
    for (pointer, expected) in &c.expect {
        match doc.pointer(pointer) {
            Some(actual) if actual == expected => {}
            actual => {
                return fail(format!(
                    "{pointer}: expected {expected}, found {}",
                    actual.map_or("nothing".into(), |v| v.to_string())
                ))
            }
        }
    }
    CaseResult { id: c.id, passed: true, detail: String::new() }
}

/// Runs the cases concurrently; results are sorted by id.
pub fn run_cases(cases: &[ExampleCase]) -> Vec<CaseResult> {
    let mut results: Vec<CaseResult> = cases.par_iter().map(run_case).collect();
    results.sort_by_key(|r| r.id);
    results
}
