//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use ampleness::bounds::{
    bound_main_ample, bound_main_gg, bound_thm_big, brotbek_surface_bound, deng_bound,
    reduction_substitute, search_min_uniform_degree, threshold_n_for_degree3, xie_bound, Track,
};
use ampleness::segre::{b_coeffs, bigness_margin, chern_series, segre_series, BValues};
use ampleness::symfunc::{verify_lemma_grid, verify_ratio_inequality, verify_ratio_monotonicity};
use ampleness::{BigInt, CiSpec, TruncatedSeries};
use ampleness_cli::{parse_csv, parse_table, OutputDocument};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ints(s: &TruncatedSeries) -> Vec<BigInt> {
    s.coeffs().to_vec()
}

fn dual(spec: &CiSpec) -> bool {
    segre_series(spec)
        .mul(&chern_series(spec).negate_variable())
        .map(|p| p.is_one())
        .unwrap_or(false)
}

fn criterion_1_duality() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=4u32 {
        for ambient in n + 1..=10 {
            for d in 2..=6u64 {
                let spec = CiSpec::uniform(n, ambient, d).unwrap();
                ensure!(dual(&spec), "duality fails at {spec:?}");
                checked += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5e9e);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6u32);
        let ambient = rng.gen_range(n + 1..=12);
        let d: Vec<u64> = (0..ambient - n).map(|_| rng.gen_range(2..=8)).collect();
        let spec = CiSpec::new(n, ambient, d).unwrap();
        ensure!(dual(&spec), "duality fails at {spec:?}");
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("{checked} specs, exact, {elapsed:.2?}"))
}

fn criterion_2_anchor() -> Outcome {
    let spec = CiSpec::new(2, 4, vec![5, 5]).unwrap();
    // s = (1 - 2H)(1 + 6H + 9H^2)(1 + 5H + 15H^2)
    //   = (1 - 2H)(1 + 11H + 54H^2) = 1 + 9H + 32H^2
    let segre = ints(&segre_series(&spec));
    ensure!(segre == [big(1), big(9), big(32)], "segre {segre:?}");
    // c = (1 + H)^5 / ((1 + 2H)(1 - 3H)^2) = (1 + 5H + 10H^2)(1 + 4H + 19H^2)
    //   = 1 + 9H + 49H^2
    let chern = ints(&chern_series(&spec));
    ensure!(chern == [big(1), big(9), big(49)], "chern {chern:?}");
    // b_0 = C(4,4); b_1 = C(5,4) + 6 C(4,4); b_2 = C(6,4) + 6 C(5,4) + 9 C(4,4)
    let b = b_coeffs(&spec);
    let expect = BValues {
        b_n_minus_2: big(1),
        b_n_minus_1: big(11),
        b_n: big(54),
    };
    ensure!(b == expect, "b {b:?}");
    // 54 - 5·11 + 6·1
    let m = bigness_margin(&spec, -1).unwrap();
    ensure!(m == big(5), "margin {m}");
    Ok("segre [1,9,32], chern [1,9,49], b (1,11,54), margin 5".into())
}

fn criterion_3_lemma() -> Outcome {
    let start = Instant::now();
    let mut tuples = 0u64;
    for r in 1..=5usize {
        for rep in verify_lemma_grid(r, None, 6).map_err(|e| e.to_string())? {
            ensure!(rep.inequality_failures == 0, "inequality failures {rep:?}");
            ensure!(
                rep.monotonicity_failures == 0,
                "monotonicity failures {rep:?}"
            );
            ensure!(
                rep.equality_exactly_at_constant,
                "equality off-diagonal {rep:?}"
            );
            tuples += rep.tuples;
        }
    }
    // same grid through the big-integer single-instance checks, r <= 4
    for r in 1..=4usize {
        let mut xs = vec![1u64; r];
        loop {
            let constant = xs.iter().all(|&x| x == xs[0]);
            for k in 1..=r {
                let rep = verify_ratio_inequality(&xs, k).unwrap();
                ensure!(rep.holds, "inequality fails at {xs:?}, k={k}");
                ensure!(
                    rep.equality == constant,
                    "equality mismatch at {xs:?}, k={k}"
                );
                for i in 0..r {
                    ensure!(
                        verify_ratio_monotonicity(&xs, k, i, 1).unwrap(),
                        "monotonicity fails at {xs:?}, k={k}, i={i}"
                    );
                }
            }
            let mut pos = 0;
            while pos < r && xs[pos] == 6 {
                xs[pos] = 1;
                pos += 1;
            }
            if pos == r {
                break;
            }
            xs[pos] += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "{tuples} (tuple, k) cases, 0 failures, {elapsed:.2?}"
    ))
}

fn criterion_4_theorem_sweep() -> Outcome {
    let mut cases = 0;
    for n in 2..=4u32 {
        for ambient in 2 * n..=20 {
            for a in -1..=2 {
                let bound = bound_thm_big(n, ambient, a);
                let d = bound.min_degree_u64().ok_or("closed form inapplicable")?;
                let spec = CiSpec::uniform(n, ambient, d).unwrap();
                let m = bigness_margin(&spec, a).unwrap();
                ensure!(m > big(0), "margin {m} at n={n} N={ambient} a={a} d={d}");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, all margins positive"))
}

fn criterion_5_substitution() -> Outcome {
    let mut cases = 0;
    for n in 2..=12i64 {
        for ambient in 3 * n - 1..=3 * n + 30 {
            for a in -1..=4i64 {
                let num = (8 * n * n - 10 * n + 3) * a + 40 * n * n - 46 * n + 13;
                let den = ambient - 3 * n + 2;
                let sub = reduction_substitute(
                    n as u32,
                    ambient as u32,
                    n as u32 - 1,
                    Track::GloballyGenerated { a },
                )
                .map_err(|e| e.to_string())?;
                ensure!(
                    sub.numerator == Some(big(num)) && sub.denominator == Some(big(den)),
                    "gg track at n={n} N={ambient} a={a}: {:?}/{:?}",
                    sub.numerator,
                    sub.denominator
                );
                let main = bound_main_gg(n as u32, ambient as u32, a);
                ensure!(
                    main.min_degree == sub.min_degree,
                    "main-gg differs at n={n} N={ambient}"
                );
                cases += 1;
            }
        }
        for ambient in 3 * n - 2..=3 * n + 30 {
            let num = (2 * n - 2) * (24 * n - 28);
            let den = ambient - 3 * n + 3;
            let sub = reduction_substitute(n as u32, ambient as u32, n as u32 - 2, Track::Ample)
                .map_err(|e| e.to_string())?;
            ensure!(
                sub.numerator == Some(big(num)) && sub.denominator == Some(big(den)),
                "ample track at n={n} N={ambient}"
            );
            let main = bound_main_ample(n as u32, ambient as u32);
            ensure!(
                main.min_degree == sub.min_degree,
                "main-ample differs at n={n} N={ambient}"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} substitutions match"))
}

fn criterion_6_threshold() -> Outcome {
    for n in 2..=25u32 {
        let t = threshold_n_for_degree3(n).map_err(|e| e.to_string())?;
        let ni = n as u64;
        ensure!(
            t == 48 * ni * ni + 53 - 101 * ni,
            "threshold formula at n={n}"
        );
        let b = bound_main_ample(n, t as u32);
        ensure!(
            b.min_degree.as_ref().is_some_and(|d| *d <= big(3)),
            "bound {:?} at n={n}",
            b.min_degree
        );
    }
    Ok("n = 2..25, bound <= 3 at threshold".into())
}

fn criterion_7_prior() -> Outcome {
    let deng = deng_bound(5, 3);
    ensure!(deng.to_string() == "1440000000000000000", "deng {deng}");
    let xie = xie_bound(3);
    ensure!(xie == big(19683), "xie {xie}");
    let surf = brotbek_surface_bound(10);
    ensure!(surf == Some(big(12)), "surface {surf:?}");
    Ok("deng 1440000000000000000, xie 19683, surface 12".into())
}

fn criterion_8_sharpening() -> Outcome {
    let mut instances = 0;
    for n in 1..=4u32 {
        for ambient in 2 * n..=20 {
            for a in -1..=2 {
                let s = search_min_uniform_degree(n, ambient, a).map_err(|e| e.to_string())?;
                ensure!(
                    s.d_min <= s.closed_form,
                    "d_min > closed form at n={n} N={ambient} a={a}"
                );
                instances += 1;
            }
        }
    }
    let s = search_min_uniform_degree(2, 4, -1).unwrap();
    ensure!(
        s.d_min <= 5 && s.closed_form == 12 && s.d_min < s.closed_form,
        "{s:?}"
    );
    Ok(format!(
        "{instances} instances; (2,4,-1): d_min {} < {}",
        s.d_min, s.closed_form
    ))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ampleness"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Runs `args` in all three formats, checks the exit code and that the
/// renderings carry the same rows. Returns the JSON document.
fn cli_doc(args: &[&str], expect_code: i32) -> Result<OutputDocument, String> {
    let with = |fmt: &str| {
        let mut v = args.to_vec();
        v.extend(["--format", fmt]);
        let run = cli(&v);
        if run.code != expect_code {
            return Err(format!(
                "{v:?}: exit {} (wanted {expect_code}); {}",
                run.code, run.stderr
            ));
        }
        Ok(run.stdout)
    };
    let json = with("json")?;
    let csv = with("csv")?;
    let table = with("table")?;
    let doc: OutputDocument = serde_json::from_str(&json).map_err(|e| format!("{args:?}: {e}"))?;
    let reparsed: OutputDocument =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    ensure!(reparsed == doc, "{args:?}: JSON round trip differs");
    ensure!(
        doc.exit_hint == expect_code,
        "{args:?}: exit_hint {}",
        doc.exit_hint
    );
    let rows = parse_csv(&csv).map_err(|e| e.to_string())?;
    ensure!(
        rows == doc.results,
        "{args:?}: CSV content differs from JSON"
    );
    let rows = parse_table(&table).ok_or("table did not parse")?;
    ensure!(
        rows == doc.results,
        "{args:?}: table content differs from JSON"
    );
    Ok(doc)
}

fn expect_invalid(args: &[&str]) -> Result<(), String> {
    let run = cli(args);
    ensure!(run.code == 2, "{args:?}: exit {} (wanted 2)", run.code);
    ensure!(!run.stderr.contains("panicked"), "{args:?}: panicked");
    Ok(())
}

fn field<'a>(doc: &'a OutputDocument, row: usize, key: &str) -> Result<&'a str, String> {
    doc.results
        .get(row)
        .and_then(|r| r.get(key))
        .map(String::as_str)
        .ok_or_else(|| format!("{}: missing {key} in row {row}", doc.command))
}

fn criterion_9_cli() -> Outcome {
    // check
    let doc = cli_doc(
        &["check", "--n", "2", "--N", "4", "--d", "5,5", "--a", "-1"],
        0,
    )?;
    ensure!(
        field(&doc, 0, "margin")? == "5" && field(&doc, 0, "verdict")? == "PASS",
        "check PASS"
    );
    let doc = cli_doc(
        &["check", "--n", "2", "--N", "4", "--d", "2,2", "--a", "-1"],
        1,
    )?;
    ensure!(
        field(&doc, 0, "margin")? == "-4" && field(&doc, 0, "verdict")? == "FAIL",
        "check FAIL"
    );
    let doc = cli_doc(
        &[
            "check",
            "--n",
            "2",
            "--N",
            "5",
            "--d-uniform",
            "22",
            "--a",
            "1",
        ],
        0,
    )?;
    ensure!(doc.params["d"] == "22,22,22", "d-uniform expansion");
    expect_invalid(&["check", "--n", "2", "--N", "4", "--d", "5", "--a", "-1"])?;
    expect_invalid(&["check", "--n", "2", "--N", "4", "--d", "5,x"])?;
    expect_invalid(&["check", "--n", "2", "--N", "4", "--d", "5,5", "--a", "-2"])?;

    // bound
    let doc = cli_doc(
        &["bound", "--n", "2", "--N", "43", "--formula", "main-ample"],
        0,
    )?;
    ensure!(field(&doc, 0, "min_degree")? == "3", "main-ample at (2,43)");
    let doc = cli_doc(&["bound", "--n", "2", "--formula", "threshold-N"], 0)?;
    ensure!(field(&doc, 0, "threshold_N")? == "43", "threshold-N at n=2");
    let doc = cli_doc(
        &[
            "bound",
            "--n",
            "1",
            "--N",
            "3",
            "--formula",
            "curve",
            "--d",
            "2,2",
        ],
        0,
    )?;
    ensure!(
        field(&doc, 0, "holds")? == "true" && field(&doc, 1, "holds")? == "false",
        "curve (2,2)"
    );
    let doc = cli_doc(
        &["bound", "--n", "1", "--N", "5", "--formula", "main-ample"],
        0,
    )?;
    ensure!(
        field(&doc, 0, "applicable")? == "false",
        "main-ample inapplicable in-band for n=1"
    );
    cli_doc(&["bound", "--sweep", "2-3:6-9", "--formula", "all"], 0)?;
    expect_invalid(&["bound", "--n", "2", "--formula", "main-ample"])?;
    expect_invalid(&["bound", "--n", "2", "--N", "5", "--formula", "bogus"])?;

    // search
    let doc = cli_doc(&["search", "--n", "2", "--N", "4", "--a", "-1"], 0)?;
    let d_min: u64 = field(&doc, 0, "d_min")?.parse().map_err(|_| "d_min")?;
    ensure!(
        d_min <= 5 && field(&doc, 0, "closed_form")? == "12",
        "search (2,4)"
    );
    let doc = cli_doc(&["search", "--n", "2", "--N", "20", "--a", "-1"], 0)?;
    let d_min: u64 = field(&doc, 0, "d_min")?.parse().map_err(|_| "d_min")?;
    ensure!(d_min <= 3, "search (2,20)");
    cli_doc(&["search", "--sweep", "1-3:2-9"], 0)?;
    expect_invalid(&["search", "--n", "3", "--N", "4", "--a", "0"])?;

    // compare
    let doc = cli_doc(
        &[
            "compare", "--n", "2", "--Nmin", "5", "--Nmax", "5", "--exact",
        ],
        0,
    )?;
    ensure!(
        field(&doc, 0, "deng")? == "1440000000000000000",
        "deng exact"
    );
    ensure!(field(&doc, 0, "deng_digits")? == "19", "deng digits");
    let doc = cli_doc(&["compare", "--n", "2", "--Nmin", "43", "--Nmax", "43"], 0)?;
    ensure!(field(&doc, 0, "this_paper")? == "3", "this paper at (2,43)");
    let doc = cli_doc(&["compare", "--n", "2", "--Nmin", "10", "--Nmax", "10"], 0)?;
    ensure!(
        field(&doc, 0, "brotbek_surface")? == "12",
        "surface at N=10"
    );
    let doc = cli_doc(
        &[
            "compare", "--n", "2", "--Nmin", "50", "--Nmax", "50", "--exact",
        ],
        0,
    )?;
    let xie: BigInt = field(&doc, 0, "xie")?.parse().map_err(|_| "xie parse")?;
    ensure!(xie == xie_bound(50), "xie decimal-string fidelity");
    expect_invalid(&["compare", "--n", "2", "--Nmin", "10", "--Nmax", "5"])?;

    // verify-lemma
    let doc = cli_doc(&["verify-lemma", "--r", "4", "--grid", "4"], 0)?;
    ensure!(doc.results.len() == 4, "verify-lemma rows");
    for i in 0..4 {
        ensure!(field(&doc, i, "tuples")? == "256", "tuples");
        ensure!(field(&doc, i, "inequality_failures")? == "0", "failures");
    }
    let doc = cli_doc(&["verify-lemma", "--r", "2", "--k", "2", "--grid", "3"], 0)?;
    ensure!(
        field(&doc, 0, "equality_tuples")? == "3"
            && field(&doc, 0, "equality_only_all_equal")? == "true",
        "equality exactly on (x,x)"
    );
    expect_invalid(&["verify-lemma", "--r", "7", "--grid", "8"])?;

    Ok("5 subcommands, exit codes and format cross-parsing hold".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 segre-chern duality", criterion_1_duality),
        ("2 anchor case (2,4,(5,5))", criterion_2_anchor),
        ("3 lemma grid", criterion_3_lemma),
        ("4 closed form passes margin", criterion_4_theorem_sweep),
        ("5 substitution identity", criterion_5_substitution),
        ("6 degree-3 threshold", criterion_6_threshold),
        ("7 prior-bound exactness", criterion_7_prior),
        ("8 search sharpening", criterion_8_sharpening),
        ("9 cli contract", criterion_9_cli),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
