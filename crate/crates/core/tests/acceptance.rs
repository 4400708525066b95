//! End-to-end acceptance checks, one line per criterion.
//! Runs without the libtest harness; exits non-zero if any criterion fails.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use translab::bits::BitString;
use translab::busy_beaver::{search_full, verify};
use translab::coefficient::{least_squares_slope, DEFAULT_N, DEFAULT_SCHEDULE};
use translab::compressor::{compress, compressed_length, decompress};
use translab::eca::{evolve, EcaRule};
use translab::enumeration::enumerate;
use translab::experiments::{classify_all, conjecture3_report, ordinal_claims, CoefficientParams};
use translab::turing::{run, Execution, Step, TapeState, TuringMachine};

use common::{dense_eca, dense_tm, exact_slope, random_machine};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn translab(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_translab"))
        .args(args)
        .env_remove("TL_THREADS")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).trim().to_string());
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn busy_beaver_exactness() -> Outcome {
    let mut parts = Vec::new();
    for (states, want, budget) in [
        (1u8, (1, 1), Duration::from_secs(10)),
        (2, (4, 6), Duration::from_secs(10)),
        (3, (6, 21), Duration::from_secs(30 * 60)),
    ] {
        let started = Instant::now();
        let out = translab(&["bb", "search", "--states", &states.to_string()])?;
        let elapsed = started.elapsed();
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let got = (v["sigma"].as_u64().unwrap(), v["shift"].as_u64().unwrap());
        let undecided = v["undecided_count"].as_u64().unwrap();
        check(
            got == want,
            format!("n={states}: (sigma, shift) = {got:?}, want {want:?}"),
        )?;
        check(undecided == 0, format!("n={states}: {undecided} undecided"))?;
        check(elapsed < budget, format!("n={states}: took {elapsed:.2?}"))?;
        parts.push(format!("n={states} {got:?} in {elapsed:.2?}"));
    }
    for states in 1..=2 {
        let full = search_full(states, 100);
        check(
            full.undecided_count == 0,
            "full space left machines undecided",
        )?;
        let want = [(1, 1), (4, 6)][states as usize - 1];
        check(
            (full.sigma, full.shift) == want,
            format!("full space n={states} disagrees"),
        )?;
    }
    Ok(format!(
        "{}; full-space cross-check n<=2 agrees",
        parts.join(", ")
    ))
}

fn champion_verification() -> Outcome {
    let m: TuringMachine =
        "A0 -> 1RB\nA1 -> 1LB\nB0 -> 1LA\nB1 -> 0LC\nC0 -> 1RH\nC1 -> 1LD\nD0 -> 1RD\nD1 -> 0RA\n"
            .parse()
            .map_err(|e| format!("{e}"))?;
    let started = Instant::now();
    let ok = verify(&m, 13, 107);
    let elapsed = started.elapsed();
    check(ok, "verify(13, 107) returned false")?;
    check(
        !verify(&m, 13, 106) && !verify(&m, 12, 107),
        "verify accepted wrong counts",
    )?;
    check(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:.2?}"),
    )?;
    Ok(format!(
        "{} halts with 13 ones in 107 steps ({elapsed:.2?})",
        m.compact()
    ))
}

fn ordinal_classification() -> Outcome {
    let started = Instant::now();
    let report = classify_all(DEFAULT_N, &DEFAULT_SCHEDULE).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let claims = ordinal_claims(&report);
    let labels = ["a", "b", "c", "d", "e"];
    let summary: Vec<String> = claims
        .iter()
        .zip(labels)
        .map(|(c, l)| {
            format!(
                "({l}) {} [{}]",
                if c.holds { "ok" } else { "FAIL" },
                c.detail
            )
        })
        .collect();
    let summary = format!("{}; {elapsed:.1?}", summary.join(" "));
    check(
        elapsed < Duration::from_secs(600),
        format!("took {elapsed:.2?}"),
    )?;
    if claims.iter().all(|c| c.holds) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..20 {
        let rule: u8 = rng.gen();
        let init: Vec<u8> = (0..rng.gen_range(1..=10))
            .map(|_| rng.gen_range(0..2))
            .collect();
        let steps = rng.gen_range(0..=64);
        let d = evolve(
            EcaRule::new(rule),
            &BitString::from_cells(init.clone()),
            steps,
        );
        check(
            d.rows() == dense_eca(rule, &init, steps),
            format!("ECA case {case}: rule {rule}"),
        )?;
    }
    for case in 0..20 {
        let states = rng.gen_range(1..=4);
        let m = random_machine(&mut rng, states);
        let limit = rng.gen_range(1..=500);
        let dense = dense_tm(&m, limit);
        let r = run(&m, TapeState::blank(), limit);
        let mut exec = Execution::new(TapeState::blank());
        while exec.steps < limit && exec.step(&m) == Step::Continue {}
        let same = (r.halted, r.steps, r.ones, r.visited_extent)
            == (dense.halted, dense.steps, dense.ones, dense.extent)
            && exec.visited_content().unwrap() == dense.content;
        check(same, format!("TM case {case}: {}", m.compact()))?;
    }
    Ok("20 ECA and 20 TM cases identical to dense simulation".into())
}

fn compressor_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..10_000 {
        let len = rng.gen_range(0..256);
        let data: Vec<u8> = match i % 4 {
            0 => (0..len).map(|_| rng.gen()).collect(),
            1 => b"0110".iter().cycle().take(len).copied().collect(),
            2 => vec![b'7'; len],
            _ => {
                let w: Vec<u8> = (0..rng.gen_range(1..5))
                    .map(|_| rng.gen_range(b'a'..b'd'))
                    .collect();
                let mut s = Vec::new();
                let mut cur = w.clone();
                while s.len() < len {
                    s.extend_from_slice(&cur);
                    cur = [&cur[..], &w[..], &cur[..]].concat();
                }
                s.truncate(len);
                s
            }
        };
        let back = decompress(&compress(&data)).map_err(|e| e.to_string())?;
        check(back == data, format!("roundtrip failed on input {i}"))?;
    }
    let args = [
        "coefficient",
        "--system",
        "eca:30",
        "--n",
        "12",
        "--schedule",
        "20,40",
    ];
    let a = translab(&args)?;
    let b = translab(&args)?;
    check(a == b, "two processes disagree")?;
    let ratios: Vec<f64> = [1_000usize, 10_000, 100_000]
        .iter()
        .map(|&n| compressed_length(&vec![b'0'; n]) as f64 / n as f64)
        .collect();
    check(
        ratios[0] > ratios[1] && ratios[1] > ratios[2],
        format!("unary ratios {ratios:?}"),
    )?;
    Ok(format!(
        "10^4 roundtrips, cross-process identical, unary bits/byte {ratios:.4?}"
    ))
}

fn slope_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = rng.gen_range(2..=10);
        let mut pts: Vec<(i64, i64)> = (0..m)
            .map(|_| (rng.gen_range(0..500), rng.gen_range(-100_000..100_000)))
            .collect();
        if pts.iter().all(|p| p.0 == pts[0].0) {
            pts[1].0 += 1;
        }
        let f: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
        let got = least_squares_slope(&f).map_err(|e| e.to_string())?;
        let want = exact_slope(&pts);
        let err = if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        };
        worst = worst.max(err);
    }
    check(worst <= 1e-12, format!("relative error {worst:e}"))?;
    let line = least_squares_slope(&[(1.0, 2.0), (2.0, 4.0), (3.0, 6.0), (4.0, 8.0)]);
    let flat = least_squares_slope(&[(1.0, 5.0), (2.0, 5.0), (3.0, 5.0)]);
    check(
        line == Ok(2.0) && flat == Ok(0.0),
        format!("line {line:?}, constant {flat:?}"),
    )?;
    Ok(format!(
        "worst relative error {worst:.1e}; line 2, constant 0"
    ))
}

fn gray_enumeration() -> Outcome {
    let first: Vec<String> = enumerate(14).iter().map(ToString::to_string).collect();
    let want = [
        "0", "1", "00", "01", "11", "10", "000", "001", "011", "010", "110", "111", "101", "100",
    ];
    check(first == want, format!("got {first:?}"))?;
    let all = enumerate((1 << 13) - 2);
    let mut pairs = 0;
    for w in all.windows(2) {
        if w[0].len() == w[1].len() {
            check(
                w[0].hamming(&w[1]) == Some(1),
                format!("{} -> {}", w[0], w[1]),
            )?;
            pairs += 1;
        }
    }
    Ok(format!(
        "first 14 in order; {pairs} neighbour pairs up to length 12 at distance 1"
    ))
}

fn conjecture3_pipeline() -> Outcome {
    let started = Instant::now();
    let params = CoefficientParams::default();
    let a = conjecture3_report(2, &params).map_err(|e| e.to_string())?;
    let b = conjecture3_report(2, &params).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let (ja, jb) = (
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap(),
    );
    check(ja == jb && a.to_string() == b.to_string(), "reruns differ")?;
    check(
        elapsed < Duration::from_secs(300),
        format!("took {elapsed:.2?}"),
    )?;
    check(
        a.rows.iter().any(|r| r.states == 1) && a.rows.iter().any(|r| r.states == 2),
        "missing rows",
    )?;
    let rows: Vec<String> = a
        .rows
        .iter()
        .map(|r| {
            format!(
                "{} {:?} {:+.3e}",
                r.machine.compact(),
                r.sign,
                r.coefficient
            )
        })
        .collect();
    Ok(format!("{} ({elapsed:.1?})", rows.join(", ")))
}

fn thread_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut digests = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(threads);
        let c = out.join("classify");
        let j = out.join("conjecture3");
        translab(&[
            "classify",
            "--out",
            c.to_str().unwrap(),
            "--threads",
            threads,
        ])?;
        translab(&[
            "conjecture3",
            "--max-states",
            "2",
            "--out",
            j.to_str().unwrap(),
            "--threads",
            threads,
        ])?;
        let mut files = Vec::new();
        for f in [
            c.join("ranking.csv"),
            c.join("classification.json"),
            c.join("conjecture1.txt"),
            j.join("conjecture3.json"),
            j.join("conjecture3.txt"),
        ] {
            files.push(fs::read(&f).map_err(|e| format!("{}: {e}", f.display()))?);
        }
        digests.push(files);
    }
    check(
        digests[0] == digests[1],
        "outputs differ between 1 and 4 threads",
    )?;
    Ok("classification and conjecture 3 outputs byte-identical at 1 and 4 threads".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("busy beaver exactness", busy_beaver_exactness),
        ("4-state champion verification", champion_verification),
        ("ordinal classification claims", ordinal_classification),
        ("oracle equivalence", oracle_equivalence),
        ("compressor properties", compressor_properties),
        ("slope correctness", slope_correctness),
        ("gray enumeration", gray_enumeration),
        ("conjecture 3 pipeline", conjecture3_pipeline),
        ("determinism under parallelism", thread_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
