//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use glaisher::digit_matrix::d_adic_split;
use glaisher::verify::{inadmissible_k4_fixture, CHECK_NAMES};
use glaisher::*;
use num_bigint::BigUint;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> std::result::Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_s), || {
        format!("took {:.2}s, limit {limit_s}s", elapsed.as_secs_f64())
    })
}

// 1. a(n) = b(n) for d in {2,3,4,5}, n <= 40, under 5 s.
fn glaisher_identity() -> Outcome {
    let start = Instant::now();
    for d in 2..=5 {
        for n in 0..=40 {
            let a = count_nondivisible(n, d).map_err(|e| e.to_string())?;
            let b = count_regular(n, d).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("n={n} d={d}: a={a} b={b}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 5)?;
    Ok(format!("164 (n, d) pairs, {:.3}s", elapsed.as_secs_f64()))
}

// 2. DP counts equal enumeration-filter counts for d in {2,3}, n <= 30, under 60 s.
fn dual_oracle_counts() -> Outcome {
    let start = Instant::now();
    for d in [2u64, 3] {
        for n in 0..=30 {
            let (mut total, mut nondiv, mut regular) = (0usize, 0usize, 0usize);
            for p in enumerate_partitions(n) {
                total += 1;
                nondiv += p.is_d_nondivisible(d).unwrap() as usize;
                regular += p.is_d_regular(d).unwrap() as usize;
            }
            let row = CountRow::new(n, d).map_err(|e| e.to_string())?;
            let enumerated = [nondiv, regular, total - nondiv, total - regular].map(BigUint::from);
            let dp = [row.a_n, row.b_n, row.card_a, row.card_b];
            ensure(dp == enumerated, || {
                format!("n={n} d={d}: dp {dp:?} vs enumeration {enumerated:?}")
            })?;
            ensure(row.p_n == BigUint::from(total), || {
                format!("n={n}: p mismatch")
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("62 (n, d) pairs, {:.3}s", elapsed.as_secs_f64()))
}

// 3. Six checks pass for d in {2,3}, n <= 25, five schemes, under 120 s.
fn bijection_family() -> Outcome {
    let schemes = [
        PermutationScheme::Swap,
        PermutationScheme::Rotate,
        PermutationScheme::Seeded(1),
        PermutationScheme::Seeded(42),
        PermutationScheme::Seeded(7),
    ];
    let start = Instant::now();
    let mut runs = 0;
    for d in [2u64, 3] {
        for s in schemes {
            for n in 0..=25 {
                let r = verify_bijection(n, d, &s).map_err(|e| e.to_string())?;
                let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
                ensure(names == CHECK_NAMES, || {
                    format!("unexpected checks {names:?}")
                })?;
                ensure(r.all_passed(), || r.render_text())?;
                ensure(r.card_a == r.card_b, || {
                    format!("n={n} d={d} {s}: |A| != |B|")
                })?;
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!(
        "{runs} reports x 6 checks, {:.3}s",
        elapsed.as_secs_f64()
    ))
}

// 4. split_map and merge_map are mutually inverse, n <= 30, d in {2,3,5}.
fn glaisher_inverse_pair() -> Outcome {
    let mut regular = 0usize;
    let mut nondivisible = 0usize;
    for d in [2u64, 3, 5] {
        for n in 0..=30 {
            for p in enumerate_partitions(n) {
                if p.is_d_regular(d).unwrap() {
                    let back = merge_map(&split_map(&p, d).unwrap(), d).unwrap();
                    ensure(back == p, || format!("d={d}: merge(split({p})) = {back}"))?;
                    regular += 1;
                }
                if p.is_d_nondivisible(d).unwrap() {
                    let back = split_map(&merge_map(&p, d).unwrap(), d).unwrap();
                    ensure(back == p, || format!("d={d}: split(merge({p})) = {back}"))?;
                    nondivisible += 1;
                }
            }
        }
    }
    Ok(format!(
        "{regular} regular and {nondivisible} nondivisible partitions"
    ))
}

// 5. decode(encode(p)) = p and family weight = weight, n <= 30, d in {2,3,5}.
fn codec_round_trip() -> Outcome {
    let mut checked = 0usize;
    for d in [2u64, 3, 5] {
        for n in 0..=30 {
            for p in enumerate_partitions(n) {
                let f = encode(&p, d).unwrap();
                ensure(decode(&f) == p, || format!("d={d}: round trip of {p}"))?;
                ensure(f.weight() == n, || {
                    format!("d={d}: family weight of {p} is {}", f.weight())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} partitions"))
}

// 6. The inadmissible D(4) fixture sends 2+2 to 4 (d = 2), and the
// harness reports exactly that B-membership counterexample.
fn constraint_necessity() -> Outcome {
    let fixture = inadmissible_k4_fixture();
    ensure(!fixture.patch.is_admissible(), || {
        "fixture is admissible".into()
    })?;
    let two_two: Partition = "2+2".parse().unwrap();
    let four: Partition = "4".parse().unwrap();
    let image = apply_forward(&two_two, 2, &fixture).unwrap();
    ensure(image == four, || format!("2+2 maps to {image}"))?;
    let report = verify_bijection(4, 2, &fixture).unwrap();
    let check = report.check("a_onto_b").ok_or("missing a_onto_b check")?;
    ensure(!check.passed, || "a_onto_b passed".into())?;
    let ce = check.counterexample.as_ref().ok_or("no counterexample")?;
    ensure(ce.input == two_two && ce.image == four, || {
        format!("counterexample {} -> {}", ce.input, ce.image)
    })?;
    Ok(format!("flagged {} -> {}", ce.input, ce.image))
}

// Hand trace for a single-part partition: the part m = x*d^e with
// multiplicity c < d is one digit c at (1, e+1); move it to `target` and
// read the part x*d^(target.j-1) with multiplicity c*d^(target.i-1).
fn hand_trace(part: u64, d: u64, target: impl Fn(u32, u32) -> (u32, u32)) -> Partition {
    let (x, e) = d_adic_split(part, d);
    let (i, j) = target(1, e + 1);
    let new_part = x * d.pow(j - 1);
    let count = d.pow(i - 1);
    Partition::from_multiplicities([(new_part, count)]).unwrap()
}

// 7. Pinned values, each checked against a hand trace.
fn pinned_values() -> Outcome {
    // Swap on D(3): (1,2) -> (2,1).
    let swap = |i: u32, j: u32| (j, i);
    // Rotate on D(4): (1,3) -> (2,2).
    let rotate_k4 = |i: u32, j: u32| {
        assert_eq!((i, j), (1, 3));
        (2, 2)
    };
    let cases: [(&str, u64, PermutationScheme, &str, Partition); 3] = [
        (
            "2",
            2,
            PermutationScheme::Swap,
            "1+1",
            hand_trace(2, 2, swap),
        ),
        (
            "4",
            2,
            PermutationScheme::Rotate,
            "2+2",
            hand_trace(4, 2, rotate_k4),
        ),
        (
            "3",
            3,
            PermutationScheme::Swap,
            "1+1+1",
            hand_trace(3, 3, swap),
        ),
    ];
    for (input, d, scheme, frozen, traced) in cases {
        let expected: Partition = frozen.parse().unwrap();
        ensure(traced == expected, || {
            format!("hand trace of {input} gives {traced}, frozen {frozen}")
        })?;
        let got = apply_forward(&input.parse().unwrap(), d, &scheme).unwrap();
        ensure(got == expected, || {
            format!("apply_forward({input}, {d}, {scheme}) = {got}")
        })?;
    }
    Ok("2 -> 1+1 (swap), 4 -> 2+2 (rotate), 3 -> 1+1+1 (swap, d=3)".into())
}

// 8. `verify --d 2 --scheme seeded:42 --n-max 20` twice gives identical JSON.
fn deterministic_reports() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_glaisher"))
            .args([
                "verify",
                "--d",
                "2",
                "--scheme",
                "seeded:42",
                "--n-max",
                "20",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.status.success(), || {
        format!("exit status {}", first.status)
    })?;
    ensure(!first.stdout.is_empty(), || "empty report".into())?;
    ensure(first.stdout == second.stdout, || "reports differ".into())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 glaisher identity a(n)=b(n), d<=5, n<=40",
            glaisher_identity,
        ),
        (
            "2 dual-oracle counts, d in {2,3}, n<=30",
            dual_oracle_counts,
        ),
        ("3 bijection family certification, n<=25", bijection_family),
        ("4 split/merge inverse pair, n<=30", glaisher_inverse_pair),
        ("5 codec round trip and weight, n<=30", codec_round_trip),
        (
            "6 constraint necessity counterexample",
            constraint_necessity,
        ),
        ("7 pinned forward values", pinned_values),
        ("8 deterministic verify JSON", deterministic_reports),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(summary) => println!("PASS  {name}: {summary}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
