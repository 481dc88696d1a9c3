//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines reach the terminal; exits non-zero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z5lab::families::{build, FamilyDescriptor};
use z5lab::group_color::{tau, triangle_consistent, ColorSystem, PhiAssignment};
use z5lab::propcheck::{
    check, check_calculus, check_corollary, check_dichotomy, check_extend_two, check_lemma, check_shift,
    check_short_cycle, check_theorem4_bound, random_near_triangulation, random_phi, theorem4_exception,
    CheckReport, LemmaId, PhiMode, RandomInstanceConfig,
};
use z5lab::solver::{
    color_short_cycle, count_colorings, lemma1_alpha, Lemma1Outcome, ShortCycleOutcome, SolverError,
};

type Outcome = Result<(), String>;

fn cfg(n_max: usize, instances: usize, samples: usize, seed: u64) -> RandomInstanceConfig {
    RandomInstanceConfig { n_max, instances, samples, seed, ..RandomInstanceConfig::default() }
}

fn passed(report: Result<CheckReport, impl std::fmt::Display>) -> Result<CheckReport, String> {
    let report = report.map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(report)
    } else {
        Err(format!("{} counterexamples, first: {}", report.counterexamples.len(), report.counterexamples[0].detail))
    }
}

/// Colourings by exhaustion over all of Z5^n, reading labels off the records.
fn naive_count(n: usize, phi: &PhiAssignment, cs: &ColorSystem) -> u64 {
    let mut count = 0;
    let mut c = vec![0u8; n];
    'all: loop {
        let lists_ok = (0..n).all(|v| match cs.precolored(v) {
            Some(p) => c[v] == p,
            None => cs.forbidden(v) & (1 << c[v]) == 0,
        });
        if lists_ok && phi.records().iter().all(|r| (c[r.head] + 5 - c[r.tail]) % 5 != r.value) {
            count += 1;
        }
        for v in 0..n {
            c[v] += 1;
            if c[v] < 5 {
                continue 'all;
            }
            c[v] = 0;
        }
        return count;
    }
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    for value in 0..5u8 {
        for (tail, head) in [(0, 1), (1, 0)] {
            let mut phi = PhiAssignment::new(5).unwrap();
            phi.insert(tail, head, value).unwrap();
            for alpha in 0..5u8 {
                let forward = tau(&phi, tail, alpha, head).unwrap();
                if forward != (alpha + value) % 5 || tau(&phi, head, forward, tail).unwrap() != alpha {
                    return Err(format!("involution fails for label {value} at {alpha}"));
                }
            }
        }
    }
    for code in 0..125u32 {
        let labels = [code % 5, code / 5 % 5, code / 25].map(|x| x as u8);
        let mut phi = PhiAssignment::new(5).unwrap();
        phi.insert(0, 1, labels[0]).unwrap();
        phi.insert(1, 2, labels[1]).unwrap();
        phi.insert(2, 0, labels[2]).unwrap();
        let around = |alpha: u8| {
            let b = tau(&phi, 0, alpha, 1).unwrap();
            let c = tau(&phi, 1, b, 2).unwrap();
            tau(&phi, 2, c, 0).unwrap() == alpha
        };
        let at_zero = around(0);
        if (0..5).any(|a| around(a) != at_zero) || at_zero != (labels.iter().map(|&x| x as u32).sum::<u32>() % 5 == 0) {
            return Err(format!("quantifier collapse fails for labels {labels:?}"));
        }
        if triangle_consistent(&phi, 0, 1, 2).unwrap() != at_zero {
            return Err(format!("triangle_consistent disagrees for labels {labels:?}"));
        }
    }
    passed(check_calculus(&cfg(8, 1, 1, 1)))?;
    if started.elapsed().as_secs_f64() >= 1.0 {
        return Err(format!("took {:?}", started.elapsed()));
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    passed(check_shift(&cfg(8, 200, 1, 2)))?;
    // the shifted count against exhaustion on a few small instances
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let n = rng.gen_range(3..=7);
        let g = random_near_triangulation(n, &mut rng);
        let phi = random_phi(&g, PhiMode::Uniform, &mut rng);
        let cs = ColorSystem::new(n, 5).unwrap();
        let v0 = rng.gen_range(0..n);
        let shifted = z5lab::group_color::shift_phi(&phi, v0, rng.gen_range(1..5));
        let (a, b) = (naive_count(n, &phi, &cs), naive_count(n, &shifted, &cs));
        if a != b || count_colorings(&g, &phi, &cs).unwrap() != a {
            return Err(format!("exhaustive counts {a} and {b} differ"));
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    passed(check_extend_two(&cfg(10, 1000, 1, 3))).map(drop)
}

fn criterion_4() -> Outcome {
    let (g, _) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    let phi = PhiAssignment::zero(&g, 5).unwrap();
    match color_short_cycle(&g, &phi, &[0, 1, 2, 3, 4]) {
        Ok(ShortCycleOutcome::HubException(5)) => {}
        other => return Err(format!("wheel with a rainbow rim gave {other:?}")),
    }
    passed(check_short_cycle(&cfg(9, 30, 50, 4))).map(drop)
}

fn criterion_5() -> Outcome {
    let report = passed(check_dichotomy(&cfg(9, 200, 20, 5)))?;
    if report.witnessed == 0 {
        return Err("no obstruction was produced, so certificates went untested".into());
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    passed(check_lemma(LemmaId::One, &cfg(10, 1000, 100, 6)))?;
    let (g, p) = build(&FamilyDescriptor::BrokenWheel(4)).unwrap();
    let phi = PhiAssignment::zero(&g, 5).unwrap();
    let cs = ColorSystem::new(4, 5).unwrap();
    if !matches!(lemma1_alpha(&g, &phi, &cs, p, true), Err(SolverError::NotMultiWheel)) {
        return Err("broken wheel was accepted as a multi-wheel".into());
    }
    let mut some_none = false;
    for f in 0..5u8 {
        let mut cs = ColorSystem::new(4, 5).unwrap();
        cs.forbid(2, &[f, (f + 1) % 5]).unwrap();
        some_none |= matches!(lemma1_alpha(&g, &phi, &cs, p, false), Ok(Lemma1Outcome::Inconsistent(_)));
    }
    if !some_none {
        return Err("broken wheel control never returned none".into());
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for id in ["lemma2", "lemma3a", "lemma3b", "cor1", "lemma4", "lemma5"] {
        passed(check(id, &cfg(12, 400, 100, 7))).map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    passed(check_corollary(&cfg(12, 100, 50, 8)))?;
    passed(check_theorem4_bound(&cfg(12, 100, 50, 8)))?;
    // the detector on a hand-built wheel over a triangle
    let (g, p) = build(&FamilyDescriptor::Wheel(3)).unwrap();
    let phi = PhiAssignment::zero(&g, 5).unwrap();
    let mut cs = ColorSystem::new(4, 5).unwrap();
    for (v, c) in p.as_array().into_iter().zip([0, 1, 2]) {
        cs.precolor(v, c).unwrap();
    }
    if theorem4_exception(&g, &phi, &cs, &p.as_array()).is_some() {
        return Err("exception reported with five available colours".into());
    }
    cs.forbid(3, &[4]).unwrap();
    if theorem4_exception(&g, &phi, &cs, &p.as_array()) != Some(3) {
        return Err("exception missed".into());
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let runs: [(&str, RandomInstanceConfig); 5] = [
        ("shift", cfg(8, 40, 1, 9)),
        ("theorem2", cfg(10, 100, 1, 9)),
        ("theorem3", cfg(9, 40, 10, 9)),
        ("lemma5", cfg(12, 60, 20, 9)),
        ("corollary2", cfg(12, 30, 10, 9)),
    ];
    for (property, c) in runs {
        let first = check(property, &c).map_err(|e| e.to_string())?;
        let again = check(property, &c).map_err(|e| e.to_string())?;
        let wide = check(property, &RandomInstanceConfig { jobs: 4, ..c.clone() }).map_err(|e| e.to_string())?;
        if first.body() != again.body() || first.body() != wide.body() {
            return Err(format!("{property} reports differ between runs"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("tau calculus", criterion_1),
        ("shift preserves counts", criterion_2),
        ("two-vertex extension", criterion_3),
        ("short outer cycles", criterion_4),
        ("three-vertex dichotomy", criterion_5),
        ("difference invariant", criterion_6),
        ("structural lemmas", criterion_7),
        ("counting bounds", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} {name}: PASS ({secs:.1}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {e}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
