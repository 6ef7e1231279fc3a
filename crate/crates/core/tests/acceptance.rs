//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All tolerances and budgets are pinned
//! here.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use monoideal_core::decomposition::{adeg_profile, associated_primes};
use monoideal_core::homology::{betti_numbers, regularity};
use monoideal_core::newton::{bezout_check, integral_closure, rees_valuations};
use monoideal_core::nilpotency::nilpotency_index;
use monoideal_core::sinvariant::{curve_lower_bound, d_sequence, s_bracket, SBracket};
use monoideal_core::surface::{
    is_perfect_square, rescale_check, s_invariant_divisorial, DivisorClass, NSLattice, QuadraticIrrational,
};
use monoideal_core::{Limits, MonomialIdeal, Rational};

const QUADRIC_BUDGET: Duration = Duration::from_secs(1);
const PATHOLOGY_BUDGET: Duration = Duration::from_secs(30);
const CONVERGENCE_BUDGET: Duration = Duration::from_secs(300);
const SURFACE_BUDGET: Duration = Duration::from_secs(1);
const CONVERGENCE_GAP: (i64, i64) = (1, 2);
const ADEG_SLACK: (i64, i64) = (105, 100);
const BRACKET_TOLERANCE: (i64, i64) = (1, 100);
const SUITE_PMAX: u32 = 3;

/// Powers of suite ideals exceed the default generator cap.
fn suite_limits() -> Limits {
    Limits { max_generators: 512, ..Limits::default() }
}

fn tolerance() -> Rational {
    q(BRACKET_TOLERANCE.0, BRACKET_TOLERANCE.1)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn within(elapsed: Duration, budget: Duration) -> bool {
    elapsed <= budget
}

fn quadric_bracket() -> Outcome {
    let start = Instant::now();
    let quad = ideal(&ring(3), &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
    let b = s_bracket(&quad, 2, tolerance(), &Limits::default()).unwrap();
    let elapsed = start.elapsed();
    let exact = b.lower == q(2, 1) && b.upper == q(2, 1);
    outcome(
        exact && within(elapsed, QUADRIC_BUDGET),
        format!("bracket [{}, {}] in {:.3}s", b.lower, b.upper, elapsed.as_secs_f64()),
    )
}

fn pathology_family() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let mut failures = Vec::new();
    for d in 1..=6u32 {
        let j = pathology(d);
        let lower = curve_lower_bound(&j, None).unwrap().bound;
        if lower != q(2, 1) {
            failures.push(format!("d={d}: curve bound {lower}"));
        }
        let adeg3 = adeg_profile(&j).unwrap().get(3);
        if adeg3 != u64::from(d) {
            failures.push(format!("d={d}: adeg3 = {adeg3}"));
        }
        let rep = regularity(&j, &lim).unwrap();
        if rep.regularity != i64::from(d) + 2 {
            failures.push(format!("d={d}: reg = {}", rep.regularity));
        }
        if d <= 4 {
            let oracle = taylor_betti(&rep.saturated_input);
            let oracle_reg = oracle.keys().map(|(i, b)| b.iter().sum::<u32>() as i64 - *i as i64).max().unwrap();
            let ours: BTreeMap<(usize, Vec<u32>), u64> =
                rep.betti.entries().map(|(i, b, r)| ((i, b.exponents().to_vec()), r)).collect();
            if oracle != ours || oracle_reg != rep.regularity {
                failures.push(format!("d={d}: Taylor oracle disagrees"));
            }
        }
        let nilp = nilpotency_index(&j, 1, &lim).unwrap().index;
        if nilp != 3 {
            failures.push(format!("d={d}: nilp = {nilp}"));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && within(elapsed, PATHOLOGY_BUDGET);
    let detail = if failures.is_empty() {
        format!("d=1..6: s-lower 2, adeg3 = d, reg = d+2, nilp 3 in {:.2}s", elapsed.as_secs_f64())
    } else {
        failures.join("; ")
    };
    outcome(ok, detail)
}

fn asymptotic_convergence() -> Outcome {
    let start = Instant::now();
    let j = pathology(2);
    let seq = d_sequence(&j, 6, &Limits::default(), &BTreeMap::new()).unwrap();
    let ratios: Vec<Rational> = seq.ratios().into_iter().map(|(_, r)| r).collect();
    let nonincreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
    let last = *ratios.last().unwrap();
    let close = last - q(2, 1) <= q(CONVERGENCE_GAP.0, CONVERGENCE_GAP.1);
    let mut subadditive = true;
    for l in 1..=6u32 {
        for m in l..=6 - l {
            let e = |p: u32| seq.get(p).unwrap().d;
            subadditive &= e(l + m) <= e(l) + e(m);
        }
    }
    let elapsed = start.elapsed();
    let shown: Vec<String> = ratios.iter().map(|r| r.to_string()).collect();
    outcome(
        nonincreasing && close && subadditive && within(elapsed, CONVERGENCE_BUDGET),
        format!("d_p/p = [{}], subadditive {subadditive}, in {:.2}s", shown.join(", "), elapsed.as_secs_f64()),
    )
}

fn nullstellensatz_inclusions() -> Outcome {
    let lim = suite_limits();
    let mut failures = Vec::new();
    for (k, i) in suite().iter().enumerate() {
        let rep = nilpotency_index(i, 3, &lim).unwrap();
        if !rep.increasing_verified() {
            failures.push(format!("#{k} {}: inclusion fails", i.display()));
        }
        if !rep.within_bound {
            failures.push(format!("#{k} {}: nilp {} > n*r", i.display(), rep.index));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { format!("{SUITE_SIZE} ideals, p = 1..3, zero failures") } else { failures.join("; ") },
    )
}

fn suite_brackets() -> &'static Vec<(MonomialIdeal, SBracket, SBracket)> {
    static BRACKETS: OnceLock<Vec<(MonomialIdeal, SBracket, SBracket)>> = OnceLock::new();
    BRACKETS.get_or_init(|| {
        suite()
            .into_iter()
            .map(|i| {
                let b = s_bracket(&i, SUITE_PMAX, tolerance(), &suite_limits()).unwrap();
                let closure = integral_closure(&i).unwrap();
                let c = s_bracket(&closure, SUITE_PMAX, tolerance(), &suite_limits()).unwrap();
                (i, b, c)
            })
            .collect()
    })
}

fn bezout_bound() -> Outcome {
    let mut cases: Vec<(String, MonomialIdeal, Rational)> =
        suite_brackets().iter().enumerate().map(|(k, (i, b, _))| (format!("#{k}"), i.clone(), b.upper)).collect();
    for (name, i) in bundled_examples() {
        let b = s_bracket(&i, SUITE_PMAX, tolerance(), &suite_limits()).unwrap();
        cases.push((name.to_string(), i, b.upper));
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, i, upper) in &cases {
        if *upper < q(1, 1) {
            continue;
        }
        checked += 1;
        let rep = bezout_check(i, *upper).unwrap();
        if !rep.satisfied || !rep.corollary_satisfied {
            failures.push(format!("{name} {}: lhs {} rhs {} r {}", i.display(), rep.lhs, rep.rhs, rep.r_sheaf));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { format!("{checked} ideals, zero failures") } else { failures.join("; ") },
    )
}

fn closed_primes_are_centers() -> Outcome {
    let mut failures = Vec::new();
    for (k, i) in suite().iter().enumerate() {
        let closure = integral_closure(i).unwrap();
        let centers: BTreeSet<Vec<usize>> = rees_valuations(i).unwrap().into_iter().map(|v| v.center).collect();
        for p in associated_primes(&closure).unwrap() {
            if !centers.contains(p.variables()) {
                failures.push(format!("#{k} {}: prime {:?} is not a center", i.display(), p.variables()));
            }
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { format!("{SUITE_SIZE} closures, zero failures") } else { failures.join("; ") },
    )
}

fn closure_invariance() -> Outcome {
    let failures: Vec<String> = suite_brackets()
        .iter()
        .enumerate()
        .filter(|(_, (_, b, c))| !b.intersects(c))
        .map(|(k, (i, b, c))| format!("#{k} {}: [{}, {}] vs [{}, {}]", i.display(), b.lower, b.upper, c.lower, c.upper))
        .collect();
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{SUITE_SIZE} ideals, pmax {SUITE_PMAX}, all overlap")
        } else {
            failures.join("; ")
        },
    )
}

fn betti_oracle() -> Outcome {
    let lim = suite_limits();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (k, i) in suite().iter().enumerate() {
        if i.num_generators() > 6 {
            continue;
        }
        checked += 1;
        let ours: BTreeMap<(usize, Vec<u32>), u64> =
            betti_numbers(i, &lim).unwrap().entries().map(|(d, b, r)| ((d, b.exponents().to_vec()), r)).collect();
        if ours != taylor_betti(i) {
            failures.push(format!("#{k} {}", i.display()));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { format!("{checked} ideals, zero discrepancies") } else { failures.join("; ") },
    )
}

fn irrational_surface() -> Outcome {
    let start = Instant::now();
    let lattice = NSLattice::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]], vec![1, 1, 0]).unwrap();
    let h = DivisorClass::from_integers(&[1, 2, 0]);
    let c = DivisorClass::from_integers(&[1, 1, 1]);
    let s = s_invariant_divisorial(&lattice, &h, &c).unwrap();
    let expected = QuadraticIrrational::new(q(3, 2), q(1, 2), 3).unwrap();
    let certified = !s.value.is_rational() && !is_perfect_square(s.discriminant);
    let mut rescale_ok = true;
    for a in 1..=5 {
        for b in 0..=5 {
            rescale_ok &= rescale_check(&lattice, &h, &c, a, b).unwrap().holds;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        s.value == expected && certified && rescale_ok && within(elapsed, SURFACE_BUDGET),
        format!(
            "s = {}, discriminant {}, rescale a,b <= 5 {rescale_ok}, in {:.3}s",
            s.value,
            s.discriminant,
            elapsed.as_secs_f64()
        ),
    )
}

fn adeg_asymptotic_bound() -> Outcome {
    let r = ring(3);
    let cases =
        [("(x, y)", MonomialIdeal::variables(&r, &[0, 1])), ("(x^2, y^2)", ideal(&r, &[&[2, 0, 0], &[0, 2, 0]]))];
    let slack = q(ADEG_SLACK.0, ADEG_SLACK.1);
    let mut failures = Vec::new();
    for (name, j) in cases {
        let upper = s_bracket(&j, SUITE_PMAX, tolerance(), &Limits::default()).unwrap().upper;
        for p in 1..=5u32 {
            let profile = adeg_profile(&j.power(p).unwrap()).unwrap();
            let mut factorial = 1i64;
            let mut upper_power = q(1, 1);
            let mut p_power = 1i64;
            for k in 1..=2usize {
                factorial *= k as i64;
                upper_power *= upper;
                p_power *= i64::from(p);
                let ratio = q(profile.get(k) as i64, p_power);
                let bound = upper_power / factorial * slack;
                if ratio > bound {
                    failures.push(format!("{name} p={p} k={k}: {ratio} > {bound}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() { "all ratios within bound".to_string() } else { failures.join("; ") },
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("quadric s-bracket is exactly [2, 2]", quadric_bracket),
        ("pathology family invariants", pathology_family),
        ("d_p/p convergence for the pathology, d = 2", asymptotic_convergence),
        ("effective Nullstellensatz inclusions on the suite", nullstellensatz_inclusions),
        ("Bezout bound at the certified upper endpoint", bezout_bound),
        ("associated primes of closures are Rees centers", closed_primes_are_centers),
        ("brackets of I and its closure intersect", closure_invariance),
        ("Betti numbers match the Taylor oracle", betti_oracle),
        ("irrational nef boundary on E x E", irrational_surface),
        ("adeg^k(J^p)/p^k within s^k/k! * 1.05 for p <= 5", adeg_asymptotic_bound),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !result.ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", n + 1, if result.ok { "PASS" } else { "FAIL" }, result.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
