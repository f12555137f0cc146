//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p qchrom-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use qchrom_core::certify::{certify_table1, certify_table2, Table1Options, Table2Options, Verdict};
use qchrom_core::designs::{
    hadamard_design, menon_design, paley_design, separation_profile, twin_prime_design, Design,
};
use qchrom_core::oracle::brute_spectrum;
use qchrom_core::representation::{
    check_character_product, rep_from_family, verify_embedding, verify_flat_orthogonal, CheckStatus, LinearMap,
    SAMPLE_SEED,
};
use qchrom_core::spectrum::claims::{verify_appendix_claims, verify_extremal_claims};
use qchrom_core::spectrum::closed_form::{g5_eigenvalue, g5_lambda_min};
use qchrom_core::spectrum::enumerator::{dual_code, duality_check, macwilliams_transform, span, WeightEnumerator};
use qchrom_core::{enumerate_types, families, full_spectrum, spectral_lower_bound, Budget, CayleySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limits. Exact arithmetic everywhere else: no numeric
/// tolerance appears in any criterion.
const ORACLE_SUITE_LIMIT: Duration = Duration::from_secs(60);
const THEOREM_SWEEP_LIMIT: Duration = Duration::from_secs(300);
const THEOREM_L_MAX: u32 = 30;
const G5_L_MAX: u32 = 8;
const RANDOM_CODES: usize = 20;
const CODE_SEED: u64 = 20_240_917;

/// Lower ends of the χ_q row of the `H(n,2)` table, n = 2..=16.
const TABLE3_LOWER: [(u32, u32); 15] = [
    (2, 2),
    (3, 4),
    (4, 4),
    (5, 6),
    (6, 6),
    (7, 8),
    (8, 8),
    (9, 10),
    (10, 10),
    (11, 12),
    (12, 12),
    (13, 14),
    (14, 14),
    (15, 16),
    (16, 16),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn oracle_suite() -> Vec<(String, CayleySpec)> {
    let mut out = Vec::new();
    for l in 1..=3 {
        out.push((format!("O_{{{},3}}", 3 * l), families::orthogonality(3, l).unwrap()));
    }
    for n in 2..=14 {
        out.push((format!("H({n},2)"), families::hamming(n, 2).unwrap()));
    }
    for t in 1..=2 {
        out.push((format!("G1(t={t})"), families::g1(t).unwrap()));
    }
    out.push(("G5(l=2)".into(), families::g5(2).unwrap()));
    out.push(("G6(l=2)".into(), families::g6(2).unwrap()));
    out
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let budget = Budget::unlimited();
    let suite = oracle_suite();
    for (name, spec) in &suite {
        let engine = full_spectrum(spec, &budget).map_err(e2s)?;
        let brute = brute_spectrum(spec, &budget).map_err(e2s)?;
        ensure(engine.entries() == brute.entries(), || format!("{name}: engine and oracle differ"))?;
        engine.verify_trace_identities().map_err(|e| format!("{name}: {e}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= ORACLE_SUITE_LIMIT, || {
        format!("suite took {elapsed:.1?}, limit {ORACLE_SUITE_LIMIT:?}")
    })?;
    Ok(format!("{} graphs agree exactly with the oracle in {elapsed:.1?}", suite.len()))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut types = 0;
    for l in 1..=THEOREM_L_MAX {
        let v = verify_extremal_claims(l).map_err(e2s)?;
        let relevant: Vec<_> = v
            .counterexamples
            .iter()
            .filter(|c| l >= 3 || !c.claim.starts_with("second"))
            .collect();
        ensure(relevant.is_empty(), || format!("l={l}: {:?}", relevant[0]))?;
        ensure(v.lambda_min == v.lambda_min_expected, || format!("l={l}: λ(1,1,n-2) = {}", v.lambda_min))?;
        if l >= 3 {
            ensure(v.second_largest.is_some() && v.second_largest == v.second_largest_expected, || {
                format!("l={l}: λ(2,2,n-4) = {:?}", v.second_largest)
            })?;
        }
        let a = verify_appendix_claims(l).map_err(e2s)?;
        ensure(a.passed, || format!("l={l}: reduced inequalities fail: {:?}", a.counterexamples.first()))?;
        types += v.canonical_types;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= THEOREM_SWEEP_LIMIT, || {
        format!("sweep took {elapsed:.1?}, limit {THEOREM_SWEEP_LIMIT:?}")
    })?;
    Ok(format!(
        "smallest eigenvalue l=1..={THEOREM_L_MAX}, second largest l=3..={THEOREM_L_MAX}, {types} canonical types in {elapsed:.1?}"
    ))
}

/// Spectral bound of `H(n,2)` and a verified flat representation of the
/// same dimension.
fn sandwich(name: &str, d: &Design, expected: u32) -> Result<(), String> {
    let n = d.n() as u32;
    let lower = spectral_lower_bound(&full_spectrum(&families::hamming(n, 2).unwrap(), &Budget::default()).map_err(e2s)?)
        .map_err(e2s)?;
    ensure(lower == BigInt::from(expected), || format!("{name}: spectral bound {lower}, expected {expected}"))?;
    let theta = separation_profile(d).theta.ok_or_else(|| format!("{name}: profile not constant"))?;
    let rep = rep_from_family(d, theta).map_err(e2s)?;
    ensure(rep.dimension() == expected as usize, || {
        format!("{name}: representation dimension {}", rep.dimension())
    })?;
    let v = verify_flat_orthogonal(&rep, n);
    ensure(v.passed(), || format!("{name}: {:?}", v.violation))
}

fn criterion3() -> Outcome {
    let rows: [(&str, Design, u32); 5] = [
        ("paley(7)", paley_design(7).map_err(e2s)?, 8),
        ("paley(11)", paley_design(11).map_err(e2s)?, 12),
        ("hadamard(t=2)", hadamard_design(2).map_err(e2s)?, 16),
        ("menon(s=2)", menon_design(2).map_err(e2s)?, 16),
        ("twinprime(q=3)", twin_prime_design(3).map_err(e2s)?, 16),
    ];
    for (name, d, expected) in &rows {
        sandwich(name, d, *expected)?;
    }
    Ok("H(7,2)=8, H(11,2)=12, H(15,2)=16 (two designs), H(16,2)=16".into())
}

fn criterion4() -> Outcome {
    let budget = Budget::default();
    for (n, expected) in TABLE3_LOWER {
        let report = full_spectrum(&families::hamming(n, 2).unwrap(), &budget).map_err(e2s)?;
        let lower = spectral_lower_bound(&report).map_err(e2s)?;
        ensure(lower == BigInt::from(expected), || format!("n={n}: lower bound {lower}, table {expected}"))?;
    }
    for k in [9, 10] {
        let s = verify_embedding(
            LinearMap::ZeroPad(1),
            &families::hamming(k, 2).unwrap(),
            &families::hamming(k + 1, 2).unwrap(),
            &budget,
        )
        .map_err(e2s)?;
        ensure(s.certified() && s.exhaustive == CheckStatus::Passed, || {
            format!("H({k},2) -> H({},2): {s:?}", k + 1)
        })?;
    }
    sandwich("paley(11)", &paley_design(11).map_err(e2s)?, 12)?;
    Ok("lower ends match for n=2..=16; H(9,2) -> H(10,2) -> H(11,2) embeds and chi_q(H(11,2)) = 12".into())
}

fn criterion5() -> Outcome {
    let budget = Budget::default();
    let g5 = families::g5(2).unwrap();
    let report = full_spectrum(&g5, &budget).map_err(e2s)?;
    let brute = brute_spectrum(&g5, &budget).map_err(e2s)?;
    ensure(report.entries() == brute.entries(), || "G5(l=2): engine and oracle differ".into())?;
    ensure(report.lambda_min().value == BigInt::from(-6), || {
        format!("G5(l=2): λ_min = {}", report.lambda_min().value)
    })?;
    let bound = spectral_lower_bound(&report).map_err(e2s)?;
    ensure(bound == BigInt::from(6), || format!("G5(l=2): bound {bound}"))?;
    for l in 2..=G5_L_MAX {
        let spec = families::g5(l).unwrap();
        let report = full_spectrum(&spec, &budget).map_err(e2s)?;
        for e in report.entries() {
            let closed = g5_eigenvalue(l, &e.type_vector).map_err(e2s)?;
            ensure(closed == e.eigenvalue, || {
                format!("l={l} type {}: engine {}, closed form {closed}", e.type_vector, e.eigenvalue)
            })?;
        }
        let expected = g5_lambda_min(l).map_err(e2s)?;
        ensure(report.lambda_min().value == expected, || {
            format!("l={l}: λ_min = {}, expected {expected}", report.lambda_min().value)
        })?;
        let bound = spectral_lower_bound(&report).map_err(e2s)?;
        ensure(bound == BigInt::from(3 * l), || format!("l={l}: bound {bound}"))?;
    }
    Ok(format!("λ_min = -6 and bound 6 at l=2 (oracle); closed form holds for l=2..={G5_L_MAX}"))
}

fn random_ternary_code(rng: &mut ChaCha8Rng) -> (u32, Vec<Vec<u32>>) {
    let n = rng.gen_range(2..=6);
    let k = rng.gen_range(1..=3);
    let gens: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect()).collect();
    (n, span(3, n, &gens).expect("valid generators"))
}

fn criterion6() -> Outcome {
    let budget = Budget::default();
    let mut spectra = 0;
    let specs: Vec<CayleySpec> = oracle_suite()
        .into_iter()
        .map(|(_, s)| s)
        .chain((2..=20).map(|n| families::hamming(n, 2).unwrap()))
        .chain((1..=6).map(|l| families::orthogonality(3, l).unwrap()))
        .chain((2..=5).flat_map(|l| [families::g5(l).unwrap(), families::g6(l).unwrap(), families::g3(l).unwrap()]))
        .collect();
    for spec in &specs {
        full_spectrum(spec, &budget).map_err(e2s)?.verify_trace_identities().map_err(e2s)?;
        spectra += 1;
    }

    let mut pairs = 0;
    for n in [3, 6, 9] {
        let types: Vec<_> = enumerate_types(3, n, true).map_err(e2s)?.collect();
        for s in &types {
            for t in &types {
                let (a, b) = duality_check(s, t).map_err(e2s)?;
                ensure(a == b, || format!("duality fails at {s}, {t}: {a} vs {b}"))?;
                pairs += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(CODE_SEED);
    for i in 0..RANDOM_CODES {
        let (n, code) = random_ternary_code(&mut rng);
        let a = WeightEnumerator::of_words(3, n, &code).map_err(e2s)?;
        let size = BigUint::from(code.len());
        let dual = macwilliams_transform(&a, &size).map_err(e2s)?;
        let enumerated = WeightEnumerator::of_words(3, n, &dual_code(3, n, &code)).map_err(e2s)?;
        ensure(dual == enumerated, || format!("code {i}: transform differs from the enumerated dual"))?;
        let back = macwilliams_transform(&dual, &dual.size()).map_err(e2s)?;
        ensure(back == a, || format!("code {i}: transform is not an involution"))?;
    }

    let designs = [
        paley_design(7),
        paley_design(11),
        paley_design(19),
        paley_design(27),
        hadamard_design(1),
        hadamard_design(2),
        hadamard_design(3),
        twin_prime_design(3),
        twin_prime_design(5),
        menon_design(1),
        menon_design(2),
        menon_design(3),
    ];
    for d in designs {
        let d = d.map_err(e2s)?;
        let p = d.params().ok_or("unverified design")?;
        let theta = separation_profile(&d).theta.ok_or("profile not constant")?;
        ensure(theta == 2 * (p.r - p.lambda), || format!("θ = {theta} but 2(r-λ) = {}", 2 * (p.r - p.lambda)))?;
        let rep = rep_from_family(&d, theta).map_err(e2s)?;
        let v = verify_flat_orthogonal(&rep, d.n() as u32);
        ensure(v.passed(), || format!("n={}: {v:?}", d.n()))?;
        ensure(check_character_product(&rep, 500, SAMPLE_SEED).map_err(e2s)?.is_none(), || {
            format!("n={}: character-product law fails", d.n())
        })?;
        if d.n() <= 16 {
            let m = rep.matrix().map_err(e2s)?;
            ensure(m.iter().flatten().all(|&x| x == 1 || x == -1), || "entry outside ±1".into())?;
        }
    }
    Ok(format!(
        "{spectra} trace checks, {pairs} duality pairs, {RANDOM_CODES} random codes, 12 designs and their representations"
    ))
}

fn criterion7() -> Outcome {
    let budget = Budget::default();
    let t1 = certify_table1(
        &Table1Options {
            family: Some("external".into()),
            ..Default::default()
        },
        &budget,
    )
    .map_err(e2s)?;
    let t2 = certify_table2(
        &Table2Options {
            paley_qmax: 0,
            hadamard_tmax: 0,
            twinprime_qmax: 0,
            menon_amax: 0,
            timing: false,
        },
        &budget,
    )
    .map_err(e2s)?;
    let required = ["balanced:general p", "F_q^{q^l}", "G4:general p", "Menon:general s"];
    let all: Vec<_> = t1.certificates.iter().chain(&t2.certificates).collect();
    for claim in required {
        let c = all
            .iter()
            .find(|c| c.claim == claim)
            .ok_or_else(|| format!("no certificate for {claim}"))?;
        ensure(c.verdict == Verdict::ExternalDependency, || {
            format!("{claim} has verdict {}", c.verdict.as_str())
        })?;
    }
    ensure(all.iter().all(|c| c.verdict != Verdict::CertifiedEqual), || {
        "an externally sourced row is certified-equal".into()
    })?;
    Ok(format!("{} rows resting on published results are external-dependency", all.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", criterion1),
        ("O_{3l,3} extremal eigenvalues", criterion2),
        ("H(n,2) designs", criterion3),
        ("H(n,2) table consistency", criterion4),
        ("G_5 smallest eigenvalue", criterion5),
        ("property suites", criterion6),
        ("external results not certified", criterion7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
