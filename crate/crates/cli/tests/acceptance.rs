//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Oracles here are written against the ring tables directly and share no
//! code with the library beyond ring construction.

use std::process::{Command, ExitCode};
use std::time::Instant;

use sober_core::ideal::{all_ideals, principal_ideal, Ideal};
use sober_core::ring::{poly_quotient, validate, zmod, FiniteRing};
use sober_core::spectrum::{
    is_jacobson_ring_bruteforce, is_sober_bruteforce, is_sober_space, jacobson_radical,
    krull_dimension, spec, spec_space, strict_over_intersection, KrullDim,
};
use sober_core::symbolic::{decide_sober, witness_excluding_prime, RingDescriptor};
use sober_core::verdict::{ElementLiteral, Rule, Verdict};
use sober_core::verifier::{generate_corpus, run_verification, CorpusConfig, DefectClass, CorpusEntry};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every subset containing zero that is closed under addition and under
/// multiplication by ring elements, as sorted member lists.
fn subset_ideals(r: &FiniteRing) -> Vec<Vec<usize>> {
    let n = r.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << r.zero()) == 0 {
            continue;
        }
        let inside = |x: usize| mask & (1 << x) != 0;
        let members: Vec<usize> = (0..n).filter(|&x| inside(x)).collect();
        if members.iter().all(|&a| {
            members.iter().all(|&b| inside(r.add(a, b))) && (0..n).all(|s| inside(r.mul(s, a)))
        }) {
            out.push(members);
        }
    }
    out.sort();
    out
}

fn member_lists(ideals: &[Ideal<'_>]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = ideals.iter().map(|i| i.to_vec()).collect();
    v.sort();
    v
}

/// The definition read literally: `P` prime and not maximal with `P` equal
/// to the intersection of the primes strictly containing it makes the ring
/// non-sober.
fn definition_verdict(r: &FiniteRing) -> Verdict {
    let n = r.order();
    let ideals: Vec<Vec<bool>> = all_ideals(r)
        .iter()
        .map(|i| (0..n).map(|x| i.contains(x)).collect())
        .collect();
    let within = |a: &Vec<bool>, b: &Vec<bool>| (0..n).all(|x| !a[x] || b[x]);
    let proper = |a: &Vec<bool>| a.contains(&false);
    let primes: Vec<&Vec<bool>> = ideals
        .iter()
        .filter(|p| {
            proper(p) && (0..n).all(|a| (0..n).all(|b| !p[r.mul(a, b)] || p[a] || p[b]))
        })
        .collect();
    for p in &primes {
        let maximal = !ideals.iter().any(|q| proper(q) && q != *p && within(p, q));
        if maximal {
            continue;
        }
        let above: Vec<&&Vec<bool>> = primes.iter().filter(|q| **q != *p && within(p, q)).collect();
        let meet: Vec<bool> = (0..n).map(|x| above.iter().all(|q| q[x])).collect();
        if meet == **p {
            return Verdict::NotSober;
        }
    }
    Verdict::Sober
}

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Polynomials over F_2 as bit masks: bit i is the coefficient of x^i.
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let deg = |v: u64| 63 - v.leading_zeros();
    while a != 0 && deg(a) >= deg(b) {
        a ^= b << (deg(a) - deg(b));
    }
    a
}

fn gf2_irreducible(f: u64) -> bool {
    f >= 2 && (2..f).filter(|g| (63 - g.leading_zeros()) * 2 <= 63 - f.leading_zeros()).all(|g| gf2_rem(f, g) != 0)
}

fn mask(coeffs: &[usize]) -> Option<u64> {
    if coeffs.len() > 64 || coeffs.iter().any(|&c| c > 1) {
        return None;
    }
    Some(coeffs.iter().enumerate().fold(0, |m, (i, &c)| m | (c as u64) << i))
}

fn ac1(corpus: &[CorpusEntry]) -> Outcome {
    let broken: Vec<String> = corpus
        .iter()
        .filter(|e| !validate(&e.ring).is_empty())
        .map(|e| e.ring.recipe().to_string())
        .collect();
    check(broken.is_empty(), || format!("axioms fail on {broken:?}"))?;
    let planted = CorpusConfig {
        include_planted_defects: true,
        ..CorpusConfig::default()
    };
    let report = run_verification(&planted).map_err(|e| e.to_string())?;
    let detections = report.defect_detections();
    let missed: Vec<_> = detections.iter().filter(|(_, hits)| *hits == 0).collect();
    check(missed.is_empty(), || format!("undetected defect classes {missed:?}"))?;
    for class in DefectClass::ALL {
        if let (Some(recipe), Some(axiom)) = (class.recipe(), class.expected_axiom()) {
            let ring = recipe.realize(64).map_err(|e| e.to_string())?;
            check(validate(&ring).iter().any(|v| v.axiom == axiom), || {
                format!("{class:?} does not break {axiom:?}")
            })?;
        }
    }
    Ok(format!(
        "{} rings valid; {} of {} planted classes detected",
        corpus.len(),
        detections.len() - missed.len(),
        detections.len()
    ))
}

fn ac2(corpus: &[CorpusEntry]) -> Outcome {
    let mut lattices = 0;
    let mut cyclic = 0;
    for e in corpus {
        let r = &e.ring;
        let ideals = all_ideals(r);
        if r.order() <= 16 {
            lattices += 1;
            check(member_lists(&ideals) == subset_ideals(r), || {
                format!("{}: lattice differs from subset filtering", r.recipe())
            })?;
        }
        if let RingDescriptor::Zmod { n } = e.descriptor {
            cyclic += 1;
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            check(ideals.len() == divisors, || {
                format!("Z/{n}: {} ideals, {divisors} divisors", ideals.len())
            })?;
        }
    }
    Ok(format!("{lattices} lattices of order <= 16 exact; {cyclic} Z/n ideal counts exact"))
}

fn ac3(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        let got = is_sober_bruteforce(&e.ring).verdict;
        let want = definition_verdict(&e.ring);
        check(got == want, || format!("{}: {got} vs definition {want}", e.ring.recipe()))?;
    }
    Ok(format!("{} rings agree exactly", corpus.len()))
}

fn ac4(corpus: &[CorpusEntry]) -> Outcome {
    let mut zero_rings = 0;
    for e in corpus {
        let r = &e.ring;
        let dim = krull_dimension(r);
        let verdict = is_sober_bruteforce(r).verdict;
        let dim_ok = if r.is_trivial() {
            zero_rings += 1;
            dim == KrullDim::Undefined
        } else {
            dim == KrullDim::Finite(0)
        };
        check(dim_ok && verdict == Verdict::Sober, || {
            format!("{}: dim {dim}, {verdict}", r.recipe())
        })?;
    }
    Ok(format!(
        "0 failures over {} rings ({zero_rings} zero ring: no primes, dimension undefined, sober)",
        corpus.len()
    ))
}

fn ac5() -> Outcome {
    for d in [RingDescriptor::Z, RingDescriptor::PolyRing { q: 2 }] {
        let v = decide_sober(&d).map_err(|e| e.to_string())?;
        check(v.verdict == Verdict::NotSober, || format!("{d}: {}", v.verdict))?;
        let cert = v.certificate.ok_or_else(|| format!("{d}: no certificate"))?;
        check(cert.samples.len() >= 10, || format!("{d}: {} pairs", cert.samples.len()))?;
        for pair in &cert.samples {
            let ok = match (&pair.element, &pair.generator) {
                (ElementLiteral::Integer(x), ElementLiteral::Integer(g)) => {
                    *x != 0 && trial_prime(*g as u64) && x.rem_euclid(*g) != 0
                }
                (ElementLiteral::Poly(x), ElementLiteral::Poly(g)) => match (mask(x), mask(g)) {
                    (Some(x), Some(g)) => x != 0 && gf2_irreducible(g) && gf2_rem(x, g) != 0,
                    _ => false,
                },
                _ => false,
            };
            check(ok, || format!("{d}: pair {} / {} fails", pair.element, pair.generator))?;
        }
    }
    // Least prime not dividing 30, and the first monic irreducible over F_2
    // (in degree, then coefficient order) not dividing x^2+x.
    let want_int = (2u64..).find(|&p| trial_prime(p) && 30 % p != 0).unwrap() as i64;
    let x2x = 0b110u64;
    let want_poly = (2u64..).find(|&g| gf2_irreducible(g) && gf2_rem(x2x, g) != 0).unwrap();
    let got_int = witness_excluding_prime(&RingDescriptor::Z, &ElementLiteral::Integer(30))
        .map_err(|e| e.to_string())?;
    let got_poly = witness_excluding_prime(&RingDescriptor::PolyRing { q: 2 }, &ElementLiteral::Poly(vec![0, 1, 1]))
        .map_err(|e| e.to_string())?;
    check(got_int == ElementLiteral::Integer(want_int) && want_int == 7, || {
        format!("witness(Z, 30) = {got_int}, oracle {want_int}")
    })?;
    let got_mask = match &got_poly {
        ElementLiteral::Poly(c) => mask(c),
        _ => None,
    };
    check(got_mask == Some(want_poly) && want_poly == 0b111, || {
        format!("witness(F_2[x], x^2+x) = {got_poly}")
    })?;
    Ok("Z and F_2[x] NotSober, >= 10 pairs each all division-verified; witness(30) = 7, witness(x^2+x) = x^2+x+1".into())
}

fn ac6() -> Outcome {
    let cases = [
        RingDescriptor::ZLocalized { primes: vec![2] },
        RingDescriptor::ZLocalized { primes: vec![2, 3] },
        RingDescriptor::ZLocalized { primes: vec![2, 3, 7] },
        RingDescriptor::DVR { label: "t-adic".into() },
    ];
    for d in &cases {
        let v = decide_sober(d).map_err(|e| e.to_string())?;
        let cites = v
            .trace
            .iter()
            .any(|t| t.rule == Rule::R3 && t.citation.contains("semilocal"));
        check(v.verdict == Verdict::Sober && v.decided_by == Some(Rule::R3) && cites, || {
            format!("{d}: {} decided by {:?}", v.verdict, v.decided_by)
        })?;
    }
    Ok(format!("{} descriptors Sober via the semilocal dimension-one rule", cases.len()))
}

fn ac7(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        let r = &e.ring;
        check(is_jacobson_ring_bruteforce(r), || format!("{}: not Jacobson", r.recipe()))?;
        let v = decide_sober(&e.descriptor).map_err(|err| err.to_string())?;
        check(
            v.verdict == Verdict::Sober && v.decided_by != Some(Rule::R6),
            || format!("{}: {} by {:?}", r.recipe(), v.verdict, v.decided_by),
        )?;
    }
    Ok(format!("{} rings Jacobson and Sober; Jacobson rule never fired", corpus.len()))
}

fn ac8(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        check(is_sober_space(&spec_space(&e.ring)).sober, || {
            format!("{}: Spec not sober", e.ring.recipe())
        })?;
    }
    let indiscrete = DefectClass::indiscrete_space();
    check(!is_sober_space(&indiscrete).sober, || "indiscrete space accepted".into())?;
    Ok(format!("{} spectra sober; indiscrete 2-point space rejected", corpus.len()))
}

fn ac9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_sober"))
            .args(["verify", "--no-timings", "--report"])
            .arg(&path)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        check(status.success(), || format!("verify exited with {status}"))?;
        reports.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    check(reports[0] == reports[1], || "reports differ".into())?;
    Ok(format!("two runs byte-identical ({} bytes)", reports[0].len()))
}

fn ac10() -> Outcome {
    let z12 = zmod(12).map_err(|e| e.to_string())?;
    let j = jacobson_radical(&z12).to_vec();
    check(j == [0, 6], || format!("J(Z/12) = {j:?}"))?;
    let mut primes = member_lists(&spec(&z12));
    primes.sort();
    check(primes == [vec![0, 2, 4, 6, 8, 10], vec![0, 3, 6, 9]], || {
        format!("Spec(Z/12) = {primes:?}")
    })?;
    let dual = poly_quotient(2, &[0, 0, 1]).map_err(|e| e.to_string())?;
    let zero = Ideal::zero(&dual);
    let over: Vec<&str> = strict_over_intersection(&dual, &zero)
        .to_vec()
        .into_iter()
        .map(|x| dual.label(x))
        .collect();
    check(over == ["0", "x"], || format!("over-intersection of (0) = {over:?}"))?;
    let z8 = zmod(8).map_err(|e| e.to_string())?;
    let six = principal_ideal(&z8, 6).to_vec();
    check(six == [0, 2, 4, 6], || format!("(6) in Z/8 = {six:?}"))?;
    Ok("J(Z/12) = {0,6}; Spec(Z/12) = {(2),(3)}; (0) in F_2[x]/(x^2) -> {0, x}; (6) in Z/8 = {0,2,4,6}".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = generate_corpus(&CorpusConfig::default()).expect("default corpus");
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 10] = [
        ("axiom suite", Box::new(|| ac1(&corpus))),
        ("lattice oracle", Box::new(|| ac2(&corpus))),
        ("definition fidelity", Box::new(|| ac3(&corpus))),
        ("zero-dimensional and Artinian rings are sober", Box::new(|| ac4(&corpus))),
        ("integers and F_2[x] are not sober", Box::new(ac5)),
        ("semilocal dimension one", Box::new(ac6)),
        ("Jacobson rule guard", Box::new(|| ac7(&corpus))),
        ("spectra are sober spaces", Box::new(|| ac8(&corpus))),
        ("determinism", Box::new(ac9)),
        ("spot values", Box::new(ac10)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/10 passed on a {}-ring corpus in {:.1}s",
        10 - failed,
        corpus.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
