//! Acceptance criteria 1-9, one `criterion N: PASS|FAIL` line each. Runs
//! without the libtest harness so the lines always print; exits 1 on failure.

use std::time::{Duration, Instant};

use fpoly::coeffring::{eval_all_zero, is_integer_poly, Polynomial, Sqrt2Coeff};
use fpoly::engine::{f_polynomial, path_computation, test_words, FRequest, Method};
use fpoly::network::{build_network, enumerate_families, Variant};
use fpoly::rep::{principal_minor, Representation};
use fpoly::weyl::{
    coxeter_apply, fundamental_label, height, simple_reflection, w0_label, CoxeterWord, Family, LabelKind, LieType,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SWEEP: &[(Family, usize)] = &[
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::A, 5),
    (Family::B, 2),
    (Family::B, 3),
    (Family::B, 4),
    (Family::C, 2),
    (Family::C, 3),
    (Family::C, 4),
    (Family::D, 4),
    (Family::D, 5),
];

/// h(k;c) for k = 1..n, natural and reversed words, frozen after first run.
const FROZEN_HEIGHTS: &[(Family, usize, &[usize], &[usize])] = &[
    (Family::A, 1, &[1], &[1]),
    (Family::A, 2, &[1, 2], &[2, 1]),
    (Family::A, 2, &[2, 1], &[1, 2]),
    (Family::A, 3, &[1, 2, 3], &[3, 2, 1]),
    (Family::A, 3, &[3, 2, 1], &[1, 2, 3]),
    (Family::A, 3, &[1, 3, 2], &[2, 2, 2]),
    (Family::A, 4, &[1, 2, 3, 4], &[4, 3, 2, 1]),
    (Family::A, 5, &[5, 4, 3, 2, 1], &[1, 2, 3, 4, 5]),
    (Family::B, 2, &[1, 2], &[2, 2]),
    (Family::B, 2, &[2, 1], &[2, 2]),
    (Family::B, 3, &[1, 2, 3], &[3, 3, 3]),
    (Family::B, 4, &[4, 3, 2, 1], &[4, 4, 4, 4]),
    (Family::C, 2, &[2, 1], &[2, 2]),
    (Family::C, 3, &[1, 2, 3], &[3, 3, 3]),
    (Family::C, 4, &[1, 2, 3, 4], &[4, 4, 4, 4]),
    (Family::D, 4, &[1, 2, 3, 4], &[3, 3, 3, 3]),
    (Family::D, 5, &[1, 2, 3, 4, 5], &[4, 4, 4, 4, 4]),
    (Family::D, 5, &[5, 4, 3, 2, 1], &[4, 4, 4, 4, 4]),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn lie(f: Family, n: usize) -> LieType {
    LieType::new(f, n).unwrap()
}

fn word(xs: &[usize]) -> CoxeterWord {
    CoxeterWord::new(xs.to_vec()).unwrap()
}

fn poly(rank: usize, terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_terms(rank, terms.iter().map(|&(a, e)| (e.to_vec(), Sqrt2Coeff::int(a)))).unwrap()
}

/// Runs one golden case with both methods, requiring exact equality and a
/// wall time under one second.
fn golden(ty: LieType, c: &[usize], k: usize, m: usize, expected: &Polynomial) -> Result<String, String> {
    let start = Instant::now();
    let r = f_polynomial(&FRequest {
        ty,
        c: word(c),
        k,
        m,
        method: Method::Both,
    })
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if &r.polynomial != expected {
        return Err(format!(
            "{} k={} m={}: got {}, expected {}",
            ty, k, m, r.polynomial, expected
        ));
    }
    if r.agreement != Some(true) {
        return Err(format!("{} k={} m={}: methods disagree", ty, k, m));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("{} k={} m={}: took {:?}", ty, k, m, elapsed));
    }
    Ok(format!("{} ({:?})", r.polynomial, elapsed))
}

fn criterion_1() -> Outcome {
    let expected = poly(
        3,
        &[
            (1, &[0, 0, 0]),
            (1, &[1, 0, 0]),
            (1, &[0, 0, 1]),
            (1, &[1, 0, 1]),
            (1, &[1, 1, 1]),
        ],
    );
    match golden(lie(Family::A, 3), &[1, 3, 2], 2, 1, &expected) {
        Ok(d) => outcome(true, d),
        Err(d) => outcome(false, d),
    }
}

fn criterion_2() -> Outcome {
    let expected = poly(
        4,
        &[
            (1, &[0, 0, 0, 0]),
            (1, &[1, 0, 0, 0]),
            (1, &[0, 1, 0, 0]),
            (2, &[1, 1, 0, 0]),
            (1, &[1, 1, 1, 0]),
            (1, &[1, 1, 0, 1]),
            (1, &[1, 2, 0, 0]),
            (1, &[1, 2, 1, 0]),
            (1, &[1, 2, 0, 1]),
            (1, &[1, 2, 1, 1]),
        ],
    );
    match golden(lie(Family::D, 4), &[1, 2, 3, 4], 2, 2, &expected) {
        Ok(d) => outcome(expected.len() == 10, d),
        Err(d) => outcome(false, d),
    }
}

fn criterion_3() -> Outcome {
    let ty = lie(Family::D, 4);
    let c = CoxeterWord::natural(4);
    let expected = poly(4, &[(1, &[0, 0, 0, 0]), (1, &[0, 1, 0, 0]), (1, &[0, 1, 0, 1])]);
    let d = match golden(ty, &[1, 2, 3, 4], 3, 2, &expected) {
        Ok(d) => d,
        Err(d) => return outcome(false, d),
    };
    let label = coxeter_apply(ty, &c, &fundamental_label(ty, 3).unwrap(), 2);
    let net = build_network(Variant::DVector, 4, &c).unwrap();
    let fams = enumerate_families(&net, &label, true).unwrap();
    let mut weights: Vec<String> = fams
        .iter()
        .map(|f| Polynomial::term(f.monomial.clone(), f.coeff.clone()).to_string())
        .collect();
    weights.sort();
    let want = ["1", "t2^2", "t2^2*t4^2"];
    outcome(weights == want, format!("{}; bundled family weights {:?}", d, weights))
}

fn criterion_4() -> Outcome {
    let ty = lie(Family::B, 2);
    let a = poly(2, &[(1, &[0, 0]), (2, &[0, 1]), (1, &[0, 2]), (1, &[1, 2])]);
    let b = poly(2, &[(1, &[0, 0]), (1, &[0, 1]), (1, &[1, 1])]);
    let mut details = Vec::new();
    for (k, m, expected) in [(1, 1, &a), (2, 2, &b)] {
        match golden(ty, &[2, 1], k, m, expected) {
            Ok(d) => details.push(d),
            Err(d) => return outcome(false, d),
        }
    }
    // the 2*t2 term comes from the sqrt2 * sqrt2 path through level 0
    let c = word(&[2, 1]);
    let label = coxeter_apply(ty, &c, &fundamental_label(ty, 1).unwrap(), 1);
    let net = build_network(Variant::BVector, 2, &c).unwrap();
    let via_zero = enumerate_families(&net, &label, false)
        .unwrap()
        .iter()
        .any(|f| f.coeff == Sqrt2Coeff::int(2) && f.monomial.degree() == 1);
    outcome(via_zero, details.join("; "))
}

/// One cell of the sweep, computed by both methods.
struct Cell {
    ty: LieType,
    c: CoxeterWord,
    k: usize,
    m: usize,
    h: usize,
    reaches_w0: bool,
    paths: Result<Polynomial, String>,
    rep: Result<Polynomial, String>,
    crossing_violations: usize,
    non_square: usize,
    nonconstant_required: bool,
}

fn sweep_cells() -> Vec<Cell> {
    let jobs: Vec<(LieType, CoxeterWord, usize)> = SWEEP
        .iter()
        .flat_map(|&(f, n)| {
            let ty = lie(f, n);
            test_words(n)
                .into_iter()
                .flat_map(move |c| (1..=n).map(move |k| (ty, c.clone(), k)))
        })
        .collect();
    jobs.par_iter()
        .flat_map_iter(|(ty, c, k)| {
            let (ty, k) = (*ty, *k);
            let base = fundamental_label(ty, k).unwrap();
            let h = height(ty, c, &base).unwrap_or(0);
            let reaches_w0 = coxeter_apply(ty, c, &base, h) == w0_label(ty, &base);
            let moved = coxeter_apply(ty, c, &base, 1) != base;
            (0..=h).map(move |m| {
                let label = coxeter_apply(ty, c, &base, m);
                let rep = principal_minor(Representation::for_label(ty, &label), c, &label).map_err(|e| e.to_string());
                let mut crossing_violations = 0;
                let mut non_square = 0;
                let paths = path_computation(ty, c, &label)
                    .map_err(|e| e.to_string())
                    .and_then(|comp| {
                        let wedge_no_cross = match (ty.family(), label.kind()) {
                            (Family::D, LabelKind::Wedge) => k + 2 <= ty.rank(),
                            (Family::B, LabelKind::Wedge) => true,
                            _ => false,
                        };
                        for f in &comp.families {
                            if wedge_no_cross && f.crossings != 0 {
                                crossing_violations += 1;
                            }
                            if comp.bundled && (!f.coeff.is_one() || f.monomial.exponents().iter().any(|e| e % 2 != 0))
                            {
                                non_square += 1;
                            }
                        }
                        comp.polynomial().map_err(|e| e.to_string())
                    });
                Cell {
                    ty,
                    c: c.clone(),
                    k,
                    m,
                    h,
                    reaches_w0,
                    paths,
                    rep,
                    crossing_violations,
                    non_square,
                    nonconstant_required: m == h && ty.rank() >= 2 && moved,
                }
            })
        })
        .collect()
}

fn describe(cell: &Cell) -> String {
    format!("{} c={} k={} m={}", cell.ty, cell.c, cell.k, cell.m)
}

fn criterion_5(cells: &[Cell], elapsed: Duration) -> Outcome {
    let bad = cells.iter().find(|c| match (&c.paths, &c.rep) {
        (Ok(p), Ok(r)) => p != r,
        _ => true,
    });
    let words: usize = SWEEP.iter().map(|&(_, n)| test_words(n).len()).sum();
    let detail = format!(
        "{} cells over {} (type, word) pairs in {:?}",
        cells.len(),
        words,
        elapsed
    );
    match bad {
        Some(c) => outcome(
            false,
            format!("{}: paths {:?} vs rep {:?}", describe(c), c.paths, c.rep),
        ),
        None => outcome(elapsed < Duration::from_secs(120), detail),
    }
}

fn criterion_6(cells: &[Cell]) -> Outcome {
    let bad = cells.iter().find(|c| match &c.paths {
        Ok(p) => !(p.has_positive_integer_coeffs() && is_integer_poly(p) && eval_all_zero(p).is_one()),
        Err(_) => true,
    });
    let nonconstant = cells
        .iter()
        .filter(|c| c.nonconstant_required)
        .find(|c| match &c.paths {
            Ok(p) => p.total_degree() == 0,
            Err(_) => true,
        });
    match (bad, nonconstant) {
        (Some(c), _) => outcome(false, format!("{}: {:?}", describe(c), c.paths)),
        (None, Some(c)) => outcome(false, format!("{}: constant at m = h", describe(c))),
        (None, None) => outcome(
            true,
            format!("{} polynomials positive, integral, constant term 1", cells.len()),
        ),
    }
}

fn criterion_7(cells: &[Cell]) -> Outcome {
    let crossing: usize = cells.iter().map(|c| c.crossing_violations).sum();
    let square: usize = cells.iter().map(|c| c.non_square).sum();
    outcome(
        crossing == 0 && square == 0,
        format!(
            "{} crossing families on D/B wedge labels, {} non-square bundled weights",
            crossing, square
        ),
    )
}

fn criterion_8(cells: &[Cell]) -> Outcome {
    if let Some(c) = cells
        .iter()
        .find(|c| !c.reaches_w0 || c.h == 0 || c.h > c.ty.coxeter_number())
    {
        return outcome(false, format!("{}: h={}", describe(c), c.h));
    }
    for &(f, n, w, expected) in FROZEN_HEIGHTS {
        let ty = lie(f, n);
        let c = word(w);
        let got: Vec<usize> = (1..=n)
            .map(|k| height(ty, &c, &fundamental_label(ty, k).unwrap()).unwrap_or(0))
            .collect();
        if got != expected {
            return outcome(false, format!("{} c={}: h = {:?}, frozen {:?}", ty, c, got, expected));
        }
    }
    let b2 = lie(Family::B, 2);
    let c = word(&[2, 1]);
    let h: Vec<usize> = (1..=2)
        .map(|k| height(b2, &c, &fundamental_label(b2, k).unwrap()).unwrap())
        .collect();
    outcome(
        h[0] >= 1 && h[1] >= 2,
        format!("all sweep heights valid; B2 c=2,1 h = {:?}", h),
    )
}

fn timed<F: FnOnce() -> Result<(), String>>(name: &str, f: F) -> Result<String, String> {
    let start = Instant::now();
    f()?;
    let t = start.elapsed();
    if t >= Duration::from_secs(10) {
        return Err(format!("{} took {:?}", name, t));
    }
    Ok(format!("{} {:?}", name, t))
}

fn random_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let terms: Vec<(Vec<u32>, Sqrt2Coeff)> = (0..rng.gen_range(0..6))
        .map(|_| {
            let e = (0..3).map(|_| rng.gen_range(0..=3)).collect();
            (e, Sqrt2Coeff::new(rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6)))
        })
        .collect();
    Polynomial::from_terms(3, terms).unwrap()
}

fn ring_laws() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        let add = |x: &Polynomial, y: &Polynomial| x.checked_add(y).unwrap();
        let mul = |x: &Polynomial, y: &Polynomial| x.checked_mul(y).unwrap();
        let ok = add(&a, &b) == add(&b, &a)
            && add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
            && mul(&a, &b) == mul(&b, &a)
            && mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
            && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
            && add(&a, &a.neg()).is_zero()
            && mul(&a, &Polynomial::one(3)) == a;
        if !ok {
            return Err(format!("ring law fails for {}, {}, {}", a, b, c));
        }
    }
    Ok(())
}

fn weyl_laws() -> Result<(), String> {
    for &(f, n) in SWEEP {
        let ty = lie(f, n);
        for x in ty.alphabet() {
            for i in 1..=n {
                let y = simple_reflection(ty, i, x).map_err(|e| e.to_string())?;
                if simple_reflection(ty, i, y).map_err(|e| e.to_string())? != x {
                    return Err(format!("s{} not an involution on {} in {}", i, x, ty));
                }
            }
        }
        for c in test_words(n) {
            for k in 1..=n {
                let l = fundamental_label(ty, k).unwrap();
                if w0_label(ty, &w0_label(ty, &l)) != l || coxeter_apply(ty, &c, &l, ty.coxeter_number()) != l {
                    return Err(format!("{} c={} k={}: w0^2 or c^h is not the identity", ty, c, k));
                }
            }
        }
    }
    Ok(())
}

fn enumeration_determinism() -> Result<(), String> {
    for &(f, n) in SWEEP {
        let ty = lie(f, n);
        for c in test_words(n) {
            for k in 1..=n {
                let l = coxeter_apply(ty, &c, &fundamental_label(ty, k).unwrap(), 1);
                let (variant, bundled) = match (f, l.is_spin()) {
                    (Family::B, true) => (Variant::BSpin, true),
                    (f, spin) => (Variant::vector(f), spin),
                };
                let a = enumerate_families(&build_network(variant, n, &c).unwrap(), &l, bundled).unwrap();
                let b = enumerate_families(&build_network(variant, n, &c).unwrap(), &l, bundled).unwrap();
                if a != b {
                    return Err(format!("{} c={} k={}: enumeration differs between runs", ty, c, k));
                }
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let runs = [
        timed("coeffring ring axioms", ring_laws),
        timed("weyl involution/identity laws", weyl_laws),
        timed("network enumeration determinism", enumeration_determinism),
    ];
    let passed = runs.iter().all(Result::is_ok);
    let detail: Vec<String> = runs
        .into_iter()
        .map(|r| r.unwrap_or_else(|e| format!("FAILED: {}", e)))
        .collect();
    outcome(passed, detail.join("; "))
}

fn main() {
    let mut results = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
    ];

    let start = Instant::now();
    let cells = sweep_cells();
    let elapsed = start.elapsed();
    results.push((5, criterion_5(&cells, elapsed)));
    results.push((6, criterion_6(&cells)));
    results.push((7, criterion_7(&cells)));
    results.push((8, criterion_8(&cells)));
    results.push((9, criterion_9()));

    for (n, o) in &results {
        println!(
            "criterion {}: {} — {}",
            n,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed: Vec<usize> = results.iter().filter(|(_, o)| !o.passed).map(|(n, _)| *n).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed);
        std::process::exit(1);
    }
}
