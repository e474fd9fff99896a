//! Dispatch from `(type, c, k, m)` to the right network computation, with the
//! representation-theoretic minor as an independent cross-check.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::coeffring::{eval_all_zero, is_integer_poly, monomial_sqrt, Polynomial};
use crate::network::{
    build_network, enumerate_families, signed_sum_of, spin_sum_of, LayeredNetwork, NetworkError, PathFamily, Variant,
};
use crate::rep::{principal_minor, RepError, Representation};
use crate::weyl::{
    coxeter_apply, fundamental_label, height, w0_label, CoxeterWord, Family, LabelKind, LieType, WeightLabel, WeylError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("m = {m} outside [0, h(k;c)] = [0, {h}]")]
    MOutOfRange { m: usize, h: usize },
    #[error("coxeter word {0} does not match {1}")]
    WordMismatch(String, LieType),
    #[error("methods disagree:\n  paths: {paths}\n  rep:   {rep}")]
    Disagreement { paths: Polynomial, rep: Polynomial },
    #[error("{poly} is not a valid F-polynomial: {reason}")]
    InvalidResult { poly: Polynomial, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Paths,
    Rep,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRequest {
    pub ty: LieType,
    pub c: CoxeterWord,
    pub k: usize,
    pub m: usize,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FResult {
    pub k: usize,
    pub m: usize,
    pub polynomial: Polynomial,
    pub label: WeightLabel,
    pub h: usize,
    pub paths: Option<Polynomial>,
    pub rep: Option<Polynomial>,
    /// Set when both methods ran.
    pub agreement: Option<bool>,
}

/// Everything the path route produced for one label.
#[derive(Debug, Clone)]
pub struct PathComputation {
    pub network: LayeredNetwork,
    pub label: WeightLabel,
    pub bundled: bool,
    pub families: Vec<PathFamily>,
}

impl PathComputation {
    pub fn polynomial(&self) -> Result<Polynomial, NetworkError> {
        let n = self.network.rank();
        if self.bundled {
            spin_sum_of(n, &self.families)
        } else {
            Ok(signed_sum_of(n, &self.families))
        }
    }

    /// Whether the no-crossing property is expected for this label: D wedge
    /// labels and every B vector-network label.
    pub fn expects_no_crossings(&self) -> bool {
        matches!(self.network.scheme().variant(), Variant::DVector | Variant::BVector) && !self.bundled
    }
}

fn network_variant(ty: LieType, label: &WeightLabel) -> Variant {
    match (ty.family(), label.kind()) {
        (Family::B, LabelKind::Spin(_)) => Variant::BSpin,
        (f, _) => Variant::vector(f),
    }
}

/// Families for `label` on the network its type and kind call for: unsigned
/// bundled families for spin labels, plain families otherwise.
pub fn path_computation(ty: LieType, c: &CoxeterWord, label: &WeightLabel) -> Result<PathComputation, EngineError> {
    let variant = network_variant(ty, label);
    let network = build_network(variant, ty.rank(), c)?;
    let bundled = label.is_spin();
    let families = enumerate_families(&network, label, bundled)?;
    Ok(PathComputation {
        network,
        label: label.clone(),
        bundled,
        families,
    })
}

/// `c^m * omega_k` together with `h(k;c)`; rejects `m > h`.
pub fn extremal_label(ty: LieType, c: &CoxeterWord, k: usize, m: usize) -> Result<(WeightLabel, usize), EngineError> {
    if c.rank() != ty.rank() {
        return Err(EngineError::WordMismatch(c.to_string(), ty));
    }
    let base = fundamental_label(ty, k)?;
    let h = height(ty, c, &base)?;
    if m > h {
        return Err(EngineError::MOutOfRange { m, h });
    }
    Ok((coxeter_apply(ty, c, &base, m), h))
}

/// Positive integer coefficients and constant term 1.
pub fn validate_f_polynomial(p: &Polynomial) -> Result<(), EngineError> {
    let fail = |reason: &str| {
        Err(EngineError::InvalidResult {
            poly: p.clone(),
            reason: reason.into(),
        })
    };
    if !is_integer_poly(p) {
        return fail("sqrt2 part does not cancel");
    }
    if !eval_all_zero(p).is_one() {
        return fail("constant term is not 1");
    }
    if !p.has_positive_integer_coeffs() {
        return fail("non-positive coefficient");
    }
    Ok(())
}

pub fn f_polynomial(req: &FRequest) -> Result<FResult, EngineError> {
    let (label, h) = extremal_label(req.ty, &req.c, req.k, req.m)?;
    let paths = match req.method {
        Method::Paths | Method::Both => Some(path_computation(req.ty, &req.c, &label)?.polynomial()?),
        Method::Rep => None,
    };
    let rep = match req.method {
        Method::Rep | Method::Both => Some(principal_minor(
            Representation::for_label(req.ty, &label),
            &req.c,
            &label,
        )?),
        Method::Paths => None,
    };
    let agreement = match (&paths, &rep) {
        (Some(p), Some(r)) if p != r => {
            return Err(EngineError::Disagreement {
                paths: p.clone(),
                rep: r.clone(),
            });
        }
        (Some(_), Some(_)) => Some(true),
        _ => None,
    };
    let polynomial = paths.clone().or_else(|| rep.clone()).expect("at least one method ran");
    validate_f_polynomial(&polynomial)?;
    Ok(FResult {
        k: req.k,
        m: req.m,
        polynomial,
        label,
        h,
        paths,
        rep,
        agreement,
    })
}

/// All `(k, m)` with `k` in `1..=n` and `m` in `0..=h(k;c)`, keyed by `(k, m)`.
pub fn f_table(ty: LieType, c: &CoxeterWord, method: Method) -> Result<BTreeMap<(usize, usize), FResult>, EngineError> {
    let cells = table_cells(ty, c)?;
    let results: Vec<Result<FResult, EngineError>> = cells
        .par_iter()
        .map(|&(k, m)| {
            f_polynomial(&FRequest {
                ty,
                c: c.clone(),
                k,
                m,
                method,
            })
        })
        .collect();
    let mut out = BTreeMap::new();
    for r in results {
        let r = r?;
        out.insert((r.k, r.m), r);
    }
    Ok(out)
}

fn table_cells(ty: LieType, c: &CoxeterWord) -> Result<Vec<(usize, usize)>, EngineError> {
    if c.rank() != ty.rank() {
        return Err(EngineError::WordMismatch(c.to_string(), ty));
    }
    let mut cells = Vec::new();
    for k in 1..=ty.rank() {
        let h = height(ty, c, &fundamental_label(ty, k)?)?;
        cells.extend((0..=h).map(|m| (k, m)));
    }
    Ok(cells)
}

/// The fixed Coxeter-word test set: natural, reversed, bipartite (odd indices
/// then even), and three seeded random permutations, deduplicated.
pub fn test_words(n: usize) -> Vec<CoxeterWord> {
    let natural: Vec<usize> = (1..=n).collect();
    let reversed: Vec<usize> = natural.iter().rev().copied().collect();
    let bipartite: Vec<usize> = natural
        .iter()
        .copied()
        .filter(|i| i % 2 == 1)
        .chain(natural.iter().copied().filter(|i| i % 2 == 0))
        .collect();
    let mut words = vec![natural.clone(), reversed, bipartite];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    for _ in 0..3 {
        let mut w = natural.clone();
        w.shuffle(&mut rng);
        words.push(w);
    }
    let mut out: Vec<CoxeterWord> = Vec::new();
    for w in words {
        let w = CoxeterWord::new(w).expect("permutation");
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub k: usize,
    pub m: usize,
    pub h: usize,
    pub label: Option<WeightLabel>,
    pub polynomial: Option<Polynomial>,
    pub families: usize,
    pub checks: Vec<Check>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub ty: LieType,
    pub c: CoxeterWord,
    pub cells: Vec<CellReport>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        !self.cells.is_empty() && self.cells.iter().all(CellReport::passed)
    }

    pub fn first_failure(&self) -> Option<(&CellReport, &Check)> {
        self.cells
            .iter()
            .find_map(|cell| cell.checks.iter().find(|c| !c.passed).map(|c| (cell, c)))
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{} c={}: all (k,m) agree ({} cells)", self.ty, self.c, self.cells.len()),
            Some((cell, check)) => format!(
                "{} c={}: FAILED at k={} m={}: {}: {}",
                self.ty, self.c, cell.k, cell.m, check.name, check.detail
            ),
        }
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cell in &self.cells {
            let label = cell.label.as_ref().map(|l| l.to_string()).unwrap_or_else(|| "?".into());
            let poly = cell
                .polynomial
                .as_ref()
                .map(|p| p.to_string())
                .unwrap_or_else(|| "-".into());
            let status = if cell.passed() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "k={} m={} h={} label={} families={} [{}] {}",
                cell.k, cell.m, cell.h, label, cell.families, status, poly
            )?;
            for c in cell.checks.iter().filter(|c| !c.passed) {
                writeln!(f, "    {}: {}", c.name, c.detail)?;
            }
        }
        write!(f, "{}", self.summary())
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn crosscheck_cell(ty: LieType, c: &CoxeterWord, k: usize, m: usize) -> CellReport {
    let mut report = CellReport {
        k,
        m,
        h: 0,
        label: None,
        polynomial: None,
        families: 0,
        checks: Vec::new(),
    };
    let base = match fundamental_label(ty, k) {
        Ok(b) => b,
        Err(e) => {
            report.checks.push(check("label", false, e.to_string()));
            return report;
        }
    };
    match height(ty, c, &base) {
        Ok(h) => {
            report.h = h;
            let reaches = coxeter_apply(ty, c, &base, h) == w0_label(ty, &base);
            report.checks.push(check(
                "height",
                reaches && h >= 1 && h <= ty.coxeter_number(),
                format!("h={} coxeter number={}", h, ty.coxeter_number()),
            ));
        }
        Err(e) => {
            report.checks.push(check("height", false, e.to_string()));
            return report;
        }
    }
    let label = coxeter_apply(ty, c, &base, m);
    report.label = Some(label.clone());

    let paths = path_computation(ty, c, &label);
    let rep = principal_minor(Representation::for_label(ty, &label), c, &label);
    let comp = match paths {
        Ok(comp) => comp,
        Err(e) => {
            report.checks.push(check("paths", false, e.to_string()));
            return report;
        }
    };
    report.families = comp.families.len();

    report.checks.push(check(
        "vertex-disjoint",
        comp.families.iter().all(PathFamily::is_vertex_disjoint),
        "every family is vertex-disjoint",
    ));
    if comp.expects_no_crossings() {
        let crossed = comp.families.iter().filter(|f| f.crossings > 0).count();
        report.checks.push(check(
            "no-crossing",
            crossed == 0,
            format!("{} families with crossings", crossed),
        ));
    }
    if comp.bundled {
        let bad = comp
            .families
            .iter()
            .filter(|f| monomial_sqrt(&f.monomial, &f.coeff).is_err())
            .count();
        report.checks.push(check(
            "perfect-square",
            bad == 0,
            format!("{} non-square bundled weights", bad),
        ));
    }

    let poly = match comp.polynomial() {
        Ok(p) => p,
        Err(e) => {
            report.checks.push(check("paths", false, e.to_string()));
            return report;
        }
    };
    match rep {
        Ok(r) => report
            .checks
            .push(check("agreement", r == poly, format!("paths: {} | rep: {}", poly, r))),
        Err(e) => report.checks.push(check("agreement", false, e.to_string())),
    }
    report
        .checks
        .push(check("integrality", is_integer_poly(&poly), poly.to_string()));
    report
        .checks
        .push(check("constant-term", eval_all_zero(&poly).is_one(), poly.to_string()));
    report.checks.push(check(
        "positivity",
        poly.has_positive_integer_coeffs(),
        poly.to_string(),
    ));
    report.polynomial = Some(poly);
    report
}

/// Runs both pipelines on every `(k, m)` and records each check; failures are
/// report entries rather than errors.
pub fn crosscheck(ty: LieType, c: &CoxeterWord) -> CrosscheckReport {
    let cells = match table_cells(ty, c) {
        Ok(cells) => cells,
        Err(e) => {
            let cell = CellReport {
                k: 0,
                m: 0,
                h: 0,
                label: None,
                polynomial: None,
                families: 0,
                checks: vec![check("setup", false, e.to_string())],
            };
            return CrosscheckReport {
                ty,
                c: c.clone(),
                cells: vec![cell],
            };
        }
    };
    let mut reports: Vec<CellReport> = cells.par_iter().map(|&(k, m)| crosscheck_cell(ty, c, k, m)).collect();
    reports.sort_by_key(|r| (r.k, r.m));
    CrosscheckReport {
        ty,
        c: c.clone(),
        cells: reports,
    }
}
