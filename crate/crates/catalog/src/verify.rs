use std::fmt::Write as _;

use digraph::{spectral_radius, Method};
use fiberedface::{bound_check, class_report, BoundVerdict, FiberedFaceData, Relation};
use moves::{run_folding_sequence, Script};
use num_rational::BigRational;
use num_traits::Pow;
use polyexact::rational::{parse_rational, ten_to_minus, to_decimal};
use polyexact::{char_poly, largest_real_root, IntMatrix, IntPoly, RootBracket};
use rayon::prelude::*;
use serde::Serialize;
use traintrack::models::tau_model;
use weights::{radical_span_report, reciprocity_certificate};

use crate::entry::{BoundOutcome, CatalogEntry, MatrixSource, Payload};
use crate::perm::permutation_equivalent;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub kind: String,
    pub description: String,
    pub provisional: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<RootBracket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_abs: Option<u32>,
    /// `L = λ^K` bracket as decimals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_bracket: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub punctures: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularity: Option<Vec<Vec<usize>>>,
}

impl EntryReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<EntryReport>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Whether `[lo, hi]` lies within one unit of the last digit of `text`.
pub fn matches_decimal(lo: &BigRational, hi: &BigRational, text: &str) -> bool {
    let Ok(v) = parse_rational(text) else { return false };
    let digits = text.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
    let unit = ten_to_minus(digits);
    lo > &(&v - &unit) && hi < &(&v + &unit)
}

struct Ctx<'a> {
    e: &'a CatalogEntry,
    tol: &'a BigRational,
    cap: usize,
    checks: Vec<Check>,
    lambda: Option<RootBracket>,
}

impl Ctx<'_> {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    fn fail(&mut self, name: &str, err: impl std::fmt::Display) {
        self.push(name, false, err.to_string());
    }

    fn expect_char_poly(&mut self, got: &IntPoly) {
        if let Some(want) = &self.e.expected.char_poly {
            let ok = want == got;
            self.push("char-poly", ok, format!("got {got}, expected {want}"));
        }
    }

    /// Both spectral routes on a Perron-Frobenius matrix; they must agree to `1e-8`.
    fn spectral(&mut self, m: &IntMatrix) {
        let by_poly = match spectral_radius(m, Method::Charpoly, self.tol, self.cap) {
            Ok(r) => r,
            Err(err) => return self.fail("spectral-charpoly", err),
        };
        match spectral_radius(m, Method::Clique, self.tol, self.cap) {
            Ok(r) => {
                let slack = ten_to_minus(8);
                let ok = r.lo <= &by_poly.hi + &slack && by_poly.lo <= &r.hi + &slack;
                self.push("clique-route", ok, format!("clique {:.12}, charpoly {:.12}", r.value, by_poly.value));
            }
            Err(err) => self.fail("clique-route", err),
        }
        self.lambda = Some(by_poly);
    }

    fn run_script(&mut self, rel: &str) {
        let script = match Script::load(self.e.resolve(rel)) {
            Ok(s) => s,
            Err(err) => return self.fail("load", err),
        };
        let r = match run_folding_sequence(&script) {
            Ok(r) => r,
            Err(err) => return self.fail("folding-sequence", err),
        };
        self.push("folding-sequence", true, format!("{} moves", r.records.len()));
        self.push("perron-frobenius", r.perron_frobenius, "real block");
        let cert = reciprocity_certificate(&r);
        self.push(
            "reciprocity-certificate",
            cert.passed,
            format!(
                "form preserved {}, radical reciprocal {}, quotient symplectic {}, real reciprocal {}",
                cert.preserves_form, cert.radical_reciprocal, cert.quotient_symplectic, cert.real_reciprocal
            ),
        );
        self.expect_char_poly(&r.real_char_poly);
        if let Some(want) = self.e.expected.matrix_up_to_permutation.clone() {
            let found = permutation_equivalent(&r.real_block, &want);
            self.push("matrix", found.is_some(), format!("{}x{} real block", want.nrows(), want.ncols()));
        }
        let k = -r.start.euler_characteristic();
        if let Some(want) = self.e.chi_abs() {
            self.push("euler-characteristic", k == want as i64, format!("|χ| = {k}, expected {want}"));
        }
        if let Some(sing) = &self.e.singularity {
            let mut want: Vec<usize> = sing.iter().flatten().copied().collect();
            want.sort_unstable_by(|a, b| b.cmp(a));
            let got = r.start.prong_profile();
            self.push("singularity", got == want, format!("prongs {got:?}, expected {want:?}"));
        }
        if let Some(want) = self.e.orbit_count() {
            match r.boundary_map() {
                Some(map) => {
                    let got = cycle_count(&map);
                    self.push("orbits", got == want, format!("{got} puncture orbits, expected {want}"));
                }
                None => self.push("orbits", false, "boundary relation is not a permutation"),
            }
        }
        self.spectral(&r.real_block);
    }

    fn run_matrix(&mut self, src: &MatrixSource) {
        let m = match src {
            MatrixSource::Inline(m) => m.clone(),
            MatrixSource::Path(p) => match load_matrix(&self.e.resolve(p)) {
                Ok(m) => m,
                Err(err) => return self.fail("load", err),
            },
        };
        match char_poly(&m) {
            Ok(p) => self.expect_char_poly(&p),
            Err(err) => return self.fail("char-poly", err),
        }
        self.spectral(&m);
    }

    fn run_sl2z(&mut self, a: [[i64; 2]; 2]) {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let tr = a[0][0] + a[1][1];
        self.push("sl2z", det == 1, format!("det {det}"));
        self.push("hyperbolic", tr.abs() > 2, format!("trace {tr}"));
        let p = IntPoly::from_i64(&[1, -tr, 1]);
        self.expect_char_poly(&p);
        // spectral radius of ±A
        let q = IntPoly::from_i64(&[1, -tr.abs(), 1]);
        match largest_real_root(&q, self.tol) {
            Ok(r) => self.lambda = Some(r),
            Err(err) => self.fail("spectral", err),
        }
    }

    fn run_polynomial(&mut self, p: &IntPoly) {
        self.expect_char_poly(p);
        match largest_real_root(p, self.tol) {
            Ok(r) => self.lambda = Some(r),
            Err(err) => self.fail("largest-root", err),
        }
    }

    fn run_class(&mut self, dataset: &str, class: &[i64]) {
        let data = match FiberedFaceData::load(self.e.resolve(dataset)) {
            Ok(d) => d,
            Err(err) => return self.fail("load", err),
        };
        match class_report(&data, class, self.tol) {
            Ok(r) => {
                self.expect_char_poly(&r.specialized);
                if let Some(want) = self.e.chi_abs() {
                    self.push("alexander-norm", r.norm == want as u64, format!("norm {}, |χ| {want}", r.norm));
                }
                self.lambda = Some(r.lambda);
            }
            Err(err) => self.fail("class-report", err),
        }
    }

    fn run_tau(&mut self, n: usize) {
        let t = tau_model(n);
        self.push("standardly-embedded", t.is_standardly_embedded(), format!("τ_{n}"));
        let rep = radical_span_report(&t);
        let detail = format!(
            "weight dim {}, radical dim {}, {} elements spanning {} ({} relations)",
            rep.weight_dim, rep.radical_dim, rep.elements, rep.span_dim, rep.relations
        );
        match self.e.expected.radical {
            Some(want) => {
                let ok = rep.equal == want.equal && rep.relations == want.relations;
                self.push("radical", ok, detail);
            }
            None => self.push("radical", rep.equal, detail),
        }
    }
}

fn cycle_count(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut count = 0;
    for s in 0..map.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
        }
    }
    count
}

pub fn load_matrix(path: &std::path::Path) -> Result<IntMatrix, crate::CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| crate::CatalogError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text)
        .map_err(|e| crate::CatalogError::Parse { path: path.display().to_string(), why: e.to_string() })
}

pub fn verify_entry(e: &CatalogEntry, tol: &BigRational, cycle_cap: usize) -> EntryReport {
    let mut cx = Ctx { e, tol, cap: cycle_cap, checks: Vec::new(), lambda: None };
    match &e.payload {
        Payload::FoldingScript { script } => cx.run_script(script),
        Payload::Matrix { matrix } => cx.run_matrix(matrix),
        Payload::Sl2z { matrix } => cx.run_sl2z(*matrix),
        Payload::Polynomial { poly } => cx.run_polynomial(poly),
        Payload::FiberedClass { dataset, class } => cx.run_class(dataset, class),
        Payload::TauModel { n } => cx.run_tau(*n),
    }
    let k = e.chi_abs();
    let mut report = EntryReport {
        id: e.id.clone(),
        kind: e.kind().to_string(),
        description: e.description.clone(),
        provisional: e.provisional,
        passed: false,
        checks: Vec::new(),
        lambda: None,
        chi_abs: k,
        l_bracket: None,
        l_value: None,
        bound: None,
        genus: e.surface.map(|s| s.genus),
        punctures: e.surface.map(|s| s.punctures),
        singularity: e.singularity.clone(),
    };
    if let Some(lam) = cx.lambda.take() {
        if let Some(want) = &e.expected.lambda {
            let ok = matches_decimal(&lam.lo, &lam.hi, want);
            cx.push("lambda", ok, format!("λ ∈ [{}, {}], expected ≈ {want}", to_decimal(&lam.lo, 10), to_decimal(&lam.hi, 10)));
        }
        if let Some(k) = k {
            let lo = Pow::pow(&lam.lo, k);
            let hi = Pow::pow(&lam.hi, k);
            if let Some(want) = &e.expected.l_value {
                let ok = matches_decimal(&lo, &hi, want);
                cx.push("l-value", ok, format!("L ∈ [{}, {}], expected ≈ {want}", to_decimal(&lo, 6), to_decimal(&hi, 6)));
            }
            report.l_value = Some(polyexact::rational::to_f64(&((&lo + &hi) / BigRational::from_integer(2.into()))));
            report.l_bracket = Some([to_decimal(&lo, 9), to_decimal(&hi, 9)]);
            let multi = e.orbit_count().is_some_and(|o| o >= 2);
            match bound_check(&lam, k, multi) {
                Ok(v) => {
                    if let Some(want) = e.expected.bound {
                        let got = if v.satisfied() && v.sharp == Relation::Equal {
                            BoundOutcome::Sharp
                        } else if v.satisfied() {
                            BoundOutcome::Satisfied
                        } else {
                            BoundOutcome::Violated
                        };
                        let ok = got == want || (want == BoundOutcome::Satisfied && got == BoundOutcome::Sharp);
                        cx.push("bound", ok, format!("{got:?} (μ⁴: {:?}, refined: {:?}), expected {want:?}", v.mu4, v.sharp));
                    }
                    if e.orbit_count().is_some() {
                        cx.push("orbit-consistency", v.consistent(), format!("{} orbits", e.orbit_count().unwrap()));
                    }
                    report.bound = Some(v);
                }
                Err(err) => cx.fail("bound", err),
            }
        }
        report.lambda = Some(lam);
    }
    report.passed = !cx.checks.is_empty() && cx.checks.iter().all(|c| c.passed);
    report.checks = cx.checks;
    report
}

/// Verify every entry matching `filters`, in parallel; reports are ordered by id.
pub fn verify_all(
    entries: &[CatalogEntry],
    filters: &[(String, String)],
    tol: &BigRational,
    cycle_cap: usize,
) -> Summary {
    let mut reports: Vec<EntryReport> = entries
        .par_iter()
        .filter(|e| e.matches(filters))
        .map(|e| verify_entry(e, tol, cycle_cap))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = reports.iter().filter(|r| r.passed).count();
    Summary { total: reports.len(), passed, failed: reports.len() - passed, entries: reports }
}

fn singularity_text(s: &Option<Vec<Vec<usize>>>) -> String {
    match s {
        None => "-".into(),
        Some(orbits) => {
            let parts: Vec<String> = orbits
                .iter()
                .map(|o| o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            format!("({})", parts.join(" | "))
        }
    }
}

/// Plain-text table: one row per entry, then a pass count.
pub fn human_table(s: &Summary) -> String {
    let header = ["id", "g", "s", "singularity", "λ", "L", "bound", "verdict"];
    let rows: Vec<[String; 8]> = s
        .entries
        .iter()
        .map(|r| {
            let opt = |x: Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
            let bound = r.bound.as_ref().map_or("-".to_string(), |b| {
                if !b.satisfied() {
                    "violated".into()
                } else if b.attains_sharp_bound() {
                    "sharp".into()
                } else {
                    "holds".into()
                }
            });
            let verdict = match (r.passed, r.provisional) {
                (true, false) => "pass",
                (true, true) => "pass (provisional)",
                (false, _) => "FAIL",
            };
            [
                r.id.clone(),
                opt(r.genus),
                opt(r.punctures),
                singularity_text(&r.singularity),
                r.lambda.as_ref().map_or("-".into(), |l| format!("{:.6}", l.value)),
                r.l_value.map_or("-".into(), |l| format!("{l:.4}")),
                bound,
                verdict.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
        if !row[7].starts_with("pass") {
            let r = s.entries.iter().find(|r| r.id == row[0]).unwrap();
            for c in r.checks.iter().filter(|c| !c.passed) {
                writeln!(out, "    {}: {}", c.name, c.detail).unwrap();
            }
        }
    }
    write!(out, "{}/{} pass", s.passed, s.total).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyexact::rational::rat;

    #[test]
    fn decimal_matching() {
        assert!(matches_decimal(&rat(5106, 1000), &rat(5107, 1000), "5.10"));
        assert!(matches_decimal(&rat(2618, 1000), &rat(2619, 1000), "2.62"));
        assert!(!matches_decimal(&rat(2630, 1000), &rat(2631, 1000), "2.62"));
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_count(&[1, 0, 2]), 2);
        assert_eq!(cycle_count(&[]), 0);
    }
}
