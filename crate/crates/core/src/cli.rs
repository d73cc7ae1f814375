//! Commands behind the `evenset` binary, returning structured reports.
//!
//! Every command yields an [`Outcome`]: a [`Report`] that renders either
//! as text or as JSON, and the process exit code (0 pass, 1 verification
//! failure, 2 parse or usage error).

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{self, CatalogError, Expected};
use crate::config::{self, ConfigFile, ParseError};
use crate::doublecover::{self, BoundCheck, CoverClassification, Regularity};
use crate::evenset::{nef_reduction, verify_even_set, EvenSetError, EvenSetReport, IdentityCheck, Nefness};
use crate::fibers::{self, BudgetReport, ContractionStep, FiberError, FiberType};
use crate::lattice::{Ambient, DivClass, SurfaceLattice};
use crate::search::{self, SearchOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenSetSection {
    pub ambient: Ambient,
    pub k: usize,
    pub n: usize,
    pub curves: Vec<String>,
    pub half_class: String,
    pub kx2: i64,
    pub anticanonical: bool,
    pub checks: Vec<IdentityCheck>,
    pub nefness: Nefness,
}

impl EvenSetSection {
    fn new(r: &EvenSetReport) -> Self {
        let lat = r.lattice;
        EvenSetSection {
            ambient: lat.ambient(),
            k: lat.k(),
            n: r.n,
            curves: r.curves.iter().map(|c| lat.format(c)).collect(),
            half_class: lat.format(&r.half_class),
            kx2: r.kx2,
            anticanonical: r.half_is_anticanonical(),
            checks: r.checks.clone(),
            nefness: r.nefness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionSection {
    pub contracted: Vec<String>,
    pub even_set: EvenSetSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub name: String,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_type: Option<FiberType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    pub history: Vec<ContractionStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub description: String,
    pub passed: bool,
    pub expected: Expected,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<Expected>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halphen_index: Option<u32>,
    pub fiber_types: Vec<FiberType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSection {
    pub options: SearchOptions,
    pub classes: usize,
    pub sets: Vec<Vec<Vec<i64>>>,
    pub formatted: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_set: Option<EvenSetSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<CoverClassification>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<FiberReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<CatalogRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    fn new(command: &str, input: Option<&str>) -> Self {
        Report {
            command: command.to_string(),
            input: input.map(str::to_string),
            passed: false,
            even_set: None,
            reduction: None,
            classification: None,
            fibers: Vec::new(),
            budget: None,
            catalog: Vec::new(),
            search: None,
            warnings: Vec::new(),
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

impl Outcome {
    fn pass(mut report: Report) -> Self {
        report.passed = true;
        Outcome { report, exit: EXIT_OK }
    }

    fn fail(mut report: Report, error: ErrorInfo) -> Self {
        report.passed = false;
        report.error = Some(error);
        Outcome { report, exit: EXIT_FAIL }
    }

    fn usage(mut report: Report, error: ErrorInfo) -> Self {
        report.passed = false;
        report.error = Some(error);
        Outcome { report, exit: EXIT_USAGE }
    }
}

fn parse_error(e: &ParseError) -> ErrorInfo {
    ErrorInfo { kind: "ParseError".into(), message: e.message.clone(), line: (e.line > 0).then_some(e.line) }
}

fn even_set_error(e: &EvenSetError, cfg: &ConfigFile) -> ErrorInfo {
    let (kind, line) = match e {
        EvenSetError::Lattice(_) => ("LatticeError", None),
        EvenSetError::Empty => ("Empty", None),
        EvenSetError::NotMinus4(i) => ("NotMinus4", Some(cfg.curve_line(*i))),
        EvenSetError::Duplicate(_, j) => ("Duplicate", Some(cfg.curve_line(*j))),
        EvenSetError::NotDisjoint(_, j) => ("NotDisjoint", Some(cfg.curve_line(*j))),
        EvenSetError::NotTwoDivisible(_) => ("NotTwoDivisible", None),
        EvenSetError::IdentityViolation(_) => ("IdentityViolation", None),
        EvenSetError::NotMinusOne(i) => ("NotMinusOne", Some(cfg.minus_one_line(*i))),
        EvenSetError::NonBasisContraction(i) => ("NonBasisContraction", Some(cfg.minus_one_line(*i))),
    };
    ErrorInfo { kind: kind.into(), message: e.to_string(), line: line.filter(|&l| l > 0) }
}

fn fiber_error(e: &FiberError, line: usize) -> ErrorInfo {
    let kind = match e {
        FiberError::NotAFiber(_) => "NotAFiber",
        FiberError::NotContractible { .. } => "NotContractible",
        FiberError::UnknownComponent(_) => "UnknownComponent",
        FiberError::UnrecognizedType(_) => "UnrecognizedType",
        FiberError::BudgetExceeded { .. } => "BudgetExceeded",
        FiberError::InvalidBudgetTotal(_) => "InvalidBudgetTotal",
        FiberError::NotInTable(_) => "NotInTable",
        FiberError::OddDegree(_) => "OddDegree",
        FiberError::NoBranchPoints(_) => "NoBranchPoints",
        FiberError::RamificationOutOfRange { .. } => "RamificationOutOfRange",
        FiberError::Lattice(_) => "LatticeError",
    };
    ErrorInfo { kind: kind.into(), message: e.to_string(), line: (line > 0).then_some(line) }
}

const NEFNESS_WARNING: &str = "nefness of K_X + L is not decidable from lattice data; results are conditional on it";

// verification shared by `verify` and `classify`
fn run_even_set(command: &str, text: &str, input: Option<&str>) -> Result<(Report, ConfigFile, EvenSetReport), Outcome> {
    let mut report = Report::new(command, input);
    let cfg = match config::parse(text) {
        Ok(cfg) => cfg,
        Err(e) => return Err(Outcome::usage(report, parse_error(&e))),
    };
    let (lat, curves) = match cfg.even_set() {
        Ok(x) => x,
        Err(e) => return Err(Outcome::usage(report, parse_error(&e))),
    };
    let verified = match verify_even_set(&lat, curves) {
        Ok(r) => r,
        Err(e) => {
            let info = even_set_error(&e, &cfg);
            return Err(Outcome::fail(report, info));
        }
    };
    report.even_set = Some(EvenSetSection::new(&verified));
    report.warnings.push(NEFNESS_WARNING.into());

    let mut current = verified;
    if !cfg.minus_ones.is_empty() {
        match nef_reduction(&current, &cfg.minus_ones) {
            Ok((reduced, contracted)) => {
                let lat = current.lattice;
                report.reduction = Some(ReductionSection {
                    contracted: contracted.iter().map(|d| lat.format(d)).collect(),
                    even_set: EvenSetSection::new(&reduced),
                });
                current = reduced;
            }
            Err(e) => {
                let info = even_set_error(&e, &cfg);
                return Err(Outcome::fail(report, info));
            }
        }
    }
    Ok((report, cfg, current))
}

/// A file that could not be read.
pub fn io_error(command: &str, input: &str, message: String) -> Outcome {
    Outcome::usage(Report::new(command, Some(input)), ErrorInfo { kind: "IoError".into(), message, line: None })
}

pub fn verify(text: &str, input: Option<&str>) -> Outcome {
    match run_even_set("verify", text, input) {
        Ok((report, _, _)) => Outcome::pass(report),
        Err(outcome) => outcome,
    }
}

pub fn classify(text: &str, input: Option<&str>, regularity: Option<Regularity>) -> Outcome {
    let (mut report, cfg, current) = match run_even_set("classify", text, input) {
        Ok(x) => x,
        Err(outcome) => return outcome,
    };
    let regularity = regularity.or(cfg.regularity).unwrap_or_default();
    let c = doublecover::classify_with(&current, regularity);
    let verdict = c.verdict.clone();
    report.classification = Some(c);
    match verdict {
        doublecover::Verdict::Infeasible(reason) => {
            Outcome::fail(report, ErrorInfo { kind: "Infeasible".into(), message: reason, line: None })
        }
        _ => Outcome::pass(report),
    }
}

pub fn fiber(text: &str, input: Option<&str>, budget: Option<i64>) -> Outcome {
    let mut report = Report::new("fiber", input);
    let cfg = match config::parse(text) {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::usage(report, parse_error(&e)),
    };
    if cfg.fibers.is_empty() {
        return Outcome::usage(report, ErrorInfo { kind: "ParseError".into(), message: "no `fiber` sections".into(), line: None });
    }
    if let Some(total) = budget {
        if total != 12 && total != 24 {
            let e = FiberError::InvalidBudgetTotal(total);
            return Outcome::usage(report, fiber_error(&e, 0));
        }
    }

    let mut first_error = None;
    let mut known = Vec::new();
    for section in &cfg.fibers {
        let mut fr = FiberReport {
            name: section.name.clone(),
            components: section.config.components.len(),
            fiber_type: None,
            multiplicity: None,
            history: Vec::new(),
            error: None,
        };
        match fibers::classify(&section.config) {
            Ok(c) => {
                match &c.fiber_type {
                    FiberType::Known(t) => known.push(t.clone()),
                    FiberType::Ambiguous(_) => report.warnings.push(format!(
                        "fiber {}: {}; tangency or concurrency data is missing",
                        section.name, c.fiber_type
                    )),
                }
                fr.fiber_type = Some(c.fiber_type);
                fr.multiplicity = Some(c.multiplicity);
                fr.history = c.history;
            }
            Err(e) => {
                let info = fiber_error(&e, section.line);
                first_error.get_or_insert_with(|| info.clone());
                fr.error = Some(info);
            }
        }
        report.fibers.push(fr);
    }
    if let Some(info) = first_error {
        return Outcome::fail(report, info);
    }
    if let Some(total) = budget {
        if known.len() < cfg.fibers.len() {
            report.warnings.push("ambiguous fibers are left out of the budget".into());
        }
        match fibers::c2_budget(&known, total) {
            Ok(b) => report.budget = Some(b),
            Err(e) => return Outcome::fail(report, fiber_error(&e, 0)),
        }
    }
    Outcome::pass(report)
}

pub fn search(opts: &SearchOptions) -> Outcome {
    let report = Report::new("search", None);
    let result = match search::search(opts) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(report, ErrorInfo { kind: "BoundsTooLarge".into(), message: e.to_string(), line: None }),
    };
    let lat = SurfaceLattice::new(opts.ambient, opts.k);
    let formatted = result
        .sets
        .iter()
        .map(|set| set.iter().map(|v| lat.format(&DivClass::from_i64s(v))).collect())
        .collect();
    let mut report = report;
    report.search = Some(SearchSection { options: result.options, classes: result.classes, sets: result.sets, formatted });
    Outcome::pass(report)
}

fn catalog_row(entry: &catalog::CatalogEntry) -> CatalogRow {
    let mut row = CatalogRow {
        name: entry.name.clone(),
        description: entry.description.clone(),
        passed: false,
        expected: entry.expected.clone(),
        computed: None,
        halphen_index: entry.halphen_index,
        fiber_types: Vec::new(),
        budget: None,
        error: None,
    };
    match catalog::check(entry) {
        Ok(c) => {
            row.passed = c.passed();
            row.computed = Some(c.computed);
            row.fiber_types = c.fiber_types;
            row.budget = c.budget;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Check one named entry, or all of them when `name` is `None`.
pub fn catalog(name: Option<&str>) -> Outcome {
    let mut report = Report::new("catalog", name);
    let entries = match name {
        Some(n) => match catalog::build(n) {
            Ok(e) => vec![e],
            Err(e @ CatalogError::UnknownEntry(_)) => {
                return Outcome::fail(report, ErrorInfo { kind: "UnknownEntry".into(), message: e.to_string(), line: None })
            }
            Err(e) => return Outcome::fail(report, ErrorInfo { kind: "CatalogError".into(), message: e.to_string(), line: None }),
        },
        None => catalog::build_all(),
    };
    report.catalog = entries.iter().map(catalog_row).collect();
    if let Some(bad) = report.catalog.iter().find(|r| !r.passed) {
        let message = format!("entry {} does not reproduce its expected classification", bad.name);
        return Outcome::fail(report, ErrorInfo { kind: "CatalogMismatch".into(), message, line: None });
    }
    Outcome::pass(report)
}

/// Config text of a catalog entry.
pub fn catalog_export(name: &str) -> Result<String, CatalogError> {
    catalog::build(name).map(|e| config::export_entry(&e))
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

struct Painter {
    color: bool,
}

impl Painter {
    fn mark(&self, ok: bool) -> String {
        match (ok, self.color) {
            (true, true) => "\x1b[32m[ok]\x1b[0m".into(),
            (false, true) => "\x1b[31m[FAIL]\x1b[0m".into(),
            (true, false) => "[ok]".into(),
            (false, false) => "[FAIL]".into(),
        }
    }

    fn warn(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[33mwarning:\x1b[0m {s}")
        } else {
            format!("warning: {s}")
        }
    }
}

fn render_even_set(out: &mut String, p: &Painter, e: &EvenSetSection) {
    let plural = if e.n == 1 { "" } else { "s" };
    let _ = writeln!(out, "even set: {} curve{plural} on the {} blown up in {} points", e.n, e.ambient, e.k);
    for (i, c) in e.curves.iter().enumerate() {
        let _ = writeln!(out, "  C{} = {c}", i + 1);
    }
    let _ = writeln!(out, "  L = {}", e.half_class);
    let _ = writeln!(out, "  K_X^2 = {}{}", e.kx2, if e.anticanonical { ", L = -K_X" } else { "" });
    for c in &e.checks {
        let _ = writeln!(out, "  {} {}", p.mark(c.passed), c.name);
    }
}

fn render_bounds(out: &mut String, p: &Painter, bounds: &[BoundCheck]) {
    for b in bounds {
        let _ = writeln!(out, "  {} {}: {}", p.mark(b.passed), b.name, b.detail);
    }
}

fn render_catalog(out: &mut String, rows: &[CatalogRow]) {
    let _ = writeln!(out, "{:<14} {:>3} {:>6} {:>6}  {:<24} {:<24} result", "entry", "n", "K_X^2", "K_S^2", "expected", "computed");
    for r in rows {
        let computed = r.computed.as_ref().map(|c| c.verdict.label()).unwrap_or("-");
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>6} {:>6}  {:<24} {:<24} {}",
            r.name,
            r.expected.n,
            r.expected.kx2,
            r.expected.ks2,
            r.expected.verdict.label(),
            computed,
            if r.passed { "pass" } else { "FAIL" }
        );
        if let Some(b) = &r.budget {
            let types: Vec<String> = r.fiber_types.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(out, "{:<14} fibers {} ({b})", "", types.join(", "));
        }
        if let Some(e) = &r.error {
            let _ = writeln!(out, "{:<14} error: {e}", "");
        }
    }
}

pub fn render_human(report: &Report, color: bool) -> String {
    let p = Painter { color };
    let mut out = String::new();
    if let Some(input) = &report.input {
        let _ = writeln!(out, "{} {input}", report.command);
    }
    if let Some(e) = &report.even_set {
        render_even_set(&mut out, &p, e);
    }
    if let Some(r) = &report.reduction {
        for c in &r.contracted {
            let _ = writeln!(out, "contracted declared (-1)-curve {c}");
        }
        let _ = writeln!(out, "after contraction:");
        render_even_set(&mut out, &p, &r.even_set);
    }
    if let Some(c) = &report.classification {
        let _ = writeln!(out, "cover: K_S^2 = {}, chi = {}, c_2 = {}", c.ks2, c.chi, c.c2);
        render_bounds(&mut out, &p, &c.bounds);
        let reason = match &c.verdict {
            doublecover::Verdict::Infeasible(r) => format!(" ({r})"),
            _ => String::new(),
        };
        let _ = writeln!(out, "verdict: {}{reason}", c.verdict.label());
        for caveat in &c.caveats {
            let _ = writeln!(out, "  caveat: {caveat}");
        }
    }
    for f in &report.fibers {
        let _ = writeln!(out, "fiber {}: {} components", f.name, f.components);
        for step in &f.history {
            let met: Vec<String> = step.met.iter().map(|(id, d)| format!("{id}:{d}")).collect();
            let _ = writeln!(out, "  contract {} (meets {}) to point {}", step.component, met.join(" "), step.label);
        }
        if let Some(t) = &f.fiber_type {
            let _ = writeln!(out, "  type {t}");
        }
        if let Some(e) = &f.error {
            let _ = writeln!(out, "  error: {}", e.message);
        }
    }
    if let Some(b) = &report.budget {
        let _ = writeln!(out, "{b}");
    }
    if !report.catalog.is_empty() {
        render_catalog(&mut out, &report.catalog);
    }
    if let Some(s) = &report.search {
        let o = &s.options;
        let _ = writeln!(
            out,
            "search {} k={} bound={} n={}: {} (-4)-classes, {} even sets{}{}",
            o.ambient,
            o.k,
            o.bound,
            o.n,
            s.classes,
            s.sets.len(),
            if o.dedup { " up to permutation of the E_i" } else { "" },
            if o.strict_transforms { ", strict transforms only" } else { "" }
        );
        for set in &s.formatted {
            let _ = writeln!(out, "  {{{}}}", set.join(", "));
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "{}", p.warn(w));
    }
    if let Some(e) = &report.error {
        match e.line {
            Some(l) => {
                let _ = writeln!(out, "error: {} at line {l}: {}", e.kind, e.message);
            }
            None => {
                let _ = writeln!(out, "error: {}: {}", e.kind, e.message);
            }
        }
    }
    let _ = writeln!(out, "result: {}", if report.passed { "pass" } else { "fail" });
    out
}

/// Color is off unless `EVENSET_COLOR=always`; `NO_COLOR` always wins.
pub fn color_from_env() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::env::var("EVENSET_COLOR").is_ok_and(|v| v == "always")
}
