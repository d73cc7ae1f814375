//! Line-oriented text format for even sets and fibre configurations.
//!
//! ```text
//! # comment, also allowed after a statement
//! ambient plane
//! k 10
//! regularity unknown
//! curve 6 -2 -2 -2 -2 -2 -2 -2 -2 -2 -2
//! minus-one 0 0 0 0 0 0 0 0 0 0 1
//! fiber nodal
//! comp t -1 2
//! comp C -4 1
//! meet t C 2 p q
//! end
//! ```
//!
//! `comp <id> <self> <mult>` may be followed by `pa <genus>` and any
//! number of `point <label> <node|cusp|unknown|other>`. `meet <a> <b>
//! <total>` may be followed by exactly `total` point labels. Coefficient
//! vectors list the `H` (or `L1 L2`) coordinates first, then `E_1..E_k`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogEntry;
use crate::doublecover::Regularity;
use crate::fibers::{Component, FiberConfig, Intersection, PointKind, SingularPoint};
use crate::lattice::{Ambient, DivClass, SurfaceLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSection {
    pub name: String,
    pub config: FiberConfig,
    #[serde(skip)]
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ConfigFile {
    pub ambient: Option<Ambient>,
    pub k: Option<usize>,
    pub regularity: Option<Regularity>,
    pub curves: Vec<DivClass>,
    pub minus_ones: Vec<DivClass>,
    pub fibers: Vec<FiberSection>,
    /// Source line of each curve, for error messages.
    #[serde(skip)]
    pub curve_lines: Vec<usize>,
    #[serde(skip)]
    pub minus_one_lines: Vec<usize>,
}

impl ConfigFile {
    /// The lattice named by the `ambient` and `k` headers.
    pub fn lattice(&self) -> Result<SurfaceLattice, ParseError> {
        match (self.ambient, self.k) {
            (Some(a), Some(k)) => Ok(SurfaceLattice::new(a, k)),
            (None, _) => Err(ParseError::new(0, "missing `ambient` header")),
            (_, None) => Err(ParseError::new(0, "missing `k` header")),
        }
    }

    /// Lattice and curves, requiring at least one curve.
    pub fn even_set(&self) -> Result<(SurfaceLattice, &[DivClass]), ParseError> {
        let lat = self.lattice()?;
        if self.curves.is_empty() {
            return Err(ParseError::new(0, "no `curve` lines"));
        }
        Ok((lat, &self.curves))
    }

    pub fn curve_line(&self, index: usize) -> usize {
        self.curve_lines.get(index).copied().unwrap_or(0)
    }

    pub fn minus_one_line(&self, index: usize) -> usize {
        self.minus_one_lines.get(index).copied().unwrap_or(0)
    }

    pub fn from_entry(entry: &CatalogEntry) -> Self {
        ConfigFile {
            ambient: Some(entry.lattice.ambient()),
            k: Some(entry.lattice.k()),
            regularity: None,
            curves: entry.curves.clone(),
            minus_ones: Vec::new(),
            fibers: entry
                .fibers
                .iter()
                .map(|f| FiberSection { name: f.name.clone(), config: f.config.clone(), line: 0 })
                .collect(),
            curve_lines: Vec::new(),
            minus_one_lines: Vec::new(),
        }
    }
}

fn int<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| ParseError::new(line, format!("expected {what}, found `{tok}`")))
}

fn vector(tokens: &[&str], line: usize) -> Result<DivClass, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::new(line, "empty coefficient vector"));
    }
    let coeffs = tokens.iter().map(|t| int::<BigInt>(t, line, "an integer")).collect::<Result<Vec<_>, _>>()?;
    Ok(DivClass::new(coeffs))
}

fn parse_comp(tokens: &[&str], line: usize) -> Result<Component, ParseError> {
    if tokens.len() < 3 {
        return Err(ParseError::new(line, "usage: comp <id> <self-intersection> <multiplicity> [pa <g>] [point <label> <kind>]..."));
    }
    let mult: u64 = int(tokens[2], line, "a positive multiplicity")?;
    if mult == 0 {
        return Err(ParseError::new(line, "multiplicity must be positive"));
    }
    let mut comp = Component::rational(tokens[0], int(tokens[1], line, "an integer self-intersection")?, mult);
    let mut rest = &tokens[3..];
    while let Some((&key, tail)) = rest.split_first() {
        match key {
            "pa" => {
                let g = tail.first().ok_or_else(|| ParseError::new(line, "`pa` needs a value"))?;
                comp.genus = int(g, line, "an integer genus")?;
                rest = &tail[1..];
            }
            "point" => {
                if tail.len() < 2 {
                    return Err(ParseError::new(line, "`point` needs a label and a kind"));
                }
                let kind = PointKind::from_str(tail[1]).map_err(|m| ParseError::new(line, m))?;
                comp.singular_points.push(SingularPoint { label: tail[0].to_string(), kind });
                rest = &tail[2..];
            }
            other => return Err(ParseError::new(line, format!("unexpected `{other}` in comp line"))),
        }
    }
    Ok(comp)
}

fn parse_meet(tokens: &[&str], line: usize) -> Result<Intersection, ParseError> {
    if tokens.len() < 3 {
        return Err(ParseError::new(line, "usage: meet <a> <b> <total> [labels...]"));
    }
    let total: i64 = int(tokens[2], line, "a nonnegative intersection number")?;
    if total < 0 {
        return Err(ParseError::new(line, "intersection number must be nonnegative"));
    }
    let labels: Vec<String> = tokens[3..].iter().map(|s| s.to_string()).collect();
    if !labels.is_empty() && labels.len() as i64 != total {
        return Err(ParseError::new(line, format!("{} labels given for an intersection of {total}", labels.len())));
    }
    Ok(Intersection { a: tokens[0].to_string(), b: tokens[1].to_string(), total, labels })
}

pub fn parse(text: &str) -> Result<ConfigFile, ParseError> {
    let mut cfg = ConfigFile::default();
    let mut open: Option<FiberSection> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.split_once('#').map_or(raw, |(code, _)| code).trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let (key, args) = (tokens[0], &tokens[1..]);

        if let Some(section) = open.as_mut() {
            match key {
                "comp" => section.config.components.push(parse_comp(args, line)?),
                "meet" => section.config.intersections.push(parse_meet(args, line)?),
                "end" => cfg.fibers.push(open.take().expect("section is open")),
                other => return Err(ParseError::new(line, format!("unexpected `{other}` inside a fiber section"))),
            }
            continue;
        }

        match key {
            "ambient" => {
                let [name] = args else { return Err(ParseError::new(line, "usage: ambient <plane|quadric>")) };
                if cfg.ambient.is_some() {
                    return Err(ParseError::new(line, "duplicate `ambient`"));
                }
                cfg.ambient = Some(Ambient::from_str(name).map_err(|e| ParseError::new(line, e.to_string()))?);
            }
            "k" => {
                let [value] = args else { return Err(ParseError::new(line, "usage: k <number of blown-up points>")) };
                if cfg.k.is_some() {
                    return Err(ParseError::new(line, "duplicate `k`"));
                }
                cfg.k = Some(int(value, line, "a nonnegative integer")?);
            }
            "regularity" => {
                let [value] = args else { return Err(ParseError::new(line, "usage: regularity <regular|irregular|unknown>")) };
                cfg.regularity = Some(Regularity::from_str(value).map_err(|m| ParseError::new(line, m))?);
            }
            "curve" => {
                cfg.curves.push(vector(args, line)?);
                cfg.curve_lines.push(line);
            }
            "minus-one" => {
                cfg.minus_ones.push(vector(args, line)?);
                cfg.minus_one_lines.push(line);
            }
            "fiber" => {
                let name = if args.is_empty() { format!("F{}", cfg.fibers.len() + 1) } else { args.join(" ") };
                open = Some(FiberSection { name, config: FiberConfig::default(), line });
            }
            "end" => return Err(ParseError::new(line, "`end` without an open fiber section")),
            other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(section) = open {
        return Err(ParseError::new(section.line, format!("fiber section `{}` is not closed", section.name)));
    }

    if cfg.curves.iter().chain(&cfg.minus_ones).next().is_some() {
        let lat = cfg.lattice().map_err(|e| ParseError::new(cfg.curve_lines.first().copied().unwrap_or(0), e.message))?;
        let lines = cfg.curve_lines.iter().chain(&cfg.minus_one_lines);
        for (d, &line) in cfg.curves.iter().chain(&cfg.minus_ones).zip(lines) {
            if d.len() != lat.rank() {
                return Err(ParseError::new(
                    line,
                    format!("vector has {} entries, the {} lattice with k = {} has rank {}", d.len(), lat.ambient(), lat.k(), lat.rank()),
                ));
            }
        }
    }
    Ok(cfg)
}

fn push_vector(out: &mut String, key: &str, d: &DivClass) {
    out.push_str(key);
    for c in d.coeffs() {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

/// Canonical text form; `parse(export(c))` reproduces `c` up to line numbers.
pub fn export(cfg: &ConfigFile) -> String {
    let mut out = String::new();
    if let Some(a) = cfg.ambient {
        let _ = writeln!(out, "ambient {}", a.name());
    }
    if let Some(k) = cfg.k {
        let _ = writeln!(out, "k {k}");
    }
    if let Some(r) = cfg.regularity {
        let name = match r {
            Regularity::Regular => "regular",
            Regularity::Irregular => "irregular",
            Regularity::Unknown => "unknown",
        };
        let _ = writeln!(out, "regularity {name}");
    }
    for c in &cfg.curves {
        push_vector(&mut out, "curve", c);
    }
    for d in &cfg.minus_ones {
        push_vector(&mut out, "minus-one", d);
    }
    for f in &cfg.fibers {
        let _ = writeln!(out, "fiber {}", f.name);
        for c in &f.config.components {
            let _ = write!(out, "comp {} {} {}", c.id, c.self_int, c.mult);
            if c.genus != 0 {
                let _ = write!(out, " pa {}", c.genus);
            }
            for p in &c.singular_points {
                let _ = write!(out, " point {} {}", p.label, p.kind.name());
            }
            out.push('\n');
        }
        for x in &f.config.intersections {
            let _ = write!(out, "meet {} {} {}", x.a, x.b, x.total);
            for l in &x.labels {
                let _ = write!(out, " {l}");
            }
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

/// Export with a leading comment naming the catalog entry.
pub fn export_entry(entry: &CatalogEntry) -> String {
    format!("# {}: {}\n{}", entry.name, entry.description, export(&ConfigFile::from_entry(entry)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trailing_comments_are_ignored() {
        let cfg = parse("ambient quadric # P1 x P1\nk 0\n").unwrap();
        assert_eq!(cfg.ambient, Some(Ambient::Quadric));
        assert!(parse("k 1 # 2\n").is_ok());
    }

    #[test]
    fn parses_the_module_example() {
        let text = "# comment\nambient plane\nk 10\nregularity unknown\ncurve 6 -2 -2 -2 -2 -2 -2 -2 -2 -2 -2\n\
                    fiber nodal\ncomp t -1 2\ncomp C -4 1\nmeet t C 2 p q\nend\n";
        let cfg = parse(text).unwrap();
        assert_eq!(cfg.ambient, Some(Ambient::Plane));
        assert_eq!(cfg.curves.len(), 1);
        assert_eq!(cfg.curve_lines, vec![5]);
        assert_eq!(cfg.fibers[0].config.intersections[0].labels, vec!["p", "q"]);
    }

    #[test]
    fn round_trips_every_catalog_entry() {
        for e in catalog::build_all() {
            let text = export_entry(&e);
            let cfg = parse(&text).unwrap();
            assert_eq!(cfg.curves, e.curves, "{}", e.name);
            assert_eq!(cfg.lattice().unwrap(), e.lattice);
            assert_eq!(export(&cfg), export(&ConfigFile::from_entry(&e)));
            for (a, b) in cfg.fibers.iter().zip(&e.fibers) {
                assert_eq!(a.config, b.config);
            }
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("ambient plane\nk 2\ncurve 1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse("ambient torus\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse("ambient plane\nk 1\ncurve 1 x\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse("fiber a\ncomp t -1 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse("fiber a\nmeet t C 2 p\nend\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse("bogus\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn empty_curve_list_is_a_parse_error() {
        let cfg = parse("ambient plane\nk 3\n").unwrap();
        assert!(cfg.even_set().is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let text = "ambient plane\nk 1\ncurve 123456789012345678901234567890 -1\n";
        let cfg = parse(text).unwrap();
        assert_eq!(export(&cfg), text);
    }
}
