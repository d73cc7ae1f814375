//! Worked examples of even sets, stored as explicit coefficient vectors.
//!
//! Plane models put the nine base points of a cubic pencil first
//! (`E_1..E_9`) whenever the construction comes from such a pencil.

use serde::Serialize;
use thiserror::Error;

use crate::doublecover::{self, CoverClassification, Verdict};
use crate::evenset::{verify_even_set, EvenSetError, EvenSetReport};
use crate::fibers::{self, BudgetReport, FiberConfig, FiberError, FiberType, KodairaType};
use crate::lattice::{DivClass, LatticeError, SurfaceLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    EvenSet(#[from] EvenSetError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The part of the cover classification an entry pins down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub verdict: Verdict,
    pub n: usize,
    pub kx2: i64,
    pub ks2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedFiber {
    pub name: String,
    pub config: FiberConfig,
    /// Expected type after minimalization, when the entry states one.
    pub expected: Option<KodairaType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub lattice: SurfaceLattice,
    pub curves: Vec<DivClass>,
    pub expected: Expected,
    pub fibers: Vec<NamedFiber>,
    /// Index of the Halphen pencil giving the elliptic fibration.
    pub halphen_index: Option<u32>,
}

/// Outcome of recomputing an entry from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub report: EvenSetReport,
    pub classification: CoverClassification,
    pub computed: Expected,
    pub expected: Expected,
    pub fiber_types: Vec<FiberType>,
    pub fibers_match: bool,
    pub budget: Option<BudgetReport>,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.computed == self.expected && self.fibers_match && self.budget.is_none_or(|b| b.sum <= b.total)
    }
}

struct EntryDef {
    name: &'static str,
    description: &'static str,
    build: fn() -> CatalogEntry,
}

const ENTRIES: &[EntryDef] = &[
    EntryDef { name: "ex8_1", description: "plane sextic with ten nodes", build: ex8_1 },
    EntryDef { name: "ex8_2", description: "two nodal cubics of a pencil", build: ex8_2 },
    EntryDef { name: "ex8_3", description: "nodal cubic and conic plus line in a cubic pencil", build: ex8_3 },
    EntryDef { name: "ex8_4", description: "nodal cubic and a triangle of lines in a cubic pencil", build: ex8_4 },
    EntryDef { name: "ex8_5", description: "conic plus line and a triangle of lines in a cubic pencil", build: ex8_5 },
    EntryDef { name: "ex8_6", description: "six lines forming two triangles of a cubic pencil", build: ex8_6 },
    EntryDef { name: "ex8_7", description: "three fibres of each ruling and a smooth bisection on the quadric", build: ex8_7 },
    EntryDef { name: "ex8_7_plane", description: "plane model of ex8_7", build: ex8_7_plane },
    EntryDef { name: "ex8_8", description: "four fibres of each ruling on the quadric", build: ex8_8 },
    EntryDef { name: "ex8_8_plane", description: "plane model of ex8_8", build: ex8_8_plane },
    EntryDef { name: "ex8_9", description: "six lines with three triple points", build: ex8_9 },
    EntryDef { name: "ex8_10", description: "six lines with four triple points", build: ex8_10 },
    EntryDef { name: "ell_12", description: "twelve nodal cubics of a pencil", build: ell_12 },
    EntryDef { name: "ell_nodal_4", description: "four nodal cubics of a pencil", build: || ell_nodal(4) },
    EntryDef { name: "ell_nodal_6", description: "six nodal cubics of a pencil", build: || ell_nodal(6) },
    EntryDef { name: "ell_nodal_8", description: "eight nodal cubics of a pencil", build: || ell_nodal(8) },
    EntryDef { name: "ell_nodal_10", description: "ten nodal cubics of a pencil", build: || ell_nodal(10) },
    EntryDef { name: "ell_nodal_12", description: "twelve nodal cubics of a pencil", build: || ell_nodal(12) },
    EntryDef { name: "sextic_2", description: "two nodal sextics of a Halphen pencil of index 2", build: || sextic(2) },
    EntryDef { name: "sextic_3", description: "three nodal sextics of a Halphen pencil of index 2", build: || sextic(3) },
    EntryDef { name: "sextic_4", description: "four nodal sextics of a Halphen pencil of index 2", build: || sextic(4) },
];

/// Names and one-line descriptions of all entries, in catalog order.
pub fn list() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|s| (s.name, s.description)).collect()
}

/// Accepts `sextic(3)` and `sextic_3` alike.
pub fn normalize_name(name: &str) -> String {
    let name = name.trim().to_ascii_lowercase();
    match name.strip_suffix(')').and_then(|s| s.split_once('(')) {
        Some((head, arg)) => format!("{}_{}", head.trim(), arg.trim()),
        None => name,
    }
}

pub fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    let key = normalize_name(name);
    ENTRIES
        .iter()
        .find(|s| s.name == key)
        .map(|s| (s.build)())
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

pub fn build_all() -> Vec<CatalogEntry> {
    ENTRIES.iter().map(|s| (s.build)()).collect()
}

/// Verify, classify and compare an entry against its stored expectations.
pub fn check(entry: &CatalogEntry) -> Result<EntryCheck, CatalogError> {
    let report = verify_even_set(&entry.lattice, &entry.curves)?;
    let classification = doublecover::classify(&report);
    let computed = Expected {
        verdict: classification.verdict.clone(),
        n: classification.n,
        kx2: classification.kx2,
        ks2: classification.ks2,
    };
    let mut fiber_types = Vec::new();
    let mut fibers_match = true;
    let mut known = Vec::new();
    for f in &entry.fibers {
        let c = fibers::classify(&f.config)?;
        if let Some(want) = &f.expected {
            fibers_match &= c.fiber_type.known() == Some(want);
        }
        if let Some(t) = c.fiber_type.known() {
            known.push(t.clone());
        }
        fiber_types.push(c.fiber_type);
    }
    let budget = if entry.fibers.is_empty() { None } else { Some(fibers::c2_budget(&known, 12)?) };
    Ok(EntryCheck {
        name: entry.name.clone(),
        report,
        classification,
        computed,
        expected: entry.expected.clone(),
        fiber_types,
        fibers_match,
        budget,
    })
}

fn plane(k: usize, h: i64, ones: &[usize], twos: &[usize]) -> DivClass {
    let mut c = vec![0i64; k + 1];
    c[0] = h;
    for &j in ones {
        c[j] -= 1;
    }
    for &j in twos {
        c[j] -= 2;
    }
    DivClass::from_i64s(&c)
}

fn quadric(k: usize, l1: i64, l2: i64, ones: &[usize]) -> DivClass {
    let mut c = vec![0i64; k + 2];
    c[0] = l1;
    c[1] = l2;
    for &j in ones {
        c[j + 1] -= 1;
    }
    DivClass::from_i64s(&c)
}

fn base_points() -> Vec<usize> {
    (1..=9).collect()
}

fn with(points: &[usize], extra: &[usize]) -> Vec<usize> {
    points.iter().chain(extra).copied().collect()
}

fn k3(n: usize, lat: &SurfaceLattice) -> Expected {
    Expected { verdict: Verdict::K3, n, kx2: lat.canonical_square(), ks2: 0 }
}

fn elliptic(n: usize, lat: &SurfaceLattice) -> Expected {
    Expected { verdict: Verdict::EllipticKappa1, n, kx2: lat.canonical_square(), ks2: 0 }
}

fn entry(
    name: &str,
    description: &str,
    lattice: SurfaceLattice,
    curves: Vec<DivClass>,
    expected: Expected,
    fibers: Vec<NamedFiber>,
    halphen_index: Option<u32>,
) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        lattice,
        curves,
        expected,
        fibers,
        halphen_index,
    }
}

fn description_of(name: &str) -> &'static str {
    ENTRIES.iter().find(|s| s.name == name).map(|s| s.description).unwrap_or("")
}

/// A fibre assembled from lattice classes with multiplicities.
fn fiber(lat: &SurfaceLattice, name: &str, parts: &[(&str, &DivClass, u64)], expected: KodairaType) -> NamedFiber {
    let owned: Vec<(&str, DivClass, u64)> = parts.iter().map(|&(id, d, m)| (id, d.clone(), m)).collect();
    let config = fibers::from_classes(lat, &owned).expect("catalog fibre classes have lattice rank");
    NamedFiber { name: name.into(), config, expected: Some(expected) }
}

/// The fibre `C + 2E_j` of a nodal member `C` whose node was blown up at `E_j`.
fn nodal_fiber(lat: &SurfaceLattice, name: &str, curve: &DivClass, j: usize) -> NamedFiber {
    let e = lat.exceptional(j).expect("node index within lattice");
    fiber(lat, name, &[("C", curve, 1), ("t", &e, 2)], KodairaType::I { r: 1, m: 1 })
}

fn ex8_1() -> CatalogEntry {
    let lat = SurfaceLattice::plane(10);
    let c = plane(10, 6, &[], &(1..=10).collect::<Vec<_>>());
    let fibers = vec![nodal_fiber(&lat, "sextic", &c, 10)];
    entry("ex8_1", description_of("ex8_1"), lat, vec![c], k3(1, &lat), fibers, Some(2))
}

fn ex8_2() -> CatalogEntry {
    let lat = SurfaceLattice::plane(11);
    let curves: Vec<DivClass> = (1..=2).map(|i| plane(11, 3, &base_points(), &[9 + i])).collect();
    let fibers = (1..=2).map(|i| nodal_fiber(&lat, &format!("N{i}"), &curves[i - 1], 9 + i)).collect();
    entry("ex8_2", description_of("ex8_2"), lat, curves, k3(2, &lat), fibers, Some(1))
}

fn ex8_3() -> CatalogEntry {
    let lat = SurfaceLattice::plane(12);
    let nodal = plane(12, 3, &base_points(), &[10]);
    // the conic and the line meet at E11, E12
    let conic = plane(12, 2, &[1, 2, 3, 4, 5, 6, 11, 12], &[]);
    let line = plane(12, 1, &[7, 8, 9, 11, 12], &[]);
    let (e11, e12) = (lat.exceptional(11).unwrap(), lat.exceptional(12).unwrap());
    let fibers = vec![
        nodal_fiber(&lat, "nodal", &nodal, 10),
        fiber(
            &lat,
            "conic+line",
            &[("Q", &conic, 1), ("l", &line, 1), ("t1", &e11, 2), ("t2", &e12, 2)],
            KodairaType::I { r: 2, m: 1 },
        ),
    ];
    entry("ex8_3", description_of("ex8_3"), lat, vec![nodal, conic, line], k3(3, &lat), fibers, Some(1))
}

fn triangle_fiber(lat: &SurfaceLattice, name: &str, lines: [&DivClass; 3], vertices: [usize; 3]) -> NamedFiber {
    let t: Vec<DivClass> = vertices.iter().map(|&j| lat.exceptional(j).unwrap()).collect();
    fiber(
        lat,
        name,
        &[("L1", lines[0], 1), ("L2", lines[1], 1), ("L3", lines[2], 1), ("t1", &t[0], 2), ("t2", &t[1], 2), ("t3", &t[2], 2)],
        KodairaType::I { r: 3, m: 1 },
    )
}

fn ex8_4() -> CatalogEntry {
    let lat = SurfaceLattice::plane(13);
    // vertices of the triangle: E10 = L1.L2, E11 = L1.L3, E12 = L2.L3; node at E13
    let l1 = plane(13, 1, &[1, 2, 3, 10, 11], &[]);
    let l2 = plane(13, 1, &[4, 5, 6, 10, 12], &[]);
    let l3 = plane(13, 1, &[7, 8, 9, 11, 12], &[]);
    let nodal = plane(13, 3, &base_points(), &[13]);
    let fibers = vec![triangle_fiber(&lat, "triangle", [&l1, &l2, &l3], [10, 11, 12]), nodal_fiber(&lat, "nodal", &nodal, 13)];
    entry("ex8_4", description_of("ex8_4"), lat, vec![l1, l2, l3, nodal], k3(4, &lat), fibers, Some(1))
}

fn ex8_5() -> CatalogEntry {
    let lat = SurfaceLattice::plane(14);
    let conic = plane(14, 2, &[1, 2, 3, 4, 5, 6, 10, 11], &[]);
    let line = plane(14, 1, &[7, 8, 9, 10, 11], &[]);
    // triangle vertices: E12 = L1.L2, E13 = L1.L3, E14 = L2.L3
    let l1 = plane(14, 1, &[1, 2, 7, 12, 13], &[]);
    let l2 = plane(14, 1, &[3, 4, 8, 12, 14], &[]);
    let l3 = plane(14, 1, &[5, 6, 9, 13, 14], &[]);
    let (e10, e11) = (lat.exceptional(10).unwrap(), lat.exceptional(11).unwrap());
    let fibers = vec![
        fiber(
            &lat,
            "conic+line",
            &[("Q", &conic, 1), ("l", &line, 1), ("t1", &e10, 2), ("t2", &e11, 2)],
            KodairaType::I { r: 2, m: 1 },
        ),
        triangle_fiber(&lat, "triangle", [&l1, &l2, &l3], [12, 13, 14]),
    ];
    entry("ex8_5", description_of("ex8_5"), lat, vec![conic, line, l1, l2, l3], k3(5, &lat), fibers, Some(1))
}

fn ex8_6() -> CatalogEntry {
    let lat = SurfaceLattice::plane(15);
    // E1..E9: Li.Mj for the triangles L1L2L3 and M1M2M3 (i-major);
    // E10..E12: L1L2, L1L3, L2L3; E13..E15: M1M2, M1M3, M2M3
    let base = |i: usize, j: usize| 3 * (i - 1) + j;
    let vertex = |a: usize, b: usize| match (a, b) {
        (1, 2) => 0,
        (1, 3) => 1,
        _ => 2,
    };
    let side = |i: usize, first: bool| -> DivClass {
        let mut pts: Vec<usize> = (1..=3).map(|j| if first { base(i, j) } else { base(j, i) }).collect();
        let offset = if first { 10 } else { 13 };
        for other in (1..=3).filter(|&o| o != i) {
            pts.push(offset + vertex(i.min(other), i.max(other)));
        }
        plane(15, 1, &pts, &[])
    };
    let ls: Vec<DivClass> = (1..=3).map(|i| side(i, true)).collect();
    let ms: Vec<DivClass> = (1..=3).map(|i| side(i, false)).collect();
    let fibers = vec![
        triangle_fiber(&lat, "L-triangle", [&ls[0], &ls[1], &ls[2]], [10, 11, 12]),
        triangle_fiber(&lat, "M-triangle", [&ms[0], &ms[1], &ms[2]], [13, 14, 15]),
    ];
    let curves = ls.into_iter().chain(ms).collect();
    entry("ex8_6", description_of("ex8_6"), lat, curves, k3(6, &lat), fibers, Some(1))
}

fn ex8_7_quadric() -> (SurfaceLattice, Vec<DivClass>) {
    let lat = SurfaceLattice::quadric(15);
    // E1..E9: Ri.Mj (i-major); E10..E12: Ri.S; E13..E15: Mj.S
    let mut curves = Vec::new();
    for i in 1..=3 {
        let pts: Vec<usize> = (1..=3).map(|j| 3 * (i - 1) + j).chain([9 + i]).collect();
        curves.push(quadric(15, 1, 0, &pts));
    }
    for j in 1..=3 {
        let pts: Vec<usize> = (1..=3).map(|i| 3 * (i - 1) + j).chain([12 + j]).collect();
        curves.push(quadric(15, 0, 1, &pts));
    }
    curves.push(quadric(15, 1, 1, &(10..=15).collect::<Vec<_>>()));
    (lat, curves)
}

fn ex8_8_quadric() -> (SurfaceLattice, Vec<DivClass>) {
    let lat = SurfaceLattice::quadric(16);
    // E_{4(i-1)+j} = Ri.Mj
    let mut curves = Vec::new();
    for i in 1..=4 {
        curves.push(quadric(16, 1, 0, &(1..=4).map(|j| 4 * (i - 1) + j).collect::<Vec<_>>()));
    }
    for j in 1..=4 {
        curves.push(quadric(16, 0, 1, &(1..=4).map(|i| 4 * (i - 1) + j).collect::<Vec<_>>()));
    }
    (lat, curves)
}

fn to_plane(lat: &SurfaceLattice, curves: &[DivClass]) -> (SurfaceLattice, Vec<DivClass>) {
    // project from the point R1.M1
    let iso = lat.quadric_to_plane(1).expect("quadric lattice");
    let mapped = curves.iter().map(|c| iso.apply(c).expect("rank matches")).collect();
    (iso.target(), mapped)
}

fn ex8_7() -> CatalogEntry {
    let (lat, curves) = ex8_7_quadric();
    entry("ex8_7", description_of("ex8_7"), lat, curves, k3(7, &lat), Vec::new(), None)
}

fn ex8_7_plane() -> CatalogEntry {
    let (q, curves) = ex8_7_quadric();
    let (lat, curves) = to_plane(&q, &curves);
    entry("ex8_7_plane", description_of("ex8_7_plane"), lat, curves, k3(7, &lat), Vec::new(), None)
}

fn ex8_8() -> CatalogEntry {
    let (lat, curves) = ex8_8_quadric();
    entry("ex8_8", description_of("ex8_8"), lat, curves, k3(8, &lat), Vec::new(), None)
}

fn ex8_8_plane() -> CatalogEntry {
    let (q, curves) = ex8_8_quadric();
    let (lat, curves) = to_plane(&q, &curves);
    entry("ex8_8_plane", description_of("ex8_8_plane"), lat, curves, k3(8, &lat), Vec::new(), None)
}

/// Six lines where each listed triple of lines is concurrent and every
/// other pair meets in a double point.
///
/// A triple point `T` is blown up (`E_T`) and then once more on each of
/// the three lines through it (`e_{T,i}`), so the exceptional curve
/// `E_T - e_{T,a} - e_{T,b} - e_{T,c}` becomes a further (-4)-curve.
fn six_lines(triples: &[[usize; 3]]) -> (SurfaceLattice, Vec<DivClass>) {
    let mut next = 1;
    let mut alloc = || {
        let j = next;
        next += 1;
        j
    };
    // per triple: (E_T, [(line, e_{T,line}); 3])
    let mut triple_points = Vec::new();
    for t in triples {
        let et = alloc();
        let es: Vec<(usize, usize)> = t.iter().map(|&line| (line, alloc())).collect();
        triple_points.push((et, es));
    }
    let covered = |a: usize, b: usize| triples.iter().any(|t| t.contains(&a) && t.contains(&b));
    let mut doubles = Vec::new();
    for a in 1..=6 {
        for b in a + 1..=6 {
            if !covered(a, b) {
                doubles.push((a, b, alloc()));
            }
        }
    }
    let k = next - 1;
    let lat = SurfaceLattice::plane(k);
    let mut curves = Vec::new();
    for line in 1..=6 {
        let mut pts = Vec::new();
        for (et, es) in &triple_points {
            if let Some(&(_, e)) = es.iter().find(|(l, _)| *l == line) {
                pts.push(*et);
                pts.push(e);
            }
        }
        pts.extend(doubles.iter().filter(|(a, b, _)| *a == line || *b == line).map(|(_, _, j)| *j));
        curves.push(plane(k, 1, &pts, &[]));
    }
    for (et, es) in &triple_points {
        let mut c = vec![0i64; k + 1];
        c[*et] = 1;
        for (_, e) in es {
            c[*e] = -1;
        }
        curves.push(DivClass::from_i64s(&c));
    }
    (lat, curves)
}

fn ex8_9() -> CatalogEntry {
    let (lat, curves) = six_lines(&[[1, 2, 3], [1, 4, 5], [2, 4, 6]]);
    entry("ex8_9", description_of("ex8_9"), lat, curves, k3(9, &lat), Vec::new(), None)
}

fn ex8_10() -> CatalogEntry {
    let (lat, curves) = six_lines(&[[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]]);
    entry("ex8_10", description_of("ex8_10"), lat, curves, k3(10, &lat), Vec::new(), None)
}

/// `n` nodal members `3H - E_1 - .. - E_9 - 2E_{9+i}` of a cubic pencil.
pub fn nodal_cubics(n: usize) -> (SurfaceLattice, Vec<DivClass>) {
    let lat = SurfaceLattice::plane(9 + n);
    let curves = (1..=n).map(|i| plane(9 + n, 3, &base_points(), &[9 + i])).collect();
    (lat, curves)
}

fn nodal_entry(name: &str, n: usize) -> CatalogEntry {
    let (lat, curves) = nodal_cubics(n);
    let fibers = curves.iter().enumerate().map(|(i, c)| nodal_fiber(&lat, &format!("N{}", i + 1), c, 10 + i)).collect();
    entry(name, description_of(name), lat, curves, elliptic(n, &lat), fibers, Some(1))
}

fn ell_12() -> CatalogEntry {
    nodal_entry("ell_12", 12)
}

fn ell_nodal(n: usize) -> CatalogEntry {
    nodal_entry(&format!("ell_nodal_{n}"), n)
}

fn sextic(n: usize) -> CatalogEntry {
    let name = format!("sextic_{n}");
    let k = 9 + n;
    let lat = SurfaceLattice::plane(k);
    let curves: Vec<DivClass> = (1..=n).map(|i| plane(k, 6, &[], &with(&base_points(), &[9 + i]))).collect();
    let fibers = curves.iter().enumerate().map(|(i, c)| nodal_fiber(&lat, &format!("S{}", i + 1), c, 10 + i)).collect();
    entry(&name, description_of(&name), lat, curves, elliptic(n, &lat), fibers, Some(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_checks() {
        for e in build_all() {
            let c = check(&e).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(c.computed, c.expected, "{}", e.name);
            assert!(c.fibers_match, "{}: {:?}", e.name, c.fiber_types);
            assert!(c.passed(), "{}", e.name);
        }
    }

    #[test]
    fn catalog_size_and_names() {
        let names: Vec<&str> = list().into_iter().map(|(n, _)| n).collect();
        assert!(names.len() >= 18);
        for i in 1..=10 {
            assert!(names.contains(&format!("ex8_{i}").as_str()));
        }
        assert!(names.contains(&"ell_12"));
        assert_eq!(build("sextic(3)").unwrap().name, "sextic_3");
        assert_eq!(build("ell_nodal(4)").unwrap().name, "ell_nodal_4");
        assert_eq!(build("bogus"), Err(CatalogError::UnknownEntry("bogus".into())));
    }

    #[test]
    fn ex8_1_is_anticanonical() {
        let e = build("ex8_1").unwrap();
        let r = verify_even_set(&e.lattice, &e.curves).unwrap();
        assert!(r.half_is_anticanonical());
        assert_eq!(doublecover::classify(&r).verdict, Verdict::K3);
    }

    #[test]
    fn ell_12_budget_is_exact() {
        let c = check(&build("ell_12").unwrap()).unwrap();
        assert_eq!(c.computed.kx2, -12);
        assert_eq!(c.fiber_types.len(), 12);
        assert!(c.budget.unwrap().exact);
    }

    #[test]
    fn sextic_three_sum_is_even() {
        let e = build("sextic(3)").unwrap();
        let sum = e.curves.iter().fold(e.lattice.zero(), |acc, c| &acc + c);
        assert!(sum.first_odd_coordinate().is_none());
        assert_eq!(check(&e).unwrap().computed.kx2, -3);
    }

    #[test]
    fn plane_models_agree_with_quadric() {
        for (q, p) in [("ex8_7", "ex8_7_plane"), ("ex8_8", "ex8_8_plane")] {
            let cq = check(&build(q).unwrap()).unwrap();
            let cp = check(&build(p).unwrap()).unwrap();
            assert_eq!(cq.computed, cp.computed);
        }
    }
}
