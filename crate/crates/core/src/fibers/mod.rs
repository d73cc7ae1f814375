//! Fibre configurations of elliptic fibrations as weighted curve graphs.
//!
//! A [`FiberConfig`] lists the components of a fibre (self-intersection,
//! multiplicity, arithmetic genus) and their mutual intersections.
//! Intersections may carry point labels naming the points where the
//! curves meet; a label repeated within one intersection means the
//! curves are tangent there. Contracting a (-1)-component sends every
//! point on it to one fresh label, which is what later distinguishes
//! `I_2` from `III`, `I_3` from `IV` and `I_1` from `II`.

mod kodaira;
pub mod templates;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DivClass, LatticeError, SurfaceLattice};
use crate::quadform::{self, Inertia};

pub use kodaira::{
    c2_budget, canonical_degree, classify, euler_char, hurwitz_genus, pullback_type, ramification_check,
    BudgetReport, FiberClassification, FiberType, KodairaType,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("not a fibre: {0}")]
    NotAFiber(String),
    #[error("cannot contract `{id}`: {reason}")]
    NotContractible { id: String, reason: String },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("fibre type {0} has no Euler number here")]
    UnrecognizedType(String),
    #[error("Euler numbers sum to {sum}, exceeding the budget {total}")]
    BudgetExceeded { sum: i64, total: i64 },
    #[error("budget total must be 12 or 24, got {0}")]
    InvalidBudgetTotal(i64),
    #[error("no pullback rule for fibre type {0}")]
    NotInTable(String),
    #[error("ramification degree {0} is odd")]
    OddDegree(i64),
    #[error("ramification degree {0} is not positive")]
    NoBranchPoints(i64),
    #[error("ramification degree {deg_r} outside n' <= deg R <= n' + 1 for n' = {n_prime}")]
    RamificationOutOfRange { n_prime: i64, deg_r: i64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// What is known about a singular point of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Node,
    Cusp,
    /// Singular, but the branch data was not labelled.
    Unknown,
    /// Worse than a double point, or several points merged.
    Other,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Node => "node",
            PointKind::Cusp => "cusp",
            PointKind::Unknown => "unknown",
            PointKind::Other => "other",
        }
    }
}

impl std::str::FromStr for PointKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "node" => Ok(PointKind::Node),
            "cusp" => Ok(PointKind::Cusp),
            "unknown" => Ok(PointKind::Unknown),
            "other" => Ok(PointKind::Other),
            other => Err(format!("unknown singular point kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub label: String,
    pub kind: PointKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: String,
    pub self_int: i64,
    pub mult: u64,
    /// Arithmetic genus.
    pub genus: i64,
    pub singular_points: Vec<SingularPoint>,
}

impl Component {
    /// A smooth rational component.
    pub fn rational(id: impl Into<String>, self_int: i64, mult: u64) -> Self {
        Component { id: id.into(), self_int, mult, genus: 0, singular_points: Vec::new() }
    }

    pub fn is_contractible(&self) -> bool {
        self.self_int == -1 && self.genus == 0
    }

    /// `K.D` by adjunction.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus - 2 - self.self_int
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Intersection {
    pub a: String,
    pub b: String,
    pub total: i64,
    /// Either empty (unlabelled) or exactly `total` labels.
    pub labels: Vec<String>,
}

impl Intersection {
    pub fn new(a: impl Into<String>, b: impl Into<String>, total: i64) -> Self {
        Intersection { a: a.into(), b: b.into(), total, labels: Vec::new() }
    }

    pub fn labelled(a: impl Into<String>, b: impl Into<String>, labels: &[&str]) -> Self {
        Intersection {
            a: a.into(),
            b: b.into(),
            total: labels.len() as i64,
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn involves(&self, id: &str) -> bool {
        self.a == id || self.b == id
    }

    fn other(&self, id: &str) -> &str {
        if self.a == id {
            &self.b
        } else {
            &self.a
        }
    }

    fn is_labelled(&self) -> bool {
        self.total == 0 || !self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FiberConfig {
    pub components: Vec<Component>,
    pub intersections: Vec<Intersection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub components: usize,
    pub inertia: Inertia,
    pub fiber_square: i64,
    pub canonical_degree: i64,
}

/// One contraction performed by [`minimalize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    pub component: String,
    pub label: String,
    /// Components meeting the contracted curve, with intersection numbers.
    pub met: Vec<(String, i64)>,
}

/// Ordering of component ids: runs of digits compare numerically, so
/// `t2 < t10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let ta = sa.trim_start_matches('0');
            let tb = sb.trim_start_matches('0');
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

impl FiberConfig {
    pub fn new(components: Vec<Component>, intersections: Vec<Intersection>) -> Self {
        FiberConfig { components, intersections }
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// Total intersection number of two distinct components.
    pub fn meet(&self, a: &str, b: &str) -> i64 {
        self.intersections
            .iter()
            .filter(|x| (x.a == a && x.b == b) || (x.a == b && x.b == a))
            .map(|x| x.total)
            .sum()
    }

    /// All labels at which `a` and `b` meet (empty if unlabelled).
    pub fn meet_labels(&self, a: &str, b: &str) -> Vec<String> {
        self.intersections
            .iter()
            .filter(|x| (x.a == a && x.b == b) || (x.a == b && x.b == a))
            .flat_map(|x| x.labels.iter().cloned())
            .collect()
    }

    pub fn meet_is_labelled(&self, a: &str, b: &str) -> bool {
        self.intersections
            .iter()
            .filter(|x| (x.a == a && x.b == b) || (x.a == b && x.b == a))
            .all(Intersection::is_labelled)
    }

    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut g = vec![vec![0i64; n]; n];
        for (i, c) in self.components.iter().enumerate() {
            g[i][i] = c.self_int;
        }
        for x in &self.intersections {
            if let (Some(i), Some(j)) = (self.index_of(&x.a), self.index_of(&x.b)) {
                g[i][j] += x.total;
                g[j][i] += x.total;
            }
        }
        g
    }

    /// `F.D` for each component `D`, where `F = sum mult_i D_i`.
    pub fn fiber_products(&self) -> Vec<i64> {
        let g = self.gram_matrix();
        (0..self.components.len())
            .map(|j| self.components.iter().enumerate().map(|(i, c)| c.mult as i64 * g[i][j]).sum())
            .collect()
    }

    fn check_structure(&self) -> Result<(), FiberError> {
        if self.components.is_empty() {
            return Err(FiberError::NotAFiber("no components".into()));
        }
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.id.as_str()) {
                return Err(FiberError::NotAFiber(format!("duplicate component id `{}`", c.id)));
            }
            if c.mult == 0 {
                return Err(FiberError::NotAFiber(format!("component `{}` has multiplicity 0", c.id)));
            }
            if c.genus < 0 {
                return Err(FiberError::NotAFiber(format!("component `{}` has negative genus", c.id)));
            }
        }
        for x in &self.intersections {
            for id in [&x.a, &x.b] {
                if self.index_of(id).is_none() {
                    return Err(FiberError::UnknownComponent(id.clone()));
                }
            }
            if x.a == x.b {
                return Err(FiberError::NotAFiber(format!("self-intersection listed as a meeting of `{}`", x.a)));
            }
            if x.total < 0 {
                return Err(FiberError::NotAFiber(format!("negative intersection of `{}` and `{}`", x.a, x.b)));
            }
            if !x.labels.is_empty() && x.labels.len() as i64 != x.total {
                return Err(FiberError::NotAFiber(format!(
                    "`{}`.`{}` = {} but {} point labels given",
                    x.a,
                    x.b,
                    x.total,
                    x.labels.len()
                )));
            }
        }
        Ok(())
    }
}

/// Zariski's lemma: `F.D = 0` for every component, the intersection
/// matrix is negative semidefinite, and its kernel is spanned by `F`.
/// Also checks `K.F = 0`, i.e. the fibre has arithmetic genus 1.
pub fn validate(cfg: &FiberConfig) -> Result<ValidationReport, FiberError> {
    cfg.check_structure()?;
    for (c, fd) in cfg.components.iter().zip(cfg.fiber_products()) {
        if fd != 0 {
            return Err(FiberError::NotAFiber(format!("F.{} = {fd}", c.id)));
        }
    }
    let gram: Vec<Vec<BigInt>> = cfg
        .gram_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let inertia = quadform::inertia(&gram);
    if inertia.positive > 0 {
        return Err(FiberError::NotAFiber("intersection matrix is not negative semidefinite".into()));
    }
    if inertia.zero != 1 {
        return Err(FiberError::NotAFiber(format!("kernel has dimension {}, expected 1", inertia.zero)));
    }
    let canonical_degree: i64 = cfg.components.iter().map(|c| c.mult as i64 * c.canonical_degree()).sum();
    if canonical_degree != 0 {
        return Err(FiberError::NotAFiber(format!("K.F = {canonical_degree}, a fibre of genus 1 needs 0")));
    }
    Ok(ValidationReport { components: cfg.components.len(), inertia, fiber_square: 0, canonical_degree })
}

/// Label given to the image point of a contracted component.
pub fn contraction_label(id: &str) -> String {
    format!("p[{id}]")
}

/// Blow down the (-1)-component `id`.
pub fn contract(cfg: &FiberConfig, id: &str) -> Result<FiberConfig, FiberError> {
    contract_step(cfg, id).map(|(c, _)| c)
}

fn contract_step(cfg: &FiberConfig, id: &str) -> Result<(FiberConfig, ContractionStep), FiberError> {
    let theta = cfg.component(id).ok_or_else(|| FiberError::UnknownComponent(id.to_string()))?;
    let refuse = |reason: &str| FiberError::NotContractible { id: id.to_string(), reason: reason.to_string() };
    if !theta.is_contractible() {
        return Err(refuse("only smooth rational (-1)-components can be contracted"));
    }
    if cfg.components.len() == 1 {
        return Err(refuse("it is the only component"));
    }

    let fresh = contraction_label(id);
    // D.theta and the labels where D meets theta
    let mut degree: BTreeMap<&str, i64> = BTreeMap::new();
    let mut theta_labels: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut theta_labelled: BTreeMap<&str, bool> = BTreeMap::new();
    let mut on_theta: BTreeSet<String> = theta.singular_points.iter().map(|p| p.label.clone()).collect();
    for x in cfg.intersections.iter().filter(|x| x.involves(id)) {
        let other = x.other(id);
        *degree.entry(other).or_default() += x.total;
        theta_labels.entry(other).or_default().extend(x.labels.iter().cloned());
        let entry = theta_labelled.entry(other).or_insert(true);
        *entry &= x.is_labelled();
        on_theta.extend(x.labels.iter().cloned());
    }
    if degree.values().all(|&d| d == 0) {
        return Err(refuse("it meets no other component"));
    }
    let relabel = |l: &String| if on_theta.contains(l) { fresh.clone() } else { l.clone() };

    let mut components = Vec::with_capacity(cfg.components.len() - 1);
    for c in cfg.components.iter().filter(|c| c.id != id) {
        let d = degree.get(c.id.as_str()).copied().unwrap_or(0);
        let mut points: Vec<SingularPoint> = c
            .singular_points
            .iter()
            .map(|p| SingularPoint { label: relabel(&p.label), kind: p.kind })
            .collect();
        if d >= 2 {
            let labels = &theta_labels[c.id.as_str()];
            let kind = if d > 2 {
                PointKind::Other
            } else if !theta_labelled[c.id.as_str()] || labels.len() != 2 {
                PointKind::Unknown
            } else if labels[0] == labels[1] {
                PointKind::Cusp
            } else {
                PointKind::Node
            };
            points.push(SingularPoint { label: fresh.clone(), kind });
        }
        // points that now coincide
        let mut merged: Vec<SingularPoint> = Vec::new();
        for p in points {
            match merged.iter_mut().find(|q| q.label == p.label) {
                Some(q) => q.kind = PointKind::Other,
                None => merged.push(p),
            }
        }
        components.push(Component {
            id: c.id.clone(),
            self_int: c.self_int + d * d,
            mult: c.mult,
            genus: c.genus + d * (d - 1) / 2,
            singular_points: merged,
        });
    }

    let mut intersections: Vec<Intersection> = Vec::new();
    for x in cfg.intersections.iter().filter(|x| !x.involves(id)) {
        intersections.push(Intersection {
            a: x.a.clone(),
            b: x.b.clone(),
            total: x.total,
            labels: x.labels.iter().map(relabel).collect(),
        });
    }
    let met: Vec<(&str, i64)> = degree.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect();
    for (i, &(a, da)) in met.iter().enumerate() {
        for &(b, db) in &met[i + 1..] {
            let added = da * db;
            let new_labels = vec![fresh.clone(); added as usize];
            match intersections
                .iter_mut()
                .find(|x| (x.a == a && x.b == b) || (x.a == b && x.b == a))
            {
                Some(x) => {
                    let was_labelled = x.is_labelled();
                    x.total += added;
                    if was_labelled {
                        x.labels.extend(new_labels);
                    } else {
                        x.labels.clear();
                    }
                }
                None => intersections.push(Intersection { a: a.to_string(), b: b.to_string(), total: added, labels: new_labels }),
            }
        }
    }

    let step = ContractionStep {
        component: id.to_string(),
        label: fresh,
        met: met.iter().map(|&(k, d)| (k.to_string(), d)).collect(),
    };
    Ok((FiberConfig { components, intersections }, step))
}

/// Contract (-1)-components, lowest id first, until none is left.
pub fn minimalize(cfg: &FiberConfig) -> Result<(FiberConfig, Vec<ContractionStep>), FiberError> {
    validate(cfg)?;
    let mut current = cfg.clone();
    let mut history = Vec::new();
    loop {
        let next = current
            .components
            .iter()
            .filter(|c| c.is_contractible())
            .min_by(|a, b| natural_cmp(&a.id, &b.id))
            .map(|c| c.id.clone());
        let Some(id) = next else { break };
        let (after, step) = contract_step(&current, &id)?;
        debug_assert!(validate(&after).is_ok());
        current = after;
        history.push(step);
    }
    Ok((current, history))
}

/// Fibre configuration from divisor classes on a lattice.
///
/// Self-intersections, genera and intersection numbers come from the
/// pairing; every intersection point gets its own label, i.e. all
/// meetings are transversal at distinct points.
pub fn from_classes(lat: &SurfaceLattice, parts: &[(&str, DivClass, u64)]) -> Result<FiberConfig, FiberError> {
    use num_traits::ToPrimitive;
    let small = |v: BigInt| v.to_i64().ok_or_else(|| FiberError::NotAFiber("intersection number overflows".into()));
    let mut components = Vec::new();
    for (id, d, mult) in parts {
        components.push(Component {
            id: id.to_string(),
            self_int: small(lat.square(d)?)?,
            mult: *mult,
            genus: small(lat.arithmetic_genus(d)?)?,
            singular_points: Vec::new(),
        });
    }
    let mut intersections = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let t = small(lat.pair(&parts[i].1, &parts[j].1)?)?;
            if t < 0 {
                return Err(FiberError::NotAFiber(format!("{}.{} = {t} < 0", parts[i].0, parts[j].0)));
            }
            if t > 0 {
                let labels = (1..=t).map(|p| format!("{}.{}:{p}", parts[i].0, parts[j].0)).collect();
                intersections.push(Intersection { a: parts[i].0.to_string(), b: parts[j].0.to_string(), total: t, labels });
            }
        }
    }
    Ok(FiberConfig { components, intersections })
}

#[cfg(test)]
mod tests {
    use super::templates::*;
    use super::*;

    #[test]
    fn irreducible_fibre_is_valid() {
        for m in 1..4 {
            let cfg = FiberConfig::new(
                vec![Component { id: "F".into(), self_int: 0, mult: m, genus: 1, singular_points: vec![] }],
                vec![],
            );
            assert!(validate(&cfg).is_ok());
        }
    }

    #[test]
    fn rational_irreducible_is_not_elliptic() {
        let cfg = FiberConfig::new(vec![Component::rational("F", 0, 1)], vec![]);
        assert!(matches!(validate(&cfg), Err(FiberError::NotAFiber(_))));
    }

    #[test]
    fn nodal_preimage_validates() {
        assert!(validate(&nodal_template(1, None)).is_ok());
        let bad = FiberConfig::new(
            vec![Component::rational("t", -1, 1), Component::rational("C", -4, 1)],
            vec![Intersection::new("t", "C", 2)],
        );
        match validate(&bad) {
            Err(FiberError::NotAFiber(msg)) => assert!(msg.contains("F.t = 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_union_rejected() {
        let f = |id: &str| Component { id: id.into(), self_int: 0, mult: 1, genus: 1, singular_points: vec![] };
        let cfg = FiberConfig::new(vec![f("A"), f("B")], vec![]);
        assert!(matches!(validate(&cfg), Err(FiberError::NotAFiber(_))));
    }

    #[test]
    fn structural_errors() {
        let mut cfg = nodal_template(1, None);
        cfg.intersections.push(Intersection::new("t", "nope", 1));
        assert_eq!(validate(&cfg), Err(FiberError::UnknownComponent("nope".into())));
        let mut cfg = nodal_template(1, None);
        cfg.intersections[0].labels = vec!["a".into()];
        assert!(matches!(validate(&cfg), Err(FiberError::NotAFiber(_))));
    }

    #[test]
    fn contract_nodal_preimage() {
        let cfg = nodal_template(1, Some(PointKind::Node));
        let after = contract(&cfg, "t").unwrap();
        assert_eq!(after.components.len(), 1);
        let c = &after.components[0];
        assert_eq!((c.self_int, c.genus), (0, 1));
        assert_eq!(c.singular_points, vec![SingularPoint { label: contraction_label("t"), kind: PointKind::Node }]);
        assert!(validate(&after).is_ok());
    }

    #[test]
    fn contract_first_theta_of_iii() {
        let cfg = iii_template();
        let after = contract(&cfg, "t1").unwrap();
        let label = contraction_label("t1");
        assert_eq!(after.component("C1").unwrap().self_int, -3);
        assert_eq!(after.component("C2").unwrap().self_int, -3);
        assert_eq!(after.component("t2").unwrap().self_int, -1);
        assert_eq!(after.meet("C1", "C2"), 1);
        assert_eq!(after.meet_labels("C1", "C2"), vec![label]);
        assert!(validate(&after).is_ok());
    }

    #[test]
    fn contract_guards() {
        let cfg = iii_template();
        assert!(matches!(contract(&cfg, "C1"), Err(FiberError::NotContractible { .. })));
        assert!(matches!(contract(&cfg, "zz"), Err(FiberError::UnknownComponent(_))));
        let lonely = FiberConfig::new(
            vec![Component::rational("t", -1, 1), Component { id: "F".into(), self_int: 0, mult: 1, genus: 1, singular_points: vec![] }],
            vec![],
        );
        assert!(matches!(contract(&lonely, "t"), Err(FiberError::NotContractible { .. })));
    }

    #[test]
    fn minimalize_iv() {
        let (fin, history) = minimalize(&iv_template()).unwrap();
        assert_eq!(history.len(), 4);
        assert_eq!(history[3].component, "C1");
        assert_eq!(fin.components.len(), 3);
        assert!(fin.components.iter().all(|c| c.self_int == -2 && c.genus == 0));
        let shared = contraction_label("C1");
        for (a, b) in [("C2", "C3"), ("C2", "C4"), ("C3", "C4")] {
            assert_eq!(fin.meet(a, b), 1);
            assert_eq!(fin.meet_labels(a, b), vec![shared.clone()]);
        }
    }

    #[test]
    fn minimalize_iii() {
        let (fin, history) = minimalize(&iii_template()).unwrap();
        assert_eq!(history.len(), 2);
        assert_eq!(fin.components.len(), 2);
        assert_eq!(fin.meet("C1", "C2"), 2);
        let labels = fin.meet_labels("C1", "C2");
        assert_eq!(labels.len(), 2);
        assert_eq!(labels[0], labels[1]);
    }

    #[test]
    fn minimalize_cycle() {
        for r in 1..=9 {
            for m in 1..=3 {
                let (fin, history) = minimalize(&cycle_template(r, m)).unwrap();
                assert_eq!(history.len(), r);
                assert_eq!(fin.components.len(), r);
                for c in &fin.components {
                    assert_eq!(c.mult, m);
                    if r == 1 {
                        assert_eq!((c.self_int, c.genus), (0, 1));
                    } else {
                        assert_eq!((c.self_int, c.genus), (-2, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("t2", "t10"), Ordering::Less);
        assert_eq!(natural_cmp("C1", "t1"), Ordering::Less);
        assert_eq!(natural_cmp("a", "a1"), Ordering::Less);
        assert_eq!(natural_cmp("x01", "x1"), Ordering::Less);
    }

    #[test]
    fn from_lattice_classes() {
        let lat = SurfaceLattice::plane(10);
        let mut cubic = vec![-1i64; 11];
        cubic[0] = 3;
        cubic[10] = -2;
        let parts = [("t", lat.exceptional(10).unwrap(), 2), ("C", lat.class(&cubic).unwrap(), 1)];
        let cfg = from_classes(&lat, &parts).unwrap();
        assert_eq!(cfg.component("C").unwrap().self_int, -4);
        assert_eq!(cfg.meet("t", "C"), 2);
        assert!(validate(&cfg).is_ok());
        assert_eq!(classify(&cfg).unwrap().fiber_type, FiberType::Known(KodairaType::I { r: 1, m: 1 }));
    }
}
