use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::{minimalize, ContractionStep, FiberConfig, FiberError, PointKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KodairaType {
    Smooth,
    I { r: u64, m: u64 },
    II { m: u64 },
    III,
    IV,
    Dtilde4,
    Etilde6,
    /// Recognized numerically (e.g. `I_n*`, `III*`, `II*`) but outside the template set.
    NumericClass(String),
    Unrecognized,
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mult = |f: &mut fmt::Formatter<'_>, m: u64| if m > 1 { write!(f, "{m}") } else { Ok(()) };
        match self {
            KodairaType::Smooth => write!(f, "smooth"),
            KodairaType::I { r, m } => {
                mult(f, *m)?;
                write!(f, "I{r}")
            }
            KodairaType::II { m } => {
                mult(f, *m)?;
                write!(f, "II")
            }
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::Dtilde4 => write!(f, "D~4"),
            KodairaType::Etilde6 => write!(f, "E~6"),
            KodairaType::NumericClass(desc) => write!(f, "{desc}"),
            KodairaType::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A classification that the available data pins down, or the list of
/// types it cannot tell apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "types", rename_all = "lowercase")]
pub enum FiberType {
    Known(KodairaType),
    Ambiguous(Vec<KodairaType>),
}

impl FiberType {
    pub fn known(&self) -> Option<&KodairaType> {
        match self {
            FiberType::Known(t) => Some(t),
            FiberType::Ambiguous(_) => None,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self, FiberType::Ambiguous(_))
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::Known(t) => write!(f, "{t}"),
            FiberType::Ambiguous(ts) => {
                let names: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "ambiguous {{{}}}", names.join(" or "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberClassification {
    pub fiber_type: FiberType,
    pub multiplicity: u64,
    pub minimal: FiberConfig,
    pub history: Vec<ContractionStep>,
}

/// Minimalize, then match the result against the Kodaira templates.
pub fn classify(cfg: &FiberConfig) -> Result<FiberClassification, FiberError> {
    let (minimal, history) = minimalize(cfg)?;
    let m = minimal.components.iter().fold(0u64, |g, c| g.gcd(&c.mult));
    let fiber_type = match_minimal(&minimal, m);
    Ok(FiberClassification { fiber_type, multiplicity: m, minimal, history })
}

fn match_minimal(cfg: &FiberConfig, m: u64) -> FiberType {
    use KodairaType as K;
    let known = FiberType::Known;
    let comps = &cfg.components;

    if let [c] = comps.as_slice() {
        if c.genus != 1 {
            return known(K::Unrecognized);
        }
        return match c.singular_points.as_slice() {
            [] => known(K::Smooth),
            [p] => match p.kind {
                PointKind::Node => known(K::I { r: 1, m }),
                PointKind::Cusp => known(K::II { m }),
                PointKind::Unknown => FiberType::Ambiguous(vec![K::I { r: 1, m }, K::II { m }]),
                PointKind::Other => known(K::Unrecognized),
            },
            _ => known(K::Unrecognized),
        };
    }

    if !comps.iter().all(|c| c.self_int == -2 && c.genus == 0 && c.singular_points.is_empty()) {
        return known(K::Unrecognized);
    }
    let r = comps.len();
    let ids: Vec<&str> = comps.iter().map(|c| c.id.as_str()).collect();

    if r == 2 {
        if cfg.meet(ids[0], ids[1]) != 2 {
            return known(K::Unrecognized);
        }
        if !cfg.meet_is_labelled(ids[0], ids[1]) {
            return FiberType::Ambiguous(vec![K::I { r: 2, m }, K::III]);
        }
        let labels = cfg.meet_labels(ids[0], ids[1]);
        return if labels[0] == labels[1] { known(K::III) } else { known(K::I { r: 2, m }) };
    }

    // adjacency of the dual graph; all meetings must now be simple
    let mut adj: BTreeMap<&str, Vec<&str>> = ids.iter().map(|&id| (id, Vec::new())).collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            match cfg.meet(a, b) {
                0 => {}
                1 => {
                    adj.get_mut(a).unwrap().push(b);
                    adj.get_mut(b).unwrap().push(a);
                }
                _ => return known(K::Unrecognized),
            }
        }
    }
    let edges: usize = adj.values().map(Vec::len).sum::<usize>() / 2;

    if edges == r && adj.values().all(|v| v.len() == 2) {
        if r == 3 {
            let pairs = [(ids[0], ids[1]), (ids[0], ids[2]), (ids[1], ids[2])];
            if !pairs.iter().all(|&(a, b)| cfg.meet_is_labelled(a, b)) {
                return FiberType::Ambiguous(vec![K::I { r: 3, m }, K::IV]);
            }
            let labels: Vec<String> = pairs.iter().map(|&(a, b)| cfg.meet_labels(a, b)[0].clone()).collect();
            return if labels[0] == labels[1] && labels[1] == labels[2] {
                known(K::IV)
            } else if labels[0] != labels[1] && labels[1] != labels[2] && labels[0] != labels[2] {
                known(K::I { r: 3, m })
            } else {
                known(K::Unrecognized)
            };
        }
        return known(K::I { r: r as u64, m });
    }

    if edges + 1 != r {
        return known(K::Unrecognized);
    }
    // trees: affine D and E diagrams
    let branch: Vec<&str> = adj.iter().filter(|(_, v)| v.len() >= 3).map(|(&k, _)| k).collect();
    match branch.as_slice() {
        [c] if adj[c].len() == 4 && r == 5 => known(K::Dtilde4),
        [_, _] if adj.values().all(|v| v.len() <= 3) => known(K::NumericClass(format!("I{}*", r - 5))),
        [c] if adj[c].len() == 3 => {
            let mut arms: Vec<usize> = adj[c].iter().map(|&start| arm_length(&adj, c, start)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [2, 2, 2] => known(K::Etilde6),
                [1, 3, 3] => known(K::NumericClass("III*".into())),
                [1, 2, 5] => known(K::NumericClass("II*".into())),
                _ => known(K::Unrecognized),
            }
        }
        _ => known(K::Unrecognized),
    }
}

fn arm_length(adj: &BTreeMap<&str, Vec<&str>>, center: &str, start: &str) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<&str> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = n;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Topological Euler number of a fibre type.
pub fn euler_char(t: &KodairaType) -> Result<i64, FiberError> {
    match t {
        KodairaType::Smooth => Ok(0),
        KodairaType::I { r, .. } => Ok(*r as i64),
        KodairaType::II { .. } => Ok(2),
        KodairaType::III => Ok(3),
        KodairaType::IV => Ok(4),
        KodairaType::Dtilde4 => Ok(6),
        KodairaType::Etilde6 => Ok(8),
        other => Err(FiberError::UnrecognizedType(other.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub sum: i64,
    pub total: i64,
    pub residual: i64,
    pub exact: bool,
}

impl fmt::Display for BudgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "budget {}/{}", self.sum, self.total)?;
        if self.exact {
            write!(f, " exact")
        } else {
            write!(f, " residual {}", self.residual)
        }
    }
}

/// The Euler numbers of the singular fibres add up to at most `c2`,
/// which is 12 for a rational elliptic surface and 24 for the cover.
pub fn c2_budget(types: &[KodairaType], total: i64) -> Result<BudgetReport, FiberError> {
    if total != 12 && total != 24 {
        return Err(FiberError::InvalidBudgetTotal(total));
    }
    let mut sum = 0;
    for t in types {
        sum += euler_char(t)?;
    }
    if sum > total {
        return Err(FiberError::BudgetExceeded { sum, total });
    }
    Ok(BudgetReport { sum, total, residual: total - sum, exact: sum == total })
}

/// Type of the pullback of a branch fibre to the double cover, and the
/// factor in front of it.
pub fn pullback_type(t: &KodairaType) -> Result<(KodairaType, u64), FiberError> {
    match t {
        KodairaType::I { r, m } => Ok((KodairaType::I { r: 2 * r, m: *m }, 2)),
        KodairaType::II { .. } => Ok((KodairaType::III, 2)),
        KodairaType::III => Ok((KodairaType::Dtilde4, 2)),
        KodairaType::IV => Ok((KodairaType::Etilde6, 2)),
        other => Err(FiberError::NotInTable(other.to_string())),
    }
}

/// Degree of `K_S` on a fibre class for an elliptic fibration over a
/// curve of genus `g` with multiple fibres of the given multiplicities:
/// `2g - 2 + chi + sum (m - 1)/m`.
pub fn canonical_degree(g_base: u64, chi: i64, mults: &[u64]) -> Ratio<i64> {
    let mut total = Ratio::from_integer(2 * g_base as i64 - 2 + chi);
    for &m in mults {
        let m = m as i64;
        total += Ratio::new(m - 1, m);
    }
    total
}

/// Genus of the base of the fibration on the cover from the degree of
/// the ramification divisor: `deg R / 2 - 1`.
pub fn hurwitz_genus(deg_r: i64) -> Result<i64, FiberError> {
    if deg_r % 2 != 0 {
        return Err(FiberError::OddDegree(deg_r));
    }
    if deg_r <= 0 {
        return Err(FiberError::NoBranchPoints(deg_r));
    }
    Ok(deg_r / 2 - 1)
}

/// Check `n' <= deg R <= n' + 1` and return the base genus.
pub fn ramification_check(n_prime: i64, deg_r: i64) -> Result<i64, FiberError> {
    let g = hurwitz_genus(deg_r)?;
    if deg_r < n_prime || deg_r > n_prime + 1 {
        return Err(FiberError::RamificationOutOfRange { n_prime, deg_r });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::templates::*;
    use super::*;
    use KodairaType as K;

    fn kind(cfg: &FiberConfig) -> FiberType {
        classify(cfg).unwrap().fiber_type
    }

    #[test]
    fn template_types() {
        assert_eq!(kind(&iv_template()), FiberType::Known(K::IV));
        assert_eq!(kind(&iii_template()), FiberType::Known(K::III));
        assert_eq!(kind(&dtilde4_template()), FiberType::Known(K::Dtilde4));
        assert_eq!(kind(&etilde6_template()), FiberType::Known(K::Etilde6));
        for r in 1..=9 {
            for m in 1..=3 {
                let c = classify(&cycle_template(r, m)).unwrap();
                assert_eq!(c.fiber_type, FiberType::Known(K::I { r: r as u64, m }), "r={r} m={m}");
                assert_eq!(c.multiplicity, m);
            }
        }
    }

    #[test]
    fn nodal_and_cuspidal() {
        for m in 1..=3 {
            assert_eq!(kind(&nodal_template(m, Some(PointKind::Node))), FiberType::Known(K::I { r: 1, m }));
            assert_eq!(kind(&nodal_template(m, Some(PointKind::Cusp))), FiberType::Known(K::II { m }));
            assert_eq!(
                kind(&nodal_template(m, None)),
                FiberType::Ambiguous(vec![K::I { r: 1, m }, K::II { m }])
            );
        }
    }

    #[test]
    fn smooth_and_unlabelled_minimal() {
        let smooth = FiberConfig::new(
            vec![super::super::Component { id: "F".into(), self_int: 0, mult: 1, genus: 1, singular_points: vec![] }],
            vec![],
        );
        assert_eq!(kind(&smooth), FiberType::Known(K::Smooth));
        let two = FiberConfig::new(
            vec![super::super::Component::rational("A", -2, 1), super::super::Component::rational("B", -2, 1)],
            vec![super::super::Intersection::new("A", "B", 2)],
        );
        assert_eq!(kind(&two), FiberType::Ambiguous(vec![K::I { r: 2, m: 1 }, K::III]));
    }

    #[test]
    fn larger_trees_are_numeric() {
        use super::super::{Component, Intersection};
        // D~5: two branch vertices
        let comps = vec![
            Component::rational("a", -2, 1),
            Component::rational("b", -2, 1),
            Component::rational("c", -2, 2),
            Component::rational("d", -2, 2),
            Component::rational("e", -2, 1),
            Component::rational("f", -2, 1),
        ];
        let meets = vec![
            Intersection::new("a", "c", 1),
            Intersection::new("b", "c", 1),
            Intersection::new("c", "d", 1),
            Intersection::new("d", "e", 1),
            Intersection::new("d", "f", 1),
        ];
        assert_eq!(kind(&FiberConfig::new(comps, meets)), FiberType::Known(K::NumericClass("I1*".into())));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_char(&K::I { r: 5, m: 3 }).unwrap(), 5);
        assert_eq!(euler_char(&K::IV).unwrap(), 4);
        assert_eq!(euler_char(&K::Etilde6).unwrap(), 8);
        assert!(matches!(euler_char(&K::Unrecognized), Err(FiberError::UnrecognizedType(_))));
    }

    #[test]
    fn budgets() {
        let twelve = vec![K::I { r: 1, m: 1 }; 12];
        let b = c2_budget(&twelve, 12).unwrap();
        assert!(b.exact);
        assert_eq!(b.to_string(), "budget 12/12 exact");
        let up = vec![K::I { r: 2, m: 1 }; 12];
        assert!(c2_budget(&up, 24).unwrap().exact);
        assert_eq!(
            c2_budget(&[K::IV, K::I { r: 9, m: 1 }], 12),
            Err(FiberError::BudgetExceeded { sum: 13, total: 12 })
        );
        assert_eq!(c2_budget(&[], 13), Err(FiberError::InvalidBudgetTotal(13)));
        assert_eq!(c2_budget(&[K::III], 12).unwrap().residual, 9);
    }

    #[test]
    fn pullbacks() {
        assert_eq!(pullback_type(&K::I { r: 1, m: 1 }).unwrap(), (K::I { r: 2, m: 1 }, 2));
        assert_eq!(pullback_type(&K::II { m: 1 }).unwrap(), (K::III, 2));
        assert_eq!(pullback_type(&K::III).unwrap(), (K::Dtilde4, 2));
        assert_eq!(pullback_type(&K::IV).unwrap(), (K::Etilde6, 2));
        assert!(matches!(pullback_type(&K::Dtilde4), Err(FiberError::NotInTable(_))));
        for r in 1..=9 {
            let (up, _) = pullback_type(&K::I { r, m: 1 }).unwrap();
            assert_eq!(euler_char(&up).unwrap(), 2 * r as i64);
        }
    }

    #[test]
    fn canonical_degrees() {
        assert_eq!(canonical_degree(0, 2, &[]), Ratio::from_integer(0));
        assert_eq!(canonical_degree(5, 2, &[]), Ratio::from_integer(10));
        assert_eq!(canonical_degree(0, 2, &[2, 2]), Ratio::from_integer(1));
        assert_eq!(canonical_degree(0, 1, &[2]), Ratio::new(-1, 2));
    }

    #[test]
    fn hurwitz() {
        assert_eq!(hurwitz_genus(2).unwrap(), 0);
        assert_eq!(hurwitz_genus(12).unwrap(), 5);
        assert_eq!(hurwitz_genus(5), Err(FiberError::OddDegree(5)));
        assert_eq!(hurwitz_genus(0), Err(FiberError::NoBranchPoints(0)));
        assert_eq!(ramification_check(3, 5), Err(FiberError::OddDegree(5)));
        assert_eq!(ramification_check(12, 12).unwrap(), 5);
        assert_eq!(ramification_check(11, 12).unwrap(), 5);
        assert!(matches!(ramification_check(9, 12), Err(FiberError::RamificationOutOfRange { .. })));
    }
}
