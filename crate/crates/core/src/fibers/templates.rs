//! Pre-contraction fibre configurations of the shapes that arise from
//! (-4)-curves and the (-1)-curves meeting them, plus two minimal
//! star-shaped fibres.

use super::{Component, FiberConfig, Intersection, PointKind, SingularPoint};

fn labelled(a: &str, b: &str) -> Intersection {
    let label = format!("{a}.{b}");
    Intersection::labelled(a, b, &[&label])
}

/// `m(2t + C)` with `t.C = 2`.
///
/// `Node` places the two meeting points apart, `Cusp` makes `t` tangent
/// to `C`; `None` (or any other kind) leaves the points unlabelled.
pub fn nodal_template(m: u64, kind: Option<PointKind>) -> FiberConfig {
    let meet = match kind {
        Some(PointKind::Node) => Intersection::labelled("t", "C", &["t.C:1", "t.C:2"]),
        Some(PointKind::Cusp) => Intersection::labelled("t", "C", &["t.C", "t.C"]),
        _ => Intersection::new("t", "C", 2),
    };
    FiberConfig::new(vec![Component::rational("t", -1, 2 * m), Component::rational("C", -4, m)], vec![meet])
}

/// `4t1 + 2t2 + C1 + C2`, contracting to two (-2)-curves tangent at a point.
pub fn iii_template() -> FiberConfig {
    FiberConfig::new(
        vec![
            Component::rational("t1", -1, 4),
            Component::rational("t2", -2, 2),
            Component::rational("C1", -4, 1),
            Component::rational("C2", -4, 1),
        ],
        vec![labelled("t1", "t2"), labelled("t1", "C1"), labelled("t1", "C2")],
    )
}

/// `4(t1 + t2 + t3) + 3C1 + C2 + C3 + C4`, contracting to three concurrent (-2)-curves.
pub fn iv_template() -> FiberConfig {
    FiberConfig::new(
        vec![
            Component::rational("t1", -1, 4),
            Component::rational("t2", -1, 4),
            Component::rational("t3", -1, 4),
            Component::rational("C1", -4, 3),
            Component::rational("C2", -4, 1),
            Component::rational("C3", -4, 1),
            Component::rational("C4", -4, 1),
        ],
        vec![
            labelled("t1", "C1"),
            labelled("t2", "C1"),
            labelled("t3", "C1"),
            labelled("t1", "C2"),
            labelled("t2", "C3"),
            labelled("t3", "C4"),
        ],
    )
}

/// `m * sum (C_i + 2 t_i)` with `t_i` meeting `C_i` and `C_{i+1}` cyclically.
///
/// For `r = 1` the single `t` meets `C` in two distinct points.
pub fn cycle_template(r: usize, m: u64) -> FiberConfig {
    assert!(r >= 1, "a cycle needs at least one component");
    let mut comps = Vec::with_capacity(2 * r);
    for i in 1..=r {
        comps.push(Component::rational(format!("C{i}"), -4, m));
        comps.push(Component::rational(format!("t{i}"), -1, 2 * m));
    }
    let mut meets = Vec::with_capacity(2 * r);
    if r == 1 {
        meets.push(Intersection::labelled("t1", "C1", &["t1.C1:1", "t1.C1:2"]));
    } else {
        for i in 1..=r {
            let next = i % r + 1;
            meets.push(labelled(&format!("t{i}"), &format!("C{i}")));
            meets.push(labelled(&format!("t{i}"), &format!("C{next}")));
        }
    }
    FiberConfig::new(comps, meets)
}

/// Five (-2)-curves in a star, centre of multiplicity 2.
pub fn dtilde4_template() -> FiberConfig {
    let mut comps = vec![Component::rational("c", -2, 2)];
    let mut meets = Vec::new();
    for i in 1..=4 {
        comps.push(Component::rational(format!("a{i}"), -2, 1));
        meets.push(labelled("c", &format!("a{i}")));
    }
    FiberConfig::new(comps, meets)
}

/// Seven (-2)-curves: a centre of multiplicity 3 with three arms of length 2.
pub fn etilde6_template() -> FiberConfig {
    let mut comps = vec![Component::rational("c", -2, 3)];
    let mut meets = Vec::new();
    for arm in ["a", "b", "d"] {
        let inner = format!("{arm}1");
        let outer = format!("{arm}2");
        comps.push(Component::rational(inner.clone(), -2, 2));
        comps.push(Component::rational(outer.clone(), -2, 1));
        meets.push(labelled("c", &inner));
        meets.push(labelled(&inner, &outer));
    }
    FiberConfig::new(comps, meets)
}

/// An irreducible fibre of arithmetic genus 1 with one singular point of
/// the given kind, or smooth when `kind` is `None`.
pub fn irreducible(m: u64, kind: Option<PointKind>) -> FiberConfig {
    let singular_points = kind.map(|kind| SingularPoint { label: "p".into(), kind }).into_iter().collect();
    FiberConfig::new(vec![Component { id: "F".into(), self_int: 0, mult: m, genus: 1, singular_points }], vec![])
}
