//! Invariants of the double cover `S -> X` branched along an even set,
//! the Kodaira-dimension trichotomy and the numerical bound tables for
//! the general-type case.
//!
//! With `C = 2L` the cover satisfies `K_S = pi^*(K_X + L)` and
//! `chi(O_S) = 2`, so `K_S^2 = 2 (K_X^2 + n)` and, by Noether,
//! `c_2(S) = 24 - K_S^2`.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::evenset::EvenSetReport;

pub const CHI_COVER: i64 = 2;
/// Largest even set with a K3 cover.
pub const K3_MAX_CURVES: usize = 10;
/// Largest even set with a properly elliptic cover.
pub const ELLIPTIC_MAX_CURVES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("K_X^2 = {kx2} is outside the general-type range -{n} < K_X^2 <= -1")]
    RegimeViolation { kx2: i64, n: i64 },
    #[error("denominator chi - (g-1)(q-1) = {0} is not positive")]
    DegenerateDenominator(i64),
    #[error("slope inequality needs g >= 2 and q >= 1 (got g = {g}, q = {q})")]
    InvalidFibration { g: i64, q: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    K3,
    EllipticKappa1,
    GeneralTypeCandidate,
    Infeasible(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::K3 => "K3",
            Verdict::EllipticKappa1 => "elliptic (kappa = 1)",
            Verdict::GeneralTypeCandidate => "general type candidate",
            Verdict::Infeasible(_) => "infeasible",
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::Infeasible(_))
    }
}

/// Whether `q(S) = 0`; not computable from lattice data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regularity {
    Regular,
    Irregular,
    #[default]
    Unknown,
}

impl std::str::FromStr for Regularity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "regular" => Ok(Regularity::Regular),
            "irregular" => Ok(Regularity::Irregular),
            "unknown" => Ok(Regularity::Unknown),
            other => Err(format!("unknown regularity `{other}` (expected regular, irregular or unknown)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl BoundCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        BoundCheck { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverClassification {
    pub n: usize,
    pub kx2: i64,
    pub ks2: i64,
    pub chi: i64,
    pub c2: i64,
    pub verdict: Verdict,
    pub bounds: Vec<BoundCheck>,
    /// Statements the verdict relies on but which lattice data cannot certify.
    pub caveats: Vec<String>,
}

pub fn cover_canonical_square(kx2: i64, n: usize) -> i64 {
    2 * (kx2 + n as i64)
}

pub fn classify(report: &EvenSetReport) -> CoverClassification {
    classify_with(report, Regularity::Unknown)
}

/// Classification with an asserted regularity of `S`, which only
/// refines the general-type feasibility check.
pub fn classify_with(report: &EvenSetReport, regularity: Regularity) -> CoverClassification {
    classify_invariants(report.n, report.kx2, report.half_is_anticanonical(), regularity)
}

/// Classification from the numerical data alone: the number of curves,
/// `K_X^2`, and whether `L = -K_X`.
pub fn classify_invariants(n: usize, kx2: i64, anticanonical: bool, regularity: Regularity) -> CoverClassification {
    let ni = n as i64;
    let ks2 = cover_canonical_square(kx2, n);
    let c2 = 12 * CHI_COVER - ks2;
    let mut bounds = vec![
        BoundCheck::new("noether", ks2 + c2 == 12 * CHI_COVER, format!("K_S^2 + c_2 = {ks2} + {c2}")),
        BoundCheck::new(
            "-n <= K_X^2 <= -1",
            -ni <= kx2 && kx2 <= -1,
            format!("K_X^2 = {kx2}, n = {n}"),
        ),
        BoundCheck::new(
            "miyaoka",
            miyaoka_check(ni, ks2, c2),
            format!("2(3 c_2 - K_S^2) = {} vs 9n = {}", 2 * (3 * c2 - ks2), 9 * ni),
        ),
    ];
    let mut caveats = vec!["nefness of K_X + L is assumed (checked only against declared (-1)-curves)".to_string()];

    let mut verdict = if kx2 < -ni {
        Verdict::Infeasible(format!(
            "K_X^2 = {kx2} < -n = {}: K_X + L is not nef; contract (-1)-curves disjoint from C first",
            -ni
        ))
    } else if kx2 >= 0 {
        Verdict::Infeasible(format!("K_X^2 = {kx2} >= 0 is impossible for an even set of (-4)-curves"))
    } else if anticanonical {
        Verdict::K3
    } else if kx2 == -ni {
        Verdict::EllipticKappa1
    } else {
        Verdict::GeneralTypeCandidate
    };

    match verdict {
        Verdict::K3 => {
            let ok = n <= K3_MAX_CURVES;
            bounds.push(BoundCheck::new("k3: 1 <= n <= 10", ok, format!("n = {n}")));
            if !ok {
                verdict = Verdict::Infeasible(format!("K3 cover with n = {n} > {K3_MAX_CURVES}"));
            }
            caveats.push("X is then a Coble surface (|-2K_X| = {C}); not checked geometrically".to_string());
        }
        Verdict::EllipticKappa1 => {
            let ok = n <= ELLIPTIC_MAX_CURVES;
            bounds.push(BoundCheck::new("elliptic: 1 <= n <= 12", ok, format!("n = {n}")));
            if !ok {
                verdict = Verdict::Infeasible(format!("elliptic cover with n = {n} > {ELLIPTIC_MAX_CURVES}"));
            }
            caveats.push(
                "requires an elliptic fibration of X containing the (-4)-curves in its fibres".to_string(),
            );
        }
        Verdict::GeneralTypeCandidate => {
            let h0 = h0_2k_plus_c(kx2, ni).expect("general-type regime");
            bounds.push(BoundCheck::new(
                "2 <= K_S^2 <= 2(n-1)",
                (2..=2 * (ni - 1)).contains(&ks2),
                format!("K_S^2 = {ks2}"),
            ));
            bounds.push(BoundCheck::new(
                "2 <= h0(2K_X + C) <= n",
                (2..=ni).contains(&h0),
                format!("h0(2K_X + C) = {h0}"),
            ));
            let feasibility = general_type_feasibility(ks2, ni, regularity);
            bounds.extend(feasibility.checks.iter().cloned());
            if !feasibility.passed {
                verdict = Verdict::Infeasible(feasibility.reasons.join("; "));
            }
            caveats.push("no surface of this kind is known; the verdict is numerical only".to_string());
        }
        Verdict::Infeasible(_) => {}
    }

    if let Some(failed) = bounds.iter().find(|b| !b.passed) {
        if !verdict.is_infeasible() {
            verdict = Verdict::Infeasible(format!("bound `{}` fails: {}", failed.name, failed.detail));
        }
    }

    CoverClassification { n, kx2, ks2, chi: CHI_COVER, c2, verdict, bounds, caveats }
}

/// `3 c_2 - K^2 >= (9/2) n`, doubled to stay in integers.
pub fn miyaoka_check(n: i64, ks2: i64, c2: i64) -> bool {
    2 * (3 * c2 - ks2) >= 9 * n
}

/// `h^0(2K_X + C) = K_X^2 + n + 1` in the general-type regime.
pub fn h0_2k_plus_c(kx2: i64, n: i64) -> Result<i64, CoverError> {
    if !(-n < kx2 && kx2 <= -1) {
        return Err(CoverError::RegimeViolation { kx2, n });
    }
    Ok(kx2 + n + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub passed: bool,
    pub reasons: Vec<String>,
    pub checks: Vec<BoundCheck>,
}

/// Admissible `n` for each `K_S^2` of a general-type cover.
pub const GENERAL_TYPE_TABLE: [(i64, i64, i64); 5] = [(2, 2, 14), (4, 3, 12), (6, 4, 10), (8, 5, 8), (10, 6, 7)];

/// Upper bound on `n` for a regular cover, from `b_2(X) <= b_2(S) - 2`.
pub const REGULAR_N_MAX: [(i64, i64); 4] = [(2, 9), (4, 8), (6, 7), (8, 6)];

pub const IRREGULAR_KS2: (i64, i64) = (6, 10);
pub const IRREGULAR_N: (i64, i64) = (4, 9);

pub fn general_type_feasibility(ks2: i64, n: i64, regularity: Regularity) -> Feasibility {
    let mut checks = Vec::new();

    let row = GENERAL_TYPE_TABLE.iter().find(|&&(k, _, _)| k == ks2);
    checks.push(BoundCheck::new(
        "general type: K_S^2 in {2,4,6,8,10}",
        row.is_some(),
        format!("K_S^2 = {ks2}"),
    ));
    if let Some(&(_, lo, hi)) = row {
        checks.push(BoundCheck::new(
            format!("general type: K_S^2 = {ks2} => {lo} <= n <= {hi}"),
            (lo..=hi).contains(&n),
            format!("n = {n}"),
        ));
    }

    match regularity {
        Regularity::Unknown => {}
        Regularity::Regular => {
            let cap = REGULAR_N_MAX.iter().find(|&&(k, _)| k == ks2);
            checks.push(BoundCheck::new("regular: 2 <= K_S^2 <= 8", cap.is_some(), format!("K_S^2 = {ks2}")));
            if let Some(&(_, max)) = cap {
                checks.push(BoundCheck::new(
                    format!("regular: K_S^2 = {ks2} => n <= {max}"),
                    n <= max,
                    format!("n = {n}"),
                ));
            }
        }
        Regularity::Irregular => {
            let (klo, khi) = IRREGULAR_KS2;
            let (nlo, nhi) = IRREGULAR_N;
            checks.push(BoundCheck::new(
                "irregular: 6 <= K_S^2 <= 10",
                (klo..=khi).contains(&ks2),
                format!("K_S^2 = {ks2}"),
            ));
            checks.push(BoundCheck::new("irregular: 4 <= n <= 9", (nlo..=nhi).contains(&n), format!("n = {n}")));
        }
    }

    let reasons: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    Feasibility { passed: reasons.is_empty(), reasons, checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeCheck {
    pub lower: Ratio<i64>,
    pub middle: Ratio<i64>,
    pub upper: Ratio<i64>,
    /// `8 (g-1)(q-1)`, the lower bound for `K_S^2`.
    pub ks2_floor: i64,
    pub passed: bool,
}

/// Slope inequality for the Albanese fibration of genus `g` over a curve
/// of genus `q`:
/// `4(g-1)/g <= (K^2 - 8(g-1)(q-1)) / (chi - (g-1)(q-1)) <= 12`,
/// together with `K^2 >= 8(g-1)(q-1)`.
pub fn slope_check(g: i64, q: i64, ks2: i64, chi: i64) -> Result<SlopeCheck, CoverError> {
    if g < 2 || q < 1 {
        return Err(CoverError::InvalidFibration { g, q });
    }
    let gq = (g - 1) * (q - 1);
    let denominator = chi - gq;
    if denominator <= 0 {
        return Err(CoverError::DegenerateDenominator(denominator));
    }
    let lower = Ratio::new(4 * (g - 1), g);
    let middle = Ratio::new(ks2 - 8 * gq, denominator);
    let upper = Ratio::from_integer(12);
    let ks2_floor = 8 * gq;
    let passed = lower <= middle && middle <= upper && ks2 >= ks2_floor;
    Ok(SlopeCheck { lower, middle, upper, ks2_floor, passed })
}

/// Genus-2 Albanese fibres: a fibre `F = C_1 + .. + C_s + 2D` with
/// `K.F = 2` forces `K.D = 1 - s` and `D^2 = -s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusTwoFibre {
    pub s: i64,
    pub kd: i64,
    pub d2: i64,
    /// `D^2 + K.D` must be even for any divisor.
    pub adjunction_parity_ok: bool,
}

pub fn genus_two_fibre(s: i64) -> GenusTwoFibre {
    // K.C_i = 2 and K.F = 2g - 2 = 2
    let kd = (2 - 2 * s) / 2;
    // C_i.F = 0 with C_i^2 = -4 gives C_i.D = 2, then D.F = 0 gives 2 D^2 = -2s
    let d2 = -s;
    GenusTwoFibre { s, kd, d2, adjunction_parity_ok: (kd + d2).rem_euclid(2) == 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trichotomy_examples() {
        let k3 = classify_invariants(1, -1, true, Regularity::Unknown);
        assert_eq!(k3.verdict, Verdict::K3);
        assert_eq!(k3.ks2, 0);

        let ell = classify_invariants(12, -12, false, Regularity::Unknown);
        assert_eq!(ell.verdict, Verdict::EllipticKappa1);
        assert_eq!((ell.ks2, ell.c2), (0, 24));

        let gt = classify_invariants(2, -1, false, Regularity::Unknown);
        assert_eq!(gt.verdict, Verdict::GeneralTypeCandidate);
        assert_eq!(gt.ks2, 2);
        assert!(gt.bounds.iter().all(|b| b.passed), "{:?}", gt.bounds);
    }

    #[test]
    fn infeasible_cases() {
        assert!(classify_invariants(1, -2, false, Regularity::Unknown).verdict.is_infeasible());
        assert!(classify_invariants(3, 0, false, Regularity::Unknown).verdict.is_infeasible());
        assert!(classify_invariants(11, -11, true, Regularity::Unknown).verdict.is_infeasible());
        assert!(classify_invariants(13, -13, false, Regularity::Unknown).verdict.is_infeasible());
        // K_S^2 = 12 is excluded for general type
        assert!(classify_invariants(7, -1, false, Regularity::Unknown).verdict.is_infeasible());
    }

    #[test]
    fn miyaoka_examples() {
        assert!(miyaoka_check(16, 0, 24));
        assert_eq!(2 * (3 * 24), 9 * 16);
        assert!(!miyaoka_check(17, 0, 24));
        assert!(miyaoka_check(0, 18, 6));
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_2k_plus_c(-1, 2), Ok(2));
        assert_eq!(h0_2k_plus_c(-2, 7), Ok(6));
        assert_eq!(h0_2k_plus_c(-5, 5), Err(CoverError::RegimeViolation { kx2: -5, n: 5 }));
        assert!(h0_2k_plus_c(0, 5).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(general_type_feasibility(10, 7, Regularity::Unknown).passed);
        assert!(!general_type_feasibility(10, 7, Regularity::Regular).passed);
        assert!(!general_type_feasibility(2, 15, Regularity::Unknown).passed);
        assert!(!general_type_feasibility(3, 5, Regularity::Unknown).passed);
        assert!(general_type_feasibility(6, 9, Regularity::Irregular).passed);
        assert!(!general_type_feasibility(4, 5, Regularity::Irregular).passed);
    }

    #[test]
    fn slope_examples() {
        let s = slope_check(2, 2, 10, 2).unwrap();
        assert_eq!(s.middle, Ratio::from_integer(2));
        assert_eq!(s.lower, Ratio::from_integer(2));
        assert!(s.passed);

        let s = slope_check(2, 2, 8, 2).unwrap();
        assert_eq!(s.middle, Ratio::from_integer(0));
        assert!(!s.passed);

        let s = slope_check(3, 1, 6, 2).unwrap();
        assert_eq!(s.ks2_floor, 0);
        assert_eq!(s.lower, Ratio::new(8, 3));
        assert_eq!(s.middle, Ratio::from_integer(3));
        assert!(s.passed);

        assert_eq!(slope_check(3, 2, 10, 2), Err(CoverError::DegenerateDenominator(0)));
        assert!(matches!(slope_check(1, 1, 2, 2), Err(CoverError::InvalidFibration { .. })));
    }

    #[test]
    fn genus_two_fibres_violate_adjunction() {
        for s in 0..20 {
            let f = genus_two_fibre(s);
            assert_eq!(f.kd + f.d2, 1 - 2 * s);
            assert!(!f.adjunction_parity_ok);
        }
    }
}
