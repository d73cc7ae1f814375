//! Verification of even sets of disjoint (-4)-curves.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DivClass, LatticeError, SurfaceLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvenSetError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("the curve list is empty")]
    Empty,
    #[error("curve {} is not a numerical (-4)-curve", .0 + 1)]
    /// Indices are 0-based; messages count from 1.
    NotMinus4(usize),
    #[error("curves {} and {} are the same class", .0 + 1, .1 + 1)]
    Duplicate(usize, usize),
    #[error("curves {} and {} are not disjoint", .0 + 1, .1 + 1)]
    NotDisjoint(usize, usize),
    #[error("entry {} of the curve sum is odd", .0 + 1)]
    NotTwoDivisible(usize),
    #[error("identity `{0}` failed")]
    IdentityViolation(&'static str),
    #[error("declared class {} is not a numerical (-1)-curve", .0 + 1)]
    NotMinusOne(usize),
    #[error("declared (-1)-class {} is disjoint from the even set but is not a basis exceptional class", .0 + 1)]
    NonBasisContraction(usize),
}

/// Nefness of `K_X + L` cannot be decided from lattice data; this records
/// what was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nefness {
    /// No check against the (-1)-curves of the surface has been possible.
    Conditional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// A verified even set together with its half-class and identity checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenSetReport {
    pub lattice: SurfaceLattice,
    pub curves: Vec<DivClass>,
    pub n: usize,
    pub half_class: DivClass,
    pub kx2: i64,
    pub checks: Vec<IdentityCheck>,
    pub nefness: Nefness,
}

impl EvenSetReport {
    /// `L = -K_X` exactly.
    pub fn half_is_anticanonical(&self) -> bool {
        self.half_class == -&self.lattice.canonical()
    }

    /// `(K + L)^2`.
    pub fn adjoint_square(&self) -> BigInt {
        let kl = &self.lattice.canonical() + &self.half_class;
        self.lattice.square(&kl).expect("report classes have lattice rank")
    }
}

pub const CHECK_MINUS4: &str = "each C_i is a (-4)-class";
pub const CHECK_DISJOINT: &str = "C_i.C_j = 0 for i != j";
pub const CHECK_EVEN: &str = "sum C_i = 2L";
pub const CHECK_L_SQUARE: &str = "L^2 = -n";
pub const CHECK_KL: &str = "K.L = n";
pub const CHECK_KL_PLUS_L2: &str = "K.L + L^2 = 0";
pub const CHECK_ADJOINT: &str = "(K+L)^2 = K^2 + n";

/// `c / 2`.
pub fn half_class(c: &DivClass) -> Result<DivClass, EvenSetError> {
    c.halve().map_err(EvenSetError::NotTwoDivisible)
}

pub fn verify_even_set(lat: &SurfaceLattice, curves: &[DivClass]) -> Result<EvenSetReport, EvenSetError> {
    if curves.is_empty() {
        return Err(EvenSetError::Empty);
    }
    for (i, c) in curves.iter().enumerate() {
        if !lat.is_neg_r_class(c, 4)? {
            return Err(EvenSetError::NotMinus4(i));
        }
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if curves[i] == curves[j] {
                return Err(EvenSetError::Duplicate(i, j));
            }
            if !lat.pair(&curves[i], &curves[j])?.is_zero() {
                return Err(EvenSetError::NotDisjoint(i, j));
            }
        }
    }
    let sum = curves.iter().skip(1).fold(curves[0].clone(), |acc, c| &acc + c);
    let half = half_class(&sum)?;

    let n = curves.len();
    let nb = BigInt::from(n);
    let kx2 = lat.canonical_square();
    let l2 = lat.square(&half)?;
    let kl = lat.canonical_degree(&half)?;
    let adjoint = lat.square(&(&lat.canonical() + &half))?;
    let identities = [
        (CHECK_L_SQUARE, l2 == -&nb),
        (CHECK_KL, kl == nb),
        (CHECK_KL_PLUS_L2, (&kl + &l2).is_zero()),
        (CHECK_ADJOINT, adjoint == BigInt::from(kx2) + &nb),
    ];
    let mut checks = vec![
        IdentityCheck { name: CHECK_MINUS4, passed: true },
        IdentityCheck { name: CHECK_DISJOINT, passed: true },
        IdentityCheck { name: CHECK_EVEN, passed: true },
    ];
    for (name, passed) in identities {
        if !passed {
            return Err(EvenSetError::IdentityViolation(name));
        }
        checks.push(IdentityCheck { name, passed });
    }

    Ok(EvenSetReport {
        lattice: *lat,
        curves: curves.to_vec(),
        n,
        half_class: half,
        kx2,
        checks,
        nefness: Nefness::Conditional,
    })
}

/// Contract declared (-1)-curves that miss the even set.
///
/// Each round looks for the first declared class, transported to the
/// current lattice, that is still a (-1)-class, is orthogonal to every
/// `C_i` and is a basis exceptional class; it is blown down and the even
/// set re-verified. Classes that stop being (-1)-classes after an earlier
/// contraction (they met the contracted curve) drop out.
pub fn nef_reduction(
    report: &EvenSetReport,
    declared_minus_ones: &[DivClass],
) -> Result<(EvenSetReport, Vec<DivClass>), EvenSetError> {
    let lat = report.lattice;
    for (i, d) in declared_minus_ones.iter().enumerate() {
        if !lat.is_neg_r_class(d, 1)? {
            return Err(EvenSetError::NotMinusOne(i));
        }
    }

    let mut current = report.clone();
    // (original index, class on the current lattice)
    let mut pending: Vec<(usize, DivClass)> = declared_minus_ones.iter().cloned().enumerate().collect();
    let mut contracted = Vec::new();

    loop {
        let lat = current.lattice;
        let mut chosen = None;
        for (pos, (orig, d)) in pending.iter().enumerate() {
            if !lat.is_neg_r_class(d, 1)? {
                continue;
            }
            let mut misses = true;
            for c in &current.curves {
                if !lat.pair(d, c)?.is_zero() {
                    misses = false;
                    break;
                }
            }
            if !misses {
                continue;
            }
            match lat.as_basis_exceptional(d) {
                Some(j) => {
                    chosen = Some((pos, j));
                    break;
                }
                None => return Err(EvenSetError::NonBasisContraction(*orig)),
            }
        }
        let Some((pos, j)) = chosen else { break };

        let (_, d) = pending.remove(pos);
        let blow_down = lat.blow_down_basis(j)?;
        let curves = current
            .curves
            .iter()
            .map(|c| blow_down.push(c))
            .collect::<Result<Vec<_>, _>>()?;
        pending = pending
            .into_iter()
            .map(|(orig, p)| blow_down.push(&p).map(|q| (orig, q)))
            .collect::<Result<Vec<_>, _>>()?;
        current = verify_even_set(&blow_down.target(), &curves)?;
        contracted.push(d);
    }
    Ok((current, contracted))
}
