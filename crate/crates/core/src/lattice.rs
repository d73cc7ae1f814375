//! Picard lattices of blow-ups of the plane and of the quadric.
//!
//! A [`SurfaceLattice`] is the numerical Picard group of either
//! `P^2` blown up in `k` points (basis `H, E_1, .., E_k`) or
//! `P^1 x P^1` blown up in `k` points (basis `L1, L2, E_1, .., E_k`).
//! Divisor classes are integer coefficient vectors in that basis.
//! Rational surfaces have torsion-free Picard group, so linear and
//! numerical equivalence coincide and no torsion is modelled.
//!
//! Exceptional classes are addressed with 1-based indices (`E_1` is
//! `exceptional(1)`), matching the usual notation. Coordinate indices
//! reported in errors are 0-based positions in the coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quadform::{self, Inertia};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("class has {found} coefficients but the lattice has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("exceptional index {index} out of range 1..={k}")]
    ExceptionalOutOfRange { index: usize, k: usize },
    #[error("{0} is not defined on this ambient surface")]
    WrongAmbient(&'static str),
    #[error("reflection root must have square -1, -2, 1 or 2, got {0}")]
    BadRoot(BigInt),
}

/// The minimal model the blow-ups start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Plane,
    Quadric,
}

impl Ambient {
    /// Number of non-exceptional basis vectors.
    pub fn base_rank(self) -> usize {
        match self {
            Ambient::Plane => 1,
            Ambient::Quadric => 2,
        }
    }

    /// `K^2` of the unblown surface.
    pub fn base_canonical_square(self) -> i64 {
        match self {
            Ambient::Plane => 9,
            Ambient::Quadric => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ambient::Plane => "plane",
            Ambient::Quadric => "quadric",
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Ambient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plane" | "p2" => Ok(Ambient::Plane),
            "quadric" | "f0" | "p1xp1" => Ok(Ambient::Quadric),
            other => Err(format!("unknown ambient surface `{other}` (expected plane or quadric)")),
        }
    }
}

/// Integer coefficient vector of a divisor class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClass(Vec<BigInt>);

impl DivClass {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        DivClass(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        DivClass(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        DivClass(vec![BigInt::zero(); len])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Index of the first odd coordinate, if any.
    pub fn first_odd_coordinate(&self) -> Option<usize> {
        self.0.iter().position(|c| c.is_odd())
    }

    /// `c / 2`, or the first odd coordinate.
    pub fn halve(&self) -> Result<DivClass, usize> {
        if let Some(i) = self.first_odd_coordinate() {
            return Err(i);
        }
        let two = BigInt::from(2);
        Ok(DivClass(self.0.iter().map(|c| c / &two).collect()))
    }

    pub fn scale(&self, factor: &BigInt) -> DivClass {
        DivClass(self.0.iter().map(|c| c * factor).collect())
    }

    fn zip_with(&self, other: &DivClass, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> DivClass {
        assert_eq!(self.len(), other.len(), "class lengths differ");
        DivClass(self.0.iter().zip(&other.0).map(|(a, b)| op(a, b)).collect())
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for DivClass {
    // Numbers when they fit in an i64, decimal strings otherwise.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&DivClass> for i64 {
    type Output = DivClass;
    fn mul(self, rhs: &DivClass) -> DivClass {
        rhs.scale(&BigInt::from(self))
    }
}

/// Numerical Picard lattice of a blow-up of the plane or the quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceLattice {
    ambient: Ambient,
    k: usize,
}

impl SurfaceLattice {
    pub fn new(ambient: Ambient, k: usize) -> Self {
        SurfaceLattice { ambient, k }
    }

    pub fn plane(k: usize) -> Self {
        Self::new(Ambient::Plane, k)
    }

    pub fn quadric(k: usize) -> Self {
        Self::new(Ambient::Quadric, k)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Number of blown-up points.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.ambient.base_rank() + self.k
    }

    /// Diagonal entry / off-diagonal entry of the Gram matrix at `(i, j)`.
    pub fn form_entry(&self, i: usize, j: usize) -> i64 {
        let base = self.ambient.base_rank();
        match self.ambient {
            Ambient::Plane => match (i, j) {
                (0, 0) => 1,
                (a, b) if a == b && a >= base => -1,
                _ => 0,
            },
            Ambient::Quadric => match (i, j) {
                (0, 1) | (1, 0) => 1,
                (a, b) if a == b && a >= base => -1,
                _ => 0,
            },
        }
    }

    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| self.form_entry(i, j)).collect()).collect()
    }

    /// Inertia of the intersection form, by exact rational diagonalization.
    pub fn signature(&self) -> Inertia {
        let gram: Vec<Vec<BigInt>> = self
            .gram_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        quadform::inertia(&gram)
    }

    pub fn zero(&self) -> DivClass {
        DivClass::zero(self.rank())
    }

    /// Build a class from machine integers, checking the length.
    pub fn class(&self, coeffs: &[i64]) -> Result<DivClass, LatticeError> {
        let d = DivClass::from_i64s(coeffs);
        self.check(&d)?;
        Ok(d)
    }

    pub fn basis(&self, i: usize) -> DivClass {
        let mut c = vec![BigInt::zero(); self.rank()];
        c[i] = BigInt::one();
        DivClass(c)
    }

    /// Hyperplane class `H` of the plane.
    pub fn hyperplane(&self) -> Result<DivClass, LatticeError> {
        match self.ambient {
            Ambient::Plane => Ok(self.basis(0)),
            Ambient::Quadric => Err(LatticeError::WrongAmbient("H")),
        }
    }

    /// Ruling classes `L1`, `L2` of the quadric (`which` is 1 or 2).
    pub fn ruling(&self, which: usize) -> Result<DivClass, LatticeError> {
        match (self.ambient, which) {
            (Ambient::Quadric, 1) => Ok(self.basis(0)),
            (Ambient::Quadric, 2) => Ok(self.basis(1)),
            _ => Err(LatticeError::WrongAmbient("ruling class")),
        }
    }

    /// Coefficient position of `E_j`.
    pub fn exceptional_coordinate(&self, j: usize) -> Result<usize, LatticeError> {
        if j == 0 || j > self.k {
            return Err(LatticeError::ExceptionalOutOfRange { index: j, k: self.k });
        }
        Ok(self.ambient.base_rank() + j - 1)
    }

    /// Exceptional class `E_j`, `1 <= j <= k`.
    pub fn exceptional(&self, j: usize) -> Result<DivClass, LatticeError> {
        Ok(self.basis(self.exceptional_coordinate(j)?))
    }

    /// Index `j` if `d` is exactly the basis class `E_j`.
    pub fn as_basis_exceptional(&self, d: &DivClass) -> Option<usize> {
        if d.len() != self.rank() {
            return None;
        }
        let base = self.ambient.base_rank();
        let mut hit = None;
        for (i, c) in d.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < base || !c.is_one() || hit.is_some() {
                return None;
            }
            hit = Some(i - base + 1);
        }
        hit
    }

    /// `K = -3H + sum E_i` or `K = -2L1 - 2L2 + sum E_i`.
    pub fn canonical(&self) -> DivClass {
        let mut c = vec![BigInt::one(); self.rank()];
        match self.ambient {
            Ambient::Plane => c[0] = BigInt::from(-3),
            Ambient::Quadric => {
                c[0] = BigInt::from(-2);
                c[1] = BigInt::from(-2);
            }
        }
        DivClass(c)
    }

    /// `K^2 = 9 - k` or `8 - k`.
    pub fn canonical_square(&self) -> i64 {
        self.ambient.base_canonical_square() - self.k as i64
    }

    pub fn check(&self, d: &DivClass) -> Result<(), LatticeError> {
        if d.len() != self.rank() {
            return Err(LatticeError::RankMismatch { expected: self.rank(), found: d.len() });
        }
        Ok(())
    }

    /// The intersection pairing.
    pub fn pair(&self, a: &DivClass, b: &DivClass) -> Result<BigInt, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        let (a, b) = (a.coeffs(), b.coeffs());
        let base = self.ambient.base_rank();
        let mut acc = match self.ambient {
            Ambient::Plane => &a[0] * &b[0],
            Ambient::Quadric => &a[0] * &b[1] + &a[1] * &b[0],
        };
        for (x, y) in a[base..].iter().zip(&b[base..]) {
            acc -= x * y;
        }
        Ok(acc)
    }

    pub fn square(&self, d: &DivClass) -> Result<BigInt, LatticeError> {
        self.pair(d, d)
    }

    /// `K . d`.
    pub fn canonical_degree(&self, d: &DivClass) -> Result<BigInt, LatticeError> {
        self.pair(&self.canonical(), d)
    }

    /// `p_a(d) = 1 + (d^2 + K.d) / 2`.
    pub fn arithmetic_genus(&self, d: &DivClass) -> Result<BigInt, LatticeError> {
        let twice = self.square(d)? + self.canonical_degree(d)?;
        // K is characteristic, so the numerator is always even.
        debug_assert!(twice.is_even());
        Ok(BigInt::one() + twice / 2)
    }

    /// Numerical `(-r)`-curve test: `d^2 = -r` and `p_a(d) = 0`.
    pub fn is_neg_r_class(&self, d: &DivClass, r: u32) -> Result<bool, LatticeError> {
        let r = BigInt::from(r);
        Ok(self.square(d)? == -&r && self.canonical_degree(d)? == r - 2)
    }

    /// Contract the basis exceptional class `E_j`.
    pub fn blow_down_basis(&self, j: usize) -> Result<BlowDown, LatticeError> {
        let coordinate = self.exceptional_coordinate(j)?;
        Ok(BlowDown {
            source: *self,
            target: SurfaceLattice::new(self.ambient, self.k - 1),
            index: j,
            coordinate,
        })
    }

    /// Reflection `d - 2 (d.root)/(root.root) root` in a root of square `±1` or `±2`.
    ///
    /// With `root = H - E_a - E_b - E_c` this is the quadratic Cremona
    /// transformation; with `root = E_a - E_b` it swaps two points.
    pub fn reflect(&self, root: &DivClass, d: &DivClass) -> Result<DivClass, LatticeError> {
        let rr = self.square(root)?;
        let two = BigInt::from(2);
        if !matches!(rr.to_i64(), Some(-2 | -1 | 1 | 2)) {
            return Err(LatticeError::BadRoot(rr));
        }
        let coefficient = two * self.pair(d, root)? / rr;
        Ok(d - &root.scale(&coefficient))
    }

    /// Human-readable form such as `6H - 2E1 - 2E2`.
    pub fn format(&self, d: &DivClass) -> String {
        let mut out = String::new();
        let names: Vec<String> = (0..d.len()).map(|i| self.basis_name(i)).collect();
        for (c, name) in d.coeffs().iter().zip(&names) {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn basis_name(&self, i: usize) -> String {
        match (self.ambient, i) {
            (Ambient::Plane, 0) => "H".to_string(),
            (Ambient::Quadric, 0) => "L1".to_string(),
            (Ambient::Quadric, 1) => "L2".to_string(),
            _ => format!("E{}", i + 1 - self.ambient.base_rank()),
        }
    }

    /// Identify `Quadric(k)` with `Plane(k + 1)`.
    ///
    /// The quadric blown up at the point of `E_t` is the plane blown up at
    /// two points `p, q`; the returned map sends `L1 -> H - E_p`,
    /// `L2 -> H - E_q`, `E_t -> H - E_p - E_q`, and the remaining
    /// exceptional classes to `E_3, E_4, ..` in order. `E_p` and `E_q`
    /// become `E_1` and `E_2` of the plane model.
    pub fn quadric_to_plane(&self, t: usize) -> Result<Isometry, LatticeError> {
        if self.ambient != Ambient::Quadric {
            return Err(LatticeError::WrongAmbient("quadric_to_plane"));
        }
        self.exceptional_coordinate(t)?;
        let target = SurfaceLattice::plane(self.k + 1);
        let rank = self.rank();
        // images[i] = image of basis vector i, as plane coefficients
        let mut images = vec![vec![0i64; target.rank()]; rank];
        images[0][0] = 1;
        images[0][1] = -1;
        images[1][0] = 1;
        images[1][2] = -1;
        let mut next = 3;
        for j in 1..=self.k {
            let src = self.ambient.base_rank() + j - 1;
            if j == t {
                images[src][0] = 1;
                images[src][1] = -1;
                images[src][2] = -1;
            } else {
                images[src][next] = 1;
                next += 1;
            }
        }
        Ok(Isometry { source: *self, target, images })
    }
}

/// The lattice-level contraction of a basis exceptional class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowDown {
    source: SurfaceLattice,
    target: SurfaceLattice,
    index: usize,
    coordinate: usize,
}

impl BlowDown {
    pub fn source(&self) -> SurfaceLattice {
        self.source
    }

    pub fn target(&self) -> SurfaceLattice {
        self.target
    }

    /// 1-based index of the contracted `E_j`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// `D + (D.E_j) E_j` with the `E_j` coordinate deleted.
    pub fn push(&self, d: &DivClass) -> Result<DivClass, LatticeError> {
        self.source.check(d)?;
        let e = self.source.basis(self.coordinate);
        let dot = self.source.pair(d, &e)?;
        let moved = d + &e.scale(&dot);
        let mut coeffs = moved.into_coeffs();
        debug_assert!(coeffs[self.coordinate].is_zero());
        coeffs.remove(self.coordinate);
        Ok(DivClass(coeffs))
    }
}

/// A linear map between lattices given by basis images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    source: SurfaceLattice,
    target: SurfaceLattice,
    images: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn source(&self) -> SurfaceLattice {
        self.source
    }

    pub fn target(&self) -> SurfaceLattice {
        self.target
    }

    pub fn apply(&self, d: &DivClass) -> Result<DivClass, LatticeError> {
        self.source.check(d)?;
        let mut out = vec![BigInt::zero(); self.target.rank()];
        for (c, image) in d.coeffs().iter().zip(&self.images) {
            for (slot, &v) in out.iter_mut().zip(image) {
                if v != 0 {
                    *slot += c * v;
                }
            }
        }
        Ok(DivClass(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic_ten_nodes() -> (SurfaceLattice, DivClass) {
        let lat = SurfaceLattice::plane(10);
        let mut c = vec![-2i64; 11];
        c[0] = 6;
        (lat, lat.class(&c).unwrap())
    }

    #[test]
    fn unblown_surfaces() {
        let p = SurfaceLattice::plane(0);
        assert_eq!(p.rank(), 1);
        assert_eq!(p.canonical(), DivClass::from_i64s(&[-3]));
        assert_eq!(p.canonical_square(), 9);
        assert_eq!(p.square(&p.canonical()).unwrap(), BigInt::from(9));

        let q = SurfaceLattice::quadric(0);
        assert_eq!(q.rank(), 2);
        assert_eq!(q.canonical(), DivClass::from_i64s(&[-2, -2]));
        assert_eq!(q.square(&q.canonical()).unwrap(), BigInt::from(8));
    }

    #[test]
    fn canonical_square_after_ten_points() {
        let p = SurfaceLattice::plane(10);
        assert_eq!(p.canonical_square(), -1);
        assert_eq!(p.square(&p.canonical()).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn pairing_examples() {
        let (lat, c) = sextic_ten_nodes();
        let h = lat.hyperplane().unwrap();
        assert_eq!(lat.pair(&h, &h).unwrap(), BigInt::from(1));
        assert_eq!(lat.square(&c).unwrap(), BigInt::from(-4));
        assert_eq!(lat.canonical_degree(&c).unwrap(), BigInt::from(2));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let lat = SurfaceLattice::plane(2);
        let short = DivClass::from_i64s(&[1, 0]);
        assert_eq!(
            lat.pair(&short, &lat.canonical()),
            Err(LatticeError::RankMismatch { expected: 3, found: 2 })
        );
        assert!(lat.class(&[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn genus_examples() {
        let lat = SurfaceLattice::plane(10);
        let h = lat.hyperplane().unwrap();
        assert_eq!(lat.arithmetic_genus(&h).unwrap(), BigInt::zero());

        let mut cubic = vec![-1i64; 11];
        cubic[0] = 3;
        cubic[10] = 0;
        assert_eq!(lat.arithmetic_genus(&lat.class(&cubic).unwrap()).unwrap(), BigInt::one());

        let (_, c) = sextic_ten_nodes();
        assert_eq!(lat.arithmetic_genus(&c).unwrap(), BigInt::zero());
    }

    #[test]
    fn negative_curve_tests() {
        let lat = SurfaceLattice::plane(10);
        assert!(lat.is_neg_r_class(&lat.exceptional(1).unwrap(), 1).unwrap());
        let (_, c) = sextic_ten_nodes();
        assert!(lat.is_neg_r_class(&c, 4).unwrap());
        let mut cubic = vec![-1i64; 11];
        cubic[0] = 3;
        cubic[10] = 0;
        assert!(!lat.is_neg_r_class(&lat.class(&cubic).unwrap(), 4).unwrap());
    }

    #[test]
    fn blow_down_examples() {
        let lat = SurfaceLattice::plane(3);
        // D.E_1 = 1, D^2 = -4
        let d = lat.class(&[0, -1, 1, 1]).unwrap();
        assert_eq!(lat.square(&d).unwrap(), BigInt::from(-3));
        let d = lat.class(&[1, -1, -2, 0]).unwrap();
        assert_eq!(lat.square(&d).unwrap(), BigInt::from(-4));
        let bd = lat.blow_down_basis(1).unwrap();
        let img = bd.push(&d).unwrap();
        assert_eq!(bd.target().square(&img).unwrap(), BigInt::from(-3));

        // orthogonal class keeps its square
        let bd3 = lat.blow_down_basis(3).unwrap();
        let img = bd3.push(&d).unwrap();
        assert_eq!(bd3.target().square(&img).unwrap(), BigInt::from(-4));

        // D.E_j = 2, D^2 = -4: image square 0, genus 1
        let lat = SurfaceLattice::plane(10);
        let mut c = vec![-1i64; 11];
        c[0] = 3;
        c[10] = -2;
        let d = lat.class(&c).unwrap();
        assert_eq!(lat.square(&d).unwrap(), BigInt::from(-4));
        let bd = lat.blow_down_basis(10).unwrap();
        let img = bd.push(&d).unwrap();
        assert_eq!(bd.target().square(&img).unwrap(), BigInt::zero());
        assert_eq!(bd.target().arithmetic_genus(&img).unwrap(), BigInt::one());
    }

    #[test]
    fn blow_down_index_checked() {
        let lat = SurfaceLattice::plane(2);
        assert!(matches!(
            lat.blow_down_basis(3),
            Err(LatticeError::ExceptionalOutOfRange { index: 3, k: 2 })
        ));
        assert!(lat.blow_down_basis(0).is_err());
    }

    #[test]
    fn signature_is_hyperbolic() {
        for k in 0..12 {
            for lat in [SurfaceLattice::plane(k), SurfaceLattice::quadric(k)] {
                let s = lat.signature();
                assert_eq!(s.positive, 1, "{lat:?}");
                assert_eq!(s.negative, lat.rank() - 1);
                assert_eq!(s.zero, 0);
            }
        }
    }

    #[test]
    fn quadric_to_plane_is_isometry() {
        let q = SurfaceLattice::quadric(4);
        let iso = q.quadric_to_plane(2).unwrap();
        let p = iso.target();
        assert_eq!(p, SurfaceLattice::plane(5));
        assert_eq!(iso.apply(&q.canonical()).unwrap(), p.canonical());
        for i in 0..q.rank() {
            for j in 0..q.rank() {
                let a = iso.apply(&q.basis(i)).unwrap();
                let b = iso.apply(&q.basis(j)).unwrap();
                assert_eq!(p.pair(&a, &b).unwrap(), q.pair(&q.basis(i), &q.basis(j)).unwrap());
            }
        }
    }

    #[test]
    fn cremona_reflection_preserves_canonical() {
        let lat = SurfaceLattice::plane(4);
        let root = lat.class(&[1, -1, -1, -1, 0]).unwrap();
        assert_eq!(lat.reflect(&root, &lat.canonical()).unwrap(), lat.canonical());
        let h = lat.hyperplane().unwrap();
        assert_eq!(lat.reflect(&root, &h).unwrap(), lat.class(&[2, -1, -1, -1, 0]).unwrap());
        assert!(lat.reflect(&h, &h).is_ok());
        assert!(matches!(lat.reflect(&lat.class(&[3, 0, 0, 0, 0]).unwrap(), &h), Err(LatticeError::BadRoot(_))));
    }

    #[test]
    fn formatting() {
        let (lat, c) = sextic_ten_nodes();
        assert!(lat.format(&c).starts_with("6H - 2E1 - 2E2"));
        assert_eq!(lat.format(&lat.zero()), "0");
        let q = SurfaceLattice::quadric(1);
        assert_eq!(q.format(&q.canonical()), "-2L1 - 2L2 + E1");
    }

    #[test]
    fn halving() {
        let d = DivClass::from_i64s(&[6, -2, -2]);
        assert_eq!(d.halve().unwrap(), DivClass::from_i64s(&[3, -1, -1]));
        assert_eq!(DivClass::zero(3).halve().unwrap(), DivClass::zero(3));
        assert_eq!(DivClass::from_i64s(&[3, -2]).halve(), Err(0));
    }
}
