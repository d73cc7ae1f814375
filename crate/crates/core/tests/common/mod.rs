#![allow(dead_code)]

use evenset::lattice::{Ambient, DivClass, SurfaceLattice};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

/// Apply a random lattice isometry fixing `K`: a permutation of the
/// exceptional classes, a reflection in a (-2)-root orthogonal to `K`, or
/// one more blown-up point missing every curve.
pub fn random_isometry<R: Rng>(lat: SurfaceLattice, curves: &[DivClass], rng: &mut R) -> (SurfaceLattice, Vec<DivClass>) {
    let base = lat.ambient().base_rank();
    match rng.random_range(0..3) {
        0 if lat.k() >= 2 => {
            let mut perm: Vec<usize> = (0..lat.k()).collect();
            perm.shuffle(rng);
            let moved = curves
                .iter()
                .map(|c| {
                    let mut v = c.coeffs()[..base].to_vec();
                    v.extend(perm.iter().map(|&p| c.coeffs()[base + p].clone()));
                    DivClass::new(v)
                })
                .collect();
            (lat, moved)
        }
        1 if lat.k() >= 3 => {
            let mut idx: Vec<usize> = (1..=lat.k()).collect();
            idx.shuffle(rng);
            let mut root = vec![0i64; lat.rank()];
            match lat.ambient() {
                // H - E_a - E_b - E_c
                Ambient::Plane => {
                    root[0] = 1;
                    for &j in &idx[..3] {
                        root[lat.exceptional_coordinate(j).unwrap()] = -1;
                    }
                }
                // L1 - E_a - E_b
                Ambient::Quadric => {
                    root[0] = 1;
                    for &j in &idx[..2] {
                        root[lat.exceptional_coordinate(j).unwrap()] = -1;
                    }
                }
            }
            let root = lat.class(&root).unwrap();
            let moved = curves.iter().map(|c| lat.reflect(&root, c).unwrap()).collect();
            (lat, moved)
        }
        _ => {
            let bigger = SurfaceLattice::new(lat.ambient(), lat.k() + 1);
            let moved = curves
                .iter()
                .map(|c| {
                    let mut v = c.coeffs().to_vec();
                    v.push(BigInt::from(0));
                    DivClass::new(v)
                })
                .collect();
            (bigger, moved)
        }
    }
}

/// The class with one coefficient shifted by `delta`.
pub fn bump(c: &DivClass, coordinate: usize, delta: i64) -> DivClass {
    let mut v = c.coeffs().to_vec();
    v[coordinate] += delta;
    DivClass::new(v)
}
