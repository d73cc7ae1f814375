//! Brute-force enumeration of even sets with bounded coefficients.
//!
//! This module deliberately does not use [`crate::lattice`] or
//! [`crate::evenset`]: it has its own `i64` intersection form so that its
//! output can serve as an independent check on those modules.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::Ambient;

pub const MAX_K: usize = 12;
pub const MAX_BOUND: i64 = 6;
/// Row orderings tried when canonicalizing one set.
const MAX_ROW_ORDERS: usize = 40_320;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search limited to k <= {MAX_K} and coefficient bound <= {MAX_BOUND} (got k = {k}, bound = {bound})")]
    BoundsTooLarge { k: usize, bound: i64 },
    #[error("the number of curves must be positive")]
    ZeroCurves,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub ambient: Ambient,
    pub k: usize,
    pub bound: i64,
    pub n: usize,
    /// Keep one representative per orbit of permutations of `E_1..E_k`.
    pub dedup: bool,
    /// Only classes of curves of positive degree meeting every `E_i`
    /// non-negatively.
    pub strict_transforms: bool,
}

impl SearchOptions {
    pub fn new(ambient: Ambient, k: usize, bound: i64, n: usize) -> Self {
        SearchOptions { ambient, k, bound, n, dedup: true, strict_transforms: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub options: SearchOptions,
    /// Number of (-4)-classes in the box.
    pub classes: usize,
    /// Even sets, each a sorted list of coefficient vectors.
    pub sets: Vec<Vec<Vec<i64>>>,
}

fn base_rank(ambient: Ambient) -> usize {
    match ambient {
        Ambient::Plane => 1,
        Ambient::Quadric => 2,
    }
}

/// Intersection number of two coefficient vectors.
pub fn pair(ambient: Ambient, a: &[i64], b: &[i64]) -> i64 {
    let base = match ambient {
        Ambient::Plane => a[0] * b[0],
        Ambient::Quadric => a[0] * b[1] + a[1] * b[0],
    };
    let r = base_rank(ambient);
    base - a[r..].iter().zip(&b[r..]).map(|(x, y)| x * y).sum::<i64>()
}

/// `K.D`.
pub fn canonical_pairing(ambient: Ambient, d: &[i64]) -> i64 {
    let r = base_rank(ambient);
    let base = match ambient {
        Ambient::Plane => -3 * d[0],
        Ambient::Quadric => -2 * d[0] - 2 * d[1],
    };
    base - d[r..].iter().sum::<i64>()
}

fn is_strict_transform(ambient: Ambient, d: &[i64]) -> bool {
    let r = base_rank(ambient);
    let base_ok = match ambient {
        Ambient::Plane => d[0] > 0,
        Ambient::Quadric => d[0] >= 0 && d[1] >= 0 && d[0] + d[1] > 0,
    };
    base_ok && d[r..].iter().all(|&c| c <= 0)
}

// Vectors in [-bound, bound]^len with the given entry sum and sum of squares.
fn fill(len: usize, bound: i64, sum: i64, norm: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if sum == 0 && norm == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let l = len as i64;
    // Cauchy-Schwarz and box limits on what the remaining entries can reach
    if norm < 0 || sum.abs() > l * bound || norm > l * bound * bound || sum * sum > l * norm {
        return;
    }
    if (sum - norm).rem_euclid(2) != 0 {
        return;
    }
    for c in -bound..=bound {
        if c * c > norm {
            continue;
        }
        prefix.push(c);
        fill(len - 1, bound, sum - c, norm - c * c, prefix, out);
        prefix.pop();
    }
}

/// All classes with `D^2 = -4`, `K.D = 2` and coefficients bounded by
/// `bound` in absolute value, sorted.
pub fn minus_four_classes(ambient: Ambient, k: usize, bound: i64, strict_transforms: bool) -> Vec<Vec<i64>> {
    let bases: Vec<Vec<i64>> = match ambient {
        Ambient::Plane => (-bound..=bound).map(|a| vec![a]).collect(),
        Ambient::Quadric => (-bound..=bound).flat_map(|x| (-bound..=bound).map(move |y| vec![x, y])).collect(),
    };
    let mut classes: Vec<Vec<i64>> = bases
        .par_iter()
        .flat_map_iter(|base| {
            // E-part: sum c^2 = B^2 + 4 and sum c = K_base.B - 2
            let (square, kdot) = match ambient {
                Ambient::Plane => (base[0] * base[0], -3 * base[0]),
                Ambient::Quadric => (2 * base[0] * base[1], -2 * base[0] - 2 * base[1]),
            };
            let mut tails = Vec::new();
            fill(k, bound, kdot - 2, square + 4, &mut Vec::with_capacity(k), &mut tails);
            tails.into_iter().map(move |t| base.iter().copied().chain(t).collect::<Vec<i64>>())
        })
        .filter(|d| !strict_transforms || is_strict_transform(ambient, d))
        .collect();
    classes.sort();
    classes
}

fn parity_mask(d: &[i64]) -> u64 {
    d.iter().enumerate().fold(0, |m, (i, c)| if c.rem_euclid(2) == 1 { m | (1 << i) } else { m })
}

struct Finder<'a> {
    ambient: Ambient,
    classes: &'a [Vec<i64>],
    masks: Vec<u64>,
    by_mask: HashMap<u64, Vec<usize>>,
    n: usize,
}

impl Finder<'_> {
    fn orthogonal_to_all(&self, chosen: &[usize], j: usize) -> bool {
        chosen.iter().all(|&i| pair(self.ambient, &self.classes[i], &self.classes[j]) == 0)
    }

    fn extend(&self, chosen: &mut Vec<usize>, mask: u64, out: &mut Vec<Vec<usize>>) {
        let last = *chosen.last().expect("search starts from one class");
        if chosen.len() + 1 == self.n {
            // the final class must fix the parity of the sum
            if let Some(candidates) = self.by_mask.get(&mask) {
                for &j in candidates.iter().filter(|&&j| j > last) {
                    if self.orthogonal_to_all(chosen, j) {
                        let mut set = chosen.clone();
                        set.push(j);
                        out.push(set);
                    }
                }
            }
            return;
        }
        for j in last + 1..self.classes.len() {
            if self.orthogonal_to_all(chosen, j) {
                chosen.push(j);
                self.extend(chosen, mask ^ self.masks[j], out);
                chosen.pop();
            }
        }
    }
}

/// Index sets of `n` pairwise orthogonal classes with 2-divisible sum.
pub fn even_subsets(ambient: Ambient, classes: &[Vec<i64>], n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let masks: Vec<u64> = classes.iter().map(|d| parity_mask(d)).collect();
    let mut by_mask: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &m) in masks.iter().enumerate() {
        by_mask.entry(m).or_default().push(i);
    }
    let finder = Finder { ambient, classes, masks, by_mask, n };
    let mut sets: Vec<Vec<usize>> = (0..classes.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            if n == 1 {
                if finder.masks[i] == 0 {
                    out.push(vec![i]);
                }
            } else {
                finder.extend(&mut vec![i], finder.masks[i], &mut out);
            }
            out
        })
        .collect();
    sets.sort();
    sets
}

fn row_key(r: usize, row: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut tail = row[r..].to_vec();
    tail.sort_unstable();
    (row[..r].to_vec(), tail)
}

fn sorted_columns(r: usize, rows: &[&Vec<i64>]) -> Vec<Vec<i64>> {
    let width = rows[0].len();
    let mut cols: Vec<Vec<i64>> = (r..width).map(|j| rows.iter().map(|row| row[j]).collect()).collect();
    cols.sort_unstable();
    rows.iter()
        .enumerate()
        .map(|(i, row)| row[..r].iter().copied().chain(cols.iter().map(|c| c[i])).collect())
        .collect()
}

fn permutations_of_groups(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let mut orders = vec![Vec::new()];
    for g in groups {
        let choices = perms(g);
        orders = orders
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| prefix.iter().chain(c).copied().collect::<Vec<usize>>())
            })
            .collect();
    }
    orders
}

/// Representative of the orbit of an even set under permutations of the
/// exceptional classes.
///
/// Rows are ordered by a permutation-invariant key; among rows with equal
/// keys every ordering is tried and the lexicographically smallest
/// column-sorted matrix is kept. When there are more than 8! such
/// orderings only the key order is used, which can leave an orbit with
/// more than one representative.
pub fn canonical_form(ambient: Ambient, set: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if set.is_empty() {
        return Vec::new();
    }
    let r = base_rank(ambient);
    let mut keyed: Vec<((Vec<i64>, Vec<i64>), &Vec<i64>)> = set.iter().map(|row| (row_key(r, row), row)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, (key, _)) in keyed.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if keyed[g[0]].0 == *key => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let count = groups.iter().try_fold(1usize, |acc, g| (1..=g.len()).try_fold(acc, |a, f| a.checked_mul(f)));
    let orders = match count {
        Some(c) if c <= MAX_ROW_ORDERS => permutations_of_groups(&groups),
        _ => vec![(0..keyed.len()).collect()],
    };
    orders
        .into_iter()
        .map(|order| {
            let rows: Vec<&Vec<i64>> = order.iter().map(|&i| keyed[i].1).collect();
            sorted_columns(r, &rows)
        })
        .min()
        .expect("at least one ordering")
}

pub fn search(opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    if opts.k > MAX_K || opts.bound > MAX_BOUND || opts.bound < 0 {
        return Err(SearchError::BoundsTooLarge { k: opts.k, bound: opts.bound });
    }
    if opts.n == 0 {
        return Err(SearchError::ZeroCurves);
    }
    let classes = minus_four_classes(opts.ambient, opts.k, opts.bound, opts.strict_transforms);
    let subsets = even_subsets(opts.ambient, &classes, opts.n);
    let sets: Vec<Vec<Vec<i64>>> = if opts.dedup {
        let canon: BTreeSet<Vec<Vec<i64>>> = subsets
            .par_iter()
            .map(|idx| {
                let rows: Vec<Vec<i64>> = idx.iter().map(|&i| classes[i].clone()).collect();
                canonical_form(opts.ambient, &rows)
            })
            .collect();
        canon.into_iter().collect()
    } else {
        subsets.iter().map(|idx| idx.iter().map(|&i| classes[i].clone()).collect()).collect()
    };
    Ok(SearchResult { options: *opts, classes: classes.len(), sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic(k: usize) -> Vec<i64> {
        let mut v = vec![-2; k + 1];
        v[0] = 6;
        v
    }

    #[test]
    fn finds_the_ten_nodal_sextic() {
        let r = search(&SearchOptions::new(Ambient::Plane, 10, 6, 1)).unwrap();
        assert!(r.sets.contains(&vec![sextic(10)]));
        let r = search(&SearchOptions::new(Ambient::Plane, 10, 2, 1)).unwrap();
        assert!(!r.sets.contains(&vec![sextic(10)]));
    }

    #[test]
    fn two_points_numerically_vs_strictly() {
        let mut opts = SearchOptions::new(Ambient::Plane, 2, 3, 1);
        let numeric = search(&opts).unwrap();
        // -2E_1 is a numerical (-4)-class whose half has square -1
        assert!(numeric.sets.contains(&vec![vec![0, -2, 0]]) || numeric.sets.contains(&vec![vec![0, 0, -2]]));
        opts.strict_transforms = true;
        assert!(search(&opts).unwrap().sets.is_empty());
    }

    #[test]
    fn finds_two_nodal_cubics() {
        let r = search(&SearchOptions::new(Ambient::Plane, 11, 3, 2)).unwrap();
        let mut c1 = vec![3i64; 1];
        c1.extend(std::iter::repeat_n(-1, 9));
        let mut c2 = c1.clone();
        c1.extend([-2, 0]);
        c2.extend([0, -2]);
        let canon = canonical_form(Ambient::Plane, &[c1, c2]);
        assert!(r.sets.contains(&canon));
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let a = vec![vec![1, -1, -1, 0, -1, -1], vec![0, 1, 0, -1, -1, -1]];
        let b: Vec<Vec<i64>> = a.iter().map(|r| vec![r[0], r[5], r[3], r[1], r[4], r[2]]).collect();
        let b_rev: Vec<Vec<i64>> = b.iter().rev().cloned().collect();
        assert_eq!(canonical_form(Ambient::Plane, &a), canonical_form(Ambient::Plane, &b_rev));
    }

    #[test]
    fn guards() {
        assert!(matches!(search(&SearchOptions::new(Ambient::Plane, 13, 2, 1)), Err(SearchError::BoundsTooLarge { .. })));
        assert!(matches!(search(&SearchOptions::new(Ambient::Plane, 3, 7, 1)), Err(SearchError::BoundsTooLarge { .. })));
        assert_eq!(search(&SearchOptions::new(Ambient::Plane, 3, 2, 0)), Err(SearchError::ZeroCurves));
    }

    #[test]
    fn quadric_rulings() {
        // L1 - E1 - E2 - E3 - E4 on the quadric blown up in four points
        let classes = minus_four_classes(Ambient::Quadric, 4, 1, true);
        assert!(classes.contains(&vec![1, 0, -1, -1, -1, -1]));
        for d in &classes {
            assert_eq!(pair(Ambient::Quadric, d, d), -4);
            assert_eq!(canonical_pairing(Ambient::Quadric, d), 2);
        }
    }
}
