//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's linear algebra: determinants are cofactor expansions and
//! laws are built from scratch.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dppbk::OrthonormalFrame;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cofactor expansion along the first row.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// All `k`-subsets of `0..n` as sorted index lists.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn minor(rows: &[Vec<f64>], cols: &[usize]) -> f64 {
    let m: Vec<Vec<f64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    det(&m)
}

/// `<a_1∧…∧a_k, b_1∧…∧b_k>` as the sum of products of Plücker coordinates.
pub fn plucker_inner(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let dim = a[0].len();
    combinations(dim, a.len())
        .iter()
        .map(|cols| minor(a, cols) * minor(b, cols))
        .sum()
}

pub fn plucker_norm_sq(a: &[Vec<f64>]) -> f64 {
    plucker_inner(a, a)
}

/// `N × p` matrix whose row `i` is `z_i`.
pub fn frame_rows(frame: &OrthonormalFrame) -> Vec<Vec<f64>> {
    (0..frame.n_points()).map(|i| frame.row(i).as_slice().to_vec()).collect()
}

/// `P(φ = S) = det(Z_S)²` for every `p`-subset, keyed by bitmask.
pub fn brute_law(frame: &OrthonormalFrame) -> BTreeMap<u64, f64> {
    let rows = frame_rows(frame);
    combinations(frame.n_points(), frame.rank())
        .into_iter()
        .map(|s| {
            let zs: Vec<Vec<f64>> = s.iter().map(|&i| rows[i].clone()).collect();
            (mask(&s), det(&zs).powi(2))
        })
        .collect()
}

pub fn mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn prob(law: &BTreeMap<u64, f64>, pred: impl Fn(u64) -> bool) -> f64 {
    law.iter().filter(|(&s, _)| pred(s)).map(|(_, &p)| p).sum()
}

/// Law of `φ \ J` given `pred(φ)`, keyed by original-label bitmasks.
pub fn conditional_law(law: &BTreeMap<u64, f64>, pred: impl Fn(u64) -> bool, drop: u64) -> BTreeMap<u64, f64> {
    let z = prob(law, &pred);
    let mut out = BTreeMap::new();
    for (&s, &p) in law {
        if pred(s) {
            *out.entry(s & !drop).or_insert(0.0) += p / z;
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_frame(seed: u64, n: usize, p: usize) -> OrthonormalFrame {
    OrthonormalFrame::random(&mut rng(seed), n, p).expect("random frame")
}

/// Disjoint occurrence by exhaustive search over witness pairs, for events
/// given by arbitrary generator lists.
pub fn disjoint_occurrence(a: &[u64], b: &[u64], k: u64) -> bool {
    a.iter()
        .filter(|&&l| l & !k == 0)
        .any(|&l| b.iter().any(|&m| m & !k == 0 && m & l == 0))
}

pub fn in_event(gens: &[u64], s: u64) -> bool {
    gens.iter().any(|&g| g & !s == 0)
}

pub fn singletons(set: u64) -> Vec<u64> {
    (0..64).filter(|i| set >> i & 1 == 1).map(|i| 1u64 << i).collect()
}
