//! Reference values by direct summation over assignments, written without
//! any library code so that both the BDD and the library oracle are checked
//! against it.

#![allow(dead_code)]

use std::collections::HashMap;

/// Bit of variable `x` (0-based, most significant first) in assignment `i`.
pub fn bit(i: usize, n: usize, x: usize) -> bool {
    i >> (n - 1 - x) & 1 == 1
}

/// Probability of assignment `i` when `p1[x]` is `p(x = 1)`.
pub fn weight(i: usize, p1: &[f64]) -> f64 {
    let n = p1.len();
    (0..n).map(|x| if bit(i, n, x) { p1[x] } else { 1.0 - p1[x] }).product()
}

pub fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

pub fn sat(bits: &[bool], p1: &[f64]) -> f64 {
    (0..bits.len()).filter(|&i| bits[i]).map(|i| weight(i, p1)).sum()
}

/// `p(f = 1, x = b)`.
pub fn joint(bits: &[bool], p1: &[f64], x: usize, b: bool) -> f64 {
    let n = p1.len();
    (0..bits.len())
        .filter(|&i| bits[i] && bit(i, n, x) == b)
        .map(|i| weight(i, p1))
        .sum()
}

/// `H(f | set)`: mass-weighted output entropy of each block of assignments
/// that agree on `set`.
pub fn cond_entropy(bits: &[bool], p1: &[f64], set: &[usize]) -> f64 {
    let n = p1.len();
    let mut blocks: HashMap<Vec<bool>, (f64, f64)> = HashMap::new();
    for (i, &f) in bits.iter().enumerate() {
        let key: Vec<bool> = set.iter().map(|&x| bit(i, n, x)).collect();
        let e = blocks.entry(key).or_default();
        let w = weight(i, p1);
        e.0 += w;
        if f {
            e.1 += w;
        }
    }
    blocks
        .values()
        .filter(|(m, _)| *m > 0.0)
        .map(|&(m, ones)| m * h(ones / m))
        .sum()
}

pub fn uniform(n: usize) -> Vec<f64> {
    vec![0.5; n]
}
