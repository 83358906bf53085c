//! Bottleneck distance between finite barcodes.

use super::{Bar, Barcode};
use crate::error::{Error, Result};

fn linf(a: &Bar, b: &Bar) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

fn half(a: &Bar) -> f64 {
    a.length() / 2.0
}

/// Cost of pairing left slot `i` with right slot `j` in the square
/// `(m + n) x (n + m)` problem where the extra slots are diagonal copies.
fn cost(x: &[Bar], y: &[Bar], i: usize, j: usize) -> f64 {
    let (m, n) = (x.len(), y.len());
    match (i < m, j < n) {
        (true, true) => linf(&x[i], &y[j]),
        (true, false) if j - n == i => half(&x[i]),
        (false, true) if i - m == j => half(&y[j]),
        (false, false) => 0.0,
        _ => f64::INFINITY,
    }
}

fn perfect_matching(size: usize, allowed: &dyn Fn(usize, usize) -> bool) -> bool {
    fn augment(
        i: usize,
        size: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        mate: &mut [Option<usize>],
    ) -> bool {
        for j in 0..size {
            if seen[j] || !allowed(i, j) {
                continue;
            }
            seen[j] = true;
            if mate[j].is_none_or(|k| augment(k, size, allowed, seen, mate)) {
                mate[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut mate = vec![None; size];
    (0..size).all(|i| augment(i, size, allowed, &mut vec![false; size], &mut mate))
}

/// Exact bottleneck distance: the smallest candidate cost admitting a
/// perfect matching with diagonal copies.
pub fn bottleneck_distance(b1: &Barcode, b2: &Barcode) -> Result<f64> {
    let (x, y) = (&b1.bars, &b2.bars);
    if x.iter().chain(y).any(|b| !b.death.is_finite()) {
        return Err(Error::InvalidBarcode("infinite interval in bottleneck distance".into()));
    }
    let size = x.len() + y.len();
    if size == 0 {
        return Ok(0.0);
    }
    let mut candidates = vec![0.0];
    for i in 0..size {
        for j in 0..size {
            let c = cost(x, y, i, j);
            if c.is_finite() {
                candidates.push(c);
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let tau = candidates[mid];
        if perfect_matching(size, &|i, j| cost(x, y, i, j) <= tau) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}
