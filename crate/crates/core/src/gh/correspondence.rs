use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;

/// A relation between two finite metric spaces, given by index pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correspondence {
    left: DistanceMatrix,
    right: DistanceMatrix,
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Validates indices and the covering condition. Pairs are sorted and deduplicated.
    pub fn new(left: DistanceMatrix, right: DistanceMatrix, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let (m, n) = (left.len(), right.len());
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(Error::InvalidParameter(format!("pair ({i}, {j}) out of range for {m}x{n}")));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut hit_l = vec![false; m];
        let mut hit_r = vec![false; n];
        for &(i, j) in &pairs {
            hit_l[i] = true;
            hit_r[j] = true;
        }
        if hit_l.contains(&false) {
            return Err(Error::NotCovering("left space"));
        }
        if hit_r.contains(&false) {
            return Err(Error::NotCovering("right space"));
        }
        Ok(Self { left, right, pairs })
    }

    pub fn identity(d: DistanceMatrix) -> Self {
        let pairs = (0..d.len()).map(|i| (i, i)).collect();
        Self { left: d.clone(), right: d, pairs }
    }

    /// Every left point related to every right point.
    pub fn complete(left: DistanceMatrix, right: DistanceMatrix) -> Self {
        let pairs = (0..left.len()).flat_map(|i| (0..right.len()).map(move |j| (i, j))).collect();
        Self { left, right, pairs }
    }

    pub fn left(&self) -> &DistanceMatrix {
        &self.left
    }

    pub fn right(&self) -> &DistanceMatrix {
        &self.right
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn distortion(&self) -> f64 {
        self.distortion_with(Execution::default())
    }

    /// `max |dX(x,x') - dY(y,y')|` over pairs of related pairs.
    pub fn distortion_with(&self, exec: Execution) -> f64 {
        let p = &self.pairs;
        exec.max_f64(p.len(), 0.0, |a| {
            let (x, y) = p[a];
            let (lx, ry) = (self.left.row(x), self.right.row(y));
            p[a + 1..].iter().map(|&(x2, y2)| (lx[x2] - ry[y2]).abs()).fold(0.0, f64::max)
        })
    }

    /// `x R_r y` iff `d(x,x0) + d(y,y0) <= r` for some `(x0,y0)` in `R`.
    pub fn r_extension(&self, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter(format!("r = {r} must be >= 0")));
        }
        let (m, n) = (self.left.len(), self.right.len());
        let rows = Execution::default().map(m, |x| {
            (0..n)
                .filter(|&y| {
                    self.pairs.iter().any(|&(x0, y0)| self.left.get(x, x0) + self.right.get(y, y0) <= r)
                })
                .map(|y| (x, y))
                .collect::<Vec<_>>()
        });
        Ok(Self { left: self.left.clone(), right: self.right.clone(), pairs: rows.concat() })
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }
}

pub fn distortion(r: &Correspondence) -> f64 {
    r.distortion()
}

pub fn r_extension(r: &Correspondence, radius: f64) -> Result<Correspondence> {
    r.r_extension(radius)
}
