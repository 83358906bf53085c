//! Exact Gromov–Hausdorff distance for tiny spaces by branch and bound over
//! covering relations.

use super::Correspondence;
use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// Largest space accepted by the exact search.
pub const BRUTE_MAX_POINTS: usize = 7;

pub fn brute_force_dgh(dx: &DistanceMatrix, dy: &DistanceMatrix) -> Result<f64> {
    Ok(optimal_correspondence(dx, dy, None)?.distortion() / 2.0)
}

/// Pointed variant: only relations containing `(p, q)`.
pub fn brute_force_dgh_pointed(dx: &DistanceMatrix, p: usize, dy: &DistanceMatrix, q: usize) -> Result<f64> {
    Ok(optimal_correspondence(dx, dy, Some((p, q)))?.distortion() / 2.0)
}

/// A covering relation of minimum distortion, optionally forced to contain a pair.
pub fn optimal_correspondence(
    dx: &DistanceMatrix,
    dy: &DistanceMatrix,
    fixed: Option<(usize, usize)>,
) -> Result<Correspondence> {
    for d in [dx, dy] {
        if d.len() > BRUTE_MAX_POINTS {
            return Err(Error::TooLarge {
                what: "exact GH input",
                size: d.len(),
                cap: BRUTE_MAX_POINTS,
                hint: "",
            });
        }
        if d.is_empty() {
            return Err(Error::InvalidParameter("empty metric space".into()));
        }
    }
    if let Some((p, q)) = fixed {
        if p >= dx.len() || q >= dy.len() {
            return Err(Error::InvalidParameter(format!("base pair ({p}, {q}) out of range")));
        }
    }
    let swap = dx.len() < dy.len();
    let pairs = if swap {
        let pairs = Search::new(dy, dx, fixed.map(|(p, q)| (q, p))).run();
        pairs.into_iter().map(|(a, b)| (b, a)).collect()
    } else {
        Search::new(dx, dy, fixed).run()
    };
    Correspondence::new(dx.clone(), dy.clone(), pairs)
}

struct Search<'a> {
    dx: &'a DistanceMatrix,
    dy: &'a DistanceMatrix,
    order: Vec<usize>,
    /// Right subsets with their internal diameter, by increasing diameter.
    subsets: Vec<(u32, f64)>,
    forced: Vec<u32>,
    full: u32,
    assigned: Vec<u32>,
    best: f64,
    best_assign: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(dx: &'a DistanceMatrix, dy: &'a DistanceMatrix, fixed: Option<(usize, usize)>) -> Self {
        let (m, n) = (dx.len(), dy.len());
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| dx.eccentricity(b).total_cmp(&dx.eccentricity(a)).then(a.cmp(&b)));
        let full = (1u32 << n) - 1;
        let mut subsets: Vec<(u32, f64)> = (1..=full)
            .map(|s| {
                let mut diam: f64 = 0.0;
                for a in 0..n {
                    for b in a + 1..n {
                        if s >> a & 1 == 1 && s >> b & 1 == 1 {
                            diam = diam.max(dy.get(a, b));
                        }
                    }
                }
                (s, diam)
            })
            .collect();
        subsets.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.count_ones().cmp(&b.0.count_ones())).then(a.0.cmp(&b.0)));
        let mut forced = vec![0; m];
        if let Some((p, q)) = fixed {
            forced[p] = 1 << q;
        }
        // the complete relation is always available
        let best = dx.diameter().max(dy.diameter());
        Self { dx, dy, order, subsets, forced, full, assigned: vec![0; m], best, best_assign: vec![full; m] }
    }

    fn run(mut self) -> Vec<(usize, usize)> {
        let n = self.dy.len();
        self.dfs(0, 0, 0.0, &mut vec![0.0; n]);
        let mut pairs = Vec::new();
        for (x, &s) in self.best_assign.iter().enumerate() {
            for y in 0..n {
                if s >> y & 1 == 1 {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }

    fn dfs(&mut self, pos: usize, covered: u32, running: f64, contrib: &mut [f64]) {
        let m = self.order.len();
        if pos == m {
            if covered == self.full && running < self.best {
                self.best = running;
                self.best_assign = self.assigned.clone();
            }
            return;
        }
        let x = self.order[pos];
        let n = self.dy.len();
        // worst mismatch of each right point against earlier assignments
        let mut compat = 0u32;
        for y in 0..n {
            let mut worst: f64 = 0.0;
            for &x2 in &self.order[..pos] {
                let s2 = self.assigned[x2];
                let dxx = self.dx.get(x, x2);
                for y2 in 0..n {
                    if s2 >> y2 & 1 == 1 {
                        worst = worst.max((dxx - self.dy.get(y, y2)).abs());
                    }
                }
            }
            contrib[y] = worst;
            if worst < self.best {
                compat |= 1 << y;
            }
        }
        let required = if pos + 1 == m { self.full & !covered } else { 0 } | self.forced[x];
        if required & !compat != 0 {
            return;
        }
        let local: Vec<f64> = contrib.to_vec();
        for k in 0..self.subsets.len() {
            let (s, diam) = self.subsets[k];
            if diam >= self.best {
                break;
            }
            if s & !compat != 0 || required & !s != 0 {
                continue;
            }
            let mut run = running.max(diam);
            for (y, &c) in local.iter().enumerate() {
                if s >> y & 1 == 1 {
                    run = run.max(c);
                }
            }
            if run >= self.best {
                continue;
            }
            self.assigned[x] = s;
            self.dfs(pos + 1, covered | s, run, contrib);
        }
        self.assigned[x] = 0;
    }
}
