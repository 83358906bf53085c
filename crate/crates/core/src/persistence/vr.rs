//! Degree-one Vietoris–Rips persistence by boundary-matrix reduction over
//! GF(2) on the 2-skeleton, closed grading.

use super::{Bar, Barcode, MIN_BAR_LENGTH};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;
use crate::metric_graph::DisjointSet;

/// Largest point count accepted by [`vr_h1_barcode`].
pub const VR_MAX_POINTS: usize = 300;

#[derive(Clone, Copy)]
struct Triangle {
    value: f64,
    v: [u16; 3],
}

pub fn vr_h1_barcode(d: &DistanceMatrix) -> Result<Barcode> {
    vr_h1_barcode_with(d, Execution::default())
}

pub fn vr_h1_barcode_with(d: &DistanceMatrix, exec: Execution) -> Result<Barcode> {
    let n = d.len();
    if n > VR_MAX_POINTS {
        return Err(Error::TooLarge {
            what: "VR sample",
            size: n,
            cap: VR_MAX_POINTS,
            hint: "; use a coarser mesh",
        });
    }
    if n < 3 {
        return Ok(Barcode::empty(1));
    }

    // edges in filtration order
    let mut edges: Vec<(f64, u16, u16)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((d.get(i, j), i as u16, j as u16));
        }
    }
    exec.sort_by(&mut edges, |a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut order = vec![0u32; n * n];
    for (k, &(_, i, j)) in edges.iter().enumerate() {
        order[i as usize * n + j as usize] = k as u32;
        order[j as usize * n + i as usize] = k as u32;
    }

    let mut uf = DisjointSet::new(n);
    let positive: Vec<bool> = edges.iter().map(|&(_, i, j)| !uf.union(i as usize, j as usize)).collect();
    let expected = positive.iter().filter(|&&p| p).count();

    let per_vertex = exec.map(n, |i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            let dij = d.get(i, j);
            for k in j + 1..n {
                let value = dij.max(d.get(i, k)).max(d.get(j, k));
                out.push(Triangle { value, v: [i as u16, j as u16, k as u16] });
            }
        }
        out
    });
    let mut triangles: Vec<Triangle> = per_vertex.into_iter().flatten().collect();
    exec.sort_by(&mut triangles, |a, b| a.value.total_cmp(&b.value).then(a.v.cmp(&b.v)));

    let mut owner: Vec<Option<u32>> = vec![None; edges.len()];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    let mut bars = Vec::new();
    let mut paired = 0;
    let mut scratch = Vec::new();
    for t in &triangles {
        if paired == expected {
            break;
        }
        let [a, b, c] = t.v.map(usize::from);
        let mut col = vec![order[a * n + b], order[a * n + c], order[b * n + c]];
        col.sort_unstable();
        while let Some(&pivot) = col.last() {
            match owner[pivot as usize] {
                Some(k) => {
                    symmetric_difference(&col, &reduced[k as usize], &mut scratch);
                    std::mem::swap(&mut col, &mut scratch);
                }
                None => break,
            }
        }
        let Some(&pivot) = col.last() else { continue };
        owner[pivot as usize] = Some(reduced.len() as u32);
        reduced.push(col);
        if !positive[pivot as usize] {
            return Err(Error::Internal("triangle pivot on a tree edge".into()));
        }
        paired += 1;
        let birth = edges[pivot as usize].0;
        if t.value - birth >= MIN_BAR_LENGTH {
            bars.push(Bar { birth, death: t.value });
        }
    }
    bars.sort_by(|x, y| x.birth.total_cmp(&y.birth).then(x.death.total_cmp(&y.death)));
    Ok(Barcode { degree: 1, bars, closed: true })
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
