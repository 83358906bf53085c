//! Degree-one persistence: Vietoris–Rips barcodes of finite metric spaces,
//! minimum cycle bases of metric graphs, persistence sequences, and the
//! bottleneck distance.

mod bottleneck;
mod cycle_basis;
mod vr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric_graph::{MetricGraph, TOL};

pub use bottleneck::bottleneck_distance;
pub use cycle_basis::{minimal_cycle_basis, minimal_cycles, Cycle};
pub use vr::{vr_h1_barcode, vr_h1_barcode_with, VR_MAX_POINTS};

/// Bars shorter than this are treated as numerical noise.
pub const MIN_BAR_LENGTH: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: f64,
    /// `+inf` is written as JSON `null`.
    #[serde(with = "death_serde")]
    pub death: f64,
}

mod death_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &f64, s: S) -> Result<S::Ok, S::Error> {
        if d.is_finite() {
            s.serialize_f64(*d)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl Bar {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    pub degree: usize,
    pub bars: Vec<Bar>,
    /// Closed grading (simplices of diameter `<= r`). Not serialised.
    #[serde(skip, default = "closed_default")]
    pub closed: bool,
}

fn closed_default() -> bool {
    true
}

impl Barcode {
    pub fn new(degree: usize, bars: Vec<Bar>) -> Result<Self> {
        for b in &bars {
            if b.birth.is_nan() || b.death.is_nan() || b.birth < 0.0 || !(b.birth < b.death) {
                return Err(Error::InvalidBarcode(format!("bad interval [{}, {})", b.birth, b.death)));
            }
        }
        Ok(Self { degree, bars, closed: true })
    }

    pub fn empty(degree: usize) -> Self {
        Self { degree, bars: Vec::new(), closed: true }
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bar lengths in non-increasing order.
    pub fn lengths(&self) -> Vec<f64> {
        let mut l: Vec<f64> = self.bars.iter().map(Bar::length).collect();
        l.sort_by(|a, b| b.total_cmp(a));
        l
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("barcode serialises")
    }
}

/// Non-increasing sequence `a_1 ≥ a_2 ≥ ... > 0`, read as zero past its end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceSequence {
    pub a: Vec<f64>,
}

impl PersistenceSequence {
    /// Sorts, and drops entries that are zero within tolerance.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.retain(|&x| x > TOL);
        values.sort_by(|a, b| b.total_cmp(a));
        Self { a: values }
    }

    pub fn zero() -> Self {
        Self { a: Vec::new() }
    }

    /// `a_n` with 1-based `n`; zero beyond the stored entries.
    pub fn get(&self, n: usize) -> f64 {
        assert!(n >= 1, "persistence sequence is 1-indexed");
        self.a.get(n - 1).copied().unwrap_or(0.0)
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        self.a.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serialises")
    }
}

/// Persistence sequence of a metric graph: minimum cycle basis lengths,
/// sorted decreasingly and divided by three.
pub fn persistence_sequence(g: &MetricGraph) -> PersistenceSequence {
    PersistenceSequence::new(minimal_cycle_basis(g).into_iter().map(|l| l / 3.0).collect())
}

/// `sup_n |a_n - b_n|`.
pub fn seq_distance(a: &PersistenceSequence, b: &PersistenceSequence) -> f64 {
    let n = a.support().max(b.support());
    (1..=n).map(|i| (a.get(i) - b.get(i)).abs()).fold(0.0, f64::max)
}
