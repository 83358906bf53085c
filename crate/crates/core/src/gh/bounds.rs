//! Two-sided estimates assembled from certificates.

use serde::Serialize;

use super::{hyp_graph, Correspondence};
use crate::error::{Error, Result};
use crate::gromov_tree::tree_distortion;
use crate::metric_graph::{epsilon_net, finite_metric, GraphPoint, MetricGraph, TOL};
use crate::persistence::{bottleneck_distance, persistence_sequence, seq_distance, vr_h1_barcode, Barcode, VR_MAX_POINTS};
use crate::reeb::{epsilon_smoothing, quotient_correspondence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// One bound: `value - slack` for lower sides, `value + slack` for upper sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub side: Side,
    pub name: String,
    pub value: f64,
    pub slack: f64,
    pub note: String,
}

impl Certificate {
    fn new(side: Side, name: &str, value: f64, slack: f64, note: impl Into<String>) -> Self {
        Self { side, name: name.into(), value, slack, note: note.into() }
    }

    pub fn bound(&self) -> f64 {
        match self.side {
            Side::Lower => (self.value - self.slack).max(0.0),
            Side::Upper => self.value + self.slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub lower: f64,
    pub upper: f64,
    pub certificates: Vec<Certificate>,
}

impl BoundReport {
    fn from_certificates(quantity: &str, n: Option<usize>, certificates: Vec<Certificate>) -> Self {
        let lower = certificates.iter().filter(|c| c.side == Side::Lower).map(Certificate::bound).fold(0.0, f64::max);
        let upper = certificates
            .iter()
            .filter(|c| c.side == Side::Upper)
            .map(Certificate::bound)
            .fold(f64::INFINITY, f64::min);
        Self { quantity: quantity.into(), n, lower, upper, certificates }
    }

    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper + TOL
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    /// Key order is fixed; non-finite values are written as `null`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

pub fn default_mesh(g: &MetricGraph) -> f64 {
    let d = g.diameter();
    if d > TOL {
        0.05 * d
    } else {
        1.0
    }
}

fn check_mesh(mesh: f64) -> Result<()> {
    if mesh.is_finite() && mesh > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mesh = {mesh} must be > 0")))
    }
}

/// Barcode of the finest net with spacing at least `mesh` that fits the VR cap,
/// with the spacing used.
fn sampled_barcode(g: &MetricGraph, mesh: f64) -> Result<(Barcode, f64)> {
    let mut s = mesh;
    loop {
        let net = epsilon_net(g, s)?;
        if net.len() <= VR_MAX_POINTS {
            return Ok((vr_h1_barcode(&finite_metric(g, &net)?)?, s));
        }
        s *= 1.25;
    }
}

/// Lower bounds on `d_GH(G, H)` from diameters, persistence sequences,
/// hyperbolicity of nets and sampled barcodes. The upper side is the
/// complete relation.
pub fn dgh_bounds(g: &MetricGraph, h: &MetricGraph, mesh: f64) -> Result<BoundReport> {
    check_mesh(mesh)?;
    let (dg, dh) = (g.diameter(), h.diameter());
    let mut certs = vec![
        Certificate::new(Side::Lower, "diameter", (dg - dh).abs() / 2.0, 0.0, "|diam G - diam H| / 2"),
        Certificate::new(
            Side::Lower,
            "persistence_sequence",
            seq_distance(&persistence_sequence(g), &persistence_sequence(h)) / 4.0,
            0.0,
            "sup |a_n - b_n| / 4",
        ),
    ];
    match (hyp_graph(g, mesh), hyp_graph(h, mesh)) {
        (Ok((a, _)), Ok((b, _))) => certs.push(Certificate::new(
            Side::Lower,
            "hyperbolicity",
            (a - b).abs() / 4.0,
            2.0 * mesh,
            "|hyp - hyp| / 4 on mesh nets, each within 4 mesh",
        )),
        (Err(Error::TooLarge { .. }), _) | (_, Err(Error::TooLarge { .. })) => {}
        (Err(e), _) | (_, Err(e)) => return Err(e),
    }
    let ((bg, sg), (bh, sh)) = (sampled_barcode(g, mesh)?, sampled_barcode(h, mesh)?);
    certs.push(Certificate::new(
        Side::Lower,
        "bottleneck",
        bottleneck_distance(&bg, &bh)? / 2.0,
        (sg + sh) / 2.0,
        format!("d_b / 2 on nets of spacing {sg:.6} and {sh:.6}"),
    ));
    certs.push(Certificate::new(Side::Upper, "complete_relation", dg.max(dh) / 2.0, 0.0, "max diam / 2"));
    Ok(BoundReport::from_certificates("d_GH", None, certs))
}

pub fn dgh_lower(g: &MetricGraph, h: &MetricGraph, mesh: f64) -> Result<f64> {
    Ok(dgh_bounds(g, h, mesh)?.lower)
}

pub fn delta_n_bounds(g: &MetricGraph, n: usize, p: GraphPoint) -> Result<BoundReport> {
    delta_n_bounds_with(g, n, p, default_mesh(g))
}

/// Bounds on `δ_n`, the distance from `G` to graphs with at most `n` independent
/// cycles. Upper sides come from an explicit smoothing and, for `n = 0`, the tree `T_p G`.
pub fn delta_n_bounds_with(g: &MetricGraph, n: usize, p: GraphPoint, mesh: f64) -> Result<BoundReport> {
    check_mesh(mesh)?;
    let beta = g.betti1();
    if n >= beta {
        let certs = vec![
            Certificate::new(Side::Lower, "trivial", 0.0, 0.0, "distances are nonnegative"),
            Certificate::new(Side::Upper, "self", 0.0, 0.0, "G itself has few enough cycles"),
        ];
        return Ok(BoundReport::from_certificates("delta_n", Some(n), certs));
    }
    let a = persistence_sequence(g).get(n + 1);
    let mut certs = vec![
        Certificate::new(Side::Lower, "persistence_sequence", a / 4.0, 0.0, "a_{n+1} / 4"),
        Certificate::new(Side::Upper, "formula", (6.0 * beta as f64 + 6.0) * a, 0.0, "(6 beta + 6) a_{n+1}"),
    ];
    let mut eps = 1.5 * a;
    let mut s = epsilon_smoothing(g, p, eps)?;
    if s.betti1() > n {
        eps += 1e-6;
        s = epsilon_smoothing(g, p, eps)?;
    }
    if s.betti1() <= n {
        let dis = quotient_correspondence(g, &s, mesh)?.distortion();
        certs.push(Certificate::new(
            Side::Upper,
            "smoothing",
            dis / 2.0,
            mesh,
            format!("quotient correspondence to the {eps:.6}-smoothing (beta {})", s.betti1()),
        ));
    }
    if n == 0 {
        let t = tree_distortion(g, p, mesh)?;
        certs.push(Certificate::new(
            Side::Upper,
            "tree",
            t.tau_upper,
            mesh,
            format!("identity correspondence to T_p G on {} net points", t.points),
        ));
    }
    Ok(BoundReport::from_certificates("delta_n", Some(n), certs))
}

/// Sandwich for the path-correspondence distance. `r` must relate `mesh` nets of `g` and `h`.
pub fn dghl_bounds(g: &MetricGraph, h: &MetricGraph, r: &Correspondence, mesh: f64) -> Result<BoundReport> {
    let lower = dgh_bounds(g, h, mesh)?;
    let mut certs: Vec<Certificate> = lower.certificates.into_iter().filter(|c| c.side == Side::Lower).collect();
    certs.push(Certificate::new(Side::Upper, "correspondence", r.distortion(), 2.0 * mesh, "dis(R) on nets"));
    Ok(BoundReport::from_certificates("d_GH_path", None, certs))
}
