//! Correspondences and Gromov–Hausdorff estimates, exact small-instance
//! distances, hyperbolicity, and bound reports.

mod bounds;
mod brute;
mod correspondence;
mod hyp;

pub use brute::{brute_force_dgh, brute_force_dgh_pointed, optimal_correspondence, BRUTE_MAX_POINTS};
pub use correspondence::{distortion, r_extension, Correspondence};
pub use hyp::{hyp_graph, hyp_graph_with, hyperbolicity, hyperbolicity_with, HYP_MAX_POINTS};
pub use bounds::{
    default_mesh, delta_n_bounds, delta_n_bounds_with, dgh_bounds, dgh_lower, dghl_bounds, BoundReport, Certificate,
    Side,
};
