//! Chains and fillings.

pub mod complex;
pub mod fill;
pub mod hlambda;
pub mod io;
pub mod patch;
pub mod profile;
pub mod radius;
pub mod semiell;

pub use complex::{cycle_to_loop, Chain, Loop, SimplicialComplex2, VertexMetric};
pub use fill::{
    certificate_holds, min_filling_area, min_filling_area_with, Arithmetic, FillMode, Filling,
    EXACT_TRIANGLE_LIMIT,
};
pub use hlambda::{
    grid_square_loop, h_lambda_estimate, stokes_sum, transport_maximize, tree_excursion_loop,
    HLambdaEstimate, WitnessPair,
};
pub use patch::{
    heptagonal_edge_length, hyperbolic_ball, normed_patch, plane_patch, HyperbolicBall,
    PatchGeometry, PlanePatch, DEFAULT_TRIANGLE_CAP,
};
pub use profile::{
    ball_boundary_loop, discrete_circle, isoperimetric_profile, loop_through, Profile, ProfileRow,
    Trend,
};
pub use radius::{
    filling_radius, kuratowski_complex, kuratowski_complex_capped, kuratowski_filling_radius,
    kuratowski_filling_radius_capped, rips_filling_radius, rips_filling_radius_capped,
    support_distances, KuratowskiComplex, DEFAULT_RADIUS_TRIANGLE_CAP,
};
pub use semiell::{semi_ellipticity_check, SemiEllipticity, DEFAULT_SEMIELL_TOLERANCE};
pub use io::{
    chain_from_json, chain_to_json, complex_from_json, complex_to_json, loop_from_json,
    loops_from_json,
};
