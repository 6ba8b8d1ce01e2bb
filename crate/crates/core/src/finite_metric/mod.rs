//! Finite metric spaces and graphs.

pub mod cayley;
pub mod graph;
pub mod hyperbolicity;
pub mod io;
pub mod kuratowski;
pub mod space;
pub mod thickening;
pub mod tight_span;

pub use cayley::{cayley_ball, GroupPresentation, DEFAULT_ELEMENT_CAP};
pub use graph::{graph_metric, Geodesics, Graph};
pub use hyperbolicity::{four_point_delta, slim_triangle_delta};
pub use kuratowski::{kuratowski_embed, sup_distance, EmbeddedPointSet};
pub use space::{separated_net, FiniteMetricSpace};
pub use thickening::{delta_thickening, delta_thickening_capped, Thickening, ThickeningCaps};
pub use tight_span::{extremality_defect, tight_span, tight_span_capped, tighten, TightSpan};
