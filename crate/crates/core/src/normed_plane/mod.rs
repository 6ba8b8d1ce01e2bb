//! Two-dimensional normed spaces with polygonal unit balls.

pub mod area;
pub mod io;
pub mod jung;
pub mod polygon;
pub mod random;
pub mod report;

pub use area::{
    area_density, isoperimetric_ratio, isoperimetrix, isoperimetrix_perimeter, jacobian2,
    min_enclosing_parallelogram, AreaDefinition, PiScaled, UnitSetArea,
};
pub use jung::{chebyshev_center, jung_constant, jung_ratio, JungConfig, JungEstimate, JUNG_UPPER};
pub use polygon::{polygon_area, Point, PolygonalNorm};
pub use random::random_symmetric_polygon;
pub use report::{alpha_v, norm_invariants, Enclosure, NormInvariantReport, Value};
