//! Kippenhahn polynomial, eigenvalue curves and the envelope `C(A)`.

pub mod curve;
pub mod polynomial;
pub mod tangents;

pub use curve::{
    components, eigencurves, envelope_points, symmetry_defect, uniform_grid, CurveComponent, CurveSample,
};
pub use polynomial::{determinant_poly_eval, KippenhahnPolynomial};
pub use tangents::{detect_multiple_tangents, scan_multiple_tangents, TangentLineEvent};
