//! Elliptical components of `C(A)`: criteria, divisibility and parameters.

pub mod classify;
pub mod conic;
pub mod divisibility;
pub mod mpoly;
pub mod table;
pub mod three;

pub use classify::{classify, Branch, Classification, ClassificationReport, Criterion, ExactEllipse, KValue, Verdict};
pub use conic::{ellipse_of_2x2, fit_conic, ConicFit, EllipseComponent, PEllipseCoefficients, TwoByTwoEllipse};
pub use divisibility::{divides_linear, divides_quadratic};
pub use table::{solve_xp_system, xp_row, xp_table, XpRow};
pub use three::{audit_three_concentric, find_instance, AuditReport};
