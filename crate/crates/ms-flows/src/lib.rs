//! Stratified CW-complex models of the Boy's and Girl's surfaces and
//! enumeration of the Morse-Smale flow structures they carry.
//!
//! The two surfaces are the immersions of the projective plane in 3-space
//! with a single triple point and connected self-intersection set. Each is
//! modelled as a CW-complex with one 0-cell (the triple point), three
//! 1-cells (the double-point loops `A`, `B`, `C`) and four 2-cells. On top
//! of that model the crate enumerates and classifies
//!
//! * flows with one fixed point and no separatrices,
//! * optimal Morse-Smale flows (four fixed points), and
//! * optimal projective Morse-Smale flows (Morse-Smale on the projective
//!   plane, census three sources / three sinks / five saddles),
//!
//! together with the counting formulas relating homeomorphism classes,
//! symmetric classes and homotopy classes.

pub mod classify;
pub mod disk;
pub mod error;
pub mod export;
pub mod orientation;
pub mod planar;
pub mod projective;
pub mod region;
pub mod region_enum;
pub mod report;
pub mod structure;
pub mod surface;
pub mod symmetry;

pub use classify::{burnside_combine, classify, homotopy_count, table61, CountReport, FlowClass};
pub use error::DomainError;
pub use orientation::{
    corner_roles, derive_orientations, enumerate_all_labeled_one_fixed_point,
    enumerate_one_fixed_point, OneFixedPointFlow, OrientationAssignment,
};
pub use planar::{enumerate_planar_gluings, GluingCheck, GluingRejection, PlanarModel};
pub use projective::{enumerate_projective, fixed_point_census, Census};
pub use region::{classify_simple_region, region_boundary, RegionBoundary, SimpleRegionClass};
pub use region_enum::{enumerate_ms_optimal, enumerate_region_flows, region_counts, RegionCounts};
pub use structure::{Coloring, Family, FlowStructure, MarkColor, RegionDiagram};
pub use surface::{
    build_surface, pullback_complex, validate_complex, Angle, CellLoop, CwComplex, Lift,
    MarkLabel, Region, StratifiedSurface, SurfaceName, ValidationReport,
};
