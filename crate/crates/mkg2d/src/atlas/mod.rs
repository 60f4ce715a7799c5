//! Exact mechanization of the exponent calculus behind the low-regularity
//! well-posedness bookkeeping: the fourteen-condition bilinear estimate test,
//! the fixed-time Sobolev product rule, the reduction catalog, wave-exponent
//! search, and the admissible-region scan.
//!
//! No floating point is used anywhere in this module; every comparison is
//! exact over rationals with a symbolic infinitesimal.

mod catalog;
mod conditions;
mod eps;
mod scan;

pub use catalog::{
    check_catalog, closed_form_region, feasible_thetas, feasible_thetas_with, reduction_catalog,
    CatalogEntry, ExponentPoint, ThetaWitness, DELTA_DEN, DELTA_NUM, M_WEIGHT, THETA_GRID_DEN,
};
pub use conditions::{
    check_atlas, check_sobolev_product, check_sobolev_product_labeled, ConditionRecord,
    FeasibilityReport, ProductEstimate, Relation, SpEqualityRule,
};
pub use eps::{EpsRational, ParseEpsError};
pub use scan::{
    off_boundary, region_scan, scan_region, write_scan_csv, write_scan_svg, ScanRow, ScanSummary,
    ScanTable,
};
