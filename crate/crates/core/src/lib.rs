//! Chabauty spaces of `R` and `C*`.
//!
//! Closed subgroups are modelled symbolically ([`subgroup`]), embedded as
//! closed sets of a compactified space with an explicit metric ([`metric`]),
//! sampled with certified covering radii ([`sample`]) and compared through
//! Hausdorff distances ([`hausdorff`]). Limits of parametric sequences are
//! classified symbolically ([`limit`]) and checked numerically
//! ([`convergence`]).

pub mod arith;
pub mod convergence;
pub mod error;
pub mod format;
pub mod hausdorff;
pub mod index;
pub mod limit;
pub mod metric;
pub mod oracle;
pub mod par;
pub mod sample;
pub mod subgroup;

pub use arith::Rational;
pub use convergence::{
    verify_convergence, verify_convergence_lenient, DecayRow, DecayTable, MParam, Param,
    SequenceSchedule, ThetaSchedule,
};
pub use error::{Error, Result};
pub use hausdorff::{
    directed_hausdorff, hausdorff_bound_true_sets, hausdorff_brute, hausdorff_grid, hausdorff_with,
    HausdorffResult, Method,
};
pub use limit::{
    classify, classify_limit_cstar, classify_limit_r, lcm_rule, slope_sequence, ChabautyLimit,
    ExtendedReal, MLimit, SequenceSpec, ThetaLimit,
};
pub use metric::{dist_cylinder, dist_line, CompactPoint, CompactSpaceKind};
pub use par::Execution;
pub use sample::{
    sample_cstar_subgroup, sample_r_subgroup, sample_subgroup, PointCloud, SubgroupSample,
};
pub use subgroup::{CStarSubgroup, IsomorphismType, RSubgroup, Subgroup};
