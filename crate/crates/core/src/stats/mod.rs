//! Statistics on shape spaces and on the scalar distances they produce.

pub mod control;
pub mod frechet;
pub mod permutation;
pub mod pga;
pub mod summary;
pub mod ttest;

pub use control::{control_chart, ControlChart};
pub use frechet::{frechet_mean, frechet_mean_with, FrechetOptions};
pub use permutation::permutation_test;
pub use pga::{pga, PgaModel};
pub use summary::{distance_report, DistanceReport, GroupSummary};
pub use ttest::{two_sample_ttest, TTest};
