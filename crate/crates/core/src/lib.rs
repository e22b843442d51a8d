//! Stieltjes and Hilbert transforms of finite positive measures on the line,
//! exact level sets of their boundary values, homogeneity constants of
//! finite interval unions and the Cantor-type set and measure
//! constructions, together with numerical checks of the associated
//! inequalities.

pub mod cantor;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod level_sets;
pub mod measure;
pub mod poly;
pub mod roots;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{density_profile, en_subset, grid_min_ratio, homogeneity_delta, window_measure, DensityProfile, HomogeneityReport};
pub use interval::{Interval, IntervalUnion};
pub use level_sets::{
    distribution, gamma, gamma_with, intersection_decay, tail_csv, tail_sweep, weak_limit_measure,
    Component, ComponentSign, LevelSet, LevelSetOptions, Sign, TailPoint, Transform, WeakLimit,
};
pub use measure::{mutually_singular, Atom, DensityPiece, Measure, MeasureSpec};
pub use poly::Polynomial;
pub use transform::{boundary_value, hilbert, mobius, stieltjes, stieltjes_deriv, BoundaryKind, BoundaryValue};
pub use num::complex::Complex64;
pub use cantor::{build_set, build_set_partial, set_from_json, CantorIndex, CantorSpec, TruncatedSet};
pub use verify::{run_suite, CheckReport, GridSpec, Outcome, Selector, Summary, SuiteConfig};
