pub mod fixtures;
mod grid;
mod homogeneous;
mod local;
mod report;
mod singular;
mod suite;
#[cfg(test)]
mod tests;

pub use grid::GridSpec;
pub use homogeneous::{check_key_ineq, check_thm14, regime_threshold};
pub use local::{check_lemma33, check_prop32, check_prop34};
pub use report::{CheckReport, Tally};
pub use singular::{check_boole, check_limit_18, check_loomis, check_poltoratski, check_prop52};
pub use suite::{regime_grid, run_suite, Outcome, Selector, Summary, SuiteConfig};
