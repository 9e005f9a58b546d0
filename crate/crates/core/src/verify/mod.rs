//! Independent oracles and the randomized consistency battery.

mod battery;
mod corpus;
mod oracle;

pub use battery::{
    check_xi, random_matrix, run_battery, sample_xi, three_concentric_instances, BatteryConfig, BatteryReport, CheckSummary,
    Discrepancy, Outcome, CHECKS,
};
pub use corpus::{
    check_case, corpus, run_verify, three_concentric_check, CorpusCase, CorpusResult, ScaledInstance,
    ThreeConcentricCheck, VerifyReport, REGION_TOLERANCE,
};
pub use oracle::{agrees, brute_force_kinds};
