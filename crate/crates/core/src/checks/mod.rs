//! Coefficientwise verification of the axioms and derived identities on
//! bounded windows.
//!
//! Every check compares exact coefficients. For structures truncated at a top
//! weight, coefficients that depend on data above the top are skipped and
//! counted; a pass certifies only what was compared.

mod alt;
mod coaction;
mod coalgebra;
mod delta;
mod correlation;
mod report;
mod vla;
mod voc;
mod weak;

#[cfg(test)]
mod tests;

pub use alt::{run_alt_axiom_suite, run_rca_suite, AltVerdicts};
pub use coaction::{
    check_comodule_counit, check_comodule_jacobi, check_comodule_truncation, check_mdderiv,
    check_positive_powers, run_comodule_suite,
};
pub use coalgebra::{
    check_cocreation, check_counit, check_dstar_laws, check_jacobi, check_skew_symmetry,
    check_skew_twice, check_truncation, run_coalgebra_suite,
};
pub use delta::run_delta_suite;
pub use correlation::{correlation, Correlation, CorrelationKind};
pub use report::{CheckResult, Report, Status, Witness};
pub use vla::check_vla_axioms;
pub use voc::check_virasoro;
pub use weak::{
    basis_functionals, coassoc_bound, cocomm_bound, weak_coassoc_k, weak_coassoc_sweep, weak_cocomm_k,
    weak_cocomm_sweep, Functional, MinimalK, Sweep, DEFAULT_SLACK, DEFAULT_SWEEP_WEIGHT,
};

use rayon::prelude::*;

use crate::formal::{format_mono, Mono};
use crate::Result;

/// Result of checking one work item (usually one basis vector).
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    pub failure: Option<Witness>,
    pub compared: usize,
    pub skipped: usize,
}

impl Outcome {
    pub fn failed(w: Witness) -> Self {
        Outcome {
            failure: Some(w),
            ..Default::default()
        }
    }
}

/// Run `f` on every item in parallel and fold the outcomes in item order:
/// the first failure wins, then the first error, else a pass.
pub(crate) fn run_items<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&T) -> Result<Outcome> + Sync + Send,
) -> CheckResult {
    let results: Vec<Result<Outcome>> = items.par_iter().map(&f).collect();
    fold_outcomes(name, results)
}

pub(crate) fn fold_outcomes(name: &str, results: Vec<Result<Outcome>>) -> CheckResult {
    let mut compared = 0;
    let mut skipped = 0;
    let mut first_err = None;
    for r in &results {
        match r {
            Ok(o) => {
                if let Some(w) = &o.failure {
                    return CheckResult::fail(name, w.clone());
                }
                compared += o.compared;
                skipped += o.skipped;
            }
            Err(e) if first_err.is_none() => first_err = Some(e.clone()),
            Err(_) => {}
        }
    }
    if let Some(e) = first_err {
        return CheckResult::from_error(name, &e);
    }
    if compared == 0 && skipped > 0 {
        return CheckResult::inconclusive(
            name,
            format!("all {skipped} coefficients depend on data above the top weight"),
        );
    }
    CheckResult::pass(name, tally(compared, skipped))
}

pub(crate) fn tally(compared: usize, skipped: usize) -> String {
    if skipped == 0 {
        format!("{compared} coefficients compared")
    } else {
        format!("{compared} coefficients compared, {skipped} outside the certified weight range")
    }
}

pub(crate) fn witness(vector: &str, m: &Mono, lhs: String, rhs: String) -> Witness {
    Witness {
        vector: vector.to_string(),
        multidegree: format_mono(m),
        lhs,
        rhs,
    }
}
