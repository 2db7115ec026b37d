//! Catalog of identities satisfied by the poly-Bell family and its
//! specializations, and an engine that checks each one over a parameter
//! grid by exact comparison of rationals and polynomials.
//!
//! Polynomial sides are compared coefficient by coefficient, so a pass at
//! a grid point holds for every `x`.

mod catalog;
pub mod grid;
pub mod report;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polybell::{bel_all, Route};
use crate::probabilistic::{sm_deg_moments, Distribution};
use crate::rational::Rational;

pub use catalog::{catalog, IdentityEntry};
pub use grid::{Bound, Dim, Grid, GridOverrides};
pub use report::{Failure, IdentityReport, Params, Value, VariantOutcome};

/// One evaluated grid point.
#[derive(Clone, Debug)]
pub struct Check {
    pub params: Params,
    pub lhs: Value,
    pub rhs: Value,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, Default)]
pub struct Evaluation {
    pub checks: Vec<Check>,
    /// Name of the evaluator that produced `checks`, when an entry ships
    /// several competing ones.
    pub pinned: Option<String>,
    pub rivals: Vec<(String, Vec<Check>)>,
    pub notes: Vec<String>,
}

/// Caches the expensive batches shared across grid points and entries.
#[derive(Default)]
pub struct EvalContext {
    bel: HashMap<(Route, String, Rational, i64), Arc<Vec<Polynomial>>>,
    sm: HashMap<(String, Rational), Arc<Vec<Vec<Rational>>>>,
}

impl EvalContext {
    pub fn bel(&mut self, route: Route, dist: &Distribution, lambda: &Rational, k: i64, n_max: usize) -> Arc<Vec<Polynomial>> {
        let key = (route, dist.to_string(), lambda.clone(), k);
        match self.bel.get(&key) {
            Some(hit) if hit.len() > n_max => Arc::clone(hit),
            _ => {
                let fresh = Arc::new(bel_all(route, dist, lambda, k, n_max));
                self.bel.insert(key, Arc::clone(&fresh));
                fresh
            }
        }
    }

    /// `sm[m][n] = E[(S_m)_{n,λ}]` covering at least `m_max × n_max`.
    pub fn sm(&mut self, dist: &Distribution, lambda: &Rational, m_max: usize, n_max: usize) -> Arc<Vec<Vec<Rational>>> {
        let key = (dist.to_string(), lambda.clone());
        match self.sm.get(&key) {
            Some(hit) if hit.len() > m_max && hit[0].len() > n_max => Arc::clone(hit),
            _ => {
                let fresh = Arc::new(sm_deg_moments(dist, lambda, m_max, n_max));
                self.sm.insert(key, Arc::clone(&fresh));
                fresh
            }
        }
    }
}

pub fn find(id: &str) -> Result<&'static IdentityEntry> {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn summarize(name: &str, checks: &[Check]) -> VariantOutcome {
    let failure_count = checks.iter().filter(|c| !c.holds()).count();
    VariantOutcome {
        name: name.to_string(),
        passed: failure_count == 0,
        grid_size: checks.len(),
        failure_count,
    }
}

fn build_report(entry: &IdentityEntry, eval: Evaluation) -> IdentityReport {
    let mut variants = Vec::new();
    if let Some(pinned) = &eval.pinned {
        variants.push(summarize(pinned, &eval.checks));
        variants.extend(eval.rivals.iter().map(|(name, checks)| summarize(name, checks)));
    }
    let failures: Vec<Failure> = eval
        .checks
        .iter()
        .filter(|c| !c.holds())
        .map(|c| Failure {
            params: c.params.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
        })
        .collect();
    IdentityReport {
        id: entry.id.to_string(),
        grid_size: eval.checks.len(),
        passed: failures.is_empty(),
        failures,
        pinned_variant: eval.pinned,
        variants,
        notes: eval.notes,
    }
}

fn run_entry(entry: &IdentityEntry, overrides: &GridOverrides, ctx: &mut EvalContext) -> Result<IdentityReport> {
    let grid = entry.default_grid().merged(overrides);
    entry.validate(&grid)?;
    Ok(build_report(entry, entry.evaluate(&grid, ctx)))
}

/// Checks one identity. Every overridden dimension must belong to the
/// entry's parameter domain.
pub fn verify_identity(id: &str, overrides: &GridOverrides) -> Result<IdentityReport> {
    let entry = find(id)?;
    if let Some(extra) = overrides.dims().into_iter().find(|d| !entry.domain.contains(d)) {
        return Err(Error::GridMismatch {
            id: id.to_string(),
            reason: format!("dimension {:?} is not a parameter of this identity", extra.name()),
        });
    }
    run_entry(entry, overrides, &mut EvalContext::default())
}

/// Checks every catalog entry in catalog order. Overrides apply to the
/// entries whose domain contains the overridden dimension.
pub fn run_all(overrides: &GridOverrides) -> Result<Vec<IdentityReport>> {
    let mut ctx = EvalContext::default();
    catalog()
        .iter()
        .map(|entry| run_entry(entry, &overrides.restricted_to(entry.domain), &mut ctx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn overrides(s: &str) -> GridOverrides {
        s.parse().unwrap()
    }

    #[test]
    fn every_default_grid_passes() {
        for report in run_all(&GridOverrides::default()).unwrap() {
            assert!(report.passed, "{}", report.to_json());
            assert!(report.grid_size > 0, "{}", report.id);
        }
    }

    #[test]
    fn catalog_ids_are_unique() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), catalog().len());
    }

    #[test]
    fn unknown_id_is_an_error() {
        let err = verify_identity("NOPE", &GridOverrides::default()).unwrap_err();
        assert_eq!(err.to_string(), "unknown identity: NOPE");
    }

    #[test]
    fn vanishing_sum_rejects_l_equal_n() {
        let err = verify_identity("T2.3b", &overrides("l=n")).unwrap_err();
        assert!(matches!(err, Error::GridMismatch { .. }), "{err}");
    }

    #[test]
    fn foreign_dimension_is_rejected() {
        let err = verify_identity("R2.4c", &overrides("lambda=1/2")).unwrap_err();
        assert!(matches!(err, Error::GridMismatch { .. }));
    }

    #[test]
    fn gamma_sum_single_point() {
        let report = verify_identity("R2.4c", &overrides("alpha=1;n=2;l=3")).unwrap();
        assert!(report.passed);
        assert_eq!(report.grid_size, 1);
    }

    #[test]
    fn lambda_zero_override() {
        let report = verify_identity("T2.2", &overrides("lambda=0;n<=6")).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn printed_variant_is_reported_as_failing() {
        let report = verify_identity("T2.4", &GridOverrides::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.variants.len(), 2);
        assert!(report.variants[0].passed);
        assert!(!report.variants[1].passed);
    }

    #[test]
    fn excluded_lambdas_still_vanish() {
        let report = verify_identity("R2.4a", &GridOverrides::default()).unwrap();
        assert!(report.passed);
        assert!(report.notes[0].ends_with(" 0 nonzero"), "{}", report.notes[0]);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_identity("T2.6", &GridOverrides::default()).unwrap().to_json();
        let b = verify_identity("T2.6", &GridOverrides::default()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
