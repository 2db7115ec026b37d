//! `Bel_{n,λ}^{(k,Y)}(x)`, the EGF coefficients of
//! `Ei_{k,λ}(x (E[e_λ^Y(t)] - 1))` with `Bel_0 = 1`, computed three ways:
//!
//! * [`Route::Closed`]: `Σ_l (1)_{l,λ} / l^{k-1} · {n l}_{Y,λ} x^l`
//! * [`Route::GeneratingFunction`]: compose the polyexponential with the
//!   moment generating series and read off coefficients
//! * [`Route::MomentSums`]: alternating sums of `E[(S_m)_{n,λ}]`
//!
//! Each route builds all degrees up to `n_max` at once.

use num_traits::Zero;

use crate::combinatorics::{deg_falling_at, polyexp_apply};
use crate::poly::Polynomial;
use crate::probabilistic::{deg_mgf_series, prob_deg_stirling2_table, sm_deg_moments, Distribution};
use crate::rational::{binomial, factorial, int, pow_i, sign, Rational};
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Closed,
    GeneratingFunction,
    MomentSums,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Closed, Route::GeneratingFunction, Route::MomentSums];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBellQuery {
    pub dist: Distribution,
    pub lambda: Rational,
    /// Polyexponential index; any integer.
    pub k: i64,
    pub n: usize,
}

impl PolyBellQuery {
    pub fn new(dist: Distribution, lambda: Rational, k: i64, n: usize) -> Self {
        PolyBellQuery { dist, lambda, k, n }
    }
}

/// `(1)_{l,λ} / l^{k-1}` for `l >= 1`, the weight on `x^l` shared by several
/// formulas.
pub fn level_weight(l: usize, k: i64, lambda: &Rational) -> Rational {
    deg_falling_at(&int(1), l, lambda) * pow_i(&int(l as i64), 1 - k)
}

/// `Bel_0, ..., Bel_{n_max}` by the requested route.
pub fn bel_all(route: Route, dist: &Distribution, lambda: &Rational, k: i64, n_max: usize) -> Vec<Polynomial> {
    match route {
        Route::Closed => bel_closed_all(dist, lambda, k, n_max),
        Route::GeneratingFunction => bel_gf_all(dist, lambda, k, n_max),
        Route::MomentSums => bel_via_sm_all(dist, lambda, k, n_max),
    }
}

pub fn bel_closed_all(dist: &Distribution, lambda: &Rational, k: i64, n_max: usize) -> Vec<Polynomial> {
    let stirling = prob_deg_stirling2_table(dist, lambda, n_max);
    let weights: Vec<Rational> = (1..=n_max).map(|l| level_weight(l, k, lambda)).collect();
    let mut out = vec![Polynomial::one()];
    out.extend((1..=n_max).map(|n| {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for l in 1..=n {
            coeffs[l] = &weights[l - 1] * stirling.get(n, l);
        }
        Polynomial::new(coeffs)
    }));
    out
}

pub fn bel_gf_all(dist: &Distribution, lambda: &Rational, k: i64, n_max: usize) -> Vec<Polynomial> {
    let m = deg_mgf_series(dist, lambda, n_max);
    let u = (&m - &Series::one(n_max)).scale_poly(&Polynomial::x());
    let ei = polyexp_apply(k, lambda, &u).expect("E[e_λ^Y(t)] - 1 has zero constant term");
    let mut out = ei.egf_coeffs();
    // Ei has no constant term; Bel_0 = 1 by convention.
    out[0] = Polynomial::one();
    out
}

pub fn bel_via_sm_all(dist: &Distribution, lambda: &Rational, k: i64, n_max: usize) -> Vec<Polynomial> {
    let sm = sm_deg_moments(dist, lambda, n_max, n_max);
    let prefactor: Vec<Rational> = (0..=n_max)
        .map(|l| {
            if l == 0 {
                return Rational::zero();
            }
            deg_falling_at(&int(1), l, lambda) * pow_i(&int(l as i64), -k) / factorial(l - 1)
        })
        .collect();
    let mut out = vec![Polynomial::one()];
    out.extend((1..=n_max).map(|n| {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for l in 1..=n {
            coeffs[l] = &prefactor[l] * alternating_sm_sum(&sm, l, n);
        }
        Polynomial::new(coeffs)
    }));
    out
}

/// `Σ_{m=0}^{l} C(l,m) (-1)^{l-m} sm[m][n]`; needs `sm` rows up to `l`.
pub fn alternating_sm_sum(sm: &[Vec<Rational>], l: usize, n: usize) -> Rational {
    (0..=l).map(|m| binomial(l, m) * sign(l - m) * &sm[m][n]).sum()
}

pub fn bel_closed(q: &PolyBellQuery) -> Polynomial {
    bel_closed_all(&q.dist, &q.lambda, q.k, q.n).swap_remove(q.n)
}

pub fn bel_gf(q: &PolyBellQuery) -> Polynomial {
    bel_gf_all(&q.dist, &q.lambda, q.k, q.n).swap_remove(q.n)
}

pub fn bel_via_sm(q: &PolyBellQuery) -> Polynomial {
    bel_via_sm_all(&q.dist, &q.lambda, q.k, q.n).swap_remove(q.n)
}
