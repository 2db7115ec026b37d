//! Falling factorials, Stirling/Lah triangles, degenerate exponential and
//! logarithm series, the degenerate polyexponential, and Bell polynomials.
//!
//! Every triangle is read off its exponential generating function
//! `g(t)^k / k!` rather than built from a recurrence. Any `λ` is accepted;
//! `λ = 0` gives the classical objects.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::{factorial, int, pow_i, Rational};
use crate::series::Series;

/// Lower-triangular table `values[n][k]`, `0 <= k <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        Triangle { rows }
    }

    /// Fills `values[n][k] = n! [t^n] g(t)^k / k!` for `n <= order(g)`.
    /// `g` must have zero constant term.
    pub fn from_egf_powers(g: &Series) -> Self {
        assert!(g.has_zero_constant(), "triangle generator needs zero constant term");
        let n_max = g.order();
        let mut rows: Vec<Vec<Rational>> = (0..=n_max).map(|n| vec![Rational::zero(); n + 1]).collect();
        let mut power = Series::one(n_max);
        for k in 0..=n_max {
            if k > 0 {
                power = (&power * g).scale(&int(k as i64).recip());
            }
            for (n, c) in power.egf_scalars().into_iter().enumerate().skip(k) {
                rows[n][k] = c;
            }
        }
        Triangle { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `values[n][k]`, zero when `k > n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.rows[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Row `n` read as the polynomial `Σ_k values[n][k] x^k`.
    pub fn row_poly(&self, n: usize) -> Polynomial {
        Polynomial::new(self.rows[n].clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StirlingKind {
    /// Signed Stirling numbers of the first kind, from `log(1+t)^k / k!`.
    Classical1,
    /// From `(e^t - 1)^k / k!`.
    Classical2,
    /// From `log_λ(1+t)^k / k!`.
    Degenerate1,
    /// From `(e_λ(t) - 1)^k / k!`.
    Degenerate2,
    /// From `(t / (1-t))^k / k!`.
    Lah,
}

impl StirlingKind {
    pub fn uses_lambda(self) -> bool {
        matches!(self, StirlingKind::Degenerate1 | StirlingKind::Degenerate2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTriangle {
    pub kind: StirlingKind,
    /// Zero for the kinds that ignore `λ`.
    pub lambda: Rational,
    pub values: Triangle,
}

impl StirlingTriangle {
    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.values.get(n, k)
    }
}

type TableKey = (StirlingKind, Rational, usize);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<StirlingTriangle>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<StirlingTriangle>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized per `(kind, λ, n_max)`. Concurrent callers may both compute a
/// missing table; the values are identical so the first insert wins.
pub fn stirling_table(kind: StirlingKind, lambda: &Rational, n_max: usize) -> Arc<StirlingTriangle> {
    let lambda = if kind.uses_lambda() {
        lambda.clone()
    } else {
        Rational::zero()
    };
    let key = (kind, lambda.clone(), n_max);
    if let Some(hit) = table_cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let generator = match kind {
        StirlingKind::Classical1 => Series::log1p(&Rational::one(), n_max),
        StirlingKind::Classical2 => deg_exp_minus_one(&Rational::zero(), n_max),
        StirlingKind::Degenerate1 => deg_log_series(&lambda, n_max),
        StirlingKind::Degenerate2 => deg_exp_minus_one(&lambda, n_max),
        StirlingKind::Lah => {
            let t = Series::t(n_max);
            &t * &t.geom().expect("t has zero constant term")
        }
    };
    let table = Arc::new(StirlingTriangle {
        kind,
        lambda,
        values: Triangle::from_egf_powers(&generator),
    });
    let mut cache = table_cache().lock().unwrap();
    Arc::clone(cache.entry(key).or_insert(table))
}

/// `(x)_{n,λ} = x (x - λ) ... (x - (n-1)λ)`, with `(x)_{0,λ} = 1`.
pub fn deg_falling(x: &Polynomial, n: usize, lambda: &Rational) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, i| {
        let shift = Polynomial::constant(lambda * int(i as i64));
        &acc * &(x - &shift)
    })
}

pub fn deg_falling_at(x: &Rational, n: usize, lambda: &Rational) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (x - lambda * int(i as i64)))
}

/// `(x)_n = x (x - 1) ... (x - n + 1)`.
pub fn falling_factorial(x: &Polynomial, n: usize) -> Polynomial {
    deg_falling(x, n, &Rational::one())
}

pub fn falling_factorial_at(x: &Rational, n: usize) -> Rational {
    deg_falling_at(x, n, &Rational::one())
}

/// `e_λ^x(t) = Σ (x)_{n,λ} t^n / n!`; equal to `exp(x t)` at `λ = 0`.
pub fn deg_exp_series(x: &Polynomial, lambda: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Polynomial::one();
    coeffs.push(term.clone());
    for n in 1..=order {
        let factor = x - &Polynomial::constant(lambda * int(n as i64 - 1));
        term = (&term * &factor).scale(&int(n as i64).recip());
        coeffs.push(term.clone());
    }
    Series::from_coeffs(coeffs)
}

/// `e_λ(t) - 1`.
pub fn deg_exp_minus_one(lambda: &Rational, order: usize) -> Series {
    let e = deg_exp_series(&Polynomial::one(), lambda, order);
    &e - &Series::one(order)
}

/// `log_λ(1+t) = ((1+t)^λ - 1) / λ`, the compositional inverse of
/// `e_λ(t) - 1`. At `λ = 0` this is `log(1+t)`.
pub fn deg_log_series(lambda: &Rational, order: usize) -> Series {
    if lambda.is_zero() {
        return Series::log1p(&Rational::one(), order);
    }
    // Generalized binomial: [t^n] (1+t)^λ = λ(λ-1)...(λ-n+1) / n!
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut binom = Rational::one();
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        binom = binom * (lambda - int(n as i64 - 1)) / int(n as i64);
        *c = &binom / lambda;
    }
    Series::from_scalars(coeffs)
}

/// Outer coefficients of `Ei_{k,λ}`: `c_0 = 0`,
/// `c_m = (1)_{m,λ} / ((m-1)! m^k)`. Any integer `k` is allowed.
pub fn polyexp_coeffs(k: i64, lambda: &Rational, order: usize) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        let unit = deg_falling_at(&Rational::one(), m, lambda);
        *c = unit * pow_i(&int(m as i64), -k) / factorial(m - 1);
    }
    coeffs
}

/// `Ei_{k,λ}(u(t))` for a series `u` with zero constant term.
pub fn polyexp_apply(k: i64, lambda: &Rational, u: &Series) -> crate::Result<Series> {
    Series::compose(&polyexp_coeffs(k, lambda, u.order()), u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BellVariant {
    Classical,
    Degenerate(Rational),
}

/// `φ_n(x) = Σ_k {n k} x^k`, or its degenerate analogue with `{n k}_λ`.
pub fn bell_poly(n: usize, variant: &BellVariant) -> Polynomial {
    let table = match variant {
        BellVariant::Classical => stirling_table(StirlingKind::Classical2, &Rational::zero(), n),
        BellVariant::Degenerate(lambda) => stirling_table(StirlingKind::Degenerate2, lambda, n),
    };
    table.values.row_poly(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, ratio};

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&Polynomial::x(), 3), p(&[0, 2, -3, 1]));
        assert_eq!(falling_factorial_at(&int(5), 0), int(1));
        assert_eq!(falling_factorial_at(&ratio(1, 2), 2), ratio(-1, 4));
    }

    #[test]
    fn deg_falling_examples() {
        assert_eq!(deg_falling_at(&int(1), 2, &ratio(1, 2)), ratio(1, 2));
        assert_eq!(deg_falling(&Polynomial::x(), 4, &int(0)), Polynomial::x().pow(4));
        assert_eq!(deg_falling_at(&ratio(3, 7), 5, &int(0)), ratio(3, 7) * ratio(3, 7) * ratio(3, 7) * ratio(3, 7) * ratio(3, 7));
        assert_eq!(deg_falling_at(&int(1), 3, &int(1)), int(0));
        assert_eq!(deg_falling(&Polynomial::x(), 5, &int(1)), falling_factorial(&Polynomial::x(), 5));
    }

    /// Number of set partitions of an n-set into k blocks, by enumerating
    /// restricted growth strings.
    fn count_partitions(n: usize, k: usize) -> u64 {
        fn go(pos: usize, n: usize, used: usize, k: usize) -> u64 {
            if pos == n {
                return (used == k) as u64;
            }
            (0..=used.min(k.saturating_sub(1)))
                .map(|b| go(pos + 1, n, used.max(b + 1), k))
                .sum()
        }
        if n == 0 {
            return (k == 0) as u64;
        }
        go(0, n, 0, k)
    }

    #[test]
    fn stirling_table_examples() {
        let s2 = stirling_table(StirlingKind::Classical2, &int(0), 6);
        assert_eq!(s2.get(3, 2), int(3));
        assert_eq!(s2.get(4, 2), int(7));
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(s2.get(n, k), int(count_partitions(n, k) as i64), "{{{n} {k}}}");
            }
        }
        let s1 = stirling_table(StirlingKind::Classical1, &int(0), 3);
        assert_eq!(s1.get(3, 2), int(-3));
        assert_eq!(s1.get(3, 1), int(2));
        let lah = stirling_table(StirlingKind::Lah, &int(0), 3);
        assert_eq!(lah.get(3, 2), int(6));
        let d2 = stirling_table(StirlingKind::Degenerate2, &ratio(1, 3), 3);
        assert_eq!(d2.get(2, 1), ratio(2, 3));
        assert_eq!(d2.get(3, 2), int(2));
    }

    #[test]
    fn triangle_shape_invariants() {
        for kind in [
            StirlingKind::Classical1,
            StirlingKind::Classical2,
            StirlingKind::Degenerate1,
            StirlingKind::Degenerate2,
            StirlingKind::Lah,
        ] {
            for lambda in [int(0), ratio(1, 3), ratio(-1, 2), int(2)] {
                let t = stirling_table(kind, &lambda, 8);
                assert_eq!(t.get(0, 0), int(1));
                for n in 1..=8 {
                    assert_eq!(t.get(n, 0), int(0));
                    assert_eq!(t.get(n, n), int(1), "{kind:?} diagonal at n={n}");
                }
            }
        }
    }

    #[test]
    fn degenerate_tables_at_zero_are_classical() {
        let zero = int(0);
        assert_eq!(
            stirling_table(StirlingKind::Degenerate1, &zero, 10).values,
            stirling_table(StirlingKind::Classical1, &zero, 10).values
        );
        assert_eq!(
            stirling_table(StirlingKind::Degenerate2, &zero, 10).values,
            stirling_table(StirlingKind::Classical2, &zero, 10).values
        );
    }

    #[test]
    fn lah_closed_form() {
        let lah = stirling_table(StirlingKind::Lah, &int(0), 12);
        for n in 1..=12 {
            for k in 1..=n {
                let closed = factorial(n) / factorial(k) * binomial(n - 1, k - 1);
                assert_eq!(lah.get(n, k), closed);
            }
        }
    }

    #[test]
    fn stirling_orthogonality() {
        let s1 = stirling_table(StirlingKind::Classical1, &int(0), 12);
        let s2 = stirling_table(StirlingKind::Classical2, &int(0), 12);
        for n in 0..=12 {
            for k in 0..=12 {
                let sum: Rational = (0..=12).map(|j| s2.get(n, j) * s1.get(j, k)).sum();
                assert_eq!(sum, int((n == k) as i64));
            }
        }
        for lambda in [int(0), ratio(1, 3), ratio(-1, 2), int(2)] {
            let d1 = stirling_table(StirlingKind::Degenerate1, &lambda, 12);
            let d2 = stirling_table(StirlingKind::Degenerate2, &lambda, 12);
            for j in 0..=12 {
                for m in 0..=12 {
                    let sum: Rational = (0..=12).map(|l| d2.get(j, l) * d1.get(l, m)).sum();
                    assert_eq!(sum, int((j == m) as i64));
                }
            }
        }
    }

    #[test]
    fn deg_falling_basis_change() {
        let s1 = stirling_table(StirlingKind::Classical1, &int(0), 10);
        for lambda in [ratio(1, 3), ratio(-1, 2), int(2)] {
            for n in 0..=10 {
                let expanded = Polynomial::new(
                    (0..=n)
                        .map(|k| pow_i(&lambda, (n - k) as i64) * s1.get(n, k))
                        .collect(),
                );
                assert_eq!(deg_falling(&Polynomial::x(), n, &lambda), expanded);
            }
        }
    }

    #[test]
    fn deg_exp_examples() {
        let e = deg_exp_series(&Polynomial::one(), &int(0), 3);
        assert_eq!(e, Series::from_scalars(vec![int(1), int(1), ratio(1, 2), ratio(1, 6)]));
        let e1 = deg_exp_series(&Polynomial::one(), &int(1), 3);
        assert_eq!(e1, Series::from_scalars(vec![int(1), int(1), int(0), int(0)]));
        let ex = deg_exp_series(&Polynomial::x(), &ratio(1, 2), 2);
        // x (x - 1/2) / 2
        assert_eq!(ex.coeff(2), Polynomial::new(vec![int(0), ratio(-1, 4), ratio(1, 2)]));
        let classical = Series::t(5).scale_poly(&Polynomial::x()).exp().unwrap();
        assert_eq!(deg_exp_series(&Polynomial::x(), &int(0), 5), classical);
    }

    #[test]
    fn deg_log_examples() {
        assert_eq!(deg_log_series(&int(1), 3), Series::t(3));
        assert_eq!(deg_log_series(&int(0), 3), Series::log1p(&int(1), 3));
        assert_eq!(deg_log_series(&int(2), 2), Series::from_scalars(vec![int(0), int(1), ratio(1, 2)]));
    }

    #[test]
    fn deg_exp_and_log_are_inverse() {
        for lambda in [int(0), ratio(1, 3), ratio(-1, 2), int(2)] {
            let outer: Vec<Rational> = deg_exp_series(&Polynomial::one(), &lambda, 20)
                .egf_scalars()
                .into_iter()
                .enumerate()
                .map(|(n, c)| c / factorial(n))
                .collect();
            let composed = Series::compose(&outer, &deg_log_series(&lambda, 20)).unwrap();
            assert_eq!(composed, Series::from_scalars({
                let mut v = vec![int(0); 21];
                v[0] = int(1);
                v[1] = int(1);
                v
            }));
        }
    }

    #[test]
    fn polyexp_examples() {
        // Ei_{1,λ}(u) = e_λ(u) - 1
        for lambda in [int(0), ratio(1, 3), ratio(-1, 2), int(2)] {
            let u = deg_exp_minus_one(&lambda, 8);
            let lhs = polyexp_apply(1, &lambda, &u).unwrap();
            let mut outer = deg_exp_series(&Polynomial::one(), &lambda, 8).coeffs().iter().map(Polynomial::constant_term).collect::<Vec<_>>();
            outer[0] = int(0);
            assert_eq!(lhs, Series::compose(&outer, &u).unwrap());
        }
        let e = polyexp_apply(1, &int(0), &Series::t(3)).unwrap();
        assert_eq!(e, Series::from_scalars(vec![int(0), int(1), ratio(1, 2), ratio(1, 6)]));
        let ei2 = polyexp_apply(2, &int(0), &Series::t(2)).unwrap();
        assert_eq!(ei2.coeff(2), Polynomial::constant(ratio(1, 4)));
        // negative k multiplies by m^|k|: [t^2] Ei_{-1,0}(t) = 2 / 1!
        let neg = polyexp_apply(-1, &int(0), &Series::t(2)).unwrap();
        assert_eq!(neg.coeff(2), Polynomial::constant(int(2)));
        assert!(polyexp_apply(1, &int(0), &Series::one(2)).is_err());
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_poly(3, &BellVariant::Classical), p(&[0, 1, 3, 1]));
        assert_eq!(bell_poly(0, &BellVariant::Classical), Polynomial::one());
        for n in 0..=8 {
            assert_eq!(bell_poly(n, &BellVariant::Degenerate(int(0))), bell_poly(n, &BellVariant::Classical));
        }
        // Bell numbers 1, 1, 2, 5, 15, 52, 203
        let bells: Vec<Rational> = (0..=6).map(|n| bell_poly(n, &BellVariant::Classical).eval(&int(1))).collect();
        assert_eq!(bells, [1, 1, 2, 5, 15, 52, 203].map(int).to_vec());
    }
}
