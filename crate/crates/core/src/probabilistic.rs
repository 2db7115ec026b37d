//! Exact moment pipeline for a random variable `Y`: raw moments, degenerate
//! moments `E[(Y)_{n,λ}]`, the degenerate moment generating series
//! `E[e_λ^Y(t)]`, probabilistic (degenerate) Stirling numbers and Bell
//! polynomials, and the degenerate moments of `S_m = Y_1 + ... + Y_m`.
//!
//! All series are formal. The gamma(1,1) closed form `1 / (1 - log(1+λt)/λ)`
//! converges only for `t < (e^λ - 1)/λ`, which is irrelevant here.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::combinatorics::{
    bell_poly, deg_exp_minus_one, deg_exp_series, stirling_table, BellVariant, StirlingKind,
    Triangle,
};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{binomial, factorial, format_short, int, parse_rational, pow_i, sign, Rational};
use crate::series::Series;

/// A random variable with an exact rational moment sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    PointMass(Rational),
    Bernoulli(Rational),
    Poisson(Rational),
    Gamma { alpha: Rational, beta: Rational },
    /// `(value, probability)` atoms.
    FiniteDiscrete(Vec<(Rational, Rational)>),
}

impl Distribution {
    pub fn point(c: Rational) -> Self {
        Distribution::PointMass(c)
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        Distribution::Bernoulli(p).validated()
    }

    pub fn poisson(alpha: Rational) -> Result<Self> {
        Distribution::Poisson(alpha).validated()
    }

    pub fn gamma(alpha: Rational, beta: Rational) -> Result<Self> {
        Distribution::Gamma { alpha, beta }.validated()
    }

    pub fn discrete(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        Distribution::FiniteDiscrete(atoms).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let reason = match &self {
            Distribution::PointMass(_) => None,
            Distribution::Bernoulli(p) => {
                (p < &Rational::zero() || p > &Rational::one()).then_some("p must lie in [0, 1]")
            }
            Distribution::Poisson(alpha) => (alpha <= &Rational::zero()).then_some("alpha must be positive"),
            Distribution::Gamma { alpha, beta } => (alpha <= &Rational::zero() || beta <= &Rational::zero())
                .then_some("alpha and beta must be positive"),
            Distribution::FiniteDiscrete(atoms) => {
                if atoms.is_empty() {
                    Some("at least one atom is required")
                } else if atoms.iter().any(|(_, p)| p <= &Rational::zero()) {
                    Some("probabilities must be positive")
                } else if atoms.iter().map(|(_, p)| p).sum::<Rational>() != Rational::one() {
                    Some("probabilities must sum to exactly 1")
                } else {
                    None
                }
            }
        };
        match reason {
            Some(reason) => Err(Error::InvalidDistribution {
                input: self.to_string(),
                reason: reason.to_string(),
            }),
            None => Ok(self),
        }
    }

    /// `E[Y^n]`.
    pub fn raw_moment(&self, n: usize) -> Rational {
        match self {
            Distribution::PointMass(c) => pow_i(c, n as i64),
            Distribution::Bernoulli(p) => {
                if n == 0 {
                    Rational::one()
                } else {
                    p.clone()
                }
            }
            // Touchard: E[Y^n] = φ_n(α)
            Distribution::Poisson(alpha) => bell_poly(n, &BellVariant::Classical).eval(alpha),
            // (α + n - 1)_n / β^n
            Distribution::Gamma { alpha, beta } => {
                let rising = (0..n).fold(Rational::one(), |acc, i| acc * (alpha + int(i as i64)));
                rising / pow_i(beta, n as i64)
            }
            Distribution::FiniteDiscrete(atoms) => atoms
                .iter()
                .map(|(v, p)| p * pow_i(v, n as i64))
                .sum(),
        }
    }

    pub fn mean(&self) -> Rational {
        self.raw_moment(1)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::PointMass(c) => write!(f, "point:{}", format_short(c)),
            Distribution::Bernoulli(p) => write!(f, "bernoulli:{}", format_short(p)),
            Distribution::Poisson(a) => write!(f, "poisson:{}", format_short(a)),
            Distribution::Gamma { alpha, beta } => {
                write!(f, "gamma:{},{}", format_short(alpha), format_short(beta))
            }
            Distribution::FiniteDiscrete(atoms) => {
                let parts: Vec<String> = atoms
                    .iter()
                    .map(|(v, p)| format!("{}:{}", format_short(v), format_short(p)))
                    .collect();
                write!(f, "discrete:{}", parts.join(","))
            }
        }
    }
}

/// Text form: `point:c`, `bernoulli:p`, `poisson:a`, `gamma:a,b`,
/// `discrete:v1:p1,v2:p2,...`.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidDistribution {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let num = |s: &str| parse_rational(s).map_err(|_| bad(&format!("bad number {s:?}")));
        let (family, args) = input.trim().split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let dist = match family {
            "point" => Distribution::PointMass(num(args)?),
            "bernoulli" => Distribution::Bernoulli(num(args)?),
            "poisson" => Distribution::Poisson(num(args)?),
            "gamma" => {
                let (a, b) = args.split_once(',').ok_or_else(|| bad("gamma needs alpha,beta"))?;
                Distribution::Gamma { alpha: num(a)?, beta: num(b)? }
            }
            "discrete" => {
                let atoms = args
                    .split(',')
                    .map(|atom| {
                        let (v, p) = atom.split_once(':').ok_or_else(|| bad("atoms are value:prob"))?;
                        Ok((num(v)?, num(p)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Distribution::FiniteDiscrete(atoms)
            }
            _ => return Err(bad("unknown family")),
        };
        dist.validated().map_err(|e| match e {
            Error::InvalidDistribution { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

/// `raw[n] = E[Y^n]` for `0 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    pub dist: Distribution,
    pub raw: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(dist: &Distribution, n_max: usize) -> Self {
        MomentSequence {
            dist: dist.clone(),
            raw: (0..=n_max).map(|n| dist.raw_moment(n)).collect(),
        }
    }

    /// `E[p(Y)]` for a polynomial `p` of degree at most `n_max`.
    pub fn expect(&self, p: &Polynomial) -> Rational {
        p.coeffs().iter().zip(&self.raw).map(|(c, m)| c * m).sum()
    }
}

pub fn raw_moment(dist: &Distribution, n: usize) -> Rational {
    dist.raw_moment(n)
}

/// `E[(Y)_{n,λ}]` for all `n <= n_max`, through
/// `(y)_{n,λ} = Σ_k λ^{n-k} S_1(n,k) y^k`.
pub fn deg_moments(dist: &Distribution, lambda: &Rational, n_max: usize) -> Vec<Rational> {
    let raw = MomentSequence::new(dist, n_max).raw;
    let s1 = stirling_table(StirlingKind::Classical1, &Rational::zero(), n_max);
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| pow_i(lambda, (n - k) as i64) * s1.get(n, k) * &raw[k])
                .sum()
        })
        .collect()
}

pub fn deg_moment(dist: &Distribution, n: usize, lambda: &Rational) -> Rational {
    deg_moments(dist, lambda, n).pop().expect("non-empty")
}

/// `E[e_λ^Y(t)]` built from the moment sequence:
/// `[t^n] = E[(Y)_{n,λ}] / n!`.
pub fn deg_mgf_series(dist: &Distribution, lambda: &Rational, order: usize) -> Series {
    Series::from_egf(
        deg_moments(dist, lambda, order)
            .into_iter()
            .map(Polynomial::constant)
            .collect(),
    )
}

/// `log(1 + λt) / λ`, which is `t` at `λ = 0`.
pub fn scaled_log(lambda: &Rational, order: usize) -> Series {
    if lambda.is_zero() {
        Series::t(order)
    } else {
        Series::log1p(lambda, order).scale(&lambda.recip())
    }
}

/// Closed-form `E[e_λ^Y(t)]` where one is known: point masses and finite
/// discrete laws (weighted `e_λ^v(t)`), Bernoulli `1 + p(e_λ(t) - 1)`,
/// Poisson `exp(α(e_λ(t) - 1))`, and gamma(1,1) `1 / (1 - log(1+λt)/λ)`.
/// `None` for other gamma parameters.
pub fn deg_mgf_closed(dist: &Distribution, lambda: &Rational, order: usize) -> Option<Series> {
    let series = match dist {
        Distribution::PointMass(c) => deg_exp_series(&Polynomial::constant(c.clone()), lambda, order),
        Distribution::Bernoulli(p) => &Series::one(order) + &deg_exp_minus_one(lambda, order).scale(p),
        Distribution::Poisson(alpha) => deg_exp_minus_one(lambda, order)
            .scale(alpha)
            .exp()
            .expect("e_λ(t) - 1 has zero constant term"),
        Distribution::Gamma { alpha, beta } if alpha.is_one() && beta.is_one() => {
            scaled_log(lambda, order).geom().expect("log has zero constant term")
        }
        Distribution::Gamma { .. } => return None,
        Distribution::FiniteDiscrete(atoms) => atoms.iter().fold(Series::zero(order), |acc, (v, p)| {
            &acc + &deg_exp_series(&Polynomial::constant(v.clone()), lambda, order).scale(p)
        }),
    };
    Some(series)
}

/// `{n k}_{Y,λ}` for all `0 <= k <= n <= n_max`, from
/// `(E[e_λ^Y(t)] - 1)^k / k!`.
pub fn prob_deg_stirling2_table(dist: &Distribution, lambda: &Rational, n_max: usize) -> Triangle {
    let m = deg_mgf_series(dist, lambda, n_max);
    Triangle::from_egf_powers(&(&m - &Series::one(n_max)))
}

pub fn prob_deg_stirling2(dist: &Distribution, lambda: &Rational, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfTriangle { n, k });
    }
    Ok(prob_deg_stirling2_table(dist, lambda, n).get(n, k))
}

/// `{n k}_Y`, the `λ = 0` case.
pub fn prob_stirling2(dist: &Distribution, n: usize, k: usize) -> Result<Rational> {
    prob_deg_stirling2(dist, &Rational::zero(), n, k)
}

/// `{n k}_Y = (1/k!) Σ_j C(k,j) (-1)^{k-j} E[S_j^n]`.
pub fn prob_stirling2_finite_difference(dist: &Distribution, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfTriangle { n, k });
    }
    let sm = sm_deg_moments(dist, &Rational::zero(), k, n);
    let sum: Rational = (0..=k)
        .map(|j| binomial(k, j) * sign(k - j) * &sm[j][n])
        .sum();
    Ok(sum / factorial(k))
}

/// `φ_{n,λ}^Y(x)` for all `n <= n_max`, from `exp(x (E[e_λ^Y(t)] - 1))`.
pub fn prob_deg_bell_all(dist: &Distribution, lambda: &Rational, n_max: usize) -> Vec<Polynomial> {
    let m = deg_mgf_series(dist, lambda, n_max);
    let u = (&m - &Series::one(n_max)).scale_poly(&Polynomial::x());
    u.exp().expect("zero constant term").egf_coeffs()
}

pub fn prob_deg_bell(dist: &Distribution, lambda: &Rational, n: usize) -> Polynomial {
    prob_deg_bell_all(dist, lambda, n).pop().expect("non-empty")
}

/// `sm[m][n] = E[(S_m)_{n,λ}]` for `m <= m_max`, `n <= n_max`, read off
/// `E[e_λ^Y(t)]^m`. `S_0 = 0` contributes the constant series 1.
pub fn sm_deg_moments(dist: &Distribution, lambda: &Rational, m_max: usize, n_max: usize) -> Vec<Vec<Rational>> {
    let mgf = deg_mgf_series(dist, lambda, n_max);
    let mut power = Series::one(n_max);
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        if m > 0 {
            power = &power * &mgf;
        }
        out.push(power.egf_scalars());
    }
    out
}

pub fn sm_deg_moment(dist: &Distribution, lambda: &Rational, m: usize, n: usize) -> Rational {
    let mgf = deg_mgf_series(dist, lambda, n);
    mgf.pow(m as u64).egf_coeff(n).expect("n within order").constant_term()
}
