//! Truncated power series in `t` whose coefficients are polynomials in `x`.
//!
//! Every binary operation truncates to the smaller of the two orders.
//! Composition, `exp` and `geom` require an inner series with zero constant
//! term and fail with [`Error::NonzeroConstantTerm`] otherwise.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factorial, int, sign, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    // Always order + 1 entries.
    coeffs: Vec<Polynomial>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Polynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Polynomial::one(), order)
    }

    pub fn constant(value: Polynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The formal variable `t` (collapses to zero at order 0).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Polynomial::one();
        }
        s
    }

    /// Builds a series from `[t^n]` coefficients; the order is
    /// `coeffs.len() - 1`. An empty vector gives the zero series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<Polynomial>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Polynomial::zero());
        }
        Series { coeffs }
    }

    pub fn from_scalars(coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Polynomial::constant).collect())
    }

    /// Inverse of [`Series::egf_coeffs`]: `coeffs[n] = egf[n] / n!`.
    pub fn from_egf(egf: Vec<Polynomial>) -> Self {
        Self::from_coeffs(
            egf.into_iter()
                .enumerate()
                .map(|(n, c)| c.scale(&factorial(n).recip()))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// `[t^n]`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Polynomial {
        self.coeffs.get(n).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<Polynomial> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Polynomial::zero());
        Series { coeffs }
    }

    pub fn has_zero_constant(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Multiplies every coefficient by the polynomial `factor`.
    pub fn scale_poly(&self, factor: &Polynomial) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `a^m` by repeated squaring; `a^0` is the constant 1.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Σ_m outer[m] · inner^m`, truncated at `inner`'s order. Entries of
    /// `outer` past that order are irrelevant; missing ones count as zero.
    pub fn compose(outer: &[Rational], inner: &Series) -> Result<Self> {
        if !inner.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = inner.order();
        if outer.is_empty() {
            return Ok(Self::zero(order));
        }
        let top = order.min(outer.len().saturating_sub(1));
        let mut acc = Self::zero(order);
        // Horner: acc = (...(c_top · u + c_{top-1}) · u + ...) + c_0
        for m in (0..=top).rev() {
            if m < top {
                acc = &acc * inner;
            }
            acc.coeffs[0] += &Polynomial::constant(outer[m].clone());
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Result<Self> {
        let outer: Vec<Rational> = (0..=self.order()).map(|m| factorial(m).recip()).collect();
        Self::compose(&outer, self)
    }

    /// `1 / (1 - u)`.
    pub fn geom(&self) -> Result<Self> {
        Self::compose(&vec![Rational::one(); self.order() + 1], self)
    }

    /// `log(1 + scale·t) = Σ_{n≥1} (-1)^{n-1} scale^n t^n / n`.
    pub fn log1p(scale: &Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        let mut power = Rational::one();
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            power *= scale;
            *c = sign(n - 1) * &power / int(n as i64);
        }
        Self::from_scalars(coeffs)
    }

    /// `n! · [t^n]`.
    pub fn egf_coeff(&self, n: usize) -> Result<Polynomial> {
        let c = self.coeffs.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })?;
        Ok(c.scale(&factorial(n)))
    }

    /// All EGF coefficients `n! · [t^n]` for `n = 0..=order`.
    pub fn egf_coeffs(&self) -> Vec<Polynomial> {
        let mut fact = Rational::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= int(n as i64);
                }
                c.scale(&fact)
            })
            .collect()
    }

    /// Scalar EGF coefficients; non-constant coefficients contribute their
    /// constant term only.
    pub fn egf_scalars(&self) -> Vec<Rational> {
        self.egf_coeffs().iter().map(Polynomial::constant_term).collect()
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = Series::zero(order);
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn s(cs: &[Rational]) -> Series {
        Series::from_scalars(cs.to_vec())
    }

    fn ints(cs: &[i64]) -> Series {
        s(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    fn exp_t(order: usize) -> Series {
        s(&(0..=order).map(|n| factorial(n).recip()).collect::<Vec<_>>())
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&ints(&[1, 1, 0]) * &ints(&[1, -1, 0]), ints(&[1, 0, -1]));
        // e^t · e^t = e^{2t}, expanded by hand to t^3
        let sq = &exp_t(3) * &exp_t(3);
        assert_eq!(sq, s(&[int(1), int(2), int(2), ratio(4, 3)]));
        assert_eq!(&exp_t(4) * &Series::zero(4), Series::zero(4));
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let prod = &ints(&[1, 1, 1, 1, 1]) * &ints(&[1, 1]);
        assert_eq!(prod.order(), 1);
        assert_eq!(prod, ints(&[1, 2]));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(ints(&[3, 5, 7]).pow(0), Series::one(2));
        assert_eq!(ints(&[1, 1, 0, 0]).pow(3), ints(&[1, 3, 3, 1]));
        assert_eq!(ints(&[0, 1, 1, 0, 0]).pow(2), ints(&[0, 0, 1, 2, 1]));
    }

    #[test]
    fn compose_examples() {
        let ones = vec![int(1); 4];
        assert_eq!(Series::compose(&ones, &Series::t(3)).unwrap(), ints(&[1, 1, 1, 1]));

        let exp_coeffs: Vec<Rational> = (0..=2).map(|m| factorial(m).recip()).collect();
        let inner = s(&[int(0), int(1), ratio(1, 2)]);
        assert_eq!(Series::compose(&exp_coeffs, &inner).unwrap(), ints(&[1, 1, 1]));

        let outer = vec![int(7), int(3), int(-2)];
        assert_eq!(Series::compose(&outer, &Series::zero(2)).unwrap(), ints(&[7, 0, 0]));

        assert_eq!(
            Series::compose(&outer, &ints(&[1, 1])),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::t(4).exp().unwrap(), exp_t(4));
        assert_eq!(Series::zero(3).exp().unwrap(), Series::one(3));
        // exp(x t) = 1 + x t + x^2 t^2 / 2
        let xt = Series::t(2).scale_poly(&Polynomial::x());
        let expected = Series::from_coeffs(vec![
            Polynomial::one(),
            Polynomial::x(),
            Polynomial::monomial(ratio(1, 2), 2),
        ]);
        assert_eq!(xt.exp().unwrap(), expected);
        assert_eq!(Series::one(2).exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn log1p_examples() {
        assert_eq!(Series::log1p(&int(1), 3), s(&[int(0), int(1), ratio(-1, 2), ratio(1, 3)]));
        assert_eq!(Series::log1p(&int(0), 3), Series::zero(3));
        assert_eq!(Series::log1p(&int(2), 2), ints(&[0, 2, -2]));
    }

    #[test]
    fn geom_examples() {
        assert_eq!(Series::t(3).geom().unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(Series::zero(3).geom().unwrap(), Series::one(3));
        assert_eq!(ints(&[0, 0, 1, 0, 0, 0]).geom().unwrap(), ints(&[1, 0, 1, 0, 1, 0]));
        assert_eq!(ints(&[2, 1]).geom(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn egf_coeff_examples() {
        assert_eq!(exp_t(5).egf_coeff(5).unwrap(), Polynomial::one());
        let xt = Series::t(3).scale_poly(&Polynomial::x()).exp().unwrap();
        assert_eq!(xt.egf_coeff(3).unwrap(), Polynomial::x().pow(3));
        // t/(1-t) = Σ_{n≥1} t^n
        let t_over = &Series::t(4) * &Series::t(4).geom().unwrap();
        assert_eq!(t_over.egf_coeff(4).unwrap(), Polynomial::constant(int(24)));
        assert_eq!(
            exp_t(3).egf_coeff(4),
            Err(Error::OrderExceeded { index: 4, order: 3 })
        );
    }

    #[test]
    fn egf_round_trip() {
        let egf = vec![Polynomial::one(), Polynomial::x(), Polynomial::constant(int(6))];
        assert_eq!(Series::from_egf(egf.clone()).egf_coeffs(), egf);
    }
}
