use num_traits::{One, Zero};
use proptest::prelude::*;

use polybell::combinatorics::{deg_falling, stirling_table, StirlingKind};
use polybell::polybell::{bel_all, Route};
use polybell::rational::{format_pq, format_short, int, parse_rational, ratio};
use polybell::{Distribution, Polynomial, Rational, Series};

const ORDER: usize = 10;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..5).prop_map(Polynomial::new)
}

/// Scalar series of order `ORDER` with zero constant term.
fn nilpotent() -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), ORDER).prop_map(|tail| {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(tail);
        Series::from_scalars(coeffs)
    })
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), ORDER + 1).prop_map(Series::from_scalars)
}

fn scalars(s: &Series) -> Vec<Rational> {
    s.coeffs().iter().map(Polynomial::constant_term).collect()
}

fn distribution() -> impl Strategy<Value = Distribution> {
    prop_oneof![
        small_rational().prop_map(Distribution::PointMass),
        (0i64..=5).prop_map(|p| Distribution::Bernoulli(ratio(p, 5))),
        (1i64..=6).prop_map(|a| Distribution::Poisson(ratio(a, 2))),
        (1i64..=4, 1i64..=3).prop_map(|(a, b)| Distribution::Gamma {
            alpha: ratio(a, 2),
            beta: int(b)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polynomial_ring_axioms(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Polynomial::zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn polynomial_eval_is_a_homomorphism(a in polynomial(), b in polynomial(), x in small_rational()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn exp_is_a_homomorphism(a in nilpotent(), b in nilpotent()) {
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &a.exp().unwrap() * &b.exp().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn geom_inverts_one_minus(u in nilpotent()) {
        let one_minus = &Series::one(ORDER) - &u;
        prop_assert_eq!(&u.geom().unwrap() * &one_minus, Series::one(ORDER));
    }

    #[test]
    fn composition_is_associative(f in series(), g in nilpotent(), h in nilpotent()) {
        let fg = Series::compose(&scalars(&f), &g).unwrap();
        let left = Series::compose(&scalars(&fg), &h).unwrap();
        let gh = Series::compose(&scalars(&g), &h).unwrap();
        let right = Series::compose(&scalars(&f), &gh).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rational_strings_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_short(&r)).unwrap(), r.clone());
        prop_assert_eq!(parse_rational(&format_pq(&r)).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degenerate_falling_factorial_binomial_theorem(lambda in small_rational(), n in 0usize..7) {
        // (x + y)_{n,λ} = Σ C(n,j) (x)_{j,λ} (y)_{n-j,λ}, checked at y = 1.
        let x = Polynomial::x();
        let shifted = &x + &Polynomial::one();
        let lhs = deg_falling(&shifted, n, &lambda);
        let rhs = (0..=n).fold(Polynomial::zero(), |acc, j| {
            let y = deg_falling(&Polynomial::one(), n - j, &lambda);
            &acc + &(&deg_falling(&x, j, &lambda) * &y).scale(&polybell::rational::binomial(n, j))
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_stirling_orthogonality(lambda in small_rational()) {
        let n = 8;
        let s1 = stirling_table(StirlingKind::Degenerate1, &lambda, n);
        let s2 = stirling_table(StirlingKind::Degenerate2, &lambda, n);
        for j in 0..=n {
            for m in 0..=n {
                let sum: Rational = (0..=n).map(|l| s2.get(j, l) * s1.get(l, m)).sum();
                let delta = if j == m { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(sum, delta);
            }
        }
    }

    #[test]
    fn routes_agree(dist in distribution(), lambda in small_rational(), k in -2i64..=3) {
        let n = 6;
        let gf = bel_all(Route::GeneratingFunction, &dist, &lambda, k, n);
        prop_assert_eq!(&bel_all(Route::Closed, &dist, &lambda, k, n), &gf);
        prop_assert_eq!(&bel_all(Route::MomentSums, &dist, &lambda, k, n), &gf);
    }

    #[test]
    fn distribution_strings_round_trip(dist in distribution()) {
        let back: Distribution = dist.to_string().parse().unwrap();
        prop_assert_eq!(back, dist);
    }
}
