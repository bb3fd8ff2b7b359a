//! Exact checks of the binomial identities behind the congruences, and the
//! coefficients `a_{m,k}^(r)` that expand `[C(l,m) C(l+m,m)]^r` in the basis
//! `C(l,k) C(l+k,k)`.
//!
//! Identities that are polynomial in `x` are compared coefficient by
//! coefficient over `Z[x]`; identities with rational terms are compared in
//! exact rationals. Nothing is sampled except the `l`-polynomial identity
//! in [`check_amkr`], where enough points are taken to pin the degree.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_arith::{binomial, binomial_signed, factorial, Integer, Rational};
use crate::polynomial::IntPolynomial;
use crate::sequences::{apery_poly, schmidt_poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("a^({r})_({m},{k}) = {value} is not an integer")]
    IntegralityViolation {
        r: u32,
        m: u64,
        k: u64,
        value: Rational,
    },
    #[error("x = {x} is a pole of the interpolation identity for m = {m}")]
    PoleInput { m: u64, x: Rational },
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Integer(Integer),
    Rational(Rational),
    Polynomial(IntPolynomial),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Rational(q) => write!(f, "{q}"),
            Value::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub id: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
}

impl IdentityVerdict {
    fn new(id: &'static str, params: Vec<(&'static str, String)>, lhs: Value, rhs: Value) -> Self {
        let pass = lhs == rhs;
        Self {
            id,
            params,
            lhs,
            rhs,
            pass,
        }
    }

    fn integers(id: &'static str, params: Vec<(&'static str, String)>, lhs: Integer, rhs: Integer) -> Self {
        Self::new(id, params, Value::Integer(lhs), Value::Integer(rhs))
    }
}

fn params<const N: usize>(pairs: [(&'static str, u64); N]) -> Vec<(&'static str, String)> {
    pairs.iter().map(|&(k, v)| (k, v.to_string())).collect()
}

fn c(n: u64, k: u64) -> Integer {
    binomial(n, k as i64)
}

/// `C(n,k)` with `k < 0` or `k > n >= 0` zero, and the polynomial binomial
/// `n(n-1)...(n-k+1)/k!` for negative `n`.
fn c_signed(n: i64, k: u64) -> Integer {
    binomial_signed(n, k as i64)
}

fn sign(k: u64) -> Integer {
    if k % 2 == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

fn rat(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// `C(l,m) C(l+m,m) = sum_{k=0}^m C(2m,m+k) C(l-m,k) C(l+m+k,k)`.
///
/// `C(l-m,k)` is the polynomial binomial, so `l < m` is covered as well.
pub fn check_pfaff_special(l: u64, m: u64) -> IdentityVerdict {
    let lhs = c(l, m) * c(l + m, m);
    let rhs = (0..=m)
        .map(|k| c(2 * m, m + k) * c_signed(l as i64 - m as i64, k) * c(l + m + k, k))
        .sum();
    IdentityVerdict::integers("pfaff_special", params([("l", l), ("m", m)]), lhs, rhs)
}

/// The `x^m` coefficient of the square expansion of `A_l(x)`.
fn square_expansion(l: u64) -> IntPolynomial {
    IntPolynomial::new(
        (0..=l)
            .map(|m| {
                let inner: Integer = (0..=m)
                    .map(|k| c(m, k) * c(m + k, k) * c(l, m + k) * c(l + m + k, m + k))
                    .sum();
                c(2 * m, m) * inner
            })
            .collect(),
    )
}

/// `A_l(x) = sum_m C(2m,m) x^m sum_k C(m,k) C(m+k,k) C(l,m+k) C(l+m+k,m+k)`.
pub fn check_square_expansion(l: u64) -> IdentityVerdict {
    IdentityVerdict::new(
        "square_expansion",
        params([("l", l)]),
        Value::Polynomial(apery_poly(l)),
        Value::Polynomial(square_expansion(l)),
    )
}

/// `sum_{l=k}^{n-1} (-1)^l (2l+1) C(l,k) C(l+k,k) = (-1)^(n-1) n C(n-1,k) C(n+k,k)`.
pub fn check_alt_sum(n: u64, k: u64) -> IdentityVerdict {
    assert!(n >= 1, "n must be positive");
    let lhs = (k..n)
        .map(|l| sign(l) * Integer::from(2 * l + 1) * c(l, k) * c(l + k, k))
        .sum();
    let rhs = sign(n - 1) * Integer::from(n) * c(n - 1, k) * c(n + k, k);
    IdentityVerdict::integers("alt_sum", params([("n", n), ("k", k)]), lhs, rhs)
}

/// `sum_{l=k}^{n-1} (2l+1) C(l,k) C(l+k,k) = n C(n,k+1) C(n+k,k)`.
pub fn check_plus_sum(n: u64, k: u64) -> IdentityVerdict {
    assert!(n >= 1, "n must be positive");
    let lhs = (k..n)
        .map(|l| Integer::from(2 * l + 1) * c(l, k) * c(l + k, k))
        .sum();
    let rhs = Integer::from(n) * c(n, k + 1) * c(n + k, k);
    IdentityVerdict::integers("plus_sum", params([("n", n), ("k", k)]), lhs, rhs)
}

/// `C(l,n) C(l+n,n) = sum_{k=0}^n (m+n)! k! / ((m+k)! n!) C(m,n-k) C(l-m,k) C(l+m+k,k)`
/// in exact rationals, with `C(l-m,k)` the polynomial binomial.
pub fn check_lem03(l: u64, m: u64, n: u64) -> IdentityVerdict {
    let lhs = rat(c(l, n) * c(l + n, n));
    let mut rhs = Rational::zero();
    for k in 0..=n {
        let ratio = Rational::new(
            factorial(m + n) * factorial(k),
            factorial(m + k) * factorial(n),
        );
        let b = c(m, n - k) * c_signed(l as i64 - m as i64, k) * c(l + m + k, k);
        rhs += ratio * rat(b);
    }
    IdentityVerdict::new(
        "lem03",
        params([("l", l), ("m", m), ("n", n)]),
        Value::Rational(lhs),
        Value::Rational(rhs),
    )
}

/// The coefficients `a_{m,k}^(r)` for `k = m..=rm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchmidtCoeffTable {
    r: u32,
    m: u64,
    coeffs: Vec<Integer>,
}

impl SchmidtCoeffTable {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `a_{m,k}` for `k = m..=rm`, in that order.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// `a_{m,k}`, zero outside `m..=rm`.
    pub fn get(&self, k: u64) -> Integer {
        k.checked_sub(self.m)
            .and_then(|i| self.coeffs.get(i as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `sum_k a_{m,k} C(l,k) C(l+k,k)`.
    pub fn expand_at(&self, l: u64) -> Integer {
        (self.m..=self.r as u64 * self.m)
            .map(|k| self.get(k) * c(l, k) * c(l + k, k))
            .sum()
    }

    /// Solve for the coefficients directly: the basis `C(l,k) C(l+k,k)` is
    /// triangular in `(l, k)`, so evaluating the expansion at
    /// `l = m..=rm` determines every coefficient by forward substitution.
    /// Fails if a solved coefficient is not an integer.
    pub fn by_interpolation(r: u32, m: u64) -> Result<Self, IdentityError> {
        assert!(r >= 2, "r must be at least 2");
        let top = r as u64 * m;
        let mut solved: Vec<Rational> = Vec::with_capacity((top - m + 1) as usize);
        for l in m..=top {
            let target = num_traits::pow(c(l, m) * c(l + m, m), r as usize);
            let mut rest = rat(target);
            for (i, a) in solved.iter().enumerate() {
                let k = m + i as u64;
                rest -= a * rat(c(l, k) * c(l + k, k));
            }
            solved.push(rest / rat(c(2 * l, l)));
        }
        let mut coeffs = Vec::with_capacity(solved.len());
        for (i, a) in solved.into_iter().enumerate() {
            if !a.is_integer() {
                return Err(IdentityError::IntegralityViolation {
                    r,
                    m,
                    k: m + i as u64,
                    value: a,
                });
            }
            coeffs.push(a.to_integer());
        }
        Ok(Self { r, m, coeffs })
    }
}

/// `a_{m,k}^(r)` from the closed form at `r = 2` and the recursion
/// `a^(r+1)_{m,m+i} = sum_{k=m}^{rm} C(m+k,k) C(m,k-i) C(m+i,i) a^(r)_{m,k}`.
pub fn schmidt_coeffs(r: u32, m: u64) -> SchmidtCoeffTable {
    assert!(r >= 2, "r must be at least 2");
    let mut coeffs: Vec<Integer> = (0..=m)
        .map(|k| c(2 * m, m) * c(m, k) * c(m + k, k))
        .collect();
    for s in 2..r {
        let top = s as u64 * m;
        let next = (0..=top)
            .map(|i| {
                (m..=top)
                    .filter(|&k| k >= i && k - i <= m)
                    .map(|k| c(m + k, k) * c(m, k - i) * c(m + i, i) * &coeffs[(k - m) as usize])
                    .sum()
            })
            .collect();
        coeffs = next;
    }
    SchmidtCoeffTable { r, m, coeffs }
}

/// `C(l,m)^r C(l+m,m)^r = sum_{k=m}^{rm} a_{m,k}^(r) C(l,k) C(l+k,k)`.
pub fn check_amkr(r: u32, m: u64, l: u64) -> IdentityVerdict {
    check_amkr_with(&schmidt_coeffs(r, m), l)
}

pub fn check_amkr_with(table: &SchmidtCoeffTable, l: u64) -> IdentityVerdict {
    let (r, m) = (table.r, table.m);
    let lhs = num_traits::pow(c(l, m) * c(l + m, m), r as usize);
    IdentityVerdict::integers(
        "amkr",
        params([("r", r as u64), ("m", m), ("l", l)]),
        lhs,
        table.expand_at(l),
    )
}

/// `sum_{k=0}^m C(m,k) C(m+k,k) (-1)^(m-k) / (x+k) = (1/x) prod_{k=1}^m (x-k)/(x+k)`.
pub fn check_lagrange(m: u64, x: &Rational) -> Result<IdentityVerdict, IdentityError> {
    let pole = x.is_integer() && !x.is_positive() && x.to_integer() >= -Integer::from(m);
    if pole {
        return Err(IdentityError::PoleInput { m, x: x.clone() });
    }
    let lhs: Rational = (0..=m)
        .map(|k| {
            let num = sign(m - k) * c(m, k) * c(m + k, k);
            rat(num) / (x + rat(Integer::from(k)))
        })
        .sum();
    let mut rhs = x.recip();
    for k in 1..=m {
        let k = rat(Integer::from(k));
        rhs *= (x - &k) / (x + &k);
    }
    Ok(IdentityVerdict::new(
        "lagrange",
        vec![("m", m.to_string()), ("x", x.to_string())],
        Value::Rational(lhs),
        Value::Rational(rhs),
    ))
}

/// `sum_{k=0}^m C(m,k) C(m+k,k) (-1)^(m-k) / (2m+2k+1) = (2m)!^3 / ((4m+1)! m!^2)`.
pub fn check_half_integer(m: u64) -> IdentityVerdict {
    let lhs: Rational = (0..=m)
        .map(|k| Rational::new(sign(m - k) * c(m, k) * c(m + k, k), Integer::from(2 * m + 2 * k + 1)))
        .sum();
    let f2m = factorial(2 * m);
    let fm = factorial(m);
    let rhs = Rational::new(&f2m * &f2m * &f2m, factorial(4 * m + 1) * &fm * &fm);
    IdentityVerdict::new(
        "half_integer",
        params([("m", m)]),
        Value::Rational(lhs),
        Value::Rational(rhs),
    )
}

/// `sum_{l=m}^{n-1} C(l,m+k) C(l+m+k,m+k) = C(2m+2k,m+k) C(n+m+k,2m+2k+1)`.
pub fn check_column_sum(n: u64, m: u64, k: u64) -> IdentityVerdict {
    assert!(n >= 1, "n must be positive");
    let j = m + k;
    let lhs = (m..n).map(|l| c(l, j) * c(l + j, j)).sum();
    let rhs = c(2 * j, j) * c(n + j, 2 * j + 1);
    IdentityVerdict::integers("column_sum", params([("n", n), ("m", m), ("k", k)]), lhs, rhs)
}

/// `sum_{k<n} eps^k (2k+1) S_k^(r)(x)` as a polynomial.
fn weighted_poly_sum(r: u32, n: u64, alternating: bool) -> IntPolynomial {
    let mut acc = IntPolynomial::zero();
    for k in 0..n {
        let mut w = Integer::from(2 * k + 1);
        if alternating && k % 2 == 1 {
            w = -w;
        }
        acc = &acc + &schmidt_poly(r, k).scale(&w);
    }
    acc
}

/// The double sum `(-1)^(n-1) sum_m C(2m,m) x^m sum_k C(m,k) C(m+k,k) C(n-1,m+k) C(n+m+k,m+k)`.
fn thm1_rhs(n: u64) -> IntPolynomial {
    let s = sign(n - 1);
    IntPolynomial::new(
        (0..n)
            .map(|m| {
                let inner: Integer = (0..=m)
                    .map(|k| c(m, k) * c(m + k, k) * c(n - 1, m + k) * c(n + m + k, m + k))
                    .sum();
                &s * c(2 * m, m) * inner
            })
            .collect(),
    )
}

/// `sum_{k<n} (-1)^k (2k+1) A_k(x) = n * RHS(n)` over `Z[x]`, where `RHS` is
/// the double sum above. Also requires the left side to be divisible by
/// `n` coefficient-wise with quotient `RHS`.
pub fn check_thm1(n: u64) -> IdentityVerdict {
    assert!(n >= 1, "n must be positive");
    let lhs = weighted_poly_sum(2, n, true);
    let rhs_inner = thm1_rhs(n);
    let nn = Integer::from(n);
    let divides = lhs.exact_div(&nn).as_ref() == Some(&rhs_inner);
    let mut v = IdentityVerdict::new(
        "thm1",
        params([("n", n)]),
        Value::Polynomial(lhs),
        Value::Polynomial(rhs_inner.scale(&nn)),
    );
    v.pass &= divides;
    v
}

/// `(1/n) sum_{k<n} (2k+1) D_k(x) = sum_{k<n} C(n,k+1) C(n+k,k) x^k` over
/// `Z[x]`. When the division by `n` is not exact the undivided sum is
/// reported as the left side and the check fails.
pub fn check_delannoy_integrality(n: u64) -> IdentityVerdict {
    assert!(n >= 1, "n must be positive");
    let total = weighted_poly_sum(1, n, false);
    let rhs = IntPolynomial::new((0..n).map(|k| c(n, k + 1) * c(n + k, k)).collect());
    match total.exact_div(&Integer::from(n)) {
        Some(q) => IdentityVerdict::new(
            "delannoy_integrality",
            params([("n", n)]),
            Value::Polynomial(q),
            Value::Polynomial(rhs),
        ),
        None => {
            let mut v = IdentityVerdict::new(
                "delannoy_integrality",
                params([("n", n)]),
                Value::Polynomial(total),
                Value::Polynomial(rhs),
            );
            v.pass = false;
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(int(n), int(d))
    }

    #[test]
    fn pfaff_examples() {
        assert!(check_pfaff_special(0, 0).pass);
        let v = check_pfaff_special(2, 1);
        assert_eq!(v.lhs, Value::Integer(int(6)));
        assert!(v.pass);
        let v = check_pfaff_special(1, 2);
        assert_eq!(v.lhs, Value::Integer(int(0)));
        assert!(v.pass);
    }

    #[test]
    fn pfaff_grid() {
        for l in 0..=40 {
            for m in 0..=40 {
                assert!(check_pfaff_special(l, m).pass, "l = {l}, m = {m}");
            }
        }
    }

    #[test]
    fn square_expansion_examples() {
        assert_eq!(check_square_expansion(1).rhs, Value::Polynomial(IntPolynomial::from(vec![1, 4])));
        for l in 0..=40 {
            assert!(check_square_expansion(l).pass, "l = {l}");
        }
    }

    #[test]
    fn alt_and_plus_sums() {
        assert_eq!(check_alt_sum(2, 1).lhs, Value::Integer(int(-6)));
        assert_eq!(check_alt_sum(3, 0).rhs, Value::Integer(int(3)));
        assert_eq!(check_plus_sum(3, 1).lhs, Value::Integer(int(36)));
        assert_eq!(check_plus_sum(2, 0).rhs, Value::Integer(int(4)));
        for n in 1..=60 {
            for k in 0..=n {
                assert!(check_alt_sum(n, k).pass, "n = {n}, k = {k}");
                assert!(check_plus_sum(n, k).pass, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn lem03_examples() {
        assert!(check_lem03(0, 0, 0).pass);
        let v = check_lem03(3, 1, 1);
        assert_eq!(v.lhs, Value::Rational(q(12, 1)));
        assert!(v.pass);
        assert!(check_lem03(2, 2, 1).pass);
    }

    #[test]
    fn lem03_grid() {
        for l in 0..=20 {
            for m in 0..=20 {
                for n in 0..=20 {
                    assert!(check_lem03(l, m, n).pass, "l = {l}, m = {m}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn lem03_needs_polynomial_binomial_below_m() {
        // with C(l-m, k) = 0 for l < m the right side would be 0 here
        let l = 1u64;
        let (m, n) = (3u64, 1u64);
        assert_eq!(check_lem03(l, m, n).lhs, Value::Rational(q(2, 1)));
        assert!(check_lem03(l, m, n).pass);
    }

    #[test]
    fn schmidt_coeff_examples() {
        assert_eq!(schmidt_coeffs(2, 0).coeffs(), &[int(1)]);
        assert_eq!(schmidt_coeffs(2, 1).coeffs(), &[int(2), int(4)]);
        let v = check_amkr(2, 1, 2);
        assert_eq!(v.lhs, Value::Integer(int(36)));
        assert!(v.pass);
        assert!(check_amkr(2, 0, 5).pass);
        let v = check_amkr(3, 1, 3);
        assert_eq!(v.lhs, Value::Integer(int(1728)));
        assert!(v.pass);
    }

    #[test]
    fn recursion_matches_interpolation() {
        for r in 2..=5 {
            for m in 0..=12 {
                let rec = schmidt_coeffs(r, m);
                let solved = SchmidtCoeffTable::by_interpolation(r, m).unwrap();
                assert_eq!(rec, solved, "r = {r}, m = {m}");
                for l in 0..=(3 * r as u64 * m + 2) {
                    assert!(check_amkr_with(&rec, l).pass, "r = {r}, m = {m}, l = {l}");
                }
            }
        }
    }

    #[test]
    fn lagrange_examples() {
        let v = check_lagrange(0, &q(7, 1)).unwrap();
        assert_eq!(v.lhs, Value::Rational(q(1, 7)));
        let v = check_lagrange(1, &q(2, 1)).unwrap();
        assert_eq!(v.lhs, Value::Rational(q(1, 6)));
        assert!(v.pass);
        let v = check_lagrange(1, &q(3, 2)).unwrap();
        assert_eq!(v.rhs, Value::Rational(q(2, 15)));
        assert!(v.pass);
        assert!(matches!(check_lagrange(3, &q(-2, 1)), Err(IdentityError::PoleInput { .. })));
        assert!(matches!(check_lagrange(3, &q(0, 1)), Err(IdentityError::PoleInput { .. })));
        assert!(check_lagrange(3, &q(-4, 1)).unwrap().pass);
    }

    proptest::proptest! {
        #[test]
        fn lagrange_random_points(m in 0u64..=15, num in -200i64..=200, den in 1i64..=37) {
            let x = q(num, den);
            match check_lagrange(m, &x) {
                Ok(v) => proptest::prop_assert!(v.pass, "m = {}, x = {}", m, x),
                Err(IdentityError::PoleInput { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn half_integer() {
        assert_eq!(check_half_integer(1).lhs, Value::Rational(q(1, 15)));
        for m in 0..=30 {
            assert!(check_half_integer(m).pass, "m = {m}");
        }
    }

    #[test]
    fn column_sums() {
        assert_eq!(check_column_sum(5, 0, 0).lhs, Value::Integer(int(5)));
        assert_eq!(check_column_sum(4, 1, 0).rhs, Value::Integer(int(20)));
        let v = check_column_sum(3, 1, 1);
        assert_eq!(v.lhs, Value::Integer(int(6)));
        assert!(v.pass);
        for n in 1..=40 {
            for m in 0..=20 {
                for k in 0..=20 - m {
                    assert!(check_column_sum(n, m, k).pass, "n = {n}, m = {m}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn thm1_and_delannoy() {
        assert!(check_thm1(1).pass);
        let v = check_thm1(2);
        if let Value::Polynomial(p) = &v.lhs {
            assert_eq!(p.eval(&int(1)), int(-14));
        } else {
            panic!("expected a polynomial");
        }
        let d = check_delannoy_integrality(2);
        if let Value::Polynomial(p) = &d.lhs {
            assert_eq!(p.eval(&int(1)), int(5));
        }
        for n in 1..=60 {
            assert!(check_thm1(n).pass, "n = {n}");
            assert!(check_delannoy_integrality(n).pass, "n = {n}");
        }
    }
}
