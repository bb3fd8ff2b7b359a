//! Apery, Schmidt and Delannoy polynomials, central binomial sums, and the
//! weighted partial sums built from them.
//!
//! Everything here is exact big-integer arithmetic; it is the reference
//! path that the modular evaluators are checked against.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact_arith::{
    binomial, valuated_from_rational, Integer, Rational, Residue, ValuatedResidue, Window,
};
use crate::polynomial::IntPolynomial;
use crate::primes::is_prime;

/// The sequence family summed over `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A_k(x)`, the Schmidt polynomial with `r = 2`.
    Apery,
    /// `S_k^(r)(x) = sum_j C(k,j)^r C(k+j,j)^r x^j`.
    Schmidt(u32),
    /// `D_k(x)`, the Schmidt polynomial with `r = 1`.
    Delannoy,
    /// `C(2k,k) x^k`.
    CentralBinomial,
}

impl Family {
    /// The Schmidt exponent `r`, or `None` for the central binomial family.
    pub fn exponent(self) -> Option<u32> {
        match self {
            Family::Apery => Some(2),
            Family::Schmidt(r) => Some(r),
            Family::Delannoy => Some(1),
            Family::CentralBinomial => None,
        }
    }
}

/// Per-term weight `w(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    One,
    /// `2k + 1`
    Linear,
    /// `(2k + 1)^(2a + 1)`
    OddPower(u32),
    /// `(2k + 1) k^a (k + 1)^a`
    Rising(u32),
}

impl Weight {
    pub fn value(self, k: u64) -> Integer {
        let odd = Integer::from(2 * k + 1);
        match self {
            Weight::One => Integer::one(),
            Weight::Linear => odd,
            Weight::OddPower(a) => num_traits::pow(odd, 2 * a as usize + 1),
            Weight::Rising(a) => {
                let kk1 = Integer::from(k) * Integer::from(k + 1);
                odd * num_traits::pow(kk1, a as usize)
            }
        }
    }
}

/// The sign `eps` in `eps^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i64(eps: i64) -> Option<Self> {
        match eps {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// True when `eps^k = -1`.
    pub fn flips(self, k: u64) -> bool {
        self == Sign::Minus && k % 2 == 1
    }
}

/// Weight, sign and power applied to the family term `F_k(x)`:
/// the summand is `eps^k w(k) F_k(x)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TermShape {
    pub weight: Weight,
    pub sign: Sign,
    pub power: u32,
}

impl TermShape {
    pub fn new(weight: Weight, sign: Sign, power: u32) -> Self {
        assert!(power >= 1, "power must be at least 1");
        Self {
            weight,
            sign,
            power,
        }
    }
}

/// `sum_{k=0}^{n-1} eps^k w(k) F_k(x)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    pub family: Family,
    pub weight: Weight,
    pub sign: Sign,
    pub power: u32,
    pub n: u64,
    pub x: Integer,
}

impl SumSpec {
    pub fn shape(&self) -> TermShape {
        TermShape::new(self.weight, self.sign, self.power)
    }
}

/// `[C(k,j) C(k+j,j)]^r` for `j = 0..=k`.
fn schmidt_coefficients(r: u32, k: u64) -> Vec<BigUint> {
    let mut base = BigUint::one();
    let mut out = Vec::with_capacity(k as usize + 1);
    for j in 0..=k {
        out.push(num_traits::pow(base.clone(), r as usize));
        if j < k {
            // C(k,j+1)C(k+j+1,j+1) = C(k,j)C(k+j,j) (k-j)(k+j+1)/(j+1)^2
            base *= (k - j) * (k + j + 1);
            base /= (j + 1) * (j + 1);
        }
    }
    out
}

fn horner(coeffs: &[BigUint], x: &Integer) -> Integer {
    if x.is_zero() {
        return Integer::from(coeffs[0].clone());
    }
    coeffs
        .iter()
        .rev()
        .fold(Integer::zero(), |acc, c| acc * x + Integer::from(c.clone()))
}

pub fn schmidt_poly(r: u32, n: u64) -> IntPolynomial {
    IntPolynomial::new(
        schmidt_coefficients(r, n)
            .into_iter()
            .map(Integer::from)
            .collect(),
    )
}

/// `A_n(x)` as a polynomial: the coefficient of `x^k` is `C(n,k)^2 C(n+k,k)^2`.
pub fn apery_poly(n: u64) -> IntPolynomial {
    schmidt_poly(2, n)
}

pub fn apery_eval(n: u64, x: &Integer) -> Integer {
    schmidt_eval(2, n, x)
}

pub fn schmidt_eval(r: u32, n: u64, x: &Integer) -> Integer {
    assert!(r >= 1, "Schmidt exponent must be at least 1");
    horner(&schmidt_coefficients(r, n), x)
}

/// `D_n(x) = S_n^(1)(x)`.
pub fn delannoy_eval(n: u64, x: &Integer) -> Integer {
    schmidt_eval(1, n, x)
}

/// Streaming prefix sums of several term shapes over one family, evaluated
/// at several points at once.
///
/// Family values are produced one `k` at a time and discarded after use;
/// only the running sums (one per shape and point) are kept. Advancing is
/// monotone, so a caller can read off the sums at each cutoff of an
/// ascending list without restarting.
#[derive(Debug, Clone)]
pub struct SumStream {
    family: Family,
    xs: Vec<Integer>,
    shapes: Vec<TermShape>,
    next_k: u64,
    central: Vec<Integer>,
    sums: Vec<Vec<Integer>>,
}

impl SumStream {
    pub fn new(family: Family, xs: Vec<Integer>, shapes: Vec<TermShape>) -> Self {
        if let Some(r) = family.exponent() {
            assert!(r >= 1, "Schmidt exponent must be at least 1");
        }
        let central = vec![Integer::one(); xs.len()];
        let sums = vec![vec![Integer::zero(); xs.len()]; shapes.len()];
        Self {
            family,
            xs,
            shapes,
            next_k: 0,
            central,
            sums,
        }
    }

    /// Number of terms summed so far.
    pub fn position(&self) -> u64 {
        self.next_k
    }

    pub fn xs(&self) -> &[Integer] {
        &self.xs
    }

    pub fn shapes(&self) -> &[TermShape] {
        &self.shapes
    }

    /// Running sums, indexed `[shape][x]`.
    pub fn sums(&self) -> &[Vec<Integer>] {
        &self.sums
    }

    pub fn sum(&self, shape: usize, x: usize) -> &Integer {
        &self.sums[shape][x]
    }

    fn family_values(&mut self, k: u64) -> Vec<Integer> {
        match self.family.exponent() {
            Some(r) => {
                let coeffs = schmidt_coefficients(r, k);
                if self.xs.len() > 1 && k >= 32 {
                    self.xs.par_iter().map(|x| horner(&coeffs, x)).collect()
                } else {
                    self.xs.iter().map(|x| horner(&coeffs, x)).collect()
                }
            }
            None => {
                let current = self.central.clone();
                // C(2k+2,k+1) x^(k+1) = C(2k,k) x^k (4k+2) x / (k+1)
                for (t, x) in self.central.iter_mut().zip(&self.xs) {
                    *t *= Integer::from(4 * k + 2) * x;
                    *t /= Integer::from(k + 1);
                }
                current
            }
        }
    }

    /// Sum all terms with index `< n`.
    pub fn advance_to(&mut self, n: u64) {
        assert!(n >= self.next_k, "sum stream cannot move backwards");
        while self.next_k < n {
            let k = self.next_k;
            let values = self.family_values(k);
            for (shape, sums) in self.shapes.iter().zip(self.sums.iter_mut()) {
                let w = shape.weight.value(k);
                let flip = shape.sign.flips(k);
                for (s, v) in sums.iter_mut().zip(&values) {
                    let mut term = if shape.power == 1 {
                        v * &w
                    } else {
                        num_traits::pow(v.clone(), shape.power as usize) * &w
                    };
                    if flip {
                        term = -term;
                    }
                    *s += term;
                }
            }
            self.next_k += 1;
        }
    }
}

/// `sum_{k=0}^{n-1} eps^k w(k) F_k(x)^m`, exactly.
pub fn weighted_sum_exact(spec: &SumSpec) -> Integer {
    let mut stream = SumStream::new(spec.family, vec![spec.x.clone()], vec![spec.shape()]);
    stream.advance_to(spec.n);
    stream.sums[0][0].clone()
}

/// `sum_{k=0}^{n-1} C(2k,k) x^k mod modulus`, with the term updated
/// incrementally.
pub fn central_binomial_sum(n: u64, x: &Integer, modulus: &Integer) -> Residue {
    assert!(n >= 1, "at least one term required");
    let mut stream = SumStream::new(
        Family::CentralBinomial,
        vec![x.clone()],
        vec![TermShape::new(Weight::One, Sign::Plus, 1)],
    );
    stream.advance_to(n);
    Residue::new(stream.sums[0][0].clone(), modulus.clone()).expect("modulus at least 2")
}

fn assert_prime_above_3(p: u64) {
    assert!(p > 3 && is_prime(p), "{p} is not a prime above 3");
}

/// The terms `(2k)!^4 p / ((4k+1)! k!^4)` for `k = 0..p`, as valuated
/// residues modulo `p^2`. They do not depend on `x`.
pub fn thm3_rational_terms(p: u64) -> Vec<ValuatedResidue> {
    assert_prime_above_3(p);
    let mut out = Vec::with_capacity(p as usize);
    // (2k)!^4 / ((4k+1)! k!^4) = C(2k,k)^2 / ((4k+1) C(4k,2k))
    let mut central = BigUint::one();
    let mut quarter = BigUint::one();
    for k in 0..p {
        let num = Integer::from(&central * &central) * Integer::from(p);
        let den = Integer::from(&quarter * (4 * k + 1));
        let q = Rational::new(num, den);
        out.push(
            valuated_from_rational(&q, p, Window::Square)
                .expect("single-sum terms are p-integral for p > 3"),
        );
        central *= (2 * k + 1) * (2 * k + 2);
        central /= (k + 1) * (k + 1);
        quarter *= (4 * k + 1) * (4 * k + 2);
        quarter *= (4 * k + 3) * (4 * k + 4);
        quarter /= (2 * k + 1) * (2 * k + 2);
        quarter /= (2 * k + 1) * (2 * k + 2);
    }
    out
}

/// Combine precomputed single-sum terms with powers of `x` modulo `p^2`.
pub fn thm3_rational_sum_from_terms(terms: &[ValuatedResidue], p: u64, x: &Integer) -> Residue {
    let m = Integer::from(p * p);
    let mut acc = Integer::zero();
    let mut xk = Integer::one();
    let x_red = x.mod_floor(&m);
    for t in terms {
        acc += t.to_residue().into_value() * &xk;
        xk = (xk * &x_red) % &m;
    }
    Residue::new(acc, m).expect("p^2 >= 25")
}

/// `sum_{k=0}^{p-1} (2k)!^4 p / ((4k+1)! k!^4) x^k mod p^2`, each term
/// reduced through its p-adic valuation.
pub fn thm3_rational_sum(p: u64, x: &Integer) -> Residue {
    thm3_rational_sum_from_terms(&thm3_rational_terms(p), p, x)
}

/// `sum_{k=0}^{(p-1)/2} C(p+2k, 4k+1) C(2k,k)^2 x^k` computed exactly.
pub fn thm3_binomial_sum_exact(p: u64, x: &Integer) -> Integer {
    assert_prime_above_3(p);
    let mut acc = Integer::zero();
    let mut xk = Integer::one();
    for k in 0..=(p - 1) / 2 {
        let c = binomial(2 * k, k as i64);
        acc += binomial(p + 2 * k, 4 * k as i64 + 1) * &c * &c * &xk;
        xk *= x;
    }
    acc
}

pub fn thm3_binomial_sum(p: u64, x: &Integer) -> Residue {
    Residue::new(thm3_binomial_sum_exact(p, x), Integer::from(p * p)).expect("p^2 >= 25")
}
