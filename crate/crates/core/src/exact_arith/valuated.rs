use std::fmt;
use std::ops::{Add, Mul};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{mod_inverse, ArithError, Integer, Rational, Residue};

/// Precision of a valuated residue: values are known modulo `p^2` or `p^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Window {
    Square,
    Cube,
}

impl Window {
    pub fn exponent(self) -> u32 {
        match self {
            Window::Square => 2,
            Window::Cube => 3,
        }
    }
}

/// A value modulo `p^w` kept as `unit * p^e`.
///
/// The unit is reduced modulo `p^(w - e)` and is prime to `p` while `e < w`.
/// Once the valuation reaches the window the value is zero and the unit is
/// stored as 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuatedResidue {
    prime: u64,
    window: Window,
    valuation: u32,
    unit: Integer,
}

/// `v_p(n)`, or `None` for `n = 0`.
pub fn p_adic_valuation(n: &Integer, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p_big = Integer::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p_big);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

fn pow_p(p: u64, e: u32) -> Integer {
    num_traits::pow(Integer::from(p), e as usize)
}

impl ValuatedResidue {
    pub fn zero(prime: u64, window: Window) -> Self {
        Self {
            prime,
            window,
            valuation: window.exponent(),
            unit: Integer::zero(),
        }
    }

    pub fn from_integer(n: &Integer, prime: u64, window: Window) -> Self {
        let w = window.exponent();
        let r = n.mod_floor(&pow_p(prime, w));
        match p_adic_valuation(&r, prime) {
            None => Self::zero(prime, window),
            Some(e) => {
                let e = e as u32;
                let unit = (r / pow_p(prime, e)).mod_floor(&pow_p(prime, w - e));
                Self {
                    prime,
                    window,
                    valuation: e,
                    unit,
                }
            }
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    pub fn unit(&self) -> &Integer {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation >= self.window.exponent()
    }

    pub fn modulus(&self) -> Integer {
        pow_p(self.prime, self.window.exponent())
    }

    /// The represented class `unit * p^e` modulo `p^w`.
    pub fn to_residue(&self) -> Residue {
        let m = self.modulus();
        if self.is_zero() {
            return Residue::reduce(Integer::zero(), &m);
        }
        Residue::reduce(&self.unit * pow_p(self.prime, self.valuation), &m)
    }

    pub fn mul_integer(&self, n: &Integer) -> Self {
        self * &Self::from_integer(n, self.prime, self.window)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.window == other.window,
            "valuated residues over different prime powers cannot be combined"
        );
    }
}

impl fmt::Display for ValuatedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0 (mod {}^{})", self.prime, self.window.exponent())
        } else {
            write!(
                f,
                "{} * {}^{} (mod {}^{})",
                self.unit,
                self.prime,
                self.valuation,
                self.prime,
                self.window.exponent()
            )
        }
    }
}

impl Mul for &ValuatedResidue {
    type Output = ValuatedResidue;
    fn mul(self, rhs: &ValuatedResidue) -> ValuatedResidue {
        self.assert_compatible(rhs);
        let w = self.window.exponent();
        let e = self.valuation + rhs.valuation;
        if e >= w {
            return ValuatedResidue::zero(self.prime, self.window);
        }
        ValuatedResidue {
            prime: self.prime,
            window: self.window,
            valuation: e,
            unit: (&self.unit * &rhs.unit).mod_floor(&pow_p(self.prime, w - e)),
        }
    }
}

impl Add for &ValuatedResidue {
    type Output = ValuatedResidue;
    fn add(self, rhs: &ValuatedResidue) -> ValuatedResidue {
        self.assert_compatible(rhs);
        // Aligning to the smaller valuation is the same as adding the
        // expanded classes mod p^w and factoring p back out.
        let sum = self.to_residue().into_value() + rhs.to_residue().into_value();
        ValuatedResidue::from_integer(&sum, self.prime, self.window)
    }
}

/// Reduce a p-integral rational into a valuated residue modulo `p^w`.
pub fn valuated_from_rational(
    q: &Rational,
    prime: u64,
    window: Window,
) -> Result<ValuatedResidue, ArithError> {
    let num = q.numer();
    let den = q.denom();
    let Some(vn) = p_adic_valuation(num, prime) else {
        return Ok(ValuatedResidue::zero(prime, window));
    };
    let vd = p_adic_valuation(den, prime).expect("denominator is nonzero");
    if vn < vd {
        return Err(ArithError::NegativeValuation {
            value: q.clone(),
            prime,
        });
    }
    let w = window.exponent() as u64;
    let e = vn - vd;
    if e >= w {
        return Ok(ValuatedResidue::zero(prime, window));
    }
    let e = e as u32;
    let m = pow_p(prime, window.exponent() - e);
    let num_unit = num / pow_p(prime, vn as u32);
    let den_unit = den / pow_p(prime, vd as u32);
    let den_inv = if m.is_one() {
        Integer::zero()
    } else {
        mod_inverse(&den_unit, &m)?.into_value()
    };
    Ok(ValuatedResidue {
        prime,
        window,
        valuation: e,
        unit: (num_unit * den_inv).mod_floor(&m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::factorial;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(Integer::from(n), Integer::from(d))
    }

    #[test]
    fn examples() {
        let v = valuated_from_rational(&rat(2, 3), 5, Window::Square).unwrap();
        assert_eq!((v.valuation(), v.unit().clone()), (0, Integer::from(9)));

        let v = valuated_from_rational(&rat(5, 1), 5, Window::Square).unwrap();
        assert_eq!((v.valuation(), v.unit().clone()), (1, Integer::from(1)));

        let f6 = factorial(6);
        let f3 = factorial(3);
        let num = &f6 * &f6 * &f6 * &f6 * Integer::from(5);
        let den = factorial(13) * &f3 * &f3 * &f3 * &f3;
        let v = valuated_from_rational(&Rational::new(num, den), 5, Window::Square).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.unit(), &Integer::zero());
    }

    #[test]
    fn negative_valuation() {
        assert!(matches!(
            valuated_from_rational(&rat(1, 5), 5, Window::Square),
            Err(ArithError::NegativeValuation { .. })
        ));
        assert!(valuated_from_rational(&rat(0, 5), 5, Window::Cube).unwrap().is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = ValuatedResidue::from_integer(&Integer::from(5), 5, Window::Square);
        let b = ValuatedResidue::from_integer(&Integer::from(10), 5, Window::Square);
        assert!((&a * &b).is_zero());
        // 5 + 20 = 25 = 0
        let c = ValuatedResidue::from_integer(&Integer::from(20), 5, Window::Square);
        assert!((&a + &c).is_zero());
        // 5 + 10 = 15 = 3 * 5
        let s = &a + &b;
        assert_eq!((s.valuation(), s.unit().clone()), (1, Integer::from(3)));
        let t = ValuatedResidue::from_integer(&Integer::from(-2), 7, Window::Cube);
        assert_eq!(t.to_residue().value(), &Integer::from(341));
    }

    proptest! {
        #[test]
        fn re_expansion_matches_cleared_denominator(
            num in -100_000i64..100_000,
            den_unit in 1i64..5_000,
            p_idx in 0usize..5,
            cube in any::<bool>(),
        ) {
            let p = [3u64, 5, 7, 11, 13][p_idx];
            prop_assume!(den_unit % p as i64 != 0);
            let window = if cube { Window::Cube } else { Window::Square };
            let q = rat(num, den_unit);
            let v = valuated_from_rational(&q, p, window).unwrap();
            let m = v.modulus();
            // v * den == num (mod p^w)
            let lhs = (v.to_residue().into_value() * Integer::from(den_unit)).mod_floor(&m);
            prop_assert_eq!(lhs, Integer::from(num).mod_floor(&m));
            if !v.is_zero() {
                prop_assert!(!v.unit().is_multiple_of(&Integer::from(p)));
            }
        }

        #[test]
        fn multiplication_adds_valuations(a in 1i64..10_000, b in 1i64..10_000) {
            let va = ValuatedResidue::from_integer(&Integer::from(a), 3, Window::Cube);
            let vb = ValuatedResidue::from_integer(&Integer::from(b), 3, Window::Cube);
            let prod = &va * &vb;
            let direct = ValuatedResidue::from_integer(&Integer::from(a * b), 3, Window::Cube);
            prop_assert_eq!(prod, direct);
        }
    }
}
