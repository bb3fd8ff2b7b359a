use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{ArithError, Integer};

/// An integer class modulo `m >= 2`, stored canonically in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Integer,
    modulus: Integer,
}

impl Residue {
    pub fn new(value: impl Into<Integer>, modulus: impl Into<Integer>) -> Result<Self, ArithError> {
        let modulus = modulus.into();
        if modulus < Integer::from(2) {
            return Err(ArithError::BadModulus(modulus));
        }
        let value = value.into().mod_floor(&modulus);
        Ok(Self { value, modulus })
    }

    /// Like [`Residue::new`] for moduli already known to be valid.
    pub(crate) fn reduce(value: Integer, modulus: &Integer) -> Self {
        debug_assert!(*modulus >= Integer::from(2));
        Self {
            value: value.mod_floor(modulus),
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: impl Into<Integer>) -> Result<Self, ArithError> {
        Self::new(Integer::zero(), modulus)
    }

    pub fn one(modulus: impl Into<Integer>) -> Result<Self, ArithError> {
        Self::new(Integer::one(), modulus)
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn into_value(self) -> Integer {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// True when `other` denotes the same class, after reducing it.
    pub fn is_congruent_to(&self, other: &Integer) -> bool {
        other.mod_floor(&self.modulus) == self.value
    }

    /// Representative in `(-m/2, m/2]`, handy for printing signed residues.
    pub fn symmetric(&self) -> Integer {
        let half = &self.modulus >> 1u32;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        super::mod_pow(&self.value, exp, &self.modulus)
    }

    fn assert_same_modulus(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residues with different moduli cannot be combined"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.assert_same_modulus(rhs);
        let mut v = &self.value + &rhs.value;
        if v >= self.modulus {
            v -= &self.modulus;
        }
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.assert_same_modulus(rhs);
        let mut v = &self.value - &rhs.value;
        if v < Integer::zero() {
            v += &self.modulus;
        }
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.assert_same_modulus(rhs);
        Residue::reduce(&self.value * &rhs.value, &self.modulus)
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::reduce(-&self.value, &self.modulus)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Residue {
            type Output = Residue;
            fn $m(self, rhs: Residue) -> Residue {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Residue::new(-2, 25).unwrap();
        assert_eq!(r.value(), &Integer::from(23));
        assert_eq!(r.symmetric(), Integer::from(-2));
        assert!(r.is_congruent_to(&Integer::from(48)));
        assert!(Residue::new(3, 1).is_err());
    }

    #[test]
    fn ring_ops() {
        let a = Residue::new(7, 10).unwrap();
        let b = Residue::new(5, 10).unwrap();
        assert_eq!((&a + &b).value(), &Integer::from(2));
        assert_eq!((&b - &a).value(), &Integer::from(8));
        assert_eq!((&a * &b).value(), &Integer::from(5));
        assert_eq!((-&a).value(), &Integer::from(3));
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn mixed_moduli_panic() {
        let _ = &Residue::new(1, 5).unwrap() + &Residue::new(1, 7).unwrap();
    }
}
