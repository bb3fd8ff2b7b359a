use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use super::word::{mul_mod, pow_mod};
use super::{ArithError, Integer, Residue};
use crate::primes::is_prime;

/// `base^exp mod m` by left-to-right square-and-multiply.
///
/// Panics if `m < 2`.
pub fn mod_pow(base: &Integer, exp: u64, m: &Integer) -> Residue {
    assert!(*m >= Integer::from(2), "modulus must be at least 2");
    let b = base.mod_floor(m);
    let mut acc = Integer::one();
    for bit in (0..64 - exp.leading_zeros()).rev() {
        acc = (&acc * &acc) % m;
        if (exp >> bit) & 1 == 1 {
            acc = (&acc * &b) % m;
        }
    }
    Residue::reduce(acc, m)
}

/// The inverse of `a` modulo `m`, via the extended Euclidean algorithm.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Result<Residue, ArithError> {
    if *m < Integer::from(2) {
        return Err(ArithError::BadModulus(m.clone()));
    }
    let a_red = a.mod_floor(m);
    let egcd = a_red.extended_gcd(m);
    if !egcd.gcd.is_one() {
        return Err(ArithError::NotInvertible {
            value: a.clone(),
            modulus: m.clone(),
        });
    }
    Ok(Residue::reduce(egcd.x, m))
}

fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(ArithError::InvalidPrime(p));
    }
    Ok(())
}

fn reduce_u64(a: &Integer, p: u64) -> u64 {
    a.mod_floor(&Integer::from(p))
        .to_u64()
        .expect("residue below a u64 modulus fits in u64")
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: &Integer, p: u64) -> Result<i8, ArithError> {
    check_odd_prime(p)?;
    Ok(legendre_u64(reduce_u64(a, p), p))
}

/// Euler's criterion for `a` already reduced mod the odd prime `p`.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i8 {
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks).
///
/// Of the two roots `t` and `p - t` the one in `[0, p/2]` is returned.
pub fn sqrt_mod(a: &Integer, p: u64) -> Result<Residue, ArithError> {
    check_odd_prime(p)?;
    let a_red = reduce_u64(a, p);
    if legendre_u64(a_red, p) != 1 {
        return Err(ArithError::NonResidue {
            value: a.clone(),
            prime: p,
        });
    }
    let t = tonelli_shanks(a_red, p);
    let t = t.min(p - t);
    Ok(Residue::reduce(Integer::from(t), &Integer::from(p)))
}

/// Requires `a` to be a nonzero quadratic residue mod the odd prime `p`.
pub(crate) fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| legendre_u64(z, p) == -1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..m - i - 1 {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn pow_examples() {
        assert_eq!(mod_pow(&int(2), 4, &int(5)).value(), &int(1));
        assert_eq!(mod_pow(&int(7), 0, &int(13)).value(), &int(1));
        // 2^6 = 64 = 49 + 15
        let mut direct = 1i64;
        for _ in 0..6 {
            direct = direct * 2 % 49;
        }
        assert_eq!(direct, 15);
        assert_eq!(mod_pow(&int(2), 6, &int(49)).value(), &int(15));
        assert_eq!(mod_pow(&int(-3), 3, &int(7)).value(), &int(1));
    }

    #[test]
    fn inverse_examples() {
        let exhaustive = (0..25).find(|r| 3 * r % 25 == 1).unwrap();
        assert_eq!(exhaustive, 17);
        assert_eq!(mod_inverse(&int(3), &int(25)).unwrap().value(), &int(17));
        assert_eq!(mod_inverse(&int(1), &int(7)).unwrap().value(), &int(1));
        assert!(matches!(
            mod_inverse(&int(5), &int(25)),
            Err(ArithError::NotInvertible { .. })
        ));
        assert_eq!(mod_inverse(&int(-2), &int(25)).unwrap().value(), &int(12));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&int(0), 5).unwrap(), 0);
        assert_eq!(legendre(&int(2), 7).unwrap(), 1);
        assert_eq!(legendre(&int(-3), 5).unwrap(), -1);
        assert_eq!(legendre(&int(1), 4), Err(ArithError::InvalidPrime(4)));
        assert_eq!(legendre(&int(1), 2), Err(ArithError::InvalidPrime(2)));
        assert_eq!(legendre(&int(1), 9), Err(ArithError::InvalidPrime(9)));
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in crate::primes::sieve_primes(3, 1000) {
            let mut squares = vec![false; p as usize];
            for x in 1..p {
                squares[(x * x % p) as usize] = true;
            }
            for a in 0..p {
                let expect = if a == 0 {
                    0
                } else if squares[a as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(&int(a as i64), p).unwrap(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(&int(9), 11).unwrap().value(), &int(3));
        assert_eq!(sqrt_mod(&int(-2), 11).unwrap().value(), &int(3));
        assert_eq!(sqrt_mod(&int(-2), 17).unwrap().value(), &int(7));
        assert!(matches!(sqrt_mod(&int(-2), 5), Err(ArithError::NonResidue { .. })));
        assert!(matches!(sqrt_mod(&int(0), 7), Err(ArithError::NonResidue { .. })));
    }

    #[test]
    fn sqrt_is_smaller_root_exhaustive() {
        for p in crate::primes::sieve_primes(3, 2000) {
            for a in 1..p.min(60) {
                let brute = (1..=p / 2).find(|x| x * x % p == a);
                match sqrt_mod(&int(a as i64), p) {
                    Ok(r) => assert_eq!(Some(r.value().to_u64().unwrap()), brute, "sqrt({a}) mod {p}"),
                    Err(_) => assert_eq!(brute, None),
                }
            }
        }
    }
}
