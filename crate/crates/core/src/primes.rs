//! Prime generation, 64-bit primality, and the representation
//! `p = x^2 + 2y^2` via Cornacchia's descent.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_arith::word::{mul_mod, pow_mod};
use crate::exact_arith::{sqrt_mod, Integer};

const SEGMENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimesError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Cornacchia descent for {p} produced r = {r} with non-square remainder")]
    InternalInconsistency { p: u64, r: u64 },
}

/// Simple sieve for `[0, limit]`.
fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &q in base {
        if q * q >= hi {
            break;
        }
        let start = (q * q).max(lo.div_ceil(q) * q);
        let mut j = start;
        while j < hi {
            composite[(j - lo) as usize] = true;
            j += q;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(i, &c)| !c && lo + i as u64 >= 2)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// All primes in `[lo, hi)`, ascending, by a segmented sieve.
///
/// Memory is `O(sqrt(hi) + segment)` per worker; segments may be sieved in
/// parallel but the result is always in order.
pub fn sieve_primes(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(2);
    if lo >= hi {
        return Vec::new();
    }
    let base = small_primes(hi.isqrt() + 1);
    let starts: Vec<u64> = (lo..hi).step_by(SEGMENT as usize).collect();
    starts
        .par_iter()
        .map(|&s| sieve_segment(s, (s + SEGMENT).min(hi), &base))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Deterministic Miller-Rabin; the first twelve prime bases are a proven
/// witness set for every `n < 3.3e24`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// How a prime `p` is written as `x^2 + 2y^2`, if at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeRep {
    /// `p = x^2 + 2y^2` with `x >= 0` (zero only for `p = 2`) and `y > 0`.
    Representable { p: u64, x: u64, y: u64 },
    NotRepresentable { p: u64 },
}

impl PrimeRep {
    pub fn prime(&self) -> u64 {
        match *self {
            PrimeRep::Representable { p, .. } | PrimeRep::NotRepresentable { p } => p,
        }
    }

    pub fn xy(&self) -> Option<(u64, u64)> {
        match *self {
            PrimeRep::Representable { x, y, .. } => Some((x, y)),
            PrimeRep::NotRepresentable { .. } => None,
        }
    }
}

/// Cornacchia's algorithm for `x^2 + 2y^2 = p`.
///
/// Starts from the smaller square root `t` of `-2` modulo `p` and runs the
/// Euclidean remainder sequence of `(p, t)` down to the first remainder
/// below `sqrt(p)`.
pub fn represent_x2_2y2(p: u64) -> Result<PrimeRep, PrimesError> {
    if !is_prime(p) {
        return Err(PrimesError::NotPrime(p));
    }
    if p == 2 {
        return Ok(PrimeRep::Representable { p, x: 0, y: 1 });
    }
    if !matches!(p % 8, 1 | 3) {
        return Ok(PrimeRep::NotRepresentable { p });
    }
    let t = sqrt_mod(&Integer::from(-2), p)
        .expect("-2 is a square mod p for p = 1, 3 (mod 8)")
        .value()
        .to_u64()
        .expect("root is below p");
    let (mut a, mut b) = (p, t);
    while (b as u128) * (b as u128) >= p as u128 {
        (a, b) = (b, a % b);
    }
    let r = b;
    let rest = p - r * r;
    if rest % 2 != 0 {
        return Err(PrimesError::InternalInconsistency { p, r });
    }
    let y2 = rest / 2;
    let y = y2.isqrt();
    if y * y != y2 || y == 0 {
        return Err(PrimesError::InternalInconsistency { p, r });
    }
    Ok(PrimeRep::Representable { p, x: r, y })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    fn brute_rep(p: u64) -> Option<(u64, u64)> {
        (0..=p.isqrt()).find_map(|x| {
            let rest = p.checked_sub(x * x)?;
            if rest % 2 != 0 {
                return None;
            }
            let y = (rest / 2).isqrt();
            (y > 0 && y * y == rest / 2).then_some((x, y))
        })
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(2, 12), vec![2, 3, 5, 7, 11]);
        assert_eq!(sieve_primes(90, 100), vec![97]);
        assert_eq!(sieve_primes(0, 3), vec![2]);
        assert!(sieve_primes(24, 29).is_empty());
        assert!(sieve_primes(10, 10).is_empty());
        let count = (2..10_000u64).filter(|&n| trial_division(n)).count();
        assert_eq!(count, 1229);
        assert_eq!(sieve_primes(2, 10_000).len(), count);
    }

    #[test]
    fn sieve_matches_primality_test() {
        let sieved = sieve_primes(2, 100_000);
        let filtered: Vec<u64> = (2..100_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, filtered);
        // segment boundaries
        let mid = sieve_primes(65_000, 140_000);
        let expect: Vec<u64> = (65_000..140_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(mid, expect);
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(7919));
        assert!(trial_division(7919));
        assert!(!trial_division(3_215_031_751));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        // strong pseudoprime to bases 2..37 is far beyond u64; check a few
        // Carmichael numbers instead
        for c in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(!is_prime(c));
        }
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
        for n in (4_294_967_000u64..4_294_967_400).chain(1_000_000_000_000..1_000_000_000_200) {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
    }

    #[test]
    fn rep_examples() {
        assert_eq!(brute_rep(3), Some((1, 1)));
        assert_eq!(represent_x2_2y2(3).unwrap().xy(), Some((1, 1)));
        assert_eq!(brute_rep(11), Some((3, 1)));
        assert_eq!(represent_x2_2y2(11).unwrap().xy(), Some((3, 1)));
        assert_eq!(brute_rep(5), None);
        assert_eq!(represent_x2_2y2(5).unwrap(), PrimeRep::NotRepresentable { p: 5 });
        assert_eq!(represent_x2_2y2(2).unwrap().xy(), Some((0, 1)));
        assert_eq!(represent_x2_2y2(9), Err(PrimesError::NotPrime(9)));
    }

    #[test]
    fn rep_matches_brute_force_small() {
        for p in sieve_primes(2, 20_000) {
            let rep = represent_x2_2y2(p).unwrap();
            assert_eq!(rep.xy(), brute_rep(p), "p = {p}");
            assert_eq!(rep.xy().is_some(), p == 2 || matches!(p % 8, 1 | 3));
        }
    }
}
