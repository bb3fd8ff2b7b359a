//! Word-sized kernels for the fast evaluation path.
//!
//! Family sums use `C(k,j) C(k+j,j) = C(k+j, 2j) C(2j, j)`, so one sweep
//! of Pascal rows `s = k + j` reduced modulo `M` yields every coefficient
//! `sum_k eps^k w(k) [C(k,j) C(k+j,j)]^r` of the weighted sum as a
//! polynomial in `x`. No division happens, so `M` may be any modulus.

use crate::exact_arith::word::{AnyRing, ModRing, PascalRows, PrimePowerFactorials};
use crate::sequences::{TermShape, Weight};

/// Largest modulus the kernels accept.
pub const MAX_MODULUS: u64 = (1 << 62) - 1;

fn weight_in<R: ModRing>(ring: &R, shape: &TermShape, k: u64) -> u64 {
    let m = ring.modulus();
    let odd = ring.from_u64((2 * k + 1) % m);
    let w = match shape.weight {
        Weight::One => ring.one(),
        Weight::Linear => odd,
        Weight::OddPower(a) => ring.pow(odd, 2 * a as u64 + 1),
        Weight::Rising(a) => {
            let kk1 = ring.mul(ring.from_u64(k % m), ring.from_u64((k + 1) % m));
            ring.mul(odd, ring.pow(kk1, a as u64))
        }
    };
    if shape.sign.flips(k) {
        ring.neg(w)
    } else {
        w
    }
}

/// Coefficients (in ring form) of `sum_{k<n} eps^k w(k) S_k^(r)(x)` for
/// every shape, as polynomials of degree `< n`. Shapes must have power 1.
pub fn family_coefficients(ring: &AnyRing, r: u32, shapes: &[TermShape], n: u64) -> Vec<Vec<u64>> {
    assert!(shapes.iter().all(|s| s.power == 1), "powered terms have no coefficient form");
    let len = n as usize;
    let mut coeffs = vec![vec![ring.zero(); len]; shapes.len()];
    if n == 0 {
        return coeffs;
    }
    let weights: Vec<Vec<u64>> = shapes
        .iter()
        .map(|s| (0..n).map(|k| weight_in(ring, s, k)).collect())
        .collect();
    let mut central = vec![ring.zero(); len];
    let mut rows = PascalRows::new(ring);
    for s in 0..=2 * (n - 1) {
        while rows.index() < s {
            rows.advance();
        }
        let row = rows.row();
        if s % 2 == 0 {
            central[(s / 2) as usize] = row[(s / 2) as usize];
        }
        // k = s - j < n and j <= k
        let lo = (s + 1).saturating_sub(n);
        for j in lo..=s / 2 {
            let k = (s - j) as usize;
            let c = ring.mul(row[2 * j as usize], central[j as usize]);
            let cr = ring.pow(c, r as u64);
            for (coef, w) in coeffs.iter_mut().zip(&weights) {
                let slot = &mut coef[j as usize];
                *slot = ring.add(*slot, ring.mul(w[k], cr));
            }
        }
    }
    coeffs
}

/// `sum_j coeffs[j] x^j` as a canonical residue.
pub fn horner<R: ModRing>(ring: &R, coeffs: &[u64], x: i64) -> u64 {
    let xr = ring.from_i64(x);
    let acc = coeffs
        .iter()
        .rev()
        .fold(ring.zero(), |acc, &c| ring.add(ring.mul(acc, xr), c));
    ring.to_u64(acc)
}

/// `C(2k,k) mod p^w` for `k < n`, in the Montgomery form of `pf`.
pub fn central_terms(pf: &PrimePowerFactorials, n: u64) -> Vec<u64> {
    (0..n).map(|k| pf.binomial(2 * k, k as i64)).collect()
}

/// `C(p+2k, 4k+1) C(2k,k)^2 mod p^2` for `k = 0..=(p-1)/2`.
pub fn single_sum_terms(p: u64) -> (PrimePowerFactorials, Vec<u64>) {
    let pf = PrimePowerFactorials::new(p, 2, 2 * p);
    let ring = *pf.ring();
    let terms = (0..=(p - 1) / 2)
        .map(|k| {
            let c = pf.binomial(2 * k, k as i64);
            ring.mul(pf.binomial(p + 2 * k, 4 * k as i64 + 1), ring.mul(c, c))
        })
        .collect();
    (pf, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Integer;
    use crate::sequences::{weighted_sum_exact, Family, Sign, SumSpec};
    use num_integer::Integer as _;
    use num_traits::ToPrimitive;

    fn exact_mod(r: u32, shape: TermShape, n: u64, x: i64, m: u64) -> u64 {
        let spec = SumSpec {
            family: Family::Schmidt(r),
            weight: shape.weight,
            sign: shape.sign,
            power: 1,
            n,
            x: Integer::from(x),
        };
        weighted_sum_exact(&spec).mod_floor(&Integer::from(m)).to_u64().unwrap()
    }

    #[test]
    fn coefficients_match_exact_sums() {
        let shapes = [
            TermShape::new(Weight::Linear, Sign::Minus, 1),
            TermShape::new(Weight::One, Sign::Plus, 1),
            TermShape::new(Weight::Rising(2), Sign::Plus, 1),
            TermShape::new(Weight::OddPower(1), Sign::Minus, 1),
        ];
        for m in [1u64, 2, 12, 25, 97, 343, 1000] {
            let ring = AnyRing::new(m);
            for r in 1..=4 {
                for n in 1..=14 {
                    let coeffs = family_coefficients(&ring, r, &shapes, n);
                    for x in [-5i64, -1, 0, 3] {
                        for (shape, c) in shapes.iter().zip(&coeffs) {
                            assert_eq!(
                                horner(&ring, c, x),
                                exact_mod(r, *shape, n, x, m),
                                "m = {m}, r = {r}, n = {n}, x = {x}, {shape:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_sum_matches_exact() {
        use crate::sequences::thm3_binomial_sum;
        for p in [5u64, 7, 11, 13, 101] {
            let (pf, terms) = single_sum_terms(p);
            for x in -4i64..=4 {
                let got = horner(pf.ring(), &terms, x);
                let want = thm3_binomial_sum(p, &Integer::from(x));
                assert_eq!(Integer::from(got), *want.value(), "p = {p}, x = {x}");
            }
        }
    }
}
