//! Machine-word modular kernels for the fast evaluation paths.
//!
//! Everything here works on `u64` residues. Moduli must stay below `2^62`
//! so that sums of two residues never overflow.

/// `a * b mod m` through a 128-bit product.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Exponent of `p` in `n` (n > 0).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Arithmetic in `Z/mZ` on an internal `u64` representation.
pub trait ModRing: Send + Sync {
    fn modulus(&self) -> u64;
    /// Internal form of `a mod m`.
    fn from_u64(&self, a: u64) -> u64;
    /// Canonical value in `[0, m)` of an internal element.
    fn to_u64(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn one(&self) -> u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus() {
            s - self.modulus()
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus() - b
        }
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    fn from_i64(&self, a: i64) -> u64 {
        let m = self.modulus() as i128;
        self.from_u64((a as i128).rem_euclid(m) as u64)
    }

    fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

/// Plain reduction; valid for every modulus `m >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct PlainModulus {
    m: u64,
}

impl PlainModulus {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1 && m < 1 << 62, "modulus out of range");
        Self { m }
    }
}

impl ModRing for PlainModulus {
    #[inline]
    fn modulus(&self) -> u64 {
        self.m
    }
    #[inline]
    fn from_u64(&self, a: u64) -> u64 {
        a % self.m
    }
    #[inline]
    fn to_u64(&self, a: u64) -> u64 {
        a
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.m)
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.m
    }
}

/// Montgomery arithmetic for an odd modulus `3 <= m < 2^62`.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    m: u64,
    /// `-m^{-1} mod 2^64`
    m_neg_inv: u64,
    /// `2^128 mod m`
    r2: u64,
    one: u64,
}

impl Montgomery {
    pub fn new(m: u64) -> Self {
        assert!(m % 2 == 1 && m >= 3 && m < 1 << 62, "Montgomery needs an odd modulus");
        // Newton iteration doubles the number of correct low bits each step.
        let mut inv = m;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        debug_assert_eq!(m.wrapping_mul(inv), 1);
        let r = ((1u128 << 64) % m as u128) as u64;
        let r2 = mul_mod(r, r, m);
        let mut ring = Self {
            m,
            m_neg_inv: inv.wrapping_neg(),
            r2,
            one: 0,
        };
        ring.one = r;
        ring
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let q = (t as u64).wrapping_mul(self.m_neg_inv);
        let u = ((t + q as u128 * self.m as u128) >> 64) as u64;
        if u >= self.m {
            u - self.m
        } else {
            u
        }
    }
}

impl ModRing for Montgomery {
    #[inline]
    fn modulus(&self) -> u64 {
        self.m
    }
    #[inline]
    fn from_u64(&self, a: u64) -> u64 {
        let a = if a < self.m { a } else { a % self.m };
        self.mul(a, self.r2)
    }
    #[inline]
    fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }
    #[inline]
    fn one(&self) -> u64 {
        self.one
    }
}

/// Montgomery when the modulus allows it, plain reduction otherwise.
#[derive(Debug, Clone, Copy)]
pub enum AnyRing {
    Montgomery(Montgomery),
    Plain(PlainModulus),
}

impl AnyRing {
    pub fn new(m: u64) -> Self {
        if m % 2 == 1 && m >= 3 {
            AnyRing::Montgomery(Montgomery::new(m))
        } else {
            AnyRing::Plain(PlainModulus::new(m))
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $r:ident => $e:expr) => {
        match $self {
            AnyRing::Montgomery($r) => $e,
            AnyRing::Plain($r) => $e,
        }
    };
}

impl ModRing for AnyRing {
    #[inline]
    fn modulus(&self) -> u64 {
        dispatch!(self, r => r.modulus())
    }
    #[inline]
    fn from_u64(&self, a: u64) -> u64 {
        dispatch!(self, r => r.from_u64(a))
    }
    #[inline]
    fn to_u64(&self, a: u64) -> u64 {
        dispatch!(self, r => r.to_u64(a))
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        dispatch!(self, r => r.mul(a, b))
    }
    #[inline]
    fn one(&self) -> u64 {
        dispatch!(self, r => r.one())
    }
}

/// Factorials modulo `p^w` split as `n! = p^v(n) * U(n)` with `U(n)` a unit.
///
/// Binomials and factorial ratios are then `p^(net valuation)` times a
/// product of unit factorials and their inverses, which is exact modulo
/// `p^w` regardless of how many factors of `p` the operands carry.
#[derive(Debug, Clone)]
pub struct PrimePowerFactorials {
    p: u64,
    w: u32,
    ring: Montgomery,
    unit_fact: Vec<u64>,
    inv_unit_fact: Vec<u64>,
    fact_val: Vec<u32>,
    p_pows: Vec<u64>,
}

impl PrimePowerFactorials {
    /// Tables for `0 <= n <= max_n`; `p` must be an odd prime.
    pub fn new(p: u64, w: u32, max_n: u64) -> Self {
        assert!(p % 2 == 1 && w >= 1, "odd prime and positive window required");
        let modulus = p.checked_pow(w).expect("p^w overflows u64");
        let ring = Montgomery::new(modulus);
        let len = max_n as usize + 1;
        let mut unit_fact = Vec::with_capacity(len);
        let mut units = Vec::with_capacity(len);
        let mut fact_val = Vec::with_capacity(len);
        unit_fact.push(ring.one());
        units.push(ring.one());
        fact_val.push(0u32);
        let mut next_multiple = p;
        for i in 1..=max_n {
            let (u, v) = if i == next_multiple {
                next_multiple += p;
                let v = valuation(i, p);
                (i / p.pow(v), v)
            } else {
                (i, 0)
            };
            let u = ring.from_u64(u);
            units.push(u);
            unit_fact.push(ring.mul(unit_fact[i as usize - 1], u));
            fact_val.push(fact_val[i as usize - 1] + v);
        }
        let mut inv_unit_fact = vec![0u64; len];
        let last = ring.to_u64(unit_fact[len - 1]);
        let last_inv = inv_mod(last, modulus).expect("unit factorial is invertible");
        inv_unit_fact[len - 1] = ring.from_u64(last_inv);
        for i in (1..len).rev() {
            inv_unit_fact[i - 1] = ring.mul(inv_unit_fact[i], units[i]);
        }
        let p_pows = (0..w).map(|e| ring.from_u64(p.pow(e))).collect();
        Self {
            p,
            w,
            ring,
            unit_fact,
            inv_unit_fact,
            fact_val,
            p_pows,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn window(&self) -> u32 {
        self.w
    }

    pub fn ring(&self) -> &Montgomery {
        &self.ring
    }

    pub fn max_n(&self) -> u64 {
        self.unit_fact.len() as u64 - 1
    }

    /// `v_p(n!)`
    #[inline]
    pub fn factorial_valuation(&self, n: u64) -> u32 {
        self.fact_val[n as usize]
    }

    #[inline]
    fn scale(&self, unit: u64, v: i64) -> u64 {
        debug_assert!(v >= 0, "negative valuation in an integral quantity");
        if v >= self.w as i64 {
            0
        } else {
            self.ring.mul(unit, self.p_pows[v as usize])
        }
    }

    /// `C(n, k) mod p^w` in Montgomery form; zero outside `0 <= k <= n`.
    #[inline]
    pub fn binomial(&self, n: u64, k: i64) -> u64 {
        if k < 0 || k as u64 > n {
            return 0;
        }
        let k = k as u64;
        let v = self.fact_val[n as usize] as i64
            - self.fact_val[k as usize] as i64
            - self.fact_val[(n - k) as usize] as i64;
        if v >= self.w as i64 {
            return 0;
        }
        let r = &self.ring;
        let u = r.mul(
            self.unit_fact[n as usize],
            r.mul(self.inv_unit_fact[k as usize], self.inv_unit_fact[(n - k) as usize]),
        );
        self.scale(u, v)
    }

    /// `prod(num_i!) / prod(den_j!) mod p^w` in Montgomery form. The ratio
    /// must be a p-integral rational.
    pub fn factorial_ratio(&self, num: &[u64], den: &[u64]) -> u64 {
        let r = &self.ring;
        let mut v = 0i64;
        let mut u = r.one();
        for &n in num {
            v += self.fact_val[n as usize] as i64;
            u = r.mul(u, self.unit_fact[n as usize]);
        }
        for &d in den {
            v -= self.fact_val[d as usize] as i64;
            u = r.mul(u, self.inv_unit_fact[d as usize]);
        }
        assert!(v >= 0, "factorial ratio is not p-integral");
        self.scale(u, v)
    }
}

/// Rolling Pascal rows reduced in a ring; row `s` replaces row `s - 1`.
#[derive(Debug, Clone)]
pub struct PascalRows<'r, R: ModRing> {
    ring: &'r R,
    row: Vec<u64>,
    index: u64,
}

impl<'r, R: ModRing> PascalRows<'r, R> {
    pub fn new(ring: &'r R) -> Self {
        Self {
            ring,
            row: vec![ring.one()],
            index: 0,
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn row(&self) -> &[u64] {
        &self.row
    }

    pub fn advance(&mut self) {
        let r = self.ring;
        self.row.push(r.one());
        for k in (1..self.row.len() - 1).rev() {
            self.row[k] = r.add(self.row[k], self.row[k - 1]);
        }
        self.index += 1;
    }
}
