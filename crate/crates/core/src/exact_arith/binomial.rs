use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::Integer;

/// Rows `0..=SHARED_ROWS` are served from a process-wide table.
const SHARED_ROWS: u64 = 256;

static SHARED: OnceLock<BinomialTable> = OnceLock::new();

fn shared() -> &'static BinomialTable {
    SHARED.get_or_init(|| BinomialTable::new(SHARED_ROWS))
}

/// Pascal rows `0..=max_row`, each filled multiplicatively.
///
/// The table is immutable once built, so a shared reference can be handed to
/// any number of threads.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<Integer>>,
}

impl BinomialTable {
    pub fn new(max_row: u64) -> Self {
        let rows = (0..=max_row).map(binomial_row).collect();
        Self { rows }
    }

    pub fn max_row(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// `C(n, k)` if row `n` is cached; zero outside `0 <= k <= n`.
    pub fn get(&self, n: u64, k: i64) -> Option<Integer> {
        let row = self.rows.get(n as usize)?;
        if k < 0 || k as u64 > n {
            return Some(Integer::zero());
        }
        Some(row[k as usize].clone())
    }

    pub fn row(&self, n: u64) -> Option<&[Integer]> {
        self.rows.get(n as usize).map(Vec::as_slice)
    }
}

fn binomial_row(n: u64) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(Integer::one());
    for k in 0..n {
        c *= n - k;
        c /= k + 1;
        row.push(Integer::from(c.clone()));
    }
    row
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    if n <= SHARED_ROWS {
        return shared().rows[n as usize][k as usize].clone();
    }
    let k = (k as u64).min(n - k as u64);
    let mut c = BigUint::one();
    for i in 0..k {
        c *= n - i;
        c /= i + 1;
    }
    Integer::from(c)
}

/// Binomial coefficient with a possibly negative upper index, extended as the
/// polynomial `n (n-1) ... (n-k+1) / k!` in `n`. Zero for `k < 0`.
pub fn binomial_signed(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::zero();
    }
    if n >= 0 {
        return binomial(n as u64, k);
    }
    // C(n, k) = (-1)^k C(k - n - 1, k) for n < 0
    let c = binomial((k - n - 1) as u64, k);
    if k % 2 == 0 {
        c
    } else {
        -c
    }
}

pub fn factorial(n: u64) -> Integer {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= i;
    }
    Integer::from(f)
}
