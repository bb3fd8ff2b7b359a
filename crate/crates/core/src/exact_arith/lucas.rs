use num_traits::One;

use super::{Integer, Residue};

/// Iterator state for `u_0 = 0, u_1 = 1, u_{k+1} = (b - 2) u_k - u_{k-1}`
/// over the ring of `b` (normally `Z/p^2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasState {
    b: Residue,
    trace: Residue,
    prev: Residue,
    cur: Residue,
    index: u64,
}

impl LucasState {
    pub fn new(b: &Residue) -> Self {
        let m = b.modulus();
        let two = Residue::reduce(Integer::from(2), m);
        // (u_{-1}, u_0) = (-1, 0) so that one step yields u_1 = 1.
        Self {
            b: b.clone(),
            trace: b - &two,
            prev: Residue::reduce(-Integer::one(), m),
            cur: Residue::reduce(Integer::from(0), m),
            index: 0,
        }
    }

    pub fn b(&self) -> &Residue {
        &self.b
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `(u_{n-1}, u_n)` for the current index `n`.
    pub fn pair(&self) -> (&Residue, &Residue) {
        (&self.prev, &self.cur)
    }

    pub fn current(&self) -> &Residue {
        &self.cur
    }

    pub fn step(&mut self) {
        let next = &(&self.trace * &self.cur) - &self.prev;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.index += 1;
    }

    pub fn advance_to(&mut self, n: u64) {
        assert!(n >= self.index, "Lucas state cannot move backwards");
        while self.index < n {
            self.step();
        }
    }
}

/// `u_n` over the ring of `b`, by linear iteration.
pub fn lucas_u(n: u64, b: &Residue) -> Residue {
    let mut s = LucasState::new(b);
    s.advance_to(n);
    s.cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64, m: i64) -> Residue {
        Residue::new(v, m).unwrap()
    }

    #[test]
    fn initial_values() {
        assert_eq!(lucas_u(0, &b(12, 25)).value(), &Integer::from(0));
        assert_eq!(lucas_u(1, &b(12, 25)).value(), &Integer::from(1));
        assert_eq!(lucas_u(2, &b(12, 25)).value(), &Integer::from(10));
    }

    #[test]
    fn worked_chain() {
        // 0, 1, 10, 99 - 1 = 98 = 24 (mod 25), 240 - 10 = 230 = 5 (mod 25)
        let seq: Vec<i64> = (0..5)
            .map(|n| lucas_u(n, &b(12, 25)).value().try_into().unwrap())
            .collect();
        assert_eq!(seq, vec![0, 1, 10, 24, 5]);
    }

    #[test]
    fn recurrence_holds_at_every_step() {
        for (bv, m) in [(12i64, 25i64), (3, 49), (100, 121), (0, 9)] {
            let base = b(bv, m);
            let trace = &base - &b(2, m);
            let mut s = LucasState::new(&base);
            let mut history = vec![s.current().clone()];
            for _ in 0..200 {
                s.step();
                history.push(s.current().clone());
            }
            for k in 1..history.len() - 1 {
                let lhs = &history[k + 1] + &history[k - 1];
                assert_eq!(lhs, &trace * &history[k]);
            }
        }
    }
}
