//! Exact terms `u_n`, the Lucas sequences `U_n`, `V_n`, and the
//! decomposition `u_n = c_P(n)·P + c_Q(n)·Q`.
//!
//! Two independent routes are provided for every quantity: plain iteration
//! of the recurrence, and an `O(log n)` route. `term_fast` powers the
//! companion matrix `[[A, -B], [1, 0]]`, whose `m`-th power is
//! `[[U_{m+1}, -B·U_m], [U_m, -B·U_{m-1}]]`; `lucas_pair` uses the doubling
//! identities `U_{2m} = U_m·V_m`, `V_{2m} = V_m² - 2B^m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{BrigError, Result};
use crate::params::{reduce_d, SequenceParams};

/// Above this index [`term`] switches from iteration to [`term_fast`].
pub const FAST_PATH_CUTOFF: u64 = 64;

/// Two consecutive terms `(u_n, u_{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermWindow {
    pub n: u64,
    pub current: BigInt,
    pub next: BigInt,
}

impl TermWindow {
    pub fn start(params: &SequenceParams) -> Self {
        TermWindow {
            n: 0,
            current: params.p.clone(),
            next: params.q.clone(),
        }
    }

    /// Moves to `(u_{n+1}, u_{n+2})` with `u_{n+2} = A·u_{n+1} - B·u_n`.
    pub fn advance(&mut self, a: &BigInt, b: &BigInt) {
        let mut following = a * &self.next;
        following -= b * &self.current;
        self.current = std::mem::replace(&mut self.next, following);
        self.n += 1;
    }
}

/// Iterator over `u_0, u_1, u_2, ...`.
#[derive(Debug, Clone)]
pub struct Terms {
    a: BigInt,
    b: BigInt,
    window: TermWindow,
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.window.current.clone();
        self.window.advance(&self.a, &self.b);
        Some(out)
    }
}

impl SequenceParams {
    pub fn terms(&self) -> Terms {
        Terms {
            a: self.a.clone(),
            b: self.b.clone(),
            window: TermWindow::start(self),
        }
    }
}

/// `u_n` by `n - 1` recurrence steps.
pub fn term_iter(params: &SequenceParams, n: u64) -> BigInt {
    let mut w = TermWindow::start(params);
    while w.n < n {
        w.advance(&params.a, &params.b);
    }
    w.current
}

/// `(U_{m-1}, U_m)` for `m ≥ 1`, by binary powering of the companion
/// matrix. A squaring costs three full-size multiplications:
/// `U_{2k-1} = U_k² - B·U_{k-1}²` and `U_{2k} = U_k·(A·U_k - 2B·U_{k-1})`.
pub(crate) fn lucas_u_window(a: &BigInt, b: &BigInt, m: u64) -> (BigInt, BigInt) {
    assert!(m >= 1);
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    let bits = 64 - m.leading_zeros();
    for i in (0..bits - 1).rev() {
        let cur_sq = &cur * &cur;
        let prev_sq = &prev * &prev;
        let doubled = &cur * (a * &cur - (b * &prev) * 2u32);
        prev = cur_sq - b * prev_sq;
        cur = doubled;
        if (m >> i) & 1 == 1 {
            let next = a * &cur - b * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
    }
    (prev, cur)
}

/// `u_n` in `O(log n)` multiplications: `u_n = U_n·Q - B·U_{n-1}·P`.
/// Bit-identical to [`term_iter`].
pub fn term_fast(params: &SequenceParams, n: u64) -> BigInt {
    if n == 0 {
        return params.p.clone();
    }
    let (u_prev, u_cur) = lucas_u_window(&params.a, &params.b, n);
    u_cur * &params.q - u_prev * (&params.b * &params.p)
}

/// `u_n`, iterating for small `n` and using [`term_fast`] above
/// [`FAST_PATH_CUTOFF`].
pub fn term(params: &SequenceParams, n: u64) -> BigInt {
    if uses_fast_path(n) {
        term_fast(params, n)
    } else {
        term_iter(params, n)
    }
}

pub fn uses_fast_path(n: u64) -> bool {
    n > FAST_PATH_CUTOFF
}

/// `U_n` and `V_n` for fixed `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasPair {
    pub n: u64,
    pub u: BigInt,
    pub v: BigInt,
}

impl LucasPair {
    /// `V_n² - Δ·U_n² - 4·B^n`, which vanishes identically.
    pub fn identity_defect(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let delta = a * a - b * 4;
        &self.v * &self.v - delta * &self.u * &self.u - b.pow(self.n as u32) * 4
    }
}

/// `(U_n, V_n)` by the doubling identities.
pub fn lucas_pair(a: &BigInt, b: &BigInt, n: u64) -> LucasPair {
    let delta = a * a - b * 4;
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut b_pow = BigInt::one();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        // (m) -> (2m)
        let u2 = &u * &v;
        let v2 = &v * &v - &b_pow * 2u32;
        b_pow = &b_pow * &b_pow;
        u = u2;
        v = v2;
        if (n >> i) & 1 == 1 {
            // (m) -> (m + 1); both numerators are even.
            let u1 = (a * &u + &v) / 2;
            let v1 = (&delta * &u + a * &v) / 2;
            u = u1;
            v = v1;
            b_pow *= b;
        }
    }
    LucasPair { n, u, v }
}

/// `(U_n, V_n)` by iteration; the independent reference for [`lucas_pair`].
pub fn lucas_pair_iter(a: &BigInt, b: &BigInt, n: u64) -> LucasPair {
    let u = term_iter(&SequenceParams::new(a.clone(), b.clone(), 0, 1), n);
    let v = term_iter(&SequenceParams::new(a.clone(), b.clone(), 2, a.clone()), n);
    LucasPair { n, u, v }
}

pub fn lucas_u(a: &BigInt, b: &BigInt, n: u64) -> BigInt {
    lucas_pair(a, b, n).u
}

pub fn lucas_v(a: &BigInt, b: &BigInt, n: u64) -> BigInt {
    lucas_pair(a, b, n).v
}

/// `(c_P(n), c_Q(n)) = (-B·U_{n-1}, U_n)`, so that
/// `u_n = c_P(n)·P + c_Q(n)·Q` for every `P`, `Q`. Requires `n ≥ 1`.
pub fn coeffs(a: &BigInt, b: &BigInt, n: u64) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(BrigError::domain("coefficient decomposition starts at n = 1"));
    }
    let (u_prev, u_cur) = lucas_u_window(a, b, n);
    Ok((-(b * u_prev), u_cur))
}

/// `gcd(U_m, U_{m+1})` for `d`-reduced `(A, B)`. Equals `g^⌊m/2⌋` with
/// `g = gcd(A, B)`; this is computed directly, never assumed.
pub fn gcd_consecutive_u(a: &BigInt, b: &BigInt, m: u64) -> Result<BigInt> {
    let probe = SequenceParams::new(a.clone(), b.clone(), 0, 1);
    let (_, d) = reduce_d(&probe)?;
    if !d.is_one() {
        return Err(BrigError::domain(format!(
            "(A, B) = ({a}, {b}) is not d-reduced (d = {d})"
        )));
    }
    let (u_m, u_next) = lucas_u_window(a, b, m + 1);
    Ok(u_m.gcd(&u_next))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
        SequenceParams::new(a, b, p, q)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn term_iter_examples() {
        assert_eq!(term_iter(&sp(3, 2, 7, 6), 3), big(0));
        assert_eq!(term_iter(&sp(3, 2, 7, 6), 0), big(7));
        assert_eq!(term_iter(&sp(1, -1, 0, 1), 10), big(55));
    }

    #[test]
    fn term_fast_examples() {
        let params = sp(3, 6, -45, -54);
        let expected = [-45, -54, 108, 648, 1296, 0];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(term_fast(&params, n as u64), big(*e));
            assert_eq!(term_iter(&params, n as u64), big(*e));
        }
        assert_eq!(term_fast(&sp(5, 3, 11, -4), 1), big(-4));
        assert_eq!(term_fast(&sp(2, -1, 0, 1), 20), big(15_994_428));
        assert_eq!(
            term_fast(&sp(1, -1, 0, 1), 100).to_string(),
            "354224848179261915075"
        );
    }

    #[test]
    fn term_iterator_and_dispatch() {
        let params = sp(1, -1, 0, 1);
        let fib: Vec<BigInt> = params.terms().take(8).collect();
        assert_eq!(fib, [0, 1, 1, 2, 3, 5, 8, 13].map(big));
        assert_eq!(term(&params, 200), term_iter(&params, 200));
        assert!(!uses_fast_path(64) && uses_fast_path(65));
    }

    #[test]
    fn lucas_examples() {
        let (a, b) = (big(3), big(6));
        let us: Vec<BigInt> = (0..6).map(|n| lucas_u(&a, &b, n)).collect();
        assert_eq!(us, [0, 1, 3, 3, -9, -45].map(big));
        assert_eq!(lucas_u(&big(15), &big(10), 6), big(628_875));
        let p0 = lucas_pair(&big(7), &big(-2), 0);
        assert_eq!((p0.u, p0.v), (big(0), big(2)));
        let vs: Vec<BigInt> = (0..5).map(|n| lucas_v(&big(3), &big(2), n)).collect();
        assert_eq!(vs, [2, 3, 5, 9, 17].map(big));
    }

    #[test]
    fn lucas_doubling_matches_iteration() {
        for a in -6..=6 {
            for b in -6..=6 {
                let (a, b) = (big(a), big(b));
                for n in 0..80 {
                    let fast = lucas_pair(&a, &b, n);
                    assert_eq!(fast, lucas_pair_iter(&a, &b, n), "A={a} B={b} n={n}");
                    assert!(fast.identity_defect(&a, &b).is_zero());
                }
            }
        }
    }

    #[test]
    fn coeffs_examples() {
        assert_eq!(coeffs(&big(3), &big(6), 5).unwrap(), (big(54), big(-45)));
        assert_eq!(big(54) * big(-45) + big(-45) * big(-54), big(0));
        assert_eq!(coeffs(&big(9), &big(4), 1).unwrap(), (big(0), big(1)));
        assert_eq!(coeffs(&big(3), &big(2), 4).unwrap(), (big(-14), big(15)));
        assert!(coeffs(&big(3), &big(2), 0).is_err());
    }

    #[test]
    fn gcd_consecutive_examples() {
        let gs: Vec<BigInt> = (0..6)
            .map(|m| gcd_consecutive_u(&big(15), &big(10), m).unwrap())
            .collect();
        assert_eq!(gs, [1, 1, 5, 5, 25, 25].map(big));
        for m in 0..20 {
            assert_eq!(gcd_consecutive_u(&big(1), &big(-1), m).unwrap(), big(1));
        }
        assert_eq!(gcd_consecutive_u(&big(3), &big(6), 4).unwrap(), big(9));
        assert!(gcd_consecutive_u(&big(4), &big(8), 3).is_err());
    }
}
