//! Prime support of a positive integer.
//!
//! Only used on `gcd(A, B)` by the `d`-reduction, which needs the primes
//! dividing the gcd but never their multiplicities (those are read off `A`
//! and `B` directly). Trial division handles the small primes; whatever
//! cofactor remains is split with Brent's variant of Pollard rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const TRIAL_LIMIT: u32 = 1 << 12;

/// Witness bases that make Miller-Rabin deterministic below 3.3·10^24;
/// beyond that the test is probabilistic with error below 4^-20.
const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Distinct prime divisors of `n`, sorted ascending. `n = 0` and `n = 1`
/// have empty support.
pub(crate) fn prime_support(n: &BigUint) -> Vec<BigUint> {
    let mut primes = Vec::new();
    if n.is_zero() {
        return primes;
    }
    let mut rest = n.clone();
    let mut p = 2u32;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if (&rest % &bp).is_zero() {
            primes.push(bp.clone());
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        if &bp * &bp > rest {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return primes;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(&m);
        let mut other = &m / &f;
        // Keep the pieces coprime so each prime is reported once.
        let g = f.gcd(&other);
        if g.is_one() {
            stack.push(f);
            stack.push(other);
        } else {
            while (&other % &g).is_zero() {
                other /= &g;
            }
            let mut f = f;
            while (&f % &g).is_zero() {
                f /= &g;
            }
            stack.push(g);
            stack.push(f);
            stack.push(other);
        }
    }
    primes.sort();
    primes.dedup();
    primes
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &b in MR_BASES.iter() {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &b in MR_BASES.iter() {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a nontrivial factor of the composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        if let Some(f) = brent_attempt(n, &c) {
            return f;
        }
        c += 1u32;
    }
}

fn brent_attempt(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let step = |x: &BigUint| (x * x + c) % n;
    let batch = 128u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigUint::one();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
        if r > (1u64 << 40) {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n || g.is_zero() {
        None
    } else {
        Some(g)
    }
}

/// Multiplicity of `p` in `n` (`n ≠ 0`).
pub(crate) fn valuation(n: &BigUint, p: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn support(n: u128) -> Vec<u128> {
        prime_support(&BigUint::from(n))
            .iter()
            .map(|p| p.to_u128().unwrap())
            .collect()
    }

    #[test]
    fn small_supports() {
        assert_eq!(support(1), Vec::<u128>::new());
        assert_eq!(support(2), vec![2]);
        assert_eq!(support(360), vec![2, 3, 5]);
        assert_eq!(support(4099 * 4099 * 3), vec![3, 4099]);
    }

    #[test]
    fn splits_semiprime_beyond_trial_range() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        assert_eq!(support(p * q), vec![q, p]);
        assert_eq!(support(p * p * q * 12), vec![2, 3, q, p]);
    }

    #[test]
    fn valuation_counts() {
        let n = BigUint::from(2u32).pow(13) * BigUint::from(81u32);
        assert_eq!(valuation(&n, &BigUint::from(2u32)), 13);
        assert_eq!(valuation(&n, &BigUint::from(3u32)), 4);
        assert_eq!(valuation(&n, &BigUint::from(5u32)), 0);
    }
}
