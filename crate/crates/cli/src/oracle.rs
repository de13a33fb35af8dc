use brig_core::SequenceParams;
use num_traits::Zero;

/// Every `k ≤ horizon` with `u_k = 0`, by plain iteration of the recurrence
/// on the given parameters (no normalization, no bounds).
pub fn brute_force_zero_oracle(params: &SequenceParams, horizon: u64) -> Vec<u64> {
    let (a, b) = (&params.a, &params.b);
    let mut prev = params.p.clone();
    let mut cur = params.q.clone();
    let mut out = Vec::new();
    if prev.is_zero() {
        out.push(0);
    }
    for k in 1..=horizon {
        if cur.is_zero() {
            out.push(k);
        }
        let next = a * &cur - b * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use brig_core::{construct_zero_at, SequenceParams};
    use num_bigint::BigInt;

    #[test]
    fn examples() {
        assert_eq!(brute_force_zero_oracle(&SequenceParams::new(3, 6, 5, 6), 100), vec![5]);
        assert_eq!(brute_force_zero_oracle(&SequenceParams::new(1, -1, 0, 1), 100), vec![0]);
        let (p, q) = construct_zero_at(&BigInt::from(4), &BigInt::from(-7), 17).unwrap();
        assert_eq!(brute_force_zero_oracle(&SequenceParams::new(4, -7, p, q), 300), vec![17]);
        assert_eq!(brute_force_zero_oracle(&SequenceParams::new(0, 1, 0, 1), 6), vec![0, 2, 4, 6]);
        assert_eq!(brute_force_zero_oracle(&SequenceParams::new(2, 1, 1, 0), 0), Vec::<u64>::new());
    }
}
