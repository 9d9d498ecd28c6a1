//! Avoidance counts: subsets of `S` containing none of `m` disjoint small sets.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Largest `|S|` accepted by [`brute_p_mn`].
pub const BRUTE_CAP: usize = 24;

/// `p(m, n) = ((2^n - 1) / 2^n)^m`, exactly.
pub fn avoidance_probability(m: u32, n: u32) -> BigRational {
    let two_n = BigInt::from(2).pow(n);
    let base = BigRational::new(&two_n - 1, two_n);
    num_traits::Pow::pow(base, m)
}

/// Number of `T ⊆ S` (with `|S| = s`) containing none of the sets `A_i`,
/// where `A_i` are consecutive blocks of the given sizes. Counted by
/// enumerating every subset.
pub fn placement_count(s: usize, sizes: &[usize]) -> u64 {
    let mut masks = Vec::with_capacity(sizes.len());
    let mut offset = 0;
    for &a in sizes {
        masks.push(((1u64 << a) - 1) << offset);
        offset += a;
    }
    (0u64..1 << s)
        .filter(|&t| masks.iter().all(|&a| a & !t != 0))
        .count() as u64
}

/// `p_{m,n}(S)`: the largest number of subsets of an `s`-element set avoiding
/// `m` pairwise disjoint sets of size at most `n`. Placements are taken up to
/// permutations of `S`, i.e. one representative per multiset of block sizes.
pub fn brute_p_mn(s: usize, m: usize, n: usize) -> Result<u64> {
    if s > BRUTE_CAP {
        return Err(Error::TooLarge {
            what: "avoidance ground set",
            count: s as u128,
            cap: BRUTE_CAP as u128,
        });
    }
    let mut best = 0;
    let mut sizes = Vec::with_capacity(m);
    fn go(s: usize, m: usize, n: usize, room: usize, sizes: &mut Vec<usize>, best: &mut u64) {
        if sizes.len() == m {
            *best = (*best).max(placement_count(s, sizes));
            return;
        }
        // nonincreasing sizes
        let cap = sizes.last().copied().unwrap_or(n).min(room);
        for a in 0..=cap {
            sizes.push(a);
            go(s, m, n, room - a, sizes, best);
            sizes.pop();
        }
    }
    go(s, m, n, s, &mut sizes, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    /// Every assignment of elements of S to "no block" or one of m blocks.
    fn exhaustive_p_mn(s: usize, m: usize, n: usize) -> u64 {
        let mut best = 0;
        let mut label = vec![0usize; s];
        loop {
            let mut blocks = vec![0u64; m];
            for (e, &l) in label.iter().enumerate() {
                if l > 0 {
                    blocks[l - 1] |= 1 << e;
                }
            }
            if blocks.iter().all(|b| b.count_ones() as usize <= n) {
                let count = (0u64..1 << s).filter(|&t| blocks.iter().all(|&a| a & !t != 0)).count() as u64;
                best = best.max(count);
            }
            let mut i = 0;
            while i < s {
                label[i] += 1;
                if label[i] <= m {
                    break;
                }
                label[i] = 0;
                i += 1;
            }
            if i == s {
                return best;
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(avoidance_probability(1, 1), q(1, 2));
        assert_eq!(avoidance_probability(3, 2), q(27, 64));
        assert_eq!(avoidance_probability(2, 3), q(49, 64));
    }

    #[test]
    fn brute_force_example() {
        assert_eq!(brute_p_mn(6, 3, 2).unwrap(), 27);
        assert_eq!(brute_p_mn(4, 1, 4).unwrap(), 15);
        assert!(matches!(brute_p_mn(25, 1, 1), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn canonical_placements_match_exhaustive_search() {
        for s in 1..=6 {
            for m in 1..=s {
                for n in 1..=s {
                    if (m as u64 + 1).pow(s as u32) > 200_000 {
                        continue;
                    }
                    assert_eq!(brute_p_mn(s, m, n).unwrap(), exhaustive_p_mn(s, m, n), "s={s} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn ratio_is_bounded_by_closed_form() {
        // below m*n the quotient is at most p(m, n)
        for s in 1..=8 {
            for m in 1..=4 {
                for n in 1..=3 {
                    let count = brute_p_mn(s, m, n).unwrap();
                    let ratio = BigRational::new(BigInt::from(count), BigInt::from(1u64 << s));
                    let p = avoidance_probability(m as u32, n as u32);
                    if m * n <= s {
                        assert_eq!(ratio, p);
                    } else {
                        assert!(ratio <= p);
                    }
                }
            }
        }
    }
}
