//! Koszul signs: every time two odd factors pass each other the sign flips.

use crate::alphabet::Parity;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Number of odd-odd inversions of `order` mod 2, where `order[k]` is the
/// original position of the factor placed at position `k`.
pub fn permutation_parity(parities: &[Parity], order: &[usize]) -> Result<bool> {
    let n = parities.len();
    if order.len() != n {
        return Err(Error::InvalidPermutation);
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPermutation);
        }
    }
    let mut odd = false;
    for a in 0..n {
        for b in a + 1..n {
            let (i, j) = (order[a], order[b]);
            if i > j && parities[i].times(parities[j]) {
                odd = !odd;
            }
        }
    }
    Ok(odd)
}

pub fn permutation_sign(parities: &[Parity], order: &[usize]) -> Result<Scalar> {
    Ok(scalar::sign(permutation_parity(parities, order)?))
}

/// Sign of interleaving `left ++ right` into `merged_order`, which must keep
/// each block's internal order.
pub fn koszul_merge_sign(left: &[Parity], right: &[Parity], merged_order: &[usize]) -> Result<Scalar> {
    let n = left.len();
    let mut next_left = 0;
    let mut next_right = n;
    for &i in merged_order {
        if i < n && i == next_left {
            next_left += 1;
        } else if i >= n && i == next_right {
            next_right += 1;
        } else {
            return Err(if i < n + right.len() {
                Error::NotAShuffle
            } else {
                Error::InvalidPermutation
            });
        }
    }
    let all: Vec<Parity> = left.iter().chain(right).copied().collect();
    permutation_sign(&all, merged_order)
}

/// Stable insertion sort; returns whether an odd number of odd-odd
/// transpositions was performed.
pub fn sort_with_sign<T: Ord>(items: &mut [T], parity: impl Fn(&T) -> Parity) -> bool {
    let mut odd = false;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            if parity(&items[j - 1]).times(parity(&items[j])) {
                odd = !odd;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use Parity::{Even as E, Odd as O};

    /// Performs the reordering by adjacent swaps and counts odd-odd swaps.
    fn bubble_oracle(parities: &[Parity], order: &[usize]) -> Scalar {
        let target: Vec<usize> = {
            let mut pos = vec![0; order.len()];
            for (k, &i) in order.iter().enumerate() {
                pos[i] = k;
            }
            pos
        };
        let mut cur: Vec<usize> = (0..parities.len()).collect();
        let mut flips = 0;
        loop {
            let mut swapped = false;
            for k in 0..cur.len().saturating_sub(1) {
                if target[cur[k]] > target[cur[k + 1]] {
                    if parities[cur[k]].is_odd() && parities[cur[k + 1]].is_odd() {
                        flips += 1;
                    }
                    cur.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        scalar::sign(flips % 2 == 1)
    }

    #[test]
    fn merge_examples() {
        assert_eq!(koszul_merge_sign(&[E], &[E], &[1, 0]).unwrap(), int(1));
        assert_eq!(koszul_merge_sign(&[O], &[O], &[1, 0]).unwrap(), int(-1));
        // a odd passes b odd, c even
        let s = koszul_merge_sign(&[O], &[O, E], &[1, 0, 2]).unwrap();
        assert_eq!(s, bubble_oracle(&[O, O, E], &[1, 0, 2]));
        assert_eq!(s, int(-1));
    }

    #[test]
    fn rejects_non_shuffle() {
        assert_eq!(koszul_merge_sign(&[O, O], &[E], &[1, 0, 2]), Err(Error::NotAShuffle));
        assert_eq!(koszul_merge_sign(&[O], &[E], &[0, 0]), Err(Error::NotAShuffle));
    }

    fn all_parities(n: usize) -> Vec<Vec<Parity>> {
        (0..1u32 << n)
            .map(|m| (0..n).map(|i| Parity::from_bit(((m >> i) & 1) as u8)).collect())
            .collect()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn matches_bubble_sort_oracle() {
        for n in 0..=5 {
            for ps in all_parities(n) {
                for perm in permutations(n) {
                    assert_eq!(permutation_sign(&ps, &perm).unwrap(), bubble_oracle(&ps, &perm));
                }
            }
        }
    }

    #[test]
    fn three_block_merges_associate() {
        // Factors carry sort keys given by `perm`; merging ((A B) C) and
        // (A (B C)) must produce the same total sign.
        for n in 0..=6 {
            for ps in all_parities(n) {
                for perm in permutations(n) {
                    let key = |i: usize| (perm[i], i);
                    for cut1 in 0..=n {
                        for cut2 in cut1..=n {
                            let item = |i: usize| (key(i), ps[i]);
                            let par = |x: &((usize, usize), Parity)| x.1;
                            let a: Vec<_> = (0..cut1).map(item).collect();
                            let b: Vec<_> = (cut1..cut2).map(item).collect();
                            let c: Vec<_> = (cut2..n).map(item).collect();
                            let mut ab: Vec<_> = a.iter().chain(&b).copied().collect();
                            let s1 = sort_with_sign(&mut ab, par);
                            let mut abc: Vec<_> = ab.into_iter().chain(c.iter().copied()).collect();
                            let s2 = sort_with_sign(&mut abc, par);
                            let mut bc: Vec<_> = b.iter().chain(&c).copied().collect();
                            let t1 = sort_with_sign(&mut bc, par);
                            let mut abc2: Vec<_> = a.iter().copied().chain(bc).collect();
                            let t2 = sort_with_sign(&mut abc2, par);
                            assert_eq!(s1 ^ s2, t1 ^ t2);
                            assert_eq!(abc, abc2);
                        }
                    }
                }
            }
        }
    }
}
