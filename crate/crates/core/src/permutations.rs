//! Permutations stored as image lists, and shuffle permutations.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{OperadError, Result};
use crate::trees::Tree;

/// A permutation of `1..=n`, stored as the list of images: `images[i-1] = sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            let i = i as usize;
            if i == 0 || i > n || seen[i] {
                return Err(OperadError::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `sigma(i)` for `1 <= i <= n`.
    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.image(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// Order-preserving on each consecutive block, with increasing images of
    /// block-first elements.
    pub fn is_shuffle_of(&self, blocks: &[usize]) -> bool {
        if blocks.iter().sum::<usize>() != self.degree() {
            return false;
        }
        let mut start = 0;
        let mut prev_first = 0;
        for &k in blocks {
            if k == 0 {
                return false;
            }
            let block = &self.images[start..start + k];
            if block.windows(2).any(|w| w[0] >= w[1]) || block[0] <= prev_first {
                return false;
            }
            prev_first = block[0];
            start += k;
        }
        true
    }
}

fn check_blocks(blocks: &[usize]) -> Result<()> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(OperadError::BadBlocks);
    }
    Ok(())
}

/// All shuffle permutations of the given block type.
///
/// The largest image goes to the last element of some block: any block of size
/// at least two, or the final block. Each choice recurses on the type with that
/// block shortened by one. Branches are taken in increasing block index.
pub fn shuffle_permutations(blocks: &[usize]) -> Result<Vec<Permutation>> {
    check_blocks(blocks)?;
    let mut out = Vec::new();
    for images in shuffles_rec(blocks) {
        out.push(Permutation { images });
    }
    Ok(out)
}

fn shuffles_rec(blocks: &[usize]) -> Vec<Vec<u32>> {
    let total: usize = blocks.iter().sum();
    if total == 0 {
        return vec![Vec::new()];
    }
    let last = blocks.len() - 1;
    let mut out = Vec::new();
    for b in 0..blocks.len() {
        if blocks[b] == 1 && b != last {
            continue;
        }
        let mut smaller = blocks.to_vec();
        smaller[b] -= 1;
        let end_of_b: usize = blocks[..=b].iter().sum::<usize>() - 1;
        if smaller[b] == 0 {
            smaller.pop();
        }
        for sub in shuffles_rec(&smaller) {
            let mut images = Vec::with_capacity(total);
            images.extend_from_slice(&sub[..end_of_b]);
            images.push(total as u32);
            images.extend_from_slice(&sub[end_of_b..]);
            out.push(images);
        }
    }
    out
}

/// The closed-form count `(k1⋯kn) / ((k1+…+kn)(k2+…+kn)⋯kn) · multinomial(k1+…+kn; k1,…,kn)`.
pub fn count_shuffle_permutations(blocks: &[usize]) -> Result<BigUint> {
    check_blocks(blocks)?;
    let total: usize = blocks.iter().sum();
    let factorial = |n: usize| (1..=n).fold(BigUint::one(), |acc, i| acc * i);
    let mut numerator = factorial(total);
    let mut denominator = BigUint::one();
    let mut suffix = total;
    for &k in blocks {
        numerator *= k;
        denominator *= factorial(k) * suffix;
        suffix -= k;
    }
    Ok(numerator / denominator)
}

/// Places `items[i-1]` at position `sigma(i)`: pair with images, sort by image, strip.
pub fn reorder_by_images<T: Clone>(sigma: &Permutation, items: &[T]) -> Result<Vec<T>> {
    if items.len() != sigma.degree() {
        return Err(OperadError::LengthMismatch {
            expected: sigma.degree(),
            found: items.len(),
        });
    }
    let mut paired: Vec<(u32, &T)> = sigma.images.iter().copied().zip(items).collect();
    paired.sort_unstable_by_key(|(img, _)| *img);
    Ok(paired.into_iter().map(|(_, t)| t.clone()).collect())
}

/// Replaces every leaf label `l` of `t` with `sigma(l)`. The result is not
/// re-canonicalized.
pub fn relabel_leaves(t: &Tree, sigma: &Permutation) -> Result<Tree> {
    if t.arity() != sigma.degree() {
        return Err(OperadError::WrongArity {
            expected: sigma.degree(),
            found: t.arity(),
        });
    }
    Ok(t.map_leaves(&|l| sigma.image(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::fixtures::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn brute_force(blocks: &[usize]) -> Vec<Permutation> {
        let n: usize = blocks.iter().sum();
        (1..=n as u32)
            .permutations(n)
            .map(|v| perm(&v))
            .filter(|p| p.is_shuffle_of(blocks))
            .collect()
    }

    fn block_types(max_total: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            for k in 1..=rest {
                cur.push(k);
                go(rest - k, cur, out);
                cur.pop();
            }
        }
        go(max_total, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn small_shuffle_lists() {
        assert_eq!(shuffle_permutations(&[1, 1]).unwrap(), vec![perm(&[1, 2])]);
        assert_eq!(
            shuffle_permutations(&[2, 1]).unwrap(),
            vec![perm(&[1, 3, 2]), perm(&[1, 2, 3])]
        );
        assert_eq!(shuffle_permutations(&[1]).unwrap(), vec![perm(&[1])]);
        assert_eq!(shuffle_permutations(&[]), Err(OperadError::BadBlocks));
        assert_eq!(shuffle_permutations(&[2, 0]), Err(OperadError::BadBlocks));
    }

    #[test]
    fn closed_form_counts() {
        let c = |b: &[usize]| count_shuffle_permutations(b).unwrap();
        assert_eq!(c(&[1, 1]), BigUint::from(1u32));
        assert_eq!(c(&[2, 2]), BigUint::from(3u32));
        assert_eq!(c(&[2, 1]), BigUint::from(2u32));
    }

    #[test]
    fn generation_matches_brute_force() {
        for blocks in block_types(6) {
            let mut got = shuffle_permutations(&blocks).unwrap();
            got.sort();
            assert_eq!(got, brute_force(&blocks), "type {blocks:?}");
        }
    }

    #[test]
    fn generation_matches_formula() {
        for blocks in block_types(8) {
            let got = shuffle_permutations(&blocks).unwrap();
            assert_eq!(BigUint::from(got.len()), count_shuffle_permutations(&blocks).unwrap());
            assert!(got.iter().all(|p| p.is_shuffle_of(&blocks)));
        }
    }

    #[test]
    fn reorder_examples() {
        let id = Permutation::identity(3);
        assert_eq!(reorder_by_images(&id, &['a', 'b', 'c']).unwrap(), vec!['a', 'b', 'c']);
        assert_eq!(reorder_by_images(&perm(&[2, 1]), &['a', 'b']).unwrap(), vec!['b', 'a']);
        assert_eq!(
            reorder_by_images(&perm(&[1, 3, 2]), &['a', 'b', 'c']).unwrap(),
            vec!['a', 'c', 'b']
        );
        assert!(reorder_by_images(&id, &['a']).is_err());
    }

    #[test]
    fn relabel_examples() {
        let c = m(leaf(1), leaf(2));
        assert_eq!(relabel_leaves(&c, &Permutation::identity(2)).unwrap(), c);
        assert_eq!(
            relabel_leaves(&m(c.clone(), leaf(3)), &perm(&[1, 3, 2])).unwrap(),
            m(m(leaf(1), leaf(3)), leaf(2))
        );
        let swapped = relabel_leaves(&c, &perm(&[2, 1])).unwrap();
        assert_eq!(swapped, m(leaf(2), leaf(1)));
        assert_eq!(swapped.is_shuffle_monomial(), Ok(false));
    }

    proptest! {
        #[test]
        fn reorder_inverts(v in (1usize..8).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())) {
            let sigma = Permutation::new(v.clone()).unwrap();
            let xs: Vec<usize> = (0..v.len()).collect();
            let there = reorder_by_images(&sigma.inverse(), &xs).unwrap();
            prop_assert_eq!(reorder_by_images(&sigma, &there).unwrap(), xs);
        }
    }
}
