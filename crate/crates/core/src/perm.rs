//! Permutations of `{0, …, n-1}` stored as image vectors.

use std::fmt;

/// A permutation of `{0, …, n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image vector, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images })
    }

    /// Builds the permutation swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
        }
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: usize = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a as u64, b as u64) as usize * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        // (a∘b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn from_images_rejects_repeats() {
        assert!(Perm::from_images(vec![0, 0, 2]).is_none());
        assert!(Perm::from_images(vec![0, 3]).is_none());
        assert!(Perm::from_images(vec![1, 0]).is_some());
    }
}
