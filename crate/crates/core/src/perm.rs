//! Permutations of the coordinate set I, stored as image arrays.

/// Permutation on 0..n given by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    pub images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// self after other: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &y)| i == y as usize)
    }

    /// Order as lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut acc = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize;
                len += 1;
            }
            acc = lcm_u64(acc, len);
        }
        acc
    }

    /// Packed key for sets of small-degree permutations (n <= 16).
    pub fn key(&self) -> u128 {
        debug_assert!(self.len() <= 16);
        self.images
            .iter()
            .fold(0u128, |acc, &y| (acc << 8) | y as u128)
    }
}

fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    for &y in images {
        if (y as usize) >= images.len() || seen[y as usize] {
            return false;
        }
        seen[y as usize] = true;
    }
    true
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Iterate all n! permutations of 0..n in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    LexPerms { next: Some((0..n as u16).collect()) }
}

struct LexPerms {
    next: Option<Vec<u16>>,
}

impl Iterator for LexPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        self.next = next_permutation(&mut nxt).then_some(nxt);
        Some(Permutation { images: cur })
    }
}

fn next_permutation(a: &mut [u16]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::from_images(vec![1, 2, 0]);
        let b = Permutation::from_images(vec![0, 2, 1]);
        // (a*b)(x) = a(b(x))
        assert_eq!(a.compose(&b).images, vec![1, 0, 2]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(Permutation::identity(5).order(), 1);
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(all_permutations(4).count(), 24);
        assert_eq!(all_permutations(1).count(), 1);
        let set: std::collections::HashSet<u128> =
            all_permutations(5).map(|p| p.key()).collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn fixed_points_and_order() {
        let p = Permutation::from_images(vec![1, 0, 3, 2]);
        assert!(!p.has_fixed_point());
        assert_eq!(p.order(), 2);
        let q = Permutation::from_images(vec![1, 0, 2, 3]);
        assert!(q.has_fixed_point());
    }
}
