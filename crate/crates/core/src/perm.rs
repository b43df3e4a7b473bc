//! Permutations of the four vertices of a tetrahedron.

use std::fmt;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from an image array, rejecting non-bijections.
    pub fn from_images(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4u8 {
            out[self.0[i as usize] as usize] = i;
        }
        Perm4(out)
    }

    /// `self` after `first`: i -> self(first(i)).
    pub fn compose(self, first: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = self.0[first.0[i] as usize];
        }
        Perm4(out)
    }

    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24u8).map(|mut k| {
            let mut pool: Vec<u8> = vec![0, 1, 2, 3];
            let mut out = [0u8; 4];
            for (slot, radix) in [6u8, 2, 1, 1].iter().enumerate() {
                let idx = (k / radix) as usize;
                k %= radix;
                out[slot] = pool.remove(idx);
            }
            Perm4(out)
        })
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// The three vertices other than `f`, ascending.
pub fn others(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Index of the edge {i, j} in the order 01, 02, 03, 12, 13, 23.
pub fn edge_index(i: u8, j: u8) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {i}{j}"),
    }
}

pub const EDGE_VERTICES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Opposite-edge pair carrying each edge: {01,23} -> 0, {02,13} -> 1, {03,12} -> 2.
pub const EDGE_PAIR: [usize; 6] = [0, 1, 2, 2, 1, 0];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_perms_distinct_and_bijective() {
        let perms: Vec<_> = Perm4::all().collect();
        assert_eq!(perms.len(), 24);
        let mut sorted = perms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        for p in perms {
            assert!(Perm4::from_images(p.0).is_some());
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
        }
    }

    #[test]
    fn opposite_edges_share_pair() {
        for (e, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
            let rest: Vec<u8> = (0..4).filter(|&v| v != i && v != j).collect();
            assert_eq!(EDGE_PAIR[e], EDGE_PAIR[edge_index(rest[0], rest[1])]);
        }
    }
}
