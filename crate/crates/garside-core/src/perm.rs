//! Group elements as permutations of root indices.
//!
//! Every element of a Weyl group is determined by its action on the root
//! set, so we store elements as permutation arrays over root indices.
//! Composition reads left to right: `(x * y)` means "apply `x`, then `y`",
//! and conjugation is `x^g = g⁻¹ x g`, so that `(x^g)^h = x^(gh)`.

use once_cell::sync::OnceCell;

/// Permutation of root indices (at most 240 roots, so `u8` indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Box<[u8]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    #[inline]
    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let ginv = g.inverse();
        let mut out = vec![0u8; self.len()];
        for i in 0..self.len() {
            out[i] = g.apply(self.apply(ginv.apply(i as u8)));
        }
        Perm(out.into_boxed_slice())
    }

    pub fn pow(&self, k: i64) -> Perm {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Perm::identity(self.len());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

/// An element of the reflection group, with a lazily cached reflection length.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub perm: Perm,
    cached_length: OnceCell<u8>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}
impl Eq for GroupElement {}
impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl GroupElement {
    pub fn new(perm: Perm) -> Self {
        GroupElement { perm, cached_length: OnceCell::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Perm::identity(n))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        Self::new(self.perm.compose(&other.perm))
    }

    pub fn inverse(&self) -> GroupElement {
        Self::new(self.perm.inverse())
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        Self::new(self.perm.conjugate_by(&g.perm))
    }

    pub fn length_cache(&self) -> &OnceCell<u8> {
        &self.cached_length
    }
}
