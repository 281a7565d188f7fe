//! Exact root systems and reflection-group arithmetic.
//!
//! Root coordinates are stored as integers after scaling by 2, so the E8
//! half-integer roots and the reflection formula
//! `v ↦ v − (2(v,α)/(α,α))·α` stay in exact integer arithmetic throughout.

use crate::error::{Error, Result};
use crate::perm::{GroupElement, Perm};
use std::collections::HashMap;

pub const MAX_DIM: usize = 8;

/// Root vector, scaled by 2, padded with zeros beyond `dim`.
pub type RootVec = [i32; MAX_DIM];

/// Supported Cartan types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(u8), // 1 ≤ n ≤ 4
    B2,
    E8,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "A1" => Ok(CartanType::A(1)),
            "A2" => Ok(CartanType::A(2)),
            "A3" => Ok(CartanType::A(3)),
            "A4" => Ok(CartanType::A(4)),
            "B2" => Ok(CartanType::B2),
            "E8" => Ok(CartanType::E8),
            _ => Err(Error::Config(format!(
                "unsupported Cartan type {s:?} (supported: A1..A4, B2, E8)"
            ))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CartanType::A(n) => format!("A{n}"),
            CartanType::B2 => "B2".into(),
            CartanType::E8 => "E8".into(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            CartanType::A(n) => *n as usize,
            CartanType::B2 => 2,
            CartanType::E8 => 8,
        }
    }

    /// Dimension of the ambient coordinate space (A_n uses n+1 coordinates).
    pub fn dim(&self) -> usize {
        match self {
            CartanType::A(n) => *n as usize + 1,
            CartanType::B2 => 2,
            CartanType::E8 => 8,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        match self {
            CartanType::A(n) => *n as usize + 1,
            CartanType::B2 => 4,
            CartanType::E8 => 30,
        }
    }

    /// Degrees of the basic invariants, nondecreasing.
    pub fn degrees(&self) -> Vec<usize> {
        match self {
            CartanType::A(n) => (2..=*n as usize + 1).collect(),
            CartanType::B2 => vec![2, 4],
            CartanType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        }
    }
}

/// A root system together with its reflections as permutations of roots.
#[derive(Debug)]
pub struct RootSystem {
    pub cartan: CartanType,
    pub rank: usize,
    pub dim: usize,
    pub coxeter_number: usize,
    /// All roots, sorted lexicographically by coordinates.
    pub roots: Vec<RootVec>,
    /// `neg_of[i]` is the index of `-roots[i]`.
    pub neg_of: Vec<u8>,
    /// Indices of the simple roots, in diagram order.
    pub simple_indices: Vec<u8>,
    /// One reflection per positive root (the lexicographically larger of
    /// each ±pair), sorted by root coordinates.
    pub reflections: Vec<GroupElement>,
    /// Defining root index for each reflection.
    pub reflection_root: Vec<u8>,
    index: HashMap<RootVec, u8>,
}

fn dot(a: &RootVec, b: &RootVec) -> i64 {
    (0..MAX_DIM).map(|i| a[i] as i64 * b[i] as i64).sum()
}

fn reflect(v: &RootVec, alpha: &RootVec) -> RootVec {
    let num = 2 * dot(v, alpha);
    let den = dot(alpha, alpha);
    debug_assert!(num % den == 0, "non-crystallographic reflection");
    let coef = num / den;
    let mut out = *v;
    for i in 0..MAX_DIM {
        out[i] -= (coef * alpha[i] as i64) as i32;
    }
    out
}

fn raw_roots(cartan: CartanType) -> (Vec<RootVec>, Vec<RootVec>) {
    let mut roots = Vec::new();
    let mut simples = Vec::new();
    let mk = |coords: &[i32]| -> RootVec {
        let mut v = [0i32; MAX_DIM];
        v[..coords.len()].copy_from_slice(coords);
        v
    };
    match cartan {
        CartanType::A(n) => {
            let n = n as usize;
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut v = [0i32; MAX_DIM];
                        v[i] = 2;
                        v[j] = -2;
                        roots.push(v);
                    }
                }
            }
            for i in 0..n {
                let mut v = [0i32; MAX_DIM];
                v[i] = 2;
                v[i + 1] = -2;
                simples.push(v);
            }
        }
        CartanType::B2 => {
            for s in [2, -2] {
                roots.push(mk(&[s, 0]));
                roots.push(mk(&[0, s]));
            }
            for s in [2, -2] {
                for t in [2, -2] {
                    roots.push(mk(&[s, t]));
                }
            }
            simples.push(mk(&[2, -2]));
            simples.push(mk(&[0, 2]));
        }
        CartanType::E8 => {
            // Integer roots ±2eᵢ ± 2eⱼ.
            for i in 0..8 {
                for j in (i + 1)..8 {
                    for s in [2, -2] {
                        for t in [2, -2] {
                            let mut v = [0i32; MAX_DIM];
                            v[i] = s;
                            v[j] = t;
                            roots.push(v);
                        }
                    }
                }
            }
            // Half-integer roots ½(±e₁ ± … ± e₈) with an even number of
            // minus signs; scaled by 2 these are (±1)⁸.
            for mask in 0u32..256 {
                if mask.count_ones() % 2 == 0 {
                    let mut v = [0i32; MAX_DIM];
                    for i in 0..8 {
                        v[i] = if mask >> i & 1 == 1 { -1 } else { 1 };
                    }
                    roots.push(v);
                }
            }
            // Bourbaki simple roots, scaled by 2.
            simples.push(mk(&[1, -1, -1, -1, -1, -1, -1, 1]));
            simples.push(mk(&[2, 2, 0, 0, 0, 0, 0, 0]));
            simples.push(mk(&[-2, 2, 0, 0, 0, 0, 0, 0]));
            simples.push(mk(&[0, -2, 2, 0, 0, 0, 0, 0]));
            simples.push(mk(&[0, 0, -2, 2, 0, 0, 0, 0]));
            simples.push(mk(&[0, 0, 0, -2, 2, 0, 0, 0]));
            simples.push(mk(&[0, 0, 0, 0, -2, 2, 0, 0]));
            simples.push(mk(&[0, 0, 0, 0, 0, -2, 2, 0]));
        }
    }
    (roots, simples)
}

/// Build the root system for a supported Cartan type.
///
/// Roots are sorted lexicographically by coordinates, and the reflections
/// are enumerated in the order of their (lexicographically positive) roots,
/// so the whole structure is deterministic.
pub fn build_root_system(cartan: CartanType) -> Result<RootSystem> {
    let (mut roots, simples) = raw_roots(cartan);
    roots.sort_unstable();
    roots.dedup();
    let index: HashMap<RootVec, u8> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (*r, i as u8))
        .collect();

    let neg = |v: &RootVec| -> RootVec {
        let mut out = [0i32; MAX_DIM];
        for i in 0..MAX_DIM {
            out[i] = -v[i];
        }
        out
    };
    let neg_of: Vec<u8> = roots.iter().map(|r| index[&neg(r)]).collect();

    let mut reflections = Vec::new();
    let mut reflection_root = Vec::new();
    for (i, alpha) in roots.iter().enumerate() {
        if *alpha <= neg(alpha) {
            continue; // keep the lexicographically larger representative
        }
        let perm: Vec<u8> = roots
            .iter()
            .map(|r| {
                let img = reflect(r, alpha);
                *index.get(&img).unwrap_or_else(|| {
                    panic!("root system not closed under reflection")
                })
            })
            .collect();
        reflections.push(GroupElement::new(Perm(perm.into_boxed_slice())));
        reflection_root.push(i as u8);
    }

    let simple_indices: Vec<u8> = simples
        .iter()
        .map(|s| {
            *index
                .get(s)
                .expect("simple root missing from enumerated roots")
        })
        .collect();

    let rs = RootSystem {
        cartan,
        rank: cartan.rank(),
        dim: cartan.dim(),
        coxeter_number: cartan.coxeter_number(),
        roots,
        neg_of,
        simple_indices,
        reflections,
        reflection_root,
        index,
    };
    debug_assert_eq!(rs.reflections.len() * 2, rs.roots.len());
    Ok(rs)
}

impl RootSystem {
    pub fn root_index(&self, v: &RootVec) -> Option<u8> {
        self.index.get(v).copied()
    }

    /// The reflection through the hyperplane of the given root.
    pub fn reflection_of_root(&self, root: u8) -> &GroupElement {
        let pos = std::cmp::max(root, self.neg_of[root as usize]);
        let k = self
            .reflection_root
            .binary_search(&pos)
            .expect("reflection table out of order");
        &self.reflections[k]
    }

    /// Product of the simple reflections in diagram order.
    ///
    /// The artifact's canonical Coxeter element; every dataset is built
    /// relative to this choice.
    pub fn coxeter_element(&self) -> GroupElement {
        let mut c = GroupElement::identity(self.roots.len());
        for &si in &self.simple_indices {
            c = c.compose(self.reflection_of_root(si));
        }
        c
    }

    /// Reflection length as the codimension of the fixed space.
    ///
    /// Equals the minimal number of reflections whose product is `w`
    /// (Carter's lemma); computed as the rank of `w − 1` on the span of the
    /// simple roots, in exact integer arithmetic.
    pub fn reflection_length(&self, w: &GroupElement) -> usize {
        if let Some(&l) = w.length_cache().get() {
            return l as usize;
        }
        let l = self.moved_rank(&w.perm) as u8;
        let _ = w.length_cache().set(l);
        l as usize
    }

    /// Rank of `w − 1`, from the images of the simple roots.
    pub fn moved_rank(&self, w: &Perm) -> usize {
        let mut rows: Vec<[i64; MAX_DIM]> = Vec::with_capacity(self.rank);
        for &si in &self.simple_indices {
            let img = self.roots[w.apply(si) as usize];
            let src = self.roots[si as usize];
            let mut row = [0i64; MAX_DIM];
            let mut nonzero = false;
            for k in 0..MAX_DIM {
                row[k] = img[k] as i64 - src[k] as i64;
                nonzero |= row[k] != 0;
            }
            if nonzero {
                rows.push(row);
            }
        }
        rank_slice(&mut rows)
    }

    /// Rank of the span of a set of roots (by index).
    pub fn root_span_rank(&self, roots: impl Iterator<Item = u8>) -> usize {
        let mut rows: Vec<[i64; MAX_DIM]> = roots
            .map(|r| {
                let mut row = [0i64; MAX_DIM];
                for k in 0..MAX_DIM {
                    row[k] = self.roots[r as usize][k] as i64;
                }
                row
            })
            .collect();
        rank_slice(&mut rows)
    }
}

/// Bareiss fraction-free elimination; intermediate entries are minors of
/// the input, so they stay well inside `i64` for root data.
pub fn rank_slice(rows: &mut [[i64; MAX_DIM]]) -> usize {
    let mut rank = 0;
    let mut col = 0;
    let mut prev = 1i64;
    while rank < rows.len() && col < MAX_DIM {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let pv = rows[rank][col];
        for r in (rank + 1)..rows.len() {
            let m = rows[r][col];
            for k in col..MAX_DIM {
                rows[r][k] = (rows[r][k] * pv - rows[rank][k] * m) / prev;
            }
        }
        prev = pv;
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn root_counts() {
        for (t, nroots, nrefl) in [
            (CartanType::A(1), 2, 1),
            (CartanType::A(2), 6, 3),
            (CartanType::A(3), 12, 6),
            (CartanType::A(4), 20, 10),
            (CartanType::B2, 8, 4),
            (CartanType::E8, 240, 120),
        ] {
            let rs = build_root_system(t).unwrap();
            assert_eq!(rs.roots.len(), nroots, "{t:?}");
            assert_eq!(rs.reflections.len(), nrefl, "{t:?}");
        }
    }

    #[test]
    fn closure_from_simples_recovers_all_roots() {
        for t in [CartanType::A(3), CartanType::B2, CartanType::E8] {
            let rs = build_root_system(t).unwrap();
            let mut set: BTreeSet<RootVec> = rs
                .simple_indices
                .iter()
                .map(|&i| rs.roots[i as usize])
                .collect();
            loop {
                let snapshot: Vec<RootVec> = set.iter().copied().collect();
                let before = set.len();
                for v in &snapshot {
                    for a in &snapshot {
                        set.insert(reflect(v, a));
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            let all: BTreeSet<RootVec> = rs.roots.iter().copied().collect();
            assert_eq!(set, all, "{t:?}");
        }
    }

    #[test]
    fn coxeter_element_order_and_length() {
        for t in [
            CartanType::A(2),
            CartanType::A(3),
            CartanType::B2,
            CartanType::E8,
        ] {
            let rs = build_root_system(t).unwrap();
            let c = rs.coxeter_element();
            assert_eq!(c.perm.order(), rs.coxeter_number, "{t:?}");
            assert_eq!(rs.reflection_length(&c), rs.rank, "{t:?}");
        }
    }

    #[test]
    fn reflection_lengths_via_fixed_space() {
        let rs = build_root_system(CartanType::A(2)).unwrap();
        assert_eq!(rs.reflection_length(&GroupElement::identity(6)), 0);
        for r in &rs.reflections {
            assert_eq!(rs.reflection_length(r), 1);
        }
    }

    /// Fixed-space codimension equals genuine word length over reflections,
    /// exhaustively on small groups.
    #[test]
    fn length_matches_word_length_on_small_groups() {
        for t in [CartanType::A(2), CartanType::A(3), CartanType::B2] {
            let rs = build_root_system(t).unwrap();
            // Enumerate the whole group by BFS over reflection words.
            let mut dist: HashMap<Perm, usize> = HashMap::new();
            let id = Perm::identity(rs.roots.len());
            dist.insert(id.clone(), 0);
            let mut frontier = vec![id];
            let mut d = 0;
            while !frontier.is_empty() {
                d += 1;
                let mut next = Vec::new();
                for w in &frontier {
                    for r in &rs.reflections {
                        let wr = w.compose(&r.perm);
                        if !dist.contains_key(&wr) {
                            dist.insert(wr.clone(), d);
                            next.push(wr);
                        }
                    }
                }
                frontier = next;
            }
            for (p, word_len) in &dist {
                let w = GroupElement::new(p.clone());
                assert_eq!(rs.reflection_length(&w), *word_len);
            }
        }
    }
}
