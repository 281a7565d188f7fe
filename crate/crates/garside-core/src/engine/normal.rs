//! Positive morphisms in left-weighted normal form, and the prefix/suffix
//! lattice operations on them.
//!
//! A positive morphism is stored as `Δ(u)^k · s₁ ⋯ s_r` with proper simple
//! factors and every adjacent pair left-weighted (`sᵢ sᵢ₊₁ ∧ Δ = sᵢ`).
//! Local left-weighting of a pair `(a,b)(d,e)` extracts `g = b ∧ d`:
//! the pair slides to `(ag, g⁻¹b) · (g⁻¹d, e·g^{c^η})`, which also floats
//! Δ-factors to the front, since `g = b` whenever the right factor is Δ.

use crate::error::{Error, Result};
use crate::springer::{GroupoidData, ObjId, SimpleId};

/// A positive morphism in left-weighted normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub src: ObjId,
    pub delta: u32,
    pub factors: Vec<SimpleId>,
}

impl NormalForm {
    pub fn identity(u: ObjId) -> Self {
        NormalForm { src: u, delta: 0, factors: Vec::new() }
    }

    pub fn delta_power(g: &GroupoidData, u: ObjId, k: u32) -> Self {
        let _ = g;
        NormalForm { src: u, delta: k, factors: Vec::new() }
    }

    pub fn from_simple(g: &GroupoidData, s: SimpleId) -> Self {
        normalize(g, g.source(s), [s])
    }

    pub fn from_word(
        g: &GroupoidData,
        src: ObjId,
        word: impl IntoIterator<Item = SimpleId>,
    ) -> Result<Self> {
        let word: Vec<SimpleId> = word.into_iter().collect();
        let mut at = src;
        for &s in &word {
            if g.source(s) != at {
                return Err(Error::Contract(format!(
                    "word is not composable at factor {:?}: have {:?}, expected {:?}",
                    s,
                    g.source(s),
                    at
                )));
            }
            at = g.target(s);
        }
        Ok(normalize(g, src, word))
    }

    pub fn is_trivial(&self) -> bool {
        self.delta == 0 && self.factors.is_empty()
    }

    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inf(&self) -> i64 {
        self.delta as i64
    }

    pub fn sup(&self) -> i64 {
        self.delta as i64 + self.factors.len() as i64
    }

    /// Total length (sum of simple lengths, Δ counting as `ℓ(u)`).
    pub fn len(&self, g: &GroupoidData) -> usize {
        let obj_len = g.lattice.rank() / g.params.p;
        self.delta as usize * obj_len
            + self.factors.iter().map(|&s| g.simple_len(s)).sum::<usize>()
    }

    pub fn target(&self, g: &GroupoidData) -> ObjId {
        let mut at = g.phi_object_pow(self.src, self.delta as i64);
        for &s in &self.factors {
            at = g.target(s);
        }
        at
    }

    /// The factor word with Δ's materialized.
    pub fn word(&self, g: &GroupoidData) -> Vec<SimpleId> {
        let mut out = Vec::with_capacity(self.delta as usize + self.factors.len());
        let mut at = self.src;
        for _ in 0..self.delta {
            out.push(g.delta(at));
            at = g.phi_object(at);
        }
        out.extend_from_slice(&self.factors);
        out
    }

    /// First normal-form factor (`Δ` when `inf > 0`, identity when trivial).
    pub fn head(&self, g: &GroupoidData) -> SimpleId {
        if self.delta > 0 {
            g.delta(self.src)
        } else if let Some(&s) = self.factors.first() {
            s
        } else {
            g.identity(self.src)
        }
    }

    pub fn compose(&self, g: &GroupoidData, other: &NormalForm) -> Result<NormalForm> {
        if self.target(g) != other.src {
            return Err(Error::Contract("compose: target/source mismatch".into()));
        }
        let mut w = self.word(g);
        w.extend(other.word(g));
        Ok(normalize(g, self.src, w))
    }

    /// Apply the Garside automorphism φ factor by factor.
    pub fn phi_image(&self, g: &GroupoidData) -> NormalForm {
        NormalForm {
            src: g.phi_object(self.src),
            delta: self.delta,
            factors: self.factors.iter().map(|&s| g.phi(s)).collect(),
        }
    }
}

/// One left-weighting step on a composable pair; `None` when already
/// left-weighted.
pub fn slide(g: &GroupoidData, s: SimpleId, t: SimpleId) -> Option<(SimpleId, SimpleId)> {
    debug_assert_eq!(g.target(s), g.source(t));
    let (ss, tt) = (g.simple(s), g.simple(t));
    let m = g.lattice.meet(ss.b, tt.a);
    if m == 0 {
        return None;
    }
    let lat = &g.lattice;
    let s2 = g
        .simple_of_pair(lat.mul(ss.a, m).expect("ag"), lat.left_div(m, ss.b).expect("g⁻¹b"))
        .expect("slid left factor is simple");
    let t2 = g
        .simple_of_pair(
            lat.left_div(m, tt.a).expect("g⁻¹d"),
            lat.mul(tt.b, g.conj_eta(m)).expect("e·g^{c^η}"),
        )
        .expect("slid right factor is simple");
    Some((s2, t2))
}

/// Left-weighted normal form of a composable word.
pub fn normalize(
    g: &GroupoidData,
    src: ObjId,
    word: impl IntoIterator<Item = SimpleId>,
) -> NormalForm {
    let mut factors: Vec<SimpleId> =
        word.into_iter().filter(|&s| !g.is_identity_simple(s)).collect();
    let mut i = 0;
    while factors.len() > 1 && i + 1 < factors.len() {
        match slide(g, factors[i], factors[i + 1]) {
            None => i += 1,
            Some((s2, t2)) => {
                factors[i] = s2;
                if g.is_identity_simple(t2) {
                    factors.remove(i + 1);
                } else {
                    factors[i + 1] = t2;
                }
                i = i.saturating_sub(1);
            }
        }
    }
    let mut delta = 0;
    let mut at = src;
    let mut start = 0;
    while start < factors.len() && factors[start] == g.delta(at) {
        delta += 1;
        at = g.phi_object(at);
        start += 1;
    }
    factors.drain(..start);
    debug_assert!(factors.iter().all(|&s| !g.is_delta_simple(s)));
    NormalForm { src, delta, factors }
}

/// `d⁻¹ · x` for a simple prefix `d` (word reversing).
pub fn divide_by_simple(g: &GroupoidData, d: SimpleId, x: &NormalForm) -> Result<NormalForm> {
    if g.source(d) != x.src {
        return Err(Error::Contract("divide_by_simple: source mismatch".into()));
    }
    let mut carry = d;
    let mut out = Vec::new();
    for s in x.word(g) {
        if g.is_identity_simple(carry) {
            out.push(s);
            continue;
        }
        let j = g.simple_join(carry, s)?;
        out.push(g.simple_left_div(carry, j)?);
        carry = g.simple_left_div(s, j)?;
    }
    if !g.is_identity_simple(carry) {
        return Err(Error::Contract("divide_by_simple: not a prefix".into()));
    }
    Ok(normalize(g, g.target(d), out))
}

/// `d⁻¹ · x` for a positive prefix `d`.
pub fn divide_prefix(g: &GroupoidData, d: &NormalForm, x: &NormalForm) -> Result<NormalForm> {
    if d.src != x.src {
        return Err(Error::Contract("divide_prefix: source mismatch".into()));
    }
    let mut cur = x.clone();
    for s in d.word(g) {
        cur = divide_by_simple(g, s, &cur)?;
    }
    Ok(cur)
}

pub fn prefix_divides(g: &GroupoidData, d: &NormalForm, x: &NormalForm) -> bool {
    d.src == x.src && divide_prefix(g, d, x).is_ok()
}

/// Greatest common prefix.
pub fn prefix_meet(g: &GroupoidData, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    if a.src != b.src {
        return Err(Error::Contract("prefix_meet: source mismatch".into()));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    let mut acc = Vec::new();
    loop {
        let m = g.simple_meet(x.head(g), y.head(g))?;
        if g.is_identity_simple(m) {
            break;
        }
        acc.push(m);
        x = divide_by_simple(g, m, &x)?;
        y = divide_by_simple(g, m, &y)?;
    }
    Ok(normalize(g, a.src, acc))
}

/// Right complements: returns `(a\b, b\a)` with `a·(a\b) = b·(b\a) = a∨b`.
pub fn right_complements(
    g: &GroupoidData,
    a: &NormalForm,
    b: &NormalForm,
) -> Result<(NormalForm, NormalForm)> {
    if a.src != b.src {
        return Err(Error::Contract("right_complements: source mismatch".into()));
    }
    let mut top: Vec<SimpleId> = b.word(g);
    let mut rights: Vec<SimpleId> = Vec::new();
    for s in a.word(g) {
        let mut cur = s;
        for t in top.iter_mut() {
            let j = g.simple_join(cur, *t)?;
            let new_t = g.simple_left_div(cur, j)?;
            let new_cur = g.simple_left_div(*t, j)?;
            *t = new_t;
            cur = new_cur;
        }
        rights.push(cur);
    }
    Ok((normalize(g, a.target(g), top), normalize(g, b.target(g), rights)))
}

/// Least common right multiple.
pub fn prefix_join(g: &GroupoidData, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    let (ab, _) = right_complements(g, a, b)?;
    a.compose(g, &ab)
}

/// One right-weighting step (the mirror of `slide`); `None` when the pair
/// already has a maximal simple tail.
fn rw_slide(g: &GroupoidData, s: SimpleId, t: SimpleId) -> Option<(SimpleId, SimpleId)> {
    let t_partner = g.simple_left_complement_partner(t);
    let m = g
        .simple_suffix_meet(s, t_partner)
        .expect("s and the partner of t share a target");
    if g.is_identity_simple(m) {
        return None;
    }
    let s2 = g.simple_right_div(s, m).expect("m is a suffix of s");
    let t2 = g
        .compose_simples(m, t)
        .expect("m·t is composable")
        .expect("m divides the partner, so m·t is simple");
    Some((s2, t2))
}

/// Maximal simple suffix of a positive morphism.
pub fn suffix_head(g: &GroupoidData, x: &NormalForm) -> SimpleId {
    if x.is_trivial() {
        return g.identity(x.src);
    }
    if x.delta > 0 {
        // inf ≥ 1 means Δ is a suffix, and Δ is the top of the suffix order.
        let tgt = x.target(g);
        return g.delta(g.phi_object_inv(tgt));
    }
    let mut w = x.factors.clone();
    let mut i = 0;
    while w.len() > 1 && i + 1 < w.len() {
        match rw_slide(g, w[i], w[i + 1]) {
            None => i += 1,
            Some((s2, t2)) => {
                w[i + 1] = t2;
                if g.is_identity_simple(s2) {
                    w.remove(i);
                } else {
                    w[i] = s2;
                }
                i = i.saturating_sub(1);
            }
        }
    }
    *w.last().expect("nontrivial morphism has a last factor")
}

/// `x · d⁻¹` for a simple suffix `d`.
pub fn divide_suffix_by_simple(
    g: &GroupoidData,
    x: &NormalForm,
    d: SimpleId,
) -> Result<NormalForm> {
    if g.target(d) != x.target(g) {
        return Err(Error::Contract("divide_suffix_by_simple: target mismatch".into()));
    }
    let mut carry = d;
    let mut out = std::collections::VecDeque::new();
    for s in x.word(g).into_iter().rev() {
        if g.is_identity_simple(carry) {
            out.push_front(s);
            continue;
        }
        let j = g.simple_suffix_join(s, carry)?;
        out.push_front(g.simple_right_div(j, carry)?);
        carry = g.simple_right_div(j, s)?;
    }
    if !g.is_identity_simple(carry) {
        return Err(Error::Contract("divide_suffix_by_simple: not a suffix".into()));
    }
    Ok(normalize(g, x.src, out))
}

/// `x · d⁻¹` for a positive suffix `d`.
pub fn divide_suffix(g: &GroupoidData, x: &NormalForm, d: &NormalForm) -> Result<NormalForm> {
    if d.target(g) != x.target(g) {
        return Err(Error::Contract("divide_suffix: target mismatch".into()));
    }
    let mut cur = x.clone();
    for s in d.word(g).into_iter().rev() {
        cur = divide_suffix_by_simple(g, &cur, s)?;
    }
    Ok(cur)
}

pub fn suffix_divides(g: &GroupoidData, d: &NormalForm, x: &NormalForm) -> bool {
    d.target(g) == x.target(g) && divide_suffix(g, x, d).is_ok()
}

/// Left cofactors: `(A, B)` with `A·a = B·b = a ∨^↰ b` (least common left
/// multiple of morphisms sharing a target).
pub fn left_cofactors(
    g: &GroupoidData,
    a: &NormalForm,
    b: &NormalForm,
) -> Result<(NormalForm, NormalForm)> {
    if a.target(g) != b.target(g) {
        return Err(Error::Contract("left_cofactors: target mismatch".into()));
    }
    let mut top: Vec<SimpleId> = b.word(g).into_iter().rev().collect();
    let mut rights: Vec<SimpleId> = Vec::new();
    for s in a.word(g).into_iter().rev() {
        let mut cur = s;
        for t in top.iter_mut() {
            let j = g.simple_suffix_join(cur, *t)?;
            let new_t = g.simple_right_div(j, cur)?;
            let new_cur = g.simple_right_div(j, *t)?;
            *t = new_t;
            cur = new_cur;
        }
        rights.push(cur);
    }
    let a_cof = {
        top.reverse();
        let src = if let Some(&first) = top.first() {
            g.source(first)
        } else {
            a.src
        };
        normalize(g, src, top)
    };
    let b_cof = {
        rights.reverse();
        let src = if let Some(&first) = rights.first() {
            g.source(first)
        } else {
            b.src
        };
        normalize(g, src, rights)
    };
    debug_assert_eq!(
        a_cof.compose(g, a).unwrap(),
        b_cof.compose(g, b).unwrap(),
        "left cofactors must produce a common left multiple"
    );
    Ok((a_cof, b_cof))
}

/// Least common left multiple (suffix join).
pub fn suffix_join(g: &GroupoidData, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    let (a_cof, _) = left_cofactors(g, a, b)?;
    a_cof.compose(g, a)
}

/// Greatest common suffix.
pub fn suffix_meet(g: &GroupoidData, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    if a.target(g) != b.target(g) {
        return Err(Error::Contract("suffix_meet: target mismatch".into()));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    let mut acc = std::collections::VecDeque::new();
    loop {
        let m = g.simple_suffix_meet(suffix_head(g, &x), suffix_head(g, &y))?;
        if g.is_identity_simple(m) {
            break;
        }
        acc.push_front(m);
        x = divide_suffix_by_simple(g, &x, m)?;
        y = divide_suffix_by_simple(g, &y, m)?;
    }
    let src = acc.front().map(|&s| g.source(s)).unwrap_or(a.target(g));
    Ok(normalize(g, src, acc))
}
