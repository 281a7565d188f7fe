//! The combinatorial presentation of a Springer category over `[1,c]`:
//! objects `O`, simples `S`, relations `Rel`, the Garside map `Δ(u) = (u,1)`
//! and the automorphism `φ`.
//!
//! With `p = d/(d∧h)`, `q = h/(d∧h)` and the twist exponent `η`:
//!
//! * `O = {u ∈ [1,c]^q : p·ℓ(u) = n and u·u^{c^η}⋯u^{c^{(p−1)η}} = c}`,
//! * `S = {(a,b) ∈ ([1,c]^q)² : ab ∈ O length-additively}`,
//! * `Rel` are the triples `(x,y,z)` with `xyz ∈ O` length-additively,
//!   inducing `(x,yz)(y,zx^{c^η}) = (xy,z)`.
//!
//! A simple `(a,b)` has source `ab` and target `b·a^{c^η}`; it is a prefix
//! of `(d,e)` at the same source exactly when `a ≼ d` in the interval.

use crate::error::{Error, Result};
use crate::interval::{ElemIdx, IntervalLattice};
use std::collections::HashMap;

/// Regular-element parameters driving the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularParams {
    pub d: usize,
    pub h: usize,
    pub p: usize,
    pub q: usize,
    /// Twist exponent: conjugation by `c^η` relates consecutive entries of
    /// a `τ^q`-fixed `p`-tuple. Determined by `p·η ≡ 1 (mod q)`, up to the
    /// powers of `c` that act trivially by conjugation.
    pub eta: i64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RegularParams {
    /// Canonical parameters for a regular number `d`, with
    /// `η = p⁻¹ mod q` (smallest positive representative).
    pub fn new(d: usize, h: usize) -> Result<RegularParams> {
        if d == 0 || h == 0 || d > h {
            return Err(Error::Config(format!("invalid regular number d={d} for h={h}")));
        }
        let g = gcd(d, h);
        let (p, q) = (d / g, h / g);
        let eta = (1..=q as i64)
            .find(|&e| (e * p as i64).rem_euclid(q as i64) == 1 % q as i64)
            .expect("p is invertible mod q");
        Ok(RegularParams { d, h, p, q, eta })
    }

    /// Same, with an explicit twist exponent (must be ≡ p⁻¹ mod q).
    pub fn with_eta(d: usize, h: usize, eta: i64) -> Result<RegularParams> {
        let base = Self::new(d, h)?;
        if (eta - base.eta).rem_euclid(base.q as i64) != 0 {
            return Err(Error::Config(format!(
                "eta={eta} is not congruent to p⁻¹={} mod q={}",
                base.eta, base.q
            )));
        }
        Ok(RegularParams { eta, ..base })
    }

    /// The congruence `q·η ≡ 1 (mod p)` after reducing `η` modulo `q`.
    pub fn eta_congruence_holds(&self) -> bool {
        if self.p == 1 {
            return true;
        }
        [self.eta, self.eta - self.q as i64, self.eta + self.q as i64]
            .iter()
            .any(|&e| (self.q as i64 * e).rem_euclid(self.p as i64) == 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleId(pub u32);

/// A simple morphism `(a,b)`: source `ab`, target `b·a^{c^η}`, length `ℓ(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simple {
    pub a: ElemIdx,
    pub b: ElemIdx,
    pub source: ObjId,
    pub target: ObjId,
}

/// The Springer presentation with its lookup tables.
pub struct GroupoidData {
    pub lattice: IntervalLattice,
    pub params: RegularParams,
    /// Interval index of each object, in canonical order.
    pub objects: Vec<ElemIdx>,
    object_of_elem: HashMap<ElemIdx, ObjId>,
    pub simples: Vec<Simple>,
    simple_of_pair: HashMap<(ElemIdx, ElemIdx), SimpleId>,
    pub by_source: Vec<Vec<SimpleId>>,
    pub atoms_by_source: Vec<Vec<SimpleId>>,
    pub identity_at: Vec<SimpleId>,
    pub delta_at: Vec<SimpleId>,
    /// Relation triples `(x,y,z)` with `xyz ∈ O` length-additively.
    pub rels: Vec<(ElemIdx, ElemIdx, ElemIdx)>,
    pub phi_obj: Vec<ObjId>,
    pub phi_obj_inv: Vec<ObjId>,
    pub phi_simple: Vec<SimpleId>,
    pub phi_simple_inv: Vec<SimpleId>,
    /// `∂s` with `s · ∂s = Δ(source s)`.
    pub complement_of: Vec<SimpleId>,
    /// `x ↦ x^{c^η}` over the whole interval, and its inverse.
    conj_eta: Vec<ElemIdx>,
    conj_eta_inv: Vec<ElemIdx>,
}

impl std::fmt::Debug for GroupoidData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupoidData")
            .field("type", &self.lattice.root_system.cartan.label())
            .field("params", &self.params)
            .field("objects", &self.objects.len())
            .field("simples", &self.simples.len())
            .field("rels", &self.rels.len())
            .finish()
    }
}

/// Enumerate `O`, `S` and `Rel` from an interval and regular parameters.
pub fn build_springer_data(lattice: IntervalLattice, params: RegularParams) -> Result<GroupoidData> {
    let n = lattice.rank();
    let p = params.p;
    if n % p != 0 {
        return Err(Error::Config(format!(
            "p = {p} does not divide the rank {n}; O is empty (d = {} is not usable here)",
            params.d
        )));
    }
    let obj_len = n / p;

    let conj_eta: Vec<ElemIdx> = (0..lattice.len() as u32)
        .map(|x| lattice.conj_by_c_pow(x, params.eta))
        .collect();
    let mut conj_eta_inv = vec![0 as ElemIdx; lattice.len()];
    for (x, &y) in conj_eta.iter().enumerate() {
        conj_eta_inv[y as usize] = x as ElemIdx;
    }
    let q_fixed: Vec<bool> = (0..lattice.len() as u32)
        .map(|x| lattice.conj_by_c_pow(x, params.q as i64) == x)
        .collect();

    // Objects: the length-n/p stratum, filtered by the defining conditions.
    let mut objects = Vec::new();
    for u in lattice.stratum(obj_len) {
        if !q_fixed[u as usize] {
            continue;
        }
        let mut acc = lattice.perm(u).clone();
        let mut y = u;
        for _ in 1..p {
            y = conj_eta[y as usize];
            acc = acc.compose(lattice.perm(y));
        }
        if &acc == lattice.perm(lattice.coxeter()) {
            objects.push(u);
        }
    }
    if objects.is_empty() {
        return Err(Error::Config(format!(
            "empty object set: d = {} is not a regular number for this group (or η is wrong)",
            params.d
        )));
    }
    let object_of_elem: HashMap<ElemIdx, ObjId> = objects
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, ObjId(i as u32)))
        .collect();

    // Simples: length-additive pairs (a,b) of q-fixed elements with ab ∈ O.
    let mut simples = Vec::new();
    let mut simple_of_pair = HashMap::new();
    let mut by_source = vec![Vec::new(); objects.len()];
    let mut rels = Vec::new();
    for (oi, &u) in objects.iter().enumerate() {
        let divs = lattice.divisors(u);
        for &a in &divs {
            if !q_fixed[a as usize] {
                continue;
            }
            let b = lattice.left_div(a, u).expect("divisor complement");
            if !q_fixed[b as usize] {
                continue;
            }
            let tgt_elem = lattice
                .mul(b, conj_eta[a as usize])
                .expect("target of a simple lies in the interval");
            let target = *object_of_elem
                .get(&tgt_elem)
                .ok_or_else(|| Error::Internal("simple target is not an object".into()))?;
            let id = SimpleId(simples.len() as u32);
            simples.push(Simple { a, b, source: ObjId(oi as u32), target });
            simple_of_pair.insert((a, b), id);
            by_source[oi].push(id);
        }
        // Relations with source u: x·y·z = u, all parts q-fixed.
        for &x in &divs {
            if !q_fixed[x as usize] {
                continue;
            }
            let rest = lattice.left_div(x, u).expect("divisor complement");
            for y in lattice.divisors(rest) {
                if !q_fixed[y as usize] {
                    continue;
                }
                let z = lattice.left_div(y, rest).expect("divisor complement");
                if q_fixed[z as usize] {
                    rels.push((x, y, z));
                }
            }
        }
    }

    let identity_at: Vec<SimpleId> = objects
        .iter()
        .map(|&u| simple_of_pair[&(0, u)])
        .collect();
    let delta_at: Vec<SimpleId> = objects
        .iter()
        .map(|&u| simple_of_pair[&(u, 0)])
        .collect();
    let atoms_by_source: Vec<Vec<SimpleId>> = by_source
        .iter()
        .map(|list| {
            list.iter()
                .copied()
                .filter(|&s| lattice.length(simples[s.0 as usize].a) == 1)
                .collect()
        })
        .collect();

    let phi_obj: Vec<ObjId> = objects
        .iter()
        .map(|&u| object_of_elem[&conj_eta[u as usize]])
        .collect();
    let mut phi_obj_inv = vec![ObjId(0); objects.len()];
    for (i, &j) in phi_obj.iter().enumerate() {
        phi_obj_inv[j.0 as usize] = ObjId(i as u32);
    }
    let phi_simple: Vec<SimpleId> = simples
        .iter()
        .map(|s| simple_of_pair[&(conj_eta[s.a as usize], conj_eta[s.b as usize])])
        .collect();
    let mut phi_simple_inv = vec![SimpleId(0); simples.len()];
    for (i, &j) in phi_simple.iter().enumerate() {
        phi_simple_inv[j.0 as usize] = SimpleId(i as u32);
    }
    let complement_of: Vec<SimpleId> = simples
        .iter()
        .map(|s| simple_of_pair[&(s.b, conj_eta[s.a as usize])])
        .collect();

    Ok(GroupoidData {
        lattice,
        params,
        objects,
        object_of_elem,
        simples,
        simple_of_pair,
        by_source,
        atoms_by_source,
        identity_at,
        delta_at,
        rels,
        phi_obj,
        phi_obj_inv,
        phi_simple,
        phi_simple_inv,
        complement_of,
        conj_eta,
        conj_eta_inv,
    })
}

impl GroupoidData {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn simple(&self, s: SimpleId) -> &Simple {
        &self.simples[s.0 as usize]
    }

    pub fn object_elem(&self, u: ObjId) -> ElemIdx {
        self.objects[u.0 as usize]
    }

    pub fn object_of(&self, elem: ElemIdx) -> Option<ObjId> {
        self.object_of_elem.get(&elem).copied()
    }

    pub fn simple_of_pair(&self, a: ElemIdx, b: ElemIdx) -> Option<SimpleId> {
        self.simple_of_pair.get(&(a, b)).copied()
    }

    pub fn source(&self, s: SimpleId) -> ObjId {
        self.simple(s).source
    }

    pub fn target(&self, s: SimpleId) -> ObjId {
        self.simple(s).target
    }

    /// Length of a simple: `ℓ(a,b) = ℓ(a)`.
    pub fn simple_len(&self, s: SimpleId) -> usize {
        self.lattice.length(self.simple(s).a)
    }

    pub fn is_identity_simple(&self, s: SimpleId) -> bool {
        self.simple(s).a == 0
    }

    pub fn is_delta_simple(&self, s: SimpleId) -> bool {
        self.simple(s).b == 0
    }

    pub fn delta(&self, u: ObjId) -> SimpleId {
        self.delta_at[u.0 as usize]
    }

    pub fn identity(&self, u: ObjId) -> SimpleId {
        self.identity_at[u.0 as usize]
    }

    pub fn phi(&self, s: SimpleId) -> SimpleId {
        self.phi_simple[s.0 as usize]
    }

    pub fn phi_inv(&self, s: SimpleId) -> SimpleId {
        self.phi_simple_inv[s.0 as usize]
    }

    pub fn phi_object(&self, u: ObjId) -> ObjId {
        self.phi_obj[u.0 as usize]
    }

    pub fn phi_object_inv(&self, u: ObjId) -> ObjId {
        self.phi_obj_inv[u.0 as usize]
    }

    pub fn phi_object_pow(&self, u: ObjId, k: i64) -> ObjId {
        let mut v = u;
        if k >= 0 {
            for _ in 0..k {
                v = self.phi_object(v);
            }
        } else {
            for _ in 0..-k {
                v = self.phi_object_inv(v);
            }
        }
        v
    }

    pub fn conj_eta(&self, x: ElemIdx) -> ElemIdx {
        self.conj_eta[x as usize]
    }

    pub fn conj_eta_inv(&self, x: ElemIdx) -> ElemIdx {
        self.conj_eta_inv[x as usize]
    }

    /// Prefix test between simples sharing a source: `(a,b) ≼ (d,e) ⇔ a ≼ d`.
    pub fn simple_divides(&self, s: SimpleId, t: SimpleId) -> Result<bool> {
        let (s, t) = (self.simple(s), self.simple(t));
        if s.source != t.source {
            return Err(Error::Contract("simple_divides requires a common source".into()));
        }
        Ok(self.lattice.divides(s.a, t.a))
    }

    /// Suffix test between simples sharing a target; reduces to first
    /// components because the interval is balanced.
    pub fn simple_suffix_divides(&self, s: SimpleId, t: SimpleId) -> Result<bool> {
        let (s, t) = (self.simple(s), self.simple(t));
        if s.target != t.target {
            return Err(Error::Contract(
                "simple_suffix_divides requires a common target".into(),
            ));
        }
        Ok(self.lattice.divides(s.a, t.a))
    }

    fn simple_with_source(&self, first: ElemIdx, source: ObjId) -> SimpleId {
        let u = self.object_elem(source);
        let b = self
            .lattice
            .left_div(first, u)
            .expect("first component divides the source");
        self.simple_of_pair[&(first, b)]
    }

    fn simple_with_target(&self, first: ElemIdx, target: ObjId) -> SimpleId {
        let v = self.object_elem(target);
        let b = self
            .lattice
            .right_div(v, self.conj_eta(first))
            .expect("twisted first component right-divides the target");
        self.simple_of_pair[&(first, b)]
    }

    /// Meet of simples with a common source.
    pub fn simple_meet(&self, s: SimpleId, t: SimpleId) -> Result<SimpleId> {
        let (ss, tt) = (self.simple(s), self.simple(t));
        if ss.source != tt.source {
            return Err(Error::Contract("simple_meet requires a common source".into()));
        }
        let m = self.lattice.meet(ss.a, tt.a);
        Ok(self.simple_with_source(m, ss.source))
    }

    /// Join of simples with a common source.
    pub fn simple_join(&self, s: SimpleId, t: SimpleId) -> Result<SimpleId> {
        let (ss, tt) = (self.simple(s), self.simple(t));
        if ss.source != tt.source {
            return Err(Error::Contract("simple_join requires a common source".into()));
        }
        let j = self.lattice.join(ss.a, tt.a);
        Ok(self.simple_with_source(j, ss.source))
    }

    /// Meet in the suffix order, for simples with a common target.
    pub fn simple_suffix_meet(&self, s: SimpleId, t: SimpleId) -> Result<SimpleId> {
        let (ss, tt) = (self.simple(s), self.simple(t));
        if ss.target != tt.target {
            return Err(Error::Contract(
                "simple_suffix_meet requires a common target".into(),
            ));
        }
        let m = self.lattice.meet(ss.a, tt.a);
        Ok(self.simple_with_target(m, ss.target))
    }

    /// Join in the suffix order, for simples with a common target.
    pub fn simple_suffix_join(&self, s: SimpleId, t: SimpleId) -> Result<SimpleId> {
        let (ss, tt) = (self.simple(s), self.simple(t));
        if ss.target != tt.target {
            return Err(Error::Contract(
                "simple_suffix_join requires a common target".into(),
            ));
        }
        let j = self.lattice.join(ss.a, tt.a);
        Ok(self.simple_with_target(j, ss.target))
    }

    /// Composition of simples: `(a,b)(d,e) = (ad, d⁻¹b)` when `d ≼ b`,
    /// `None` when the composite is not simple.
    pub fn compose_simples(&self, s: SimpleId, t: SimpleId) -> Result<Option<SimpleId>> {
        let (ss, tt) = (self.simple(s), self.simple(t));
        if ss.target != tt.source {
            return Err(Error::Contract("compose_simples requires target = source".into()));
        }
        if !self.lattice.divides(tt.a, ss.b) {
            return Ok(None);
        }
        let x = self.lattice.left_div(tt.a, ss.b).expect("d divides b");
        let ad = self.lattice.mul(ss.a, tt.a).expect("length-additive product");
        Ok(Some(self.simple_of_pair[&(ad, x)]))
    }

    /// Left division of simples with a common source: `s⁻¹ m` when `s ≼ m`.
    pub fn simple_left_div(&self, s: SimpleId, m: SimpleId) -> Result<SimpleId> {
        let (ss, mm) = (self.simple(s), self.simple(m));
        if ss.source != mm.source {
            return Err(Error::Contract("simple_left_div requires a common source".into()));
        }
        if !self.lattice.divides(ss.a, mm.a) {
            return Err(Error::Contract("simple_left_div: not a prefix".into()));
        }
        let x = self.lattice.left_div(ss.a, mm.a).expect("prefix");
        let y = self
            .lattice
            .mul(mm.b, self.conj_eta(ss.a))
            .expect("quotient second component");
        Ok(self.simple_of_pair[&(x, y)])
    }

    /// Right division of simples with a common target: the `x` with
    /// `x·s = m` when `s ≼^↰ m`.
    pub fn simple_right_div(&self, m: SimpleId, s: SimpleId) -> Result<SimpleId> {
        let (mm, ss) = (self.simple(m), self.simple(s));
        if mm.target != ss.target {
            return Err(Error::Contract("simple_right_div requires a common target".into()));
        }
        if !self.lattice.divides(ss.a, mm.a) {
            return Err(Error::Contract("simple_right_div: not a suffix".into()));
        }
        let d = self.lattice.right_div(mm.a, ss.a).expect("suffix");
        let e = self.lattice.mul(ss.a, mm.b).expect("suffix second component");
        Ok(self.simple_of_pair[&(d, e)])
    }

    /// Right complement `s\t = s⁻¹(s∨t)` for simples with a common source.
    pub fn simple_right_complement(&self, s: SimpleId, t: SimpleId) -> Result<SimpleId> {
        let j = self.simple_join(s, t)?;
        self.simple_left_div(s, j)
    }

    /// Left complement partner: the simple `s̃ = (b^{c^{−η}}, a)` with
    /// `s̃ · s = Δ(source of s̃)`.
    pub fn simple_left_complement_partner(&self, s: SimpleId) -> SimpleId {
        let ss = self.simple(s);
        self.simple_of_pair[&(self.conj_eta_inv(ss.b), ss.a)]
    }

    /// `∂s`, the right complement of `s` in `Δ(source s)`.
    pub fn complement(&self, s: SimpleId) -> SimpleId {
        self.complement_of[s.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::build_interval;
    use crate::root_system::{build_root_system, CartanType};
    use std::sync::Arc;

    fn springer(t: CartanType, d: usize) -> GroupoidData {
        let rs = Arc::new(build_root_system(t).unwrap());
        let h = rs.coxeter_number;
        let lat = build_interval(rs).unwrap();
        build_springer_data(lat, RegularParams::new(d, h).unwrap()).unwrap()
    }

    #[test]
    fn a2_micro_counts() {
        // d = 2 on A2: p = 2, q = 3, η = 2; one object per reflection.
        let g = springer(CartanType::A(2), 2);
        assert_eq!(g.params.p, 2);
        assert_eq!(g.params.q, 3);
        assert_eq!(g.params.eta, 2);
        assert!(g.params.eta_congruence_holds());
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.simples.len(), 6);
        assert_eq!(g.rels.len(), 9);
        for u in 0..3 {
            assert_eq!(g.lattice.length(g.objects[u]), 1);
        }
    }

    #[test]
    fn one_object_instances_are_dual_braid_monoids() {
        // d = 1: p = 1, q = h; a single object c and S ≃ [1,c].
        for (t, interval_size, d3) in [
            (CartanType::A(2), 5, 12),
            (CartanType::A(3), 14, 55),
            (CartanType::B2, 6, 15),
        ] {
            let g = springer(t, 1);
            assert_eq!(g.object_count(), 1);
            assert_eq!(g.simples.len(), interval_size);
            assert_eq!(g.rels.len(), d3);
            assert_eq!(g.objects[0], g.lattice.coxeter());
        }
    }

    #[test]
    fn degenerate_d_equals_h_instance() {
        // d = h: p = 1, q = 1: only c and its centralizer divisors survive.
        let g = springer(CartanType::A(2), 3);
        assert_eq!(g.object_count(), 1);
        assert_eq!(g.simples.len(), 2); // identity and Δ
    }

    #[test]
    fn simples_are_prefixes_of_delta_and_complements_compose() {
        let g = springer(CartanType::A(2), 2);
        for (i, s) in g.simples.iter().enumerate() {
            let sid = SimpleId(i as u32);
            let delta = g.delta(s.source);
            assert!(g.simple_divides(sid, delta).unwrap());
            let comp = g.complement(sid);
            let full = g.compose_simples(sid, comp).unwrap().unwrap();
            assert_eq!(full, delta);
        }
    }

    #[test]
    fn phi_is_a_bijection_compatible_with_delta() {
        for d in [1, 2] {
            let g = springer(CartanType::A(2), d);
            for u in 0..g.object_count() as u32 {
                let pu = g.phi_object(ObjId(u));
                assert_eq!(g.phi(g.delta(ObjId(u))), g.delta(pu));
                assert_eq!(g.phi_object_inv(pu), ObjId(u));
            }
            for s in 0..g.simples.len() as u32 {
                assert_eq!(g.phi_inv(g.phi(SimpleId(s))), SimpleId(s));
            }
        }
    }

    #[test]
    fn relation_triples_commute_in_w() {
        let g = springer(CartanType::A(2), 2);
        for &(x, y, z) in &g.rels {
            // sources and targets of the three induced simples line up
            let lat = &g.lattice;
            let xy = lat.mul(x, y).unwrap();
            let yz = lat.mul(y, z).unwrap();
            let s1 = g.simple_of_pair(x, yz).unwrap();
            let s2pair = (y, lat.mul(z, g.conj_eta(x)).unwrap());
            let s2 = g.simple_of_pair(s2pair.0, s2pair.1).unwrap();
            let s12 = g.simple_of_pair(xy, z).unwrap();
            assert_eq!(g.target(s1), g.source(s2));
            assert_eq!(g.source(s1), g.source(s12));
            assert_eq!(g.target(s2), g.target(s12));
            assert_eq!(g.compose_simples(s1, s2).unwrap(), Some(s12));
        }
    }

    #[test]
    fn eta_must_satisfy_the_inversion_congruence() {
        assert!(RegularParams::with_eta(2, 3, 1).is_err());
        assert!(RegularParams::with_eta(2, 3, 2).is_ok());
        assert!(RegularParams::with_eta(4, 30, 8).is_ok());
        let p = RegularParams::with_eta(4, 30, 8).unwrap();
        assert_eq!((p.p, p.q), (2, 15));
        assert!(p.eta_congruence_holds());
    }
}
