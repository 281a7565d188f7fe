//! Standard parabolic subgroupoids and their machinery: the partial Garside
//! maps `δ_β`, membership, standard categorical parabolic closure,
//! intersections, ribbons, the sundial ladder, parabolic closure,
//! z-elements and curve-graph adjacency.

pub mod closure;
pub mod ribbon;
pub mod sundial;

pub use closure::{
    adjacent, atomic_loops, loop_length, pc, rank_of, spc_recurrent, z_element, ParabolicHandle,
    ZElement,
};
pub use ribbon::{apply_ribbon, ribbon, ribbon_closure, ribbon_path_to_object, Ribbon, RibbonGraph};
pub use sundial::{sundial, SundialLadder};

use crate::engine::{Fraction, NormalForm};
use crate::error::{Error, Result};
use crate::interval::ElemIdx;
use crate::springer::{GroupoidData, ObjId, SimpleId};
use std::collections::HashMap;

/// An admissible second component: some simple of the form `(x, β)` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Beta {
    pub beta: ElemIdx,
    pub witness: SimpleId,
}

/// All admissible `β`, in canonical interval order.
pub fn admissible_betas(g: &GroupoidData) -> Vec<Beta> {
    let mut witness: HashMap<ElemIdx, SimpleId> = HashMap::new();
    for (i, s) in g.simples.iter().enumerate() {
        witness.entry(s.b).or_insert(SimpleId(i as u32));
    }
    let mut out: Vec<Beta> = witness
        .into_iter()
        .map(|(beta, witness)| Beta { beta, witness })
        .collect();
    out.sort_by_key(|b| b.beta);
    out
}

/// Check admissibility of an interval element.
pub fn beta_of(g: &GroupoidData, beta: ElemIdx) -> Result<Beta> {
    for (i, s) in g.simples.iter().enumerate() {
        if s.b == beta {
            return Ok(Beta { beta, witness: SimpleId(i as u32) });
        }
    }
    Err(Error::Config(format!(
        "no simple has second component {beta}; the parabolic would be empty"
    )))
}

/// `δ_β(u) = (α, β)` when `u = αβ`; `None` when `β ⋠ u`.
pub fn delta_beta(g: &GroupoidData, beta: ElemIdx, u: ObjId) -> Option<SimpleId> {
    let ue = g.object_elem(u);
    if !g.lattice.divides(beta, ue) {
        return None;
    }
    let alpha = g.lattice.right_div(ue, beta)?;
    g.simple_of_pair(alpha, beta)
}

/// Membership of a simple in `S_β = {(a,b) : β ≼ b}`.
pub fn simple_in(g: &GroupoidData, beta: ElemIdx, s: SimpleId) -> bool {
    g.lattice.divides(beta, g.simple(s).b)
}

/// A standard parabolic subgroupoid, with its Garside data.
#[derive(Debug, Clone)]
pub struct StandardParabolic {
    pub beta: ElemIdx,
    pub objects: Vec<ObjId>,
    pub simples: Vec<SimpleId>,
    pub atoms: Vec<SimpleId>,
    pub delta_of: HashMap<ObjId, SimpleId>,
    pub phi_obj: HashMap<ObjId, ObjId>,
    pub phi_simple: HashMap<SimpleId, SimpleId>,
    pub connected: bool,
}

/// Build `𝒢_β` from an admissible `β`.
pub fn build_standard_parabolic(g: &GroupoidData, beta: ElemIdx) -> Result<StandardParabolic> {
    beta_of(g, beta)?;
    let objects: Vec<ObjId> = (0..g.object_count() as u32)
        .map(ObjId)
        .filter(|&u| g.lattice.divides(beta, g.object_elem(u)))
        .collect();
    if objects.is_empty() {
        return Err(Error::Config("β divides no object".into()));
    }
    let simples: Vec<SimpleId> = (0..g.simples.len() as u32)
        .map(SimpleId)
        .filter(|&s| simple_in(g, beta, s))
        .collect();
    let atoms: Vec<SimpleId> = simples
        .iter()
        .copied()
        .filter(|&s| g.simple_len(s) == 1)
        .collect();
    let mut delta_of = HashMap::new();
    for &u in &objects {
        let d = delta_beta(g, beta, u)
            .ok_or_else(|| Error::Internal("δ_β undefined on an object of 𝒢_β".into()))?;
        delta_of.insert(u, d);
    }
    // φ_β: s · δ_β(target) = δ_β(source) · φ_β(s), via the complement
    // s̄ = s⁻¹ δ_β(source), φ_β(s) = s̄⁻¹ δ_β(target of s).
    let mut phi_simple = HashMap::new();
    for &s in &simples {
        let u = g.source(s);
        let v = g.target(s);
        let sbar = g.simple_left_div(s, delta_of[&u])?;
        let phi_s = g.simple_left_div(sbar, delta_of[&v])?;
        phi_simple.insert(s, phi_s);
    }
    let mut phi_obj = HashMap::new();
    for &u in &objects {
        phi_obj.insert(u, g.target(delta_of[&u]));
    }
    // connectivity of the object set under S_β edges
    let connected = {
        let mut seen = vec![false; g.object_count()];
        let mut stack = vec![objects[0]];
        seen[objects[0].0 as usize] = true;
        while let Some(u) = stack.pop() {
            for &s in &simples {
                for (x, y) in [(g.source(s), g.target(s)), (g.target(s), g.source(s))] {
                    if x == u && !seen[y.0 as usize] {
                        seen[y.0 as usize] = true;
                        stack.push(y);
                    }
                }
            }
        }
        objects.iter().all(|&u| seen[u.0 as usize])
    };
    Ok(StandardParabolic {
        beta,
        objects,
        simples,
        atoms,
        delta_of,
        phi_obj,
        phi_simple,
        connected,
    })
}

impl StandardParabolic {
    pub fn contains_simple(&self, s: SimpleId) -> bool {
        self.simples.binary_search(&s).is_ok()
    }

    pub fn contains_object(&self, u: ObjId) -> bool {
        self.delta_of.contains_key(&u)
    }

    /// Smallest `e ≥ 1` with `φ_β^e` the identity automorphism.
    pub fn phi_order(&self) -> usize {
        let mut k = 1usize;
        let mut cur: HashMap<SimpleId, SimpleId> = self.phi_simple.clone();
        loop {
            if cur.iter().all(|(a, b)| a == b) {
                return k;
            }
            for v in cur.values_mut() {
                *v = self.phi_simple[v];
            }
            k += 1;
        }
    }

    /// Orbit length of an object under `φ_β`.
    pub fn phi_obj_orbit_len(&self, u: ObjId) -> usize {
        let mut v = self.phi_obj[&u];
        let mut k = 1;
        while v != u {
            v = self.phi_obj[&v];
            k += 1;
        }
        k
    }
}

/// Membership of a positive morphism: all left-weighted factors lie in
/// `S_β` (and the source object is in the subgroupoid).
pub fn contains_positive(g: &GroupoidData, beta: ElemIdx, f: &NormalForm) -> bool {
    g.lattice.divides(beta, g.object_elem(f.src))
        && f.word(g).iter().all(|&s| simple_in(g, beta, s))
}

/// Membership of a general morphism: both parts of the reduced fraction.
pub fn contains_fraction(g: &GroupoidData, beta: ElemIdx, f: &Fraction) -> bool {
    contains_positive(g, beta, f.den()) && contains_positive(g, beta, f.num())
}

/// `β` of the standard categorical parabolic closure of a positive
/// morphism: the interval meet of the second components of its
/// left-weighted factors (the source object for an identity).
pub fn scpc_positive(g: &GroupoidData, f: &NormalForm) -> ElemIdx {
    let mut acc = g.object_elem(f.src);
    for s in f.word(g) {
        acc = g.lattice.meet(acc, g.simple(s).b);
    }
    acc
}

/// `β` of the standard categorical parabolic closure of a morphism.
pub fn scpc_fraction(g: &GroupoidData, f: &Fraction) -> ElemIdx {
    g.lattice.meet(scpc_positive(g, f.den()), scpc_positive(g, f.num()))
}

/// Intersection of standard parabolic subgroupoids: `𝒢_{β∨β'}` when the
/// object sets meet, empty otherwise.
pub fn intersect_standard(g: &GroupoidData, b1: ElemIdx, b2: ElemIdx) -> Option<ElemIdx> {
    let both = (0..g.object_count() as u32).map(ObjId).any(|u| {
        let ue = g.object_elem(u);
        g.lattice.divides(b1, ue) && g.lattice.divides(b2, ue)
    });
    both.then(|| g.lattice.join(b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn micro_standard_parabolics() {
        let g = instances::micro_a2().unwrap();
        let betas = admissible_betas(&g);
        // β ∈ {1, the three reflections}: every divisor of an object
        assert_eq!(betas.len(), 4);
        for b in &betas {
            let sp = build_standard_parabolic(&g, b.beta).unwrap();
            assert!(sp.connected);
            if b.beta == 0 {
                assert_eq!(sp.simples.len(), g.simples.len());
                assert_eq!(sp.objects.len(), 3);
            } else {
                // the trivial subgroupoid at one object
                assert_eq!(sp.objects.len(), 1);
                assert_eq!(sp.simples.len(), 1);
            }
        }
    }

    #[test]
    fn delta_beta_extremes() {
        let g = instances::micro_a2().unwrap();
        for u in 0..g.object_count() as u32 {
            let u = ObjId(u);
            // β = 1: δ₁(u) = Δ(u)
            assert_eq!(delta_beta(&g, 0, u), Some(g.delta(u)));
            // β = u: δ_u(u) is the identity-headed simple (1, u)
            let ue = g.object_elem(u);
            assert_eq!(delta_beta(&g, ue, u), Some(g.identity(u)));
        }
    }

    #[test]
    fn scpc_of_delta_powers_is_whole_groupoid() {
        let g = instances::micro_a2().unwrap();
        let u = ObjId(0);
        let d = NormalForm::delta_power(&g, u, 2);
        assert_eq!(scpc_positive(&g, &d), 0);
        let idm = NormalForm::identity(u);
        assert_eq!(scpc_positive(&g, &idm), g.object_elem(u));
        let dd = delta_beta(&g, g.object_elem(u), u).unwrap();
        let nf = NormalForm::from_simple(&g, dd);
        assert_eq!(scpc_positive(&g, &nf), g.object_elem(u));
    }

    #[test]
    fn intersection_rules() {
        let g = instances::micro_a2().unwrap();
        let betas = admissible_betas(&g);
        for b in &betas {
            assert_eq!(intersect_standard(&g, b.beta, 0), Some(b.beta));
            assert_eq!(intersect_standard(&g, b.beta, b.beta), Some(b.beta));
        }
        // two distinct reflections divide no common object
        let refls: Vec<ElemIdx> = betas.iter().map(|b| b.beta).filter(|&b| b != 0).collect();
        assert_eq!(intersect_standard(&g, refls[0], refls[1]), None);
    }

    #[test]
    fn membership_is_factor_closed() {
        let g = instances::micro_a2().unwrap();
        let u = ObjId(0);
        let beta = g.object_elem(u);
        // identity at u is in the trivial parabolic, Δ(u) is not
        assert!(contains_positive(&g, beta, &NormalForm::identity(u)));
        assert!(!contains_positive(
            &g,
            beta,
            &NormalForm::delta_power(&g, u, 1)
        ));
        // everything is in β = 1
        assert!(contains_positive(&g, 0, &NormalForm::delta_power(&g, u, 3)));
    }
}
