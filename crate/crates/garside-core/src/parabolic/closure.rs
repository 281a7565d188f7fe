//! Atomic loops, parabolic closure, z-elements, rank, and curve-graph
//! adjacency.

use super::{
    build_standard_parabolic, contains_positive, scpc_fraction, StandardParabolic,
};
use crate::engine::{recurrent_orbit, Fraction, NormalForm};
use crate::error::{Error, Result};
use crate::interval::ElemIdx;
use crate::springer::{GroupoidData, ObjId, SimpleId};

/// Minimal length of a nontrivial positive endomorphism, groupoid-wide:
/// the girth of the atom graph. Atomic loops are the positive
/// endomorphisms of exactly this length (all of them are atom words).
pub fn loop_length(g: &GroupoidData) -> usize {
    let n = g.object_count();
    // BFS distances through atoms, per starting object
    let mut best = usize::MAX;
    for start in 0..n as u32 {
        let start = ObjId(start);
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([(start, 0usize)]);
        while let Some((u, d)) = queue.pop_front() {
            for &a in &g.atoms_by_source[u.0 as usize] {
                let v = g.target(a);
                if v == start {
                    best = best.min(d + 1);
                } else if d + 1 < dist[v.0 as usize] && d + 1 < best {
                    dist[v.0 as usize] = d + 1;
                    queue.push_back((v, d + 1));
                }
            }
        }
    }
    best
}

/// All atomic loops at `u`: positive endomorphisms of the minimal loop
/// length, as distinct normal forms, in canonical order.
pub fn atomic_loops(g: &GroupoidData, u: ObjId) -> Vec<NormalForm> {
    let len = loop_length(g);
    let mut out: Vec<NormalForm> = Vec::new();
    let mut stack: Vec<(ObjId, Vec<SimpleId>)> = vec![(u, vec![])];
    while let Some((at, w)) = stack.pop() {
        if w.len() == len {
            if at == u {
                out.push(crate::engine::normalize(g, u, w));
            }
            continue;
        }
        for &a in &g.atoms_by_source[at.0 as usize] {
            let mut w2 = w.clone();
            w2.push(a);
            stack.push((g.target(a), w2));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The canonical central power of a standard parabolic's Garside map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZElement {
    /// `δ_β(u)^e` as a positive endomorphism at `u`.
    pub power: NormalForm,
    pub exponent: usize,
}

/// `z = δ_β(u)^e` with `e` minimal such that `z` is central in
/// `𝒢_β(u,u)`.
///
/// Centrality is tested against the atomic loops of the ambient groupoid
/// lying in `𝒞_β` at `u` (they generate the vertex group); with
/// `check_against_schreier` the test instead uses a Schreier generating
/// set over a spanning tree of `𝒢_β`, as an independent slow path.
pub fn z_element(
    g: &GroupoidData,
    sp: &StandardParabolic,
    u: ObjId,
    check_against_schreier: bool,
) -> Result<ZElement> {
    if !sp.contains_object(u) {
        return Err(Error::Contract("z_element: object not in the subgroupoid".into()));
    }
    let loops: Vec<Fraction> = if check_against_schreier {
        schreier_generators(g, sp, u)?
    } else {
        atomic_loops(g, u)
            .into_iter()
            .filter(|l| contains_positive(g, sp.beta, l))
            .map(Fraction::from_positive)
            .collect()
    };
    let orbit = sp.phi_obj_orbit_len(u);
    let cap = 4 * sp.phi_order().max(orbit);
    let mut e = orbit;
    while e <= cap {
        let z = delta_beta_power(g, sp, u, e)?;
        let zf = Fraction::from_positive(z.clone());
        let central = loops.iter().all(|l| {
            let zl = zf.mul(g, l).expect("z·l composable");
            let lz = l.mul(g, &zf).expect("l·z composable");
            zl == lz
        });
        if central {
            // the Garside automorphism φ_β^e must be trivial
            let mut ok = true;
            for &s in &sp.simples {
                let mut t = s;
                for _ in 0..e {
                    t = sp.phi_simple[&t];
                }
                if t != s {
                    ok = false;
                    break;
                }
            }
            if !ok {
                return Err(Error::Internal(
                    "central δ_β-power with nontrivial φ_β-power".into(),
                ));
            }
            return Ok(ZElement { power: z, exponent: e });
        }
        e += orbit;
    }
    Err(Error::Internal(format!(
        "no central power of δ_β below the cap {cap} (β = {})",
        sp.beta
    )))
}

/// `δ_β(u) δ_β(φ_β u) ⋯` — the `e`-th power path of the parabolic Garside
/// map starting at `u`.
pub fn delta_beta_power(
    g: &GroupoidData,
    sp: &StandardParabolic,
    u: ObjId,
    e: usize,
) -> Result<NormalForm> {
    let mut word = Vec::with_capacity(e);
    let mut at = u;
    for _ in 0..e {
        let d = *sp
            .delta_of
            .get(&at)
            .ok_or_else(|| Error::Contract("δ_β-power left the object set".into()))?;
        word.push(d);
        at = sp.phi_obj[&at];
    }
    NormalForm::from_word(g, u, word)
}

/// Schreier generators of the vertex group `𝒢_β(u,u)` from a BFS spanning
/// tree of the subgroupoid: `path(src) · s · path(tgt)⁻¹` over `s ∈ S_β`.
pub fn schreier_generators(
    g: &GroupoidData,
    sp: &StandardParabolic,
    u: ObjId,
) -> Result<Vec<Fraction>> {
    let mut tree_path: std::collections::HashMap<ObjId, NormalForm> =
        std::collections::HashMap::new();
    tree_path.insert(u, NormalForm::identity(u));
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(v) = queue.pop_front() {
        for &s in &sp.simples {
            if g.source(s) == v && !tree_path.contains_key(&g.target(s)) {
                let p = tree_path[&v].compose(g, &NormalForm::from_simple(g, s))?;
                tree_path.insert(g.target(s), p);
                queue.push_back(g.target(s));
            }
        }
    }
    if tree_path.len() != sp.objects.len() {
        return Err(Error::Verification(format!(
            "standard parabolic β = {} is not connected",
            sp.beta
        )));
    }
    let mut out = Vec::new();
    for &s in &sp.simples {
        if g.is_identity_simple(s) {
            continue;
        }
        let p = Fraction::from_positive(tree_path[&g.source(s)].clone());
        let q = Fraction::from_positive(tree_path[&g.target(s)].clone());
        let gen = p
            .mul(g, &Fraction::from_positive(NormalForm::from_simple(g, s)))?
            .mul(g, &q.inverse())?;
        if !gen.is_trivial() && !out.contains(&gen) {
            out.push(gen);
        }
    }
    Ok(out)
}

/// A parabolic subgroup presented as a conjugate of a standard one:
/// `(𝒢_β(base, base))^{conj⁻¹}` inside the vertex group at the source of
/// `conj`. Two handles denote the same subgroup exactly when their
/// z-elements agree.
#[derive(Debug, Clone)]
pub struct ParabolicHandle {
    pub beta: ElemIdx,
    pub base: ObjId,
    /// Morphism `f` from the original object to `base`.
    pub conj: Fraction,
    /// `z = (z of the standard part)^{f⁻¹}`.
    pub z: Fraction,
}

impl PartialEq for ParabolicHandle {
    fn eq(&self, other: &Self) -> bool {
        self.z == other.z
    }
}
impl Eq for ParabolicHandle {}

impl ParabolicHandle {
    pub fn is_standard(&self) -> bool {
        self.z.is_positive()
    }
}

/// Standard parabolic closure of a recurrent endomorphism: the `β` with
/// `SPC(x) = 𝒢_β(u,u)`, minimal among parabolic subgroups containing `x`.
pub fn spc_recurrent(g: &GroupoidData, x: &Fraction) -> Result<ElemIdx> {
    let orbit = recurrent_orbit(g, x)?;
    if orbit.tail_len != 0 {
        return Err(Error::Contract("spc_recurrent requires a recurrent endomorphism".into()));
    }
    Ok(scpc_fraction(g, x))
}

/// Parabolic closure of an arbitrary endomorphism, as a handle: conjugate
/// to a recurrent representative, take its standard closure, carry the
/// conjugator and the z-element back.
pub fn pc(g: &GroupoidData, x: &Fraction) -> Result<ParabolicHandle> {
    let orbit = recurrent_orbit(g, x)?;
    let y = &orbit.recurrent;
    let beta = scpc_fraction(g, y);
    let base = y.source(g);
    let f = orbit.conjugator(); // x^f = y
    let sp = build_standard_parabolic(g, beta)?;
    let z_std = z_element(g, &sp, base, false)?;
    let z = Fraction::from_positive(z_std.power).conjugate(g, &f.inverse())?;
    Ok(ParabolicHandle { beta, base, conj: f, z })
}

/// The rank `r(γ)`: length of `δ_β(u)` for the standard closure of a
/// recurrent conjugate of `γ`.
pub fn rank_of(g: &GroupoidData, x: &Fraction) -> Result<usize> {
    let orbit = recurrent_orbit(g, x)?;
    let beta = scpc_fraction(g, &orbit.recurrent);
    Ok(g.lattice.rank() / g.params.p - g.lattice.length(beta))
}

/// Curve-graph adjacency: the z-elements are distinct and commute.
pub fn adjacent(g: &GroupoidData, h1: &ParabolicHandle, h2: &ParabolicHandle) -> Result<bool> {
    if h1.z.source(g) != h2.z.source(g) {
        return Err(Error::Contract(
            "adjacency needs handles based at a common object".into(),
        ));
    }
    if h1.z == h2.z {
        return Ok(false);
    }
    let ab = h1.z.mul(g, &h2.z)?;
    let ba = h2.z.mul(g, &h1.z)?;
    Ok(ab == ba)
}
