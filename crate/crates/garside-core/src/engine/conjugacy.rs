//! Conjugacy machinery: iterated swaps, recurrent elements, transport,
//! minimal positive conjugators and the graph of positive conjugates.

use crate::engine::fraction::Fraction;
use crate::engine::normal::{
    divide_prefix, normalize, prefix_meet, NormalForm,
};
use crate::error::{Error, Result};
use crate::springer::{GroupoidData, SimpleId};
use std::collections::HashMap;

/// Result of iterating the swap function from an endomorphism.
#[derive(Debug, Clone)]
pub struct RecurrentOrbit {
    /// A recurrent conjugate of the input.
    pub recurrent: Fraction,
    /// Positive `c` with `recurrent = c · x · c⁻¹`; the composition of the
    /// denominators along the swap path, which is the `≼^↰`-minimal positive
    /// morphism conjugating `x` into its swap circuit.
    pub left_conjugator: NormalForm,
    /// The full swap circuit of `recurrent`.
    pub cycle: Vec<Fraction>,
    /// Number of swaps before entering the circuit.
    pub tail_len: usize,
}

impl RecurrentOrbit {
    /// The conjugator as a morphism `f` with `recurrent = x^f` (so
    /// `f = left_conjugator⁻¹`).
    pub fn conjugator(&self) -> Fraction {
        Fraction::from_negative(self.left_conjugator.clone())
    }
}

/// Iterate `sw` until the orbit closes.
///
/// Termination is guaranteed by the finiteness of the inf/sup range; a
/// safety cap of `10·(sup−inf+1)·|S|` iterations guards against bugs.
pub fn recurrent_orbit(g: &GroupoidData, x: &Fraction) -> Result<RecurrentOrbit> {
    if !x.is_endomorphism(g) {
        return Err(Error::Contract("recurrent_orbit needs an endomorphism".into()));
    }
    let cap = 10 * ((x.sup() - x.inf()).unsigned_abs() as usize + 1) * g.simples.len().max(1);
    let mut seen: HashMap<Fraction, usize> = HashMap::new();
    let mut path: Vec<Fraction> = Vec::new();
    let mut conjs: Vec<NormalForm> = Vec::new();
    let mut cur = x.clone();
    for _ in 0..=cap {
        if let Some(&start) = seen.get(&cur) {
            let cycle = path[start..].to_vec();
            let mut left = NormalForm::identity(x.source(g));
            for d in conjs[..start].iter() {
                left = d.compose(g, &left)?;
            }
            return Ok(RecurrentOrbit {
                recurrent: path[start].clone(),
                left_conjugator: left,
                cycle,
                tail_len: start,
            });
        }
        seen.insert(cur.clone(), path.len());
        path.push(cur.clone());
        conjs.push(cur.den().clone());
        cur = cur.swap(g)?;
    }
    Err(Error::Internal("swap iteration exceeded its safety cap".into()))
}

pub fn is_recurrent(g: &GroupoidData, x: &Fraction) -> Result<bool> {
    let orbit = recurrent_orbit(g, x)?;
    Ok(orbit.tail_len == 0)
}

/// Transport of a positive conjugator along one swap step.
///
/// For `y^α = z` with `y = f⁻¹g`, `z = h⁻¹k` reduced, the transport is
/// `α⁽¹⁾ = fα ∧ gα = fαh⁻¹ = gαk⁻¹`, and `sw(y)^{α⁽¹⁾} = sw(z)`; the
/// conjugation hypothesis and the outcome are both checked.
pub fn transport(
    g: &GroupoidData,
    y: &Fraction,
    alpha: &NormalForm,
    z: &Fraction,
) -> Result<NormalForm> {
    let alpha_frac = Fraction::from_positive(alpha.clone());
    if &y.conjugate(g, &alpha_frac)? != z {
        return Err(Error::Contract("transport: y^α ≠ z".into()));
    }
    let fa = y.den().compose(g, alpha)?;
    let ga = y.num().compose(g, alpha)?;
    let t = prefix_meet(g, &fa, &ga)?;
    let sy = y.swap(g)?;
    let sz = z.swap(g)?;
    if sy.conjugate(g, &Fraction::from_positive(t.clone()))? != sz {
        return Err(Error::Internal("transport failed its defining identity".into()));
    }
    Ok(t)
}

/// Conjugate a positive endomorphism by a simple, when the result is
/// positive.
pub fn conj_positive_by_simple(
    g: &GroupoidData,
    x: &NormalForm,
    s: SimpleId,
) -> Option<NormalForm> {
    let xs = x
        .compose(g, &NormalForm::from_simple(g, s))
        .expect("x·s composable");
    divide_prefix(g, &NormalForm::from_simple(g, s), &xs).ok()
}

/// Right complement of a simple through a positive morphism: the bottom
/// edge `x\c` of the pushout rectangle of `x` and `c` (the pre-minimal
/// conjugator row).
pub fn complement_through(g: &GroupoidData, x: &NormalForm, c: SimpleId) -> Result<SimpleId> {
    if g.source(c) != x.src {
        return Err(Error::Contract("complement_through: source mismatch".into()));
    }
    let mut cur = c;
    for s in x.word(g) {
        let j = g.simple_join(s, cur)?;
        cur = g.simple_left_div(s, j)?;
    }
    Ok(cur)
}

/// `ρ_a(x)`: the minimal positive morphism with prefix `a` conjugating the
/// positive endomorphism `x` to a positive endomorphism.
///
/// Computed through the converging prefixes `c₀ = a`,
/// `c_{i+1} = cᵢ ∨ x\cᵢ`; all of them are simple since `ρ_a(x) ≼ Δ`.
pub fn rho(g: &GroupoidData, a: SimpleId, x: &NormalForm) -> Result<SimpleId> {
    if g.source(a) != x.src {
        return Err(Error::Contract("rho: atom must share the source of x".into()));
    }
    let mut c = a;
    loop {
        let comp = complement_through(g, x, c)?;
        let next = g.simple_join(c, comp)?;
        if next == c {
            return Ok(c);
        }
        c = next;
    }
}

/// The `≼`-minimal elements of `{ρ_a(x) : a atom at the source of x}`.
pub fn minimal_positive_conjugators(g: &GroupoidData, x: &NormalForm) -> Result<Vec<SimpleId>> {
    let atoms = &g.atoms_by_source[x.src.0 as usize];
    let mut rhos: Vec<SimpleId> = Vec::new();
    for &a in atoms {
        let r = rho(g, a, x)?;
        if !rhos.contains(&r) {
            rhos.push(r);
        }
    }
    let mut minimal = Vec::new();
    'outer: for &r in &rhos {
        for &s in &rhos {
            if s != r && g.simple_divides(s, r)? {
                continue 'outer;
            }
        }
        minimal.push(r);
    }
    minimal.sort();
    Ok(minimal)
}

/// The graph of positive conjugates of `x`, closed under minimal positive
/// conjugators.
#[derive(Debug, Clone)]
pub struct ConjugacyGraph {
    pub vertices: Vec<NormalForm>,
    /// `(from, conjugating simple, to)`, indices into `vertices`.
    pub edges: Vec<(u32, SimpleId, u32)>,
}

/// BFS closure of the positive conjugates of a positive endomorphism.
pub fn positive_conjugates_graph(
    g: &GroupoidData,
    x: &NormalForm,
    max_vertices: usize,
) -> Result<ConjugacyGraph> {
    let mut index: HashMap<NormalForm, u32> = HashMap::new();
    let mut vertices = vec![x.clone()];
    index.insert(x.clone(), 0);
    let mut edges = Vec::new();
    let mut head = 0usize;
    while head < vertices.len() {
        let cur = vertices[head].clone();
        for rho_s in minimal_positive_conjugators(g, &cur)? {
            let next = conj_positive_by_simple(g, &cur, rho_s).ok_or_else(|| {
                Error::Internal("minimal positive conjugator gave a non-positive conjugate".into())
            })?;
            let to = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if vertices.len() >= max_vertices {
                        return Err(Error::Internal(format!(
                            "positive conjugate graph exceeded {max_vertices} vertices"
                        )));
                    }
                    let i = vertices.len() as u32;
                    index.insert(next.clone(), i);
                    vertices.push(next);
                    i
                }
            };
            edges.push((head as u32, rho_s, to));
        }
        head += 1;
    }
    edges.sort();
    edges.dedup();
    Ok(ConjugacyGraph { vertices, edges })
}

/// Decompose a positive conjugator of `x` into a path of minimal positive
/// conjugators (it always factors; used as a property check).
pub fn factor_conjugator_along_graph(
    g: &GroupoidData,
    x: &NormalForm,
    f: &NormalForm,
    max_steps: usize,
) -> Result<Vec<SimpleId>> {
    let mut path = Vec::new();
    let mut cur = x.clone();
    let mut rest = f.clone();
    for _ in 0..max_steps {
        if rest.is_trivial() {
            return Ok(path);
        }
        let mut advanced = false;
        for rho_s in minimal_positive_conjugators(g, &cur)? {
            let rho_nf = NormalForm::from_simple(g, rho_s);
            if let Ok(next_rest) = divide_prefix(g, &rho_nf, &rest) {
                let next = conj_positive_by_simple(g, &cur, rho_s)
                    .ok_or_else(|| Error::Internal("bad minimal conjugator".into()))?;
                path.push(rho_s);
                cur = next;
                rest = next_rest;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(Error::Internal(
                "positive conjugator does not factor through minimal conjugators".into(),
            ));
        }
    }
    Err(Error::Internal("conjugator factorization exceeded its step cap".into()))
}

/// Normalize a word given as ±simple indices into a fraction.
pub fn fraction_from_signed_word(
    g: &GroupoidData,
    word: &[(SimpleId, bool)],
) -> Result<Fraction> {
    let Some(&(first, first_inv)) = word.first() else {
        return Err(Error::Usage("empty word".into()));
    };
    let start = if first_inv { g.target(first) } else { g.source(first) };
    let mut acc = Fraction::identity(start);
    for &(s, inv) in word {
        let nf = NormalForm::from_simple(g, s);
        let f = if inv {
            Fraction::from_negative(nf)
        } else {
            Fraction::from_positive(nf)
        };
        acc = acc.mul(g, &f)?;
    }
    Ok(acc)
}

/// Left-weight a two-factor word and return the pair, for tests and
/// table-style inspection.
pub fn left_weight_pair(
    g: &GroupoidData,
    s: SimpleId,
    t: SimpleId,
) -> Result<(SimpleId, Option<SimpleId>)> {
    if g.target(s) != g.source(t) {
        return Err(Error::Contract("left_weight_pair: not composable".into()));
    }
    let nf = normalize(g, g.source(s), [s, t]);
    let w = nf.word(g);
    match w.len() {
        0 => Ok((g.identity(nf.src), None)),
        1 => Ok((w[0], None)),
        2 => Ok((w[0], Some(w[1]))),
        _ => unreachable!("two simples normalize to at most two factors"),
    }
}
