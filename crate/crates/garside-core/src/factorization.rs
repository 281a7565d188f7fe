//! Length-additive factorizations `D_m(w)`, the rotation `τ` and Hurwitz
//! moves on them.

use crate::interval::{ElemIdx, IntervalLattice};

/// A length-additive factorization of `product` into `parts.len()` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub parts: Vec<ElemIdx>,
    pub product: ElemIdx,
}

impl Factorization {
    pub fn arity(&self) -> usize {
        self.parts.len()
    }
}

/// All of `D_m(w)`, in lexicographic order of the part indices.
pub fn factorizations(lat: &IntervalLattice, w: ElemIdx, m: usize) -> Vec<Factorization> {
    assert!(m >= 1);
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(m);
    rec(lat, w, m, &mut parts, &mut out);
    fn rec(
        lat: &IntervalLattice,
        rest: ElemIdx,
        m: usize,
        parts: &mut Vec<ElemIdx>,
        out: &mut Vec<Vec<ElemIdx>>,
    ) {
        if m == 1 {
            parts.push(rest);
            out.push(parts.clone());
            parts.pop();
            return;
        }
        for a in lat.divisors(rest) {
            let tail = lat.left_div(a, rest).expect("divisor has a complement");
            parts.push(a);
            rec(lat, tail, m - 1, parts, out);
            parts.pop();
        }
    }
    out.into_iter()
        .map(|parts| Factorization { parts, product: w })
        .collect()
}

/// `τ(x₁,…,x_m) = (x₂,…,x_m,x₁^c)`; requires `product = c`.
pub fn tau(lat: &IntervalLattice, f: &Factorization) -> Factorization {
    assert_eq!(f.product, lat.coxeter(), "τ is defined on D_m(c)");
    let mut parts: Vec<ElemIdx> = f.parts[1..].to_vec();
    parts.push(lat.conj_by_c_pow(f.parts[0], 1));
    Factorization { parts, product: f.product }
}

pub fn tau_pow(lat: &IntervalLattice, f: &Factorization, k: usize) -> Factorization {
    let mut g = f.clone();
    for _ in 0..k {
        g = tau(lat, &g);
    }
    g
}

/// The subset of the given factorizations fixed by `τⁿ`.
pub fn tau_fixed_filter(
    lat: &IntervalLattice,
    fs: &[Factorization],
    n: usize,
) -> Vec<Factorization> {
    fs.iter()
        .filter(|f| &tau_pow(lat, f, n) == *f)
        .cloned()
        .collect()
}

/// `D_m^n(c)` without enumerating all of `D_m(c)`.
///
/// A tuple fixed by `τⁿ` extends to a bi-periodic sequence with
/// `X_{t+m} = X_t^c` and `X_{t+n} = X_t`, so with `g = gcd(m,n)` and
/// `a·m ≡ g (mod n)` the whole tuple is `X_{t+g} = X_t^{c^a}`, determined
/// by its first `g` entries. We enumerate those by divisor chains and keep
/// the tuples that land in `D_m(c)` and are genuinely `τⁿ`-fixed.
pub fn tau_fixed(lat: &IntervalLattice, m: usize, n: usize) -> Vec<Factorization> {
    assert!(m >= 1 && n >= 1);
    let g = gcd(m, n);
    let a = solve_step(m, n, g);
    let c = lat.coxeter();
    let mut out = Vec::new();
    let mut free = Vec::with_capacity(g);
    rec(lat, c, m, n, g, a, &mut free, &mut out);
    fn rec(
        lat: &IntervalLattice,
        rest: ElemIdx,
        m: usize,
        n: usize,
        g: usize,
        a: i64,
        free: &mut Vec<ElemIdx>,
        out: &mut Vec<Factorization>,
    ) {
        if free.len() == g {
            // expand to the full tuple and verify exactly
            let mut parts = Vec::with_capacity(m);
            for i in 0..m {
                let x = free[i % g];
                parts.push(lat.conj_by_c_pow(x, a * (i / g) as i64));
            }
            let total: usize = parts.iter().map(|&x| lat.length(x)).sum();
            if total != lat.rank() {
                return;
            }
            let mut prod = lat.perm(parts[0]).clone();
            for &x in &parts[1..] {
                prod = prod.compose(lat.perm(x));
            }
            if &prod != lat.perm(lat.coxeter()) {
                return;
            }
            let f = Factorization { parts, product: lat.coxeter() };
            if tau_pow(lat, &f, n) == f {
                out.push(f);
            }
            return;
        }
        for x in lat.divisors(rest) {
            let tail = lat.left_div(x, rest).expect("divisor has a complement");
            free.push(x);
            rec(lat, tail, m, n, g, a, free, out);
            free.pop();
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest nonnegative `a` with `a·m ≡ g (mod n)`.
fn solve_step(m: usize, n: usize, g: usize) -> i64 {
    (0..n as i64)
        .find(|&a| (a * m as i64 - g as i64).rem_euclid(n as i64) == 0)
        .expect("g = gcd(m, n) is a multiple of gcd(m, n) mod n")
}

/// One Hurwitz move at position `i` (0-based, `i + 1 < m`).
///
/// The positive move replaces `(cᵢ, cᵢ₊₁)` by `(cᵢ₊₁, cᵢ^{cᵢ₊₁})`; the
/// negative move replaces it by `(^{cᵢ}cᵢ₊₁, cᵢ)`. The product is preserved.
pub fn hurwitz_move(
    lat: &IntervalLattice,
    f: &Factorization,
    i: usize,
    positive: bool,
) -> Factorization {
    assert!(i + 1 < f.parts.len(), "hurwitz move position out of range");
    let mut parts = f.parts.clone();
    let (x, y) = (parts[i], parts[i + 1]);
    if positive {
        parts[i] = y;
        parts[i + 1] = lat
            .conj(x, y)
            .expect("a factor conjugated inside a factorization stays in [1,c]");
    } else {
        parts[i] = lat
            .conj_left(y, x)
            .expect("a factor conjugated inside a factorization stays in [1,c]");
        parts[i + 1] = x;
    }
    debug_assert_eq!(
        {
            let mut p = lat.perm(parts[0]).clone();
            for &z in &parts[1..] {
                p = p.compose(lat.perm(z));
            }
            p
        },
        {
            let mut p = lat.perm(f.parts[0]).clone();
            for &z in &f.parts[1..] {
                p = p.compose(lat.perm(z));
            }
            p
        }
    );
    Factorization { parts, product: f.product }
}

/// Closure of a factorization under Hurwitz moves in both directions.
pub fn hurwitz_orbit(lat: &IntervalLattice, f: &Factorization) -> Vec<Factorization> {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<ElemIdx>> = HashSet::new();
    let mut queue = vec![f.clone()];
    seen.insert(f.parts.clone());
    let mut out = Vec::new();
    while let Some(cur) = queue.pop() {
        for i in 0..cur.parts.len() - 1 {
            for positive in [true, false] {
                let next = hurwitz_move(lat, &cur, i, positive);
                if seen.insert(next.parts.clone()) {
                    queue.push(next);
                }
            }
        }
        out.push(cur);
    }
    out.sort_by(|x, y| x.parts.cmp(&y.parts));
    out
}
