//! Shared brute-force oracles for the groupoid engine.
//!
//! The oracle works on raw composable words of simples and never calls the
//! normal-form machinery: equality is the congruence generated by the
//! defining merge/split relations, computed as a reachability closure over
//! words of bounded total length.

use garside_core::engine::{normalize, NormalForm};
use garside_core::springer::{GroupoidData, ObjId, SimpleId};
use std::collections::{HashMap, HashSet, VecDeque};

pub type Word = Vec<SimpleId>;

pub fn word_len(g: &GroupoidData, w: &Word) -> usize {
    w.iter().map(|&s| g.simple_len(s)).sum()
}

/// All composable words of proper simples starting at `src` with total
/// length (sum of simple lengths) at most `len`.
pub fn words_upto(g: &GroupoidData, src: ObjId, len: usize) -> Vec<Word> {
    let mut out = vec![];
    let mut stack: Vec<(ObjId, Word, usize)> = vec![(src, vec![], 0)];
    while let Some((at, w, l)) = stack.pop() {
        out.push(w.clone());
        for &s in &g.by_source[at.0 as usize] {
            if g.is_identity_simple(s) {
                continue;
            }
            let sl = g.simple_len(s);
            if l + sl > len {
                continue;
            }
            let mut w2 = w.clone();
            w2.push(s);
            stack.push((g.target(s), w2, l + sl));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Closure of a word under single merge/split relation moves.
pub fn rewrite_class(g: &GroupoidData, start: &Word) -> HashSet<Word> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(w) = queue.pop_front() {
        // merges: adjacent pair composing to a simple
        for i in 0..w.len().saturating_sub(1) {
            if let Some(m) = g.compose_simples(w[i], w[i + 1]).unwrap() {
                let mut w2 = w.clone();
                w2.splice(i..i + 2, [m]);
                if seen.insert(w2.clone()) {
                    queue.push_back(w2);
                }
            }
        }
        // splits: one factor into two with additive length, via the
        // relation (x,yz)(y,zx^{c^η}) = (xy,z)
        for i in 0..w.len() {
            let s = *g.simple(w[i]);
            for a in g.lattice.divisors(s.a) {
                if a == 0 || a == s.a {
                    continue;
                }
                let rest = g.lattice.left_div(a, s.a).unwrap();
                let (Some(b1), Some(b2)) = (
                    g.lattice.mul(rest, s.b),
                    g.lattice.mul(s.b, g.conj_eta(a)),
                ) else {
                    continue;
                };
                let (Some(s1), Some(s2)) =
                    (g.simple_of_pair(a, b1), g.simple_of_pair(rest, b2))
                else {
                    continue;
                };
                if g.compose_simples(s1, s2).unwrap() != Some(w[i]) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.splice(i..i + 1, [s1, s2]);
                if seen.insert(w2.clone()) {
                    queue.push_back(w2);
                }
            }
        }
    }
    seen
}

/// Canonical label of a word: the least element of its rewrite class.
pub fn oracle_label(g: &GroupoidData, w: &Word) -> Word {
    rewrite_class(g, w).into_iter().min().unwrap()
}

/// The distinct positive morphisms of total length ≤ `len` from `src`:
/// canonical oracle label, one witness word, and the engine normal form.
pub struct EnumeratedMonoid {
    pub items: Vec<(Word, Word, NormalForm)>, // (label, witness, nf)
    /// `divides[i][j]`: morphism `i` is a prefix of morphism `j`, per the
    /// oracle (extension search + rewriting).
    pub divides: Vec<Vec<bool>>,
}

pub fn enumerate_monoid(g: &GroupoidData, src: ObjId, len: usize) -> EnumeratedMonoid {
    let mut by_label: HashMap<Word, Word> = HashMap::new();
    for w in words_upto(g, src, len) {
        let label = oracle_label(g, &w);
        by_label.entry(label).or_insert(w);
    }
    let mut items: Vec<(Word, Word, NormalForm)> = by_label
        .into_iter()
        .map(|(label, w)| {
            let nf = normalize(g, src, w.iter().copied());
            (label, w, nf)
        })
        .collect();
    items.sort();

    // label set lookup for prefix search
    let label_index: HashMap<Word, usize> = items
        .iter()
        .enumerate()
        .map(|(i, (l, _, _))| (l.clone(), i))
        .collect();

    // divisibility: d ≼ x iff d extended by atoms reaches x's class
    let n = items.len();
    let mut divides = vec![vec![false; n]; n];
    for (i, (_, wd, _)) in items.iter().enumerate() {
        let dl = word_len(g, wd);
        let at = wd
            .last()
            .map(|&s| g.target(s))
            .unwrap_or(src);
        // BFS extensions by atoms up to the length cap
        let mut stack: Vec<(ObjId, Word, usize)> = vec![(at, wd.clone(), dl)];
        let mut seen_ext: HashSet<Word> = HashSet::new();
        while let Some((u, w, l)) = stack.pop() {
            if let Some(&j) = label_index.get(&oracle_label(g, &w)) {
                divides[i][j] = true;
            }
            if l >= len {
                continue;
            }
            for &a in &g.atoms_by_source[u.0 as usize] {
                let mut w2 = w.clone();
                w2.push(a);
                if seen_ext.insert(w2.clone()) {
                    stack.push((g.target(a), w2.clone(), l + 1));
                }
            }
        }
    }
    EnumeratedMonoid { items, divides }
}
