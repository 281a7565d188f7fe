//! General Garside-groupoid computation over a [`GroupoidData`]: normal
//! forms, fraction arithmetic, lattice operations on morphisms, the swap
//! function, transport and minimal positive conjugators.

pub mod conjugacy;
pub mod fraction;
pub mod normal;

pub use conjugacy::{
    complement_through, conj_positive_by_simple, factor_conjugator_along_graph,
    fraction_from_signed_word, is_recurrent, left_weight_pair, minimal_positive_conjugators,
    positive_conjugates_graph, recurrent_orbit, rho, transport, ConjugacyGraph, RecurrentOrbit,
};
pub use fraction::Fraction;
pub use normal::{
    divide_by_simple, divide_prefix, divide_suffix, divide_suffix_by_simple, left_cofactors,
    normalize, prefix_divides, prefix_join, prefix_meet, right_complements, slide, suffix_divides,
    suffix_head, suffix_join, suffix_meet, NormalForm,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::springer::SimpleId;

    #[test]
    fn normal_form_of_delta_then_simple_shifts() {
        let g = instances::micro_a2().unwrap();
        for u in 0..g.object_count() as u32 {
            let u = crate::springer::ObjId(u);
            let d = g.delta(u);
            for &s in &g.by_source[g.target(d).0 as usize] {
                let nf = normalize(&g, u, [d, s]);
                if g.is_identity_simple(s) {
                    assert_eq!(nf.delta, 1);
                    assert!(nf.factors.is_empty());
                } else if g.is_delta_simple(s) {
                    assert_eq!(nf.delta, 2);
                } else {
                    assert_eq!(nf.delta, 1);
                    assert_eq!(nf.factors, vec![g.phi_inv(s)]);
                }
            }
        }
    }

    #[test]
    fn normalized_words_are_left_weighted_and_length_preserving() {
        let g = instances::dual_monoid(crate::CartanType::A(2)).unwrap();
        let u = crate::springer::ObjId(0);
        let simples: Vec<SimpleId> = g.by_source[0].clone();
        for &s in &simples {
            for &t in &simples {
                let len = g.simple_len(s) + g.simple_len(t);
                let nf = normalize(&g, u, [s, t]);
                assert_eq!(nf.len(&g), len);
                let w = nf.word(&g);
                for pair in w.windows(2) {
                    let (x, y) = (g.simple(pair[0]), g.simple(pair[1]));
                    assert_eq!(g.lattice.meet(x.b, y.a), 0, "pair not left-weighted");
                }
            }
        }
    }

    #[test]
    fn swap_fixes_positives_and_negatives() {
        let g = instances::micro_a2().unwrap();
        let u = crate::springer::ObjId(0);
        let x = NormalForm::delta_power(&g, u, 3);
        let f = Fraction::from_positive(x.clone());
        assert_eq!(f.swap(&g).unwrap(), f);
        let n = Fraction::from_negative(x);
        assert_eq!(n.swap(&g).unwrap(), n);
    }
}
