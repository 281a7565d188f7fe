//! Groupoid morphisms as reduced left fractions `f = a⁻¹ b`.
//!
//! `a` and `b` are positive with a common source and `a ∧ b` trivial; the
//! decomposition is unique, so component-wise equality of normal forms
//! decides equality of morphisms.

use crate::engine::normal::{
    divide_prefix, left_cofactors, prefix_meet, NormalForm,
};
use crate::error::{Error, Result};
use crate::springer::{GroupoidData, ObjId, SimpleId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    den: NormalForm,
    num: NormalForm,
}

impl Fraction {
    /// Reduce `a⁻¹b` by cancelling the common prefix of `a` and `b`.
    pub fn reduce(g: &GroupoidData, a: &NormalForm, b: &NormalForm) -> Result<Fraction> {
        if a.src != b.src {
            return Err(Error::Contract("fraction parts must share a source".into()));
        }
        let m = prefix_meet(g, a, b)?;
        Ok(Fraction {
            den: divide_prefix(g, &m, a)?,
            num: divide_prefix(g, &m, b)?,
        })
    }

    pub fn from_positive(x: NormalForm) -> Fraction {
        let den = NormalForm::identity(x.src);
        Fraction { den, num: x }
    }

    pub fn from_negative(x: NormalForm) -> Fraction {
        let num = NormalForm::identity(x.src);
        Fraction { den: x, num }
    }

    pub fn identity(u: ObjId) -> Fraction {
        Fraction { den: NormalForm::identity(u), num: NormalForm::identity(u) }
    }

    pub fn den(&self) -> &NormalForm {
        &self.den
    }

    pub fn num(&self) -> &NormalForm {
        &self.num
    }

    /// Source of the morphism `den⁻¹·num`.
    pub fn source(&self, g: &GroupoidData) -> ObjId {
        self.den.target(g)
    }

    pub fn target(&self, g: &GroupoidData) -> ObjId {
        self.num.target(g)
    }

    pub fn is_endomorphism(&self, g: &GroupoidData) -> bool {
        self.source(g) == self.target(g)
    }

    pub fn is_positive(&self) -> bool {
        self.den.is_trivial()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_trivial()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_positive() && self.is_negative()
    }

    /// Positive part, when the fraction is positive.
    pub fn as_positive(&self) -> Option<&NormalForm> {
        self.is_positive().then_some(&self.num)
    }

    /// `inf = −sup(den)`, `sup = sup(num)`; only differences of these are
    /// consumed by the algorithms.
    pub fn inf(&self) -> i64 {
        if self.den.is_trivial() {
            self.num.inf()
        } else {
            -self.den.sup()
        }
    }

    pub fn sup(&self) -> i64 {
        self.num.sup()
    }

    pub fn inverse(&self) -> Fraction {
        Fraction { den: self.num.clone(), num: self.den.clone() }
    }

    /// Composition of fractions: `a⁻¹b · c⁻¹d = (Aa)⁻¹(Bd)` where
    /// `A·b = B·c` is the least common left multiple.
    pub fn mul(&self, g: &GroupoidData, other: &Fraction) -> Result<Fraction> {
        if self.target(g) != other.source(g) {
            return Err(Error::Contract("fraction product: target/source mismatch".into()));
        }
        let (a_cof, b_cof) = left_cofactors(g, &self.num, &other.den)?;
        let den = a_cof.compose(g, &self.den)?;
        let num = b_cof.compose(g, &other.num)?;
        Fraction::reduce(g, &den, &num)
    }

    pub fn pow(&self, g: &GroupoidData, m: i64) -> Result<Fraction> {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut acc = Fraction::identity(base.source(g));
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(g, &base)?;
        }
        Ok(acc)
    }

    /// `w⁻¹ · self · w`.
    pub fn conjugate(&self, g: &GroupoidData, w: &Fraction) -> Result<Fraction> {
        w.inverse().mul(g, self)?.mul(g, w)
    }

    pub fn conjugate_by_positive(&self, g: &GroupoidData, w: &NormalForm) -> Result<Fraction> {
        self.conjugate(g, &Fraction::from_positive(w.clone()))
    }

    /// Left-weighted Δ-form `(k, factors, source)` of the morphism, with
    /// `k` possibly negative.
    pub fn delta_form(&self, g: &GroupoidData) -> Result<(i64, Vec<SimpleId>, ObjId)> {
        let v = self.source(g);
        if self.den.is_trivial() {
            return Ok((self.num.inf(), self.num.factors.clone(), v));
        }
        let k = self.den.sup();
        // Δ^k ending at v starts at φ^{-k}(v).
        let w = g.phi_object_pow(v, -k);
        let d = NormalForm::delta_power(g, w, k as u32);
        // P = D · den⁻¹ is positive since sup(den) ≤ k.
        let p = crate::engine::normal::divide_suffix(g, &d, &self.den)?;
        let pn = p.compose(g, &self.num)?;
        Ok((pn.inf() - k, pn.factors.clone(), v))
    }

    /// The swap of an endomorphism: `sw(f⁻¹g) = g f⁻¹`, conjugation by the
    /// inverse of the denominator.
    pub fn swap(&self, g: &GroupoidData) -> Result<Fraction> {
        if !self.is_endomorphism(g) {
            return Err(Error::Contract("swap is defined on endomorphisms".into()));
        }
        if self.is_positive() || self.is_negative() {
            return Ok(self.clone());
        }
        let (a_cof, b_cof) = left_cofactors(g, &self.num, &self.den)?;
        let out = Fraction { den: a_cof, num: b_cof };
        debug_assert!(
            prefix_meet(g, &out.den, &out.num).map(|m| m.is_trivial()).unwrap_or(false),
            "swap must produce a reduced fraction"
        );
        Ok(out)
    }

    /// Apply φ to both parts.
    pub fn phi_image(&self, g: &GroupoidData) -> Fraction {
        Fraction { den: self.den.phi_image(g), num: self.num.phi_image(g) }
    }
}
