//! Canonical dataset builders.

use crate::error::Result;
use crate::interval::build_interval;
use crate::root_system::{build_root_system, CartanType};
use crate::springer::{build_springer_data, GroupoidData, RegularParams};
use std::sync::Arc;

/// Build the groupoid for a Cartan type and regular number `d`.
///
/// `eta` overrides the twist exponent; the default is the smallest positive
/// inverse of `p` modulo `q`.
pub fn build(cartan: CartanType, d: usize, eta: Option<i64>) -> Result<GroupoidData> {
    let rs = Arc::new(build_root_system(cartan)?);
    let h = rs.coxeter_number;
    let params = match eta {
        Some(e) => RegularParams::with_eta(d, h, e)?,
        None => RegularParams::new(d, h)?,
    };
    let lattice = build_interval(rs)?;
    build_springer_data(lattice, params)
}

/// The groupoid on 88 objects presenting the braid group of the rank-4
/// exceptional reflection group: E8 with d = 4 and η = 8.
pub fn g31() -> Result<GroupoidData> {
    build(CartanType::E8, 4, Some(8))
}

/// The 3-object toy instance: A2 with d = 2 (p = 2, q = 3, η = 2).
pub fn micro_a2() -> Result<GroupoidData> {
    build(CartanType::A(2), 2, None)
}

/// One-object dual braid monoid instances (d = 1).
pub fn dual_monoid(cartan: CartanType) -> Result<GroupoidData> {
    build(cartan, 1, None)
}
