//! Truncated p-adic numbers, Hensel lifting, square classes and the
//! existential definitions of Z_p inside Q_p.

mod hensel;
mod number;
mod squares;

pub use hensel::{hensel_lift, IntPoly};
pub use number::{PAdicNumber, ResidueRingElement, DEFAULT_PRECISION};
pub use squares::{
    is_z2_member_cubic, is_zp_member, square_class, square_class_padic, MembershipCriterion,
    SquareClass, ZpMembership,
};
pub(crate) use squares::unit_mod_8;
