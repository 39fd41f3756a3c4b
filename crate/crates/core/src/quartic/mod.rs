//! Polynomial identities for the quartic models and the normal-form
//! reduction of ordinary genus-2 curves in characteristic 2.

pub mod catalog;
pub mod field;
pub mod normal_form;
pub mod poly;

pub use catalog::{verify_all, verify_identity, IdentityReport, IDS};
pub use field::Gf;
pub use normal_form::{igusa_to_normal, normal_form, round_trip, NormalForm, RoundTrip};
pub use poly::{Poly, Ring};
