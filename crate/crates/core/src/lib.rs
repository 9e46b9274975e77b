//! Peisert graphs P*(q) over F_q, q = p^{2t} with p ≡ 3 (mod 4): exact
//! character sums in Q(ζ₈), finite-field ₃F₂ values, clique counts and the
//! checks that tie them together.

pub mod charsum;
pub mod cyclo;
pub mod ffield;
pub mod hypertrans;
pub mod peisert;
pub mod report;
pub mod verify;
