//! Special functions needed by the closed-form solutions.

mod airy;
mod gamma;
mod kummer;
mod laguerre;

pub use airy::{
    airy, airy_ai, airy_ai_prime, airy_bi, airy_bi_prime, airy_zero, AiryValues, AiryZeroTable,
};
pub use gamma::{binomial, factorial, gamma, ln_gamma};
pub use kummer::kummer_1f1;
pub use laguerre::{
    laguerre, laguerre_via_kummer, laguerre_weighted_integral, laguerre_weighted_integral_closed,
};
