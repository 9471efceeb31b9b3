//! The transforms L f = Σ ⟨f_k, f⟩ Ψ_k: dictionaries, series evaluation,
//! C_K and truncation tails, and the six concrete transforms in coefficient
//! and kernel form.

mod concrete;
mod series;
mod tail;

pub use concrete::*;
pub use series::*;
pub use tail::{ck_and_tail, min_truncation, require_tail, CkReport};
