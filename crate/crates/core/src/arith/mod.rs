//! Local fields, elements with tracked precision, and integer helpers.

pub mod elem;
pub mod field;
pub mod hensel;
pub mod int;
pub mod json;
pub mod val;

pub use elem::Elem;
pub use field::{Field, FieldSpec, LocalField};
pub use hensel::{hensel_root, poly_eval, teichmuller};
pub use int::{binom_lemma_check, legendre_factorial_valuation, BinomLemmaReport};
pub use val::Val;
