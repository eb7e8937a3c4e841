//! Duality, products, cancellation and additivity of obstructions.

pub mod cancel;
pub mod dual;
pub mod pair;
pub mod product;

pub use cancel::{cancel_gap, cancel_greedy, cancel_with_witness, CancelMethod, CancelOutcome, HomotopyCertificate};
pub use dual::{dualize, poincare_self_duality_check, PoincareReport, RankIdentity};
pub use pair::{pair_additivity, relative_duality_check, PairReport, RelativeDualityReport};
pub use product::{induce_class, product_formula_check, tensor_product, ClassVerdict, ProductReport};
