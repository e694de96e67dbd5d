//! Exact arithmetic in Q and Q(sqrt d), plus the local number theory of Q.

mod field;
pub mod integer;
mod local;

pub use field::{rational_sqrt, BaseField, Embedding, FieldElem, Ordering};
pub use local::{
    hilbert_int, hilbert_symbol, is_local_square, is_local_square_int, legendre, ramification,
    relevant_places, Place,
};

use crate::error::{Error, Result};
use crate::qform::QForm;

pub type Rational = num_rational::BigRational;

/// Whether q is a sum of m nonzero-total squares in Q.
pub fn sum_of_squares_length(q: &Rational, m: usize) -> Result<bool> {
    if num_traits::Zero::is_zero(q) {
        return Err(Error::ZeroElement);
    }
    if m == 0 {
        return Ok(false);
    }
    let ones = QForm::ones(BaseField::Rationals, m);
    crate::qform::represents(&ones, &FieldElem::rational(BaseField::Rationals, q.clone()))
}

impl FieldElem {
    /// Parses `3/4`, `-2`, `1+2s/3`, where `s` stands for sqrt(d).
    pub fn parse(base: BaseField, s: &str) -> Result<FieldElem> {
        crate::syntax::parse_elem(base, s)
    }
}
