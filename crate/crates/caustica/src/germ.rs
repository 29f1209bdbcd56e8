//! Order and rational order of function germs, read off jet data.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jet::Jet;

/// Order of a function germ at the jet's base point.
///
/// `AtLeast(K + 1)` is an honest "all coefficients vanish to jet order",
/// never silently treated as infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GermOrder {
    Finite(usize),
    AtLeast(usize),
}

/// Smallest total degree with a coefficient above the graded tolerance.
pub fn order(h: &Jet, tol: &Tolerances) -> GermOrder {
    match h.leading_degree(tol) {
        Some(d) => GermOrder::Finite(d),
        None => GermOrder::AtLeast(h.order() + 1),
    }
}

/// Rational order of the quotient germ `h1/h2`: `ord h1 - ord h2`.
///
/// Non-negative means the quotient stays bounded near the base point;
/// negative means it blows up. `None` means the numerator vanishes to jet
/// order, so only a lower bound on the difference is known. Errors when the
/// denominator vanishes to jet order, since the difference is then
/// undecidable from finite data.
pub fn rational_order(h1: &Jet, h2: &Jet, tol: &Tolerances) -> Result<Option<i64>> {
    let o2 = match order(h2, tol) {
        GermOrder::Finite(n) => n as i64,
        GermOrder::AtLeast(k) => {
            return Err(Error::Undecidable(format!(
                "denominator vanishes to jet order (ord >= {k})"
            )))
        }
    };
    Ok(match order(h1, tol) {
        GermOrder::Finite(n) => Some(n as i64 - o2),
        GermOrder::AtLeast(_) => None,
    })
}
