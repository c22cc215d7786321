//! Shared pieces of the canonical text form.

use std::fmt;

use crate::scalar::Scalar;

/// `x`, `x^3`, `x^-1`, or empty for the zeroth power.
pub(crate) fn power(var: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

/// Writes `c*m1 + c*m2 - ...` with unit coefficients elided, or `0` for an
/// empty sum. `monomial` is the already-rendered product of variables, empty
/// for the constant monomial.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, String)>,
{
    let mut first = true;
    for (c, monomial) in terms {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if monomial.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            f.write_str(&monomial)?;
        } else {
            write!(f, "{magnitude}*{monomial}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
