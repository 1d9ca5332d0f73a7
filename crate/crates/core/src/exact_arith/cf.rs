//! Negative (Hirzebruch–Jung) continued fractions
//! `a0 - 1/(a1 - 1/(... - 1/am))`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ArithError, Rat};

/// Expands `r < -1` into its canonical negative continued fraction.
///
/// Every entry of the result is `<= -2`; an integer `r` gives the singleton `[r]`.
/// `r = -1` would need the entry `-1` and is rejected along with everything above it.
pub fn negative_cf_expand(r: &Rat) -> Result<Vec<i64>, ArithError> {
    if *r >= Rat::int(-1) {
        return Err(ArithError::Domain(format!(
            "negative continued fraction needs r < -1, got {r}"
        )));
    }
    let mut out = Vec::new();
    let mut x = r.clone();
    loop {
        let a = x.floor();
        out.push(to_entry(a.numer())?);
        let frac = &x - &a;
        if frac.is_zero() {
            return Ok(out);
        }
        // frac in (0, 1), so the next value is < -1 and the next floor is <= -2.
        x = -frac.recip()?;
    }
}

fn to_entry(n: &BigInt) -> Result<i64, ArithError> {
    n.to_i64()
        .ok_or_else(|| ArithError::Domain(format!("continued fraction entry {n} out of range")))
}

/// Evaluates `a0 - 1/(a1 - 1/(... - 1/am))` exactly.
pub fn cf_evaluate(coeffs: &[i64]) -> Result<Rat, ArithError> {
    let (last, rest) = coeffs
        .split_last()
        .ok_or_else(|| ArithError::Domain("empty continued fraction".into()))?;
    let mut v = Rat::int(*last);
    for &a in rest.iter().rev() {
        v = Rat::int(a) - v.recip()?;
    }
    Ok(v)
}
