use crate::error::{Error, Result};
use crate::funcspace::{ExpPoly, TruncatedTaylor};
use crate::scalar::Scalar;

use super::{pommiez, pommiez_exact_on_line, OperatorContext};

/// `[f, D f, …, D^L f]` on the line `C[z]e_λ`.
pub fn orbit_exact(ctx: &OperatorContext, f: &ExpPoly, length: usize) -> Result<Vec<ExpPoly>> {
    let mut out = Vec::with_capacity(length + 1);
    out.push(f.clone());
    for _ in 0..length {
        let next = pommiez_exact_on_line(ctx, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// `[f, D f, …, D^L f]` on Maclaurin jets; the `j`-th entry is valid
/// through order `K - j`.
pub fn orbit_taylor<S: Scalar>(ctx: &OperatorContext, f: &TruncatedTaylor<S>, length: usize) -> Result<Vec<TruncatedTaylor<S>>> {
    if f.valid_order() < length {
        return Err(Error::PrecisionExhausted {
            needed: length,
            available: f.valid_order(),
        });
    }
    let mut out = Vec::with_capacity(length + 1);
    out.push(f.clone());
    for _ in 0..length {
        let next = pommiez(ctx, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}
