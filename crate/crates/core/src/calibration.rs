//! Frozen constant for the geometric remainder envelope, and the grid it
//! was fitted on.

use rug::Float;

use crate::error::Result;
use crate::precision::PrecisionContext;
use crate::stieltjes::{remainder_bound, remainder_quadrature, StieltjesParams};

/// `C` in `|R| <= C (1 + l/ln(m+n)) ln^l(m+n) 2^(l+1) (Re a + 1)^-m (Re a)^-n`,
/// fixed at 1.1 times the largest ratio seen on [`envelope_grid`]
/// (0.0122353..., at l = 0, a = 1, m = n = 2).
pub const REMAINDER_C: f64 = 0.013_458_870_549_961;

/// One grid point: `(l, Re a, Im a, m, n)`.
pub type GridPoint = (u32, f64, f64, u32, u32);

/// Exactness grid: `l <= 2`, four values of `a`, three `(m, n)` pairs.
pub fn exactness_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for ell in 0..=2 {
        for (re, im) in [(1.0, 0.0), (1.5, 0.0), (2.0, 0.0), (2.0, 1.0)] {
            for (m, n) in [(2, 2), (5, 3), (8, 8)] {
                out.push((ell, re, im, m, n));
            }
        }
    }
    out
}

/// Decay sweeps: at `a = 2`, `m` with `n = 2` and `n` with `m = 2`, both over
/// `2..=16`; at `a = 1`, `n` over `10..=40` with `m = 2`. For `l = 0, 1`.
pub fn decay_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for ell in 0..=1 {
        for k in 2..=16 {
            out.push((ell, 2.0, 0.0, k, 2));
        }
        for k in 2..=16 {
            out.push((ell, 2.0, 0.0, 2, k));
        }
        for n in 10..=40 {
            out.push((ell, 1.0, 0.0, 2, n));
        }
    }
    out
}

/// Envelope grid: exactness grid plus decay sweeps (all have `m + n >= 2`).
pub fn envelope_grid() -> Vec<GridPoint> {
    let mut out = exactness_grid();
    out.extend(decay_grid());
    out
}

/// `|R| / envelope(C = 1)` for one grid point.
pub fn envelope_ratio(point: GridPoint, ctx: &PrecisionContext) -> Result<f64> {
    let (ell, re, im, m, n) = point;
    let params = StieltjesParams::new(ell, ctx.complex(re, im), m, n)?;
    let r = remainder_quadrature(&params, ctx)?.abs();
    let env = remainder_bound(&params, &Float::with_val(ctx.bits(), 1u32), ctx)?.envelope;
    Ok((r / env).to_f64())
}

/// Largest ratio over the envelope grid, with the point where it occurs.
pub fn max_envelope_ratio(ctx: &PrecisionContext) -> Result<(f64, GridPoint)> {
    let mut best = (0.0, envelope_grid()[0]);
    for point in envelope_grid() {
        let r = envelope_ratio(point, ctx)?;
        if r > best.0 {
            best = (r, point);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_expected_shape() {
        assert_eq!(exactness_grid().len(), 36);
        assert_eq!(decay_grid().len(), 2 * (15 + 15 + 31));
        assert!(envelope_grid().iter().all(|&(_, _, _, m, n)| m + n >= 2));
    }

    #[test]
    fn frozen_constant_covers_grid() {
        let ctx = PrecisionContext::default();
        let (ratio, _) = max_envelope_ratio(&ctx).unwrap();
        assert!(ratio <= REMAINDER_C);
        // the constant is not looser than the documented 10% margin
        assert!(REMAINDER_C <= 1.1 * ratio * (1.0 + 1e-9));
    }
}
