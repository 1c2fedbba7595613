use super::{DenseMatrix, LuFactors, SINGULAR_RCOND};
use crate::error::{Error, Result};
use crate::generators::GeneratorA;
use crate::model::PopulationState;

/// Trace functional on the population vector.
const TRACE_ROW: [f64; 5] = [1.0, 1.0, 1.0, 0.0, 0.0];

/// Stationary population vector of `A` normalised to unit trace.
///
/// One row of `A` is replaced by the trace functional with right-hand side 1.
/// All rows are tried and the replacement giving the best-conditioned system
/// is kept.
pub fn steady_nullspace(a: &GeneratorA) -> Result<PopulationState> {
    let x = constrained_kernel(a.matrix(), &TRACE_ROW)?;
    let mut out = [0.0; 5];
    out.copy_from_slice(&x);
    Ok(PopulationState(out))
}

/// Solves `M x = 0` subject to `c·x = 1` by row replacement.
pub(crate) fn constrained_kernel(m: &DenseMatrix, constraint: &[f64]) -> Result<Vec<f64>> {
    m.ensure_finite("generator")?;
    let n = m.dim();
    if constraint.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: constraint.len(),
        });
    }
    let mut best: Option<(f64, usize, LuFactors)> = None;
    let mut best_rcond = 0.0_f64;
    for replaced in 0..n {
        let mut system = m.clone();
        for (j, &c) in constraint.iter().enumerate() {
            system[(replaced, j)] = c;
        }
        let Ok(lu) = LuFactors::new(&system) else {
            continue;
        };
        let rcond = lu.rcond();
        best_rcond = best_rcond.max(rcond);
        if best.as_ref().is_none_or(|(r, _, _)| rcond > *r) {
            best = Some((rcond, replaced, lu));
        }
    }
    match best {
        Some((rcond, replaced, lu)) if rcond >= SINGULAR_RCOND => {
            let mut rhs = vec![0.0; n];
            rhs[replaced] = 1.0;
            Ok(lu.solve(&rhs))
        }
        _ => Err(Error::DegenerateKernel { rcond: best_rcond }),
    }
}
