//! Matrix exponential by scaling and squaring with a degree-13 Padé approximant.
//!
//! A single scaling threshold is used: the argument is halved `s` times until
//! `‖M/2^s‖₁ ≤ θ₁₃`, the [13/13] approximant is evaluated, and the result is
//! squared `s` times.

use super::{DenseMatrix, LuFactors};
use crate::error::{Error, Result};

/// Largest 1-norm for which the [13/13] approximant is used unscaled.
pub const PADE13_THETA: f64 = 5.37;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

pub fn matrix_exponential(m: &DenseMatrix) -> Result<DenseMatrix> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix exponential argument"));
    }
    let n = m.dim();
    if n == 0 {
        return Ok(DenseMatrix::zeros(0));
    }
    let norm = m.norm_1();
    let squarings = if norm > PADE13_THETA {
        (norm / PADE13_THETA).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = m.scale(0.5_f64.powi(squarings));

    let b = &PADE13;
    let ident = DenseMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = a6
        .scale(b[13])
        .add_scaled(b[11], &a4)
        .add_scaled(b[9], &a2);
    let u_outer = a6
        .matmul(&u_inner)
        .add_scaled(b[7], &a6)
        .add_scaled(b[5], &a4)
        .add_scaled(b[3], &a2)
        .add_scaled(b[1], &ident);
    let u = a.matmul(&u_outer);

    let v_inner = a6
        .scale(b[12])
        .add_scaled(b[10], &a4)
        .add_scaled(b[8], &a2);
    let v = a6
        .matmul(&v_inner)
        .add_scaled(b[6], &a6)
        .add_scaled(b[4], &a4)
        .add_scaled(b[2], &a2)
        .add_scaled(b[0], &ident);

    let denominator = LuFactors::new(&v.sub(&u))?;
    let mut result = denominator.solve_matrix(&v.add(&u));
    for _ in 0..squarings {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(Error::NonFinite("matrix exponential result"));
    }
    Ok(result)
}
