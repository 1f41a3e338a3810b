//! Self-validated real and complex interval arithmetic.
//!
//! Intervals carry `f64` endpoints over the extended reals. All operations
//! return enclosures of the exact image of their inputs; containment is the
//! property every test in this crate leans on.

mod complex;
mod elementary;
mod real;
mod trig;

pub use complex::{civ_unit_phase, ComplexInterval};
pub use elementary::LIBM_SLACK_ULPS;
pub use real::{sum_pairwise, Interval};
pub use trig::REDUCTION_LIMIT;

/// Arithmetic selector for [`iv_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Elementary function selector for [`iv_elementary`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElementaryFn {
    Sqrt,
    Log,
    Exp,
    Sin,
    Cos,
    PowReal(f64),
}

pub fn iv_arith(op: ArithOp, a: Interval, b: Interval) -> crate::Result<Interval> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div(b)?,
    })
}

pub fn iv_elementary(f: ElementaryFn, a: Interval) -> crate::Result<Interval> {
    match f {
        ElementaryFn::Sqrt => a.sqrt(),
        ElementaryFn::Log => a.ln(),
        ElementaryFn::Exp => Ok(a.exp()),
        ElementaryFn::Sin => a.sin(),
        ElementaryFn::Cos => a.cos(),
        ElementaryFn::PowReal(p) => a.pow_real(p),
    }
}
