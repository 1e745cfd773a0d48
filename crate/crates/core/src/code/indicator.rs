//! Indicator functions of single affine points.

use crate::curve::{CurveSpec, Point};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// `c · ((x^{q^s} - x)/(x - a)) · ((Tr(y) - Tr(b))/(y - b))`, which is one
/// at `(a, b)` and zero at every other affine point.
#[derive(Clone, Debug)]
pub struct Indicator {
    point: Point,
    normalizer: FieldElement,
    x_factor: Vec<FieldElement>,
    y_factor: Vec<FieldElement>,
}

// Quotient of `num` by `(X - root)`; coefficients constant term first.
fn divide_linear(f: &FieldSpec, num: &[FieldElement], root: FieldElement) -> Vec<FieldElement> {
    let deg = num.len() - 1;
    let mut quot = vec![FieldElement::ZERO; deg];
    let mut carry = FieldElement::ZERO;
    for i in (1..=deg).rev() {
        carry = f.add(num[i], f.mul(carry, root));
        quot[i - 1] = carry;
    }
    quot
}

fn eval(f: &FieldSpec, poly: &[FieldElement], x: FieldElement) -> FieldElement {
    poly.iter()
        .rev()
        .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

impl Indicator {
    pub fn new(curve: &CurveSpec, point: Point) -> Result<Indicator> {
        curve.check_point(point)?;
        let f = curve.field();
        let order = f.order() as usize;
        // x^{q^s} - x
        let mut xnum = vec![FieldElement::ZERO; order + 1];
        xnum[order] = FieldElement::ONE;
        xnum[1] = f.neg(FieldElement::ONE);
        let x_factor = divide_linear(f, &xnum, point.x);
        // Tr(y) - Tr(b)
        let q = curve.q() as usize;
        let deg = q.pow(curve.s() - 1);
        let mut ynum = vec![FieldElement::ZERO; deg + 1];
        let mut e = 1;
        for _ in 0..curve.s() {
            ynum[e] = FieldElement::ONE;
            e *= q;
        }
        ynum[0] = f.neg(f.trace(point.y));
        let y_factor = divide_linear(f, &ynum, point.y);
        let raw = f.mul(eval(f, &x_factor, point.x), eval(f, &y_factor, point.y));
        let normalizer = f.inv(raw).map_err(|_| {
            Error::Invalid(format!("indicator of {point} vanishes at its own point"))
        })?;
        Ok(Indicator {
            point,
            normalizer,
            x_factor,
            y_factor,
        })
    }

    pub fn point(&self) -> Point {
        self.point
    }

    /// The constant `c`.
    pub fn normalizer(&self) -> FieldElement {
        self.normalizer
    }

    pub fn eval(&self, f: &FieldSpec, p: Point) -> FieldElement {
        f.mul(
            self.normalizer,
            f.mul(eval(f, &self.x_factor, p.x), eval(f, &self.y_factor, p.y)),
        )
    }
}
