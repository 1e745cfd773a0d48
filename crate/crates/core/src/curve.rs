//! Hermitian curves `y^q + y = x^{q+1}` over `F_{q^2}` and norm-trace curves
//! `Tr(y) = N(x)` over `F_{q^s}`, with their affine rational points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::aut;
use crate::error::{Error, Result};
use crate::field::{make_field, prime_power, FieldElement, FieldSpec, Kernels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Hermitian { q: u32 },
    NormTrace { q: u32, s: u32 },
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Hermitian { q } => write!(f, "hermitian:{q}"),
            CurveKind::NormTrace { q, s } => write!(f, "normtrace:{q}:{s}"),
        }
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    /// Accepts `hermitian:q` and `normtrace:q:s`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse("curve", s);
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<u32> = parts
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("hermitian", &[q]) => Ok(CurveKind::Hermitian { q }),
            ("normtrace", &[q, 2]) => Ok(CurveKind::Hermitian { q }),
            ("normtrace", &[q, s]) => Ok(CurveKind::NormTrace { q, s }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CurveKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An affine point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }

    pub const ORIGIN: Point = Point {
        x: FieldElement::ZERO,
        y: FieldElement::ZERO,
    };

    /// Parses `(a, b)` where `a` and `b` use the element text format.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Point> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse("point", s))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse("point", s))?;
        Ok(Point {
            x: field.parse_element(a)?,
            y: field.parse_element(b)?,
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointOrder {
    /// σ-orbit order; Hermitian curves only.
    Orbit,
    /// By `(x, y)` in canonical element order.
    Lex,
}

impl FromStr for PointOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "orbit" => Ok(PointOrder::Orbit),
            "lex" => Ok(PointOrder::Lex),
            _ => Err(Error::parse("ordering", s)),
        }
    }
}

impl fmt::Display for PointOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointOrder::Orbit => "orbit",
            PointOrder::Lex => "lex",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Points with a fixed `x`.
    XLine,
    /// Points with a fixed `y`.
    YLine,
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    kind: CurveKind,
    field: Arc<FieldSpec>,
    kernels: Arc<Kernels>,
}

impl PartialEq for CurveSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.field == other.field
    }
}

impl Eq for CurveSpec {}

impl CurveSpec {
    pub fn hermitian(q: u32) -> Result<Self> {
        Self::new(CurveKind::Hermitian { q })
    }

    pub fn norm_trace(q: u32, s: u32) -> Result<Self> {
        if s == 2 {
            return Self::hermitian(q);
        }
        Self::new(CurveKind::NormTrace { q, s })
    }

    pub fn new(kind: CurveKind) -> Result<Self> {
        let (q, s) = match kind {
            CurveKind::Hermitian { q } => (q, 2),
            CurveKind::NormTrace { q, s } => (q, s),
        };
        if s < 2 {
            return Err(Error::Invalid(format!(
                "extension degree {s} must be at least 2"
            )));
        }
        let (p, a) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let field = make_field(p, a.saturating_mul(s), None)?.with_tower(q, s)?;
        let kernels = field.kernels();
        Ok(CurveSpec {
            kind: if s == 2 {
                CurveKind::Hermitian { q }
            } else {
                kind
            },
            field: Arc::new(field),
            kernels: Arc::new(kernels),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.field.tower().q
    }

    pub fn s(&self) -> u32 {
        self.field.tower().s
    }

    pub fn is_hermitian(&self) -> bool {
        matches!(self.kind, CurveKind::Hermitian { .. })
    }

    /// `(q^s - 1) / (q - 1)`.
    pub fn norm_exponent(&self) -> u64 {
        self.field.tower().norm_exponent()
    }

    pub fn genus(&self) -> usize {
        let q = self.q() as usize;
        let l2 = self.norm_exponent() as usize;
        (l2 - 1) * (q.pow(self.s() - 1) - 1) / 2
    }

    pub fn n_affine(&self) -> usize {
        (self.q() as usize).pow(2 * self.s() - 1)
    }

    /// Pole order of `x` at infinity.
    pub fn pole_x(&self) -> usize {
        (self.q() as usize).pow(self.s() - 1)
    }

    /// Pole order of `y` at infinity.
    pub fn pole_y(&self) -> usize {
        self.norm_exponent() as usize
    }

    pub fn kernels(&self) -> &Kernels {
        &self.kernels
    }

    pub fn trace_kernel(&self) -> &[FieldElement] {
        &self.kernels.trace
    }

    pub fn norm_kernel(&self) -> &[FieldElement] {
        &self.kernels.norm
    }

    pub fn is_on_curve(&self, p: Point) -> bool {
        self.field.trace(p.y) == self.field.norm(p.x)
    }

    pub fn check_point(&self, p: Point) -> Result<Point> {
        if self.is_on_curve(p) {
            Ok(p)
        } else {
            Err(Error::OffCurve(p.to_string()))
        }
    }

    /// Smallest `b` (canonical order) with `Tr(b) = N(a)`.
    pub fn base_point(&self, a: FieldElement) -> FieldElement {
        let target = self.field.norm(a);
        self.field
            .elements()
            .find(|&b| self.field.trace(b) == target)
            .expect("trace is surjective")
    }

    /// Smallest `a` (canonical order) with `N(a) = Tr(b)`.
    fn norm_preimage(&self, b: FieldElement) -> FieldElement {
        let target = self.field.trace(b);
        self.field
            .elements()
            .find(|&a| self.field.norm(a) == target)
            .expect("norm is surjective")
    }

    /// `P_a` for [`Axis::XLine`], `Q_b` for [`Axis::YLine`].
    pub fn line_points(&self, axis: Axis, value: FieldElement) -> Vec<Point> {
        let f = &self.field;
        match axis {
            Axis::XLine => {
                let b = self.base_point(value);
                self.trace_kernel()
                    .iter()
                    .map(|&beta| Point::new(value, f.add(b, beta)))
                    .collect()
            }
            Axis::YLine => {
                if f.trace(value).is_zero() {
                    return vec![Point::new(FieldElement::ZERO, value)];
                }
                let a = self.norm_preimage(value);
                self.norm_kernel()
                    .iter()
                    .map(|&alpha| Point::new(f.mul(alpha, a), value))
                    .collect()
            }
        }
    }

    /// All affine points in `(x, y)` canonical order.
    pub fn affine_points(&self) -> Vec<Point> {
        self.field
            .elements()
            .flat_map(|x| self.line_points(Axis::XLine, x))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn enumerate_points(&self, order: PointOrder) -> Result<PointTable> {
        let points = match order {
            PointOrder::Lex => self.affine_points(),
            PointOrder::Orbit => {
                if !self.is_hermitian() {
                    return Err(Error::UnsupportedOrdering(format!(
                        "orbit ordering needs a Hermitian curve, got {}",
                        self.kind
                    )));
                }
                aut::hermitian_orbit_points(self)
                    .into_iter()
                    .flatten()
                    .collect()
            }
        };
        Ok(PointTable::new(self.clone(), order, points))
    }

    /// Projective rational points of the Hermitian curve
    /// `Y^q Z + Y Z^q = X^{q+1}`: the affine points `(x : y : 1)` then
    /// `(0 : 1 : 0)`.
    pub fn projective_points(&self) -> Result<Vec<ProjPoint>> {
        if !self.is_hermitian() {
            return Err(Error::Invalid(
                "projective model is implemented for Hermitian curves".into(),
            ));
        }
        let mut pts: Vec<ProjPoint> = self
            .affine_points()
            .into_iter()
            .map(|p| ProjPoint([p.x, p.y, FieldElement::ONE]))
            .collect();
        pts.push(ProjPoint::INFINITY);
        Ok(pts)
    }

    /// Whether a projective triple lies on the Hermitian curve.
    pub fn is_on_projective(&self, p: &ProjPoint) -> bool {
        let f = &self.field;
        let q = u64::from(self.q());
        let [x, y, z] = p.0;
        let lhs = f.add(f.mul(f.pow(y, q), z), f.mul(y, f.pow(z, q)));
        !p.is_zero() && lhs == f.pow(x, q + 1)
    }
}

/// A projective point `(X : Y : Z)`, normalized so that its last nonzero
/// coordinate is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub [FieldElement; 3]);

impl ProjPoint {
    pub const INFINITY: ProjPoint =
        ProjPoint([FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO]);
    pub const ORIGIN: ProjPoint =
        ProjPoint([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn normalized(self, f: &FieldSpec) -> ProjPoint {
        match self.0.iter().rposition(|c| !c.is_zero()) {
            None => self,
            Some(i) => {
                let inv = f.inv(self.0[i]).expect("nonzero");
                ProjPoint(self.0.map(|c| f.mul(c, inv)))
            }
        }
    }

    pub fn affine(self, f: &FieldSpec) -> Option<Point> {
        let n = self.normalized(f);
        (n.0[2] == FieldElement::ONE).then_some(Point::new(n.0[0], n.0[1]))
    }
}

impl From<Point> for ProjPoint {
    fn from(p: Point) -> Self {
        ProjPoint([p.x, p.y, FieldElement::ONE])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Ordered affine points of a curve; the code coordinates.
#[derive(Clone, Debug)]
pub struct PointTable {
    curve: CurveSpec,
    order: PointOrder,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PointTable {
    fn new(curve: CurveSpec, order: PointOrder, points: Vec<Point>) -> Self {
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        PointTable {
            curve,
            order,
            points,
            index,
        }
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    pub fn order(&self) -> PointOrder {
        self.order
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Table indices of a set of points; panics if one is missing.
    pub fn indices(&self, pts: &[Point]) -> Vec<usize> {
        pts.iter()
            .map(|&p| {
                self.index_of(p)
                    .unwrap_or_else(|| panic!("{p} is not in the table"))
            })
            .collect()
    }

    pub fn line_indices(&self, axis: Axis, value: FieldElement) -> Vec<usize> {
        self.indices(&self.curve.line_points(axis, value))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "curve": self.curve.kind(),
            "ordering": self.order,
            "points": self.points,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_points(c: &CurveSpec) -> Vec<Point> {
        let f = c.field();
        let mut v = Vec::new();
        for x in f.elements() {
            for y in f.elements() {
                // y^q + .. + y == x^{(q^s-1)/(q-1)} evaluated by repeated powering
                let mut tr = FieldElement::ZERO;
                let mut frob = y;
                for _ in 0..c.s() {
                    tr = f.add(tr, frob);
                    frob = f.pow(frob, u64::from(c.q()));
                }
                if tr == f.pow(x, c.norm_exponent()) {
                    v.push(Point::new(x, y));
                }
            }
        }
        v
    }

    #[test]
    fn point_counts() {
        assert_eq!(CurveSpec::hermitian(4).unwrap().affine_points().len(), 64);
        assert_eq!(
            CurveSpec::norm_trace(3, 3).unwrap().affine_points().len(),
            243
        );
        let c2 = CurveSpec::hermitian(2).unwrap();
        assert_eq!(c2.affine_points(), brute_force_points(&c2));
        assert_eq!(c2.affine_points().len(), 8);
        let c23 = CurveSpec::norm_trace(2, 3).unwrap();
        assert_eq!(c23.affine_points(), brute_force_points(&c23));
    }

    #[test]
    fn genus_and_poles() {
        let c = CurveSpec::hermitian(4).unwrap();
        assert_eq!((c.genus(), c.pole_x(), c.pole_y()), (6, 4, 5));
        let c = CurveSpec::norm_trace(2, 3).unwrap();
        assert_eq!((c.genus(), c.n_affine()), (9, 32));
        let c = CurveSpec::norm_trace(3, 3).unwrap();
        assert_eq!(c.genus(), 12 * 8 / 2);
    }

    #[test]
    fn on_curve_examples() {
        let c = CurveSpec::hermitian(4).unwrap();
        let f = c.field();
        assert!(c.is_on_curve(Point::ORIGIN));
        assert!(c.is_on_curve(Point::new(f.zeta(), f.zeta_pow(6))));
        let c2 = CurveSpec::hermitian(2).unwrap();
        assert!(!c2.is_on_curve(Point::new(FieldElement::ONE, FieldElement::ONE)));
    }

    #[test]
    fn line_examples() {
        let c = CurveSpec::hermitian(4).unwrap();
        let f = c.field();
        assert_eq!(
            c.line_points(Axis::YLine, f.zeta_pow(5)),
            vec![Point::new(FieldElement::ZERO, f.zeta_pow(5))]
        );
        let c33 = CurveSpec::norm_trace(3, 3).unwrap();
        let p0 = c33.line_points(Axis::XLine, FieldElement::ZERO);
        assert_eq!(p0.len(), 9);
        assert!(p0.iter().all(|p| p.x.is_zero()));
    }

    #[test]
    fn lines_partition_points() {
        for c in [
            CurveSpec::hermitian(2).unwrap(),
            CurveSpec::hermitian(3).unwrap(),
            CurveSpec::hermitian(4).unwrap(),
            CurveSpec::norm_trace(2, 3).unwrap(),
            CurveSpec::norm_trace(3, 3).unwrap(),
        ] {
            let f = c.field();
            let all = c.affine_points();
            for axis in [Axis::XLine, Axis::YLine] {
                let mut union: Vec<Point> =
                    f.elements().flat_map(|v| c.line_points(axis, v)).collect();
                assert!(union.iter().all(|&p| c.is_on_curve(p)));
                union.sort();
                assert_eq!(union, all, "{axis:?} lines do not partition {}", c.kind());
            }
            let nontrivial = f.elements().filter(|&b| !f.trace(b).is_zero()).count();
            let (q, s) = (c.q() as usize, c.s());
            assert_eq!(nontrivial, q.pow(s) - q.pow(s - 1));
            if c.is_hermitian() {
                assert!(f
                    .elements()
                    .all(|a| c.line_points(Axis::XLine, a).len() == q));
            }
        }
    }

    #[test]
    fn parse_curve_and_point() {
        assert_eq!(
            "hermitian:4".parse::<CurveKind>().unwrap(),
            CurveKind::Hermitian { q: 4 }
        );
        assert_eq!(
            "normtrace:3:3".parse::<CurveKind>().unwrap(),
            CurveKind::NormTrace { q: 3, s: 3 }
        );
        assert!("hermitian".parse::<CurveKind>().is_err());
        assert!("elliptic:3".parse::<CurveKind>().is_err());
        assert!(CurveSpec::hermitian(6).is_err());
        let c = CurveSpec::hermitian(4).unwrap();
        let p = Point::parse(c.field(), "(z^1, z^6)").unwrap();
        assert_eq!(p.to_string(), "(z^1, z^6)");
        assert_eq!(
            Point::parse(c.field(), &Point::ORIGIN.to_string()).unwrap(),
            Point::ORIGIN
        );
        assert!(Point::parse(c.field(), "z^1, z^6").is_err());
    }

    #[test]
    fn orbit_ordering_rules() {
        assert!(CurveSpec::norm_trace(3, 3)
            .unwrap()
            .enumerate_points(PointOrder::Orbit)
            .is_err());
        let t = CurveSpec::hermitian(3)
            .unwrap()
            .enumerate_points(PointOrder::Orbit)
            .unwrap();
        assert_eq!(t.len(), 27);
        for (i, &p) in t.points().iter().enumerate() {
            assert_eq!(t.index_of(p), Some(i));
        }
        assert_eq!(t.point(26), Point::ORIGIN);
    }

    #[test]
    fn projective_points_q2() {
        let c = CurveSpec::hermitian(2).unwrap();
        let pts = c.projective_points().unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|p| c.is_on_projective(p)));
    }
}
