//! Curve automorphisms, the coordinate permutations they induce, and their
//! orbits on the affine points.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::code::CodeSpec;
use crate::curve::{CurveSpec, Point, PointOrder, PointTable, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

type Mat3 = [[FieldElement; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutKind {
    /// Projective linear map of the Hermitian curve.
    HermitianGeneral { matrix: Mat3 },
    /// `x -> eps x + a`, `y -> eps a^q x + eps^{q+1} y + b`.
    HermitianFixInf {
        a: FieldElement,
        b: FieldElement,
        eps: FieldElement,
    },
    /// `x -> eps x`, `y -> eps^{(q^s-1)/(q-1)} y + beta`.
    NormTrace {
        beta: FieldElement,
        eps: FieldElement,
    },
}

#[derive(Clone, Debug)]
pub struct CurveAut {
    kind: AutKind,
    curve: CurveSpec,
}

impl PartialEq for CurveAut {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.curve == other.curve
    }
}

impl Eq for CurveAut {}

impl CurveAut {
    pub fn kind(&self) -> &AutKind {
        &self.kind
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    fn field(&self) -> &FieldSpec {
        self.curve.field()
    }

    pub fn identity(curve: &CurveSpec) -> CurveAut {
        CurveAut {
            kind: AutKind::NormTrace {
                beta: FieldElement::ZERO,
                eps: FieldElement::ONE,
            },
            curve: curve.clone(),
        }
    }

    /// The map sending `(0:0:1)` to `p1` and `(0:1:0)` to `p2`, scaled by `eps`.
    pub fn hermitian_general(
        curve: &CurveSpec,
        p1: ProjPoint,
        p2: ProjPoint,
        eps: FieldElement,
    ) -> Result<CurveAut> {
        if !curve.is_hermitian() {
            return Err(Error::InvalidAutomorphism(
                "projective maps need a Hermitian curve".into(),
            ));
        }
        let f = curve.field();
        let q = u64::from(curve.q());
        let (p1, p2) = (p1.normalized(f), p2.normalized(f));
        for p in [p1, p2] {
            if !curve.is_on_projective(&p) {
                return Err(Error::OffCurve(p.to_string()));
            }
        }
        if p1 == p2 {
            return Err(Error::InvalidAutomorphism(
                "the two points must differ".into(),
            ));
        }
        if eps.is_zero() {
            return Err(Error::InvalidAutomorphism("eps must be nonzero".into()));
        }
        let [a, b, e] = p1.0;
        let [c, d, g] = p2.0;
        let frob = |x| f.pow(x, q);
        let det2 = |u, v, w, z| f.sub(f.mul(u, v), f.mul(w, z));
        let xi = f.sum([
            f.neg(f.mul(frob(c), a)),
            f.mul(frob(d), e),
            f.mul(frob(g), b),
        ]);
        let s = f.mul(f.pow(eps, q + 1), xi);
        let matrix = [
            [f.mul(eps, frob(det2(e, d, b, g))), f.mul(s, c), a],
            [f.mul(eps, frob(det2(a, d, b, c))), f.mul(s, d), b],
            [f.mul(eps, frob(det2(e, c, a, g))), f.mul(s, g), e],
        ];
        let aut = CurveAut {
            kind: AutKind::HermitianGeneral { matrix },
            curve: curve.clone(),
        };
        aut.check_projective()?;
        Ok(aut)
    }

    fn check_projective(&self) -> Result<()> {
        let pts = self.curve.projective_points()?;
        let mut seen = HashSet::new();
        for p in &pts {
            let img = self.apply_projective(*p)?;
            if img.is_zero() || !self.curve.is_on_projective(&img) || !seen.insert(img) {
                return Err(Error::InvalidAutomorphism(format!(
                    "{} does not permute the curve points",
                    self.label()
                )));
            }
        }
        Ok(())
    }

    pub fn hermitian_fix_inf(
        curve: &CurveSpec,
        a: FieldElement,
        b: FieldElement,
        eps: FieldElement,
    ) -> Result<CurveAut> {
        if !curve.is_hermitian() {
            return Err(Error::InvalidAutomorphism(
                "phi maps need a Hermitian curve".into(),
            ));
        }
        curve.check_point(Point::new(a, b))?;
        if eps.is_zero() {
            return Err(Error::InvalidAutomorphism("eps must be nonzero".into()));
        }
        Ok(CurveAut {
            kind: AutKind::HermitianFixInf { a, b, eps },
            curve: curve.clone(),
        })
    }

    pub fn norm_trace(
        curve: &CurveSpec,
        beta: FieldElement,
        eps: FieldElement,
    ) -> Result<CurveAut> {
        if !curve.field().trace(beta).is_zero() {
            return Err(Error::InvalidAutomorphism(format!(
                "{beta} is not in ker(Tr)"
            )));
        }
        if eps.is_zero() {
            return Err(Error::InvalidAutomorphism("eps must be nonzero".into()));
        }
        Ok(CurveAut {
            kind: AutKind::NormTrace { beta, eps },
            curve: curve.clone(),
        })
    }

    /// Image of an affine point.
    pub fn apply(&self, p: Point) -> Result<Point> {
        let f = self.field();
        match self.kind {
            AutKind::HermitianFixInf { a, b, eps } => {
                let q = u64::from(self.curve.q());
                let x = f.add(f.mul(eps, p.x), a);
                let y = f.sum([
                    f.mul(f.mul(eps, f.pow(a, q)), p.x),
                    f.mul(f.pow(eps, q + 1), p.y),
                    b,
                ]);
                Ok(Point::new(x, y))
            }
            AutKind::NormTrace { beta, eps } => {
                let x = f.mul(eps, p.x);
                let y = f.add(f.mul(f.norm(eps), p.y), beta);
                Ok(Point::new(x, y))
            }
            AutKind::HermitianGeneral { .. } => self
                .apply_projective(p.into())?
                .affine(f)
                .ok_or(Error::MovesToInfinity),
        }
    }

    /// Image of a projective point (Hermitian curves), normalized.
    pub fn apply_projective(&self, p: ProjPoint) -> Result<ProjPoint> {
        let f = self.field();
        let m = self.matrix()?;
        let v = p.0;
        let img = m.map(|row| f.sum((0..3).map(|j| f.mul(row[j], v[j]))));
        Ok(ProjPoint(img).normalized(f))
    }

    /// The 3x3 matrix acting on column vectors `(X, Y, Z)`.
    pub fn matrix(&self) -> Result<Mat3> {
        let f = self.field();
        let q = u64::from(self.curve.q());
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        match self.kind {
            AutKind::HermitianGeneral { matrix } => Ok(matrix),
            AutKind::HermitianFixInf { a, b, eps } => Ok([
                [eps, z, a],
                [f.mul(eps, f.pow(a, q)), f.pow(eps, q + 1), b],
                [z, z, o],
            ]),
            AutKind::NormTrace { beta, eps } if self.curve.is_hermitian() => {
                Ok([[eps, z, z], [z, f.pow(eps, q + 1), beta], [z, z, o]])
            }
            AutKind::NormTrace { .. } => Err(Error::InvalidAutomorphism(
                "no projective matrix for norm-trace maps".into(),
            )),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CurveAut) -> Result<CurveAut> {
        if self.curve != other.curve {
            return Err(Error::InvalidAutomorphism(
                "maps live on different curves".into(),
            ));
        }
        let f = self.field();
        let kind = match (self.kind, other.kind) {
            (AutKind::NormTrace { beta, eps }, AutKind::NormTrace { beta: b2, eps: e2 }) => {
                AutKind::NormTrace {
                    beta: f.add(f.mul(f.norm(eps), b2), beta),
                    eps: f.mul(eps, e2),
                }
            }
            (AutKind::HermitianFixInf { eps, .. }, AutKind::HermitianFixInf { a, b, eps: e2 }) => {
                let img = self.apply(Point::new(a, b))?;
                AutKind::HermitianFixInf {
                    a: img.x,
                    b: img.y,
                    eps: f.mul(eps, e2),
                }
            }
            _ => {
                let (m1, m2) = (self.matrix()?, other.matrix()?);
                let matrix = std::array::from_fn(|i| {
                    std::array::from_fn(|j| f.sum((0..3).map(|k| f.mul(m1[i][k], m2[k][j]))))
                });
                AutKind::HermitianGeneral { matrix }
            }
        };
        Ok(CurveAut {
            kind,
            curve: self.curve.clone(),
        })
    }

    /// Whether the map fixes the point at infinity (and so permutes the affine points).
    pub fn fixes_infinity(&self) -> bool {
        match self.kind {
            AutKind::HermitianGeneral { .. } => self
                .apply_projective(ProjPoint::INFINITY)
                .is_ok_and(|p| p == ProjPoint::INFINITY),
            _ => true,
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Parses `phi(a,b,eps)` or `psi(beta,eps)`.
    pub fn parse(curve: &CurveSpec, s: &str) -> Result<CurveAut> {
        let t = s.trim();
        let (name, rest) = t
            .split_once('(')
            .ok_or_else(|| Error::parse("automorphism", s))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse("automorphism", s))?;
        let f = curve.field();
        let vals: Vec<FieldElement> = args
            .split(',')
            .map(|a| f.parse_element(a))
            .collect::<Result<_>>()?;
        match (name.trim(), vals.as_slice()) {
            ("phi", &[a, b, eps]) => Self::hermitian_fix_inf(curve, a, b, eps),
            ("phi", &[a, b]) => Self::hermitian_fix_inf(curve, a, b, FieldElement::ONE),
            ("psi", &[beta, eps]) => Self::norm_trace(curve, beta, eps),
            _ => Err(Error::parse("automorphism", s)),
        }
    }

    /// Lifts the map to a permutation of the table's coordinates.
    pub fn induced_permutation(&self, table: &PointTable) -> Result<CoordPerm> {
        if table.curve() != &self.curve {
            return Err(Error::InvalidAutomorphism(
                "table belongs to another curve".into(),
            ));
        }
        let map = table
            .points()
            .iter()
            .map(|&p| {
                let img = self.apply(p)?;
                table.index_of(img).ok_or_else(|| {
                    Error::InvalidAutomorphism(format!("{p} maps off the curve to {img}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CoordPerm::new(map, table.order())
    }
}

impl fmt::Display for CurveAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AutKind::HermitianFixInf { a, b, eps } => write!(f, "phi({a},{b},{eps})"),
            AutKind::NormTrace { beta, eps } => write!(f, "psi({beta},{eps})"),
            AutKind::HermitianGeneral { matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
                    .collect();
                write!(f, "mat({})", rows.join(","))
            }
        }
    }
}

/// Coordinate permutation: `map[i] = j` when the automorphism sends `P_i` to `P_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordPerm {
    map: Vec<usize>,
    order: PointOrder,
}

impl Serialize for CoordPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.map.serialize(s)
    }
}

impl CoordPerm {
    pub fn new(map: Vec<usize>, order: PointOrder) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in &map {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Invalid("coordinate map is not a bijection".into()));
            }
        }
        Ok(CoordPerm { map, order })
    }

    pub fn identity(n: usize, order: PointOrder) -> Self {
        CoordPerm {
            map: (0..n).collect(),
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn ordering(&self) -> PointOrder {
        self.order
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> CoordPerm {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        CoordPerm {
            map: inv,
            order: self.order,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CoordPerm) -> CoordPerm {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CoordPerm {
            map: other.map.iter().map(|&j| self.map[j]).collect(),
            order: self.order,
        }
    }

    /// Order of the permutation in the symmetric group.
    pub fn cycle_order(&self) -> u64 {
        let mut seen = vec![false; self.len()];
        let mut order = 1u64;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            order = order / gcd64(order, len) * len;
        }
        order
    }

    /// Moves `v[i]` to position `map[i]`.
    pub fn apply<T: Copy>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        let mut out = v.to_vec();
        for (i, &j) in self.map.iter().enumerate() {
            out[j] = v[i];
        }
        Ok(out)
    }

    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        set.iter().map(|&i| self.map[i]).collect()
    }
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

/// Whether the permutation maps the code onto itself.
pub fn is_code_automorphism(perm: &CoordPerm, code: &CodeSpec) -> bool {
    perm.len() == code.n()
        && code
            .generator()
            .row_vecs()
            .iter()
            .all(|row| code.contains(&perm.apply(row).expect("length checked")))
}

/// An ordered partition of the table indices into labelled orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub labels: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn orbit(&self, label: &str) -> Option<&[usize]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.orbits[i].as_slice())
    }

    /// Whether the orbits are disjoint and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &i in self.orbits.iter().flatten() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self, table: &PointTable) -> serde_json::Value {
        let orbits: Vec<_> = self
            .labels
            .iter()
            .zip(&self.orbits)
            .map(|(l, o)| {
                serde_json::json!({
                    "label": l,
                    "size": o.len(),
                    "indices": o,
                    "points": o.iter().map(|&i| table.point(i)).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "curve": table.curve().kind(), "ordering": table.order(), "orbits": orbits })
    }
}

/// `ker(Tr)` in the order used to label the Hermitian orbits: zero first,
/// then by exponent with `1 = z^{q^2-1}` placed last.
pub fn hermitian_betas(curve: &CurveSpec) -> Vec<FieldElement> {
    let n1 = curve.field().group_order();
    let mut betas: Vec<FieldElement> = curve.trace_kernel().to_vec();
    betas.sort_by_key(|b| match b.log() {
        None => 0,
        Some(0) => n1,
        Some(e) => e,
    });
    betas
}

/// The Hermitian σ-orbits `O_1, .., O_{q+2}` as point lists.
///
/// `O_i` (`i <= q`) is the orbit of `(1, b + β_i)` listed as
/// `(z^t, z^{(q+1)t}(b + β_i))` for `t = 1, .., q^2 - 1`, where `b` is the
/// base point over `x = 1`.
pub(crate) fn hermitian_orbit_points(curve: &CurveSpec) -> Vec<Vec<Point>> {
    let f = curve.field();
    let q = i64::from(curve.q());
    let n1 = i64::from(f.group_order());
    let b1 = curve.base_point(FieldElement::ONE);
    let betas = hermitian_betas(curve);
    let mut orbits: Vec<Vec<Point>> = betas
        .iter()
        .map(|&beta| {
            let c = f.add(b1, beta);
            (1..=n1)
                .map(|t| Point::new(f.zeta_pow(t), f.mul(f.zeta_pow((q + 1) * t), c)))
                .collect()
        })
        .collect();
    orbits.push(
        betas
            .iter()
            .filter(|b| !b.is_zero())
            .map(|&b| Point::new(FieldElement::ZERO, b))
            .collect(),
    );
    orbits.push(vec![Point::ORIGIN]);
    orbits
}

/// ψ-orbits of `ψ_{0,z}` on a norm-trace curve with structural labels.
fn norm_trace_orbit_points(curve: &CurveSpec) -> Vec<(String, Vec<Point>)> {
    let f = curve.field();
    let n1 = i64::from(f.group_order());
    let l2 = curve.norm_exponent() as i64;
    let step = f.zeta_pow(l2);
    let mut out = Vec::new();
    for start in curve.line_points(crate::curve::Axis::XLine, f.zeta()) {
        let mut y = start.y;
        let pts = (1..=n1)
            .map(|t| {
                let p = Point::new(f.zeta_pow(t), y);
                y = f.mul(y, step);
                p
            })
            .collect();
        out.push((format!("long:{}", start.y), pts));
    }
    let mut short: Vec<FieldElement> = curve
        .trace_kernel()
        .iter()
        .copied()
        .filter(|b| !b.is_zero())
        .collect();
    short.sort();
    let mut seen = HashSet::new();
    for b in short {
        if seen.contains(&b) {
            continue;
        }
        let mut y = b;
        let mut pts = Vec::new();
        while seen.insert(y) {
            pts.push(Point::new(FieldElement::ZERO, y));
            y = f.mul(y, step);
        }
        out.push((format!("short:{b}"), pts));
    }
    out.push(("origin".into(), vec![Point::ORIGIN]));
    out
}

/// Orbits of `σ = φ_{0,0,z}` (Hermitian, labels `O_1..O_{q+2}`) or of
/// `ψ_{0,z}` (norm-trace, structural labels), as indices into `table`.
pub fn sigma_orbits(table: &PointTable) -> OrbitPartition {
    let curve = table.curve();
    let (labels, orbits) = if curve.is_hermitian() {
        hermitian_orbit_points(curve)
            .into_iter()
            .enumerate()
            .map(|(i, pts)| (format!("O_{}", i + 1), table.indices(&pts)))
            .unzip()
    } else {
        norm_trace_orbit_points(curve)
            .into_iter()
            .map(|(l, pts)| (l, table.indices(&pts)))
            .unzip()
    };
    OrbitPartition { labels, orbits }
}

/// The generator of [`sigma_orbits`].
pub fn sigma(curve: &CurveSpec) -> CurveAut {
    let z = curve.field().zeta();
    if curve.is_hermitian() {
        CurveAut::hermitian_fix_inf(curve, FieldElement::ZERO, FieldElement::ZERO, z)
            .expect("origin is on the curve")
    } else {
        CurveAut::norm_trace(curve, FieldElement::ZERO, z).expect("zero is in ker(Tr)")
    }
}

/// Every `φ_{a,b,ε}` of a Hermitian curve, ordered by `(a, b, ε)`.
pub fn all_fix_inf(curve: &CurveSpec) -> Vec<CurveAut> {
    let f = curve.field();
    let mut v = Vec::new();
    for p in curve.affine_points() {
        for eps in f.nonzero_elements() {
            v.push(
                CurveAut::hermitian_fix_inf(curve, p.x, p.y, eps).expect("point is on the curve"),
            );
        }
    }
    v
}

/// Every `ψ_{β,ε}`, ordered by `(β, ε)`.
pub fn all_norm_trace(curve: &CurveSpec) -> Vec<CurveAut> {
    let f = curve.field();
    curve
        .trace_kernel()
        .iter()
        .flat_map(|&beta| {
            f.nonzero_elements()
                .map(move |eps| CurveAut::norm_trace(curve, beta, eps).expect("beta is in ker(Tr)"))
        })
        .collect()
}

/// Every projective map from the two-point construction, as permutations of
/// [`CurveSpec::projective_points`].
pub fn all_general_permutations(curve: &CurveSpec) -> Result<Vec<Vec<usize>>> {
    let pts = curve.projective_points()?;
    let index: std::collections::HashMap<ProjPoint, usize> =
        pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let f = curve.field();
    let mut out = Vec::new();
    for &p1 in &pts {
        for &p2 in &pts {
            if p1 == p2 {
                continue;
            }
            for eps in f.nonzero_elements() {
                let aut = CurveAut::hermitian_general(curve, p1, p2, eps)?;
                let perm = pts
                    .iter()
                    .map(|&p| Ok(index[&aut.apply_projective(p)?]))
                    .collect::<Result<Vec<_>>>()?;
                out.push(perm);
            }
        }
    }
    Ok(out)
}
