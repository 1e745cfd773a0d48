//! PD sets: automorphisms that move every error support of a family off the
//! information set.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::aut::{self, is_code_automorphism, sigma_orbits, CoordPerm, CurveAut};
use crate::code::CodeSpec;
use crate::curve::{Axis, Point, PointOrder};
use crate::error::{Error, Result};
use crate::field::FieldElement;

pub use crate::code::gamma_candidates;

/// Which error supports a PD set certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum PdFamily {
    /// Subsets of a vertical line `P_a`.
    XBurst,
    /// Subsets of a horizontal line `Q_b`, and of the preimages of `O_q`.
    YBurst,
    /// Every pair of coordinates.
    TwoErrors,
    /// Subsets of `Q_b`, `Tr(b) != 0`, on a norm-trace code.
    NormTrace { ell: u32 },
    /// The whole fix-infinity group; every `r`-subset.
    Group { r: usize },
}

impl fmt::Display for PdFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdFamily::XBurst => f.write_str("x-burst"),
            PdFamily::YBurst => f.write_str("y-burst"),
            PdFamily::TwoErrors => f.write_str("two"),
            PdFamily::NormTrace { ell } => write!(f, "nt:{ell}"),
            PdFamily::Group { r } => write!(f, "group:{r}"),
        }
    }
}

/// PD-set request as given on the command line; `group` without a count
/// means "up to the error-correcting radius".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdRequest {
    XBurst,
    YBurst,
    TwoErrors,
    NormTrace { ell: u32 },
    Group { r: Option<usize> },
}

impl FromStr for PdRequest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::parse("PD family", s);
        match t {
            "x-burst" => Ok(PdRequest::XBurst),
            "y-burst" => Ok(PdRequest::YBurst),
            "two" => Ok(PdRequest::TwoErrors),
            "group" => Ok(PdRequest::Group { r: None }),
            _ => {
                if let Some(e) = t.strip_prefix("nt:") {
                    Ok(PdRequest::NormTrace {
                        ell: e.parse().map_err(|_| bad())?,
                    })
                } else if let Some(r) = t.strip_prefix("group:") {
                    Ok(PdRequest::Group {
                        r: Some(r.parse().map_err(|_| bad())?),
                    })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl PdRequest {
    pub fn build(self, code: &CodeSpec) -> Result<PdSet> {
        match self {
            PdRequest::XBurst => pd_set_x_burst(code),
            PdRequest::YBurst => pd_set_y_burst(code),
            PdRequest::TwoErrors => pd_set_two_errors(code),
            PdRequest::NormTrace { ell } => pd_set_norm_trace(code, ell),
            PdRequest::Group { r } => {
                pd_set_group(code, r.unwrap_or_else(|| code.t().min(code.n() - code.k())))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PdMember {
    pub label: String,
    pub aut: CurveAut,
    pub perm: CoordPerm,
}

#[derive(Clone, Debug)]
pub struct PdSet {
    family: PdFamily,
    members: Vec<PdMember>,
    parameter_count: usize,
    r: usize,
    supports: Vec<Vec<usize>>,
    code_ref: String,
}

impl PdSet {
    pub fn family(&self) -> PdFamily {
        self.family
    }

    pub fn members(&self) -> &[PdMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of parameter choices before removing repeated permutations.
    pub fn parameter_count(&self) -> usize {
        self.parameter_count
    }

    /// Largest certified error count.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The maximal certified supports; all their subsets are covered too.
    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "code_ref": self.code_ref,
            "family": self.family.to_string(),
            "r": self.r,
            "parameter_count": self.parameter_count,
            "size": self.members.len(),
            "supports": self.supports.len(),
            "members": self.members.iter().map(|m| serde_json::json!({
                "label": m.label,
                "perm": m.perm,
            })).collect::<Vec<_>>(),
        })
    }
}

fn code_ref(code: &CodeSpec) -> String {
    format!(
        "{}/gamma={}/{}",
        code.curve().kind(),
        code.gamma(),
        code.table().order()
    )
}

/// Lifts the automorphisms, drops repeated permutations (first wins) and
/// checks that each survivor preserves the code.
fn lift(code: &CodeSpec, auts: Vec<CurveAut>) -> Result<Vec<PdMember>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for aut in auts {
        let perm = aut.induced_permutation(code.table())?;
        if seen.insert(perm.clone()) {
            out.push(PdMember {
                label: aut.label(),
                aut,
                perm,
            });
        }
    }
    let bad: Vec<&str> = out
        .par_iter()
        .filter(|m| !is_code_automorphism(&m.perm, code))
        .map(|m| m.label.as_str())
        .collect();
    if !bad.is_empty() {
        return Err(Error::PdSet(format!(
            "not code automorphisms: {}",
            bad.join(", ")
        )));
    }
    Ok(out)
}

/// Fails unless every support is moved off the information set by some member.
fn certify(code: &CodeSpec, members: &[PdMember], supports: &[Vec<usize>]) -> Result<()> {
    let mut is_info = vec![false; code.n()];
    for &i in code.info_set()? {
        is_info[i] = true;
    }
    let uncovered = supports.par_iter().find_first(|s| {
        !members
            .iter()
            .any(|m| s.iter().all(|&i| !is_info[m.perm.image(i)]))
    });
    match uncovered {
        Some(s) => Err(Error::PdSet(format!(
            "support {s:?} is not moved off the information set"
        ))),
        None => Ok(()),
    }
}

fn require_hermitian_orbit(code: &CodeSpec) -> Result<()> {
    if !code.curve().is_hermitian() || code.table().order() != PointOrder::Orbit {
        return Err(Error::UnsupportedOrdering(
            "this PD set needs an orbit-ordered Hermitian code".into(),
        ));
    }
    code.info_set()?;
    Ok(())
}

/// Fails unless the named orbits are all check positions.
fn require_check_orbits(code: &CodeSpec, labels: &[String]) -> Result<()> {
    let orbits = sigma_orbits(code.table());
    let info: HashSet<usize> = code.info_set()?.iter().copied().collect();
    for l in labels {
        let orbit = orbits.orbit(l).expect("Hermitian orbit label");
        if orbit.iter().any(|i| info.contains(i)) {
            return Err(Error::InadmissibleGamma {
                gamma: code.gamma(),
                detail: format!("{l} meets the information set"),
            });
        }
    }
    Ok(())
}

fn orbit_label(i: u32) -> String {
    format!("O_{i}")
}

/// `{φ_{-a, (-a)^{q+1} - b_a} : a}`, sending each `P_a` into `O_{q+1} ∪ O_{q+2}`.
pub fn pd_set_x_burst(code: &CodeSpec) -> Result<PdSet> {
    require_hermitian_orbit(code)?;
    let curve = code.curve();
    let q = curve.q();
    require_check_orbits(code, &[orbit_label(q + 1), orbit_label(q + 2)])?;
    let auts = x_burst_maps(code, FieldElement::ZERO, true)?;
    let parameter_count = auts.len();
    let members = lift(code, auts)?;
    let f = curve.field();
    let supports: Vec<Vec<usize>> = f
        .elements()
        .map(|a| code.table().line_indices(Axis::XLine, a))
        .collect();
    certify(code, &members, &supports)?;
    Ok(PdSet {
        family: PdFamily::XBurst,
        members,
        parameter_count,
        r: q as usize,
        supports,
        code_ref: code_ref(code),
    })
}

/// `φ_{-a, (-a)^{q+1} - b_a + β}` for every `a` (or every nonzero `a`).
fn x_burst_maps(code: &CodeSpec, beta: FieldElement, include_zero: bool) -> Result<Vec<CurveAut>> {
    let curve = code.curve();
    let f = curve.field();
    let q = u64::from(curve.q());
    f.elements()
        .filter(|a| include_zero || !a.is_zero())
        .map(|a| {
            let na = f.neg(a);
            let b = f.add(f.sub(f.pow(na, q + 1), curve.base_point(a)), beta);
            CurveAut::hermitian_fix_inf(curve, na, b, FieldElement::ONE)
        })
        .collect()
}

/// Supports certified by the y-burst set: every `Q_b` with `Tr(b) != 0` and
/// every preimage `φ_{0,β}^{-1}(O_q)`.
fn y_burst_supports(code: &CodeSpec, members: &[PdMember]) -> Vec<Vec<usize>> {
    let curve = code.curve();
    let f = curve.field();
    let mut supports: Vec<Vec<usize>> = f
        .elements()
        .filter(|&b| !f.trace(b).is_zero())
        .map(|b| code.table().line_indices(Axis::YLine, b))
        .collect();
    let orbits = sigma_orbits(code.table());
    let oq = orbits.orbit(&orbit_label(curve.q())).expect("O_q exists");
    for m in members {
        let inv = m.perm.inverse();
        let mut pre = inv.image_of_set(oq);
        pre.sort_unstable();
        supports.push(pre);
    }
    supports
}

/// `{φ_{0,β} : β ∈ ker Tr}`, sending each `Q_b` into `O_q`.
pub fn pd_set_y_burst(code: &CodeSpec) -> Result<PdSet> {
    require_hermitian_orbit(code)?;
    let curve = code.curve();
    let q = curve.q();
    require_check_orbits(code, &[orbit_label(q)])?;
    let auts = curve
        .trace_kernel()
        .iter()
        .map(|&beta| {
            CurveAut::hermitian_fix_inf(curve, FieldElement::ZERO, beta, FieldElement::ONE)
        })
        .collect::<Result<Vec<_>>>()?;
    let parameter_count = auts.len();
    let members = lift(code, auts)?;
    let supports = y_burst_supports(code, &members);
    certify(code, &members, &supports)?;
    Ok(PdSet {
        family: PdFamily::YBurst,
        members,
        parameter_count,
        r: (q * q - 1) as usize,
        supports,
        code_ref: code_ref(code),
    })
}

/// The identity followed by `φ_{-a, (-a)^{q+1} - b_a + β}` over nonzero `a`
/// and `β ∈ ker Tr`; certified on every pair of coordinates.
pub fn pd_set_two_errors(code: &CodeSpec) -> Result<PdSet> {
    require_hermitian_orbit(code)?;
    let curve = code.curve();
    let q = curve.q();
    require_check_orbits(
        code,
        &[orbit_label(q), orbit_label(q + 1), orbit_label(q + 2)],
    )?;
    let mut auts = vec![CurveAut::hermitian_fix_inf(
        curve,
        FieldElement::ZERO,
        FieldElement::ZERO,
        FieldElement::ONE,
    )?];
    let mut parameter_count = 0;
    let f = curve.field();
    for a in f.nonzero_elements() {
        for &beta in curve.trace_kernel() {
            let na = f.neg(a);
            let b = f.add(
                f.sub(f.pow(na, u64::from(q) + 1), curve.base_point(a)),
                beta,
            );
            auts.push(CurveAut::hermitian_fix_inf(
                curve,
                na,
                b,
                FieldElement::ONE,
            )?);
            parameter_count += 1;
        }
    }
    let members = lift(code, auts)?;
    let supports = subsets(code.n(), 2);
    certify(code, &members, &supports)?;
    Ok(PdSet {
        family: PdFamily::TwoErrors,
        members,
        parameter_count,
        r: 2,
        supports,
        code_ref: code_ref(code),
    })
}

/// Every `r`-subset of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Check points for the norm-trace set: `∪_{c ∈ F_q^*} Q_{c z^ell}`.
pub fn norm_trace_check_points(code: &CodeSpec, ell: u32) -> Result<Vec<usize>> {
    let curve = code.curve();
    let f = curve.field();
    let start = Point::new(f.zeta(), f.zeta_pow(i64::from(ell)));
    if !curve.is_on_curve(start) {
        return Err(Error::OffCurve(start.to_string()));
    }
    let l2 = curve.norm_exponent() as i64;
    let mut pts = Vec::new();
    for j in 1..i64::from(curve.q()) {
        pts.extend(
            code.table()
                .line_indices(Axis::YLine, f.zeta_pow(i64::from(ell) + j * l2)),
        );
    }
    Ok(pts)
}

/// The earliest independent table positions outside the designated check points.
pub fn norm_trace_info_set(code: &CodeSpec, ell: u32) -> Result<Vec<usize>> {
    let check: HashSet<usize> = norm_trace_check_points(code, ell)?.into_iter().collect();
    let free: Vec<usize> = (0..code.n()).filter(|i| !check.contains(i)).collect();
    let mut sub = code.generator().select_columns(&free);
    let pivots = sub.rref(code.field());
    if pivots.len() < code.k() {
        return Err(Error::PdSet(format!(
            "the positions outside the check points have rank {} < k = {}",
            pivots.len(),
            code.k()
        )));
    }
    Ok(pivots.into_iter().map(|c| free[c]).collect())
}

/// `{ψ_{β,1} : β ∈ ker Tr}`, moving each `Q_b` onto the check points
/// selected by `ell`.
pub fn pd_set_norm_trace(code: &CodeSpec, ell: u32) -> Result<PdSet> {
    let curve = code.curve();
    let (q, s) = (curve.q() as usize, curve.s());
    let bound = q.pow(2 * s - 1) - q.pow(s) + 1;
    if code.k() > bound {
        return Err(Error::PdSet(format!("k = {} exceeds {bound}", code.k())));
    }
    let check = norm_trace_check_points(code, ell)?;
    let info: HashSet<usize> = code.info_set()?.iter().copied().collect();
    if check.iter().any(|i| info.contains(i)) {
        return Err(Error::PdSet(format!(
            "information set meets the check points for ell = {ell}"
        )));
    }
    let auts = curve
        .trace_kernel()
        .iter()
        .map(|&beta| CurveAut::norm_trace(curve, beta, FieldElement::ONE))
        .collect::<Result<Vec<_>>>()?;
    let parameter_count = auts.len();
    let members = lift(code, auts)?;
    let f = curve.field();
    let supports: Vec<Vec<usize>> = f
        .elements()
        .filter(|&b| !f.trace(b).is_zero())
        .map(|b| code.table().line_indices(Axis::YLine, b))
        .collect();
    certify(code, &members, &supports)?;
    Ok(PdSet {
        family: PdFamily::NormTrace { ell },
        members,
        parameter_count,
        r: curve.norm_exponent() as usize,
        supports,
        code_ref: code_ref(code),
    })
}

/// The full group of affine-point automorphisms, identity first; certified
/// on every `r`-subset.
pub fn pd_set_group(code: &CodeSpec, r: usize) -> Result<PdSet> {
    code.info_set()?;
    let curve = code.curve();
    let mut auts = vec![CurveAut::identity(curve)];
    auts.extend(if curve.is_hermitian() {
        aut::all_fix_inf(curve)
    } else {
        aut::all_norm_trace(curve)
    });
    let parameter_count = auts.len() - 1;
    let members = lift(code, auts)?;
    if r > code.n() - code.k() {
        return Err(Error::PdSet(format!(
            "r = {r} exceeds n - k = {}",
            code.n() - code.k()
        )));
    }
    let count = binomial(code.n(), r);
    if count > 5_000_000 {
        return Err(Error::TooLarge(format!("{count} supports")));
    }
    let supports = subsets(code.n(), r);
    certify(code, &members, &supports)?;
    Ok(PdSet {
        family: PdFamily::Group { r },
        members,
        parameter_count,
        r,
        supports,
        code_ref: code_ref(code),
    })
}

pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `⌈n/(n-k) ⌈(n-1)/(n-k-1) ⋯ ⌈(n-r+1)/(n-k-r+1)⌉ ⋯ ⌉⌉`, the smallest
/// possible size of an `r`-PD set.
pub fn gordon_lower_bound(n: usize, k: usize, r: usize) -> Result<u64> {
    if k > n || r > n - k {
        return Err(Error::Invalid(format!(
            "r = {r} exceeds n - k for n = {n}, k = {k}"
        )));
    }
    let mut val = 1u64;
    for i in (0..r).rev() {
        let (num, den) = ((n - i) as u64, (n - k - i) as u64);
        val = (num * val).div_ceil(den);
    }
    Ok(val)
}
