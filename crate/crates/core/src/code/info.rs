//! Information positions for Hermitian codes built from prefixes of the
//! σ-orbits `O_1, .., O_q` of an orbit-ordered point table.

use std::fmt;

use serde::Serialize;

use crate::aut::sigma_orbits;
use crate::code::CodeSpec;
use crate::curve::PointOrder;
use crate::error::{Error, Result};

/// How the prefix lengths of the two partially used orbits are read in the
/// second form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BReading {
    /// `O_i` gets `N - C(q-t, 2) + max(0, r-t)` points and `O_{i+1}` gets
    /// `C(t+1, 2) + 1 + min(r, t)`, where `N = q^2 - 1`.
    Layered,
    /// One of the literal sum readings, by index into the candidate lists.
    Literal { first: usize, second: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form")]
pub enum InfoForm {
    /// `γ = (i+1)(q^2-1) - q + j`.
    A { i: usize, j: usize },
    /// `γ = i(q^2-1) + tq + r`.
    B {
        i: usize,
        t: usize,
        r: usize,
        reading: BReading,
    },
}

impl InfoForm {
    pub fn i(&self) -> usize {
        match *self {
            InfoForm::A { i, .. } | InfoForm::B { i, .. } => i,
        }
    }
}

impl fmt::Display for InfoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoForm::A { i, j } => write!(f, "A(i={i}, j={j})"),
            InfoForm::B { i, t, r, reading } => {
                write!(f, "B(i={i}, t={t}, r={r}, ")?;
                match reading {
                    BReading::Layered => write!(f, "layered)"),
                    BReading::Literal { first, second } => write!(f, "literal {first}/{second})"),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoPositions {
    pub info: Vec<usize>,
    pub check: Vec<usize>,
    pub form: InfoForm,
    /// Points taken from each of `O_1, .., O_q`.
    pub counts: Vec<usize>,
    /// Every candidate tried, with the reason it was rejected.
    pub attempts: Vec<String>,
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

// sum a + (a+1) + .. + b, zero when the range is empty
fn range_sum(a: i64, b: i64) -> i64 {
    if b < a {
        0
    } else {
        (a + b) * (b - a + 1) / 2
    }
}

fn literal_first(q: i64, t: i64, r: i64) -> [i64; 4] {
    [
        range_sum(t, q - 1) + r - (t + 1),
        range_sum(t, q - 1 + r) - (t + 1),
        range_sum(t, q - 1 + r - (t + 1)),
        (q - t) + r - (t + 1),
    ]
}

fn literal_second(q: i64, t: i64, r: i64) -> [i64; 4] {
    [
        range_sum(1, q - t) + r,
        range_sum(1, q - t + r),
        range_sum(1, q) - t + r,
        (q - t) + r,
    ]
}

/// Candidate `(form, per-orbit counts)` pairs for `γ`, most preferred first:
/// form A, then the layered form B, then the literal form-B readings.
pub(crate) fn candidates(q: usize, gamma: usize) -> Vec<(InfoForm, Vec<i64>)> {
    let n1 = q * q - 1;
    let full = n1 as i64;
    let mut a_forms = Vec::new();
    let mut layered = Vec::new();
    let mut literal = Vec::new();
    for i in 0..q {
        for j in 0..q {
            if (i + 1) * n1 + j == gamma + q {
                let mut counts = vec![0i64; q];
                counts[..i].fill(full);
                counts[i] = (choose2(q) + j) as i64;
                a_forms.push((InfoForm::A { i, j }, counts));
            }
        }
    }
    for i in 0..q {
        for t in 0..q {
            for r in 0..q {
                if i * n1 + t * q + r != gamma {
                    continue;
                }
                let base = |first: i64, second: i64| {
                    let mut counts = vec![0i64; q];
                    if i >= 1 {
                        counts[..i - 1].fill(full);
                        counts[i - 1] = first;
                    }
                    if i < q {
                        counts[i] = second;
                    }
                    counts
                };
                let (qi, ti, ri) = (q as i64, t as i64, r as i64);
                let first = full - choose2(q - t) as i64 + (ri - ti).max(0);
                let second = choose2(t + 1) as i64 + 1 + ri.min(ti);
                layered.push((
                    InfoForm::B {
                        i,
                        t,
                        r,
                        reading: BReading::Layered,
                    },
                    base(first, second),
                ));
                for (x, &a1) in literal_first(qi, ti, ri).iter().enumerate() {
                    for (y, &a2) in literal_second(qi, ti, ri).iter().enumerate() {
                        literal.push((
                            InfoForm::B {
                                i,
                                t,
                                r,
                                reading: BReading::Literal {
                                    first: x,
                                    second: y,
                                },
                            },
                            base(a1, a2),
                        ));
                    }
                }
            }
        }
    }
    a_forms.into_iter().chain(layered).chain(literal).collect()
}

/// Orbit-prefix information positions for an orbit-ordered Hermitian code.
///
/// Every parameter choice matching `γ` is tried; the first whose prefix
/// lengths sum to `k` with independent columns is returned.
pub fn hermitian_info_positions(code: &CodeSpec) -> Result<InfoPositions> {
    let curve = code.curve();
    if !curve.is_hermitian() || code.table().order() != PointOrder::Orbit {
        return Err(Error::UnsupportedOrdering(
            "orbit-prefix positions need an orbit-ordered Hermitian code".into(),
        ));
    }
    let q = curve.q() as usize;
    let n1 = (q * q - 1) as i64;
    let orbits = sigma_orbits(code.table());
    let gamma = code.gamma();
    let mut attempts = Vec::new();
    for (form, counts) in candidates(q, gamma) {
        if counts.iter().any(|&c| c < 0 || c > n1) {
            attempts.push(format!("{form}: prefix lengths {counts:?} out of range"));
            continue;
        }
        let total: i64 = counts.iter().sum();
        if total != code.k() as i64 {
            attempts.push(format!("{form}: {total} positions but k = {}", code.k()));
            continue;
        }
        let info: Vec<usize> = counts
            .iter()
            .zip(&orbits.orbits)
            .flat_map(|(&c, orbit)| orbit[..c as usize].iter().copied())
            .collect();
        if !code.verify_information_set(&info)? {
            attempts.push(format!("{form}: columns are dependent"));
            continue;
        }
        let mut is_info = vec![false; code.n()];
        for &i in &info {
            is_info[i] = true;
        }
        let check = (0..code.n()).filter(|&i| !is_info[i]).collect();
        return Ok(InfoPositions {
            info,
            check,
            form,
            counts: counts.iter().map(|&c| c as usize).collect(),
            attempts,
        });
    }
    let detail = if attempts.is_empty() {
        "no parameters match".to_string()
    } else {
        attempts.join("; ")
    };
    Err(Error::InadmissibleGamma { gamma, detail })
}

/// `γ` values with a form-A or form-B parameter choice with `i <= q - 2`
/// that satisfies the table conditions, annotated with the parameters.
pub fn gamma_candidates(q: usize) -> Vec<(usize, InfoForm)> {
    let n1 = q * q - 1;
    let n = q * q * q;
    let mut out: Vec<(usize, InfoForm)> = Vec::new();
    for i in 0..=q.saturating_sub(2) {
        for j in 0..=q.saturating_sub(2) {
            let gamma = ((i + 1) * n1 + j).checked_sub(q);
            if let Some(g) = gamma.filter(|&g| g > 0 && g < n) {
                out.push((g, InfoForm::A { i, j }));
            }
        }
        for t in 0..q {
            for r in 0..q {
                let ok = if t == 0 {
                    (i != 0 || r == q - 1) && (i != q - 2 || r + 2 <= q)
                } else {
                    r + 2 != q && i + 2 < q
                };
                let g = i * n1 + t * q + r;
                if ok && g > 0 && g < n {
                    out.push((
                        g,
                        InfoForm::B {
                            i,
                            t,
                            r,
                            reading: BReading::Layered,
                        },
                    ));
                }
            }
        }
    }
    out.sort_by_key(|&(g, form)| (g, matches!(form, InfoForm::B { .. })));
    out.dedup_by_key(|(g, _)| *g);
    out
}
