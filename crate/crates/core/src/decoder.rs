//! Permutation decoding and brute-force reference decoders.

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{weight, CodeSpec};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::pdset::PdSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecodeStatus {
    Decoded,
    FailNoMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub codeword: Option<Vec<FieldElement>>,
    pub member_used: Option<String>,
    pub member_index: Option<usize>,
    /// Syndrome weight under the accepted member, or under the first member
    /// when none was accepted.
    pub syndrome_weight: usize,
}

impl DecodeResult {
    pub fn is_decoded(&self) -> bool {
        self.status == DecodeStatus::Decoded
    }
}

/// Tries the members in order and decodes with the first one whose
/// permuted word has syndrome weight at most `t`.
pub fn permutation_decode(code: &CodeSpec, pd: &PdSet, y: &[FieldElement]) -> Result<DecodeResult> {
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let t = code.t();
    let mut first_weight = None;
    for (idx, m) in pd.members().iter().enumerate() {
        let z = m.perm.apply(y)?;
        let w = code.syndrome_weight(&z)?;
        first_weight.get_or_insert(w);
        if w <= t {
            let c = m.perm.inverse().apply(&code.reencode(&z)?)?;
            return Ok(DecodeResult {
                status: DecodeStatus::Decoded,
                codeword: Some(c),
                member_used: Some(m.label.clone()),
                member_index: Some(idx),
                syndrome_weight: w,
            });
        }
    }
    Ok(DecodeResult {
        status: DecodeStatus::FailNoMember,
        codeword: None,
        member_used: None,
        member_index: None,
        syndrome_weight: first_weight.unwrap_or(0),
    })
}

/// Decodes many words in parallel; results keep the input order.
pub fn decode_batch(
    code: &CodeSpec,
    pd: &PdSet,
    words: &[Vec<FieldElement>],
) -> Result<Vec<DecodeResult>> {
    words
        .par_iter()
        .map(|y| permutation_decode(code, pd, y))
        .collect()
}

const ORACLE_LIMIT_BITS: f64 = 24.0;

fn check_feasible(code: &CodeSpec) -> Result<()> {
    let bits = code.k() as f64 * f64::from(code.field().order()).log2();
    if bits > ORACLE_LIMIT_BITS {
        return Err(Error::TooLarge(format!(
            "{}^{}",
            code.field().order(),
            code.k()
        )));
    }
    Ok(())
}

/// Visits every codeword `m · G` with messages in lexicographic order.
fn for_each_codeword(code: &CodeSpec, mut visit: impl FnMut(&[FieldElement])) {
    let f = code.field();
    let g = code.generator();
    let k = code.k();
    let elems: Vec<FieldElement> = f.elements().collect();
    let mut digits = vec![0usize; k];
    let mut word = vec![FieldElement::ZERO; code.n()];
    loop {
        visit(&word);
        // odometer step, last digit fastest
        let Some(pos) = (0..k).rev().find(|&i| digits[i] + 1 < elems.len()) else {
            return;
        };
        for i in pos..k {
            let old = elems[digits[i]];
            digits[i] = if i == pos { digits[i] + 1 } else { 0 };
            let delta = f.sub(elems[digits[i]], old);
            add_scaled_row(f, &mut word, g.row(i), delta);
        }
    }
}

fn add_scaled_row(f: &FieldSpec, word: &mut [FieldElement], row: &[FieldElement], c: FieldElement) {
    if c.is_zero() {
        return;
    }
    for (w, &r) in word.iter_mut().zip(row) {
        *w = f.add(*w, f.mul(c, r));
    }
}

fn distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Nearest codeword by exhaustive search; ties go to the lexicographically
/// first message.
pub fn oracle_nearest_codeword(code: &CodeSpec, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
    check_feasible(code)?;
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let mut best: Option<(usize, Vec<FieldElement>)> = None;
    for_each_codeword(code, |c| {
        let d = distance(c, y);
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, c.to_vec()));
        }
    });
    Ok(best.expect("the zero word is a codeword").1)
}

/// Minimum weight of a nonzero codeword by exhaustive search.
pub fn oracle_min_distance(code: &CodeSpec) -> Result<usize> {
    check_feasible(code)?;
    let mut best = usize::MAX;
    for_each_codeword(code, |c| {
        let w = weight(c);
        if w > 0 {
            best = best.min(w);
        }
    });
    Ok(best)
}

/// Parses a received word: a JSON array of exponents (`-1` for zero) or
/// elements in text form separated by commas or whitespace.
pub fn parse_word(field: &FieldSpec, n: usize, s: &str) -> Result<Vec<FieldElement>> {
    let t = s.trim();
    let word: Vec<FieldElement> = if t.starts_with('[') {
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(t).map_err(|_| Error::parse("received word", s))?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::Number(x) => x
                    .as_i64()
                    .ok_or_else(|| Error::parse("received word", s))
                    .and_then(|e| field.from_dump(e)),
                serde_json::Value::String(x) => field.parse_element(x),
                _ => Err(Error::parse("received word", s)),
            })
            .collect::<Result<_>>()?
    } else {
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| field.parse_element(p))
            .collect::<Result<_>>()?
    };
    if word.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: word.len(),
        });
    }
    Ok(word)
}
