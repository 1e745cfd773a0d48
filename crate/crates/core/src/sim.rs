//! Burst-channel simulation: inject errors from a family, decode, count.
//!
//! Every trial draws from its own ChaCha stream keyed by the trial index,
//! so results do not depend on the number of workers.

use std::fmt;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::CodeSpec;
use crate::curve::Axis;
use crate::decoder::permutation_decode;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::pdset::{PdFamily, PdSet};

/// Above this many cases an exhaustive request falls back to seeded samples.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueMode {
    /// Every nonzero vector supported inside the support.
    All,
    /// Every vector that is nonzero at each position of the support.
    Full,
    /// Seeded samples, nonzero at each position.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineSel {
    One(FieldElement),
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorModel {
    XLine {
        a: LineSel,
        values: ValueMode,
    },
    YLine {
        b: LineSel,
        values: ValueMode,
    },
    Pair {
        i: usize,
        j: usize,
        values: ValueMode,
    },
    Random {
        w: usize,
    },
}

impl ErrorModel {
    /// Parses `xline:a=z^3;values=random`, `yline:b=z^2;values=all`,
    /// `pair:i,j` or `random:w=2`. `a=all` / `b=all` selects every line.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<ErrorModel> {
        let bad = || Error::parse("error model", s);
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let mut parts = rest.split(';').map(str::trim);
        let head = parts.next().ok_or_else(bad)?;
        let mut values = None;
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(bad)?;
            if k.trim() != "values" {
                return Err(bad());
            }
            values = Some(match v.trim() {
                "all" => ValueMode::All,
                "full" => ValueMode::Full,
                "random" => ValueMode::Random,
                _ => return Err(bad()),
            });
        }
        let line = |key: &str| -> Result<LineSel> {
            let (k, v) = head.split_once('=').ok_or_else(bad)?;
            if k.trim() != key {
                return Err(bad());
            }
            match v.trim() {
                "all" => Ok(LineSel::All),
                e => Ok(LineSel::One(field.parse_element(e)?)),
            }
        };
        match kind.trim() {
            "xline" => Ok(ErrorModel::XLine {
                a: line("a")?,
                values: values.unwrap_or(ValueMode::Random),
            }),
            "yline" => Ok(ErrorModel::YLine {
                b: line("b")?,
                values: values.unwrap_or(ValueMode::Random),
            }),
            "pair" => {
                let (i, j) = head.split_once(',').ok_or_else(bad)?;
                let (i, j) = (
                    i.trim().parse().map_err(|_| bad())?,
                    j.trim().parse().map_err(|_| bad())?,
                );
                if i == j {
                    return Err(bad());
                }
                Ok(ErrorModel::Pair {
                    i,
                    j,
                    values: values.unwrap_or(ValueMode::Full),
                })
            }
            "random" => {
                let (k, v) = head.split_once('=').ok_or_else(bad)?;
                if k.trim() != "w" || values.is_some() {
                    return Err(bad());
                }
                Ok(ErrorModel::Random {
                    w: v.trim().parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals = |v: &ValueMode| match v {
            ValueMode::All => "all",
            ValueMode::Full => "full",
            ValueMode::Random => "random",
        };
        let sel = |s: &LineSel| match s {
            LineSel::All => "all".to_string(),
            LineSel::One(x) => x.to_string(),
        };
        match self {
            ErrorModel::XLine { a, values } => {
                write!(f, "xline:a={};values={}", sel(a), vals(values))
            }
            ErrorModel::YLine { b, values } => {
                write!(f, "yline:b={};values={}", sel(b), vals(values))
            }
            ErrorModel::Pair { i, j, values } => write!(f, "pair:{i},{j};values={}", vals(values)),
            ErrorModel::Random { w } => write!(f, "random:w={w}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub seed: u64,
    pub workers: Option<usize>,
    /// Samples per support in random mode, or total trials for `random:w`.
    pub trials: usize,
    /// Enumerate every value assignment when the case count allows it.
    pub exhaustive: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 0,
            workers: None,
            trials: 100,
            exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportStats {
    pub support: Vec<usize>,
    pub trials: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureExample {
    pub support: Vec<usize>,
    pub error: Vec<FieldElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulationReport {
    pub code: serde_json::Value,
    pub pd_family: String,
    pub error_model: String,
    pub value_mode: ValueMode,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub per_support: Vec<SupportStats>,
    pub failure_examples: Vec<FailureExample>,
    pub wall_clock_ms: u128,
}

impl SimulationReport {
    /// The report without the wall-clock field, for reproducibility checks.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("wall_clock_ms");
        v
    }
}

enum Supports {
    Fixed(Vec<Vec<usize>>),
    RandomWeight(usize),
}

fn line_supports(code: &CodeSpec, axis: Axis, sel: LineSel) -> Vec<Vec<usize>> {
    let f = code.field();
    let values: Vec<FieldElement> = match sel {
        LineSel::One(v) => vec![v],
        LineSel::All => f.elements().collect(),
    };
    values
        .into_iter()
        .map(|v| code.table().line_indices(axis, v))
        .collect()
}

fn model_supports(code: &CodeSpec, model: &ErrorModel) -> Result<(Supports, ValueMode)> {
    Ok(match *model {
        ErrorModel::XLine { a, values } => {
            (Supports::Fixed(line_supports(code, Axis::XLine, a)), values)
        }
        ErrorModel::YLine { b, values } => {
            (Supports::Fixed(line_supports(code, Axis::YLine, b)), values)
        }
        ErrorModel::Pair { i, j, values } => {
            if i >= code.n() || j >= code.n() {
                return Err(Error::Invalid(format!(
                    "pair ({i}, {j}) out of range 0..{}",
                    code.n()
                )));
            }
            (Supports::Fixed(vec![vec![i, j]]), values)
        }
        ErrorModel::Random { w } => {
            if w > code.n() {
                return Err(Error::Invalid(format!(
                    "weight {w} exceeds n = {}",
                    code.n()
                )));
            }
            (Supports::RandomWeight(w), ValueMode::Random)
        }
    })
}

fn cases(order: u32, len: usize, mode: ValueMode) -> u128 {
    let base = match mode {
        ValueMode::All => u128::from(order),
        _ => u128::from(order - 1),
    };
    let total = (0..len)
        .try_fold(1u128, |acc, _| acc.checked_mul(base))
        .unwrap_or(u128::MAX);
    if mode == ValueMode::All {
        total - 1
    } else {
        total
    }
}

// The `idx`-th assignment in mixed radix, last position fastest.
fn assignment(f: &FieldSpec, len: usize, mode: ValueMode, idx: u128) -> Vec<FieldElement> {
    let (offset, base, shift) = match mode {
        ValueMode::All => (0u32, f.order(), 1u128),
        _ => (1u32, f.order() - 1, 0u128),
    };
    let mut rest = idx + shift;
    let mut v = vec![FieldElement::ZERO; len];
    for slot in v.iter_mut().rev() {
        let d = (rest % u128::from(base)) as u32;
        rest /= u128::from(base);
        *slot = f.element(d + offset);
    }
    v
}

fn random_nonzero(f: &FieldSpec, rng: &mut ChaCha8Rng) -> FieldElement {
    f.zeta_pow(i64::from(rng.gen_range(0..f.group_order())))
}

struct Job {
    support: usize,
    case: u128,
}

/// Runs the simulation. Without a model the PD set's certified supports are used.
pub fn simulate(
    code: &CodeSpec,
    pd: &PdSet,
    model: Option<&ErrorModel>,
    cfg: &SimConfig,
) -> Result<SimulationReport> {
    let started = Instant::now();
    let f = code.field();
    let (supports, requested) = match model {
        Some(m) => model_supports(code, m)?,
        None => {
            let mode = match pd.family() {
                PdFamily::TwoErrors | PdFamily::Group { .. } => ValueMode::Full,
                _ => ValueMode::All,
            };
            (Supports::Fixed(pd.supports().to_vec()), mode)
        }
    };
    let (support_list, jobs, mode, random_weight) = match supports {
        Supports::RandomWeight(w) => {
            let jobs: Vec<Job> = (0..cfg.trials as u128)
                .map(|case| Job { support: 0, case })
                .collect();
            (Vec::new(), jobs, ValueMode::Random, w)
        }
        Supports::Fixed(list) => {
            let total: u128 = list
                .iter()
                .map(|s| cases(f.order(), s.len(), requested))
                .fold(0u128, u128::saturating_add);
            let mode =
                if requested != ValueMode::Random && cfg.exhaustive && total <= EXHAUSTIVE_LIMIT {
                    requested
                } else {
                    ValueMode::Random
                };
            let mut jobs = Vec::new();
            for (si, s) in list.iter().enumerate() {
                let count = if mode == ValueMode::Random {
                    cfg.trials as u128
                } else {
                    cases(f.order(), s.len(), mode)
                };
                jobs.extend((0..count).map(|case| Job { support: si, case }));
            }
            (list, jobs, mode, 0)
        }
    };
    let run = |(idx, job): (usize, &Job)| -> Result<(bool, Vec<usize>, Vec<FieldElement>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(idx as u64);
        let message: Vec<FieldElement> = (0..code.k())
            .map(|_| f.element(rng.gen_range(0..f.order())))
            .collect();
        let sent = code.encode(&message)?;
        let support = if random_weight > 0 {
            let mut s = sample(&mut rng, code.n(), random_weight).into_vec();
            s.sort_unstable();
            s
        } else {
            support_list[job.support].clone()
        };
        let values = if mode == ValueMode::Random {
            (0..support.len())
                .map(|_| random_nonzero(f, &mut rng))
                .collect()
        } else {
            assignment(f, support.len(), mode, job.case)
        };
        let mut error = vec![FieldElement::ZERO; code.n()];
        for (&i, &v) in support.iter().zip(&values) {
            error[i] = v;
        }
        let received: Vec<FieldElement> = sent
            .iter()
            .zip(&error)
            .map(|(&c, &e)| f.add(c, e))
            .collect();
        let out = permutation_decode(code, pd, &received)?;
        let ok = out.codeword.as_deref() == Some(sent.as_slice());
        Ok((ok, support, error))
    };
    let outcomes: Vec<(bool, Vec<usize>, Vec<FieldElement>)> = {
        let work = || {
            jobs.par_iter()
                .enumerate()
                .map(run)
                .collect::<Result<Vec<_>>>()
        };
        match cfg.workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?
                .install(work)?,
            None => work()?,
        }
    };
    let mut per_support: Vec<SupportStats> = if random_weight > 0 {
        Vec::new()
    } else {
        support_list
            .iter()
            .map(|s| SupportStats {
                support: s.clone(),
                trials: 0,
                failures: 0,
            })
            .collect()
    };
    let mut failures = 0u64;
    let mut failure_examples = Vec::new();
    for (job, (ok, support, error)) in jobs.iter().zip(outcomes) {
        if let Some(stats) = per_support.get_mut(job.support) {
            stats.trials += 1;
            stats.failures += u64::from(!ok);
        }
        if !ok {
            failures += 1;
            if failure_examples.len() < 5 {
                failure_examples.push(FailureExample { support, error });
            }
        }
    }
    let trials = jobs.len() as u64;
    Ok(SimulationReport {
        code: serde_json::json!({
            "curve": code.curve().kind(),
            "gamma": code.gamma(),
            "ordering": code.table().order(),
            "n": code.n(),
            "k": code.k(),
            "t": code.t(),
        }),
        pd_family: pd.family().to_string(),
        error_model: model.map_or_else(|| format!("family:{}", pd.family()), ToString::to_string),
        value_mode: mode,
        seed: cfg.seed,
        trials,
        successes: trials - failures,
        failures,
        per_support,
        failure_examples,
        wall_clock_ms: started.elapsed().as_millis(),
    })
}
