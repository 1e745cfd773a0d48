use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use permdec::aut::sigma_orbits;
use permdec::code::{build_code, hermitian_info_positions};
use permdec::decoder::{oracle_nearest_codeword, parse_word, permutation_decode};
use permdec::pdset::{norm_trace_info_set, PdRequest};
use permdec::sim::{simulate, ErrorModel, SimConfig};
use permdec::verify::run_suite;
use permdec::{make_field, Axis, CodeSpec, CurveSpec, Error, FieldSpec, Point, PointOrder};

#[derive(Parser)]
#[command(
    name = "permdec",
    version,
    about = "Permutation decoding of Hermitian and norm-trace codes"
)]
struct Cli {
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Element table and trace/norm kernels.
    Field(FieldArgs),
    /// Rational points and their line partitions.
    Curve(CurveArgs),
    /// Generator, systematic generator and parity-check matrices.
    Code(CodeArgs),
    /// Orbit partition of the affine points.
    Orbits(CurveArgs),
    /// Builds a PD set.
    Pdset(PdArgs),
    /// Decodes one received word.
    Decode(DecodeArgs),
    /// Runs a seeded burst-channel simulation.
    Simulate(SimArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// `p^m`, or take the field of `--curve`.
    #[arg(long, conflicts_with = "curve")]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Comma-separated coefficients `c_0..c_m`.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    curve: Option<String>,
}

#[derive(Args)]
struct CurveArgs {
    /// `hermitian:q` or `normtrace:q:s`.
    #[arg(long)]
    curve: String,
    /// `orbit` or `lex`; Hermitian curves default to orbit order.
    #[arg(long)]
    ordering: Option<PointOrder>,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long)]
    gamma: usize,
    /// `prop32` or `points:<i,j,...>`.
    #[arg(long)]
    info: Option<String>,
}

#[derive(Args)]
struct PdArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// `x-burst`, `y-burst`, `two`, `nt:ell`, `group` or `group:r`.
    #[arg(long)]
    pd: String,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    pd: PdArgs,
    /// JSON array of exponents (-1 for zero) or a list of elements.
    #[arg(long)]
    word: String,
    /// Also report the nearest codeword by exhaustive search.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    pd: PdArgs,
    /// Error model; defaults to the PD set's certified supports.
    #[arg(long)]
    errors: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// `table1`, `examples`, `oracles` or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long = "q")]
    q: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Construction(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::LengthMismatch { .. } | Error::UnsupportedOrdering(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Construction(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn curve_and_order(args: &CurveArgs) -> Result<(CurveSpec, PointOrder), Failure> {
    let curve = CurveSpec::parse(&args.curve)?;
    let order = args.ordering.unwrap_or(if curve.is_hermitian() {
        PointOrder::Orbit
    } else {
        PointOrder::Lex
    });
    Ok((curve, order))
}

fn parse_info(code: &CodeSpec, spec: &str) -> Result<Vec<usize>, Failure> {
    if spec == "prop32" {
        return Ok(hermitian_info_positions(code)?.info);
    }
    let list = spec
        .strip_prefix("points:")
        .ok_or_else(|| Failure::Usage(format!("bad --info value {spec:?}")))?;
    if list.trim_start().starts_with('(') {
        list.split(';')
            .map(|p| {
                let pt = Point::parse(code.field(), p)?;
                code.table().index_of(pt).ok_or_else(|| {
                    Failure::Construction(format!("{pt} is not a point of the code"))
                })
            })
            .collect()
    } else {
        list.split(',')
            .map(|i| {
                i.trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad position {i:?} in --info")))
            })
            .collect()
    }
}

fn build(args: &CodeArgs, pd: Option<PdRequest>) -> Result<CodeSpec, Failure> {
    let (curve, order) = curve_and_order(&args.curve)?;
    let code = build_code(&curve, args.gamma, order)?;
    let info = match (&args.info, pd) {
        (Some(spec), _) => Some(parse_info(&code, spec)?),
        (None, Some(PdRequest::NormTrace { ell })) => Some(norm_trace_info_set(&code, ell)?),
        (None, _) if curve.is_hermitian() && order == PointOrder::Orbit => {
            Some(hermitian_info_positions(&code)?.info)
        }
        (None, Some(_)) => {
            return Err(Failure::Usage(
                "--info is required for this curve and ordering".into(),
            ))
        }
        (None, None) => None,
    };
    Ok(match info {
        Some(info) => code.systematic_form(&info)?,
        None => code,
    })
}

fn field_cmd(a: &FieldArgs) -> Outcome {
    let f: FieldSpec = match (&a.curve, a.p) {
        (Some(c), _) => CurveSpec::parse(c)?.field().clone(),
        (None, Some(p)) => {
            let modulus = a
                .modulus
                .as_deref()
                .map(|m| {
                    m.split(',')
                        .map(|c| c.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Usage(format!("bad modulus {m:?}")))
                })
                .transpose()?;
            make_field(p, a.m, modulus.as_deref())?
        }
        (None, None) => return Err(Failure::Usage("give --p or --curve".into())),
    };
    let dump = |v: &[permdec::FieldElement]| v.iter().map(|x| x.dump()).collect::<Vec<_>>();
    let kernels = f.kernels();
    Ok(json!({
        "descriptor": f.descriptor(),
        "elements": f.elements().map(|x| json!({
            "exp": x.dump(),
            "coeffs": f.to_coeffs(x),
        })).collect::<Vec<_>>(),
        "kernels": { "trace": dump(&kernels.trace), "norm": dump(&kernels.norm) },
    }))
}

fn curve_cmd(a: &CurveArgs) -> Outcome {
    let (curve, order) = curve_and_order(a)?;
    let table = curve.enumerate_points(order)?;
    let f = curve.field();
    let lines = |axis| -> Vec<Value> {
        f.elements()
            .map(|v| json!({ "value": v.dump(), "indices": table.line_indices(axis, v) }))
            .filter(|l| !l["indices"].as_array().is_some_and(Vec::is_empty))
            .collect()
    };
    Ok(json!({
        "curve": curve.kind(),
        "q": curve.q(),
        "s": curve.s(),
        "genus": curve.genus(),
        "n": curve.n_affine(),
        "pole_x": curve.pole_x(),
        "pole_y": curve.pole_y(),
        "table": table.to_json(),
        "x_lines": lines(Axis::XLine),
        "y_lines": lines(Axis::YLine),
    }))
}

fn orbits_cmd(a: &CurveArgs) -> Outcome {
    let (curve, order) = curve_and_order(a)?;
    let table = curve.enumerate_points(order)?;
    let part = sigma_orbits(&table);
    let mut out = part.to_json(&table);
    // y-values whose whole line Q_b lies in the orbit
    let f = curve.field();
    if let Some(list) = out["orbits"].as_array_mut() {
        for (o, entry) in part.orbits.iter().zip(list) {
            let members: BTreeSet<usize> = o.iter().copied().collect();
            let lines: Vec<i64> = f
                .elements()
                .filter(|&b| {
                    let idx = table.line_indices(Axis::YLine, b);
                    !idx.is_empty() && idx.iter().all(|i| members.contains(i))
                })
                .map(|b| b.dump())
                .collect();
            entry["y_lines"] = json!(lines);
        }
    }
    Ok(out)
}

fn pd_request(s: &str) -> Result<PdRequest, Failure> {
    Ok(s.parse::<PdRequest>()?)
}

fn pdset_cmd(a: &PdArgs) -> Outcome {
    let req = pd_request(&a.pd)?;
    let code = build(&a.code, Some(req))?;
    let pd = req.build(&code)?;
    Ok(json!({ "code": code.to_json(), "pd_set": pd.to_json() }))
}

fn decode_cmd(a: &DecodeArgs) -> Outcome {
    let req = pd_request(&a.pd.pd)?;
    let code = build(&a.pd.code, Some(req))?;
    let pd = req.build(&code)?;
    let y = parse_word(code.field(), code.n(), &a.word)?;
    let res = permutation_decode(&code, &pd, &y)?;
    let dump = |v: &[permdec::FieldElement]| v.iter().map(|x| x.dump()).collect::<Vec<_>>();
    let mut out = json!({
        "status": res.status,
        "codeword": res.codeword.as_deref().map(dump),
        "member_used": res.member_used,
        "member_index": res.member_index,
        "syndrome_weight": res.syndrome_weight,
    });
    if a.oracle {
        out["oracle_codeword"] = json!(dump(&oracle_nearest_codeword(&code, &y)?));
    }
    Ok(out)
}

fn simulate_cmd(a: &SimArgs) -> Outcome {
    let req = pd_request(&a.pd.pd)?;
    let code = build(&a.pd.code, Some(req))?;
    let pd = req.build(&code)?;
    let model = a
        .errors
        .as_deref()
        .map(|s| ErrorModel::parse(code.field(), s))
        .transpose()?;
    let cfg = SimConfig {
        seed: a.seed,
        workers: a.workers,
        trials: a.trials,
        exhaustive: a.exhaustive,
    };
    let report = simulate(&code, &pd, model.as_ref(), &cfg)?;
    serde_json::to_value(&report).map_err(|e| Failure::Construction(e.to_string()))
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let qs = if a.q.is_empty() {
        vec![3, 4, 5]
    } else {
        a.q.clone()
    };
    let report = run_suite(&a.suite, &qs, a.seed).map_err(|e| match e {
        Error::Invalid(m) => Failure::Usage(m),
        e => e.into(),
    })?;
    let value = serde_json::to_value(&report).map_err(|e| Failure::Construction(e.to_string()))?;
    if report.passed {
        Ok(value)
    } else {
        Err(Failure::Verification(value))
    }
}

fn print(v: &Value, compact: bool) {
    let s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    };
    println!("{}", s.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.cmd {
        Command::Field(a) => field_cmd(a),
        Command::Curve(a) => curve_cmd(a),
        Command::Code(a) => build(a, None).map(|c| c.to_json()),
        Command::Orbits(a) => orbits_cmd(a),
        Command::Pdset(a) => pdset_cmd(a),
        Command::Decode(a) => decode_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match outcome {
        Ok(v) => {
            print(&v, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print(&v, cli.json);
            ExitCode::from(3)
        }
        Err(Failure::Usage(m)) => {
            print(&json!({ "error": m, "kind": "usage" }), cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Construction(m)) => {
            print(&json!({ "error": m, "kind": "construction" }), cli.json);
            ExitCode::from(2)
        }
    }
}
