//! Command dispatch and JSON rendering of results.

use serde_json::{json, Value};

use crate::absolute::{abs_count, abs_factor, AbsPair, AbsTrace};
use crate::cli::format::{format_poly, format_terms_xyz, format_uni};
use crate::cli::parse::parse_poly;
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};
use crate::polytope::degeneracy_report;
use crate::recombine::{count_factors_with, irreducible_test_traced, solve_recombination_with, RecombOptions, Trace};
use crate::unifactor::set_seed;

/// The commands of the front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Factor,
    Count,
    Irreducible,
    AbsFactor,
    AbsCount,
    Polytope,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Factor => "factor",
            Command::Count => "count",
            Command::Irreducible => "irreducible",
            Command::AbsFactor => "absfactor",
            Command::AbsCount => "abscount",
            Command::Polytope => "polytope",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "factor" => Command::Factor,
            "count" => Command::Count,
            "irreducible" => Command::Irreducible,
            "absfactor" => Command::AbsFactor,
            "abscount" => Command::AbsCount,
            "polytope" => Command::Polytope,
            _ => return Err(Error::InvalidInput(format!("unknown command {s}"))),
        })
    }
}

/// Settings of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Field: `q`, `p=7`, `p=2,k=3` or `p=2,k=3,m=t^3+t+1`.
    pub field: String,
    pub seed: u64,
    pub trace: bool,
    /// Lower bound for the truncation order of the higher truncation equations.
    pub precision: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: "q".into(),
            seed: 0,
            trace: false,
            precision: None,
        }
    }
}

/// Parses the value of the `--field` option.
pub fn parse_field_spec(spec: &str) -> Result<FieldCtx> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("q") {
        return Ok(FieldCtx::rationals());
    }
    let mut p = None;
    let mut k = None;
    let mut m = None;
    for part in spec.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidField(format!("expected key=value, got {part:?}")))?;
        let num = || {
            val.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidField(format!("{key} must be a positive integer")))
        };
        match key.trim() {
            "p" => p = Some(num()?),
            "k" => k = Some(num()? as usize),
            "m" => m = Some(val.trim().to_string()),
            other => return Err(Error::InvalidField(format!("unknown key {other:?}"))),
        }
    }
    let p = p.ok_or_else(|| Error::InvalidField("missing p".into()))?;
    let k = k.unwrap_or(1);
    let modulus = match m {
        None => None,
        Some(text) => {
            let base = FieldCtx::prime(p)?;
            let poly = parse_poly(&text.replace('t', "x"), &base).map_err(|e| Error::InvalidField(e.to_string()))?;
            if poly.deg_y() > 0 {
                return Err(Error::InvalidField("modulus must be a polynomial in t".into()));
            }
            let coeffs: Vec<u64> = poly
                .cy(0)
                .coeffs()
                .iter()
                .map(|c| match c {
                    Elem::P(v) => *v,
                    _ => 0,
                })
                .collect();
            Some(coeffs)
        }
    };
    FieldCtx::gf(p, k, modulus)
}

/// Process exit code for an error: 2 for unreadable input, 3 for violated
/// preconditions, 4 for unsupported regimes and 1 for internal failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::ExponentTooLarge { .. } | Error::InvalidField(_) | Error::InvalidInput(_) => 2,
        Error::DivisionByZero
        | Error::ContextMismatch
        | Error::NotApplicable(_)
        | Error::NotDivisible
        | Error::BadCenter
        | Error::LeadingCoeffNotUnit
        | Error::DimensionMismatch(..)
        | Error::Inseparable
        | Error::FieldTooSmall(_) => 3,
        Error::SmallCharacteristic(_)
        | Error::SmallCharacteristicUnsupported(_)
        | Error::TowerTooDeep(_)
        | Error::RecombinationCap(_) => 4,
        Error::Internal(_) => 1,
    }
}

/// Machine-readable name of an error.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::ContextMismatch => "context_mismatch",
        Error::NotApplicable(_) => "not_applicable",
        Error::NotDivisible => "not_divisible",
        Error::SmallCharacteristic(_) => "small_characteristic",
        Error::BadCenter => "bad_center",
        Error::LeadingCoeffNotUnit => "leading_coeff_not_unit",
        Error::DimensionMismatch(..) => "dimension_mismatch",
        Error::Inseparable => "inseparable",
        Error::SmallCharacteristicUnsupported(_) => "small_characteristic_unsupported",
        Error::TowerTooDeep(_) => "tower_too_deep",
        Error::FieldTooSmall(_) => "field_too_small",
        Error::RecombinationCap(_) => "recombination_cap",
        Error::Syntax { .. } => "syntax",
        Error::ExponentTooLarge { .. } => "exponent_too_large",
        Error::InvalidField(_) => "invalid_field",
        Error::InvalidInput(_) => "invalid_input",
        Error::Internal(_) => "internal",
    }
}

/// `{error, detail}`.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": error_code(e), "detail": e.to_string() })
}

fn elem(f: &FieldCtx, a: &Elem) -> String {
    f.fmt_elem(a)
}

fn vectors(f: &FieldCtx, rows: &[Vec<Elem>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|a| Value::String(elem(f, a))).collect()))
            .collect(),
    )
}

fn trace_json(k: &FieldCtx, t: &Trace) -> Value {
    let vf = if t.prime_field { k.prime_field() } else { k.clone() };
    json!({
        "d_x": t.d_x,
        "d_y": t.d_y,
        "s": t.s,
        "degrees": t.degrees,
        "moebius": t.moebius.as_ref().map(|a| elem(k, a)),
        "modulus": t.modulus.as_ref().map(|a| format_uni(a, "x")),
        "prime_field": t.prime_field,
        "dim_ker_da": t.dim_da,
        "ker_da_basis": vectors(&vf, &t.da_basis),
        "dim_v_fp": t.dim_na,
        "dim_z": t.dim_z,
        "z_basis": vectors(&vf, &t.z_basis),
        "q": t.q,
        "dim_w_q": t.dim_wq,
        "precisions": t.precisions,
        "exit": format!("{:?}", t.exit),
        "fallback": t.fallback,
    })
}

fn abs_trace_json(k: &FieldCtx, t: &AbsTrace) -> Value {
    json!({
        "d_x": t.d_x,
        "d_y": t.d_y,
        "s": t.s,
        "sbar": t.sbar,
        "moebius": t.moebius.as_ref().map(|a| elem(k, a)),
        "dim_v": t.dim_v,
        "dim_z": t.dim_z,
        "dim_w": t.dim_w,
        "q": t.q,
        "alpha": t.alpha.as_ref().map(|a| elem(k, a)),
        "separator": t.separator.iter().map(|a| elem(k, a)).collect::<Vec<_>>(),
        "method": t.method,
    })
}

fn pair_json(k: &FieldCtx, p: &AbsPair) -> Value {
    json!({
        "q": format_uni(&p.q, "z"),
        "P": format_terms_xyz(k, &p.terms_xyz(k)),
    })
}

/// Runs `command` on the polynomial `text` and returns the JSON document.
pub fn run(command: Command, text: &str, cfg: &RunConfig) -> Result<Value> {
    set_seed(cfg.seed);
    let k = parse_field_spec(&cfg.field)?;
    let f = parse_poly(text, &k)?;
    let opts = RecombOptions {
        min_precision: cfg.precision,
        ..RecombOptions::default()
    };
    let (result, trace) = match command {
        Command::Factor => {
            let sol = solve_recombination_with(&f, opts)?;
            (
                json!({
                    "unit": elem(&k, &sol.unit),
                    "content": sol.content.iter().map(|c| format_uni(c, "x")).collect::<Vec<_>>(),
                    "factors": sol.factors.iter().map(format_poly).collect::<Vec<_>>(),
                }),
                trace_json(&k, &sol.trace),
            )
        }
        Command::Count => {
            let c = count_factors_with(&f, opts)?;
            (
                json!({ "count": c.count, "exact": c.exact, "refined": c.refined }),
                trace_json(&k, &c.trace),
            )
        }
        Command::Irreducible => {
            let (irr, t) = irreducible_test_traced(&f)?;
            (json!({ "irreducible": irr }), trace_json(&k, &t))
        }
        Command::AbsFactor => {
            let a = abs_factor(&f)?;
            (
                json!({
                    "unit": elem(&k, &a.unit),
                    "count": a.count(),
                    "pairs": a.pairs.iter().map(|p| pair_json(&k, p)).collect::<Vec<_>>(),
                }),
                abs_trace_json(&k, &a.trace),
            )
        }
        Command::AbsCount => {
            let c = abs_count(&f)?;
            (json!({ "count": c.count }), abs_trace_json(&k, &c.trace))
        }
        Command::Polytope => {
            let r = degeneracy_report(&f)?;
            let places: Vec<Value> = r
                .places
                .iter()
                .map(|p| {
                    json!({
                        "place": p.place.as_ref().map(|u| format_uni(u, "y")).unwrap_or_else(|| "infinity".into()),
                        "multiplicity": p.multiplicity,
                        "nondegenerate": p.nondegenerate(),
                        "count": p.count,
                        "lattice_length": p.lattice_length,
                    })
                })
                .collect();
            (
                json!({
                    "s_F": r.s_f,
                    "sbar_F": r.sbar_f,
                    "nondegenerate": r.nondegenerate,
                    "counts_exact": r.counts_exact,
                    "places": places,
                }),
                Value::Null,
            )
        }
    };
    let mut out = json!({
        "command": command.name(),
        "input": text,
        "field": cfg.field,
        "result": result,
    });
    if cfg.trace && !trace.is_null() {
        out["trace"] = trace;
    }
    Ok(out)
}
