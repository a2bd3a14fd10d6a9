//! `knotjet`: curve inspection, exact tables, jets, verification and numerics.
//!
//! Every command prints one JSON document `{"manifest": …, "result": …}`.
//! Exact quantities are never printed as floats: rationals are
//! `{"num": "…", "den": "…"}` string pairs, polynomials are ascending lists of
//! those, and elements of `Q[√d]` are `{"disc": d, "coords": [a, b]}`.

mod complex;

use clap::{Parser, Subcommand, ValueEnum};
use knotjet::algebra::poly::QPoly;
use knotjet::curve::{self, cusp_polynomial, elliptic_preset, resolve, ASpectralCurve, CurveError};
use knotjet::jets::{evaluate_jet, jets_for_curve, kashaev_expansion, JetError};
use knotjet::modular::{
    elliptic_invariants, serre_table, theta_quartics, AlgNum, EllipticInvariants, ThetaField,
    ThetaQuartics,
};
use knotjet::numerics::{
    integrate_path, unit_branchpoint, NumericConfig, NumericCurve, NumericError, Sheet,
};
use knotjet::tr::exact_amplitudes;
use knotjet::verify::curve_suite;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_USAGE: u8 = 2;
const EXIT_CLASS: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_NUMERIC: u8 = 5;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "knotjet",
    version,
    about = "Exact topological recursion for genus-1 A-spectral curves"
)]
struct Cli {
    /// Output layout
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Decimal digits for numerics (5..=16); overrides KNOTJET_DIGITS
    #[arg(long, global = true)]
    digits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Pretty,
    Compact,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curve inspection
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Theta quartics and the Serre table; accepts A-curves and elliptic labels
    Theta {
        reference: String,
        /// largest Serre-table row
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// All amplitudes G through a level
    Amplitudes {
        reference: String,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Jet coefficients ĵ_1..ĵ_χ
    Jets {
        reference: String,
        #[arg(long, default_value_t = 2)]
        chi: usize,
        /// evaluate at `w=<rational>`
        #[arg(long)]
        eval: Option<String>,
    },
    /// Coefficients of the ε_N expansion at the complete point
    Kashaev {
        reference: String,
        #[arg(long, default_value_t = 3)]
        chi: usize,
    },
    /// Run the golden suite for a curve
    Verify {
        reference: String,
        /// count documented misprints in the reference values as mismatches
        #[arg(long)]
        strict: bool,
    },
    /// Leading order ĵ₋₁(u) by numerical integration
    Volume {
        reference: String,
        /// endpoint, e.g. `i*pi` or `0.1+2.5i`
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// base point; defaults to the nearest branchpoint on the imaginary axis
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, value_enum, default_value_t = SheetArg::Geometric)]
        sheet: SheetArg,
    },
}

#[derive(Subcommand, Debug)]
enum CurveAction {
    /// Reduced model, σ, cusp field and ramification
    Info { reference: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SheetArg {
    Plus,
    Minus,
    /// the sheet with non-negative imaginary part
    Geometric,
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    curve: String,
    bounds: Value,
    format: Format,
    numeric: Option<NumericConfig>,
    exit_status: u8,
    timing_ms: u128,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        let code = match e {
            CurveError::Class(_) => EXIT_CLASS,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e)
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        let code = if matches!(e, NumericError::Config(_)) {
            EXIT_USAGE
        } else {
            EXIT_NUMERIC
        };
        Failure::new(code, e)
    }
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        let code = match e {
            JetError::Chi(_) => EXIT_USAGE,
            JetError::IrrationalSerre => EXIT_CLASS,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e)
    }
}

fn rational(x: &BigRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn rationals(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

fn poly(p: &QPoly) -> Value {
    rationals(&p.c)
}

fn ints(xs: &[i64]) -> Value {
    json!(xs)
}

fn algnum(tq: &ThetaQuartics, x: &AlgNum) -> Value {
    match (&tq.field, x) {
        (ThetaField::Quadratic { d, .. }, AlgNum::Quad(a, b)) => {
            json!({ "disc": d.to_string(), "coords": [rational(a), rational(b)] })
        }
        (_, AlgNum::Quad(a, b)) => json!({ "coords": [rational(a), rational(b)] }),
        (_, AlgNum::Pair(v)) => {
            json!({ "field": "pair", "coords": v.iter().map(|c| rationals(c)).collect::<Vec<_>>() })
        }
    }
}

fn curve_ref(reference: &str) -> Result<ASpectralCurve, Failure> {
    Ok(resolve(reference)?)
}

fn numeric_config(digits: Option<u32>) -> Result<NumericConfig, Failure> {
    let cfg = match digits {
        Some(d) => NumericConfig::with_digits(d)?,
        None => NumericConfig::from_env()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn curve_info(c: &ASpectralCurve) -> Value {
    let ram = c.ramification();
    let cusp = cusp_polynomial(c).ok().map(|d| {
        json!({
            "l_c": rational(&d.l_c),
            "poly": poly(&d.poly),
            "field_disc": d.field_disc.to_string(),
        })
    });
    json!({
        "label": c.label(),
        "component": { "a": ints(&c.component.a), "b": ints(&c.component.b), "c": ints(&c.component.c) },
        "model": { "S": poly(&c.s), "P1": poly(&c.p1), "P2": poly(&c.p2), "R": poly(&c.r) },
        "sigma": poly(&c.sigma),
        "sigma_at_one": rational(&c.sigma_at_one()),
        "torsion": c.torsion,
        "cusp": cusp,
        "ramification": {
            "points": ram.count,
            "factors": c.factors.iter().map(poly).collect::<Vec<_>>(),
            "pairing": ram.pairing,
        },
    })
}

fn theta_info(reference: &str, depth: usize) -> Result<Value, Failure> {
    let inv = match elliptic_preset(reference) {
        Some(e) if curve::preset(reference).is_err() => EllipticInvariants::from_ainvs(e.ainvs),
        _ => {
            let c = curve_ref(reference)?;
            elliptic_invariants(&c.s).map_err(|e| Failure::new(EXIT_CLASS, e))?
        }
    };
    let tq = theta_quartics(&inv).map_err(|e| Failure::new(EXIT_CLASS, e))?;
    let table = serre_table(&tq, depth);
    let field = match &tq.field {
        ThetaField::Quadratic { d, .. } => json!({ "kind": "quadratic", "disc": d.to_string() }),
        ThetaField::Cubic { .. } => json!({ "kind": "cubic" }),
    };
    Ok(json!({
        "g2": rational(&inv.g2),
        "g3": rational(&inv.g3),
        "field": field,
        "t": tq.t.iter().map(|x| algnum(&tq, x)).collect::<Vec<_>>(),
        "i0": tq.i0,
        "serre": {
            "i0": table.i0,
            "rows": table.rows.iter().map(|r| r.iter().map(|x| algnum(&tq, x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "column": table.rational_column(&tq).map(|c| rationals(&c)),
        },
    }))
}

fn amplitudes(reference: &str, level: usize) -> Result<Value, Failure> {
    if level == 0 {
        return Err(Failure::new(EXIT_USAGE, "--level must be at least 1"));
    }
    let c = curve_ref(reference)?;
    let table = exact_amplitudes(&c, level).map_err(|e| Failure::new(EXIT_INTERNAL, e))?;
    let rows: Vec<Value> = table
        .values()
        .map(|a| json!({ "n": a.n, "h": a.h, "d": a.d, "r": a.r, "grade": a.grade, "num": rationals(&a.num) }))
        .collect();
    Ok(json!({ "level": level, "amplitudes": rows }))
}

fn parse_eval(s: &str) -> Result<BigRational, Failure> {
    let v = s.strip_prefix("w=").unwrap_or(s).trim();
    let bad = || Failure::new(EXIT_USAGE, format!("cannot read {s:?} as w=<rational>"));
    match v.split_once('/') {
        Some((n, d)) => {
            let (n, d): (BigInt, BigInt) = (
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            );
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(v.parse().map_err(|_| bad())?)),
    }
}

fn jets(reference: &str, chi: usize, eval: Option<&str>) -> Result<Value, Failure> {
    let w0 = eval.map(parse_eval).transpose()?;
    let c = curve_ref(reference)?;
    let jets = jets_for_curve(&c, chi)?;
    let mut rows = Vec::new();
    for j in &jets {
        let mut row =
            json!({ "chi": j.chi, "r": j.value.r, "grade": j.grade, "num": poly(&j.value.num) });
        if let Some(w) = &w0 {
            let v = evaluate_jet(j, w, &c.sigma)?;
            row["value"] = json!({ "coeff": rational(&v.coeff), "sigma": rational(&v.sigma), "half_exp": v.half_exp });
        }
        rows.push(row);
    }
    let mut out = json!({ "sigma": poly(&c.sigma), "jets": rows });
    if let Some(w) = &w0 {
        out["w"] = rational(w);
        out["sigma_at_w"] = rational(&c.sigma.eval(&knotjet::algebra::ring::QQ, w));
    }
    Ok(out)
}

fn kashaev(reference: &str, chi: usize) -> Result<Value, Failure> {
    let c = curve_ref(reference)?;
    let jets = jets_for_curve(&c, chi)?;
    let k = kashaev_expansion(&jets, &c.sigma)?;
    Ok(json!({ "sigma_at_one": rational(&k.sigma_one), "eps_coeffs": rationals(&k.coeffs) }))
}

fn verify(reference: &str, strict: bool, cfg: &NumericConfig) -> Result<(Value, u8), Failure> {
    let c = curve_ref(reference)?;
    let suite = curve_suite(c, cfg);
    let mismatch = suite.iter().any(|k| !k.pass && (strict || !k.erratum));
    let rows: Vec<Value> = suite
        .iter()
        .map(|k| {
            let status = match (k.pass, k.erratum) {
                (true, _) => "PASS",
                (false, true) => "ERRATUM",
                (false, false) => "FAIL",
            };
            json!({ "id": k.id, "title": k.title, "status": status, "notes": k.notes })
        })
        .collect();
    let code = if mismatch { EXIT_MISMATCH } else { 0 };
    Ok((json!({ "strict": strict, "criteria": rows }), code))
}

fn volume(
    reference: &str,
    u: &str,
    from: Option<&str>,
    sheet: SheetArg,
    cfg: &NumericConfig,
) -> Result<Value, Failure> {
    let parse = |s: &str| {
        complex::parse(s).map_err(|e| Failure::new(EXIT_USAGE, format!("--u {s:?}: {e}")))
    };
    let end = parse(u)?;
    let c = curve_ref(reference)?;
    let start = match from {
        Some(s) => parse(s)?,
        None => unit_branchpoint(&c, end)?,
    };
    let nc = NumericCurve::new(&c);
    let path = [start, end];
    let run = |s: Sheet| integrate_path(&nc, &path, s, cfg);
    let (value, chosen) = match sheet {
        SheetArg::Plus => (run(Sheet::Plus)?.value, "plus"),
        SheetArg::Minus => (run(Sheet::Minus)?.value, "minus"),
        SheetArg::Geometric => {
            let (a, b) = (run(Sheet::Plus)?.value, run(Sheet::Minus)?.value);
            if a.im >= b.im {
                (a, "plus")
            } else {
                (b, "minus")
            }
        }
    };
    let pt = |z: Complex64| json!([z.re, z.im]);
    Ok(
        json!({ "from": pt(start), "to": pt(end), "sheet": chosen, "value": pt(value), "half_volume": value.im }),
    )
}

fn describe(cmd: &Command) -> (String, String, Value) {
    match cmd {
        Command::Curve {
            action: CurveAction::Info { reference },
        } => ("curve info".into(), reference.clone(), json!({})),
        Command::Theta { reference, depth } => {
            ("theta".into(), reference.clone(), json!({ "depth": depth }))
        }
        Command::Amplitudes { reference, level } => (
            "amplitudes".into(),
            reference.clone(),
            json!({ "level": level }),
        ),
        Command::Jets {
            reference,
            chi,
            eval,
        } => (
            "jets".into(),
            reference.clone(),
            json!({ "chi": chi, "eval": eval }),
        ),
        Command::Kashaev { reference, chi } => {
            ("kashaev".into(), reference.clone(), json!({ "chi": chi }))
        }
        Command::Verify { reference, strict } => (
            "verify".into(),
            reference.clone(),
            json!({ "strict": strict }),
        ),
        Command::Volume {
            reference,
            u,
            from,
            sheet,
        } => (
            "volume".into(),
            reference.clone(),
            json!({ "u": u, "from": from, "sheet": format!("{sheet:?}").to_lowercase() }),
        ),
    }
}

fn run(cli: &Cli) -> Result<(Value, u8, Option<NumericConfig>), Failure> {
    let numeric = matches!(cli.command, Command::Verify { .. } | Command::Volume { .. });
    let cfg = if numeric {
        Some(numeric_config(cli.digits)?)
    } else {
        None
    };
    let (value, code) = match &cli.command {
        Command::Curve {
            action: CurveAction::Info { reference },
        } => (curve_info(&curve_ref(reference)?), 0),
        Command::Theta { reference, depth } => (theta_info(reference, *depth)?, 0),
        Command::Amplitudes { reference, level } => (amplitudes(reference, *level)?, 0),
        Command::Jets {
            reference,
            chi,
            eval,
        } => (jets(reference, *chi, eval.as_deref())?, 0),
        Command::Kashaev { reference, chi } => (kashaev(reference, *chi)?, 0),
        Command::Verify { reference, strict } => verify(reference, *strict, cfg.as_ref().unwrap())?,
        Command::Volume {
            reference,
            u,
            from,
            sheet,
        } => (
            volume(reference, u, from.as_deref(), *sheet, cfg.as_ref().unwrap())?,
            0,
        ),
    };
    Ok((value, code, cfg))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let clock = Instant::now();
    let (command, curve, bounds) = describe(&cli.command);
    let (result, code, numeric) = match run(&cli) {
        Ok((v, code, cfg)) => (v, code, cfg),
        Err(f) => {
            eprintln!("knotjet: {}", f.message);
            (json!({ "error": f.message }), f.code, None)
        }
    };
    let manifest = Manifest {
        command,
        curve,
        bounds,
        format: cli.format,
        numeric,
        exit_status: code,
        timing_ms: clock.elapsed().as_millis(),
    };
    let doc = json!({ "manifest": manifest, "result": result });
    let text = match cli.format {
        Format::Pretty => serde_json::to_string_pretty(&doc),
        Format::Compact => serde_json::to_string(&doc),
    };
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(
        std::io::stdout(),
        "{}",
        text.expect("JSON values always serialize")
    );
    ExitCode::from(code)
}
