use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use slope_core::alexander::{
    distinctness_matrix, normalize_positive, symmetric_range, twist_family_alex, TwistComponent,
};
use slope_core::arith::normalize_slope;
use slope_core::classify::{
    cable_fill_reduce, enumerate_cable_witnesses, is_lens_space, mirror_surgery, moser_classify,
};
use slope_core::hypbounds::{core_geodesic_bound, filling_constants, safe_q_threshold};
use slope_core::invariants::{
    cw_lens, cw_surgery, d_gap_max, d_lens, d_surgery, prop51_required_sum,
};
use slope_core::knotdb::{dump_records, embedded_fixtures, fixture, load_records, Record};
use slope_core::num::fmt_ratio;
use slope_core::search::{
    find_candidates, linking_form_value, nonchar_twist_slopes, residue_obstruction,
    verify_certificate, SearchParams,
};
use slope_core::{Error, LaurentPoly1, LaurentPoly2, SlopeCertificate, VSequence};

#[derive(Parser, Debug)]
#[command(
    name = "slopes",
    version,
    about = "Surgery-slope invariants and certified slope search"
)]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Casson-Walker invariant of the lens space L(P, Q)
    #[command(allow_negative_numbers = true)]
    LensCw { p: BigInt, q: BigInt },

    /// Casson-Walker invariant of P/Q surgery on a knot with Δ''(1) = DD
    #[command(allow_negative_numbers = true)]
    SurgeryCw { dd: BigInt, p: BigInt, q: BigInt },

    /// d-invariant of L(P, Q) in spin^c structure I, or of P/Q surgery with --v
    #[command(allow_negative_numbers = true)]
    DInv {
        p: BigInt,
        q: BigInt,
        i: BigInt,
        /// V-sequence V0,V1,... of the knot
        #[arg(long, value_delimiter = ',')]
        v: Option<Vec<BigInt>>,
    },

    /// Largest gap d(L(P,1), j) - d(L(P,QP), j) over spin^c structures
    #[command(allow_negative_numbers = true)]
    DGap { p: BigInt, qp: BigInt },

    /// Alexander polynomial of the knot from twisting one component K times
    #[command(allow_negative_numbers = true)]
    AlexTwist {
        /// Fixture name or JSON-lines file holding a link record
        #[arg(long)]
        link: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        component: u8,
        #[arg(long)]
        k: i64,
    },

    /// Alexander-polynomial comparison of K_m and J_n for 0 < |m| <= M, 0 < |n| <= N
    DistinctMatrix {
        #[arg(long)]
        link: String,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        range: Vec<i64>,
    },

    /// Seifert data of P/Q surgery on the torus knot T(A, B)
    #[command(allow_negative_numbers = true)]
    Moser {
        a: BigInt,
        b: BigInt,
        p: BigInt,
        q: BigInt,
        /// Use the mirror -T(A, B)
        #[arg(long)]
        mirror: bool,
    },

    /// Rewrite P/Q surgery on the (R, S)-cable as a surgery on the companion
    #[command(allow_negative_numbers = true)]
    CableReduce {
        r: BigInt,
        s: BigInt,
        p: BigInt,
        q: BigInt,
    },

    /// All cable-derived slopes with numerator up to N and s up to S
    CableSlopes {
        #[arg(long)]
        max_p: BigInt,
        #[arg(long)]
        max_s: BigInt,
    },

    /// Linking-form value -(Q/P)·A·B mod 1
    #[command(allow_negative_numbers = true)]
    LinkForm {
        p: BigInt,
        q: BigInt,
        a: BigInt,
        b: BigInt,
    },

    /// Whether Q·QP is a square mod P
    #[command(allow_negative_numbers = true)]
    ResidueCheck { p: BigInt, q: BigInt, qp: BigInt },

    /// Search for certified slopes P/Q
    #[command(allow_negative_numbers = true)]
    FindSlopes {
        #[arg(long = "C")]
        c: BigInt,
        #[arg(long)]
        q: BigInt,
        /// Torus-knot parameters A,B
        #[arg(long, value_delimiter = ',', num_args = 1)]
        torus: Option<Vec<BigInt>>,
        /// Require Q ≡ 1 (mod 4)
        #[arg(long)]
        q1mod4: bool,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        limit: BigInt,
    },

    /// Re-check certificates from a file
    VerifyCert {
        file: PathBuf,
        #[arg(long = "C")]
        c: BigInt,
        #[arg(long)]
        q: BigInt,
    },

    /// Hyperbolic filling constants for systole X
    HypConsts {
        #[arg(long)]
        sys: f64,
    },

    /// Non-characterising slope pairs from twisting a link with linking number L
    #[command(allow_negative_numbers = true)]
    TwistSlopes {
        #[arg(long)]
        l: BigInt,
        #[arg(long)]
        m: BigInt,
        #[arg(long)]
        n: Option<BigInt>,
    },

    /// Value Δ''(1) + Δ'''(1) would need for an L(P, 1) surgery, if any
    #[command(allow_negative_numbers = true)]
    Prop51 { p: BigInt },

    /// Print the built-in knot and link records as JSON lines
    Fixtures,
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Lines(String),
}

fn ratio(r: &slope_core::Rational) -> Value {
    json!(fmt_ratio(r))
}

fn poly1_json(f: &LaurentPoly1) -> Value {
    Value::Array(
        f.terms()
            .rev()
            .map(|(e, c)| json!({"e": [e], "c": c.to_string()}))
            .collect(),
    )
}

fn resolve_link(source: &str) -> Result<(String, LaurentPoly2), Failure> {
    if let Some(Record::Link(l)) = fixture::<BigInt>(source) {
        return Ok((l.name, l.multivariable));
    }
    let bytes = std::fs::read(source).map_err(|e| {
        Failure::Usage(format!(
            "{source} is neither a fixture nor a readable file: {e}"
        ))
    })?;
    load_records::<BigInt>(&bytes)?
        .into_iter()
        .find_map(|r| match r {
            Record::Link(l) => Some((l.name, l.multivariable)),
            Record::Knot(_) => None,
        })
        .ok_or_else(|| Failure::Usage(format!("{source} holds no link record")))
}

fn run(cmd: Command) -> Outcome {
    let out = match cmd {
        Command::LensCw { p, q } => json!({"lambda": ratio(&cw_lens(&p, &q)?)}),
        Command::SurgeryCw { dd, p, q } => json!({"lambda": ratio(&cw_surgery(&dd, &p, &q)?)}),
        Command::DInv { p, q, i, v } => {
            let d = match v {
                Some(v) => d_surgery(&p, &q, &i, &VSequence::new(v)?)?,
                None => d_lens(&p, &q, &i)?,
            };
            json!({"d": ratio(&d)})
        }
        Command::DGap { p, qp } => json!({"d_gap_max": ratio(&d_gap_max(&p, &qp)?)}),
        Command::AlexTwist { link, component, k } => {
            let (name, poly) = resolve_link(&link)?;
            let which = TwistComponent::try_from(component)?;
            let f = twist_family_alex(&poly, which, k);
            let norm = normalize_positive(&f);
            json!({
                "link": name,
                "component": component,
                "k": k,
                "alexander": norm.to_string(),
                "terms": poly1_json(&norm),
            })
        }
        Command::DistinctMatrix { link, range } => {
            let (name, poly) = resolve_link(&link)?;
            let (m, n) = (range[0], range[1]);
            if m < 1 || n < 1 {
                return Err(Failure::Usage("--range bounds must be positive".into()));
            }
            let mat = distinctness_matrix(&poly, &symmetric_range(m), &symmetric_range(n));
            json!({
                "link": name,
                "m_values": mat.m_values,
                "n_values": mat.n_values,
                "equal_pairs": mat.equal_pairs().iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "cells": mat.cells,
            })
        }
        Command::Moser { a, b, p, q, mirror } => {
            let s = if mirror {
                mirror_surgery(&a, &b, &p, &q)?
            } else {
                moser_classify(&a, &b, &p, &q)?
            };
            let mut obj = match s.to_json() {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            obj.insert("lens_space".into(), json!(is_lens_space(&s)));
            Value::Object(obj)
        }
        Command::CableReduce { r, s, p, q } => {
            let slope = cable_fill_reduce(&r, &s, &p, &q)?;
            json!({"slope": slope.map(|x| x.to_string())})
        }
        Command::CableSlopes { max_p, max_s } => {
            if max_p < BigInt::from(2) || max_s < BigInt::from(2) {
                return Err(Failure::Usage(
                    "--max-p and --max-s must be at least 2".into(),
                ));
            }
            let witnesses = enumerate_cable_witnesses(&max_p, &max_s);
            let slopes: std::collections::BTreeSet<_> =
                witnesses.iter().map(|w| w.slope.clone()).collect();
            json!({
                "count": slopes.len(),
                "slopes": slopes.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
        Command::LinkForm { p, q, a, b } => {
            json!({"value": ratio(&linking_form_value(&p, &q, &a, &b)?)})
        }
        Command::ResidueCheck { p, q, qp } => {
            let square = residue_obstruction(&p, &q, &qp)?;
            json!({"square": square, "obstructed": !square})
        }
        Command::FindSlopes {
            c,
            q,
            torus,
            q1mod4,
            count,
            limit,
        } => {
            let mut params = SearchParams::new(c, q, limit, count);
            params.q_one_mod_four = q1mod4;
            if let Some(t) = torus {
                match t.as_slice() {
                    [a, b] => params.torus = Some((a.clone(), b.clone())),
                    _ => return Err(Failure::Usage("--torus expects A,B".into())),
                }
            }
            find_candidates(&params)?.to_json()
        }
        Command::VerifyCert { file, c, q } => return verify(&file, &c, &q),
        Command::HypConsts { sys } => {
            let k = filling_constants(sys)?;
            json!({
                "sys": sys,
                "c": k.c,
                "D": k.d,
                "safe_q_threshold": safe_q_threshold(sys)?,
                "core_geodesic_bound_at_D": core_geodesic_bound(k.d)?,
            })
        }
        Command::TwistSlopes { l, m, n } => {
            let fam = nonchar_twist_slopes(l.clone(), m.clone());
            let ns: Vec<BigInt> = match n {
                Some(n) => vec![n],
                None => symmetric_range(5).into_iter().map(BigInt::from).collect(),
            };
            let pairs = ns
                .iter()
                .map(|n| {
                    let (s, c) = fam.pair_at(n)?;
                    Ok(json!({"n": n.to_string(), "slope": s.to_string(), "counterpart": c.to_string()}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            json!({"l": l.to_string(), "m": m.to_string(), "family": fam.describe(), "pairs": pairs})
        }
        Command::Prop51 { p } => {
            let need = prop51_required_sum(&p)?;
            json!({"p": p.to_string(), "possible": need.is_some(), "required_sum": need.map(|x| x.to_string())})
        }
        Command::Fixtures => {
            return Ok(Output::Lines(dump_records(&embedded_fixtures::<BigInt>())))
        }
    };
    Ok(Output::Json(out))
}

fn verify(file: &PathBuf, c: &BigInt, q: &BigInt) -> Outcome {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", file.display())))?;
    // a bare certificate, or the output of find-slopes
    let items = match value.get("certificates").and_then(Value::as_array) {
        Some(list) => list.clone(),
        None => vec![value],
    };
    if items.is_empty() {
        return Err(Failure::Usage("no certificates to verify".into()));
    }
    let mut all_pass = true;
    let mut reports = Vec::new();
    for item in &items {
        let cert = SlopeCertificate::from_json(item)?;
        let report = verify_certificate(&cert, c, q);
        all_pass &= report.all_pass();
        let mut obj = match report.to_json() {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        obj.insert("p".into(), json!(cert.p.to_string()));
        obj.insert(
            "slope".into(),
            json!(normalize_slope(cert.p, cert.q)?.to_string()),
        );
        reports.push(Value::Object(obj));
    }
    let out = json!({"all_pass": all_pass, "reports": reports});
    if all_pass {
        Ok(Output::Json(out))
    } else {
        Err(Failure::Verification(out))
    }
}

fn render_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar_like(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(val)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_pretty(val, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar_like(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_pretty(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

// scalars and flat arrays of scalars print on one line
fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| {
            !i.is_object() && !i.is_array()
                || i.as_array()
                    .is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
        }),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn emit(v: &Value, pretty: bool) -> String {
    if pretty {
        let mut s = String::new();
        render_pretty(v, 0, &mut s);
        s
    } else {
        format!("{v}\n")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            print!("{}", emit(&v, pretty));
            ExitCode::SUCCESS
        }
        Ok(Output::Lines(text)) => {
            if pretty {
                for line in text.lines() {
                    let v: Value = serde_json::from_str(line).expect("fixtures serialize to JSON");
                    println!("{}", emit(&v, true));
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print!("{}", emit(&v, pretty));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({"error": msg}));
            ExitCode::from(2)
        }
    }
}
