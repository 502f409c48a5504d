//! Knot and link records, their JSON-lines format and the built-in fixtures.
//!
//! One record per line:
//!
//! ```text
//! {"type":"knot","name":"K3a1","alexander":[{"e":[-1],"c":1},{"e":[0],"c":-1},{"e":[1],"c":1}],"genus":1,"torus":[3,2],"lspace_knot":true}
//! {"type":"link","name":"L9a20","components":2,"linking_number":1,"unknotted":[true,true],"multivariable":[{"e":[2,4],"c":1},...]}
//! ```
//!
//! Coefficients may be JSON numbers or decimal strings.

use serde_json::{json, Map, Value};

use crate::alexander::{eq_up_to_units, symmetric_normalize, LaurentPoly1, LaurentPoly2};
use crate::classify::int_json;
use crate::error::{domain, Error, Result};
use crate::invariants::VSequence;
use crate::num::Int;
use crate::search::parse_int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord<T> {
    pub name: String,
    pub alexander: LaurentPoly1<T>,
    pub genus: Option<T>,
    pub torus: Option<(T, T)>,
    pub lspace_knot: Option<bool>,
    pub v_sequence: Option<VSequence<T>>,
    pub mirror_of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkRecord<T> {
    pub name: String,
    pub linking_number: T,
    pub multivariable: LaurentPoly2<T>,
    pub unknotted: (bool, bool),
}

impl<T> LinkRecord<T> {
    pub const COMPONENTS: usize = 2;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record<T> {
    Knot(KnotRecord<T>),
    Link(LinkRecord<T>),
}

impl<T: Int> Record<T> {
    pub fn name(&self) -> &str {
        match self {
            Record::Knot(k) => &k.name,
            Record::Link(l) => &l.name,
        }
    }

    pub fn as_knot(&self) -> Option<&KnotRecord<T>> {
        match self {
            Record::Knot(k) => Some(k),
            Record::Link(_) => None,
        }
    }

    pub fn as_link(&self) -> Option<&LinkRecord<T>> {
        match self {
            Record::Link(l) => Some(l),
            Record::Knot(_) => None,
        }
    }

    /// Checks the record invariants; errors name the record and field.
    pub fn validate(&self) -> Result<()> {
        match self {
            Record::Knot(k) => k.validate(),
            Record::Link(l) => l.validate(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Record::Knot(k) => k.to_json(),
            Record::Link(l) => l.to_json(),
        }
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

fn load_err(record: &str, field: &str, reason: impl Into<String>) -> Error {
    Error::Load {
        record: record.to_string(),
        field: field.to_string(),
        reason: reason.into(),
    }
}

impl<T: Int> KnotRecord<T> {
    pub fn new(name: impl Into<String>, alexander: LaurentPoly1<T>) -> Self {
        KnotRecord {
            name: name.into(),
            alexander,
            genus: None,
            torus: None,
            lspace_knot: None,
            v_sequence: None,
            mirror_of: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |field: &str, reason: String| load_err(&self.name, field, reason);
        let sym =
            symmetric_normalize(&self.alexander).map_err(|e| err("alexander", e.to_string()))?;
        if let Some(g) = &self.genus {
            if g.is_negative() {
                return Err(err("genus", format!("{g} is negative")));
            }
            // the Alexander polynomial bounds the genus from below
            let half_span = sym.max_exp().unwrap_or(0);
            if *g < T::lit(half_span) {
                return Err(err(
                    "genus",
                    format!("{g} is below the Alexander bound {half_span}"),
                ));
            }
        }
        if let Some((a, b)) = &self.torus {
            let expected = torus_alexander(a, b).map_err(|e| err("torus", e.to_string()))?;
            if !eq_up_to_units(&expected, &self.alexander) {
                return Err(err(
                    "alexander",
                    format!("does not match T({a}, {b}): expected {expected}"),
                ));
            }
            let g = torus_genus(a, b);
            if let Some(given) = &self.genus {
                if *given != g {
                    return Err(err(
                        "genus",
                        format!("T({a}, {b}) has genus {g}, not {given}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("type".into(), json!("knot"));
        obj.insert("name".into(), json!(self.name));
        obj.insert(
            "alexander".into(),
            Value::Array(
                self.alexander
                    .terms()
                    .map(|(e, c)| json!({"e": [e], "c": int_json(c)}))
                    .collect(),
            ),
        );
        if let Some(g) = &self.genus {
            obj.insert("genus".into(), int_json(g));
        }
        if let Some((a, b)) = &self.torus {
            obj.insert("torus".into(), json!([int_json(a), int_json(b)]));
        }
        if let Some(l) = self.lspace_knot {
            obj.insert("lspace_knot".into(), json!(l));
        }
        if let Some(v) = &self.v_sequence {
            obj.insert(
                "v_sequence".into(),
                Value::Array(v.values().iter().map(int_json).collect()),
            );
        }
        if let Some(m) = &self.mirror_of {
            obj.insert("mirror_of".into(), json!(m));
        }
        Value::Object(obj)
    }
}

impl<T: Int> LinkRecord<T> {
    pub fn validate(&self) -> Result<()> {
        let at_one = self.multivariable.eval_at_one();
        if !self.linking_number.is_zero() && at_one.abs() != self.linking_number.abs() {
            return Err(load_err(
                &self.name,
                "multivariable",
                format!(
                    "value {at_one} at (1, 1) does not match linking number {}",
                    self.linking_number
                ),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": "link",
            "name": self.name,
            "components": Self::COMPONENTS,
            "linking_number": int_json(&self.linking_number),
            "unknotted": [self.unknotted.0, self.unknotted.1],
            "multivariable": self.multivariable
                .terms()
                .rev()
                .map(|((e1, e2), c)| json!({"e": [e1, e2], "c": int_json(c)}))
                .collect::<Vec<_>>(),
        })
    }
}

/// `(t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`, computed by exact division.
/// Depends only on `|a|` and `|b|`.
pub fn torus_alexander<T: Int>(a: &T, b: &T) -> Result<LaurentPoly1<T>> {
    let (ua, ub) = torus_exponents(a, b)?;
    let binom = |k: i64| LaurentPoly1::from_terms([(k, T::one()), (0, -T::one())]);
    let num = &binom(ua * ub) * &binom(1);
    let den = &binom(ua) * &binom(ub);
    num.div_exact(&den)
        .ok_or_else(|| domain(format!("division for T({a}, {b}) is not exact")))
}

fn torus_exponents<T: Int>(a: &T, b: &T) -> Result<(i64, i64)> {
    if a.abs() < T::lit(2) || b.abs() < T::lit(2) || !a.gcd(b).is_one() {
        return Err(domain(format!(
            "torus parameters ({a}, {b}) need gcd 1 and |a|, |b| >= 2"
        )));
    }
    let to = |x: &T| {
        x.abs()
            .to_i64()
            .filter(|v| v.checked_mul(2).is_some())
            .ok_or_else(|| domain(format!("torus parameter {x} is too large")))
    };
    let (ua, ub) = (to(a)?, to(b)?);
    ua.checked_mul(ub)
        .ok_or_else(|| domain(format!("T({a}, {b}) has degree beyond i64")))?;
    Ok((ua, ub))
}

/// `(|a| - 1)(|b| - 1) / 2`.
pub fn torus_genus<T: Int>(a: &T, b: &T) -> T {
    (a.abs() - T::one()) * (b.abs() - T::one()) / T::lit(2)
}

/// `V_j = Σ_{k>=1} k·a_{j+k}` from the symmetrized Alexander coefficients,
/// valid for L-space knots. Trailing zeros are dropped.
pub fn lspace_v_sequence<T: Int>(alexander: &LaurentPoly1<T>) -> Result<VSequence<T>> {
    let sym = symmetric_normalize(alexander)?;
    let top = sym.max_exp().unwrap_or(0);
    let mut values: Vec<T> = (0..top)
        .map(|j| (1..=top - j).fold(T::zero(), |acc, k| acc + T::lit(k) * sym.coeff(j + k)))
        .collect();
    while values.last().is_some_and(|v| v.is_zero()) {
        values.pop();
    }
    VSequence::new(values)
}

/// Reads JSON-lines records and validates each one. Blank lines are skipped.
pub fn load_records<T: Int>(bytes: &[u8]) -> Result<Vec<Record<T>>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        reason: format!("input is not UTF-8: {e}"),
    })?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        let record = parse_record(&value)?;
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

/// Serializes records as JSON-lines, one per line with a trailing newline.
pub fn dump_records<T: Int>(records: &[Record<T>]) -> String {
    records.iter().map(|r| r.to_json_line() + "\n").collect()
}

fn parse_record<T: Int>(v: &Value) -> Result<Record<T>> {
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| load_err("?", "name", "missing or not a string"))?
        .to_string();
    let err = |field: &str, reason: &str| load_err(&name, field, reason);
    let get = |field: &str| v.get(field).filter(|x| !x.is_null());
    let int =
        |field: &str, x: &Value| parse_int::<T>(x).map_err(|_| err(field, "expected an integer"));

    match v.get("type").and_then(Value::as_str) {
        Some("knot") => {
            let terms = get("alexander")
                .and_then(Value::as_array)
                .ok_or_else(|| err("alexander", "missing term list"))?;
            let mut poly = Vec::with_capacity(terms.len());
            for t in terms {
                let (e, c) = parse_term(t, 1).ok_or_else(|| err("alexander", "bad term"))?;
                poly.push((e[0], int("alexander", c)?));
            }
            let mut rec = KnotRecord::new(name.clone(), LaurentPoly1::from_terms(poly));
            if let Some(g) = get("genus") {
                rec.genus = Some(int("genus", g)?);
            }
            if let Some(t) = get("torus") {
                match t.as_array().map(Vec::as_slice) {
                    Some([a, b]) => rec.torus = Some((int("torus", a)?, int("torus", b)?)),
                    _ => return Err(err("torus", "expected [a, b]")),
                }
            }
            if let Some(l) = get("lspace_knot") {
                rec.lspace_knot = Some(
                    l.as_bool()
                        .ok_or_else(|| err("lspace_knot", "expected a bool"))?,
                );
            }
            if let Some(vs) = get("v_sequence") {
                let items = vs
                    .as_array()
                    .ok_or_else(|| err("v_sequence", "expected an array"))?;
                let values = items
                    .iter()
                    .map(|x| int("v_sequence", x))
                    .collect::<Result<Vec<_>>>()?;
                rec.v_sequence = Some(
                    VSequence::new(values)
                        .map_err(|e| load_err(&name, "v_sequence", e.to_string()))?,
                );
            }
            if let Some(m) = get("mirror_of") {
                rec.mirror_of = Some(
                    m.as_str()
                        .ok_or_else(|| err("mirror_of", "expected a string"))?
                        .to_string(),
                );
            }
            Ok(Record::Knot(rec))
        }
        Some("link") => {
            match get("components").and_then(Value::as_u64) {
                Some(2) => {}
                _ => return Err(err("components", "only 2-component links are supported")),
            }
            let lk = int(
                "linking_number",
                get("linking_number").ok_or_else(|| err("linking_number", "missing"))?,
            )?;
            let unknotted = match get("unknotted")
                .and_then(Value::as_array)
                .map(Vec::as_slice)
            {
                Some([Value::Bool(a), Value::Bool(b)]) => (*a, *b),
                _ => return Err(err("unknotted", "expected [bool, bool]")),
            };
            let terms = get("multivariable")
                .and_then(Value::as_array)
                .ok_or_else(|| err("multivariable", "missing term list"))?;
            let mut poly = Vec::with_capacity(terms.len());
            for t in terms {
                let (e, c) = parse_term(t, 2).ok_or_else(|| err("multivariable", "bad term"))?;
                poly.push(((e[0], e[1]), int("multivariable", c)?));
            }
            Ok(Record::Link(LinkRecord {
                name: name.clone(),
                linking_number: lk,
                multivariable: LaurentPoly2::from_terms(poly),
                unknotted,
            }))
        }
        _ => Err(err("type", "expected \"knot\" or \"link\"")),
    }
}

fn parse_term(t: &Value, arity: usize) -> Option<(Vec<i64>, &Value)> {
    let e = t.get("e")?.as_array()?;
    if e.len() != arity {
        return None;
    }
    let e = e.iter().map(Value::as_i64).collect::<Option<Vec<_>>>()?;
    Some((e, t.get("c")?))
}

/// The two-variable Alexander polynomial of `L9a20`, term for term:
///
/// `t1²t2⁴ - 3t1²t2³ - t1t2⁴ + 3t1²t2² + 4t1t2³ - t1²t2 - 7t1t2² - t2³
///  + 4t1t2 + 3t2² - t1 - 3t2 + 1`.
pub fn l9a20_polynomial<T: Int>() -> LaurentPoly2<T> {
    const TERMS: [((i64, i64), i64); 13] = [
        ((2, 4), 1),
        ((2, 3), -3),
        ((1, 4), -1),
        ((2, 2), 3),
        ((1, 3), 4),
        ((2, 1), -1),
        ((1, 2), -7),
        ((0, 3), -1),
        ((1, 1), 4),
        ((0, 2), 3),
        ((1, 0), -1),
        ((0, 1), -3),
        ((0, 0), 1),
    ];
    LaurentPoly2::from_terms(TERMS.iter().map(|&(e, c)| (e, T::lit(c))))
}

fn torus_record<T: Int>(name: String, a: i64, b: i64, lspace: bool) -> KnotRecord<T> {
    let (a, b) = (T::lit(a), T::lit(b));
    let alexander = torus_alexander(&a, &b).expect("fixture parameters are valid");
    let alexander = symmetric_normalize(&alexander).expect("torus polynomials are symmetric");
    let mut rec = KnotRecord::new(name, alexander.clone());
    rec.genus = Some(torus_genus(&a, &b));
    if lspace {
        rec.lspace_knot = Some(true);
        rec.v_sequence = Some(lspace_v_sequence(&alexander).expect("valid torus polynomial"));
    }
    rec.torus = Some((a, b));
    rec
}

/// Torus-knot twist family `H_n = T(2, 1 - 2n)` for these `n`.
pub const TWIST_FAMILY_INDICES: [i64; 4] = [-2, -1, 2, 3];

/// The built-in records: `L9a20`, the trefoil `K3a1`, the cinquefoil `K5a2`,
/// the figure-eight `K4a1` and the torus knots `H_n`.
pub fn embedded_fixtures<T: Int>() -> Vec<Record<T>> {
    let mut out = vec![Record::Link(LinkRecord {
        name: "L9a20".into(),
        linking_number: T::one(),
        multivariable: l9a20_polynomial(),
        unknotted: (true, true),
    })];
    out.push(Record::Knot(torus_record("K3a1".into(), 3, 2, true)));
    let mut fig8 = KnotRecord::new(
        "K4a1",
        LaurentPoly1::from_terms([(-1, -T::one()), (0, T::lit(3)), (1, -T::one())]),
    );
    fig8.genus = Some(T::one());
    fig8.lspace_knot = Some(false);
    fig8.mirror_of = Some("K4a1".into());
    out.push(Record::Knot(fig8));
    out.push(Record::Knot(torus_record("K5a2".into(), 5, 2, true)));
    for n in TWIST_FAMILY_INDICES {
        let b = 1 - 2 * n;
        // positive torus knots are L-space knots; their mirrors are not
        let mut rec = torus_record(format!("H_{n}"), 2, b, b > 0);
        if b < 0 {
            rec.lspace_knot = Some(false);
        }
        out.push(Record::Knot(rec));
    }
    out
}

/// Looks a fixture up by name.
pub fn fixture<T: Int>(name: &str) -> Option<Record<T>> {
    embedded_fixtures().into_iter().find(|r| r.name() == name)
}
