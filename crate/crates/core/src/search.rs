//! Linking-form obstructions and the certified search for slopes `p/q` whose
//! surgeries cannot be matched by a small-denominator surgery on another knot.
//!
//! The search picks primes `p` with
//!
//! * `p ≡ 1 (mod 8)`,
//! * `p ≡ 1 (mod p_i)` for every odd prime `p_i <= C`,
//! * `p ≡ r (mod q)` for the smallest non-residue `r` modulo `q`,
//!
//! combined by CRT and scanned along the progression. Reciprocity explains
//! why these congruences work, but certificates never rely on it: every
//! condition is re-established directly by Euler's criterion or by
//! enumerating squares.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{
    crt, euler_criterion, is_prime, normalize_slope, odd_primes_up_to, require_odd_prime,
    smallest_nonresidue, sqrt_mod, Congruence, Slope,
};
use crate::classify::int_json;
use crate::error::{domain, Error, Result};
use crate::num::{fmt_ratio, Int};

/// Whether `q·q' ≡ n² (mod p)` for some `n`.
///
/// `true` means the linking forms of `K(p/q)` and `K'(p/q')` are compatible,
/// so this test does *not* rule out `K(p/q) ≅ K'(p/q')`. Odd prime moduli use
/// Euler's criterion; anything else enumerates the squares.
pub fn residue_obstruction<T: Int>(p: &T, q: &T, qp: &T) -> Result<bool> {
    if !p.is_positive() {
        return Err(domain(format!("p = {p} must be at least 1")));
    }
    if !p.gcd(q).is_one() || !p.gcd(qp).is_one() {
        return Err(domain(format!("{q} and {qp} must both be coprime to {p}")));
    }
    let target = (q.clone() * qp.clone()).mod_floor(p);
    if p.is_odd() && is_prime(p) {
        return Ok(euler_criterion(&target, p) == 1);
    }
    let mut n = T::zero();
    while n < *p {
        if (n.clone() * n.clone()).mod_floor(p) == target {
            return Ok(true);
        }
        n = n + T::one();
    }
    Ok(false)
}

/// The linking form of `K(p/q)` on `Z/p`: `-(q/p)·a·b` in `[0, 1)`.
pub fn linking_form_value<T: Int>(p: &T, q: &T, a: &T, b: &T) -> Result<Ratio<T>> {
    if !p.is_positive() {
        return Err(domain(format!("p = {p} must be at least 1")));
    }
    if !p.gcd(q).is_one() {
        return Err(domain(format!("gcd({p}, {q}) != 1")));
    }
    let num = (-(q.clone() * a.clone() * b.clone())).mod_floor(p);
    Ok(Ratio::new(num, p.clone()))
}

/// `[(1 mod 8)] ++ [(1 mod p_i) : odd primes p_i <= C] ++ [(r mod q)]`.
pub fn build_congruences<T: Int>(c: &T, q: &T) -> Result<Vec<Congruence<T>>> {
    if *c < T::lit(8) {
        return Err(domain(format!("C = {c} must be at least 8")));
    }
    require_odd_prime(q)?;
    if q <= c {
        return Err(domain(format!("q = {q} must exceed C = {c}")));
    }
    let mut out = vec![Congruence::new(T::one(), T::lit(8))?];
    for pi in odd_primes_up_to(c) {
        out.push(Congruence::new(T::one(), pi)?);
    }
    out.push(Congruence::new(smallest_nonresidue(q)?, q.clone())?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams<T> {
    /// Per-knot constant, the maximum of the JSJ and hyperbolic constants
    /// and 8. Supplied by the caller; there is no default.
    pub c: T,
    /// Odd prime denominator, `q > C`.
    pub q: T,
    /// Torus-knot parameters when the knot is `T(a, b)`.
    pub torus: Option<(T, T)>,
    /// Largest `p` to scan.
    pub prime_limit: T,
    /// Number of certificates wanted.
    pub count: usize,
    /// Additionally insist on `q ≡ 1 (mod 4)`.
    pub q_one_mod_four: bool,
}

impl<T: Int> SearchParams<T> {
    pub fn new(c: T, q: T, prime_limit: T, count: usize) -> Self {
        SearchParams {
            c,
            q,
            torus: None,
            prime_limit,
            count,
            q_one_mod_four: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_one_mod_four && self.q.mod_floor(&T::lit(4)) != T::one() {
            return Err(domain(format!("q = {} is not 1 mod 4", self.q)));
        }
        if let Some((a, b)) = &self.torus {
            if a.abs() < T::lit(2) || b.abs() < T::lit(2) || !a.gcd(b).is_one() {
                return Err(domain(format!("torus parameters ({a}, {b}) are invalid")));
            }
        }
        if !self.prime_limit.is_positive() {
            return Err(domain("prime limit must be positive"));
        }
        // C and q are checked by the congruence builder
        build_congruences(&self.c, &self.q).map(|_| ())
    }
}

/// Re-checkable evidence attached to a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<T: Int> {
    None,
    /// A single integer, e.g. a square root or a residue.
    Value(T),
    /// Pairs `(z, n)` with `n² ≡ z (mod p)`.
    Roots(Vec<(T, T)>),
    /// The two candidate counterpart denominators of the torus-knot case;
    /// `None` marks a zero denominator.
    Quotients(Option<Ratio<T>>, Option<Ratio<T>>),
}

pub mod names {
    pub const P_PRIME: &str = "p_prime";
    pub const P_EXCEEDS_C: &str = "p_exceeds_C";
    pub const Q_PRIME_EXCEEDS_C: &str = "q_prime_exceeds_C";
    pub const SMALL_RESIDUES: &str = "integers_1_to_C_are_residues";
    pub const MINUS_ONE_RESIDUE: &str = "minus_one_is_residue";
    pub const TWO_RESIDUE: &str = "two_is_residue";
    pub const Q_NONRESIDUE: &str = "q_is_nonresidue";
    pub const P_NOT_PM1_MOD_Q: &str = "p_not_pm1_mod_q";
    pub const SMALL_DENOMINATORS_OBSTRUCTED: &str = "small_denominators_obstructed";
    pub const TORUS_EXCLUDED: &str = "torus_case_excluded";
    pub const Q_MATCHES: &str = "certificate_q_matches";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition<T: Int> {
    pub name: String,
    pub verified: bool,
    pub witness: Witness<T>,
}

impl<T: Int> Condition<T> {
    fn new(name: &str, verified: bool, witness: Witness<T>) -> Self {
        Condition {
            name: name.to_string(),
            verified,
            witness,
        }
    }
}

/// A candidate slope `p/q` with the conditions it was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeCertificate<T: Int> {
    pub p: T,
    pub q: T,
    pub torus: Option<(T, T)>,
    pub conditions: Vec<Condition<T>>,
}

impl<T: Int> SlopeCertificate<T> {
    pub fn is_valid(&self) -> bool {
        !self.conditions.is_empty() && self.conditions.iter().all(|c| c.verified)
    }

    pub fn slope(&self) -> Result<Slope<T>> {
        normalize_slope(self.p.clone(), self.q.clone())
    }

    pub fn condition(&self, name: &str) -> Option<&Condition<T>> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Outcome of the torus-knot counterpart check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCheck<T: Int> {
    pub excluded: bool,
    /// `-(p + b)/(ap - a²bq)`, `None` if the denominator vanishes.
    pub first: Option<Ratio<T>>,
    /// `-(p + a)/(bp - ab²q)`, `None` if the denominator vanishes.
    pub second: Option<Ratio<T>>,
}

/// Decides whether a torus knot `T(u, v)` with a matching fibre multiset can
/// give the same Seifert fibred surgery. A counterpart exists only if one of
/// the two quotients is a nonzero integer; a vanishing denominator is
/// reported as not excluded.
pub fn torus_case_excluded<T: Int>(a: &T, b: &T, p: &T, q: &T) -> Result<TorusCheck<T>> {
    if a.abs() < T::lit(2) || b.abs() < T::lit(2) || !a.gcd(b).is_one() {
        return Err(domain(format!("torus parameters ({a}, {b}) are invalid")));
    }
    if !p.is_positive() || !p.gcd(q).is_one() {
        return Err(domain(format!("slope {p}/{q} must be reduced with p >= 1")));
    }
    let quotient = |num: T, den: T| (!den.is_zero()).then(|| Ratio::new(-num, den));
    let first = quotient(
        p.clone() + b.clone(),
        a.clone() * p.clone() - a.clone() * a.clone() * b.clone() * q.clone(),
    );
    let second = quotient(
        p.clone() + a.clone(),
        b.clone() * p.clone() - a.clone() * b.clone() * b.clone() * q.clone(),
    );
    let blocks = |x: &Option<Ratio<T>>| match x {
        None => true,
        Some(r) => r.is_integer() && !r.is_zero(),
    };
    let excluded = !blocks(&first) && !blocks(&second);
    Ok(TorusCheck {
        excluded,
        first,
        second,
    })
}

fn residue_root<T: Int>(z: &T, p: &T) -> Option<T> {
    sqrt_mod(z, p).ok().flatten()
}

/// Builds the certificate for a prime `p`, checking each condition directly.
pub fn build_certificate<T: Int>(p: &T, params: &SearchParams<T>) -> SlopeCertificate<T> {
    use names::*;
    let (c, q) = (&params.c, &params.q);
    let prime = p.is_odd() && is_prime(p);
    let mut conds = vec![
        Condition::new(P_PRIME, prime, Witness::None),
        Condition::new(P_EXCEEDS_C, p > c, Witness::None),
        Condition::new(Q_PRIME_EXCEEDS_C, is_prime(q) && q > c, Witness::None),
    ];
    if !prime {
        return SlopeCertificate {
            p: p.clone(),
            q: q.clone(),
            torus: params.torus.clone(),
            conditions: conds,
        };
    }

    let mut roots = Vec::new();
    let mut all_small = true;
    let mut z = T::one();
    while z <= *c {
        match residue_root(&z, p) {
            Some(n) => roots.push((z.clone(), n)),
            None => all_small = false,
        }
        z = z + T::one();
    }
    conds.push(Condition::new(
        SMALL_RESIDUES,
        all_small,
        Witness::Roots(roots),
    ));

    for (name, z) in [(MINUS_ONE_RESIDUE, -T::one()), (TWO_RESIDUE, T::lit(2))] {
        let w = residue_root(&z, p);
        conds.push(Condition::new(
            name,
            w.is_some(),
            w.map_or(Witness::None, Witness::Value),
        ));
    }

    let e = (p.clone() - T::one()) / T::lit(2);
    let euler = crate::arith::mod_pow(q, &e, p);
    conds.push(Condition::new(
        Q_NONRESIDUE,
        euler == p.clone() - T::one(),
        Witness::Value(euler),
    ));

    let p_mod_q = p.mod_floor(q);
    conds.push(Condition::new(
        P_NOT_PM1_MOD_Q,
        !p_mod_q.is_one() && p_mod_q != q.clone() - T::one(),
        Witness::Value(p_mod_q),
    ));

    conds.push(Condition::new(
        SMALL_DENOMINATORS_OBSTRUCTED,
        small_denominators_obstructed(p, q, c, |x| euler_criterion(x, p) == 1),
        Witness::None,
    ));

    if let Some((a, b)) = &params.torus {
        let (ok, w) = match torus_case_excluded(a, b, p, q) {
            Ok(t) => (t.excluded, Witness::Quotients(t.first, t.second)),
            Err(_) => (false, Witness::None),
        };
        conds.push(Condition::new(TORUS_EXCLUDED, ok, w));
    }

    SlopeCertificate {
        p: p.clone(),
        q: q.clone(),
        torus: params.torus.clone(),
        conditions: conds,
    }
}

// No q' with 1 <= |q'| <= C makes q·q' a square mod p.
fn small_denominators_obstructed<T: Int>(
    p: &T,
    q: &T,
    c: &T,
    is_square: impl Fn(&T) -> bool,
) -> bool {
    let mut qp = T::one();
    while qp <= *c {
        for signed in [qp.clone(), -qp.clone()] {
            let x = (q.clone() * signed).mod_floor(p);
            if x.is_zero() || is_square(&x) {
                return false;
            }
        }
        qp = qp + T::one();
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T: Int> {
    pub congruences: Vec<Congruence<T>>,
    pub combined: Congruence<T>,
    pub certificates: Vec<SlopeCertificate<T>>,
    /// The scan reached `prime_limit` before `count` certificates were found.
    pub exhausted: bool,
    /// Primes in the progression whose certificate failed (torus case).
    pub rejected: Vec<T>,
}

/// Scans the CRT progression for primes and certifies them, ascending.
pub fn find_candidates<T: Int>(params: &SearchParams<T>) -> Result<SearchOutcome<T>> {
    params.validate()?;
    let congruences = build_congruences(&params.c, &params.q)?;
    let combined = crt(&congruences)?;
    let step = combined.modulus().clone();
    let mut p = combined.residue().clone();
    if p.is_zero() {
        p = step.clone();
    }
    let mut certificates = Vec::new();
    let mut rejected = Vec::new();
    while certificates.len() < params.count && p <= params.prime_limit {
        if is_prime(&p) {
            let cert = build_certificate(&p, params);
            if cert.is_valid() {
                certificates.push(cert);
            } else {
                rejected.push(p.clone());
            }
        }
        p = p + step.clone();
    }
    let exhausted = certificates.len() < params.count;
    Ok(SearchOutcome {
        congruences,
        combined,
        certificates,
        exhausted,
        rejected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.ok)
    }

    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.entries.push(ReportEntry {
            name: name.to_string(),
            ok,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_pass": self.all_pass(),
            "entries": self.entries.iter().map(|e| json!({
                "name": e.name, "ok": e.ok, "detail": e.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "[{}] {}: {}",
                if e.ok { "PASS" } else { "FAIL" },
                e.name,
                e.detail
            )?;
        }
        Ok(())
    }
}

/// Below this modulus residues are re-derived by enumerating all squares.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Re-checks a certificate from scratch against the given `C` and `q`.
///
/// The certificate's own `verified` flags are ignored; only its `p`, torus
/// parameters and witnesses are used, and every witness is checked.
pub fn verify_certificate<T: Int>(cert: &SlopeCertificate<T>, c: &T, q: &T) -> VerificationReport {
    use names::*;
    let mut report = VerificationReport::default();
    let p = &cert.p;
    report.push(
        Q_MATCHES,
        cert.q == *q,
        format!("certificate q = {}, expected {q}", cert.q),
    );

    let prime = p.is_odd() && is_prime(p);
    report.push(P_PRIME, prime, format!("p = {p}"));
    report.push(P_EXCEEDS_C, p > c, format!("{p} > {c}"));
    report.push(
        Q_PRIME_EXCEEDS_C,
        is_prime(q) && q > c,
        format!("q = {q}, C = {c}"),
    );
    if !p.is_positive() {
        return report;
    }

    let table = p
        .to_u64()
        .filter(|&x| x < BRUTE_FORCE_LIMIT)
        .map(square_table);
    let method = if table.is_some() {
        "enumeration"
    } else {
        "Euler criterion"
    };
    let is_square = |x: &T| -> bool {
        let x = x.mod_floor(p);
        match &table {
            Some(t) => t[x.to_usize().expect("below table size")],
            None => x.is_zero() || euler_criterion(&x, p) == 1,
        }
    };
    let root_ok = |z: &T, n: &T| (n.clone() * n.clone() - z.clone()).mod_floor(p).is_zero();

    let claimed_roots: Vec<(T, T)> = match cert.condition(SMALL_RESIDUES).map(|c| &c.witness) {
        Some(Witness::Roots(r)) => r.clone(),
        _ => Vec::new(),
    };
    let mut bad = Vec::new();
    let mut z = T::one();
    while z <= *c {
        let witnessed = claimed_roots
            .iter()
            .any(|(zz, n)| *zz == z && root_ok(&z, n));
        if !is_square(&z) || !witnessed {
            bad.push(z.to_string());
        }
        z = z + T::one();
    }
    report.push(
        SMALL_RESIDUES,
        bad.is_empty(),
        if bad.is_empty() {
            format!("every 1 <= z <= {c} is a square mod {p} ({method}, witnesses checked)")
        } else {
            format!("missing or wrong for z in [{}]", bad.join(", "))
        },
    );

    for (name, z) in [(MINUS_ONE_RESIDUE, -T::one()), (TWO_RESIDUE, T::lit(2))] {
        let witnessed = match cert.condition(name).map(|c| &c.witness) {
            Some(Witness::Value(n)) => root_ok(&z, n),
            _ => false,
        };
        let ok = is_square(&z) && witnessed;
        report.push(
            name,
            ok,
            format!(
                "{z} mod {p}: square = {}, witness ok = {witnessed} ({method})",
                is_square(&z)
            ),
        );
    }

    let q_res = is_square(q);
    report.push(
        Q_NONRESIDUE,
        !q_res,
        format!(
            "{q} is {}a square mod {p} ({method})",
            if q_res { "" } else { "not " }
        ),
    );

    let p_mod_q = p.mod_floor(q);
    report.push(
        P_NOT_PM1_MOD_Q,
        !p_mod_q.is_one() && p_mod_q != q.clone() - T::one(),
        format!("{p} ≡ {p_mod_q} (mod {q})"),
    );

    report.push(
        SMALL_DENOMINATORS_OBSTRUCTED,
        small_denominators_obstructed(p, q, c, is_square),
        format!("q·q' is a non-square mod {p} for all 1 <= |q'| <= {c} ({method})"),
    );

    if let Some((a, b)) = &cert.torus {
        match torus_case_excluded(a, b, p, q) {
            Ok(t) => {
                let show =
                    |x: &Option<Ratio<T>>| x.as_ref().map_or("undefined".to_string(), fmt_ratio);
                report.push(
                    TORUS_EXCLUDED,
                    t.excluded,
                    format!("q'1 = {}, q'2 = {}", show(&t.first), show(&t.second)),
                );
            }
            Err(e) => report.push(TORUS_EXCLUDED, false, e.to_string()),
        }
    }
    report
}

fn square_table(p: u64) -> Vec<bool> {
    let mut t = vec![false; p as usize];
    for n in 0..p {
        t[((n * n) % p) as usize] = true;
    }
    t
}

/// `{-m·l² + 1/n}` on `K_m` paired with `{-n·l² + 1/m}` on `J_n`, from
/// twisting a two-component link of unknots with linking number `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSlopeFamily<T> {
    pub l: T,
    pub m: T,
}

/// The family of non-characterising slope pairs for twist parameters `(l, m)`.
pub fn nonchar_twist_slopes<T: Int>(l: T, m: T) -> TwistSlopeFamily<T> {
    TwistSlopeFamily { l, m }
}

impl<T: Int> TwistSlopeFamily<T> {
    /// `-m·l² + 1/n = (1 - m·l²·n)/n`.
    pub fn slope_at(&self, n: &T) -> Result<Slope<T>> {
        if n.is_zero() {
            return Err(domain("n must be nonzero"));
        }
        let ml2 = self.m.clone() * self.l.clone() * self.l.clone();
        normalize_slope(T::one() - ml2 * n.clone(), n.clone())
    }

    /// `-n·l² + 1/m = (1 - n·l²·m)/m`; `1/0` when `m = 0`.
    pub fn counterpart_at(&self, n: &T) -> Result<Slope<T>> {
        if n.is_zero() {
            return Err(domain("n must be nonzero"));
        }
        let nl2 = n.clone() * self.l.clone() * self.l.clone();
        normalize_slope(T::one() - nl2 * self.m.clone(), self.m.clone())
    }

    pub fn pair_at(&self, n: &T) -> Result<(Slope<T>, Slope<T>)> {
        Ok((self.slope_at(n)?, self.counterpart_at(n)?))
    }

    /// Human-readable family, e.g. `K_1(-4 + 1/n) = J_n(-4n + 1/1)`.
    pub fn describe(&self) -> String {
        let l2 = self.l.clone() * self.l.clone();
        format!(
            "K_{m}(-{k} + 1/n) = J_n(-{l2}n + 1/{m})",
            m = self.m,
            k = self.m.clone() * l2.clone(),
        )
    }
}

fn ratio_json<T: Int>(r: &Option<Ratio<T>>) -> Value {
    r.as_ref().map_or(Value::Null, |r| json!(fmt_ratio(r)))
}

impl<T: Int> Witness<T> {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::None => Value::Null,
            Witness::Value(v) => json!(v.to_string()),
            Witness::Roots(r) => json!(r
                .iter()
                .map(|(z, n)| json!([z.to_string(), n.to_string()]))
                .collect::<Vec<_>>()),
            Witness::Quotients(a, b) => json!([ratio_json(a), ratio_json(b)]),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            reason: format!("unrecognised witness {v}"),
        };
        match v {
            Value::Null => Ok(Witness::None),
            Value::String(_) | Value::Number(_) => Ok(Witness::Value(parse_int(v)?)),
            Value::Array(items)
                if items.len() == 2
                    && items.iter().all(is_ratio_or_null)
                    && items
                        .iter()
                        .any(|i| i.as_str().is_some_and(|s| s.contains('/')) || i.is_null()) =>
            {
                Ok(Witness::Quotients(
                    parse_ratio(&items[0])?,
                    parse_ratio(&items[1])?,
                ))
            }
            Value::Array(items) => items
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([z, n]) => Ok((parse_int(z)?, parse_int(n)?)),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()
                .map(Witness::Roots),
            _ => Err(bad()),
        }
    }
}

fn is_ratio_or_null(v: &Value) -> bool {
    v.is_null() || v.as_str().is_some_and(|s| s.contains('/'))
}

fn parse_ratio<T: Int>(v: &Value) -> Result<Option<Ratio<T>>> {
    let Some(s) = v.as_str() else {
        return Ok(None);
    };
    let (n, d) = s.split_once('/').ok_or_else(|| Error::Parse {
        line: 0,
        reason: format!("bad rational {s}"),
    })?;
    let n = parse_int(&json!(n))?;
    let d: T = parse_int(&json!(d))?;
    if d.is_zero() {
        return Ok(None);
    }
    Ok(Some(Ratio::new(n, d)))
}

/// Reads an integer given as a JSON number or decimal string.
pub fn parse_int<T: Int>(v: &Value) -> Result<T> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => String::new(),
    };
    text.parse::<num_bigint::BigInt>()
        .ok()
        .and_then(T::from_big)
        .ok_or_else(|| Error::Parse {
            line: 0,
            reason: format!("expected an integer, got {v}"),
        })
}

impl<T: Int> SlopeCertificate<T> {
    /// `{"p": "...", "q": ..., "conditions": [{"name", "ok", "witness"}]}`,
    /// plus `"torus": [a, b]` when present.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("p".into(), json!(self.p.to_string()));
        obj.insert("q".into(), int_json(&self.q));
        if let Some((a, b)) = &self.torus {
            obj.insert("torus".into(), json!([int_json(a), int_json(b)]));
        }
        obj.insert(
            "conditions".into(),
            json!(self
                .conditions
                .iter()
                .map(|c| json!({"name": c.name, "ok": c.verified, "witness": c.witness.to_json()}))
                .collect::<Vec<_>>()),
        );
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k).ok_or_else(|| Error::Parse {
                line: 0,
                reason: format!("certificate lacks field {k}"),
            })
        };
        let p = parse_int(field("p")?)?;
        let q = parse_int(field("q")?)?;
        let torus = match v.get("torus") {
            None | Some(Value::Null) => None,
            Some(Value::Array(ab)) if ab.len() == 2 => {
                Some((parse_int(&ab[0])?, parse_int(&ab[1])?))
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: 0,
                    reason: format!("bad torus field {other}"),
                })
            }
        };
        let conditions = field("conditions")?
            .as_array()
            .ok_or_else(|| Error::Parse {
                line: 0,
                reason: "conditions must be an array".into(),
            })?
            .iter()
            .map(|c| {
                Ok(Condition {
                    name: c
                        .get("name")
                        .and_then(Value::as_str)
                        .unwrap_or_default()
                        .to_string(),
                    verified: c.get("ok").and_then(Value::as_bool).unwrap_or(false),
                    witness: Witness::from_json(c.get("witness").unwrap_or(&Value::Null))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SlopeCertificate {
            p,
            q,
            torus,
            conditions,
        })
    }
}

impl<T: Int> SearchOutcome<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "congruences": self.congruences.iter()
                .map(|c| json!([int_json(c.residue()), int_json(c.modulus())]))
                .collect::<Vec<_>>(),
            "combined": {"residue": self.combined.residue().to_string(), "modulus": self.combined.modulus().to_string()},
            "exhausted": self.exhausted,
            "rejected": self.rejected.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "certificates": self.certificates.iter().map(SlopeCertificate::to_json).collect::<Vec<_>>(),
        })
    }
}
