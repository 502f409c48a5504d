//! Seifert-fibred classification of torus-knot surgeries, cable-slope
//! arithmetic and the L-space genus rules.
//!
//! Orientation is carried by signs: the exceptional fibre of `T(a,b)(p/q)`
//! has signed order `abq - p`, and mirroring negates every order. Fibres of
//! order `±1` are kept in the multiset but are not singular.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::arith::{normalize_slope, Slope};
use crate::error::{domain, Error, Result};
use crate::num::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeifertData<T> {
    /// Seifert fibred over `S²` with these signed fibre orders (sorted).
    SfsOverS2 { fibers: Vec<T> },
    /// `L(a, b) # L(b, a)`, stored as `((a, b), (b, a))`; mirroring negates
    /// the second entry of each pair.
    ConnectedSumLens { lens_pair: ((T, T), (T, T)) },
}

impl<T: Int> SeifertData<T> {
    pub fn sfs(mut fibers: Vec<T>) -> Self {
        fibers.sort();
        SeifertData::SfsOverS2 { fibers }
    }

    /// Fibres with `|order| >= 2`.
    pub fn singular_fibers(&self) -> Vec<T> {
        match self {
            SeifertData::SfsOverS2 { fibers } => fibers
                .iter()
                .filter(|f| f.abs() >= T::lit(2))
                .cloned()
                .collect(),
            SeifertData::ConnectedSumLens { .. } => Vec::new(),
        }
    }

    pub fn has_fiber_of_abs_order(&self, order: &T) -> bool {
        self.singular_fibers().iter().any(|f| f.abs() == *order)
    }

    pub fn has_negative_fiber(&self) -> bool {
        self.singular_fibers().iter().any(|f| f.is_negative())
    }

    /// Orientation reversal.
    pub fn reverse_orientation(&self) -> Self {
        match self {
            SeifertData::SfsOverS2 { fibers } => {
                Self::sfs(fibers.iter().map(|f| -f.clone()).collect())
            }
            SeifertData::ConnectedSumLens {
                lens_pair: ((a, b), (c, d)),
            } => SeifertData::ConnectedSumLens {
                lens_pair: ((a.clone(), -b.clone()), (c.clone(), -d.clone())),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SeifertData::SfsOverS2 { fibers } => json!({
                "kind": "sfs_over_s2",
                "fibers": fibers.iter().map(|f| int_json(f)).collect::<Vec<_>>(),
            }),
            SeifertData::ConnectedSumLens {
                lens_pair: ((a, b), (c, d)),
            } => json!({
                "kind": "connected_sum_lens",
                "lens_pair": [[int_json(a), int_json(b)], [int_json(c), int_json(d)]],
            }),
        }
    }
}

/// JSON number when the value fits in `i64`, decimal string otherwise.
pub(crate) fn int_json<T: Int>(v: &T) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn check_torus<T: Int>(a: &T, b: &T) -> Result<()> {
    if a.abs() < T::lit(2) || b.abs() < T::lit(2) {
        return Err(domain(format!(
            "torus parameters ({a}, {b}) need |a|, |b| >= 2"
        )));
    }
    if !a.gcd(b).is_one() {
        return Err(domain(format!(
            "torus parameters ({a}, {b}) are not coprime"
        )));
    }
    Ok(())
}

/// `T(a,b)(p/q)`: Seifert fibred over `S²` with fibres `{a, b, abq - p}`, or
/// `L(a,b) # L(b,a)` when `p = qab`.
pub fn moser_classify<T: Int>(a: &T, b: &T, p: &T, q: &T) -> Result<SeifertData<T>> {
    check_torus(a, b)?;
    if q.is_zero() {
        return Err(domain("q must be nonzero"));
    }
    if p.is_negative() {
        return Err(domain(format!("slope numerator {p} must be non-negative")));
    }
    if !p.gcd(q).is_one() {
        return Err(domain(format!("slope {p}/{q} is not reduced")));
    }
    let third = a.clone() * b.clone() * q.clone() - p.clone();
    if third.is_zero() {
        return Ok(SeifertData::ConnectedSumLens {
            lens_pair: ((a.clone(), b.clone()), (b.clone(), a.clone())),
        });
    }
    Ok(SeifertData::sfs(vec![a.clone(), b.clone(), third]))
}

/// `(-T(a,b))(p/q)`, the orientation reversal of `T(a,b)(-p/q)`.
pub fn mirror_surgery<T: Int>(a: &T, b: &T, p: &T, q: &T) -> Result<SeifertData<T>> {
    Ok(moser_classify(a, b, p, &-q.clone())?.reverse_orientation())
}

/// At most two singular fibres. A connected sum of lens spaces is not one.
pub fn is_lens_space<T: Int>(s: &SeifertData<T>) -> bool {
    match s {
        SeifertData::SfsOverS2 { .. } => s.singular_fibers().len() <= 2,
        SeifertData::ConnectedSumLens { .. } => false,
    }
}

/// Compares two Seifert fibred spaces with three singular fibres, where the
/// fibration is unique. Fewer singular fibres is inconclusive.
pub fn sfs_equal<T: Int>(s1: &SeifertData<T>, s2: &SeifertData<T>) -> Result<bool> {
    let f1 = three_fibers(s1)?;
    let f2 = three_fibers(s2)?;
    Ok(f1 == f2)
}

fn three_fibers<T: Int>(s: &SeifertData<T>) -> Result<Vec<T>> {
    if let SeifertData::ConnectedSumLens { .. } = s {
        return Err(Error::Inconclusive(
            "connected sums of lens spaces are not compared".into(),
        ));
    }
    let mut f = s.singular_fibers();
    if f.len() < 3 {
        return Err(Error::Inconclusive(format!(
            "{} singular fibres: the Seifert fibration need not be unique",
            f.len()
        )));
    }
    f.sort();
    Ok(f)
}

/// If `|qrs - p| = 1`, the cable filling `C_{r,s}(K)(p/q)` equals
/// `K(p/(qs²))`; returns that slope.
pub fn cable_fill_reduce<T: Int>(r: &T, s: &T, p: &T, q: &T) -> Result<Option<Slope<T>>> {
    if *s <= T::one() {
        return Err(domain(format!("cable parameter s = {s} must exceed 1")));
    }
    if !r.gcd(s).is_one() {
        return Err(domain(format!(
            "cable parameters ({r}, {s}) are not coprime"
        )));
    }
    // gcd(p, q) divides qrs - p, so |qrs - p| = 1 forces a reduced slope
    let gap = q.clone() * r.clone() * s.clone() - p.clone();
    if !gap.abs().is_one() {
        return Ok(None);
    }
    normalize_slope(p.clone(), q.clone() * s.clone() * s.clone()).map(Some)
}

/// One cable identification `C_{r,s}(K)(p/q) ≅ K(slope)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableWitness<T> {
    pub r: T,
    pub s: T,
    pub p: T,
    pub q: T,
    pub slope: Slope<T>,
}

/// Every cable identification with `1 <= p <= max_p` and `2 <= s <= max_s`.
///
/// For fixed `p` and `s`, `qrs = p ± 1` leaves finitely many `(q, r)`: `q`
/// runs over signed divisors of `p ± 1` and `r = (p ± 1)/(qs)`.
pub fn enumerate_cable_witnesses<T: Int>(max_p: &T, max_s: &T) -> Vec<CableWitness<T>> {
    let mut out = Vec::new();
    let mut p = T::one();
    while p <= *max_p {
        let mut s = T::lit(2);
        while s <= *max_s {
            for target in [p.clone() - T::one(), p.clone() + T::one()] {
                if target.is_zero() {
                    continue;
                }
                for d in divisors(&target) {
                    for q in [d.clone(), -d] {
                        let qs = q.clone() * s.clone();
                        if !target.is_multiple_of(&qs) {
                            continue;
                        }
                        let r = target.clone() / qs;
                        if !r.gcd(&s).is_one() || !p.gcd(&q).is_one() {
                            continue;
                        }
                        if let Ok(Some(slope)) = cable_fill_reduce(&r, &s, &p, &q) {
                            out.push(CableWitness {
                                r,
                                s: s.clone(),
                                p: p.clone(),
                                q,
                                slope,
                            });
                        }
                    }
                }
            }
            s = s + T::one();
        }
        p = p + T::one();
    }
    out
}

/// The set of slopes produced by [`enumerate_cable_witnesses`].
pub fn enumerate_cable_slopes<T: Int>(max_p: &T, max_s: &T) -> BTreeSet<Slope<T>> {
    enumerate_cable_witnesses(max_p, max_s)
        .into_iter()
        .map(|w| w.slope)
        .collect()
}

fn divisors<T: Int>(n: &T) -> Vec<T> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = T::one();
    while d.clone() * d.clone() <= n {
        if n.is_multiple_of(&d) {
            let other = n.clone() / d.clone();
            if other != d {
                out.push(other);
            }
            out.push(d.clone());
        }
        d = d + T::one();
    }
    out.sort();
    out
}

/// Lower bound `s·g + (s-1)(|r|-1)/2` on the genus of the `(r, s)` cable of
/// a genus-`g` knot.
pub fn cable_genus_lower_bound<T: Int>(g: &T, r: &T, s: &T) -> Result<T> {
    if g.is_negative() {
        return Err(domain(format!("genus {g} is negative")));
    }
    if !s.is_positive() || !r.gcd(s).is_one() {
        return Err(domain(format!(
            "cable parameters ({r}, {s}) need s >= 1 and gcd 1"
        )));
    }
    let twice = (s.clone() - T::one()) * (r.abs() - T::one());
    // coprimality makes one factor even; a violation here is a bug upstream
    if twice.is_odd() {
        return Err(domain(format!("(s-1)(|r|-1) = {twice} is odd")));
    }
    Ok(s.clone() * g.clone() + twice / T::lit(2))
}

/// For a positive slope, `K(p/q)` is an L-space iff `K` is an L-space knot
/// and `p/q >= 2g(K) - 1`.
pub fn lspace_surgery_check<T: Int>(g: &T, is_lspace_knot: bool, slope: &Slope<T>) -> Result<bool> {
    if slope.is_infinity() || slope.p().is_zero() || !slope.q().is_positive() {
        return Err(domain(format!("slope {slope} is not positive")));
    }
    let threshold = T::lit(2) * g.clone() - T::one();
    Ok(is_lspace_knot && slope.p().clone() >= threshold * slope.q().clone())
}

/// Largest genus `g` with `2g - 1 <= p`, i.e. `⌊(p + 1)/2⌋`.
pub fn lspace_genus_bound<T: Int>(p: &T) -> Result<T> {
    if !p.is_positive() {
        return Err(domain(format!("p = {p} must be at least 1")));
    }
    Ok((p.clone() + T::one()).div_floor(&T::lit(2)))
}
