//! Casson–Walker invariants of lens spaces and knot surgeries, Heegaard Floer
//! d-invariants via the lens-space recursion, and the integer-slope
//! obstructions built from them. Everything here is exact.
//!
//! Lens-space convention: `L(p, q)` is `p/q` surgery on the unknot, so
//! `λ(L(3, 1)) = -1/36`.
//!
//! The d-invariant recursion is
//!
//! ```text
//! d(p, q, i) = -1/4 + (p + q - 1 - 2i)² / (4pq) - d(q, r, i'),   d(1, 0, 0) = 0,
//! ```
//!
//! with `r = p mod q` and `i' = i mod q`. The reduction is often printed as
//! `q ≡ r (mod p)`, which never reaches the base case; the Euclidean step
//! `r = p mod q` is the one that terminates.

use num_rational::Ratio;
use num_traits::Zero;

use crate::arith::{mod_inverse, neg_continued_fraction};
use crate::error::{domain, Result};
use crate::num::Int;

/// Non-negative, non-increasing integer sequence `V_0, V_1, ...`, read as 0
/// past its stored length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VSequence<T> {
    values: Vec<T>,
}

impl<T: Int> VSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(domain(format!("V-sequence entry {v} is negative")));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(domain("V-sequence must be non-increasing"));
        }
        Ok(VSequence { values })
    }

    /// The unknot's sequence, identically zero.
    pub fn zero() -> Self {
        VSequence { values: Vec::new() }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, j: &T) -> T {
        if j.is_negative() {
            return self.values.first().cloned().unwrap_or_else(T::zero);
        }
        j.to_usize()
            .and_then(|j| self.values.get(j).cloned())
            .unwrap_or_else(T::zero)
    }
}

/// `L(p, q)` with `q` reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LensSpace<T> {
    p: T,
    q: T,
}

impl<T: Int> LensSpace<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        check_coprime_positive(&p, &q)?;
        let q = q.mod_floor(&p);
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn casson_walker(&self) -> Ratio<T> {
        cw_lens(&self.p, &self.q).expect("validated on construction")
    }
}

fn check_coprime_positive<T: Int>(p: &T, q: &T) -> Result<()> {
    if !p.is_positive() {
        return Err(domain(format!("p = {p} must be at least 1")));
    }
    if !p.gcd(q).is_one() {
        return Err(domain(format!("gcd({p}, {q}) != 1")));
    }
    Ok(())
}

/// Casson–Walker invariant of `L(p, q)`.
///
/// For `0 < q < p`, with `p/q = [a_1, ..., a_n]⁻` and `r = q⁻¹ mod p`:
/// `λ = -(q/p + r/p + Σ (a_i - 3)) / 24`. Negative `q` goes through
/// `λ(L(p, q)) = -λ(L(p, -q))`, then `q` is reduced mod `p`.
pub fn cw_lens<T: Int>(p: &T, q: &T) -> Result<Ratio<T>> {
    check_coprime_positive(p, q)?;
    if p.is_one() {
        return Ok(Ratio::zero());
    }
    let (sign, q_abs) = if q.is_negative() {
        (-T::one(), -q.clone())
    } else {
        (T::one(), q.clone())
    };
    let q_red = q_abs.mod_floor(p);
    let r = mod_inverse(&q_red, p)?;
    let cf = neg_continued_fraction(p.clone(), q_red.clone())?;
    let three = T::lit(3);
    let term_sum = cf
        .terms()
        .iter()
        .fold(T::zero(), |acc, a| acc + a.clone() - three.clone());
    let inner = Ratio::new(q_red + r, p.clone()) + Ratio::from_integer(term_sum);
    Ok(-inner / Ratio::from_integer(T::lit(24)) * Ratio::from_integer(sign))
}

/// Casson–Walker invariant of `K(p/q)` from `Δ''_K(1)` (symmetric
/// normalization): `λ(L(p, q)) + q/(2p) · Δ''_K(1)`.
pub fn cw_surgery<T: Int>(dd: &T, p: &T, q: &T) -> Result<Ratio<T>> {
    if q.is_zero() {
        return Err(domain("the slope 1/0 has no surgery formula"));
    }
    let lens = cw_lens(p, q)?;
    Ok(lens + Ratio::new(q.clone() * dd.clone(), T::lit(2) * p.clone()))
}

/// The Δ''-sum forced by `K(p) ≅ K'(-p)`: `(p² - 3p + 2)/6`, or `None`
/// when that is not an integer, in which case no such pair of knots exists.
pub fn prop51_required_sum<T: Int>(p: &T) -> Result<Option<T>> {
    if !p.is_positive() {
        return Err(domain(format!("p = {p} must be at least 1")));
    }
    let rhs = p.clone() * p.clone() - T::lit(3) * p.clone() + T::lit(2);
    let (quot, rem) = rhs.div_rem(&T::lit(6));
    Ok(rem.is_zero().then_some(quot))
}

/// d-invariant `d(p, q, i)` of the lens space `L(p, q)` in spin-c index `i`.
pub fn d_lens<T: Int>(p: &T, q: &T, i: &T) -> Result<Ratio<T>> {
    if !p.is_positive() || q.is_negative() {
        return Err(domain(format!(
            "d(p, q, i) needs p >= 1, q >= 0, got ({p}, {q})"
        )));
    }
    if !p.gcd(q).is_one() {
        return Err(domain(format!("gcd({p}, {q}) != 1")));
    }
    if i.is_negative() || *i >= p.clone() + q.clone() {
        return Err(domain(format!("index {i} outside [0, {p} + {q})")));
    }
    let quarter = Ratio::new(T::one(), T::lit(4));
    let (mut p, mut q, mut i) = (p.clone(), q.clone(), i.clone());
    let mut acc = Ratio::zero();
    let mut positive = true;
    // unrolled recursion; depth is the length of the Euclidean algorithm
    while !q.is_zero() {
        let base = p.clone() + q.clone() - T::one() - T::lit(2) * i.clone();
        let term =
            Ratio::new(base.clone() * base, T::lit(4) * p.clone() * q.clone()) - quarter.clone();
        acc = if positive { acc + term } else { acc - term };
        positive = !positive;
        let r = p.mod_floor(&q);
        i = i.mod_floor(&q);
        p = q;
        q = r;
    }
    debug_assert!(p.is_one() && i.is_zero());
    Ok(acc)
}

/// d-invariant of `K(p/q)` in index `i`, from the knot's V-sequence:
/// `d(p, q, i) - 2 max(V_⌊i/q⌋, V_⌈(p-i)/q⌉)`.
pub fn d_surgery<T: Int>(p: &T, q: &T, i: &T, v: &VSequence<T>) -> Result<Ratio<T>> {
    if !p.is_positive() || !q.is_positive() {
        return Err(domain(format!("slope {p}/{q} must be positive")));
    }
    if i.is_negative() || i >= p {
        return Err(domain(format!("index {i} outside [0, {p})")));
    }
    let lens = d_lens(p, q, i)?;
    let lo = v.get(&i.div_floor(q));
    let hi = v.get(&(p.clone() - i.clone()).div_ceil(q));
    let m = if lo > hi { lo } else { hi };
    Ok(lens - Ratio::from_integer(T::lit(2) * m))
}

/// `max_j d(p, q', j) - d(p, 1, 0)` over `0 <= j < p`.
pub fn d_gap_max<T: Int>(p: &T, qp: &T) -> Result<Ratio<T>> {
    if *qp < T::lit(2) {
        return Err(domain(format!("q' = {qp} must be at least 2")));
    }
    check_coprime_positive(p, qp)?;
    let reference = d_lens(p, &T::one(), &T::zero())?;
    let mut best: Option<Ratio<T>> = None;
    let mut j = T::zero();
    while j < *p {
        let d = d_lens(p, qp, &j)?;
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
        j = j + T::one();
    }
    Ok(best.expect("p >= 1 gives at least one index") - reference)
}
