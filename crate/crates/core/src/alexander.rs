//! Integer Laurent polynomials in one and two variables, with the
//! normalizations and substitutions used for Alexander polynomials of twist
//! families.
//!
//! Polynomials are sparse maps from exponent to nonzero coefficient. Two
//! one-variable polynomials are *equal up to units* when they differ by a
//! factor `±t^k`; no `t -> t^-1` symmetry is applied.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Error, Result};
use crate::num::Int;

/// Laurent polynomial in `t` with coefficients in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly1<T> {
    coeffs: BTreeMap<i64, T>,
}

/// Laurent polynomial in `t1, t2` with coefficients in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly2<T> {
    coeffs: BTreeMap<(i64, i64), T>,
}

fn accumulate<K: Ord, T: Int>(map: &mut BTreeMap<K, T>, key: K, c: T) {
    if c.is_zero() {
        return;
    }
    // cancelled terms are removed so the zero polynomial is the empty map
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<T: Int> LaurentPoly1<T> {
    pub fn zero() -> Self {
        LaurentPoly1 {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    pub fn monomial(exp: i64, c: T) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut coeffs, e, c);
        }
        LaurentPoly1 { coeffs }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.coeffs.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `t = 1`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> T {
        self.coeffs
            .values()
            .fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly1 {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The substitution `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly1 {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True iff `f(t) = f(t^-1)` termwise.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Exact division by a divisor whose leading coefficient is `±1`.
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dmax);
        if !lead.abs().is_one() {
            return None;
        }
        let mut rem = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some(rmax) = rem.max_exp() {
            if rmax - dmax < rem.min_exp()? - dmin {
                return None;
            }
            let e = rmax - dmax;
            let c = rem.coeff(rmax) * lead.clone();
            quotient.insert(e, c.clone());
            rem = &rem - &divisor.shift(e).scale(&c);
        }
        Some(LaurentPoly1 { coeffs: quotient })
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c.clone() * k.clone())))
    }
}

impl<T: Int> fmt::Display for LaurentPoly1<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Int> Add for &LaurentPoly1<T> {
    type Output = LaurentPoly1<T>;
    fn add(self, rhs: Self) -> LaurentPoly1<T> {
        LaurentPoly1::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl<T: Int> Sub for &LaurentPoly1<T> {
    type Output = LaurentPoly1<T>;
    fn sub(self, rhs: Self) -> LaurentPoly1<T> {
        self + &(-rhs)
    }
}

impl<T: Int> Neg for &LaurentPoly1<T> {
    type Output = LaurentPoly1<T>;
    fn neg(self) -> LaurentPoly1<T> {
        LaurentPoly1 {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<T: Int> Mul for &LaurentPoly1<T> {
    type Output = LaurentPoly1<T>;
    fn mul(self, rhs: Self) -> LaurentPoly1<T> {
        let mut coeffs = BTreeMap::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                let slot = coeffs.entry(ea + eb).or_insert_with(T::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        coeffs.retain(|_, v: &mut T| !v.is_zero());
        LaurentPoly1 { coeffs }
    }
}

impl<T: Int> LaurentPoly2<T> {
    pub fn zero() -> Self {
        LaurentPoly2 {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), T)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut coeffs, e, c);
        }
        LaurentPoly2 { coeffs }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((i64, i64), &T)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e1: i64, e2: i64) -> T {
        self.coeffs.get(&(e1, e2)).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `t1 = t2 = 1`.
    pub fn eval_at_one(&self) -> T {
        self.coeffs
            .values()
            .fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Exchanges the roles of `t1` and `t2`.
    pub fn swap_variables(&self) -> Self {
        LaurentPoly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|((a, b), c)| ((*b, *a), c.clone()))
                .collect(),
        }
    }

    /// `t1 -> t^e1`, `t2 -> t^e2`.
    pub fn substitute(&self, e1: i64, e2: i64) -> LaurentPoly1<T> {
        substitute(self, e1, e2)
    }
}

impl<T: Int> Add for &LaurentPoly2<T> {
    type Output = LaurentPoly2<T>;
    fn add(self, rhs: Self) -> LaurentPoly2<T> {
        LaurentPoly2::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl<T: Int> Mul for &LaurentPoly2<T> {
    type Output = LaurentPoly2<T>;
    fn mul(self, rhs: Self) -> LaurentPoly2<T> {
        let mut coeffs = BTreeMap::new();
        for ((a1, a2), ca) in self.terms() {
            for ((b1, b2), cb) in rhs.terms() {
                let slot = coeffs.entry((a1 + b1, a2 + b2)).or_insert_with(T::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        coeffs.retain(|_, v: &mut T| !v.is_zero());
        LaurentPoly2 { coeffs }
    }
}

/// True iff `f = ±t^k · g` for some integer `k`.
pub fn eq_up_to_units<T: Int>(f: &LaurentPoly1<T>, g: &LaurentPoly1<T>) -> bool {
    let (Some(fmin), Some(gmin)) = (f.min_exp(), g.min_exp()) else {
        return f.is_zero() && g.is_zero();
    };
    if f.num_terms() != g.num_terms() {
        return false;
    }
    let shift = gmin - fmin;
    // both signs are tried explicitly
    let matches = |sign: &T| {
        f.terms()
            .all(|(e, c)| g.coeffs.get(&(e + shift)) == Some(&(c.clone() * sign.clone())))
    };
    matches(&T::one()) || matches(&-T::one())
}

/// `t1 -> t^e1`, `t2 -> t^e2`, collecting like terms.
pub fn substitute<T: Int>(f: &LaurentPoly2<T>, e1: i64, e2: i64) -> LaurentPoly1<T> {
    LaurentPoly1::from_terms(f.terms().map(|((a, b), c)| (a * e1 + b * e2, c.clone())))
}

/// The unit multiple `g = ±t^k f` with `g(t) = g(t^-1)` and `g(1) = 1`.
pub fn symmetric_normalize<T: Int>(f: &LaurentPoly1<T>) -> Result<LaurentPoly1<T>> {
    let (Some(lo), Some(hi)) = (f.min_exp(), f.max_exp()) else {
        return Err(Error::NotKnotPolynomial("the zero polynomial".into()));
    };
    if (hi - lo) % 2 != 0 {
        return Err(Error::NotKnotPolynomial(format!(
            "{f} has odd degree span, so no unit multiple is symmetric"
        )));
    }
    let centered = f.shift(-(lo + hi) / 2);
    if !centered.is_symmetric() {
        return Err(Error::NotKnotPolynomial(format!(
            "{f} has a non-palindromic coefficient vector"
        )));
    }
    let value = centered.eval_at_one();
    if value.is_one() {
        Ok(centered)
    } else if (-value.clone()).is_one() {
        Ok(-&centered)
    } else {
        Err(Error::NotKnotPolynomial(format!(
            "{f} evaluates to {value} at t = 1, not ±1"
        )))
    }
}

/// `Δ''(1)` of the symmetric representative, `Σ c_e · e · (e - 1)`.
///
/// Other unit multiples give different values, so they are rejected rather
/// than normalized silently.
pub fn second_derivative_at_1<T: Int>(f: &LaurentPoly1<T>) -> Result<T> {
    if !f.is_symmetric() || !f.eval_at_one().is_one() {
        return Err(domain(format!(
            "{f} is not the symmetric representative with value 1 at t = 1"
        )));
    }
    Ok(f.terms().fold(T::zero(), |acc, (e, c)| {
        acc + c.clone() * T::lit(e) * T::lit(e - 1)
    }))
}

/// Shifts so the lowest exponent is 0 and flips the sign so the constant
/// term is positive. The zero polynomial is returned unchanged.
pub fn normalize_positive<T: Int>(f: &LaurentPoly1<T>) -> LaurentPoly1<T> {
    let Some(lo) = f.min_exp() else {
        return f.clone();
    };
    let shifted = f.shift(-lo);
    if shifted.coeff(0).is_negative() {
        -&shifted
    } else {
        shifted
    }
}

/// Which component of a two-component link is twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistComponent {
    First,
    Second,
}

impl TryFrom<u8> for TwistComponent {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(TwistComponent::First),
            2 => Ok(TwistComponent::Second),
            _ => Err(domain(format!("component must be 1 or 2, got {v}"))),
        }
    }
}

/// Alexander polynomial (up to units) of the knot left after twisting the
/// given component `k` times: `Δ_L(t, t^k)` for the second component,
/// `Δ_L(t^k, t)` for the first.
pub fn twist_family_alex<T: Int>(
    link: &LaurentPoly2<T>,
    component: TwistComponent,
    k: i64,
) -> LaurentPoly1<T> {
    match component {
        TwistComponent::Second => substitute(link, 1, k),
        TwistComponent::First => substitute(link, k, 1),
    }
}

/// Pairwise comparison of the two twist families of a link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctnessMatrix {
    pub m_values: Vec<i64>,
    pub n_values: Vec<i64>,
    /// `cells[i][j]` compares `K_{m_values[i]}` with `J_{n_values[j]}`.
    pub cells: Vec<Vec<bool>>,
}

impl DistinctnessMatrix {
    pub fn get(&self, m: i64, n: i64) -> Option<bool> {
        let i = self.m_values.iter().position(|&x| x == m)?;
        let j = self.n_values.iter().position(|&x| x == n)?;
        Some(self.cells[i][j])
    }

    /// All `(m, n)` whose polynomials agree up to units, in row-major order.
    pub fn equal_pairs(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (i, m) in self.m_values.iter().enumerate() {
            for (j, n) in self.n_values.iter().enumerate() {
                if self.cells[i][j] {
                    out.push((*m, *n));
                }
            }
        }
        out
    }
}

/// Entry `(m, n)` is `Δ_L(t, t^m) ≐ Δ_L(t^n, t)`. Raw equality only; whether
/// equal polynomials come from isotopic knots is not decided here.
pub fn distinctness_matrix<T: Int>(
    link: &LaurentPoly2<T>,
    m_values: &[i64],
    n_values: &[i64],
) -> DistinctnessMatrix {
    let ks: Vec<_> = m_values
        .iter()
        .map(|&m| twist_family_alex(link, TwistComponent::Second, m))
        .collect();
    let js: Vec<_> = n_values
        .iter()
        .map(|&n| twist_family_alex(link, TwistComponent::First, n))
        .collect();
    let cells = ks
        .iter()
        .map(|k| js.iter().map(|j| eq_up_to_units(k, j)).collect())
        .collect();
    DistinctnessMatrix {
        m_values: m_values.to_vec(),
        n_values: n_values.to_vec(),
        cells,
    }
}

/// `[-r, r]` without zero, ascending.
pub fn symmetric_range(r: i64) -> Vec<i64> {
    (-r..=r).filter(|&x| x != 0).collect()
}
