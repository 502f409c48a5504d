//! Slope normalization, negative continued fractions and the elementary
//! number theory behind the slope search: Legendre and Jacobi symbols,
//! modular square roots, CRT and deterministic primality.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::num::Int;

/// A surgery slope `p/q` in normal form: `gcd(p, q) = 1`, `p >= 0`, the sign
/// lives on `q`, `0 = 0/1` and `∞ = 1/0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope<T> {
    p: T,
    q: T,
}

impl<T: Int> Slope<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        normalize_slope(p, q)
    }

    pub fn infinity() -> Self {
        Slope {
            p: T::one(),
            q: T::zero(),
        }
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// The slope as a rational number, `None` for `∞`.
    pub fn to_ratio(&self) -> Option<Ratio<T>> {
        if self.is_infinity() {
            None
        } else {
            Some(Ratio::new(self.p.clone(), self.q.clone()))
        }
    }

    /// Rejects `∞`; every invariant formula needs a finite slope with `p >= 1`.
    pub fn require_finite_nonzero(&self) -> Result<()> {
        if self.is_infinity() {
            return Err(domain("the slope 1/0 has no invariant formula"));
        }
        if self.p.is_zero() {
            return Err(domain("slope 0 is not a rational homology sphere surgery"));
        }
        Ok(())
    }
}

/// Prints as a rational with the sign in front: `3/2`, `-3/2`, `1/0`.
impl<T: Int> fmt::Display for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_negative() {
            write!(f, "-{}/{}", self.p, self.q.abs())
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Reduces `p_raw/q_raw` to normal form.
pub fn normalize_slope<T: Int>(p_raw: T, q_raw: T) -> Result<Slope<T>> {
    if p_raw.is_zero() && q_raw.is_zero() {
        return Err(Error::InvalidSlope("0/0 is not a slope".into()));
    }
    let g = p_raw.gcd(&q_raw);
    let (mut p, mut q) = (p_raw / g.clone(), q_raw / g);
    if p.is_negative() || (p.is_zero() && q.is_negative()) {
        p = -p;
        q = -q;
    }
    Ok(Slope { p, q })
}

/// Expansion `a_1 - 1/(a_2 - 1/(... - 1/a_n))` with every `a_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegContFrac<T> {
    terms: Vec<T>,
}

impl<T: Int> NegContFrac<T> {
    /// Wraps explicit terms; each must be at least 2.
    pub fn from_terms(terms: Vec<T>) -> Result<Self> {
        if terms.is_empty() {
            return Err(domain("a continued fraction needs at least one term"));
        }
        if let Some(t) = terms.iter().find(|t| **t < T::lit(2)) {
            return Err(domain(format!("continued fraction term {t} is below 2")));
        }
        Ok(NegContFrac { terms })
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self) -> Ratio<T> {
        let mut rev = self.terms.iter().rev();
        let last = rev.next().expect("non-empty by construction").clone();
        rev.fold(Ratio::from_integer(last), |acc, a| {
            Ratio::from_integer(a.clone()) - acc.recip()
        })
    }
}

/// Negative continued fraction of `p/q` for coprime `p > q >= 1`.
///
/// Uses `a = ⌈p/q⌉` and recurses on `q/(a·q - p)`; the denominator strictly
/// decreases, so the loop ends when it reaches zero.
pub fn neg_continued_fraction<T: Int>(p: T, q: T) -> Result<NegContFrac<T>> {
    if !q.is_positive() || p <= q {
        return Err(domain(format!(
            "negative continued fraction needs p > q >= 1, got {p}/{q}"
        )));
    }
    if !p.gcd(&q).is_one() {
        return Err(domain(format!("{p} and {q} are not coprime")));
    }
    let (mut num, mut den) = (p, q);
    let mut terms = Vec::new();
    while !den.is_zero() {
        let a = num.div_ceil(&den);
        let next = a.clone() * den.clone() - num;
        terms.push(a);
        num = den;
        den = next;
    }
    Ok(NegContFrac { terms })
}

/// The inverse `0 < r < p` of `q` modulo `p`.
///
/// `p = 1` is degenerate: every residue is `0`, and we return `0`.
pub fn mod_inverse<T: Int>(q: &T, p: &T) -> Result<T> {
    if !p.is_positive() {
        return Err(domain(format!("modulus {p} must be positive")));
    }
    if p.is_one() {
        return Ok(T::zero());
    }
    let e = q.mod_floor(p).extended_gcd(p);
    if !e.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: q.to_string(),
            modulus: p.to_string(),
        });
    }
    Ok(e.x.mod_floor(p))
}

/// `base^exp mod m` for `m >= 1`, `exp >= 0`; result in `[0, m)`.
pub fn mod_pow<T: Int>(base: &T, exp: &T, m: &T) -> T {
    let m_big = m.to_big();
    let b = base.to_big().mod_floor(&m_big);
    let r = b.modpow(&exp.to_big(), &m_big);
    T::from_big(r).expect("residue fits the modulus type")
}

/// Legendre symbol `(a/p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre<T: Int>(a: &T, p: &T) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(euler_criterion(a, p))
}

// Caller guarantees `p` is an odd prime.
pub(crate) fn euler_criterion<T: Int>(a: &T, p: &T) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p.clone() - T::one()) / T::lit(2);
    if mod_pow(&a, &e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
pub fn jacobi<T: Int>(a: &T, n: &T) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(domain(format!("Jacobi symbol needs odd n >= 1, got {n}")));
    }
    Ok(jacobi_big(&a.to_big(), &n.to_big()))
}

fn jacobi_big(a: &BigInt, n: &BigInt) -> i8 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % &eight).to_u8().unwrap_or(0);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// `(-1)^(((p1-1)/2)((p2-1)/2))` for distinct odd primes.
pub fn reciprocity_sign<T: Int>(p1: &T, p2: &T) -> Result<i8> {
    require_odd_prime(p1)?;
    require_odd_prime(p2)?;
    if p1 == p2 {
        return Err(domain(format!(
            "reciprocity needs distinct primes, got {p1} twice"
        )));
    }
    let four = T::lit(4);
    let three = T::lit(3);
    let both_3_mod_4 = p1.mod_floor(&four) == three && p2.mod_floor(&four) == three;
    Ok(if both_3_mod_4 { -1 } else { 1 })
}

/// The nonzero squares modulo an odd prime, `{n² mod p : 1 <= n < p}`.
pub fn residues_mod<T: Int>(p: &T) -> Result<BTreeSet<T>> {
    require_odd_prime(p)?;
    let mut out = BTreeSet::new();
    let mut n = T::one();
    while n < *p {
        out.insert((n.clone() * n.clone()).mod_floor(p));
        n = n + T::one();
    }
    Ok(out)
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue<T: Int>(p: &T) -> Result<T> {
    require_odd_prime(p)?;
    let mut r = T::lit(2);
    while euler_criterion(&r, p) != -1 {
        r = r + T::one();
    }
    Ok(r)
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks), or `None`
/// when `a` is a non-residue. Of the two roots the smaller one is returned.
pub fn sqrt_mod<T: Int>(a: &T, p: &T) -> Result<Option<T>> {
    require_odd_prime(p)?;
    let pb = p.to_big();
    let root = sqrt_mod_big(&a.to_big().mod_floor(&pb), &pb);
    Ok(root.map(|r| {
        let other = (&pb - &r).mod_floor(&pb);
        T::from_big(r.min(other)).expect("root below modulus")
    }))
}

fn sqrt_mod_big(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    if a.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let mut s = 0u32;
    let mut odd = pm1.clone();
    while odd.is_even() {
        odd >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&odd, p);
    let mut t = a.modpow(&odd, p);
    let mut r = a.modpow(&((&odd + &one) >> 1), p);
    while t != one {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// The congruence `x ≡ residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence<T> {
    residue: T,
    modulus: T,
}

impl<T: Int> Congruence<T> {
    /// Reduces `residue` into `[0, modulus)`; the modulus must be positive.
    pub fn new(residue: T, modulus: T) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(domain(format!("modulus {modulus} must be positive")));
        }
        Ok(Congruence {
            residue: residue.mod_floor(&modulus),
            modulus,
        })
    }

    pub fn residue(&self) -> &T {
        &self.residue
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    pub fn holds_for(&self, x: &T) -> bool {
        x.mod_floor(&self.modulus) == self.residue
    }
}

impl<T: Int> fmt::Display for Congruence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Combines pairwise-coprime congruences into one modulo the product.
pub fn crt<T: Int>(congruences: &[Congruence<T>]) -> Result<Congruence<T>> {
    for (i, a) in congruences.iter().enumerate() {
        for (j, b) in congruences.iter().enumerate().skip(i + 1) {
            if !a.modulus.gcd(&b.modulus).is_one() {
                return Err(Error::NonCoprimeModuli {
                    i,
                    j,
                    first: a.modulus.to_string(),
                    second: b.modulus.to_string(),
                });
            }
        }
    }
    let mut acc = Congruence {
        residue: T::zero(),
        modulus: T::one(),
    };
    for c in congruences {
        let inv = mod_inverse(&acc.modulus, &c.modulus)?;
        let diff = (c.residue.clone() - acc.residue.clone()).mod_floor(&c.modulus);
        let k = (diff * inv).mod_floor(&c.modulus);
        let modulus = acc.modulus.clone() * c.modulus.clone();
        let residue = (acc.residue + acc.modulus * k).mod_floor(&modulus);
        acc = Congruence { residue, modulus };
    }
    Ok(acc)
}

/// Result of scanning an arithmetic progression for primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeScan<T> {
    pub primes: Vec<T>,
    /// Set when `limit` was reached before `count` primes were found.
    pub exhausted: bool,
}

/// The first `count` primes `≡ a (mod d)` not exceeding `limit`, ascending.
pub fn primes_in_ap<T: Int>(a: &T, d: &T, count: usize, limit: &T) -> Result<PrimeScan<T>> {
    if !d.is_positive() {
        return Err(domain(format!("progression step {d} must be positive")));
    }
    if !a.gcd(d).is_one() {
        return Err(domain(format!(
            "gcd({a}, {d}) != 1: the progression holds at most one prime"
        )));
    }
    let mut x = a.mod_floor(d);
    if x.is_zero() {
        x = d.clone();
    }
    let mut primes = Vec::with_capacity(count);
    while primes.len() < count && x <= *limit {
        if is_prime(&x) {
            primes.push(x.clone());
        }
        x = x + d.clone();
    }
    let exhausted = primes.len() < count;
    Ok(PrimeScan { primes, exhausted })
}

/// True iff no square of a prime divides `n` (trial division to `√n`).
pub fn is_squarefree<T: Int>(n: &T) -> bool {
    let mut n = n.abs();
    let mut f = T::lit(2);
    while f.clone() * f.clone() <= n {
        if n.is_multiple_of(&f) {
            n = n / f.clone();
            if n.is_multiple_of(&f) {
                return false;
            }
        }
        f = f + T::one();
    }
    true
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Strong probable-prime tests with the first 13 prime bases are a proof of
/// primality below this bound (Sorenson–Webster).
pub const MILLER_RABIN_PROVEN_BOUND: &str = "3317044064679887385961981";

/// Exact primality.
///
/// Below [`MILLER_RABIN_PROVEN_BOUND`] this is deterministic Miller–Rabin with
/// the first 13 prime bases, which is proven correct. Above it the same bases
/// are combined with a strong Lucas test (Baillie–PSW); no counterexample to
/// that combination is known.
pub fn is_prime<T: Int>(n: &T) -> bool {
    is_prime_big(&n.to_big())
}

pub(crate) fn is_prime_big(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigInt::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    if *n < BigInt::from(43 * 43) {
        return true;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n - 1 is nonzero");
    let d = &nm1 >> s;
    let passes_all = SMALL_PRIMES.iter().all(|&b| {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                return true;
            }
        }
        false
    });
    if !passes_all {
        return false;
    }
    let bound: BigInt = MILLER_RABIN_PROVEN_BOUND.parse().expect("valid literal");
    if *n < bound {
        return true;
    }
    strong_lucas_probable_prime(n)
}

/// Strong Lucas probable-prime test with Selfridge parameters, for odd
/// `n > 2`.
pub(crate) fn strong_lucas_probable_prime(n: &BigInt) -> bool {
    let sqrt = n.sqrt();
    if &sqrt * &sqrt == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi_big(&d, n) {
            -1 => break,
            0 if d.abs() != *n => return false,
            _ => {}
        }
        d = if d.is_positive() {
            -(d + 2u32)
        } else {
            2u32 - d
        };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let half = |x: BigInt| -> BigInt {
        let x = if x.is_odd() { x + n } else { x };
        let x: BigInt = x >> 1;
        x.mod_floor(n)
    };
    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().expect("n + 1 is nonzero");
    let k = &np1 >> s;
    let mut u = BigInt::one();
    let mut v = p.clone();
    let two = BigInt::from(2);
    let mut qk = q.mod_floor(n);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * &two).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&d * &u + &p * &v);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * &two).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

pub(crate) fn require_odd_prime<T: Int>(p: &T) -> Result<()> {
    if p.is_even() || !is_prime(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// All odd primes `<= bound`, ascending.
pub fn odd_primes_up_to<T: Int>(bound: &T) -> Vec<T> {
    let mut out = Vec::new();
    let mut x = T::lit(3);
    while x <= *bound {
        if is_prime(&x) {
            out.push(x.clone());
        }
        x = x + T::lit(2);
    }
    out
}
