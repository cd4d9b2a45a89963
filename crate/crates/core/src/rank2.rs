//! The rank-2 hyperbolic algebra with Cartan matrix `[[2,-3],[-3,2]]`, with
//! roots in the inverse different of `Q(sqrt 5)`.
//!
//! A root `nu = c1 a1 + c2 a2` with `a1 = eta/sqrt5`, `a2 = -1/sqrt5` is
//! `(5 c1 + (3 c1 - 2 c2) sqrt5) / 10`, and `5 N(nu) = -(c1^2 - 3 c1 c2 + c2^2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::one_minus_pow;
use crate::error::{Error, Result};
use crate::qseries::gamma05_form;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b sqrt5`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt5 {
    pub a: Q,
    pub b: Q,
}

impl QSqrt5 {
    pub fn new(a: Q, b: Q) -> Self {
        QSqrt5 { a, b }
    }

    pub fn from_frac(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QSqrt5 { a: q(an, ad), b: q(bn, bd) }
    }

    pub fn zero() -> Self {
        Self::from_frac(0, 1, 0, 1)
    }

    pub fn one() -> Self {
        Self::from_frac(1, 1, 0, 1)
    }

    pub fn sqrt5() -> Self {
        Self::from_frac(0, 1, 1, 1)
    }

    pub fn conj(&self) -> Self {
        QSqrt5 { a: self.a.clone(), b: -&self.b }
    }

    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.b * &self.b * q(5, 1)
    }

    pub fn trace(&self) -> Q {
        &self.a * q(2, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign test for the real embedding `sqrt5 > 0`.
    pub fn is_positive(&self) -> bool {
        let (a, b) = (&self.a, &self.b);
        match (a.is_negative(), b.is_negative()) {
            (false, false) => !self.is_zero(),
            (true, true) => false,
            (false, true) => a * a > b * b * q(5, 1),
            (true, false) => b * b * q(5, 1) > a * a,
        }
    }

    /// Both embeddings positive.
    pub fn is_totally_positive(&self) -> bool {
        self.is_positive() && self.conj().is_positive()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn inverse(&self) -> Self {
        let n = self.norm();
        QSqrt5 { a: &self.a / &n, b: -&self.b / &n }
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt5", self.a, self.b)
    }
}

impl<'a> Add<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 {
            a: &self.a * &o.a + &self.b * &o.b * q(5, 1),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5 { a: -&self.a, b: -&self.b }
    }
}

/// `eps0 = (1 + sqrt5)/2`.
pub fn eps0() -> QSqrt5 {
    QSqrt5::from_frac(1, 2, 1, 2)
}

/// `eta = eps0^2 = (3 + sqrt5)/2`.
pub fn eta() -> QSqrt5 {
    QSqrt5::from_frac(3, 2, 1, 2)
}

/// `rho = (1 + sqrt5) / (2 sqrt5) = (5 + sqrt5)/10`.
pub fn rho() -> QSqrt5 {
    QSqrt5::from_frac(1, 2, 1, 10)
}

pub fn units() -> (QSqrt5, QSqrt5) {
    (eps0(), eta())
}

fn inv_sqrt5() -> QSqrt5 {
    QSqrt5::from_frac(0, 1, 1, 5)
}

/// `(nu, mu) = -5 (nu conj(mu) + conj(nu) mu)`.
pub fn bilinear(nu: &QSqrt5, mu: &QSqrt5) -> Q {
    let s = &(nu * &mu.conj()) + &(&nu.conj() * mu);
    s.a * q(-5, 1)
}

/// An element of `(1/sqrt5) O`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InvDiffElement(QSqrt5);

impl InvDiffElement {
    pub fn new(v: QSqrt5) -> Result<Self> {
        if root_coords(&v).is_some() {
            Ok(InvDiffElement(v))
        } else {
            Err(Error::Precondition(format!("{v} is not in the inverse different")))
        }
    }

    pub fn value(&self) -> &QSqrt5 {
        &self.0
    }

    /// `(x, y)` with `nu = (x + y sqrt5)/10`.
    pub fn xy(&self) -> (i64, i64) {
        let x = (&self.0.a * q(10, 1)).to_integer().to_i64().unwrap();
        let y = (&self.0.b * q(10, 1)).to_integer().to_i64().unwrap();
        (x, y)
    }
}

/// `sqrt5 nu = (x + y sqrt5)/2` with integers `x = y mod 2`.
pub fn in_inverse_different(v: &QSqrt5) -> bool {
    let s = &QSqrt5::sqrt5() * v;
    let x = &s.a * q(2, 1);
    let y = &s.b * q(2, 1);
    x.is_integer() && y.is_integer() && (x.to_integer() - y.to_integer()) % 2 == BigInt::zero()
}

/// Coordinates `(c1, c2)` in the simple roots, if integral.
pub fn root_coords(v: &QSqrt5) -> Option<(i64, i64)> {
    // sqrt5 nu = 5b + a sqrt5 = c1 eta - c2
    let c1 = &v.a * q(2, 1);
    let c2 = &v.a * q(3, 1) - &v.b * q(5, 1);
    (c1.is_integer() && c2.is_integer())
        .then(|| (c1.to_integer().to_i64().unwrap(), c2.to_integer().to_i64().unwrap()))
}

pub fn from_root_coords(c1: i64, c2: i64) -> QSqrt5 {
    QSqrt5::from_frac(5 * c1, 10, 3 * c1 - 2 * c2, 10)
}

pub fn simple_roots_h() -> [QSqrt5; 2] {
    [&eta() * &inv_sqrt5(), -&inv_sqrt5()]
}

/// `-(c1^2 - 3 c1 c2 + c2^2) = 5 N(nu)`.
pub fn five_norm(c1: i64, c2: i64) -> i64 {
    -(c1 * c1 - 3 * c1 * c2 + c2 * c2)
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).find(|s| s * s == n)
}

/// `{(m, n) : sqrt(4k/5) <= m <= sqrt(k), n = (3m - sqrt(5m^2 - 4k))/2 >= 0}`.
pub fn omega_k(k: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut m = 0;
    while m * m <= k {
        if 5 * m * m >= 4 * k {
            if let Some(s) = isqrt(5 * m * m - 4 * k) {
                if (3 * m - s) % 2 == 0 && 3 * m - s >= 0 {
                    out.push((m, (3 * m - s) / 2));
                }
            }
        }
        m += 1;
    }
    out
}

/// `eta^j / sqrt5` for `1 <= j <= jmax` and `-conj(eta)^j / sqrt5` for `0 <= j <= jmax`.
pub fn positive_real_roots(jmax: u32) -> Vec<InvDiffElement> {
    let s = inv_sqrt5();
    let e = eta();
    let mut out = Vec::new();
    for j in 1..=jmax {
        out.push(InvDiffElement(&e.pow(j) * &s));
    }
    for j in 0..=jmax {
        out.push(InvDiffElement(-&(&e.conj().pow(j) * &s)));
    }
    out
}

/// The four families of positive imaginary roots, deduplicated.
pub fn positive_imaginary_roots(jmax: u32, kmax: i64) -> Vec<InvDiffElement> {
    let s = inv_sqrt5();
    let e = eta();
    let eb = e.conj();
    let mut seen: BTreeMap<(i64, i64), InvDiffElement> = BTreeMap::new();
    for k in 1..=kmax {
        for (m, n) in omega_k(k) {
            let mi = QSqrt5::from_frac(m, 1, 0, 1);
            let ni = QSqrt5::from_frac(n, 1, 0, 1);
            for j in 0..=jmax {
                let ej = e.pow(j);
                let ebj = eb.pow(j);
                let fam = [
                    &(&ej * &(&(&mi * &e) - &ni)) * &s,
                    &(&ej * &(&(&ni * &e) - &mi)) * &s,
                    &(&ebj * &(&ni - &(&mi * &eb))) * &s,
                    &(&ebj * &(&mi - &(&ni * &eb))) * &s,
                ];
                for v in fam {
                    let el = InvDiffElement(v);
                    seen.insert(el.xy(), el);
                }
            }
        }
    }
    seen.into_values().collect()
}

/// `r1 x = eta^2 conj(x)`, `r2 x = conj(x)`; the word acts right to left.
pub fn weyl_rank2(word: &[u8], x: &QSqrt5) -> Result<QSqrt5> {
    let e2 = eta().pow(2);
    word.iter().rev().try_fold(x.clone(), |acc, &g| match g {
        1 => Ok(&e2 * &acc.conj()),
        2 => Ok(acc.conj()),
        _ => Err(Error::InvalidGenerator(g as i32)),
    })
}

/// `s(n) = 2` when `5 | n`, else 1.
fn s5(n: i64) -> i64 {
    if n % 5 == 0 { 2 } else { 1 }
}

/// Coefficients `A(nu)` of the truncated product, keyed by root coordinates
/// of `nu = rho + beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Product {
    pub bound: i64,
    pub terms: BTreeMap<(i64, i64), BigInt>,
}

impl Rank2Product {
    pub fn coeff(&self, c: (i64, i64)) -> BigInt {
        self.terms.get(&c).cloned().unwrap_or_default()
    }

    /// Terms as `((x, y), A)` with `nu = (x + y sqrt5)/10`.
    pub fn xy_terms(&self) -> Vec<((i64, i64), BigInt)> {
        self.terms
            .iter()
            .map(|(&(c1, c2), v)| ((5 * c1, 3 * c1 - 2 * c2), v.clone()))
            .collect()
    }
}

/// `rho` in root coordinates.
pub const RHO_COORDS: (i64, i64) = (1, 1);

/// `e(-(rho,z)) prod (1 - e(-(nu,z)))^{s(5 N nu) a(5 N nu)} prod_re (1 - e(-(nu,z)))`,
/// graded by `c1 + c2` and kept through offset `bound` above `rho`.
pub fn product_side_rank2(bound: i64) -> Result<Rank2Product> {
    let max_n = bound * bound / 4 + 1;
    let f = gamma05_form(max_n + 1)?;
    let mut factors = Vec::new();
    for c1 in 0..=bound {
        for c2 in 0..=(bound - c1) {
            if c1 + c2 == 0 {
                continue;
            }
            let n = five_norm(c1, c2);
            let e = match n {
                -1 => BigInt::one(),
                n if n >= 1 => f.coeff(n)? * s5(n),
                _ => continue,
            };
            if !e.is_zero() {
                factors.push(((c1, c2), e));
            }
        }
    }
    factors.sort_by_key(|((a, b), _)| (a + b, *a));
    let mut poly: BTreeMap<(i64, i64), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    for ((a1, a2), e) in &factors {
        let h = a1 + a2;
        let bin = one_minus_pow(e, (bound / h) as u64);
        let old: Vec<((i64, i64), BigInt)> = poly.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((m1, m2), v) in old {
            for (k, b) in bin.iter().enumerate().skip(1) {
                let k = k as i64;
                let t = (m1 + k * a1, m2 + k * a2);
                if t.0 + t.1 > bound {
                    break;
                }
                *poly.entry(t).or_default() += b * &v;
            }
        }
    }
    let terms = poly
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((b1, b2), v)| ((b1 + RHO_COORDS.0, b2 + RHO_COORDS.1), v))
        .collect();
    Ok(Rank2Product { bound, terms })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkewReport {
    pub checked: usize,
    pub failures: Vec<((i64, i64), (i64, i64))>,
    pub max_abs_discrepancy: BigInt,
}

impl SkewReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `A(w nu) = -A(nu)` for both simple reflections wherever both
/// points lie in the truncation; `r2` is conjugation, so this includes
/// `A(conj nu) = -A(nu)`.
pub fn skew_check(p: &Rank2Product) -> SkewReport {
    let mut rep = SkewReport::default();
    let inside = |c: (i64, i64)| {
        let (b1, b2) = (c.0 - RHO_COORDS.0, c.1 - RHO_COORDS.1);
        b1 >= 0 && b2 >= 0 && b1 + b2 <= p.bound
    };
    for (&c, v) in &p.terms {
        let images = [(3 * c.1 - c.0, c.1), (c.0, 3 * c.0 - c.1)];
        for img in images {
            let (b1, b2) = (img.0 - RHO_COORDS.0, img.1 - RHO_COORDS.1);
            let diff = if b1 < 0 || b2 < 0 {
                v.abs()
            } else if inside(img) {
                (p.coeff(img) + v).abs()
            } else {
                continue;
            };
            rep.checked += 1;
            if !diff.is_zero() {
                rep.failures.push((c, img));
                rep.max_abs_discrepancy = rep.max_abs_discrepancy.clone().max(diff);
            }
        }
    }
    rep
}
