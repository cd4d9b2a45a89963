use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinat::one_minus_pow;
use crate::error::{Error, Result};

/// Truncated Laurent series in `q` with integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^(lead + k)`; every exponent below
/// `prec` is exact and nothing at or above it is known.
#[derive(Clone, Debug)]
pub struct PowerSeries {
    lead: i64,
    coeffs: Vec<BigInt>,
    prec: i64,
}

impl PowerSeries {
    pub fn new(lead: i64, mut coeffs: Vec<BigInt>, prec: i64) -> Self {
        let len = (prec - lead).max(0) as usize;
        coeffs.resize(len, BigInt::zero());
        PowerSeries { lead, coeffs, prec: prec.max(lead) }
    }

    pub fn from_ints(lead: i64, coeffs: &[i64], prec: i64) -> Self {
        Self::new(lead, coeffs.iter().map(|&c| BigInt::from(c)).collect(), prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(0, BigInt::one(), prec)
    }

    pub fn monomial(exp: i64, c: BigInt, prec: i64) -> Self {
        Self::new(exp, vec![c], prec)
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` for every known exponent.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.lead + k as i64, c))
    }

    pub fn coeff(&self, n: i64) -> Result<BigInt> {
        if n >= self.prec {
            return Err(Error::BeyondPrecision { exponent: n, prec: self.prec });
        }
        if n < self.lead {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[(n - self.lead) as usize].clone())
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| self.lead + k as i64)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        Self::new(self.lead, self.coeffs.clone(), p)
    }

    /// Drops leading zeros so that `lead` is the valuation.
    fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => Self::new(v, self.coeffs[(v - self.lead) as usize..].to_vec(), self.prec),
            None => Self::new(self.prec, Vec::new(), self.prec),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.lead + k, self.coeffs.clone(), self.prec + k)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.lead, self.coeffs.iter().map(|c| c * s).collect(), self.prec)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn add(&self, o: &Self) -> Self {
        let lead = self.lead.min(o.lead);
        let prec = self.prec.min(o.prec);
        let coeffs = (lead..prec)
            .map(|n| self.coeff(n).unwrap() + o.coeff(n).unwrap())
            .collect();
        Self::new(lead, coeffs, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = self.normalized();
        let b = o.normalized();
        let lead = a.lead + b.lead;
        let prec = (a.prec + b.lead).min(b.prec + a.lead);
        let len = (prec - lead).max(0) as usize;
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        Self::new(lead, out, prec)
    }

    /// Inverse when the leading coefficient is a unit.
    pub fn invert(&self) -> Result<Self> {
        let a = self.normalized();
        let Some(u) = a.coeffs.first() else {
            return Err(Error::NotInvertible("0".into()));
        };
        if !(u.abs().is_one()) {
            return Err(Error::NotInvertible(u.to_string()));
        }
        let rel = a.coeffs.len();
        let mut r = vec![BigInt::zero(); rel];
        r[0] = u.clone();
        for k in 1..rel {
            let s: BigInt = (1..=k).map(|j| &a.coeffs[j] * &r[k - j]).sum();
            r[k] = -(s * u);
        }
        Ok(Self::new(-a.lead, r, -a.lead + rel as i64))
    }

    /// Integer powers, negative exponents via [`invert`](Self::invert).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.normalized() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.prec - self.valuation().unwrap_or(self.lead))))
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NonIntegral(format!("{c}/{d}")));
            }
            out.push(q);
        }
        Ok(Self::new(self.lead, out, self.prec))
    }

    /// `q d/dq`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.iter().map(|(n, c)| c * BigInt::from(n)).collect();
        Self::new(self.lead, coeffs, self.prec)
    }

    /// In-place multiplication by `(1 - q^m)^e`, `m >= 1`.
    pub fn mul_one_minus_qm(&mut self, m: usize, e: &BigInt) {
        let len = self.coeffs.len();
        if m >= len {
            return;
        }
        let b = one_minus_pow(e, (len / m) as u64);
        let old = self.coeffs.clone();
        for (k, bk) in b.iter().enumerate().skip(1) {
            let off = k * m;
            for i in off..len {
                if !old[i - off].is_zero() {
                    self.coeffs[i] += bk * &old[i - off];
                }
            }
        }
    }
}

/// Equal precision and equal coefficients at every known exponent.
impl PartialEq for PowerSeries {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec
            && (self.lead.min(o.lead)..self.prec).all(|n| self.coeff(n).unwrap() == o.coeff(n).unwrap())
    }
}

impl Eq for PowerSeries {}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}q")?,
                _ => write!(f, "{c}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

pub fn series_mul(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    a.mul(b)
}

pub fn series_pow(a: &PowerSeries, e: i64) -> Result<PowerSeries> {
    a.pow(e)
}

pub fn series_invert(a: &PowerSeries) -> Result<PowerSeries> {
    a.invert()
}

/// `prod_{n>=1} (1 - q^(step n))^e`, exact below `prec`.
pub fn eta_like_product(step: usize, e: i64, prec: i64) -> PowerSeries {
    let mut s = PowerSeries::one(prec.max(1));
    let e = BigInt::from(e);
    let mut n = 1;
    while ((step * n) as i64) < prec {
        s.mul_one_minus_qm(step * n, &e);
        n += 1;
    }
    s
}
