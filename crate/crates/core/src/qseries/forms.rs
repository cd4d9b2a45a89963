use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::series::{eta_like_product, PowerSeries};
use crate::combinat::{divisors, one_minus_pow, sigma};
use crate::error::{Error, Result};

/// Normalised Eisenstein series `E_k` for `k` in {2, 4, 6}, exact below `prec`.
pub fn eisenstein(k: u32, prec: i64) -> Result<PowerSeries> {
    let (factor, power) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let prec = prec.max(1);
    let mut c = vec![BigInt::from(1)];
    c.extend((1..prec).map(|n| sigma(power, n as u64) * factor));
    Ok(PowerSeries::new(0, c, prec))
}

/// `q prod (1 - q^n)^24`.
pub fn delta12(prec: i64) -> PowerSeries {
    eta_like_product(1, 24, prec - 1).shift(1)
}

/// `E4^2 / Delta12 = q^-1 + 504 + 73764 q + ...`, exact below `prec`.
pub fn f_e10(prec: i64) -> PowerSeries {
    let e4 = eisenstein(4, prec + 1).expect("weight 4");
    let inv = delta12(prec + 2).invert().expect("Delta12 is monic");
    e4.mul(&e4).mul(&inv).truncate(prec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylConstants {
    /// Constant term of `E4 f E2 / 24`.
    pub m: BigInt,
    /// Constant term of `E4 f`.
    pub d: BigInt,
    /// `c(0)/2`.
    pub weight: BigInt,
}

pub fn weyl_vector_constants() -> Result<WeylConstants> {
    let f = f_e10(2);
    let e4 = eisenstein(4, 2)?;
    let e2 = eisenstein(2, 2)?;
    let e4f = e4.mul(&f);
    let d = e4f.coeff(0)?;
    let raw = e4f.mul(&e2).coeff(0)?;
    let (m, r) = raw.div_rem(&BigInt::from(24));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{raw}/24")));
    }
    let c0 = f.coeff(0)?;
    let (weight, r) = c0.div_rem(&BigInt::from(2));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{c0}/2")));
    }
    Ok(WeylConstants { m, d, weight })
}

/// `q eta(z)^-8 eta(2z)^-8 = prod (1-q^n)^-8 (1-q^2n)^-8`.
pub fn p_sigma(prec: i64) -> PowerSeries {
    eta_like_product(1, -8, prec).mul(&eta_like_product(2, -8, prec))
}

/// `prod (1 - q^k)^-l`, the generating function of `l`-coloured partitions.
pub fn multipartition_series(l: i64, prec: i64) -> PowerSeries {
    eta_like_product(1, -l, prec)
}

pub fn multipartition(l: i64, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    multipartition_series(l, n + 1).coeff(n).expect("within precision")
}

/// Coefficients `t^0..t^N` of `prod_{n=1}^{N} (1 - t^n)^mu(n)`.
pub fn product_from_mu(mu: &[BigInt]) -> Vec<BigInt> {
    let n = mu.len();
    let mut p = PowerSeries::one(n as i64 + 1);
    for (k, e) in mu.iter().enumerate() {
        p.mul_one_minus_qm(k + 1, e);
    }
    p.coeffs().to_vec()
}

/// Solves `1 - sum m(k) t^k = prod (1 - t^n)^mu(n)` through degree `m.len()`.
pub fn mu_from_m(m: &[BigInt]) -> Vec<BigInt> {
    let n = m.len();
    let mut p = PowerSeries::one(n as i64 + 1);
    let mut mu = Vec::with_capacity(n);
    for k in 1..=n {
        // (1 - t^k)^mu contributes -mu at degree k
        let pk = p.coeff(k as i64).expect("within precision");
        let e = pk + &m[k - 1];
        p.mul_one_minus_qm(k, &e);
        debug_assert_eq!(p.coeff(k as i64).unwrap(), -m[k - 1].clone());
        mu.push(e);
    }
    mu
}

/// Ascending series of `I_5` scaled by `e^-x`, summed in log space so that
/// large arguments do not overflow.
pub fn bessel_i5_scaled(x: f64) -> f64 {
    assert!(x > 0.0, "argument must be positive");
    let h = x / 2.0;
    let mut lt = 5.0 * h.ln() - 120f64.ln();
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        let t = (lt - x).exp();
        sum += t;
        // terms grow until k ~ x/2, then decay
        if k > h && t < sum * f64::EPSILON {
            break;
        }
        lt += 2.0 * h.ln() - ((k + 1.0) * (k + 6.0)).ln();
        k += 1.0;
    }
    sum
}

pub fn bessel_i5(x: f64) -> f64 {
    bessel_i5_scaled(x) * x.exp()
}

/// `2 pi n^(-5/2) I5(4 pi sqrt n)`.
pub fn asymptotic_c(n: u64) -> f64 {
    assert!(n >= 1, "n must be positive");
    let nf = n as f64;
    let x = 4.0 * std::f64::consts::PI * nf.sqrt();
    2.0 * std::f64::consts::PI * nf.powf(-2.5) * bessel_i5(x)
}

/// `c(n) / asymptotic_c(n)`.
pub fn asymptotic_ratio(n: u64, f: &PowerSeries) -> Result<f64> {
    let c = f.coeff(n as i64)?;
    Ok(c.to_f64().unwrap_or(f64::INFINITY) / asymptotic_c(n))
}

/// Coefficients of the weight-0 form on Gamma0(5) with principal part `q^-1`,
/// listed up to `q^10`.
pub const A_LISTED: [i64; 11] = [5, 11, 0, 0, -54, 55, 44, 0, 0, -395, 340];

fn chi5(d: u64) -> i64 {
    [0, 1, -1, -1, 1][(d % 5) as usize]
}

/// `-D(t) / E` with `t = (eta(tau)/eta(5 tau))^6` the Hauptmodul and
/// `E = 1 - 5 sum_n (sum_{d|n} chi5(d) d) q^n` the weight-2 Eisenstein
/// series on Gamma0(5) with character. Exact below `prec`; checked against
/// the eleven listed coefficients.
pub fn gamma05_form(prec: i64) -> Result<PowerSeries> {
    let p = prec.max(11) + 2;
    let t = eta_like_product(1, 6, p)
        .mul(&eta_like_product(5, -6, p))
        .shift(-1);
    let mut e = vec![BigInt::from(1)];
    e.extend((1..p).map(|n| {
        let s: i64 = divisors(n as u64).into_iter().map(|d| chi5(d) * d as i64).sum();
        BigInt::from(-5 * s)
    }));
    let e = PowerSeries::new(0, e, p);
    let f = t.derivative().neg().mul(&e.invert()?).truncate(prec.max(11));
    if f.coeff(-1)? != BigInt::from(1) {
        return Err(Error::SelfCheck("principal part is not q^-1".into()));
    }
    for (n, &want) in A_LISTED.iter().enumerate() {
        let got = f.coeff(n as i64)?;
        if got != BigInt::from(want) {
            return Err(Error::SelfCheck(format!("a({n}) = {got}, expected {want}")));
        }
    }
    Ok(f.truncate(prec))
}

/// `a(n)` for `0 <= n <= bound`.
pub fn a_coeffs(n: i64, bound: i64) -> Result<BigInt> {
    if n < 0 || n > bound {
        return Err(Error::BeyondPrecision { exponent: n, prec: bound + 1 });
    }
    gamma05_form(bound + 1)?.coeff(n)
}

pub fn one_minus_t_pow(e: &BigInt, kmax: u64) -> Vec<BigInt> {
    one_minus_pow(e, kmax)
}
