//! Small integer helpers shared by the series and product engines.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `binom(c, k)` for any integer `c`, i.e. the coefficient of `x^k` in `(1+x)^c`.
#[cfg(test)]
pub fn gen_binomial(c: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= c - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Coefficients of `(1 - x)^c` up to `x^kmax`.
pub fn one_minus_pow(c: &BigInt, kmax: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut cur = BigInt::one();
    out.push(cur.clone());
    for k in 1..=kmax {
        // binom(c,k) (-1)^k from the previous term
        cur = -(cur * (c - BigInt::from(k - 1))) / BigInt::from(k);
        if cur.is_zero() {
            break;
        }
        out.push(cur.clone());
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut hi: Vec<u64> = d.iter().rev().map(|&x| n / x).filter(|&x| x * x != n).collect();
    d.append(&mut hi);
    d
}

/// `sigma_k(n)`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(gen_binomial(&BigInt::from(26), 3), BigInt::from(2600));
        assert_eq!(gen_binomial(&BigInt::from(-24), 3), BigInt::from(-2600));
        assert_eq!(gen_binomial(&BigInt::from(3), 5), BigInt::zero());
        let v = one_minus_pow(&BigInt::from(-24), 3);
        assert_eq!(v[3], BigInt::from(2600));
        assert_eq!(one_minus_pow(&BigInt::from(2), 9).len(), 3);
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(1, 6), BigInt::from(12));
    }
}
