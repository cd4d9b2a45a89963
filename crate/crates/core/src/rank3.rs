//! The rank-3 hyperbolic algebra with Cartan matrix `[[2,-2,0],[-2,2,-1],[0,-1,2]]`:
//! roots in symmetric 2x2 matrices, the `PGL2(Z)` Weyl action, the weak
//! Jacobi form `phi_{0,1}` and the truncated `Delta_35` product.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::combinat::{divisors, one_minus_pow};
use crate::error::{Error, Result};
use crate::qseries::PowerSeries;

/// `(n1, l/2; l/2, n3)`: half-integral symmetric matrices keyed by integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Sym2 {
    pub n1: i64,
    pub l: i64,
    pub n3: i64,
}

impl Sym2 {
    pub const fn new(n1: i64, l: i64, n3: i64) -> Self {
        Sym2 { n1, l, n3 }
    }

    /// From an integer matrix `(n1, n2; n2, n3)`.
    pub const fn integral(n1: i64, n2: i64, n3: i64) -> Self {
        Sym2 { n1, l: 2 * n2, n3 }
    }

    pub fn is_integral(&self) -> bool {
        self.l % 2 == 0
    }

    /// `4 det = 4 n1 n3 - l^2`.
    pub fn det4(&self) -> i64 {
        4 * self.n1 * self.n3 - self.l * self.l
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n1 > 0 && self.det4() > 0
    }

    /// `(X, Y)` from `(X, X) = -2 det X`.
    pub fn bilinear(&self, o: &Self) -> BigInt {
        // -(x1 y3 + x3 y1 - 2 x2 y2), with x2 = l/2
        let four = -(2 * self.n1 * o.n3 + 2 * self.n3 * o.n1 - self.l * o.l);
        BigInt::from(four) / BigInt::from(2)
    }
}

impl std::fmt::Display for Sym2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integral() {
            write!(f, "({}, {}; {}, {})", self.n1, self.l / 2, self.l / 2, self.n3)
        } else {
            write!(f, "({}, {}/2; {}/2, {})", self.n1, self.l, self.l, self.n3)
        }
    }
}

pub type Gl2 = [[i64; 2]; 2];

pub const SIGMA1: Gl2 = [[1, 0], [0, -1]];
pub const SIGMA2: Gl2 = [[-1, 1], [0, 1]];
pub const SIGMA3: Gl2 = [[0, 1], [1, 0]];
pub const GENERATORS_F: [Gl2; 3] = [SIGMA1, SIGMA2, SIGMA3];

/// `P`, the Weyl vector.
pub const P: Sym2 = Sym2::new(3, 1, 2);

pub fn simple_roots_f() -> [Sym2; 3] {
    [Sym2::integral(0, -1, 0), Sym2::integral(1, 1, 0), Sym2::integral(-1, 0, 1)]
}

pub fn det_gl2(g: &Gl2) -> i64 {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

/// `g S g^t` and the sign `det g`.
pub fn weyl_action(g: &Gl2, s: &Sym2) -> (Sym2, i64) {
    let m = [[2 * s.n1, s.l], [s.l, 2 * s.n3]];
    let gm: Gl2 = std::array::from_fn(|i| std::array::from_fn(|j| g[i][0] * m[0][j] + g[i][1] * m[1][j]));
    let r: Gl2 = std::array::from_fn(|i| std::array::from_fn(|j| gm[i][0] * g[j][0] + gm[i][1] * g[j][1]));
    (Sym2::new(r[0][0] / 2, r[0][1], r[1][1] / 2), det_gl2(g))
}

pub fn is_positive_real_root(s: &Sym2) -> bool {
    if !s.is_integral() {
        return false;
    }
    let (n1, n2, n3) = (s.n1, s.l / 2, s.n3);
    n1 * n3 - n2 * n2 == -1 && n2 <= n1 + n3 && 0 <= n1 + n3 && 0 <= n3
}

/// `0 <= 2 y2 <= y3 <= y1`, and `0 < y3` when `y2 = 0`.
pub fn in_domain_rank3(s: &Sym2) -> bool {
    let (y1, two_y2, y3) = (s.n1, s.l, s.n3);
    0 <= two_y2 && two_y2 <= y3 && y3 <= y1 && (two_y2 != 0 || y3 > 0)
}

/// Orbit points `g P g^t` for words of length at most `len`, with `det g`.
pub fn rank3_sum_side(len: usize) -> BTreeMap<Sym2, i64> {
    let mut found: FxHashMap<Sym2, (i64, usize)> = FxHashMap::default();
    found.insert(P, (1, 0));
    let mut queue = VecDeque::from([P]);
    while let Some(s) = queue.pop_front() {
        let (sign, depth) = found[&s];
        if depth == len {
            continue;
        }
        for g in &GENERATORS_F {
            let (t, d) = weyl_action(g, &s);
            match found.get(&t) {
                Some(&(old, _)) => assert_eq!(old, sign * d, "orbit sign conflict at {t}"),
                None => {
                    found.insert(t, (sign * d, depth + 1));
                    queue.push_back(t);
                }
            }
        }
    }
    found.into_iter().map(|(k, (s, _))| (k, s)).collect()
}

/// Two-variable series `sum c(n, r) q^n zeta^r`, one row per `q` exponent.
type Rows = Vec<BTreeMap<i64, BigInt>>;

fn rows_zero(len: usize) -> Rows {
    vec![BTreeMap::new(); len]
}

fn rows_add_into(acc: &mut Rows, x: &Rows, scale: &BigInt) {
    for (i, row) in x.iter().enumerate().take(acc.len()) {
        for (r, v) in row {
            *acc[i].entry(*r).or_default() += v * scale;
        }
    }
}

fn rows_mul(a: &Rows, b: &Rows, len: usize) -> Rows {
    let mut out = rows_zero(len);
    for (i, ra) in a.iter().enumerate() {
        for (j, rb) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            for (r1, x) in ra {
                for (r2, y) in rb {
                    *out[i + j].entry(r1 + r2).or_default() += x * y;
                }
            }
        }
    }
    out
}

/// Multiplies each row-series by a series in `q` alone.
fn rows_mul_q(a: &Rows, s: &[BigInt], len: usize) -> Rows {
    let mut out = rows_zero(len);
    for (i, ra) in a.iter().enumerate() {
        for (j, c) in s.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if c.is_zero() {
                continue;
            }
            for (r, x) in ra {
                *out[i + j].entry(*r).or_default() += x * c;
            }
        }
    }
    out
}

fn clean(rows: &mut Rows) {
    for row in rows.iter_mut() {
        row.retain(|_, v| !v.is_zero());
    }
}

/// Inverse of a monic series in `q`.
fn inverse_monic(s: &[BigInt], len: usize) -> Result<Vec<BigInt>> {
    let p = PowerSeries::new(0, s.to_vec(), len as i64);
    Ok(p.invert()?.coeffs().to_vec())
}

fn zeta_one(rows: &Rows) -> Vec<BigInt> {
    rows.iter().map(|r| r.values().sum()).collect()
}

/// `sum_{m1, m2} Q^{e(m1)+e(m2)} zeta^{m1+m2+shift} sign(m1) sign(m2)`.
fn theta_square(len: usize, e: impl Fn(i64) -> i64, sign: impl Fn(i64) -> i64, shift: i64) -> Rows {
    let mut out = rows_zero(len);
    let span = (len as f64).sqrt() as i64 + 2;
    for m1 in -span..=span {
        for m2 in -span..=span {
            let k = e(m1) + e(m2);
            if k < 0 || k as usize >= len {
                continue;
            }
            *out[k as usize].entry(m1 + m2 + shift).or_default() += BigInt::from(sign(m1) * sign(m2));
        }
    }
    out
}

/// `phi_{0,1} = 4 sum_{i=2,3,4} (theta_i(z) / theta_i(0))^2`, computed in
/// `Q = q^(1/2)` where every piece has integer coefficients.
pub fn phi01_theta(prec: usize) -> Result<Rows> {
    let len = 2 * prec;
    let mut total = rows_zero(len);
    let sq = |m: i64| m * m;
    let pieces = [
        (theta_square(len, sq, |_| 1, 0), BigInt::from(4), BigInt::one()),
        (theta_square(len, sq, |m| if m % 2 == 0 { 1 } else { -1 }, 0), BigInt::from(4), BigInt::one()),
        // theta_2 without its q^(1/8): zeta^(m+1/2) squared gives zeta^(m1+m2+1)
        (theta_square(len, |m| m * m + m, |_| 1, 1), BigInt::one(), BigInt::from(4)),
    ];
    for (t, factor, divisor) in pieces {
        let z0: Vec<BigInt> = zeta_one(&t)
            .into_iter()
            .map(|v| {
                let (q, r) = v.div_rem(&divisor);
                if !r.is_zero() {
                    return Err(Error::NonIntegral(format!("{v}/{divisor}")));
                }
                Ok(q)
            })
            .collect::<Result<_>>()?;
        let inv = inverse_monic(&z0, len)?;
        rows_add_into(&mut total, &rows_mul_q(&t, &inv, len), &factor);
    }
    clean(&mut total);
    let mut out = rows_zero(prec);
    for (k, row) in total.into_iter().enumerate() {
        if k % 2 == 1 {
            if !row.is_empty() {
                return Err(Error::SelfCheck(format!("half-integral q power {k}/2 survives")));
            }
        } else {
            out[k / 2] = row;
        }
    }
    Ok(out)
}

/// `phi_{0,1} = (zeta - 2 + 1/zeta) psi (1 + 12 sum_n sum_{d|n} d (zeta^d - 2 + zeta^-d) q^n) + 12 psi`
/// with `psi = prod (1 - q^n zeta)^2 (1 - q^n / zeta)^2 / (1 - q^n)^4`.
pub fn phi01_product(prec: usize) -> Result<Rows> {
    let len = prec;
    let mut psi = rows_zero(len);
    psi[0].insert(0, BigInt::one());
    for n in 1..len {
        for r in [1i64, -1] {
            for _ in 0..2 {
                // multiply by (1 - q^n zeta^r), top rows first
                for i in (n..len).rev() {
                    let src: Vec<(i64, BigInt)> = psi[i - n].iter().map(|(k, v)| (*k, v.clone())).collect();
                    for (k, v) in src {
                        *psi[i].entry(k + r).or_default() -= v;
                    }
                }
            }
        }
    }
    let mut u = PowerSeries::one(len as i64);
    for n in 1..len {
        u.mul_one_minus_qm(n, &BigInt::from(-4));
    }
    let psi = rows_mul_q(&psi, u.coeffs(), len);
    let mut wp = rows_zero(len);
    wp[0].insert(0, BigInt::one());
    for n in 1..len {
        for d in divisors(n as u64) {
            let d = d as i64;
            for (r, c) in [(d, 1), (0, -2), (-d, 1)] {
                *wp[n].entry(r).or_default() += BigInt::from(12 * d * c);
            }
        }
    }
    let mut pre = rows_zero(len);
    pre[0] = BTreeMap::from([(1, BigInt::one()), (0, BigInt::from(-2)), (-1, BigInt::one())]);
    let mut out = rows_mul(&rows_mul(&pre, &psi, len), &wp, len);
    rows_add_into(&mut out, &psi, &BigInt::from(12));
    clean(&mut out);
    Ok(out)
}

/// Coefficients `c(n, r)` for `n < prec` and the radial table `c(4n - r^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiCoeffs {
    pub prec: i64,
    pub table: BTreeMap<(i64, i64), BigInt>,
    pub cd: BTreeMap<i64, BigInt>,
}

impl JacobiCoeffs {
    fn from_rows(rows: Rows) -> Result<Self> {
        let prec = rows.len() as i64;
        let mut table = BTreeMap::new();
        let mut cd: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (n, row) in rows.into_iter().enumerate() {
            for (r, v) in row {
                let d = 4 * n as i64 - r * r;
                match cd.get(&d) {
                    Some(old) if *old != v => {
                        return Err(Error::SelfCheck(format!("c(n, r) not radial at D = {d}")));
                    }
                    _ => {
                        cd.insert(d, v.clone());
                    }
                }
                table.insert((n as i64, r), v);
            }
        }
        Ok(JacobiCoeffs { prec, table, cd })
    }

    /// `c(n, r)`; zero when no such term appears.
    pub fn get(&self, n: i64, r: i64) -> BigInt {
        self.table.get(&(n, r)).cloned().unwrap_or_default()
    }

    /// Largest discriminant every `c(N)` below which is known.
    pub fn max_discriminant(&self) -> i64 {
        4 * (self.prec - 1)
    }

    /// `c(N)`, the common value of `c(n, r)` with `4n - r^2 = N`.
    pub fn c(&self, d: i64) -> Result<BigInt> {
        if d < -1 || d.rem_euclid(4) == 1 || d.rem_euclid(4) == 2 {
            return Ok(BigInt::zero());
        }
        if d > self.max_discriminant() {
            return Err(Error::BeyondPrecision { exponent: d, prec: self.max_discriminant() + 1 });
        }
        Ok(self.cd.get(&d).cloned().unwrap_or_default())
    }
}

/// `phi_{0,1}` through `q^(prec-1)`, built from theta squares and checked
/// term by term against the product formula.
pub fn phi01(prec: usize) -> Result<JacobiCoeffs> {
    let a = JacobiCoeffs::from_rows(phi01_theta(prec)?)?;
    let b = JacobiCoeffs::from_rows(phi01_product(prec)?)?;
    if a.table != b.table {
        return Err(Error::SelfCheck("the two constructions of phi_{0,1} disagree".into()));
    }
    if a.c(0)? != BigInt::from(10) || a.c(-1)? != BigInt::one() {
        return Err(Error::SelfCheck("phi_{0,1} normalisation".into()));
    }
    Ok(a)
}

/// `(D/2)`: 1 for `D = 1 mod 8`, -1 for `D = 5 mod 8`, 0 for even `D`.
fn kronecker2(d: i64) -> i64 {
    match d.rem_euclid(8) {
        1 => 1,
        5 => -1,
        _ => 0,
    }
}

/// `c2(N) = 8 c(4N) + 2((-N/2) - 1) c(N) + c(N/4)`.
pub fn c2(n: i64, phi: &JacobiCoeffs) -> Result<BigInt> {
    let mut v = phi.c(4 * n)? * 8 + phi.c(n)? * (2 * (kronecker2(-n) - 1));
    if n % 4 == 0 {
        v += phi.c(n / 4)?;
    }
    Ok(v)
}

/// `(n, l, m)` in the index set: `(-1, 0, 1)`, or `n, m >= 0` with either
/// `n + m > 0`, or `n = m = 0` and `l < 0`.
pub fn in_index_set(n: i64, l: i64, m: i64) -> bool {
    (n, l, m) == (-1, 0, 1) || (n >= 0 && m >= 0 && (n + m > 0 || l < 0))
}

/// `q^3 r s^2 prod (1 - q^n r^l s^m)^{c2(4nm - l^2)}` keeping `q^n s^m`
/// with `n <= hq`, `m <= hs`.
pub fn delta35_product(hq: i64, hs: i64) -> Result<BTreeMap<Sym2, BigInt>> {
    let nb = (hq - 2).max(0);
    let mb = (hs - 2).max(0);
    let prec = (4 * nb * mb + 2) as usize;
    let phi = phi01(prec)?;
    let mut exps: FxHashMap<i64, BigInt> = FxHashMap::default();
    let mut exponent = |d: i64| -> Result<BigInt> {
        if let Some(v) = exps.get(&d) {
            return Ok(v.clone());
        }
        let v = c2(d, &phi)?;
        exps.insert(d, v.clone());
        Ok(v)
    };
    // c2 vanishes below -4, which bounds l at fixed (n, m)
    let mut factors = Vec::new();
    for n in 0..=nb {
        for m in 0..=mb {
            if n + m == 0 {
                continue;
            }
            let lmax = ((4 * n * m + 4) as f64).sqrt() as i64 + 1;
            for l in -lmax..=lmax {
                let e = exponent(4 * n * m - l * l)?;
                if !e.is_zero() {
                    factors.push(((n, l, m), e));
                }
            }
        }
    }
    let mut r: FxHashMap<(i64, i64, i64), BigInt> = FxHashMap::default();
    r.insert((0, 0, 0), BigInt::one());
    for ((fn_, fl, fm), e) in &factors {
        let bin = one_minus_pow(e, (nb + mb) as u64);
        let old: Vec<((i64, i64, i64), BigInt)> = r.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((n, l, m), v) in old {
            for (k, b) in bin.iter().enumerate().skip(1) {
                let k = k as i64;
                let t = (n + k * fn_, l + k * fl, m + k * fm);
                if t.0 > nb || t.2 > mb {
                    break;
                }
                *r.entry(t).or_default() += b * &v;
            }
        }
        r.retain(|_, v| !v.is_zero());
    }
    // the factors (1 - r^-2) and (1 - q^-1 s) from the other two cases
    let mut a: BTreeMap<Sym2, BigInt> = BTreeMap::new();
    for ((n, l, m), v) in r {
        for (dn, dl, dm, sg) in [(0, 0, 0, 1), (0, -2, 0, -1), (-1, 0, 1, -1), (-1, -2, 1, 1)] {
            let t = Sym2::new(3 + n + dn, 1 + l + dl, 2 + m + dm);
            if t.n1 <= hq && t.n3 <= hs {
                *a.entry(t).or_default() += &v * sg;
            }
        }
    }
    a.retain(|_, v| !v.is_zero());
    Ok(a)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntisymmetryReport {
    pub checked: usize,
    pub failures: Vec<(Sym2, Sym2)>,
    pub orbit_checked: usize,
    pub max_abs_discrepancy: BigInt,
}

impl AntisymmetryReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `A(g T g^t) = det(g) A(T)` for every generator wherever both sides
/// are inside the truncation, and `A(g P g^t) = det g` on the orbit of `P`.
pub fn delta35_check(a: &BTreeMap<Sym2, BigInt>, hq: i64, hs: i64) -> AntisymmetryReport {
    let mut rep = AntisymmetryReport::default();
    let inside = |t: &Sym2| t.n1 <= hq && t.n3 <= hs;
    let get = |t: &Sym2| a.get(t).cloned().unwrap_or_default();
    for (t, v) in a {
        for g in &GENERATORS_F {
            let (u, d) = weyl_action(g, t);
            if inside(&u) {
                rep.checked += 1;
                let diff = (get(&u) - v * d).abs();
                if !diff.is_zero() {
                    rep.failures.push((*t, u));
                    rep.max_abs_discrepancy = rep.max_abs_discrepancy.clone().max(diff);
                }
            }
        }
    }
    let orbit_len = (hq + hs) as usize;
    for (t, s) in rank3_sum_side(orbit_len) {
        if inside(&t) {
            rep.orbit_checked += 1;
            let diff = (get(&t) - BigInt::from(s)).abs();
            if !diff.is_zero() {
                rep.failures.push((P, t));
                rep.max_abs_discrepancy = rep.max_abs_discrepancy.clone().max(diff);
            }
        }
    }
    rep
}
