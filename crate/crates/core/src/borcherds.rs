//! Truncated expansion of the Borcherds product for E10, the denominator
//! identity check, correction coefficients, imaginary simple roots, the
//! Peterson recursion and the multiplicity bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::combinat::one_minus_pow;
use crate::error::{Error, Result};
use crate::lattice::{positive_roots_where, rho, rho_orbit_offsets, Coords, LatticeVector, RANK};
use crate::qseries::{f_e10, mu_from_m, multipartition, p_sigma, PowerSeries};

/// Height of `delta`, the lowest nonzero point of the fundamental domain.
pub const DELTA_HEIGHT: i64 = 30;

/// Truncation region; both kinds are closed under lowering coordinates, which
/// makes every coefficient inside them exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Height at most `h`.
    Height(i64),
    /// Coordinatewise below a vector.
    Below(LatticeVector),
}

const FIELD_BITS: u32 = 6;
const FIELD_MAX: i64 = (1 << FIELD_BITS) - 1;

impl Region {
    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.in_lambda_plus()
            && match self {
                Region::Height(h) => v.height() <= *h,
                Region::Below(b) => v.le(b),
            }
    }

    pub fn max_height(&self) -> i64 {
        match self {
            Region::Height(h) => *h,
            Region::Below(b) => b.height(),
        }
    }

    fn check_packable(&self) -> Result<()> {
        let ok = match self {
            Region::Height(h) => *h <= FIELD_MAX,
            Region::Below(b) => b.0.iter().all(|&c| (0..=FIELD_MAX).contains(&c)),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::HeightBound { height: self.max_height(), bound: FIELD_MAX })
        }
    }
}

fn pack(c: &Coords) -> u64 {
    c.iter().enumerate().fold(0u64, |acc, (k, &v)| acc | ((v as u64) << (FIELD_BITS * k as u32)))
}

fn unpack(u: u64) -> Coords {
    std::array::from_fn(|k| ((u >> (FIELD_BITS * k as u32)) & FIELD_MAX as u64) as i64)
}

/// Integer coefficients on `rho + Lambda+`, keyed by the offset from `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLatticeSeries {
    pub base: LatticeVector,
    pub terms: BTreeMap<LatticeVector, BigInt>,
    pub region: Region,
}

impl GradedLatticeSeries {
    pub fn hbound(&self) -> i64 {
        self.region.max_height()
    }

    pub fn coeff(&self, offset: &LatticeVector) -> BigInt {
        self.terms.get(offset).cloned().unwrap_or_default()
    }
}

/// `c(n)` of `E4^2/Delta12`, cached up to whatever has been asked for.
#[derive(Clone, Debug)]
pub struct CorrectionExponents {
    f: PowerSeries,
}

impl CorrectionExponents {
    pub fn new(max_det: i64) -> Self {
        CorrectionExponents { f: f_e10(max_det.max(2) + 1) }
    }

    pub fn c(&mut self, n: i64) -> BigInt {
        if n < -1 {
            return BigInt::zero();
        }
        if n >= self.f.prec() {
            self.f = f_e10(2 * n + 1);
        }
        self.f.coeff(n).expect("within precision")
    }

    /// `c(det a)`, the multiplicity of a positive root in the corrected algebra.
    pub fn mult(&mut self, a: &LatticeVector) -> Result<BigInt> {
        if !a.is_positive_root() {
            return Err(Error::Precondition(format!("{a} is not a positive root")));
        }
        Ok(self.c(a.det()))
    }
}

pub fn mult_correction(a: &LatticeVector) -> Result<BigInt> {
    CorrectionExponents::new(a.det()).mult(a)
}

/// Multiplies out `prod (1 - t^a)^{e_a}` inside `region`, factors sorted by height.
fn expand_product(region: &Region, factors: &[(LatticeVector, BigInt)]) -> Result<FxHashMap<u64, BigInt>> {
    region.check_packable()?;
    let hmax = region.max_height().max(0) as usize;
    let mut map: FxHashMap<u64, BigInt> = FxHashMap::default();
    let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); hmax + 1];
    map.insert(0, BigInt::one());
    buckets[0].push(0);
    for (a, e) in factors {
        let h = a.height() as usize;
        if h == 0 || h > hmax {
            continue;
        }
        let bin = one_minus_pow(e, (hmax / h) as u64);
        let pa = pack(&a.0);
        // sources from the top down, so each one is read before it is updated
        for src_h in (0..=hmax - h).rev() {
            let mut idx = 0;
            while idx < buckets[src_h].len() {
                let y = buckets[src_h][idx];
                idx += 1;
                let v = match map.get(&y) {
                    Some(v) if !v.is_zero() => v.clone(),
                    _ => continue,
                };
                let mut x = y;
                for (k, b) in bin.iter().enumerate().skip(1) {
                    let th = src_h + k * h;
                    if th > hmax {
                        break;
                    }
                    x += pa;
                    if let Region::Below(_) = region {
                        if !region.contains(&LatticeVector(unpack(x))) {
                            break;
                        }
                    }
                    let slot = map.entry(x).or_insert_with(|| {
                        buckets[th].push(x);
                        BigInt::zero()
                    });
                    *slot += b * &v;
                }
            }
        }
    }
    map.retain(|_, v| !v.is_zero());
    Ok(map)
}

/// Positive roots in `region` with their exponents `c(det a)`, sorted by height.
pub fn product_factors(region: &Region) -> Vec<(LatticeVector, BigInt)> {
    let mut roots = positive_roots_where(|v| region.contains(v));
    roots.sort_by_key(|r| (r.height(), *r));
    let max_det = roots.iter().map(LatticeVector::det).max().unwrap_or(0);
    let mut ex = CorrectionExponents::new(max_det);
    roots.into_iter().map(|r| {
        let c = ex.c(r.det());
        (r, c)
    }).collect()
}

pub fn product_side_region(region: &Region) -> Result<GradedLatticeSeries> {
    let factors = product_factors(region);
    let map = expand_product(region, &factors)?;
    let terms = map.into_iter().map(|(k, v)| (LatticeVector(unpack(k)), v)).collect();
    Ok(GradedLatticeSeries { base: rho(), terms, region: *region })
}

/// `prod_{a > 0} (1 - t^a)^{c(det a)}` through height offset `h`.
pub fn product_side(h: i64) -> Result<GradedLatticeSeries> {
    product_side_region(&Region::Height(h))
}

/// `sum_w det(w) t^{w rho - rho}` through height offset `h`.
pub fn sum_side(h: i64) -> GradedLatticeSeries {
    let terms = rho_orbit_offsets(h).into_iter().map(|(b, s)| (b, BigInt::from(s))).collect();
    GradedLatticeSeries { base: rho(), terms, region: Region::Height(h) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenomReport {
    pub hbound: i64,
    /// Orbit points `w rho - rho` whose coefficient was compared with `det w`.
    pub orbit_checked: usize,
    /// Nonzero coefficients off the orbit that must vanish below `delta`.
    pub off_orbit_checked: usize,
    /// Reflection pairs `A(w_i(rho + b)) = -A(rho + b)` compared inside the region.
    pub antisymmetry_checked: usize,
    pub discrepancies: usize,
    pub max_abs_discrepancy: BigInt,
}

impl DenomReport {
    pub fn pass(&self) -> bool {
        self.discrepancies == 0
    }

    pub fn verified(&self) -> usize {
        self.orbit_checked + self.off_orbit_checked + self.antisymmetry_checked
    }
}

/// Compares the product side with the Weyl-orbit sum and checks reflection
/// antisymmetry of every computed coefficient.
pub fn denominator_check(h: i64) -> Result<DenomReport> {
    let prod = product_side(h)?;
    let orbit = rho_orbit_offsets(h);
    let mut rep = DenomReport {
        hbound: h,
        orbit_checked: 0,
        off_orbit_checked: 0,
        antisymmetry_checked: 0,
        discrepancies: 0,
        max_abs_discrepancy: BigInt::zero(),
    };
    let note = |rep: &mut DenomReport, d: BigInt| {
        if !d.is_zero() {
            rep.discrepancies += 1;
            if d.abs() > rep.max_abs_discrepancy {
                rep.max_abs_discrepancy = d.abs();
            }
        }
    };
    for (b, &s) in &orbit {
        rep.orbit_checked += 1;
        note(&mut rep, prod.coeff(b) - BigInt::from(s));
    }
    for (b, v) in &prod.terms {
        // below delta the correction terms cannot appear
        if !orbit.contains_key(b) && b.height() < DELTA_HEIGHT {
            rep.off_orbit_checked += 1;
            note(&mut rep, v.clone());
        }
    }
    let mut points: FxHashSet<LatticeVector> = prod.terms.keys().copied().collect();
    points.extend(orbit.keys().copied());
    let mut points: Vec<_> = points.into_iter().collect();
    points.sort();
    for b in &points {
        let v = prod.coeff(b);
        let p = b.pairings();
        for k in 0..RANK {
            let mut partner = *b;
            partner.0[k] += 1 - p[k];
            if !partner.in_lambda_plus() {
                rep.antisymmetry_checked += 1;
                note(&mut rep, v.clone());
            } else if partner.height() <= h {
                rep.antisymmetry_checked += 1;
                note(&mut rep, &v + prod.coeff(&partner));
            }
        }
    }
    Ok(rep)
}

/// `a -> m(a)` for nonzero `a` in the fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    pub entries: BTreeMap<LatticeVector, BigInt>,
    pub region: Region,
}

/// Reads `m(a) = -A(rho + a)` off the product side. Since `rho + a` lies
/// strictly inside the chamber, no other Weyl term lands on it.
pub fn extract_correction_region(region: &Region) -> Result<CorrectionTable> {
    let prod = product_side_region(region)?;
    let entries = prod
        .terms
        .iter()
        .filter(|(a, _)| !a.is_zero() && a.in_fundamental_domain())
        .map(|(a, v)| (*a, -v))
        .collect();
    Ok(CorrectionTable { entries, region: *region })
}

pub fn extract_correction(h: i64) -> Result<CorrectionTable> {
    extract_correction_region(&Region::Height(h))
}

/// `m(delta)`, computed in the box below `delta`.
pub fn correction_at_delta() -> Result<BigInt> {
    let d = crate::lattice::delta();
    let t = extract_correction_region(&Region::Below(d))?;
    Ok(t.entries.get(&d).cloned().unwrap_or_default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImaginarySimpleRoot {
    pub root: LatticeVector,
    pub norm: i64,
    pub parity: Parity,
    pub multiplicity: BigInt,
}

fn primitive(a: &LatticeVector) -> (LatticeVector, i64) {
    let g = a.0.iter().fold(0i64, |acc, &v| acc.gcd(&v));
    (LatticeVector(a.0.map(|v| v / g)), g)
}

/// Negative-norm entries classify by the sign of `m(a)`; null directions go
/// through the `mu` recursion along `k a0`.
pub fn classify_simple_roots(tbl: &CorrectionTable) -> Vec<ImaginarySimpleRoot> {
    let mut out = Vec::new();
    let mut null_dirs: BTreeMap<LatticeVector, ()> = BTreeMap::new();
    let classify = |root: LatticeVector, norm: i64, m: &BigInt| -> Option<ImaginarySimpleRoot> {
        if m.is_zero() {
            return None;
        }
        let parity = if m.is_positive() { Parity::Even } else { Parity::Odd };
        Some(ImaginarySimpleRoot { root, norm, parity, multiplicity: m.abs() })
    };
    for (a, m) in &tbl.entries {
        let n = a.qnorm();
        if n < 0 {
            out.extend(classify(*a, n, m));
        } else if n == 0 {
            null_dirs.insert(primitive(a).0, ());
        }
    }
    for a0 in null_dirs.keys() {
        let mut ms = Vec::new();
        let mut k = 1;
        while tbl.region.contains(&a0.scale(k)) {
            ms.push(tbl.entries.get(&a0.scale(k)).cloned().unwrap_or_default());
            k += 1;
        }
        for (i, mu) in mu_from_m(&ms).iter().enumerate() {
            out.extend(classify(a0.scale(i as i64 + 1), 0, mu));
        }
    }
    out.sort_by_key(|r| (r.root.height(), r.root));
    out
}

/// Root multiplicities of E10 from the Peterson recursion
/// `((b,b) - 2 ht b) c_b = sum_{b'+b''=b} (b',b'') c_b' c_b''`,
/// where `c_b = sum_n mult(b/n)/n`.
#[derive(Clone, Debug)]
pub struct PetersonSolver {
    bound: i64,
    memo: FxHashMap<LatticeVector, BigRational>,
}

pub const DEFAULT_PETERSON_BOUND: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetersonMemo {
    pub version: u32,
    pub bound: i64,
    /// `(coordinates, "p/q")`.
    pub entries: Vec<(Vec<i64>, String)>,
}

pub const PETERSON_MEMO_VERSION: u32 = 1;

impl Default for PetersonSolver {
    fn default() -> Self {
        Self::new(DEFAULT_PETERSON_BOUND)
    }
}

impl PetersonSolver {
    pub fn new(bound: i64) -> Self {
        PetersonSolver { bound, memo: FxHashMap::default() }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn export(&self) -> PetersonMemo {
        let mut entries: Vec<(Vec<i64>, String)> =
            self.memo.iter().map(|(k, v)| (k.0.to_vec(), v.to_string())).collect();
        entries.sort();
        PetersonMemo { version: PETERSON_MEMO_VERSION, bound: self.bound, entries }
    }

    pub fn import(&mut self, m: &PetersonMemo) -> Result<()> {
        if m.version != PETERSON_MEMO_VERSION {
            return Err(Error::Table(format!("memo version {} != {}", m.version, PETERSON_MEMO_VERSION)));
        }
        for (k, v) in &m.entries {
            let c: Coords = k
                .as_slice()
                .try_into()
                .map_err(|_| Error::Table(format!("memo key of length {}", k.len())))?;
            let r: BigRational = v.parse().map_err(|_| Error::Table(format!("memo value {v:?}")))?;
            self.memo.insert(LatticeVector(c), r);
        }
        Ok(())
    }

    fn c_value(&mut self, b: &LatticeVector, support: &[LatticeVector], in_support: &FxHashSet<LatticeVector>) -> Result<BigRational> {
        if let Some(v) = self.memo.get(b) {
            return Ok(v.clone());
        }
        // multiples of real roots are known outright, and some of them sit
        // where the recursion degenerates
        let (prim, g) = primitive(b);
        if prim.qnorm() == 2 {
            let v = BigRational::new(BigInt::one(), BigInt::from(g));
            self.memo.insert(*b, v.clone());
            return Ok(v);
        }
        let lhs = b.qnorm() - 2 * b.height();
        let mut rhs = BigRational::zero();
        for bp in support {
            if bp == b || !bp.le(b) {
                continue;
            }
            let bpp = b.sub(bp);
            if !in_support.contains(&bpp) {
                continue;
            }
            let pair = bp.bilinear(&bpp);
            if pair == 0 {
                continue;
            }
            let (Some(x), Some(y)) = (self.memo.get(bp), self.memo.get(&bpp)) else {
                return Err(Error::SelfCheck(format!("recursion order broken at {b}")));
            };
            rhs += x * y * BigRational::from_integer(BigInt::from(pair));
        }
        if lhs == 0 {
            return Err(Error::SelfCheck(format!("degenerate recursion at {b}")));
        }
        let v = rhs / BigRational::from_integer(BigInt::from(lhs));
        self.memo.insert(*b, v.clone());
        Ok(v)
    }

    /// `mult(E10, a)` for a positive root within the height bound.
    pub fn multiplicity(&mut self, a: &LatticeVector) -> Result<BigInt> {
        if !a.is_positive_root() {
            return Err(Error::Precondition(format!("{a} is not a positive root")));
        }
        if a.height() > self.bound {
            return Err(Error::HeightBound { height: a.height(), bound: self.bound });
        }
        // c_b vanishes off multiples of roots, so only those below a matter
        let roots = positive_roots_where(|v| v.le(a));
        let mut set: FxHashSet<LatticeVector> = FxHashSet::default();
        for r in &roots {
            let mut k = 1;
            while r.scale(k).le(a) {
                set.insert(r.scale(k));
                k += 1;
            }
        }
        let mut support: Vec<LatticeVector> = set.iter().copied().collect();
        support.sort_by_key(|v| (v.height(), *v));
        for b in &support {
            self.c_value(b, &support, &set)?;
        }
        self.mult_from_c(a)
    }

    fn mult_from_c(&self, a: &LatticeVector) -> Result<BigInt> {
        let c = self.memo.get(a).cloned().unwrap_or_default();
        let (prim, g) = primitive(a);
        let mut m = c;
        for n in 2..=g {
            if g % n == 0 {
                let sub = prim.scale(g / n);
                let ms = if sub.is_positive_root() { self.mult_from_c(&sub)? } else { BigInt::zero() };
                m -= BigRational::new(ms, BigInt::from(n));
            }
        }
        if !m.is_integer() {
            return Err(Error::NonIntegral(format!("mult({a}) = {m}")));
        }
        Ok(m.to_integer())
    }
}

/// `p9(1 - (a,a)/2) - p9(-(a,a)/2)`.
pub fn bound_gm(a: &LatticeVector) -> Result<BigInt> {
    let n = a.qnorm();
    if n > 0 {
        return Err(Error::Precondition(format!("{a} has positive norm")));
    }
    let h = -n / 2;
    Ok(multipartition(9, 1 + h) - multipartition(9, h))
}

/// `p_sigma(1 - (a,a)/2)`, plus `p_sigma(1 - (a,a)/4)` when `a` lies in `2M*`.
pub fn bound_niemann(a: &LatticeVector, in_two_m_star: bool) -> Result<BigInt> {
    let n = a.qnorm();
    if n > 0 {
        return Err(Error::Precondition(format!("{a} has positive norm")));
    }
    let first = 1 - n / 2;
    let mut top = first;
    if in_two_m_star {
        if n % 4 != 0 {
            return Err(Error::Precondition(format!("(a,a)/4 = {n}/4 is not an integer")));
        }
        top = top.max(1 - n / 4);
    }
    let ps = p_sigma(top + 1);
    let mut v = ps.coeff(first)?;
    if in_two_m_star {
        v += ps.coeff(1 - n / 4)?;
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultRow {
    pub root: LatticeVector,
    pub height: i64,
    pub det: i64,
    pub peterson: BigInt,
    pub correction: BigInt,
    /// `None` for real roots, where the bounds do not apply.
    pub bound_gm: Option<BigInt>,
    pub bound_niemann: Option<BigInt>,
}

impl MultRow {
    pub fn dominated(&self) -> bool {
        self.peterson <= self.correction && self.bound_gm.as_ref().is_none_or(|b| &self.peterson <= b)
    }
}

/// One row per positive root of height at most `h`.
pub fn multiplicity_table(h: i64, solver: &mut PetersonSolver, two_m_star: bool) -> Result<Vec<MultRow>> {
    let roots = crate::lattice::enumerate_positive_roots(h);
    let mut ex = CorrectionExponents::new(roots.iter().map(LatticeVector::det).max().unwrap_or(0));
    let mut rows = Vec::with_capacity(roots.len());
    let mut sorted = roots;
    sorted.sort_by_key(|r| (r.height(), *r));
    for r in sorted {
        let imaginary = r.qnorm() <= 0;
        rows.push(MultRow {
            root: r,
            height: r.height(),
            det: r.det(),
            peterson: solver.multiplicity(&r)?,
            correction: ex.c(r.det()),
            bound_gm: if imaginary { Some(bound_gm(&r)?) } else { None },
            bound_niemann: if imaginary { Some(bound_niemann(&r, two_m_star)?) } else { None },
        });
    }
    Ok(rows)
}

/// Largest height (or box coordinate) the packed product engine accepts.
pub fn max_region_height() -> i64 {
    FIELD_MAX
}
