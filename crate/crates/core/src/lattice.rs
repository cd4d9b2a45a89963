//! The even unimodular lattice of hermitian octonion matrices and its E10
//! root system.
//!
//! Generators are labelled `-1, 0, 1, ..., 8`. Internally slot `k` holds
//! generator `k - 1`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::linalg;
use crate::octonion::{
    e8_simple_roots, octavian_coords, theta, trace_form, Octonion, Rational, THETA_MARKS,
};

pub const RANK: usize = 10;

pub type Coords = [i64; RANK];

/// Generator labels in slot order.
pub const GENERATORS: [i32; RANK] = [-1, 0, 1, 2, 3, 4, 5, 6, 7, 8];

pub fn slot(i: i32) -> Result<usize> {
    if (-1..=8).contains(&i) {
        Ok((i + 1) as usize)
    } else {
        Err(Error::InvalidGenerator(i))
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(x+, z; conj z, x-)` with rational diagonal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HermMatrix {
    pub xp: Rational,
    pub xm: Rational,
    pub z: Octonion,
}

impl HermMatrix {
    pub fn new(xp: Rational, z: Octonion, xm: Rational) -> Self {
        HermMatrix { xp, xm, z }
    }

    pub fn from_ints(xp: i64, z: Octonion, xm: i64) -> Self {
        HermMatrix { xp: rat(xp), xm: rat(xm), z }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, Octonion::zero(), 0)
    }

    pub fn det(&self) -> Rational {
        &self.xp * &self.xm - self.z.norm()
    }

    /// `-2 det X`.
    pub fn qnorm(&self) -> Rational {
        self.det() * rat(-2)
    }

    pub fn add(&self, o: &Self) -> Self {
        HermMatrix { xp: &self.xp + &o.xp, xm: &self.xm + &o.xm, z: &self.z + &o.z }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HermMatrix { xp: &self.xp - &o.xp, xm: &self.xm - &o.xm, z: &self.z - &o.z }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HermMatrix { xp: &self.xp * s, xm: &self.xm * s, z: self.z.scale(s) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for HermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.xp, self.z, self.z.conj(), self.xm)
    }
}

/// `-x+ y- - y+ x- + z conj(w) + w conj(z)`.
pub fn bilinear(x: &HermMatrix, y: &HermMatrix) -> Rational {
    -(&x.xp * &y.xm) - &y.xp * &x.xm + trace_form(&x.z, &y.z)
}

pub fn qnorm(x: &HermMatrix) -> Rational {
    x.qnorm()
}

pub fn simple_roots_e10() -> &'static [HermMatrix; RANK] {
    static R: OnceLock<[HermMatrix; RANK]> = OnceLock::new();
    R.get_or_init(|| {
        let a = e8_simple_roots();
        std::array::from_fn(|k| match k {
            0 => HermMatrix::from_ints(1, Octonion::zero(), -1),
            1 => HermMatrix::from_ints(-1, -theta(), 0),
            _ => HermMatrix::from_ints(0, a[k - 2].clone(), 0),
        })
    })
}

fn e10_cartan_expected() -> [[i64; RANK]; RANK] {
    // chain -1 - 0 - 1 - ... - 7, with 8 attached to 5
    let mut c = [[0i64; RANK]; RANK];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: i32, b: i32| {
        let (x, y) = (slot(a).unwrap(), slot(b).unwrap());
        c[x][y] = -1;
        c[y][x] = -1;
    };
    for i in -1..7 {
        edge(i, i + 1);
    }
    edge(5, 8);
    c
}

/// Gram matrix of the simple roots, computed from the octonion model and
/// checked against the E10 Dynkin diagram.
pub fn gram() -> &'static [[i64; RANK]; RANK] {
    static G: OnceLock<[[i64; RANK]; RANK]> = OnceLock::new();
    G.get_or_init(|| {
        let r = simple_roots_e10();
        let g: [[i64; RANK]; RANK] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let v = bilinear(&r[i], &r[j]);
                assert!(v.is_integer(), "non-integral Gram entry");
                v.to_integer().to_i64().unwrap()
            })
        });
        assert_eq!(g, e10_cartan_expected(), "simple roots do not give the E10 diagram");
        g
    })
}

/// `2 (a_i, a_j) / (a_i, a_i)` from the octonion model.
pub fn cartan_matrix() -> [[i64; RANK]; RANK] {
    let r = simple_roots_e10();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let v = bilinear(&r[i], &r[j]) * rat(2) / bilinear(&r[i], &r[i]);
            v.to_integer().to_i64().unwrap()
        })
    })
}

fn gram_inverse() -> &'static [[i64; RANK]; RANK] {
    static G: OnceLock<[[i64; RANK]; RANK]> = OnceLock::new();
    G.get_or_init(|| {
        let g = gram();
        let m: linalg::Matrix = g.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect();
        let inv = linalg::invert(&m).expect("Gram matrix is unimodular");
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                assert!(inv[i][j].is_integer(), "Gram matrix is not unimodular");
                inv[i][j].to_integer().to_i64().unwrap()
            })
        })
    })
}

/// A point of the lattice, stored by its simple-root coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector(pub Coords);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0; RANK]);

    pub fn simple(i: i32) -> Result<Self> {
        let mut c = [0; RANK];
        c[slot(i)?] = 1;
        Ok(LatticeVector(c))
    }

    pub(crate) fn unit(k: usize) -> Self {
        let mut c = [0; RANK];
        c[k] = 1;
        LatticeVector(c)
    }

    pub fn coords(&self) -> &Coords {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// `(X, a_k)` for every slot `k`.
    pub fn pairings(&self) -> [i64; RANK] {
        let g = gram();
        std::array::from_fn(|k| (0..RANK).map(|j| self.0[j] * g[j][k]).sum())
    }

    pub fn bilinear(&self, o: &Self) -> i64 {
        let p = self.pairings();
        p.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn qnorm(&self) -> i64 {
        self.bilinear(self)
    }

    /// `det X = -qnorm/2`; integral because the lattice is even.
    pub fn det(&self) -> i64 {
        -self.qnorm() / 2
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeVector(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        LatticeVector(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }

    pub fn scale(&self, s: i64) -> Self {
        LatticeVector(self.0.map(|v| v * s))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Simple reflection by generator label.
    pub fn reflect(&self, i: i32) -> Result<Self> {
        Ok(self.reflect_slot(slot(i)?))
    }

    pub(crate) fn reflect_slot(&self, k: usize) -> Self {
        let p = self.pairings()[k];
        let mut c = self.0;
        c[k] -= p;
        LatticeVector(c)
    }

    pub fn to_herm(&self) -> HermMatrix {
        let r = simple_roots_e10();
        self.0
            .iter()
            .zip(r.iter())
            .fold(HermMatrix::zero(), |acc, (&k, a)| acc.add(&a.scale(&rat(k))))
    }

    /// Solves `c_-1 = -x-`, `c_0 = -(x+ + x-)`, `c_i = coords(z + c_0 theta)`.
    pub fn from_herm(x: &HermMatrix) -> Result<Self> {
        let int = |v: &Rational| -> Result<i64> {
            if !v.is_integer() {
                return Err(Error::NotLatticeVector(x.to_string()));
            }
            v.to_integer().to_i64().ok_or_else(|| Error::NotLatticeVector(x.to_string()))
        };
        let cm1 = -int(&x.xm)?;
        let c0 = -int(&x.xp)? + cm1;
        let z = &x.z + &theta().scale_int(c0);
        let k = octavian_coords(&z).map_err(|_| Error::NotLatticeVector(x.to_string()))?;
        let mut c = [0; RANK];
        c[0] = cm1;
        c[1] = c0;
        c[2..].copy_from_slice(&k.0);
        Ok(LatticeVector(c))
    }

    pub fn in_lambda_plus(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }

    /// `det X >= -1` and `(rho, X) < 0`.
    pub fn is_positive_root(&self) -> bool {
        self.qnorm() <= 2 && self.height() > 0
    }

    /// `(X, a_i) <= 0` for all ten simple roots.
    pub fn in_fundamental_domain(&self) -> bool {
        self.pairings().iter().all(|&p| p <= 0)
    }

    pub fn le(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub fn coords(x: &HermMatrix) -> Result<LatticeVector> {
    LatticeVector::from_herm(x)
}

pub fn height(x: &LatticeVector) -> i64 {
    x.height()
}

pub fn delta() -> LatticeVector {
    LatticeVector([0, 1, 2, 3, 4, 5, 6, 4, 2, 3])
}

pub const RHO_COORDS: Coords = [30, 61, 93, 126, 160, 195, 231, 153, 76, 115];

/// `rho_K = (1 + e1 + 11e2 + e3 + 15e4 + 19e5 + e6 - 23e7)/2`.
pub fn rho_k() -> Octonion {
    Octonion::from_halves([1, 1, 11, 1, 15, 19, 1, -23])
}

/// The Weyl vector, with its coordinate expansion checked against the
/// matrix form `(-31, -rho_K; ., -30)`.
pub fn weyl_vector() -> Result<LatticeVector> {
    let rho = LatticeVector(RHO_COORDS);
    let matrix = HermMatrix::from_ints(-31, -rho_k(), -30);
    if rho.to_herm() != matrix {
        return Err(Error::SelfCheck(format!("rho expansion gives {}, matrix form {}", rho.to_herm(), matrix)));
    }
    Ok(rho)
}

pub(crate) fn rho() -> LatticeVector {
    LatticeVector(RHO_COORDS)
}

/// E8 fundamental weights `omega_i` under the trace form, so that
/// `trace_form(omega_i, a_j) = delta_ij`.
fn e8_fundamental_weights() -> [Octonion; 8] {
    let a = e8_simple_roots();
    let m: linalg::Matrix =
        (0..8).map(|i| (0..8).map(|j| trace_form(&a[i], &a[j])).collect()).collect();
    let inv = linalg::invert(&m).expect("E8 Cartan matrix is invertible");
    std::array::from_fn(|i| (0..8).fold(Octonion::zero(), |acc, j| acc + a[j].scale(&inv[i][j])))
}

/// `lambda_-1 = (1,0;0,0)`, `lambda_0 = (1,0;0,1)`, and
/// `lambda_i = (m_i, omega_i; ., m_i)` with `m_i` the marks of theta.
pub fn fundamental_weights() -> [HermMatrix; RANK] {
    let w = e8_fundamental_weights();
    std::array::from_fn(|k| match k {
        0 => HermMatrix::from_ints(1, Octonion::zero(), 0),
        1 => HermMatrix::from_ints(1, Octonion::zero(), 1),
        _ => HermMatrix::from_ints(THETA_MARKS[k - 2], w[k - 2].clone(), THETA_MARKS[k - 2]),
    })
}

/// Fundamental weights as lattice vectors: the columns of the inverse Gram matrix.
pub fn fundamental_weight_vectors() -> [LatticeVector; RANK] {
    let gi = gram_inverse();
    std::array::from_fn(|k| LatticeVector(std::array::from_fn(|j| gi[j][k])))
}

pub fn reflect(i: i32, x: &HermMatrix) -> Result<HermMatrix> {
    let a = &simple_roots_e10()[slot(i)?];
    Ok(x.sub(&a.scale(&bilinear(x, a))))
}

type OctMat = [[Octonion; 2]; 2];

fn mat_mul(a: &OctMat, b: &OctMat) -> OctMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

fn reflection_matrix(k: usize) -> OctMat {
    let one = Octonion::one();
    let zero = Octonion::zero();
    match k {
        0 => [[zero.clone(), one.clone()], [one, zero]],
        1 => {
            let t = theta();
            [[-t, one], [zero, t.conj()]]
        }
        _ => {
            let a = &e8_simple_roots()[k - 2];
            [[a.clone(), zero.clone()], [zero, -a.conj()]]
        }
    }
}

/// Evaluates `(M_i conj(X)) conj(M_i)^t` and checks it against [`reflect`].
pub fn reflect_matrix_form(i: i32, x: &HermMatrix) -> Result<HermMatrix> {
    let k = slot(i)?;
    let m = reflection_matrix(k);
    let xbar: OctMat = [
        [Octonion::from_rational(x.xp.clone()), x.z.conj()],
        [x.z.clone(), Octonion::from_rational(x.xm.clone())],
    ];
    let mbar_t: OctMat = std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].conj()));
    let r = mat_mul(&mat_mul(&m, &xbar), &mbar_t);
    let mismatch = |detail: String| Error::ReflectionMismatch { index: i, detail };
    let (xp, xm) = match (r[0][0].as_real(), r[1][1].as_real()) {
        (Some(p), Some(q)) => (p.clone(), q.clone()),
        _ => return Err(mismatch("diagonal is not real".into())),
    };
    if r[1][0] != r[0][1].conj() {
        return Err(mismatch("result is not hermitian".into()));
    }
    let out = HermMatrix::new(xp, r[0][1].clone(), xm);
    let lin = reflect(i, x)?;
    if out != lin {
        return Err(mismatch(format!("matrix form {out}, linear form {lin}")));
    }
    Ok(out)
}

pub fn in_lambda_plus(x: &LatticeVector) -> bool {
    x.in_lambda_plus()
}

/// `x- <= 0`, `x+ + x- <= 0` and `z - (x+ + x-) theta` a nonnegative
/// combination of the `a_i`.
pub fn in_lambda_plus_shortcut(x: &HermMatrix) -> bool {
    let s = &x.xp + &x.xm;
    if x.xm.is_positive() || s.is_positive() {
        return false;
    }
    let w = &x.z - &theta().scale(&s);
    matches!(octavian_coords(&w), Ok(k) if k.0.iter().all(|&v| v >= 0))
}

pub fn is_positive_root(x: &LatticeVector) -> bool {
    x.is_positive_root()
}

pub fn in_fundamental_domain(x: &HermMatrix) -> bool {
    simple_roots_e10().iter().all(|a| !bilinear(x, a).is_positive())
}

/// The explicit description: with `r_j = trace_form(z, a_j)`,
/// `r_j <= 0`, `x- <= sum m_j r_j` and `x+ <= x-`.
pub fn in_fundamental_domain_param(x: &HermMatrix) -> bool {
    let a = e8_simple_roots();
    let r: Vec<Rational> = a.iter().map(|aj| trace_form(&x.z, aj)).collect();
    if r.iter().any(Signed::is_positive) {
        return false;
    }
    let weighted = r.iter().zip(THETA_MARKS.iter()).fold(Rational::zero(), |acc, (v, &m)| acc + v * rat(m));
    x.xm <= weighted && x.xp <= x.xm
}

/// A product of simple reflections; `[i1, ..., ik]` acts as `w_i1 ... w_ik`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeylWord(Vec<i32>);

impl WeylWord {
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        for &i in &letters {
            slot(i)?;
        }
        Ok(WeylWord(letters))
    }

    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `det(w) = (-1)^length`.
    pub fn det(&self) -> i64 {
        if self.0.len() % 2 == 0 { 1 } else { -1 }
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        self.0.iter().rev().fold(*x, |acc, &i| acc.reflect_slot((i + 1) as usize))
    }

    pub fn apply_herm(&self, x: &HermMatrix) -> HermMatrix {
        self.0.iter().rev().fold(x.clone(), |acc, &i| reflect(i, &acc).expect("validated word"))
    }
}

const REDUCTION_LIMIT: usize = 1_000_000;

/// Reflects `x` into the fundamental domain, returning the image and a word
/// `w` with `w(x)` equal to it.
pub fn to_fundamental_domain(x: &LatticeVector) -> Result<(LatticeVector, WeylWord)> {
    if x.qnorm() > 0 {
        return Err(Error::Precondition(format!("{x} has positive norm")));
    }
    if !x.is_zero() && x.height() <= 0 {
        return Err(Error::Precondition(format!("{x} is not in the positive cone")));
    }
    let mut cur = *x;
    let mut steps = Vec::new();
    loop {
        let p = cur.pairings();
        let Some(k) = (0..RANK).find(|&k| p[k] > 0) else { break };
        cur.0[k] -= p[k];
        steps.push(GENERATORS[k]);
        if steps.len() > REDUCTION_LIMIT {
            return Err(Error::Precondition(format!("{x} did not reduce")));
        }
    }
    steps.reverse();
    Ok((cur, WeylWord(steps)))
}

/// Breadth-first closure from the simple roots, adding one simple root per
/// step and keeping vectors of norm at most 2 that satisfy `keep`.
///
/// Every non-simple positive root has a simple root it can shed while
/// staying a positive root, so pruning non-roots loses nothing. `keep` must
/// be closed under taking smaller coordinates.
pub fn positive_roots_where(keep: impl Fn(&LatticeVector) -> bool) -> Vec<LatticeVector> {
    let mut seen: FxHashSet<LatticeVector> = FxHashSet::default();
    let mut queue = VecDeque::new();
    for k in 0..RANK {
        let a = LatticeVector::unit(k);
        if keep(&a) && seen.insert(a) {
            queue.push_back(a);
        }
    }
    while let Some(b) = queue.pop_front() {
        let p = b.pairings();
        let n = b.qnorm();
        for k in 0..RANK {
            // (b + a_k)^2 = b^2 + 2 (b, a_k) + 2
            if n + 2 * p[k] + 2 > 2 {
                continue;
            }
            let mut c = b;
            c.0[k] += 1;
            if keep(&c) && !seen.contains(&c) {
                seen.insert(c);
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<LatticeVector> = seen.into_iter().collect();
    out.sort();
    out
}

/// All positive roots of height at most `h`, sorted by coordinates.
pub fn enumerate_positive_roots(h: i64) -> Vec<LatticeVector> {
    positive_roots_where(|v| v.height() <= h)
}

/// Positive roots below `bound` coordinatewise.
pub fn positive_roots_below(bound: &LatticeVector) -> Vec<LatticeVector> {
    positive_roots_where(|v| v.le(bound))
}

/// Offsets `w rho - rho` of height at most `hextra`, with `det w`.
///
/// Along a reduced word the height of `w rho` strictly increases, so
/// dropping anything above the bound keeps the search complete.
pub fn rho_orbit_offsets(hextra: i64) -> BTreeMap<LatticeVector, i64> {
    let mut found: FxHashMap<LatticeVector, i64> = FxHashMap::default();
    found.insert(LatticeVector::ZERO, 1);
    let mut queue = VecDeque::from([LatticeVector::ZERO]);
    while let Some(b) = queue.pop_front() {
        let sign = found[&b];
        let p = b.pairings();
        for k in 0..RANK {
            // w_k(rho + b) - rho = b + (1 - (b, a_k)) a_k
            let step = 1 - p[k];
            if step <= 0 || b.height() + step > hextra {
                continue;
            }
            let mut c = b;
            c.0[k] += step;
            match found.get(&c) {
                Some(&s) => assert_eq!(s, -sign, "Weyl orbit sign conflict at {c}"),
                None => {
                    found.insert(c, -sign);
                    queue.push_back(c);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Orbit points `w rho` with height at most `1240 + hextra`, mapped to `det w`.
pub fn weyl_orbit_of_rho(hextra: i64) -> BTreeMap<LatticeVector, i64> {
    let r = rho();
    rho_orbit_offsets(hextra).into_iter().map(|(b, s)| (r.add(&b), s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(c: Coords) -> LatticeVector {
        LatticeVector(c)
    }

    #[test]
    fn simple_roots_have_norm_two() {
        for a in simple_roots_e10() {
            assert_eq!(bilinear(a, a), rat(2));
            assert_eq!(a.qnorm(), rat(2));
        }
        assert_eq!(simple_roots_e10()[1], HermMatrix::from_ints(-1, -theta(), 0));
    }

    #[test]
    fn cartan_matches_diagram() {
        assert_eq!(cartan_matrix(), e10_cartan_expected());
        assert_eq!(*gram(), e10_cartan_expected());
    }

    #[test]
    fn rho_facts() {
        let rho = weyl_vector().unwrap();
        let h = rho.to_herm();
        assert_eq!(bilinear(&h, &h), rat(-1240));
        assert_eq!(rho.height(), 1240);
        for a in simple_roots_e10() {
            assert_eq!(bilinear(&h, a), rat(-1));
        }
        let k = octavian_coords(&rho_k()).unwrap();
        assert_eq!(k.0, [29, 57, 84, 110, 135, 91, 46, 68]);
    }

    #[test]
    fn delta_facts() {
        let d = HermMatrix::from_ints(-1, Octonion::zero(), 0);
        let c = coords(&d).unwrap();
        assert_eq!(c, delta());
        assert_eq!(c.height(), 30);
        assert_eq!(c.qnorm(), 0);
        assert!(c.is_positive_root());
        assert_eq!(qnorm(&simple_roots_e10()[0]), rat(2));
    }

    #[test]
    fn fundamental_weights_are_dual() {
        let lam = fundamental_weights();
        let r = simple_roots_e10();
        for i in 0..RANK {
            for j in 0..RANK {
                assert_eq!(bilinear(&lam[i], &r[j]), rat((i == j) as i64), "lambda{i} alpha{j}");
            }
        }
        assert_eq!(lam[0], HermMatrix::from_ints(1, Octonion::zero(), 0));
        let vecs = fundamental_weight_vectors();
        for k in 0..RANK {
            assert_eq!(vecs[k].to_herm(), lam[k]);
        }
        assert_eq!(vecs[0].neg(), delta());
    }

    #[test]
    fn positive_root_examples() {
        for k in 0..RANK {
            assert!(LatticeVector::unit(k).is_positive_root());
        }
        assert!(!LatticeVector::unit(2).neg().is_positive_root());
        let rho = rho();
        assert!(rho.in_lambda_plus());
        assert!(!LatticeVector::unit(2).sub(&LatticeVector::unit(3)).in_lambda_plus());
        let x = coords(&HermMatrix::from_ints(0, Octonion::zero(), -1)).unwrap();
        assert_eq!(x, lv([1, 1, 2, 3, 4, 5, 6, 4, 2, 3]));
        assert!(x.in_lambda_plus());
    }

    #[test]
    fn fundamental_domain_examples() {
        let lam0 = &fundamental_weights()[1];
        assert!(in_fundamental_domain(&lam0.neg()));
        assert!(in_fundamental_domain(&HermMatrix::zero()));
        assert!(!in_fundamental_domain(&simple_roots_e10()[2]));
        assert!(in_fundamental_domain_param(&lam0.neg()));
    }

    #[test]
    fn reflection_examples() {
        let r = simple_roots_e10();
        for (k, a) in r.iter().enumerate() {
            let i = GENERATORS[k];
            assert_eq!(reflect(i, a).unwrap(), a.neg());
            assert_eq!(reflect_matrix_form(i, a).unwrap(), a.neg());
        }
        let rho = rho().to_herm();
        for i in GENERATORS {
            reflect_matrix_form(i, &rho).unwrap();
        }
        reflect_matrix_form(3, &r[6]).unwrap();
        assert!(matches!(reflect(9, &rho), Err(Error::InvalidGenerator(9))));
    }

    #[test]
    fn reduction_examples() {
        let m = fundamental_weight_vectors()[1].neg();
        let (x, w) = to_fundamental_domain(&m).unwrap();
        assert_eq!((x, w.len()), (m, 0));
        let y = m.reflect(0).unwrap();
        let (x, w) = to_fundamental_domain(&y).unwrap();
        assert_eq!(x, m);
        assert_eq!(w.letters(), &[0]);
        assert!(to_fundamental_domain(&LatticeVector::unit(0)).is_err());
    }

    #[test]
    fn roots_low_heights() {
        assert_eq!(enumerate_positive_roots(1).len(), 10);
        // the diagram is a tree on ten nodes, so nine edges
        assert_eq!(enumerate_positive_roots(2).len(), 19);
    }

    #[test]
    fn root_bfs_matches_box_filter() {
        // Every vector of height <= 5 in the positive cone, filtered directly.
        let h = 5;
        let mut all = Vec::new();
        let mut c = [0i64; RANK];
        fn rec(k: usize, left: i64, c: &mut Coords, out: &mut Vec<LatticeVector>) {
            if k == RANK {
                out.push(LatticeVector(*c));
                return;
            }
            for v in 0..=left {
                c[k] = v;
                rec(k + 1, left - v, c, out);
            }
            c[k] = 0;
        }
        rec(0, h, &mut c, &mut all);
        let mut want: Vec<_> = all.into_iter().filter(|v| v.is_positive_root()).collect();
        want.sort();
        assert_eq!(enumerate_positive_roots(h), want);
    }

    #[test]
    fn orbit_small() {
        let o = weyl_orbit_of_rho(0);
        assert_eq!(o.len(), 1);
        assert_eq!(o[&rho()], 1);
        let o = weyl_orbit_of_rho(1);
        assert_eq!(o.len(), 11);
        for k in 0..RANK {
            assert_eq!(o[&rho().add(&LatticeVector::unit(k))], -1);
        }
        for (v, _) in weyl_orbit_of_rho(8) {
            assert_eq!(v.qnorm(), -1240);
        }
    }

    #[test]
    fn shortcut_matches_coordinates_on_box() {
        // x+, x- in [-3, 3] and z over a small octavian box.
        let a = e8_simple_roots();
        let mut zs = vec![Octonion::zero()];
        for ai in a.iter() {
            zs.push(ai.clone());
            zs.push(-ai);
        }
        zs.push(theta().clone());
        zs.push(theta().scale_int(-2));
        zs.push(theta().scale_int(-3) + a[4].clone());
        for xp in -3..=3 {
            for xm in -3..=3 {
                for z in &zs {
                    let h = HermMatrix::from_ints(xp, z.clone(), xm);
                    let v = coords(&h).unwrap();
                    assert_eq!(v.to_herm(), h);
                    assert_eq!(v.in_lambda_plus(), in_lambda_plus_shortcut(&h), "{h}");
                }
            }
        }
    }

    fn arb_vec() -> impl Strategy<Value = LatticeVector> {
        prop::array::uniform10(-6i64..7).prop_map(LatticeVector)
    }

    fn arb_word() -> impl Strategy<Value = WeylWord> {
        prop::collection::vec(-1i32..9, 0..20).prop_map(|v| WeylWord::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn height_is_minus_rho_pairing(x in arb_vec()) {
            prop_assert_eq!(x.height(), -x.bilinear(&rho()));
        }

        #[test]
        fn herm_round_trip(x in arb_vec()) {
            let h = x.to_herm();
            prop_assert_eq!(LatticeVector::from_herm(&h).unwrap(), x);
            prop_assert_eq!(h.qnorm(), rat(x.qnorm()));
            prop_assert_eq!(bilinear(&h, &h), h.qnorm());
        }

        #[test]
        fn reflections_agree(x in arb_vec(), i in -1i32..9) {
            let h = x.to_herm();
            let m = reflect_matrix_form(i, &h).unwrap();
            prop_assert_eq!(&m, &reflect(i, &h).unwrap());
            prop_assert_eq!(m, x.reflect(i).unwrap().to_herm());
        }

        #[test]
        fn reflection_isometry(x in arb_vec(), y in arb_vec(), i in -1i32..9) {
            let (a, b) = (x.reflect(i).unwrap(), y.reflect(i).unwrap());
            prop_assert_eq!(a.bilinear(&b), x.bilinear(&y));
            prop_assert_eq!(a.reflect(i).unwrap(), x);
        }

        #[test]
        fn reduction_round_trip(w in arb_word(), j in 2usize..10) {
            let lam = fundamental_weight_vectors();
            let x = lam[1].neg().add(&lam[j].neg());
            let y = w.apply(&x);
            let (back, word) = to_fundamental_domain(&y).unwrap();
            prop_assert_eq!(back, x);
            prop_assert_eq!(word.apply(&y), x);
        }

        #[test]
        fn domain_forms_agree(x in arb_vec()) {
            let h = x.to_herm();
            prop_assert_eq!(in_fundamental_domain(&h), x.in_fundamental_domain());
            prop_assert_eq!(in_fundamental_domain(&h), in_fundamental_domain_param(&h));
        }
    }

    #[test]
    fn reflections_preserve_positive_roots() {
        let roots = enumerate_positive_roots(6);
        for a in &roots {
            for k in 0..RANK {
                if *a != LatticeVector::unit(k) {
                    assert!(a.reflect_slot(k).is_positive_root());
                }
            }
        }
    }
}
