//! Exact octonion arithmetic and the octavian lattice.
//!
//! Basis is `1, e1..e7` with `e_i e_{i+1} = e_{i+3}` (indices mod 7, taken in
//! `1..=7`). The full table is generated by closure from those seven triples.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;

pub type Rational = BigRational;

/// `(sign, index)` with `e_i e_j = sign * e_index`; index 0 is the unit.
type Table = [[(i8, u8); 8]; 8];

fn wrap7(i: usize) -> usize {
    (i - 1) % 7 + 1
}

/// The seven quaternionic triples `(i, i+1, i+3)`.
pub fn triples() -> [(usize, usize, usize); 7] {
    let mut t = [(0, 0, 0); 7];
    for (k, slot) in t.iter_mut().enumerate() {
        let i = k + 1;
        *slot = (i, wrap7(i + 1), wrap7(i + 3));
    }
    t
}

fn build_table() -> Table {
    let mut t: [[Option<(i8, u8)>; 8]; 8] = [[None; 8]; 8];
    let mut set = |i: usize, j: usize, v: (i8, u8)| match t[i][j] {
        Some(old) if old != v => panic!("octonion table conflict at e{i}*e{j}"),
        _ => t[i][j] = Some(v),
    };
    for i in 0..8 {
        set(0, i, (1, i as u8));
        set(i, 0, (1, i as u8));
    }
    for i in 1..8 {
        set(i, i, (-1, 0));
    }
    for (a, b, c) in triples() {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            set(x, y, (1, z as u8));
            set(y, x, (-1, z as u8));
        }
    }
    let mut out = [[(0i8, 0u8); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = t[i][j].unwrap_or_else(|| panic!("octonion table gap at e{i}*e{j}"));
        }
    }
    out
}

fn table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(build_table)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Octonion {
    c: [Rational; 8],
}

impl Octonion {
    pub fn new(c: [Rational; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `e_i`, with `basis(0) = 1`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "basis index out of range");
        let mut o = Self::zero();
        o.c[i] = Rational::one();
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion { c: c.map(|v| Rational::from_integer(BigInt::from(v))) }
    }

    /// Coordinates given in units of one half.
    pub fn from_halves(c: [i64; 8]) -> Self {
        Octonion { c: c.map(|v| Rational::new(BigInt::from(v), BigInt::from(2))) }
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut o = Self::zero();
        o.c[0] = r;
        o
    }

    pub fn coeffs(&self) -> &[Rational; 8] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let mut o = self.clone();
        for v in o.c[1..].iter_mut() {
            *v = -&*v;
        }
        o
    }

    /// `x * conj(x)`, the sum of squared coordinates.
    pub fn norm(&self) -> Rational {
        self.c.iter().fold(Rational::zero(), |acc, v| acc + v * v)
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> Rational {
        &self.c[0] * Rational::from_integer(BigInt::from(2))
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.c.iter().zip(other.c.iter()).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Octonion { c: std::array::from_fn(|i| &self.c[i] * s) }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(s)))
    }

    /// Returns the real part if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let sign = if v.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = v.abs();
            let unit = if i == 0 { String::new() } else { format!("e{i}") };
            if mag.is_one() && i != 0 {
                write!(f, "{sign}{unit}")?;
            } else if i == 0 {
                write!(f, "{sign}{mag}")?;
            } else {
                write!(f, "{sign}{mag}{unit}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let t = table();
    let mut out = Octonion::zero();
    for i in 0..8 {
        if x.c[i].is_zero() {
            continue;
        }
        for j in 0..8 {
            if y.c[j].is_zero() {
                continue;
            }
            let (s, k) = t[i][j];
            let p = &x.c[i] * &y.c[j];
            if s > 0 {
                out.c[k as usize] += p;
            } else {
                out.c[k as usize] -= p;
            }
        }
    }
    out
}

/// `x conj(y) + y conj(x)`, twice the euclidean inner product.
pub fn trace_form(x: &Octonion, y: &Octonion) -> Rational {
    x.dot(y) * Rational::from_integer(BigInt::from(2))
}

impl<'a> Mul<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &'a Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        oct_mul(&self, &rhs)
    }
}

impl<'a> Add<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn add(self, rhs: &'a Octonion) -> Octonion {
        Octonion { c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]) }
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &'a Octonion) -> Octonion {
        Octonion { c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]) }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        &self - &rhs
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        -&self
    }
}

/// Integer coordinates in the basis `a1..a8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OctavianCoords(pub [i64; 8]);

impl OctavianCoords {
    pub fn to_octonion(&self) -> Octonion {
        let roots = e8_simple_roots();
        self.0
            .iter()
            .zip(roots.iter())
            .fold(Octonion::zero(), |acc, (&k, a)| acc + a.scale_int(k))
    }
}

/// `a1..a8` in coordinates of one half.
const SIMPLE_HALVES: [[i64; 8]; 8] = [
    [0, 0, 0, 2, 0, 0, 0, 0],
    [0, -1, -1, -1, 1, 0, 0, 0],
    [0, 2, 0, 0, 0, 0, 0, 0],
    [-1, -1, 0, 0, -1, 1, 0, 0],
    [2, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, -1, -1, -1],
    [0, 0, 0, 0, 0, 0, 2, 0],
    [-1, 0, 1, 0, 1, 0, 0, 1],
];

/// Marks of the highest root on `a1..a8`.
pub const THETA_MARKS: [i64; 8] = [2, 3, 4, 5, 6, 4, 2, 3];

pub fn e8_simple_roots() -> &'static [Octonion; 8] {
    static R: OnceLock<[Octonion; 8]> = OnceLock::new();
    R.get_or_init(|| SIMPLE_HALVES.map(Octonion::from_halves))
}

/// `theta = (e3 + e4 + e5 - e7)/2`, checked against its expansion in the `a_i`.
pub fn highest_root() -> Result<Octonion> {
    let theta = Octonion::from_halves([0, 0, 0, 1, 1, 1, 0, -1]);
    let expanded = OctavianCoords(THETA_MARKS).to_octonion();
    if theta != expanded {
        return Err(Error::SelfCheck(format!("theta = {theta} but marks give {expanded}")));
    }
    Ok(theta)
}

pub(crate) fn theta() -> &'static Octonion {
    static T: OnceLock<Octonion> = OnceLock::new();
    T.get_or_init(|| highest_root().expect("highest root self-check"))
}

/// Inverse of the matrix whose columns are the `a_i`.
fn coord_solver() -> &'static linalg::Matrix {
    static M: OnceLock<linalg::Matrix> = OnceLock::new();
    M.get_or_init(|| {
        let roots = e8_simple_roots();
        let m: linalg::Matrix = (0..8)
            .map(|row| (0..8).map(|col| roots[col].c[row].clone()).collect())
            .collect();
        linalg::invert(&m).expect("E8 simple roots are a basis")
    })
}

/// Solves for coordinates in the `a_i` basis, failing off the octavian lattice.
pub fn octavian_coords(x: &Octonion) -> Result<OctavianCoords> {
    let inv = coord_solver();
    let mut k = [0i64; 8];
    for (i, slot) in k.iter_mut().enumerate() {
        let v = (0..8).fold(Rational::zero(), |acc, j| acc + &inv[i][j] * &x.c[j]);
        if !v.is_integer() {
            return Err(Error::NotOctavian(x.to_string()));
        }
        *slot = v
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::NotOctavian(format!("{x} (coordinate overflow)")))?;
    }
    Ok(OctavianCoords(k))
}

pub fn is_octavian(x: &Octonion) -> bool {
    octavian_coords(x).is_ok()
}
