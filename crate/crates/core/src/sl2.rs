//! `SL(2, Z)` matrices, L/R words and necklaces, and the spectral data of a
//! hyperbolic element.
//!
//! Words are coded with `L = (1 0; 1 1)` and `R = (1 1; 0 1)`. Every word
//! containing both letters maps to a hyperbolic matrix with nonnegative
//! entries, and every primitive hyperbolic class of `PSL(2, Z)` has exactly one
//! aperiodic necklace.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_real, ExactInt, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }

    pub fn matrix<T: ExactInt>(self) -> Mat2<T> {
        match self {
            Letter::L => Mat2::gen_l(),
            Letter::R => Mat2::gen_r(),
        }
    }
}

/// Nonempty finite word over `{L, R}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LRWord(Vec<Letter>);

impl LRWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(LRWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&x| x == letter).count()
    }

    /// Cyclic rotation moving position `k` to the front.
    pub fn rotated(&self, k: usize) -> LRWord {
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        LRWord(v)
    }

    /// Exchange `L` and `R`.
    pub fn swapped(&self) -> LRWord {
        LRWord(self.0.iter().map(|l| l.swapped()).collect())
    }
}

impl FromStr for LRWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| match ch {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        LRWord::new(letters)
    }
}

impl fmt::Display for LRWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Aperiodic cyclic word containing both letters, stored in its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LRNecklace(LRWord);

impl LRNecklace {
    pub fn word(&self) -> &LRWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Necklace of the mirror class (`L <-> R`).
    pub fn mirror(&self) -> LRNecklace {
        canonical_necklace(&self.0.swapped()).expect("mirror of a necklace is a necklace")
    }
}

impl fmt::Display for LRNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for LRNecklace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonical_necklace(&s.parse()?)
    }
}

/// Index of the lexicographically least rotation (two-pointer minimum expression).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest `p` dividing `len` such that the word is a power of its length-`p` prefix.
pub fn primitive_period<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut k = fail[i - 1];
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

pub fn canonical_necklace(w: &LRWord) -> Result<LRNecklace> {
    if w.count(Letter::L) == 0 || w.count(Letter::R) == 0 {
        return Err(Error::AllSameLetter(w.to_string()));
    }
    if primitive_period(w.letters()) < w.len() {
        return Err(Error::Periodic(w.to_string()));
    }
    Ok(LRNecklace(w.rotated(least_rotation(w.letters()))))
}

/// Element of `SL(2, Z)`: `(a b; c d)` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: ExactInt> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
                d: d.to_string(),
                det: det.to_string(),
            });
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let conv = |x: i64| T::from_i64(x).expect("i64 fits");
        Self::new(conv(a), conv(b), conv(c), conv(d))
    }

    pub fn identity() -> Self {
        Mat2 { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    /// `L = (1 0; 1 1)`.
    pub fn gen_l() -> Self {
        Mat2 { a: T::one(), b: T::zero(), c: T::one(), d: T::one() }
    }

    /// `R = (1 1; 0 1)`.
    pub fn gen_r() -> Self {
        Mat2 { a: T::one(), b: T::one(), c: T::zero(), d: T::one() }
    }

    /// `S = (0 -1; 1 0)`.
    pub fn gen_s() -> Self {
        Mat2 { a: T::zero(), b: -T::one(), c: T::one(), d: T::zero() }
    }

    pub fn a(&self) -> &T {
        &self.a
    }
    pub fn b(&self) -> &T {
        &self.b
    }
    pub fn c(&self) -> &T {
        &self.c
    }
    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn inverse(&self) -> Self {
        Mat2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Equality in `PSL(2, Z)`.
    pub fn eq_projective(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > T::one() + T::one()
    }

    pub fn convert<U: ExactInt>(&self) -> Mat2<U> {
        let conv = |x: &T| {
            U::from_str_radix(&x.to_string(), 10)
                .unwrap_or_else(|_| panic!("entry {x} does not fit"))
        };
        Mat2 { a: conv(&self.a), b: conv(&self.b), c: conv(&self.c), d: conv(&self.d) }
    }

    pub fn to_real<F: Real>(&self) -> RealMat2<F> {
        RealMat2 {
            a: to_real(&self.a),
            b: to_real(&self.b),
            c: to_real(&self.c),
            d: to_real(&self.d),
        }
    }

    /// Right multiplication by a generator, in place.
    pub fn push(&mut self, letter: Letter) {
        match letter {
            // (a b; c d)(1 0; 1 1) = (a+b b; c+d d)
            Letter::L => {
                self.a = self.a.clone() + self.b.clone();
                self.c = self.c.clone() + self.d.clone();
            }
            // (a b; c d)(1 1; 0 1) = (a a+b; c c+d)
            Letter::R => {
                self.b = self.a.clone() + self.b.clone();
                self.d = self.c.clone() + self.d.clone();
            }
        }
    }
}

impl<T: ExactInt> Mul for &Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, o: &Mat2<T>) -> Mat2<T> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2 {
            a: a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            b: a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c: c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            d: c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        }
    }
}

impl<T: ExactInt> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, o: Mat2<T>) -> Mat2<T> {
        &self * &o
    }
}

impl<T: ExactInt> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

pub fn mat_mul<T: ExactInt>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    x * y
}

/// Ordered product of generator matrices.
pub fn word_to_matrix<T: ExactInt>(w: &LRWord) -> Mat2<T> {
    let mut m = Mat2::identity();
    for &l in w.letters() {
        m.push(l);
    }
    m
}

/// `P M P^-1`.
pub fn conjugate<T: ExactInt>(m: &Mat2<T>, p: &Mat2<T>) -> Mat2<T> {
    &(p * m) * &p.inverse()
}

/// Real 2x2 matrix, used for eigenframes and orbit points in `SL(2, R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealMat2<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Real> RealMat2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        RealMat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        RealMat2::new(F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn diag(x: F, y: F) -> Self {
        RealMat2::new(x, F::zero(), F::zero(), y)
    }

    pub fn det(&self) -> F {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> F {
        self.a + self.d
    }

    /// Inverse, assuming determinant 1.
    pub fn inverse(&self) -> Self {
        RealMat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// Mobius action `(az + b)/(cz + d)`.
    pub fn act(&self, z: Complex<F>) -> Complex<F> {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// `cz + d`; the derivative of the action at `z` is its inverse square.
    pub fn cocycle(&self, z: Complex<F>) -> Complex<F> {
        z * self.c + self.d
    }

    pub fn max_abs_diff(&self, o: &Self) -> F {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(F::zero(), |acc, x| acc.max(x.abs()))
    }
}

impl<F: Real> Mul for RealMat2<F> {
    type Output = RealMat2<F>;

    fn mul(self, o: RealMat2<F>) -> RealMat2<F> {
        RealMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Trace, larger eigenvalue `xi` and geodesic length `2 ln xi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData<T, F = f64> {
    pub trace: T,
    pub xi: F,
    pub length: F,
}

pub fn spectral<T: ExactInt, F: Real>(m: &Mat2<T>) -> Result<SpectralData<T, F>> {
    let trace = m.trace();
    if !m.is_hyperbolic() {
        return Err(Error::NotHyperbolic(trace.to_string()));
    }
    let t: F = to_real(&trace.abs());
    let two = F::lit(2.0);
    let xi = (t + ((t - two) * (t + two)).sqrt()) / two;
    Ok(SpectralData { trace, xi, length: two * xi.ln() })
}
