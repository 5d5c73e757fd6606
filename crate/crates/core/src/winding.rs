//! The Rademacher symbol as a winding number.
//!
//! A point of `SL(2,Z) \ SL(2,R)` is a pair `(z, v)`: a point of the upper half
//! plane and a unit tangent direction. `F(z, v) = Delta(z) v^6` is invariant
//! under `SL(2, Z)` (the weight-12 factor of `Delta` cancels the squared
//! derivative acting on `v`) and never vanishes, so its argument is a map from
//! the trefoil complement to the circle. Its degree along the closed orbit
//! `C(t) = M diag(e^t, e^-t)`, `0 <= t <= ln xi`, is the linking number of the
//! modular knot with the trefoil.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_real, ExactInt, Real};
use crate::sl2::{spectral, Mat2, RealMat2};
use crate::symbols::{log_delta, truncation_bound};

/// Default refinement cap on the number of orbit samples.
pub const SAMPLE_CAP: usize = 10_000_000;
/// Largest residual accepted when rounding the winding to an integer.
pub const WINDING_RESIDUAL: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPoint<F> {
    pub z: Complex<F>,
    /// Unit direction; the hyperbolic length is implicit.
    pub v: Complex<F>,
}

/// Adaptively refined samples of one period of the closed orbit.
#[derive(Clone, Debug)]
pub struct OrbitSampling<F> {
    pub frame: RealMat2<F>,
    /// `ln xi`, the primitive period in `t`.
    pub period: F,
    pub times: Vec<F>,
    pub points: Vec<TangentPoint<F>>,
    /// `arg F` at each sample, reduced to `(-pi, pi]`.
    pub phases: Vec<F>,
}

impl<F: Real> OrbitSampling<F> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Sum of the sample-to-sample phase increments, in turns.
    pub fn total_turns(&self) -> F {
        let sum = self
            .phases
            .windows(2)
            .fold(F::zero(), |acc, w| acc + wrap(w[1] - w[0]));
        sum / F::TAU()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Winding<F> {
    pub value: i64,
    pub total: F,
    pub residual: F,
    pub samples: usize,
}

/// Real eigenframe `M` with `M^-1 g M = diag(xi, 1/xi)`, `det M = 1`, first
/// column having positive first entry. A negative-trace `g` is replaced by `-g`.
pub fn axis_frame<T: ExactInt, F: Real>(gamma: &Mat2<T>) -> Result<RealMat2<F>> {
    let s = spectral::<T, F>(gamma)?;
    let g = if s.trace.is_negative() { gamma.neg() } else { gamma.clone() };
    let (a, c, d) = (to_real::<T, F>(g.a()), to_real::<T, F>(g.c()), to_real::<T, F>(g.d()));
    let xi_inv = s.xi.recip();
    // (xi - d, c) = (a - 1/xi, c) and (1/xi - d, c); c != 0 for hyperbolic g.
    let (mut u0, u1) = (a - xi_inv, c);
    let (mut w0, mut w1) = (xi_inv - d, c);
    if c < F::zero() {
        w0 = -w0;
        w1 = -w1;
    }
    let det = u0 * w1 - w0 * u1;
    let scale = det.sqrt().recip();
    let mut u1 = u1 * scale;
    u0 = u0 * scale;
    w0 = w0 * scale;
    w1 = w1 * scale;
    if u0 < F::zero() {
        u0 = -u0;
        u1 = -u1;
        w0 = -w0;
        w1 = -w1;
    }
    Ok(RealMat2::new(u0, w0, u1, w1))
}

/// Orbit element `M diag(e^t, e^-t)`.
pub fn orbit_element<F: Real>(frame: &RealMat2<F>, t: F) -> RealMat2<F> {
    *frame * RealMat2::diag(t.exp(), (-t).exp())
}

/// `(g i, g_* i)` with the direction normalised to unit modulus.
pub fn tangent_point<F: Real>(g: &RealMat2<F>) -> TangentPoint<F> {
    let i = Complex::i();
    let j = g.cocycle(i);
    let v = i / (j * j);
    TangentPoint { z: g.act(i), v: v / v.norm() }
}

fn wrap<F: Real>(x: F) -> F {
    let tau = F::TAU();
    let mut y = x - tau * (x / tau).round();
    if y <= -F::PI() {
        y = y + tau;
    } else if y > F::PI() {
        y = y - tau;
    }
    y
}

/// `arg(Delta(z) v^6)`, evaluated after moving `z` into the standard
/// fundamental domain. Each inversion `z -> -1/z` multiplies `v` by `z^-2`,
/// so the phase picks up `-12 arg z`.
pub fn invariant_phase<F: Real>(p: &TangentPoint<F>, n_terms: usize) -> Result<F> {
    reduced_phase(p, n_terms).map(|(phase, _)| phase)
}

/// Phase of `F` and the height of the reduced point.
fn reduced_phase<F: Real>(p: &TangentPoint<F>, n_terms: usize) -> Result<(F, F)> {
    let half = F::lit(0.5);
    let one = F::one();
    let slack = F::lit(1e-12);
    let mut z = p.z;
    let mut shift = F::zero();
    let mut steps = 0usize;
    loop {
        z.re = z.re - z.re.round();
        if z.norm_sqr() < one - slack {
            shift = shift + z.arg();
            z = -z.inv();
            steps += 1;
            if steps > 100_000 {
                return Err(Error::DomainError(format!("no reduction for z = {} + {}i", p.z.re, p.z.im)));
            }
        } else {
            break;
        }
    }
    debug_assert!(z.re.abs() <= half + slack);
    let log_d = log_delta(z, n_terms)?;
    Ok((wrap(log_d.im + F::lit(6.0) * p.v.arg() - F::lit(12.0) * shift), z.im))
}

struct Sampler<'a, F> {
    frame: &'a RealMat2<F>,
    n_terms: usize,
    cap: usize,
    times: Vec<F>,
    points: Vec<TangentPoint<F>>,
    phases: Vec<F>,
}

impl<F: Real> Sampler<'_, F> {
    fn eval(&self, t: F) -> Result<Sample<F>> {
        let point = tangent_point(&orbit_element(self.frame, t));
        let (phase, height) = reduced_phase(&point, self.n_terms)?;
        Ok(Sample { t, point, phase, height })
    }

    fn push(&mut self, s: &Sample<F>) -> Result<()> {
        if self.times.len() >= self.cap {
            return Err(Error::RefinementOverflow { cap: self.cap });
        }
        self.times.push(s.t);
        self.points.push(s.point);
        self.phases.push(s.phase);
        Ok(())
    }

    /// Append samples in `(s0.t, s1.t]` until every segment passes [`segment_ok`].
    fn refine(&mut self, s0: &Sample<F>, s1: &Sample<F>) -> Result<()> {
        if segment_ok(s0, s1) {
            return self.push(s1);
        }
        let mid = (s0.t + s1.t) * F::lit(0.5);
        if !(mid > s0.t && mid < s1.t) {
            return Err(Error::RefinementOverflow { cap: self.cap });
        }
        let sm = self.eval(mid)?;
        self.refine(s0, &sm)?;
        self.refine(&sm, s1)
    }
}

#[derive(Clone, Copy)]
struct Sample<F> {
    t: F,
    point: TangentPoint<F>,
    phase: F,
    height: F,
}

/// A segment is accepted when the observed phase step is below pi/2 and the
/// a priori rate bound rules out a hidden full turn.
///
/// Along the flow the reduced point moves at hyperbolic speed 2, so
/// `|d ln y / dt| <= 2`, the direction turns at most at rate 2, and
/// `|d arg Delta / dt| <= 4 pi y |E2| <= 4 pi y * 1.11` in the fundamental
/// domain. Hence `|d arg F / dt| <= 4.44 pi y_max e^{2h} + 12` on a step `h`.
fn segment_ok<F: Real>(s0: &Sample<F>, s1: &Sample<F>) -> bool {
    if wrap(s1.phase - s0.phase).abs() >= F::FRAC_PI_2() {
        return false;
    }
    let h = s1.t - s0.t;
    let y = s0.height.max(s1.height);
    let rate = F::lit(4.44) * F::PI() * y * (F::lit(2.0) * h).exp() + F::lit(12.0);
    h * rate < F::PI()
}

/// Sample one period of the orbit of `gamma`, starting from `n` uniform steps
/// and bisecting wherever `arg F` moves by `pi/2` or more.
pub fn orbit_samples<T: ExactInt, F: Real>(gamma: &Mat2<T>, n: usize, n_terms: usize) -> Result<OrbitSampling<F>> {
    orbit_samples_capped(gamma, n, n_terms, SAMPLE_CAP)
}

pub fn orbit_samples_capped<T: ExactInt, F: Real>(
    gamma: &Mat2<T>,
    n: usize,
    n_terms: usize,
    cap: usize,
) -> Result<OrbitSampling<F>> {
    if n < 8 {
        return Err(Error::InvalidParams(format!("need at least 8 samples, got {n}")));
    }
    if n >= cap {
        return Err(Error::RefinementOverflow { cap });
    }
    let fd_height = F::lit(3f64.sqrt() / 2.0);
    let bound = truncation_bound(fd_height, n_terms);
    if !(bound < F::lit(1e-6)) {
        return Err(Error::InsufficientTerms {
            n_terms,
            im: 3f64.sqrt() / 2.0,
            bound: bound.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    let frame = axis_frame::<T, F>(gamma)?;
    let period = spectral::<T, F>(gamma)?.xi.ln();
    let mut s = Sampler {
        frame: &frame,
        n_terms,
        cap,
        times: Vec::with_capacity(n + 1),
        points: Vec::with_capacity(n + 1),
        phases: Vec::with_capacity(n + 1),
    };
    let mut prev = s.eval(F::zero())?;
    s.push(&prev)?;
    let step = period / F::from_usize(n).expect("sample count");
    for k in 1..=n {
        let t = if k == n { period } else { step * F::from_usize(k).expect("index") };
        let next = s.eval(t)?;
        s.refine(&prev, &next)?;
        prev = next;
    }
    let Sampler { times, points, phases, .. } = s;
    Ok(OrbitSampling { frame, period, times, points, phases })
}

/// Winding of `arg F` along the orbit of `gamma`, with diagnostics.
pub fn winding_number<T: ExactInt, F: Real>(gamma: &Mat2<T>, n: usize, n_terms: usize) -> Result<Winding<F>> {
    let orbit = orbit_samples::<T, F>(gamma, n, n_terms)?;
    let total = orbit.total_turns();
    let rounded = total.round();
    let residual = (total - rounded).abs();
    if !(residual < F::lit(WINDING_RESIDUAL)) {
        return Err(Error::ResidualTooLarge {
            total: total.to_f64().unwrap_or(f64::NAN),
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Winding {
        value: rounded.to_i64().expect("finite winding"),
        total,
        residual,
        samples: orbit.len(),
    })
}

/// Rademacher symbol of a hyperbolic `gamma` as a winding number.
pub fn winding_psi<T: ExactInt>(gamma: &Mat2<T>, n: usize, n_terms: usize) -> Result<i64> {
    winding_number::<T, f64>(gamma, n, n_terms).map(|w| w.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::word_to_matrix;

    type C = Complex<f64>;

    fn word(s: &str) -> Mat2<i64> {
        word_to_matrix(&s.parse().unwrap())
    }

    #[test]
    fn frame_diagonalises() {
        for s in ["LR", "LRR", "LLLRLRR", "LLRRLRRRLR"] {
            let g = word(s);
            let m: RealMat2<f64> = axis_frame(&g).unwrap();
            let xi = spectral::<i64, f64>(&g).unwrap().xi;
            let d = m.inverse() * g.to_real() * m;
            assert!((m.det() - 1.0).abs() < 1e-12);
            assert!(m.a > 0.0);
            assert!(d.max_abs_diff(&RealMat2::diag(xi, 1.0 / xi)) < 1e-12 * xi, "{s}: {d:?}");
        }
    }

    #[test]
    fn frame_of_golden_matrix() {
        // (2 1; 1 1): eigenvector for xi = phi^2 is (phi, 1).
        let g = Mat2::<i64>::from_i64(2, 1, 1, 1).unwrap();
        let m: RealMat2<f64> = axis_frame(&g).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((m.a / m.c - golden).abs() < 1e-13);
        assert!((m.b / m.d + 1.0 / golden).abs() < 1e-13);
    }

    #[test]
    fn frame_of_negative_trace() {
        let g = word("LRR");
        let a: RealMat2<f64> = axis_frame(&g).unwrap();
        let b: RealMat2<f64> = axis_frame(&g.neg()).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
        assert!(axis_frame::<i64, f64>(&Mat2::gen_r()).is_err());
    }

    #[test]
    fn orbit_closes_under_gamma() {
        for s in ["LR", "LRR", "LLRLRRR"] {
            let g = word(s);
            let orbit: OrbitSampling<f64> = orbit_samples(&g, 16, 30).unwrap();
            let first = orbit.points[0];
            let last = *orbit.points.last().unwrap();
            let gr = g.to_real::<f64>();
            let moved = gr.act(first.z);
            let j = gr.cocycle(first.z);
            let v = first.v / (j * j);
            assert!((moved - last.z).norm() < 1e-10, "{s}");
            assert!((v / v.norm() - last.v).norm() < 1e-10, "{s}");
            assert!(orbit.points.iter().all(|p| p.z.im > 0.0));
            assert!(wrap(orbit.phases[0] - orbit.phases.last().unwrap()).abs() < 1e-6);
            assert!(orbit
                .phases
                .windows(2)
                .all(|w| wrap(w[1] - w[0]).abs() < std::f64::consts::FRAC_PI_2));
        }
    }

    #[test]
    fn invariant_phase_is_invariant() {
        // F(gz, v/(cz+d)^2) = F(z, v) for g in SL(2,Z)
        let p = TangentPoint { z: C::new(0.31, 0.07), v: C::new(0.6, 0.8) };
        let base = invariant_phase(&p, 30).unwrap();
        for g in [word("LR"), word("LLR"), Mat2::gen_s(), word("RRLRL").inverse()] {
            let gr = g.to_real::<f64>();
            let j = gr.cocycle(p.z);
            let v = p.v / (j * j);
            let q = TangentPoint { z: gr.act(p.z), v: v / v.norm() };
            let other = invariant_phase(&q, 30).unwrap();
            assert!(wrap(other - base).abs() < 1e-9, "{g}");
        }
    }

    #[test]
    fn small_words() {
        assert_eq!(winding_psi(&word("LR"), 64, 30).unwrap(), 0);
        assert_eq!(winding_psi(&word("LRR"), 64, 30).unwrap(), 1);
        assert_eq!(winding_psi(&word("LLR"), 64, 30).unwrap(), -1);
    }

    #[test]
    fn doubling_samples_is_stable() {
        for s in ["LLLLR", "LRLRRRR", "LLRLLRRLR"] {
            let g = word(s);
            let base = winding_psi(&g, 8, 30).unwrap();
            for n in [16, 32, 64, 128] {
                assert_eq!(winding_psi(&g, n, 30).unwrap(), base, "{s} n={n}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(winding_psi(&word("LR"), 4, 30), Err(Error::InvalidParams(_))));
        assert!(matches!(winding_psi(&word("LR"), 64, 1), Err(Error::InsufficientTerms { .. })));
        assert!(matches!(
            orbit_samples_capped::<i64, f64>(&word("LLLLLLLLLLLR"), 8, 30, 10),
            Err(Error::RefinementOverflow { cap: 10 })
        ));
        assert!(matches!(winding_psi(&Mat2::<i64>::gen_l(), 64, 30), Err(Error::NotHyperbolic(_))));
    }
}
