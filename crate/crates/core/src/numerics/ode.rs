//! Dormand-Prince 5(4) for small autonomous systems, with Hairer's
//! continuous extension for dense output.
//!
//! Step control is error-per-unit-step: a step of size `h` is accepted when
//! the embedded error estimate is at most `tol * h` in the weighted norm,
//! or at most a few ulps for steps too short for that to be reachable.

/// Planar state, the default dimension.
pub type State = [f64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const ROUNDING_FLOOR: f64 = 4.0 * f64::EPSILON;

/// Right-hand side failure (e.g. a state left the domain of a fractional power).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutOfDomain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepError<const N: usize = 2> {
    /// Step size collapsed below resolution while the field kept failing.
    Domain { t: f64, state: [f64; N] },
    StepTooSmall { t: f64 },
    MaxSteps,
}

/// One accepted step with its interpolation coefficients.
#[derive(Debug, Clone, Copy)]
pub struct Segment<const N: usize = 2> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    rcont: [[f64; N]; 5],
}

impl<const N: usize> Segment<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Dense output at `t` in `[t0, t0 + h]` (4th order).
    pub fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let r = &self.rcont;
        std::array::from_fn(|i| r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i]))))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub tol: f64,
    /// Additive floor of the per-component error weight.
    pub scale: f64,
    pub max_steps: usize,
}

pub struct Dopri5<F, G, const N: usize = 2> {
    rhs: F,
    /// Gradient of a conserved quantity; its first-order change across the
    /// error estimate is held to `tol * h` as well.
    invariant_grad: Option<G>,
    opts: Options,
    t: f64,
    y: [f64; N],
    k1: [f64; N],
    h: f64,
    steps: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

impl<F, G, const N: usize> Dopri5<F, G, N>
where
    F: Fn(&[f64; N]) -> Result<[f64; N], OutOfDomain>,
    G: Fn(&[f64; N]) -> [f64; N],
{
    pub fn new(rhs: F, invariant_grad: Option<G>, t0: f64, y0: [f64; N], h0: f64, opts: Options) -> Result<Self, StepError<N>> {
        let k1 = rhs(&y0).map_err(|_| StepError::Domain { t: t0, state: y0 })?;
        Ok(Dopri5 { rhs, invariant_grad, opts, t: t0, y: y0, k1, h: h0, steps: 0 })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn state(&self) -> [f64; N] {
        self.y
    }

    /// The 5th-order solution after a single step of size `h` from the
    /// current state, without changing the integrator.
    pub fn probe(&self, h: f64) -> Result<[f64; N], OutOfDomain> {
        Ok(self.trial(h)?.0)
    }

    #[allow(clippy::type_complexity)]
    fn trial(&self, h: f64) -> Result<([f64; N], [f64; N], [[f64; N]; 7]), OutOfDomain> {
        let y = &self.y;
        let k1 = self.k1;
        let f = &self.rhs;
        let k2 = f(&axpy(y, h, &[(A21, &k1)]))?;
        let k3 = f(&axpy(y, h, &[(A31, &k1), (A32, &k2)]))?;
        let k4 = f(&axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = f(&axpy(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
        let k6 = f(&axpy(y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]))?;
        let y1 = axpy(y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = f(&y1)?;
        let err: [f64; N] = std::array::from_fn(|i| {
            h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
        });
        Ok((y1, err, [k1, k2, k3, k4, k5, k6, k7]))
    }

    fn error_norm(&self, y1: &[f64; N], err: &[f64; N], h: f64) -> f64 {
        // an estimate at rounding level cannot shrink with h
        let allowed = (self.opts.tol * h).max(ROUNDING_FLOOR);
        let mut norm: f64 = 0.0;
        for i in 0..N {
            let w = self.opts.scale + self.y[i].abs().max(y1[i].abs());
            norm = norm.max(err[i].abs() / (allowed * w));
        }
        if let Some(grad) = &self.invariant_grad {
            let g = grad(y1);
            let dh = g.iter().zip(err).map(|(a, b)| a * b).sum::<f64>().abs();
            norm = norm.max(dh / allowed);
        }
        norm
    }

    /// Advances one accepted step, never past `t_end`.
    pub fn step(&mut self, t_end: f64) -> Result<Segment<N>, StepError<N>> {
        let min_h = 1e-14 * (1.0 + self.t.abs());
        loop {
            if self.steps >= self.opts.max_steps {
                return Err(StepError::MaxSteps);
            }
            let remaining = t_end - self.t;
            let mut h = self.h.min(remaining);
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            if h < min_h && !last {
                return Err(StepError::StepTooSmall { t: self.t });
            }
            self.steps += 1;

            let (y1, err, k) = match self.trial(h) {
                Ok(r) => r,
                Err(OutOfDomain) => {
                    if 0.25 * h < min_h {
                        return Err(StepError::Domain { t: self.t, state: self.y });
                    }
                    self.h = 0.25 * h;
                    continue;
                }
            };
            let norm = self.error_norm(&y1, &err, h);
            if !norm.is_finite() {
                if h < min_h {
                    return Err(StepError::StepTooSmall { t: self.t });
                }
                self.h = 0.25 * h;
                continue;
            }
            // error per unit step scales like h^4
            let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.25)).clamp(0.2, 5.0) };
            if norm <= 1.0 {
                let ydiff: [f64; N] = std::array::from_fn(|i| y1[i] - self.y[i]);
                let bspl: [f64; N] = std::array::from_fn(|i| h * k[0][i] - ydiff[i]);
                let rcont = [
                    self.y,
                    ydiff,
                    bspl,
                    std::array::from_fn(|i| ydiff[i] - h * k[6][i] - bspl[i]),
                    std::array::from_fn(|i| {
                        h * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i])
                    }),
                ];
                let seg = Segment { t0: self.t, h, y0: self.y, y1, rcont };
                self.t = if last { t_end } else { self.t + h };
                self.y = y1;
                self.k1 = k[6];
                if !last || factor < 1.0 {
                    self.h = h * factor;
                }
                return Ok(seg);
            }
            if h < min_h {
                return Err(StepError::StepTooSmall { t: self.t });
            }
            self.h = h * factor.min(1.0);
        }
    }
}

/// Convenience for systems without a monitored invariant.
pub type NoInvariant<const N: usize = 2> = fn(&[f64; N]) -> [f64; N];

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(y: &State) -> Result<State, OutOfDomain> {
        Ok([y[1], -y[0]])
    }

    fn opts(tol: f64) -> Options {
        Options { tol, scale: 1.0, max_steps: 1_000_000 }
    }

    #[test]
    fn harmonic_oscillator_full_turn() {
        let mut ode = Dopri5::new(oscillator, None::<NoInvariant>, 0.0, [1.0, 0.0], 0.1, opts(1e-12)).unwrap();
        let end = 2.0 * std::f64::consts::PI;
        while ode.t() < end {
            ode.step(end).unwrap();
        }
        let y = ode.state();
        assert!((y[0] - 1.0).abs() < 1e-11, "{y:?}");
        assert!(y[1].abs() < 1e-11, "{y:?}");
    }

    #[test]
    fn dense_output_tracks_exact_solution() {
        let mut ode = Dopri5::new(oscillator, None::<NoInvariant>, 0.0, [1.0, 0.0], 0.1, opts(1e-10)).unwrap();
        let mut worst: f64 = 0.0;
        while ode.t() < 5.0 {
            let seg = ode.step(5.0).unwrap();
            for j in 1..10 {
                let t = seg.t0 + seg.h * j as f64 / 10.0;
                let y = seg.eval(t);
                worst = worst.max((y[0] - t.cos()).abs()).max((y[1] + t.sin()).abs());
            }
            assert_eq!(seg.eval(seg.t0), seg.y0);
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn domain_failure_shrinks_then_reports() {
        // x' = -1 runs into x <= 0 at t = 1; the field refuses x <= 0
        let rhs = |y: &State| if y[0] > 0.0 { Ok([-1.0, 0.0]) } else { Err(OutOfDomain) };
        let mut ode = Dopri5::new(rhs, None::<NoInvariant>, 0.0, [1.0, 0.0], 0.3, opts(1e-10)).unwrap();
        let mut res = Ok(());
        while ode.t() < 2.0 {
            if let Err(e) = ode.step(2.0) {
                res = Err(e);
                break;
            }
        }
        assert!(matches!(res, Err(StepError::Domain { .. })), "{res:?} at t = {}", ode.t());
        assert!((ode.t() - 1.0).abs() < 1e-12);
    }
}
