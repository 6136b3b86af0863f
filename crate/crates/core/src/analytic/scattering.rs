use serde::{Deserialize, Serialize};

use super::erfc::complex_erfcx;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringParams {
    pub m: f64,
    pub v0: f64,
}

impl ScatteringParams {
    pub fn new(m: f64, v0: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::invalid("m", format!("mass must be positive, got {m}")));
        }
        if !v0.is_finite() || v0 == 0.0 {
            return Err(Error::invalid("V0", "coupling must be finite and nonzero"));
        }
        Ok(ScatteringParams { m, v0 })
    }

    fn mv0(&self) -> f64 {
        self.m * self.v0
    }
}

/// Whether a time argument is real (`exp(-i E t)`) or Euclidean (`exp(-E tau)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeKind {
    Real,
    Euclidean,
}

/// `cot delta(E) = -sqrt(2mE) / (m V0)`.
pub fn phase_shift_cot(e: f64, p: &ScatteringParams) -> Result<f64> {
    if !(e.is_finite() && e > 0.0) {
        return Err(Error::invalid("E", format!("energy must be positive, got {e}")));
    }
    Ok(-(2.0 * p.m * e).sqrt() / p.mv0())
}

/// `delta(E)` on the branch `(-pi/2, pi/2]`. Convention-dependent: compare
/// cotangents where possible.
pub fn phase_shift(e: f64, p: &ScatteringParams) -> Result<f64> {
    Ok(angle_from_cot(phase_shift_cot(e, p)?))
}

/// `acot` onto `(-pi/2, pi/2]`; infinite cotangents map to 0.
pub fn angle_from_cot(cot: f64) -> f64 {
    if cot == 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        (1.0 / cot).atan()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    /// Scattering amplitude `f`.
    pub f: C64,
    /// Transmission amplitude `T = 1 + i f`.
    pub t: C64,
    /// `d ln T / dE`.
    pub dlnt_de: C64,
}

/// `f`, `T` and `d ln T/dE` at real `E > 0` or complex `E` with `Im E > 0`.
pub fn amplitudes(e: C64, p: &ScatteringParams) -> Result<Amplitudes> {
    let ok = e.re.is_finite() && e.im.is_finite() && (e.im > 0.0 || (e.im == 0.0 && e.re > 0.0));
    if !ok {
        return Err(Error::invalid("E", format!("need E > 0 or Im E > 0, got {e}")));
    }
    let k = (2.0 * p.m * e).sqrt();
    let den = k + I * p.mv0();
    Ok(Amplitudes {
        f: -p.mv0() / den,
        t: k / den,
        dlnt_de: (p.m / k) * (1.0 / k - 1.0 / den),
    })
}

/// `-m V0^2 / 2` for an attractive coupling, `None` otherwise.
pub fn bound_state_energy(p: &ScatteringParams) -> Option<f64> {
    (p.v0 < 0.0).then(|| -0.5 * p.m * p.v0 * p.v0)
}

/// Infinite-volume ICF difference `Delta C` in closed form,
/// `erfcx(m V0 sqrt(i t / 2m)) / 2 - 1/2`, with `i t = tau` for Euclidean
/// input. The bound-state term of an attractive coupling is carried by the
/// reflection formula of `erfcx`.
pub fn icf_infinite_limit(time: f64, kind: TimeKind, p: &ScatteringParams) -> Result<C64> {
    if !time.is_finite() || time < 0.0 {
        let key = if kind == TimeKind::Real { "t" } else { "tau" };
        return Err(Error::invalid(key, format!("time must be non-negative, got {time}")));
    }
    if time == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let s = match kind {
        TimeKind::Real => I * time / (2.0 * p.m),
        TimeKind::Euclidean => C64::new(time / (2.0 * p.m), 0.0),
    };
    let w = p.mv0() * s.sqrt();
    Ok(0.5 * complex_erfcx(w)? - 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolventMode {
    /// Periodic box of size `L`.
    Box,
    Infinite,
    /// Box continued to `L -> iL`.
    IL,
}

/// Free resolvent trace per unit length, `C0(E) / L`.
pub fn free_resolvent(e: C64, l: f64, mode: ResolventMode, m: f64) -> Result<C64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::invalid("m", format!("mass must be positive, got {m}")));
    }
    if mode != ResolventMode::Infinite && !(l.is_finite() && l > 0.0) {
        return Err(Error::invalid("L", format!("box size must be positive, got {l}")));
    }
    if mode != ResolventMode::Box && !(e.re > 0.0) {
        return Err(Error::invalid("E", format!("need Re E > 0, got {e}")));
    }
    let k = (2.0 * m * e).sqrt();
    match mode {
        ResolventMode::Box => {
            check_box_poles(e, l, m)?;
            let x = k * l / 2.0;
            Ok(m * (x.cos() / x.sin()) / k)
        }
        ResolventMode::Infinite => Ok(-I * m / k),
        ResolventMode::IL => {
            let x = k * l / 2.0;
            Ok(-I * m * (x.cosh() / x.sinh()) / k)
        }
    }
}

fn check_box_poles(e: C64, l: f64, m: f64) -> Result<()> {
    const TOL: f64 = 1e-12;
    let dk = 2.0 * std::f64::consts::PI / l;
    let nearest = ((2.0 * m * e.re.max(0.0)).sqrt() / dk).round();
    for n in [nearest - 1.0, nearest, nearest + 1.0] {
        if n < 0.0 {
            continue;
        }
        let pole = C64::new((dk * n).powi(2) / (2.0 * m), 0.0);
        if (e - pole).norm() < TOL {
            return Err(Error::PoleProximity { energy: e, pole, tolerance: TOL });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(v0: f64) -> ScatteringParams {
        ScatteringParams::new(1.0, v0).unwrap()
    }

    #[test]
    fn cot_at_two() {
        let p = params(2.0);
        assert!((phase_shift_cot(2.0, &p).unwrap() + 1.0).abs() < 1e-15);
        // oracle: cot delta = Re f / Im f from the amplitude
        let a = amplitudes(C64::new(2.0, 0.0), &p).unwrap();
        assert!((a.f.re / a.f.im + 1.0).abs() < 1e-14);
    }

    #[test]
    fn strong_coupling_and_oddness() {
        assert!(phase_shift_cot(1.0, &params(1e12)).unwrap().abs() < 1e-11);
        let a = phase_shift_cot(0.7, &params(1.3)).unwrap();
        let b = phase_shift_cot(0.7, &params(-1.3)).unwrap();
        assert_eq!(a, -b);
        assert!(phase_shift_cot(0.0, &params(1.0)).is_err());
        assert!(phase_shift_cot(-1.0, &params(1.0)).is_err());
    }

    #[test]
    fn angle_branch() {
        let d = phase_shift(2.0, &params(2.0)).unwrap();
        assert!((d + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert_eq!(angle_from_cot(0.0), std::f64::consts::FRAC_PI_2);
        assert_eq!(angle_from_cot(f64::INFINITY), 0.0);
    }

    #[test]
    fn bound_state() {
        assert_eq!(bound_state_energy(&params(-0.5)), Some(-0.125));
        assert_eq!(bound_state_energy(&params(2.0)), None);
        assert_eq!(bound_state_energy(&params(-3.0)).unwrap(), -0.5 * 9.0);
    }

    #[test]
    fn params_validation() {
        assert!(ScatteringParams::new(0.0, 1.0).is_err());
        assert!(ScatteringParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn dlnt_matches_finite_difference() {
        let p = params(2.0);
        let h = 1e-5;
        let lnt = |e: f64| amplitudes(C64::new(e, 0.0), &p).unwrap().t.ln();
        let fd = (lnt(1.0 + h) - lnt(1.0 - h)) / (2.0 * h);
        let an = amplitudes(C64::new(1.0, 0.0), &p).unwrap().dlnt_de;
        assert!((fd - an).norm() / an.norm() < 1e-7);
    }

    #[test]
    fn amplitudes_reject_branch_point() {
        let p = params(1.0);
        assert!(amplitudes(C64::new(0.0, 0.0), &p).is_err());
        assert!(amplitudes(C64::new(1.0, -0.1), &p).is_err());
        assert!(amplitudes(C64::new(-1.0, 0.1), &p).is_ok());
    }

    // (t/pi) int_0^inf delta(-i s) e^{-s t} ds with the energy contour
    // rotated onto the negative imaginary axis, plus the bound-state term.
    fn icf_quadrature(t: f64, kind: TimeKind, p: &ScatteringParams) -> C64 {
        let delta = |eps: C64| (-p.m * p.v0 / (2.0 * p.m * eps).sqrt()).atan();
        // s = u^2, u = v / (1 - v) maps [0, 1) onto [0, inf) and removes the sqrt cusp
        let g = |v: f64| -> C64 {
            if v >= 1.0 {
                return C64::new(0.0, 0.0);
            }
            let u = v / (1.0 - v);
            let s = u * u;
            let jac = 2.0 * u / ((1.0 - v) * (1.0 - v));
            let eps = match kind {
                TimeKind::Real => C64::new(0.0, -s),
                TimeKind::Euclidean => C64::new(s, 0.0),
            };
            if s == 0.0 {
                return C64::new(0.0, 0.0);
            }
            delta(eps) * (-s * t).exp() * jac
        };
        let integral = adaptive_simpson(&g, 0.0, 1.0, 1e-13, 50);
        let mut total = integral * t / std::f64::consts::PI;
        if let Some(eb) = bound_state_energy(p) {
            total += match kind {
                TimeKind::Real => (-I * eb * t).exp() - 1.0,
                TimeKind::Euclidean => C64::new((-eb * t).exp() - 1.0, 0.0),
            };
        }
        total
    }

    fn adaptive_simpson(f: &dyn Fn(f64) -> C64, a: f64, b: f64, tol: f64, depth: u32) -> C64 {
        fn rec(f: &dyn Fn(f64) -> C64, a: f64, b: f64, fa: C64, fm: C64, fb: C64, whole: C64, tol: f64, depth: u32) -> C64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            let diff = left + right - whole;
            if depth == 0 || diff.norm() <= 15.0 * tol {
                return left + right + diff / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
        let fa = f(a);
        let fb = f(b);
        let fm = f(0.5 * (a + b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, depth)
    }

    #[test]
    fn icf_limit_reference_values() {
        // frozen from an arbitrary-precision evaluation of the erfc form
        let a = icf_infinite_limit(1.0, TimeKind::Real, &params(2.0)).unwrap();
        assert!((a - C64::new(-0.347627897372, -0.104109469101)).norm() < 1e-11);
        let b = icf_infinite_limit(1.0, TimeKind::Real, &params(-0.5)).unwrap();
        assert!((b - C64::new(0.124826141089, 0.214530621583)).norm() < 1e-11);
    }

    #[test]
    fn icf_limit_matches_quadrature() {
        for &v0 in &[2.0, -0.5, -2.0, 0.7] {
            let p = params(v0);
            for i in 0..=12 {
                let t = 0.2 + 4.8 * i as f64 / 12.0;
                for kind in [TimeKind::Real, TimeKind::Euclidean] {
                    let closed = icf_infinite_limit(t, kind, &p).unwrap();
                    let quad = icf_quadrature(t, kind, &p);
                    assert!((closed - quad).norm() < 1e-6, "V0={v0} t={t} {kind:?}: {closed} vs {quad}");
                }
            }
        }
    }

    #[test]
    fn icf_limit_edges() {
        let p = params(2.0);
        assert_eq!(icf_infinite_limit(0.0, TimeKind::Real, &p).unwrap(), C64::new(0.0, 0.0));
        assert!(icf_infinite_limit(-1.0, TimeKind::Euclidean, &p).is_err());
        let e = icf_infinite_limit(2.0, TimeKind::Euclidean, &p).unwrap();
        assert_eq!(e.im, 0.0);
    }

    #[test]
    fn attractive_split_into_bound_and_repulsive() {
        let (att, rep) = (params(-0.5), params(0.5));
        for &tau in &[0.3, 1.0, 2.5, 4.0] {
            let a = icf_infinite_limit(tau, TimeKind::Euclidean, &att).unwrap().re;
            let r = icf_infinite_limit(tau, TimeKind::Euclidean, &rep).unwrap().re;
            let eb = bound_state_energy(&att).unwrap();
            let bound = (-eb * tau).exp() - 1.0;
            assert!(((a - bound) - (-r)).abs() < 1e-12, "tau={tau}");
        }
    }

    #[test]
    fn infinite_resolvent() {
        let r = free_resolvent(C64::new(0.5, 0.0), 0.0, ResolventMode::Infinite, 1.0).unwrap();
        assert!((r - C64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn infinite_resolvent_from_momentum_integral() {
        // oracle: int dp/2pi 1/(E + i eps - p^2/2m) on a fine grid, eps -> 0
        let e = 0.5;
        let mut vals = vec![];
        for &eps in &[0.02, 0.01] {
            let (pmax, n) = (400.0, 4_000_000usize);
            let dp = 2.0 * pmax / n as f64;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                let p = -pmax + (j as f64 + 0.5) * dp;
                s += 1.0 / C64::new(e - p * p / 2.0, eps);
            }
            // tails beyond pmax behave like -2m/p^2
            let tail = -2.0 / (std::f64::consts::PI * pmax);
            vals.push(s * dp / (2.0 * std::f64::consts::PI) + tail);
        }
        // linear Richardson step in eps
        let extrap = 2.0 * vals[1] - vals[0];
        assert!((extrap - C64::new(0.0, -1.0)).norm() < 2e-3, "{extrap}");
    }

    #[test]
    fn il_resolvent_reaches_infinite_limit() {
        let e = C64::new(0.5, 0.0);
        let a = free_resolvent(e, 60.0, ResolventMode::IL, 1.0).unwrap();
        let b = free_resolvent(e, 60.0, ResolventMode::Infinite, 1.0).unwrap();
        assert!((a - b).norm() / b.norm() < 1e-8);
    }

    #[test]
    fn box_resolvent_pole() {
        let l = 4.0;
        let e1 = (2.0 * std::f64::consts::PI / l).powi(2) / 2.0;
        let near = free_resolvent(C64::new(e1 + 1e-7, 0.0), l, ResolventMode::Box, 1.0).unwrap();
        assert!(near.norm() > 1e6);
        match free_resolvent(C64::new(e1, 0.0), l, ResolventMode::Box, 1.0) {
            Err(Error::PoleProximity { .. }) => {}
            other => panic!("expected pole rejection, got {other:?}"),
        }
        // sign change brackets each pole
        for n in 1..5 {
            let en = (2.0 * std::f64::consts::PI * n as f64 / l).powi(2) / 2.0;
            let lo = free_resolvent(C64::new(en - 1e-4, 0.0), l, ResolventMode::Box, 1.0).unwrap().re;
            let hi = free_resolvent(C64::new(en + 1e-4, 0.0), l, ResolventMode::Box, 1.0).unwrap().re;
            assert!(lo.signum() != hi.signum(), "n={n}");
        }
    }

    proptest! {
        #[test]
        fn unitarity(e in 0.01f64..10.0, m in 0.1f64..5.0, v0 in prop_oneof![-10.0f64..-0.01, 0.01f64..10.0]) {
            let a = amplitudes(C64::new(e, 0.0), &ScatteringParams::new(m, v0).unwrap()).unwrap();
            prop_assert!((a.t.norm_sqr() + a.f.norm_sqr() - 1.0).abs() <= 1e-12);
            prop_assert!(a.f.im >= 0.0);
            prop_assert!((a.t - (1.0 + I * a.f)).norm() <= 1e-14);
        }

        #[test]
        fn transmission_is_cos_delta_phase(e in 0.01f64..10.0, v0 in prop_oneof![-10.0f64..-0.01, 0.01f64..10.0]) {
            let p = params(v0);
            let d = phase_shift(e, &p).unwrap();
            let a = amplitudes(C64::new(e, 0.0), &p).unwrap();
            prop_assert!((a.t - d.cos() * (I * d).exp()).norm() <= 1e-12);
        }
    }
}
