use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{bvp_constants, characteristic_roots, stable_tanh, BvpConstants, LoadCase, LoadKind};
use crate::error::{Error, Result};
use crate::material::{ShellMaterial, Theory};
use crate::scalar::{lit, Real};
use crate::shell_model::{AxisymmetricState, Field, ModalField, Parity, ShellGeometry};

/// Closed-form solution of the torsion problem: `a2 = a2_slope · x₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionSolution<T> {
    /// Applied torque line density.
    pub t: T,
    /// `2ε(1 + ε²/ρₒ²) G`.
    pub r_t: T,
    pub a2_slope: T,
    /// Twist per unit length, `a2_slope/ρₒ`.
    pub theta: T,
}

impl<T: Real> TorsionSolution<T> {
    pub fn state(&self) -> AxisymmetricState<T> {
        AxisymmetricState { a2: Field::linear(self.a2_slope), ..AxisymmetricState::zero() }
    }
}

/// Modal solution of a traction, pressure or rim-flexure problem.
///
/// `w(x₁) = w_p + Σ Aᵢ cosh(αᵢx₁)/cosh(αᵢl)` and
/// `a1(x₁) = s x₁ + Σ Aᵢ qᵢ sinh(αᵢx₁)/cosh(αᵢl)`, where `Aᵢ` are the
/// rim-normalized amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution<T> {
    pub kind: LoadKind,
    pub magnitude: T,
    pub theory: Theory,
    pub alpha: [Complex<T>; 2],
    pub amplitudes: [Complex<T>; 2],
    pub w_p: T,
    pub gamma: T,
    /// Uniform part of the axial strain.
    pub axial_slope: T,
    pub a1_amplitudes: [Complex<T>; 2],
    pub half_length: T,
    pub constants: BvpConstants<T>,
}

impl<T: Real> RadialSolution<T> {
    pub fn w_field(&self) -> ModalField<T> {
        ModalField {
            parity: Parity::Even,
            offset: self.w_p,
            slope: T::zero(),
            half_length: self.half_length,
            alpha: self.alpha,
            amplitude: self.amplitudes,
        }
    }

    pub fn a1_field(&self) -> ModalField<T> {
        ModalField {
            parity: Parity::Odd,
            offset: T::zero(),
            slope: self.axial_slope,
            half_length: self.half_length,
            alpha: self.alpha,
            amplitude: self.a1_amplitudes,
        }
    }

    pub fn state(&self) -> AxisymmetricState<T> {
        AxisymmetricState {
            a1: Field::Modal(self.a1_field()),
            a2: Field::Zero,
            w: Field::Modal(self.w_field()),
            gamma: self.gamma,
        }
    }

    pub fn w(&self, x1: T) -> T {
        self.w_field().jet(x1)[0]
    }

    pub fn a1(&self, x1: T) -> T {
        self.a1_field().jet(x1)[0]
    }

    /// Coefficients `cᵢ` of the representation
    /// `w = c₁·2cosh(α₁x₁) + c₂·2cosh(α₂x₁) + w_p`. They underflow to zero,
    /// harmlessly, once `Re(α)l` is in the hundreds.
    pub fn cosh_coefficients(&self) -> [Complex<T>; 2] {
        let one = Complex::new(T::one(), T::zero());
        let l = self.half_length;
        let mut out = [Complex::new(T::zero(), T::zero()); 2];
        for i in 0..2 {
            let a = if self.alpha[i].re < T::zero() { -self.alpha[i] } else { self.alpha[i] };
            out[i] = self.amplitudes[i] * (a * (-l)).exp() / (one + (a * (-lit::<T>(2.0) * l)).exp());
        }
        out
    }
}

/// Either kind of closed-form solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Solution<T> {
    Torsion(TorsionSolution<T>),
    Radial(RadialSolution<T>),
}

impl<T: Real> Solution<T> {
    pub fn state(&self) -> AxisymmetricState<T> {
        match self {
            Solution::Torsion(s) => s.state(),
            Solution::Radial(s) => s.state(),
        }
    }

    pub fn kind(&self) -> LoadKind {
        match self {
            Solution::Torsion(_) => LoadKind::Torsion,
            Solution::Radial(s) => s.kind,
        }
    }

    pub fn gamma(&self) -> T {
        match self {
            Solution::Torsion(_) => T::zero(),
            Solution::Radial(s) => s.gamma,
        }
    }

    pub fn as_radial(&self) -> Option<&RadialSolution<T>> {
        match self {
            Solution::Radial(s) => Some(s),
            Solution::Torsion(_) => None,
        }
    }
}

/// Dispatches on the load kind.
pub fn solve<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, load: LoadCase<T>) -> Result<Solution<T>> {
    let v = load.magnitude;
    Ok(match load.kind {
        LoadKind::Torsion => Solution::Torsion(solve_torsion(g, m, v)),
        LoadKind::Traction => Solution::Radial(solve_traction(g, m, v)?),
        LoadKind::Pressure => Solution::Radial(solve_pressure(g, m, v)?),
        LoadKind::RimFlexure => Solution::Radial(solve_rim_flexure(g, m, v)?),
    })
}

pub fn solve_torsion<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, t: T) -> TorsionSolution<T> {
    let x = g.thinness();
    let r_t = lit::<T>(2.0) * g.eps * (T::one() + x * x) * m.shear();
    let a2_slope = t / r_t;
    TorsionSolution { t, r_t, a2_slope, theta: a2_slope / g.rho_o }
}

pub fn solve_traction<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, p: T) -> Result<RadialSolution<T>> {
    solve_radial(g, m, LoadKind::Traction, p)
}

/// `varpi > 0` pushes outward.
pub fn solve_pressure<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, varpi: T) -> Result<RadialSolution<T>> {
    solve_radial(g, m, LoadKind::Pressure, varpi)
}

pub fn solve_rim_flexure<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, mo: T) -> Result<RadialSolution<T>> {
    solve_radial(g, m, LoadKind::RimFlexure, mo)
}

/// Everything that does not depend on `γ`.
pub(super) struct Setup<T> {
    pub k: BvpConstants<T>,
    pub alpha: [Complex<T>; 2],
    pub conjugate: bool,
    pub rho: T,
    pub eps: T,
    pub l: T,
    /// `p/(2εC1111)`.
    pub sigma_t: T,
    /// `ϖ/(2εC1111)`.
    pub sigma_p: T,
    /// `3mρₒ/(2ε³C1111)`.
    pub sigma_m: T,
}

pub(super) struct Modes<T> {
    pub w_p: T,
    pub amplitudes: [Complex<T>; 2],
    pub slope: T,
}

impl<T: Real> Setup<T> {
    pub fn new<M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, kind: LoadKind, v: T) -> Result<Self> {
        g.check()?;
        if !v.is_finite() {
            return Err(Error::DomainError(format!("load magnitude {v} is not finite")));
        }
        let k = bvp_constants(g, m);
        if !(k.b.abs() > T::zero()) || !k.b.is_finite() {
            return Err(Error::SingularConstants("b = 0: no constant particular solution"));
        }
        let alpha = characteristic_roots(&k, g)?;
        let c11 = m.shell_stiffness().c1111;
        let two = lit::<T>(2.0);
        let (mut sigma_t, mut sigma_p, mut sigma_m) = (T::zero(), T::zero(), T::zero());
        match kind {
            LoadKind::Traction => sigma_t = v / (two * g.eps * c11),
            LoadKind::Pressure => sigma_p = v / (two * g.eps * c11),
            LoadKind::RimFlexure => {
                sigma_m = lit::<T>(3.0) * v * g.rho_o / (two * g.eps * g.eps * g.eps * c11)
            }
            LoadKind::Torsion => return Err(Error::UnsupportedLoad("torsion has no radial solution")),
        }
        Ok(Self {
            conjugate: alpha[0].im != T::zero() && alpha[1] == alpha[0].conj(),
            k,
            alpha,
            rho: g.rho_o,
            eps: g.eps,
            l: g.l,
            sigma_t,
            sigma_p,
            sigma_m,
        })
    }

    pub fn modes(&self, gamma: T) -> Result<Modes<T>> {
        let k = &self.k;
        let three = lit::<T>(3.0);
        let rho = self.rho;
        let f = three * k.k * rho * self.sigma_t - three * rho * rho * self.sigma_p;
        let w_p = -(f + k.d * rho * gamma) / k.b;
        let beta = self.sigma_t + k.k * gamma - self.sigma_m;
        let r = beta - k.k * w_p / rho;
        let [a1, a2] = self.alpha;
        let g1 = a1 * a1 * (rho * k.h) + k.k / rho;
        let g2 = a2 * a2 * (rho * k.h) + k.k / rho;
        let s1 = a1 * stable_tanh(a1 * self.l);
        let s2 = a2 * stable_tanh(a2 * self.l);
        let den = s2 - s1;
        if !(den.norm() > T::zero()) || !(g1.norm() > T::zero()) || !(g2.norm() > T::zero()) {
            return Err(Error::SingularConstants("boundary-layer coefficient system"));
        }
        let b1 = s2 * r / den;
        let b2 = -s1 * r / den;
        let mut amplitudes = [b1 / g1, b2 / g2];
        if self.conjugate {
            amplitudes[1] = amplitudes[0].conj();
        }
        Ok(Modes { w_p, amplitudes, slope: self.sigma_t - k.k * w_p / rho - k.n3 * gamma })
    }

    /// `(∫w, w'(l))` over `[-l, l]` for the given modes.
    pub fn moments(&self, modes: &Modes<T>) -> (T, T) {
        let two = lit::<T>(2.0);
        let mut int_w = two * self.l * modes.w_p;
        let mut dw = T::zero();
        for i in 0..2 {
            let a = self.alpha[i];
            let t = stable_tanh(a * self.l);
            let ratio = if a.norm() > T::zero() { t / a } else { Complex::new(self.l, T::zero()) };
            int_w += (modes.amplitudes[i] * ratio * two).re;
            dw += (modes.amplitudes[i] * a * t).re;
        }
        (int_w, dw)
    }

    /// Integral relation defect at `γ` and the sum of its term magnitudes.
    pub fn defect(&self, gamma: T) -> Result<(T, T)> {
        let modes = self.modes(gamma)?;
        Ok(self.defect_of(&modes, gamma))
    }

    pub fn defect_of(&self, modes: &Modes<T>, gamma: T) -> (T, T) {
        let k = &self.k;
        let two = lit::<T>(2.0);
        let (int_w, dw) = self.moments(modes);
        let terms = [
            k.a1 * int_w,
            two * self.l * self.rho * k.a2 * gamma,
            -two * self.eps * self.eps * k.a0 * dw,
            two * self.l * self.rho * k.n3 * self.sigma_t,
        ];
        (terms.iter().copied().sum(), terms.iter().map(|t| t.abs()).sum())
    }

    /// Zero of the affine defect, located by probing `γ = 0, ½, 1`.
    pub fn solve_gamma(&self) -> Result<T> {
        let (g0, s0) = self.defect(T::zero())?;
        let (g1, s1) = self.defect(T::one())?;
        let (gm, sm) = self.defect(lit(0.5))?;
        let scale = s0.max(s1).max(sm);
        let coefficient = g1 - g0;
        if !(coefficient.abs() > lit::<T>(1e-12) * scale) {
            return Err(Error::SingularGamma {
                coefficient: coefficient.to_f64_lossy(),
                scale: scale.to_f64_lossy(),
            });
        }
        let mismatch = (gm - lit::<T>(0.5) * (g0 + g1)).abs();
        if mismatch > T::tol(1e-10) * scale {
            return Err(Error::NonAffineGamma((mismatch / scale).to_f64_lossy()));
        }
        Ok(g0 / (g0 - g1))
    }
}

fn solve_radial<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    kind: LoadKind,
    v: T,
) -> Result<RadialSolution<T>> {
    let setup = Setup::new(g, m, kind, v)?;
    let gamma = match setup.k.theory {
        Theory::Full => setup.solve_gamma()?,
        Theory::KirchhoffLove => T::zero(),
    };
    let modes = setup.modes(gamma)?;
    let three = lit::<T>(3.0);
    let mut a1_amplitudes = [Complex::new(T::zero(), T::zero()); 2];
    for i in 0..2 {
        let a = setup.alpha[i];
        let q = (a * a * (g.eps * g.eps / three) - setup.k.k) / (a * g.rho_o);
        a1_amplitudes[i] = modes.amplitudes[i] * q;
    }
    if setup.conjugate {
        a1_amplitudes[1] = a1_amplitudes[0].conj();
    }
    Ok(RadialSolution {
        kind,
        magnitude: v,
        theory: setup.k.theory,
        alpha: setup.alpha,
        amplitudes: modes.amplitudes,
        w_p: modes.w_p,
        gamma,
        axial_slope: modes.slope,
        a1_amplitudes,
        half_length: g.l,
        constants: setup.k,
    })
}
