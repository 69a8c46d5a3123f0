//! Slender-shell limits and the effective properties of a shell regarded as
//! a rod-like probe.

use serde::Serialize;

use crate::bvp::{bvp_constants, BvpConstants};
use crate::error::{Error, Result};
use crate::material::{ShellMaterial, Theory};
use crate::scalar::{lit, Real};
use crate::shell_model::ShellGeometry;

/// Uniform state of a slender shell away from the rims.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlenderState<T> {
    pub gamma: T,
    pub w: T,
    /// `a1'`, the axial strain.
    pub a1_slope: T,
    /// `γ` and `w` scaled by the load unit `ε⁻¹p/2E1` (traction) or
    /// `ρₒε⁻¹ϖ/2E1` (pressure), with the sign convention that makes both
    /// positive for the usual contraction/expansion.
    pub gamma_bar: T,
    pub w_bar: T,
}

/// Solves `b w + dρₒγ = -f` together with the integral relation for a
/// constant `w`, i.e. `a1 w + ρₒ(a2 γ + n3 σ_T) = 0`.
fn uniform<T: Real>(k: &BvpConstants<T>, rho: T, sigma_t: T, f: T) -> Result<(T, T)> {
    let gamma = match k.theory {
        Theory::KirchhoffLove => T::zero(),
        Theory::Full => {
            let den = rho * (k.a2 - k.a1 * k.d / k.b);
            if !(den.abs() > T::epsilon() * rho * (k.a2.abs() + (k.a1 * k.d / k.b).abs())) {
                return Err(Error::SingularConstants("slender thickness stretch"));
            }
            (k.a1 * f / k.b - rho * k.n3 * sigma_t) / den
        }
    };
    let w = -(f + k.d * rho * gamma) / k.b;
    Ok((gamma, w))
}

fn slender<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, p: T, varpi: T) -> Result<(T, T, T)> {
    g.check()?;
    let k = bvp_constants(g, m);
    let c11 = m.shell_stiffness().c1111;
    let rho = g.rho_o;
    let two_eps_c = lit::<T>(2.0) * g.eps * c11;
    let sigma_t = p / two_eps_c;
    let sigma_p = varpi / two_eps_c;
    let three = lit::<T>(3.0);
    let f = three * k.k * rho * sigma_t - three * rho * rho * sigma_p;
    let (gamma, w) = uniform(&k, rho, sigma_t, f)?;
    let slope = sigma_t - k.k * w / rho - k.n3 * gamma;
    Ok((gamma, w, slope))
}

/// Interior state of an infinitely long shell under end traction `p`.
pub fn slender_traction<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, p: T) -> Result<SlenderState<T>> {
    let (gamma, w, a1_slope) = slender(g, m, p, T::zero())?;
    let unit = p / (lit::<T>(2.0) * g.eps * m.young1());
    let scale = |v: T| if unit == T::zero() { T::zero() } else { -v / unit };
    Ok(SlenderState { gamma, w, a1_slope, gamma_bar: scale(gamma), w_bar: scale(w) })
}

/// Interior state of an infinitely long shell under inner pressure `ϖ`.
pub fn slender_pressure<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, varpi: T) -> Result<SlenderState<T>> {
    let (gamma, w, a1_slope) = slender(g, m, T::zero(), varpi)?;
    let unit = g.rho_o * varpi / (lit::<T>(2.0) * g.eps * m.young1());
    let scale = |v: T| if unit == T::zero() { T::zero() } else { v / unit };
    Ok(SlenderState { gamma, w, a1_slope, gamma_bar: scale(gamma), w_bar: scale(w) })
}

/// `(ν_CA, ν_CP)`: `-Ē22/Ē11` under traction and `-Ē11/Ē22` under pressure.
pub fn contraction_moduli<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M) -> Result<(T, T)> {
    let rho = g.rho_o;
    let t = slender_traction(g, m, T::one())?;
    let p = slender_pressure(g, m, T::one())?;
    Ok((-(t.w / rho) / t.a1_slope, -p.a1_slope / (p.w / rho)))
}

/// `A(ε) = 4πρₒε`.
pub fn section_area<T: Real>(g: &ShellGeometry<T>) -> T {
    lit::<T>(4.0 * std::f64::consts::PI) * g.rho_o * g.eps
}

/// `J(ε) = 4πρₒ³ε`.
pub fn polar_moment<T: Real>(g: &ShellGeometry<T>) -> T {
    section_area(g) * g.rho_o * g.rho_o
}

/// `χ(ε) = (1 + ε²/ρₒ²)⁻¹`.
pub fn torsion_factor<T: Real>(g: &ShellGeometry<T>) -> T {
    let x = g.eps / g.rho_o;
    T::one() / (T::one() + x * x)
}

/// Axial load over axial strain, `s_A = P/Λ` with `P = 2πρₒp`.
pub fn stiffness_traction<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M) -> Result<T> {
    let t = slender_traction(g, m, T::one())?;
    Ok(lit::<T>(2.0 * std::f64::consts::PI) * g.rho_o / t.a1_slope)
}

/// `s_T = GJ(ε)/χ(ε)`; independent of the length.
pub fn stiffness_torsion<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M) -> T {
    m.shear() * polar_moment(g) / torsion_factor(g)
}

/// Speed of torsional waves for mass density `δₒ`.
pub fn torsion_wave_speed<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, delta_o: T) -> Result<T> {
    if !(delta_o > T::zero()) || !delta_o.is_finite() {
        return Err(Error::DomainError(format!("mass density must be positive, got {}", delta_o.to_f64_lossy())));
    }
    let x2 = (g.eps / g.rho_o).powi(2);
    let ratio = (T::one() + x2) / (T::one() + lit::<T>(2.0 / 3.0) * x2);
    Ok((m.shear() / delta_o * ratio).sqrt())
}

/// Loads applied to the probe when reporting strains.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ProbeLoads<T> {
    pub traction: T,
    pub pressure: T,
    pub torque: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EffectiveProperties<T> {
    #[serde(rename = "nu_CA")]
    pub nu_ca: T,
    #[serde(rename = "nu_CP")]
    pub nu_cp: T,
    #[serde(rename = "s_A")]
    pub s_a: T,
    #[serde(rename = "s_T")]
    pub s_t: T,
    #[serde(rename = "A_eps")]
    pub a_eps: T,
    #[serde(rename = "J_eps")]
    pub j_eps: T,
    pub chi_eps: T,
    /// Axial strain `Ē11` of the slender probe under the given loads.
    #[serde(rename = "Lambda_axial")]
    pub lambda_axial: T,
    /// Twist per unit length.
    #[serde(rename = "Theta")]
    pub theta: T,
    /// Radial contraction measure, taken as `Ē22 = w/ρₒ`.
    #[serde(rename = "Gamma_radial")]
    pub gamma_radial: T,
}

/// Collects every effective property. The strain measures refer to the
/// superposed slender response to `loads`; torque enters only `Θ`.
pub fn effective_properties<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    loads: ProbeLoads<T>,
) -> Result<EffectiveProperties<T>> {
    let (nu_ca, nu_cp) = contraction_moduli(g, m)?;
    let s_t = stiffness_torsion(g, m);
    let (_, w, slope) = slender(g, m, loads.traction, loads.pressure)?;
    Ok(EffectiveProperties {
        nu_ca,
        nu_cp,
        s_a: stiffness_traction(g, m)?,
        s_t,
        a_eps: section_area(g),
        j_eps: polar_moment(g),
        chi_eps: torsion_factor(g),
        lambda_axial: slope,
        theta: loads.torque / s_t,
        gamma_radial: w / g.rho_o,
    })
}
