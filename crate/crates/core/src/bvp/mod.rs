//! Axisymmetric boundary-value problems: torsion, end traction, inner
//! pressure and rim flexure.
//!
//! After eliminating `a1'` through the axial balance, the radial deflection
//! obeys
//!
//! ```text
//! ε²ρₒ²h w'''' + ε² a w'' + b w + f + d ρₒ γ = 0,     h = 1 - ε²/(3ρₒ²)
//! ```
//!
//! with rim conditions on `M11` and `M11'`, while `γ` is fixed by the
//! integral relation `∫ (M22/ρₒ + F33) dx₁ = 0`. The even solution is a
//! constant plus two boundary-layer modes `cosh(αᵢx₁)`.

mod naive;
mod residuals;
mod solve;

pub use naive::naive_coefficients;
pub use residuals::{reactive_shear, residuals, Residuals};
pub use solve::{
    solve, solve_pressure, solve_rim_flexure, solve_torsion, solve_traction, RadialSolution, Solution,
    TorsionSolution,
};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::material::{ShellMaterial, Theory};
use crate::scalar::{lit, Real};
use crate::shell_model::ShellGeometry;

/// The four canonical Neumann problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoadKind {
    /// Balancing end torques, line density `t` (`T = 2πρₒ² t`).
    Torsion,
    /// Balancing axial end forces, line density `p` (`P = 2πρₒ p`).
    Traction,
    /// Uniform pressure `ϖ`, positive along the outward normal.
    Pressure,
    /// Uniform rim bending couples `m`.
    #[serde(rename = "flexure")]
    RimFlexure,
}

impl LoadKind {
    pub const ALL: [LoadKind; 4] = [LoadKind::Torsion, LoadKind::Traction, LoadKind::Pressure, LoadKind::RimFlexure];

    pub fn name(self) -> &'static str {
        match self {
            LoadKind::Torsion => "torsion",
            LoadKind::Traction => "traction",
            LoadKind::Pressure => "pressure",
            LoadKind::RimFlexure => "flexure",
        }
    }
}

impl std::str::FromStr for LoadKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LoadKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown load kind '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoadCase<T> {
    pub kind: LoadKind,
    pub magnitude: T,
}

impl<T: Real> LoadCase<T> {
    pub fn new(kind: LoadKind, magnitude: T) -> Result<Self> {
        if !magnitude.is_finite() {
            return Err(Error::DomainError(format!("load magnitude {magnitude} is not finite")));
        }
        Ok(Self { kind, magnitude })
    }
}

/// Dimensionless coefficients of the radial equation and of the integral
/// relation.
///
/// The integral relation, divided by `C1111`, reads
/// `a1 ∫w + 2lρₒ a2 γ - 2ε² a0 w'(l) + 2lρₒ n3 σ = 0`, with `σ` the
/// normalized axial load.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BvpConstants<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub c_tilde: T,
    pub d: T,
    pub a0: T,
    pub a1: T,
    pub a2: T,
    /// `C1122/C1111`.
    pub k: T,
    /// `C1133/C1111`.
    pub n3: T,
    /// `L(ε/ρₒ)`.
    pub log_factor: T,
    /// `1 - ε²/(3ρₒ²)`.
    pub h: T,
    pub theory: Theory,
}

/// Assembles the constants for either theory. For Kirchhoff-Love materials
/// the `·33` stiffness entries vanish and the same formulas reduce to the
/// reduced-theory values (`a = 2ν21`, `b = 3η(L - ν12ν21)`, `c = 3ν21`).
pub fn bvp_constants<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M) -> BvpConstants<T> {
    let s = m.shell_stiffness();
    let big_l = g.log_factor();
    let three = lit::<T>(3.0);
    let one = T::one();
    let k = s.c1122 / s.c1111;
    let n3 = s.c1133 / s.c1111;
    let kw = s.c2222 * (one - big_l) + s.c2233 - s.c1122 * s.c1133 / s.c1111;
    let kg = s.c3333 - s.c2222 * (one - big_l) - s.c1133 * s.c1133 / s.c1111;
    // E1/(C1111 Δ) = 1/(1 - ν23ν32) in the full theory, 1 in the reduced one
    let r = m.young1() / (s.c1111 * m.shell_delta());
    BvpConstants {
        a: lit::<T>(2.0) * k,
        b: three * (s.c2222 * big_l / s.c1111 - k * k),
        c: three * k * r,
        c_tilde: three * r,
        d: three * kw / s.c1111,
        a0: k / three,
        a1: kw / s.c1111,
        a2: kg / s.c1111,
        k,
        n3,
        log_factor: big_l,
        h: g.bending_factor(),
        theory: m.theory(),
    }
}

/// Principal square roots `(α₁, α₂)` of the two roots in `α²` of
/// `ε²ρₒ²h α⁴ + ε² a α² + b = 0`.
///
/// When the discriminant is negative `α₂ = conj(α₁)` exactly.
pub fn characteristic_roots<T: Real>(k: &BvpConstants<T>, g: &ShellGeometry<T>) -> Result<[Complex<T>; 2]> {
    let (rho, eps) = (g.rho_o, g.eps);
    let two = lit::<T>(2.0);
    let den = two * rho * rho * k.h;
    let disc = k.a * k.a - lit::<T>(4.0) * k.b * rho * rho * k.h / (eps * eps);
    let (s1, s2) = if disc < T::zero() {
        let s1 = Complex::new(-k.a / den, (-disc).sqrt() / den);
        (s1, s1.conj())
    } else {
        // larger root first, the other from the product to avoid cancellation
        let root = disc.sqrt();
        let big = if k.a > T::zero() { -k.a - root } else { -k.a + root };
        let prod = k.b / (eps * eps * rho * rho * k.h);
        let s_big = big / den;
        let s_small = if s_big == T::zero() { T::zero() } else { prod / s_big };
        // conventional ordering: α₁² takes the + sign
        let (p, q) = if k.a > T::zero() { (s_small, s_big) } else { (s_big, s_small) };
        (Complex::new(p, T::zero()), Complex::new(q, T::zero()))
    };
    let a1 = principal_sqrt(s1);
    let a2 = if disc < T::zero() { a1.conj() } else { principal_sqrt(s2) };
    let gap = (a1 - a2).norm();
    if !(gap > lit::<T>(1e-12) * a1.norm()) {
        return Err(Error::DegenerateRoots(gap.to_f64_lossy()));
    }
    Ok([a1, a2])
}

fn principal_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = z.sqrt();
    if r.re < T::zero() {
        -r
    } else {
        r
    }
}

/// `tanh z` without overflow for large `|Re z|`.
pub(crate) fn stable_tanh<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let (w, sign) = if z.re < T::zero() { (-z, -T::one()) } else { (z, T::one()) };
    let e = (w * (-lit::<T>(2.0))).exp();
    (one - e) / (one + e) * sign
}
