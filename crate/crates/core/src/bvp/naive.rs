use num_complex::Complex;

use super::solve::{RadialSolution, Setup};
use crate::error::Result;
use crate::material::ShellMaterial;
use crate::scalar::{lit, Real};
use crate::shell_model::ShellGeometry;

/// Coefficients `cᵢ` of `w = Σ cᵢ·2cosh(αᵢx₁) + w_p` evaluated literally
/// through `Eᵢ = exp(2αᵢl)`:
///
/// ```text
/// c₁ =  R α₂(E₂-1) e^{α₁l} / (g₁ D),   c₂ = -R α₁(E₁-1) e^{α₂l} / (g₂ D),
/// D  =  α₂(E₂-1)(E₁+1) - α₁(E₁-1)(E₂+1),   gᵢ = ρₒhαᵢ² + k/ρₒ
/// ```
///
/// with `R` the rim forcing. Overflows once `Re(α)l` exceeds a few hundred;
/// kept only to cross-check the stable evaluation.
pub fn naive_coefficients<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    sol: &RadialSolution<T>,
) -> Result<[Complex<T>; 2]> {
    let setup = Setup::new(g, m, sol.kind, sol.magnitude)?;
    let k = &setup.k;
    let rho = g.rho_o;
    let gamma = sol.gamma;
    let three = lit::<T>(3.0);
    let f = three * k.k * rho * setup.sigma_t - three * rho * rho * setup.sigma_p;
    let w_p = -(f + k.d * rho * gamma) / k.b;
    let r = setup.sigma_t + k.k * gamma - setup.sigma_m - k.k * w_p / rho;
    let [a1, a2] = setup.alpha;
    let one = Complex::new(T::one(), T::zero());
    let two_l = lit::<T>(2.0) * g.l;
    let e1 = (a1 * two_l).exp();
    let e2 = (a2 * two_l).exp();
    let g1 = a1 * a1 * (rho * k.h) + k.k / rho;
    let g2 = a2 * a2 * (rho * k.h) + k.k / rho;
    let d = a2 * (e2 - one) * (e1 + one) - a1 * (e1 - one) * (e2 + one);
    let c1 = a2 * (e2 - one) * (a1 * g.l).exp() * r / (g1 * d);
    let c2 = -(a1 * (e1 - one) * (a2 * g.l).exp()) * r / (g2 * d);
    Ok([c1, c2])
}
