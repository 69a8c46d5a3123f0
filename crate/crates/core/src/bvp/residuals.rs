use serde::Serialize;

use super::solve::{Modes, Setup, Solution};
use super::LoadKind;
use crate::error::Result;
use crate::material::{ShellMaterial, Theory};
use crate::quadrature::gauss_legendre;
use crate::scalar::{lit, Real};
use crate::shell_model::{m11_derivative, resultants, ShellGeometry};

/// Number of stations at which pointwise residuals are sampled.
pub const RESIDUAL_STATIONS: usize = 201;

/// Normalized defects of a closed-form solution. Each entry is a maximum
/// absolute residual divided by the magnitude of the terms it balances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Residuals {
    /// Transverse balance `M11'' - F22/ρₒ + ϖ = 0` (torsion: none).
    pub field: f64,
    /// Axial balance `F11 = p` (torsion: `F21 + M21/ρₒ = t`).
    pub statics: f64,
    /// `M11(±l) = m`.
    pub bc_moment: f64,
    /// `M11'(±l) = 0`.
    pub bc_shear: f64,
    /// `∫ (M22/ρₒ + F33) dx₁ = 0`, by independent quadrature.
    pub integral: f64,
    /// The closed-form equation for `γ`.
    pub gamma_equation: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        [self.field, self.statics, self.bc_moment, self.bc_shear, self.integral, self.gamma_equation]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("field", self.field),
            ("statics", self.statics),
            ("bc_moment", self.bc_moment),
            ("bc_shear", self.bc_shear),
            ("integral", self.integral),
            ("gamma_equation", self.gamma_equation),
        ]
    }
}

fn ratio<T: Real>(num: T, den: T) -> f64 {
    if den > T::zero() {
        (num / den).to_f64_lossy()
    } else {
        num.to_f64_lossy()
    }
}

/// `F31(x₁) = M11'(x₁)`, the reactive transverse shear. `M31` vanishes
/// identically for these problems.
pub fn reactive_shear<T: Real, M: ShellMaterial<T>>(
    sol: &Solution<T>,
    g: &ShellGeometry<T>,
    m: &M,
    x1: T,
) -> T {
    match sol {
        Solution::Torsion(_) => T::zero(),
        Solution::Radial(_) => m11_derivative(g, m, &sol.state(), x1),
    }
}

/// Evaluates every balance law and rim condition on the solution.
pub fn residuals<T: Real, M: ShellMaterial<T>>(
    sol: &Solution<T>,
    g: &ShellGeometry<T>,
    m: &M,
) -> Result<Residuals> {
    let state = sol.state();
    let c = m.shell_stiffness();
    let (rho, eps) = (g.rho_o, g.eps);
    let two = lit::<T>(2.0);
    let fm = two / lit(3.0) * eps * eps * eps / rho;
    let ff = two * eps / rho;
    let big_l = g.log_factor();
    let one = T::one();
    let gamma = state.gamma;
    let (kind, load) = match sol {
        Solution::Torsion(t) => (LoadKind::Torsion, t.t),
        Solution::Radial(r) => (r.kind, r.magnitude),
    };
    let pick = |k: LoadKind| if kind == k { load } else { T::zero() };
    let (p, varpi, mo, t) = (pick(LoadKind::Traction), pick(LoadKind::Pressure), pick(LoadKind::RimFlexure), pick(LoadKind::Torsion));

    let mut out = Residuals::default();
    let (mut field_res, mut field_scale) = (T::zero(), varpi.abs());
    let (mut stat_res, mut stat_scale) = (T::zero(), p.abs().max(t.abs()));
    let n = RESIDUAL_STATIONS;
    for j in 0..n {
        let x = -g.l + two * g.l * lit::<T>(j as f64) / lit((n - 1) as f64);
        let a1 = state.a1.jet(x);
        let w = state.w.jet(x);
        let r = resultants(g, m, &state, x);
        let dd_m11 = fm * c.c1111 * (a1[3] - rho * w[4]);
        let f22_terms = [
            c.c1122 * rho * a1[1],
            c.c2222 * big_l * w[0],
            c.c2222 * (one - big_l) * rho * gamma,
            c.c2233 * rho * gamma,
        ];
        let f22_mag: T = f22_terms.iter().map(|v| v.abs()).sum::<T>() * ff / rho;
        field_res = field_res.max((dd_m11 - r.f22 / rho + varpi).abs());
        field_scale = field_scale.max(fm * c.c1111 * (a1[3].abs() + rho * w[4].abs()) + f22_mag);
        if kind == LoadKind::Torsion {
            stat_res = stat_res.max((r.f21 + r.m21 / rho - t).abs());
            stat_scale = stat_scale.max(r.f21.abs() + (r.m21 / rho).abs());
        } else {
            stat_res = stat_res.max((r.f11 - p).abs());
            let mag = ff
                * (c.c1111 * (rho * a1[1]).abs()
                    + c.c1111 * (eps * eps * w[2] / lit(3.0)).abs()
                    + c.c1122 * w[0].abs()
                    + c.c1133 * (rho * gamma).abs());
            stat_scale = stat_scale.max(mag);
        }
    }
    out.field = ratio(field_res, field_scale);
    out.statics = ratio(stat_res, stat_scale);

    for x in [-g.l, g.l] {
        let a1 = state.a1.jet(x);
        let w = state.w.jet(x);
        let r = resultants(g, m, &state, x);
        let scale = fm * (c.c1111 * (a1[1].abs() + rho * w[2].abs()) + (c.c1122.abs() + c.c1133.abs()) * gamma.abs()) + mo.abs();
        out.bc_moment = out.bc_moment.max(ratio((r.m11 - mo).abs(), scale));
        let dm = m11_derivative(g, m, &state, x);
        let scale = fm * c.c1111 * (a1[2].abs() + rho * w[3].abs());
        out.bc_shear = out.bc_shear.max(ratio(dm.abs(), scale));
    }

    if let (Solution::Radial(r), Theory::Full) = (sol, m.theory()) {
        // independent composite quadrature of the integral relation
        let reach = r.alpha.iter().map(|a| a.norm()).fold(T::zero(), |acc, v| acc.max(v));
        let panels = (two * g.l * reach * lit(2.0)).to_f64_lossy().ceil().max(200.0) as usize;
        let (xs, ws) = gauss_legendre::<T>(8);
        let h = two * g.l / lit(panels as f64);
        let (mut sum, mut mag) = (T::zero(), T::zero());
        for pnl in 0..panels {
            let mid = -g.l + h * (lit::<T>(pnl as f64) + lit(0.5));
            for (xi, wi) in xs.iter().zip(&ws) {
                let x = mid + h / two * *xi;
                let q = resultants(g, m, &state, x);
                let wt = *wi * h / two;
                sum += wt * (q.m22 / rho + q.f33);
                mag += wt * ((q.m22 / rho).abs() + q.f33.abs());
            }
        }
        out.integral = ratio(sum.abs(), mag);

        let setup = Setup::new(g, m, r.kind, r.magnitude)?;
        let modes = Modes { w_p: r.w_p, amplitudes: r.amplitudes, slope: r.axial_slope };
        let (d, s) = setup.defect_of(&modes, r.gamma);
        out.gamma_equation = ratio(d.abs(), s);
    }
    Ok(out)
}
