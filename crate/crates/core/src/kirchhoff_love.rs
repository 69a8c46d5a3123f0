//! Kirchhoff-Love shells: no thickness change, four constitutive moduli.

use serde::{Deserialize, Serialize};

use crate::bvp::{solve_pressure, solve_traction, RadialSolution};
use crate::effective::{section_area, stiffness_torsion};
use crate::error::{Error, Result};
use crate::material::KLMaterial;
use crate::scalar::{lit, Real};
use crate::shell_model::ShellGeometry;

/// `δ(ε) = (1 - ν12ν21)/(L(ε/ρₒ) - ν12ν21)`, which tends to 1 for thin shells.
pub fn kl_delta<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>) -> Result<T> {
    g.check()?;
    let nn = m.nu12 * m.nu21;
    let den = g.log_factor() - nn;
    if !(den > T::zero()) {
        return Err(Error::DomainError(format!(
            "ν12ν21 = {} is not below the log factor {}",
            nn.to_f64_lossy(),
            g.log_factor().to_f64_lossy()
        )));
    }
    Ok((T::one() - nn) / den)
}

/// Traction problem; the thickness stretch is identically zero.
pub fn kl_solve_traction<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>, p: T) -> Result<RadialSolution<T>> {
    solve_traction(g, m, p)
}

pub fn kl_solve_pressure<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>, varpi: T) -> Result<RadialSolution<T>> {
    solve_pressure(g, m, varpi)
}

/// Interior radial displacement and axial strain of a slender shell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KlSlender<T> {
    pub w_p: T,
    pub a1_slope: T,
}

pub fn kl_slender_traction<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>, p: T) -> Result<KlSlender<T>> {
    let delta = kl_delta(g, m)?;
    let unit = p / (lit::<T>(2.0) * g.eps * m.e1);
    Ok(KlSlender {
        w_p: -g.rho_o * m.nu12 * delta * unit,
        a1_slope: (T::one() - m.nu12 * m.nu21 * (T::one() - delta)) * unit,
    })
}

pub fn kl_slender_pressure<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>, varpi: T) -> Result<KlSlender<T>> {
    let delta = kl_delta(g, m)?;
    let unit = g.rho_o * varpi / (lit::<T>(2.0) * g.eps * m.e2);
    Ok(KlSlender { w_p: g.rho_o * delta * unit, a1_slope: -m.nu21 * delta * unit })
}

/// Effective properties of a Kirchhoff-Love probe. Moduli are reported
/// premultiplied by the thickness parameter, `Ẽ = Eε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KlEffective<T> {
    #[serde(rename = "nu_CA")]
    pub nu_ca: T,
    #[serde(rename = "nu_CP")]
    pub nu_cp: T,
    #[serde(rename = "s_A")]
    pub s_a: T,
    #[serde(rename = "s_T")]
    pub s_t: T,
    #[serde(rename = "E1_eff")]
    pub e1_eff: T,
    #[serde(rename = "E2_eff")]
    pub e2_eff: T,
    pub delta: T,
}

pub fn kl_effective<T: Real>(g: &ShellGeometry<T>, m: &KLMaterial<T>) -> Result<KlEffective<T>> {
    let delta = kl_delta(g, m)?;
    let relax = T::one() - m.nu12 * m.nu21 * (T::one() - delta);
    Ok(KlEffective {
        nu_ca: delta * m.nu12 / relax,
        nu_cp: m.nu21,
        s_a: m.e1 * section_area(g) / relax,
        s_t: stiffness_torsion(g, m),
        e1_eff: m.e1 * g.eps,
        e2_eff: m.e2 * g.eps,
        delta,
    })
}

/// Midspan measurements from one traction and one pressure experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KLExperimentRecord<T> {
    #[serde(rename = "w_T")]
    pub w_traction: T,
    #[serde(rename = "a1_slope_T")]
    pub a1_slope_traction: T,
    #[serde(rename = "w_P")]
    pub w_pressure: T,
    #[serde(rename = "a1_slope_P")]
    pub a1_slope_pressure: T,
    pub p: T,
    pub varpi: T,
    pub rho_o: T,
}

/// Runs both experiments with the closed-form solver and reads `w` and
/// `a1'` at `x₁ = 0`.
pub fn kl_virtual_experiment<T: Real>(
    g: &ShellGeometry<T>,
    m: &KLMaterial<T>,
    p: T,
    varpi: T,
) -> Result<KLExperimentRecord<T>> {
    let t = kl_solve_traction(g, m, p)?;
    let q = kl_solve_pressure(g, m, varpi)?;
    let slope = |s: &RadialSolution<T>| s.a1_field().jet(T::zero())[1];
    Ok(KLExperimentRecord {
        w_traction: t.w(T::zero()),
        a1_slope_traction: slope(&t),
        w_pressure: q.w(T::zero()),
        a1_slope_pressure: slope(&q),
        p,
        varpi,
        rho_o: g.rho_o,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentifiedModuli<T> {
    #[serde(rename = "E1_eff")]
    pub e1_eff: T,
    #[serde(rename = "E2_eff")]
    pub e2_eff: T,
    pub nu12: T,
    pub nu21: T,
}

/// Inverts the thin slender response for `(Eε₁, Eε₂, ν12, ν21)`.
pub fn kl_identify_moduli<T: Real>(rec: &KLExperimentRecord<T>) -> Result<IdentifiedModuli<T>> {
    let fields = [rec.w_traction, rec.a1_slope_traction, rec.w_pressure, rec.a1_slope_pressure, rec.p, rec.varpi, rec.rho_o];
    if fields.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateExperiment("non-finite measurement"));
    }
    if rec.a1_slope_traction == T::zero() {
        return Err(Error::DegenerateExperiment("zero axial strain under traction"));
    }
    if rec.w_pressure == T::zero() {
        return Err(Error::DegenerateExperiment("zero radial displacement under pressure"));
    }
    if rec.rho_o == T::zero() {
        return Err(Error::DegenerateExperiment("zero radius"));
    }
    let two = lit::<T>(2.0);
    Ok(IdentifiedModuli {
        e1_eff: rec.p / (two * rec.a1_slope_traction),
        e2_eff: rec.rho_o * rec.rho_o * rec.varpi / (two * rec.w_pressure),
        nu12: -rec.w_traction / (rec.rho_o * rec.a1_slope_traction),
        nu21: -rec.rho_o * rec.a1_slope_pressure / rec.w_pressure,
    })
}

/// `|p/w_T - ϖ/a1'_P|` relative to the larger term; zero for records that
/// obey reciprocity.
pub fn kl_consistency_check<T: Real>(rec: &KLExperimentRecord<T>) -> T {
    let x = rec.p / rec.w_traction;
    let y = rec.varpi / rec.a1_slope_pressure;
    let scale = x.abs().max(y.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (x - y).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvp::bvp_constants;
    use crate::effective::{contraction_moduli, slender_pressure, slender_traction, stiffness_traction};

    fn klm() -> KLMaterial<f64> {
        KLMaterial::new(1000.0, 800.0, 0.2, 0.16, 400.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs())
    }

    #[test]
    fn delta_values() {
        let m = klm();
        let g = ShellGeometry::new(1.0, 0.1, 1.0).unwrap();
        let l = 5.0 * (11.0f64 / 9.0).ln();
        assert!(close(kl_delta(&g, &m).unwrap(), 0.968 / (l - 0.032), 1e-14));
        assert!((kl_delta(&g, &m).unwrap() - 0.99655).abs() < 1e-5);
        let thin = ShellGeometry::new(1.0, 1e-12, 1.0).unwrap();
        assert!(close(kl_delta(&thin, &m).unwrap(), 1.0, 1e-15));
        let free = KLMaterial::new(1000.0, 800.0, 0.0, 0.0, 400.0).unwrap();
        assert!(close(kl_delta(&g, &free).unwrap(), 1.0 / l, 1e-15));
        let mut prev = 1.0;
        for i in 1..90 {
            let d = kl_delta(&ShellGeometry::new(1.0, i as f64 / 100.0, 1.0).unwrap(), &m).unwrap();
            assert!(d > 0.0 && d < prev);
            prev = d;
        }
    }

    #[test]
    fn constants_match_literal_forms() {
        let m = klm();
        let g = ShellGeometry::new(1.0, 0.2, 1.0).unwrap();
        let k = bvp_constants(&g, &m);
        assert!(close(k.a, 2.0 * m.nu21, 1e-15));
        assert!(close(k.b, 3.0 * m.eta() * (g.log_factor() - m.nu12 * m.nu21), 1e-14));
        assert!(close(k.c, 3.0 * m.nu21, 1e-15));
    }

    #[test]
    fn slender_formulas_agree_with_general_limit() {
        let m = klm();
        let g = ShellGeometry::new(1.2, 0.15, 1.0).unwrap();
        let t = kl_slender_traction(&g, &m, 2.0).unwrap();
        let s = slender_traction(&g, &m, 2.0).unwrap();
        assert!(close(t.w_p, s.w, 1e-13) && close(t.a1_slope, s.a1_slope, 1e-13));
        assert_eq!(s.gamma, 0.0);
        let t = kl_slender_pressure(&g, &m, 2.0).unwrap();
        let s = slender_pressure(&g, &m, 2.0).unwrap();
        assert!(close(t.w_p, s.w, 1e-13) && close(t.a1_slope, s.a1_slope, 1e-13));
        let e = kl_effective(&g, &m).unwrap();
        let (nu_ca, nu_cp) = contraction_moduli(&g, &m).unwrap();
        assert!(close(e.nu_ca, nu_ca, 1e-13) && close(e.nu_cp, nu_cp, 1e-13));
        assert!(close(e.s_a, stiffness_traction(&g, &m).unwrap(), 1e-13));
        assert_eq!(e.nu_cp, 0.16);
    }

    #[test]
    fn thin_limit_effective() {
        let m = klm();
        let g = ShellGeometry::new(1.0, 1e-9, 1.0).unwrap();
        let e = kl_effective(&g, &m).unwrap();
        assert!(close(e.nu_ca, m.nu12, 1e-12));
        assert!(close(e.s_a, m.e1 * section_area(&g), 1e-12));
        let iso = KLMaterial::isotropic(1000.0, 0.3).unwrap();
        let e = kl_effective(&g, &iso).unwrap();
        assert!(close(e.nu_ca, 0.3, 1e-12) && close(e.nu_cp, 0.3, 1e-15));
    }

    #[test]
    fn identification_round_trip() {
        let m = klm();
        let g = ShellGeometry::new(1.0, 1e-3, 50.0).unwrap();
        let rec = kl_virtual_experiment(&g, &m, 0.01, 0.02).unwrap();
        let id = kl_identify_moduli(&rec).unwrap();
        assert!(close(id.e1_eff, m.e1 * g.eps, 1e-6));
        assert!(close(id.e2_eff, m.e2 * g.eps, 1e-6));
        assert!(close(id.nu12, m.nu12, 1e-6));
        assert!(close(id.nu21, m.nu21, 1e-6));
        assert!(kl_consistency_check(&rec) < 1e-10);
        assert!(rec.p / rec.w_traction < 0.0 && rec.varpi / rec.a1_slope_pressure < 0.0);

        let scaled = kl_virtual_experiment(&g, &m, 0.07, 0.13).unwrap();
        let id2 = kl_identify_moduli(&scaled).unwrap();
        assert!(close(id.e1_eff, id2.e1_eff, 1e-12) && close(id.nu21, id2.nu21, 1e-12));
    }

    #[test]
    fn degenerate_and_perturbed_records() {
        let m = klm();
        let g = ShellGeometry::new(1.0, 1e-3, 50.0).unwrap();
        let rec = kl_virtual_experiment(&g, &m, 1.0, 1.0).unwrap();
        let off = KLExperimentRecord { w_traction: rec.w_traction * 1.1, ..rec };
        assert!(kl_consistency_check(&off) > 1e-3);
        let zero_w = KLExperimentRecord { w_traction: 0.0, ..rec };
        assert_eq!(kl_identify_moduli(&zero_w).unwrap().nu12, 0.0);
        let bad = KLExperimentRecord { w_pressure: 0.0, ..rec };
        assert!(matches!(kl_identify_moduli(&bad), Err(Error::DegenerateExperiment(_))));
        let bad = KLExperimentRecord { a1_slope_traction: 0.0, ..rec };
        assert!(matches!(kl_identify_moduli(&bad), Err(Error::DegenerateExperiment(_))));
    }

    #[test]
    fn domain_error_for_large_coupling() {
        let m = KLMaterial { nu12: 1.5, nu21: 0.9, ..klm() };
        let g = ShellGeometry::new(1.0, 0.1, 1.0).unwrap();
        assert!(matches!(kl_delta(&g, &m), Err(Error::DomainError(_))));
    }
}
