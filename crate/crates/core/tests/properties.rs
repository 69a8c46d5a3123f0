mod common;

use common::*;
use nalgebra::Matrix4;
use orthoshell::bvp::{naive_coefficients, residuals, solve, LoadCase, LoadKind};
use orthoshell::effective::{slender_traction, stiffness_torsion, stiffness_traction};
use orthoshell::kirchhoff_love::{kl_consistency_check, kl_delta, kl_virtual_experiment};
use orthoshell::material::{ShellMaterial, StrainComponents};
use orthoshell::oracle::fd_solve;
use orthoshell::shell_model::{
    displacement, log_factor, resultant_magnitudes, resultants, resultants_by_quadrature, strain, AxisymmetricState,
    Field, ShellGeometry,
};
use orthoshell::{Geometry, State};
use proptest::prelude::*;

fn poly(n: usize) -> impl Strategy<Value = Field<f64>> {
    prop::collection::vec(-1.0f64..1.0, n).prop_map(Field::Polynomial)
}

fn state_strategy() -> impl Strategy<Value = State> {
    (poly(5), poly(5), poly(6), -1.0f64..1.0).prop_map(|(a1, a2, w, gamma)| AxisymmetricState { a1, a2, w, gamma })
}

fn kind_strategy() -> impl Strategy<Value = LoadKind> {
    prop::sample::select(LoadKind::ALL.to_vec())
}

fn radial_kind() -> impl Strategy<Value = LoadKind> {
    prop::sample::select(vec![LoadKind::Traction, LoadKind::Pressure, LoadKind::RimFlexure])
}

fn thin_geometry() -> impl Strategy<Value = Geometry> {
    (0.5f64..2.0, 0.01f64..0.3, 1.0f64..8.0).prop_map(|(rho, x, s)| ShellGeometry::new(rho, x * rho, s * rho).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn technical_stiffness_round_trip(m in material_strategy()) {
        let back = m.stiffness().unwrap().technical().unwrap();
        for (a, b) in [(m.e1, back.e1), (m.e2, back.e2), (m.e3, back.e3), (m.g, back.g),
                       (m.nu12, back.nu12), (m.nu21, back.nu21), (m.nu13, back.nu13),
                       (m.nu31, back.nu31), (m.nu23, back.nu23), (m.nu32, back.nu32)] {
            prop_assert!(rel(a, b) < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn stiffness_has_major_symmetry(m in material_strategy()) {
        let basis = StrainComponents::basis();
        for a in &basis {
            for b in &basis {
                let ab = m.apply_stiffness(b).dot_strain(a);
                let ba = m.apply_stiffness(a).dot_strain(b);
                prop_assert!((ab - ba).abs() <= 1e-12 * ab.abs().max(ba.abs()).max(m.e1));
            }
        }
    }

    #[test]
    fn accepted_materials_are_positive_definite(m in material_strategy()) {
        let g = m.stiffness().unwrap().gram_matrix();
        let mat = Matrix4::from_fn(|i, j| g[i][j]);
        let eig = mat.symmetric_eigen().eigenvalues;
        prop_assert!(eig.iter().all(|v| *v > 0.0), "{eig:?}");
    }

    #[test]
    fn compliance_inverts_stiffness(m in material_strategy()) {
        for e in StrainComponents::basis() {
            let r = m.apply_compliance(&m.apply_stiffness(&e));
            let d = [r.e11 - e.e11, r.e22 - e.e22, r.e33 - e.e33, r.e12 - e.e12];
            prop_assert!(d.iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn kl_projection_keeps_reciprocity(m in material_strategy()) {
        let k = m.kl_reduce();
        prop_assert!(rel(k.e1 * k.nu21, k.e2 * k.nu12) < 1e-14);
    }

    #[test]
    fn closed_form_resultants_match_quadrature(
        g in geometry_strategy(), m in material_strategy(), s in state_strategy(), t in -1.0f64..1.0,
    ) {
        let x = t * g.l;
        let a = resultants(&g, &m, &s, x).values();
        let q = resultants_by_quadrature(&g, &m, &s, x, 32).values();
        let mag = resultant_magnitudes(&g, &m, &s, x, 32).values();
        for k in 0..8 {
            prop_assert!((a[k] - q[k]).abs() <= 1e-10 * mag[k].max(a[k].abs()).max(1e-300), "component {k}");
        }
    }

    #[test]
    fn resultants_are_linear_in_the_state(
        g in geometry_strategy(), m in material_strategy(), s1 in state_strategy(), s2 in state_strategy(),
        lam in -3.0f64..3.0,
    ) {
        let combo = |a: &Field<f64>, b: &Field<f64>| match (a, b) {
            (Field::Polynomial(p), Field::Polynomial(q)) => Field::Polynomial(p.iter().zip(q).map(|(x, y)| x + lam * y).collect()),
            _ => unreachable!(),
        };
        let s = AxisymmetricState {
            a1: combo(&s1.a1, &s2.a1), a2: combo(&s1.a2, &s2.a2), w: combo(&s1.w, &s2.w), gamma: s1.gamma + lam * s2.gamma,
        };
        let x = 0.3 * g.l;
        let r = resultants(&g, &m, &s, x).values();
        let r1 = resultants(&g, &m, &s1, x).values();
        let r2 = resultants(&g, &m, &s2, x).values();
        let mag = resultant_magnitudes(&g, &m, &s1, x, 16).values();
        let mag2 = resultant_magnitudes(&g, &m, &s2, x, 16).values();
        for k in 0..8 {
            let scale = mag[k] + lam.abs() * mag2[k] + 1e-300;
            prop_assert!((r[k] - r1[k] - lam * r2[k]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn strain_is_the_symmetric_displacement_gradient(g in geometry_strategy(), s in state_strategy(), t in -0.9f64..0.9, z in -0.9f64..0.9) {
        let (x, zeta) = (t * g.l, z * g.eps);
        let h = 1e-5 * g.l.min(g.eps);
        let u = |x: f64, zeta: f64| displacement(&g, &s, x, zeta).unwrap();
        let ux = |i: usize| (u(x + h, zeta)[i] - u(x - h, zeta)[i]) / (2.0 * h);
        let uz = |i: usize| (u(x, zeta + h)[i] - u(x, zeta - h)[i]) / (2.0 * h);
        let r = g.rho_o + zeta;
        let here = u(x, zeta);
        let e = strain(&g, &s, x, zeta).unwrap();
        let expect = [
            (e.e11, ux(0)),
            (e.e22, here[2] / r),
            (e.e33, uz(2)),
            (e.e12, 0.5 * ux(1)),
            // transverse shears vanish for the unshearable kinematics
            (0.0, 0.5 * (uz(0) + ux(2))),
            (0.0, 0.5 * (uz(1) - here[1] / r)),
        ];
        let w = s.w.jet(x);
        let scale = 1.0 + here.iter().map(|v| v.abs()).sum::<f64>() + w[1].abs() * g.l;
        for (k, (a, b)) in expect.into_iter().enumerate() {
            prop_assert!((a - b).abs() < 1e-6 * scale, "component {k}: {a} vs {b}");
        }
    }

    #[test]
    fn log_factor_is_increasing_and_at_least_one(a in 0.0f64..0.999, b in 0.0f64..0.999) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (fl, fh) = (log_factor(lo).unwrap(), log_factor(hi).unwrap());
        prop_assert!(fl >= 1.0);
        if hi - lo > 1e-6 {
            prop_assert!(fh > fl);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solutions_satisfy_statics_rims_and_parity(
        g in thin_geometry(), m in material_strategy(), kind in kind_strategy(), v in -5.0f64..5.0,
    ) {
        let s = solve(&g, &m, LoadCase::new(kind, v).unwrap()).unwrap();
        let r = residuals(&s, &g, &m).unwrap();
        prop_assert!(r.statics < 1e-10 && r.bc_moment < 1e-10 && r.bc_shear < 1e-10, "{r:?}");
        prop_assert!(r.gamma_equation < 1e-10 && r.integral < 1e-8 && r.field < 1e-8, "{r:?}");
        let st = s.state();
        for i in 0..=20 {
            let x = g.l * i as f64 / 20.0;
            let scale_w = st.w.value(g.l).abs().max(st.w.value(0.0).abs()) + 1e-300;
            let scale_a = st.a1.value(g.l).abs() + st.a2.value(g.l).abs() + 1e-300;
            prop_assert!((st.w.value(x) - st.w.value(-x)).abs() <= 1e-12 * scale_w);
            prop_assert!((st.a1.value(x) + st.a1.value(-x)).abs() <= 1e-12 * scale_a);
            prop_assert!((st.a2.value(x) + st.a2.value(-x)).abs() <= 1e-12 * scale_a);
        }
        if let Some(rad) = s.as_radial() {
            let w = rad.w_field();
            let scale = (0..=20).map(|i| w.jet(g.l * i as f64 / 20.0)[0].abs()).fold(0.0, f64::max) + 1e-300;
            for i in 0..=20 {
                prop_assert!(w.imaginary_part(g.l * i as f64 / 20.0).abs() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn traction_resultant_is_uniform(g in thin_geometry(), m in material_strategy(), p in 0.1f64..5.0) {
        let s = solve(&g, &m, LoadCase::new(LoadKind::Traction, p).unwrap()).unwrap();
        let st = s.state();
        for i in 0..=10 {
            let f11 = resultants(&g, &m, &st, -g.l + 0.2 * g.l * i as f64).f11;
            prop_assert!(rel(f11, p) < 1e-10);
        }
    }

    #[test]
    fn stable_coefficients_match_exponential_form(g in thin_geometry(), m in material_strategy(), kind in radial_kind()) {
        let s = solve(&g, &m, LoadCase::new(kind, 1.0).unwrap()).unwrap();
        let r = s.as_radial().unwrap();
        prop_assume!(r.alpha.iter().all(|a| a.re.abs() * g.l <= 20.0));
        let stable = r.cosh_coefficients();
        let naive = naive_coefficients(&g, &m, r).unwrap();
        for i in 0..2 {
            prop_assert!((stable[i] - naive[i]).norm() <= 1e-12 * stable[i].norm().max(naive[i].norm()));
        }
    }

    #[test]
    fn probe_identities(g in thin_geometry(), m in material_strategy(), p in 0.1f64..5.0) {
        let s = slender_traction(&g, &m, p).unwrap();
        let big_p = 2.0 * std::f64::consts::PI * g.rho_o * p;
        prop_assert!(rel(stiffness_traction(&g, &m).unwrap() * s.a1_slope, big_p) < 1e-12);
        let t = orthoshell::bvp::solve_torsion(&g, &m, p);
        let torque = 2.0 * std::f64::consts::PI * g.rho_o * g.rho_o * p;
        prop_assert!(rel(stiffness_torsion(&g, &m) * t.theta, torque) < 1e-12);
        prop_assert!(m.shear() > 0.0);
    }

    #[test]
    fn delta_is_a_decreasing_fraction(m in kl_material_strategy(), a in 0.001f64..0.9, b in 0.001f64..0.9) {
        prop_assume!(m.nu12 * m.nu21 >= 0.0);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let d = |x: f64| kl_delta(&ShellGeometry::new(1.0, x, 1.0).unwrap(), &m).unwrap();
        prop_assert!(d(lo) > 0.0 && d(lo) <= 1.0);
        if hi - lo > 1e-3 {
            prop_assert!(d(hi) < d(lo));
        }
    }

    #[test]
    fn kl_records_are_consistent(m in kl_material_strategy(), x in 0.001f64..0.2, p in 0.1f64..2.0, q in 0.1f64..2.0) {
        prop_assume!(m.nu12.abs() > 1e-3);
        let g = ShellGeometry::new(1.0, x, 100.0).unwrap();
        let rec = kl_virtual_experiment(&g, &m, p, q).unwrap();
        let c = kl_consistency_check(&rec);
        prop_assert!(c < 1e-10, "{c} {rec:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn discrete_integral_relation_holds(g in thin_geometry(), m in material_strategy(), kind in radial_kind()) {
        let s = fd_solve(&g, &m, LoadCase::new(kind, 1.0).unwrap(), 401).unwrap();
        prop_assert!(s.integral_residual < 1e-10, "{}", s.integral_residual);
    }
}
