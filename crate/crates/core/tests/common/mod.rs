#![allow(dead_code)]

use orthoshell::material::{KLMaterial, OrthotropicMaterial};
use orthoshell::shell_model::{AxisymmetricState, Field, ShellGeometry};
use orthoshell::{Geometry, KlMaterial, Material, State};
use proptest::prelude::*;
use rand::Rng;

pub fn m_star() -> Material {
    OrthotropicMaterial::new(1000.0, 800.0, 600.0, 0.2, 0.16, 0.1, 0.06, 0.1, 0.075, 400.0).unwrap()
}

pub fn m_star_kl() -> KlMaterial {
    KLMaterial::new(1000.0, 800.0, 0.2, 0.16, 400.0).unwrap()
}

/// Full material that behaves like `m_star_kl`: stiff across the thickness
/// and with no Poisson coupling to the normal direction.
pub fn kl_like() -> Material {
    OrthotropicMaterial::new(1000.0, 800.0, 6e8, 0.2, 0.16, 0.0, 0.0, 0.0, 0.0, 400.0).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 { 0.0 } else { (a - b).abs() / s }
}

/// `max |a - b| / max |b|` over paired samples.
pub fn linf_rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let dev = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 { dev } else { dev / scale }
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Random admissible material: log-uniform moduli over two decades, Poisson
/// ratios in (-0.45, 0.45), reciprocity exact, resampled until positive
/// definite.
pub fn random_material<R: Rng>(rng: &mut R) -> Material {
    loop {
        let e = [log_uniform(rng, 10.0, 1000.0), log_uniform(rng, 10.0, 1000.0), log_uniform(rng, 10.0, 1000.0)];
        let nu: [f64; 3] = std::array::from_fn(|_| rng.random_range(-0.45..0.45));
        let g = log_uniform(rng, 5.0, 500.0);
        if let Ok(m) = OrthotropicMaterial::from_primary(e[0], e[1], e[2], nu[0], nu[1], nu[2], g) {
            if m.validate().is_valid() {
                return m;
            }
        }
    }
}

pub fn random_state<R: Rng>(rng: &mut R) -> State {
    let mut poly = |n: usize| Field::Polynomial((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
    let (a1, a2, w) = (poly(5), poly(5), poly(6));
    AxisymmetricState { a1, a2, w, gamma: rng.random_range(-1.0..1.0) }
}

pub fn material_strategy() -> impl Strategy<Value = Material> {
    (
        (1.0f64..3.0, 1.0f64..3.0, 1.0f64..3.0),
        (-0.45f64..0.45, -0.45f64..0.45, -0.45f64..0.45),
        0.7f64..2.7,
    )
        .prop_filter_map("not positive definite", |((a, b, c), (n12, n13, n23), g)| {
            let p = |x: f64| 10f64.powf(x);
            OrthotropicMaterial::from_primary(p(a), p(b), p(c), n12, n13, n23, p(g))
                .ok()
                .filter(|m| m.validate().is_valid())
        })
}

pub fn kl_material_strategy() -> impl Strategy<Value = KlMaterial> {
    (1.0f64..3.0, 1.0f64..3.0, -0.45f64..0.45, 0.7f64..2.7).prop_filter_map(
        "not admissible",
        |(a, b, n12, g)| {
            let (e1, e2) = (10f64.powf(a), 10f64.powf(b));
            KLMaterial::new(e1, e2, n12, n12 * e2 / e1, 10f64.powf(g)).ok().filter(|m| m.delta() > 0.0)
        },
    )
}

/// Radius, thinness ratio and slenderness drawn from moderate ranges.
pub fn geometry_strategy() -> impl Strategy<Value = Geometry> {
    (0.5f64..2.0, 0.005f64..0.4, 1.0f64..12.0)
        .prop_map(|(rho, x, s)| ShellGeometry::new(rho, x * rho, s * rho).unwrap())
}
