//! Cylindrical geometry, axisymmetric kinematics and force/moment resultants.
//!
//! The shell occupies `ρₒ - ε ≤ r ≤ ρₒ + ε`, `-l ≤ x₁ ≤ l`. An axisymmetric
//! displacement is described by the axial, circumferential and radial
//! midsurface fields `a1, a2, w` and a uniform thickness stretch `γ`:
//!
//! ```text
//! u1 = a1 - ζ w',   u2 = (1 + ζ/ρₒ) a2,   u3 = w + ζ γ
//! ```

use std::io;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::format_f64;
use crate::material::{ShellMaterial, StiffnessComponents, StrainComponents};
use crate::quadrature::gauss_legendre;
use crate::scalar::{lit, Real};

/// Below this thinness `log_factor` switches to its Taylor series.
pub const LOG_FACTOR_CROSSOVER: f64 = 1e-4;

/// Right circular cylindrical shell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellGeometry<T> {
    /// Midsurface radius.
    pub rho_o: T,
    /// Half-thickness.
    pub eps: T,
    /// Half-length.
    pub l: T,
}

impl<T: Real> ShellGeometry<T> {
    pub fn new(rho_o: T, eps: T, l: T) -> Result<Self> {
        let g = Self { rho_o, eps, l };
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<()> {
        let ok = self.rho_o.is_finite()
            && self.eps.is_finite()
            && self.l.is_finite()
            && self.eps > T::zero()
            && self.eps < self.rho_o
            && self.l > T::zero();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGeometry(format!(
                "need 0 < ε < ρₒ and l > 0, got ρₒ = {}, ε = {}, l = {}",
                self.rho_o, self.eps, self.l
            )))
        }
    }

    /// `ε/ρₒ`.
    pub fn thinness(&self) -> T {
        self.eps / self.rho_o
    }

    /// `ρₒ/l`.
    pub fn slenderness(&self) -> T {
        self.rho_o / self.l
    }

    /// `L(ε/ρₒ)`, see [`log_factor`].
    pub fn log_factor(&self) -> T {
        log_factor(self.thinness()).expect("geometry invariant ε < ρₒ")
    }

    /// `1 - ε²/(3ρₒ²)`, the curvature correction of the bending stiffness.
    pub fn bending_factor(&self) -> T {
        let x = self.thinness();
        T::one() - x * x / lit(3.0)
    }

    /// Same shell with a different half-length.
    pub fn with_length(&self, l: T) -> Result<Self> {
        Self::new(self.rho_o, self.eps, l)
    }
}

/// `L(x) = (1/2x) ln((1+x)/(1-x))`, with `L(0) = 1`.
///
/// Equivalently `atanh(x)/x`. The exact form is evaluated through `ln_1p` to
/// keep relative accuracy; below [`LOG_FACTOR_CROSSOVER`] the series
/// `1 + x²/3 + x⁴/5 + x⁶/7` is used.
pub fn log_factor<T: Real>(x: T) -> Result<T> {
    if !(x.abs() < T::one()) {
        return Err(Error::DomainError(format!("log factor needs |x| < 1, got {x}")));
    }
    let x = x.abs();
    if x <= lit(LOG_FACTOR_CROSSOVER) {
        let x2 = x * x;
        Ok(T::one() + x2 * (T::one() / lit(3.0) + x2 * (T::one() / lit(5.0) + x2 / lit(7.0))))
    } else {
        let two = lit::<T>(2.0);
        Ok((two * x / (T::one() - x)).ln_1p() / (two * x))
    }
}

/// Value and first four derivatives of a scalar field at a station.
pub type Jet<T> = [T; 5];

/// Symmetry class of a modal field under `x₁ ↦ -x₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// `(cosh(αx)/cosh(αl), sinh(αx)/cosh(αl))` with the dominant exponential
/// factored out; no intermediate exceeds `|exp(α(|x| - l))|` in modulus.
pub fn hyperbolic_ratios<T: Real>(alpha: Complex<T>, x: T, l: T) -> (Complex<T>, Complex<T>) {
    // both ratios are invariant (cosh) or odd (sinh) under α ↦ -α
    let (a, flip) = if alpha.re < T::zero() { (-alpha, true) } else { (alpha, false) };
    let s = x.abs();
    let one = Complex::new(T::one(), T::zero());
    let lead = (a * (s - l)).exp();
    let tail = (a * (-lit::<T>(2.0) * s)).exp();
    let denom = one + (a * (-lit::<T>(2.0) * l)).exp();
    let c = lead * (one + tail) / denom;
    let mut sh = lead * (one - tail) / denom;
    if (x < T::zero()) != flip {
        sh = -sh;
    }
    (c, sh)
}

/// Closed-form field `offset + slope·x + Σ Re[A_i R_i(x)]`, with `R_i` the
/// even (`cosh`) or odd (`sinh`) ratio normalized at `x = l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModalField<T> {
    pub parity: Parity,
    pub offset: T,
    pub slope: T,
    pub half_length: T,
    pub alpha: [Complex<T>; 2],
    pub amplitude: [Complex<T>; 2],
}

impl<T: Real> ModalField<T> {
    pub fn jet(&self, x: T) -> Jet<T> {
        let mut out = [T::zero(); 5];
        out[0] = self.offset + self.slope * x;
        out[1] = self.slope;
        for i in 0..2 {
            let a = self.alpha[i];
            let amp = self.amplitude[i];
            if amp == Complex::new(T::zero(), T::zero()) {
                continue;
            }
            let (c, s) = hyperbolic_ratios(a, x, self.half_length);
            let (even, odd) = match self.parity {
                Parity::Even => (c, s),
                Parity::Odd => (s, c),
            };
            let mut pow = Complex::new(T::one(), T::zero());
            for (k, slot) in out.iter_mut().enumerate() {
                let base = if k % 2 == 0 { even } else { odd };
                *slot += (amp * pow * base).re;
                pow = pow * a;
            }
        }
        out
    }

    /// Imaginary part of the modal sum at `x`; zero for a conjugate pair.
    pub fn imaginary_part(&self, x: T) -> T {
        let mut im = T::zero();
        for i in 0..2 {
            let (c, s) = hyperbolic_ratios(self.alpha[i], x, self.half_length);
            let base = match self.parity {
                Parity::Even => c,
                Parity::Odd => s,
            };
            im += (self.amplitude[i] * base).im;
        }
        im
    }
}

/// Tabulated field; derivatives come from the local degree-5 interpolant
/// through the six nearest stations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledField<T> {
    x: Vec<T>,
    y: Vec<T>,
}

impl<T: Real> SampledField<T> {
    /// `x` must be strictly increasing and hold at least six stations.
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 6 {
            return Err(Error::InvalidGrid(format!(
                "sampled field needs ≥ 6 matching stations, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        if x.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::InvalidGrid("stations must be strictly increasing".into()));
        }
        Ok(Self { x, y })
    }

    pub fn stations(&self) -> &[T] {
        &self.x
    }

    pub fn values(&self) -> &[T] {
        &self.y
    }

    pub fn jet(&self, z: T) -> Jet<T> {
        let n = self.x.len();
        let k = self.x.partition_point(|&xi| xi < z);
        let start = k.saturating_sub(3).min(n - 6);
        let xs = &self.x[start..start + 6];
        let w = fornberg_weights(z, xs, 4);
        let mut out = [T::zero(); 5];
        for (j, row) in w.iter().enumerate() {
            for d in 0..5 {
                out[d] += row[d] * self.y[start + j];
            }
        }
        out
    }
}

/// Fornberg's finite-difference weights: `c[j][d]` is the weight of node `j`
/// in the `d`-th derivative at `z` of the interpolating polynomial.
fn fornberg_weights<T: Real>(z: T, x: &[T], m: usize) -> Vec<[T; 5]> {
    let n = x.len();
    let mut c = vec![[T::zero(); 5]; n];
    let mut c1 = T::one();
    let mut c4 = x[0] - z;
    c[0][0] = T::one();
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let kf = lit::<T>(k as f64);
                    c[i][k] = c1 * (kf * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                let kf = lit::<T>(k as f64);
                c[j][k] = (c4 * c[j][k] - kf * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c
}

/// A scalar function of `x₁` with derivatives up to fourth order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Field<T> {
    Zero,
    /// Coefficients in increasing degree.
    Polynomial(Vec<T>),
    Modal(ModalField<T>),
    Sampled(SampledField<T>),
}

impl<T: Real> Field<T> {
    pub fn constant(c: T) -> Self {
        Field::Polynomial(vec![c])
    }

    pub fn linear(slope: T) -> Self {
        Field::Polynomial(vec![T::zero(), slope])
    }

    pub fn jet(&self, x: T) -> Jet<T> {
        match self {
            Field::Zero => [T::zero(); 5],
            Field::Polynomial(c) => {
                let mut out = [T::zero(); 5];
                // Horner on each derivative
                for (d, slot) in out.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for k in (d..c.len()).rev() {
                        let mut f = T::one();
                        for j in 0..d {
                            f *= lit::<T>((k - j) as f64);
                        }
                        acc = acc * x + f * c[k];
                    }
                    *slot = acc;
                }
                out
            }
            Field::Modal(m) => m.jet(x),
            Field::Sampled(s) => s.jet(x),
        }
    }

    pub fn value(&self, x: T) -> T {
        self.jet(x)[0]
    }
}

/// Midsurface fields `(a1, a2, w)` and the thickness stretch `γ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisymmetricState<T> {
    pub a1: Field<T>,
    pub a2: Field<T>,
    pub w: Field<T>,
    pub gamma: T,
}

impl<T: Real> AxisymmetricState<T> {
    pub fn zero() -> Self {
        Self { a1: Field::Zero, a2: Field::Zero, w: Field::Zero, gamma: T::zero() }
    }
}

fn check_station<T: Real>(g: &ShellGeometry<T>, x1: T, zeta: T) -> Result<()> {
    let slack = T::one() + lit::<T>(1e-12);
    if !(x1.abs() <= g.l * slack) || !(zeta.abs() <= g.eps * slack) {
        return Err(Error::OutOfDomain(format!("(x1, ζ) = ({x1}, {zeta}) with l = {}, ε = {}", g.l, g.eps)));
    }
    Ok(())
}

/// Physical components `(u1, u2, u3)` of the displacement at `(x1, ζ)`.
pub fn displacement<T: Real>(
    g: &ShellGeometry<T>,
    s: &AxisymmetricState<T>,
    x1: T,
    zeta: T,
) -> Result<[T; 3]> {
    check_station(g, x1, zeta)?;
    let w = s.w.jet(x1);
    Ok([
        s.a1.value(x1) - zeta * w[1],
        (T::one() + zeta / g.rho_o) * s.a2.value(x1),
        w[0] + zeta * s.gamma,
    ])
}

/// Strain at `(x1, ζ)`.
pub fn strain<T: Real>(
    g: &ShellGeometry<T>,
    s: &AxisymmetricState<T>,
    x1: T,
    zeta: T,
) -> Result<StrainComponents<T>> {
    check_station(g, x1, zeta)?;
    Ok(strain_unchecked(g, s, x1, zeta))
}

fn strain_unchecked<T: Real>(
    g: &ShellGeometry<T>,
    s: &AxisymmetricState<T>,
    x1: T,
    zeta: T,
) -> StrainComponents<T> {
    let a1 = s.a1.jet(x1);
    let a2 = s.a2.jet(x1);
    let w = s.w.jet(x1);
    let half = lit::<T>(0.5);
    StrainComponents {
        e11: a1[1] - zeta * w[2],
        e22: (w[0] + zeta * s.gamma) / (g.rho_o + zeta),
        e33: s.gamma,
        e12: half * (T::one() + zeta / g.rho_o) * a2[1],
    }
}

/// The eight force and moment resultants at a station.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultantSet<T> {
    pub x1: T,
    pub f11: T,
    pub f22: T,
    pub f21: T,
    pub f33: T,
    pub m11: T,
    pub m21: T,
    pub m12: T,
    pub m22: T,
}

impl<T: Real> ResultantSet<T> {
    pub const NAMES: [&'static str; 8] = ["F11", "F22", "F21", "F33", "M11", "M21", "M12", "M22"];

    pub fn values(&self) -> [T; 8] {
        [self.f11, self.f22, self.f21, self.f33, self.m11, self.m21, self.m12, self.m22]
    }

    fn from_values(x1: T, v: [T; 8]) -> Self {
        Self { x1, f11: v[0], f22: v[1], f21: v[2], f33: v[3], m11: v[4], m21: v[5], m12: v[6], m22: v[7] }
    }
}

/// Closed-form resultants.
///
/// For a Kirchhoff-Love material the `·33` stiffness entries vanish and
/// `F33` is returned as zero (the thickness stress is reactive there).
pub fn resultants<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    x1: T,
) -> ResultantSet<T> {
    let c = m.shell_stiffness();
    let a1 = s.a1.jet(x1)[1];
    let a2 = s.a2.jet(x1)[1];
    let w = s.w.jet(x1);
    closed_form(g, &c, a1, a2, w[0], w[2], s.gamma, x1)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn closed_form<T: Real>(
    g: &ShellGeometry<T>,
    c: &StiffnessComponents<T>,
    da1: T,
    da2: T,
    w: T,
    ddw: T,
    gamma: T,
    x1: T,
) -> ResultantSet<T> {
    let (rho, eps) = (g.rho_o, g.eps);
    let big_l = g.log_factor();
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let e2 = eps * eps;
    let e3 = e2 * eps;
    let f = two * eps / rho;
    let axial = rho * da1 - e2 * ddw / three;
    ResultantSet {
        x1,
        f11: f * (c.c1111 * axial + c.c1122 * w + c.c1133 * rho * gamma),
        f22: f * (c.c1122 * rho * da1
            + c.c2222 * (big_l * w + (T::one() - big_l) * rho * gamma)
            + c.c2233 * rho * gamma),
        f21: two * eps * c.c1212 * (T::one() + e2 / (three * rho * rho)) * da2,
        f33: f * (c.c3333 * rho * gamma + c.c1133 * axial + c.c2233 * w),
        m11: two / three * e3 / rho
            * (c.c1111 * (da1 - rho * ddw) + (c.c1122 + c.c1133) * gamma),
        m21: lit::<T>(4.0) / three * e3 / rho * c.c1212 * da2,
        m12: two / three * e3 / rho * c.c1212 * da2,
        m22: two * eps * c.c2222 * (T::one() - big_l) * (w - rho * gamma)
            - two / three * e3 * c.c1122 * ddw,
    }
}

/// `M11'(x1)`, which balance identifies with the reactive shear `F31`.
pub fn m11_derivative<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    x1: T,
) -> T {
    let c = m.shell_stiffness();
    let a1 = s.a1.jet(x1);
    let w = s.w.jet(x1);
    let e3 = g.eps * g.eps * g.eps;
    lit::<T>(2.0) / lit(3.0) * e3 / g.rho_o * c.c1111 * (a1[2] - g.rho_o * w[3])
}

/// Resultants by `n`-point Gauss-Legendre quadrature of the stress across
/// the thickness.
pub fn resultants_by_quadrature<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    x1: T,
    n: usize,
) -> ResultantSet<T> {
    quadrature_sums(g, m, s, x1, n).0
}

/// Quadrature of the absolute integrands; the natural scale against which
/// a resultant that cancels to nearly zero should be compared.
pub fn resultant_magnitudes<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    x1: T,
    n: usize,
) -> ResultantSet<T> {
    quadrature_sums(g, m, s, x1, n).1
}

fn quadrature_sums<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    x1: T,
    n: usize,
) -> (ResultantSet<T>, ResultantSet<T>) {
    let c = m.shell_stiffness();
    let (nodes, weights) = gauss_legendre::<T>(n);
    let mut sum = [T::zero(); 8];
    let mut mag = [T::zero(); 8];
    for (&xi, &wi) in nodes.iter().zip(&weights) {
        let zeta = g.eps * xi;
        let wt = wi * g.eps;
        let e = strain_unchecked(g, s, x1, zeta);
        let st = c.apply(&e);
        let sh = T::one() + zeta / g.rho_o;
        let terms = [
            sh * st.s11,
            st.s22,
            sh * st.s12,
            sh * st.s33,
            sh * zeta * st.s11,
            sh * zeta * st.s12,
            zeta * st.s12,
            zeta * st.s22,
        ];
        for k in 0..8 {
            sum[k] += wt * terms[k];
            mag[k] += wt * terms[k].abs();
        }
    }
    (ResultantSet::from_values(x1, sum), ResultantSet::from_values(x1, mag))
}

/// Thickness average `(1/2ε) ∫ (1 + ζ/ρₒ) E dζ` of the strain.
///
/// Exact for the axisymmetric kinematics:
/// `Ē11 = a1' - ε²w''/(3ρₒ)`, `Ē12 = ½(1 + ε²/(3ρₒ²)) a2'`, `Ē22 = w/ρₒ`,
/// `Ē33 = γ`. The curvature corrections vanish in slender, uniformly
/// stretched states.
pub fn cross_section_strain<T: Real>(
    g: &ShellGeometry<T>,
    s: &AxisymmetricState<T>,
    x1: T,
) -> StrainComponents<T> {
    let a1 = s.a1.jet(x1);
    let a2 = s.a2.jet(x1);
    let w = s.w.jet(x1);
    let three = lit::<T>(3.0);
    let x = g.thinness();
    StrainComponents {
        e11: a1[1] - g.eps * x * w[2] / three,
        e22: w[0] / g.rho_o,
        e33: s.gamma,
        e12: lit::<T>(0.5) * (T::one() + x * x / three) * a2[1],
    }
}

/// One station of a sampled profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow<T> {
    pub x1: T,
    pub a1: T,
    pub a2: T,
    pub w: T,
    pub gamma: T,
    pub resultants: ResultantSet<T>,
    pub f31: T,
}

pub const PROFILE_COLUMNS: [&str; 14] = [
    "x1", "a1", "a2", "w", "gamma", "F11", "F22", "F21", "F33", "M11", "M21", "M12", "M22", "F31",
];

/// Samples the state at `stations` equispaced points over `[-l, l]`.
pub fn sample_profile<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    s: &AxisymmetricState<T>,
    stations: usize,
) -> Result<Vec<ProfileRow<T>>> {
    if stations < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 stations, got {stations}")));
    }
    let h = lit::<T>(2.0) * g.l / lit((stations - 1) as f64);
    Ok((0..stations)
        .map(|j| {
            let x1 = if j == stations - 1 { g.l } else { -g.l + h * lit(j as f64) };
            ProfileRow {
                x1,
                a1: s.a1.value(x1),
                a2: s.a2.value(x1),
                w: s.w.value(x1),
                gamma: s.gamma,
                resultants: resultants(g, m, s, x1),
                f31: m11_derivative(g, m, s, x1),
            }
        })
        .collect())
}

/// Writes rows under the [`PROFILE_COLUMNS`] header, 17 significant digits.
pub fn write_profile_csv<T: Real, W: io::Write>(out: W, rows: &[ProfileRow<T>]) -> io::Result<()> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    wtr.write_record(PROFILE_COLUMNS)?;
    for r in rows {
        let q = r.resultants;
        let rec = [
            r.x1, r.a1, r.a2, r.w, r.gamma, q.f11, q.f22, q.f21, q.f33, q.m11, q.m21, q.m12, q.m22, r.f31,
        ];
        wtr.write_record(rec.iter().map(|v| format_f64(v.to_f64_lossy(), 17)))?;
    }
    wtr.flush()
}
