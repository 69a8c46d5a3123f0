//! Constitutive algebra for unshearable orthotropic materials.
//!
//! The stress response lives on the four-dimensional constraint space spanned
//! by the orthonormal tensors `W₁ = c₁⊗c₁`, `W₂ = c₂⊗c₂`, `V₃ = c₃⊗c₃` and
//! `W₃ = (c₁⊗c₂ + c₂⊗c₁)/√2`, where `c₃` is the shell normal. Transverse shear
//! strains are excluded by the constraint, so a strain is carried by its four
//! physical components `(e11, e22, e33, e12)`.
//!
//! Two parameterizations are supported and interconverted:
//!
//! - the ten technical moduli `E₁, E₂, E₃, ν₁₂, ν₂₁, ν₁₃, ν₃₁, ν₂₃, ν₃₂, G`
//!   tied by `E₁ν₂₁ = E₂ν₁₂`, `E₁ν₃₁ = E₃ν₁₃`, `E₂ν₃₂ = E₃ν₂₃`;
//! - the seven Cartesian stiffness components `C1111 … C2233`, with
//!   `C1212 = G` (so that `S12 = 2 C1212 E12`).
//!
//! The Kirchhoff-Love reduction additionally freezes the thickness stretch and
//! keeps only `E₁, E₂, ν₁₂, ν₂₁, G`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Relative tolerance on the three reciprocity relations between Young-like
/// and Poisson-like moduli.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Relative size below which a denominator of the inverse moduli map is
/// considered to vanish.
pub const SINGULAR_TOL: f64 = 1e-14;

/// Which shell theory a material belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    /// Unshearable shell with a uniform thickness stretch.
    Full,
    /// Kirchhoff-Love shell: unshearable and thickness-preserving.
    #[serde(rename = "kl")]
    KirchhoffLove,
}

/// The ten technical moduli of an unshearable orthotropic material.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthotropicMaterial<T> {
    #[serde(rename = "E1")]
    pub e1: T,
    #[serde(rename = "E2")]
    pub e2: T,
    #[serde(rename = "E3")]
    pub e3: T,
    pub nu12: T,
    pub nu21: T,
    pub nu13: T,
    pub nu31: T,
    pub nu23: T,
    pub nu32: T,
    #[serde(rename = "G")]
    pub g: T,
}

/// Cartesian components of the constrained stiffness tensor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StiffnessComponents<T> {
    #[serde(rename = "C1111")]
    pub c1111: T,
    #[serde(rename = "C2222")]
    pub c2222: T,
    #[serde(rename = "C3333")]
    pub c3333: T,
    #[serde(rename = "C1212")]
    pub c1212: T,
    #[serde(rename = "C1122")]
    pub c1122: T,
    #[serde(rename = "C1133")]
    pub c1133: T,
    #[serde(rename = "C2233")]
    pub c2233: T,
}

/// Physical strain components on the constraint space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StrainComponents<T> {
    pub e11: T,
    pub e22: T,
    pub e33: T,
    pub e12: T,
}

/// Physical stress components on the constraint space (active part only).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StressComponents<T> {
    pub s11: T,
    pub s22: T,
    pub s33: T,
    pub s12: T,
}

/// Moduli surviving the Kirchhoff-Love reduction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KLMaterial<T> {
    #[serde(rename = "E1")]
    pub e1: T,
    #[serde(rename = "E2")]
    pub e2: T,
    pub nu12: T,
    pub nu21: T,
    #[serde(rename = "G")]
    pub g: T,
}

/// A constraint that a material failed to satisfy.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    NonFinite { field: &'static str },
    NonPositiveModulus { field: &'static str, value: f64 },
    /// Reciprocity `E_i ν_ji = E_j ν_ij` broken; `residual` is relative.
    Symmetry { pair: (u8, u8), residual: f64 },
    NonPositiveDelta { delta: f64 },
    /// Smallest leading pivot of the Gram matrix (≤ 0).
    NotPositiveDefinite { min_pivot: f64 },
}

/// Outcome of [`OrthotropicMaterial::validate`]. Empty iff the material is admissible.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Residual reported for the reciprocity pair `(i, j)`, if it was flagged.
    pub fn symmetry_residual(&self, pair: (u8, u8)) -> Option<f64> {
        self.violations.iter().find_map(|v| match v {
            Violation::Symmetry { pair: p, residual } if *p == pair => Some(*residual),
            _ => None,
        })
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Relative mismatch of `a·d` and `b·c`, the cross-multiplied form of `a/b = c/d`.
fn reciprocity_residual<T: Real>(e_i: T, nu_ji: T, e_j: T, nu_ij: T) -> T {
    let lhs = e_i * nu_ji;
    let rhs = e_j * nu_ij;
    let scale = lhs.abs().max(rhs.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Leading pivots of the Cholesky factorization of a symmetric matrix.
/// Returns the smallest pivot; positive iff the matrix is positive-definite.
pub(crate) fn min_cholesky_pivot<T: Real, const N: usize>(m: &[[T; N]; N]) -> T {
    let mut l = [[T::zero(); N]; N];
    let mut min_pivot = T::infinity();
    for j in 0..N {
        let mut diag = m[j][j];
        for k in 0..j {
            diag -= l[j][k] * l[j][k];
        }
        min_pivot = min_pivot.min(diag);
        if !(diag > T::zero()) {
            return diag;
        }
        let ljj = diag.sqrt();
        l[j][j] = ljj;
        for i in (j + 1)..N {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / ljj;
        }
    }
    min_pivot
}

impl<T: Real> OrthotropicMaterial<T> {
    /// Builds a material from all ten moduli, rejecting anything that does not
    /// pass [`validate`](Self::validate).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        e1: T,
        e2: T,
        e3: T,
        nu12: T,
        nu21: T,
        nu13: T,
        nu31: T,
        nu23: T,
        nu32: T,
        g: T,
    ) -> Result<Self> {
        let m = Self { e1, e2, e3, nu12, nu21, nu13, nu31, nu23, nu32, g };
        m.checked()
    }

    /// Builds a material from the independent moduli; `ν₂₁, ν₃₁, ν₃₂` follow
    /// from reciprocity.
    pub fn from_primary(e1: T, e2: T, e3: T, nu12: T, nu13: T, nu23: T, g: T) -> Result<Self> {
        let m = Self {
            e1,
            e2,
            e3,
            nu12,
            nu21: nu12 * e2 / e1,
            nu13,
            nu31: nu13 * e3 / e1,
            nu23,
            nu32: nu23 * e3 / e2,
            g,
        };
        m.checked()
    }

    /// Accepts noisy measured moduli. Each reciprocity relation must hold to
    /// relative `tol`; `ν₂₁, ν₃₁, ν₃₂` are then recomputed from the primary set
    /// `(E₁, E₂, E₃, ν₁₂, ν₁₃, ν₂₃, G)`.
    pub fn from_measured(measured: Self, tol: T) -> Result<Self> {
        let pairs = [
            ((1, 2), reciprocity_residual(measured.e1, measured.nu21, measured.e2, measured.nu12)),
            ((1, 3), reciprocity_residual(measured.e1, measured.nu31, measured.e3, measured.nu13)),
            ((2, 3), reciprocity_residual(measured.e2, measured.nu32, measured.e3, measured.nu23)),
        ];
        for (pair, r) in pairs {
            if !(r <= tol) {
                return Err(Error::InvalidMaterial(format!(
                    "reciprocity {pair:?} residual {:e} exceeds tolerance {:e}",
                    r.to_f64_lossy(),
                    tol.to_f64_lossy()
                )));
            }
        }
        Self::from_primary(
            measured.e1,
            measured.e2,
            measured.e3,
            measured.nu12,
            measured.nu13,
            measured.nu23,
            measured.g,
        )
    }

    /// Isotropic material with `G = E / (2(1 + ν))`.
    pub fn isotropic(e: T, nu: T) -> Result<Self> {
        let g = e / (lit::<T>(2.0) * (T::one() + nu));
        Self::from_primary(e, e, e, nu, nu, nu, g)
    }

    fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidMaterial(report.to_string()))
        }
    }

    /// `η = E₂/E₁ = ν₂₁/ν₁₂`.
    pub fn eta(&self) -> T {
        self.e2 / self.e1
    }

    /// `λ = E₃/E₁ = ν₃₁/ν₁₃`.
    pub fn lambda(&self) -> T {
        self.e3 / self.e1
    }

    /// `μ = E₃/E₂ = ν₃₂/ν₂₃`.
    pub fn mu(&self) -> T {
        self.e3 / self.e2
    }

    /// `Δ = 1 − ν₁₂ν₂₁ − ν₁₃ν₃₁ − ν₂₃ν₃₂ − 2ν₁₂ν₂₃ν₃₁`.
    pub fn delta(&self) -> T {
        T::one()
            - self.nu12 * self.nu21
            - self.nu13 * self.nu31
            - self.nu23 * self.nu32
            - lit::<T>(2.0) * self.nu12 * self.nu23 * self.nu31
    }

    fn fields(&self) -> [(&'static str, T); 10] {
        [
            ("E1", self.e1),
            ("E2", self.e2),
            ("E3", self.e3),
            ("nu12", self.nu12),
            ("nu21", self.nu21),
            ("nu13", self.nu13),
            ("nu31", self.nu31),
            ("nu23", self.nu23),
            ("nu32", self.nu32),
            ("G", self.g),
        ]
    }

    /// Checks finiteness, positivity of the moduli, reciprocity, `Δ > 0` and
    /// positive-definiteness. Never fails; reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (field, v) in self.fields() {
            if !v.is_finite() {
                violations.push(Violation::NonFinite { field });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for (field, v) in [("E1", self.e1), ("E2", self.e2), ("E3", self.e3), ("G", self.g)] {
            if !(v > T::zero()) {
                violations.push(Violation::NonPositiveModulus { field, value: v.to_f64_lossy() });
            }
        }
        let tol = T::tol(SYMMETRY_TOL);
        let pairs = [
            ((1, 2), reciprocity_residual(self.e1, self.nu21, self.e2, self.nu12)),
            ((1, 3), reciprocity_residual(self.e1, self.nu31, self.e3, self.nu13)),
            ((2, 3), reciprocity_residual(self.e2, self.nu32, self.e3, self.nu23)),
        ];
        for (pair, r) in pairs {
            if r > tol {
                violations.push(Violation::Symmetry { pair, residual: r.to_f64_lossy() });
            }
        }
        let delta = self.delta();
        if !(delta > T::zero()) {
            violations.push(Violation::NonPositiveDelta { delta: delta.to_f64_lossy() });
        }
        if violations.is_empty() {
            let pivot = min_cholesky_pivot(&self.stiffness_unchecked().gram_matrix());
            if !(pivot > T::zero()) {
                violations.push(Violation::NotPositiveDefinite { min_pivot: pivot.to_f64_lossy() });
            }
        }
        ValidationReport { violations }
    }

    fn stiffness_unchecked(&self) -> StiffnessComponents<T> {
        let d = self.delta();
        StiffnessComponents {
            c1111: self.e1 * (T::one() - self.nu23 * self.nu32) / d,
            c2222: self.e2 * (T::one() - self.nu13 * self.nu31) / d,
            c3333: self.e3 * (T::one() - self.nu12 * self.nu21) / d,
            c1212: self.g,
            c1122: self.e1 * (self.nu21 + self.nu23 * self.nu31) / d,
            c1133: self.e1 * (self.nu31 + self.nu21 * self.nu32) / d,
            c2233: self.e2 * (self.nu32 + self.nu31 * self.nu12) / d,
        }
    }

    /// The seven stiffness components.
    pub fn stiffness(&self) -> Result<StiffnessComponents<T>> {
        let d = self.delta();
        if !(d > T::zero()) {
            return Err(Error::NonPositiveDelta(d.to_f64_lossy()));
        }
        Ok(self.stiffness_unchecked())
    }

    /// Active stress for a constrained strain.
    pub fn apply_stiffness(&self, e: &StrainComponents<T>) -> StressComponents<T> {
        self.stiffness_unchecked().apply(e)
    }

    /// Strain produced by an active stress (inverse of [`apply_stiffness`](Self::apply_stiffness)).
    pub fn apply_compliance(&self, s: &StressComponents<T>) -> StrainComponents<T> {
        let c12 = self.nu12 / self.e1;
        let c13 = self.nu13 / self.e1;
        let c23 = self.nu23 / self.e2;
        StrainComponents {
            e11: s.s11 / self.e1 - c12 * s.s22 - c13 * s.s33,
            e22: -c12 * s.s11 + s.s22 / self.e2 - c23 * s.s33,
            e33: -c13 * s.s11 - c23 * s.s22 + s.s33 / self.e3,
            e12: s.s12 / (lit::<T>(2.0) * self.g),
        }
    }

    /// Projection onto the Kirchhoff-Love moduli.
    pub fn kl_reduce(&self) -> KLMaterial<T> {
        KLMaterial { e1: self.e1, e2: self.e2, nu12: self.nu12, nu21: self.nu21, g: self.g }
    }
}

impl<T: Real> StiffnessComponents<T> {
    /// Symmetric matrix of the tensor on the orthonormal basis `(W₁, W₂, V₃, W₃)`.
    pub fn gram_matrix(&self) -> [[T; 4]; 4] {
        let z = T::zero();
        [
            [self.c1111, self.c1122, self.c1133, z],
            [self.c1122, self.c2222, self.c2233, z],
            [self.c1133, self.c2233, self.c3333, z],
            [z, z, z, lit::<T>(2.0) * self.c1212],
        ]
    }

    pub fn is_positive_definite(&self) -> bool {
        min_cholesky_pivot(&self.gram_matrix()) > T::zero()
    }

    pub fn apply(&self, e: &StrainComponents<T>) -> StressComponents<T> {
        StressComponents {
            s11: self.c1111 * e.e11 + self.c1122 * e.e22 + self.c1133 * e.e33,
            s22: self.c1122 * e.e11 + self.c2222 * e.e22 + self.c2233 * e.e33,
            s33: self.c1133 * e.e11 + self.c2233 * e.e22 + self.c3333 * e.e33,
            s12: lit::<T>(2.0) * self.c1212 * e.e12,
        }
    }

    /// Recovers the technical moduli.
    pub fn technical(&self) -> Result<OrthotropicMaterial<T>> {
        let StiffnessComponents { c1111, c2222, c3333, c1212, c1122, c1133, c2233 } = *self;
        let tol = T::tol(SINGULAR_TOL);
        let guarded = |a: T, b: T, what: &'static str| -> Result<T> {
            let d = a - b;
            if d.abs() <= tol * (a.abs() + b.abs()) {
                Err(Error::SingularStiffness(what))
            } else {
                Ok(d)
            }
        };
        let d1 = guarded(c2222 * c3333, c2233 * c2233, "C2222·C3333 − C2233²")?;
        let d2 = guarded(c1111 * c3333, c1133 * c1133, "C1111·C3333 − C1133²")?;
        let d3 = guarded(c1111 * c2222, c1122 * c1122, "C1111·C2222 − C1122²")?;
        let det = c1111 * c2222 * c3333 - c3333 * c1122 * c1122 - c2222 * c1133 * c1133
            - c1111 * c2233 * c2233
            + lit::<T>(2.0) * c1122 * c1133 * c2233;
        let n12 = c3333 * c1122 - c1133 * c2233;
        let n13 = c2222 * c1133 - c1122 * c2233;
        let n23 = c1111 * c2233 - c1122 * c1133;
        Ok(OrthotropicMaterial {
            e1: det / d1,
            e2: det / d2,
            e3: det / d3,
            nu12: n12 / d1,
            nu21: n12 / d2,
            nu13: n13 / d1,
            nu31: n13 / d3,
            nu23: n23 / d2,
            nu32: n23 / d3,
            g: c1212,
        })
    }
}

impl<T: Real> StrainComponents<T> {
    /// Frobenius inner product of the two symmetric tensors.
    pub fn dot(&self, other: &Self) -> T {
        self.e11 * other.e11
            + self.e22 * other.e22
            + self.e33 * other.e33
            + lit::<T>(2.0) * self.e12 * other.e12
    }

    /// Strains whose tensors are `W₁, W₂, V₃, W₃`.
    pub fn basis() -> [Self; 4] {
        let z = T::zero();
        let o = T::one();
        [
            Self { e11: o, e22: z, e33: z, e12: z },
            Self { e11: z, e22: o, e33: z, e12: z },
            Self { e11: z, e22: z, e33: o, e12: z },
            Self { e11: z, e22: z, e33: z, e12: T::FRAC_1_SQRT_2() },
        ]
    }
}

impl<T: Real> StressComponents<T> {
    pub fn dot_strain(&self, e: &StrainComponents<T>) -> T {
        self.s11 * e.e11 + self.s22 * e.e22 + self.s33 * e.e33 + lit::<T>(2.0) * self.s12 * e.e12
    }
}

impl<T: Real> KLMaterial<T> {
    pub fn new(e1: T, e2: T, nu12: T, nu21: T, g: T) -> Result<Self> {
        let m = Self { e1, e2, nu12, nu21, g };
        for (name, v) in [("E1", e1), ("E2", e2), ("nu12", nu12), ("nu21", nu21), ("G", g)] {
            if !v.is_finite() {
                return Err(Error::InvalidMaterial(format!("{name} is not finite")));
            }
        }
        if !(e1 > T::zero() && e2 > T::zero() && g > T::zero()) {
            return Err(Error::InvalidMaterial("E1, E2 and G must be positive".into()));
        }
        let r = reciprocity_residual(e1, nu21, e2, nu12);
        if r > T::tol(SYMMETRY_TOL) {
            return Err(Error::InvalidMaterial(format!(
                "reciprocity (1, 2) residual {:e}",
                r.to_f64_lossy()
            )));
        }
        let d = m.delta();
        if !(d > T::zero() && d <= T::one()) {
            return Err(Error::InvalidMaterial(format!(
                "Δ_KL = {:e} outside (0, 1]",
                d.to_f64_lossy()
            )));
        }
        Ok(m)
    }

    /// Isotropic Kirchhoff-Love material.
    pub fn isotropic(e: T, nu: T) -> Result<Self> {
        Self::new(e, e, nu, nu, e / (lit::<T>(2.0) * (T::one() + nu)))
    }

    /// `Δ_KL = 1 − ν₁₂ν₂₁`.
    pub fn delta(&self) -> T {
        T::one() - self.nu12 * self.nu21
    }

    pub fn eta(&self) -> T {
        self.e2 / self.e1
    }

    /// Stiffness with the thickness direction removed (`C·33` entries vanish,
    /// the normal stress being reactive).
    pub fn stiffness(&self) -> StiffnessComponents<T> {
        let d = self.delta();
        StiffnessComponents {
            c1111: self.e1 / d,
            c2222: self.e2 / d,
            c3333: T::zero(),
            c1212: self.g,
            c1122: self.e1 * self.nu21 / d,
            c1133: T::zero(),
            c2233: T::zero(),
        }
    }
}

/// Constitutive data the shell solvers need, common to both theories.
pub trait ShellMaterial<T: Real> {
    fn theory(&self) -> Theory;
    /// Stiffness components; for Kirchhoff-Love materials the `·33` entries are zero.
    fn shell_stiffness(&self) -> StiffnessComponents<T>;
    fn shell_delta(&self) -> T;
    fn young1(&self) -> T;
    fn young2(&self) -> T;
    fn shear(&self) -> T;
}

impl<T: Real> ShellMaterial<T> for OrthotropicMaterial<T> {
    fn theory(&self) -> Theory {
        Theory::Full
    }
    fn shell_stiffness(&self) -> StiffnessComponents<T> {
        self.stiffness_unchecked()
    }
    fn shell_delta(&self) -> T {
        self.delta()
    }
    fn young1(&self) -> T {
        self.e1
    }
    fn young2(&self) -> T {
        self.e2
    }
    fn shear(&self) -> T {
        self.g
    }
}

impl<T: Real> ShellMaterial<T> for KLMaterial<T> {
    fn theory(&self) -> Theory {
        Theory::KirchhoffLove
    }
    fn shell_stiffness(&self) -> StiffnessComponents<T> {
        self.stiffness()
    }
    fn shell_delta(&self) -> T {
        self.delta()
    }
    fn young1(&self) -> T {
        self.e1
    }
    fn young2(&self) -> T {
        self.e2
    }
    fn shear(&self) -> T {
        self.g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m_star() -> OrthotropicMaterial<f64> {
        OrthotropicMaterial::new(1000.0, 800.0, 600.0, 0.2, 0.16, 0.1, 0.06, 0.1, 0.075, 400.0)
            .unwrap()
    }

    fn raw(e1: f64, e2: f64, nu12: f64, nu21: f64) -> OrthotropicMaterial<f64> {
        OrthotropicMaterial {
            e1,
            e2,
            e3: 600.0,
            nu12,
            nu21,
            nu13: 0.0,
            nu31: 0.0,
            nu23: 0.0,
            nu32: 0.0,
            g: 400.0,
        }
    }

    #[test]
    fn reciprocity_exact_pair_is_clean() {
        let r = raw(1000.0, 800.0, 0.2, 0.16).validate();
        assert!(r.is_valid(), "{r}");
        assert_eq!(r.symmetry_residual((1, 2)), None);
    }

    #[test]
    fn reciprocity_violation_is_reported_with_residual() {
        let r = raw(1000.0, 800.0, 0.2, 0.15).validate();
        let res = r.symmetry_residual((1, 2)).expect("flagged");
        let expected = (1.25f64 - 0.2 / 0.15).abs() / (0.2 / 0.15);
        assert!((res - expected).abs() < 1e-14, "{res} vs {expected}");
    }

    #[test]
    fn validate_reports_nonfinite_and_nonpositive() {
        let mut m = m_star();
        m.e2 = f64::NAN;
        assert!(matches!(m.validate().violations[0], Violation::NonFinite { field: "E2" }));
        let mut m = m_star();
        m.g = -1.0;
        assert!(m
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonPositiveModulus { field: "G", .. })));
    }

    #[test]
    fn indefinite_material_is_rejected() {
        // Δ = 0.136 > 0, yet the (1,2) minor 1 - ν12ν21 is negative
        let m = OrthotropicMaterial {
            e1: 1.0,
            e2: 1.0,
            e3: 1.0,
            nu12: 1.2,
            nu21: 1.2,
            nu13: 1.2,
            nu31: 1.2,
            nu23: -1.2,
            nu32: -1.2,
            g: 1.0,
        };
        assert!(m.delta() > 0.0);
        let r = m.validate();
        assert!(matches!(r.violations[..], [Violation::NotPositiveDefinite { .. }]), "{r}");
    }

    #[test]
    fn delta_examples() {
        let m = raw(1000.0, 800.0, 0.0, 0.0);
        assert_eq!(m.delta(), 1.0);
        assert!((m_star().delta() - 0.9521).abs() < 1e-15);
        let m = raw(1000.0, 1000.0, 0.5, 0.5);
        assert_eq!(m.delta(), 0.75);
    }

    #[test]
    fn stiffness_without_poisson_coupling_is_diagonal() {
        let m = OrthotropicMaterial::from_primary(1000.0, 800.0, 600.0, 0.0, 0.0, 0.0, 400.0)
            .unwrap();
        let c = m.stiffness().unwrap();
        assert_eq!((c.c1111, c.c2222, c.c3333, c.c1212), (1000.0, 800.0, 600.0, 400.0));
        assert_eq!((c.c1122, c.c1133, c.c2233), (0.0, 0.0, 0.0));
    }

    #[test]
    fn stiffness_of_m_star() {
        let c = m_star().stiffness().unwrap();
        assert!((c.c1111 - 1000.0 * 0.9925 / 0.9521).abs() < 1e-11);
        // frozen from an independent evaluation
        assert!((c.c2233 - 73.101_564_961_663_68).abs() < 1e-10);
        assert!((c.c1133 - 75.622_308_581_031_4).abs() < 1e-10);
    }

    #[test]
    fn nonpositive_delta_is_an_error() {
        let m = raw(1.0, 1.0, 1.0, 1.0);
        assert!(matches!(m.stiffness(), Err(Error::NonPositiveDelta(_))));
    }

    #[test]
    fn diagonal_stiffness_gives_zero_poisson_ratios() {
        let c = StiffnessComponents {
            c1111: 3.0,
            c2222: 2.0,
            c3333: 1.0,
            c1212: 0.5,
            c1122: 0.0,
            c1133: 0.0,
            c2233: 0.0,
        };
        let m = c.technical().unwrap();
        assert_eq!((m.e1, m.e2, m.e3, m.g), (3.0, 2.0, 1.0, 0.5));
        assert_eq!([m.nu12, m.nu21, m.nu13, m.nu31, m.nu23, m.nu32], [0.0; 6]);
    }

    #[test]
    fn singular_stiffness_is_detected() {
        let c = StiffnessComponents {
            c1111: 1.0,
            c2222: 1.0,
            c3333: 1.0,
            c1212: 1.0,
            c1122: 0.0,
            c1133: 0.0,
            c2233: 1.0,
        };
        assert!(matches!(c.technical(), Err(Error::SingularStiffness(_))));
    }

    #[test]
    fn round_trip_m_star() {
        let m = m_star();
        let back = m.stiffness().unwrap().technical().unwrap();
        for ((_, a), (_, b)) in m.fields().iter().zip(back.fields().iter()) {
            assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn pure_shear_stress() {
        let e = StrainComponents { e12: 0.01, ..Default::default() };
        let s = m_star().apply_stiffness(&e);
        assert!((s.s12 - 8.0).abs() < 1e-14);
        assert_eq!((s.s11, s.s22, s.s33), (0.0, 0.0, 0.0));
        assert_eq!(m_star().apply_stiffness(&StrainComponents::default()), StressComponents::default());
    }

    #[test]
    fn uniaxial_axial_strain_response() {
        let m = m_star();
        let s = m.apply_stiffness(&StrainComponents { e11: 1e-3, ..Default::default() });
        let expected = m.e1 * (1.0 - m.nu23 * m.nu32) / m.delta() * 1e-3;
        assert!((s.s11 - expected).abs() < 1e-15);
        // cross-check through the Gram matrix
        let g = m.stiffness().unwrap().gram_matrix();
        assert!((s.s22 - g[1][0] * 1e-3).abs() < 1e-15);
        assert!((s.s33 - g[2][0] * 1e-3).abs() < 1e-15);
    }

    #[test]
    fn uniaxial_compliance() {
        let m = m_star();
        let sigma = 2.5;
        let e = m.apply_compliance(&StressComponents { s11: sigma, ..Default::default() });
        assert!((e.e11 - sigma / m.e1).abs() < 1e-17);
        assert!((e.e22 + m.nu12 * sigma / m.e1).abs() < 1e-17);
        assert!((e.e33 + m.nu13 * sigma / m.e1).abs() < 1e-17);
        assert_eq!(e.e12, 0.0);
        assert_eq!(m.apply_compliance(&StressComponents::default()), StrainComponents::default());
    }

    #[test]
    fn compliance_inverts_stiffness_on_basis() {
        let m = m_star();
        for b in StrainComponents::basis() {
            let back = m.apply_compliance(&m.apply_stiffness(&b));
            for (x, y) in [(back.e11, b.e11), (back.e22, b.e22), (back.e33, b.e33), (back.e12, b.e12)] {
                assert!((x - y).abs() < 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn isotropic_matches_hooke_on_constraint_space() {
        let (e, nu) = (210.0f64, 0.3);
        let m = OrthotropicMaterial::isotropic(e, nu).unwrap();
        let lame = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
        let mu = e / (2.0 * (1.0 + nu));
        let c = m.stiffness().unwrap();
        for (got, want) in [
            (c.c1111, lame + 2.0 * mu),
            (c.c2222, lame + 2.0 * mu),
            (c.c3333, lame + 2.0 * mu),
            (c.c1122, lame),
            (c.c1133, lame),
            (c.c2233, lame),
            (c.c1212, mu),
        ] {
            assert!((got - want).abs() < 1e-10 * want.abs(), "{got} vs {want}");
        }
        // S = λ tr(E) I + 2μ E on each basis strain
        for b in StrainComponents::basis() {
            let s = m.apply_stiffness(&b);
            let tr = b.e11 + b.e22 + b.e33;
            assert!((s.s11 - (lame * tr + 2.0 * mu * b.e11)).abs() < 1e-10);
            assert!((s.s33 - (lame * tr + 2.0 * mu * b.e33)).abs() < 1e-10);
            assert!((s.s12 - 2.0 * mu * b.e12).abs() < 1e-10);
        }
    }

    #[test]
    fn measured_moduli_are_resymmetrized() {
        let mut noisy = m_star();
        noisy.nu21 *= 1.0 + 1e-7;
        assert!(OrthotropicMaterial::new(
            noisy.e1, noisy.e2, noisy.e3, noisy.nu12, noisy.nu21, noisy.nu13, noisy.nu31,
            noisy.nu23, noisy.nu32, noisy.g
        )
        .is_err());
        let fixed = OrthotropicMaterial::from_measured(noisy, 1e-6).unwrap();
        assert_eq!(fixed.nu21, 0.2 * 800.0 / 1000.0);
        assert!(OrthotropicMaterial::from_measured(noisy, 1e-9).is_err());
    }

    #[test]
    fn kl_projection() {
        let k = m_star().kl_reduce();
        assert_eq!(k, KLMaterial { e1: 1000.0, e2: 800.0, nu12: 0.2, nu21: 0.16, g: 400.0 });
        assert_eq!(k.e1 * k.nu21, k.e2 * k.nu12);
        let iso = OrthotropicMaterial::isotropic(100.0, 0.25).unwrap().kl_reduce();
        assert_eq!(iso, KLMaterial::isotropic(100.0, 0.25).unwrap());
        assert!((k.delta() - 0.968).abs() < 1e-15);
    }

    #[test]
    fn json_uses_technical_names() {
        let s = serde_json::to_value(m_star()).unwrap();
        let keys: Vec<&str> = s.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["E1", "E2", "E3", "G", "nu12", "nu13", "nu21", "nu23", "nu31", "nu32"]);
        let back: OrthotropicMaterial<f64> = serde_json::from_value(s).unwrap();
        assert_eq!(back, m_star());
    }

    #[test]
    fn works_in_single_precision() {
        let m = OrthotropicMaterial::<f32>::from_primary(1000.0, 800.0, 600.0, 0.2, 0.1, 0.1, 400.0)
            .unwrap();
        let back = m.stiffness().unwrap().technical().unwrap();
        assert!((back.e1 - m.e1).abs() < 1e-3);
    }
}
