use std::io;

use serde::Serialize;

use super::banded::BandMatrix;
use crate::bvp::{LoadCase, LoadKind};
use crate::error::{Error, Result};
use crate::io::format_f64;
use crate::material::{ShellMaterial, Theory};
use crate::scalar::{lit, Real};
use crate::shell_model::{resultants_by_quadrature, AxisymmetricState, Field, ShellGeometry};

/// Thickness quadrature order used to extract the resultant functionals.
const QUADRATURE_ORDER: usize = 64;

/// Finite-difference solution on the uniform grid `x_j = -l + j h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSolution<T> {
    pub kind: LoadKind,
    pub n: usize,
    pub x: Vec<T>,
    pub w: Vec<T>,
    pub a1: Vec<T>,
    pub a2: Vec<T>,
    pub gamma: T,
    /// Normalized defect of the discrete integral relation after the solve.
    pub integral_residual: T,
}

impl<T: Real> GridSolution<T> {
    /// Tabulated state; derivatives come from local interpolation.
    pub fn state(&self) -> Result<AxisymmetricState<T>> {
        use crate::shell_model::SampledField;
        Ok(AxisymmetricState {
            a1: Field::Sampled(SampledField::new(self.x.clone(), self.a1.clone())?),
            a2: Field::Sampled(SampledField::new(self.x.clone(), self.a2.clone())?),
            w: Field::Sampled(SampledField::new(self.x.clone(), self.w.clone())?),
            gamma: self.gamma,
        })
    }

    /// Writes `x1, a1, a2, w, gamma` with a header row.
    pub fn write_csv<W: io::Write>(&self, out: W) -> io::Result<()> {
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        wtr.write_record(["x1", "a1", "a2", "w", "gamma"])?;
        for j in 0..self.n {
            let rec = [self.x[j], self.a1[j], self.a2[j], self.w[j], self.gamma];
            wtr.write_record(rec.iter().map(|v| format_f64(v.to_f64_lossy(), 17)))?;
        }
        wtr.flush()
    }
}

/// `X = c0 + cw w + cd w'' + cg γ` after `a1'` has been eliminated.
#[derive(Clone, Copy, Debug)]
struct Reduced<T> {
    c0: T,
    cw: T,
    cd: T,
    cg: T,
}

struct Functionals<T> {
    m11: Reduced<T>,
    f22: Reduced<T>,
    integrand: Reduced<T>,
    /// `a1' = axial.c0 + ...`
    axial: Reduced<T>,
}

/// Extracts the resultants as linear functionals of `(a1', w, w'', γ)` by
/// quadrature on unit states, then eliminates `a1'` through `F11 = p`.
fn functionals<T: Real, M: ShellMaterial<T>>(g: &ShellGeometry<T>, m: &M, p: T) -> Functionals<T> {
    let zero = AxisymmetricState::<T>::zero();
    let unit = [
        AxisymmetricState { a1: Field::linear(T::one()), ..zero.clone() },
        AxisymmetricState { w: Field::constant(T::one()), ..zero.clone() },
        AxisymmetricState { w: Field::Polynomial(vec![T::zero(), T::zero(), lit(0.5)]), ..zero.clone() },
        AxisymmetricState { gamma: T::one(), ..zero.clone() },
    ];
    let q: Vec<_> = unit
        .iter()
        .map(|s| resultants_by_quadrature(g, m, s, T::zero(), QUADRATURE_ORDER))
        .collect();
    let rho = g.rho_o;
    let f11 = [q[0].f11, q[1].f11, q[2].f11, q[3].f11];
    let reduce = |x: [T; 4]| {
        let r = x[0] / f11[0];
        Reduced { c0: r * p, cw: x[1] - r * f11[1], cd: x[2] - r * f11[2], cg: x[3] - r * f11[3] }
    };
    let pick = |f: &dyn Fn(&crate::shell_model::ResultantSet<T>) -> T| [f(&q[0]), f(&q[1]), f(&q[2]), f(&q[3])];
    let inv = T::one() / f11[0];
    Functionals {
        m11: reduce(pick(&|r| r.m11)),
        f22: reduce(pick(&|r| r.f22)),
        integrand: reduce(pick(&|r| r.m22 / rho + r.f33)),
        axial: Reduced { c0: p * inv, cw: -f11[1] * inv, cd: -f11[2] * inv, cg: -f11[3] * inv },
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < 201 || n % 2 == 0 {
        return Err(Error::InvalidGrid(format!("grid size must be odd and at least 201, got {n}")));
    }
    Ok(())
}

/// Second-order finite-difference solution of the load case on `n` nodes.
///
/// The fourth-order radial equation `M11'' - F22/ρₒ + ϖ = 0` is written in
/// mixed form with `u = w''` as a second unknown, so every stencil is a
/// three-point central difference and the conditioning stays `O(h⁻²)`. Two
/// ghost nodes per rim carry the rim conditions on `M11` and `M11'`, and the
/// integral relation enters as one trapezoid-rule row bordering the banded
/// system with `γ` as the extra unknown (dropped for Kirchhoff-Love
/// materials). Torsion is solved on the
/// half shell and mirrored as an odd function.
pub fn fd_solve<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    load: LoadCase<T>,
    n: usize,
) -> Result<GridSolution<T>> {
    check_grid(n)?;
    g.check()?;
    let two = lit::<T>(2.0);
    let h = two * g.l / lit((n - 1) as f64);
    let x: Vec<T> = (0..n).map(|j| if j == n - 1 { g.l } else { -g.l + h * lit(j as f64) }).collect();
    let v = load.magnitude;
    if load.kind == LoadKind::Torsion {
        return torsion(g, m, v, n, h, x);
    }
    let pick = |k: LoadKind| if load.kind == k { v } else { T::zero() };
    let (p, q, mo) = (pick(LoadKind::Traction), pick(LoadKind::Pressure), pick(LoadKind::RimFlexure));
    let fun = functionals(g, m, p);
    let rho = g.rho_o;
    let full = m.theory() == Theory::Full;

    // unknowns interleaved as (w_j, u_j), u = w'', for j = -1..=n
    let size = 2 * n + 4;
    let wi = |j: i64| (2 * (j + 1)) as usize;
    let ui = |j: i64| (2 * (j + 1) + 1) as usize;
    let mut a = BandMatrix::<T>::zeros(size, 5, 4);
    let mut b = vec![T::zero(); size];
    let mut u = vec![T::zero(); size];
    let h2 = h * h;
    let mc = fun.m11;
    // adds s·(M11 at node j without its constant and γ parts) to `row`
    let m11 = |a: &mut BandMatrix<T>, row: usize, j: i64, s: T| {
        a.add(row, wi(j), s * mc.cw);
        a.add(row, ui(j), s * mc.cd);
    };
    let last = n as i64 - 1;
    for (row, j) in [(0usize, 0i64), (2 * n + 2, last)] {
        m11(&mut a, row, j, T::one());
        b[row] = mo - mc.c0;
        u[row] = mc.cg;
        m11(&mut a, row + 1, j + 1, T::one());
        m11(&mut a, row + 1, j - 1, -T::one());
    }
    let fc = fun.f22;
    for j in 0..n as i64 {
        // u_j h² = w_{j+1} - 2 w_j + w_{j-1}
        let row = wi(j);
        a.add(row, ui(j), h2);
        a.add(row, wi(j - 1), -T::one());
        a.add(row, wi(j), two);
        a.add(row, wi(j + 1), -T::one());
        // h² (M11'' - F22/ρ + ϖ) = 0
        let row = ui(j);
        m11(&mut a, row, j + 1, T::one());
        m11(&mut a, row, j, -two);
        m11(&mut a, row, j - 1, T::one());
        a.add(row, wi(j), -h2 * fc.cw / rho);
        a.add(row, ui(j), -h2 * fc.cd / rho);
        b[row] = h2 * (fc.c0 / rho - q);
        u[row] = -h2 * fc.cg / rho;
    }

    // integral row r·(w, u) + s γ = c
    let ic = fun.integrand;
    let mut r = vec![T::zero(); size];
    for j in 0..n as i64 {
        let wt = if j == 0 || j == last { h / two } else { h };
        r[wi(j)] += wt * ic.cw;
        r[ui(j)] += wt * ic.cd;
    }
    let span = two * g.l;
    let s_g = span * ic.cg;
    let c = -span * ic.c0;

    let mut rhs = if full { vec![b, u] } else { vec![b] };
    a.solve_in_place(&mut rhs)?;
    let (sol, gamma, integral_residual) = if full {
        let (x1, x2) = (&rhs[0], &rhs[1]);
        let rx1: T = r.iter().zip(x1).map(|(p, q)| *p * *q).sum();
        let rx2: T = r.iter().zip(x2).map(|(p, q)| *p * *q).sum();
        let den = s_g - rx2;
        let scale = s_g.abs() + r.iter().zip(x2).map(|(p, q)| (*p * *q).abs()).sum::<T>();
        if !(den.abs() > T::epsilon() * scale) {
            return Err(Error::SingularSystem { row: size, pivot: den.to_f64_lossy() });
        }
        let gamma = (c - rx1) / den;
        let w: Vec<T> = x1.iter().zip(x2).map(|(p, q)| *p - gamma * *q).collect();
        let lhs: T = r.iter().zip(&w).map(|(p, q)| *p * *q).sum::<T>() + s_g * gamma;
        let mag = r.iter().zip(&w).map(|(p, q)| (*p * *q).abs()).sum::<T>() + (s_g * gamma).abs() + c.abs();
        let res = if mag > T::zero() { (lhs - c).abs() / mag } else { T::zero() };
        (w, gamma, res)
    } else {
        (rhs.swap_remove(0), T::zero(), T::zero())
    };

    let w: Vec<T> = (0..n as i64).map(|j| sol[wi(j)]).collect();
    let ac = fun.axial;
    let da1: Vec<T> = (0..n as i64)
        .map(|j| ac.c0 + ac.cw * sol[wi(j)] + ac.cd * sol[ui(j)] + ac.cg * gamma)
        .collect();
    let a1 = integrate_from_center(&da1, h);
    Ok(GridSolution {
        kind: load.kind,
        n,
        x,
        w,
        a1,
        a2: vec![T::zero(); n],
        gamma,
        integral_residual,
    })
}

/// Cumulative trapezoid rule, anchored at zero on the middle node.
fn integrate_from_center<T: Real>(d: &[T], h: T) -> Vec<T> {
    let n = d.len();
    let c = n / 2;
    let half = h / lit(2.0);
    let mut out = vec![T::zero(); n];
    for j in (c + 1)..n {
        out[j] = out[j - 1] + half * (d[j - 1] + d[j]);
    }
    for j in (0..c).rev() {
        out[j] = out[j + 1] - half * (d[j + 1] + d[j]);
    }
    out
}

fn torsion<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    t: T,
    n: usize,
    h: T,
    x: Vec<T>,
) -> Result<GridSolution<T>> {
    let zero = AxisymmetricState::<T>::zero();
    let twist = AxisymmetricState { a2: Field::linear(T::one()), ..zero };
    let q = resultants_by_quadrature(g, m, &twist, T::zero(), QUADRATURE_ORDER);
    let r_t = q.f21 + q.m21 / g.rho_o;
    // nodes 0..half on [0, l] plus one ghost
    let half = n.div_ceil(2);
    let size = half + 1;
    let mut a = BandMatrix::<T>::zeros(size, 2, 1);
    let mut b = vec![T::zero(); size];
    a.add(0, 0, T::one());
    for j in 1..half {
        a.add(j, j - 1, T::one());
        a.add(j, j, -lit::<T>(2.0));
        a.add(j, j + 1, T::one());
    }
    a.add(half, half, T::one());
    a.add(half, half - 2, -T::one());
    b[half] = lit::<T>(2.0) * h * t / r_t;
    let mut rhs = vec![b];
    a.solve_in_place(&mut rhs)?;
    let c = n / 2;
    let mut a2 = vec![T::zero(); n];
    for j in 0..half {
        a2[c + j] = rhs[0][j];
        a2[c - j] = -rhs[0][j];
    }
    Ok(GridSolution {
        kind: LoadKind::Torsion,
        n,
        x,
        w: vec![T::zero(); n],
        a1: vec![T::zero(); n],
        a2,
        gamma: T::zero(),
        integral_residual: T::zero(),
    })
}

/// Richardson extrapolation `(4 u_{2n-1} - u_n)/3` of two second-order
/// solves, reported on the `n`-node grid.
pub fn fd_solve_extrapolated<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    load: LoadCase<T>,
    n: usize,
) -> Result<GridSolution<T>> {
    let coarse = fd_solve(g, m, load, n)?;
    let fine = fd_solve(g, m, load, 2 * n - 1)?;
    let three = lit::<T>(3.0);
    let four = lit::<T>(4.0);
    let mix = |c: &[T], f: &[T]| -> Vec<T> { (0..c.len()).map(|i| (four * f[2 * i] - c[i]) / three).collect() };
    Ok(GridSolution {
        kind: coarse.kind,
        n,
        w: mix(&coarse.w, &fine.w),
        a1: mix(&coarse.a1, &fine.a1),
        a2: mix(&coarse.a2, &fine.a2),
        gamma: (four * fine.gamma - coarse.gamma) / three,
        integral_residual: coarse.integral_residual.max(fine.integral_residual),
        x: coarse.x,
    })
}

/// Observed order of the scheme from three nested grids.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ConvergenceOrder {
    /// The discrete solution is exact up to rounding on every grid.
    Exact,
    Observed(f64),
}

impl ConvergenceOrder {
    pub fn value(&self) -> Option<f64> {
        match self {
            ConvergenceOrder::Exact => None,
            ConvergenceOrder::Observed(p) => Some(*p),
        }
    }
}

/// Solves on `n0`, `2n0 - 1` and `4n0 - 3` nodes and returns
/// `log₂(d₁/d₂)`, where `dᵢ` are the successive L∞ differences measured on
/// the coarse nodes (of `w`, or of `a2` for torsion).
pub fn convergence_order<T: Real, M: ShellMaterial<T>>(
    g: &ShellGeometry<T>,
    m: &M,
    load: LoadCase<T>,
    n0: usize,
) -> Result<ConvergenceOrder> {
    let s: Vec<GridSolution<T>> = [n0, 2 * n0 - 1, 4 * n0 - 3]
        .into_iter()
        .map(|n| fd_solve(g, m, load, n))
        .collect::<Result<_>>()?;
    let field = |s: &GridSolution<T>| if load.kind == LoadKind::Torsion { s.a2.clone() } else { s.w.clone() };
    let (u0, u1, u2) = (field(&s[0]), field(&s[1]), field(&s[2]));
    let mut d1 = T::zero();
    let mut d2 = T::zero();
    let mut scale = T::zero();
    for i in 0..n0 {
        d1 = d1.max((u1[2 * i] - u0[i]).abs());
        d2 = d2.max((u2[4 * i] - u1[2 * i]).abs());
        scale = scale.max(u2[4 * i].abs());
    }
    // the discrete Laplacian amplifies rounding by about n²
    let finest = lit::<T>((4 * n0 - 3) as f64);
    let floor = lit::<T>(16.0) * finest * finest * T::epsilon() * scale;
    if d1 <= floor && d2 <= floor {
        return Ok(ConvergenceOrder::Exact);
    }
    Ok(ConvergenceOrder::Observed((d1 / d2).log2().to_f64_lossy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvp::{solve, solve_torsion};
    use crate::material::OrthotropicMaterial;

    fn m_star() -> OrthotropicMaterial<f64> {
        OrthotropicMaterial::new(1000.0, 800.0, 600.0, 0.2, 0.16, 0.1, 0.06, 0.1, 0.075, 400.0)
            .unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        let g = ShellGeometry::new(1.0, 0.05, 2.0).unwrap();
        let load = LoadCase::new(LoadKind::Traction, 1.0).unwrap();
        assert!(matches!(fd_solve(&g, &m_star(), load, 200), Err(Error::InvalidGrid(_))));
        assert!(matches!(fd_solve(&g, &m_star(), load, 101), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn zero_load_gives_zero_grid() {
        let g = ShellGeometry::new(1.0, 0.05, 2.0).unwrap();
        for kind in LoadKind::ALL {
            let s = fd_solve(&g, &m_star(), LoadCase::new(kind, 0.0).unwrap(), 201).unwrap();
            assert!(s.w.iter().chain(&s.a1).chain(&s.a2).all(|v| *v == 0.0));
            assert_eq!(s.gamma, 0.0);
        }
    }

    #[test]
    fn torsion_is_exact() {
        let g = ShellGeometry::new(1.0, 0.05, 2.0).unwrap();
        let s = fd_solve(&g, &m_star(), LoadCase::new(LoadKind::Torsion, 3.0).unwrap(), 201).unwrap();
        let exact = solve_torsion(&g, &m_star(), 3.0);
        for (x, a2) in s.x.iter().zip(&s.a2) {
            assert!((a2 - exact.a2_slope * x).abs() < 1e-13);
        }
        let order = convergence_order(&g, &m_star(), LoadCase::new(LoadKind::Torsion, 3.0).unwrap(), 201).unwrap();
        assert_eq!(order, ConvergenceOrder::Exact);
    }

    #[test]
    fn traction_is_second_order_and_close_to_closed_form() {
        let g = ShellGeometry::new(1.0, 0.05, 2.0).unwrap();
        let load = LoadCase::new(LoadKind::Traction, 1.0).unwrap();
        let p = convergence_order(&g, &m_star(), load, 1025).unwrap().value().unwrap();
        assert!((p - 2.0).abs() < 0.1, "order {p}");
        let fd = fd_solve(&g, &m_star(), load, 801).unwrap();
        assert!(fd.integral_residual < 1e-10);
        let cf = solve(&g, &m_star(), load).unwrap();
        let cf = cf.as_radial().unwrap();
        let scale = fd.w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let dev = fd.x.iter().zip(&fd.w).map(|(x, w)| (cf.w(*x) - w).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-4 * scale, "{dev}");
        assert!((fd.gamma - cf.gamma).abs() < 1e-4 * cf.gamma.abs());
    }

    #[test]
    fn csv_export() {
        let g = ShellGeometry::new(1.0, 0.05, 2.0).unwrap();
        let s = fd_solve(&g, &m_star(), LoadCase::new(LoadKind::Pressure, 1.0).unwrap(), 201).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 202);
        assert!(text.starts_with("x1,a1,a2,w,gamma\n"));
        assert!(s.state().is_ok());
    }
}
