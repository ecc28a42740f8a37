//! Characteristic maps of the scalar conservation law
//! `y_t + f₁(y)_{x₁} + f₂(y)_{x₂} = 0`, `y(0, x) = φ(x)`.
//!
//! Along characteristics `x_i(u, t) = u_i + t f_i′(φ(u))`, so the time-t map
//! `g_t` has Jacobian `I + tC` with the rank-one shape operator
//! `c_ij = f_i″(φ(u)) φ_{u_j}(u)`. Its discriminant is `1 + t·trace C`, and
//! `g_t` first becomes singular at `t(u) = −1/trace C(u)` where trace C < 0.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::{classify, ClassificationReport, PlaneMapGerm, SingularityClass};
use crate::jet::{j1_compose_j2, Axis, Jet1, Jet2, DEFAULT_JET1_ORDER, DEFAULT_JET2_ORDER};
use crate::locus::{
    critical_value_image, find_special_points, sample_singular_set, BoxDomain, CurveSample, SpecialPoint,
};
use crate::map::PlaneMap;
use crate::newton::newton2;
use crate::poly::PolySpec;
use crate::tolerance::{ToleranceConfig, DEDUP_RADIUS};

#[derive(Deserialize)]
struct RawProblem {
    f1: PolySpec,
    f2: PolySpec,
    phi: PolySpec,
}

/// Flux functions `f₁, f₂` (univariate) and initial data `φ` (bivariate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem")]
pub struct ConsLawProblem {
    pub f1: PolySpec,
    pub f2: PolySpec,
    pub phi: PolySpec,
}

impl TryFrom<RawProblem> for ConsLawProblem {
    type Error = Error;

    fn try_from(raw: RawProblem) -> Result<Self> {
        ConsLawProblem::new(raw.f1, raw.f2, raw.phi)
    }
}

/// Derivatives of the data at one source point.
struct LocalData {
    /// `f_ℓ^{(k)}(φ(u))` for `k = 0..=4`.
    f: [[f64; 5]; 2],
    /// `φ` expanded at `u`.
    phi: Jet2,
}

impl LocalData {
    fn phi_d(&self, i: usize, j: usize) -> f64 {
        self.phi.derivative(i, j)
    }
}

impl ConsLawProblem {
    pub fn new(f1: PolySpec, f2: PolySpec, phi: PolySpec) -> Result<Self> {
        if f1.vars() != 1 || f2.vars() != 1 {
            return Err(Error::InvalidSpec("f1 and f2 must be univariate".into()));
        }
        if phi.vars() != 2 {
            return Err(Error::InvalidSpec("phi must be bivariate".into()));
        }
        Ok(Self { f1, f2, phi })
    }

    fn fluxes(&self) -> [&PolySpec; 2] {
        [&self.f1, &self.f2]
    }

    fn local(&self, u: [f64; 2]) -> LocalData {
        let phi = self.phi.to_jet2(u, DEFAULT_JET2_ORDER).expect("phi is bivariate");
        let y = phi.value();
        let f = self.fluxes().map(|fl| {
            let mut d = [0.0; 5];
            for (k, slot) in d.iter_mut().enumerate() {
                *slot = fl.derivative1(k as u32, y);
            }
            d
        });
        LocalData { f, phi }
    }

    /// `f_ℓ` expanded at `y`.
    fn flux_jet(&self, l: usize, y: f64) -> Jet1 {
        self.fluxes()[l].to_jet1(y, DEFAULT_JET1_ORDER).expect("fluxes are univariate")
    }
}

/// The time-`t` characteristic map `g_t(u) = (u₁ + t f₁′(φ(u)), u₂ + t f₂′(φ(u)))`.
#[derive(Debug, Clone)]
pub struct CharacteristicMap {
    pub problem: ConsLawProblem,
    pub t: f64,
    flux_derivs: [PolySpec; 2],
}

impl CharacteristicMap {
    pub fn new(problem: &ConsLawProblem, t: f64) -> Self {
        let flux_derivs =
            [problem.f1.differentiate1().expect("univariate"), problem.f2.differentiate1().expect("univariate")];
        Self { problem: problem.clone(), t, flux_derivs }
    }
}

impl PlaneMap for CharacteristicMap {
    fn eval(&self, u: [f64; 2]) -> [f64; 2] {
        let y = self.problem.phi.eval2(u);
        [u[0] + self.t * self.flux_derivs[0].eval1(y), u[1] + self.t * self.flux_derivs[1].eval1(y)]
    }

    fn jacobian(&self, u: [f64; 2]) -> [[f64; 2]; 2] {
        let c = shape_operator(&self.problem, u).c;
        [[1.0 + self.t * c[0][0], self.t * c[0][1]], [self.t * c[1][0], 1.0 + self.t * c[1][1]]]
    }

    fn germ_at(&self, u: [f64; 2]) -> PlaneMapGerm {
        characteristic_map(&self.problem, self.t, u)
    }
}

/// Germ of `g_t` at `base`, built by composing jets of `f_i′` with the jet of `φ`.
pub fn characteristic_map(prob: &ConsLawProblem, t: f64, base: [f64; 2]) -> PlaneMapGerm {
    let phi = prob.phi.to_jet2(base, DEFAULT_JET2_ORDER).expect("phi is bivariate");
    let y = phi.value();
    let comps = [Axis::U1, Axis::U2].map(|axis| {
        let l = axis as usize;
        let speed = prob.flux_jet(l, y).derivative().expect("Jet1 order ≥ 1");
        let transported = j1_compose_j2(&speed, &phi).expect("outer expanded at φ(base)");
        Jet2::variable(base, axis, DEFAULT_JET2_ORDER).add(&transported.scale(t)).expect("same base and order")
    });
    let [p, q] = comps;
    PlaneMapGerm::new(p, q).expect("order 4 components")
}

/// `C = (f_i″(φ(u)) φ_{u_j}(u))`; rank at most one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeOperator {
    pub c: [[f64; 2]; 2],
    pub trace: f64,
}

impl ShapeOperator {
    pub fn det(&self) -> f64 {
        self.c[0][0] * self.c[1][1] - self.c[0][1] * self.c[1][0]
    }

    /// Roots of `μ(μ − trace C)`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        [0.0, self.trace]
    }

    fn scale(&self) -> f64 {
        self.c.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn shape_operator(prob: &ConsLawProblem, u: [f64; 2]) -> ShapeOperator {
    let y = prob.phi.eval2(u);
    let grad = prob.phi.gradient2(u);
    let f2nd = prob.fluxes().map(|f| f.derivative1(2, y));
    let c = [[f2nd[0] * grad[0], f2nd[0] * grad[1]], [f2nd[1] * grad[0], f2nd[1] * grad[1]]];
    ShapeOperator { c, trace: c[0][0] + c[1][1] }
}

/// `−1/trace C(u)` when trace C is negative beyond tolerance; `None` when
/// characteristics through `u` never focus at a positive time.
pub fn singular_time_field(prob: &ConsLawProblem, u: [f64; 2], tol: &ToleranceConfig) -> Option<f64> {
    let op = shape_operator(prob, u);
    (op.trace < -tol.zero_rel * op.scale()).then(|| -1.0 / op.trace)
}

/// `Ξ₁ = (1/t)_{u₁}`, `Ξ₂ = (1/t)_{u₂}`, `Ξ₃ = det Hess(1/t)`, with `1/t = −trace C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Xi {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
}

impl Xi {
    pub fn as_array(&self) -> [f64; 3] {
        [self.xi1, self.xi2, self.xi3]
    }
}

/// The explicit polynomial expressions for `Ξ₁, Ξ₂, Ξ₃` in the derivatives of
/// `f₁, f₂` at `φ(u)` and the partials of `φ` at `u`.
///
/// The bracketed expressions for `Ξ₁` and `Ξ₂` are the partials of trace C;
/// they are negated here so that all three quantities refer to `1/t`.
pub fn xi_closed_form(prob: &ConsLawProblem, u: [f64; 2]) -> Xi {
    let d = prob.local(u);
    let [f1, f2] = d.f;
    let (f1pp, f1p3, f1p4) = (f1[2], f1[3], f1[4]);
    let (f2pp, f2p3, f2p4) = (f2[2], f2[3], f2[4]);
    let p1 = d.phi_d(1, 0);
    let p2 = d.phi_d(0, 1);
    let p11 = d.phi_d(2, 0);
    let p12 = d.phi_d(1, 1);
    let p22 = d.phi_d(0, 2);
    let p111 = d.phi_d(3, 0);
    let p112 = d.phi_d(2, 1);
    let p122 = d.phi_d(1, 2);
    let p222 = d.phi_d(0, 3);

    let trace_u1 = f1p3 * p1 * p1 + f2p3 * p1 * p2 + f1pp * p11 + f2pp * p12;
    let trace_u2 = f1p3 * p1 * p2 + f2p3 * p2 * p2 + f1pp * p12 + f2pp * p22;

    let quad = p1 * p1 * p22 - 2.0 * p1 * p2 * p12 + p2 * p2 * p11;
    let cub1 = p1 * p1 * p122 - 2.0 * p1 * p2 * p112 + p2 * p2 * p111;
    let cub2 = p1 * p1 * p222 - 2.0 * p1 * p2 * p122 + p2 * p2 * p112;

    let xi3 = f1p4 * (f1p3 * p1 * p1 * quad + f1pp * p1 * cub1 + f2p3 * p1 * p2 * quad + f2pp * p1 * cub2)
        + f2p4 * (f1p3 * p1 * p2 * quad + f1pp * p2 * cub1 + f2p3 * p2 * p2 * quad + f2pp * p2 * cub2)
        + f1p3
            * f1p3
            * (p1 * p11 * (3.0 * p1 * p22 + 2.0 * p2 * p12) - 4.0 * p1 * p1 * p12 * p12 - p2 * p2 * p11 * p11)
        + f2p3
            * f2p3
            * (p2 * p22 * (2.0 * p1 * p12 + 3.0 * p2 * p11) - p1 * p1 * p22 * p22 - 4.0 * p2 * p2 * p12 * p12)
        + f1p3
            * f2p3
            * (-2.0 * p1 * p1 * p12 * p22 - 4.0 * p1 * p2 * p12 * p12 + 8.0 * p1 * p2 * p11 * p22
                - 2.0 * p2 * p2 * p11 * p12)
        + f1p3
            * (f1pp
                * (3.0 * p1 * p11 * p122 - 4.0 * p1 * p12 * p112 - 2.0 * p2 * p11 * p112
                    + p1 * p22 * p111
                    + 2.0 * p2 * p12 * p111)
                + f2pp
                    * (-4.0 * p1 * p12 * p122 + 3.0 * p1 * p11 * p222 - 2.0 * p2 * p11 * p122
                        + p1 * p22 * p112
                        + 2.0 * p2 * p12 * p112))
        + f2p3
            * (f1pp
                * (2.0 * p1 * p12 * p122 + p2 * p11 * p122 - 2.0 * p1 * p22 * p112 - 4.0 * p2 * p12 * p112
                    + 3.0 * p2 * p22 * p111)
                + f2pp
                    * (2.0 * p1 * p12 * p222 - 2.0 * p1 * p22 * p122 - 4.0 * p2 * p12 * p122
                        + p2 * p11 * p222
                        + 3.0 * p2 * p22 * p112))
        + f1pp * f1pp * (p111 * p122 - p112 * p112)
        + f2pp * f2pp * (p112 * p222 - p122 * p122)
        + f1pp * f2pp * (p111 * p222 - p112 * p122);

    Xi { xi1: -trace_u1, xi2: -trace_u2, xi3 }
}

/// `trace C` as an order-3 jet at `u`, by composing `f_i″` with `φ`.
pub fn trace_jet(prob: &ConsLawProblem, u: [f64; 2]) -> Jet2 {
    let phi = prob.phi.to_jet2(u, DEFAULT_JET2_ORDER).expect("phi is bivariate");
    let y = phi.value();
    let phi3 = phi.truncate(3);
    let mut acc = Jet2::zero(u, 3);
    for (l, axis) in [Axis::U1, Axis::U2].into_iter().enumerate() {
        let curvature = prob.flux_jet(l, y).derivative().and_then(|j| j.derivative()).expect("order 6");
        let along = j1_compose_j2(&curvature, &phi3).expect("outer expanded at φ(u)");
        let slope = phi.partial(axis).expect("order 4");
        acc = acc.add(&along.mul(&slope).expect("order 3")).expect("order 3");
    }
    acc
}

/// `Ξ` computed by differentiating the jet of `trace C` directly.
pub fn xi_autodiff(prob: &ConsLawProblem, u: [f64; 2]) -> Xi {
    let tau = trace_jet(prob, u);
    let g = tau.gradient();
    let h = tau.hessian();
    Xi { xi1: -g[0], xi2: -g[1], xi3: h[0][0] * h[1][1] - h[0][1] * h[1][0] }
}

/// The earliest singular point of `g_t` inside the box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstSingularity {
    pub u_star: [f64; 2],
    pub t_star: f64,
    pub xi: Xi,
    pub newton_residual: f64,
    /// `Ξ₃` is zero within tolerance; the class is never forced to lips then.
    pub degenerate_minimizer: bool,
    /// Other critical points of `t` attaining the same minimal time.
    pub co_minimizers: Vec<[f64; 2]>,
    pub report: ClassificationReport,
}

/// Outcome of [`first_singularity`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FirstSingularitySearch {
    Found(Box<FirstSingularity>),
    /// `trace C ≥ 0` on the whole grid.
    NoSingularity,
    /// The smallest sampled `t` lies on the boundary of the box, lower than
    /// at any interior critical point.
    BoundaryMinimum {
        best_grid_point: [f64; 2],
        best_grid_time: f64,
    },
    /// Newton did not converge from any seed.
    SolverFailed {
        best_grid_point: [f64; 2],
        best_grid_time: f64,
    },
}

/// Grid seeds for the Newton stage.
const BEST_SEEDS: usize = 16;

/// Relative tolerance when comparing minimal times.
const TIME_TIE_REL: f64 = 1e-9;

/// Minimizes `t(u) = −1/trace C(u)` over the box: grid scan, Newton on
/// `Ξ₁ = Ξ₂ = 0` from the grid's local minima and best nodes, then the global
/// minimizer is classified as a germ of `g_{t*}`.
pub fn first_singularity(prob: &ConsLawProblem, domain: &BoxDomain, tol: &ToleranceConfig) -> FirstSingularitySearch {
    let [n1, n2] = domain.grid;
    let times: Vec<Option<f64>> =
        (0..n1 * n2).into_par_iter().map(|k| singular_time_field(prob, domain.node(k / n2, k % n2), tol)).collect();
    let at = |i: usize, j: usize| times[i * n2 + j];

    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let Some(t) = at(i, j) else { continue };
            candidates.push((t, i, j));
        }
    }
    if candidates.is_empty() {
        return FirstSingularitySearch::NoSingularity;
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let (best_t, bi, bj) = candidates[0];
    let best_grid_point = domain.node(bi, bj);

    let is_local_min = |i: usize, j: usize, t: f64| {
        (-1i64..=1).all(|di| {
            (-1i64..=1).all(|dj| {
                let (ii, jj) = (i as i64 + di, j as i64 + dj);
                if (di, dj) == (0, 0) || ii < 0 || jj < 0 || ii >= n1 as i64 || jj >= n2 as i64 {
                    return true;
                }
                at(ii as usize, jj as usize).is_none_or(|s| t <= s)
            })
        })
    };
    let mut seeds: Vec<[f64; 2]> = candidates
        .iter()
        .filter(|&&(t, i, j)| is_local_min(i, j, t))
        .chain(candidates.iter().take(BEST_SEEDS))
        .map(|&(_, i, j)| domain.node(i, j))
        .collect();
    seeds.dedup();

    let tau_scale = candidates.iter().map(|c| 1.0 / c.0).fold(0.0_f64, f64::max);
    let system = |u: [f64; 2]| {
        let tau = trace_jet(prob, u);
        Some((tau.gradient(), tau.hessian()))
    };
    let mut roots: Vec<([f64; 2], f64, f64)> = seeds
        .par_iter()
        .filter_map(|&seed| {
            let root = newton2(system, seed, tol, tau_scale)?;
            if !domain.contains(root.x) {
                return None;
            }
            let t = singular_time_field(prob, root.x, tol)?;
            Some((root.x, t, root.residual))
        })
        .collect();
    if roots.is_empty() {
        return FirstSingularitySearch::SolverFailed { best_grid_point, best_grid_time: best_t };
    }
    roots.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0[0].total_cmp(&b.0[0])).then(a.0[1].total_cmp(&b.0[1])));
    let (u_star, t_star, residual) = roots[0];
    if best_t < t_star * (1.0 - TIME_TIE_REL) {
        let on_boundary = bi == 0 || bj == 0 || bi == n1 - 1 || bj == n2 - 1;
        return if on_boundary {
            FirstSingularitySearch::BoundaryMinimum { best_grid_point, best_grid_time: best_t }
        } else {
            FirstSingularitySearch::SolverFailed { best_grid_point, best_grid_time: best_t }
        };
    }
    let mut co_minimizers: Vec<[f64; 2]> = Vec::new();
    for &(x, t, _) in &roots[1..] {
        let far = (x[0] - u_star[0]).hypot(x[1] - u_star[1]) > DEDUP_RADIUS;
        let tied = (t - t_star).abs() <= TIME_TIE_REL * t_star;
        let fresh = co_minimizers.iter().all(|y| (x[0] - y[0]).hypot(x[1] - y[1]) > DEDUP_RADIUS);
        if far && tied && fresh {
            co_minimizers.push(x);
        }
    }
    FirstSingularitySearch::Found(Box::new(assemble(prob, u_star, t_star, residual, co_minimizers, tol)))
}

fn assemble(
    prob: &ConsLawProblem,
    u_star: [f64; 2],
    t_star: f64,
    newton_residual: f64,
    co_minimizers: Vec<[f64; 2]>,
    tol: &ToleranceConfig,
) -> FirstSingularity {
    let xi = xi_autodiff(prob, u_star);
    let hess = trace_jet(prob, u_star).hessian();
    let h_scale = hess.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    let degenerate_minimizer = xi.xi3.abs() <= tol.zero_rel * h_scale * h_scale;
    let mut report = classify(&characteristic_map(prob, t_star, u_star), tol);
    if degenerate_minimizer && report.class == SingularityClass::Lips {
        report.class = SingularityClass::Degenerate;
        report.note = Some("Ξ₃ vanishes within tolerance at the minimizer".into());
    }
    FirstSingularity { u_star, t_star, xi, newton_residual, degenerate_minimizer, co_minimizers, report }
}

/// Analysis of `g_t` at a caller-chosen point and time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointAnalysis {
    pub u: [f64; 2],
    pub t: f64,
    pub shape_operator: ShapeOperator,
    pub singular_time: Option<f64>,
    pub xi: Xi,
    pub report: ClassificationReport,
}

pub fn analyze_point(prob: &ConsLawProblem, u: [f64; 2], t: f64, tol: &ToleranceConfig) -> PointAnalysis {
    PointAnalysis {
        u,
        t,
        shape_operator: shape_operator(prob, u),
        singular_time: singular_time_field(prob, u, tol),
        xi: xi_autodiff(prob, u),
        report: classify(&characteristic_map(prob, t, u), tol),
    }
}

/// Singular set of `g_t` and its image at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: f64,
    pub curves: Vec<CurveSample>,
    pub images: Vec<CurveSample>,
    pub special_points: Vec<SpecialPoint>,
}

/// Traces `S(g_t)` for each requested time. Before `t*` nothing appears near
/// `u*`; just after it a small closed curve is born there.
pub fn lips_birth_frames(
    prob: &ConsLawProblem,
    times: &[f64],
    domain: &BoxDomain,
    tol: &ToleranceConfig,
) -> Vec<Frame> {
    times
        .iter()
        .map(|&t| {
            let map = CharacteristicMap::new(prob, t);
            let curves = sample_singular_set(&map, domain, tol);
            let images = critical_value_image(&map, &curves);
            let special_points = find_special_points(&map, domain, tol);
            Frame { t, curves, images, special_points }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::discriminant;
    use crate::parse::parse_poly2;

    fn burgers(phi: &str) -> ConsLawProblem {
        ConsLawProblem::new(
            PolySpec::univariate(&[0.0, 0.0, 0.5]).unwrap(),
            PolySpec::zero(1),
            parse_poly2(phi).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn time_zero_map_is_identity() {
        let prob = burgers("-u + u^3 + u v^2");
        let g = characteristic_map(&prob, 0.0, [0.2, -0.1]);
        assert_eq!(g.jacobian(), [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(classify(&g, &ToleranceConfig::default()).class, SingularityClass::Immersion);
    }

    #[test]
    fn example_problem_jacobian_at_origin() {
        let prob = burgers("-u + u^3 + u v^2");
        let g = characteristic_map(&prob, 1.0, [0.0, 0.0]);
        assert_eq!(g.jacobian(), [[0.0, 0.0], [0.0, 1.0]]);
        let op = shape_operator(&prob, [0.0, 0.0]);
        assert_eq!(op.c, [[-1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(op.trace, -1.0);
        assert_eq!(singular_time_field(&prob, [0.0, 0.0], &ToleranceConfig::default()), Some(1.0));
    }

    #[test]
    fn linear_data_gives_constant_discriminant() {
        let prob = burgers("2u - v");
        let g = characteristic_map(&prob, 0.7, [0.3, 0.4]);
        let lam = discriminant(&g);
        assert!((lam.value() - (1.0 + 0.7 * 2.0)).abs() < 1e-15);
        assert!(lam.terms().skip(1).all(|(_, _, c)| c == 0.0));
    }

    #[test]
    fn degenerate_shape_operators() {
        let constant = burgers("3");
        assert_eq!(shape_operator(&constant, [0.5, 0.5]).c, [[0.0; 2]; 2]);
        let linear_flux = ConsLawProblem::new(
            PolySpec::univariate(&[0.0, 2.0]).unwrap(),
            PolySpec::zero(1),
            parse_poly2("u^2").unwrap(),
        )
        .unwrap();
        assert_eq!(shape_operator(&linear_flux, [0.5, 0.5]).trace, 0.0);
        assert_eq!(singular_time_field(&linear_flux, [0.5, 0.5], &ToleranceConfig::default()), None);
    }

    #[test]
    fn increasing_data_never_focuses() {
        let prob = burgers("u + u^3");
        for k in 0..5 {
            let u = [-1.0 + 0.5 * k as f64, 0.3];
            assert_eq!(singular_time_field(&prob, u, &ToleranceConfig::default()), None);
        }
    }

    #[test]
    fn xi_at_origin_of_example() {
        let prob = burgers("-u + u^3 + u v^2");
        let closed = xi_closed_form(&prob, [0.0, 0.0]);
        let auto = xi_autodiff(&prob, [0.0, 0.0]);
        assert_eq!(closed.as_array(), [0.0, 0.0, 12.0]);
        assert_eq!(auto.as_array(), [0.0, 0.0, 12.0]);
    }

    #[test]
    fn quadratic_data_has_vanishing_xi3() {
        let prob = ConsLawProblem::new(
            PolySpec::univariate(&[0.0, 1.0, 0.5]).unwrap(),
            PolySpec::univariate(&[1.0, 0.0, -1.5]).unwrap(),
            parse_poly2("u^2 - 2uv + 0.5v^2 + u").unwrap(),
        )
        .unwrap();
        assert_eq!(xi_closed_form(&prob, [0.3, -0.2]).xi3, 0.0);
    }

    #[test]
    fn xi2_vanishes_without_u2_dependence() {
        let prob = burgers("-u + u^3 - 0.5u^4");
        let xi = xi_autodiff(&prob, [0.4, 0.9]);
        assert_eq!(xi.xi2, 0.0);
        assert_eq!(xi_closed_form(&prob, [0.4, 0.9]).xi2, 0.0);
    }

    #[test]
    fn first_singularity_of_example() {
        let prob = burgers("-u + u^3 + u v^2");
        let domain = BoxDomain::new([-0.4, -0.4], [0.4, 0.4], [64, 64]).unwrap();
        let FirstSingularitySearch::Found(fs) = first_singularity(&prob, &domain, &ToleranceConfig::default()) else {
            panic!("expected a first singularity");
        };
        assert!((fs.t_star - 1.0).abs() < 1e-12);
        assert!(fs.u_star[0].abs() < 1e-12 && fs.u_star[1].abs() < 1e-12);
        assert_eq!(fs.report.class, SingularityClass::Lips);
        assert!(!fs.degenerate_minimizer);
    }

    #[test]
    fn linear_data_has_no_critical_point() {
        let prob = burgers("-u");
        let domain = BoxDomain::new([-0.4, -0.4], [0.4, 0.4], [16, 16]).unwrap();
        let out = first_singularity(&prob, &domain, &ToleranceConfig::default());
        assert!(matches!(out, FirstSingularitySearch::SolverFailed { .. }), "{out:?}");
        assert_eq!(
            first_singularity(&burgers("u"), &domain, &ToleranceConfig::default()),
            FirstSingularitySearch::NoSingularity
        );
    }
}
