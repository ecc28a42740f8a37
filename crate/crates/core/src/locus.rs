//! Tracing the singular set `S(f) = λ⁻¹(0)` over a box and locating its
//! degenerate and cusp-type points.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::{classify, discriminant, eta_apply, null_field_with, ClassificationReport, PlaneMapGerm};
use crate::map::{PlaneMap, PolyMap};
use crate::newton::newton2;
use crate::poly::{PolySpec, Term};
use crate::tolerance::{ToleranceConfig, DEDUP_RADIUS};

/// Axis-aligned rectangle sampled by a grid of `grid[0] × grid[1]` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub grid: [usize; 2],
}

impl BoxDomain {
    pub fn new(lo: [f64; 2], hi: [f64; 2], grid: [usize; 2]) -> Result<Self> {
        let b = Self { lo, hi, grid };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.lo.iter().chain(&self.hi).all(|v| v.is_finite());
        if !finite || self.lo[0] >= self.hi[0] || self.lo[1] >= self.hi[1] {
            return Err(Error::InvalidBox(format!("need lo < hi, got {:?} and {:?}", self.lo, self.hi)));
        }
        if self.grid[0] < 2 || self.grid[1] < 2 {
            return Err(Error::InvalidBox(format!("grid must be at least 2×2, got {:?}", self.grid)));
        }
        Ok(())
    }

    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        let s = |k: usize, n: usize, axis: usize| {
            self.lo[axis] + (self.hi[axis] - self.lo[axis]) * k as f64 / (n - 1) as f64
        };
        [s(i, self.grid[0], 0), s(j, self.grid[1], 1)]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        let a = self.node(i, j);
        let b = self.node(i + 1, j + 1);
        [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
    }

    pub fn cell_diagonal(&self) -> f64 {
        let a = self.node(0, 0);
        let b = self.node(1, 1);
        (b[0] - a[0]).hypot(b[1] - a[1])
    }

    pub fn contains(&self, u: [f64; 2]) -> bool {
        let slack = 1e-9 * (self.hi[0] - self.lo[0]).max(self.hi[1] - self.lo[1]);
        (0..2).all(|k| u[k] >= self.lo[k] - slack && u[k] <= self.hi[k] + slack)
    }

    fn nodes(&self) -> Vec<(usize, usize)> {
        (0..self.grid[0]).flat_map(|i| (0..self.grid[1]).map(move |j| (i, j))).collect()
    }
}

/// A polyline approximating one branch of a curve, with `|λ|` at each vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub vertices: Vec<[f64; 2]>,
    pub residuals: Vec<f64>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialKind {
    /// Root of `dλ = 0` lying on `S(f)`.
    DegenerateCandidate,
    /// Root of `λ = ηλ = 0`.
    CuspCandidate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub location: [f64; 2],
    pub kind: SpecialKind,
    pub newton_residual: f64,
    pub report: ClassificationReport,
}

/// Grid values of `λ` and the largest magnitude among them.
fn sample_lambda<M: PlaneMap + ?Sized>(map: &M, domain: &BoxDomain) -> (Vec<f64>, f64) {
    let values: Vec<f64> = domain.nodes().par_iter().map(|&(i, j)| map.discriminant_at(domain.node(i, j))).collect();
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (values, if scale > 0.0 { scale } else { 1.0 })
}

/// Grid edge carrying a contour crossing: `H(i, j)` joins nodes `(i, j)` and
/// `(i+1, j)`, `V(i, j)` joins `(i, j)` and `(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

/// Segments as pairs of edge keys, and the interpolated crossing on each edge.
type Contour = (Vec<(Edge, Edge)>, HashMap<Edge, [f64; 2]>);

fn marching_squares(domain: &BoxDomain, values: &[f64]) -> Contour {
    let n2 = domain.grid[1];
    let val = |i: usize, j: usize| values[i * n2 + j];
    let positive = |v: f64| v > 0.0;
    let mut points = HashMap::new();
    let mut crossing = |e: Edge| -> [f64; 2] {
        *points.entry(e).or_insert_with(|| {
            let (a, b) = match e {
                Edge::H(i, j) => ((i, j), (i + 1, j)),
                Edge::V(i, j) => ((i, j), (i, j + 1)),
            };
            let (va, vb) = (val(a.0, a.1), val(b.0, b.1));
            let t = va / (va - vb);
            let pa = domain.node(a.0, a.1);
            let pb = domain.node(b.0, b.1);
            [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
        })
    };
    let mut segments = Vec::new();
    for i in 0..domain.grid[0] - 1 {
        for j in 0..n2 - 1 {
            let a = val(i, j);
            let b = val(i + 1, j);
            let c = val(i + 1, j + 1);
            let d = val(i, j + 1);
            let bottom = Edge::H(i, j);
            let right = Edge::V(i + 1, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let sides = [(bottom, a, b), (right, b, c), (top, d, c), (left, a, d)];
            let cut: Vec<Edge> = sides.iter().filter(|(_, x, y)| positive(*x) != positive(*y)).map(|s| s.0).collect();
            match cut.len() {
                2 => segments.push((cut[0], cut[1])),
                4 => {
                    let center = 0.25 * (a + b + c + d);
                    if positive(center) == positive(a) {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
            for e in cut {
                crossing(e);
            }
        }
    }
    (segments, points)
}

/// Links segments sharing an edge into polylines of edges.
fn link_segments(segments: &[(Edge, Edge)]) -> Vec<(Vec<Edge>, bool)> {
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        by_edge.entry(*a).or_default().push(k);
        by_edge.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain: VecDeque<Edge> = VecDeque::from([segments[start].0, segments[start].1]);
        for forward in [true, false] {
            loop {
                let end = if forward { *chain.back().unwrap() } else { *chain.front().unwrap() };
                let next = by_edge[&end].iter().copied().find(|&k| !used[k]);
                let Some(k) = next else { break };
                used[k] = true;
                let (a, b) = segments[k];
                let other = if a == end { b } else { a };
                if forward {
                    chain.push_back(other);
                } else {
                    chain.push_front(other);
                }
            }
        }
        let closed = chain.len() > 2 && chain.front() == chain.back();
        if closed {
            chain.pop_back();
        }
        chains.push((chain.into_iter().collect(), closed));
    }
    chains
}

/// Moves `u` onto `λ = 0` along `∇λ`; `None` when it fails to converge or
/// wanders farther than `max_shift`.
fn project_to_zero<M: PlaneMap + ?Sized>(
    map: &M,
    u: [f64; 2],
    target: f64,
    max_shift: f64,
    tol: &ToleranceConfig,
) -> Option<([f64; 2], f64)> {
    let mut q = u;
    for _ in 0..=tol.newton_max_iter {
        let lam = map.discriminant_at(q);
        if lam.abs() <= target {
            return Some((q, lam.abs()));
        }
        let g = discriminant(&map.germ_at(q)).gradient();
        let g2 = g[0] * g[0] + g[1] * g[1];
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        q = [q[0] - lam * g[0] / g2, q[1] - lam * g[1] / g2];
        if (q[0] - u[0]).hypot(q[1] - u[1]) > max_shift {
            return None;
        }
    }
    None
}

/// Traces `λ = 0` over the box: marching squares on the grid, then each
/// vertex is projected onto the zero set along `∇λ`. Vertices that fail to
/// project are dropped. Isolated zeros of `λ` are not visible here; see
/// [`find_special_points`].
pub fn sample_singular_set<M: PlaneMap + ?Sized>(
    map: &M,
    domain: &BoxDomain,
    tol: &ToleranceConfig,
) -> Vec<CurveSample> {
    let (values, scale) = sample_lambda(map, domain);
    let (segments, points) = marching_squares(domain, &values);
    let target = tol.newton_residual * scale;
    let max_shift = 2.0 * domain.cell_diagonal();
    link_segments(&segments)
        .into_par_iter()
        .filter_map(|(edges, closed)| {
            let (vertices, residuals): (Vec<_>, Vec<_>) =
                edges.iter().filter_map(|e| project_to_zero(map, points[e], target, max_shift, tol)).unzip();
            (vertices.len() >= 2).then_some(CurveSample { vertices, residuals, closed })
        })
        .collect()
}

fn degenerate_system<M: PlaneMap + ?Sized>(map: &M, u: [f64; 2]) -> Option<([f64; 2], [[f64; 2]; 2])> {
    let lam = discriminant(&map.germ_at(u));
    Some((lam.gradient(), lam.hessian()))
}

fn cusp_system<M: PlaneMap + ?Sized>(map: &M, u: [f64; 2], tol: &ToleranceConfig) -> Option<([f64; 2], [[f64; 2]; 2])> {
    let germ = map.germ_at(u);
    let lam = discriminant(&germ);
    let eta = null_field_with(&germ, tol).ok()?;
    let eta_lam = eta_apply(&lam, &eta).ok()?;
    Some(([lam.value(), eta_lam.value()], [lam.gradient(), eta_lam.gradient()]))
}

fn lex_cmp(a: &[f64; 2], b: &[f64; 2]) -> std::cmp::Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

/// Newton from every grid cell centre on `dλ = 0` (kept when `λ ≈ 0` there)
/// and on `λ = ηλ = 0`. Roots are deduplicated, degenerate candidates taking
/// precedence, and each is classified.
pub fn find_special_points<M: PlaneMap + ?Sized>(
    map: &M,
    domain: &BoxDomain,
    tol: &ToleranceConfig,
) -> Vec<SpecialPoint> {
    let (_, scale) = sample_lambda(map, domain);
    let seeds: Vec<[f64; 2]> = (0..domain.grid[0] - 1)
        .flat_map(|i| (0..domain.grid[1] - 1).map(move |j| (i, j)))
        .map(|(i, j)| domain.cell_center(i, j))
        .collect();

    let solve_all = |kind: SpecialKind| -> Vec<([f64; 2], f64)> {
        let mut roots: Vec<([f64; 2], f64)> = seeds
            .par_iter()
            .filter_map(|&seed| {
                let root = match kind {
                    SpecialKind::DegenerateCandidate => newton2(|u| degenerate_system(map, u), seed, tol, scale)?,
                    SpecialKind::CuspCandidate => newton2(|u| cusp_system(map, u, tol), seed, tol, scale)?,
                };
                if !domain.contains(root.x) {
                    return None;
                }
                if kind == SpecialKind::DegenerateCandidate && map.discriminant_at(root.x).abs() > tol.zero_rel * scale
                {
                    return None;
                }
                Some((root.x, root.residual))
            })
            .collect();
        roots.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        roots
    };

    let mut accepted: Vec<([f64; 2], f64, SpecialKind)> = Vec::new();
    for kind in [SpecialKind::DegenerateCandidate, SpecialKind::CuspCandidate] {
        for (x, residual) in solve_all(kind) {
            let near = accepted.iter().any(|(y, _, _)| (x[0] - y[0]).hypot(x[1] - y[1]) <= DEDUP_RADIUS);
            if !near {
                accepted.push((x, residual, kind));
            }
        }
    }
    accepted
        .into_iter()
        .map(|(location, newton_residual, kind)| SpecialPoint {
            location,
            kind,
            newton_residual,
            report: classify(&map.germ_at(location), tol),
        })
        .collect()
}

/// Maps every vertex through `f`, keeping connectivity and residuals.
pub fn critical_value_image<M: PlaneMap + ?Sized>(map: &M, curves: &[CurveSample]) -> Vec<CurveSample> {
    curves
        .iter()
        .map(|c| CurveSample {
            vertices: c.vertices.iter().map(|&u| map.eval(u)).collect(),
            residuals: c.residuals.clone(),
            closed: c.closed,
        })
        .collect()
}

/// The tangential ruling map `(t, u) ↦ γ(t) + u γ′(t)` as a polynomial map.
pub fn ruling_polymap(curve: &[PolySpec; 2]) -> Result<PolyMap> {
    let mut comps = Vec::with_capacity(2);
    for gamma in curve {
        if gamma.vars() != 1 {
            return Err(Error::InvalidSpec("ruling map needs a univariate curve".into()));
        }
        let mut terms = Vec::new();
        for t in gamma.terms() {
            let k = t.e[0];
            terms.push(Term { c: t.c, e: vec![k, 0] });
            if k > 0 {
                terms.push(Term { c: t.c * k as f64, e: vec![k - 1, 1] });
            }
        }
        comps.push(PolySpec::new(2, terms)?);
    }
    let [a, b]: [PolySpec; 2] = comps.try_into().expect("two components");
    PolyMap::new([a, b])
}

/// Germ of the tangential ruling map of `curve` at `(t0, 0)`.
pub fn ruling_map(curve: &[PolySpec; 2], t0: f64) -> Result<PlaneMapGerm> {
    let map = ruling_polymap(curve)?;
    let speed = [curve[0].derivative1(1, t0), curve[1].derivative1(1, t0)];
    if speed[0].hypot(speed[1]) <= 1e-12 {
        return Err(Error::NotRegularCurve(t0));
    }
    Ok(map.germ_at([t0, 0.0]))
}
