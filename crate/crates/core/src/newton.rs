//! Damped Newton iteration for square 2×2 systems.

use crate::tolerance::{ToleranceConfig, NEWTON_STEP_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: [f64; 2],
    pub residual: f64,
    pub iterations: usize,
}

fn norm_inf(v: [f64; 2]) -> f64 {
    v[0].abs().max(v[1].abs())
}

fn solve(j: [[f64; 2]; 2], r: [f64; 2]) -> Option<[f64; 2]> {
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let scale = j.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || det.abs() <= 1e-14 * scale * scale || !det.is_finite() {
        return None;
    }
    Some([(-r[0] * j[1][1] + r[1] * j[0][1]) / det, (-r[1] * j[0][0] + r[0] * j[1][0]) / det])
}

/// Solves `F(x) = 0` from `x0`, where `system` returns `(F(x), DF(x))`, or
/// `None` where it is undefined.
///
/// Converges when `|F| ≤ tol.newton_residual · residual_scale` and the last
/// step is at most [`NEWTON_STEP_TOL`]. The step is halved while the residual
/// grows. Divergence, a singular Jacobian at the seed or away from a root,
/// or running out of iterations all return `None`.
pub fn newton2<F>(system: F, x0: [f64; 2], tol: &ToleranceConfig, residual_scale: f64) -> Option<Root>
where
    F: Fn([f64; 2]) -> Option<([f64; 2], [[f64; 2]; 2])>,
{
    let res_tol = tol.newton_residual * residual_scale;
    let mut x = x0;
    let (mut r, mut jac) = system(x)?;
    for it in 0..tol.newton_max_iter {
        let rn = norm_inf(r);
        let Some(delta) = solve(jac, r) else {
            // A singular Jacobian at the seed discards it; later it can only
            // mean we are sitting on a singular root.
            return (it > 0 && rn <= res_tol).then_some(Root { x, residual: rn, iterations: it });
        };
        let mut damping = 1.0;
        let (next, r_next, j_next) = loop {
            let cand = [x[0] + damping * delta[0], x[1] + damping * delta[1]];
            match system(cand) {
                Some((rc, jc)) if norm_inf(rc) <= rn => break (cand, rc, jc),
                _ if damping > 1.0 / 1024.0 => damping *= 0.5,
                _ => return (rn <= res_tol).then_some(Root { x, residual: rn, iterations: it }),
            }
        };
        let step = damping * norm_inf(delta);
        x = next;
        r = r_next;
        jac = j_next;
        if !x[0].is_finite() || !x[1].is_finite() {
            return None;
        }
        if norm_inf(r) <= res_tol && step <= NEWTON_STEP_TOL {
            return Some(Root { x, residual: norm_inf(r), iterations: it + 1 });
        }
    }
    None
}
