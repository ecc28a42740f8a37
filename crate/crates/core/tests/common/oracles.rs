//! Independent oracles for the jet layer. Each check returns a description
//! of the first violation.
#![allow(dead_code)]

use planesing::jet::{j1_compose_j2, Axis, Jet2};
use planesing::PolySpec;

use super::close;

/// Product of two jets by direct double loop over coefficient pairs.
pub fn naive_product(a: &Jet2, b: &Jet2) -> Vec<((usize, usize), f64)> {
    let n = a.order();
    let mut out = std::collections::BTreeMap::new();
    for (i1, j1, x) in a.terms() {
        for (i2, j2, y) in b.terms() {
            if i1 + j1 + i2 + j2 <= n {
                *out.entry((i1 + i2, j1 + j2)).or_insert(0.0) += x * y;
            }
        }
    }
    out.into_iter().collect()
}

fn max_coeff(j: &Jet2) -> f64 {
    j.max_abs_coeff().max(1.0)
}

/// Jet multiplication agrees with the convolution oracle and with the jet of
/// the exact polynomial product.
pub fn check_product(p: &PolySpec, q: &PolySpec, base: [f64; 2]) -> Result<(), String> {
    let jp = p.to_jet2(base, 4).unwrap();
    let jq = q.to_jet2(base, 4).unwrap();
    let prod = jp.mul(&jq).unwrap();
    let scale = max_coeff(&jp) * max_coeff(&jq);
    for ((i, j), c) in naive_product(&jp, &jq) {
        if (prod.coeff(i, j) - c).abs() > 1e-12 * scale {
            return Err(format!("product coeff ({i},{j}): {} vs oracle {c}", prod.coeff(i, j)));
        }
    }
    let exact = poly_mul(p, q).to_jet2(base, 4).unwrap();
    for (i, j, c) in exact.terms() {
        if (prod.coeff(i, j) - c).abs() > 1e-11 * scale * (1.0 + base[0].abs() + base[1].abs()).powi(4) {
            return Err(format!("product coeff ({i},{j}): {} vs exact {c}", prod.coeff(i, j)));
        }
    }
    Ok(())
}

fn poly_mul(p: &PolySpec, q: &PolySpec) -> PolySpec {
    let mut terms = Vec::new();
    for a in p.terms() {
        for b in q.terms() {
            terms.push((a.c * b.c, (a.e[0] + b.e[0], a.e[1] + b.e[1])));
        }
    }
    PolySpec::bivariate(&terms).unwrap()
}

const FD_STEP: f64 = 1e-4;

/// First partials from the jet match central differences of evaluation;
/// second partials match central differences of the exact gradient.
pub fn check_partials_fd(p: &PolySpec, base: [f64; 2]) -> Result<(), String> {
    let j = p.to_jet2(base, 4).unwrap();
    let h = FD_STEP;
    let g = j.gradient();
    let hess = j.hessian();
    for k in 0..2 {
        let mut up = base;
        let mut dn = base;
        up[k] += h;
        dn[k] -= h;
        let fd = (p.eval2(up) - p.eval2(dn)) / (2.0 * h);
        if !close(g[k], fd, 1e-6, 1e-6) {
            return Err(format!("∂{} at {base:?}: jet {} vs fd {fd}", k + 1, g[k]));
        }
        let (gu, gd) = (p.gradient2(up), p.gradient2(dn));
        for m in 0..2 {
            let fd2 = (gu[m] - gd[m]) / (2.0 * h);
            if !close(hess[m][k], fd2, 1e-6, 1e-6) {
                return Err(format!("∂{}∂{} at {base:?}: jet {} vs fd {fd2}", m + 1, k + 1, hess[m][k]));
            }
        }
    }
    if !close(j.value(), p.eval2(base), 1e-12, 1e-12) {
        return Err("value mismatch".into());
    }
    Ok(())
}

/// `∂(outer∘inner)/∂u₁ = (outer′∘inner)·∂inner/∂u₁` coefficientwise, and the
/// same along u₂.
pub fn check_chain_rule(outer: &PolySpec, inner: &PolySpec, base: [f64; 2]) -> Result<(), String> {
    let ji = inner.to_jet2(base, 4).unwrap();
    let y0 = ji.value();
    let jo = outer.to_jet1(y0, 6).unwrap();
    let composed = j1_compose_j2(&jo, &ji).unwrap();
    let outer_prime = j1_compose_j2(&jo.derivative().unwrap(), &ji).unwrap().truncate(3);
    for axis in [Axis::U1, Axis::U2] {
        let lhs = composed.partial(axis).unwrap();
        let rhs = outer_prime.mul(&ji.partial(axis).unwrap()).unwrap();
        let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff()).max(1e-300);
        for (i, j, c) in lhs.terms() {
            if (c - rhs.coeff(i, j)).abs() > 1e-12 * scale {
                return Err(format!("{axis:?} coeff ({i},{j}): {c} vs {}", rhs.coeff(i, j)));
            }
        }
    }
    // The composed value equals the exact composite at the base point.
    let exact = outer.eval1(inner.eval2(base));
    if !close(composed.value(), exact, 1e-12, 1e-12) {
        return Err(format!("composite value {} vs {exact}", composed.value()));
    }
    Ok(())
}

/// k-th derivative of a univariate jet equals `k!·c_k` and matches the
/// polynomial's exact derivative.
pub fn check_jet1_derivatives(p: &PolySpec, y: f64) -> Result<(), String> {
    let j = p.to_jet1(y, 6).unwrap();
    for k in 0..=6u32 {
        let exact = p.derivative1(k, y);
        if !close(j.derivative_at(k as usize), exact, 1e-12, 1e-11) {
            return Err(format!("d^{k}: {} vs {exact}", j.derivative_at(k as usize)));
        }
    }
    Ok(())
}
