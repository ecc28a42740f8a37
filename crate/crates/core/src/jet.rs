//! Truncated Taylor polynomials in one and two variables.
//!
//! A [`Jet1`] stores `Σ c_k (y − b)^k` for `k ≤ order`; a [`Jet2`] stores
//! `Σ c_ij (u₁ − p₁)^i (u₂ − p₂)^j` for `i + j ≤ order`. Products drop every
//! term of total degree above the order, and no operation ever raises the
//! order of its result.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_JET1_ORDER: usize = 6;
pub const DEFAULT_JET2_ORDER: usize = 4;

/// Absolute tolerance on the base point when composing jets.
pub const COMPOSITION_BASE_TOL: f64 = 1e-9;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Univariate truncated Taylor polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet1 {
    base_point: f64,
    coeffs: Vec<f64>,
}

impl Jet1 {
    /// Builds a jet from its Taylor coefficients; the order is `coeffs.len() - 1`.
    pub fn new(base_point: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec("a Jet1 needs at least one coefficient".into()));
        }
        Ok(Self { base_point, coeffs })
    }

    pub fn constant(base_point: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { base_point, coeffs }
    }

    /// The coordinate function `y` expanded at `base_point`.
    pub fn variable(base_point: f64, order: usize) -> Self {
        let mut jet = Self::constant(base_point, base_point, order);
        if order >= 1 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn base_point(&self) -> f64 {
        self.base_point
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the base point, `k!·c_k`; zero beyond the order.
    pub fn derivative_at(&self, k: usize) -> f64 {
        factorial(k) * self.coeff(k)
    }

    pub fn derivative(&self) -> Result<Jet1> {
        if self.order() == 0 {
            return Err(Error::JetOrderExhausted { needed: 1, available: 0 });
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
        Ok(Jet1 { base_point: self.base_point, coeffs })
    }

    /// Evaluates the truncated polynomial at `y`.
    pub fn eval(&self, y: f64) -> f64 {
        let d = y - self.base_point;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * d + c)
    }

    pub fn truncate(&self, order: usize) -> Jet1 {
        let keep = order.min(self.order()) + 1;
        Jet1 { base_point: self.base_point, coeffs: self.coeffs[..keep].to_vec() }
    }
}

/// Differentiation direction for a [`Jet2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    U1,
    U2,
}

/// Binary operation accepted by [`j2_arith`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Scale(f64),
}

/// Bivariate truncated Taylor polynomial.
///
/// Coefficients are stored by total degree: the block for degree `d` holds
/// `c_{d,0}, c_{d-1,1}, …, c_{0,d}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet2 {
    base_point: [f64; 2],
    order: usize,
    coeffs: Vec<f64>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

#[inline]
fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl Jet2 {
    pub fn zero(base_point: [f64; 2], order: usize) -> Self {
        Self { base_point, order, coeffs: vec![0.0; len_for(order)] }
    }

    pub fn constant(base_point: [f64; 2], value: f64, order: usize) -> Self {
        let mut jet = Self::zero(base_point, order);
        jet.coeffs[0] = value;
        jet
    }

    /// The coordinate function `u₁` or `u₂` expanded at `base_point`.
    pub fn variable(base_point: [f64; 2], axis: Axis, order: usize) -> Self {
        let (k, value) = match axis {
            Axis::U1 => (idx(1, 0), base_point[0]),
            Axis::U2 => (idx(0, 1), base_point[1]),
        };
        let mut jet = Self::constant(base_point, value, order);
        if order >= 1 {
            jet.coeffs[k] = 1.0;
        }
        jet
    }

    /// Builds a jet from `(coefficient, (i, j))` pairs; repeated monomials add up.
    /// Terms of total degree above `order` are dropped.
    pub fn from_terms<I>(base_point: [f64; 2], order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (f64, (usize, usize))>,
    {
        let mut jet = Self::zero(base_point, order);
        for (c, (i, j)) in terms {
            if i + j <= order {
                jet.coeffs[idx(i, j)] += c;
            }
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base_point(&self) -> [f64; 2] {
        self.base_point
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[idx(i, j)]
        }
    }

    /// Iterates over `(i, j, c_ij)` in degree-major order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.order)
            .flat_map(|d| (0..=d).map(move |j| (d - j, j)))
            .map(move |(i, j)| (i, j, self.coeffs[idx(i, j)]))
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Mixed partial `∂^{i+j}/∂u₁^i∂u₂^j` at the base point, `i!·j!·c_ij`.
    pub fn derivative(&self, i: usize, j: usize) -> f64 {
        factorial(i) * factorial(j) * self.coeff(i, j)
    }

    pub fn gradient(&self) -> [f64; 2] {
        [self.coeff(1, 0), self.coeff(0, 1)]
    }

    pub fn hessian(&self) -> [[f64; 2]; 2] {
        let h11 = 2.0 * self.coeff(2, 0);
        let h12 = self.coeff(1, 1);
        let h22 = 2.0 * self.coeff(0, 2);
        [[h11, h12], [h12, h22]]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// The jet with every coefficient replaced by its absolute value.
    pub fn abs_coeffs(&self) -> Jet2 {
        Jet2 { coeffs: self.coeffs.iter().map(|c| c.abs()).collect(), ..*self }
    }

    /// Evaluates the truncated polynomial at `u`.
    pub fn eval(&self, u: [f64; 2]) -> f64 {
        let d1 = u[0] - self.base_point[0];
        let d2 = u[1] - self.base_point[1];
        self.terms().map(|(i, j, c)| c * d1.powi(i as i32) * d2.powi(j as i32)).sum()
    }

    pub fn truncate(&self, order: usize) -> Jet2 {
        let order = order.min(self.order);
        Jet2 { base_point: self.base_point, order, coeffs: self.coeffs[..len_for(order)].to_vec() }
    }

    /// Exchanges the roles of `u₁` and `u₂` (and of the base-point coordinates).
    pub fn swap_axes(&self) -> Jet2 {
        let mut out = Jet2::zero([self.base_point[1], self.base_point[0]], self.order);
        for (i, j, c) in self.terms() {
            out.coeffs[idx(j, i)] = c;
        }
        out
    }

    fn check_compatible(&self, other: &Jet2) -> Result<()> {
        if self.order != other.order {
            return Err(Error::InvalidJetCombination(format!("orders {} and {}", self.order, other.order)));
        }
        if self.base_point != other.base_point {
            return Err(Error::InvalidJetCombination(format!(
                "base points {:?} and {:?}",
                self.base_point, other.base_point
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet2) -> Result<Jet2> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Jet2 { coeffs, ..*self })
    }

    pub fn sub(&self, other: &Jet2) -> Result<Jet2> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Jet2 { coeffs, ..*self })
    }

    pub fn mul(&self, other: &Jet2) -> Result<Jet2> {
        self.check_compatible(other)?;
        let n = self.order;
        let mut out = Jet2::zero(self.base_point, n);
        for d1 in 0..=n {
            for j1 in 0..=d1 {
                let a = self.coeffs[idx(d1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(n - d1) {
                    for j2 in 0..=d2 {
                        let b = other.coeffs[idx(d2 - j2, j2)];
                        out.coeffs[idx(d1 - j1 + d2 - j2, j1 + j2)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        Jet2 { coeffs: self.coeffs.iter().map(|c| s * c).collect(), ..*self }
    }

    /// Adds a constant to the value term.
    pub fn offset(&self, c: f64) -> Jet2 {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Truncated partial derivative; the order drops by one.
    pub fn partial(&self, axis: Axis) -> Result<Jet2> {
        if self.order == 0 {
            return Err(Error::JetOrderExhausted { needed: 1, available: 0 });
        }
        let n = self.order - 1;
        let mut out = Jet2::zero(self.base_point, n);
        for (i, j, _) in out.clone().terms() {
            out.coeffs[idx(i, j)] = match axis {
                Axis::U1 => (i + 1) as f64 * self.coeffs[idx(i + 1, j)],
                Axis::U2 => (j + 1) as f64 * self.coeffs[idx(i, j + 1)],
            };
        }
        Ok(out)
    }
}

/// Combines two jets with `op`; `Scale` ignores `b`.
pub fn j2_arith(a: &Jet2, b: &Jet2, op: JetOp) -> Result<Jet2> {
    match op {
        JetOp::Add => a.add(b),
        JetOp::Sub => a.sub(b),
        JetOp::Mul => a.mul(b),
        JetOp::Scale(s) => Ok(a.scale(s)),
    }
}

/// `m11·m22 − m12·m21`, truncated.
pub fn j2_det2(m11: &Jet2, m12: &Jet2, m21: &Jet2, m22: &Jet2) -> Result<Jet2> {
    m11.mul(m22)?.sub(&m12.mul(m21)?)
}

/// Taylor expansion of `outer ∘ inner` at the base point of `inner`.
///
/// `outer` must be expanded at the value of `inner` and carry at least the
/// order of `inner`; the result has the order of `inner`.
pub fn j1_compose_j2(outer: &Jet1, inner: &Jet2) -> Result<Jet2> {
    let c0 = inner.value();
    if (outer.base_point() - c0).abs() > COMPOSITION_BASE_TOL {
        return Err(Error::CompositionBasePointMismatch { outer: outer.base_point(), inner: c0 });
    }
    if outer.order() < inner.order() {
        return Err(Error::JetOrderExhausted { needed: inner.order(), available: outer.order() });
    }
    let h = inner.offset(-c0);
    let n = inner.order();
    let mut acc = Jet2::constant(inner.base_point(), outer.coeff(n), n);
    for k in (0..n).rev() {
        acc = acc.mul(&h)?.offset(outer.coeff(k));
    }
    Ok(acc)
}

/// Taylor expansion of `outer(inner₁, inner₂)` at the common base point of
/// the inner jets. `outer` must be expanded at `(inner₁(p), inner₂(p))`.
pub fn j2_compose_j2(outer: &Jet2, inner: [&Jet2; 2]) -> Result<Jet2> {
    inner[0].check_compatible(inner[1])?;
    for (k, jet) in inner.iter().enumerate() {
        let c0 = jet.value();
        if (outer.base_point()[k] - c0).abs() > COMPOSITION_BASE_TOL {
            return Err(Error::CompositionBasePointMismatch { outer: outer.base_point()[k], inner: c0 });
        }
    }
    let n = inner[0].order();
    if outer.order() < n {
        return Err(Error::JetOrderExhausted { needed: n, available: outer.order() });
    }
    let base = inner[0].base_point();
    let h1 = inner[0].offset(-inner[0].value());
    let h2 = inner[1].offset(-inner[1].value());
    let powers = |h: &Jet2| -> Result<Vec<Jet2>> {
        let mut out = vec![Jet2::constant(base, 1.0, n)];
        for k in 1..=n {
            let next = out[k - 1].mul(h)?;
            out.push(next);
        }
        Ok(out)
    };
    let p1 = powers(&h1)?;
    let p2 = powers(&h2)?;
    let mut acc = Jet2::zero(base, n);
    for (i, j, c) in outer.terms() {
        if i + j > n || c == 0.0 {
            continue;
        }
        acc = acc.add(&p1[i].mul(&p2[j])?.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: [f64; 2] = [0.0, 0.0];

    fn u(order: usize) -> Jet2 {
        Jet2::variable(O, Axis::U1, order)
    }

    fn v(order: usize) -> Jet2 {
        Jet2::variable(O, Axis::U2, order)
    }

    #[test]
    fn product_of_affine_factors() {
        let one = Jet2::constant(O, 1.0, 4);
        let a = one.add(&u(4)).unwrap();
        let b = one.add(&v(4)).unwrap();
        let p = a.mul(&b).unwrap();
        let expected = Jet2::from_terms(O, 4, [(1.0, (0, 0)), (1.0, (1, 0)), (1.0, (0, 1)), (1.0, (1, 1))]);
        assert_eq!(p, expected);
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = Jet2::from_terms(O, 4, [(2.0, (0, 0)), (-3.0, (2, 1)), (0.5, (0, 4))]);
        assert_eq!(a.add(&Jet2::zero(O, 4)).unwrap(), a);
    }

    #[test]
    fn mismatched_jets_are_rejected() {
        let a = Jet2::zero(O, 4);
        assert!(matches!(a.add(&Jet2::zero(O, 3)), Err(Error::InvalidJetCombination(_))));
        assert!(matches!(a.mul(&Jet2::zero([1.0, 0.0], 4)), Err(Error::InvalidJetCombination(_))));
    }

    #[test]
    fn products_drop_high_degrees() {
        let a = Jet2::from_terms(O, 2, [(1.0, (2, 0))]);
        assert_eq!(a.mul(&a).unwrap(), Jet2::zero(O, 2));
    }

    #[test]
    fn partial_examples() {
        let lam = Jet2::from_terms(O, 4, [(3.0, (0, 2)), (1.0, (2, 0))]);
        let dv = lam.partial(Axis::U2).unwrap();
        assert_eq!(dv, Jet2::from_terms(O, 3, [(6.0, (0, 1))]));

        let c = Jet2::constant(O, 7.0, 3);
        assert_eq!(c.partial(Axis::U1).unwrap(), Jet2::zero(O, 2));

        let m = Jet2::from_terms(O, 4, [(1.0, (2, 1))]);
        assert_eq!(m.partial(Axis::U1).unwrap(), Jet2::from_terms(O, 3, [(2.0, (1, 1))]));

        assert!(matches!(Jet2::constant(O, 1.0, 0).partial(Axis::U1), Err(Error::JetOrderExhausted { .. })));
    }

    #[test]
    fn compose_square_of_sum() {
        let outer = Jet1::new(0.0, vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let inner = u(4).add(&v(4)).unwrap();
        let r = j1_compose_j2(&outer, &inner).unwrap();
        assert_eq!(r, Jet2::from_terms(O, 4, [(1.0, (2, 0)), (2.0, (1, 1)), (1.0, (0, 2))]));
    }

    #[test]
    fn compose_identity_outer() {
        let inner = Jet2::from_terms(O, 3, [(0.5, (0, 0)), (2.0, (1, 0)), (-1.0, (1, 2))]);
        let outer = Jet1::variable(0.5, 6);
        assert_eq!(j1_compose_j2(&outer, &inner).unwrap(), inner);
    }

    #[test]
    fn compose_rejects_wrong_base() {
        let inner = Jet2::constant(O, 1.0, 2);
        let outer = Jet1::variable(0.0, 4);
        assert!(matches!(j1_compose_j2(&outer, &inner), Err(Error::CompositionBasePointMismatch { .. })));
    }

    #[test]
    fn det2_examples() {
        let one = Jet2::constant(O, 1.0, 3);
        let zero = Jet2::zero(O, 3);
        assert_eq!(j2_det2(&one, &zero, &zero, &one).unwrap(), one);

        let two_v = v(3).scale(2.0);
        assert_eq!(j2_det2(&one, &zero, &zero, &two_v).unwrap(), two_v);

        // Jacobian of (u, v³ + u²v): rows (1, 0) and (2uv, 3v² + u²).
        let q_u = Jet2::from_terms(O, 3, [(2.0, (1, 1))]);
        let q_v = Jet2::from_terms(O, 3, [(3.0, (0, 2)), (1.0, (2, 0))]);
        let lam = j2_det2(&one, &zero, &q_u, &q_v).unwrap();
        assert_eq!(lam, q_v);
    }

    #[test]
    fn jet1_derivatives_and_eval() {
        // y³ at 1: 1 + 3d + 3d² + d³
        let j = Jet1::new(1.0, vec![1.0, 3.0, 3.0, 1.0]).unwrap();
        assert_eq!(j.derivative_at(3), 6.0);
        assert_eq!(j.derivative_at(5), 0.0);
        assert!((j.eval(2.0) - 8.0).abs() < 1e-14);
        assert_eq!(j.derivative().unwrap().coeffs(), &[3.0, 6.0, 3.0]);
    }

    #[test]
    fn swap_axes_transposes_exponents() {
        let a = Jet2::from_terms([1.0, 2.0], 3, [(1.0, (2, 1)), (4.0, (0, 1))]);
        let s = a.swap_axes();
        assert_eq!(s.base_point(), [2.0, 1.0]);
        assert_eq!(s.coeff(1, 2), 1.0);
        assert_eq!(s.coeff(1, 0), 4.0);
    }
}
