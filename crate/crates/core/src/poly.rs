//! Sparse polynomial input format, in one or two variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet1, Jet2};

/// One monomial `c · x^e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub c: f64,
    pub e: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPolySpec {
    vars: u8,
    terms: Vec<Term>,
}

/// A polynomial in `vars` ∈ {1, 2} variables.
///
/// Construction canonicalizes the term list: exponents sorted, duplicates
/// merged, zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolySpec")]
pub struct PolySpec {
    vars: u8,
    terms: Vec<Term>,
}

impl TryFrom<RawPolySpec> for PolySpec {
    type Error = Error;

    fn try_from(raw: RawPolySpec) -> Result<Self> {
        PolySpec::new(raw.vars, raw.terms)
    }
}

/// Either arity of jet, as returned by [`poly_to_jet`].
#[derive(Debug, Clone, PartialEq)]
pub enum AnyJet {
    One(Jet1),
    Two(Jet2),
}

fn binomial_row(n: u32) -> Vec<f64> {
    let mut row = vec![1.0];
    for k in 1..=n as usize {
        let next = row[k - 1] * (n as usize + 1 - k) as f64 / k as f64;
        row.push(next);
    }
    row
}

/// Coefficients of `(p + d)^n` in powers of `d`.
fn shifted_power(p: f64, n: u32) -> Vec<f64> {
    binomial_row(n).into_iter().enumerate().map(|(k, b)| b * p.powi((n as usize - k) as i32)).collect()
}

impl PolySpec {
    pub fn new(vars: u8, terms: Vec<Term>) -> Result<Self> {
        if vars != 1 && vars != 2 {
            return Err(Error::InvalidSpec(format!("vars must be 1 or 2, got {vars}")));
        }
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.e.len() != vars as usize {
                return Err(Error::InvalidSpec(format!("exponent {:?} does not have {vars} entries", t.e)));
            }
            if !t.c.is_finite() {
                return Err(Error::InvalidSpec(format!("non-finite coefficient {}", t.c)));
            }
            merged.push(t);
        }
        merged.sort_by(|a, b| a.e.cmp(&b.e));
        let mut out: Vec<Term> = Vec::with_capacity(merged.len());
        for t in merged {
            match out.last_mut() {
                Some(last) if last.e == t.e => last.c += t.c,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.c != 0.0);
        Ok(Self { vars, terms: out })
    }

    /// `Σ coeffs[k] y^k`.
    pub fn univariate(coeffs: &[f64]) -> Result<Self> {
        let terms = coeffs.iter().enumerate().map(|(k, &c)| Term { c, e: vec![k as u32] }).collect();
        Self::new(1, terms)
    }

    /// Bivariate polynomial from `(c, (i, j))` monomials `c u₁^i u₂^j`.
    pub fn bivariate(terms: &[(f64, (u32, u32))]) -> Result<Self> {
        let terms = terms.iter().map(|&(c, (i, j))| Term { c, e: vec![i, j] }).collect();
        Self::new(2, terms)
    }

    pub fn zero(vars: u8) -> Self {
        Self { vars, terms: Vec::new() }
    }

    pub fn vars(&self) -> u8 {
        self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    fn expect_vars(&self, vars: u8) -> Result<()> {
        if self.vars != vars {
            return Err(Error::InvalidSpec(format!(
                "expected a {vars}-variable polynomial, got {} variables",
                self.vars
            )));
        }
        Ok(())
    }

    /// Value of a univariate polynomial. Panics on a bivariate spec.
    pub fn eval1(&self, y: f64) -> f64 {
        assert_eq!(self.vars, 1, "eval1 on a bivariate polynomial");
        self.terms.iter().map(|t| t.c * y.powi(t.e[0] as i32)).sum()
    }

    /// Value of a bivariate polynomial. Panics on a univariate spec.
    pub fn eval2(&self, u: [f64; 2]) -> f64 {
        assert_eq!(self.vars, 2, "eval2 on a univariate polynomial");
        self.terms.iter().map(|t| t.c * u[0].powi(t.e[0] as i32) * u[1].powi(t.e[1] as i32)).sum()
    }

    /// `k`-th derivative of a univariate polynomial at `y`.
    pub fn derivative1(&self, k: u32, y: f64) -> f64 {
        assert_eq!(self.vars, 1, "derivative1 on a bivariate polynomial");
        self.terms
            .iter()
            .filter(|t| t.e[0] >= k)
            .map(|t| {
                let n = t.e[0];
                let falling: f64 = (0..k).map(|m| (n - m) as f64).product();
                t.c * falling * y.powi((n - k) as i32)
            })
            .sum()
    }

    /// Gradient of a bivariate polynomial at `u`.
    pub fn gradient2(&self, u: [f64; 2]) -> [f64; 2] {
        assert_eq!(self.vars, 2, "gradient2 on a univariate polynomial");
        let mut g = [0.0; 2];
        for t in &self.terms {
            let (i, j) = (t.e[0] as i32, t.e[1] as i32);
            if i > 0 {
                g[0] += t.c * i as f64 * u[0].powi(i - 1) * u[1].powi(j);
            }
            if j > 0 {
                g[1] += t.c * j as f64 * u[0].powi(i) * u[1].powi(j - 1);
            }
        }
        g
    }

    /// Formal derivative of a univariate polynomial.
    pub fn differentiate1(&self) -> Result<PolySpec> {
        self.expect_vars(1)?;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.e[0] > 0)
            .map(|t| Term { c: t.c * t.e[0] as f64, e: vec![t.e[0] - 1] })
            .collect();
        PolySpec::new(1, terms)
    }

    /// Exact Taylor re-centering at `base_point`, truncated to `order`.
    pub fn to_jet1(&self, base_point: f64, order: usize) -> Result<Jet1> {
        self.expect_vars(1)?;
        let mut coeffs = vec![0.0; order + 1];
        for t in &self.terms {
            for (k, b) in shifted_power(base_point, t.e[0]).into_iter().enumerate() {
                if k <= order {
                    coeffs[k] += t.c * b;
                }
            }
        }
        Jet1::new(base_point, coeffs)
    }

    /// Exact Taylor re-centering at `base_point`, truncated to `order`.
    pub fn to_jet2(&self, base_point: [f64; 2], order: usize) -> Result<Jet2> {
        self.expect_vars(2)?;
        let mut pieces = Vec::new();
        for t in &self.terms {
            let a = shifted_power(base_point[0], t.e[0]);
            let b = shifted_power(base_point[1], t.e[1]);
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    if i + j <= order {
                        pieces.push((t.c * ai * bj, (i, j)));
                    }
                }
            }
        }
        Ok(Jet2::from_terms(base_point, order, pieces))
    }
}

/// Expands `spec` at `base_point` to the requested order. A univariate spec
/// uses `base_point[0]`.
pub fn poly_to_jet(spec: &PolySpec, base_point: [f64; 2], order: usize) -> Result<AnyJet> {
    match spec.vars() {
        1 => spec.to_jet1(base_point[0], order).map(AnyJet::One),
        _ => spec.to_jet2(base_point, order).map(AnyJet::Two),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_merges_duplicates() {
        let p = PolySpec::bivariate(&[(1.0, (1, 0)), (2.0, (0, 2)), (3.0, (1, 0)), (-2.0, (0, 2))]).unwrap();
        assert_eq!(p.terms(), &[Term { c: 4.0, e: vec![1, 0] }]);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(PolySpec::new(3, vec![]).is_err());
        assert!(PolySpec::new(2, vec![Term { c: 1.0, e: vec![1] }]).is_err());
        assert!(matches!(PolySpec::new(1, vec![Term { c: f64::NAN, e: vec![1] }]), Err(Error::InvalidSpec(_))));
        assert!(PolySpec::univariate(&[1.0]).unwrap().to_jet2([0.0, 0.0], 2).is_err());
    }

    #[test]
    fn recenter_square() {
        let p = PolySpec::bivariate(&[(1.0, (2, 0))]).unwrap();
        let j = p.to_jet2([1.0, 0.0], 4).unwrap();
        assert_eq!(j.coeff(0, 0), 1.0);
        assert_eq!(j.coeff(1, 0), 2.0);
        assert_eq!(j.coeff(2, 0), 1.0);
        assert_eq!(j.max_abs_coeff(), 2.0);
    }

    #[test]
    fn recenter_constant() {
        let p = PolySpec::bivariate(&[(5.0, (0, 0))]).unwrap();
        let j = p.to_jet2([0.3, -2.0], 4).unwrap();
        assert_eq!(j.value(), 5.0);
        assert_eq!(j.max_abs_coeff(), 5.0);
    }

    #[test]
    fn first_partial_matches_finite_difference() {
        // v³ + uv at (1,1): ∂/∂v = 3v² + u = 4
        let p = PolySpec::bivariate(&[(1.0, (0, 3)), (1.0, (1, 1))]).unwrap();
        let j = p.to_jet2([1.0, 1.0], 4).unwrap();
        let h = 1e-5;
        let fd = (p.eval2([1.0, 1.0 + h]) - p.eval2([1.0, 1.0 - h])) / (2.0 * h);
        assert!((j.coeff(0, 1) - 4.0).abs() < 1e-14);
        assert!((fd - 4.0).abs() < 1e-8);
    }

    #[test]
    fn univariate_derivatives() {
        let f = PolySpec::univariate(&[0.0, 0.0, 0.5]).unwrap();
        assert_eq!(f.derivative1(2, 3.0), 1.0);
        assert_eq!(f.derivative1(1, 3.0), 3.0);
        assert_eq!(f.derivative1(3, 3.0), 0.0);
        let j = f.to_jet1(3.0, 6).unwrap();
        assert_eq!(j.derivative_at(2), 1.0);
        assert_eq!(f.differentiate1().unwrap(), PolySpec::univariate(&[0.0, 1.0]).unwrap());
    }

    #[test]
    fn json_shape() {
        let p: PolySpec =
            serde_json::from_str(r#"{"vars": 2, "terms": [{"c": 3.0, "e": [0,2]}, {"c": 1.0, "e": [2,0]}]}"#).unwrap();
        assert_eq!(p.eval2([1.0, 2.0]), 13.0);
        let bad = serde_json::from_str::<PolySpec>(r#"{"vars": 2, "terms": [{"c": 1.0, "e": [1]}]}"#);
        assert!(bad.is_err());
    }
}
