//! Plane-to-plane map germs and their singularity recognition.
//!
//! With `f = (P, Q)` the discriminant is `λ = det(∂f/∂u₁, ∂f/∂u₂)`. At a
//! corank-one point a null vector field `η` spans the kernel of `df` along
//! the singular set, and the class is read off from `dλ`, `Hess λ` and the
//! iterated directional derivatives `ηλ`, `ηηλ`, `ηηηλ`:
//!
//! | class       | test                                            |
//! |-------------|-------------------------------------------------|
//! | fold        | `ηλ ≠ 0`                                        |
//! | cusp        | `dλ ≠ 0`, `ηλ = 0`, `ηηλ ≠ 0`                   |
//! | swallowtail | `dλ ≠ 0`, `ηλ = ηηλ = 0`, `ηηηλ ≠ 0`            |
//! | lips        | `dλ = 0`, `det Hess λ > 0`                      |
//! | beaks       | `dλ = 0`, `det Hess λ < 0`, `ηηλ ≠ 0`           |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{j2_compose_j2, j2_det2, Axis, Jet2, DEFAULT_JET2_ORDER};
use crate::poly::PolySpec;
use crate::tolerance::{ToleranceConfig, NONZERO_FACTOR};

/// Base-point tolerance when checking that a diffeomorphism fixes its point.
const FIXED_POINT_TOL: f64 = 1e-9;

/// A map germ `f = (P, Q)` at a base point, held as two Taylor jets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneMapGerm {
    components: [Jet2; 2],
}

impl PlaneMapGerm {
    /// Both components must share base point and order, and the order must
    /// be at least 4.
    pub fn new(p: Jet2, q: Jet2) -> Result<Self> {
        if p.base_point() != q.base_point() || p.order() != q.order() {
            return Err(Error::InvalidJetCombination("germ components must share base point and order".into()));
        }
        if p.order() < DEFAULT_JET2_ORDER {
            return Err(Error::JetOrderExhausted { needed: DEFAULT_JET2_ORDER, available: p.order() });
        }
        Ok(Self { components: [p, q] })
    }

    pub fn from_polys(components: &[PolySpec; 2], base_point: [f64; 2]) -> Result<Self> {
        Self::new(
            components[0].to_jet2(base_point, DEFAULT_JET2_ORDER)?,
            components[1].to_jet2(base_point, DEFAULT_JET2_ORDER)?,
        )
    }

    pub fn components(&self) -> &[Jet2; 2] {
        &self.components
    }

    pub fn base_point(&self) -> [f64; 2] {
        self.components[0].base_point()
    }

    pub fn order(&self) -> usize {
        self.components[0].order()
    }

    /// `f(p)`.
    pub fn value(&self) -> [f64; 2] {
        [self.components[0].value(), self.components[1].value()]
    }

    /// Rows are `∇P(p)` and `∇Q(p)`.
    pub fn jacobian(&self) -> [[f64; 2]; 2] {
        [self.components[0].gradient(), self.components[1].gradient()]
    }

    /// The same map with the source coordinates `u₁`, `u₂` exchanged.
    pub fn swap_source(&self) -> Self {
        Self { components: [self.components[0].swap_axes(), self.components[1].swap_axes()] }
    }

    /// Largest coefficient of the non-constant part of either component.
    fn linear_scale(&self) -> f64 {
        self.components
            .iter()
            .flat_map(|c| c.terms().filter(|&(i, j, _)| i + j > 0).map(|(_, _, v)| v.abs()))
            .fold(0.0, f64::max)
    }
}

/// Singularity classes reported by [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityClass {
    Immersion,
    Fold,
    Cusp,
    Lips,
    Beaks,
    Swallowtail,
    CorankTwo,
    Degenerate,
    Unrecognized,
}

impl SingularityClass {
    /// One of the five recognized singularities, or a regular point.
    pub fn is_definite(self) -> bool {
        !matches!(self, Self::CorankTwo | Self::Degenerate | Self::Unrecognized)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Immersion => "Immersion",
            Self::Fold => "Fold",
            Self::Cusp => "Cusp",
            Self::Lips => "Lips",
            Self::Beaks => "Beaks",
            Self::Swallowtail => "Swallowtail",
            Self::CorankTwo => "CorankTwo",
            Self::Degenerate => "Degenerate",
            Self::Unrecognized => "Unrecognized",
        }
    }
}

impl std::fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which Jacobian row generated the null field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobianRow {
    First,
    Second,
}

/// Null vector field `η`, with `df(η) = (0, −λ)` when built from the first
/// row and `df(η) = (−λ, 0)` when built from the second.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullField {
    pub eta: [Jet2; 2],
    pub row: JacobianRow,
}

impl NullField {
    pub fn at_base(&self) -> [f64; 2] {
        [self.eta[0].value(), self.eta[1].value()]
    }
}

/// The discriminant `λ = P_u Q_v − P_v Q_u` as an order-3 jet.
pub fn discriminant(f: &PlaneMapGerm) -> Jet2 {
    let [p, q] = &f.components;
    let order = f.order() - 1;
    let pu = p.partial(Axis::U1).expect("germ order ≥ 4").truncate(order);
    let pv = p.partial(Axis::U2).expect("germ order ≥ 4").truncate(order);
    let qu = q.partial(Axis::U1).expect("germ order ≥ 4").truncate(order);
    let qv = q.partial(Axis::U2).expect("germ order ≥ 4").truncate(order);
    j2_det2(&pu, &pv, &qu, &qv).expect("partials share base point and order").truncate(3)
}

/// Singular values `σ₁ ≥ σ₂ ≥ 0` of a 2×2 matrix.
pub fn singular_values(m: [[f64; 2]; 2]) -> [f64; 2] {
    let s = m[0][0].powi(2) + m[0][1].powi(2) + m[1][0].powi(2) + m[1][1].powi(2);
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    let disc = ((s - 2.0 * det) * (s + 2.0 * det)).max(0.0).sqrt();
    let s1 = ((s + disc) / 2.0).sqrt();
    let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
    [s1, s2]
}

/// Numerical rank of `df(p)`.
pub fn rank_df(f: &PlaneMapGerm, tol: &ToleranceConfig) -> u8 {
    let [s1, s2] = singular_values(f.jacobian());
    let scale = f.linear_scale();
    if scale == 0.0 || s1 <= tol.rank_threshold * scale {
        0
    } else if s2 <= tol.rank_threshold * s1 {
        1
    } else {
        2
    }
}

/// Canonical null field with default tolerances.
pub fn null_field(f: &PlaneMapGerm) -> Result<NullField> {
    null_field_with(f, &ToleranceConfig::default())
}

/// `η = (P_v, −P_u)` when `∇P(p)` is the larger gradient row, otherwise
/// `η = (−Q_v, Q_u)`. Taking the dominant row keeps `|η(p)|` away from zero.
pub fn null_field_with(f: &PlaneMapGerm, tol: &ToleranceConfig) -> Result<NullField> {
    let [p, q] = &f.components;
    let cutoff = tol.rank_threshold * f.linear_scale();
    let norm = |g: [f64; 2]| g[0].hypot(g[1]);
    let order = f.order() - 1;
    let partials = |c: &Jet2| -> (Jet2, Jet2) {
        (
            c.partial(Axis::U1).expect("germ order ≥ 4").truncate(order),
            c.partial(Axis::U2).expect("germ order ≥ 4").truncate(order),
        )
    };
    let (np, nq) = (norm(p.gradient()), norm(q.gradient()));
    if np.max(nq) <= cutoff {
        Err(Error::CorankTwo)
    } else if np >= nq {
        let (pu, pv) = partials(p);
        Ok(NullField { eta: [pv, pu.scale(-1.0)], row: JacobianRow::First })
    } else {
        let (qu, qv) = partials(q);
        Ok(NullField { eta: [qv.scale(-1.0), qu], row: JacobianRow::Second })
    }
}

/// The directional derivative `ηg = η₁ g_{u₁} + η₂ g_{u₂}` with `η` varying.
pub fn eta_apply(g: &Jet2, eta: &NullField) -> Result<Jet2> {
    if g.order() == 0 {
        return Err(Error::JetOrderExhausted { needed: 1, available: 0 });
    }
    let n = g.order() - 1;
    if eta.eta[0].order() < n {
        return Err(Error::JetOrderExhausted { needed: n, available: eta.eta[0].order() });
    }
    let gu = g.partial(Axis::U1)?;
    let gv = g.partial(Axis::U2)?;
    eta.eta[0].truncate(n).mul(&gu)?.add(&eta.eta[1].truncate(n).mul(&gv)?)
}

/// `(ηλ, ηηλ, ηηηλ)` at the base point.
pub fn eta_derivatives(lambda: &Jet2, eta: &NullField) -> Result<[f64; 3]> {
    if lambda.order() < 3 {
        return Err(Error::JetOrderExhausted { needed: 3, available: lambda.order() });
    }
    let lambda = lambda.truncate(3);
    let d1 = eta_apply(&lambda, eta)?;
    let d2 = eta_apply(&d1, eta)?;
    let d3 = eta_apply(&d2, eta)?;
    Ok([d1.value(), d2.value(), d3.value()])
}

/// A tested quantity together with its zero threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub value: f64,
    pub threshold: f64,
    /// `|value| / threshold`: at most 1 reads as zero, at least 10 as nonzero.
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    NonZero,
    Indeterminate,
}

impl Margin {
    pub fn new(value: f64, threshold: f64) -> Self {
        let threshold = threshold.max(f64::MIN_POSITIVE);
        let ratio = (value.abs() / threshold).min(f64::MAX);
        Self { value, threshold, ratio }
    }

    pub fn verdict(&self) -> Verdict {
        if self.value.abs() <= self.threshold {
            Verdict::Zero
        } else if self.value.abs() >= NONZERO_FACTOR * self.threshold {
            Verdict::NonZero
        } else {
            Verdict::Indeterminate
        }
    }
}

/// Margins of every quantity the decision tree may consult. The `η` entries
/// are absent unless `p` has corank one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    pub lambda_at_p: Margin,
    pub d_lambda: Margin,
    pub det_hess: Margin,
    pub eta_lambda: Option<Margin>,
    pub eta2_lambda: Option<Margin>,
    pub eta3_lambda: Option<Margin>,
}

/// Everything computed while classifying a germ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class: SingularityClass,
    pub base_point: [f64; 2],
    pub value_at_p: [f64; 2],
    pub rank_df: u8,
    pub singular_values: [f64; 2],
    pub lambda_jet: Jet2,
    pub lambda_at_p: f64,
    pub d_lambda: [f64; 2],
    pub hess_lambda: [[f64; 2]; 2],
    pub det_hess: f64,
    pub eta_row: Option<JacobianRow>,
    pub eta_at_p: Option<[f64; 2]>,
    pub eta_lambda: Option<f64>,
    pub eta2_lambda: Option<f64>,
    pub eta3_lambda: Option<f64>,
    pub tolerances_used: ToleranceConfig,
    pub margins: Margins,
    pub note: Option<String>,
}

impl ClassificationReport {
    /// Re-applies the decision tree to the recorded rank and margins.
    pub fn rederive_class(&self) -> SingularityClass {
        decide(self.rank_df, &self.margins)
    }
}

fn decide(rank: u8, m: &Margins) -> SingularityClass {
    use SingularityClass::*;
    use Verdict::*;
    match rank {
        2 => return Immersion,
        0 => return CorankTwo,
        _ => {}
    }
    match m.lambda_at_p.verdict() {
        NonZero => return Immersion,
        Indeterminate => return Unrecognized,
        Zero => {}
    }
    let (Some(e1), Some(e2), Some(e3)) = (m.eta_lambda, m.eta2_lambda, m.eta3_lambda) else {
        return Unrecognized;
    };
    match e1.verdict() {
        NonZero => return Fold,
        Indeterminate => return Unrecognized,
        Zero => {}
    }
    match m.d_lambda.verdict() {
        NonZero => match (e2.verdict(), e3.verdict()) {
            (NonZero, _) => Cusp,
            (Zero, NonZero) => Swallowtail,
            (Zero, Zero) => Degenerate,
            _ => Unrecognized,
        },
        Zero => match m.det_hess.verdict() {
            NonZero if m.det_hess.value > 0.0 => Lips,
            NonZero => match e2.verdict() {
                NonZero => Beaks,
                Zero => Degenerate,
                Indeterminate => Unrecognized,
            },
            Zero => Degenerate,
            Indeterminate => Unrecognized,
        },
        Indeterminate => Unrecognized,
    }
}

/// Classifies the germ at its base point. Uncertain cases come back as
/// `Degenerate` or `Unrecognized`; nothing is forced into a named class.
pub fn classify(f: &PlaneMapGerm, tol: &ToleranceConfig) -> ClassificationReport {
    let lambda = discriminant(f);
    let s_lambda = lambda.max_abs_coeff();
    let jac = f.jacobian();
    let rank = rank_df(f, tol);
    let d_lambda = lambda.gradient();
    let hess = lambda.hessian();
    let det_hess = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0];
    let z = tol.zero_rel;

    let mut margins = Margins {
        lambda_at_p: Margin::new(lambda.value(), z * s_lambda),
        d_lambda: Margin::new(d_lambda[0].hypot(d_lambda[1]), z * s_lambda),
        det_hess: Margin::new(det_hess, z * (2.0 * s_lambda).powi(2)),
        eta_lambda: None,
        eta2_lambda: None,
        eta3_lambda: None,
    };
    let mut report = ClassificationReport {
        class: SingularityClass::Unrecognized,
        base_point: f.base_point(),
        value_at_p: f.value(),
        rank_df: rank,
        singular_values: singular_values(jac),
        lambda_at_p: lambda.value(),
        d_lambda,
        hess_lambda: hess,
        det_hess,
        lambda_jet: lambda.clone(),
        eta_row: None,
        eta_at_p: None,
        eta_lambda: None,
        eta2_lambda: None,
        eta3_lambda: None,
        tolerances_used: *tol,
        margins: margins.clone(),
        note: None,
    };

    if rank == 1 {
        if let Ok(eta) = null_field_with(f, tol) {
            let derivs = eta_derivatives(&lambda, &eta).expect("λ has order 3, η order 3");
            // Same computation on absolute coefficients: a bound on the sum of
            // the magnitudes that cancel into each value.
            let abs_eta = NullField { eta: [eta.eta[0].abs_coeffs(), eta.eta[1].abs_coeffs()], row: eta.row };
            let mags = eta_derivatives(&lambda.abs_coeffs(), &abs_eta).expect("same orders");
            // Floor for rounding already present in the coefficients of λ.
            let [e1, e2] = eta.at_base();
            let n = e1.hypot(e2);
            let bound = |k: usize| z * mags[k].max(s_lambda * n.powi(k as i32 + 1));
            margins.eta_lambda = Some(Margin::new(derivs[0], bound(0)));
            margins.eta2_lambda = Some(Margin::new(derivs[1], bound(1)));
            margins.eta3_lambda = Some(Margin::new(derivs[2], bound(2)));
            report.eta_row = Some(eta.row);
            report.eta_at_p = Some(eta.at_base());
            report.eta_lambda = Some(derivs[0]);
            report.eta2_lambda = Some(derivs[1]);
            report.eta3_lambda = Some(derivs[2]);
        }
        if margins.lambda_at_p.verdict() == Verdict::NonZero {
            report.note = Some("rank one within tolerance but λ(p) ≠ 0; treated as a regular point".into());
        }
    }
    report.margins = margins;
    report.class = report.rederive_class();
    report
}

fn expand_pair(pair: &[PolySpec; 2], at: [f64; 2], order: usize) -> Result<[Jet2; 2]> {
    Ok([pair[0].to_jet2(at, order)?, pair[1].to_jet2(at, order)?])
}

fn check_diffeo(jets: &[Jet2; 2], fixed: [f64; 2], which: &str) -> Result<()> {
    let moved = (jets[0].value() - fixed[0]).abs().max((jets[1].value() - fixed[1]).abs());
    if moved > FIXED_POINT_TOL {
        return Err(Error::NotADiffeomorphism(format!("{which} diffeomorphism does not fix {fixed:?}")));
    }
    let [a, b] = jets[0].gradient();
    let [c, d] = jets[1].gradient();
    let det = a * d - b * c;
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    if scale == 0.0 || det.abs() <= 1e-12 * scale * scale {
        return Err(Error::NotADiffeomorphism(format!("{which} linear part is singular")));
    }
    Ok(())
}

/// `Φ₂ ∘ f ∘ Φ₁` as a germ at the same base point `p`.
///
/// `Φ₁` must fix `p` and `Φ₂` must fix `f(p)`; both need invertible linear
/// parts there.
pub fn conjugate_by_diffeos(f: &PlaneMapGerm, source: &[PolySpec; 2], target: &[PolySpec; 2]) -> Result<PlaneMapGerm> {
    let p = f.base_point();
    let q = f.value();
    let order = f.order();
    let phi1 = expand_pair(source, p, order)?;
    check_diffeo(&phi1, p, "source")?;
    let phi2 = expand_pair(target, q, order)?;
    check_diffeo(&phi2, q, "target")?;

    let inner = [&phi1[0], &phi1[1]];
    let g0 = j2_compose_j2(&f.components[0], inner)?;
    let g1 = j2_compose_j2(&f.components[1], inner)?;
    let h0 = j2_compose_j2(&phi2[0], [&g0, &g1])?;
    let h1 = j2_compose_j2(&phi2[1], [&g0, &g1])?;
    PlaneMapGerm::new(h0, h1)
}
