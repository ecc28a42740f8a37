//! Built-in normal forms and conservation-law problems.

use crate::conslaw::ConsLawProblem;
use crate::map::PolyMap;
use crate::parse::{parse_map, parse_poly2};
use crate::poly::PolySpec;

/// Normal forms recognized by name, with their inline definitions.
pub const NORMAL_FORMS: &[(&str, &str)] = &[
    ("immersion", "(u, v)"),
    ("fold", "(u, v^2)"),
    ("cusp", "(u, v^3 + u v)"),
    ("lips", "(u, v^3 + u^2 v)"),
    ("beaks", "(u, v^3 - u^2 v)"),
    ("swallowtail", "(u, u v + v^4)"),
    // Deeper germs with no recognition criterion; they classify as degenerate.
    ("4_3_plus", "(u, v^3 + u^3 v)"),
    ("6_plus", "(u, u v + v^5 + v^7)"),
    ("11_5", "(u, u v^2 + v^4 + v^5)"),
];

pub fn normal_form(name: &str) -> Option<PolyMap> {
    NORMAL_FORMS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| PolyMap::new(parse_map(src).expect("catalog entries parse")).expect("bivariate"))
}

/// Named conservation-law problems.
///
/// `burgers-lips`: `f₁ = y²/2`, `f₂ = 0`, `φ = −u₁ + u₁³ + u₁u₂²`, whose first
/// singularity is a lips at the origin at `t = 1`. `burgers-beaks` flips the
/// sign of `u₁u₂²`, making the origin a saddle of `t`. `linear-increasing`
/// never focuses.
pub const PROBLEMS: &[(&str, &str)] =
    &[("burgers-lips", "-u + u^3 + u v^2"), ("burgers-beaks", "-u + u^3 - u v^2"), ("linear-increasing", "u + 0.5 v")];

pub fn problem(name: &str) -> Option<ConsLawProblem> {
    PROBLEMS.iter().find(|(n, _)| *n == name).map(|(_, phi)| {
        ConsLawProblem::new(
            PolySpec::univariate(&[0.0, 0.0, 0.5]).expect("valid"),
            PolySpec::zero(1),
            parse_poly2(phi).expect("catalog entries parse"),
        )
        .expect("valid arities")
    })
}
