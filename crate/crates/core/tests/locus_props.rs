mod common;

use common::{random_poly2, rng};
use planesing::germ::discriminant;
use planesing::locus::{
    critical_value_image, find_special_points, ruling_map, sample_singular_set, BoxDomain, SpecialKind,
};
use planesing::map::PlaneMap;
use planesing::parse::parse_curve;
use planesing::{catalog, classify, PolyMap, SingularityClass, ToleranceConfig};

fn unit_box(n: usize) -> BoxDomain {
    BoxDomain::new([-1.0, -1.0], [1.0, 1.0], [n, n]).unwrap()
}

/// Largest |λ| over the grid nodes, the scale of the residual invariant.
fn lambda_scale(map: &impl PlaneMap, d: &BoxDomain) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..d.grid[0] {
        for j in 0..d.grid[1] {
            m = m.max(map.discriminant_at(d.node(i, j)).abs());
        }
    }
    m
}

#[test]
fn beaks_branches_have_slopes_of_one_over_root_three() {
    let map = catalog::normal_form("beaks").unwrap();
    let curves = sample_singular_set(&map, &unit_box(64), &ToleranceConfig::default());
    assert!(curves.len() >= 2, "expected two branches, got {}", curves.len());
    let target = 1.0 / 3f64.sqrt();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for v in curves.iter().flat_map(|c| &c.vertices) {
        let r = v[0].hypot(v[1]);
        if r > 1e-3 && r < 0.3 {
            let s = v[1] / v[0];
            if s > 0.0 {
                pos.push(s)
            } else {
                neg.push(s)
            }
        }
    }
    assert!(!pos.is_empty() && !neg.is_empty());
    for s in pos {
        assert!((s - target).abs() < 1e-3, "slope {s}");
    }
    for s in neg {
        assert!((s + target).abs() < 1e-3, "slope {s}");
    }
}

#[test]
fn traced_vertices_lie_on_the_singular_set() {
    let tol = ToleranceConfig::default();
    let mut maps: Vec<PolyMap> =
        ["fold", "cusp", "beaks", "swallowtail"].iter().map(|n| catalog::normal_form(n).unwrap()).collect();
    let mut rng = rng(11);
    for _ in 0..10 {
        maps.push(PolyMap::new([random_poly2(&mut rng, 3, 1.0), random_poly2(&mut rng, 3, 1.0)]).unwrap());
    }
    let d = unit_box(48);
    for map in &maps {
        let scale = lambda_scale(map, &d);
        for c in sample_singular_set(map, &d, &tol) {
            assert_eq!(c.vertices.len(), c.residuals.len());
            for (v, r) in c.vertices.iter().zip(&c.residuals) {
                let lam = map.discriminant_at(*v).abs();
                assert!(lam <= 1e-10 * scale, "|λ| = {lam} at {v:?}, scale {scale}");
                assert!(*r <= 1e-10 * scale);
            }
        }
    }
}

#[test]
fn cusp_image_is_a_semicubical_parabola() {
    let map = catalog::normal_form("cusp").unwrap();
    let curves = sample_singular_set(&map, &unit_box(64), &ToleranceConfig::default());
    let images = critical_value_image(&map, &curves);
    assert!(!images.is_empty());
    for x in images.iter().flat_map(|c| &c.vertices) {
        // x = (−3v², −2v³), so 27 x₂² + 4 x₁³ = 0.
        assert!((27.0 * x[1] * x[1] + 4.0 * x[0].powi(3)).abs() < 1e-8, "{x:?}");
    }
}

#[test]
fn swallowtail_image_follows_its_parametrization() {
    let map = catalog::normal_form("swallowtail").unwrap();
    let curves = sample_singular_set(&map, &unit_box(64), &ToleranceConfig::default());
    let images = critical_value_image(&map, &curves);
    for (c, img) in curves.iter().zip(&images) {
        for (u, x) in c.vertices.iter().zip(&img.vertices) {
            // S(f) is u = −4v³ with image (−4v³, −3v⁴).
            let v = u[1];
            assert!((x[0] + 4.0 * v.powi(3)).abs() < 1e-9, "{u:?} -> {x:?}");
            assert!((x[1] + 3.0 * v.powi(4)).abs() < 1e-9, "{u:?} -> {x:?}");
        }
    }
}

#[test]
fn special_points_of_the_catalog() {
    let tol = ToleranceConfig::default();
    let d = BoxDomain::new([-0.5, -0.45], [0.55, 0.5], [24, 24]).unwrap();
    for (name, class) in [
        ("cusp", SingularityClass::Cusp),
        ("lips", SingularityClass::Lips),
        ("beaks", SingularityClass::Beaks),
        ("swallowtail", SingularityClass::Swallowtail),
    ] {
        let map = catalog::normal_form(name).unwrap();
        let pts = find_special_points(&map, &d, &tol);
        let at_origin: Vec<_> = pts.iter().filter(|p| p.location[0].hypot(p.location[1]) < 1e-6).collect();
        assert_eq!(at_origin.len(), 1, "{name}: {pts:?}");
        assert_eq!(at_origin[0].report.class, class, "{name}");
        let expected_kind = match class {
            SingularityClass::Lips | SingularityClass::Beaks => SpecialKind::DegenerateCandidate,
            _ => SpecialKind::CuspCandidate,
        };
        assert_eq!(at_origin[0].kind, expected_kind, "{name}");
    }
}

#[test]
fn fold_has_no_degenerate_candidates() {
    let map = catalog::normal_form("fold").unwrap();
    let pts = find_special_points(&map, &unit_box(32), &ToleranceConfig::default());
    assert!(pts.iter().all(|p| p.kind != SpecialKind::DegenerateCandidate));
}

#[test]
fn sampling_is_deterministic() {
    let tol = ToleranceConfig::default();
    let map = catalog::normal_form("swallowtail").unwrap();
    let d = unit_box(40);
    assert_eq!(sample_singular_set(&map, &d, &tol), sample_singular_set(&map, &d, &tol));
    assert_eq!(find_special_points(&map, &d, &tol), find_special_points(&map, &d, &tol));
}

#[test]
fn ruling_map_follows_the_curvature_criterion() {
    let tol = ToleranceConfig::default();
    let cases = [
        ("t, t^3", SingularityClass::Beaks),
        ("t, t^2", SingularityClass::Fold),
        ("t, t^3 + t^4", SingularityClass::Beaks),
        ("t, t^3 + 0.5 t^2", SingularityClass::Fold),
        ("t, t^3 + t^2", SingularityClass::Fold),
    ];
    for (curve, class) in cases {
        let g = ruling_map(&parse_curve(curve).unwrap(), 0.0).unwrap();
        assert_eq!(classify(&g, &tol).class, class, "{curve}");
    }
    // Off the inflection the ruling map of (t, t³) is a fold at every t₀.
    let g = ruling_map(&parse_curve("t, t^3").unwrap(), 0.7).unwrap();
    assert_eq!(classify(&g, &tol).class, SingularityClass::Fold);
}

#[test]
fn ruling_discriminant_is_proportional_to_curvature() {
    // For γ = (t, t³), det(γ′ + uγ″, γ′) = −6tu exactly.
    let g = ruling_map(&parse_curve("t, t^3").unwrap(), 0.0).unwrap();
    let lam = discriminant(&g);
    assert!((lam.coeff(1, 1).abs() - 6.0).abs() < 1e-12);
    for (i, j, c) in lam.terms() {
        if (i, j) != (1, 1) {
            assert!(c.abs() < 1e-12, "unexpected term ({i},{j}) = {c}");
        }
    }
}
