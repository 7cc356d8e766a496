mod common;

use common::{p, random_center, ring, rng};
use plainchart::blowup::{
    plain_blowup_atlas, rees_charts, rees_consistency, shifted_generators, transition_map,
    verify_atlas, CHECK_TRANSITIONS,
};
use plainchart::geometry::{AffinePatch, CenterSpec, RationalMap};
use plainchart::poly::Polynomial;
use plainchart::Rational;

fn elliptic() -> CenterSpec {
    let r = ring(&["x", "y", "z"]);
    CenterSpec::new(
        AffinePatch::affine_space(&r),
        &["z"],
        p("x-x^3+y^2", &r),
        vec![Rational::zero(); 3],
        None,
    )
    .unwrap()
}

#[test]
fn elliptic_charts_match_displayed_polynomials() {
    let atlas = plain_blowup_atlas(&elliptic()).unwrap();
    let c0 = &atlas.charts[0];
    let r0 = c0.patch.ring();
    assert_eq!(
        c0.patch.inequalities(),
        [p("1-3*x^2-3*x*s*(x-x^3+y^2)-s^2*(x-x^3+y^2)^2", r0)]
    );
    assert_eq!(c0.exceptional, p("x-x^3+y^2", r0));
    let c1 = &atlas.charts[1];
    let r1 = c1.patch.ring();
    assert_eq!(
        c1.patch.inequalities(),
        [p("1-3*w^2+3*w*t*(w-w^3+y^2)-t^2*(w-w^3+y^2)^2", r1)]
    );
    assert_eq!(c1.exceptional, p("w-w^3+y^2", r1));
}

#[test]
fn elliptic_transition_is_the_displayed_map() {
    let atlas = plain_blowup_atlas(&elliptic()).unwrap();
    let tau = transition_map(&atlas, 0, 1).unwrap();
    let r = tau.source().ring();
    let u = p("1+s-3*x^2*s-3*x*s^2*(x-x^3+y^2)-s^3*(x-x^3+y^2)^2", r);
    let one = Polynomial::one(r);
    let comps = tau.components();
    assert_eq!(comps[0], (p("x+x*s-x^3*s+y^2*s", r), one.clone()));
    assert_eq!(comps[1], (p("y", r), one));
    assert_eq!(comps[2], (p("s", r), u.clone()));
    assert!(tau.source().inequalities().contains(&u));
    let back = transition_map(&atlas, 1, 0).unwrap();
    let r1 = back.source().ring();
    let v = p("1-t+3*w^2*t-3*w*t^2*(w-w^3+y^2)+t^3*(w-w^3+y^2)^2", r1);
    assert!(back.source().inequalities().contains(&v));
}

#[test]
fn elliptic_atlas_verifies() {
    let atlas = plain_blowup_atlas(&elliptic()).unwrap();
    let report = verify_atlas(&atlas);
    assert!(report.passed(), "{report}");
}

#[test]
fn elliptic_rees_and_plain_agree() {
    let atlas = plain_blowup_atlas(&elliptic()).unwrap();
    assert_eq!(rees_consistency(&atlas).unwrap(), vec![true, true]);
}

#[test]
fn perturbed_transition_fails_only_the_transition_check() {
    let mut atlas = plain_blowup_atlas(&elliptic()).unwrap();
    let tau = transition_map(&atlas, 0, 1).unwrap();
    let mut comps = tau.components().to_vec();
    comps[1].0 = &comps[1].0 + &Polynomial::one(tau.source().ring());
    let target = atlas.charts[1].patch.clone();
    let bad = RationalMap::new(tau.source().clone(), target, comps);
    // the perturbed map may leave the overlap; fall back to the chart itself
    let bad = bad.unwrap();
    atlas.replace_transition(0, 1, bad).unwrap();
    let report = verify_atlas(&atlas);
    for c in &report.checks {
        assert_eq!(c.passed, c.name != CHECK_TRANSITIONS, "{report}");
    }
}

#[test]
fn coordinate_center_gives_affine_charts() {
    // f is the shift variable itself: every chart is all of affine space
    let r = ring(&["x", "y", "z"]);
    let c = CenterSpec::new(
        AffinePatch::affine_space(&r),
        &["x", "y"],
        p("z", &r),
        vec![Rational::zero(); 3],
        None,
    )
    .unwrap();
    let atlas = plain_blowup_atlas(&c).unwrap();
    assert_eq!(atlas.charts.len(), 3);
    for chart in &atlas.charts {
        assert!(chart.patch.inequalities().is_empty());
    }
    assert!(verify_atlas(&atlas).passed());
}

#[test]
fn a2_origin_rees_charts() {
    let r = ring(&["x", "y"]);
    let charts = rees_charts(&AffinePatch::affine_space(&r), &[p("x", &r), p("y", &r)]).unwrap();
    assert_eq!(charts.len(), 2);
    let r0 = charts[0].patch.ring();
    let r1 = charts[1].patch.ring();
    let g0 = charts[0].relations.generators();
    let g1 = charts[1].relations.generators();
    assert_eq!(g0.len(), 1);
    assert_eq!(g1.len(), 1);
    assert!(g0[0].is_scalar_multiple_of(&p("x*x2-y", r0)));
    assert!(g1[0].is_scalar_multiple_of(&p("y*x1-x", r1)));
}

#[test]
fn single_generator_rees_chart_has_no_relations() {
    let r = ring(&["x", "y"]);
    let charts = rees_charts(&AffinePatch::affine_space(&r), &[p("x^2+y", &r)]).unwrap();
    assert_eq!(charts.len(), 1);
    assert!(charts[0].relations.is_zero());
}

#[test]
fn random_centers_shifted_generators() {
    let mut g = rng(11);
    for _ in 0..100 {
        let c = random_center(&mut g);
        let sg = shifted_generators(&c).unwrap();
        let ring = c.ring();
        for (k, &i) in c.subvariety().iter().enumerate() {
            // direct expansion: f_i - f - x_i g_i
            let xi = Polynomial::var_index(ring, i);
            assert!((&(&sg.f_list[k] - c.f()) - &(&xi * &sg.g_list[k])).is_zero());
            assert!(sg.h_list[k].evaluate(c.point()).unwrap().is_zero());
        }
    }
}

#[test]
fn random_centers_atlases_verify() {
    let mut g = rng(12);
    for _ in 0..30 {
        let c = random_center(&mut g);
        let atlas = plain_blowup_atlas(&c).unwrap();
        let report = verify_atlas(&atlas);
        assert!(report.passed(), "{}\n{report}", c.f());
    }
}

#[test]
fn shifted_generator_factors_on_the_f_chart() {
    let center = elliptic();
    let atlas = plain_blowup_atlas(&center).unwrap();
    let sg = shifted_generators(&center).unwrap();
    let chart = &atlas.charts[0];
    let r0 = chart.patch.ring().clone();
    let images: Vec<Polynomial> = chart
        .structure_map
        .components()
        .iter()
        .map(|(n, d)| {
            assert!(d.is_constant());
            n.clone()
        })
        .collect();
    let pulled = sg.f_list[0].compose_images(&images, &r0).unwrap();
    let cofactor = pulled.exact_divide(&chart.exceptional).unwrap();
    let g = sg.g_list[0].compose_images(&images, &r0).unwrap();
    assert_eq!(cofactor, &Polynomial::one(&r0) + &(&p("s", &r0) * &g));
    // the cofactor is the overlap condition with the shifted chart, not a unit
    assert_eq!(
        cofactor,
        p("1+s-3*x^2*s-3*x*s^2*(x-x^3+y^2)-s^3*(x-x^3+y^2)^2", &r0)
    );
    let pt = [Rational::zero(), Rational::zero(), Rational::from(-1)];
    assert!(chart.patch.contains_point(&pt).unwrap());
    assert!(cofactor.evaluate(&pt).unwrap().is_zero());
}
