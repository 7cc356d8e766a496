mod common;

use common::{p, random_poly, ring, rng, small_rational};
use plainchart::geometry::AffinePatch;
use plainchart::groebner::{
    buchberger_reduced, elimination_ideal, ideal_equality, ideal_membership, is_unit_on_patch,
    ring_map_kernel, s_polynomial, with_budget, GroebnerBasis, Ideal,
};
use plainchart::poly::{MonomialOrder, Polynomial, RingRef};
use plainchart::{Error, Rational};
use proptest::prelude::*;
use rand::Rng;

fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(g, r)).collect()).unwrap()
}

/// Buchberger's criterion, checked independently of the implementation:
/// every S-polynomial reduces to zero by plain multivariate division.
fn is_groebner(basis: &[Polynomial]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !divide_remainder(&s_polynomial(f, g), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Textbook division with remainder, term by term.
fn divide_remainder(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rest = f.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = rest.leading_term().cloned() {
        let hit = basis.iter().find_map(|g| {
            let (gm, gc) = g.leading_term()?;
            m.div(gm).map(|q| (g, q, &c / gc))
        });
        match hit {
            Some((g, q, k)) => rest = &rest - &g.mul_term(&q, &k),
            None => {
                let lead = Polynomial::monomial(&ring, m, c);
                rem = &rem + &lead;
                rest = &rest - &lead;
            }
        }
    }
    rem
}

#[test]
fn twisted_cubic_lex_basis() {
    let r = ring(&["x", "y", "z"])
        .with_order(MonomialOrder::Lex)
        .unwrap();
    let gb = buchberger_reduced(&ideal(&r, &["y-x^2", "z-x^3"]), MonomialOrder::Lex).unwrap();
    assert!(is_groebner(gb.basis()));
    let expected = [
        p("x^2-y", &r),
        p("x*y-z", &r),
        p("x*z-y^2", &r),
        p("y^3-z^2", &r),
    ];
    assert_eq!(gb.basis().len(), expected.len());
    for e in &expected {
        assert!(gb.basis().contains(e), "missing {e}");
    }
}

fn random_ideal(g: &mut rand_chacha::ChaCha8Rng, r: &RingRef) -> Vec<Polynomial> {
    let k = g.gen_range(1..=3);
    (0..k)
        .map(|_| random_poly(g, r, 2, 3))
        .filter(|f| !f.is_zero())
        .collect()
}

#[test]
fn reduced_basis_is_canonical() {
    let r = ring(&["x", "y", "z"]);
    let mut g = rng(3);
    for _ in 0..50 {
        let gens = random_ideal(&mut g, &r);
        let gb = buchberger_reduced(
            &Ideal::new(&r, gens.clone()).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert!(is_groebner(gb.basis()));
        let mut shuffled: Vec<Polynomial> = gens
            .iter()
            .map(|f| {
                let mut c = small_rational(&mut g);
                if c.is_zero() {
                    c = Rational::from(7);
                }
                f.scale(&c)
            })
            .collect();
        shuffled.reverse();
        let other =
            buchberger_reduced(&Ideal::new(&r, shuffled).unwrap(), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.basis(), other.basis());
    }
}

#[test]
fn space_curve_membership() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["y^2-x^3+x", "z^2-y^3+y"]);
    let f = p("z^2-y*(x^3-x-1)", &r);
    // explicit certificate: f = (z^2 - y^3 + y) + y*(y^2 - x^3 + x)
    assert_eq!(
        f,
        &p("z^2-y^3+y", &r) + &(&p("y", &r) * &p("y^2-x^3+x", &r))
    );
    let gb = buchberger_reduced(&i, MonomialOrder::Grevlex).unwrap();
    assert!(gb.normal_form(&f).unwrap().is_zero());
    assert!(ideal_membership(&f, &i).unwrap());
    assert!(!ideal_membership(&p("y", &r), &i).unwrap());
}

#[test]
fn random_combinations_are_members() {
    let r = ring(&["x", "y", "z"]);
    let mut g = rng(4);
    for _ in 0..50 {
        let gens = random_ideal(&mut g, &r);
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let mut combo = Polynomial::zero(&r);
        for f in &gens {
            combo = &combo + &(&random_poly(&mut g, &r, 2, 3) * f);
        }
        assert!(ideal_membership(&combo, &i).unwrap());
        let gb = buchberger_reduced(&i, MonomialOrder::Grevlex).unwrap();
        // membership is unchanged by adding a member to the generators
        let shifted = Ideal::new(&r, {
            let mut v = gens.clone();
            v.push(combo.clone());
            v
        })
        .unwrap();
        let gb2 = buchberger_reduced(&shifted, MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.basis(), gb2.basis());
    }
}

#[test]
fn generator_order_does_not_matter() {
    let r = ring(&["x", "y"]);
    assert!(ideal_equality(&ideal(&r, &["x", "y"]), &ideal(&r, &["y", "x"])).unwrap());
    assert!(!ideal_equality(&ideal(&r, &["x", "y"]), &ideal(&r, &["x", "y^2"])).unwrap());
}

/// Sylvester resultant of two polynomials linear in `t`, as an oracle for
/// eliminating `t`: `res(a1 t + b1, a2 t + b2) = a1 b2 - a2 b1`.
fn linear_resultant(f: &Polynomial, g: &Polynomial, t: usize) -> Polynomial {
    let ring = f.ring();
    let split = |h: &Polynomial| {
        let mut a = Polynomial::zero(ring);
        let mut b = Polynomial::zero(ring);
        for (m, c) in h.terms() {
            let mut e = m.exponents().to_vec();
            let deg = e[t];
            e[t] = 0;
            let term = Polynomial::from_terms(ring, [(e, c.clone())]).unwrap();
            match deg {
                0 => b = &b + &term,
                1 => a = &a + &term,
                _ => panic!("not linear"),
            }
        }
        (a, b)
    };
    let (a1, b1) = split(f);
    let (a2, b2) = split(g);
    &(&a1 * &b2) - &(&a2 * &b1)
}

#[test]
fn eliminate_scaling_parameter() {
    let r = ring(&["t", "x", "y", "y1", "y2"]);
    let f = p("y1-x*t", &r);
    let g = p("y2-y*t", &r);
    let res = linear_resultant(&f, &g, 0);
    let e = elimination_ideal(&Ideal::new(&r, vec![f, g]).unwrap(), &["t"]).unwrap();
    assert_eq!(e.generators().len(), 1);
    let kept = e.ring().clone();
    assert!(e.generators()[0].is_scalar_multiple_of(&res.embed_by_name(&kept).unwrap()));
    assert!(e.generators()[0].is_scalar_multiple_of(&p("x*y2-y*y1", &kept)));
}

#[test]
fn eliminate_parabola_parameter() {
    let r = ring(&["t", "x", "y"]);
    let e = elimination_ideal(&ideal(&r, &["x-t", "y-t^2"]), &["t"]).unwrap();
    assert_eq!(e.generators().len(), 1);
    assert!(e.generators()[0].is_scalar_multiple_of(&p("y-x^2", e.ring())));
}

#[test]
fn eliminating_nothing_keeps_the_basis() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2-y", "x*y-1"]);
    let e = elimination_ideal(&i, &[] as &[&str]).unwrap();
    let gb = buchberger_reduced(&i, MonomialOrder::Grevlex).unwrap();
    assert_eq!(e.generators(), gb.basis());
    assert!(matches!(
        elimination_ideal(&i, &["x", "y"]),
        Err(Error::EliminateAll)
    ));
}

#[test]
fn units_on_patches() {
    let r = ring(&["x", "y", "z"]);
    let g = p("1-3*x^2-3*x*z-z^2", &r);
    let patch = AffinePatch::affine_space(&r)
        .restrict(std::slice::from_ref(&g), None)
        .unwrap();
    assert!(is_unit_on_patch(&g, &patch, None).unwrap());
    assert!(is_unit_on_patch(&g.pow(3).scale(&Rational::new(-2, 3)), &patch, None).unwrap());
    let h = p("1-x*y", &r);
    let patch = AffinePatch::affine_space(&r)
        .restrict(std::slice::from_ref(&h), None)
        .unwrap();
    assert!(is_unit_on_patch(&h, &patch, None).unwrap());
    let r2 = ring(&["x", "y"]);
    let patch = AffinePatch::affine_space(&r2)
        .restrict(&[p("y", &r2)], None)
        .unwrap();
    assert!(!is_unit_on_patch(&p("x", &r2), &patch, None).unwrap());
    assert!(is_unit_on_patch(&p("y^2", &r2), &patch, None).unwrap());
    // a unit modulo relations: x is invertible on x*y = 1
    let modulo = ideal(&r2, &["x*y-1"]);
    let full = AffinePatch::affine_space(&r2);
    assert!(is_unit_on_patch(&p("x", &r2), &full, Some(&modulo)).unwrap());
}

#[test]
fn unit_test_is_multiplicative() {
    let r = ring(&["x", "y"]);
    let a = p("1+x^2", &r);
    let b = p("2-x*y", &r);
    let patch = AffinePatch::affine_space(&r)
        .restrict(&[a.clone(), b.clone()], None)
        .unwrap();
    let ab = &a * &b;
    assert!(is_unit_on_patch(&a, &patch, None).unwrap());
    assert!(is_unit_on_patch(&b, &patch, None).unwrap());
    assert!(is_unit_on_patch(&ab, &patch, None).unwrap());
    let c = p("x+y", &r);
    assert!(!is_unit_on_patch(&c, &patch, None).unwrap());
    assert!(!is_unit_on_patch(&(&a * &c), &patch, None).unwrap());
}

#[test]
fn kernel_of_blowup_map() {
    let r = ring(&["x", "y", "t"]);
    let k = ring_map_kernel(&["y1", "y2"], &[p("x*t", &r), p("y*t", &r)], "t").unwrap();
    assert_eq!(k.ring().vars(), ["x", "y", "y1", "y2"]);
    assert_eq!(k.generators().len(), 1);
    assert!(k.generators()[0].is_scalar_multiple_of(&p("x*y2-y*y1", k.ring())));
    let single = ring_map_kernel(&["y1"], &[p("(x^2+y)*t", &r)], "t").unwrap();
    assert!(single.is_zero());
}

#[test]
fn kernel_for_elliptic_center() {
    // f2 = x - x^3 + y^2, f1 = f2 + g z
    let r = ring(&["x", "y", "z", "t"]);
    let f2 = p("x-x^3+y^2", &r);
    let f1 = p("x+z-(x+z)^3+y^2", &r);
    let t = p("t", &r);
    let k = ring_map_kernel(&["y1", "y2"], &[&f2 * &t, &f1 * &t], "t").unwrap();
    let kr = k.ring();
    let expected =
        &(&p("x+z-(x+z)^3+y^2", kr) * &p("y1", kr)) - &(&p("x-x^3+y^2", kr) * &p("y2", kr));
    assert!(ideal_membership(&expected, &k).unwrap());
    for g in k.generators() {
        // every relation is homogeneous of degree one in y1, y2
        for (m, _) in g.terms() {
            let e = m.exponents();
            assert_eq!(e[3] + e[4], 1);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^2*y-z", "x*y^2-1", "y*z-x^2"]);
    let out = with_budget(1, || buchberger_reduced(&i, MonomialOrder::Grevlex));
    assert!(matches!(out, Err(Error::BudgetExceeded { budget: 1 })));
}

fn reduced(gb: &GroebnerBasis) -> bool {
    // monic, and no term of any element is divisible by another leading monomial
    gb.basis().iter().enumerate().all(|(i, g)| {
        g.leading_coeff().is_some_and(|c| c.is_one())
            && gb.basis().iter().enumerate().all(|(j, h)| {
                i == j
                    || g.terms()
                        .iter()
                        .all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bases_are_reduced_groebner_bases(seed in 0u64..10_000) {
        let r = ring(&["x", "y", "z"]);
        let mut g = rng(seed);
        let gens = random_ideal(&mut g, &r);
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = buchberger_reduced(&i, MonomialOrder::Grevlex).unwrap();
        prop_assert!(is_groebner(gb.basis()));
        prop_assert!(reduced(&gb));
        for f in &gens {
            prop_assert!(gb.normal_form(f).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_is_a_congruence(seed in 0u64..10_000) {
        let r = ring(&["x", "y"]);
        let mut g = rng(seed);
        let gens = random_ideal(&mut g, &r);
        let gb = buchberger_reduced(&Ideal::new(&r, gens.clone()).unwrap(), MonomialOrder::Grevlex).unwrap();
        let a = random_poly(&mut g, &r, 3, 4);
        let b = random_poly(&mut g, &r, 3, 4);
        let na = gb.normal_form(&a).unwrap();
        let nb = gb.normal_form(&b).unwrap();
        prop_assert_eq!(gb.normal_form(&(&a + &b)).unwrap(), &na + &nb);
        prop_assert!(gb.normal_form(&(&a - &na)).unwrap().is_zero());
    }
}
