//! Acceptance suite. Each criterion runs under a wall-clock limit and prints
//! a single PASS/FAIL line; the process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{p, random_center, random_poly, ring, rng, small_rational};
use plainchart::blowup::{
    plain_blowup_atlas, rees_consistency, shifted_generators, transition_map, verify_atlas,
    BlowupAtlas, CHECK_CENTER, CHECK_IDENTITIES, CHECK_TRANSITIONS,
};
use plainchart::cli::{builtin_example, parse_poly, run_scenario, AtlasDoc, Outcome};
use plainchart::geometry::{AffinePatch, CenterSpec, RationalMap};
use plainchart::groebner::{buchberger_reduced, Ideal};
use plainchart::projection::{
    generic_projection, hypersurface_model, verify_local_iso, LinearProjection,
};
use plainchart::{Error, MonomialOrder, Polynomial, ProjectionFailure, Rational, RingRef};
use rand::Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn example(name: &str) -> Result<Outcome, String> {
    let s = builtin_example(name).map_err(|e| e.to_string())?;
    run_scenario(&s).map_err(|e| e.to_string())
}

fn same(actual: &str, expected: &str, r: &RingRef) -> Result<bool, String> {
    let a = parse_poly(actual, r).map_err(|e| e.to_string())?;
    Ok(a == p(expected, r))
}

const U: &str = "1+s-3*x^2*s-3*x*s^2*(x-x^3+y^2)-s^3*(x-x^3+y^2)^2";
const V: &str = "1-t+3*w^2*t-3*w*t^2*(w-w^3+y^2)+t^3*(w-w^3+y^2)^2";

fn elliptic_golden() -> Check {
    let outcome = example("elliptic-blowup")?;
    ensure!(
        outcome.passed,
        "atlas verification failed:\n{}",
        outcome.to_text()
    );
    let doc: AtlasDoc =
        serde_json::from_value(outcome.artifacts["atlas"].clone()).map_err(|e| e.to_string())?;
    ensure!(
        doc.charts.len() == 2,
        "expected two charts, found {}",
        doc.charts.len()
    );
    let (c0, c1) = (&doc.charts[0], &doc.charts[1]);
    let r0 = ring(&["x", "y", "s"]);
    let r1 = ring(&["w", "y", "t"]);
    ensure!(
        c0.patch.ring == ["x", "y", "s"],
        "f-chart ring {:?}",
        c0.patch.ring
    );
    ensure!(
        c1.patch.ring == ["w", "y", "t"],
        "f1-chart ring {:?}",
        c1.patch.ring
    );
    ensure!(
        c0.patch.inequalities.len() == 1
            && same(
                &c0.patch.inequalities[0],
                "1-3*x^2-3*x*s*(x-x^3+y^2)-s^2*(x-x^3+y^2)^2",
                &r0
            )?,
        "f-chart inequality {:?}",
        c0.patch.inequalities
    );
    ensure!(
        c1.patch.inequalities.len() == 1
            && same(
                &c1.patch.inequalities[0],
                "1-3*w^2+3*w*t*(w-w^3+y^2)-t^2*(w-w^3+y^2)^2",
                &r1
            )?,
        "f1-chart inequality {:?}",
        c1.patch.inequalities
    );
    ensure!(
        same(&c0.exceptional, "x-x^3+y^2", &r0)?,
        "f-chart exceptional {}",
        c0.exceptional
    );
    ensure!(
        same(&c1.exceptional, "w-w^3+y^2", &r1)?,
        "f1-chart exceptional {}",
        c1.exceptional
    );

    let t01 = doc
        .transitions
        .iter()
        .find(|t| (t.from, t.to) == (0, 1))
        .ok_or("missing 0->1")?;
    let t10 = doc
        .transitions
        .iter()
        .find(|t| (t.from, t.to) == (1, 0))
        .ok_or("missing 1->0")?;
    let mut found_u = false;
    for g in &t01.map.source.inequalities {
        let g = parse_poly(g, &r0).map_err(|e| e.to_string())?;
        found_u |= g.is_scalar_multiple_of(&p(U, &r0));
    }
    ensure!(
        found_u,
        "overlap condition on the f-chart missing: {:?}",
        t01.map.source.inequalities
    );
    let mut found_v = false;
    for g in &t10.map.source.inequalities {
        let g = parse_poly(g, &r1).map_err(|e| e.to_string())?;
        found_v |= g.is_scalar_multiple_of(&p(V, &r1));
    }
    ensure!(
        found_v,
        "overlap condition on the f1-chart missing: {:?}",
        t10.map.source.inequalities
    );

    let comps = &t01.map.components;
    ensure!(comps.len() == 3, "transition arity {}", comps.len());
    let expected = [("x+x*s-x^3*s+y^2*s", "1"), ("y", "1"), ("s", U)];
    for (k, (c, (n, d))) in comps.iter().zip(expected).enumerate() {
        let num = parse_poly(&c.num, &r0).map_err(|e| e.to_string())?;
        let den = parse_poly(&c.den, &r0).map_err(|e| e.to_string())?;
        // a fraction is fixed up to a common scalar
        let cross = &(&num * &p(d, &r0)) - &(&den * &p(n, &r0));
        ensure!(
            cross.is_zero(),
            "component {k}: {}/{} vs {n}/{d}",
            c.num,
            c.den
        );
    }
    Ok(())
}

fn map_pair(name: &str) -> Check {
    let outcome = example(name)?;
    for check in [
        "forward-map",
        "backward-map",
        "backward-after-forward",
        "forward-after-backward",
    ] {
        let c = outcome
            .checks
            .iter()
            .find(|c| c.name == check)
            .ok_or(format!("no {check} check"))?;
        ensure!(c.passed, "{check} failed: {:?}", c.details);
    }
    ensure!(outcome.passed, "{}", outcome.to_text());
    Ok(())
}

fn circle() -> Check {
    map_pair("circle")
}

fn surface() -> Check {
    map_pair("surface-3-3")
}

fn space_curve() -> Check {
    let outcome = example("space-curve-2-2")?;
    ensure!(outcome.passed, "{}", outcome.to_text());
    ensure!(
        outcome.artifacts["normal_form"] == "0",
        "normal form {}",
        outcome.artifacts["normal_form"]
    );
    Ok(())
}

/// True when `g` is `c*v - q` with `c` a nonzero constant and `q` free of `v`,
/// so the quotient by `g` is a polynomial ring in the remaining variables.
fn solvable_for_some_variable(g: &Polynomial) -> bool {
    (0..g.ring().arity()).any(|v| {
        let lin = g.derivative_index(v);
        g.degree_in(v) == 1 && lin.is_constant() && !lin.is_zero()
    })
}

fn a2_rees() -> Check {
    let outcome = example("a2-origin")?;
    let charts = outcome.artifacts["charts"].as_array().ok_or("no charts")?;
    ensure!(
        charts.len() == 2,
        "expected two charts, found {}",
        charts.len()
    );
    let expected = [("x*x2-y", ["x", "y", "x2"]), ("y*x1-x", ["x", "y", "x1"])];
    for (chart, (rel, vars)) in charts.iter().zip(expected) {
        let names: Vec<String> =
            serde_json::from_value(chart["ring"].clone()).map_err(|e| e.to_string())?;
        ensure!(names == vars, "chart ring {names:?}");
        let r = ring(&vars);
        let rels: Vec<String> =
            serde_json::from_value(chart["relations"].clone()).map_err(|e| e.to_string())?;
        ensure!(rels.len() == 1, "relations not principal: {rels:?}");
        let g = parse_poly(&rels[0], &r).map_err(|e| e.to_string())?;
        ensure!(
            g.is_scalar_multiple_of(&p(rel, &r)),
            "relation {} vs {rel}",
            rels[0]
        );
        ensure!(
            solvable_for_some_variable(&g),
            "quotient by {g} is not a polynomial ring"
        );
        ensure!(
            names.len() - 1 == 2,
            "quotient has {} variables",
            names.len() - 1
        );
    }
    Ok(())
}

fn check_atlas_report(atlas: &BlowupAtlas) -> Check {
    let report = verify_atlas(atlas);
    for name in [CHECK_TRANSITIONS, CHECK_CENTER, CHECK_IDENTITIES] {
        let passed = report.check(name).ok_or(format!("no {name} check"))?;
        ensure!(passed, "{name} failed:\n{report}");
    }
    ensure!(report.passed(), "{report}");
    Ok(())
}

fn random_center_suite() -> Check {
    let mut g = rng(0x7e0);
    for trial in 0..100 {
        let center = random_center(&mut g);
        let sg = shifted_generators(&center).map_err(|e| e.to_string())?;
        let r = center.ring();
        let shift = center.shift();
        for (k, &i) in center.subvariety().iter().enumerate() {
            let xi = Polynomial::var_index(r, i);
            ensure!(
                (&(&sg.f_list[k] - center.f()) - &(&xi * &sg.g_list[k])).is_zero(),
                "trial {trial}: f_i != f + x_i g_i"
            );
            // f_i is f with the shift coordinate moved by x_i, compared pointwise
            for _ in 0..5 {
                let pt: Vec<Rational> = (0..r.arity()).map(|_| small_rational(&mut g)).collect();
                let mut moved = pt.clone();
                moved[shift] = &pt[shift] + &pt[i];
                ensure!(
                    sg.f_list[k].evaluate(&pt).unwrap() == center.f().evaluate(&moved).unwrap(),
                    "trial {trial}: f_i is not the shifted f at {pt:?}"
                );
            }
            ensure!(
                sg.h_list[k].evaluate(center.point()).unwrap().is_zero(),
                "trial {trial}: h_i(p) != 0"
            );
        }
        let atlas = plain_blowup_atlas(&center).map_err(|e| format!("trial {trial}: {e}"))?;
        check_atlas_report(&atlas).map_err(|e| format!("trial {trial} ({}): {e}", center.f()))?;
    }
    Ok(())
}

fn elliptic_center() -> CenterSpec {
    let r = ring(&["x", "y", "z"]);
    CenterSpec::new(
        AffinePatch::affine_space(&r),
        &["z"],
        p("x-x^3+y^2", &r),
        vec![Rational::zero(); 3],
        Some("x"),
    )
    .unwrap()
}

fn rees_plain() -> Check {
    let atlas = plain_blowup_atlas(&elliptic_center()).map_err(|e| e.to_string())?;
    let agree = rees_consistency(&atlas).map_err(|e| e.to_string())?;
    ensure!(agree == [true, true], "chart correspondence {agree:?}");
    Ok(())
}

fn groebner_determinism() -> Check {
    let r = ring(&["x", "y", "z"]);
    let mut g = rng(0x9b);
    for trial in 0..50 {
        let k = g.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| random_poly(&mut g, &r, 2, 3))
            .filter(|f| !f.is_zero())
            .collect();
        let reference = buchberger_reduced(
            &Ideal::new(&r, gens.clone()).unwrap(),
            MonomialOrder::Grevlex,
        )
        .map_err(|e| e.to_string())?;
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
        for i in (1..shuffled.len()).rev() {
            let j = g.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let other = buchberger_reduced(&Ideal::new(&r, shuffled).unwrap(), MonomialOrder::Grevlex)
            .map_err(|e| e.to_string())?;
        ensure!(
            reference.basis() == other.basis(),
            "trial {trial}: bases differ"
        );
    }
    Ok(())
}

fn projection() -> Check {
    let r = ring(&["x", "y", "z"]);
    let z = Ideal::new(&r, vec![p("y-x^2", &r), p("z-x^3", &r)]).unwrap();
    let q = [Rational::one(), Rational::one(), Rational::one()];
    let (proj, model) = generic_projection(&z, 1, &q, 2024).map_err(|e| e.to_string())?;
    ensure!(
        proj.m() == 2 && proj.n() == 3,
        "matrix shape {}x{}",
        proj.m(),
        proj.n()
    );
    ensure!(verify_local_iso(&z, &proj, &model), "model not certified");
    let row = |v: [i64; 3]| v.iter().map(|&k| Rational::from(k)).collect::<Vec<_>>();
    let secant = LinearProjection::new(vec![row([1, 0, -1]), row([0, 1, 0])]).unwrap();
    match hypersurface_model(&z, &secant, &q) {
        Err(Error::Degenerate(ProjectionFailure::NoLocalInverse(_))) => Ok(()),
        Err(e) => Err(format!(
            "degenerate fixture rejected with the wrong failure: {e}"
        )),
        Ok(_) => Err("degenerate fixture accepted".into()),
    }
}

fn mutation_sensitivity() -> Check {
    let atlas = plain_blowup_atlas(&elliptic_center()).map_err(|e| e.to_string())?;
    check_atlas_report(&atlas)?;
    for (from, to) in [(0, 1), (1, 0)] {
        let tau = transition_map(&atlas, from, to).map_err(|e| e.to_string())?;
        for k in 0..tau.components().len() {
            // smallest constant shift whose image of the sample stays on the overlap
            let bad = (1..=5)
                .find_map(|c| {
                    let mut comps = tau.components().to_vec();
                    let shift = Polynomial::constant(tau.source().ring(), Rational::from(c));
                    comps[k].0 = &comps[k].0 + &shift;
                    RationalMap::new(tau.source().clone(), tau.target().clone(), comps).ok()
                })
                .ok_or(format!("no admissible perturbation of {from}->{to}[{k}]"))?;
            let mut mutated = atlas.clone();
            mutated
                .replace_transition(from, to, bad)
                .map_err(|e| e.to_string())?;
            let report = verify_atlas(&mutated);
            for c in &report.checks {
                ensure!(
                    c.passed == (c.name != CHECK_TRANSITIONS),
                    "perturbed {from}->{to}[{k}]: check {} passed={}",
                    c.name,
                    c.passed
                );
            }
        }
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "elliptic blowup golden charts",
            limit: secs(1),
            run: elliptic_golden,
        },
        Criterion {
            name: "circle isomorphism",
            limit: secs(1),
            run: circle,
        },
        Criterion {
            name: "surface chart isomorphism",
            limit: secs(5),
            run: surface,
        },
        Criterion {
            name: "space curve membership",
            limit: secs(1),
            run: space_curve,
        },
        Criterion {
            name: "plane origin Rees charts",
            limit: secs(1),
            run: a2_rees,
        },
        Criterion {
            name: "random center suite",
            limit: secs(120),
            run: random_center_suite,
        },
        Criterion {
            name: "Rees and plain atlases agree",
            limit: secs(10),
            run: rees_plain,
        },
        Criterion {
            name: "Groebner determinism",
            limit: secs(30),
            run: groebner_determinism,
        },
        Criterion {
            name: "projection certification",
            limit: secs(10),
            run: projection,
        },
        Criterion {
            name: "transition mutation sensitivity",
            limit: secs(5),
            run: mutation_sensitivity,
        },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= c.limit {
                Ok(())
            } else {
                Err(format!("exceeded {:?}", c.limit))
            }
        });
        match result {
            Ok(()) => println!(
                "PASS {:>2} {} ({:.3}s)",
                i + 1,
                c.name,
                elapsed.as_secs_f64()
            ),
            Err(e) => {
                failures += 1;
                println!(
                    "FAIL {:>2} {} ({:.3}s): {e}",
                    i + 1,
                    c.name,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
