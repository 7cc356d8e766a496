//! Blowups of affine patches.
//!
//! Two presentations are provided. [`rees_charts`] computes the standard
//! affine charts `Spec R[a_1/a_i, ..., a_m/a_i]` of the blowup of an ideal by
//! elimination. [`plain_blowup_atlas`] builds, for a smooth hypersurface
//! `f = 0` inside a coordinate subvariety, an atlas whose charts are open
//! subsets of affine space, with explicit structure and transition maps.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    compose, ideals_equal_on, map_equal_on_patch, pullback_ideal, validate_center, AffinePatch,
    CenterSpec, RationalMap,
};
use crate::groebner::{ideal_equality_on_patch, is_unit_on_patch, kernel_of_scaling, Ideal};
use crate::poly::{PolyRing, Polynomial, RingRef};
use crate::rational::Rational;

/// `f_i = f(.., x_n + x_i)`, `g_i = (f_i - f) / x_i` and `h_i = g_i - df/dx_n`
/// for each subvariety coordinate `x_i`, with `x_n` the shift variable.
#[derive(Debug, Clone)]
pub struct ShiftedGenerators {
    pub center: CenterSpec,
    pub f_list: Vec<Polynomial>,
    pub g_list: Vec<Polynomial>,
    pub h_list: Vec<Polynomial>,
    /// The ambient patch with every `g_i` inverted.
    pub neighborhood: AffinePatch,
}

pub fn shifted_generators(c: &CenterSpec) -> Result<ShiftedGenerators> {
    let c = validate_center(c)?;
    let ring = c.ring().clone();
    let shift = c.shift_name().to_string();
    let df = c.f().derivative_index(c.shift());
    let mut f_list = Vec::new();
    let mut g_list = Vec::new();
    let mut h_list = Vec::new();
    for &i in c.subvariety() {
        let xi = Polynomial::var_index(&ring, i);
        let fi = c.f().taylor_shift(&shift, &ring.vars()[i])?;
        let gi = (&fi - c.f()).exact_divide(&xi)?;
        h_list.push(&gi - &df);
        f_list.push(fi);
        g_list.push(gi);
    }
    let neighborhood = c.ambient().restrict(&g_list, Some(c.point()))?;
    Ok(ShiftedGenerators {
        center: c,
        f_list,
        g_list,
        h_list,
        neighborhood,
    })
}

/// Which generator of the center a chart inverts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum ChartLabel {
    /// The chart where `f` generates the center.
    F,
    /// The chart where the `i`-th shifted generator (1-based) generates the center.
    Shifted(usize),
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartLabel::F => write!(f, "f"),
            ChartLabel::Shifted(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlowupChart {
    pub patch: AffinePatch,
    /// Expresses the base coordinates in chart coordinates.
    pub structure_map: RationalMap,
    /// Equation of the exceptional divisor in this chart.
    pub exceptional: Polynomial,
    pub label: ChartLabel,
}

#[derive(Debug, Clone)]
pub struct BlowupAtlas {
    pub base: AffinePatch,
    pub center: CenterSpec,
    pub shifted: ShiftedGenerators,
    pub charts: Vec<BlowupChart>,
    /// `(i, j)` maps the part of chart `i` that overlaps chart `j` into chart `j`.
    pub transitions: BTreeMap<(usize, usize), RationalMap>,
}

/// Images of the base coordinates for chart `c`, plus its coordinate ring.
struct ChartCoordinates {
    ring: RingRef,
    images: Vec<Polynomial>,
    exceptional: Polynomial,
}

fn chart_names(base: &RingRef, prefix: &str, r: usize) -> Vec<String> {
    let mut taken = Vec::new();
    for k in 0..r {
        let stem = if r == 1 {
            prefix.to_string()
        } else {
            format!("{prefix}{}", k + 1)
        };
        let n = base.fresh_name(&stem, &taken);
        taken.push(n);
    }
    taken
}

fn chart_coordinates(sg: &ShiftedGenerators, chart: usize) -> Result<ChartCoordinates> {
    let c = &sg.center;
    let base = c.ring();
    let sub = c.subvariety();
    let r = sub.len();
    let shift = c.shift();
    let mut names: Vec<String> = base.vars().to_vec();
    let fresh = chart_names(base, if chart == 0 { "s" } else { "t" }, r);
    for (k, &i) in sub.iter().enumerate() {
        names[i] = fresh[k].clone();
    }
    if chart > 0 {
        names[shift] = base.fresh_name("w", &fresh);
    }
    let ring = PolyRing::new(&names, base.order())?;
    // f does not involve the subvariety coordinates, so renaming them is harmless
    let f_here = c.f().embed(&ring, &(0..base.arity()).collect::<Vec<_>>());
    let mut images: Vec<Polynomial> = (0..base.arity())
        .map(|k| Polynomial::var_index(&ring, k))
        .collect();
    if chart == 0 {
        for &i in sub {
            images[i] = &images[i] * &f_here;
        }
        return Ok(ChartCoordinates {
            ring,
            images,
            exceptional: f_here,
        });
    }
    // on chart i the shift slot holds w = x_n + x_i, and F = f(.., w)
    let big_f = f_here;
    let ti = Polynomial::var_index(&ring, sub[chart - 1]);
    for &j in sub {
        images[j] = &images[j] * &big_f;
    }
    images[shift] = &Polynomial::var_index(&ring, shift) - &(&ti * &big_f);
    Ok(ChartCoordinates {
        ring,
        images,
        exceptional: big_f,
    })
}

/// The plain atlas of the blowup of the neighborhood `V` of the center's point.
pub fn plain_blowup_atlas(c: &CenterSpec) -> Result<BlowupAtlas> {
    let sg = shifted_generators(c)?;
    let base = sg.neighborhood.clone();
    let r = sg.center.subvariety().len();
    let mut coords = Vec::with_capacity(r + 1);
    let mut charts = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let cc = chart_coordinates(&sg, k)?;
        let ineq: Vec<Polynomial> = base
            .inequalities()
            .iter()
            .map(|g| g.compose_images(&cc.images, &cc.ring))
            .collect::<Result<_>>()?;
        let patch = AffinePatch::new(&cc.ring, ineq, Ideal::zero(&cc.ring), None)?;
        let components = cc
            .images
            .iter()
            .map(|p| (p.clone(), Polynomial::one(&cc.ring)))
            .collect();
        let structure_map = RationalMap::new(patch.clone(), base.clone(), components)?;
        charts.push(BlowupChart {
            patch,
            structure_map,
            exceptional: cc.exceptional.clone(),
            label: if k == 0 {
                ChartLabel::F
            } else {
                ChartLabel::Shifted(k)
            },
        });
        coords.push(cc);
    }
    let mut transitions = BTreeMap::new();
    for i in 0..=r {
        for j in 0..=r {
            if i != j {
                let t = build_transition(&sg, &charts, &coords, i, j)?;
                transitions.insert((i, j), t);
            }
        }
    }
    Ok(BlowupAtlas {
        base,
        center: sg.center.clone(),
        shifted: sg,
        charts,
        transitions,
    })
}

/// `f_j / f_i` on chart `i` divided by the exceptional equation: the
/// polynomial whose nonvanishing cuts out the overlap with chart `j`.
fn overlap_denominator(
    sg: &ShiftedGenerators,
    coords: &[ChartCoordinates],
    i: usize,
    j: usize,
) -> Result<Polynomial> {
    let cc = &coords[i];
    let generator = if j == 0 {
        sg.center.f()
    } else {
        &sg.f_list[j - 1]
    };
    generator
        .compose_images(&cc.images, &cc.ring)?
        .exact_divide(&cc.exceptional)
}

fn build_transition(
    sg: &ShiftedGenerators,
    charts: &[BlowupChart],
    coords: &[ChartCoordinates],
    i: usize,
    j: usize,
) -> Result<RationalMap> {
    let c = &sg.center;
    let sub = c.subvariety();
    let shift = c.shift();
    let src = &coords[i];
    let d = overlap_denominator(sg, coords, i, j)?;
    let one = Polynomial::one(&src.ring);
    let source = charts[i].patch.restrict(std::slice::from_ref(&d), None)?;
    let back = overlap_denominator(sg, coords, j, i)?;
    let target = charts[j]
        .patch
        .restrict(std::slice::from_ref(&back), None)?;
    let n = c.ring().arity();
    let mut comps: Vec<(Polynomial, Polynomial)> = (0..n)
        .map(|k| (Polynomial::var_index(&src.ring, k), one.clone()))
        .collect();
    // the adjoined fractions rescale by the overlap denominator
    for &k in sub {
        comps[k] = (Polynomial::var_index(&src.ring, k), d.clone());
    }
    // the shift slot: x_n on chart 0, w = x_n + x_j on chart j
    let xn = src.images[shift].clone();
    let xj = |j: usize| src.images[sub[j - 1]].clone();
    comps[shift].0 = match (i, j) {
        (_, 0) => xn,
        (_, j) => &xn + &xj(j),
    };
    RationalMap::new(source, target, comps)
}

/// The transition from chart `i` to chart `j`; the identity when `i == j`.
pub fn transition_map(atlas: &BlowupAtlas, i: usize, j: usize) -> Result<RationalMap> {
    let n = atlas.charts.len();
    if i >= n {
        return Err(Error::IndexOutOfRange(i));
    }
    if j >= n {
        return Err(Error::IndexOutOfRange(j));
    }
    if i == j {
        return Ok(RationalMap::identity(&atlas.charts[i].patch));
    }
    Ok(atlas.transitions[&(i, j)].clone())
}

/// Outcome of one named verification step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    /// Set when a step ran out of Gröbner budget rather than failing outright.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn budget_exceeded(&self) -> bool {
        self.checks.iter().any(|c| c.budget_exceeded)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            for d in &c.details {
                writeln!(f, "  {d}")?;
            }
        }
        Ok(())
    }
}

pub const CHECK_STRUCTURE: &str = "structure-maps";
pub const CHECK_CENTER: &str = "center-pullback";
pub const CHECK_TRANSITIONS: &str = "transitions";
pub const CHECK_IDENTITIES: &str = "identities";
pub const CHECK_GENERATORS: &str = "center-generators";

struct Collector {
    passed: bool,
    details: Vec<String>,
    budget_exceeded: bool,
}

impl Collector {
    fn new() -> Self {
        Collector {
            passed: true,
            details: Vec::new(),
            budget_exceeded: false,
        }
    }

    fn record(&mut self, what: impl FnOnce() -> String, outcome: Result<bool>) {
        match outcome {
            Ok(true) => {}
            Ok(false) => {
                self.passed = false;
                self.details.push(what());
            }
            Err(e) => {
                self.passed = false;
                self.budget_exceeded |= matches!(e, Error::BudgetExceeded { .. });
                self.details.push(format!("{}: {e}", what()));
            }
        }
    }

    fn finish(self, name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: self.passed,
            details: self.details,
            budget_exceeded: self.budget_exceeded,
        }
    }
}

/// Runs every atlas check. Failures are report entries, never errors.
pub fn verify_atlas(atlas: &BlowupAtlas) -> VerificationReport {
    let checks = vec![
        check_structure_maps(atlas),
        check_center_pullback(atlas),
        check_transitions(atlas),
        check_identities(atlas),
        check_center_generators(atlas),
    ];
    VerificationReport { checks }
}

fn check_structure_maps(atlas: &BlowupAtlas) -> CheckResult {
    let mut col = Collector::new();
    for (k, chart) in atlas.charts.iter().enumerate() {
        let m = &chart.structure_map;
        col.record(
            || format!("chart {k}: sample point does not map into the base"),
            m.evaluate(chart.patch.sample())
                .and_then(|pt| atlas.base.contains_point(&pt)),
        );
        for g in atlas.base.inequalities() {
            col.record(
                || format!("chart {k}: pulled-back inequality {g} is not a unit"),
                m.pullback_fraction(g)
                    .and_then(|(num, _)| is_unit_on_patch(&num, &chart.patch, None)),
            );
        }
        for rel in atlas.base.relations().generators() {
            col.record(
                || format!("chart {k}: relation {rel} does not vanish"),
                m.pullback_fraction(rel).map(|(num, _)| num.is_zero()),
            );
        }
    }
    col.finish(CHECK_STRUCTURE)
}

fn center_ideal(atlas: &BlowupAtlas) -> Ideal {
    let sg = &atlas.shifted;
    let mut gens = vec![sg.center.f().clone()];
    gens.extend(sg.f_list.iter().cloned());
    Ideal::new(atlas.base.ring(), gens).expect("center lives in the base ring")
}

fn check_center_pullback(atlas: &BlowupAtlas) -> CheckResult {
    let mut col = Collector::new();
    let center = center_ideal(atlas);
    for (k, chart) in atlas.charts.iter().enumerate() {
        let outcome = pullback_ideal(&chart.structure_map, &center).and_then(|pulled| {
            let principal = Ideal::new(chart.patch.ring(), vec![chart.exceptional.clone()])?;
            ideals_equal_on(&chart.patch, &pulled, &principal)
        });
        col.record(
            || {
                format!(
                    "chart {k}: center does not pull back to ({})",
                    chart.exceptional
                )
            },
            outcome,
        );
    }
    col.finish(CHECK_CENTER)
}

/// Whether `tau_ji` undoes `tau_ij` on the overlap, first at the sample
/// point and then symbolically.
fn transition_pair_inverse(atlas: &BlowupAtlas, i: usize, j: usize) -> Result<bool> {
    let (Some(there), Some(back)) = (
        atlas.transitions.get(&(i, j)),
        atlas.transitions.get(&(j, i)),
    ) else {
        return Ok(false);
    };
    let sample = there.source().sample();
    let roundtrip = there.evaluate(sample).and_then(|q| back.evaluate(&q));
    match roundtrip {
        Ok(pt) if pt == sample => {}
        _ => return Ok(false),
    }
    let composed = compose(back, there)?;
    map_equal_on_patch(&composed, &RationalMap::identity(there.source()))
}

fn check_transitions(atlas: &BlowupAtlas) -> CheckResult {
    let mut col = Collector::new();
    for &(i, j) in atlas.transitions.keys() {
        col.record(
            || format!("transitions ({j}, {i}) after ({i}, {j}) is not the identity"),
            transition_pair_inverse(atlas, i, j),
        );
    }
    col.finish(CHECK_TRANSITIONS)
}

fn check_identities(atlas: &BlowupAtlas) -> CheckResult {
    let mut col = Collector::new();
    let sg = &atlas.shifted;
    let sub = sg.center.subvariety();
    for (k, chart) in atlas.charts.iter().enumerate() {
        let m = &chart.structure_map;
        let pull = |p: &Polynomial| m.pullback_fraction(p).map(|(num, _)| num);
        let outcome = (|| -> Result<bool> {
            let e = &chart.exceptional;
            let f = pull(sg.center.f())?;
            let fs: Vec<Polynomial> = sg.f_list.iter().map(pull).collect::<Result<_>>()?;
            let gs: Vec<Polynomial> = sg.g_list.iter().map(pull).collect::<Result<_>>()?;
            let ts: Vec<Polynomial> = sub
                .iter()
                .map(|&i| Polynomial::var_index(chart.patch.ring(), i))
                .collect();
            if k == 0 {
                // f_i / f = 1 + g_i * x_i / f
                for i in 0..sub.len() {
                    if fs[i] != &f + &(&(&gs[i] * &ts[i]) * e) {
                        return Ok(false);
                    }
                }
                return Ok(f == *e);
            }
            let i = k - 1;
            // f / f_i = 1 - g_i * x_i / f_i
            if f != e - &(&(&gs[i] * &ts[i]) * e) || fs[i] != *e {
                return Ok(false);
            }
            // x_j / f_i = (f_j / f_i - f / f_i) / g_j
            for j in 0..sub.len() {
                if &(&gs[j] * &ts[j]) * e != &fs[j] - &f {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        col.record(|| format!("chart {k}: chart identities fail"), outcome);
    }
    col.finish(CHECK_IDENTITIES)
}

/// `(f, f_1, ..., f_r) = (x_1, ..., x_r, f)` on the neighborhood.
fn check_center_generators(atlas: &BlowupAtlas) -> CheckResult {
    let mut col = Collector::new();
    let shifted = center_ideal(atlas);
    let coordinate = atlas.center.ideal();
    col.record(
        || "shifted generators do not generate the center on the neighborhood".to_string(),
        ideal_equality_on_patch(&shifted, &coordinate, atlas.base.inequalities()),
    );
    col.finish(CHECK_GENERATORS)
}

/// One affine chart of a blowup in the presentation `R[a_1/a_i, ..., a_m/a_i]`.
#[derive(Debug, Clone)]
pub struct ReesChart {
    /// Base coordinates followed by one coordinate per `a_j / a_i`, `j != i`.
    pub patch: AffinePatch,
    pub relations: Ideal,
    /// Projection to the base.
    pub structure_map: RationalMap,
    /// Names of the adjoined fractions, indexed by generator (`None` at `i`).
    pub fractions: Vec<Option<String>>,
}

/// The `m` standard charts of the blowup of `base` along `(a_1, ..., a_m)`.
/// The adjoined coordinates are named `x1, ..., xm` (suffixed on clashes).
pub fn rees_charts(base: &AffinePatch, generators: &[Polynomial]) -> Result<Vec<ReesChart>> {
    let ring = base.ring();
    for (k, a) in generators.iter().enumerate() {
        if a.ring().vars() != ring.vars() {
            return Err(Error::RingMismatch);
        }
        if a.is_zero() {
            return Err(Error::ZeroGenerator(k));
        }
    }
    let m = generators.len();
    let mut names: Vec<String> = Vec::with_capacity(m);
    for k in 0..m {
        let n = ring.fresh_name(&format!("x{}", k + 1), &names);
        names.push(n);
    }
    let homogeneous = kernel_of_scaling(
        ring,
        base.relations(),
        base.inequalities(),
        &names,
        generators,
    )?;
    let hom_ring = homogeneous.ring().clone();
    let mut charts = Vec::with_capacity(m);
    for i in 0..m {
        let mut chart_vars: Vec<String> = ring.vars().to_vec();
        chart_vars.extend(
            names
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, n)| n.clone()),
        );
        let chart_ring = PolyRing::new(&chart_vars, ring.order())?;
        // y_i -> 1, y_j -> x_j
        let images: Vec<Polynomial> = hom_ring
            .vars()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k == ring.arity() + i {
                    Ok(Polynomial::one(&chart_ring))
                } else {
                    Polynomial::var(&chart_ring, v)
                }
            })
            .collect::<Result<_>>()?;
        let mut gens: Vec<Polynomial> = homogeneous
            .generators()
            .iter()
            .map(|g| g.compose_images(&images, &chart_ring))
            .collect::<Result<_>>()?;
        for rel in base.relations().generators() {
            gens.push(rel.embed_by_name(&chart_ring)?);
        }
        let relations = Ideal::new(&chart_ring, gens)?;
        let ineq: Vec<Polynomial> = base
            .inequalities()
            .iter()
            .map(|g| g.embed_by_name(&chart_ring))
            .collect::<Result<_>>()?;
        let sample = rees_sample(base, generators, i)?;
        let patch = AffinePatch::new(&chart_ring, ineq, relations.clone(), sample)?;
        let components = (0..ring.arity())
            .map(|k| {
                (
                    Polynomial::var_index(&chart_ring, k),
                    Polynomial::one(&chart_ring),
                )
            })
            .collect();
        let structure_map = RationalMap::new(patch.clone(), base.clone(), components)?;
        let fractions = (0..m).map(|k| (k != i).then(|| names[k].clone())).collect();
        charts.push(ReesChart {
            patch,
            relations,
            structure_map,
            fractions,
        });
    }
    Ok(charts)
}

/// A point of the `i`-th chart above a base point where `a_i` is nonzero,
/// or above the base sample when every such search fails.
fn rees_sample(
    base: &AffinePatch,
    generators: &[Polynomial],
    i: usize,
) -> Result<Option<Vec<Rational>>> {
    let above = |pt: &[Rational]| -> Result<Option<Vec<Rational>>> {
        let ai = generators[i].evaluate(pt)?;
        let Some(inv) = ai.recip() else {
            return Ok(None);
        };
        let mut out = pt.to_vec();
        for (k, a) in generators.iter().enumerate() {
            if k != i {
                out.push(&a.evaluate(pt)? * &inv);
            }
        }
        Ok(Some(out))
    };
    if let Some(pt) = above(base.sample())? {
        return Ok(Some(pt));
    }
    if base.relations().is_zero() {
        if let Ok(p) = base.restrict(std::slice::from_ref(&generators[i]), None) {
            return above(p.sample());
        }
    }
    // fall back to the fibre over the base sample with all fractions zero
    let mut pt = base.sample().to_vec();
    pt.extend(std::iter::repeat_n(Rational::zero(), generators.len() - 1));
    Ok(Some(pt))
}

/// Identifies each plain chart with the Rees chart of the same generator of
/// `(f, f_1, ..., f_r)`: in the ring joining both coordinate systems, the
/// Rees relations together with the chart coordinates written through the
/// fractions generate the same ideal as the chart's structure map together
/// with the fractions written in chart coordinates. One entry per chart.
pub fn rees_consistency(atlas: &BlowupAtlas) -> Result<Vec<bool>> {
    let sg = &atlas.shifted;
    let base = &atlas.base;
    let bring = base.ring();
    let sub = sg.center.subvariety();
    let shift = sg.center.shift();
    let mut gens = vec![sg.center.f().clone()];
    gens.extend(sg.f_list.iter().cloned());
    let rees = rees_charts(base, &gens)?;
    let mut out = Vec::with_capacity(atlas.charts.len());
    for (k, chart) in atlas.charts.iter().enumerate() {
        let rc = &rees[k];
        let rring = rc.patch.ring();
        let cring = chart.patch.ring();
        let mut joint: Vec<String> = rring.vars().to_vec();
        for v in cring.vars() {
            if !joint.contains(v) {
                joint.push(v.clone());
            }
        }
        let jring = PolyRing::new(&joint, bring.order())?;
        let lift = |p: &Polynomial| p.embed_by_name(&jring);
        let fraction = |j: usize| -> Result<Polynomial> {
            if j == k {
                return Ok(Polynomial::one(&jring));
            }
            Polynomial::var(&jring, rc.fractions[j].as_ref().expect("j != k"))
        };
        let g_base = |i: usize| lift(&sg.g_list[i].embed_by_name(rring)?);
        // Rees side: relations plus chart coordinates through the fractions
        let mut a_gens: Vec<Polynomial> = rc
            .relations
            .generators()
            .iter()
            .map(lift)
            .collect::<Result<_>>()?;
        // graph side: base coordinates and fractions in chart coordinates
        let mut b_gens: Vec<Polynomial> = Vec::new();
        for (l, (num, _)) in chart.structure_map.components().iter().enumerate() {
            let x = Polynomial::var(&jring, &bring.vars()[l])?;
            let d = &x - &lift(num)?;
            if !d.is_zero() {
                b_gens.push(d);
            }
        }
        for (j, g) in gens.iter().enumerate() {
            if j == k {
                continue;
            }
            let (num, _) = chart.structure_map.pullback_fraction(g)?;
            let ratio = num.exact_divide(&chart.exceptional)?;
            b_gens.push(&fraction(j)? - &lift(&ratio)?);
        }
        let chart_var = |slot: usize| Polynomial::var(&jring, &cring.vars()[slot]);
        if k == 0 {
            // s_i = (X_i - 1) / g_i
            for (i, &slot) in sub.iter().enumerate() {
                let lhs = &g_base(i)? * &chart_var(slot)?;
                a_gens.push(&lhs - &(&fraction(i + 1)? - &Polynomial::one(&jring)));
            }
        } else {
            let x0 = fraction(0)?;
            for (j, &slot) in sub.iter().enumerate() {
                let lhs = &g_base(j)? * &chart_var(slot)?;
                // t_j = (X_j - X_0) / g_j, with X_k = 1
                a_gens.push(&lhs - &(&fraction(j + 1)? - &x0));
            }
            let w = chart_var(shift)?;
            let xn = Polynomial::var(&jring, &bring.vars()[shift])?;
            let xi = Polynomial::var(&jring, &bring.vars()[sub[k - 1]])?;
            a_gens.push(&(&w - &xn) - &xi);
        }
        let ineq: Vec<Polynomial> = base
            .inequalities()
            .iter()
            .map(|g| g.embed_by_name(&jring))
            .collect::<Result<_>>()?;
        let a = Ideal::new(&jring, a_gens)?;
        let b = Ideal::new(&jring, b_gens)?;
        out.push(ideal_equality_on_patch(&a, &b, &ineq)?);
    }
    Ok(out)
}

impl BlowupAtlas {
    /// Replaces a transition map; used to probe the verifier.
    pub fn replace_transition(&mut self, i: usize, j: usize, map: RationalMap) -> Result<()> {
        match self.transitions.get_mut(&(i, j)) {
            Some(slot) => {
                *slot = map;
                Ok(())
            }
            None => Err(Error::IndexOutOfRange(if i >= self.charts.len() {
                i
            } else {
                j
            })),
        }
    }
}
