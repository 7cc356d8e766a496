//! Scenario files and their execution.

use serde::{Deserialize, Serialize};

use crate::blowup::{plain_blowup_atlas, rees_charts, verify_atlas, CheckResult};
use crate::error::{Error, Result};
use crate::geometry::{compose, map_equal_on_patch, AffinePatch, CenterSpec, RationalMap};
use crate::groebner::{buchberger_reduced, member_on_patch, with_budget, Ideal, DEFAULT_BUDGET};
use crate::poly::{MonomialOrder, PolyRing, RingRef};
use crate::projection::{generic_projection, hypersurface_model, LinearProjection};
use crate::rational::Rational;

use super::document::{AtlasDoc, FractionDoc, MapDoc, PatchDoc};
use super::parse::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub order: MonomialOrder,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: MonomialOrder::Grevlex,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupPayload {
    /// The hypersurface `f` inside the coordinate subvariety.
    pub f: String,
    pub subvariety: Vec<String>,
    /// Defaults to the origin.
    #[serde(default)]
    pub point: Option<Vec<Rational>>,
    #[serde(default)]
    pub shift: Option<String>,
    /// Inequalities of the ambient patch.
    #[serde(default)]
    pub inequalities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReesPayload {
    pub generators: Vec<String>,
    #[serde(default)]
    pub inequalities: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectPayload {
    pub ideal: Vec<String>,
    pub dim: usize,
    pub point: Vec<Rational>,
    /// A fixed matrix; sampled from the seed when absent.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyMapPayload {
    /// Defaults to the scenario ring with no inequalities or relations.
    #[serde(default)]
    pub source: Option<PatchDoc>,
    pub target: PatchDoc,
    pub forward: Vec<FractionDoc>,
    /// When present, both compositions must be the identity.
    #[serde(default)]
    pub backward: Option<Vec<FractionDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberPayload {
    pub polynomial: String,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub inequalities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "payload", rename_all = "kebab-case")]
pub enum Command {
    Blowup(BlowupPayload),
    Rees(ReesPayload),
    Project(ProjectPayload),
    VerifyMap(VerifyMapPayload),
    Member(MemberPayload),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Blowup(_) => "blowup",
            Command::Rees(_) => "rees",
            Command::Project(_) => "project",
            Command::VerifyMap(_) => "verify-map",
            Command::Member(_) => "member",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub ring: Vec<String>,
    #[serde(flatten)]
    pub command: Command,
    #[serde(default)]
    pub options: Options,
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Result of running a scenario: named checks plus command-specific artifacts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub artifacts: serde_json::Value,
    #[serde(skip)]
    pub budget_exceeded: bool,
}

impl Outcome {
    fn new(command: &str, checks: Vec<CheckResult>, artifacts: serde_json::Value) -> Self {
        Outcome {
            command: command.to_string(),
            passed: checks.iter().all(|c| c.passed),
            budget_exceeded: checks.iter().any(|c| c.budget_exceeded),
            checks,
            artifacts,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.command,
            if self.passed { "pass" } else { "FAIL" }
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {}: {}\n",
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            ));
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        render_value(&self.artifacts, 1, &mut out);
        out
    }
}

fn render_value(v: &serde_json::Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn check(name: &str, outcome: Result<bool>, failure: &str) -> Result<CheckResult> {
    match outcome {
        Ok(passed) => Ok(CheckResult {
            name: name.to_string(),
            passed,
            details: if passed {
                vec![]
            } else {
                vec![failure.to_string()]
            },
            budget_exceeded: false,
        }),
        Err(e @ Error::BudgetExceeded { .. }) => Err(e),
        Err(e) => Ok(CheckResult {
            name: name.to_string(),
            passed: false,
            details: vec![format!("{failure}: {e}")],
            budget_exceeded: false,
        }),
    }
}

fn scenario_ring(s: &Scenario) -> Result<RingRef> {
    PolyRing::new(&s.ring, s.options.order)
}

/// Runs a scenario under its Gröbner budget.
pub fn run_scenario(s: &Scenario) -> Result<Outcome> {
    with_budget(s.options.budget, || match &s.command {
        Command::Blowup(p) => run_blowup(s, p),
        Command::Rees(p) => run_rees(s, p),
        Command::Project(p) => run_project(s, p),
        Command::VerifyMap(p) => run_verify_map(s, p),
        Command::Member(p) => run_member(s, p),
    })
}

fn run_blowup(s: &Scenario, p: &BlowupPayload) -> Result<Outcome> {
    let ring = scenario_ring(s)?;
    let ineq = p
        .inequalities
        .iter()
        .map(|g| parse_poly(g, &ring))
        .collect::<Result<_>>()?;
    let point = p
        .point
        .clone()
        .unwrap_or_else(|| vec![Rational::zero(); ring.arity()]);
    let ambient = AffinePatch::new(&ring, ineq, Ideal::zero(&ring), Some(point.clone()))?;
    let f = parse_poly(&p.f, &ring)?;
    let center = CenterSpec::new(ambient, &p.subvariety, f, point, p.shift.as_deref())?;
    let atlas = plain_blowup_atlas(&center)?;
    let report = verify_atlas(&atlas);
    let doc = AtlasDoc::from_atlas(&atlas);
    Ok(Outcome::new(
        "blowup",
        report.checks,
        serde_json::json!({ "atlas": doc }),
    ))
}

fn run_rees(s: &Scenario, p: &ReesPayload) -> Result<Outcome> {
    let ring = scenario_ring(s)?;
    let ineq = p
        .inequalities
        .iter()
        .map(|g| parse_poly(g, &ring))
        .collect::<Result<_>>()?;
    let rel = Ideal::new(
        &ring,
        p.relations
            .iter()
            .map(|g| parse_poly(g, &ring))
            .collect::<Result<_>>()?,
    )?;
    let base = AffinePatch::new(&ring, ineq, rel, None)?;
    let gens: Vec<_> = p
        .generators
        .iter()
        .map(|g| parse_poly(g, &ring))
        .collect::<Result<_>>()?;
    let charts = rees_charts(&base, &gens)?;
    let docs: Vec<serde_json::Value> = charts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            serde_json::json!({
                "generator": p.generators[i],
                "ring": c.patch.ring().vars(),
                "relations": c.relations.generators().iter()
                    .map(|g| g.primitive().to_canonical_string()).collect::<Vec<_>>(),
                "sample": c.patch.sample(),
            })
        })
        .collect();
    Ok(Outcome::new(
        "rees",
        vec![],
        serde_json::json!({ "charts": docs }),
    ))
}

fn run_project(s: &Scenario, p: &ProjectPayload) -> Result<Outcome> {
    let ring = scenario_ring(s)?;
    let z = Ideal::new(
        &ring,
        p.ideal
            .iter()
            .map(|g| parse_poly(g, &ring))
            .collect::<Result<_>>()?,
    )?;
    let (proj, model) = match &p.matrix {
        Some(m) => {
            let proj = LinearProjection::new(m.clone())?;
            let model = hypersurface_model(&z, &proj, &p.point)?;
            (proj, model)
        }
        None => generic_projection(&z, p.dim, &p.point, s.options.seed)?,
    };
    let certified = crate::projection::verify_local_iso(&z, &proj, &model);
    let checks = vec![check(
        "local-isomorphism",
        Ok(certified),
        "model is not certified",
    )?];
    Ok(Outcome::new(
        "project",
        checks,
        serde_json::json!({
            "matrix": proj.matrix(),
            "hypersurface": model.h.to_canonical_string(),
            "image_ring": model.h.ring().vars(),
            "image_point": model.image_point,
            "inverse": MapDoc::from_map(&model.inverse).components,
            "patch": PatchDoc::from_patch(model.inverse.source()),
        }),
    ))
}

fn run_verify_map(s: &Scenario, p: &VerifyMapPayload) -> Result<Outcome> {
    let order = s.options.order;
    let source_doc = p.source.clone().unwrap_or(PatchDoc {
        ring: s.ring.clone(),
        inequalities: vec![],
        relations: vec![],
        sample: None,
    });
    let forward = MapDoc {
        source: source_doc.clone(),
        target: p.target.clone(),
        components: p.forward.clone(),
    }
    .to_map(order)?;
    let mut checks = vec![check("forward-map", Ok(true), "")?];
    if let Some(back) = &p.backward {
        let backward = MapDoc {
            source: p.target.clone(),
            target: source_doc,
            components: back.clone(),
        }
        .to_map(order)?;
        checks.push(check("backward-map", Ok(true), "")?);
        checks.push(check(
            "backward-after-forward",
            identity_after(&backward, &forward),
            "backward after forward is not the identity",
        )?);
        checks.push(check(
            "forward-after-backward",
            identity_after(&forward, &backward),
            "forward after backward is not the identity",
        )?);
    }
    Ok(Outcome::new(
        "verify-map",
        checks,
        serde_json::json!({ "forward": MapDoc::from_map(&forward) }),
    ))
}

fn identity_after(second: &RationalMap, first: &RationalMap) -> Result<bool> {
    let composed = compose(second, first)?;
    map_equal_on_patch(&composed, &RationalMap::identity(first.source()))
}

fn run_member(s: &Scenario, p: &MemberPayload) -> Result<Outcome> {
    let ring = scenario_ring(s)?;
    let f = parse_poly(&p.polynomial, &ring)?;
    let ideal = Ideal::new(
        &ring,
        p.ideal
            .iter()
            .map(|g| parse_poly(g, &ring))
            .collect::<Result<_>>()?,
    )?;
    let ineq: Vec<_> = p
        .inequalities
        .iter()
        .map(|g| parse_poly(g, &ring))
        .collect::<Result<_>>()?;
    let (member, artifacts) = if ineq.is_empty() {
        let gb = buchberger_reduced(&ideal, s.options.order)?;
        let nf = gb.normal_form(&f)?;
        (
            nf.is_zero(),
            serde_json::json!({
                "basis": gb.basis().iter().map(|g| g.to_canonical_string()).collect::<Vec<_>>(),
                "normal_form": nf.to_canonical_string(),
            }),
        )
    } else {
        (member_on_patch(&f, &ideal, &ineq)?, serde_json::json!({}))
    };
    let checks = vec![check(
        "membership",
        Ok(member),
        "polynomial is not in the ideal",
    )?];
    Ok(Outcome::new("member", checks, artifacts))
}
