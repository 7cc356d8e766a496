//! JSON documents for patches, maps and atlases. Polynomials are stored as
//! canonical strings and numbers as exact rational strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blowup::{shifted_generators, BlowupAtlas, BlowupChart, ChartLabel};
use crate::error::{Error, Result};
use crate::geometry::{AffinePatch, CenterSpec, RationalMap};
use crate::groebner::Ideal;
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::rational::Rational;

use super::parse::parse_poly;

fn text(p: &Polynomial) -> String {
    p.to_canonical_string()
}

fn parse_all(items: &[String], ring: &RingRef) -> Result<Vec<Polynomial>> {
    items.iter().map(|s| parse_poly(s, ring)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchDoc {
    pub ring: Vec<String>,
    #[serde(default)]
    pub inequalities: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<Vec<Rational>>,
}

impl PatchDoc {
    pub fn from_patch(p: &AffinePatch) -> Self {
        PatchDoc {
            ring: p.ring().vars().to_vec(),
            inequalities: p.inequalities().iter().map(text).collect(),
            relations: p.relations().generators().iter().map(text).collect(),
            sample: Some(p.sample().to_vec()),
        }
    }

    pub fn to_patch(&self, order: MonomialOrder) -> Result<AffinePatch> {
        let ring = PolyRing::new(&self.ring, order)?;
        let ineq = parse_all(&self.inequalities, &ring)?;
        let rel = Ideal::new(&ring, parse_all(&self.relations, &ring)?)?;
        AffinePatch::new(&ring, ineq, rel, self.sample.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionDoc {
    pub num: String,
    #[serde(default = "one")]
    pub den: String,
}

fn one() -> String {
    "1".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: PatchDoc,
    pub target: PatchDoc,
    pub components: Vec<FractionDoc>,
}

impl MapDoc {
    pub fn from_map(m: &RationalMap) -> Self {
        MapDoc {
            source: PatchDoc::from_patch(m.source()),
            target: PatchDoc::from_patch(m.target()),
            components: m
                .components()
                .iter()
                .map(|(n, d)| FractionDoc {
                    num: text(n),
                    den: text(d),
                })
                .collect(),
        }
    }

    pub fn to_map(&self, order: MonomialOrder) -> Result<RationalMap> {
        let source = self.source.to_patch(order)?;
        let target = self.target.to_patch(order)?;
        let ring = source.ring().clone();
        let comps = self
            .components
            .iter()
            .map(|c| Ok((parse_poly(&c.num, &ring)?, parse_poly(&c.den, &ring)?)))
            .collect::<Result<_>>()?;
        RationalMap::new(source, target, comps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDoc {
    pub ambient: PatchDoc,
    pub f: String,
    pub subvariety: Vec<String>,
    pub point: Vec<Rational>,
    pub shift: String,
}

impl CenterDoc {
    pub fn from_center(c: &CenterSpec) -> Self {
        CenterDoc {
            ambient: PatchDoc::from_patch(c.ambient()),
            f: text(c.f()),
            subvariety: c.subvariety_names(),
            point: c.point().to_vec(),
            shift: c.shift_name().to_string(),
        }
    }

    pub fn to_center(&self, order: MonomialOrder) -> Result<CenterSpec> {
        let ambient = self.ambient.to_patch(order)?;
        let f = parse_poly(&self.f, ambient.ring())?;
        CenterSpec::new(
            ambient,
            &self.subvariety,
            f,
            self.point.clone(),
            Some(&self.shift),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDoc {
    pub label: String,
    pub patch: PatchDoc,
    pub structure_map: Vec<FractionDoc>,
    pub exceptional: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: usize,
    pub to: usize,
    pub map: MapDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDoc {
    pub center: CenterDoc,
    pub base: PatchDoc,
    pub charts: Vec<ChartDoc>,
    pub transitions: Vec<TransitionDoc>,
}

fn label_text(l: ChartLabel) -> String {
    l.to_string()
}

fn parse_label(s: &str) -> Result<ChartLabel> {
    if s == "f" {
        return Ok(ChartLabel::F);
    }
    s.strip_prefix('f')
        .and_then(|i| i.parse::<usize>().ok())
        .filter(|&i| i > 0)
        .map(ChartLabel::Shifted)
        .ok_or_else(|| Error::Malformed(format!("unknown chart label `{s}`")))
}

impl AtlasDoc {
    pub fn from_atlas(a: &BlowupAtlas) -> Self {
        AtlasDoc {
            center: CenterDoc::from_center(&a.center),
            base: PatchDoc::from_patch(&a.base),
            charts: a
                .charts
                .iter()
                .map(|c| ChartDoc {
                    label: label_text(c.label),
                    patch: PatchDoc::from_patch(&c.patch),
                    structure_map: MapDoc::from_map(&c.structure_map).components,
                    exceptional: text(&c.exceptional),
                })
                .collect(),
            transitions: a
                .transitions
                .iter()
                .map(|(&(from, to), m)| TransitionDoc {
                    from,
                    to,
                    map: MapDoc::from_map(m),
                })
                .collect(),
        }
    }

    /// Rebuilds an atlas from its stored charts and maps. Only the shifted
    /// generators are recomputed from the center; nothing is re-derived, so
    /// verifying the result checks the stored data.
    pub fn to_atlas(&self, order: MonomialOrder) -> Result<BlowupAtlas> {
        let center = self.center.to_center(order)?;
        let shifted = shifted_generators(&center)?;
        let base = self.base.to_patch(order)?;
        let mut charts = Vec::with_capacity(self.charts.len());
        for c in &self.charts {
            let patch = c.patch.to_patch(order)?;
            let ring = patch.ring().clone();
            let comps = c
                .structure_map
                .iter()
                .map(|fr| Ok((parse_poly(&fr.num, &ring)?, parse_poly(&fr.den, &ring)?)))
                .collect::<Result<_>>()?;
            let structure_map = RationalMap::new(patch.clone(), base.clone(), comps)?;
            charts.push(BlowupChart {
                exceptional: parse_poly(&c.exceptional, &ring)?,
                label: parse_label(&c.label)?,
                patch,
                structure_map,
            });
        }
        let mut transitions = BTreeMap::new();
        for t in &self.transitions {
            if t.from >= charts.len() || t.to >= charts.len() {
                return Err(Error::IndexOutOfRange(t.from.max(t.to)));
            }
            transitions.insert((t.from, t.to), t.map.to_map(order)?);
        }
        Ok(BlowupAtlas {
            base,
            center: shifted.center.clone(),
            shifted,
            charts,
            transitions,
        })
    }
}
