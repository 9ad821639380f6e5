//! JSON forms of pipelines and witnesses.
//!
//! A pipeline is an array of stages tagged by `op`:
//!
//! ```json
//! [{"op":"copy","k":2},
//!  {"op":"colorsearch","colors":["M"]},
//!  {"op":"colorwitness","colors":{"M":[0,3]}},
//!  {"op":"interpret","nu":"M(x)","eta":"E(x,y)"},
//!  {"op":"perturb","sets":[[0,1]]},
//!  {"op":"glue","parts":["V1","V2"],"blocks":[{"i":1,"j":2,"eta":"E(x,y)"}]}]
//! ```
//!
//! Formulas are stored as text and re-parsed on load. Witnesses are an array
//! of `{"color": [ids]}` objects, one per `colorsearch` stage.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ColoringWitness, Gluing, Interpretation, Pipeline, Stage};
use crate::error::{Error, Result};
use crate::logic::parse_with_free;
use crate::perturbation::Perturbation;

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
enum RawStage {
    Copy { k: usize },
    Colorsearch { colors: Vec<String> },
    Colorwitness { colors: BTreeMap<String, BTreeSet<usize>> },
    Interpret { nu: String, eta: String },
    Perturb { sets: Vec<BTreeSet<usize>> },
    Glue { parts: Vec<String>, blocks: Vec<RawBlock> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    i: usize,
    j: usize,
    eta: String,
}

impl From<&Stage> for RawStage {
    fn from(s: &Stage) -> Self {
        match s {
            Stage::Copy { k } => RawStage::Copy { k: *k },
            Stage::ColorSearch { colors } => RawStage::Colorsearch { colors: colors.clone() },
            Stage::ColorWitness(w) => RawStage::Colorwitness { colors: w.clone() },
            Stage::Interpret(i) => RawStage::Interpret { nu: i.nu.to_string(), eta: i.eta.to_string() },
            Stage::Perturb(p) => RawStage::Perturb { sets: p.sets.clone() },
            Stage::Glue(g) => RawStage::Glue {
                parts: g.parts.clone(),
                blocks: g.blocks.iter().map(|(&(i, j), eta)| RawBlock { i, j, eta: eta.to_string() }).collect(),
            },
        }
    }
}

impl TryFrom<RawStage> for Stage {
    type Error = Error;

    fn try_from(raw: RawStage) -> Result<Self> {
        Ok(match raw {
            RawStage::Copy { k } => Stage::Copy { k },
            RawStage::Colorsearch { colors } => Stage::ColorSearch { colors },
            RawStage::Colorwitness { colors } => Stage::ColorWitness(colors),
            RawStage::Interpret { nu, eta } => Stage::Interpret(Interpretation::parse(&nu, &eta)?),
            RawStage::Perturb { sets } => Stage::Perturb(Perturbation { sets }),
            RawStage::Glue { parts, blocks } => {
                let mut g = Gluing::new(parts);
                for b in blocks {
                    g = g.with_block(b.i, b.j, parse_with_free(&b.eta, &["x", "y"])?)?;
                }
                Stage::Glue(g)
            }
        })
    }
}

impl Pipeline {
    pub fn to_json_value(&self) -> serde_json::Value {
        let raw: Vec<RawStage> = self.stages.iter().map(RawStage::from).collect();
        serde_json::to_value(raw).expect("pipeline json")
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<RawStage> = self.stages.iter().map(RawStage::from).collect();
        serde_json::to_string(&raw).expect("pipeline json")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let raw: Vec<RawStage> = serde_json::from_value(v)?;
        Ok(Pipeline { stages: raw.into_iter().map(Stage::try_from).collect::<Result<_>>()? })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Pipeline::from_json_value(serde_json::from_str(text)?)
    }
}

pub fn witnesses_to_json(ws: &[ColoringWitness]) -> serde_json::Value {
    serde_json::to_value(ws).expect("witness json")
}

pub fn witnesses_from_json(text: &str) -> Result<Vec<ColoringWitness>> {
    Ok(serde_json::from_str(text)?)
}
