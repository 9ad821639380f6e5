//! Explicit host constructions. Each encoder returns a [`HostArtifact`]: a
//! host graph, a pipeline, the witnesses it needs and the target graph. The
//! artifact is verified when it is built, so an encoder never hands out a
//! host that does not reproduce its target.

mod caterpillar;
mod components;
mod cubic;
mod grid;
mod interval;
mod planar;
mod selfcopy;

pub use caterpillar::{compress_caterpillar, encode_caterpillar_in_path, CompressedCaterpillar, Multiplicities};
pub use components::{connected_graphs, encode_bounded_components};
pub use cubic::{encode_cubic, regular_supergraph, CubicEncoding};
pub use grid::{encode_grid, grid_host, grid_unit_interval_model};
pub use interval::{encode_interval, interval_family, IntervalFamily};
pub use planar::{encode_pathwidth_planar, interval_model_from_ordering, IntervalModel, PlanarHost};
pub use selfcopy::path_selfcopy;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::io::GraphJson;
use crate::graph::{colored_isomorphism, ColoredGraph};
use crate::transduction::{apply_pipeline_colored, ColoringWitness, Pipeline};

/// A host with a pipeline and witnesses whose image is isomorphic to
/// `target`. When the target carries colors, the image must match them too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostArtifact {
    pub host: ColoredGraph,
    pub pipeline: Pipeline,
    pub witnesses: Vec<ColoringWitness>,
    pub target: ColoredGraph,
    /// Short human-readable name of the target, e.g. `2x3 grid`.
    pub label: String,
}

impl HostArtifact {
    /// Builds and verifies an artifact.
    pub fn new(
        host: ColoredGraph,
        pipeline: Pipeline,
        witnesses: Vec<ColoringWitness>,
        target: ColoredGraph,
        label: impl Into<String>,
    ) -> Result<Self> {
        let a = HostArtifact { host, pipeline, witnesses, target, label: label.into() };
        a.verify()?;
        Ok(a)
    }

    /// The image, restricted to the target's colors.
    pub fn image(&self) -> Result<ColoredGraph> {
        let img = apply_pipeline_colored(&self.host, &self.pipeline, &self.witnesses)?;
        Ok(img.restrict_colors(self.target.colors().keys().map(String::as_str)))
    }

    pub fn verify(&self) -> Result<()> {
        let img = self.image()?;
        if colored_isomorphism(&img, &self.target).is_none() {
            return Err(Error::Verification(format!(
                "image has {} vertices and {} edges; it is not isomorphic to the target {} ({} vertices, {} edges)",
                img.n(),
                img.graph().edge_count(),
                self.label,
                self.target.n(),
                self.target.graph().edge_count()
            )));
        }
        Ok(())
    }

    pub fn to_bundle_json(&self) -> serde_json::Value {
        serde_json::to_value(Bundle {
            host: GraphJson::from(&self.host),
            pipeline: self.pipeline.to_json_value(),
            witnesses: self.witnesses.clone(),
            target: GraphJson::from(&self.target),
        })
        .expect("bundle json")
    }

    /// Loads a bundle and verifies it.
    pub fn from_bundle_json(text: &str) -> Result<Self> {
        let b: Bundle = serde_json::from_str(text)?;
        HostArtifact::new(
            b.host.try_into()?,
            Pipeline::from_json_value(b.pipeline)?,
            b.witnesses,
            b.target.try_into()?,
            "bundle target",
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Bundle {
    host: GraphJson,
    pipeline: serde_json::Value,
    witnesses: Vec<ColoringWitness>,
    target: GraphJson,
}

/// Fresh color name based on `base` that avoids every name in `taken`.
pub(crate) fn fresh_name<'a>(base: &str, taken: impl IntoIterator<Item = &'a String> + Clone) -> String {
    let mut name = base.to_string();
    while taken.clone().into_iter().any(|t| *t == name) {
        name.push('_');
    }
    name
}
