//! Shipped example manifolds, stored as text-format files.

use crate::dsl::parse_manifold;
use crate::error::{Error, Result};
use crate::gog::{validate_jsj, GraphOfGroups};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub source: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "trefoil", source: include_str!("../presets/trefoil.gog") },
    Preset { name: "fig8", source: include_str!("../presets/fig8.gog") },
    Preset { name: "graph_manifold", source: include_str!("../presets/graph_manifold.gog") },
    Preset { name: "hnn_bundle", source: include_str!("../presets/hnn_bundle.gog") },
    Preset { name: "mixed", source: include_str!("../presets/mixed.gog") },
    Preset { name: "trefoil_fig8", source: include_str!("../presets/trefoil_fig8.gog") },
    Preset { name: "thickened_torus", source: include_str!("../presets/thickened_torus.gog") },
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}

pub fn preset_source(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .map(|p| p.source)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

pub fn load_preset(name: &str) -> Result<GraphOfGroups> {
    let src = preset_source(name)?;
    let gog = parse_manifold(src.as_bytes()).map_err(|e| Error::Invalid(format!("preset {name}: {e}")))?;
    let report = validate_jsj(&gog);
    if !report.is_valid() {
        return Err(Error::Invalid(format!("preset {name}: {}", report.violations.join("; "))));
    }
    Ok(gog)
}
