use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use gph_core::graph::{Graph, GraphMorphism};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A JSON file if `arg` names an existing file, otherwise a built-in name.
pub fn graph(arg: &str) -> Result<Arc<Graph>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        let g = Graph::from_json_str(&text).with_context(|| format!("{}", path.display()))?;
        return Ok(Arc::new(g));
    }
    match gph_core::named::by_name(arg) {
        Ok(g) => Ok(Arc::new(g)),
        Err(_) if arg.contains('/') || arg.ends_with(".json") => bail!("no such file: {arg}"),
        Err(e) => Err(e).with_context(|| format!("`{arg}` is neither a file nor a built-in graph")),
    }
}

pub fn morphism(path: &Path) -> Result<GraphMorphism> {
    let text = read(path)?;
    GraphMorphism::from_json_str(&text).with_context(|| format!("{}", path.display()))
}

pub fn text(path: &Path) -> Result<String> {
    read(path)
}
