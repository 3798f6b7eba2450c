use std::fs;
use std::path::Path;

use anyhow::Context;
use locallab_core::arithmetic::RealSet;
use locallab_core::certificate::Certificate;
use locallab_core::EdgeColoring;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_coloring(path: &Path) -> anyhow::Result<EdgeColoring> {
    EdgeColoring::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_set(path: &Path) -> anyhow::Result<RealSet> {
    RealSet::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_certificate(path: &Path) -> anyhow::Result<Certificate> {
    Certificate::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    let mut body = text.to_owned();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_text(path, &serde_json::to_string_pretty(value)?)
}

pub fn write_certificate(path: Option<&Path>, cert: &Certificate) -> anyhow::Result<()> {
    if let Some(p) = path {
        write_text(p, &cert.to_json())?;
        println!("certificate written to {}", p.display());
    }
    Ok(())
}
