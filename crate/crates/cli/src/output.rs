//! CSV files, run manifests and plot scripts.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV file assembled in memory and written once.
pub struct Csv {
    name: String,
    body: String,
}

impl Csv {
    pub fn new(name: &str, header: &[&str]) -> Csv {
        Csv { name: name.to_string(), body: header.join(",") + "\n" }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let mut first = true;
        for f in fields {
            if !first {
                self.body.push(',');
            }
            first = false;
            self.body.push_str(&f);
        }
        self.body.push('\n');
    }

    pub fn rows(&self) -> usize {
        self.body.lines().count() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments that reproduce the run, with every default resolved.
    pub argv: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub stream_policy: String,
    pub version: String,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let d = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in d.iter() {
        write!(s, "{b:02x}").expect("write to string");
    }
    s
}

/// Collects output files of one run and writes them with the manifest.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Outputs {
        Outputs { dir: dir.to_path_buf(), files: Vec::new() }
    }

    pub fn add_csv(&mut self, csv: Csv) {
        self.files.push((csv.name, csv.body));
    }

    pub fn add_text(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    /// Writes every file plus `<command>.manifest.json`; returns the manifest path.
    pub fn write(self, mut manifest: RunManifest) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        for (name, body) in &self.files {
            fs::write(self.dir.join(name), body.as_bytes())?;
            manifest.outputs.push(FileDigest { file: name.clone(), sha256: sha256_hex(body.as_bytes()) });
        }
        let path = self.dir.join(format!("{}.manifest.json", manifest.command));
        let json = serde_json::to_string_pretty(&manifest).map_err(io::Error::other)?;
        fs::write(&path, json + "\n")?;
        Ok(path)
    }
}

pub fn read_manifest(path: &Path) -> io::Result<RunManifest> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

/// Standalone matplotlib script: heatmap of |F(z)|/√E|F(z)|² for the first
/// trial with its zeros scattered over it.
pub fn plot_script(title: &str, field_csv: &str, zeros_csv: &str) -> String {
    format!(
        r#"# Zeros of the first sample over its modulus divided by the pointwise standard deviation. Run with: python3 {plot}
import csv
import os

import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))

with open(os.path.join(here, "{field}")) as fh:
    rows = list(csv.DictReader(fh))
x = np.array([float(r["x"]) for r in rows])
y = np.array([float(r["y"]) for r in rows])
a = np.array([float(r["normalized"]) for r in rows])
nx = len(np.unique(x))
ny = len(np.unique(y))
extent = (x.min(), x.max(), y.min(), y.max())
img = np.log10(np.maximum(a.reshape(ny, nx), 1e-300))
img = np.ma.masked_invalid(img)

with open(os.path.join(here, "{zeros}")) as fh:
    zs = [r for r in csv.DictReader(fh) if r["trial"] == "0"]
zx = np.array([float(r["re"]) for r in zs])
zy = np.array([float(r["im"]) for r in zs])
keep = (zx >= extent[0]) & (zx <= extent[1]) & (zy >= extent[2]) & (zy <= extent[3])

fig, ax = plt.subplots(figsize=(6, 6))
ax.imshow(img, origin="lower", extent=extent, cmap="viridis")
ax.scatter(zx[keep], zy[keep], s=12, c="white", edgecolors="black", linewidths=0.3)
ax.set_title("{title}")
ax.set_xlabel("Re z")
ax.set_ylabel("Im z")
fig.savefig(os.path.join(here, "zeros.png"), dpi=150, bbox_inches="tight")
"#,
        plot = "zeros_plot.py",
        field = field_csv,
        zeros = zeros_csv,
        title = title.replace('"', "'"),
    )
}
