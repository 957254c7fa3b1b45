use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use polyexact::{IntMatrix, IntPoly};
use serde::{Deserialize, Serialize};

use crate::CatalogError;

/// What an entry describes and the data needed to recompute it. Paths are
/// relative to the file holding the entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Payload {
    FoldingScript { script: String },
    Matrix { matrix: MatrixSource },
    Sl2z { matrix: [[i64; 2]; 2] },
    FiberedClass { dataset: String, class: Vec<i64> },
    #[serde(rename = "tau_n-model")]
    TauModel { n: usize },
    Polynomial { poly: IntPoly },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::FoldingScript { .. } => "folding-script",
            Payload::Matrix { .. } => "matrix",
            Payload::Sl2z { .. } => "sl2z",
            Payload::FiberedClass { .. } => "fibered-class",
            Payload::TauModel { .. } => "tau_n-model",
            Payload::Polynomial { .. } => "polynomial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSource {
    Path(String),
    Inline(IntMatrix),
}

/// Genus and puncture count of the surface; `K = |χ| = 2g - 2 + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
}

impl Surface {
    pub fn chi_abs(&self) -> Option<u32> {
        (2 * self.genus + self.punctures).checked_sub(2).filter(|&k| k > 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundOutcome {
    /// `λ^K ≥ μ⁴` and the refined bound hold, the refined one with equality.
    Sharp,
    Satisfied,
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalExpectation {
    /// `rad(ω|W) = span{r_c}`.
    pub equal: bool,
    pub relations: usize,
}

/// Expected values. Each one present must have an entry in `provenance`
/// naming where it comes from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_up_to_permutation: Option<IntMatrix>,
    /// Decimal approximation of `λ`, matched to its last digit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    /// Decimal approximation of `L = λ^K`, matched to its last digit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<RadicalExpectation>,
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

impl Expected {
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.char_poly.is_some() {
            out.push("char_poly");
        }
        if self.matrix_up_to_permutation.is_some() {
            out.push("matrix_up_to_permutation");
        }
        if self.lambda.is_some() {
            out.push("lambda");
        }
        if self.l_value.is_some() {
            out.push("l_value");
        }
        if self.bound.is_some() {
            out.push("bound");
        }
        if self.radical.is_some() {
            out.push("radical");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(default)]
    pub description: String,
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<Surface>,
    /// Prong counts of the punctures, grouped by orbit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singularity: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<usize>,
    #[serde(default)]
    pub tags: BTreeMap<String, String>,
    #[serde(default)]
    pub provisional: bool,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl CatalogEntry {
    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }

    /// Orbit count, from the explicit field or the singularity grouping.
    pub fn orbit_count(&self) -> Option<usize> {
        self.orbits.or_else(|| self.singularity.as_ref().map(Vec::len))
    }

    pub fn chi_abs(&self) -> Option<u32> {
        self.surface.and_then(|s| s.chi_abs())
    }

    pub fn resolve(&self, rel: &str) -> PathBuf {
        self.base_dir.join(rel)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |why: String| CatalogError::Entry { id: self.id.clone(), why };
        if self.id.is_empty() {
            return Err(bad("empty id".into()));
        }
        for field in self.expected.present() {
            if !self.expected.provenance.contains_key(field) {
                return Err(bad(format!("expected {field} has no provenance")));
            }
        }
        if let (Some(o), Some(s)) = (self.orbits, &self.singularity) {
            if o != s.len() {
                return Err(bad(format!("orbits = {o} but the singularity lists {} orbits", s.len())));
            }
        }
        if let (Some(surface), Some(s)) = (self.surface, &self.singularity) {
            let count: usize = s.iter().map(Vec::len).sum();
            if count != surface.punctures as usize {
                return Err(bad(format!("{} punctures but {count} singularities listed", surface.punctures)));
            }
        }
        Ok(())
    }

    /// Whether every `key=value` filter matches. `id` and `kind` match the
    /// entry itself, anything else a tag.
    pub fn matches(&self, filters: &[(String, String)]) -> bool {
        filters.iter().all(|(k, v)| match k.as_str() {
            "id" => &self.id == v,
            "kind" => self.kind() == v,
            _ => self.tags.get(k) == Some(v),
        })
    }
}

/// Parse `"family=l6a2,group=sharp"` into key/value pairs.
pub fn parse_filter(text: &str) -> Result<Vec<(String, String)>, CatalogError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CatalogError::Filter(format!("`{s}` is not of the form key=value")))
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryFile {
    One(Box<CatalogEntry>),
    Many(Vec<CatalogEntry>),
}

/// Entries of one file: a single entry or an array of them.
pub fn load_entries(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    let parsed: EntryFile = serde_json::from_str(&text)
        .map_err(|e| CatalogError::Parse { path: path.display().to_string(), why: e.to_string() })?;
    let mut entries = match parsed {
        EntryFile::One(e) => vec![*e],
        EntryFile::Many(v) => v,
    };
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    for e in &mut entries {
        e.base_dir = base.clone();
        e.validate()?;
    }
    Ok(entries)
}

/// All entries under `<dir>/entries`, sorted by id; ids must be unique.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let entries_dir = dir.join("entries");
    let read = std::fs::read_dir(&entries_dir)
        .map_err(|source| CatalogError::Io { path: entries_dir.display().to_string(), source })?;
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut all = Vec::new();
    for f in files {
        all.extend(load_entries(&f)?);
    }
    all.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = all.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(CatalogError::Entry { id: w[0].id.clone(), why: "duplicate id".into() });
    }
    Ok(all)
}

/// `$TTX_CATALOG` if set, else the catalog shipped with the sources.
pub fn default_catalog_dir() -> PathBuf {
    std::env::var_os("TTX_CATALOG")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../cat"))
}
