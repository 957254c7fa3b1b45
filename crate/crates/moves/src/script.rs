use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use polyexact::{IntMatrix, IntPoly};
use serde::{Deserialize, Serialize};
use traintrack::{EdgeId, EdgeKind, TrackData, TrainTrack, VertexId};

use crate::iso::{find_isomorphisms, Isomorphism};
use crate::ops::{delete_edge, fold, split_fold, subdivide, MoveKind, MoveRecord};
use crate::MoveError;

/// Initial track of a script: inline JSON or a path relative to the script.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrackSource {
    Path(String),
    Inline(TrackData),
}

impl TrackSource {
    pub fn resolve(&self, base: Option<&Path>) -> Result<TrainTrack, MoveError> {
        match self {
            TrackSource::Inline(d) => Ok(TrainTrack::new(d.clone())?),
            TrackSource::Path(p) => {
                let path = match base {
                    Some(b) if Path::new(p).is_relative() => b.join(p),
                    _ => PathBuf::from(p),
                };
                Ok(TrainTrack::load(path)?)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum MoveSpec {
    Subdivide { edge: EdgeId },
    Fold { vertex: VertexId, left: EdgeId, right: EdgeId },
    Delete { edge: EdgeId },
    /// Subdivide `slide` next to `vertex` and fold the short piece onto the
    /// other edge of the cusp.
    SplitFold { vertex: VertexId, left: EdgeId, right: EdgeId, slide: EdgeId },
}

/// Closing isomorphism from the final track back to the initial one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ClosureSpec {
    #[default]
    Auto,
    /// Maps keyed by final-track ids with initial-track ids as values.
    Explicit { vertices: BTreeMap<VertexId, VertexId>, edges: BTreeMap<EdgeId, EdgeId> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ClosureRepr {
    Word(String),
    Maps {
        #[serde(default)]
        vertices: BTreeMap<String, u32>,
        #[serde(default)]
        edges: BTreeMap<String, u32>,
    },
}

impl Serialize for ClosureSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ClosureSpec::Auto => ClosureRepr::Word("auto".into()).serialize(s),
            ClosureSpec::Explicit { vertices, edges } => {
                let text = |m: &BTreeMap<u32, u32>| m.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                ClosureRepr::Maps { vertices: text(vertices), edges: text(edges) }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for ClosureSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ClosureRepr::deserialize(d)? {
            ClosureRepr::Word(w) if w == "auto" => Ok(ClosureSpec::Auto),
            ClosureRepr::Word(w) => Err(serde::de::Error::custom(format!("unknown closure \"{w}\""))),
            ClosureRepr::Maps { vertices, edges } => {
                let ids = |m: BTreeMap<String, u32>| -> Result<BTreeMap<u32, u32>, D::Error> {
                    m.into_iter()
                        .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(|_| serde::de::Error::custom(format!("bad id \"{k}\""))))
                        .collect()
                };
                Ok(ClosureSpec::Explicit { vertices: ids(vertices)?, edges: ids(edges)? })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Script {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub track: TrackSource,
    #[serde(default)]
    pub moves: Vec<MoveSpec>,
    #[serde(default)]
    pub closure: ClosureSpec,
    /// Directory used to resolve a relative track path.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl Script {
    pub fn from_json(text: &str) -> Result<Self, MoveError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MoveError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| MoveError::Io { path: path.display().to_string(), source })?;
        let mut s = Self::from_json(&text)?;
        s.base_dir = path.parent().map(Path::to_path_buf);
        Ok(s)
    }

    pub fn initial_track(&self) -> Result<TrainTrack, MoveError> {
        self.track.resolve(self.base_dir.as_deref())
    }
}

fn apply(t: &TrainTrack, m: &MoveSpec) -> Result<Vec<MoveRecord>, MoveError> {
    Ok(match *m {
        MoveSpec::Subdivide { edge } => vec![subdivide(t, edge)?],
        MoveSpec::Fold { vertex, left, right } => vec![fold(t, vertex, left, right)?],
        MoveSpec::Delete { edge } => vec![delete_edge(t, edge)?],
        MoveSpec::SplitFold { vertex, left, right, slide } => split_fold(t, vertex, left, right, slide)?,
    })
}

/// Apply moves in order. A failing move is reported with its index.
pub fn run_moves(start: &TrainTrack, moves: &[MoveSpec]) -> Result<Vec<MoveRecord>, MoveError> {
    let mut cur = start.clone();
    let mut out = Vec::new();
    for (index, m) in moves.iter().enumerate() {
        let recs = apply(&cur, m).map_err(|e| MoveError::Positioned { index, source: Box::new(e) })?;
        cur = recs.last().unwrap().result.clone();
        out.extend(recs);
    }
    Ok(out)
}

/// Composite of a closed folding sequence `τ₀ → … → τ_n → τ₀`.
#[derive(Clone, Debug)]
pub struct TrainTrackMapResult {
    pub start: TrainTrack,
    pub end: TrainTrack,
    pub records: Vec<MoveRecord>,
    /// Isomorphism from the end track to the start track.
    pub closure: Isomorphism,
    /// `f_*` on the start track's edges in ascending id order.
    pub transition: IntMatrix,
    /// Infinitesimal edges (ascending) followed by real edges (ascending).
    pub edge_order: Vec<EdgeId>,
    pub n_inf: usize,
    pub permutation_block: IntMatrix,
    pub real_block: IntMatrix,
    /// Signed vertex permutation, start vertices in ascending id order.
    pub vertex_signs: IntMatrix,
    /// Pairs `(component, image component)` of start-track boundary components.
    pub boundary: Vec<(usize, usize)>,
    pub real_char_poly: IntPoly,
    pub reciprocal: bool,
    pub perron_frobenius: bool,
}

impl TrainTrackMapResult {
    pub fn boundary_map(&self) -> Option<Vec<usize>> {
        let mut out = vec![None; self.start.boundary_components().len()];
        for &(a, b) in &self.boundary {
            match out[a] {
                None => out[a] = Some(b),
                Some(x) if x == b => {}
                Some(_) => return None,
            }
        }
        out.into_iter().collect()
    }

    /// Matrices and verdicts as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "edge_order": self.edge_order,
            "n_infinitesimal": self.n_inf,
            "transition": self.transition,
            "permutation_block": self.permutation_block,
            "real_transition": self.real_block,
            "vertex_signs": self.vertex_signs,
            "closure": {
                "vertices": self.closure.vertices,
                "edges": self.closure.edges,
            },
            "boundary_map": self.boundary_map(),
            "real_char_poly": self.real_char_poly,
            "reciprocal": self.reciprocal,
            "perron_frobenius": self.perron_frobenius,
            "moves": self.records.len(),
        })
    }
}

fn compose_relation(a: &[(usize, usize)], b: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        a.iter().flat_map(|&(x, y)| b.iter().filter(move |p| p.0 == y).map(move |p| (x, p.1))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn closure_iso(start: &TrainTrack, end: &TrainTrack, spec: &ClosureSpec) -> Result<Isomorphism, MoveError> {
    let all = find_isomorphisms(end, start, &[]);
    match spec {
        ClosureSpec::Auto => match all.len() {
            1 => Ok(all.into_iter().next().unwrap()),
            0 => Err(MoveError::Closure("final track is not isomorphic to the initial track".into())),
            n => Err(MoveError::Closure(format!(
                "{n} isomorphisms close the sequence; give the closure explicitly"
            ))),
        },
        ClosureSpec::Explicit { vertices, edges } => {
            let matching: Vec<Isomorphism> = all
                .into_iter()
                .filter(|i| {
                    vertices.iter().all(|(a, b)| i.vertices.get(a) == Some(b))
                        && edges.iter().all(|(a, b)| i.edges.get(a) == Some(b))
                })
                .collect();
            match matching.len() {
                1 => Ok(matching.into_iter().next().unwrap()),
                0 => Err(MoveError::Closure("no isomorphism matches the given closure".into())),
                n => Err(MoveError::Closure(format!("{n} isomorphisms match the given closure"))),
            }
        }
    }
}

/// Run a closed script and split `f_*` into its infinitesimal permutation
/// block and real block.
pub fn run_folding_sequence(script: &Script) -> Result<TrainTrackMapResult, MoveError> {
    let start = script.initial_track()?;
    let records = run_moves(&start, &script.moves)?;
    if let Some(i) = records.iter().position(|r| r.kind == MoveKind::Delete) {
        let _ = i;
        return Err(MoveError::Positioned {
            index: script.moves.iter().position(|m| matches!(m, MoveSpec::Delete { .. })).unwrap(),
            source: Box::new(MoveError::CannotDelete(
                "deletions change the edge space and cannot appear in a closed folding sequence".into(),
            )),
        });
    }
    let end = records.last().map_or_else(|| start.clone(), |r| r.result.clone());
    let closure = closure_iso(&start, &end, &script.closure)?;
    let closing = closure.record(&end, &start);

    let n = start.edge_count();
    let mut total = IntMatrix::identity(n);
    let ids = crate::ops::id_labels(&start.edge_ids(None));
    total = total.with_labels(ids.clone(), ids)?;
    let vn = start.vertex_count();
    let vids = crate::ops::id_labels(&start.vertex_ids());
    let mut signs = IntMatrix::identity(vn).with_labels(vids.clone(), vids)?;
    let mut boundary: Vec<(usize, usize)> = (0..start.boundary_components().len()).map(|i| (i, i)).collect();
    for r in records.iter().chain(std::iter::once(&closing)) {
        total = r.matrix.mul(&total)?;
        signs = r.vertex_signs.mul(&signs)?;
        boundary = compose_relation(&boundary, &r.boundary);
    }

    let inf = start.edge_ids(Some(EdgeKind::Infinitesimal));
    let real = start.edge_ids(Some(EdgeKind::Real));
    let all_ids = start.edge_ids(None);
    let pos = |e: &EdgeId| all_ids.iter().position(|x| x == e).unwrap();
    let inf_idx: Vec<usize> = inf.iter().map(pos).collect();
    let real_idx: Vec<usize> = real.iter().map(pos).collect();
    let permutation_block = total.select(&inf_idx, &inf_idx);
    let real_block = total.select(&real_idx, &real_idx);
    let lower = total.select(&real_idx, &inf_idx);
    if !permutation_block.is_permutation() {
        return Err(MoveError::BlockStructure("infinitesimal block is not a permutation".into()));
    }
    if lower.rows().iter().flatten().any(|x| *x != 0.into()) {
        return Err(MoveError::BlockStructure("real edges map across infinitesimal edges".into()));
    }
    let real_char_poly = real_block.char_poly()?;
    let reciprocal = real_char_poly.has_inversion_closed_roots()?;
    let perron_frobenius = real.is_empty() || digraph::is_perron_frobenius(&real_block)?;
    let mut edge_order = inf;
    edge_order.extend(real);
    Ok(TrainTrackMapResult {
        start,
        end,
        records,
        closure,
        transition: total,
        n_inf: inf_idx.len(),
        edge_order,
        permutation_block,
        real_block,
        vertex_signs: signs,
        boundary,
        real_char_poly,
        reciprocal,
        perron_frobenius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use traintrack::models::tau_model;

    fn inline(t: &TrainTrack, moves: Vec<MoveSpec>, closure: ClosureSpec) -> Script {
        Script { name: None, track: TrackSource::Inline(t.data().clone()), moves, closure, base_dir: None }
    }

    #[test]
    fn identity_script() {
        let t = tau_model(3);
        let closure = ClosureSpec::Explicit { vertices: [(0, 0)].into(), edges: BTreeMap::new() };
        let r = run_folding_sequence(&inline(&t, vec![], closure)).unwrap();
        assert_eq!(r.transition, IntMatrix::identity(6).with_labels(r.transition.row_labels.clone(), r.transition.col_labels.clone()).unwrap());
        assert!(r.permutation_block.is_permutation());
        assert_eq!(r.real_block.rows(), IntMatrix::identity(3).rows());
        assert_eq!(r.boundary_map().unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn auto_closure_ambiguous() {
        let t = tau_model(3);
        let err = run_folding_sequence(&inline(&t, vec![], ClosureSpec::Auto)).unwrap_err();
        assert!(err.to_string().contains("3 isomorphisms"), "{err}");
    }

    #[test]
    fn positioned_error() {
        let t = tau_model(3);
        let moves = vec![MoveSpec::Subdivide { edge: 3 }, MoveSpec::Fold { vertex: 0, left: 99, right: 98 }];
        match run_folding_sequence(&inline(&t, moves, ClosureSpec::Auto)) {
            Err(MoveError::Positioned { index: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn script_json_round_trip() {
        let text = r#"{"track":"tau3.json","moves":[{"op":"split-fold","vertex":1,"left":4,"right":5,"slide":5},{"op":"subdivide","edge":2}],"closure":{"vertices":{"0":1}}}"#;
        let s = Script::from_json(text).unwrap();
        assert_eq!(s.moves[0], MoveSpec::SplitFold { vertex: 1, left: 4, right: 5, slide: 5 });
        assert_eq!(s.closure, ClosureSpec::Explicit { vertices: [(0, 1)].into(), edges: BTreeMap::new() });
        let auto = Script::from_json(r#"{"track":"x.json","moves":[],"closure":"auto"}"#).unwrap();
        assert_eq!(auto.closure, ClosureSpec::Auto);
        assert!(Script::from_json(r#"{"track":"x.json","closure":"manual"}"#).is_err());
    }
}
