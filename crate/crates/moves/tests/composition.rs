use std::path::PathBuf;

use moves::{run_folding_sequence, split_fold, subdivide, Script};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use traintrack::models::{tau_model, ChordDiagram};
use traintrack::TrainTrack;

fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../cat/scripts")
}

fn to_i64(m: &polyexact::IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64().expect("small entries")
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn shipped_scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(scripts_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn transition_is_product_of_moves() {
    let paths = shipped_scripts();
    assert!(paths.len() >= 14);
    for path in paths {
        let s = Script::load(&path).unwrap();
        let r = run_folding_sequence(&s).unwrap();
        let n = r.start.edge_count();
        let mut acc: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for rec in &r.records {
            acc = matmul(&to_i64(&rec.matrix), &acc);
        }
        acc = matmul(&to_i64(&r.closure.record(&r.end, &r.start).matrix), &acc);
        assert_eq!(acc, to_i64(&r.transition), "{}", path.display());
        // every edge maps to a nonempty edge path
        for j in 0..n {
            assert!(acc.iter().map(|row| row[j]).sum::<i64>() >= 1);
            assert!(acc.iter().all(|row| row[j] >= 0));
        }
    }
}

#[test]
fn block_structure_is_consistent() {
    for path in shipped_scripts() {
        let r = run_folding_sequence(&Script::load(&path).unwrap()).unwrap();
        let t = to_i64(&r.transition);
        let ids = r.start.edge_ids(None);
        let pos = |e: &u32| ids.iter().position(|x| x == e).unwrap();
        let real: Vec<usize> = r.edge_order[r.n_inf..].iter().map(pos).collect();
        let block: Vec<Vec<i64>> = real.iter().map(|&i| real.iter().map(|&j| t[i][j]).collect()).collect();
        assert_eq!(block, to_i64(&r.real_block), "{}", path.display());
    }
}

fn random_track(seed: u64) -> Option<TrainTrack> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polygons: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=4)).collect();
    let n: usize = polygons.iter().sum();
    let mut counts: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    if counts.iter().sum::<usize>() % 2 == 1 {
        counts[0] += 1;
    }
    let mut slots: Vec<usize> = counts.iter().enumerate().flat_map(|(p, &c)| std::iter::repeat_n(p, c)).collect();
    slots.shuffle(&mut rng);
    let mut reals = vec![Vec::new(); n];
    for (i, &p) in slots.iter().enumerate() {
        reals[p].push((i / 2, (i % 2) as u8));
    }
    ChordDiagram { polygons, reals }.to_track().ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A split fold keeps every id and sends the slid edge to the sum of the
    /// two cusp edges, fixing all others.
    #[test]
    fn split_fold_adds_one_edge_to_another(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let Some(t) = random_track(seed) else { return Ok(()) };
        let mut cusps = Vec::new();
        for v in t.vertices() {
            for i in 0..v.half_edges.len() - 1 {
                if v.arc_at(i) == v.arc_at(i + 1) {
                    let (l, r) = (t.edge_of(v.half_edges[i]), t.edge_of(v.half_edges[i + 1]));
                    if l != r {
                        cusps.push((v.id, l, r));
                    }
                }
            }
        }
        prop_assume!(!cusps.is_empty());
        let (v, l, r) = cusps[pick.index(cusps.len())];
        let slide = if seed % 2 == 0 { l } else { r };
        let other = if slide == l { r } else { l };
        let Ok(recs) = split_fold(&t, v, l, r, slide) else { return Ok(()) };
        let out = &recs[1].result;
        prop_assert_eq!(out.edge_ids(None), t.edge_ids(None));
        prop_assert_eq!(out.vertex_ids(), t.vertex_ids());
        let m = matmul(&to_i64(&recs[1].matrix), &to_i64(&recs[0].matrix));
        let ids = t.edge_ids(None);
        for (j, &e) in ids.iter().enumerate() {
            for (i, &f) in ids.iter().enumerate() {
                let expect = i64::from(i == j) + i64::from(e == slide && f == other);
                prop_assert_eq!(m[i][j], expect, "entry ({}, {})", f, e);
            }
        }
    }

    #[test]
    fn subdivision_column_sums(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let Some(t) = random_track(seed) else { return Ok(()) };
        let ids = t.edge_ids(None);
        let e = ids[pick.index(ids.len())];
        let rec = subdivide(&t, e).unwrap();
        let m = to_i64(&rec.matrix);
        prop_assert_eq!(rec.result.edge_count(), t.edge_count() + 1);
        prop_assert_eq!(rec.result.euler_characteristic(), t.euler_characteristic());
        for (j, &x) in ids.iter().enumerate() {
            let s: i64 = m.iter().map(|row| row[j]).sum();
            prop_assert_eq!(s, if x == e { 2 } else { 1 });
        }
    }
}

#[test]
fn tau3_identity_closure() {
    let t = tau_model(3);
    let text = format!(
        r#"{{"track": {}, "moves": [], "closure": {{"vertices": {{"0": 0}}}}}}"#,
        serde_json::to_string(t.data()).unwrap()
    );
    let r = run_folding_sequence(&Script::from_json(&text).unwrap());
    assert!(r.is_ok(), "{r:?}");
}
