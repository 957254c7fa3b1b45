//! Regenerates the shipped catalog data under `cat/` and `tracks/`.
//!
//! Usage: `cargo run -p catalog --example generate_catalog [-- <repo root>]`

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use catalog::families::{family_one, family_two};
use catalog::{BoundOutcome, CatalogEntry, Expected, MatrixSource, Payload, RadicalExpectation, Surface};
use polyexact::{lt_polynomial, IntMatrix, IntPoly};
use traintrack::models::tau_model;

fn f1_target(k: usize) -> Vec<Vec<i64>> {
    if k == 2 {
        return vec![vec![1, 0, 0, 1], vec![0, 0, 1, 1], vec![1, 0, 0, 2], vec![0, 1, 0, 0]];
    }
    let n = 2 * k;
    let mut m = vec![vec![0; n]; n];
    let mut img = |j: usize, targets: &[usize]| {
        for &t in targets {
            m[t - 1][j - 1] += 1;
        }
    };
    img(1, &[2 * k - 3, 2 * k - 1]);
    img(2, &[2 * k]);
    for j in 3..2 * k - 1 {
        img(j, &[j - 2]);
    }
    img(2 * k - 1, &[2 * k - 2]);
    img(2 * k, &[2 * k - 5, 2 * k - 2, 2 * k - 1]);
    m
}

fn f2_target(k: usize) -> Vec<Vec<i64>> {
    if k == 2 {
        return vec![vec![0, 1, 1, 1], vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 1]];
    }
    let n = 2 * k;
    let mut m = vec![vec![0; n]; n];
    let mut img = |j: usize, targets: &[usize]| {
        for &t in targets {
            m[t - 1][j - 1] += 1;
        }
    };
    img(1, &[2 * k - 1]);
    img(2, &[1, 2 * k]);
    img(3, &[1]);
    for j in 4..2 * k - 2 {
        img(j, &[j - 2]);
    }
    img(2 * k - 2, &[2 * k - 3]);
    img(2 * k - 1, &[2 * k - 4, 2 * k - 2]);
    img(2 * k, &[2 * k - 4]);
    m
}

fn l6a2_surface(k: usize) -> (Surface, Vec<Vec<usize>>) {
    let k32 = k as u32;
    if k.is_multiple_of(3) {
        (Surface { genus: k32 - 1, punctures: 4 }, vec![vec![3 * k], vec![k / 3; 3]])
    } else {
        (Surface { genus: k32, punctures: 2 }, vec![vec![3 * k], vec![k]])
    }
}

fn l13n5885_surface(k: usize) -> (Surface, Vec<Vec<usize>>) {
    let k32 = k as u32;
    match k % 5 {
        2 => (Surface { genus: k32 - 2, punctures: 6 }, vec![vec![(2 * k + 1) / 5; 5], vec![2 * k - 1]]),
        3 => (Surface { genus: k32 - 2, punctures: 6 }, vec![vec![2 * k + 1], vec![(2 * k - 1) / 5; 5]]),
        _ => (Surface { genus: k32, punctures: 2 }, vec![vec![2 * k + 1], vec![2 * k - 1]]),
    }
}

fn prov(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn tags(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    prov(pairs)
}

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(rows).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: String,
    description: String,
    payload: Payload,
    expected: Expected,
    surface: Option<(Surface, Vec<Vec<usize>>)>,
    tag: BTreeMap<String, String>,
    provisional: bool,
) -> CatalogEntry {
    let (surface, singularity) = match surface {
        Some((s, g)) => (Some(s), Some(g)),
        None => (None, None),
    };
    let orbits = singularity.as_ref().map(Vec::len);
    CatalogEntry {
        id,
        description,
        payload,
        expected,
        surface,
        singularity,
        orbits,
        tags: tag,
        provisional,
        base_dir: PathBuf::new(),
    }
}

fn sharp_expected(k: usize, matrix_rows: Option<Vec<Vec<i64>>>) -> Expected {
    let mut provenance = prov(&[("char_poly", "published"), ("bound", "published")]);
    if matrix_rows.is_some() {
        provenance.insert("matrix_up_to_permutation".into(), "published".into());
    }
    Expected {
        char_poly: Some(lt_polynomial(1, k as u32).unwrap()),
        matrix_up_to_permutation: matrix_rows.map(|m| matrix(&m)),
        bound: Some(BoundOutcome::Sharp),
        provenance,
        ..Default::default()
    }
}

fn write_json(path: &Path, value: &impl serde::Serialize) {
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    let mut text = serde_json::to_string_pretty(value).unwrap();
    text.push('\n');
    std::fs::write(path, text).unwrap();
}

fn main() {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../.."));
    let cat = root.join("cat");

    let mut l6a2 = Vec::new();
    for k in 2..=12 {
        let id = format!("l6a2-k{k:02}");
        let script = family_one(k).to_script(&id).unwrap();
        write_json(&cat.join("scripts").join(format!("{id}.json")), &script);
        l6a2.push(entry(
            id.clone(),
            format!("L6a2 fibering, k = {k}: folding sequence on a {}-gon", 3 * k),
            Payload::FoldingScript { script: format!("../scripts/{id}.json") },
            sharp_expected(k, Some(f1_target(k))),
            Some(l6a2_surface(k)),
            tags(&[("family", "l6a2"), ("group", "sharp")]),
            false,
        ));
    }
    write_json(&cat.join("entries/l6a2.json"), &l6a2);

    let mut l13 = Vec::new();
    for k in 2..=12 {
        let id = format!("l13n5885-k{k:02}");
        let (payload, provisional) = match family_two(k) {
            Some(s) => {
                let script = s.to_script(&id).unwrap();
                write_json(&cat.join("scripts").join(format!("{id}.json")), &script);
                (Payload::FoldingScript { script: format!("../scripts/{id}.json") }, false)
            }
            None => (Payload::Matrix { matrix: MatrixSource::Inline(matrix(&f2_target(k))) }, true),
        };
        let expected = if provisional { sharp_expected(k, None) } else { sharp_expected(k, Some(f2_target(k))) };
        l13.push(entry(
            id,
            format!("L13n5885 fibering, k = {k}"),
            payload,
            expected,
            Some(l13n5885_surface(k)),
            tags(&[("family", "l13n5885"), ("group", "sharp")]),
            provisional,
        ));
    }
    write_json(&cat.join("entries/l13n5885.json"), &l13);

    let mut classes = Vec::new();
    let golden = IntPoly::from_i64(&[1, -3, 1]);
    for (name, surface0) in [
        ("l6a2", (Surface { genus: 0, punctures: 4 }, vec![vec![1, 1, 1], vec![1]])),
        ("l13n5885", (Surface { genus: 1, punctures: 2 }, vec![vec![2], vec![2]])),
    ] {
        let dataset = format!("../datasets/{name}.json");
        classes.push(entry(
            format!("{name}-class-0-1"),
            format!("{name} fibered face, class (0, 1)"),
            Payload::FiberedClass { dataset: dataset.clone(), class: vec![0, 1] },
            Expected {
                char_poly: Some(golden.clone()),
                l_value: Some("6.854".into()),
                bound: Some(BoundOutcome::Sharp),
                provenance: prov(&[("char_poly", "published"), ("l_value", "published"), ("bound", "published")]),
                ..Default::default()
            },
            Some(surface0),
            tags(&[("family", name), ("group", "fibered-face")]),
            false,
        ));
        for k in 2..=12usize {
            let shifted = IntPoly::from_i64(&[0, 0, 1]) * lt_polynomial(1, k as u32).unwrap();
            let surface = if name == "l6a2" { l6a2_surface(k) } else { l13n5885_surface(k) };
            classes.push(entry(
                format!("{name}-class-1-{:02}", k + 1),
                format!("{name} fibered face, class (1, {})", k + 1),
                Payload::FiberedClass { dataset: dataset.clone(), class: vec![1, k as i64 + 1] },
                Expected {
                    char_poly: Some(shifted),
                    bound: Some(BoundOutcome::Sharp),
                    provenance: prov(&[("char_poly", "published"), ("bound", "published")]),
                    ..Default::default()
                },
                Some(surface),
                tags(&[("family", name), ("group", "fibered-face")]),
                false,
            ));
        }
    }
    write_json(&cat.join("entries/fibered-classes.json"), &classes);

    let torus = || Some((Surface { genus: 1, punctures: 1 }, vec![vec![2]]));
    let violated = |l: &str| Expected {
        l_value: Some(l.into()),
        bound: Some(BoundOutcome::Violated),
        provenance: prov(&[("l_value", "published"), ("bound", "published")]),
        ..Default::default()
    };
    let single = tags(&[("group", "single-orbit")]);
    let mut one = Vec::new();
    // trace t + 1 representatives of determinant one
    for (t, l) in [(2, "2.62"), (3, "3.73"), (4, "4.79"), (5, "5.83")] {
        one.push(entry(
            format!("sl2z-trace{}", t + 1),
            format!("once-punctured torus map of trace {}", t + 1),
            Payload::Sl2z { matrix: [[t, 1], [t - 1, 1]] },
            violated(l),
            torus(),
            single.clone(),
            false,
        ));
    }
    let lehmer = IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let mut lehmer_expected = violated("4.31");
    lehmer_expected.lambda = Some("1.17628".into());
    lehmer_expected.provenance.insert("lambda".into(), "published".into());
    one.push(entry(
        "lehmer".into(),
        "fibering of the (-2,3,7)-pretzel knot complement".into(),
        Payload::Polynomial { poly: lehmer },
        lehmer_expected,
        Some((Surface { genus: 5, punctures: 1 }, vec![vec![18]])),
        single.clone(),
        false,
    ));
    one.push(entry(
        "l6a2-k02-filled".into(),
        "L6a2 k = 2 map with its 2-pronged puncture filled in".into(),
        Payload::Matrix { matrix: MatrixSource::Path("../ff_k2.json".into()) },
        violated("5.10"),
        Some((Surface { genus: 2, punctures: 1 }, vec![vec![6]])),
        single,
        false,
    ));
    write_json(&cat.join("entries/single-orbit.json"), &one);

    let mut taus = Vec::new();
    for n in 3..=10 {
        taus.push(entry(
            format!("tau-{n:02}"),
            format!("model track τ_{n}"),
            Payload::TauModel { n },
            Expected {
                radical: Some(RadicalExpectation { equal: true, relations: usize::from(n % 2 == 0) }),
                provenance: prov(&[("radical", "derived: radical theorem")]),
                ..Default::default()
            },
            None,
            tags(&[("group", "radical")]),
            false,
        ));
    }
    write_json(&cat.join("entries/tau-models.json"), &taus);

    write_json(&cat.join("ff_k2.json"), &matrix(&f1_target(2)));
    write_json(&root.join("tracks/tau3.json"), tau_model(3).data());
}
