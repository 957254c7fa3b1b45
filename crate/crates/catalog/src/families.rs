//! Chord-diagram descriptions of the two families of folding sequences and
//! their translation into move scripts.
//!
//! A slide moves one end of a real chord across a neighbouring chord at the
//! same polygon vertex and then across the next infinitesimal edge. In move
//! terms it is two split-folds: one along the chord and one along the
//! infinitesimal edge.

use std::collections::BTreeMap;

use moves::{ClosureSpec, MoveSpec, Script, TrackSource};
use serde::{Deserialize, Serialize};
use traintrack::models::{ChordDiagram, ChordEnd};

use crate::CatalogError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlideDir {
    /// `l[j]` slides over `l[j + 1]` and lands first at the vertex after
    /// the far end of `l[j + 1]`.
    #[serde(rename = "L")]
    Left,
    /// `l[j + 1]` slides over `l[j]` and lands last at the vertex before the
    /// far end of `l[j]`.
    #[serde(rename = "R")]
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slide {
    pub vertex: usize,
    pub index: usize,
    pub dir: SlideDir,
}

impl Slide {
    pub fn left(vertex: usize, index: usize) -> Self {
        Slide { vertex, index, dir: SlideDir::Left }
    }

    pub fn right(vertex: usize, index: usize) -> Self {
        Slide { vertex, index, dir: SlideDir::Right }
    }
}

#[derive(Clone, Debug)]
pub struct ChordScript {
    pub diagram: ChordDiagram,
    pub slides: Vec<Slide>,
    /// Image of vertex 0 of the final track in the initial one.
    pub closure_vertex: u32,
}

fn other_end(reals: &[Vec<ChordEnd>], h: ChordEnd) -> (usize, usize) {
    for (p, l) in reals.iter().enumerate() {
        if let Some(j) = l.iter().position(|&(c, end)| c == h.0 && end != h.1) {
            return (p, j);
        }
    }
    panic!("chord {} has no second end", h.0)
}

impl ChordScript {
    /// Real half-edge lists after all slides.
    pub fn final_reals(&self) -> Result<Vec<Vec<ChordEnd>>, CatalogError> {
        Ok(self.simulate()?.0)
    }

    fn simulate(&self) -> Result<(Vec<Vec<ChordEnd>>, Vec<MoveSpec>), CatalogError> {
        let d = &self.diagram;
        let n = d.vertex_count() as u32;
        let chord = |h: ChordEnd| n + h.0 as u32;
        let mut reals = d.reals.clone();
        let mut out = Vec::new();
        for (i, s) in self.slides.iter().enumerate() {
            let bad = |why: &str| CatalogError::Script(format!("slide {i} at vertex {}: {why}", s.vertex));
            let l = reals.get(s.vertex).ok_or_else(|| bad("no such vertex"))?;
            if s.index + 1 >= l.len() {
                return Err(bad("no chord to the right"));
            }
            let (x, y) = (l[s.index], l[s.index + 1]);
            let p = s.vertex as u32;
            match s.dir {
                SlideDir::Right => {
                    let (w, pos) = other_end(&reals, x);
                    if w == s.vertex || pos != 0 {
                        return Err(bad("the chord slid over does not end first in its list"));
                    }
                    let prev = d.prev(w);
                    out.push(MoveSpec::SplitFold { vertex: p, left: chord(x), right: chord(y), slide: chord(y) });
                    out.push(MoveSpec::SplitFold { vertex: w as u32, left: prev as u32, right: chord(y), slide: chord(y) });
                    reals[s.vertex].remove(s.index + 1);
                    reals[prev].push(y);
                }
                SlideDir::Left => {
                    let (w, pos) = other_end(&reals, y);
                    if w == s.vertex || pos + 1 != reals[w].len() {
                        return Err(bad("the chord slid over does not end last in its list"));
                    }
                    let next = d.next(w);
                    out.push(MoveSpec::SplitFold { vertex: p, left: chord(x), right: chord(y), slide: chord(x) });
                    out.push(MoveSpec::SplitFold { vertex: w as u32, left: chord(x), right: w as u32, slide: chord(x) });
                    reals[s.vertex].remove(s.index);
                    reals[next].insert(0, x);
                }
            }
        }
        Ok((reals, out))
    }

    pub fn to_script(&self, name: &str) -> Result<Script, CatalogError> {
        let track = self.diagram.to_track()?;
        let (_, moves) = self.simulate()?;
        Ok(Script {
            name: Some(name.to_string()),
            track: TrackSource::Inline(track.into_data()),
            moves,
            closure: ClosureSpec::Explicit {
                vertices: BTreeMap::from([(0, self.closure_vertex)]),
                edges: BTreeMap::new(),
            },
            base_dir: None,
        })
    }
}

/// First family on a `3k`-gon, `k ≥ 2`.
pub fn family_one(k: usize) -> ChordScript {
    assert!(k >= 2);
    let n = 3 * k;
    let mut chords = vec![(0, k + 1)];
    chords.extend((1..=k).map(|i| (i, i + 2 * k - 1)));
    chords.extend((k + 2..=2 * k).map(|j| (j, j + k - 1)));
    let mut at: Vec<Vec<(u8, ChordEnd)>> = vec![Vec::new(); n];
    for (c, &(a, b)) in chords.iter().enumerate() {
        let pri = u8::from(c > k);
        at[a].push((pri, (c, 0)));
        at[b].push((pri, (c, 1)));
    }
    let reals = at
        .into_iter()
        .map(|mut l| {
            l.sort();
            l.into_iter().map(|(_, h)| h).collect()
        })
        .collect();
    ChordScript {
        diagram: ChordDiagram { polygons: vec![n], reals },
        slides: vec![Slide::left(2 * k, 0), Slide::left(0, 0), Slide::right(k + 2, 0)],
        closure_vertex: (n - 1) as u32,
    }
}

fn diagram(polygons: Vec<usize>, reals: &[&[ChordEnd]]) -> ChordDiagram {
    ChordDiagram { polygons, reals: reals.iter().map(|l| l.to_vec()).collect() }
}

/// Second family for the values of `k` with a known chord script.
pub fn family_two(k: usize) -> Option<ChordScript> {
    Some(match k {
        2 => ChordScript {
            diagram: diagram(vec![1; 5], &[&[(0, 0)], &[(1, 0)], &[(2, 0)], &[(0, 1), (3, 0)], &[(1, 1), (2, 1), (3, 1)]]),
            slides: vec![Slide::left(4, 1), Slide::right(4, 0)],
            closure_vertex: 2,
        },
        3 => ChordScript {
            diagram: diagram(
                vec![7],
                &[
                    &[(0, 0)],
                    &[(1, 0)],
                    &[(2, 0)],
                    &[(3, 0), (4, 0)],
                    &[(0, 1), (5, 0)],
                    &[(2, 1), (1, 1), (4, 1)],
                    &[(3, 1), (5, 1)],
                ],
            ),
            slides: vec![Slide::right(6, 0), Slide::left(5, 1)],
            closure_vertex: 1,
        },
        4 => ChordScript {
            diagram: diagram(
                vec![9],
                &[
                    &[(2, 0), (0, 0), (1, 0)],
                    &[(4, 0), (3, 0)],
                    &[(0, 1)],
                    &[(5, 0), (1, 1)],
                    &[(6, 0), (3, 1)],
                    &[(5, 1), (7, 0)],
                    &[(6, 1)],
                    &[(2, 1)],
                    &[(4, 1), (7, 1)],
                ],
            ),
            slides: vec![Slide::right(1, 0), Slide::left(0, 1)],
            closure_vertex: 5,
        },
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_family_diagram_shape() {
        let s = family_one(3);
        assert_eq!(s.diagram.vertex_count(), 9);
        assert_eq!(s.diagram.chord_count(), 6);
        let t = s.diagram.to_track().unwrap();
        assert!(t.is_standardly_embedded());
        assert_eq!(t.euler_characteristic(), -6);
    }

    #[test]
    fn slides_expand_to_split_folds() {
        let s = family_one(2).to_script("f1-2").unwrap();
        assert_eq!(s.moves.len(), 6);
        assert!(s.moves.iter().all(|m| matches!(m, MoveSpec::SplitFold { .. })));
    }
}
