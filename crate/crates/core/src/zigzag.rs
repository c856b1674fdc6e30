//! Divisibility, initial words and zigzag presentations of one-direction
//! mutation orbits; cluster and hyperbolic classes.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::catword::{
    cat_mutate_seq, hyperbolic_lift, invert_word, mutate_word, Alternation, HyperbolicObject,
    MorphWord, SkewLaurentObject,
};
use crate::preseed::{MutationSeq, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("words live in different directions ({0} and {1})")]
    DirectionMismatch(usize, usize),
}

fn contained(h: &MorphWord, g: &MorphWord) -> bool {
    h.e == g.e
        && h.slots()
            .iter()
            .zip(g.slots())
            .all(|(&a, b)| a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs()))
}

/// `h` or `h^{-1}` is contained in `g` without cancellation: same `η`
/// orientation and every exponent slot sign-compatible and no larger.
pub fn divides(h: &MorphWord, g: &MorphWord) -> Result<bool, ZigzagError> {
    if h.dir != g.dir {
        return Err(ZigzagError::DirectionMismatch(h.dir, g.dir));
    }
    Ok(contained(h, g) || contained(&invert_word(h), g))
}

pub fn is_naked(w: &MorphWord) -> bool {
    w.is_naked()
}

/// `w` divides both its one-step right and left images.
pub fn is_initial(w: &MorphWord, parity: i64, alt: Alternation) -> bool {
    let (r, _) = mutate_word(w, parity, Side::R, alt);
    let (l, _) = mutate_word(w, parity, Side::L, alt);
    contained_either(w, &r) && contained_either(w, &l)
}

fn contained_either(h: &MorphWord, g: &MorphWord) -> bool {
    contained(h, g) || contained(&invert_word(h), g)
}

/// The word `j` steps from `w` (right for `j > 0`).
pub fn orbit_word(w: &MorphWord, parity: i64, j: i64, alt: Alternation) -> (MorphWord, i64) {
    let side = if j >= 0 { Side::R } else { Side::L };
    (0..j.abs()).fold((w.clone(), parity), |(cur, t), _| mutate_word(&cur, t, side, alt))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagNode {
    pub position: i64,
    pub parity: i64,
    pub word: MorphWord,
    pub initial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagPresentation {
    pub dir: usize,
    pub nodes: Vec<ZigzagNode>,
    pub length: usize,
    pub height: usize,
}

impl ZigzagPresentation {
    pub fn initials(&self) -> impl DoubleEndedIterator<Item = &ZigzagNode> {
        self.nodes.iter().filter(|n| n.initial)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph zigzag {\n  rankdir=LR;\n");
        for n in &self.nodes {
            let shape = if n.initial { "box" } else { "ellipse" };
            s.push_str(&format!(
                "  n{} [label=\"{}\\n@{}\", shape={}];\n",
                n.position + self.nodes[0].position.abs(),
                n.word,
                n.parity,
                shape
            ));
        }
        let off = self.nodes[0].position.abs();
        for pair in self.nodes.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            // arrows point from the divisor to the multiple
            let (from, to) = if contained_either(&a.word, &b.word) {
                (a, b)
            } else {
                (b, a)
            };
            s.push_str(&format!(
                "  n{} -> n{};\n",
                from.position + off,
                to.position + off
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Marks the orbit of `seed` at positions `-window..=window`.
pub fn zigzag(seed: &MorphWord, parity: i64, window: i64, alt: Alternation) -> ZigzagPresentation {
    let nodes: Vec<ZigzagNode> = (-window..=window)
        .map(|j| {
            let (word, t) = orbit_word(seed, parity, j, alt);
            ZigzagNode {
                position: j,
                parity: t,
                initial: is_initial(&word, t, alt),
                word,
            }
        })
        .collect();
    let idx: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].initial).collect();
    let height = idx.windows(2).map(|p| p[1] - p[0] - 1).max().unwrap_or(0);
    ZigzagPresentation {
        dir: seed.dir,
        length: idx.len(),
        height,
        nodes,
    }
}

/// Steps to search on each side of a word for initial words: past that
/// distance the orbit only grows.
pub fn search_radius(w: &MorphWord) -> i64 {
    2 * w.slots().iter().map(|s| s.abs()).sum::<i64>() + 8
}

/// The right-end (`R`) or left-end (`L`) initial word of the orbit of `w`,
/// with its parity. `None` if no initial word lies within
/// [`search_radius`].
pub fn end_initial(w: &MorphWord, parity: i64, side: Side, alt: Alternation) -> Option<(MorphWord, i64)> {
    let r = search_radius(w);
    let z = zigzag(w, parity, r, alt);
    let mut it = z.initials();
    let node = match side {
        Side::R => it.next_back(),
        Side::L => it.next(),
    }?;
    Some((node.word.clone(), node.parity))
}

/// Whenever `w_i` divides `w_j` (`j > i + 1`, either direction along the
/// window), no word strictly between is initial. Returns the offending
/// `(i, j, d)` positions.
pub fn divisibility_violations(z: &ZigzagPresentation) -> Vec<(i64, i64, i64)> {
    let mut bad = Vec::new();
    let n = &z.nodes;
    for i in 0..n.len() {
        for j in i + 2..n.len() {
            if !contained_either(&n[i].word, &n[j].word) && !contained_either(&n[j].word, &n[i].word) {
                continue;
            }
            for d in n.iter().take(j).skip(i + 1) {
                if d.initial {
                    bad.push((n[i].position, n[j].position, d.position));
                }
            }
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassMember {
    pub lift: HyperbolicObject,
    pub seq: MutationSeq,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterClass {
    pub seed: SkewLaurentObject,
    pub variant: u8,
    pub members: BTreeSet<ClassMember>,
}

/// Net-count vectors with `Σ|c_k| ≤ depth`.
fn count_vectors(rank: usize, depth: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().map(|x: &i64| x.abs()).sum();
            let rest = depth as i64 - used;
            for c in -rest..=rest {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Objects reachable from `seed` in at most `depth` mutations, both lifts
/// each. Variant 1 starts the right side with the other letter.
pub fn cluster_class(seed: &SkewLaurentObject, variant: u8, depth: usize) -> ClusterClass {
    let start = if variant == 1 {
        seed.with_alternation(seed.alternation.variant())
    } else {
        seed.clone()
    };
    let mut members = BTreeSet::new();
    for counts in count_vectors(seed.rank(), depth) {
        let seq = MutationSeq::from_counts(&counts.iter().enumerate().map(|(i, &c)| (i + 1, c)).collect());
        let obj = cat_mutate_seq(&start, &seq).expect("directions in range");
        for side in [Side::R, Side::L] {
            members.insert(ClassMember {
                lift: hyperbolic_lift(&obj, side),
                seq: seq.clone(),
            });
        }
    }
    ClusterClass {
        seed: seed.clone(),
        variant,
        members,
    }
}

/// Objects in either cluster class of `seed` with the same words and
/// parities as `target`, lifted on both sides under `target`'s alternation.
pub fn hyperbolic_class(
    seed: &SkewLaurentObject,
    target: &SkewLaurentObject,
    depth: usize,
) -> BTreeSet<HyperbolicObject> {
    let same = |o: &SkewLaurentObject| {
        o.parity == target.parity
            && o.words.iter().zip(&target.words).all(|(a, b)| a.same_letters(b))
    };
    [0, 1]
        .into_iter()
        .flat_map(|v| cluster_class(seed, v, depth).members)
        .filter(|m| same(&m.lift.obj))
        .map(|m| hyperbolic_lift(&m.lift.obj.with_alternation(target.alternation), m.lift.side))
        .collect()
}

/// Lifts of the objects within `depth` of `seed` whose every component is the
/// right-end initial word of its orbit.
pub fn extract_clustered(seed: &SkewLaurentObject, depth: usize) -> BTreeSet<HyperbolicObject> {
    let alt = seed.alternation;
    let ends: Vec<Option<(MorphWord, i64)>> = seed
        .words
        .iter()
        .zip(&seed.parity)
        .map(|(w, &t)| end_initial(w, t, Side::R, alt))
        .collect();
    cluster_class(seed, 0, depth)
        .members
        .into_iter()
        .map(|m| m.lift)
        .filter(|h| {
            h.obj.words.iter().zip(&h.obj.parity).zip(&ends).all(|((w, t), end)| {
                matches!(end, Some((ew, et)) if ew.same_letters(w) && et == t)
            })
        })
        .collect()
}
