//! Weyl preseeds: cluster triples, right/left mutation, cluster sets,
//! exchange graphs and reduction of mutation sequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{AutKind, CoeffAut, Gens, PolyElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreseedError {
    #[error("cannot read cluster variable '{0}'")]
    Malformed(String),
    #[error("direction {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("exchange polynomial for direction {0} must have one or two terms, found {1}")]
    NotBinomial(usize, usize),
    #[error("triple ({a},{e},{b}) violates a + b = (1 - e)/2")]
    Unbalanced { a: i64, e: i8, b: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    R,
    L,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::R => Side::L,
            Side::L => Side::R,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::R => "R",
            Side::L => "L",
        })
    }
}

/// The word `ξ_k^a x_k^e ξ_k^b` in one direction `k` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClusterTriple {
    pub dir: usize,
    pub a: i64,
    pub e: i8,
    pub b: i64,
}

impl ClusterTriple {
    pub fn new(dir: usize, a: i64, e: i8, b: i64) -> Result<Self, PreseedError> {
        let t = ClusterTriple { dir, a, e, b };
        if (e != 1 && e != -1) || 2 * (a + b) != 1 - e as i64 {
            return Err(PreseedError::Unbalanced { a, e, b });
        }
        Ok(t)
    }

    pub fn initial(dir: usize) -> Self {
        ClusterTriple {
            dir,
            a: 0,
            e: 1,
            b: 0,
        }
    }

    pub fn is_balanced(&self) -> bool {
        (self.e == 1 || self.e == -1) && 2 * (self.a + self.b) == 1 - self.e as i64
    }

    /// `w ↦ ξ·w⁻¹`.
    pub fn mutate_right(&self) -> Self {
        ClusterTriple {
            dir: self.dir,
            a: 1 - self.b,
            e: -self.e,
            b: -self.a,
        }
    }

    /// `w ↦ w⁻¹·ξ`.
    pub fn mutate_left(&self) -> Self {
        ClusterTriple {
            dir: self.dir,
            a: -self.b,
            e: -self.e,
            b: 1 - self.a,
        }
    }

    pub fn mutate(&self, side: Side) -> Self {
        match side {
            Side::R => self.mutate_right(),
            Side::L => self.mutate_left(),
        }
    }

    /// Signed position along the direction's mutation line: `q > 0` means
    /// `q` right mutations of the initial variable, `q < 0` left ones.
    pub fn position(&self) -> i64 {
        // Right images: q = 2s → (s, +1, -s); q = 2s+1 → (s+1, -1, -s).
        // Left images:  q = -2s → (-s, +1, s); q = -(2s+1) → (-s, -1, s+1).
        if self.e == 1 {
            2 * self.a
        } else {
            2 * self.a - 1
        }
    }

    /// Triple at signed position `q` of direction `dir`.
    pub fn at_position(dir: usize, q: i64) -> Self {
        let mut t = ClusterTriple::initial(dir);
        let side = if q >= 0 { Side::R } else { Side::L };
        for _ in 0..q.unsigned_abs() {
            t = t.mutate(side);
        }
        t
    }

    /// Canonical text, e.g. `xi*x*xi^-1`. Direction indices are appended when
    /// `indexed` is set.
    pub fn render(&self, indexed: bool) -> String {
        let (xi, x) = if indexed {
            (format!("xi{}", self.dir), format!("x{}", self.dir))
        } else {
            ("xi".to_string(), "x".to_string())
        };
        let pw = |s: &str, e: i64| match e {
            0 => None,
            1 => Some(s.to_string()),
            _ => Some(format!("{s}^{e}")),
        };
        [pw(&xi, self.a), pw(&x, self.e as i64), pw(&xi, self.b)]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl std::str::FromStr for ClusterTriple {
    type Err = PreseedError;

    /// Reads the output of [`ClusterTriple::render`], indexed or not; an
    /// unindexed word is taken to be in direction 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PreseedError::Malformed(s.to_string());
        let (mut a, mut e, mut b) = (0i64, None::<i8>, 0i64);
        let mut dir = None;
        for tok in s.split('*').map(str::trim) {
            let (name, p) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let (letter, idx) = if let Some(r) = name.strip_prefix("xi") {
                ("xi", r)
            } else if let Some(r) = name.strip_prefix('x') {
                ("x", r)
            } else {
                return Err(bad());
            };
            let k: usize = if idx.is_empty() { 1 } else { idx.parse().map_err(|_| bad())? };
            if *dir.get_or_insert(k) != k {
                return Err(bad());
            }
            match (letter, e) {
                ("xi", None) => a += p,
                ("xi", Some(_)) => b += p,
                ("x", None) if p == 1 || p == -1 => e = Some(p as i8),
                _ => return Err(bad()),
            }
        }
        ClusterTriple::new(dir.ok_or_else(bad)?, a, e.ok_or_else(bad)?, b)
    }
}

/// Rank-n Weyl preseed: generators, exchange binomials ξ_i, automorphisms θ_i
/// with orientation flags, and the current cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preseed {
    gens: Gens,
    binomials: Vec<PolyElem>,
    auts: Vec<CoeffAut>,
    cluster: Vec<ClusterTriple>,
}

impl Preseed {
    pub fn new(
        gens: Gens,
        binomials: Vec<PolyElem>,
        auts: Vec<AutKind>,
    ) -> Result<Self, PreseedError> {
        assert_eq!(binomials.len(), auts.len(), "one automorphism per direction");
        for (i, b) in binomials.iter().enumerate() {
            // A single monomial is accepted as a degenerate binomial (the
            // Weyl algebra preseed has ξ = ε).
            if b.num_terms() == 0 || b.num_terms() > 2 {
                return Err(PreseedError::NotBinomial(i + 1, b.num_terms()));
            }
        }
        let n = binomials.len();
        Ok(Preseed {
            gens,
            binomials,
            auts: auts.into_iter().map(CoeffAut::new).collect(),
            cluster: (1..=n).map(ClusterTriple::initial).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn binomial(&self, k: usize) -> &PolyElem {
        &self.binomials[k - 1]
    }

    pub fn binomials(&self) -> &[PolyElem] {
        &self.binomials
    }

    pub fn aut(&self, k: usize) -> &CoeffAut {
        &self.auts[k - 1]
    }

    pub fn auts(&self) -> &[CoeffAut] {
        &self.auts
    }

    pub fn cluster(&self) -> &[ClusterTriple] {
        &self.cluster
    }

    pub fn orientations(&self) -> Vec<i8> {
        self.auts.iter().map(|a| a.orientation).collect()
    }

    fn check_dir(&self, k: usize) -> Result<(), PreseedError> {
        if k == 0 || k > self.rank() {
            Err(PreseedError::IndexOutOfRange(k, self.rank()))
        } else {
            Ok(())
        }
    }

    pub fn mutate(&self, k: usize, side: Side) -> Result<Preseed, PreseedError> {
        self.check_dir(k)?;
        let mut p = self.clone();
        p.cluster[k - 1] = p.cluster[k - 1].mutate(side);
        p.auts[k - 1] = p.auts[k - 1].flipped();
        Ok(p)
    }

    pub fn mutate_right(&self, k: usize) -> Result<Preseed, PreseedError> {
        self.mutate(k, Side::R)
    }

    pub fn mutate_left(&self, k: usize) -> Result<Preseed, PreseedError> {
        self.mutate(k, Side::L)
    }

    pub fn apply_seq(&self, seq: &MutationSeq) -> Result<Preseed, PreseedError> {
        let mut p = self.clone();
        for &(k, s) in &seq.steps {
            p = p.mutate(k, s)?;
        }
        Ok(p)
    }

    /// Canonical key: cluster triples plus orientation flags.
    pub fn key(&self) -> PreseedKey {
        PreseedKey {
            cluster: self.cluster.clone(),
            flags: self.orientations(),
        }
    }

    pub fn render_cluster(&self) -> String {
        let idx = self.rank() > 1;
        self.cluster
            .iter()
            .map(|t| t.render(idx))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PreseedKey {
    pub cluster: Vec<ClusterTriple>,
    pub flags: Vec<i8>,
}

/// Sequence of mutations, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MutationSeq {
    pub steps: Vec<(usize, Side)>,
}

impl MutationSeq {
    pub fn new(steps: Vec<(usize, Side)>) -> Self {
        MutationSeq { steps }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Net signed count per direction (`#R − #L`).
    pub fn net_counts(&self) -> BTreeMap<usize, i64> {
        let mut m = BTreeMap::new();
        for &(k, s) in &self.steps {
            *m.entry(k).or_insert(0) += if s == Side::R { 1 } else { -1 };
        }
        m
    }

    /// The same-direction run form with `n` steps in direction `k` for each
    /// `(k, n)` of `counts` (sign selects the side).
    pub fn from_counts(counts: &BTreeMap<usize, i64>) -> Self {
        let mut steps = Vec::new();
        for (&k, &n) in counts {
            let side = if n > 0 { Side::R } else { Side::L };
            for _ in 0..n.unsigned_abs() {
                steps.push((k, side));
            }
        }
        MutationSeq { steps }
    }

    /// Text form such as `1R 2L`.
    pub fn render(&self) -> String {
        if self.steps.is_empty() {
            return "[]".to_string();
        }
        self.steps
            .iter()
            .map(|(k, s)| format!("{k}{s}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Cancels opposite-side steps in the same direction and sorts the remaining
/// runs by direction.
pub fn reduce_sequence(s: &MutationSeq) -> MutationSeq {
    MutationSeq::from_counts(&s.net_counts())
}

/// Every triple reachable from the cluster of `p` by at most `depth`
/// mutations.
pub fn cluster_set(p: &Preseed, depth: usize) -> BTreeSet<ClusterTriple> {
    let g = exchange_graph(p, depth);
    g.nodes
        .iter()
        .flat_map(|n| n.cluster().iter().copied())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    /// `to = μ^R_dir(from)`; equivalently `from = μ^L_dir(to)`.
    pub from: usize,
    pub to: usize,
    pub dir: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<Preseed>,
    pub index: BTreeMap<PreseedKey, usize>,
    pub edges: Vec<GraphEdge>,
    pub node_depth: Vec<usize>,
    pub depth: usize,
}

impl ExchangeGraph {
    pub fn is_frontier(&self, id: usize) -> bool {
        self.node_depth[id] == self.depth
    }

    pub fn degree(&self, id: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == id || e.to == id)
            .count()
    }

    /// Deterministic DOT text with direction-labelled edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "  n{} [label=\"{}\"{}];\n",
                i,
                n.render_cluster(),
                if self.is_frontier(i) { ", style=dashed" } else { "" }
            ));
        }
        for e in &self.edges {
            s.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.from, e.to, e.dir));
        }
        s.push_str("}\n");
        s
    }

    /// One JSON object per node and per edge.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let v = serde_json::json!({
                "node": i,
                "cluster": n.render_cluster(),
                "flags": n.orientations(),
                "depth": self.node_depth[i],
                "frontier": self.is_frontier(i),
            });
            s.push_str(&v.to_string());
            s.push('\n');
        }
        for e in &self.edges {
            let v = serde_json::json!({"edge": [e.from, e.to], "dir": e.dir});
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }
}

/// Breadth-first exploration to `depth`. A right edge `p → μ^R_k(p)` and the
/// left edge back are stored once.
pub fn exchange_graph(p: &Preseed, depth: usize) -> ExchangeGraph {
    let mut g = ExchangeGraph {
        nodes: vec![p.clone()],
        index: BTreeMap::from([(p.key(), 0)]),
        edges: Vec::new(),
        node_depth: vec![0],
        depth,
    };
    let mut seen_edges = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let d = g.node_depth[id];
        if d == depth {
            continue;
        }
        for k in 1..=p.rank() {
            for side in [Side::R, Side::L] {
                let q = g.nodes[id].mutate(k, side).expect("direction in range");
                let key = q.key();
                let qid = match g.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = g.nodes.len();
                        g.nodes.push(q);
                        g.index.insert(key, j);
                        g.node_depth.push(d + 1);
                        queue.push_back(j);
                        j
                    }
                };
                let (from, to) = match side {
                    Side::R => (id, qid),
                    Side::L => (qid, id),
                };
                if seen_edges.insert((from, to, k)) {
                    g.edges.push(GraphEdge { from, to, dir: k });
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::parse_coeff;

    pub(crate) fn weyl1() -> Preseed {
        let gens = Gens::from_names(["e"]);
        let xi = parse_coeff("e", &gens).unwrap().num().clone();
        Preseed::new(gens, vec![xi], vec![AutKind::shift(0, 1)]).unwrap()
    }

    fn weyl2() -> Preseed {
        let gens = Gens::from_names(["e1", "e2"]);
        let x1 = parse_coeff("e1", &gens).unwrap().num().clone();
        let x2 = parse_coeff("e2", &gens).unwrap().num().clone();
        Preseed::new(gens, vec![x1, x2], vec![AutKind::shift(0, 1), AutKind::shift(1, 1)])
            .unwrap()
    }

    fn t(a: i64, e: i8, b: i64) -> ClusterTriple {
        ClusterTriple::new(1, a, e, b).unwrap()
    }

    #[test]
    fn right_mutation_examples() {
        assert_eq!(t(0, 1, 0).mutate_right(), t(1, -1, 0));
        assert_eq!(t(1, -1, 0).mutate_right(), t(1, 1, -1));
        for k in 0..6 {
            assert_eq!(t(k + 1, -1, -k).mutate_right(), t(k + 1, 1, -(k + 1)));
        }
    }

    #[test]
    fn left_mutation_examples() {
        assert_eq!(t(0, 1, 0).mutate_left(), t(0, -1, 1));
        let p = weyl1();
        assert_eq!(p.mutate_right(1).unwrap().mutate_left(1).unwrap(), p);
        for k in 0..6 {
            assert_eq!(t(-k, -1, k + 1).mutate_left(), t(-(k + 1), 1, k + 1));
        }
    }

    #[test]
    fn mutate_rejects_bad_direction() {
        assert_eq!(
            weyl1().mutate_right(2),
            Err(PreseedError::IndexOutOfRange(2, 1))
        );
        assert!(weyl1().mutate_left(0).is_err());
    }

    #[test]
    fn cluster_set_depth_two() {
        let s = cluster_set(&weyl1(), 2);
        let want: BTreeSet<_> = [t(0, 1, 0), t(1, -1, 0), t(0, -1, 1), t(1, 1, -1), t(-1, 1, 1)]
            .into_iter()
            .collect();
        assert_eq!(s, want);
        assert_eq!(cluster_set(&weyl1(), 0), [t(0, 1, 0)].into_iter().collect());
    }

    #[test]
    fn positions_round_trip() {
        for q in -9..=9 {
            let tr = ClusterTriple::at_position(1, q);
            assert!(tr.is_balanced());
            assert_eq!(tr.position(), q, "{tr:?}");
        }
    }

    #[test]
    fn exchange_graph_shapes() {
        let g = exchange_graph(&weyl1(), 3);
        assert_eq!(g.nodes.len(), 7);
        assert_eq!(g.edges.len(), 6);
        let g0 = exchange_graph(&weyl1(), 0);
        assert_eq!((g0.nodes.len(), g0.edges.len()), (1, 0));
        let g2 = exchange_graph(&weyl2(), 2);
        assert_eq!(g2.nodes.len(), 13);
        // interior nodes carry one edge per (direction, side)
        for id in 0..g2.nodes.len() {
            if !g2.is_frontier(id) {
                assert_eq!(g2.degree(id), 4);
            }
        }
    }

    #[test]
    fn reduce_examples() {
        use Side::*;
        let r = |v: Vec<(usize, Side)>| reduce_sequence(&MutationSeq::new(v)).steps;
        assert_eq!(r(vec![(1, R), (1, L)]), vec![]);
        assert_eq!(r(vec![(2, R), (1, R)]), vec![(1, R), (2, R)]);
        assert_eq!(r(vec![(1, R), (2, L), (1, R), (2, R)]), vec![(1, R), (1, R)]);
    }

    #[test]
    fn render_forms() {
        assert_eq!(t(1, 1, -1).render(false), "xi*x*xi^-1");
        assert_eq!(t(0, 1, 0).render(false), "x");
        assert_eq!(t(-2, -1, 3).render(true), "xi1^-2*x1^-1*xi1^3");
    }
}
