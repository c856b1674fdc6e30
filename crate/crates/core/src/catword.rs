//! Formal words `ξ^a ε^b η^{±1} ξ^c ε^d` for the structure morphisms of skew
//! Laurent objects, and their categorical mutations.
//!
//! Letters on one side of `η` commute, so each side is an exponent pair.
//! Words are never rewritten across `η`; [`compose_normalized`] does that
//! explicitly when a composite is expected to be a pure `ξ`/`ε` word.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ground::CoeffFraction;
use crate::oracle::{SkewLaurent, SkewRing};
use crate::preseed::{ClusterTriple, MutationSeq, Preseed, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("direction {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `Θ^shift(M)` for the single abstract base object `M`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjectExpr {
    pub shift: Vec<i64>,
}

impl ObjectExpr {
    pub fn base(rank: usize) -> Self {
        ObjectExpr {
            shift: vec![0; rank],
        }
    }

    fn shifted(&self, dir: usize, by: i64) -> Self {
        let mut s = self.clone();
        s.shift[dir - 1] += by;
        s
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .shift
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| {
                if s == 1 {
                    format!("Th{}", i + 1)
                } else {
                    format!("Th{}^{}", i + 1, s)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "M")
        } else {
            write!(f, "{}(M)", parts.join(" "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    Xi,
    Eps,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::Xi => Letter::Eps,
            Letter::Eps => Letter::Xi,
        }
    }
}

/// Which letter each mutation edge inserts.
///
/// The edge between parities `t` and `t + 1` carries `start` when
/// `min(|t|, |t + 1|)` is even and the other letter otherwise, where `start`
/// is `right_start` for `t ≥ 0` and `left_start` for `t < 0`. Both sides of an
/// edge insert the same letter, so right and left mutation are inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Alternation {
    pub right_start: Letter,
    pub left_start: Letter,
}

impl Alternation {
    /// `ε` first on both sides.
    pub const UNIFORM: Alternation = Alternation {
        right_start: Letter::Eps,
        left_start: Letter::Eps,
    };
    /// `ε` first on the right, `ξ` first on the left.
    pub const SPLIT: Alternation = Alternation {
        right_start: Letter::Eps,
        left_start: Letter::Xi,
    };

    /// The variant-1 orbit: the right side starts with the other letter.
    pub fn variant(self) -> Alternation {
        Alternation {
            right_start: self.right_start.other(),
            left_start: self.left_start,
        }
    }

    /// Letter on the edge between parities `t` and `t + 1`.
    pub fn edge_letter(self, t: i64) -> Letter {
        let start = if t >= 0 {
            self.right_start
        } else {
            self.left_start
        };
        if t.abs().min((t + 1).abs()) % 2 == 0 {
            start
        } else {
            start.other()
        }
    }
}

/// `ξ^lxi ε^leps η^e ξ^rxi ε^reps` in direction `dir` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MorphWord {
    pub dir: usize,
    pub lxi: i64,
    pub leps: i64,
    pub e: i8,
    pub rxi: i64,
    pub reps: i64,
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
}

impl MorphWord {
    /// Word with the given exponents over `base`, with `dom`/`cod` set from `e`.
    pub fn new(dir: usize, slots: [i64; 4], e: i8, base: &ObjectExpr) -> Self {
        let up = base.shifted(dir, 1);
        let (dom, cod) = if e > 0 {
            (up, base.clone())
        } else {
            (base.clone(), up)
        };
        MorphWord {
            dir,
            lxi: slots[0],
            leps: slots[1],
            e,
            rxi: slots[2],
            reps: slots[3],
            dom,
            cod,
        }
    }

    /// Bare `η_dir` on `M` in a rank-`rank` configuration.
    pub fn eta(dir: usize, rank: usize) -> Self {
        Self::new(dir, [0; 4], 1, &ObjectExpr::base(rank))
    }

    /// `[lxi, leps, rxi, reps]`.
    pub fn slots(&self) -> [i64; 4] {
        [self.lxi, self.leps, self.rxi, self.reps]
    }

    /// The object the word's `Θ_dir`-pair is built on.
    pub fn base(&self) -> &ObjectExpr {
        if self.e > 0 {
            &self.cod
        } else {
            &self.dom
        }
    }

    /// Same letters, ignoring `dom`/`cod`.
    pub fn same_letters(&self, o: &MorphWord) -> bool {
        self.dir == o.dir && self.e == o.e && self.slots() == o.slots()
    }

    pub fn is_naked(&self) -> bool {
        self.slots() == [0; 4]
    }

    pub fn render(&self) -> String {
        fn letter(parts: &mut Vec<String>, name: &str, p: i64) {
            match p {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{p}")),
            }
        }
        let mut parts = Vec::new();
        letter(&mut parts, "eps", self.leps);
        letter(&mut parts, "xi", self.lxi);
        letter(&mut parts, "eta", self.e as i64);
        letter(&mut parts, "xi", self.rxi);
        letter(&mut parts, "eps", self.reps);
        parts.join("*")
    }
}

impl fmt::Display for MorphWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Formal inverse: `(lxi, leps, e, rxi, reps) ↦ (−rxi, −reps, −e, −lxi, −leps)`.
pub fn invert_word(w: &MorphWord) -> MorphWord {
    MorphWord {
        dir: w.dir,
        lxi: -w.rxi,
        leps: -w.reps,
        e: -w.e,
        rxi: -w.lxi,
        reps: -w.leps,
        dom: w.cod.clone(),
        cod: w.dom.clone(),
    }
}

/// One mutation of a single word sitting at `parity`; returns the new word
/// and parity.
pub fn mutate_word(w: &MorphWord, parity: i64, side: Side, alt: Alternation) -> (MorphWord, i64) {
    let inv = invert_word(w);
    let (edge, new_parity) = match side {
        Side::R => (parity, parity + 1),
        Side::L => (parity - 1, parity - 1),
    };
    // the base moves up when leaving an even parity to the right
    let step = if edge.rem_euclid(2) == 0 { 1 } else { -1 };
    let base = match side {
        Side::R => inv.base().shifted(w.dir, step),
        Side::L => inv.base().shifted(w.dir, -step),
    };
    let mut s = inv.slots();
    let slot = match (side, alt.edge_letter(edge)) {
        (Side::R, Letter::Xi) => 0,
        (Side::R, Letter::Eps) => 1,
        (Side::L, Letter::Xi) => 2,
        (Side::L, Letter::Eps) => 3,
    };
    s[slot] += 1;
    (MorphWord::new(w.dir, s, inv.e, &base), new_parity)
}

/// Composite `a ∘ b` rewritten by naturality (`η ε = ξ η`, `η^{-1} ξ = ε η^{-1}`)
/// into a pure word `ξ^x ε^y`, if possible.
pub fn compose_normalized(a: &MorphWord, b: &MorphWord) -> Option<(i64, i64)> {
    if a.dir != b.dir || a.e != -b.e {
        return None;
    }
    let (mx, me) = (a.rxi + b.lxi, a.reps + b.leps);
    let (tx, te) = if a.e > 0 {
        if mx != 0 {
            return None;
        }
        (me, 0)
    } else {
        if me != 0 {
            return None;
        }
        (0, mx)
    };
    Some((a.lxi + tx + b.rxi, a.leps + te + b.reps))
}

/// Parses `xi^-1 * eta * eps` style words over a single `eta` or `eta^-1`.
pub fn parse_word(s: &str, dir: usize, rank: usize) -> Result<MorphWord, CatError> {
    let err = |pos: usize, msg: &str| CatError::Parse {
        pos,
        msg: msg.to_string(),
    };
    if dir == 0 || dir > rank {
        return Err(CatError::IndexOutOfRange(dir, rank));
    }
    let b = s.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let mut slots = [0i64; 4];
    let mut e: Option<i8> = None;
    loop {
        skip_ws(&mut i);
        let start = i;
        while i < b.len() && b[i].is_ascii_alphabetic() {
            i += 1;
        }
        let name = &s[start..i];
        if name.is_empty() {
            return Err(err(start, "expected xi, eps or eta"));
        }
        let mut p: i64 = 1;
        skip_ws(&mut i);
        if i < b.len() && b[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            let ns = i;
            if i < b.len() && b[i] == b'-' {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            p = s[ns..i]
                .parse()
                .map_err(|_| err(ns, "expected integer exponent"))?;
        }
        let side = if e.is_none() { 0 } else { 2 };
        match name {
            "xi" => slots[side] += p,
            "eps" => slots[side + 1] += p,
            "eta" => {
                if e.is_some() {
                    return Err(err(start, "second eta"));
                }
                if p != 1 && p != -1 {
                    return Err(err(start, "eta exponent must be 1 or -1"));
                }
                e = Some(p as i8);
            }
            _ => return Err(err(start, "unknown letter")),
        }
        skip_ws(&mut i);
        if i == b.len() {
            break;
        }
        if b[i] != b'*' {
            return Err(err(i, "expected '*'"));
        }
        i += 1;
    }
    let e = e.ok_or_else(|| err(s.len(), "missing eta"))?;
    Ok(MorphWord::new(dir, slots, e, &ObjectExpr::base(rank)))
}

/// An object `(M, η)` of the category reached after `parity` net mutations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewLaurentObject {
    pub base: ObjectExpr,
    pub words: Vec<MorphWord>,
    pub parity: Vec<i64>,
    pub alternation: Alternation,
}

impl SkewLaurentObject {
    /// `(M, (η_1, …, η_n))` at parity zero.
    pub fn initial(rank: usize, alternation: Alternation) -> Self {
        SkewLaurentObject {
            base: ObjectExpr::base(rank),
            words: (1..=rank).map(|k| MorphWord::eta(k, rank)).collect(),
            parity: vec![0; rank],
            alternation,
        }
    }

    /// Object built from arbitrary component words at the given parities.
    pub fn from_words(words: Vec<MorphWord>, parity: Vec<i64>, alternation: Alternation) -> Self {
        let rank = words.len();
        let shift = parity.iter().map(|t| t.rem_euclid(2)).collect();
        let base = ObjectExpr { shift };
        let words = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| MorphWord::new(i + 1, w.slots(), w.e, &base))
            .collect();
        debug_assert_eq!(rank, base.shift.len());
        SkewLaurentObject {
            base,
            words,
            parity,
            alternation,
        }
    }

    pub fn rank(&self) -> usize {
        self.words.len()
    }

    pub fn with_alternation(&self, alternation: Alternation) -> Self {
        SkewLaurentObject {
            alternation,
            ..self.clone()
        }
    }

    pub fn render(&self) -> String {
        let ws: Vec<String> = self
            .words
            .iter()
            .zip(&self.parity)
            .map(|(w, t)| format!("{w}@{t}"))
            .collect();
        format!("({}; {})", self.base, ws.join(", "))
    }
}

pub fn cat_mutate(s: &SkewLaurentObject, k: usize, side: Side) -> Result<SkewLaurentObject, CatError> {
    let n = s.rank();
    if k == 0 || k > n {
        return Err(CatError::IndexOutOfRange(k, n));
    }
    let (w, t) = mutate_word(&s.words[k - 1], s.parity[k - 1], side, s.alternation);
    let mut out = s.clone();
    out.base.shift[k - 1] = w.base().shift[k - 1];
    for (i, word) in out.words.iter_mut().enumerate() {
        if i + 1 == k {
            *word = w.clone();
        } else {
            // rebuild over the new base so dom/cod stay consistent
            *word = MorphWord::new(word.dir, word.slots(), word.e, &out.base);
        }
    }
    out.parity[k - 1] = t;
    Ok(out)
}

pub fn cat_mutate_seq(s: &SkewLaurentObject, seq: &MutationSeq) -> Result<SkewLaurentObject, CatError> {
    seq.steps
        .iter()
        .try_fold(s.clone(), |acc, &(k, side)| cat_mutate(&acc, k, side))
}

/// Mutates direction `k` exactly `m` times (right for `m > 0`, left for `m < 0`).
pub fn cat_mutate_times(s: &SkewLaurentObject, k: usize, m: i64) -> Result<SkewLaurentObject, CatError> {
    let side = if m >= 0 { Side::R } else { Side::L };
    (0..m.abs()).try_fold(s.clone(), |acc, _| cat_mutate(&acc, k, side))
}

/// `(γ, M, η)` with `γ_k` the one-step `side` mutation of `η_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HyperbolicObject {
    pub gamma: Vec<MorphWord>,
    pub obj: SkewLaurentObject,
    pub side: Side,
}

/// `(ξ, ε)` exponents of a pure composite, `None` if letters remain around `η`.
pub type PureExponents = Option<(i64, i64)>;

impl HyperbolicObject {
    /// `(γ_k ∘ η_k, η_k ∘ γ_k)` for each direction, normalized.
    pub fn composites(&self) -> Vec<(PureExponents, PureExponents)> {
        self.gamma
            .iter()
            .zip(&self.obj.words)
            .map(|(g, w)| (compose_normalized(g, w), compose_normalized(w, g)))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.composites().iter().all(|(a, b)| a.is_some() && b.is_some())
    }
}

pub fn hyperbolic_lift(s: &SkewLaurentObject, side: Side) -> HyperbolicObject {
    let gamma = s
        .words
        .iter()
        .zip(&s.parity)
        .map(|(w, &t)| mutate_word(w, t, side, s.alternation).0)
        .collect();
    HyperbolicObject {
        gamma,
        obj: s.clone(),
        side,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Compare formal words letter by letter.
    Literal,
    /// Compare images in the skew ring (`η ↦ t`, `ξ ↦ ξ`, `ε ↦ θ^{-1}(ξ)`).
    WeylEval,
}

/// Image of a word in the skew ring of `p`.
pub fn eval_word(w: &MorphWord, p: &Preseed) -> SkewLaurent {
    let ring = SkewRing::of(p);
    let n = p.rank();
    let k = w.dir;
    let xi: CoeffFraction = p.binomial(k).clone().into();
    let eps = crate::ground::apply_aut(&crate::ground::CoeffAut::new(p.aut(k).kind.clone()), -1, &xi);
    let c = |x: i64, y: i64| {
        SkewLaurent::coeff(
            xi.pow(x).expect("binomial is nonzero").mul(&eps.pow(y).expect("binomial is nonzero")),
            n,
        )
    };
    ring.mul_all([
        &c(w.lxi, w.leps),
        &SkewLaurent::gen_power(n, k, w.e as i64),
        &c(w.rxi, w.reps),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormRow {
    pub parity: i64,
    pub word: String,
    pub closed_form: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub convention: Convention,
    pub rows: Vec<ClosedFormRow>,
}

impl ClosedFormReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.agree).count()
    }

    /// `"pass"` when every row agrees, `"discrepancy"` otherwise.
    pub fn status(&self) -> &'static str {
        if self.mismatches() == 0 {
            "pass"
        } else {
            "discrepancy"
        }
    }
}

/// Compares the rank-1 orbit of `η` (`ε`-first alternation) with the
/// `ξ`-only closed forms `ξ^{t/2} η ξ^{-t/2}` (even `t`) and
/// `ξ^{(t+1)/2} η^{-1} ξ^{-(t-1)/2}` (odd `t`), for `|t| ≤ depth`.
/// Under `WeylEval` the closed form is the evaluated preseed triple at the
/// same position.
pub fn verify_weyl_closed_form(p: &Preseed, depth: i64, convention: Convention) -> ClosedFormReport {
    let start = SkewLaurentObject::initial(1, Alternation::UNIFORM);
    let mut rows = Vec::new();
    for t in -depth..=depth {
        let obj = cat_mutate_times(&start, 1, t).expect("direction 1 exists");
        let w = &obj.words[0];
        let (a, e, b) = if t.rem_euclid(2) == 0 {
            (t / 2, 1, -t / 2)
        } else {
            ((t + 1) / 2, -1, -(t - 1) / 2)
        };
        let cf = MorphWord::new(1, [a, 0, b, 0], e, &ObjectExpr::base(1));
        let (agree, closed_form) = match convention {
            Convention::Literal => (w.same_letters(&cf), cf.render()),
            Convention::WeylEval => {
                let tr = ClusterTriple::new(1, a, e, b).expect("closed form is balanced");
                let v = crate::oracle::eval_triple(&tr, p).expect("binomial is nonzero");
                (eval_word(w, p) == v, v.render(p.gens()))
            }
        };
        rows.push(ClosedFormRow {
            parity: t,
            word: match convention {
                Convention::Literal => w.render(),
                Convention::WeylEval => format!("{} = {}", w.render(), eval_word(w, p).render(p.gens())),
            },
            closed_form,
            agree,
        });
    }
    ClosedFormReport { convention, rows }
}
