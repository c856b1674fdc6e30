//! From categorical words back to cluster variables: the step-back map, its
//! multiplicative extension to hyperbolic objects, preimages, and the
//! correspondence between mutated initial objects and cluster variables.

use serde::Serialize;
use thiserror::Error;

use crate::catword::{cat_mutate_times, hyperbolic_lift, Alternation, HyperbolicObject, SkewLaurentObject};
use crate::oracle::{eval_triple, OracleError, SkewLaurent, SkewRing};
use crate::preseed::{cluster_set, ClusterTriple, Preseed, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("no preimage of {0} within depth {1}")]
    NotFoundWithinDepth(String, usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StepBackResult {
    One,
    Triple(ClusterTriple),
}

impl StepBackResult {
    pub fn eval(&self, p: &Preseed) -> Result<SkewLaurent, OracleError> {
        match self {
            StepBackResult::One => Ok(SkewLaurent::one(p.rank())),
            StepBackResult::Triple(t) => eval_triple(t, p),
        }
    }

    pub fn render(&self) -> String {
        match self {
            StepBackResult::One => "1".into(),
            StepBackResult::Triple(t) => t.render(true),
        }
    }
}

/// The variable one mutation behind the `m`-fold image in direction `dir`:
/// `1` at `m = 0`, otherwise the triple at position `m − 1` (`m > 0`) or
/// `m + 1` (`m < 0`).
pub fn step_back(dir: usize, m: i64) -> StepBackResult {
    match m {
        0 => StepBackResult::One,
        m if m > 0 => StepBackResult::Triple(ClusterTriple::at_position(dir, m - 1)),
        m => StepBackResult::Triple(ClusterTriple::at_position(dir, m + 1)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FpImage {
    pub factors: Vec<StepBackResult>,
    #[serde(skip)]
    pub evaluated: SkewLaurent,
}

/// Componentwise step-back, multiplied in ascending direction order.
pub fn big_f(h: &HyperbolicObject, p: &Preseed) -> Result<FpImage, OracleError> {
    let factors: Vec<StepBackResult> = h
        .obj
        .words
        .iter()
        .zip(&h.obj.parity)
        .map(|(w, &m)| step_back(w.dir, m))
        .collect();
    let ring = SkewRing::of(p);
    let vals = factors.iter().map(|f| f.eval(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(FpImage {
        evaluated: ring.mul_all(&vals),
        factors,
    })
}

/// Net count whose step-back is the variable at position `q`.
pub fn count_for_position(q: i64) -> i64 {
    if q >= 0 {
        q + 1
    } else {
        q - 1
    }
}

/// The initial object mutated `m` times in direction `k`, lifted on the right.
pub fn mutated_initial(rank: usize, k: usize, m: i64) -> HyperbolicObject {
    let s = SkewLaurentObject::initial(rank, Alternation::UNIFORM);
    hyperbolic_lift(&cat_mutate_times(&s, k, m).expect("direction in range"), Side::R)
}

/// A hyperbolic object whose image under [`big_f`] equals `z`.
pub fn preimage_search(
    z: &ClusterTriple,
    p: &Preseed,
    depth: usize,
) -> Result<HyperbolicObject, BridgeError> {
    let m = count_for_position(z.position());
    let not_found = || BridgeError::NotFoundWithinDepth(z.render(true), depth);
    if m.unsigned_abs() as usize > depth {
        return Err(not_found());
    }
    let h = mutated_initial(p.rank(), z.dir, m);
    if big_f(&h, p)?.evaluated == eval_triple(z, p)? {
        Ok(h)
    } else {
        Err(not_found())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceRow {
    pub dir: usize,
    pub m: i64,
    pub variable: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub depth: usize,
    pub rows: Vec<CorrespondenceRow>,
    pub targets: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl CorrespondenceReport {
    pub fn pass(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Maps the initial object mutated `m ∈ [−depth, depth] \ {−1, 0}` times in
/// each direction through [`big_f`] and compares with the evaluated cluster
/// variables within `depth − 1` mutations.
pub fn correspondence_check(p: &Preseed, depth: usize) -> Result<CorrespondenceReport, OracleError> {
    let d = depth as i64;
    let mut rows = Vec::new();
    let mut images = Vec::new();
    for k in 1..=p.rank() {
        for m in -d..=d {
            if m == 0 || m == -1 {
                continue;
            }
            let img = big_f(&mutated_initial(p.rank(), k, m), p)?;
            let var = img
                .factors
                .iter()
                .find(|f| **f != StepBackResult::One)
                .map(|f| f.render())
                .unwrap_or_else(|| "1".into());
            rows.push(CorrespondenceRow {
                dir: k,
                m,
                variable: var,
                value: img.evaluated.render(p.gens()),
            });
            images.push(img.evaluated);
        }
    }
    let targets: Vec<SkewLaurent> = if depth == 0 {
        vec![]
    } else {
        cluster_set(p, depth - 1)
            .iter()
            .map(|t| eval_triple(t, p))
            .collect::<Result<_, _>>()?
    };
    let injective = images
        .iter()
        .enumerate()
        .all(|(i, a)| images[i + 1..].iter().all(|b| a != b));
    let surjective = images.len() == targets.len()
        && targets.iter().all(|t| images.contains(t))
        && images.iter().all(|i| targets.contains(i));
    Ok(CorrespondenceReport {
        depth,
        rows,
        targets: targets.len(),
        injective,
        surjective,
    })
}
