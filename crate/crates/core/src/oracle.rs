//! Skew Laurent polynomials `R(t_1, …, t_n)` with `t_k f = θ_k(f) t_k`,
//! used as the ground truth for every algebra identity.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::ground::{apply_aut, AutKind, CoeffAut, CoeffFraction, Gens, PolyElem, Rat};
use crate::preseed::{cluster_set, ClusterTriple, Preseed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("exchange binomial of direction {0} is zero")]
    NonInvertibleBinomial(usize),
    #[error("element is not a coefficient times a single power")]
    NotMonomial,
}

/// Element `Σ r_u t^u` with coefficients stored to the left of the powers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SkewLaurent {
    terms: BTreeMap<Vec<i64>, CoeffFraction>,
}

impl SkewLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: CoeffFraction, u: Vec<i64>) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.terms.insert(u, c);
        }
        s
    }

    pub fn coeff(c: CoeffFraction, rank: usize) -> Self {
        Self::term(c, vec![0; rank])
    }

    pub fn one(rank: usize) -> Self {
        Self::coeff(CoeffFraction::one(), rank)
    }

    /// `t_k^e` (k is 1-based).
    pub fn gen_power(rank: usize, k: usize, e: i64) -> Self {
        let mut u = vec![0; rank];
        u[k - 1] = e;
        Self::term(CoeffFraction::one(), u)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &CoeffFraction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single `(r, u)` pair when the element is `r·t^u`.
    pub fn as_monomial(&self) -> Option<(&CoeffFraction, &Vec<i64>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(u, c)| (c, u))
        } else {
            None
        }
    }

    /// The coefficient when the element lies in the coefficient field.
    pub fn as_coeff(&self) -> Option<CoeffFraction> {
        if self.is_zero() {
            return Some(CoeffFraction::zero());
        }
        let (c, u) = self.as_monomial()?;
        u.iter().all(|&x| x == 0).then(|| c.clone())
    }

    fn add_term(&mut self, u: Vec<i64>, c: CoeffFraction) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&u) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(u, s);
                }
            }
            None => {
                self.terms.insert(u, c);
            }
        }
    }

    pub fn add(&self, b: &SkewLaurent) -> SkewLaurent {
        let mut out = self.clone();
        for (u, c) in &b.terms {
            out.add_term(u.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewLaurent {
        SkewLaurent {
            terms: self.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, b: &SkewLaurent) -> SkewLaurent {
        self.add(&b.neg())
    }

    pub fn render(&self, gens: &Gens) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let rank = self.terms.keys().next().map(|u| u.len()).unwrap_or(0);
        self.terms
            .iter()
            .rev()
            .map(|(u, c)| {
                let mut parts = Vec::new();
                let bare = u.iter().all(|&x| x == 0);
                if !c.is_one() || bare {
                    let r = c.render(gens);
                    if !bare && r.contains(' ') && !r.starts_with('(') {
                        parts.push(format!("({r})"));
                    } else {
                        parts.push(r);
                    }
                }
                for (i, &e) in u.iter().enumerate() {
                    let name = if rank == 1 {
                        "t".to_string()
                    } else {
                        format!("t{}", i + 1)
                    };
                    match e {
                        0 => {}
                        1 => parts.push(name),
                        _ => parts.push(format!("{name}^{e}")),
                    }
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The ring data needed to multiply: one automorphism per direction.
#[derive(Clone, Debug)]
pub struct SkewRing {
    auts: Vec<CoeffAut>,
}

impl SkewRing {
    /// Ring of `p`, using the initial (unflipped) automorphisms.
    pub fn of(p: &Preseed) -> Self {
        SkewRing {
            auts: p.auts().iter().map(|a| CoeffAut::new(a.kind.clone())).collect(),
        }
    }

    pub fn from_kinds(kinds: Vec<AutKind>) -> Self {
        SkewRing {
            auts: kinds.into_iter().map(CoeffAut::new).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.auts.len()
    }

    /// `θ^u(s)`: `θ_k^{u_k}` for each `k`.
    pub fn theta_u(&self, u: &[i64], s: &CoeffFraction) -> CoeffFraction {
        let mut out = s.clone();
        for (k, &e) in u.iter().enumerate() {
            if e != 0 {
                out = apply_aut(&self.auts[k], e, &out);
            }
        }
        out
    }

    /// `(r t^u)(s t^v) = r·θ^u(s)·t^{u+v}`.
    pub fn mul(&self, a: &SkewLaurent, b: &SkewLaurent) -> SkewLaurent {
        let mut out = SkewLaurent::zero();
        for (u, r) in &a.terms {
            for (v, s) in &b.terms {
                let c = r.mul(&self.theta_u(u, s));
                let w: Vec<i64> = u.iter().zip(v).map(|(x, y)| x + y).collect();
                out.add_term(w, c);
            }
        }
        out
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a SkewLaurent>) -> SkewLaurent {
        let mut acc = SkewLaurent::one(self.rank());
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Inverse of `r·t^u`: `θ^{-u}(r^{-1})·t^{-u}`.
    pub fn inverse_monomial(&self, a: &SkewLaurent) -> Result<SkewLaurent, OracleError> {
        let (r, u) = a.as_monomial().ok_or(OracleError::NotMonomial)?;
        let ri = r.invert().map_err(|_| OracleError::NotMonomial)?;
        let nu: Vec<i64> = u.iter().map(|x| -x).collect();
        Ok(SkewLaurent::term(self.theta_u(&nu, &ri), nu))
    }

    pub fn commutator(&self, a: &SkewLaurent, b: &SkewLaurent) -> SkewLaurent {
        self.mul(a, b).sub(&self.mul(b, a))
    }
}

fn xi_of(p: &Preseed, k: usize) -> Result<CoeffFraction, OracleError> {
    let b = p.binomial(k);
    if b.is_zero() {
        return Err(OracleError::NonInvertibleBinomial(k));
    }
    Ok(b.clone().into())
}

/// Evaluates `ξ_k^a t_k^e ξ_k^b` in the skew ring of `p`.
pub fn eval_triple(tr: &ClusterTriple, p: &Preseed) -> Result<SkewLaurent, OracleError> {
    let ring = SkewRing::of(p);
    let xi = xi_of(p, tr.dir)?;
    let pw = |e: i64| xi.pow(e).map_err(|_| OracleError::NonInvertibleBinomial(tr.dir));
    let n = p.rank();
    let left = SkewLaurent::coeff(pw(tr.a)?, n);
    let mid = SkewLaurent::gen_power(n, tr.dir, tr.e as i64);
    let right = SkewLaurent::coeff(pw(tr.b)?, n);
    Ok(ring.mul_all([&left, &mid, &right]))
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GwaCheckReport {
    pub checks: Vec<AxiomCheck>,
}

impl GwaCheckReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks the generalized Weyl algebra relations with `x_k := t_k` and
/// `y_k := t_k^{-1} ξ_k` (the left mutation of the initial variable) and
/// `ε_k := θ_k^{-1}(ξ_k)`:
/// `x r = θ(r) x`, `r y = y θ(r)`, `x y = θ(ε)`, `y x = ε`, commutation across
/// directions, and `θ_i(ε_j) = ε_j` for `i ≠ j`.
pub fn check_gwa_relations(p: &Preseed) -> Result<GwaCheckReport, OracleError> {
    let ring = SkewRing::of(p);
    let n = p.rank();
    let gens = p.gens();
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: &SkewLaurent, rhs: &SkewLaurent| {
        checks.push(AxiomCheck {
            pass: lhs == rhs,
            lhs: lhs.render(gens),
            rhs: rhs.render(gens),
            name,
        });
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut eps = Vec::new();
    for k in 1..=n {
        let x = SkewLaurent::gen_power(n, k, 1);
        let y = eval_triple(&ClusterTriple::initial(k).mutate_left(), p)?;
        let e = apply_aut(&ring.auts[k - 1], -1, &xi_of(p, k)?);
        xs.push(x);
        ys.push(y);
        eps.push(e);
    }
    for k in 0..n {
        let th = &ring.auts[k];
        for g in 0..gens.len() {
            let r = SkewLaurent::coeff(CoeffFraction::var(g), n);
            let tr = SkewLaurent::coeff(apply_aut(th, 1, &CoeffFraction::var(g)), n);
            push(
                format!("x{} {} = theta{}({}) x{}", k + 1, gens.name(g), k + 1, gens.name(g), k + 1),
                &ring.mul(&xs[k], &r),
                &ring.mul(&tr, &xs[k]),
            );
            push(
                format!("{} y{} = y{} theta{}({})", gens.name(g), k + 1, k + 1, k + 1, gens.name(g)),
                &ring.mul(&r, &ys[k]),
                &ring.mul(&ys[k], &tr),
            );
        }
        let e = SkewLaurent::coeff(eps[k].clone(), n);
        let te = SkewLaurent::coeff(apply_aut(th, 1, &eps[k]), n);
        push(
            format!("x{0} y{0} = theta{0}(eps{0})", k + 1),
            &ring.mul(&xs[k], &ys[k]),
            &te,
        );
        push(format!("y{0} x{0} = eps{0}", k + 1), &ring.mul(&ys[k], &xs[k]), &e);
        for j in 0..n {
            if j == k {
                continue;
            }
            push(
                format!("x{} y{} = y{} x{}", k + 1, j + 1, j + 1, k + 1),
                &ring.mul(&xs[k], &ys[j]),
                &ring.mul(&ys[j], &xs[k]),
            );
            if k < j {
                push(
                    format!("x{} x{} = x{} x{}", k + 1, j + 1, j + 1, k + 1),
                    &ring.mul(&xs[k], &xs[j]),
                    &ring.mul(&xs[j], &xs[k]),
                );
                push(
                    format!("y{} y{} = y{} y{}", k + 1, j + 1, j + 1, k + 1),
                    &ring.mul(&ys[k], &ys[j]),
                    &ring.mul(&ys[j], &ys[k]),
                );
            }
            push(
                format!("theta{}(eps{}) = eps{}", k + 1, j + 1, j + 1),
                &SkewLaurent::coeff(apply_aut(th, 1, &eps[j]), n),
                &SkewLaurent::coeff(eps[j].clone(), n),
            );
        }
    }
    Ok(GwaCheckReport { checks })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylLineEntry {
    pub m: i64,
    /// `y_{m+1} y_m − y_m y_{m+1}` when it is a rational constant.
    pub commutator: Option<String>,
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylLineReport {
    pub entries: Vec<WeylLineEntry>,
    pub pass: bool,
}

impl WeylLineReport {
    /// Signs in order of `m`, `+`/`-`/`?`.
    pub fn pattern(&self) -> String {
        self.entries
            .iter()
            .map(|e| match e.sign {
                Some(1) => '+',
                Some(-1) => '-',
                _ => '?',
            })
            .collect()
    }
}

/// Along the exchange line of direction 1 (`y_m` = the `m`-fold right image
/// for `m > 0`, left image for `m < 0`), computes `y_{m+1} y_m − y_m y_{m+1}`
/// for `-m_max ≤ m ≤ m_max`. Passes when every value is `±1` and the sign
/// depends only on the parity of `m`.
pub fn check_weyl_line(p: &Preseed, m_max: i64) -> Result<WeylLineReport, OracleError> {
    let ring = SkewRing::of(p);
    let y = |m: i64| eval_triple(&ClusterTriple::at_position(1, m), p);
    let mut entries = Vec::new();
    let mut pass = true;
    let mut by_parity: [Option<i8>; 2] = [None, None];
    for m in -m_max..=m_max {
        let a = y(m + 1)?;
        let b = y(m)?;
        let c = ring.commutator(&a, &b);
        let val: Option<Rat> = c.as_coeff().and_then(|f| f.as_constant());
        let sign = match &val {
            Some(v) if v.abs().is_one() => Some(if v.is_positive() { 1 } else { -1 }),
            _ => None,
        };
        match sign {
            None => pass = false,
            Some(s) => {
                let slot = &mut by_parity[m.rem_euclid(2) as usize];
                match slot {
                    Some(prev) if *prev != s => pass = false,
                    _ => *slot = Some(s),
                }
            }
        }
        entries.push(WeylLineEntry {
            m,
            commutator: val.map(|v| v.to_string()),
            sign,
        });
    }
    Ok(WeylLineReport { entries, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub exponent: Vec<i64>,
    /// `(j, multiplicity)` of `θ^j(ξ_k)` in the denominator.
    pub factors: Vec<(i64, u32)>,
    pub single_power: bool,
    pub supported: bool,
}

/// Factors the denominator of `eval_triple(tr)` over the shifted binomials
/// `θ_k^j(ξ_k)`, `|j| ≤ j_max`; whatever remains must be a constant times a
/// monomial in generators no automorphism moves.
pub fn laurent_support(
    tr: &ClusterTriple,
    p: &Preseed,
    j_max: i64,
) -> Result<SupportReport, OracleError> {
    let v = eval_triple(tr, p)?;
    let (c, u) = match v.as_monomial() {
        Some((c, u)) => (c.clone(), u.clone()),
        None => {
            return Ok(SupportReport {
                exponent: vec![],
                factors: vec![],
                single_power: false,
                supported: false,
            })
        }
    };
    let ring = SkewRing::of(p);
    let xi = xi_of(p, tr.dir)?;
    let mut den = c.den().clone();
    let mut factors = Vec::new();
    for j in -j_max..=j_max {
        let f = apply_aut(&ring.auts[tr.dir - 1], j, &xi);
        // θ^j(ξ) is a polynomial for shift and scale automorphisms
        let fp: PolyElem = if f.den().num_terms() == 1 {
            f.num().clone()
        } else {
            continue;
        };
        if fp.as_constant().is_some() {
            continue;
        }
        let mut mult = 0;
        let polynomial = |q: &PolyElem| q.terms().all(|(m, _)| m.exps().iter().all(|&(_, e)| e >= 0));
        while let Some(q) = den.div_exact(&fp).filter(polynomial) {
            den = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((j, mult));
        }
    }
    let touched: Vec<usize> = ring.auts.iter().flat_map(|a| a.kind.touches()).collect();
    let unit = den.num_terms() == 1
        && den
            .leading()
            .is_some_and(|(m, _)| m.exps().iter().all(|(g, _)| !touched.contains(g)));
    let nonzero_dirs = u.iter().filter(|&&x| x != 0).count();
    let single_power = nonzero_dirs == 1 && u.iter().all(|x| x.abs() <= 1);
    Ok(SupportReport {
        exponent: u,
        factors,
        single_power,
        supported: unit,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitFamilyReport {
    pub orbit_size: usize,
    /// Orbit elements matching `ζ^j x ζ^{-j}` or `ζ^j y ζ^{-j}` (`y = x^{-1}ζ`).
    pub matched: usize,
    pub unmatched: Vec<String>,
    /// Conjugation-family members with `|j| ≤ depth/2` not found in the orbit.
    pub missing: Vec<String>,
    /// Printed members `ζ^{j+1} x^{-1} ζ^{-j-1}` that coincide with an orbit element.
    pub inverse_conjugates_in_orbit: usize,
}

impl OrbitFamilyReport {
    pub fn pass(&self) -> bool {
        self.unmatched.is_empty() && self.missing.is_empty()
    }
}

/// Compares the evaluated rank-1 cluster set to depth `depth` with the family
/// `{ζ^j x ζ^{-j}, ζ^j y ζ^{-j}}` where `y = x^{-1}ζ` is the left mutation of
/// `x`.
pub fn quantum_orbit_check(p: &Preseed, depth: usize) -> Result<OrbitFamilyReport, OracleError> {
    let ring = SkewRing::of(p);
    let gens = p.gens();
    let orbit: Vec<SkewLaurent> = cluster_set(p, depth)
        .iter()
        .map(|t| eval_triple(t, p))
        .collect::<Result<_, _>>()?;
    let zeta = xi_of(p, 1)?;
    let conj = |j: i64, w: &SkewLaurent| -> SkewLaurent {
        let l = SkewLaurent::coeff(zeta.pow(j).unwrap(), 1);
        let r = SkewLaurent::coeff(zeta.pow(-j).unwrap(), 1);
        ring.mul_all([&l, w, &r])
    };
    let x = SkewLaurent::gen_power(1, 1, 1);
    let y = eval_triple(&ClusterTriple::initial(1).mutate_left(), p)?;
    let jmax = depth as i64 / 2 + 1;
    // (name, position in the orbit, value); ζ^j x ζ^{-j} sits at 2j and
    // ζ^j y ζ^{-j} at 2j - 1
    let mut family = Vec::new();
    for j in -jmax..=jmax {
        family.push((format!("zeta^{j} x zeta^{}", -j), 2 * j, conj(j, &x)));
        family.push((format!("zeta^{j} y zeta^{}", -j), 2 * j - 1, conj(j, &y)));
    }
    let mut matched = 0;
    let mut unmatched = Vec::new();
    for o in &orbit {
        if family.iter().any(|(_, _, f)| f == o) {
            matched += 1;
        } else {
            unmatched.push(o.render(gens));
        }
    }
    let missing = family
        .iter()
        .filter(|(_, q, f)| q.unsigned_abs() as usize <= depth && !orbit.contains(f))
        .map(|(n, _, _)| n.clone())
        .collect();
    let xinv = SkewLaurent::gen_power(1, 1, -1);
    let inverse_conjugates_in_orbit = (0..=jmax)
        .filter(|&j| orbit.contains(&conj(j + 1, &xinv)))
        .count();
    Ok(OrbitFamilyReport {
        orbit_size: orbit.len(),
        matched,
        unmatched,
        missing,
        inverse_conjugates_in_orbit,
    })
}
