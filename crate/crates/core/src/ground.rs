//! Exact coefficient arithmetic: rational functions over ℚ in a declared set
//! of generators, and the coefficient automorphisms (shift, scale) acting on
//! them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Generator names in declaration order. The index of a name is its rank in
/// the canonical term order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gens {
    names: Vec<String>,
}

impl Gens {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Gens::new();
        for n in names {
            g.intern(&n.into());
        }
        g
    }

    /// Index of `name`, adding it at the end if unseen.
    pub fn intern(&mut self, name: &str) -> usize {
        match self.index(name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Laurent monomial: sorted (generator, exponent) pairs, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(usize, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(g: usize, e: i64) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, i64)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(pairs.len());
        for (g, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => out.push((g, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn exp(&self, g: usize) -> i64 {
        self.0
            .iter()
            .find(|p| p.0 == g)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let a = self.0.get(i);
            let b = other.0.get(j);
            match (a, b) {
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    if ea + eb != 0 {
                        out.push((ga, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => {
                    out.push((ga, ea));
                    i += 1;
                }
                (Some(_), Some(&(gb, eb))) => {
                    out.push((gb, eb));
                    j += 1;
                }
                (Some(&p), None) => {
                    out.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(g, e)| (g, -e)).collect())
    }

    /// True when every exponent of `d` is at most the matching exponent here.
    fn divisible_by(&self, d: &Monomial) -> bool {
        d.0.iter().all(|&(g, e)| self.exp(g) >= e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order over generator declaration order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.0.get(i);
            let b = other.0.get(j);
            match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => return ea.cmp(&0),
                (Some(_), Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Laurent polynomial over ℚ. Terms iterate in ascending graded-lex order;
/// the leading term is the last one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyElem {
    terms: BTreeMap<Monomial, Rat>,
}

impl PolyElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(g: usize) -> Self {
        Self::term(Monomial::var(g, 1), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Constant value when the polynomial has no non-trivial monomial.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolyElem) -> PolyElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyElem {
        PolyElem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyElem) -> PolyElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyElem) -> PolyElem {
        let mut out = PolyElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat, m: &Monomial) -> PolyElem {
        if c.is_zero() {
            return PolyElem::zero();
        }
        PolyElem {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyElem {
        let mut acc = PolyElem::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Exact quotient `self / d` when `d` divides `self` in the Laurent ring.
    pub fn div_exact(&self, d: &PolyElem) -> Option<PolyElem> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PolyElem::zero());
        }
        let sa = clearing_monomial([self]);
        let sd = clearing_monomial([d]);
        let mut r = self.scale(&Rat::one(), &sa);
        let dd = d.scale(&Rat::one(), &sd);
        let (dm, dc) = dd.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = PolyElem::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !rm.divisible_by(&dm) {
                return None;
            }
            let tm = rm.mul(&dm.inv());
            let tc = rc / &dc;
            r = r.sub(&dd.scale(&tc, &tm));
            q.add_term(tm, tc);
        }
        // self·sa = q·d·sd  ⇒  self/d = q·sd/sa
        Some(q.scale(&Rat::one(), &sd.mul(&sa.inv())))
    }

    /// Canonical text: terms in descending graded-lex order.
    pub fn render(&self, gens: &Gens) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, gens);
            if m.is_one() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{}*{}", a, mono);
            }
        }
        s
    }
}

/// Monomial that, multiplied into every polynomial of `ps`, makes all
/// exponents non-negative with no common monomial factor left.
fn clearing_monomial<'a>(ps: impl IntoIterator<Item = &'a PolyElem>) -> Monomial {
    let ps: Vec<&PolyElem> = ps.into_iter().collect();
    let mut gens: Vec<usize> = ps
        .iter()
        .flat_map(|p| p.monomials().flat_map(|m| m.exps().iter().map(|e| e.0)))
        .collect();
    gens.sort_unstable();
    gens.dedup();
    let pairs = gens
        .into_iter()
        .map(|g| {
            let min = ps
                .iter()
                .flat_map(|p| p.monomials().map(move |m| m.exp(g)))
                .min()
                .unwrap_or(0);
            (g, -min)
        })
        .collect();
    Monomial::from_pairs(pairs)
}

fn render_monomial(m: &Monomial, gens: &Gens) -> String {
    m.exps()
        .iter()
        .map(|&(g, e)| {
            if e == 1 {
                gens.name(g).to_string()
            } else {
                format!("{}^{}", gens.name(g), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Element of the fraction field. `num` and `den` are kept as polynomials
/// with no common monomial factor and `den` monic; equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct CoeffFraction {
    num: PolyElem,
    den: PolyElem,
}

impl PartialEq for CoeffFraction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for CoeffFraction {}

impl From<PolyElem> for CoeffFraction {
    fn from(p: PolyElem) -> Self {
        CoeffFraction::new(p, PolyElem::one())
    }
}

impl CoeffFraction {
    pub fn new(num: PolyElem, den: PolyElem) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = CoeffFraction { num, den };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        PolyElem::zero().into()
    }

    pub fn one() -> Self {
        PolyElem::one().into()
    }

    pub fn constant(c: Rat) -> Self {
        PolyElem::constant(c).into()
    }

    pub fn var(g: usize) -> Self {
        PolyElem::var(g).into()
    }

    pub fn num(&self) -> &PolyElem {
        &self.num
    }

    pub fn den(&self) -> &PolyElem {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyElem::one();
            return;
        }
        let shift = clearing_monomial([&self.num, &self.den]);
        if !shift.is_one() {
            self.num = self.num.scale(&Rat::one(), &shift);
            self.den = self.den.scale(&Rat::one(), &shift);
        }
        if self.den.num_terms() > 1 {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = PolyElem::one();
            } else if self.num.num_terms() > 1 {
                if let Some(q) = self.den.div_exact(&self.num) {
                    self.num = PolyElem::one();
                    self.den = q;
                    return self.normalize();
                }
            }
        }
        if let Some((_, lc)) = self.den.leading() {
            if !lc.is_one() {
                let inv = Rat::one() / lc.clone();
                self.num = self.num.scale(&inv, &Monomial::one());
                self.den = self.den.scale(&inv, &Monomial::one());
            }
        }
    }

    pub fn add(&self, b: &CoeffFraction) -> CoeffFraction {
        if self.den == b.den {
            return CoeffFraction::new(self.num.add(&b.num), self.den.clone());
        }
        CoeffFraction::new(
            self.num.mul(&b.den).add(&b.num.mul(&self.den)),
            self.den.mul(&b.den),
        )
    }

    pub fn neg(&self) -> CoeffFraction {
        CoeffFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, b: &CoeffFraction) -> CoeffFraction {
        self.add(&b.neg())
    }

    pub fn mul(&self, b: &CoeffFraction) -> CoeffFraction {
        // Cheap cross-cancellation before multiplying out.
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (b.num.clone(), b.den.clone());
        if !d2.is_one() {
            if let Some(q) = n1.div_exact(&d2) {
                n1 = q;
                d2 = PolyElem::one();
            }
        }
        if !d1.is_one() {
            if let Some(q) = n2.div_exact(&d1) {
                n2 = q;
                d1 = PolyElem::one();
            }
        }
        CoeffFraction::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn invert(&self) -> Result<CoeffFraction, GroundError> {
        if self.is_zero() {
            return Err(GroundError::ZeroInversion);
        }
        Ok(CoeffFraction::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, b: &CoeffFraction) -> Result<CoeffFraction, GroundError> {
        Ok(self.mul(&b.invert()?))
    }

    pub fn pow(&self, e: i64) -> Result<CoeffFraction, GroundError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = CoeffFraction::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Canonical text accepted back by [`parse_coeff`].
    pub fn render(&self, gens: &Gens) -> String {
        if self.den.is_one() {
            return self.num.render(gens);
        }
        format!("({})/({})", self.num.render(gens), self.den.render(gens))
    }
}

/// Free function forms of the field operations.
pub fn add(a: &CoeffFraction, b: &CoeffFraction) -> CoeffFraction {
    a.add(b)
}

pub fn mul(a: &CoeffFraction, b: &CoeffFraction) -> CoeffFraction {
    a.mul(b)
}

pub fn invert(a: &CoeffFraction) -> Result<CoeffFraction, GroundError> {
    a.invert()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutKind {
    /// `gen ↦ gen + offset`.
    Shift { gen: usize, offset: (i64, i64) },
    /// `t ↦ unit·t` for every `t` in `targets`.
    Scale { targets: Vec<usize>, unit: usize },
    /// Applied left to right.
    Composite(Vec<AutKind>),
}

impl AutKind {
    pub fn shift(gen: usize, offset: i64) -> Self {
        AutKind::Shift {
            gen,
            offset: (offset, 1),
        }
    }

    fn offset_rat(offset: &(i64, i64)) -> Rat {
        Rat::new(BigInt::from(offset.0), BigInt::from(offset.1))
    }

    /// Image of generator `g` under the `power`-th iterate, as a Laurent
    /// polynomial. `None` means `g` is fixed.
    fn gen_image(&self, g: usize, power: i64) -> Option<PolyElem> {
        match self {
            AutKind::Shift { gen, offset } if *gen == g => {
                let c = Self::offset_rat(offset) * rat(power);
                Some(PolyElem::var(g).add(&PolyElem::constant(c)))
            }
            AutKind::Shift { .. } => None,
            AutKind::Scale { targets, unit } if targets.contains(&g) => Some(PolyElem::term(
                Monomial::from_pairs(vec![(*unit, power), (g, 1)]),
                Rat::one(),
            )),
            AutKind::Scale { .. } => None,
            AutKind::Composite(_) => unreachable!("composites are applied stepwise"),
        }
    }

    fn apply_poly(&self, p: &PolyElem, power: i64) -> CoeffFraction {
        let mut acc = CoeffFraction::zero();
        for (m, c) in p.terms() {
            let mut t = CoeffFraction::constant(c.clone());
            for &(g, e) in m.exps() {
                let img: CoeffFraction = match self.gen_image(g, power) {
                    Some(i) => i.into(),
                    None => CoeffFraction::var(g),
                };
                t = t.mul(&img.pow(e).expect("automorphism image of a unit is nonzero"));
            }
            acc = acc.add(&t);
        }
        acc
    }

    fn apply_once(&self, power: i64, a: &CoeffFraction) -> CoeffFraction {
        match self {
            AutKind::Composite(parts) => {
                let mut cur = a.clone();
                if power >= 0 {
                    for _ in 0..power {
                        for p in parts {
                            cur = p.apply_once(1, &cur);
                        }
                    }
                } else {
                    for _ in 0..(-power) {
                        for p in parts.iter().rev() {
                            cur = p.apply_once(-1, &cur);
                        }
                    }
                }
                cur
            }
            _ => {
                if power == 0 {
                    return a.clone();
                }
                let n = self.apply_poly(a.num(), power);
                let d = self.apply_poly(a.den(), power);
                n.div(&d).expect("automorphism maps nonzero to nonzero")
            }
        }
    }

    /// Generators moved by this automorphism.
    pub fn touches(&self) -> Vec<usize> {
        match self {
            AutKind::Shift { gen, .. } => vec![*gen],
            AutKind::Scale { targets, .. } => targets.clone(),
            AutKind::Composite(parts) => {
                let mut v: Vec<usize> = parts.iter().flat_map(|p| p.touches()).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    pub fn render(&self, gens: &Gens) -> String {
        match self {
            AutKind::Shift { gen, offset } => {
                format!("shift {} {}", gens.name(*gen), Self::offset_rat(offset))
            }
            AutKind::Scale { targets, unit } => format!(
                "scale {} {}",
                targets
                    .iter()
                    .map(|t| gens.name(*t))
                    .collect::<Vec<_>>()
                    .join(","),
                gens.name(*unit)
            ),
            AutKind::Composite(parts) => parts
                .iter()
                .map(|p| p.render(gens))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

/// Coefficient automorphism together with its current orientation (the power
/// it currently stands for, flipped by mutation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffAut {
    pub kind: AutKind,
    pub orientation: i8,
}

impl CoeffAut {
    pub fn new(kind: AutKind) -> Self {
        CoeffAut {
            kind,
            orientation: 1,
        }
    }

    pub fn flipped(&self) -> Self {
        CoeffAut {
            kind: self.kind.clone(),
            orientation: -self.orientation,
        }
    }
}

/// Applies the underlying substitution `power` times; negative powers use the
/// declared inverse.
pub fn apply_aut(theta: &CoeffAut, power: i64, a: &CoeffFraction) -> CoeffFraction {
    theta.kind.apply_once(power, a)
}

// ---------------------------------------------------------------------------
// Text syntax: integers, generator names, + - * / ^ with integer exponents.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, GroundError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[st..i].iter().collect();
            out.push((st, Tok::Int(txt.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(chars[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(GroundError::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct CoeffParser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    gens: &'a Gens,
}

impl CoeffParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, GroundError> {
        Err(GroundError::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CoeffFraction, GroundError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CoeffFraction, GroundError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let p = self.pos();
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| GroundError::Parse {
                    pos: p,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CoeffFraction, GroundError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<CoeffFraction, GroundError> {
        let base = self.atom()?;
        if self.eat('^') {
            let p = self.pos();
            let e = parse_int_exponent(self)?;
            return base.pow(e).map_err(|_| GroundError::Parse {
                pos: p,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CoeffFraction, GroundError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(CoeffFraction::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.gens.index(&name) {
                Some(g) => {
                    self.at += 1;
                    Ok(CoeffFraction::var(g))
                }
                None => self.err(&format!("unknown generator '{name}'")),
            },
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(_) => self.err("expected a number, generator or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_int_exponent(p: &mut CoeffParser<'_>) -> Result<i64, GroundError> {
    let neg = p.eat('-');
    match p.peek().cloned() {
        Some(Tok::Int(n)) => {
            p.at += 1;
            let v: i64 = i64::try_from(n).map_err(|_| GroundError::Parse {
                pos: p.pos(),
                msg: "exponent out of range".into(),
            })?;
            Ok(if neg { -v } else { v })
        }
        _ => p.err("expected an integer exponent"),
    }
}

/// Parses a coefficient expression such as `(e1+1)/e1` over `gens`.
pub fn parse_coeff(s: &str, gens: &Gens) -> Result<CoeffFraction, GroundError> {
    let toks = lex(s)?;
    let mut p = CoeffParser {
        toks,
        at: 0,
        end: s.chars().count(),
        gens,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Gens {
        Gens::from_names(["e", "u", "v", "q"])
    }

    fn p(s: &str) -> CoeffFraction {
        parse_coeff(s, &g()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&p("1/e"), &p("1/e")), p("2/e"));
        assert_eq!(add(&p("e"), &p("0")), p("e"));
        let s = add(&p("1/(e+1)"), &p("1/e"));
        assert_eq!(s.render(&g()), "(2*e + 1)/(e^2 + e)");
    }

    #[test]
    fn mul_examples() {
        assert!(mul(&p("e"), &p("1/e")).is_one());
        assert_eq!(mul(&p("e"), &p("1")), p("e"));
        assert_eq!(mul(&p("e+1"), &p("e-1")).render(&g()), "e^2 - 1");
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&p("e")).unwrap(), p("1/e"));
        assert_eq!(invert(&p("(e+1)/e")).unwrap(), p("e/(e+1)"));
        assert_eq!(invert(&p("0")), Err(GroundError::ZeroInversion));
    }

    #[test]
    fn aut_examples() {
        let sh = CoeffAut::new(AutKind::shift(0, 1));
        assert_eq!(apply_aut(&sh, 1, &p("e")), p("e+1"));
        let a = p("(e^2+3)/(e-2)");
        assert_eq!(apply_aut(&sh, 1, &apply_aut(&sh, -1, &a)), a);
        let sc = CoeffAut::new(AutKind::Scale {
            targets: vec![1],
            unit: 3,
        });
        assert_eq!(apply_aut(&sc, 2, &p("u")), p("q^2*u"));
        assert_eq!(apply_aut(&sc, -1, &p("u*v")), p("u*v/q"));
    }

    #[test]
    fn composite_inverse_order() {
        let c = CoeffAut::new(AutKind::Composite(vec![
            AutKind::shift(0, 1),
            AutKind::Scale {
                targets: vec![0],
                unit: 3,
            },
        ]));
        // e ↦ e+1 ↦ q·e+1
        assert_eq!(apply_aut(&c, 1, &p("e")), p("q*e+1"));
        let a = p("e^2/(e+q)");
        assert_eq!(apply_aut(&c, -2, &apply_aut(&c, 2, &a)), a);
    }

    #[test]
    fn render_is_canonical() {
        let a = p("1 + e + e^2*u - 3/2*u");
        assert_eq!(a.render(&g()), "e^2*u + e - 3/2*u + 1");
        assert_eq!(p(&a.render(&g())), a);
        assert_eq!(p("e^-1").render(&g()), "(1)/(e)");
    }

    #[test]
    fn grlex_order() {
        let e2 = Monomial::var(0, 2);
        let eu = Monomial::from_pairs(vec![(0, 1), (1, 1)]);
        let u2 = Monomial::var(1, 2);
        assert!(e2 > eu && eu > u2);
        assert!(Monomial::var(0, 1) > Monomial::var(1, 1));
        assert!(Monomial::var(1, 1) > Monomial::one());
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_coeff("e + ^", &g()) {
            Err(GroundError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_coeff("w", &g()),
            Err(GroundError::Parse { pos: 0, .. })
        ));
        assert!(parse_coeff("e^", &g()).is_err());
        assert!(parse_coeff("(e", &g()).is_err());
    }

    #[test]
    fn div_exact_laurent() {
        let a = p("e^2 - 1").num().clone();
        let b = p("e + 1").num().clone();
        assert_eq!(a.div_exact(&b), Some(p("e - 1").num().clone()));
        assert_eq!(b.div_exact(&a), None);
    }
}
