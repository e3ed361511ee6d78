//! Customary identities: the `⟨,⟩` bracket, the `Δ` operator and x-height,
//! and the reduction of a multilinear identity of a unital generalized
//! Poisson algebra to one built from `⟨x,y⟩` and `D(x)` factors only.
//! Everything here is in the all-even setting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, GenId, Parity, UNIT};
use crate::engine::{Element, FreeAlgebra, Monomial, Theory};
use crate::error::{Error, Result};
use crate::lincomb::Lin;
use crate::scalar::{self, Scalar};
use crate::term::{self, Term};
use crate::word::LieWord;

fn require_even_genp(alg: &FreeAlgebra) -> Result<()> {
    if alg.theory() != Theory::GenP {
        return Err(Error::TheoryMismatch {
            expected: Theory::GenP.to_string(),
            found: alg.theory().to_string(),
        });
    }
    if !alg.alphabet().all_even() {
        return Err(Error::OddUnsupported);
    }
    Ok(())
}

/// `⟨a,b⟩ = {a,b} − (D(a)b − aD(b))`.
pub fn angle_bracket(alg: &FreeAlgebra, a: &Element, b: &Element) -> Result<Element> {
    let dab = alg.mul(&alg.d_op(a)?, b)?;
    let adb = alg.mul(a, &alg.d_op(b)?)?;
    alg.bracket(a, b)?.sub(&dab.sub(&adb)?)
}

pub fn angle_term(a: Term, b: Term) -> Term {
    term::lin(vec![
        (scalar::one(), term::br(a.clone(), b.clone())),
        (-scalar::one(), term::prod(term::d(a.clone()), b.clone())),
        (scalar::one(), term::prod(a, term::d(b))),
    ])
}

/// `{…{{x1,x2},x3},…,xn}`; a single element is itself.
pub fn leftnormed(alg: &FreeAlgebra, xs: &[Element]) -> Result<Element> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::Malformed("left-normed bracket of nothing".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| alg.bracket(&acc, x))
}

/// `{yz, w1, …, wn}` expanded blockwise: every `wi` goes to the y-block, the
/// z-block, or one of an ordered list of unit blocks. A term is
/// `(-1)^l {y,Wy}{z,Wz}{1,W1}…{1,Wl}` with each block in increasing order.
pub fn lemma41_expand(alg: &FreeAlgebra, y: &Element, z: &Element, ws: &[Element]) -> Result<Element> {
    require_even_genp(alg)?;
    let n = ws.len();
    let labels = n + 2;
    let mut out = alg.zero();
    let mut assign = vec![0usize; n];
    loop {
        // label 0: y-block, 1: z-block, 2+j: j-th unit block
        let used: BTreeSet<usize> = assign.iter().filter(|&&l| l >= 2).map(|l| l - 2).collect();
        let l = used.len();
        if used.iter().copied().eq(0..l) {
            let block = |head: &Element, label: usize| -> Result<Element> {
                let mut xs = vec![head.clone()];
                xs.extend((0..n).filter(|&i| assign[i] == label).map(|i| ws[i].clone()));
                leftnormed(alg, &xs)
            };
            let mut t = alg.mul(&block(y, 0)?, &block(z, 1)?)?;
            for j in 0..l {
                t = alg.mul(&t, &block(&alg.one(), j + 2)?)?;
            }
            out = out.add(&t.scaled(&scalar::sign(l % 2 == 1)))?;
        }
        let mut i = 0;
        while i < n && assign[i] + 1 == labels {
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        assign[i] += 1;
    }
    Ok(out)
}

/// A GenP element over an all-even alphabet with some generators marked as
/// identity variables; the rest behave as constants.
#[derive(Clone)]
pub struct PoissonPolynomial {
    alg: Arc<FreeAlgebra>,
    element: Element,
    vars: Vec<GenId>,
}

impl PoissonPolynomial {
    pub fn new(alg: Arc<FreeAlgebra>, element: Element, vars: &[&str]) -> Result<PoissonPolynomial> {
        require_even_genp(&alg)?;
        let mut ids = Vec::new();
        for v in vars {
            let id = alg
                .alphabet()
                .lookup(v)
                .filter(|&g| g != UNIT)
                .ok_or_else(|| Error::UnknownGenerator(v.to_string()))?;
            ids.push(id);
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(PoissonPolynomial { alg, element, vars: ids })
    }

    /// Every generator that occurs in `element` becomes a variable.
    pub fn with_occurring(alg: Arc<FreeAlgebra>, element: Element) -> Result<PoissonPolynomial> {
        require_even_genp(&alg)?;
        let vars = occurring(&element).into_iter().collect();
        Ok(PoissonPolynomial { alg, element, vars })
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<FreeAlgebra> {
        self.alg.clone()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.alg.alphabet()
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn vars(&self) -> &[GenId] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<String> {
        self.vars.iter().map(|&g| self.alphabet().name(g).to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    /// The element as a term whose variables are `Var` leaves, ready for
    /// evaluation in a concrete algebra.
    pub fn to_identity_term(&self) -> Term {
        let alphabet = self.alphabet();
        self.element.to_term().replace_gens(&|g| {
            self.vars.contains(&g).then(|| term::var(alphabet.name(g)))
        })
    }

    fn var_id(&self, x: &str) -> Result<GenId> {
        self.alphabet()
            .lookup(x)
            .filter(|g| self.vars.contains(g))
            .ok_or_else(|| Error::NotDesignated(x.to_string()))
    }

    fn with(&self, element: Element, vars: Vec<GenId>) -> PoissonPolynomial {
        PoissonPolynomial { alg: self.alg.clone(), element, vars }
    }

    fn check_linear_in(&self, x: GenId) -> Result<()> {
        for (m, _) in self.element.terms() {
            if m.multidegree().get(x) != 1 {
                return Err(Error::NotMultilinearizable(format!(
                    "`{}` does not occur exactly once in every monomial",
                    self.alphabet().name(x)
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PoissonPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.element.display(self.alphabet()))
    }
}

fn occurring(e: &Element) -> BTreeSet<GenId> {
    let mut out = BTreeSet::new();
    for (m, _) in e.terms() {
        for (w, _) in m.factors() {
            out.extend(w.leaves().into_iter().filter(|&g| g != UNIT));
        }
    }
    out
}

/// `x → x', x''`, adding primes past any name already taken.
pub fn fresh_names(alphabet: &Alphabet, x: &str) -> (String, String) {
    let mut names = Vec::new();
    let mut candidate = x.to_string();
    while names.len() < 2 {
        candidate.push('\'');
        if alphabet.lookup(&candidate).is_none() {
            names.push(candidate.clone());
        }
    }
    let z = names.pop().expect("two names");
    let y = names.pop().expect("two names");
    (y, z)
}

/// `Δ^x_{yz}(f) = f(yz, …) − y f(z, …) − z f(y, …)` over the alphabet
/// extended by the fresh letters `y`, `z`, which replace `x` as variables.
pub fn delta(f: &PoissonPolynomial, x: &str, y: &str, z: &str) -> Result<PoissonPolynomial> {
    let xid = f.var_id(x)?;
    let alphabet = f.alphabet().extended(&[(y, Parity::Even), (z, Parity::Even)])?;
    let alg = Arc::new(FreeAlgebra::new(Arc::new(alphabet), Theory::GenP));
    let yid = alg.alphabet().lookup(y).expect("just added");
    let zid = alg.alphabet().lookup(z).expect("just added");
    let body = f.element.to_term();
    let put = |t: Term| body.replace_gens(&|g| (g == xid).then(|| t.clone()));
    let (gy, gz) = (term::gen(yid), term::gen(zid));
    let diff = term::lin(vec![
        (scalar::one(), put(term::prod(gy.clone(), gz.clone()))),
        (-scalar::one(), term::prod(gy.clone(), put(gz.clone()))),
        (-scalar::one(), term::prod(gz, put(gy))),
    ]);
    let element = alg.normal_form(&diff)?;
    let mut vars: Vec<GenId> = f.vars.iter().copied().filter(|&g| g != xid).collect();
    vars.extend([yid, zid]);
    Ok(PoissonPolynomial { alg, element, vars })
}

/// `Δ` with the default fresh names.
pub fn delta_fresh(f: &PoissonPolynomial, x: &str) -> Result<PoissonPolynomial> {
    let (y, z) = fresh_names(f.alphabet(), x);
    delta(f, x, &y, &z)
}

pub fn is_derivation(f: &PoissonPolynomial, x: &str) -> Result<bool> {
    Ok(delta_fresh(f, x)?.is_zero())
}

fn height_of(e: &Element, x: GenId) -> usize {
    let mut h = 0;
    for (m, _) in e.terms() {
        for (w, _) in m.factors() {
            if w.contains(x) {
                h = h.max(w.len());
            }
        }
    }
    h
}

/// Largest length of a basis word containing `x`, `D(x) = {x,1}` counting as
/// 2; 0 when `x` does not occur.
pub fn x_height(f: &PoissonPolynomial, x: &str) -> Result<usize> {
    Ok(height_of(&f.element, f.var_id(x)?))
}

/// `f = xT + D(x)T0 + Σ {x,xi} Ti`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub t: Element,
    pub t0: Element,
    pub ti: BTreeMap<GenId, Element>,
}

pub fn decompose(f: &PoissonPolynomial, x: &str) -> Result<Decomposition> {
    decompose_id(f, f.var_id(x)?)
}

fn decompose_id(f: &PoissonPolynomial, x: GenId) -> Result<Decomposition> {
    f.check_linear_in(x)?;
    let mut t: Lin<Monomial> = Lin::zero();
    let mut t0: Lin<Monomial> = Lin::zero();
    let mut ti: BTreeMap<GenId, Lin<Monomial>> = BTreeMap::new();
    let name = || f.alphabet().name(x).to_string();
    for (m, c) in f.element.terms() {
        let (i, w) = m
            .factors()
            .iter()
            .enumerate()
            .find_map(|(i, (w, _))| w.contains(x).then_some((i, w)))
            .expect("linear in x");
        let rest = m.without_one(i);
        if w.as_leaf() == Some(x) {
            t.add_term(rest, c.clone());
            continue;
        }
        let (u, v) = match w.children() {
            Some(p) if w.len() == 2 => p,
            _ => return Err(Error::HeightTooLarge(name())),
        };
        let (other, sign) = if u.as_leaf() == Some(x) { (v, false) } else { (u, true) };
        let c = if sign { -c.clone() } else { c.clone() };
        match other.as_leaf() {
            Some(UNIT) if !sign => t0.add_term(rest, c),
            Some(g) if g != UNIT => ti.entry(g).or_insert_with(Lin::zero).add_term(rest, c),
            _ => return Err(Error::Malformed(format!("unexpected factor around `{}`", name()))),
        }
    }
    let el = |p: Lin<Monomial>| Element::from_poly(Theory::GenP, p);
    Ok(Decomposition {
        t: el(t),
        t0: el(t0),
        ti: ti.into_iter().map(|(g, p)| (g, el(p))).collect(),
    })
}

impl Decomposition {
    pub fn reconstruct(&self, alg: &FreeAlgebra, x: GenId) -> Result<Element> {
        let gx = alg.gen(x);
        let mut out = alg.mul(&gx, &self.t)?.add(&alg.mul(&alg.d_op(&gx)?, &self.t0)?)?;
        for (&g, e) in &self.ti {
            out = out.add(&alg.mul(&alg.bracket(&gx, &alg.gen(g))?, e)?)?;
        }
        Ok(out)
    }

    /// `−T + Σ D(xi) Ti`; zero exactly when `f` is a derivation in `x`.
    pub fn reduced(&self, alg: &FreeAlgebra) -> Result<Element> {
        let mut out = self.t.scaled(&-scalar::one());
        for (&g, e) in &self.ti {
            out = out.add(&alg.mul(&alg.d_op(&alg.gen(g))?, e)?)?;
        }
        Ok(out)
    }
}

/// `Σ c · Π⟨x_p,x_q⟩ · Π D(x_s)` with the pairs and singles partitioning
/// the letters `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomaryPolynomial {
    m: usize,
    letters: Vec<String>,
    terms: BTreeMap<CustomaryTerm, Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CustomaryTerm {
    pub pairs: Vec<(usize, usize)>,
    pub singles: Vec<usize>,
}

impl CustomaryPolynomial {
    pub fn new(m: usize) -> CustomaryPolynomial {
        CustomaryPolynomial {
            m,
            letters: (1..=m).map(|i| format!("x{i}")).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn with_letters(letters: Vec<String>) -> CustomaryPolynomial {
        CustomaryPolynomial { m: letters.len(), letters, terms: BTreeMap::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CustomaryTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · Π⟨p,q⟩ · Π D(s)`; indices are 1-based. Pairs are oriented
    /// `p < q`, flipping the sign as needed.
    pub fn add_term(&mut self, c: Scalar, pairs: &[(usize, usize)], singles: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.m + 1];
        let mut mark = |i: usize| -> Result<()> {
            if i == 0 || i > self.m || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Malformed(format!("index {i} breaks the partition of 1..{}", self.m)));
            }
            Ok(())
        };
        let mut c = c;
        let mut ps = Vec::new();
        for &(p, q) in pairs {
            mark(p)?;
            mark(q)?;
            if p > q {
                c = -c;
                ps.push((q, p));
            } else {
                ps.push((p, q));
            }
        }
        for &s in singles {
            mark(s)?;
        }
        if seen.iter().skip(1).any(|b| !b) {
            return Err(Error::Malformed(format!("term does not use every index of 1..{}", self.m)));
        }
        ps.sort_unstable();
        let mut ss = singles.to_vec();
        ss.sort_unstable();
        let key = CustomaryTerm { pairs: ps, singles: ss };
        let entry = self.terms.entry(key.clone()).or_insert_with(scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// A free GenP algebra on the letters, in order.
    pub fn free_algebra(&self) -> Result<FreeAlgebra> {
        let decls: Vec<(&str, Parity)> = self.letters.iter().map(|n| (n.as_str(), Parity::Even)).collect();
        Ok(FreeAlgebra::new(Arc::new(Alphabet::new(&decls)?), Theory::GenP))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json()).expect("serializable")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json()).expect("serializable")
    }

    fn json(&self) -> CustomaryJson {
        let default = CustomaryPolynomial::new(self.m).letters == self.letters;
        CustomaryJson {
            m: self.m,
            letters: (!default).then(|| self.letters.clone()),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| CustomaryTermJson {
                    coeff: c.clone(),
                    pairs: t.pairs.iter().map(|&(p, q)| [p, q]).collect(),
                    d: t.singles.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(src: &str) -> Result<CustomaryPolynomial> {
        let j: CustomaryJson = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        let mut c = match j.letters {
            Some(l) if l.len() != j.m => {
                return Err(Error::Malformed(format!("{} letters for m = {}", l.len(), j.m)))
            }
            Some(l) => CustomaryPolynomial::with_letters(l),
            None => CustomaryPolynomial::new(j.m),
        };
        for t in j.terms {
            let pairs: Vec<(usize, usize)> = t.pairs.iter().map(|p| (p[0], p[1])).collect();
            c.add_term(t.coeff, &pairs, &t.d)?;
        }
        Ok(c)
    }
}

impl fmt::Display for CustomaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", scalar::format(c))?;
            for &(p, q) in &t.pairs {
                write!(f, " <{},{}>", self.letters[p - 1], self.letters[q - 1])?;
            }
            for &s in &t.singles {
                write!(f, " D({})", self.letters[s - 1])?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CustomaryJson {
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    letters: Option<Vec<String>>,
    terms: Vec<CustomaryTermJson>,
}

#[derive(Serialize, Deserialize)]
struct CustomaryTermJson {
    #[serde(with = "scalar::serde_q")]
    coeff: Scalar,
    #[serde(default)]
    pairs: Vec<[usize; 2]>,
    #[serde(rename = "D", default)]
    d: Vec<usize>,
}

fn letter_ids(c: &CustomaryPolynomial, alg: &FreeAlgebra) -> Result<Vec<GenId>> {
    require_even_genp(alg)?;
    c.letters
        .iter()
        .map(|n| alg.alphabet().lookup(n).ok_or_else(|| Error::UnknownGenerator(n.clone())))
        .collect()
}

/// Expands `⟨,⟩` and `D` in `alg`, whose alphabet must contain the letters.
pub fn customary_to_element(c: &CustomaryPolynomial, alg: &FreeAlgebra) -> Result<Element> {
    let ids = letter_ids(c, alg)?;
    let g = |i: usize| alg.gen(ids[i - 1]);
    let mut out = alg.zero();
    for (t, coeff) in &c.terms {
        let mut e = alg.one();
        for &(p, q) in &t.pairs {
            e = alg.mul(&e, &angle_bracket(alg, &g(p), &g(q))?)?;
        }
        for &s in &t.singles {
            e = alg.mul(&e, &alg.d_op(&g(s))?)?;
        }
        out = out.add(&e.scaled(coeff))?;
    }
    Ok(out)
}

/// `[u1;u2;w1;w2]`, which equals `w1 w2 ⟨u1,u2⟩`.
pub fn pair_macro(u1: &Term, u2: &Term, w1: &Term, w2: &Term) -> Term {
    let w = term::prod(w1.clone(), w2.clone());
    let mut terms = vec![
        (scalar::one(), term::prod(term::br(u1.clone(), u2.clone()), w.clone())),
        (scalar::one(), term::prod(term::br(u1.clone(), w.clone()), u2.clone())),
        (scalar::one(), term::prod(u1.clone(), term::br(w, u2.clone()))),
    ];
    let us = [u1, u2];
    let ws = [w1, w2];
    for s1 in 0..2 {
        for s2 in 0..2 {
            // the sign is minus that of the permutation of the u's
            let c = if s1 == 0 { -scalar::one() } else { scalar::one() };
            let t = term::prods([
                term::br(us[s1].clone(), ws[s2].clone()),
                us[1 - s1].clone(),
                ws[1 - s2].clone(),
            ]);
            terms.push((c, t));
        }
    }
    term::lin(terms)
}

/// `{t1;t2;t3} = {t2t3,t1} − {t2,t1}t3 − {t3,t1}t2`, which equals `D(t1)t2t3`.
pub fn brace_macro(t1: &Term, t2: &Term, t3: &Term) -> Term {
    term::lin(vec![
        (scalar::one(), term::br(term::prod(t2.clone(), t3.clone()), t1.clone())),
        (-scalar::one(), term::prod(term::br(t2.clone(), t1.clone()), t3.clone())),
        (-scalar::one(), term::prod(term::br(t3.clone(), t1.clone()), t2.clone())),
    ])
}

/// The customary identity times `z1 … z2m`, written with the bracket macros
/// only. Needs at least `2m` fresh letters in `zs`.
pub fn corollary_expand(c: &CustomaryPolynomial, alg: &FreeAlgebra, zs: &[&str]) -> Result<Element> {
    let ids = letter_ids(c, alg)?;
    let m = c.m;
    if zs.len() < 2 * m {
        return Err(Error::NotEnoughFresh { need: 2 * m, got: zs.len() });
    }
    let z: Vec<Term> = zs[..2 * m]
        .iter()
        .map(|n| {
            alg.alphabet()
                .lookup(n)
                .filter(|g| *g != UNIT && !ids.contains(g))
                .map(term::gen)
                .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
        })
        .collect::<Result<_>>()?;
    let x = |i: usize| term::gen(ids[i - 1]);
    let mut parts = Vec::new();
    for (t, coeff) in &c.terms {
        let i = t.pairs.len();
        let mut factors = Vec::new();
        for (k, &(p, q)) in t.pairs.iter().enumerate() {
            factors.push(pair_macro(&x(p), &x(q), &z[2 * k], &z[2 * k + 1]));
        }
        for (k, &s) in t.singles.iter().enumerate() {
            factors.push(brace_macro(&x(s), &z[2 * i + 2 * k], &z[2 * i + 2 * k + 1]));
        }
        factors.extend(z[2 * m - 2 * i..].iter().cloned());
        parts.push((coeff.clone(), term::prods(factors)));
    }
    alg.normal_form(&term::lin(parts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    /// Step 1: `Δ` splitting a letter of large height.
    Split { letter: String, height: usize, y: String, z: String },
    /// Step 2: `f* = −T + Σ D(xi) Ti` for a letter that is not a derivation.
    Drop { letter: String },
    /// Step 3: every `{x,y}` rewritten through `⟨x,y⟩`.
    Rewrite,
    /// Step 3: the monomials with a bare letter removed.
    Discharge { letter: String },
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Split { letter, height, y, z } => {
                write!(f, "split {letter} (height {height}) into {y} {z}")
            }
            StepKind::Drop { letter } => write!(f, "drop {letter}"),
            StepKind::Rewrite => f.write_str("rewrite brackets"),
            StepKind::Discharge { letter } => write!(f, "discharge bare {letter}"),
        }
    }
}

#[derive(Clone)]
pub struct TraceStep {
    pub kind: StepKind,
    pub poly: PoissonPolynomial,
}

pub struct Reduction {
    pub result: CustomaryPolynomial,
    pub trace: Vec<TraceStep>,
}

fn heights_above_two(f: &PoissonPolynomial) -> Vec<(usize, GenId)> {
    let mut hs: Vec<(usize, GenId)> = f
        .vars
        .iter()
        .map(|&g| (height_of(&f.element, g), g))
        .filter(|&(h, _)| h >= 3)
        .collect();
    hs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    hs
}

fn measure(hs: &[(usize, GenId)]) -> Vec<usize> {
    hs.iter().map(|&(h, _)| h).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Sym {
    Letter(GenId),
    D(GenId),
    Pair(GenId, GenId),
}

type SymPoly = Lin<Vec<Sym>>;

fn sym_product(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut out = Lin::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            let mut k = x.clone();
            k.extend(y.iter().cloned());
            k.sort();
            out.add_term(k, cx * cy);
        }
    }
    out
}

fn sym_of_word(w: &LieWord, vars: &[GenId], name: &dyn Fn(GenId) -> String) -> Result<SymPoly> {
    let leaf = |u: &LieWord| u.as_leaf().filter(|g| vars.contains(g));
    let one = |s: Vec<Sym>, c: Scalar| Lin::single(s, c);
    if let Some(g) = leaf(w) {
        return Ok(one(vec![Sym::Letter(g)], scalar::one()));
    }
    let (u, v) = w
        .children()
        .filter(|_| w.len() == 2)
        .ok_or_else(|| Error::HeightTooLarge(w.leaves().iter().map(|&g| name(g)).collect::<Vec<_>>().join(",")))?;
    let gu = leaf(u).ok_or_else(|| Error::NotDesignated(name(u.leaves()[0])))?;
    if v.is_unit() {
        return Ok(one(vec![Sym::D(gu)], scalar::one()));
    }
    let gv = leaf(v).ok_or_else(|| Error::NotDesignated(name(v.leaves()[0])))?;
    // {u,v} = ⟨u,v⟩ + D(u)v − uD(v)
    let mut out = if gu < gv {
        one(vec![Sym::Pair(gu, gv)], scalar::one())
    } else {
        one(vec![Sym::Pair(gv, gu)], -scalar::one())
    };
    let mut k = vec![Sym::D(gu), Sym::Letter(gv)];
    k.sort();
    out.add_term(k, scalar::one());
    let mut k = vec![Sym::Letter(gu), Sym::D(gv)];
    k.sort();
    out.add_term(k, -scalar::one());
    Ok(out)
}

fn to_symbols(f: &PoissonPolynomial) -> Result<SymPoly> {
    let name = |g: GenId| f.alphabet().name(g).to_string();
    let mut out = Lin::zero();
    for (m, c) in f.element.terms() {
        let mut acc: SymPoly = Lin::single(Vec::new(), scalar::one());
        for (w, e) in m.factors() {
            let s = sym_of_word(w, &f.vars, &name)?;
            for _ in 0..*e {
                acc = sym_product(&acc, &s);
            }
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

fn symbols_to_element(alg: &FreeAlgebra, p: &SymPoly) -> Result<Element> {
    let mut out = alg.zero();
    for (k, c) in p {
        let mut e = alg.one();
        for s in k {
            let f = match *s {
                Sym::Letter(g) => alg.gen(g),
                Sym::D(g) => alg.d_op(&alg.gen(g))?,
                Sym::Pair(a, b) => angle_bracket(alg, &alg.gen(a), &alg.gen(b))?,
            };
            e = alg.mul(&e, &f)?;
        }
        out = out.add(&e.scaled(c))?;
    }
    Ok(out)
}

fn degenerate(kind: &StepKind) -> Error {
    Error::Degenerate(format!("after step `{kind}`"))
}

/// Reduces a multilinear identity to a customary one. Every polynomial in
/// the trace is an identity of any unital GenP algebra satisfying `g0`.
pub fn farkas_reduce(g0: &PoissonPolynomial) -> Result<Reduction> {
    require_even_genp(g0.algebra())?;
    if g0.is_zero() {
        return Err(Error::Degenerate("input is zero".into()));
    }
    for g in occurring(&g0.element) {
        if !g0.vars.contains(&g) {
            return Err(Error::NotDesignated(g0.alphabet().name(g).to_string()));
        }
    }
    let mut f = g0.clone();
    f.vars.retain(|g| occurring(&g0.element).contains(g));
    for &x in &f.vars {
        f.check_linear_in(x)?;
    }
    let mut trace = Vec::new();

    loop {
        let hs = heights_above_two(&f);
        let Some(&(height, x)) = hs.first() else { break };
        let letter = f.alphabet().name(x).to_string();
        let (y, z) = fresh_names(f.alphabet(), &letter);
        let next = delta(&f, &letter, &y, &z)?;
        let kind = StepKind::Split { letter, height, y, z };
        if next.is_zero() {
            return Err(degenerate(&kind));
        }
        if measure(&heights_above_two(&next)) >= measure(&hs) {
            return Err(Error::NoProgress(kind.to_string()));
        }
        f = next;
        trace.push(TraceStep { kind, poly: f.clone() });
    }

    'outer: loop {
        for &x in &f.vars.clone() {
            let reduced = decompose_id(&f, x)?.reduced(f.algebra())?;
            if reduced.is_zero() {
                continue;
            }
            let kind = StepKind::Drop { letter: f.alphabet().name(x).to_string() };
            let vars: Vec<GenId> = f.vars.iter().copied().filter(|&g| g != x).collect();
            f = f.with(reduced, vars);
            trace.push(TraceStep { kind, poly: f.clone() });
            continue 'outer;
        }
        break;
    }

    let mut p = to_symbols(&f)?;
    trace.push(TraceStep { kind: StepKind::Rewrite, poly: f.clone() });
    for &x in &f.vars.clone() {
        let bare = Sym::Letter(x);
        if !p.keys().any(|k| k.contains(&bare)) {
            continue;
        }
        let mut kept = Lin::zero();
        for (k, c) in &p {
            if !k.contains(&bare) {
                kept.add_term(k.clone(), c.clone());
            }
        }
        p = kept;
        let kind = StepKind::Discharge { letter: f.alphabet().name(x).to_string() };
        if p.is_zero() {
            return Err(degenerate(&kind));
        }
        let element = symbols_to_element(f.algebra(), &p)?;
        trace.push(TraceStep { kind, poly: f.with(element, f.vars.clone()) });
    }

    let letters: Vec<GenId> = f.vars.clone();
    let index = |g: GenId| letters.iter().position(|&l| l == g).expect("variable") + 1;
    let mut result =
        CustomaryPolynomial::with_letters(letters.iter().map(|&g| f.alphabet().name(g).to_string()).collect());
    for (k, c) in &p {
        let mut pairs = Vec::new();
        let mut singles = Vec::new();
        for s in k {
            match *s {
                Sym::Pair(a, b) => pairs.push((index(a), index(b))),
                Sym::D(g) => singles.push(index(g)),
                Sym::Letter(_) => unreachable!("bare letters were discharged"),
            }
        }
        result.add_term(c.clone(), &pairs, &singles)?;
    }
    if result.is_zero() {
        return Err(Error::Degenerate("customary part vanished".into()));
    }
    Ok(Reduction { result, trace })
}
