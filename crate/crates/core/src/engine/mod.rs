//! Free unital generalized Poisson superalgebras (GenP), free unital
//! superalgebras of Jordan brackets (JB) and free generic Poisson
//! superalgebras (GP), computed in the basis of sorted products of bracket
//! words.
//!
//! Products are merged with Koszul signs. A bracket whose right argument is a
//! product is expanded by the deformed Leibniz rule
//! `{a,b} = Σ_k ± t_k {a,e_k} b/e_k − (Σ t_k − 1) D(a) b`; brackets of two
//! words are straightened by the theory's Jacobi rule.

pub mod json;
mod monomial;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use dashmap::DashMap;

use crate::alphabet::{Alphabet, GenId, Parity, UNIT};
use crate::error::{Error, Result};
use crate::liebasis::LieBasis;
use crate::lincomb::Lin;
use crate::scalar::{self, Scalar};
use crate::term::{self, MultiDegree, Term};
use crate::word::LieWord;

pub use monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Deformed Leibniz rule with plain super-Jacobi.
    GenP,
    /// Deformed Leibniz rule with the D-deformed Jacobi identity.
    JB,
    /// Plain Leibniz rule, no Jacobi identity.
    GP,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::GenP => "genp",
            Theory::JB => "jb",
            Theory::GP => "gp",
        })
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Theory> {
        match s.to_ascii_lowercase().as_str() {
            "genp" => Ok(Theory::GenP),
            "jb" => Ok(Theory::JB),
            "gp" => Ok(Theory::GP),
            _ => Err(Error::Json(format!("unknown theory `{s}`"))),
        }
    }
}

pub(crate) type Poly = Lin<Monomial>;

/// A normal form: linear combination of basis monomials, tagged with the
/// theory it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    theory: Theory,
    terms: Poly,
}

impl Element {
    pub fn zero(theory: Theory) -> Element {
        Element {
            theory,
            terms: Lin::zero(),
        }
    }

    pub fn unit(theory: Theory) -> Element {
        Element::monomial(theory, Monomial::unit(), scalar::one())
    }

    pub fn monomial(theory: Theory, m: Monomial, c: Scalar) -> Element {
        Element {
            theory,
            terms: Lin::single(m, c),
        }
    }

    pub(crate) fn from_poly(theory: Theory, terms: Poly) -> Element {
        Element { theory, terms }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn terms(&self) -> &Lin<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.coeff(m)
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        Element::from_poly(self.theory, self.terms.scaled(c))
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        check(self.theory, other.theory)?;
        Ok(Element::from_poly(self.theory, &self.terms + &other.terms))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        check(self.theory, other.theory)?;
        Ok(Element::from_poly(self.theory, &self.terms - &other.terms))
    }

    /// Parity if every monomial shares it.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Multidegree if every monomial shares it.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(Monomial::multidegree);
        let first = it.next().unwrap_or_default();
        it.all(|d| d == first).then_some(first)
    }

    /// The same coefficients read in another theory.
    pub fn retagged(&self, theory: Theory) -> Element {
        Element::from_poly(theory, self.terms.clone())
    }

    pub fn to_term(&self) -> Term {
        term::lin(self.terms.iter().map(|(m, c)| (c.clone(), m.to_term())).collect())
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ElementDisplay<'a> {
        ElementDisplay { e: self, alphabet }
    }
}

fn check(expected: Theory, found: Theory) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::TheoryMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// Canonical text: `c m₁ m₂ …` terms joined by ` + `, coefficients as `p/q`,
/// factors ascending and repeated for exponents.
pub struct ElementDisplay<'a> {
    e: &'a Element,
    alphabet: &'a Alphabet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = &self.e.terms;
        if terms.is_zero() {
            return f.write_str("0");
        }
        if terms.len() == 1 {
            let (m, c) = terms.iter().next().expect("one term");
            if m.is_unit() && *c == scalar::one() {
                return f.write_str("1");
            }
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} {}", scalar::format(c), m.display(self.alphabet))?;
        }
        Ok(())
    }
}

/// Operations of one free algebra: an alphabet and a theory, with memo
/// tables for bracket expansions.
pub struct FreeAlgebra {
    alphabet: Arc<Alphabet>,
    theory: Theory,
    lie: LieBasis,
    unit_word: LieWord,
    atoms: DashMap<(LieWord, LieWord), Poly>,
    monos: DashMap<(Monomial, Monomial), Poly>,
}

impl FreeAlgebra {
    pub fn new(alphabet: Arc<Alphabet>, theory: Theory) -> FreeAlgebra {
        let unit_word = LieWord::gen(&alphabet, UNIT);
        FreeAlgebra {
            lie: LieBasis::new(alphabet.clone()),
            alphabet,
            theory,
            unit_word,
            atoms: DashMap::new(),
            monos: DashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn lie(&self) -> &LieBasis {
        &self.lie
    }

    fn own(&self, e: &Element) -> Result<()> {
        check(self.theory, e.theory)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.theory)
    }

    pub fn one(&self) -> Element {
        Element::unit(self.theory)
    }

    pub fn gen(&self, id: GenId) -> Element {
        self.elem(self.atom(&LieWord::gen(&self.alphabet, id)))
    }

    pub fn gen_named(&self, name: &str) -> Result<Element> {
        let id = self
            .alphabet
            .lookup(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(id))
    }

    pub fn word(&self, w: &LieWord) -> Element {
        self.elem(self.atom(w))
    }

    fn elem(&self, p: Poly) -> Element {
        Element::from_poly(self.theory, p)
    }

    fn atom(&self, w: &LieWord) -> Poly {
        Lin::single(Monomial::atom(w.clone()), scalar::one())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.elem(self.mul_p(&a.terms, &b.terms)))
    }

    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.elem(self.bracket_p(&a.terms, &b.terms)))
    }

    /// `D(a) = {a, 1}`.
    pub fn d_op(&self, a: &Element) -> Result<Element> {
        self.own(a)?;
        Ok(self.elem(self.d_p(&a.terms)))
    }

    pub(crate) fn mul_p(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Lin::zero();
        for (x, cx) in a {
            for (y, cy) in b {
                if let Some((m, odd)) = x.mul(y) {
                    let c = cx * cy;
                    out.add_term(m, if odd { -c } else { c });
                }
            }
        }
        out
    }

    pub(crate) fn bracket_p(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Lin::zero();
        for (x, cx) in a {
            for (y, cy) in b {
                out.add_scaled(&self.bracket_mono(x, y), &(cx * cy));
            }
        }
        out
    }

    pub(crate) fn d_p(&self, a: &Poly) -> Poly {
        self.bracket_p(a, &Lin::single(Monomial::unit(), scalar::one()))
    }

    fn bracket_mono(&self, a: &Monomial, b: &Monomial) -> Poly {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.monos.get(&key) {
            return hit.clone();
        }
        let out = self.bracket_mono_uncached(a, b);
        self.monos.insert(key, out.clone());
        out
    }

    fn bracket_mono_uncached(&self, a: &Monomial, b: &Monomial) -> Poly {
        let (Some(u), Some(v)) = (a.as_atom(&self.unit_word), b.as_atom(&self.unit_word)) else {
            if b.as_atom(&self.unit_word).is_none() {
                return self.leibniz_expand(a, b);
            }
            // {a,b} = -(-1)^{|a||b|} {b,a}
            let s = -scalar::sign(a.parity().times(b.parity()));
            return self.bracket_mono(b, a).scaled(&s);
        };
        self.bracket_atoms(&u, &v)
    }

    /// Expansion of `{a, e₁^{t₁}⋯eₙ^{tₙ}}` over the factors of a product.
    fn leibniz_expand(&self, a: &Monomial, b: &Monomial) -> Poly {
        let a_poly = Lin::single(a.clone(), scalar::one());
        let mut out = Lin::zero();
        let mut before = Parity::Even;
        for (k, (e, t)) in b.factors().iter().enumerate() {
            let sign = scalar::sign(e.parity().times(before));
            let rest = Lin::single(b.without_one(k), scalar::one());
            let ae = self.bracket_mono(a, &Monomial::atom(e.clone()));
            out.add_scaled(&self.mul_p(&ae, &rest), &(sign * scalar::int(*t as i64)));
            before = before + Parity::from_bit((*t % 2) as u8 * e.parity().bit());
        }
        if self.theory != Theory::GP {
            let n = b.degree_e() as i64;
            let da = self.d_p(&a_poly);
            let db = self.mul_p(&da, &Lin::single(b.clone(), scalar::one()));
            out.add_scaled(&db, &-scalar::int(n - 1));
        }
        out
    }

    fn bracket_atoms(&self, u: &LieWord, v: &LieWord) -> Poly {
        match self.theory {
            Theory::GenP => self.lie.bracket(u, v).map_linear(|w| self.atom(w)),
            Theory::GP => self.orient(u, v),
            Theory::JB => {
                let key = (u.clone(), v.clone());
                if let Some(hit) = self.atoms.get(&key) {
                    return hit.clone();
                }
                let out = self.jb_atoms(u, v);
                self.atoms.insert(key, out.clone());
                out
            }
        }
    }

    /// Generic Poisson brackets of words: orientation only, and `{a,1} = 0`.
    fn orient(&self, u: &LieWord, v: &LieWord) -> Poly {
        use std::cmp::Ordering::*;
        if u.is_unit() || v.is_unit() {
            return Lin::zero();
        }
        match u.cmp(v) {
            Equal if u.parity().is_odd() => self.atom(&LieWord::pair(u, u)),
            Equal => Lin::zero(),
            Less => self.orient(v, u).scaled(&-scalar::sign(u.parity().times(v.parity()))),
            Greater => self.atom(&LieWord::pair(u, v)),
        }
    }

    /// Jordan-bracket straightening: the Lie case split, with the three
    /// D-terms of the deformed Jacobi identity added at every rewrite.
    fn jb_atoms(&self, u: &LieWord, v: &LieWord) -> Poly {
        use std::cmp::Ordering::*;
        let two = scalar::int(2);
        match u.cmp(v) {
            Equal if u.parity().is_odd() => self.atom(&LieWord::pair(u, u)),
            Equal => Lin::zero(),
            Less => self
                .bracket_atoms(v, u)
                .scaled(&-scalar::sign(u.parity().times(v.parity()))),
            Greater => {
                if let Some(s) = v.square_root() {
                    // {u,{s,s}} = 2{{u,s},s} + T(u,s,s)
                    let us = self.bracket_atoms(u, s);
                    let mut out = self.bracket_p(&us, &self.atom(s)).scaled(&two);
                    out += &self.jacobi_defect_terms(u, s, s);
                    return out;
                }
                let Some((u1, u2)) = u.children() else {
                    return self.atom(&LieWord::pair(u, v));
                };
                if u1 == u2 {
                    let s = u1;
                    if s == v {
                        // 3{{s,s},s} = -T(s,s,s)
                        return self.jacobi_defect_terms(s, s, s).scaled(&scalar::ratio(-1, 3));
                    }
                    // {{s,s},v} = 2{s,{s,v}} - T(s,s,v)
                    let sv = self.bracket_atoms(s, v);
                    let mut out = self.bracket_p(&self.atom(s), &sv).scaled(&two);
                    out.add_scaled(&self.jacobi_defect_terms(s, s, v), &-scalar::one());
                    return out;
                }
                if u2 <= v {
                    return self.atom(&LieWord::pair(u, v));
                }
                // {{a,b},c} = {a,{b,c}} + (-1)^{|b||c|} ({{a,c},b} + T(a,c,b))
                let mut out = self.bracket_p(&self.atom(u1), &self.bracket_atoms(u2, v));
                let mut tail = self.bracket_p(&self.bracket_atoms(u1, v), &self.atom(u2));
                tail += &self.jacobi_defect_terms(u1, v, u2);
                out.add_scaled(&tail, &scalar::sign(u2.parity().times(v.parity())));
                out
            }
        }
    }

    /// `D(a){b,c} + (-1)^{|a||bc|} D(b){c,a} + (-1)^{|c||ab|} D(c){a,b}`.
    fn jacobi_defect_terms(&self, a: &LieWord, b: &LieWord, c: &LieWord) -> Poly {
        let (pa, pb, pc) = (a.parity(), b.parity(), c.parity());
        let (a, b, c) = (self.atom(a), self.atom(b), self.atom(c));
        let term = |x: &Poly, y: &Poly, z: &Poly| self.mul_p(&self.d_p(x), &self.bracket_p(y, z));
        let mut out = term(&a, &b, &c);
        out.add_scaled(&term(&b, &c, &a), &scalar::sign(pa.times(pb + pc)));
        out.add_scaled(&term(&c, &a, &b), &scalar::sign(pc.times(pa + pb)));
        out
    }

    /// Evaluates a term without variables.
    pub fn normal_form(&self, t: &Term) -> Result<Element> {
        self.substitute(t, &HashMap::new())
    }

    /// Evaluates a term, replacing `Var` leaves by the bound elements.
    pub fn substitute(&self, t: &Term, bindings: &HashMap<String, Element>) -> Result<Element> {
        for e in bindings.values() {
            self.own(e)?;
        }
        Ok(self.elem(self.eval_p(t, bindings)?))
    }

    fn eval_p(&self, t: &Term, bindings: &HashMap<String, Element>) -> Result<Poly> {
        Ok(match t {
            Term::Gen(g) => self.atom(&LieWord::gen(&self.alphabet, *g)),
            Term::Var(v) => bindings
                .get(v)
                .ok_or_else(|| Error::Unbound(v.clone()))?
                .terms
                .clone(),
            Term::Prod(a, b) => self.mul_p(&self.eval_p(a, bindings)?, &self.eval_p(b, bindings)?),
            Term::Bracket(a, b) => {
                self.bracket_p(&self.eval_p(a, bindings)?, &self.eval_p(b, bindings)?)
            }
            Term::Sum(ts) => {
                let mut out = Lin::zero();
                for (c, t) in ts {
                    out.add_scaled(&self.eval_p(t, bindings)?, c);
                }
                out
            }
        })
    }

    /// `{a,b}_D = {a,b} + ½(a D(b) − D(a) b)`, with `D_D = ½D`.
    pub fn d_twist_bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        check(Theory::JB, self.theory)?;
        let d = |x: &Element| self.d_op(x);
        twist_bracket(a, b, |x, y| self.bracket(x, y), d, |x, y| self.mul(x, y))
    }

    /// `{a,b} − (a D(b) − D(a) b)`, which satisfies the generalized Poisson
    /// identities with derivation `2D`. The half twist above keeps the
    /// deformed Leibniz rule but not the Jacobi identity.
    pub fn genp_twist_bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        check(Theory::JB, self.theory)?;
        let adb = self.mul(a, &self.d_op(b)?)?;
        let dab = self.mul(&self.d_op(a)?, b)?;
        self.bracket(a, b)?.sub(&adb.sub(&dab)?)
    }

    /// `{a,b} − (a E(b) − E(a) b)`, inverse of the half twist: feeding the
    /// result to it with `D = 2E` gives back `{a,b}`.
    pub fn untwist_bracket(
        &self,
        a: &Element,
        b: &Element,
        e: &dyn Fn(&Element) -> Result<Element>,
    ) -> Result<Element> {
        self.check_derivation(e)?;
        let aeb = self.mul(a, &e(b)?)?;
        let eab = self.mul(&e(a)?, b)?;
        self.bracket(a, b)?.sub(&aeb.sub(&eab)?)
    }

    /// Spot-checks `E(xy) = E(x)y + xE(y)` on generator pairs and `E(1) = 0`.
    pub fn check_derivation(&self, e: &dyn Fn(&Element) -> Result<Element>) -> Result<()> {
        if !e(&self.one())?.is_zero() {
            return Err(Error::NotADerivation("E(1) is not zero".into()));
        }
        let gens: Vec<GenId> = self.alphabet.letters().map(|g| g.id).collect();
        for &x in &gens {
            for &y in &gens {
                let (gx, gy) = (self.gen(x), self.gen(y));
                let lhs = e(&self.mul(&gx, &gy)?)?;
                let rhs = self.mul(&e(&gx)?, &gy)?.add(&self.mul(&gx, &e(&gy)?)?)?;
                if lhs != rhs {
                    return Err(Error::NotADerivation(format!(
                        "fails on ({}, {})",
                        self.alphabet.name(x),
                        self.alphabet.name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// All basis monomials of multidegree `d`, ascending. Unit occurrences are
    /// counted; the zero degree yields the unit.
    pub fn enumerate_basis(&self, d: &MultiDegree) -> Vec<Monomial> {
        if d.is_zero() {
            return vec![Monomial::unit()];
        }
        let mut candidates: Vec<(LieWord, MultiDegree)> = Vec::new();
        for sub in d.sub_degrees() {
            for w in self.atoms_of_degree(&sub) {
                if !w.is_unit() {
                    candidates.push((w, sub.clone()));
                }
            }
        }
        candidates.sort();
        let mut out = Vec::new();
        let mut current = Vec::new();
        collect_products(&candidates, 0, d, &mut current, &mut out);
        out.sort();
        out
    }

    /// Basis words of one multidegree: `M` for GenP/JB, oriented words for GP.
    pub fn atoms_of_degree(&self, d: &MultiDegree) -> Vec<LieWord> {
        match self.theory {
            Theory::GenP | Theory::JB => self
                .lie
                .enumerate(d)
                .into_iter()
                .map(|m| m.into_word())
                .collect(),
            Theory::GP => oriented_words(&self.alphabet, d),
        }
    }
}

fn collect_products(
    cands: &[(LieWord, MultiDegree)],
    start: usize,
    remaining: &MultiDegree,
    current: &mut Vec<(LieWord, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining.is_zero() {
        out.push(Monomial::from_factors(current.clone()));
        return;
    }
    for j in start..cands.len() {
        let (w, deg) = &cands[j];
        let mut rest = remaining.clone();
        let mut k = 0;
        while let Some(r) = rest.checked_sub(deg) {
            k += 1;
            rest = r;
            current.push((w.clone(), k));
            collect_products(cands, j + 1, &rest, current, out);
            current.pop();
            if w.parity().is_odd() {
                break;
            }
        }
    }
}

/// Oriented anticommutative words of multidegree `d`, unit excluded.
pub fn oriented_words(alphabet: &Alphabet, d: &MultiDegree) -> Vec<LieWord> {
    fn go(alphabet: &Alphabet, d: &MultiDegree, memo: &mut HashMap<MultiDegree, Vec<LieWord>>) -> Vec<LieWord> {
        if let Some(hit) = memo.get(d) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if d.get(UNIT) == 0 {
            if d.total() == 1 {
                let id = d.counts().iter().position(|&c| c == 1).expect("degree one") as GenId;
                out.push(LieWord::gen(alphabet, id));
            } else {
                for d1 in d.sub_degrees() {
                    let d2 = d.checked_sub(&d1).expect("sub-degree");
                    if d2.is_zero() {
                        continue;
                    }
                    let left = go(alphabet, &d1, memo);
                    let right = go(alphabet, &d2, memo);
                    for u in &left {
                        for v in &right {
                            if u > v || (u == v && u.parity().is_odd()) {
                                out.push(LieWord::pair(u, v));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        memo.insert(d.clone(), out.clone());
        out
    }
    go(alphabet, d, &mut HashMap::new())
}

/// `{a,b} + ½(a D(b) − D(a) b)` for any bracket, derivation and product.
pub fn twist_bracket<E>(
    a: &E,
    b: &E,
    bracket: impl Fn(&E, &E) -> Result<Element>,
    d: impl Fn(&E) -> Result<E>,
    mul: impl Fn(&E, &E) -> Result<Element>,
) -> Result<Element> {
    let adb = mul(a, &d(b)?)?;
    let dab = mul(&d(a)?, b)?;
    bracket(a, b)?.add(&adb.sub(&dab)?.scaled(&scalar::ratio(1, 2)))
}

/// `dim` of the multilinear component with the unit and `n` even letters.
pub fn dim_multilinear(n: usize, theory: Theory) -> usize {
    let alg = FreeAlgebra::new(Arc::new(Alphabet::even(n)), theory);
    alg.enumerate_basis(&MultiDegree::multilinear_with_unit(n)).len()
}
