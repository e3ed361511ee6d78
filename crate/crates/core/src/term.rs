//! Raw term trees over the two multiplications, before any reduction.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Alphabet, GenId, Parity, UNIT};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Gen(GenId),
    /// Identity variable; only meaningful where bindings are supplied.
    Var(String),
    Prod(Box<Term>, Box<Term>),
    Bracket(Box<Term>, Box<Term>),
    Sum(Vec<(Scalar, Term)>),
}

pub fn gen(id: GenId) -> Term {
    Term::Gen(id)
}

pub fn unit() -> Term {
    Term::Gen(UNIT)
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn prod(a: Term, b: Term) -> Term {
    Term::Prod(Box::new(a), Box::new(b))
}

/// Left-associated product of several factors.
pub fn prods(factors: impl IntoIterator<Item = Term>) -> Term {
    let mut it = factors.into_iter();
    let first = it.next().unwrap_or_else(unit);
    it.fold(first, prod)
}

pub fn br(a: Term, b: Term) -> Term {
    Term::Bracket(Box::new(a), Box::new(b))
}

/// `D(a) = {a, 1}`.
pub fn d(a: Term) -> Term {
    br(a, unit())
}

pub fn lin(terms: Vec<(Scalar, Term)>) -> Term {
    Term::Sum(terms)
}

pub fn scaled(c: Scalar, t: Term) -> Term {
    Term::Sum(vec![(c, t)])
}

pub fn sub(a: Term, b: Term) -> Term {
    Term::Sum(vec![(scalar::one(), a), (-scalar::one(), b)])
}

pub fn zero() -> Term {
    Term::Sum(Vec::new())
}

/// Occurrence counts per generator, the unit included. Trailing zeros are trimmed
/// so that equal degrees compare equal regardless of alphabet size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(mut counts: Vec<u32>) -> MultiDegree {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        MultiDegree(counts)
    }

    pub fn single(id: GenId) -> MultiDegree {
        let mut v = vec![0; id as usize + 1];
        v[id as usize] = 1;
        MultiDegree(v)
    }

    /// `(1:1, x1:1, …, xn:1)`.
    pub fn multilinear_with_unit(n: usize) -> MultiDegree {
        MultiDegree(vec![1; n + 1])
    }

    /// `(x1:1, …, xn:1)` with no unit.
    pub fn multilinear(n: usize) -> MultiDegree {
        let mut v = vec![1; n + 1];
        v[0] = 0;
        MultiDegree::new(v)
    }

    pub fn get(&self, id: GenId) -> u32 {
        self.0.get(id as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        let n = self.0.len().max(other.0.len());
        MultiDegree::new((0..n).map(|i| self.get(i as GenId) + other.get(i as GenId)).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if other.0.len() > self.0.len() && other.0[self.0.len()..].iter().any(|&c| c > 0) {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            out.push(self.0[i].checked_sub(other.get(i as GenId))?);
        }
        Some(MultiDegree::new(out))
    }

    pub fn le(&self, other: &MultiDegree) -> bool {
        other.checked_sub(self).is_some()
    }

    pub fn parity(&self, alphabet: &Alphabet) -> Parity {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| Parity::from_bit((c % 2) as u8 * alphabet.parity(i as GenId).bit()))
            .sum()
    }

    /// All nonzero `d <= self`, in a fixed order.
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=c).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(MultiDegree::new)
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, c)| format!("{}:{}", alphabet.name(i as GenId), c))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl Term {
    /// Sum of generator parities; sums report the parity of their first term.
    pub fn parity(&self, alphabet: &Alphabet) -> Result<Parity> {
        Ok(match self {
            Term::Gen(g) => alphabet.parity(*g),
            Term::Var(v) => return Err(Error::UndefinedParity(v.clone())),
            Term::Prod(a, b) | Term::Bracket(a, b) => a.parity(alphabet)? + b.parity(alphabet)?,
            Term::Sum(ts) => match ts.first() {
                Some((_, t)) => t.parity(alphabet)?,
                None => Parity::Even,
            },
        })
    }

    /// Generator occurrence counts. Variables are not counted; sums report the
    /// degree of their first term.
    pub fn multidegree(&self) -> MultiDegree {
        fn walk(t: &Term, acc: &mut Vec<u32>) {
            match t {
                Term::Gen(g) => {
                    let i = *g as usize;
                    if acc.len() <= i {
                        acc.resize(i + 1, 0);
                    }
                    acc[i] += 1;
                }
                Term::Var(_) => {}
                Term::Prod(a, b) | Term::Bracket(a, b) => {
                    walk(a, acc);
                    walk(b, acc);
                }
                Term::Sum(ts) => {
                    if let Some((_, t)) = ts.first() {
                        walk(t, acc);
                    }
                }
            }
        }
        let mut acc = Vec::new();
        walk(self, &mut acc);
        MultiDegree::new(acc)
    }

    /// Occurrences of each variable along every path; sums take the maximum.
    pub fn var_degrees(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        match self {
            Term::Var(v) => {
                out.insert(v.clone(), 1);
            }
            Term::Gen(_) => {}
            Term::Prod(a, b) | Term::Bracket(a, b) => {
                out = a.var_degrees();
                for (k, v) in b.var_degrees() {
                    *out.entry(k).or_insert(0) += v;
                }
            }
            Term::Sum(ts) => {
                for (_, t) in ts {
                    for (k, v) in t.var_degrees() {
                        let e = out.entry(k).or_insert(0);
                        *e = (*e).max(v);
                    }
                }
            }
        }
        out
    }

    /// Degree in `x` if every summand agrees; `Ok(None)` for the zero term.
    pub fn homogeneous_degree(&self, x: &str) -> Result<Option<usize>> {
        Ok(match self {
            Term::Var(v) => Some(usize::from(v == x)),
            Term::Gen(_) => Some(0),
            Term::Prod(a, b) | Term::Bracket(a, b) => {
                match (a.homogeneous_degree(x)?, b.homogeneous_degree(x)?) {
                    (Some(m), Some(n)) => Some(m + n),
                    _ => None,
                }
            }
            Term::Sum(ts) => {
                let mut deg = None;
                for (c, t) in ts {
                    if c == &scalar::zero() {
                        continue;
                    }
                    match (deg, t.homogeneous_degree(x)?) {
                        (_, None) => {}
                        (None, d) => deg = d,
                        (Some(a), Some(b)) if a != b => {
                            return Err(Error::NotMultilinearizable(format!(
                                "`{x}` occurs with degrees {a} and {b}"
                            )))
                        }
                        _ => {}
                    }
                }
                deg
            }
        })
    }

    /// Full linearization in every variable: a variable of degree `k` is
    /// split into `x_1 … x_k` via `Σ_S (−1)^{k−|S|} t(Σ_{i∈S} x_i)`, which
    /// over ℚ is the sum over all ways to give each occurrence its own
    /// variable. Returns the new term and its variables.
    pub fn multilinearize(&self) -> Result<(Term, Vec<String>)> {
        let mut t = self.clone();
        let mut vars = Vec::new();
        for x in self.var_degrees().keys() {
            let k = match t.homogeneous_degree(x)? {
                Some(k) => k,
                None => continue,
            };
            if k <= 1 {
                vars.push(x.clone());
                continue;
            }
            let fresh: Vec<String> = (1..=k).map(|i| format!("{x}_{i}")).collect();
            let mut parts = Vec::new();
            for subset in 1u32..(1 << k) {
                let chosen: Vec<Term> = (0..k)
                    .filter(|i| subset >> i & 1 == 1)
                    .map(|i| var(&fresh[i]))
                    .collect();
                let sign = scalar::sign((k - chosen.len()) % 2 == 1);
                let sum = Term::Sum(chosen.into_iter().map(|v| (scalar::one(), v)).collect());
                parts.push((sign, t.replace_vars(&|v| (v == x).then(|| sum.clone()))));
            }
            t = Term::Sum(parts);
            vars.extend(fresh);
        }
        Ok((t, vars))
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Gen(_) => false,
            Term::Prod(a, b) | Term::Bracket(a, b) => a.has_vars() || b.has_vars(),
            Term::Sum(ts) => ts.iter().any(|(_, t)| t.has_vars()),
        }
    }

    /// Replaces every `Var(name)` with `f(name)` when it returns `Some`.
    pub fn replace_vars(&self, f: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Term::Gen(_) => self.clone(),
            Term::Prod(a, b) => prod(a.replace_vars(f), b.replace_vars(f)),
            Term::Bracket(a, b) => br(a.replace_vars(f), b.replace_vars(f)),
            Term::Sum(ts) => Term::Sum(ts.iter().map(|(c, t)| (c.clone(), t.replace_vars(f))).collect()),
        }
    }

    /// Replaces generator leaves.
    pub fn replace_gens(&self, f: &dyn Fn(GenId) -> Option<Term>) -> Term {
        match self {
            Term::Gen(g) => f(*g).unwrap_or_else(|| self.clone()),
            Term::Var(_) => self.clone(),
            Term::Prod(a, b) => prod(a.replace_gens(f), b.replace_gens(f)),
            Term::Bracket(a, b) => br(a.replace_gens(f), b.replace_gens(f)),
            Term::Sum(ts) => Term::Sum(ts.iter().map(|(c, t)| (c.clone(), t.replace_gens(f))).collect()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> TermDisplay<'a> {
        TermDisplay { term: self, alphabet }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    alphabet: &'a Alphabet,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, a: &Alphabet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Gen(g) => f.write_str(a.name(*g)),
                Term::Var(v) => write!(f, "?{v}"),
                Term::Prod(x, y) => {
                    f.write_str("(")?;
                    go(x, a, f)?;
                    f.write_str(" ")?;
                    go(y, a, f)?;
                    f.write_str(")")
                }
                Term::Bracket(x, y) => {
                    f.write_str("{")?;
                    go(x, a, f)?;
                    f.write_str(",")?;
                    go(y, a, f)?;
                    f.write_str("}")
                }
                Term::Sum(ts) => {
                    if ts.is_empty() {
                        return f.write_str("0");
                    }
                    f.write_str("(")?;
                    for (i, (c, t)) in ts.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" + ")?;
                        }
                        write!(f, "{} ", scalar::format(c))?;
                        go(t, a, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        go(self.term, self.alphabet, f)
    }
}
