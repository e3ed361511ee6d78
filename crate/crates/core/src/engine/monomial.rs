use std::fmt;

use crate::alphabet::{Alphabet, Parity};
use crate::koszul;
use crate::term::{self, MultiDegree, Term};
use crate::word::LieWord;

/// Sorted product `e₁^{k₁} ⋯ eₙ^{kₙ}` of bracket words, ascending in the word
/// order. The empty product is the unit; the bare unit generator never
/// appears as a factor, and odd factors have exponent one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(LieWord, u32)>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    /// The monomial of a single word; the unit generator maps to the unit.
    pub fn atom(w: LieWord) -> Monomial {
        if w.is_unit() {
            Monomial::unit()
        } else {
            Monomial(vec![(w, 1)])
        }
    }

    /// Builds a monomial from already grouped, sorted factors.
    pub fn from_factors(factors: Vec<(LieWord, u32)>) -> Monomial {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(LieWord, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// The single word this monomial is, if it is one (the unit counts as the
    /// unit generator).
    pub fn as_atom(&self, unit: &LieWord) -> Option<LieWord> {
        match self.0.as_slice() {
            [] => Some(unit.clone()),
            [(w, 1)] => Some(w.clone()),
            _ => None,
        }
    }

    /// `deg_e`, the number of factors with multiplicity.
    pub fn degree_e(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn parity(&self) -> Parity {
        self.0
            .iter()
            .map(|(w, k)| Parity::from_bit((k % 2) as u8 * w.parity().bit()))
            .sum()
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.0.iter().fold(MultiDegree::default(), |acc, (w, k)| {
            (0..*k).fold(acc, |a, _| a.add(&w.multidegree()))
        })
    }

    /// Factors listed with repetition.
    pub fn flat(&self) -> Vec<LieWord> {
        self.0
            .iter()
            .flat_map(|(w, k)| std::iter::repeat_n(w.clone(), *k as usize))
            .collect()
    }

    /// Groups a sorted flat list; `None` if an odd factor repeats.
    pub fn from_sorted_flat(flat: Vec<LieWord>) -> Option<Monomial> {
        let mut out: Vec<(LieWord, u32)> = Vec::new();
        for w in flat {
            match out.last_mut() {
                Some((last, k)) if *last == w => {
                    if w.parity().is_odd() {
                        return None;
                    }
                    *k += 1;
                }
                _ => out.push((w, 1)),
            }
        }
        Some(Monomial(out))
    }

    /// Supercommutative product with its Koszul sign (`true` = negative);
    /// `None` when an odd factor would be squared.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut flat = self.flat();
        flat.extend(other.flat());
        let odd = koszul::sort_with_sign(&mut flat, |w| w.parity());
        Monomial::from_sorted_flat(flat).map(|m| (m, odd))
    }

    /// `self / e` with one copy of factor `index` removed.
    pub fn without_one(&self, index: usize) -> Monomial {
        let mut f = self.0.clone();
        if f[index].1 == 1 {
            f.remove(index);
        } else {
            f[index].1 -= 1;
        }
        Monomial(f)
    }

    pub fn to_term(&self) -> Term {
        if self.0.is_empty() {
            return term::unit();
        }
        term::prods(self.flat().iter().map(LieWord::to_term))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, alphabet }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    alphabet: &'a Alphabet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_unit() {
            return f.write_str("1");
        }
        for (i, w) in self.m.flat().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", w.display(self.alphabet))?;
        }
        Ok(())
    }
}
