//! The good-word basis `M` of the free Lie superalgebra and Jacobi-only
//! straightening of brackets into it.
//!
//! A good word is a generator, or `{u, v}` with `u`, `v` good, `u > v`, and
//! `u₂ ≤ v` whenever `u = {u₁, u₂}`. `M` adds the squares `{v, v}` of odd good
//! words. Even squares vanish.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use dashmap::DashMap;

use crate::alphabet::{Alphabet, GenId};
use crate::lincomb::Lin;
use crate::scalar::{self, Scalar};
use crate::term::MultiDegree;
use crate::word::LieWord;

/// Linear combination of `M` elements.
pub type LieCombination = Lin<LieWord>;

pub fn is_good(w: &LieWord) -> bool {
    match w.children() {
        None => true,
        Some((u, v)) => {
            u > v && u.children().is_none_or(|(_, u2)| u2 <= v) && is_good(u) && is_good(v)
        }
    }
}

/// Good words and squares of odd good words.
pub fn is_m_element(w: &LieWord) -> bool {
    match w.square_root() {
        Some(v) => v.parity().is_odd() && is_good(v),
        None => is_good(w),
    }
}

/// A word known to lie in `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MElement(LieWord);

impl MElement {
    pub fn new(w: LieWord) -> Option<MElement> {
        is_m_element(&w).then_some(MElement(w))
    }

    pub fn word(&self) -> &LieWord {
        &self.0
    }

    pub fn into_word(self) -> LieWord {
        self.0
    }
}

/// Straightening and enumeration over a fixed alphabet. Results are memoized;
/// the caches never change what is returned.
pub struct LieBasis {
    alphabet: Arc<Alphabet>,
    brackets: DashMap<(LieWord, LieWord), LieCombination>,
    good: Mutex<HashMap<MultiDegree, Arc<Vec<LieWord>>>>,
}

impl LieBasis {
    pub fn new(alphabet: Arc<Alphabet>) -> LieBasis {
        LieBasis {
            alphabet,
            brackets: DashMap::new(),
            good: Mutex::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn gen(&self, id: GenId) -> LieWord {
        LieWord::gen(&self.alphabet, id)
    }

    /// Lie superbracket of two `M` elements, expanded in `M`.
    pub fn bracket(&self, u: &LieWord, v: &LieWord) -> LieCombination {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.brackets.get(&key) {
            return hit.clone();
        }
        let out = self.bracket_uncached(u, v);
        self.brackets.insert(key, out.clone());
        out
    }

    fn bracket_uncached(&self, u: &LieWord, v: &LieWord) -> LieCombination {
        use std::cmp::Ordering::*;
        match u.cmp(v) {
            Equal => {
                if u.parity().is_odd() {
                    Lin::single(LieWord::pair(u, u), scalar::one())
                } else {
                    Lin::zero()
                }
            }
            // {u,v} = -(-1)^{|u||v|} {v,u}
            Less => self.bracket(v, u).scaled(&-scalar::sign(u.parity().times(v.parity()))),
            Greater => {
                if let Some(s) = v.square_root() {
                    // {u,{s,s}} = 2{{u,s},s}
                    let us = self.bracket(u, s);
                    return self.bracket_comb_word(&us, s).scaled(&scalar::int(2));
                }
                let Some((u1, u2)) = u.children() else {
                    return Lin::single(LieWord::pair(u, v), scalar::one());
                };
                if u1 == u2 {
                    if u1 == v {
                        // Jacobi gives 3{{s,s},s} = 0
                        return Lin::zero();
                    }
                    // {{s,s},v} = 2{s,{s,v}}
                    let sv = self.bracket(u1, v);
                    return self.bracket_word_comb(u1, &sv).scaled(&scalar::int(2));
                }
                if u2 <= v {
                    return Lin::single(LieWord::pair(u, v), scalar::one());
                }
                // {{u1,u2},v} = {u1,{u2,v}} + (-1)^{|u2||v|} {{u1,v},u2}
                let mut out = self.bracket_word_comb(u1, &self.bracket(u2, v));
                let left = self.bracket_comb_word(&self.bracket(u1, v), u2);
                out.add_scaled(&left, &scalar::sign(u2.parity().times(v.parity())));
                out
            }
        }
    }

    pub fn bracket_word_comb(&self, u: &LieWord, c: &LieCombination) -> LieCombination {
        c.map_linear(|w| self.bracket(u, w))
    }

    pub fn bracket_comb_word(&self, c: &LieCombination, v: &LieWord) -> LieCombination {
        c.map_linear(|w| self.bracket(w, v))
    }

    pub fn bracket_comb(&self, a: &LieCombination, b: &LieCombination) -> LieCombination {
        let mut out = Lin::zero();
        for (u, cu) in a {
            for (v, cv) in b {
                out.add_scaled(&self.bracket(u, v), &(cu * cv));
            }
        }
        out
    }

    /// Expands an arbitrary bracket word into `M`.
    pub fn straighten(&self, w: &LieWord) -> LieCombination {
        match w.children() {
            None => Lin::single(w.clone(), scalar::one()),
            Some((u, v)) => self.bracket_comb(&self.straighten(u), &self.straighten(v)),
        }
    }

    fn good_words(&self, d: &MultiDegree) -> Arc<Vec<LieWord>> {
        if let Some(hit) = self.good.lock().expect("poisoned").get(d) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let counts = d.counts();
        if d.total() == 1 {
            let id = counts.iter().position(|&c| c == 1).expect("degree one") as GenId;
            out.push(self.gen(id));
        } else if d.total() > 1 {
            for d1 in d.sub_degrees() {
                let d2 = d.checked_sub(&d1).expect("sub-degree");
                if d2.is_zero() {
                    continue;
                }
                let left = self.good_words(&d1);
                let right = self.good_words(&d2);
                for u in left.iter() {
                    for v in right.iter() {
                        if u > v && u.children().is_none_or(|(_, u2)| u2 <= v) {
                            out.push(LieWord::pair(u, v));
                        }
                    }
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.good.lock().expect("poisoned").insert(d.clone(), out.clone());
        out
    }

    /// All `M` elements of multidegree `d`, ascending.
    pub fn enumerate(&self, d: &MultiDegree) -> Vec<MElement> {
        let mut out: Vec<LieWord> = self.good_words(d).as_ref().clone();
        if d.counts().iter().all(|c| c % 2 == 0) && !d.is_zero() {
            let half = MultiDegree::new(d.counts().iter().map(|c| c / 2).collect());
            out.extend(
                self.good_words(&half)
                    .iter()
                    .filter(|v| v.parity().is_odd())
                    .map(|v| LieWord::pair(v, v)),
            );
        }
        out.sort();
        out.into_iter().map(MElement).collect()
    }
}

/// Sign-free helper for callers that need `(-1)^{|a||b|}` on words.
pub fn swap_sign(u: &LieWord, v: &LieWord) -> Scalar {
    scalar::sign(u.parity().times(v.parity()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Parity;
    use crate::scalar::int;

    fn basis(decl: &str) -> LieBasis {
        LieBasis::new(Arc::new(Alphabet::parse_list(decl).unwrap()))
    }

    #[test]
    fn good_word_examples() {
        let b = basis("x1,x2,x3");
        let g = |i| b.gen(i);
        assert!(is_good(&g(1)));
        assert!(is_good(&LieWord::pair(&g(2), &g(1))));
        assert!(!is_good(&LieWord::pair(&g(1), &g(2))));
        // {{x2,x1},1}: x1 > 1 violates u2 <= v
        assert!(!is_good(&LieWord::pair(&LieWord::pair(&g(2), &g(1)), &g(0))));
    }

    #[test]
    fn bracket_examples() {
        let b = basis("x1,x2,x3");
        let g = |i| b.gen(i);
        let p = LieWord::pair;
        assert_eq!(b.bracket(&g(1), &g(2)), Lin::single(p(&g(2), &g(1)), int(-1)));
        let x21 = p(&g(2), &g(1));
        assert_eq!(b.bracket(&x21, &g(1)), Lin::single(p(&x21, &g(1)), int(1)));
        let x32 = p(&g(3), &g(2));
        let expect: LieCombination = [
            (p(&p(&g(3), &g(1)), &g(2)), int(1)),
            (p(&p(&g(2), &g(1)), &g(3)), int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(b.bracket(&x32, &g(1)), expect);
    }

    #[test]
    fn odd_square_is_kept() {
        let b = basis("t:odd");
        let t = b.gen(1);
        assert_eq!(t.parity(), Parity::Odd);
        let sq = LieWord::pair(&t, &t);
        assert_eq!(b.bracket(&t, &t), Lin::single(sq.clone(), int(1)));
        assert!(is_m_element(&sq));
        // {t,{t,t}} = 0 in characteristic zero
        assert!(b.bracket(&t, &sq).is_zero());
    }

    #[test]
    fn enumerate_examples() {
        let b = basis("x1,x2,x3");
        assert_eq!(b.enumerate(&MultiDegree::new(vec![0, 1, 1])).len(), 1);
        assert_eq!(b.enumerate(&MultiDegree::new(vec![0, 1, 1, 1])).len(), 2);
        let e = b.enumerate(&MultiDegree::new(vec![1, 1]));
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].word().display(b.alphabet()).to_string(), "{x1,1}");
    }
}
