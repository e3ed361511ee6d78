//! Binary bracket words over the alphabet, shared by the Lie basis and the
//! generic Poisson atoms.
//!
//! Words are ordered length-first; words of equal length compare their
//! left factors, then their right factors. Leaves compare by generator index,
//! so the unit is the smallest word.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::alphabet::{Alphabet, GenId, Parity, UNIT};
use crate::term::{self, MultiDegree, Term};

#[derive(Clone)]
pub struct LieWord(Arc<Node>);

struct Node {
    shape: Shape,
    len: u32,
    parity: Parity,
    hash: u64,
}

enum Shape {
    Leaf(GenId),
    Pair(LieWord, LieWord),
}

impl LieWord {
    pub fn leaf(id: GenId, parity: Parity) -> LieWord {
        let mut h = DefaultHasher::new();
        (0u8, id).hash(&mut h);
        LieWord(Arc::new(Node {
            shape: Shape::Leaf(id),
            len: 1,
            parity,
            hash: h.finish(),
        }))
    }

    pub fn gen(alphabet: &Alphabet, id: GenId) -> LieWord {
        LieWord::leaf(id, alphabet.parity(id))
    }

    /// `{u, v}` with no orientation or goodness check.
    pub fn pair(u: &LieWord, v: &LieWord) -> LieWord {
        let mut h = DefaultHasher::new();
        (1u8, u.0.hash, v.0.hash).hash(&mut h);
        LieWord(Arc::new(Node {
            shape: Shape::Pair(u.clone(), v.clone()),
            len: u.0.len + v.0.len,
            parity: u.0.parity + v.0.parity,
            hash: h.finish(),
        }))
    }

    pub fn len(&self) -> usize {
        self.0.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parity(&self) -> Parity {
        self.0.parity
    }

    pub fn as_leaf(&self) -> Option<GenId> {
        match self.0.shape {
            Shape::Leaf(g) => Some(g),
            Shape::Pair(..) => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_leaf() == Some(UNIT)
    }

    pub fn children(&self) -> Option<(&LieWord, &LieWord)> {
        match &self.0.shape {
            Shape::Leaf(_) => None,
            Shape::Pair(u, v) => Some((u, v)),
        }
    }

    /// `Some(v)` when the word is `{v, v}`.
    pub fn square_root(&self) -> Option<&LieWord> {
        self.children().filter(|(u, v)| u == v).map(|(u, _)| u)
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut acc = Vec::new();
        self.count_into(&mut acc);
        MultiDegree::new(acc)
    }

    fn count_into(&self, acc: &mut Vec<u32>) {
        match &self.0.shape {
            Shape::Leaf(g) => {
                let i = *g as usize;
                if acc.len() <= i {
                    acc.resize(i + 1, 0);
                }
                acc[i] += 1;
            }
            Shape::Pair(u, v) => {
                u.count_into(acc);
                v.count_into(acc);
            }
        }
    }

    pub fn contains(&self, g: GenId) -> bool {
        match &self.0.shape {
            Shape::Leaf(h) => *h == g,
            Shape::Pair(u, v) => u.contains(g) || v.contains(g),
        }
    }

    pub fn leaves(&self) -> Vec<GenId> {
        match &self.0.shape {
            Shape::Leaf(g) => vec![*g],
            Shape::Pair(u, v) => {
                let mut l = u.leaves();
                l.extend(v.leaves());
                l
            }
        }
    }

    pub fn to_term(&self) -> Term {
        match &self.0.shape {
            Shape::Leaf(g) => term::gen(*g),
            Shape::Pair(u, v) => term::br(u.to_term(), v.to_term()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

impl PartialEq for LieWord {
    fn eq(&self, other: &LieWord) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.len != other.0.len {
            return false;
        }
        match (&self.0.shape, &other.0.shape) {
            (Shape::Leaf(a), Shape::Leaf(b)) => a == b,
            (Shape::Pair(a, b), Shape::Pair(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for LieWord {}

impl Hash for LieWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl Ord for LieWord {
    fn cmp(&self, other: &LieWord) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.len.cmp(&other.0.len).then_with(|| match (&self.0.shape, &other.0.shape) {
            (Shape::Leaf(a), Shape::Leaf(b)) => a.cmp(b),
            (Shape::Pair(a, b), Shape::Pair(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            (Shape::Leaf(_), Shape::Pair(..)) => Ordering::Less,
            (Shape::Pair(..), Shape::Leaf(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for LieWord {
    fn partial_cmp(&self, other: &LieWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.shape {
            Shape::Leaf(g) => write!(f, "g{g}"),
            Shape::Pair(u, v) => write!(f, "{{{u:?},{v:?}}}"),
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a LieWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word.0.shape {
            Shape::Leaf(g) => f.write_str(self.alphabet.name(*g)),
            Shape::Pair(u, v) => write!(
                f,
                "{{{},{}}}",
                u.display(self.alphabet),
                v.display(self.alphabet)
            ),
        }
    }
}
