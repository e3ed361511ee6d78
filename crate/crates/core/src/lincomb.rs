//! Sparse linear combinations with exact coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// Finite map `K → ℚ` with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Lin::default()
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut l = Lin::zero();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Lin<K> {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<L>) -> Lin<L> {
        let mut out = Lin::zero();
        for (k, c) in &self.0 {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

impl<'a, K: Ord> IntoIterator for &'a Lin<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&Lin<K>> for Lin<K> {
    fn add_assign(&mut self, rhs: &Lin<K>) {
        for (k, v) in &rhs.0 {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> Add for &Lin<K> {
    type Output = Lin<K>;
    fn add(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &Lin<K> {
    type Output = Lin<K>;
    fn sub(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::from_integer(1.into()));
        out
    }
}

impl<K: Ord + Clone> Neg for &Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        Lin(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn zero_coefficients_vanish() {
        let mut l = Lin::single("a", int(2));
        l.add_term("a", int(-2));
        assert!(l.is_zero());
        l.add_term("b", int(0));
        assert!(l.is_zero());
        let x: Lin<&str> = [("a", int(1)), ("b", int(3))].into_iter().collect();
        assert_eq!((&x - &x).len(), 0);
        assert_eq!(x.scaled(&int(2)).coeff(&"b"), int(6));
    }
}
