//! Free generic Poisson superalgebras: plain Leibniz rule and
//! anticommutativity, no Jacobi identity. Brackets of words are only
//! oriented, so Jacobi defects survive and can be matched against the
//! Jordan criterion for Kantor doubles.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::alphabet::{Alphabet, Parity};
use crate::engine::{Element, FreeAlgebra, Monomial, Theory};
use crate::error::{Error, Result};
use crate::identities::{self, jacobi_defect_term};
use crate::linalg;
use crate::scalar::{self, Scalar};
use crate::term::{var, Term};

pub fn free_gp(alphabet: Arc<Alphabet>) -> FreeAlgebra {
    FreeAlgebra::new(alphabet, Theory::GP)
}

fn gp(alg: &FreeAlgebra) -> Result<()> {
    if alg.theory() == Theory::GP {
        Ok(())
    } else {
        Err(Error::TheoryMismatch {
            expected: Theory::GP.to_string(),
            found: alg.theory().to_string(),
        })
    }
}

pub fn gp_normal_form(alg: &FreeAlgebra, t: &Term) -> Result<Element> {
    gp(alg)?;
    alg.normal_form(t)
}

/// `{{a,b},c} − (−1)^{|b||c|}{{a,c},b} − {a,{b,c}}`.
pub fn jacobi_defect(alg: &FreeAlgebra, a: &Term, b: &Term, c: &Term) -> Result<Element> {
    gp(alg)?;
    let pb = b.parity(alg.alphabet())?;
    let pc = c.parity(alg.alphabet())?;
    alg.normal_form(&jacobi_defect_term(a.clone(), b.clone(), c.clone(), pb, pc))
}

fn parity_of(e: &Element, name: &str) -> Result<Parity> {
    e.parity().ok_or_else(|| Error::Inhomogeneous(name.to_string()))
}

/// Left side minus right side of jorskob identity `which` (1, 2 or 3) at
/// `f, g, h, k`.
pub fn jorskob_residual(alg: &FreeAlgebra, which: u8, fghk: [&Element; 4]) -> Result<Element> {
    let id = match which {
        1 => identities::JORSKOB1,
        2 => identities::JORSKOB2,
        3 => identities::JORSKOB3,
        _ => return Err(Error::Json(format!("no jorskob identity {which}"))),
    };
    let mut parities = Vec::new();
    let mut bindings = HashMap::new();
    for (name, e) in id.vars.iter().zip(fghk) {
        parities.push(parity_of(e, name)?);
        bindings.insert(name.to_string(), e.clone());
    }
    alg.substitute(&id.term(&parities), &bindings)
}

/// `jacobi_defect(x_a, x_b, x_c) · x_d` for a permutation `[a, b, c, d]`
/// of the four inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectPattern {
    pub order: [usize; 4],
    pub coeff: Scalar,
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a != b && b != c && a != c {
                    out.push([a, b, c, 6 - a - b - c]);
                }
            }
        }
    }
    out
}

/// Exact coefficients over the 24 patterns reproducing `target`, if any.
pub fn match_defects(alg: &FreeAlgebra, inputs: [&Element; 4], target: &Element) -> Result<Option<Vec<DefectPattern>>> {
    gp(alg)?;
    let names = ["p0", "p1", "p2", "p3"];
    let mut parities = Vec::new();
    let mut bindings = HashMap::new();
    for (n, e) in names.iter().zip(inputs) {
        parities.push(parity_of(e, n)?);
        bindings.insert(n.to_string(), e.clone());
    }
    let perms = permutations4();
    let mut columns_el = Vec::new();
    for p in &perms {
        let t = Term::Prod(
            Box::new(jacobi_defect_term(
                var(names[p[0]]),
                var(names[p[1]]),
                var(names[p[2]]),
                parities[p[1]],
                parities[p[2]],
            )),
            Box::new(var(names[p[3]])),
        );
        columns_el.push(alg.substitute(&t, &bindings)?);
    }
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for e in columns_el.iter().chain([target]) {
        for m in e.terms().keys() {
            let n = index.len();
            index.entry(m.clone()).or_insert(n);
        }
    }
    let vector = |e: &Element| {
        let mut v = vec![scalar::zero(); index.len()];
        for (m, c) in e.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let columns: Vec<Vec<Scalar>> = columns_el.iter().map(vector).collect();
    Ok(linalg::solve(&columns, &vector(target)).map(|sol| {
        perms
            .iter()
            .zip(sol)
            .filter(|(_, c)| *c != scalar::zero())
            .map(|(p, c)| DefectPattern { order: *p, coeff: c })
            .collect()
    }))
}
