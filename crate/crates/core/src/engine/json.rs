use serde::{Deserialize, Serialize};

use super::{Element, Theory};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::term;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFactor {
    pub word: String,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    #[serde(with = "scalar::serde_q")]
    pub coeff: Scalar,
    pub monomial: Vec<JsonFactor>,
}

/// GP elements carry a marker so they are not read back as GenP/JB.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGp {
    pub gp: bool,
    pub terms: Vec<JsonTerm>,
}

pub fn terms(e: &Element, alphabet: &Alphabet) -> Vec<JsonTerm> {
    e.terms()
        .iter()
        .map(|(m, c)| JsonTerm {
            coeff: c.clone(),
            monomial: m
                .factors()
                .iter()
                .map(|(w, k)| JsonFactor {
                    word: w.display(alphabet).to_string(),
                    exp: *k,
                })
                .collect(),
        })
        .collect()
}

pub fn to_value(e: &Element, alphabet: &Alphabet) -> serde_json::Value {
    let terms = terms(e, alphabet);
    match e.theory() {
        Theory::GP => serde_json::to_value(JsonGp { gp: true, terms }),
        _ => serde_json::to_value(terms),
    }
    .expect("element json")
}

/// Reads an element written by [`to_value`] back into `alg`.
pub fn from_value(v: &serde_json::Value, alg: &super::FreeAlgebra) -> Result<Element> {
    let (gp, terms): (bool, Vec<JsonTerm>) = if v.is_array() {
        (false, serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?)
    } else {
        let g: JsonGp = serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        (g.gp, g.terms)
    };
    if gp != (alg.theory() == Theory::GP) {
        let found = if gp { Theory::GP.to_string() } else { "genp/jb".to_string() };
        return Err(Error::TheoryMismatch { expected: alg.theory().to_string(), found });
    }
    let mut parts = Vec::new();
    for t in terms {
        let mut factors = Vec::new();
        for f in &t.monomial {
            let w = crate::parse::parse(&f.word, alg.alphabet())?;
            factors.extend(std::iter::repeat(w).take(f.exp as usize));
        }
        parts.push((t.coeff, term::prods(factors)));
    }
    alg.normal_form(&term::lin(parts))
}
