//! The ℤ₂-graded generator alphabet `{1, x1, …, xn}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// `|a||b|` as a boolean exponent of `-1`.
    pub fn times(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::Even, |a, b| a + b)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub type GenId = u16;

/// Index of the unit generator in every alphabet.
pub const UNIT: GenId = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub parity: Parity,
    pub is_unit: bool,
}

/// Generators in their declared total order; the unit is always first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDecl {
    name: String,
    parity: Parity,
}

#[derive(Serialize, Deserialize)]
struct AlphabetDecl {
    generators: Vec<GeneratorDecl>,
}

impl Alphabet {
    /// Builds `{1} ∪ decls` in the given order.
    pub fn new<S: AsRef<str>>(decls: &[(S, Parity)]) -> Result<Alphabet> {
        let mut gens = vec![Generator {
            id: UNIT,
            name: "1".into(),
            parity: Parity::Even,
            is_unit: true,
        }];
        let mut by_name = HashMap::new();
        by_name.insert("1".to_string(), UNIT);
        for (name, parity) in decls {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::Alphabet(format!("invalid generator name `{name}`")));
            }
            let id = gens.len() as GenId;
            if by_name.insert(name.to_string(), id).is_some() {
                return Err(Error::Alphabet(format!("duplicate generator `{name}`")));
            }
            gens.push(Generator {
                id,
                name: name.to_string(),
                parity: *parity,
                is_unit: false,
            });
        }
        Ok(Alphabet { gens, by_name })
    }

    /// `n` even generators `x1 … xn`.
    pub fn even(n: usize) -> Alphabet {
        let decls: Vec<_> = (1..=n).map(|i| (format!("x{i}"), Parity::Even)).collect();
        Alphabet::new(&decls).expect("generated names are valid")
    }

    /// Parses `x1,x2,t:odd` (parity suffix optional, default even).
    pub fn parse_list(spec: &str) -> Result<Alphabet> {
        let mut decls = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, parity) = match item.split_once(':') {
                Some((n, "odd")) => (n, Parity::Odd),
                Some((n, "even")) => (n, Parity::Even),
                Some((_, p)) => return Err(Error::Alphabet(format!("unknown parity `{p}`"))),
                None => (item, Parity::Even),
            };
            decls.push((name.to_string(), parity));
        }
        Alphabet::new(&decls)
    }

    pub fn from_json(src: &str) -> Result<Alphabet> {
        let decl: AlphabetDecl = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        let decls: Vec<_> = decl.generators.into_iter().map(|g| (g.name, g.parity)).collect();
        Alphabet::new(&decls)
    }

    pub fn to_json(&self) -> String {
        let decl = AlphabetDecl {
            generators: self
                .gens
                .iter()
                .skip(1)
                .map(|g| GeneratorDecl {
                    name: g.name.clone(),
                    parity: g.parity,
                })
                .collect(),
        };
        serde_json::to_string(&decl).expect("serializable")
    }

    /// A copy with extra generators appended after the existing ones.
    pub fn extended<S: AsRef<str>>(&self, extra: &[(S, Parity)]) -> Result<Alphabet> {
        let mut decls: Vec<(String, Parity)> =
            self.gens.iter().skip(1).map(|g| (g.name.clone(), g.parity)).collect();
        decls.extend(extra.iter().map(|(n, p)| (n.as_ref().to_string(), *p)));
        Alphabet::new(&decls)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id as usize].name
    }

    pub fn parity(&self, id: GenId) -> Parity {
        self.gens[id as usize].parity
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Non-unit generators.
    pub fn letters(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter().skip(1)
    }

    pub fn all_even(&self) -> bool {
        self.gens.iter().all(|g| g.parity == Parity::Even)
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "D" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}
