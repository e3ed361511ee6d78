//! Finite-dimensional superalgebras given by structure constants: evaluation
//! of terms, exhaustive identity checks and a few built-in examples.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{GenId, Parity, UNIT};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::identities::{self, Identity};
use crate::scalar::{self, Scalar};
use crate::term::{br, lin, prod, var, Term};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Poisson,
    GenP,
    JB,
    GP,
    None,
}

type Table = Vec<Vec<(usize, Scalar)>>;

#[derive(Debug, Clone, PartialEq)]
pub struct StructureAlgebra {
    dim: usize,
    parity: Vec<Parity>,
    names: Vec<String>,
    unit: Option<Vector>,
    product: Table,
    bracket: Table,
    claim: Claim,
}

fn zero_vec(d: usize) -> Vector {
    vec![scalar::zero(); d]
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|c| *c == scalar::zero())
}

impl StructureAlgebra {
    /// Zero product and bracket on basis vectors `e0 … e(d-1)`.
    pub fn new(parity: Vec<Parity>, claim: Claim) -> StructureAlgebra {
        let dim = parity.len();
        StructureAlgebra {
            dim,
            names: (0..dim).map(|i| format!("e{i}")).collect(),
            parity,
            unit: None,
            product: vec![Vec::new(); dim * dim],
            bracket: vec![Vec::new(); dim * dim],
            claim,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<StructureAlgebra> {
        if names.len() != self.dim {
            return Err(Error::Malformed(format!("{} names for dimension {}", names.len(), self.dim)));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_unit(mut self, unit: Vector) -> Result<StructureAlgebra> {
        if unit.len() != self.dim {
            return Err(Error::Malformed("unit has the wrong length".into()));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn with_claim(mut self, claim: Claim) -> StructureAlgebra {
        self.claim = claim;
        self
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim {
            Ok(())
        } else {
            Err(Error::Malformed(format!("index {i} out of range for dimension {}", self.dim)))
        }
    }

    fn set(table: &mut Table, dim: usize, i: usize, j: usize, row: Vec<(usize, Scalar)>) {
        let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in row {
            *merged.entry(k).or_insert_with(scalar::zero) += c;
        }
        table[i * dim + j] = merged.into_iter().filter(|(_, c)| *c != scalar::zero()).collect();
    }

    pub fn set_product(&mut self, i: usize, j: usize, row: Vec<(usize, Scalar)>) -> Result<()> {
        for k in [i, j].into_iter().chain(row.iter().map(|r| r.0)) {
            self.check_index(k)?;
        }
        Self::set(&mut self.product, self.dim, i, j, row);
        Ok(())
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, row: Vec<(usize, Scalar)>) -> Result<()> {
        for k in [i, j].into_iter().chain(row.iter().map(|r| r.0)) {
            self.check_index(k)?;
        }
        Self::set(&mut self.bracket, self.dim, i, j, row);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn product_row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.product[i * self.dim + j]
    }

    pub fn bracket_row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.bracket[i * self.dim + j]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = zero_vec(self.dim);
        v[i] = scalar::one();
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn apply(&self, table: &Table, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, a) in u.iter().enumerate() {
            if *a == scalar::zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if *b == scalar::zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &table[i * self.dim + j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.apply(&self.product, u, v)
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.apply(&self.bracket, u, v)
    }

    /// `D(u) = {u, 1}`.
    pub fn d(&self, u: &[Scalar]) -> Result<Vector> {
        let unit = self.unit.as_ref().ok_or(Error::NoUnit)?;
        Ok(self.bracket(u, unit))
    }

    /// Parity of a nonzero homogeneous vector.
    pub fn parity_of(&self, v: &[Scalar]) -> Option<Parity> {
        let mut it = v
            .iter()
            .zip(&self.parity)
            .filter(|(c, _)| **c != scalar::zero())
            .map(|(_, p)| *p);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Evaluates a term. Variables and generators are looked up in the two
    /// maps; the unit generator is the algebra's unit.
    pub fn evaluate(
        &self,
        t: &Term,
        vars: &HashMap<String, Vector>,
        gens: &HashMap<GenId, Vector>,
    ) -> Result<Vector> {
        Ok(match t {
            Term::Gen(UNIT) => self.unit.clone().ok_or(Error::NoUnit)?,
            Term::Gen(g) => gens
                .get(g)
                .cloned()
                .ok_or_else(|| Error::Unbound(format!("generator #{g}")))?,
            Term::Var(v) => vars.get(v).cloned().ok_or_else(|| Error::Unbound(v.clone()))?,
            Term::Prod(a, b) => self.mul(&self.evaluate(a, vars, gens)?, &self.evaluate(b, vars, gens)?),
            Term::Bracket(a, b) => {
                self.bracket(&self.evaluate(a, vars, gens)?, &self.evaluate(b, vars, gens)?)
            }
            Term::Sum(ts) => {
                let mut out = zero_vec(self.dim);
                for (c, t) in ts {
                    for (o, x) in out.iter_mut().zip(self.evaluate(t, vars, gens)?) {
                        *o += c * x;
                    }
                }
                out
            }
        })
    }

    /// Checks a parity-dependent identity on every tuple of basis vectors.
    pub fn check(
        &self,
        name: &str,
        vars: &[&str],
        build: &(dyn Fn(&[Parity]) -> Term + Sync),
        strategy: Strategy,
    ) -> Result<CheckResult> {
        let n = vars.len();
        let patterns: Vec<Term> = (0..1usize << n)
            .map(|bits| {
                let p: Vec<Parity> = (0..n).map(|i| Parity::from_bit(((bits >> i) & 1) as u8)).collect();
                build(&p)
            })
            .collect();
        let total = self.dim.pow(n as u32);
        let gens = HashMap::new();
        let failure = exec::find_first(strategy, total, |index| {
            let idx = exec::tuple(index, self.dim, n);
            let bits = idx
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &b)| acc | ((self.parity[b].bit() as usize) << i));
            let bindings: HashMap<String, Vector> =
                vars.iter().zip(&idx).map(|(v, &b)| (v.to_string(), self.basis(b))).collect();
            match self.evaluate(&patterns[bits], &bindings, &gens) {
                Ok(r) if is_zero_vec(&r) => None,
                Ok(r) => Some(Ok((idx, r))),
                Err(e) => Some(Err(e)),
            }
        });
        let witness = match failure {
            None => None,
            Some((_, Err(e))) => return Err(e),
            Some((_, Ok((indices, residual)))) => Some(Witness {
                parities: indices.iter().map(|&i| self.parity[i].bit()).collect(),
                indices,
                residual,
            }),
        };
        Ok(CheckResult::new(name, witness))
    }

    pub fn check_identity(&self, id: &Identity, strategy: Strategy) -> Result<CheckResult> {
        self.check(id.name, id.vars, &|p: &[Parity]| id.term(p), strategy)
    }

    /// Whether `t` vanishes for all elements, checked on basis tuples after
    /// full linearization. Signs in `t` are taken literally.
    pub fn is_identity(&self, t: &Term, strategy: Strategy) -> Result<CheckResult> {
        let (ml, vars) = t.multilinearize()?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        self.check("identity", &names, &|_: &[Parity]| ml.clone(), strategy)
    }

    pub fn check_supercommutative(&self, strategy: Strategy) -> Result<CheckResult> {
        self.check("supercommutativity", &["a", "b"], &supercommutativity, strategy)
    }

    /// Checks the identities the claim names, plus the structural ones.
    pub fn validate(&self, strategy: Strategy) -> Result<Report> {
        let mut results = vec![
            self.check_supercommutative(strategy)?,
            self.check("associativity", &["a", "b", "c"], &associativity, strategy)?,
        ];
        if self.unit.is_some() {
            results.push(self.check("unit", &["a"], &|_: &[Parity]| unit_law(), strategy)?);
        }
        results.push(self.check("anticommutativity", &["a", "b"], &anticommutativity, strategy)?);
        let ids: &[Identity] = match self.claim {
            Claim::GenP => &[identities::JO1, identities::JO2],
            Claim::JB => &[identities::JO1, identities::KMTOJD2],
            Claim::GP => &[identities::GPIDENT],
            Claim::Poisson => &[identities::GPIDENT, identities::JO2],
            Claim::None => &[],
        };
        for id in ids {
            results.push(self.check_identity(id, strategy)?);
        }
        Ok(Report { results })
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != scalar::zero())
            .map(|(i, c)| format!("{} {}", scalar::format(c), self.names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Coordinates written as `p/q` strings separated by commas, or a basis
    /// vector name.
    pub fn parse_vector(&self, src: &str) -> Result<Vector> {
        if let Some(i) = self.index_of(src.trim()) {
            return Ok(self.basis(i));
        }
        let coords: Vec<Scalar> = src.split(',').map(|c| scalar::parse(c.trim())).collect::<Result<_>>()?;
        if coords.len() != self.dim {
            return Err(Error::Malformed(format!("vector `{src}` needs {} coordinates", self.dim)));
        }
        Ok(coords)
    }
}

fn supercommutativity(p: &[Parity]) -> Term {
    lin(vec![
        (scalar::one(), prod(var("a"), var("b"))),
        (-scalar::sign(p[0].times(p[1])), prod(var("b"), var("a"))),
    ])
}

fn anticommutativity(p: &[Parity]) -> Term {
    lin(vec![
        (scalar::one(), br(var("a"), var("b"))),
        (scalar::sign(p[0].times(p[1])), br(var("b"), var("a"))),
    ])
}

fn associativity(_: &[Parity]) -> Term {
    lin(vec![
        (scalar::one(), prod(prod(var("a"), var("b")), var("c"))),
        (-scalar::one(), prod(var("a"), prod(var("b"), var("c")))),
    ])
}

fn unit_law() -> Term {
    let u = crate::term::unit();
    lin(vec![
        (scalar::one(), prod(u.clone(), var("a"))),
        (-scalar::one(), var("a")),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub parities: Vec<u8>,
    #[serde(serialize_with = "ser_vector")]
    pub residual: Vector,
}

fn ser_vector<S: serde::Serializer>(v: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&scalar::format(c))?;
    }
    seq.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn new(identity: &str, witness: Option<Witness>) -> CheckResult {
        CheckResult {
            identity: identity.to_string(),
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn get(&self, identity: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.identity == identity)
    }
}

// JSON file format

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Str(String),
}

impl Coord {
    fn value(&self) -> Result<Scalar> {
        match self {
            Coord::Int(n) => Ok(scalar::int(*n)),
            Coord::Str(s) => scalar::parse(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    parity: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<Coord>>,
    #[serde(default)]
    product: BTreeMap<String, Vec<(usize, Coord)>>,
    #[serde(default)]
    bracket: BTreeMap<String, Vec<(usize, Coord)>>,
    #[serde(default = "no_claim")]
    claim: Claim,
}

fn no_claim() -> Claim {
    Claim::None
}

fn parse_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("table key `{key}` is not `i,j`"));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

impl StructureAlgebra {
    pub fn from_json(src: &str) -> Result<StructureAlgebra> {
        let f: AlgebraFile = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        if f.parity.len() != f.dim {
            return Err(Error::Malformed("parity list length differs from dim".into()));
        }
        let parity = f
            .parity
            .iter()
            .map(|&b| match b {
                0 | 1 => Ok(Parity::from_bit(b)),
                _ => Err(Error::Malformed(format!("parity {b}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut a = StructureAlgebra::new(parity, f.claim);
        if let Some(names) = f.names {
            a = a.with_names(names)?;
        }
        if let Some(unit) = f.unit {
            a = a.with_unit(unit.iter().map(Coord::value).collect::<Result<_>>()?)?;
        }
        for (key, row) in &f.product {
            let (i, j) = parse_key(key)?;
            let row = row.iter().map(|(k, c)| Ok((*k, c.value()?))).collect::<Result<_>>()?;
            a.set_product(i, j, row)?;
        }
        for (key, row) in &f.bracket {
            let (i, j) = parse_key(key)?;
            let row = row.iter().map(|(k, c)| Ok((*k, c.value()?))).collect::<Result<_>>()?;
            a.set_bracket(i, j, row)?;
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        let table = |t: &Table| -> BTreeMap<String, Vec<(usize, Coord)>> {
            let mut out = BTreeMap::new();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let row = &t[i * self.dim + j];
                    if !row.is_empty() {
                        out.insert(
                            format!("{i},{j}"),
                            row.iter().map(|(k, c)| (*k, Coord::Str(scalar::format(c)))).collect(),
                        );
                    }
                }
            }
            out
        };
        let f = AlgebraFile {
            dim: self.dim,
            parity: self.parity.iter().map(|p| p.bit()).collect(),
            names: Some(self.names.clone()),
            unit: self
                .unit
                .as_ref()
                .map(|u| u.iter().map(|c| Coord::Str(scalar::format(c))).collect()),
            product: table(&self.product),
            bracket: table(&self.bracket),
            claim: self.claim,
        };
        serde_json::to_string_pretty(&f).expect("algebra json")
    }
}

// Built-in algebras

/// ℚ[t]/(tᵐ) with the Euler derivation `D(tᵏ) = k tᵏ` and the bracket
/// `{a,b} = D(a)b − aD(b)`, so `{tⁱ,tʲ} = (i−j)tⁱ⁺ʲ`.
pub fn wronskian(m: usize) -> StructureAlgebra {
    assert!(m >= 2, "wronskian needs m >= 2");
    let names = (0..m)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t{k}"),
        })
        .collect();
    let mut a = StructureAlgebra::new(vec![Parity::Even; m], Claim::GenP)
        .with_names(names)
        .expect("names");
    for i in 0..m {
        for j in 0..m {
            if i + j < m {
                a.set_product(i, j, vec![(i + j, scalar::one())]).expect("index");
                a.set_bracket(i, j, vec![(i + j, scalar::int(i as i64 - j as i64))]).expect("index");
            }
        }
    }
    let unit = a.basis(0);
    a.with_unit(unit).expect("unit")
}

/// ℚ[t]/(tᵐ) with the zero bracket.
pub fn zero_bracket_poisson(m: usize) -> StructureAlgebra {
    let mut a = wronskian(m).with_claim(Claim::Poisson);
    for i in 0..m {
        for j in 0..m {
            a.set_bracket(i, j, Vec::new()).expect("index");
        }
    }
    a
}

/// A 3-dimensional anticommutative bracket without the Jacobi identity:
/// `{e0,e1} = e2`, `{e2,e0} = e0`.
pub fn nonlie_table() -> Vec<(usize, usize, Vec<(usize, Scalar)>)> {
    vec![(0, 1, vec![(2, scalar::one())]), (2, 0, vec![(0, scalar::one())])]
}

/// Even algebra with zero product and the given bracket, completed by
/// anticommutativity. Entries for both orders must agree.
pub fn zero_mul_anticommutative(
    dim: usize,
    table: &[(usize, usize, Vec<(usize, Scalar)>)],
) -> Result<StructureAlgebra> {
    let mut a = StructureAlgebra::new(vec![Parity::Even; dim], Claim::GP);
    let mut seen: HashMap<(usize, usize), Vector> = HashMap::new();
    for (i, j, row) in table {
        a.check_index(*i)?;
        a.check_index(*j)?;
        let mut v = zero_vec(dim);
        for (k, c) in row {
            a.check_index(*k)?;
            v[*k] += c;
        }
        if i == j && !is_zero_vec(&v) {
            return Err(Error::NotAnticommutative(format!("{{e{i},e{i}}} is not zero")));
        }
        let neg: Vector = v.iter().map(|c| -c).collect();
        for (key, val) in [((*i, *j), v), ((*j, *i), neg)] {
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(Error::NotAnticommutative(format!("{{e{},e{}}}", key.0, key.1)));
                }
            }
            seen.insert(key, val);
        }
    }
    for ((i, j), v) in seen {
        let row = v.into_iter().enumerate().filter(|(_, c)| *c != scalar::zero()).collect();
        a.set_bracket(i, j, row)?;
    }
    Ok(a)
}

/// Adjoins a unit `1` (index 0) with `{1, ·} = 0`; claims GP.
pub fn unitization(a: &StructureAlgebra) -> StructureAlgebra {
    let d = a.dim + 1;
    let mut parity = vec![Parity::Even];
    parity.extend(&a.parity);
    let mut names = vec!["1".to_string()];
    names.extend(a.names.iter().cloned());
    let mut u = StructureAlgebra::new(parity, Claim::GP).with_names(names).expect("names");
    let shift = |row: &[(usize, Scalar)]| row.iter().map(|(k, c)| (k + 1, c.clone())).collect::<Vec<_>>();
    for i in 0..d {
        u.set_product(0, i, vec![(i, scalar::one())]).expect("index");
        u.set_product(i, 0, vec![(i, scalar::one())]).expect("index");
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            u.set_product(i + 1, j + 1, shift(a.product_row(i, j))).expect("index");
            u.set_bracket(i + 1, j + 1, shift(a.bracket_row(i, j))).expect("index");
        }
    }
    let unit = u.basis(0);
    u.with_unit(unit).expect("unit")
}

/// The bracket `{a,b} − (aE(b) − E(a)b)` with `E = D`, claimed JB.
pub fn untwisted(a: &StructureAlgebra) -> Result<StructureAlgebra> {
    let mut out = a.clone().with_claim(Claim::JB);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let mut v = a.bracket(&ei, &ej);
            let aeb = a.mul(&ei, &a.d(&ej)?);
            let eab = a.mul(&a.d(&ei)?, &ej);
            for k in 0..a.dim {
                v[k] = &v[k] - &aeb[k] + &eab[k];
            }
            let row = v.into_iter().enumerate().filter(|(_, c)| *c != scalar::zero()).collect();
            out.set_bracket(i, j, row)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
