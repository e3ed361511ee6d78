//! The Kantor double `K(A) = A ⊕ Ax` and two ways of deciding whether it is
//! a Jordan superalgebra: the jorskob identities on `A`, and the linearized
//! super-Jordan identity on `K(A)` itself.

use std::collections::HashMap;

use crate::alphabet::{GenId, Parity};
use crate::concrete::{CheckResult, Claim, Report, StructureAlgebra, Vector};
use crate::engine::{Element, FreeAlgebra};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::identities::{self, Identity};
use crate::scalar;

/// What the double needs from the underlying algebra.
pub trait Base {
    type E: Clone + PartialEq;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn bracket(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    /// `a ↦ a₀ − a₁`.
    fn involution(&self, a: &Self::E) -> Self::E;
    fn negate(&self, a: &Self::E) -> Self::E;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

impl Base for StructureAlgebra {
    type E = Vector;
    fn mul(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        Ok(StructureAlgebra::mul(self, a, b))
    }
    fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        Ok(StructureAlgebra::bracket(self, a, b))
    }
    fn add(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        Ok(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
    fn involution(&self, a: &Vector) -> Vector {
        a.iter()
            .zip(self.parities())
            .map(|(c, p)| if p.is_odd() { -c } else { c.clone() })
            .collect()
    }
    fn negate(&self, a: &Vector) -> Vector {
        a.iter().map(|c| -c).collect()
    }
    fn zero(&self) -> Vector {
        vec![scalar::zero(); self.dim()]
    }
    fn is_zero(&self, a: &Vector) -> bool {
        a.iter().all(|c| *c == scalar::zero())
    }
}

impl Base for FreeAlgebra {
    type E = Element;
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        FreeAlgebra::mul(self, a, b)
    }
    fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        FreeAlgebra::bracket(self, a, b)
    }
    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        a.add(b)
    }
    fn involution(&self, a: &Element) -> Element {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let c = if m.parity().is_odd() { -c } else { c.clone() };
            out = out
                .add(&Element::monomial(self.theory(), m.clone(), c))
                .expect("same theory");
        }
        out
    }
    fn negate(&self, a: &Element) -> Element {
        a.scaled(&-scalar::one())
    }
    fn zero(&self) -> Element {
        FreeAlgebra::zero(self)
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
}

/// `a + bx`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleElement<E> {
    pub a: E,
    pub b: E,
}

impl<E> DoubleElement<E> {
    pub fn new(a: E, b: E) -> DoubleElement<E> {
        DoubleElement { a, b }
    }
}

/// `a*c = ac`, `a*cx = (ac)x`, `ax*c = (−1)^{|c|}(ac)x`,
/// `ax*cx = (−1)^{|c|}{a,c}`.
pub fn double_mul<B: Base>(
    base: &B,
    p: &DoubleElement<B::E>,
    q: &DoubleElement<B::E>,
) -> Result<DoubleElement<B::E>> {
    let even = base.add(&base.mul(&p.a, &q.a)?, &base.bracket(&p.b, &base.involution(&q.b))?)?;
    let odd = base.add(&base.mul(&p.a, &q.b)?, &base.mul(&p.b, &base.involution(&q.a))?)?;
    Ok(DoubleElement::new(even, odd))
}

/// `K(A)` with basis `e_i` (index `i`) and `e_i x` (index `d + i`).
pub fn double_of(a: &StructureAlgebra) -> StructureAlgebra {
    let d = a.dim();
    let mut parity: Vec<Parity> = a.parities().to_vec();
    parity.extend(a.parities().iter().map(|p| *p + Parity::Odd));
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(a.names().iter().map(|n| format!("{n}x")));
    let mut k = StructureAlgebra::new(parity, Claim::None)
        .with_names(names)
        .expect("names");
    let split = |i: usize| {
        if i < d {
            DoubleElement::new(a.basis(i), Base::zero(a))
        } else {
            DoubleElement::new(Base::zero(a), a.basis(i - d))
        }
    };
    for i in 0..2 * d {
        for j in 0..2 * d {
            let r = double_mul(a, &split(i), &split(j)).expect("concrete");
            let row = r
                .a
                .into_iter()
                .chain(r.b)
                .enumerate()
                .filter(|(_, c)| *c != scalar::zero())
                .collect();
            k.set_product(i, j, row).expect("index");
        }
    }
    if let Some(u) = a.unit() {
        let mut unit = u.clone();
        unit.extend(Base::zero(a));
        k = k.with_unit(unit).expect("unit");
    }
    k
}

/// The three jorskob identities on all basis tuples.
pub fn jorskob_check(a: &StructureAlgebra, strategy: Strategy) -> Result<Report> {
    let results = [identities::JORSKOB1, identities::JORSKOB2, identities::JORSKOB3]
        .iter()
        .map(|id| a.check_identity(id, strategy))
        .collect::<Result<_>>()?;
    Ok(Report { results })
}

/// The linearized super-Jordan identity on all basis tuples of `j`, after
/// checking that the product is supercommutative.
pub fn super_jordan_check(j: &StructureAlgebra, strategy: Strategy) -> Result<CheckResult> {
    let comm = j.check_supercommutative(strategy)?;
    if let Some(w) = comm.witness {
        return Err(Error::NotSupercommutative(format!("basis pair {:?}", w.indices)));
    }
    j.check_identity(&identities::JORDAN, strategy)
}

/// A free-algebra check result; witnesses name generators.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FreeCheck {
    pub identity: String,
    pub status: crate::concrete::Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FreeWitness>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FreeWitness {
    pub generators: Vec<String>,
    pub parities: Vec<u8>,
    pub residual: String,
}

impl FreeCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn free_identity(alg: &FreeAlgebra, id: &Identity, gens: &[GenId], strategy: Strategy) -> Result<FreeCheck> {
    let n = id.vars.len();
    let total = gens.len().pow(n as u32);
    let found = exec::find_first(strategy, total, |index| {
        let pick: Vec<GenId> = exec::tuple(index, gens.len(), n).into_iter().map(|i| gens[i]).collect();
        let parities: Vec<Parity> = pick.iter().map(|&g| alg.alphabet().parity(g)).collect();
        let bindings: HashMap<String, Element> = id
            .vars
            .iter()
            .zip(&pick)
            .map(|(v, &g)| (v.to_string(), alg.gen(g)))
            .collect();
        match alg.substitute(&id.term(&parities), &bindings) {
            Ok(r) if r.is_zero() => None,
            Ok(r) => Some(Ok((pick, parities, r))),
            Err(e) => Some(Err(e)),
        }
    });
    let witness = match found {
        None => None,
        Some((_, Err(e))) => return Err(e),
        Some((_, Ok((pick, parities, r)))) => Some(FreeWitness {
            generators: pick.iter().map(|&g| alg.alphabet().name(g).to_string()).collect(),
            parities: parities.iter().map(|p| p.bit()).collect(),
            residual: r.display(alg.alphabet()).to_string(),
        }),
    };
    Ok(FreeCheck {
        identity: id.name.to_string(),
        status: if witness.is_some() {
            crate::concrete::Status::Fail
        } else {
            crate::concrete::Status::Pass
        },
        witness,
    })
}

/// The jorskob identities on all 4-tuples of generators (unit included).
pub fn jorskob_check_free(alg: &FreeAlgebra, strategy: Strategy) -> Result<Vec<FreeCheck>> {
    let gens: Vec<GenId> = alg.alphabet().generators().iter().map(|g| g.id).collect();
    [identities::JORSKOB1, identities::JORSKOB2, identities::JORSKOB3]
        .iter()
        .map(|id| free_identity(alg, id, &gens, strategy))
        .collect()
}

/// The linearized super-Jordan identity in the double of a free algebra,
/// on inputs `g` and `g x` for generators `g` (unit included).
pub fn super_jordan_check_free(alg: &FreeAlgebra, strategy: Strategy) -> Result<FreeCheck> {
    let gens: Vec<GenId> = alg.alphabet().generators().iter().map(|g| g.id).collect();
    let inputs: Vec<(DoubleElement<Element>, Parity, String)> = gens
        .iter()
        .flat_map(|&g| {
            let e = alg.gen(g);
            let p = alg.alphabet().parity(g);
            let name = alg.alphabet().name(g).to_string();
            [
                (DoubleElement::new(e.clone(), alg.zero()), p, name.clone()),
                (DoubleElement::new(alg.zero(), e), p + Parity::Odd, format!("{name}x")),
            ]
        })
        .collect();
    let n = inputs.len();
    let found = exec::find_first(strategy, n.pow(4), |index| {
        let pick = exec::tuple(index, n, 4);
        let parities: Vec<Parity> = pick.iter().map(|&i| inputs[i].1).collect();
        let [x, y, z, t] = [0, 1, 2, 3].map(|k| &inputs[pick[k]].0);
        match jordan_residual(alg, [x, y, z, t], &parities) {
            Ok(r) if r.a.is_zero() && r.b.is_zero() => None,
            Ok(r) => Some(Ok((pick, parities, r))),
            Err(e) => Some(Err(e)),
        }
    });
    let witness = match found {
        None => None,
        Some((_, Err(e))) => return Err(e),
        Some((_, Ok((pick, parities, r)))) => Some(FreeWitness {
            generators: pick.iter().map(|&i| inputs[i].2.clone()).collect(),
            parities: parities.iter().map(|p| p.bit()).collect(),
            residual: format!(
                "{} + ({}) x",
                r.a.display(alg.alphabet()),
                r.b.display(alg.alphabet())
            ),
        }),
    };
    Ok(FreeCheck {
        identity: "jordan".into(),
        status: if witness.is_some() {
            crate::concrete::Status::Fail
        } else {
            crate::concrete::Status::Pass
        },
        witness,
    })
}

/// Left minus right side of the linearized Jordan identity in `K(A)`.
pub fn jordan_residual<B: Base>(
    base: &B,
    [x, y, z, t]: [&DoubleElement<B::E>; 4],
    parities: &[Parity],
) -> Result<DoubleElement<B::E>> {
    let m = |p: &DoubleElement<B::E>, q: &DoubleElement<B::E>| double_mul(base, p, q);
    let mut acc = DoubleElement::new(base.zero(), base.zero());
    for (a, b, c, order) in [(x, z, t, [0, 2, 1, 3]), (x, t, z, [0, 3, 1, 2]), (z, t, x, [2, 3, 1, 0])] {
        let sign = crate::koszul::permutation_parity(parities, &order)?;
        let ab = m(a, b)?;
        let left = m(&m(&ab, y)?, c)?;
        let right = m(&ab, &m(y, c)?)?;
        for (part, negate) in [(left, sign), (right, !sign)] {
            let part = if negate { neg(base, &part)? } else { part };
            acc = DoubleElement::new(base.add(&acc.a, &part.a)?, base.add(&acc.b, &part.b)?);
        }
    }
    Ok(acc)
}

fn neg<B: Base>(base: &B, p: &DoubleElement<B::E>) -> Result<DoubleElement<B::E>> {
    Ok(DoubleElement::new(base.negate(&p.a), base.negate(&p.b)))
}
