//! The identities of the theories as term trees with variables. Super signs
//! depend on the parities of the variables, so each identity is a builder
//! taking one parity per variable.

use crate::alphabet::Parity;
use crate::koszul;
use crate::scalar::{self, Scalar};
use crate::term::{br, d, lin, prod, prods, var, Term};

/// A named identity `t = 0` over the variables `vars`.
#[derive(Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub build: fn(&[Parity]) -> Term,
}

impl Identity {
    pub fn term(&self, parities: &[Parity]) -> Term {
        assert_eq!(parities.len(), self.vars.len(), "{}: one parity per variable", self.name);
        (self.build)(parities)
    }

    pub fn even(&self) -> Term {
        self.term(&vec![Parity::Even; self.vars.len()])
    }

    /// All `2^n` parity patterns, variable 0 as the lowest bit.
    pub fn patterns(&self) -> Vec<Vec<Parity>> {
        let n = self.vars.len();
        (0..1u32 << n)
            .map(|bits| (0..n).map(|i| Parity::from_bit(((bits >> i) & 1) as u8)).collect())
            .collect()
    }
}

fn s(odd: bool) -> Scalar {
    scalar::sign(odd)
}

fn v(name: &str) -> Term {
    var(name)
}

fn one() -> Scalar {
    scalar::one()
}

fn jo1_build(p: &[Parity]) -> Term {
    let (a, b, c) = (v("a"), v("b"), v("c"));
    lin(vec![
        (one(), br(a.clone(), prod(b.clone(), c.clone()))),
        (-one(), prod(br(a.clone(), b.clone()), c.clone())),
        (-s(p[0].times(p[1])), prod(b.clone(), br(a.clone(), c.clone()))),
        (one(), prods([d(a), b, c])),
    ])
}

fn jacobiator(p: &[Parity]) -> Vec<(Scalar, Term)> {
    let (a, b, c) = (v("a"), v("b"), v("c"));
    vec![
        (one(), br(a.clone(), br(b.clone(), c.clone()))),
        (-one(), br(br(a.clone(), b.clone()), c.clone())),
        (-s(p[0].times(p[1])), br(b, br(a, c))),
    ]
}

fn jo2_build(p: &[Parity]) -> Term {
    lin(jacobiator(p))
}

fn kmtojd2_build(p: &[Parity]) -> Term {
    let (a, b, c) = (v("a"), v("b"), v("c"));
    let mut t = jacobiator(p);
    t.push((-one(), prod(d(a.clone()), br(b.clone(), c.clone()))));
    t.push((
        -s(p[0].times(p[1] + p[2])),
        prod(d(b.clone()), br(c.clone(), a.clone())),
    ));
    t.push((-s(p[2].times(p[0] + p[1])), prod(d(c), br(a, b))));
    lin(t)
}

fn gpident_build(p: &[Parity]) -> Term {
    let (x, y, z) = (v("x"), v("y"), v("z"));
    lin(vec![
        (one(), br(x.clone(), prod(y.clone(), z.clone()))),
        (-one(), prod(br(x.clone(), y.clone()), z.clone())),
        (-s(p[0].times(p[1])), prod(y, br(x, z))),
    ])
}

/// The Jacobi defect `{{a,b},c} − (−1)^{|b||c|}{{a,c},b} − {a,{b,c}}`.
pub fn jacobi_defect_term(a: Term, b: Term, c: Term, pb: Parity, pc: Parity) -> Term {
    lin(vec![
        (one(), br(br(a.clone(), b.clone()), c.clone())),
        (-s(pb.times(pc)), br(br(a.clone(), c.clone()), b.clone())),
        (-one(), br(a, br(b, c))),
    ])
}

fn jordan_gp_build(p: &[Parity]) -> Term {
    prod(jacobi_defect_term(v("a"), v("b"), v("c"), p[1], p[2]), v("d"))
}

// jorskob identities over f, g, h, k with parities i, j, k, l.
struct Fghk {
    f: Term,
    g: Term,
    h: Term,
    k: Term,
    s_l: Scalar,
    s_i: Scalar,
    s_k: Scalar,
}

fn fghk(p: &[Parity]) -> Fghk {
    let (i, j, k, l) = (p[0], p[1], p[2], p[3]);
    Fghk {
        f: v("f"),
        g: v("g"),
        h: v("h"),
        k: v("k"),
        s_l: s((i + j).times(l)),
        s_i: s((k + j).times(i)),
        s_k: s((l + j).times(k)),
    }
}

fn jorskob2_build(p: &[Parity]) -> Term {
    let Fghk { f, g, h, k, s_i, s_k, .. } = fghk(p);
    let hk = prod(h.clone(), k.clone());
    let kf = prod(k, f.clone());
    lin(vec![
        (s_i.clone(), prod(br(hk.clone(), g.clone()), f.clone())),
        (-s_i, prod(hk, br(g.clone(), f))),
        (-s_k.clone(), prod(br(kf.clone(), g.clone()), h.clone())),
        (s_k, prod(kf, br(g, h))),
    ])
}

fn jorskob3_build(p: &[Parity]) -> Term {
    let Fghk { f, g, h, k, s_l, s_i, s_k } = fghk(p);
    let fh = prod(f.clone(), h.clone());
    let hk = prod(h.clone(), k.clone());
    let kf = prod(k.clone(), f.clone());
    lin(vec![
        (s_l.clone(), br(prod(fh.clone(), g.clone()), k.clone())),
        (-s_l, prod(fh, br(g.clone(), k))),
        (-s_i.clone(), prod(br(hk.clone(), g.clone()), f.clone())),
        (s_i, br(hk, prod(g.clone(), f))),
        (-s_k.clone(), prod(br(kf.clone(), g.clone()), h.clone())),
        (s_k, br(kf, prod(g, h))),
    ])
}

fn jorskob1_build(p: &[Parity]) -> Term {
    let Fghk { f, g, h, k, s_l, s_i, s_k } = fghk(p);
    let fh = br(f.clone(), h.clone());
    let hk = br(h.clone(), k.clone());
    let kf = br(k.clone(), f.clone());
    lin(vec![
        (s_l.clone(), br(prod(fh.clone(), g.clone()), k.clone())),
        (s_i.clone(), br(prod(hk.clone(), g.clone()), f.clone())),
        (s_k.clone(), br(prod(kf.clone(), g.clone()), h.clone())),
        (-s_l, prod(fh, br(g.clone(), k))),
        (-s_i, prod(hk, br(g.clone(), f))),
        (-s_k, prod(kf, br(g, h))),
    ])
}

/// Linearized Jordan identity
/// `((xz)y)t + ((xt)y)z + ((zt)y)x = (xz)(yt) + (xt)(yz) + (zt)(yx)`,
/// each pair of terms signed by the Koszul sign of its letter order.
fn jordan_build(p: &[Parity]) -> Term {
    let (x, y, z, t) = (v("x"), v("y"), v("z"), v("t"));
    let mut out = Vec::new();
    for (a, b, c, order) in [
        (&x, &z, &t, [0, 2, 1, 3]),
        (&x, &t, &z, [0, 3, 1, 2]),
        (&z, &t, &x, [2, 3, 1, 0]),
    ] {
        let sign = koszul::permutation_sign(p, &order).expect("permutation");
        let ab = prod(a.clone(), b.clone());
        out.push((sign.clone(), prod(prod(ab.clone(), y.clone()), c.clone())));
        out.push((-sign, prod(ab, prod(y.clone(), c.clone()))));
    }
    lin(out)
}

pub const JO1: Identity = Identity { name: "jo1", vars: &["a", "b", "c"], build: jo1_build };
pub const JO2: Identity = Identity { name: "jo2", vars: &["a", "b", "c"], build: jo2_build };
pub const KMTOJD2: Identity = Identity { name: "kmtojd2", vars: &["a", "b", "c"], build: kmtojd2_build };
pub const GPIDENT: Identity = Identity { name: "gpident", vars: &["x", "y", "z"], build: gpident_build };
pub const JORDAN_GP: Identity = Identity {
    name: "jordangp",
    vars: &["a", "b", "c", "d"],
    build: jordan_gp_build,
};
pub const JORSKOB1: Identity = Identity {
    name: "jorskob1",
    vars: &["f", "g", "h", "k"],
    build: jorskob1_build,
};
pub const JORSKOB2: Identity = Identity {
    name: "jorskob2",
    vars: &["f", "g", "h", "k"],
    build: jorskob2_build,
};
pub const JORSKOB3: Identity = Identity {
    name: "jorskob3",
    vars: &["f", "g", "h", "k"],
    build: jorskob3_build,
};

pub const JORDAN: Identity = Identity {
    name: "jordan",
    vars: &["x", "y", "z", "t"],
    build: jordan_build,
};

pub const ALL: [Identity; 9] = [
    JO1, JO2, KMTOJD2, GPIDENT, JORDAN_GP, JORSKOB1, JORSKOB2, JORSKOB3, JORDAN,
];

pub fn by_name(name: &str) -> Option<Identity> {
    ALL.iter().copied().find(|i| i.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::engine::{FreeAlgebra, Theory};
    use std::collections::HashMap;
    use std::sync::Arc;

    fn holds(id: Identity, theory: Theory) -> bool {
        let alphabet = Arc::new(Alphabet::parse_list("x1,x2,x3,x4,s1:odd,s2:odd,s3:odd,s4:odd").unwrap());
        let alg = FreeAlgebra::new(alphabet, theory);
        id.patterns().iter().all(|pat| {
            let bindings: HashMap<String, _> = id
                .vars
                .iter()
                .zip(pat)
                .enumerate()
                .map(|(n, (name, p))| {
                    let g = if p.is_odd() { 5 + n } else { 1 + n };
                    (name.to_string(), alg.gen(g as u16))
                })
                .collect();
            alg.substitute(&id.term(pat), &bindings).unwrap().is_zero()
        })
    }

    #[test]
    fn defining_identities_on_generators() {
        assert!(holds(JO1, Theory::GenP));
        assert!(holds(JO2, Theory::GenP));
        assert!(holds(JO1, Theory::JB));
        assert!(holds(KMTOJD2, Theory::JB));
        assert!(!holds(KMTOJD2, Theory::GenP));
        assert!(!holds(JO2, Theory::JB));
        assert!(holds(GPIDENT, Theory::GP));
        assert!(!holds(JO2, Theory::GP));
    }

    #[test]
    fn jorskob_two_and_three_hold_in_gp() {
        assert!(holds(JORSKOB2, Theory::GP));
        assert!(holds(JORSKOB3, Theory::GP));
        assert!(!holds(JORSKOB1, Theory::GP));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("JO2").unwrap().name, "jo2");
        assert!(by_name("nope").is_none());
        assert_eq!(JORSKOB1.patterns().len(), 16);
    }
}
