#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;

use jbalg::lincomb::Lin;
use jbalg::{linalg, scalar, Alphabet, Element, FreeAlgebra, GenId, LieWord, Monomial, MultiDegree, Parity, Scalar, Theory};

pub fn free(theory: Theory, decl: &str) -> FreeAlgebra {
    FreeAlgebra::new(Arc::new(Alphabet::parse_list(decl).unwrap()), theory)
}

/// Every basis monomial whose degree, units included, is at most `max`.
pub fn monomials_up_to(alg: &FreeAlgebra, max: u32) -> Vec<Monomial> {
    let top = MultiDegree::new(vec![max; alg.alphabet().len()]);
    let mut out = Vec::new();
    for d in top.sub_degrees() {
        if d.total() <= max {
            out.extend(alg.enumerate_basis(&d));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn small_coeff<R: Rng>(rng: &mut R) -> Scalar {
    let p = loop {
        let p = rng.gen_range(-4i64..=4);
        if p != 0 {
            break p;
        }
    };
    scalar::ratio(p, rng.gen_range(1..=3))
}

/// A homogeneous combination of up to three basis monomials of one random
/// multidegree of the given total degree. Unit occurrences are allowed.
pub fn random_homogeneous<R: Rng>(alg: &FreeAlgebra, rng: &mut R, degree: u32) -> Element {
    let n = alg.alphabet().len();
    loop {
        let mut counts = vec![0u32; n];
        for _ in 0..degree {
            let i = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..n) };
            counts[i] += 1;
        }
        if counts[1..].iter().all(|&c| c == 0) {
            continue;
        }
        let basis = alg.enumerate_basis(&MultiDegree::new(counts));
        if basis.is_empty() {
            continue;
        }
        let mut e = alg.zero();
        for _ in 0..rng.gen_range(1..=basis.len().min(3)) {
            let m = basis[rng.gen_range(0..basis.len())].clone();
            e = e.add(&Element::monomial(alg.theory(), m, small_coeff(rng))).unwrap();
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random element mixing several multidegrees.
pub fn random_element<R: Rng>(alg: &FreeAlgebra, rng: &mut R, max_degree: u32) -> Element {
    let mut e = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(1..=max_degree);
        e = e.add(&random_homogeneous(alg, rng, d)).unwrap();
    }
    e
}

fn parity(ws: &[LieWord]) -> Parity {
    ws.iter().map(LieWord::parity).sum()
}

fn product(alg: &FreeAlgebra, ws: &[LieWord]) -> Element {
    ws.iter().fold(alg.one(), |acc, w| alg.mul(&acc, &alg.word(w)).unwrap())
}

/// `{a, b}` for products of basis words, expanded by the Leibniz rule one
/// factor at a time from the left (`left`) or from the right, down to
/// brackets of single words.
pub fn leibniz_bracket(alg: &FreeAlgebra, a: &[LieWord], b: &[LieWord], left: bool) -> Element {
    let d_term = alg.theory() != Theory::GP;
    match (a.len(), b.len()) {
        (_, 2..) => {
            let k = if left { 1 } else { b.len() - 1 };
            let (u, v) = b.split_at(k);
            let sign = scalar::sign(parity(a).times(parity(u)));
            let first = alg.mul(&leibniz_bracket(alg, a, u, left), &product(alg, v)).unwrap();
            let second = alg.mul(&product(alg, u), &leibniz_bracket(alg, a, v, left)).unwrap();
            let mut out = first.add(&second.scaled(&sign)).unwrap();
            if d_term {
                let da = leibniz_bracket(alg, a, &[], left);
                out = out.sub(&alg.mul(&da, &product(alg, b)).unwrap()).unwrap();
            }
            out
        }
        (2.., 1) => {
            let sign = -scalar::sign(parity(a).times(parity(b)));
            leibniz_bracket(alg, b, a, left).scaled(&sign)
        }
        (1, 1) => alg.bracket(&alg.word(&a[0]), &alg.word(&b[0])).unwrap(),
        (0, 1) => alg.bracket(&alg.one(), &alg.word(&b[0])).unwrap(),
        (2.., 0) => {
            // D is an even derivation
            let k = if left { 1 } else { a.len() - 1 };
            let (u, v) = a.split_at(k);
            let du = alg.mul(&leibniz_bracket(alg, u, &[], left), &product(alg, v)).unwrap();
            let dv = alg.mul(&product(alg, u), &leibniz_bracket(alg, v, &[], left)).unwrap();
            du.add(&dv).unwrap()
        }
        (1, 0) => alg.bracket(&alg.word(&a[0]), &alg.one()).unwrap(),
        (0, 0) => alg.zero(),
    }
}

/// Pairs of basis monomials of total degree at most `max` on which the
/// engine bracket disagrees with either Leibniz expansion.
pub fn confluence_failures(alg: &FreeAlgebra, max: u32) -> (usize, Vec<String>) {
    let ms = monomials_up_to(alg, max);
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in &ms {
        for b in &ms {
            if a.multidegree().total() + b.multidegree().total() > max {
                continue;
            }
            checked += 1;
            let (fa, fb) = (a.flat(), b.flat());
            let engine = alg
                .bracket(
                    &Element::monomial(alg.theory(), a.clone(), scalar::one()),
                    &Element::monomial(alg.theory(), b.clone(), scalar::one()),
                )
                .unwrap();
            for left in [true, false] {
                if leibniz_bracket(alg, &fa, &fb, left) != engine {
                    failures.push(format!(
                        "{{{}, {}}} ({})",
                        a.display(alg.alphabet()),
                        b.display(alg.alphabet()),
                        if left { "left" } else { "right" }
                    ));
                }
            }
        }
    }
    (checked, failures)
}

type Assoc = Lin<Vec<GenId>>;

fn commutator(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Lin::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            let mut xy = x.clone();
            xy.extend(y);
            out.add_term(xy, cx * cy);
            let mut yx = y.clone();
            yx.extend(x);
            out.add_term(yx, -(cx * cy));
        }
    }
    out
}

fn bracketings(letters: &[GenId]) -> Vec<Assoc> {
    if letters.len() == 1 {
        return vec![Lin::single(letters.to_vec(), scalar::one())];
    }
    let mut out = Vec::new();
    for k in 1..letters.len() {
        for l in bracketings(&letters[..k]) {
            for r in bracketings(&letters[k..]) {
                out.push(commutator(&l, &r));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<GenId>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n as GenId);
            out.push(q);
        }
    }
    out
}

/// Dimension of the multilinear part of the free Lie algebra on `n` even
/// letters: rank of every bracketing of every ordering, embedded as
/// commutators in the free associative algebra.
pub fn brute_force_lie_dimension(n: usize) -> usize {
    let mut all = Vec::new();
    for p in permutations(n) {
        all.extend(bracketings(&p));
    }
    let mut index = std::collections::BTreeMap::new();
    for e in &all {
        for (k, _) in e {
            let len = index.len();
            index.entry(k.clone()).or_insert(len);
        }
    }
    let columns: Vec<Vec<Scalar>> = all
        .iter()
        .map(|e| {
            let mut col = vec![scalar::zero(); index.len()];
            for (k, c) in e {
                col[index[k]] = c.clone();
            }
            col
        })
        .collect();
    linalg::rank(&columns)
}

/// Runs the command line in-process; returns exit code, stdout and stderr.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["jbalg"];
    full.extend_from_slice(args);
    let code = jbalg::cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}
