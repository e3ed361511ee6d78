use super::*;
use crate::term::{d, gen, sub, unit};

fn seq() -> Strategy {
    Strategy::Sequential
}

#[test]
fn wronskian_tables() {
    let w = wronskian(2);
    let t = w.basis(1);
    assert_eq!(w.d(&t).unwrap(), t);
    let w = wronskian(3);
    let (t, t2) = (w.basis(1), w.basis(2));
    let gens = HashMap::from([(1, t.clone()), (2, t2.clone())]);
    let v = w.evaluate(&br(gen(1), gen(2)), &HashMap::new(), &gens).unwrap();
    // D(t)t² − tD(t²) = t³ − 2t³ = 0 in ℚ[t]/(t³)
    assert!(is_zero_vec(&v));
    let v = w.evaluate(&br(gen(1), gen(1)), &HashMap::new(), &gens).unwrap();
    assert!(is_zero_vec(&v));
    let w4 = wronskian(4);
    let gens = HashMap::from([(1, w4.basis(1)), (2, w4.basis(2))]);
    let v = w4.evaluate(&br(gen(1), gen(2)), &HashMap::new(), &gens).unwrap();
    assert_eq!(w4.format_vector(&v), "-1/1 t3");
}

#[test]
fn wronskian_validates_as_genp_and_jb() {
    for m in 2..=4 {
        let w = wronskian(m);
        assert!(w.validate(seq()).unwrap().passed());
        assert!(w.clone().with_claim(Claim::JB).validate(seq()).unwrap().passed());
        let p = w.with_claim(Claim::Poisson).validate(seq()).unwrap();
        assert!(!p.get("gpident").unwrap().passed());
        assert!(p.get("gpident").unwrap().witness.is_some());
    }
}

#[test]
fn angle_bracket_vanishes_on_wronskian() {
    let w = wronskian(3);
    let x = || var("x");
    let y = || var("y");
    let angle = lin(vec![
        (scalar::one(), br(x(), y())),
        (-scalar::one(), prod(d(x()), y())),
        (scalar::one(), prod(x(), d(y()))),
    ]);
    assert!(w.is_identity(&angle, seq()).unwrap().passed());
}

#[test]
fn broken_anticommutativity_is_caught() {
    let mut a = StructureAlgebra::new(vec![Parity::Even; 2], Claim::None);
    a.set_bracket(0, 1, vec![(0, scalar::one())]).unwrap();
    let r = a.validate(seq()).unwrap();
    assert!(!r.get("anticommutativity").unwrap().passed());
    assert!(a.set_bracket(0, 5, vec![]).is_err());
}

#[test]
fn evaluation_basics() {
    let w = wronskian(3);
    let v = vec![scalar::int(2), scalar::ratio(1, 2), scalar::zero()];
    let vars = HashMap::from([("v".to_string(), v.clone())]);
    assert_eq!(w.evaluate(&prod(unit(), var("v")), &vars, &HashMap::new()).unwrap(), v);
    assert!(w.evaluate(&var("u"), &vars, &HashMap::new()).is_err());
    let nounit = StructureAlgebra::new(vec![Parity::Even], Claim::None);
    assert_eq!(nounit.evaluate(&unit(), &vars, &HashMap::new()), Err(Error::NoUnit));
}

#[test]
fn jo1_holds_on_random_vectors() {
    use rand::{Rng, SeedableRng};
    let w = wronskian(4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let term = identities::JO1.even();
    for _ in 0..20 {
        let mut vars = HashMap::new();
        for name in ["a", "b", "c"] {
            let v: Vector = (0..4).map(|_| scalar::int(rng.gen_range(-5..=5))).collect();
            vars.insert(name.to_string(), v);
        }
        assert!(is_zero_vec(&w.evaluate(&term, &vars, &HashMap::new()).unwrap()));
    }
}

#[test]
fn zero_product_example() {
    let a = zero_mul_anticommutative(3, &nonlie_table()).unwrap();
    assert!(a.validate(seq()).unwrap().passed());
    assert!(a.check_identity(&identities::JORDAN_GP, seq()).unwrap().passed());
    let jacobi = a.check_identity(&identities::JO2, seq()).unwrap();
    assert!(!jacobi.passed());
    let bad = [(0, 1, vec![(2, scalar::one())]), (1, 0, vec![(2, scalar::one())])];
    assert!(matches!(zero_mul_anticommutative(3, &bad), Err(Error::NotAnticommutative(_))));
    let flat = zero_mul_anticommutative(3, &[]).unwrap().with_claim(Claim::Poisson);
    assert!(flat.validate(seq()).unwrap().passed());
}

#[test]
fn unital_non_poisson_gp_breaks_jordan_gp() {
    let a = unitization(&zero_mul_anticommutative(3, &nonlie_table()).unwrap());
    assert!(a.validate(seq()).unwrap().passed());
    assert!(!a.check_identity(&identities::JORDAN_GP, seq()).unwrap().passed());
}

#[test]
fn identity_checks() {
    let w = wronskian(3);
    assert!(w.is_identity(&crate::term::zero(), seq()).unwrap().passed());
    // commutativity written with a repeated variable is linearized first
    let sq = sub(prod(var("x"), var("x")), prod(var("x"), var("x")));
    assert!(w.is_identity(&sq, seq()).unwrap().passed());
    let not_id = prod(var("x"), var("x"));
    assert!(!w.is_identity(&not_id, seq()).unwrap().passed());
    let mixed = lin(vec![(scalar::one(), var("x")), (scalar::one(), prod(var("x"), var("x")))]);
    assert!(matches!(w.is_identity(&mixed, seq()), Err(Error::NotMultilinearizable(_))));
    let par = w.is_identity(&not_id, Strategy::Parallel).unwrap();
    assert_eq!(par, w.is_identity(&not_id, seq()).unwrap());
}

#[test]
fn json_round_trip() {
    let w = wronskian(3);
    let back = StructureAlgebra::from_json(&w.to_json()).unwrap();
    assert_eq!(back, w);
    let src = r#"{"dim":2,"parity":[0,1],"unit":[1,0],
        "product":{"0,0":[[0,"1/1"]],"0,1":[[1,"1/1"]],"1,0":[[1,1]]},
        "bracket":{},"claim":"gp"}"#;
    let a = StructureAlgebra::from_json(src).unwrap();
    assert_eq!(a.claim(), Claim::GP);
    assert!(a.validate(seq()).unwrap().passed());
    assert!(StructureAlgebra::from_json(r#"{"dim":1,"parity":[0],"product":{"0,3":[]}}"#).is_err());
}

#[test]
fn untwisted_wronskian_doubles_the_bracket() {
    let w = wronskian(3);
    let u = untwisted(&w).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = (w.basis(i), w.basis(j));
            let want: Vector = w.bracket(&a, &b).iter().map(|c| c * scalar::int(2)).collect();
            assert_eq!(u.bracket(&a, &b), want);
        }
    }
    assert!(u.validate(seq()).unwrap().passed());
}
