mod common;

use jbalg::Theory;

fn check(theory: Theory, decl: &str, max: u32) {
    let alg = common::free(theory, decl);
    let (checked, failures) = common::confluence_failures(&alg, max);
    assert!(checked > 100, "only {checked} pairs");
    assert!(failures.is_empty(), "{theory:?}: {} disagreements, first: {:?}", failures.len(), &failures[..failures.len().min(5)]);
}

#[test]
fn genp_leibniz_expansions_agree() {
    check(Theory::GenP, "x1,x2,t:odd", 4);
}

#[test]
fn jb_leibniz_expansions_agree() {
    check(Theory::JB, "x1,x2,t:odd", 4);
}

#[test]
fn gp_leibniz_expansions_agree() {
    check(Theory::GP, "x1,x2,t:odd", 4);
}

#[test]
fn all_even_letters() {
    check(Theory::JB, "x1,x2,x3", 4);
}
