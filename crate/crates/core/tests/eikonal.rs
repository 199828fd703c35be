//! Poisson bracket identities and closure probes.

use proptest::prelude::*;
use tableaux::eikonal::{
    closure_probe, closure_probe_with, module_membership, phase_space, poisson_bracket,
};
use tableaux::exactlin::rat;
use tableaux::par::Execution;
use tableaux::polyring::{parse_poly, MPoly, Monomial};

fn observable() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 4), -4i64..=4), 1..4).prop_map(|terms| {
        let vars = phase_space(2);
        terms.into_iter().fold(MPoly::zero(&vars), |acc, (e, c)| {
            &acc + &MPoly::term(&vars, Monomial::from_exponents(e), rat(c))
        })
    })
}

fn br(f: &MPoly, g: &MPoly) -> MPoly {
    poisson_bracket(f, g).unwrap()
}

proptest! {
    #[test]
    fn antisymmetry(f in observable(), g in observable()) {
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
    }

    #[test]
    fn jacobi(f in observable(), g in observable(), h in observable()) {
        let s = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn leibniz(f in observable(), g in observable(), h in observable()) {
        let lhs = br(&f, &(&g * &h));
        let rhs = &(&br(&f, &g) * &h) + &(&g * &br(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }
}

fn gens(src: &[&str]) -> Vec<MPoly> {
    let vars = phase_space(3);
    src.iter().map(|s| parse_poly(s, &vars).unwrap()).collect()
}

#[test]
fn canonical_brackets() {
    let vars = phase_space(3);
    for i in 0..3 {
        for j in 0..3 {
            let b = br(&MPoly::var(&vars, i), &MPoly::var(&vars, 3 + j));
            // With the p-derivative of the first argument leading, {x_i, p_j} = -delta_ij.
            assert_eq!(b, MPoly::constant(&vars, rat(if i == j { -1 } else { 0 })));
        }
    }
}

#[test]
fn membership_is_monotone_in_the_bound() {
    for src in [
        &["p2", "p3"][..],
        &["p2 - x2*p1", "p3"],
        &["p1", "p2 + x1*p3"],
        &["p1^2 + p2^2 - p3^2"],
    ] {
        let g = gens(src);
        let mut was_closed = false;
        for bound in 0..=3 {
            let closed = closure_probe(&g, bound).unwrap().closed();
            assert!(
                !was_closed || closed,
                "{src:?} loses closure at bound {bound}"
            );
            was_closed = closed;
        }
    }
}

#[test]
fn certificates_reconstruct_the_bracket() {
    let g = gens(&["p2 - x2*p1", "p3"]);
    let rep = closure_probe(&g, 2).unwrap();
    for p in &rep.pairs {
        if let Some(c) = &p.member {
            let sum = c
                .iter()
                .zip(&g)
                .fold(MPoly::zero(g[0].vars()), |acc, (a, f)| &acc + &(a * f));
            assert_eq!(sum, p.bracket);
        }
    }
}

#[test]
fn twisted_module_is_not_closed() {
    let g = gens(&["p1", "p2 + x1*p3"]);
    let rep = closure_probe(&g, 3).unwrap();
    assert!(!rep.closed());
    assert!(module_membership(&gens(&["p3"])[0], &g, 3)
        .unwrap()
        .is_none());
}

#[test]
fn sequential_and_parallel_agree() {
    let g = gens(&["p2 - x2*p1", "p3", "p1^2 + p2^2 - p3^2"]);
    assert_eq!(
        closure_probe_with(&g, 2, Execution::Sequential).unwrap(),
        closure_probe_with(&g, 2, Execution::Parallel).unwrap()
    );
}
