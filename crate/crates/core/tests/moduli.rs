//! Parametric blocks and the involutivity ideal against instantiated blocks.

use tableaux::involutive::involutivity_test;
use tableaux::moduli::{
    agreement_sweep, involutivity_ideal, involutivity_ideal_with, parametric_endovolutive,
    point_check, seeded_assignment,
};
use tableaux::par::Execution;

#[test]
fn ideal_agrees_with_direct_involutivity() {
    for (r, n, chars) in [
        (3, 3, vec![3, 2, 0]),
        (2, 3, vec![2, 1, 0]),
        (2, 2, vec![2, 1]),
        (3, 3, vec![2, 2, 1]),
    ] {
        let p = parametric_endovolutive(r, n, &chars).unwrap();
        let ideal = involutivity_ideal(&p);
        for k in 0..30 {
            let x = seeded_assignment(&p, &[], 3, k);
            let direct = involutivity_test(&p.instantiate(&x).unwrap())
                .unwrap()
                .involutive();
            assert_eq!(
                point_check(&ideal, &x).unwrap(),
                direct,
                "{chars:?} point {k}"
            );
        }
    }
}

#[test]
fn assignments_round_trip_through_blocks() {
    let p = parametric_endovolutive(3, 3, &[3, 2, 0]).unwrap();
    for k in 0..10 {
        let x = seeded_assignment(&p, &[], 9, k);
        assert_eq!(
            p.assignment_from_blocks(&p.instantiate(&x).unwrap())
                .unwrap(),
            x
        );
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let p = parametric_endovolutive(3, 3, &[3, 2, 0]).unwrap();
    let s = involutivity_ideal_with(&p, Execution::Sequential);
    let q = involutivity_ideal_with(&p, Execution::Parallel);
    assert_eq!(s.generators, q.generators);
    let ideal = s;
    let a = agreement_sweep(&p, &ideal, &[], 20, 1, Execution::Sequential).unwrap();
    let b = agreement_sweep(&p, &ideal, &[], 20, 1, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}
