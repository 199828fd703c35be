//! Frame, symbol and prolongation invariants.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tableaux::exactlin::{rat, RationalMatrix, Subspace};
use tableaux::gallery;
use tableaux::involutive::{
    cartan_sum, cartan_test, endovolutivize, involutivity_test, involutivity_test_with,
    is_endovolutive, quadratic_entry, restrict_to_u,
};
use tableaux::par::Execution;
use tableaux::prolong::{prolongation, spencer_dims};
use tableaux::tableau::{
    blocks, generic_frame, random_invertible, symbol_coeffs, unflatten, Frame, SymbolBlocks,
    Tableau,
};

fn tableau_from(n: usize, r: usize, entries: &[Vec<i64>]) -> Option<Tableau> {
    let vecs: Vec<Vec<_>> = entries
        .iter()
        .map(|v| v.iter().map(|&x| rat(x)).collect())
        .collect();
    let span = Subspace::span(r * n, &vecs);
    let basis = span.basis().iter().map(|v| unflatten(v, r, n)).collect();
    Tableau::new("random", n, r, basis).ok()
}

fn random_tableau() -> impl Strategy<Value = Tableau> {
    (1..=3usize, 1..=3usize)
        .prop_flat_map(|(n, r)| {
            let d = 1..=r * n;
            (
                Just(n),
                Just(r),
                d.prop_flat_map(move |d| {
                    prop::collection::vec(prop::collection::vec(-2i64..=2, r * n), d)
                }),
            )
        })
        .prop_filter_map("zero span", |(n, r, e)| {
            tableau_from(n, r, &e).filter(|t| t.dim() > 0)
        })
}

fn endo_blocks(t: &Tableau) -> (Frame, SymbolBlocks) {
    let f = generic_frame(t, 0).unwrap();
    let f = endovolutivize(t, &f, 0)
        .unwrap()
        .frame
        .expect("endovolutive frame");
    let b = blocks(&symbol_coeffs(t, &f).unwrap());
    (f, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cartan_inequality(t in random_tableau()) {
        let f = generic_frame(&t, 0).unwrap();
        prop_assert!(prolongation(&t).dim() <= cartan_sum(&f.characters));
        prop_assert_eq!(f.characters.iter().sum::<usize>(), t.dim());
    }

    #[test]
    fn characters_and_prolongation_are_gauge_invariant(t in random_tableau(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gv = random_invertible(t.n(), 3, &mut rng);
        let gw = random_invertible(t.r(), 3, &mut rng);
        let u = t.transform(&gv, &gw).unwrap();
        prop_assert_eq!(prolongation(&u).dim(), prolongation(&t).dim());
        prop_assert_eq!(generic_frame(&u, 1).unwrap().characters, generic_frame(&t, 0).unwrap().characters);
    }

    #[test]
    fn endovolutivize_is_deterministic(t in random_tableau()) {
        let f = generic_frame(&t, 0).unwrap();
        let a = endovolutivize(&t, &f, 5).unwrap();
        let b = endovolutivize(&t, &f, 5).unwrap();
        prop_assert_eq!(&a.frame, &b.frame);
        if let Some(g) = a.frame {
            prop_assert_eq!(&g.characters, &f.characters);
            prop_assert!(is_endovolutive(&blocks(&symbol_coeffs(&t, &g).unwrap())));
        }
    }

    #[test]
    fn violations_reproduce_their_values(t in random_tableau()) {
        let f = generic_frame(&t, 0).unwrap();
        if let Some(g) = endovolutivize(&t, &f, 0).unwrap().frame {
            let b = blocks(&symbol_coeffs(&t, &g).unwrap());
            let rep = involutivity_test(&b).unwrap();
            for v in &rep.violations {
                prop_assert_eq!(&quadratic_entry(&b, v.lambda, v.mu, v.l, v.k, v.a, v.b), &v.value);
                prop_assert!(v.value != rat(0));
            }
            // An involutive symbol satisfies Cartan's test with equality.
            if rep.involutive() {
                prop_assert_eq!(rep.cartan_lhs, rep.cartan_rhs);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree(t in random_tableau()) {
        let f = generic_frame(&t, 0).unwrap();
        if let Some(g) = endovolutivize(&t, &f, 0).unwrap().frame {
            let b = blocks(&symbol_coeffs(&t, &g).unwrap());
            let s = involutivity_test_with(&b, Execution::Sequential).unwrap();
            let p = involutivity_test_with(&b, Execution::Parallel).unwrap();
            prop_assert_eq!(s.violations, p.violations);
            prop_assert_eq!(s.entries_checked, p.entries_checked);
        }
    }
}

#[test]
fn full_tableau_prolongs_to_all_symmetric_tensors() {
    for (n, r) in [(1, 1), (2, 1), (2, 3), (3, 2), (4, 1)] {
        let t = Tableau::full(n, r);
        assert_eq!(prolongation(&t).dim(), r * n * (n + 1) / 2);
        assert_eq!(spencer_dims(&t, n).unwrap(), vec![0; n]);
    }
}

#[test]
fn triangular_change_of_v_basis_keeps_blocks_endovolutive() {
    for t in [gallery::hankel(), gallery::wave(), gallery::onedim()] {
        // Rows of gV are covectors, so an upper-triangular factor keeps the
        // flag spanned by the frame vectors.
        let (f, b0) = endo_blocks(&t);
        assert!(is_endovolutive(&b0));
        for seed in 0..5u64 {
            let n = t.n();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = random_invertible(n, 3, &mut rng);
            let mut tri = RationalMatrix::identity(n);
            for i in 0..n {
                for j in i + 1..n {
                    tri[(i, j)] = r[(i, j)].clone();
                }
            }
            let g = Frame {
                gv: tri.mul(&f.gv).unwrap(),
                ..f.clone()
            };
            let b = blocks(&symbol_coeffs(&t, &g).unwrap());
            assert!(is_endovolutive(&b), "{} seed {seed}", t.name());
            assert_eq!(
                involutivity_test(&b).unwrap().involutive(),
                involutivity_test(&b0).unwrap().involutive()
            );
        }
    }
}

#[test]
fn restriction_to_u_keeps_the_prolongation() {
    let t = gallery::wave();
    let f = generic_frame(&t, 0).unwrap();
    let u = restrict_to_u(&t, &f).unwrap();
    let g = generic_frame(&u, 0).unwrap();
    assert_eq!(prolongation(&u).dim(), 7);
    assert_eq!(cartan_test(&u, &g).lhs, 7);
}

#[test]
fn generic_plane_of_square_matrices() {
    // A generic 2-dimensional tableau in 2x2 matrices has characters (2, 0)
    // and is involutive.
    let t = Tableau::new(
        "plane",
        2,
        2,
        vec![
            RationalMatrix::from_i64(&[&[1, 2], &[3, -1]]),
            RationalMatrix::from_i64(&[&[0, 1], &[-2, 5]]),
        ],
    )
    .unwrap();
    let f = generic_frame(&t, 0).unwrap();
    assert_eq!(f.characters, vec![2, 0]);
    assert!(cartan_test(&t, &f).equal());
}
