//! End-to-end acceptance checks, one per criterion. Each prints a
//! PASS/FAIL line; the test fails if any criterion does.

use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tableaux::charvar::{
    guillemin_check, guillemin_triples, mutual_eigenspace, prepare, rank1_ideal, rank_one_samples,
    sample_vector, scheme_summary, xi_fibers, PHI_BATCH,
};
use tableaux::eikonal::{phase_space, poisson_bracket};
use tableaux::exactlin::{rat, Rational, RationalMatrix};
use tableaux::gallery;
use tableaux::involutive::{cartan_sum, cartan_test, involutivity_test};
use tableaux::moduli::{
    agreement_sweep, involutivity_ideal, parametric_endovolutive, point_check, seeded_assignment,
};
use tableaux::par::Execution;
use tableaux::polyring::{parse_poly, MPoly, Monomial};
use tableaux::prolong::{
    guillemin_sequence_check, prolongation, quillen_exactness_check, rank1_prolong_check,
};
use tableaux::tableau::{blocks, generic_frame, symbol_coeffs, SymbolBlocks, Tableau};
use tableaux::Error;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows)
}

fn frame_blocks(t: &Tableau) -> SymbolBlocks {
    let f = generic_frame(t, 0).unwrap();
    blocks(&symbol_coeffs(t, &f).unwrap())
}

fn involutive_gallery() -> Vec<(Tableau, tableaux::charvar::Prepared)> {
    gallery::all()
        .into_iter()
        .map(|t| {
            let p = prepare(&t, 0).unwrap();
            (t, p)
        })
        .filter(|(_, p)| p.report.involutive())
        .collect()
}

fn c1_characters() -> Outcome {
    let f = generic_frame(&gallery::hankel(), 0).map_err(|e| e.to_string())?;
    ensure(f.characters == vec![3, 2, 0], || {
        format!("characters {:?}", f.characters)
    })
}

fn c2_symbol_blocks() -> Outcome {
    let b = frame_blocks(&gallery::hankel());
    let expect = [
        [
            m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            m(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
            m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]),
        ],
        [
            m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
            m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
            m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
        ],
    ];
    ensure(b.blocks.len() == 2, || "two block rows expected".into())?;
    for (l, row) in expect.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            ensure(b.blocks[l][i] == *e, || {
                format!("B^{}_{} = {}", l + 1, i + 1, b.blocks[l][i])
            })?;
        }
    }
    Ok(())
}

/// The endovolutive wave blocks as usually displayed.
fn wave_display() -> SymbolBlocks {
    let i3 = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let z = RationalMatrix::zeros(3, 3);
    SymbolBlocks::new(
        3,
        3,
        vec![3, 2, 0],
        vec![
            vec![
                i3,
                m(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            ],
            vec![
                z,
                m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
                m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
            ],
        ],
    )
    .unwrap()
}

fn c3_involutivity() -> Outcome {
    // The computed frame agrees with the display after swapping z1 and z2.
    let b = frame_blocks(&gallery::wave());
    let p = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let display = wave_display();
    for l in 0..2 {
        for i in 0..3 {
            let conj = p.mul(&b.blocks[l][i]).unwrap().mul(&p).unwrap();
            ensure(conj == display.blocks[l][i], || {
                format!("B^{}_{} differs from the display", l + 1, i + 1)
            })?;
        }
    }
    for blocks in [&b, &display] {
        let rep = involutivity_test(blocks).map_err(|e| e.to_string())?;
        ensure(rep.involutive() && rep.violations.is_empty(), || {
            rep.render()
        })?;
    }
    let mut bad = display.clone();
    bad.blocks[0][2][(2, 2)] = rat(1);
    let rep = involutivity_test(&bad).map_err(|e| e.to_string())?;
    ensure(rep.endovolutive && rep.quadratic_ok == Some(false), || {
        rep.render()
    })?;
    let v = &rep.violations[0];
    ensure(
        (v.lambda, v.mu, v.l, v.k, v.a, v.b) == (0, 0, 1, 2, 2, 0) && v.value == rat(-1),
        || v.render(),
    )?;
    let again = tableaux::involutive::quadratic_entry(&bad, v.lambda, v.mu, v.l, v.k, v.a, v.b);
    ensure(again == v.value, || {
        "certificate does not reproduce its value".into()
    })
}

fn c4_cartan() -> Outcome {
    for t in [gallery::hankel(), gallery::wave()] {
        let f = generic_frame(&t, 0).map_err(|e| e.to_string())?;
        let kernel_dim = prolongation(&t).dim();
        let sum = cartan_sum(&f.characters);
        ensure(kernel_dim == 7 && sum == 7, || {
            format!("{}: dim A(1) = {kernel_dim}, sum = {sum}", t.name())
        })?;
    }
    Ok(())
}

fn c5_rank_one() -> Outcome {
    let t = gallery::hankel();
    let ideal = rank1_ideal(&t).map_err(|e| e.to_string())?;
    for kappa in 0..4i64 {
        for tau in 0..4i64 {
            let alpha: Vec<Rational> = (0..5u32)
                .map(|k| rat(kappa.pow(4 - k) * tau.pow(k)))
                .collect();
            let pi = t.element(&alpha);
            let w = [rat(kappa * kappa), rat(kappa * tau), rat(tau * tau)];
            ensure(pi == tableaux::tableau::outer(&w, &w), || {
                "matrix is not the Veronese point".into()
            })?;
            ensure(t.contains(&pi), || format!("({kappa},{tau}) not in A"))?;
            // (0,0) is the vertex of the cone, of rank 0.
            let want = if kappa == 0 && tau == 0 { 0 } else { 1 };
            ensure(pi.rank() == want, || {
                format!("({kappa},{tau}) has rank {}", pi.rank())
            })?;
            ensure(ideal.vanishes_at(&alpha).unwrap(), || {
                format!("ideal nonzero at ({kappa},{tau})")
            })?;
        }
    }
    let one = rank1_ideal(&gallery::onedim()).map_err(|e| e.to_string())?;
    let expect = parse_poly("a0^2 - 9*a1*a2", &one.vars).unwrap().monic();
    ensure(
        one.generators.len() == 1 && one.generators[0].monic() == expect,
        || {
            format!(
                "{:?}",
                one.generators
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
            )
        },
    )
}

fn c6_scheme() -> Outcome {
    let cases = [
        ("wave", (Some(1), 2), None),
        ("hankel", (Some(1), 2), None),
        ("onedim", (Some(1), 1), None),
        ("zerodim-a", (Some(0), 4), Some(vec![1, 1, 1, 1])),
        ("zerodim-b", (Some(0), 4), Some(vec![2, 1, 1])),
        ("zerodim-c", (Some(0), 4), Some(vec![2, 1, 1])),
        ("zerodim-d", (Some(0), 4), Some(vec![3, 1])),
    ];
    for (name, dd, pattern) in cases {
        let s = scheme_summary(&gallery::load(name).unwrap(), 0).map_err(|e| e.to_string())?;
        ensure(
            (s.dim, s.degree) == dd && s.total_degree() == s.degree,
            || format!("{name}: {}", s.render()),
        )?;
        if let Some(p) = pattern {
            ensure(s.multiplicity_pattern() == p, || {
                format!("{name}: {:?}", s.multiplicity_pattern())
            })?;
        }
    }
    Ok(())
}

fn c7_eigenspaces() -> Outcome {
    for (t, p) in involutive_gallery() {
        let ell = p.frame.character_index();
        let s_ell = p.frame.cartan_integer();
        for k in 0..PHI_BATCH {
            let phi = sample_vector(ell, 20, 0, k);
            let d = mutual_eigenspace(&p.blocks, &phi)
                .map_err(|e| e.to_string())?
                .dim();
            ensure(d == s_ell, || {
                format!("{}: dim W1 = {d} at phi #{k}", t.name())
            })?;
        }
    }
    let p = prepare(&gallery::onedim(), 0).map_err(|e| e.to_string())?;
    for tau in 0..5i64 {
        let phi = vec![rat(3), rat(tau)];
        let w1 = mutual_eigenspace(&p.blocks, &phi).map_err(|e| e.to_string())?;
        ensure(
            w1.dim() == 1 && w1.contains(&[rat(3 * tau), rat(1)]),
            || format!("fiber at tau = {tau}"),
        )?;
        let sheets = xi_fibers(&p.blocks, &phi, &[rat(1)]).map_err(|e| e.to_string())?;
        let xi = vec![rat(3), rat(tau), rat(15 + 9 * tau)];
        ensure(
            sheets.len() == 1 && sheets[0].xi.as_ref() == Some(&xi) && sheets[0].in_tableau,
            || format!("sheet at tau = {tau}"),
        )?;
    }
    Ok(())
}

fn c8_normal_form() -> Outcome {
    for (t, p) in involutive_gallery() {
        for (k, (phi, v, v2)) in guillemin_triples(&p.blocks, 10, 0).into_iter().enumerate() {
            let r = guillemin_check(&p.blocks, &phi, &v, &v2).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{}: triple {k} {r:?}", t.name()))?;
        }
    }
    Ok(())
}

fn c9_prolongation() -> Outcome {
    for t in gallery::all() {
        let p = prepare(&t, 0).map_err(|e| e.to_string())?;
        let samples = rank_one_samples(&p.frame, &p.blocks, 6, 0).map_err(|e| e.to_string())?;
        ensure(!samples.is_empty(), || {
            format!("{}: no rank-one samples", t.name())
        })?;
        let r = rank1_prolong_check(&t, &samples).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.backward_checked > 0, || {
            format!("{}: {r:?}", t.name())
        })?;
        let a1 = prolongation(&t)
            .as_tableau("A(1)")
            .map_err(|e| e.to_string())?;
        let f = generic_frame(&a1, 0).map_err(|e| e.to_string())?;
        let c = cartan_test(&a1, &f);
        ensure(c.equal(), || {
            format!("{}: A(1) Cartan {} vs {}", t.name(), c.lhs, c.rhs)
        })?;
    }
    Ok(())
}

fn c10_moduli() -> Outcome {
    let p = parametric_endovolutive(3, 3, &[3, 2, 0]).map_err(|e| e.to_string())?;
    let ideal = involutivity_ideal(&p);
    let expect: Vec<MPoly> = [
        "x0*x3 + x1*x4 + x2*x5 - x0*x11",
        "x0*x6 + x1*x7 + x2*x8 - x1*x11",
        "x0*x9 + x1*x10",
        "x0*x12 + x1*x13 - x5",
        "x0*x14 + x1*x15 - x8",
    ]
    .iter()
    .map(|s| parse_poly(s, &p.vars).unwrap())
    .collect();
    ensure(ideal.generators.len() == 5, || ideal.render())?;
    for e in &expect {
        ensure(ideal.generators.iter().any(|g| g == e || *g == -e), || {
            format!("missing {e}")
        })?;
    }
    let component = [0, 1, 5, 8];
    for k in 0..10 {
        let x = seeded_assignment(&p, &component, 7, k);
        ensure(point_check(&ideal, &x).unwrap(), || {
            format!("component point {k} fails")
        })?;
    }
    let mut sweep = agreement_sweep(&p, &ideal, &component, 25, 11, Execution::default())
        .map_err(|e| e.to_string())?;
    sweep.extend(
        agreement_sweep(&p, &ideal, &[], 25, 13, Execution::default())
            .map_err(|e| e.to_string())?,
    );
    ensure(
        sweep.len() == 50 && sweep.iter().all(|a| a.symbolic == a.numeric),
        || "symbolic and numeric disagree".into(),
    )?;
    ensure(
        sweep.iter().any(|a| a.symbolic) && sweep.iter().any(|a| !a.symbolic),
        || "sweep is one-sided".into(),
    )
}

fn c11_exactness() -> Outcome {
    for t in [gallery::wave(), gallery::hankel()] {
        let mut found = false;
        for k in 0..20 {
            let phi = sample_vector(t.n(), 20, 0, k);
            match quillen_exactness_check(&t, &phi) {
                Ok(rep) => {
                    ensure(rep.exact(), || format!("{}: {}", t.name(), rep.render()))?;
                    found = true;
                    break;
                }
                Err(Error::Characteristic(_)) => continue,
                Err(e) => return Err(e.to_string()),
            }
        }
        ensure(found, || format!("{}: no non-characteristic phi", t.name()))?;
        let f = generic_frame(&t, 0).map_err(|e| e.to_string())?;
        let g = guillemin_sequence_check(&t, &f).map_err(|e| e.to_string())?;
        ensure(g.exact(), || format!("{}: {}", t.name(), g.render()))?;
    }
    Ok(())
}

fn random_observable(rng: &mut ChaCha8Rng) -> MPoly {
    let vars = phase_space(3);
    let mut f = MPoly::zero(&vars);
    for _ in 0..4 {
        let e: Vec<u32> = (0..6)
            .map(|_| {
                if rng.random_bool(0.4) {
                    rng.random_range(1..=2)
                } else {
                    0
                }
            })
            .collect();
        let c = rat(rng.random_range(-5..=5));
        f = &f + &MPoly::term(&vars, Monomial::from_exponents(e), c);
    }
    f
}

fn c12_eikonal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for k in 0..25 {
        let (f, g, h) = (
            random_observable(&mut rng),
            random_observable(&mut rng),
            random_observable(&mut rng),
        );
        let br = |a: &MPoly, b: &MPoly| poisson_bracket(a, b).unwrap();
        ensure(br(&f, &g) == -&br(&g, &f), || {
            format!("antisymmetry fails at {k}")
        })?;
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        ensure(jacobi.is_zero(), || format!("Jacobi fails at {k}"))?;
        let leibniz = &br(&f, &(&g * &h)) - &(&(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        ensure(leibniz.is_zero(), || format!("Leibniz fails at {k}"))?;
    }
    let tests = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    for (name, bound) in [
        ("coordinate", "3"),
        ("cone", "3"),
        ("sheared", "2"),
        ("twisted", "3"),
    ] {
        let path = tests.join("data").join(format!("{name}.toml"));
        let out = Command::new(env!("CARGO_BIN_EXE_tableaux"))
            .args(["eikonal", path.to_str().unwrap(), "--bound", bound])
            .output()
            .map_err(|e| e.to_string())?;
        let golden = std::fs::read(tests.join("golden").join(format!("eikonal-{name}.txt")))
            .map_err(|e| e.to_string())?;
        ensure(out.status.success() && out.stdout == golden, || {
            format!("{name} differs from its golden file")
        })?;
    }
    Ok(())
}

fn c13_determinism() -> Outcome {
    for name in gallery::names() {
        let runs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_tableaux"))
                    .args(["analyze", name, "--seed", "0"])
                    .output()
                    .map(|o| o.stdout)
                    .unwrap_or_default()
            })
            .collect();
        ensure(
            !runs[0].is_empty() && runs.iter().all(|r| *r == runs[0]),
            || format!("{name} output varies"),
        )?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("Cartan characters of the Hankel tableau", c1_characters),
        ("Hankel symbol blocks", c2_symbol_blocks),
        ("wave involutivity and a planted violation", c3_involutivity),
        ("Cartan's test for Hankel and wave", c4_cartan),
        ("rank-one variety", c5_rank_one),
        (
            "characteristic scheme dimension, degree, multiplicities",
            c6_scheme,
        ),
        ("mutual eigenspaces and sheets", c7_eigenspaces),
        ("normal form invariance and commutation", c8_normal_form),
        (
            "prolongation of rank-one elements and of Cartan equality",
            c9_prolongation,
        ),
        ("moduli ideal", c10_moduli),
        ("exact sequences", c11_exactness),
        ("Poisson identities and closure verdicts", c12_eikonal),
        ("deterministic reports", c13_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} PASS  {name}", k + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
