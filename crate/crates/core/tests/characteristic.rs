//! Characteristic ideal and scheme checks against direct computation.

use tableaux::charvar::{
    char_ideal, incidence_check, is_determined, prepare, rank_one_samples, sample_vector,
    scheme_summary, scheme_summary_from, sigma_phi,
};
use tableaux::exactlin::RationalMatrix;
use tableaux::gallery;
use tableaux::tableau::Tableau;

#[test]
fn factorization_type_is_stable_in_v() {
    for t in gallery::all() {
        let p = prepare(&t, 0).unwrap();
        let base = scheme_summary(&t, 0).unwrap();
        for seed in 1..=5 {
            let s = scheme_summary_from(t.name(), &p.blocks, p.report.involutive(), seed).unwrap();
            assert_eq!(
                s.multiplicity_pattern(),
                base.multiplicity_pattern(),
                "{} seed {seed}",
                t.name()
            );
            assert_eq!(
                s.total_degree(),
                base.total_degree(),
                "{} seed {seed}",
                t.name()
            );
        }
    }
}

#[test]
fn rank_one_samples_are_incident_to_sheets() {
    for t in gallery::all() {
        let p = prepare(&t, 0).unwrap();
        let samples = rank_one_samples(&p.frame, &p.blocks, 4, 0).unwrap();
        let rep = incidence_check(&t, &p.frame, &p.blocks, &samples, 0).unwrap();
        assert!(rep.passed(), "{}: {rep:?}", t.name());
        assert!(rep.forward_checked > 0, "{}", t.name());
    }
}

#[test]
fn last_determinant_is_det_sigma_for_determined_symbols() {
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
    let p = prepare(&t, 0).unwrap();
    assert!(is_determined(&p.frame.characters, t.r()));
    let ideal = char_ideal(&p.blocks).unwrap();
    let last = ideal.determinants.last().unwrap();
    for k in 0..10 {
        let phi = sample_vector(2, 9, 3, k);
        let d = sigma_phi(&p.blocks, &phi).unwrap().det().unwrap();
        assert_eq!(last.eval(&phi).unwrap(), d);
    }
}

#[test]
fn wave_cone_is_the_light_cone_in_frame_coordinates() {
    // The characteristic variety has degree two and vanishes on the sheets
    // found over any covector.
    let p = prepare(&gallery::wave(), 0).unwrap();
    let ideal = char_ideal(&p.blocks).unwrap();
    let s = scheme_summary(&gallery::wave(), 0).unwrap();
    for c in &s.components {
        if let Some(xi) = &c.xi {
            assert!(ideal.vanishes_at(xi).unwrap());
        }
    }
}
