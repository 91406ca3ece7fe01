mod common;

use common::*;
use gvkit::gv_transform::{
    am_forward, am_invert, bps_forward, bps_from_json, bps_invert, bps_to_json, fano_forward,
    fano_from_json, fano_invert, fano_to_json,
};
use gvkit::novikov::{series_from_json, series_to_json, NovikovSeries};
use gvkit::structure_solver::{full_pipeline, solve_elem_counts, synthesize_gw, CrossCheck};
use gvkit::Rational;
use rand::seq::SliceRandom;

#[test]
fn bps_round_trips_on_both_ranks() {
    let mut r = rng(11);
    for (i, lattice) in [rank1(), rank2()].into_iter().cycle().take(40).enumerate() {
        let n = random_bps(&mut r, lattice, 8, 3, 1 + i % 5, false);
        let gw = bps_forward(&n, n.energy().clone(), 3, 8).unwrap();
        assert_eq!(bps_invert(&gw, 8).unwrap(), n);
        assert_eq!(
            bps_forward(&bps_invert(&gw, 8).unwrap(), n.energy().clone(), 3, 8).unwrap(),
            gw
        );
    }
}

#[test]
fn fano_round_trips_on_both_ranks() {
    let mut r = rng(12);
    for (i, (lattice, chern)) in [(rank1(), vec![2i64]), (rank2(), vec![1, 3])]
        .into_iter()
        .cycle()
        .take(40)
        .enumerate()
    {
        let n = random_bps(&mut r, lattice, 8, 3, 1 + i % 4, true);
        let f = fano_forward(&n, &chern, &[]).unwrap();
        assert_eq!(fano_invert(&f, 8).unwrap(), n);
        assert_eq!(fano_from_json(&fano_to_json(&f)).unwrap(), f);
    }
}

#[test]
fn am_round_trips_for_several_insertion_counts() {
    let mut r = rng(13);
    for k in [0u32, 1, 2, 3, 4, 5] {
        for lattice in [rank1(), rank2()] {
            let n = random_bps(&mut r, lattice, 9, 0, 4, false);
            let gw = am_forward(&n, k, n.energy().clone()).unwrap();
            assert_eq!(am_invert(&gw, k).unwrap(), n, "k={k}");
        }
    }
}

#[test]
fn json_documents_round_trip_byte_for_byte() {
    let mut r = rng(14);
    for lattice in [rank1(), rank2()] {
        let n = random_bps(&mut r, lattice, 6, 2, 5, false);
        let text = bps_to_json(&n);
        assert_eq!(bps_from_json(&text).unwrap(), n);
        assert_eq!(bps_to_json(&bps_from_json(&text).unwrap()), text);
        let gw = bps_forward(&n, n.energy().clone(), 2, 6).unwrap();
        let text = series_to_json(&gw);
        assert_eq!(series_from_json(&text).unwrap(), gw);
        assert_eq!(series_to_json(&series_from_json(&text).unwrap()), text);
    }
}

#[test]
fn solver_is_independent_of_insertion_order() {
    let mut r = rng(15);
    let e = random_counts(&mut r, rank2(), 7, 2, 6);
    let gw = synthesize_gw(&e, int(7), 2, 6).unwrap();
    let mut terms: Vec<_> = gw
        .terms()
        .map(|(k, v)| (k.class.clone(), k.genus, v.clone()))
        .collect();
    terms.shuffle(&mut r);
    let mut permuted = NovikovSeries::<Rational>::new(rank2(), int(7), 2).unwrap();
    for (c, g, v) in terms {
        permuted.add_term(&c, g, v).unwrap();
    }
    assert_eq!(
        solve_elem_counts(&permuted, 6).unwrap(),
        solve_elem_counts(&gw, 6).unwrap()
    );
    assert_eq!(solve_elem_counts(&gw, 6).unwrap(), e);
}

#[test]
fn shipped_fixture_is_a_synthesized_series() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/synthesized_rank2.json"
    ))
    .unwrap();
    let gw = series_from_json(&text).unwrap();
    let rep = full_pipeline(&gw, 6).unwrap();
    assert_eq!(rep.cross_check, CrossCheck::Agree);
    assert!(rep.integral);
    let e = solve_elem_counts(&gw, 6).unwrap();
    assert_eq!(synthesize_gw(&e, int(6), 2, 6).unwrap(), gw);
    assert_eq!(e.len(), 4);
}
