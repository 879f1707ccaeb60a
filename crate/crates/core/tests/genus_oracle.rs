//! The Euler-characteristic genus formula against the cell-complex oracle on
//! randomly generated valid gluings.

use saddle_config::ribbon_genus::{ambient_genus, build_ribbon, cell_complex_genus_oracle, embeds_in_plane};

mod common;

#[test]
fn random_gluings_agree_with_oracle() {
    let sample = common::random_valid_gluings(7, 150);
    assert_eq!(sample.len(), 150);
    let mut non_planar = 0;
    for cfg in &sample {
        let oracle = cell_complex_genus_oracle(cfg).unwrap();
        assert_eq!(ambient_genus(cfg).unwrap(), oracle, "{}", cfg.to_json().unwrap());
        if !embeds_in_plane(&build_ribbon(cfg).unwrap()) {
            non_planar += 1;
        }
    }
    assert!(non_planar >= 3, "only {non_planar} non-planar gluings");
}

#[test]
fn generator_is_deterministic() {
    assert_eq!(common::random_valid_gluings(11, 10), common::random_valid_gluings(11, 10));
}
