//! The cup and cup-one products on Hochschild cochains, checked on random
//! inputs, and the same battery catching a broken cup-one.
//!
//! `cargo run --example cochain_identities`

use fibress::cli::suite::{cup1_off_by_one, suite_rings};
use fibress::cli::{run_property_suite, run_property_suite_with};
use fibress::hochschild::{cup, cup1, hdelta, Cochain};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let (name, ring) = &suite_rings()[0];
    let b = ring.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = Cochain::random(&mut rng, &[b, b], b, 0, 0.5);
    let g = Cochain::random(&mut rng, &[b], b, 1, 0.5);
    let hirsch = hdelta(ring, &cup1(&f, &g))
        .add(&cup1(&hdelta(ring, &f), &g))
        .add(&cup1(&f, &hdelta(ring, &g)))
        .add(&cup(ring, &f, &g))
        .add(&cup(ring, &g, &f));
    println!("Hirsch identity on {name}: residual zero = {}", hirsch.is_zero());

    print!("{}", run_property_suite(7, 200).text());
    print!("{}", run_property_suite_with(7, 200, cup1_off_by_one).text());
}
