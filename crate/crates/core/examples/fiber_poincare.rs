//! Counts one Lusztig fiber over several finite fields, interpolates its Poincare
//! polynomial, and compares with the affine cell recursion.
//!
//! `cargo run --release --example fiber_poincare -- "(i j i)"`

use quiver_parity::flagcount::{poincare_fiber, prime_powers, typea_cell_recursion, degree_bound};
use quiver_parity::quiver::{QuiverCatalog, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let quiver = QuiverData::new("A2", vec!["i".into(), "j".into()], vec![(0, 1)])?;
    let y = quiver.parse_flag(std::env::args().nth(1).as_deref().unwrap_or("(i j i)"))?;
    let nu = y.weight(quiver.num_vertices());
    let catalog = QuiverCatalog::new(&quiver)?;
    let primes = prime_powers(degree_bound(&y, quiver.num_vertices()) + 3);
    println!("y = {}, nu = {}, samples at q in {primes:?}", quiver.flag_name(&y), quiver.dv_name(&nu));
    for orbit in catalog.orbits(&nu, 1000)? {
        let f = poincare_fiber(&catalog, &orbit.partition, &y, &primes, 1_000_000)?;
        let counts: Vec<String> = f.samples.iter().map(|(q, c)| format!("{q}:{c}")).collect();
        let cells = typea_cell_recursion(&quiver, &catalog.orbit_rep(&orbit.mult), &y)?;
        match &f.poly {
            Some(p) => println!("  {:<16} dim {}  counts [{}]  P = {p}  cells {cells}", orbit.partition.name(&quiver), orbit.dim, counts.join(" ")),
            None => println!("  {:<16} EVENNESS-ALERT {:?}", orbit.partition.name(&quiver), f.alert),
        }
    }
    Ok(())
}
