//! Positive roots, indecomposables and the orbits of `E_V` for a Dynkin quiver.
//!
//! `cargo run --example orbits -- D4 1,2,1,1`

use quiver_parity::quiver::{DimVector, QuiverCatalog, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let quiver = match args.get(1).map(String::as_str).unwrap_or("D4") {
        "A3" => QuiverData::a(3),
        "E6" => QuiverData::e(6),
        _ => QuiverData::d(4),
    };
    let nu = match args.get(2) {
        Some(s) => DimVector(s.split(',').map(|x| x.parse().expect("weight entry")).collect()),
        None => DimVector(vec![1, 2, 1, 1]),
    };
    let catalog = QuiverCatalog::new(&quiver)?;
    println!("{} has {} positive roots", quiver.type_name(), catalog.roots().len());
    println!("dim E_V = {}, dim G_V = {}", quiver.dim_ev(&nu), quiver.dim_gv(&nu));
    for o in catalog.orbits(&nu, 100_000)? {
        println!("  {:<28} dim {:>2}  dim End {:>2}  #O(F_2) = {}", o.partition.name(&quiver), o.dim, o.end_dim, catalog.orbit_size(&o.mult, 2));
    }
    Ok(())
}
