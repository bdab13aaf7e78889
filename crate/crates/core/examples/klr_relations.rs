//! Checks the defining relations of `R_nu` with both oracles and prints a summary.
//!
//! `cargo run --example klr_relations -- D4 1,1,1,1`

use quiver_parity::klr::check_relations;
use quiver_parity::quiver::{DimVector, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let quiver = match args.get(1).map(String::as_str).unwrap_or("A2") {
        "D4" => QuiverData::d(4),
        "A3" => QuiverData::a(3),
        "A1" => QuiverData::a(1),
        _ => QuiverData::a(2),
    };
    let nu = match args.get(2) {
        Some(s) => DimVector(s.split(',').map(|x| x.parse().expect("weight entry")).collect()),
        None => DimVector(vec![1; quiver.num_vertices()]),
    };
    let start = std::time::Instant::now();
    let report = check_relations(&quiver, &nu, 2)?;
    for f in &report.families {
        println!(
            "{:<24} instances {:>6}  action failures {}  straightening failures {}",
            format!("{:?}", f.family),
            f.instances,
            f.action_failures,
            f.straightening_failures
        );
    }
    println!("{} nu = {}: {} in {:.2?}", report.quiver, nu, if report.passed() { "pass" } else { "FAIL" }, start.elapsed());
    Ok(())
}
