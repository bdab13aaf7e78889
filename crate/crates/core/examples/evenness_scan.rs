//! Counts every fiber of every Lusztig map up to a size cap and reports the Poincare polynomials.
//!
//! `cargo run --release --example evenness_scan -- A3 4`

use quiver_parity::flagcount::{evenness_scan, ScanConfig};
use quiver_parity::quiver::{QuiverCatalog, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let quiver = match args.get(1).map(String::as_str).unwrap_or("A2") {
        "D4" => QuiverData::d(4),
        "D4s" => QuiverData::d4_subspace(),
        "A3" => QuiverData::a(3),
        _ => QuiverData::a(2),
    };
    let cap = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let catalog = QuiverCatalog::new(&quiver)?;
    let start = std::time::Instant::now();
    let report = evenness_scan(&catalog, &ScanConfig { nu_cap: cap, ..ScanConfig::default() })?;
    let mut shown = 0;
    for cell in report.cells.iter().filter(|c| c.fiber.poly.as_ref().is_some_and(|p| p.degree() > Some(0))) {
        if shown == 8 {
            break;
        }
        shown += 1;
        let poly = cell.fiber.poly.as_ref().expect("filtered");
        println!("{} {} over {}: {}", cell.fiber.nu, quiver.flag_name(&cell.fiber.y), cell.fiber.lambda.name(&quiver), poly);
    }
    println!(
        "{} |nu| <= {cap}: {} fibers, {} alerts, {} cell mismatches, verdict {} ({:.2?})",
        report.quiver,
        report.cells.len(),
        report.alerts.len(),
        report.cell_mismatches,
        report.verdict,
        start.elapsed()
    );
    Ok(())
}
