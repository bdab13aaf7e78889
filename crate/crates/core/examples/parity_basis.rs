//! Peels the Lusztig complexes of every weight up to a cap into parity sheaves and
//! prints the parity basis of `f_nu` in monomials.
//!
//! `cargo run --release --example parity_basis -- A3 3`

use quiver_parity::paritycalc::ParityContext;
use quiver_parity::qf::Qf;
use quiver_parity::quiver::{dim_vectors_up_to, QuiverCatalog, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let quiver = match args.get(1).map(String::as_str).unwrap_or("A2") {
        "D4" => QuiverData::d(4),
        "A3" => QuiverData::a(3),
        _ => QuiverData::a(2),
    };
    let cap = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let catalog = QuiverCatalog::new(&quiver)?;
    let qf = Qf::new(&quiver);
    for nu in dim_vectors_up_to(quiver.num_vertices(), cap) {
        if nu.is_zero() {
            continue;
        }
        let start = std::time::Instant::now();
        let ctx = ParityContext::new(&catalog, &nu)?;
        let basis = ctx.parity_basis(&qf)?;
        let check = ctx.conjecture14_check(&qf, 1)?;
        println!("nu = {} ({} orbits, rank {}, {}, {:.2?})", quiver.dv_name(&nu), basis.elements.len(), basis.rank.rank, check.verdict, start.elapsed());
        for (row, coeffs) in basis.basis.rows.iter().zip(&basis.basis.entries) {
            let terms: Vec<String> = coeffs
                .iter()
                .zip(&basis.basis.cols)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| if c.is_one() { m.clone() } else { format!("({c}) {m}") })
                .collect();
            println!("  {row} = {}", terms.join(" + "));
        }
    }
    Ok(())
}
