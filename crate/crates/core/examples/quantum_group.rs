//! The algebra `f` on words: dimensions against Kostant partitions, Serre elements,
//! and a divided power identity.
//!
//! `cargo run --release --example quantum_group -- D4 3`

use quiver_parity::qf::{Qf, WordVector};
use quiver_parity::qlaurent::{qint, RationalFunction};
use quiver_parity::quiver::{dim_vectors_up_to, FlagType, QuiverCatalog, QuiverData};

fn main() -> quiver_parity::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let quiver = match args.get(1).map(String::as_str).unwrap_or("A3") {
        "D4" => QuiverData::d(4),
        "A2" => QuiverData::a(2),
        _ => QuiverData::a(3),
    };
    let cap = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let qf = Qf::new(&quiver);
    let catalog = QuiverCatalog::new(&quiver)?;
    for nu in dim_vectors_up_to(quiver.num_vertices(), cap).into_iter().filter(|v| !v.is_zero()) {
        let d = qf.dim_f(&nu);
        let k = catalog.kostant_partitions(&nu, 100_000)?.len();
        println!("{:<14} dim f_nu {:>3}  #Kostant {:>3}", quiver.dv_name(&nu), d.rank, k);
    }
    for p in qf.serre_check()? {
        println!("Serre ({}, {}) in radical: {}", p.i, p.j, p.in_radical);
    }
    // theta_i theta_i = [2] theta_i^(2)
    let sq = WordVector::theta_monomial(&FlagType::from_seq(&[0, 0]), quiver.num_vertices());
    let div = WordVector::theta_divided(0, 2, quiver.num_vertices()).scale(&RationalFunction::from_laurent(qint(2)));
    println!("theta_i^2 = [2] theta_i^(2): {}", qf.is_zero_in_f(&sq.sub(&div)?));
    Ok(())
}
