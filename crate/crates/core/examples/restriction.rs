//! Restricts a Lusztig complex to a Levi and compares with the coproduct of `theta_y`.
//!
//! `cargo run --example restriction -- "(j i^(2))"`

use quiver_parity::flagcount::res_check;
use quiver_parity::qf::Qf;
use quiver_parity::quiver::{FlagType, QuiverData};

fn mono(qf: &Qf, y: &FlagType) -> String {
    if y.is_empty() {
        "1".into()
    } else {
        qf.monomial_string(y)
    }
}

fn main() -> quiver_parity::Result<()> {
    let quiver = QuiverData::new("A2", vec!["i".into(), "j".into()], vec![(0, 1)])?;
    let y = quiver.parse_flag(std::env::args().nth(1).as_deref().unwrap_or("(j i^(2))"))?;
    let qf = Qf::new(&quiver);
    println!("Res of ^dL_{} against r({})", quiver.flag_name(&y), qf.monomial_string(&y));
    for c in res_check(&qf, &y)? {
        let terms: Vec<String> = c
            .terms
            .iter()
            .map(|t| format!("q^{} {} ⊗ {}", t.shift, mono(&qf, &t.y2), mono(&qf, &t.y1)))
            .collect();
        println!(
            "  ({}, {}): {}  {}",
            quiver.dv_name(&c.nu1),
            quiver.dv_name(&c.nu2),
            if terms.is_empty() { "0".to_string() } else { terms.join(" + ") },
            if c.matches { "matches" } else { "MISMATCH" }
        );
    }
    Ok(())
}
