//! MAD-groups of inner automorphisms of the N×N matrices, up to conjugation.

use fqk::gradings::{enumerate_mad_groups, mad_of_pauli_group};
use fqk::Limits;

fn main() -> fqk::Result<()> {
    for n in 2..=8 {
        let names: Vec<String> = enumerate_mad_groups(n)?
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("n = {n}: {}", names.join(", "));
    }
    let g = mad_of_pauli_group(4, &Limits::default())?;
    println!("{{Ad_Q^i P^j}} at N = 4 has {} elements", g.elements.len());
    for c in &g.checks {
        println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    Ok(())
}
