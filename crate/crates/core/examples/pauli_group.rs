//! The Weyl-Heisenberg group generated by the clock Q and shift P.

use fqk::pauli::{p_matrix, q_matrix, wh_center, wh_group_order, wh_normal_form, Generator};
use fqk::Limits;

fn main() -> fqk::Result<()> {
    let limits = Limits::default();
    let n = 3;
    println!("Q_{n} = {:?}", q_matrix(n as usize).exponent_rows(n));
    println!("P_{n} = {:?}", p_matrix(n as usize).exponent_rows(n));
    for n in 2..=6 {
        let center: Vec<String> = wh_center(n, &limits)?
            .iter()
            .map(|g| format!("w^{}", g.phase))
            .collect();
        println!(
            "|Π_{n}| = {:>3}, center = {{{}}}",
            wh_group_order(n, &limits)?,
            center.join(", ")
        );
    }
    let word = [
        (Generator::P, 2),
        (Generator::Q, 3),
        (Generator::P, 1),
        (Generator::Q, 1),
    ];
    let g = wh_normal_form(&word, 5);
    println!(
        "P² Q³ P Q in dimension 5 = w^{} Q^{} P^{}",
        g.phase, g.q, g.p
    );
    Ok(())
}
