//! The Z_N system is unitarily equivalent, by a permutation, to the tensor
//! product of the systems on its prime-power components.

use fqk::kinematics::crt_equivalence;
use fqk::Limits;

fn main() -> fqk::Result<()> {
    let limits = Limits::default();
    for n in [6u64, 12, 30, 60] {
        let eq = crt_equivalence(n, &limits)?;
        println!(
            "N = {n} -> {:?}, clock exponents {:?}",
            eq.moduli, eq.clock_exponents
        );
        println!("  T = {}", eq.cycle_notation());
        for c in &eq.checks {
            println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
    }
    Ok(())
}
