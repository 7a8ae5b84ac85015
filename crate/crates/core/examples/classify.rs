//! Inequivalent finite quantum kinematics in dimension N: one per Abelian
//! group of order N.
//!
//! cargo run --example classify -- 180

use fqk::classify::{count_kinematics, enumerate_kinematics, reduce_product, to_invariant_factors};

fn main() -> fqk::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(180);
    println!("N = {n}: {} configuration groups", count_kinematics(n)?);
    for t in enumerate_kinematics(n)? {
        println!("  {:<16} {}", t.notation(), to_invariant_factors(&t));
    }
    let t = reduce_product(&[6, 15])?;
    println!("Z_6 × Z_15 = {t}");
    Ok(())
}
