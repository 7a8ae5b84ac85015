//! Systems of imprimitivity: translations U and position projectors E on a
//! finite configuration group, with U(j) E(ρ) U(j)^{-1} = E(ρ - j).

use fqk::kinematics::{regular_system, tensor_system, ConfigGroup};
use fqk::Limits;
use nalgebra::Complex;

fn main() -> fqk::Result<()> {
    let limits = Limits::default();
    let config = ConfigGroup::new(vec![2, 4])?;
    let s = regular_system(&config, &limits)?;
    let c = s.certificate();
    println!(
        "{config}: {} homomorphism, {} PVM and {} covariance identities verified",
        c.homomorphism_pairs, c.pvm_pairs, c.covariance_pairs
    );
    println!("commutant dimension {}", s.commutant_dimension(&limits)?);

    let z2 = regular_system(&ConfigGroup::cyclic(2)?, &limits)?;
    let z3 = regular_system(&ConfigGroup::cyclic(3)?, &limits)?;
    let t = tensor_system(&z2, &z3, &limits)?;
    println!("{} acts on dimension {}", t.config(), t.dim());

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex::new(0.0, 0.0);
    let psi = [Complex::new(h, 0.0), Complex::new(0.0, h), z];
    for rho in 0..3 {
        println!("P(ρ = {rho}) = {:.3}", z3.position_probability(&psi, rho)?);
    }
    Ok(())
}
