//! Schwinger operators S(ρ, j) = Q^ρ P^j / √N form an orthonormal basis of
//! the N×N matrices; the Weyl operators W(ρ, j) form a ray representation
//! of Z_N × Z_N for odd N.

use fqk::pauli::{
    certify_orthonormal, check_ray_law, expand_in_basis, schwinger_basis, weyl_operator,
};
use nalgebra::{Complex, DMatrix};

fn main() -> fqk::Result<()> {
    for n in 2..=8 {
        let ops: Vec<_> = schwinger_basis(n).into_iter().map(|s| s.operator).collect();
        let cert = certify_orthonormal(&ops)?;
        println!(
            "N = {n}: Gram matrix exactly I over {} pairs",
            cert.pairs_checked
        );
    }

    let x = DMatrix::from_fn(3, 3, |r, c| {
        Complex::new((r * 3 + c) as f64, r as f64 - c as f64)
    });
    let e = expand_in_basis(&x, 3)?;
    println!(
        "expansion of a 3×3 matrix reconstructs to {:.1e}",
        (e.reconstruct() - &x).norm()
    );

    let n = 5;
    let mut pairs = 0;
    for a in 0..n * n {
        for b in 0..n * n {
            let wa = weyl_operator(n, (a / n) as i64, (a % n) as i64)?;
            let wb = weyl_operator(n, (b / n) as i64, (b % n) as i64)?;
            assert!(check_ray_law(&wa, &wb)?);
            pairs += 1;
        }
    }
    println!("ray law W W' = w^c W'' holds for all {pairs} pairs at N = {n}");
    println!(
        "W(1,1) at N = 3: {:?}",
        weyl_operator(3, 1, 1)?.to_matrix().exponent_rows(3)
    );
    Ok(())
}
