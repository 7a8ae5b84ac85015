//! Recovers gradings numerically as simultaneous eigenspaces of the
//! generating automorphisms and compares them with the exact construction.

use fqk::gradings::{build_grading, enumerate_mad_groups, joint_eigenspaces, mad_generators};
use fqk::Limits;

fn main() -> fqk::Result<()> {
    let limits = Limits::default();
    for n in 2..=6 {
        for d in enumerate_mad_groups(n)? {
            let eigen = joint_eigenspaces(&mad_generators(&d)?, n as usize, &limits)?;
            let exact = build_grading(&d, &limits)?;
            let m = eigen.match_grading(&exact)?;
            println!(
                "{:<16} {:>3} eigenspaces, projector distance {:.1e}{}",
                d.to_string(),
                eigen.spaces.len(),
                m.max_distance,
                if m.bijective { "" } else { " (no bijection)" }
            );
        }
    }
    Ok(())
}
