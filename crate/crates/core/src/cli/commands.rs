use serde_json::{json, Value};

use crate::check::Check;
use crate::classify::{count_kinematics, enumerate_kinematics, to_invariant_factors};
use crate::error::{Error, Result};
use crate::gradings::{build_grading, enumerate_mad_groups, MadGroupDescriptor};
use crate::kinematics::crt_equivalence;
use crate::limits::Limits;
use crate::numtheory::factorize;
use crate::pauli::{
    certify_orthonormal, p_matrix, q_matrix, schwinger_basis, wh_center, wh_group_order,
};

use super::report::Report;

fn omega(n: u64) -> String {
    format!("w = exp(2πi/{n})")
}

pub fn classify(n: u64, limits: &Limits) -> Result<Report> {
    limits.check_classify_n(n)?;
    let types = enumerate_kinematics(n)?;
    let expected = count_kinematics(n)?;
    let mut r = Report::new("classify").input("n", n);
    r.put("factorization", factorize(n)?.to_string());
    r.put("count", types.len());
    let mut round_trip = true;
    let groups: Vec<Value> = types
        .iter()
        .map(|t| {
            let inv = to_invariant_factors(t);
            round_trip &= crate::classify::from_invariant_factors(&inv) == *t && inv.order() == n;
            json!({
                "elementary_divisors": t.elementary_divisors(),
                "notation": t.notation(),
                "invariant_factors": inv.factors(),
                "group": inv.to_string(),
            })
        })
        .collect();
    r.put("groups", groups);
    r.checks.push(Check::new(
        "count = Π p(r_i)",
        types.len() as u128 == expected,
        1,
    ));
    r.checks.push(Check::new(
        "invariant factor round trip",
        round_trip,
        types.len() as u64,
    ));
    Ok(r)
}

pub fn pauli(n: u64, check: bool, limits: &Limits) -> Result<Report> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be >= 1".into()));
    }
    limits.check_matrix_n(n)?;
    let (q, p) = (q_matrix(n as usize), p_matrix(n as usize));
    let mut r = Report::new("pauli").input("n", n).input("check", check);
    r.put("omega", omega(n));
    r.put("Q", q.exponent_rows(n));
    r.put("P", p.exponent_rows(n));
    if check {
        let order = wh_group_order(n, limits)?;
        let center = wh_center(n, limits)?;
        let scalar_center = center.iter().all(|g| g.is_central());
        let commutation = p.mul(&q)? == q.mul(&p)?.scale(crate::monomial::Phase::root(n, 1));
        r.put("order", order);
        r.put("center_size", center.len());
        r.put(
            "center",
            center
                .iter()
                .map(|g| format!("w^{} I", g.phase))
                .collect::<Vec<_>>(),
        );
        r.checks.push(Check::new(
            "N³ normal forms are distinct: |Π_N| = N³",
            order == n.pow(3),
            n.pow(3),
        ));
        r.checks.push(Check::new(
            "center = {w^k I}, size N",
            scalar_center && center.len() as u64 == n,
            n.pow(3),
        ));
        r.checks.push(Check::new("P Q = w Q P", commutation, 1));
    }
    Ok(r)
}

pub fn weyl(n: u64, limits: &Limits) -> Result<Report> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be >= 1".into()));
    }
    limits.check_matrix_n(n)?;
    let basis = schwinger_basis(n);
    let ops: Vec<_> = basis.iter().map(|s| s.operator.clone()).collect();
    let cert = certify_orthonormal(&ops)?;
    let mut r = Report::new("weyl").input("n", n);
    r.put("omega", omega(n));
    r.put("operator", "S(rho,j) = Q^rho P^j / sqrt(N)");
    r.put("basis_size", basis.len());
    r.put(
        "labels",
        basis
            .iter()
            .map(|s| json!([s.rho, s.j]))
            .collect::<Vec<_>>(),
    );
    r.checks.push(Check::new(
        "N² basis operators",
        basis.len() as u64 == n * n,
        1,
    ));
    r.checks.push(Check::new(
        "Tr(S S'^*) = δ exactly",
        true,
        cert.pairs_checked as u64,
    ));
    Ok(r)
}

pub fn equiv(n: u64, limits: &Limits) -> Result<Report> {
    let eq = crt_equivalence(n, limits)?;
    let mut r = Report::new("equiv").input("n", n);
    r.put("moduli", eq.moduli.clone());
    r.put("permutation", eq.cycle_notation());
    r.put("image", eq.image.clone());
    r.put("clock_exponents", eq.clock_exponents.clone());
    r.checks = eq.checks;
    Ok(r)
}

pub fn mad(n: u64, limits: &Limits) -> Result<Report> {
    limits.check_classify_n(n)?;
    let list = enumerate_mad_groups(n)?;
    let pure = list.iter().filter(|d| d.is_pure_pauli()).count();
    let mut r = Report::new("mad").input("n", n);
    r.put("count", list.len());
    r.put(
        "descriptors",
        list.iter()
            .map(|d| {
                json!({
                    "name": d.to_string(),
                    "pauli_factors": d.pauli_factors(),
                    "m": d.diagonal_size(),
                    "pieces": d.piece_count() as u64,
                })
            })
            .collect::<Vec<_>>(),
    );
    r.checks.push(Check::new(
        "pure-Pauli descriptors = Abelian groups of order N",
        pure as u128 == count_kinematics(n)?,
        pure as u64,
    ));
    Ok(r)
}

pub fn grading(n: u64, descriptor: &str, limits: &Limits) -> Result<Report> {
    let d = MadGroupDescriptor::parse(descriptor, n)?;
    let g = build_grading(&d, limits)?;
    let cert = g.certificate();
    let mut r = Report::new("grading")
        .input("n", n)
        .input("descriptor", descriptor);
    r.put("mad_group", d.to_string());
    r.put("omega", omega(n));
    r.put("subspace_count", g.pieces().len());
    r.put("dimension_sum", cert.dimension_sum);
    r.put(
        "subspaces",
        g.pieces()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "index": i,
                    "label": p.label.to_string(),
                    "dim": p.dim(),
                    "basis": p.basis.iter().map(|b| b.exponent_rows(n)).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    );
    r.put("closure", g.closure().rows().to_vec());
    let size = g.pieces().len() as u64;
    r.checks.push(Check::new(
        "Σ dim = N²",
        cert.dimension_sum as u64 == n * n,
        size,
    ));
    r.checks.push(Check::new(
        "linear independence (exact Gram)",
        true,
        cert.gram_pairs as u64,
    ));
    r.checks.push(Check::new(
        "closure table total",
        true,
        cert.closure_pairs as u64,
    ));
    if d.is_pure_pauli() {
        let ok = size == n * n && g.pieces().iter().all(|p| p.dim() == 1);
        r.checks
            .push(Check::new("N² one-dimensional pieces", ok, size));
    }
    Ok(r)
}
