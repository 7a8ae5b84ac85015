//! Fine gradings induced by MAD-groups, with exact closure tables.
//!
//! cargo run --example fine_gradings -- 4 2,m=2

use fqk::gradings::{build_grading, MadGroupDescriptor};
use fqk::Limits;

fn main() -> fqk::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let spec = args.next().unwrap_or_else(|| "2,m=2".into());
    let d = MadGroupDescriptor::parse(&spec, n)?;
    let g = build_grading(&d, &Limits::default())?;
    println!(
        "{d}: {} pieces, dimensions sum to {}",
        g.pieces().len(),
        g.certificate().dimension_sum
    );
    for (i, p) in g.pieces().iter().enumerate() {
        let row: Vec<String> = g.closure().rows()[i]
            .iter()
            .map(|e| e.map_or("-".into(), |k| k.to_string()))
            .collect();
        println!(
            "{i:>3} {:<14} dim {}  products -> {}",
            p.label.to_string(),
            p.dim(),
            row.join(" ")
        );
    }
    Ok(())
}
