//! Hit-test every Dickson monomial up to a degree bound.
//!
//! `cargo run --release --example dickson_scan -- 4 36`

use steenrod_hit::verify::Verifier;

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("usage: dickson_scan [n] [dmax]"))
        .collect();
    let n = args.first().copied().unwrap_or(3) as usize;
    let dmax = args.get(1).copied().unwrap_or(24) as u32;

    let report = Verifier::default()
        .with_timings(true)
        .main_theorem_scan(n, dmax)
        .unwrap();
    for row in &report.degrees {
        println!(
            "d={:>3} monomials={:>2} hit={:>2} not_hit={:>2} dim={:>5} rank={:>5} {:>8.1} ms",
            row.degree,
            row.monomials,
            row.hit,
            row.not_hit,
            row.columns.unwrap_or(0),
            row.rank.unwrap_or(0),
            row.timing_ms.unwrap_or(0.0)
        );
    }
    println!(
        "n={n}: {}/{} hit with verified certificates, all hit: {}",
        report.hit, report.total, report.all_hit
    );
}
