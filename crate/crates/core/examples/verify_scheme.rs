//! Exhaustively verify one scheme for n = 0..=n_max.
//!
//!     cargo run --release --example verify_scheme -- seeded:42 3 22

use glaisher::{verify_bijection, verify_counts, PermutationScheme};

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let scheme: PermutationScheme = args.next().unwrap_or_else(|| "rotate".into()).parse()?;
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n_max: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(15);

    let mut ok = true;
    for n in 0..=n_max {
        let report = verify_bijection(n, d, &scheme)?;
        ok &= report.all_passed();
        println!(
            "n={n:<3} partitions={:<6} |A|=|B|={:<6} {} ({} ms)",
            report.total_partitions,
            report.card_a,
            if report.all_passed() { "ok" } else { "FAILED" },
            report.elapsed_ms
        );
    }
    let counts = verify_counts(n_max, d)?;
    print!("{}", counts.render_text());
    ok &= counts.all_passed();
    std::process::exit(if ok { 0 } else { 1 });
}
