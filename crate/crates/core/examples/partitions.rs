//! Enumerate the partitions of n and sort them into the four classes.
//!
//!     cargo run --example partitions -- 6 2

use glaisher::enumerate_partitions;

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    println!(
        "{:<16} {:>12} {:>9}",
        "partition", "nondivisible", "regular"
    );
    for p in enumerate_partitions(n) {
        println!(
            "{:<16} {:>12} {:>9}",
            p.to_string(),
            p.is_d_nondivisible(d)?,
            p.is_d_regular(d)?
        );
    }
    Ok(())
}
