//! The classical split and merge maps, side by side with the swap scheme.
//!
//!     cargo run --example glaisher_maps -- 10 3

use glaisher::{apply_forward, enumerate_partitions, merge_map, PermutationScheme};

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    for p in enumerate_partitions(n) {
        if !p.is_d_nondivisible(d)? {
            continue;
        }
        let merged = merge_map(&p, d)?;
        let swapped = apply_forward(&p, d, &PermutationScheme::Swap)?;
        assert_eq!(merged, swapped);
        println!("{p:<20} -> {merged}");
    }
    Ok(())
}
