//! Map one partition through several members of the diagonal family.
//!
//!     cargo run --example diagonal_bijection -- 8+4+2 2

use glaisher::{apply_forward, apply_inverse, Partition, PermutationScheme};

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: Partition = args.next().unwrap_or_else(|| "8+4+2".into()).parse()?;
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    let schemes = [
        PermutationScheme::Swap,
        PermutationScheme::Rotate,
        PermutationScheme::Seeded(1),
        PermutationScheme::Seeded(42),
    ];
    println!(
        "{p}  (d = {d}, divisible part: {})",
        !p.is_d_nondivisible(d)?
    );
    for s in schemes {
        let q = apply_forward(&p, d, &s)?;
        assert_eq!(apply_inverse(&q, d, &s)?, p);
        println!("  {s:<10} -> {q}  (repeated part: {})", !q.is_d_regular(d)?);
    }

    println!("\npermutations of D(5) in base 1:");
    for s in schemes {
        println!("  {s:<10} {}", s.scheme_permutation(1, 5)?.as_permutation());
    }
    Ok(())
}
