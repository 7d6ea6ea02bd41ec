//! Show the base-d digit matrices of a partition and decode them back.
//!
//!     cargo run --example digit_matrices -- 12+6+6+3+1+1+1 3

use glaisher::{decode, encode, Partition};

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: Partition = args
        .next()
        .unwrap_or_else(|| "8+4+4+2+1+1+1".into())
        .parse()?;
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    let family = encode(&p, d)?;
    println!("partition {p} (weight {})", p.weight());
    print!("{}", family.render_grid());
    println!("json: {}", family.to_json());
    println!("family weight: {}", family.weight());
    if let Some((x, cell)) = family.high_column_witness() {
        println!("part divisible by d: base {x}, cell {cell}");
    }
    if let Some((x, cell)) = family.high_row_witness() {
        println!("part repeated >= d times: base {x}, cell {cell}");
    }
    assert_eq!(decode(&family), p);
    Ok(())
}
