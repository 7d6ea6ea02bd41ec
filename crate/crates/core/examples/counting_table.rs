//! Print p(n), a(n), b(n), |A_n|, |B_n| as TSV.
//!
//!     cargo run --example counting_table -- 3 30

use glaisher::count_table;
use glaisher::counting::to_tsv;

fn main() -> glaisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n_max: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);

    // count_table refuses to build a row where a(n) != b(n).
    let rows = count_table(n_max, d)?;
    print!("{}", to_tsv(&rows));
    Ok(())
}
