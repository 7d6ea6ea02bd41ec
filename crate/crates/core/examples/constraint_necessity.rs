//! Drop the endpoint constraint on D(4) and watch the class mapping fail.
//!
//!     cargo run --example constraint_necessity

use glaisher::verify::inadmissible_k4_fixture;
use glaisher::{apply_forward, verify_bijection, Partition};

fn main() -> glaisher::Result<()> {
    let fixture = inadmissible_k4_fixture();
    println!("patched diagonal: {}", fixture.patch);
    println!("admissible: {}", fixture.patch.is_admissible());

    let p: Partition = "2+2".parse()?;
    let q = apply_forward(&p, 2, &fixture)?;
    println!(
        "{p} (repeated part) -> {q} (repeated part: {})",
        !q.is_d_regular(2)?
    );

    print!("{}", verify_bijection(4, 2, &fixture)?.render_text());
    Ok(())
}
