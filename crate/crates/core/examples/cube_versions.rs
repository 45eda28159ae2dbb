//! The five addition-only cube algorithms side by side, with their
//! operation counts.
//!
//! cargo run --example cube_versions -- 1000

use csf::algorithms::{cube_v1, cube_v2, cube_v3, cube_v4, cube_v5};
use csf::Ops;

type Cube = fn(&mut Ops, i64) -> csf::Result<i64>;

fn main() -> csf::Result<()> {
    let n: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("N must be an integer"))
        .unwrap_or(1000);

    let versions: [(&str, Cube); 5] = [
        ("v1  two accumulation loops", cube_v1),
        ("v2  restore c = r^3 with s = r^2", cube_v2),
        ("v3  finite differences", cube_v3),
        ("v4  doubling over the bits of N", cube_v4),
        ("v5  one pass over the bits of N", cube_v5),
    ];

    println!("N = {n}");
    println!(
        "{:<36} {:>20} {:>9} {:>7} {:>9} {:>8}",
        "version", "N^3", "adds", "subs", "compares", "selects"
    );
    for (name, cube) in versions {
        let mut ops = Ops::new();
        match cube(&mut ops, n) {
            Ok(c) => {
                let k = ops.snapshot();
                println!(
                    "{name:<36} {c:>20} {:>9} {:>7} {:>9} {:>8}",
                    k.adds, k.subs, k.compares, k.selects
                );
            }
            Err(e) => println!("{name:<36} {e}"),
        }
    }
    Ok(())
}
