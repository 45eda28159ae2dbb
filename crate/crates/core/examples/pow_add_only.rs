//! N^M with M - 1 multiplications, each done by doubling over the bits of N.

use csf::algorithms::pow_add_only;
use csf::Ops;

fn main() -> csf::Result<()> {
    for (n, m) in [(2, 10), (3, 4), (7, 1), (10, 18), (0, 5)] {
        let mut ops = Ops::new();
        let p = pow_add_only(&mut ops, n, m)?;
        let k = ops.snapshot();
        println!("{n}^{m} = {p}  (adds {}, selects {})", k.adds, k.selects);
    }
    match pow_add_only(&mut Ops::new(), 2, 63) {
        Ok(p) => println!("2^63 = {p}"),
        Err(e) => println!("2^63: {e}"),
    }
    Ok(())
}
