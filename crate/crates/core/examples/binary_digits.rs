//! Binary digits, a powers-of-two table and multiplication by repeated
//! doubling, all with additions only.

use csf::algorithms::{add_arg1_arg2_times, get_bin, procedures, PowersTable};
use csf::csf::{run_procedure, CheckMode};
use csf::{Ops, Params};

fn main() -> csf::Result<()> {
    let mut ops = Ops::new();
    for n in [1, 6, 77, 1024, 1_000_003] {
        let b = get_bin(&mut ops, n)?;
        println!(
            "{n:>9} -> k = {:>2}, bits (least significant first) {:?}",
            b.k(),
            b.bits()
        );
    }

    let t = PowersTable::build(&mut ops, 10)?;
    println!("powers of two: {:?}", t.as_slice());

    let b = get_bin(&mut ops, 13)?;
    println!("37 * 13 = {}", add_arg1_arg2_times(&mut ops, 37, &b)?);
    println!("operations so far: {:?}", ops.snapshot());

    // The same digits from the checked procedure.
    let report = run_procedure(
        &procedures::get_bin_procedure(),
        &Params::n(77),
        CheckMode::Strict,
    )?;
    println!(
        "checked getbin(77) = {:?}, clean: {}",
        report.result,
        report.is_clean()
    );
    Ok(())
}
