use crate::addonly::Ops;
use crate::algorithms::binary::{add_arg1_arg2_times, get_bin};
use crate::error::{Error, Result};

/// `N^M` by `M − 1` multiplications by N, each done by doubling over N's
/// bits: O(M log N) additions.
pub fn pow_add_only(ops: &mut Ops, n: i64, m: i64) -> Result<i64> {
    if n < 0 || m < 1 {
        return Err(Error::Domain(format!(
            "pow_add_only needs N >= 0 and M >= 1, got N={n}, M={m}"
        )));
    }
    if ops.eq(n, 0) {
        return Ok(0);
    }
    // [SG1 (N in binary)
    let b = get_bin(ops, n)?;
    // SG2 (Power): p = N^i
    let (mut i, mut p) = (1, n);
    ops.assign(2);
    // SG3 (Particularized): i = M
    while ops.lt(i, m) {
        p = add_arg1_arg2_times(ops, p, &b)?;
        i = ops.add(i, 1)?;
        ops.assign(2);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(pow_add_only(&mut Ops::new(), 2, 10), Ok(1024));
        assert_eq!(pow_add_only(&mut Ops::new(), 7, 1), Ok(7));
        assert_eq!(pow_add_only(&mut Ops::new(), 3, 4), Ok(81));
        assert_eq!(pow_add_only(&mut Ops::new(), 0, 5), Ok(0));
    }

    #[test]
    fn domain() {
        assert!(pow_add_only(&mut Ops::new(), 0, 0).is_err());
        assert!(pow_add_only(&mut Ops::new(), 2, 0).is_err());
        assert!(pow_add_only(&mut Ops::new(), -2, 3).is_err());
        assert!(matches!(
            pow_add_only(&mut Ops::new(), 2, 63),
            Err(Error::Overflow { .. })
        ));
        assert_eq!(pow_add_only(&mut Ops::new(), 2, 62), Ok(1 << 62));
    }
}
