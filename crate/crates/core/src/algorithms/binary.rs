//! Binary representation and multiplication by doubling.

use crate::addonly::Ops;
use crate::error::{Error, Result};

/// Bits `b[0..=k]`, least significant first, with `b[k] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDigits {
    bits: Vec<i64>,
    k: i64,
}

impl BinaryDigits {
    /// Validates that every entry is a bit and the leading one is set.
    pub fn from_bits(bits: Vec<i64>) -> Result<Self> {
        let (k, top) = bits
            .iter()
            .enumerate()
            .next_back()
            .ok_or_else(|| Error::Domain("binary digits must be nonempty".into()))?;
        if *top != 1 {
            return Err(Error::Domain("leading binary digit must be 1".into()));
        }
        if let Some(bad) = bits.iter().find(|&&b| b != 0 && b != 1) {
            return Err(Error::NotABit(*bad));
        }
        let k = i64::try_from(k).map_err(|_| Error::Domain("too many digits".into()))?;
        Ok(Self { bits, k })
    }

    pub fn bits(&self) -> &[i64] {
        &self.bits
    }

    /// Index of the most significant bit.
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn into_bits(self) -> Vec<i64> {
        self.bits
    }
}

/// `t[i] = 2^i`, built by doubling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersTable {
    t: Vec<i64>,
}

impl PowersTable {
    /// Table through index `last`.
    pub fn build(ops: &mut Ops, last: i64) -> Result<Self> {
        let mut t = vec![1];
        ops.assign(1);
        while table_guard(ops, &t, last) {
            table_step(ops, &mut t)?;
        }
        Ok(Self { t })
    }

    pub fn get(&self, i: i64) -> Result<i64> {
        at(&self.t, i, "t")
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.t
    }
}

pub(crate) fn index(i: i64, name: &str, len: usize) -> Result<usize> {
    usize::try_from(i)
        .ok()
        .filter(|&u| u < len)
        .ok_or_else(|| Error::IndexOutOfRange {
            name: name.to_owned(),
            index: i,
            len,
        })
}

pub(crate) fn at(items: &[i64], i: i64, name: &str) -> Result<i64> {
    Ok(items[index(i, name, items.len())?])
}

/// Another entry is needed while the table's length is at most `last`.
pub(crate) fn table_guard(ops: &mut Ops, t: &[i64], last: i64) -> bool {
    ops.le(t.len() as i64, last)
}

pub(crate) fn table_step(ops: &mut Ops, t: &mut Vec<i64>) -> Result<()> {
    let top = t.last().copied().unwrap_or(1);
    t.push(ops.double(top)?);
    ops.assign(1);
    Ok(())
}

/// SG1 loop guard: `2p ≤ N`, written `p ≤ N − p` so it cannot overflow.
pub(crate) fn log_guard(ops: &mut Ops, n: i64, p: i64) -> Result<bool> {
    let rest = ops.sub(n, p)?;
    Ok(ops.le(p, rest))
}

/// `k, p := k + 1, p + p`
pub(crate) fn log_step(ops: &mut Ops, k: i64, p: i64) -> Result<(i64, i64)> {
    let k = ops.add(k, 1)?;
    let p = ops.double(p)?;
    ops.assign(2);
    Ok((k, p))
}

/// `j, b[k], m := k, 1, N − t[k]` with the other digits zeroed.
pub(crate) fn tail_init(ops: &mut Ops, n: i64, k: i64, t: &[i64]) -> Result<(i64, Vec<i64>, i64)> {
    let mut b = vec![0; index(k, "t", t.len())?];
    b.push(1);
    let m = ops.sub(n, at(t, k, "t")?)?;
    ops.assign(3);
    Ok((k, b, m))
}

pub(crate) fn descend_guard(ops: &mut Ops, j: i64) -> bool {
    ops.gt(j, 0)
}

/// Moves `j` down one place and settles bit `j` by one subtraction.
pub(crate) fn descend_step(
    ops: &mut Ops,
    j: i64,
    b: &mut [i64],
    m: i64,
    t: &[i64],
) -> Result<(i64, i64)> {
    let j = ops.sub(j, 1)?;
    let tj = at(t, j, "t")?;
    let slot = index(j, "b", b.len())?;
    let m = if ops.ge(m, tj) {
        b[slot] = 1;
        ops.sub(m, tj)?
    } else {
        b[slot] = 0;
        m
    };
    ops.assign(3);
    Ok((j, m))
}

/// Binary representation of `n ≥ 1` in O(log n) counted operations.
pub fn get_bin(ops: &mut Ops, n: i64) -> Result<BinaryDigits> {
    if n < 1 {
        return Err(Error::Domain(format!("get_bin needs N >= 1, got {n}")));
    }
    // SG1> (Log N): 2^k <= N < 2^(k+1)
    let (mut k, mut p) = (0, 1);
    ops.assign(2);
    while log_guard(ops, n, p)? {
        (k, p) = log_step(ops, k, p)?;
    }
    // [SG2> (Powers of 2)
    let t = PowersTable::build(ops, k)?;
    // SG3 (Tail of binary)
    let (mut j, mut b, mut m) = tail_init(ops, n, k, t.as_slice())?;
    // SG4 (Complete): j = 0 and m = 0
    while descend_guard(ops, j) {
        (j, m) = descend_step(ops, j, &mut b, m, t.as_slice())?;
    }
    debug_assert_eq!(m, 0);
    BinaryDigits::from_bits(b)
}

/// `int_to_add` times the number whose digits are `num_times`, by summing
/// the doublings of `int_to_add` selected by each bit.
pub fn add_arg1_arg2_times(
    ops: &mut Ops,
    int_to_add: i64,
    num_times: &BinaryDigits,
) -> Result<i64> {
    if int_to_add < 0 {
        return Err(Error::Domain(format!(
            "add_arg1_arg2_times needs a non-negative addend, got {int_to_add}"
        )));
    }
    let mut term = int_to_add;
    let mut acc = 0;
    for (i, &bit) in num_times.bits().iter().enumerate() {
        if i != 0 {
            term = ops.double(term)?;
        }
        let selected = ops.select_by_bit(bit, term)?;
        acc = ops.add(acc, selected)?;
    }
    ops.assign(2);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(n: i64) -> Vec<i64> {
        get_bin(&mut Ops::new(), n).unwrap().into_bits()
    }

    #[test]
    fn small_values() {
        assert_eq!(bits_of(1), vec![1]);
        assert_eq!(bits_of(5), vec![1, 0, 1]);
        assert_eq!(bits_of(6), vec![0, 1, 1]);
        assert_eq!(get_bin(&mut Ops::new(), 1).unwrap().k(), 0);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(get_bin(&mut Ops::new(), 0), Err(Error::Domain(_))));
        assert!(matches!(
            get_bin(&mut Ops::new(), -3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn largest_input() {
        let b = get_bin(&mut Ops::new(), i64::MAX).unwrap();
        assert_eq!(b.k(), 62);
        assert!(b.bits().iter().all(|&x| x == 1));
    }

    #[test]
    fn multiply_by_doubling() {
        let mut ops = Ops::new();
        let five = get_bin(&mut ops, 5).unwrap();
        assert_eq!(add_arg1_arg2_times(&mut ops, 3, &five), Ok(15));
        let one = get_bin(&mut ops, 1).unwrap();
        assert_eq!(add_arg1_arg2_times(&mut ops, 9, &one), Ok(9));
        let eight = get_bin(&mut ops, 8).unwrap();
        assert_eq!(add_arg1_arg2_times(&mut ops, 4, &eight), Ok(32));
        assert!(add_arg1_arg2_times(&mut ops, -1, &eight).is_err());
    }

    #[test]
    fn from_bits_validates() {
        assert!(BinaryDigits::from_bits(vec![]).is_err());
        assert!(BinaryDigits::from_bits(vec![1, 0]).is_err());
        assert_eq!(
            BinaryDigits::from_bits(vec![1, 2, 1]),
            Err(Error::NotABit(2))
        );
        assert_eq!(BinaryDigits::from_bits(vec![0, 1]).unwrap().k(), 1);
    }

    #[test]
    fn powers_table() {
        let mut ops = Ops::new();
        let t = PowersTable::build(&mut ops, 4).unwrap();
        assert_eq!(t.as_slice(), &[1, 2, 4, 8, 16]);
        assert_eq!(ops.snapshot().adds, 4);
        assert!(t.get(5).is_err());
        assert_eq!(
            PowersTable::build(&mut Ops::new(), 0).unwrap().as_slice(),
            &[1]
        );
    }
}
