//! Reference values computed with ordinary multiplication. Used to verify
//! results, never by the algorithms themselves.

use crate::error::{Error, Result};
use crate::state::{Params, Value};

/// `n^m` exactly, or an overflow error outside `i64`.
pub fn power(n: i64, m: u32) -> Result<i64> {
    n.checked_pow(m).ok_or(Error::Overflow {
        op: "pow",
        lhs: n,
        rhs: i64::from(m),
    })
}

pub fn cube(n: i64) -> Result<i64> {
    power(n, 3)
}

/// Binary digits, least significant first.
pub fn binary_digits(n: i64) -> Vec<i64> {
    let mut bits = Vec::new();
    let mut x = n;
    while x > 0 {
        bits.push(x % 2);
        x /= 2;
    }
    bits
}

/// Expected result of a built-in procedure.
pub fn expected(procedure: &str, params: &Params) -> Result<Value> {
    match procedure {
        "v1" | "v2" | "v3" | "v4" | "v5" => cube(params.get("N")?).map(Value::Int),
        "pow" => {
            let m = u32::try_from(params.get("M")?)
                .map_err(|_| Error::Domain("M out of range".into()))?;
            power(params.get("N")?, m).map(Value::Int)
        }
        "getbin" => Ok(Value::Array(binary_digits(params.get("N")?))),
        "getmax" => params
            .array("anArr")?
            .iter()
            .max()
            .map(|&x| Value::Int(x))
            .ok_or_else(|| Error::Precondition("getmax".into())),
        other => Err(Error::UnknownProcedure {
            name: other.to_owned(),
            available: String::new(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(binary_digits(6), vec![0, 1, 1]);
        assert_eq!(binary_digits(1), vec![1]);
        assert!(binary_digits(0).is_empty());
    }

    #[test]
    fn expected_values() {
        assert_eq!(expected("v3", &Params::n(5)), Ok(Value::Int(125)));
        assert_eq!(
            expected("pow", &Params::n(3).with("M", 4)),
            Ok(Value::Int(81))
        );
        assert!(cube(2_097_152).is_err());
    }
}
