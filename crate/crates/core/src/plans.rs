//! Algorithm plans: the pre/inv/post conditions and subgoals of each
//! built-in procedure.
//!
//! These are specifications, not implementations, so they may multiply
//! freely. Arithmetic is carried out in `i128` with overflow reported as
//! [`Error::Overflow`].

use crate::csf::{AlgorithmPlan, Predicate, Subgoal};
use crate::error::{Error, Result};
use crate::state::{Params, State};

fn overflow(op: &'static str, lhs: i64, rhs: i64) -> Error {
    Error::Overflow { op, lhs, rhs }
}

/// `base^exp` exactly, for `exp >= 0`.
pub fn ipow(base: i64, exp: i64) -> Result<i128> {
    let e = u32::try_from(exp).map_err(|_| overflow("pow", base, exp))?;
    i128::from(base)
        .checked_pow(e)
        .ok_or_else(|| overflow("pow", base, exp))
}

fn pow2(exp: i64) -> Result<i128> {
    ipow(2, exp)
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(|| overflow("mul", 0, 0))
}

/// `Σ 2^i · b[i]` over `lo..=hi`, which must lie within `b`.
fn weighted(b: &[i64], lo: i64, hi: i64) -> Result<i128> {
    let mut sum = 0i128;
    for i in lo..=hi {
        let bit = usize::try_from(i)
            .ok()
            .and_then(|u| b.get(u))
            .ok_or(Error::IndexOutOfRange {
                name: "b".into(),
                index: i,
                len: b.len(),
            })?;
        sum += mul(pow2(i)?, i128::from(*bit))?;
    }
    Ok(sum)
}

fn is_bit(x: &i64) -> bool {
    *x == 0 || *x == 1
}

fn n_param(p: &Params) -> Result<i64> {
    p.get("N")
}

fn pre_n_non_negative(p: &Params, _: &State) -> Result<bool> {
    Ok(n_param(p)? >= 0)
}

fn post_cube(p: &Params, s: &State) -> Result<bool> {
    let n = n_param(p)?;
    Ok(i128::from(s.get("c")?) == ipow(n, 3)?)
}

/// `N = b[0] + 2b[1] + … + 2^k b[k]`, every `b[i]` a bit, `b[k] = 1`.
fn n_in_binary(p: &Params, s: &State) -> Result<bool> {
    let n = n_param(p)?;
    let b = s.array("b")?;
    if b.last() != Some(&1) || !b.iter().all(is_bit) {
        return Ok(false);
    }
    let k = s.get("k")?;
    if b.len() as i64 - 1 != k {
        return Ok(false);
    }
    Ok(weighted(b, 0, k)? == i128::from(n))
}

/// `t[i] = 2^i` for `i = 0..=last`, and nothing beyond.
fn powers_of_two(t: &[i64], last: i128) -> Result<bool> {
    if last < 0 || t.len() as i128 != last + 1 {
        return Ok(false);
    }
    for (i, &x) in t.iter().enumerate() {
        if i128::from(x) != pow2(i as i64)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t[i] = 2^i` for every entry, with at most `last + 1` entries.
fn powers_of_two_prefix(t: &[i64], last: i128) -> Result<bool> {
    Ok(last >= 0 && t.len() as i128 <= last + 1 && powers_of_two(t, t.len() as i128 - 1)?)
}

fn cube_post_plan(subgoals: Vec<Subgoal>) -> AlgorithmPlan {
    AlgorithmPlan {
        pre: Predicate::new("pre", pre_n_non_negative),
        inv: Predicate::always("inv"),
        post: Predicate::new("post", post_cube),
        subgoals,
    }
}

/// SG (Cube) of the linear versions: `c = r^3 ∧ r ≤ N`.
fn sg_cube_r() -> Subgoal {
    Subgoal::new("Cube", |p, s| {
        let n = n_param(p)?;
        let c = s.get("c")?;
        let r = s.get("r")?;
        Ok(r <= n && i128::from(c) == ipow(r, 3)?)
    })
}

fn sg_particularized_r() -> Subgoal {
    Subgoal::new("Particularized", |p, s| Ok(s.get("r")? == n_param(p)?))
}

/// `[SG1> s = N²`, `SG2 c = N³`.
pub fn v1() -> AlgorithmPlan {
    cube_post_plan(vec![
        Subgoal::new("Square", |p, s| {
            Ok(i128::from(s.get("s")?) == ipow(n_param(p)?, 2)?)
        })
        .pragmatic()
        .constant_only(),
        Subgoal::new("Cube", post_cube),
    ])
}

/// `SG1 c = r³ ∧ r ≤ N`, `[SG2 s = r²`, `SG3 r = N`.
pub fn v2() -> AlgorithmPlan {
    cube_post_plan(vec![
        sg_cube_r(),
        Subgoal::new("Square", |_, s| {
            Ok(i128::from(s.get("s")?) == ipow(s.get("r")?, 2)?)
        })
        .pragmatic(),
        sg_particularized_r(),
    ])
}

/// `SG1 c = r³ ∧ r ≤ N`, `[SG2 q = 3r² + 3r + 1`, `[SG3 l = 6r + 6`,
/// `SG4 r = N`.
pub fn v3() -> AlgorithmPlan {
    cube_post_plan(vec![
        sg_cube_r(),
        Subgoal::new("Quadratic", |_, s| {
            let q = i128::from(s.get("q")?);
            let r = i128::from(s.get("r")?);
            Ok(q == 3 * r * r + 3 * r + 1)
        })
        .pragmatic(),
        Subgoal::new("Linear", |_, s| {
            let l = i128::from(s.get("l")?);
            let r = i128::from(s.get("r")?);
            Ok(l == 6 * r + 6)
        })
        .pragmatic(),
        sg_particularized_r(),
    ])
}

/// `[SG1 N in binary`, `[SG2 s = N²`, `SG3 c = N³`.
pub fn v4() -> AlgorithmPlan {
    cube_post_plan(vec![
        Subgoal::new("N in binary", n_in_binary).pragmatic(),
        Subgoal::new("Square", |p, s| {
            Ok(i128::from(s.get("s")?) == ipow(n_param(p)?, 2)?)
        })
        .pragmatic(),
        Subgoal::new("Cube", post_cube),
    ])
}

/// `r = b[0] + 2b[1] + … + 2^j b[j]`, requiring `0 ≤ j ≤ k`.
fn v5_prefix(s: &State) -> Result<Option<(i64, i128)>> {
    let b = s.array("b")?;
    let j = s.get("j")?;
    let k = s.get("k")?;
    if j < 0 || j > k {
        return Ok(None);
    }
    Ok(Some((j, weighted(b, 0, j)?)))
}

/// `SG1> N in binary`, `[SG2> t = {1, 2, …, 2^(3k+1)}`,
/// `SG3 c = r³ with r = Σ_{i≤j} 2^i b[i] and j ≤ k`, `[SG4 s = 2^j r²`,
/// `[SG5 l = 2^(2j) r`, `SG6 j = k`.
pub fn v5() -> AlgorithmPlan {
    cube_post_plan(vec![
        Subgoal::new("N in binary", n_in_binary).constant_only(),
        Subgoal::new("Powers of 2", |_, s| {
            let k = s.get("k")?;
            powers_of_two_prefix(s.array("t")?, 3 * i128::from(k) + 1)
        })
        .pragmatic()
        .constant_only(),
        Subgoal::new("Cube", |_, s| {
            let c = i128::from(s.get("c")?);
            Ok(match v5_prefix(s)? {
                Some((_, r)) => c == mul(mul(r, r)?, r)?,
                None => false,
            })
        }),
        Subgoal::new("Square term", |_, s| {
            let sq = i128::from(s.get("s")?);
            Ok(match v5_prefix(s)? {
                Some((j, r)) => sq == mul(pow2(j)?, mul(r, r)?)?,
                None => false,
            })
        })
        .pragmatic(),
        Subgoal::new("Linear term", |_, s| {
            let l = i128::from(s.get("l")?);
            Ok(match v5_prefix(s)? {
                Some((j, r)) => l == mul(mul(pow2(j)?, pow2(j)?)?, r)?,
                None => false,
            })
        })
        .pragmatic(),
        Subgoal::new("Particularized", |_, s| Ok(s.get("j")? == s.get("k")?)),
    ])
}

/// Binary representation: `SG1> 2^k ≤ N < 2^(k+1)`, `[SG2> t = {1, …, 2^k}`,
/// `SG3 N = m + 2^j b[j] + … + 2^k b[k]`, `SG4 j = 0 ∧ m = 0`.
pub fn get_bin() -> AlgorithmPlan {
    AlgorithmPlan {
        pre: Predicate::new("pre", |p, _| Ok(n_param(p)? >= 1)),
        inv: Predicate::always("inv"),
        post: Predicate::new("post", n_in_binary),
        subgoals: vec![
            Subgoal::new("Log N", |p, s| {
                let n = i128::from(n_param(p)?);
                let k = s.get("k")?;
                Ok(k >= 0 && pow2(k)? <= n && n < pow2(k + 1)?)
            })
            .constant_only(),
            Subgoal::new("Powers of 2", |_, s| {
                let k = s.get("k")?;
                powers_of_two(s.array("t")?, i128::from(k))
            })
            .pragmatic()
            .constant_only(),
            Subgoal::new("Tail of binary", |p, s| {
                let n = n_param(p)?;
                let b = s.array("b")?;
                let j = s.get("j")?;
                let k = s.get("k")?;
                if j < 0 || j > k || b.len() as i128 != i128::from(k) + 1 {
                    return Ok(false);
                }
                if !b[j as usize..].iter().all(is_bit) {
                    return Ok(false);
                }
                let m = s.get("m")?;
                Ok(m >= 0 && i128::from(n) == i128::from(m) + weighted(b, j, k)?)
            }),
            Subgoal::new("Complete", |_, s| Ok(s.get("j")? == 0 && s.get("m")? == 0)),
        ],
    }
}

/// Index of the maximum, per the running-maximum plan:
/// `s1: 0 ≤ r < len ∧ returnI = anArr[r] ∧ i < len ∧ returnI ≥ anArr[0..=i]`,
/// `s2: i = len − 1`.
pub fn get_max() -> AlgorithmPlan {
    AlgorithmPlan {
        pre: Predicate::new("pre", |p, _| Ok(!p.array("anArr")?.is_empty())),
        inv: Predicate::always("inv"),
        post: Predicate::new("post", |p, s| {
            let arr = p.array("anArr")?;
            let ret = s.get("returnI")?;
            Ok(arr.contains(&ret) && arr.iter().all(|&x| ret >= x))
        }),
        subgoals: vec![
            Subgoal::new("Prefix max", |p, s| {
                let arr = p.array("anArr")?;
                let i = s.get("i")?;
                let r = s.get("r")?;
                let ret = s.get("returnI")?;
                let len = arr.len() as i64;
                if !(0..len).contains(&i) || !(0..len).contains(&r) {
                    return Ok(false);
                }
                Ok(ret == arr[r as usize] && arr[..=i as usize].iter().all(|&x| ret >= x))
            }),
            Subgoal::new("Complete", |p, s| {
                Ok(s.get("i")? == p.array("anArr")?.len() as i64 - 1)
            }),
        ],
    }
}

/// `[SG1 N in binary`, `SG2 p = N^i ∧ 1 ≤ i ≤ M`, `SG3 i = M`.
pub fn pow() -> AlgorithmPlan {
    AlgorithmPlan {
        pre: Predicate::new("pre", |p, _| Ok(n_param(p)? >= 0 && p.get("M")? >= 1)),
        inv: Predicate::always("inv"),
        post: Predicate::new("post", |p, s| {
            Ok(i128::from(s.get("p")?) == ipow(n_param(p)?, p.get("M")?)?)
        }),
        subgoals: vec![
            Subgoal::new("N in binary", n_in_binary).pragmatic(),
            Subgoal::new("Power", |p, s| {
                let m = p.get("M")?;
                let i = s.get("i")?;
                if !(1..=m).contains(&i) {
                    return Ok(false);
                }
                Ok(i128::from(s.get("p")?) == ipow(n_param(p)?, i)?)
            }),
            Subgoal::new("Particularized", |p, s| Ok(s.get("i")? == p.get("M")?)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(vars: &[(&str, i64)]) -> State {
        let mut st = State::new();
        for (k, v) in vars {
            st.set(k, *v);
        }
        st
    }

    #[test]
    fn cube_subgoal() {
        let plan = v3();
        let p = Params::n(5);
        assert_eq!(
            plan.subgoals[0].eval(&p, &state(&[("r", 2), ("c", 8)])),
            Ok(true)
        );
        assert_eq!(
            plan.subgoals[0].eval(&p, &state(&[("r", 2), ("c", 9)])),
            Ok(false)
        );
        assert_eq!(
            plan.subgoals[2].eval(&p, &state(&[("r", 1), ("l", 12)])),
            Ok(true)
        );
    }

    #[test]
    fn binary_predicate() {
        let p = Params::n(6);
        let mut st = state(&[("k", 2)]);
        st.set_array("b", vec![0, 1, 1]);
        assert_eq!(n_in_binary(&p, &st), Ok(true));
        st.set_array("b", vec![1, 0, 1]);
        assert_eq!(n_in_binary(&p, &st), Ok(false));
        st.set_array("b", vec![0, 1, 1, 0]);
        assert_eq!(n_in_binary(&p, &st), Ok(false));
    }

    #[test]
    fn v5_possession_terms_at_termination() {
        // N = 5, k = 2: s = 2^2 * 25 = 100, l = 2^4 * 5 = 80
        let plan = v5();
        let mut st = state(&[("j", 2), ("k", 2), ("c", 125), ("s", 100), ("l", 80)]);
        st.set_array("b", vec![1, 0, 1]);
        st.set_array("t", vec![1, 2, 4, 8, 16, 32, 64, 128]);
        for sg in &plan.subgoals {
            assert_eq!(sg.eval(&Params::n(5), &st), Ok(true), "{}", sg.label());
        }
    }

    #[test]
    fn overflowing_predicate_reports_overflow() {
        let st = state(&[("c", 0), ("r", i64::MAX)]);
        assert!(matches!(
            v2().subgoals[0].eval(&Params::n(i64::MAX), &st),
            Err(Error::Overflow { .. })
        ));
    }
}
