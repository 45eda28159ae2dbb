//! Built-in procedures under stable names.

use crate::algorithms::procedures;
use crate::csf::{DomainBounds, ProcedureSpec};
use crate::error::{Error, Result};
use crate::state::Params;

/// What a procedure takes as input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Input {
    /// `N`
    N,
    /// `N` and `M`
    NM,
    /// `anArr`
    Array,
}

pub struct Procedure {
    pub name: &'static str,
    pub summary: &'static str,
    pub input: Input,
    pub spec: ProcedureSpec,
    domain: fn(i64, usize) -> DomainBounds,
}

impl Procedure {
    pub fn new(
        name: &'static str,
        summary: &'static str,
        input: Input,
        spec: ProcedureSpec,
        domain: fn(i64, usize) -> DomainBounds,
    ) -> Self {
        Self {
            name,
            summary,
            input,
            spec,
            domain,
        }
    }

    /// The bounded domain for sufficiency checks: every scalar in
    /// `0..=bound`, every array of length at most `max_len` with entries in
    /// `0..=bound`.
    pub fn domain(&self, bound: i64, max_len: usize) -> DomainBounds {
        (self.domain)(bound, max_len)
    }

    /// Builds the run's parameters from the command-line style inputs.
    pub fn params(&self, n: Option<i64>, m: Option<i64>, array: Option<&[i64]>) -> Result<Params> {
        let missing = |what: &str| Error::Domain(format!("`{}` needs {what}", self.name));
        Ok(match self.input {
            Input::N => Params::n(n.ok_or_else(|| missing("--n"))?),
            Input::NM => Params::n(n.ok_or_else(|| missing("--n"))?)
                .with("M", m.ok_or_else(|| missing("--m"))?),
            Input::Array => {
                Params::new().with_array("anArr", array.ok_or_else(|| missing("--array"))?.to_vec())
            }
        })
    }
}

fn cube_dom(bound: i64, names: &[&str]) -> DomainBounds {
    names
        .iter()
        .fold(DomainBounds::new().param("N", 0..=bound), |d, v| {
            d.scalar(v, 0..=bound)
        })
}

pub struct Registry {
    procedures: Vec<Procedure>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            procedures: Vec::new(),
        }
    }

    pub fn builtin() -> Self {
        let procedures = vec![
            Procedure {
                name: "v1",
                summary: "c = N^2 * N by two accumulation loops, O(N)",
                input: Input::N,
                spec: procedures::v1(),
                domain: |b, _| cube_dom(b, &["c", "s"]),
            },
            Procedure {
                name: "v2",
                summary: "c = r^3 restored with s = r^2 as r counts to N, O(N)",
                input: Input::N,
                spec: procedures::v2(),
                domain: |b, _| cube_dom(b, &["c", "r", "s"]),
            },
            Procedure {
                name: "v3",
                summary: "finite differences r, c, q, l := r+1, c+q, q+l, l+6, O(N)",
                input: Input::N,
                spec: procedures::v3(),
                domain: |b, _| cube_dom(b, &["c", "l", "q", "r"]),
            },
            Procedure {
                name: "v4",
                summary: "N^2 and N^3 by doubling over the bits of N, O(log N)",
                input: Input::N,
                spec: procedures::v4(),
                domain: |b, len| cube_dom(b, &["c", "k", "s"]).array("b", 0..=len, 0..=b),
            },
            Procedure {
                name: "v5",
                summary: "c = r^3 with s = 2^j r^2, l = 2^2j r over the bits of N, O(log N)",
                input: Input::N,
                spec: procedures::v5(),
                domain: |b, len| {
                    cube_dom(b, &["c", "j", "k", "l", "s"])
                        .array("b", 0..=len, 0..=b)
                        .array("t", 0..=len, 0..=b)
                },
            },
            Procedure {
                name: "getbin",
                summary: "binary digits of N >= 1, O(log N)",
                input: Input::N,
                spec: procedures::get_bin_procedure(),
                domain: |b, len| {
                    cube_dom(b, &["j", "k", "m"])
                        .array("b", 0..=len, 0..=b)
                        .array("t", 0..=len, 0..=b)
                },
            },
            Procedure {
                name: "getmax",
                summary: "maximum of a nonempty array, first occurrence on ties",
                input: Input::Array,
                spec: procedures::get_max_procedure(),
                domain: |b, len| {
                    DomainBounds::new()
                        .param_array("anArr", 0..=len, 0..=b)
                        .scalar("i", 0..=b)
                        .scalar("r", 0..=b)
                        .scalar("returnI", 0..=b)
                },
            },
            Procedure {
                name: "pow",
                summary: "N^M by M - 1 doubling multiplications, O(M log N)",
                input: Input::NM,
                spec: procedures::pow_procedure(),
                domain: |b, len| {
                    cube_dom(b, &["i", "k", "p"])
                        .param("M", 0..=b)
                        .array("b", 0..=len, 0..=b)
                },
            },
        ];
        Self { procedures }
    }

    /// Adds `procedure`, replacing any entry with the same name.
    pub fn register(&mut self, procedure: Procedure) {
        self.procedures.retain(|p| p.name != procedure.name);
        self.procedures.push(procedure);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Procedure> {
        self.procedures.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.procedures.is_empty()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.procedures.iter().map(|p| p.name).collect()
    }

    pub fn get(&self, name: &str) -> Result<&Procedure> {
        self.procedures
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownProcedure {
                name: name.to_owned(),
                available: self.names().join(", "),
            })
    }
}
