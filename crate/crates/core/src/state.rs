//! Variable environments: the mutable [`State`] a procedure transforms and
//! the immutable [`Params`] it is run with.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A variable's value: a signed 64-bit scalar or an array of them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Array(Vec<i64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Array(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Named integer and array variables. Names are unique across both kinds
/// since a single map holds them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State {
    vars: BTreeMap<String, Value>,
}

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.vars.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.vars.contains_key(name)
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.vars.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Reads a scalar. Unbound names are an error, never zero.
    pub fn get(&self, name: &str) -> Result<i64> {
        match self.vars.get(name) {
            Some(Value::Int(v)) => Ok(*v),
            Some(Value::Array(_)) => Err(Error::KindMismatch {
                name: name.to_owned(),
                expected: "a scalar",
            }),
            None => Err(Error::Unbound(name.to_owned())),
        }
    }

    pub fn array(&self, name: &str) -> Result<&[i64]> {
        match self.vars.get(name) {
            Some(Value::Array(v)) => Ok(v),
            Some(Value::Int(_)) => Err(Error::KindMismatch {
                name: name.to_owned(),
                expected: "an array",
            }),
            None => Err(Error::Unbound(name.to_owned())),
        }
    }

    /// Reads `name[index]`.
    pub fn at(&self, name: &str, index: i64) -> Result<i64> {
        let items = self.array(name)?;
        usize::try_from(index)
            .ok()
            .and_then(|i| items.get(i).copied())
            .ok_or_else(|| Error::IndexOutOfRange {
                name: name.to_owned(),
                index,
                len: items.len(),
            })
    }

    pub fn set(&mut self, name: &str, value: i64) {
        self.insert(name, Value::Int(value));
    }

    pub fn set_array(&mut self, name: &str, items: Vec<i64>) {
        self.insert(name, Value::Array(items));
    }

    /// Writes `name[index] := value`; the array must exist and be long enough.
    pub fn set_at(&mut self, name: &str, index: i64, value: i64) -> Result<()> {
        let items = match self.vars.get_mut(name) {
            Some(Value::Array(v)) => v,
            Some(Value::Int(_)) => {
                return Err(Error::KindMismatch {
                    name: name.to_owned(),
                    expected: "an array",
                })
            }
            None => return Err(Error::Unbound(name.to_owned())),
        };
        let len = items.len();
        let slot = usize::try_from(index)
            .ok()
            .and_then(|i| items.get_mut(i))
            .ok_or_else(|| Error::IndexOutOfRange {
                name: name.to_owned(),
                index,
                len,
            })?;
        *slot = value;
        Ok(())
    }

    pub fn insert(&mut self, name: &str, value: Value) {
        match self.vars.get_mut(name) {
            Some(slot) => *slot = value,
            None => {
                self.vars.insert(name.to_owned(), value);
            }
        }
    }

    pub fn remove(&mut self, name: &str) -> Option<Value> {
        self.vars.remove(name)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

/// Inputs fixed for one run (`N`, `M`, `anArr`, ...). Readable like a
/// [`State`] but offers no mutation once built.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(State);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        self.0.set(name, value);
        self
    }

    pub fn with_array(mut self, name: &str, items: Vec<i64>) -> Self {
        self.0.set_array(name, items);
        self
    }

    /// Shorthand for the common single-input case `{N: n}`.
    pub fn n(n: i64) -> Self {
        Self::new().with("N", n)
    }

    pub(crate) fn slots_mut(&mut self) -> &mut State {
        &mut self.0
    }
}

impl Deref for Params {
    type Target = State;

    fn deref(&self) -> &State {
        &self.0
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
