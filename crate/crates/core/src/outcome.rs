use std::fmt;

use crate::arith::{PrimePower, Rational, Residue};

/// One side of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    Residue(Residue),
    /// Summary of an exhaustive inner loop: how many cases held out of how many.
    Count(u64),
    /// The side could not be evaluated.
    Error(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Residue(r) => write!(f, "{}", r.value()),
            Value::Count(n) => write!(f, "{n}"),
            Value::Error(msg) => write!(f, "error: {msg}"),
        }
    }
}

/// Named integer parameters identifying one instance, e.g. `p=13` or `k=2,l=5`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    params: Vec<(&'static str, i64)>,
}

impl Instance {
    pub fn new(params: &[(&'static str, i64)]) -> Self {
        Self {
            params: params.to_vec(),
        }
    }

    pub fn prime(p: u64) -> Self {
        Self::new(&[("p", p as i64)])
    }

    pub fn params(&self) -> &[(&'static str, i64)] {
        &self.params
    }

    /// Numeric sort key, so `p=11` orders after `p=7`.
    pub fn sort_key(&self) -> Vec<i64> {
        self.params.iter().map(|&(_, v)| v).collect()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{name}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: String,
    pub instance: Instance,
    /// `None` for exact identities.
    pub modulus: Option<PrimePower>,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
}

impl CheckOutcome {
    pub fn compare(
        check: &str,
        instance: Instance,
        modulus: Option<PrimePower>,
        lhs: Value,
        rhs: Value,
    ) -> Self {
        let pass = !matches!(lhs, Value::Error(_)) && lhs == rhs;
        Self {
            check: check.to_string(),
            instance,
            modulus,
            lhs,
            rhs,
            pass,
        }
    }

    pub fn exact(check: &str, instance: Instance, lhs: Rational, rhs: Rational) -> Self {
        Self::compare(check, instance, None, Value::Exact(lhs), Value::Exact(rhs))
    }

    pub fn failed(check: &str, instance: Instance, modulus: Option<PrimePower>, reason: String) -> Self {
        Self {
            check: check.to_string(),
            instance,
            modulus,
            lhs: Value::Error(reason.clone()),
            rhs: Value::Error(reason),
            pass: false,
        }
    }

    pub fn modulus_label(&self) -> String {
        match &self.modulus {
            Some(m) => m.to_string(),
            None => "exact".to_string(),
        }
    }
}

/// Canonical report order: by check id, then numerically by instance.
pub fn sort_outcomes(outcomes: &mut [CheckOutcome]) {
    outcomes.sort_by(|a, b| {
        a.check
            .cmp(&b.check)
            .then_with(|| a.instance.sort_key().cmp(&b.instance.sort_key()))
    });
}
