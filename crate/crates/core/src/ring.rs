//! Polynomial ring descriptors: named variables, base field, monomial order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::order::MonomialOrder;

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

/// A polynomial ring k[x_1, ..., x_n]. Cheap to clone and share; two rings
/// interoperate when their variables, field and order agree.
#[derive(Debug, Clone)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldSpec, order: MonomialOrder) -> Result<PolyRing> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > vars.len() {
                return Err(Error::InvalidRing("block split exceeds variable count".into()));
            }
        }
        Ok(PolyRing(Arc::new(RingData { vars, field, order })))
    }

    /// Convenience constructor over GF(32003) with grevlex.
    pub fn grevlex(vars: &[&str], field: FieldSpec) -> Result<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            field,
            MonomialOrder::GrevLex,
        )
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    /// Same variables and field under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        PolyRing::new(self.0.vars.clone(), self.0.field, order)
    }

    /// Same variables and order over a different field.
    pub fn with_field(&self, field: FieldSpec) -> Result<PolyRing> {
        PolyRing::new(self.0.vars.clone(), field, self.0.order)
    }

    /// Extends the ring by auxiliary variables prepended in front, ordered by
    /// the two-block elimination order so the new variables can be eliminated.
    pub fn extend_front(&self, extra: &[&str]) -> Result<PolyRing> {
        let mut vars: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        vars.extend(self.0.vars.iter().cloned());
        PolyRing::new(vars, self.0.field, MonomialOrder::Block { split: extra.len() })
    }

    /// A variable name not colliding with any existing one.
    pub fn fresh_var_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        let mut i = 0;
        loop {
            let name = format!("{base}{i}");
            if self.var_index(&name).is_none() {
                return name;
            }
            i += 1;
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.0.field {
            FieldSpec::Rationals => "QQ".to_string(),
            FieldSpec::Prime(p) => format!("GF({p})"),
        };
        write!(f, "{}[{}]", field, self.0.vars.join(","))
    }
}
