//! Runtime values. Every value carries an ordered attribute list; the
//! attribute named `"class"` is the dispatch key. Values have copy
//! semantics: cloning a record or vector yields independent storage, so
//! mutation through one binding is never observable through another.
//! Closures share their body and captured environment behind `Rc`,
//! which is unobservable because functions are immutable.

use std::rc::Rc;

use indexmap::IndexMap;

use crate::ast::Expr;
use crate::env::Env;
use crate::error::RuntimeError;

/// Ordered class-name list, as returned by `get_class`. Never empty.
pub type ClassVector = Vec<String>;

#[derive(Debug)]
pub struct Closure {
    pub params: Vec<String>,
    pub body: Rc<Expr>,
    pub env: Env,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Numeric(Vec<f64>),
    Strings(Vec<String>),
    Logical(Vec<bool>),
    Record(IndexMap<String, Value>),
    Closure(Rc<Closure>),
    Builtin(&'static str),
    Null,
}

#[derive(Debug, Clone)]
pub struct Value {
    pub payload: Payload,
    pub attrs: IndexMap<String, Value>,
}

impl Value {
    pub fn new(payload: Payload) -> Value {
        Value {
            payload,
            attrs: IndexMap::new(),
        }
    }

    pub fn null() -> Value {
        Value::new(Payload::Null)
    }

    pub fn num(x: f64) -> Value {
        Value::new(Payload::Numeric(vec![x]))
    }

    pub fn numeric(v: Vec<f64>) -> Value {
        Value::new(Payload::Numeric(v))
    }

    pub fn string(s: impl Into<String>) -> Value {
        Value::new(Payload::Strings(vec![s.into()]))
    }

    pub fn strings(v: Vec<String>) -> Value {
        Value::new(Payload::Strings(v))
    }

    pub fn logical(b: bool) -> Value {
        Value::new(Payload::Logical(vec![b]))
    }

    pub fn record(fields: IndexMap<String, Value>) -> Value {
        Value::new(Payload::Record(fields))
    }

    pub fn builtin(name: &'static str) -> Value {
        Value::new(Payload::Builtin(name))
    }

    pub fn is_null(&self) -> bool {
        matches!(self.payload, Payload::Null)
    }

    pub fn is_function(&self) -> bool {
        matches!(self.payload, Payload::Closure(_) | Payload::Builtin(_))
    }

    /// The class vector: the `"class"` attribute when present, otherwise
    /// the implicit class of the payload kind.
    pub fn get_class(&self) -> ClassVector {
        if let Some(c) = self.attrs.get("class") {
            if let Payload::Strings(names) = &c.payload {
                if !names.is_empty() {
                    return names.clone();
                }
            }
        }
        vec![self.implicit_class().to_string()]
    }

    pub fn implicit_class(&self) -> &'static str {
        match self.payload {
            Payload::Numeric(_) => "numeric",
            Payload::Strings(_) => "character",
            Payload::Logical(_) => "logical",
            Payload::Record(_) => "list",
            Payload::Closure(_) | Payload::Builtin(_) => "function",
            Payload::Null => "NULL",
        }
    }

    /// Returns a copy with the `"class"` attribute set. The payload is
    /// untouched. Errors when `classes` is empty or holds an empty name.
    pub fn with_class(mut self, classes: Vec<String>) -> Result<Value, RuntimeError> {
        if classes.is_empty() {
            return Err(RuntimeError::new("class must be a nonempty character vector"));
        }
        if classes.iter().any(|c| c.is_empty()) {
            return Err(RuntimeError::new("class names must be nonempty strings"));
        }
        self.attrs
            .insert("class".to_string(), Value::strings(classes));
        Ok(self)
    }

    pub fn as_numeric(&self) -> Result<&[f64], RuntimeError> {
        match &self.payload {
            Payload::Numeric(v) => Ok(v),
            _ => Err(RuntimeError::new(
                "non-numeric argument to binary operator",
            )),
        }
    }

    pub fn as_strings(&self) -> Result<&[String], RuntimeError> {
        match &self.payload {
            Payload::Strings(v) => Ok(v),
            _ => Err(RuntimeError::new("expected a character vector")),
        }
    }

    pub fn scalar_string(&self) -> Result<&str, RuntimeError> {
        match &self.payload {
            Payload::Strings(v) if v.len() == 1 => Ok(&v[0]),
            _ => Err(RuntimeError::new("expected a single string")),
        }
    }

    pub fn scalar_num(&self) -> Result<f64, RuntimeError> {
        match &self.payload {
            Payload::Numeric(v) if v.len() == 1 => Ok(v[0]),
            _ => Err(RuntimeError::new("expected a single number")),
        }
    }

    pub fn as_record(&self) -> Result<&IndexMap<String, Value>, RuntimeError> {
        match &self.payload {
            Payload::Record(r) => Ok(r),
            _ => Err(RuntimeError::new("expected a record")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_classes() {
        assert_eq!(Value::numeric(vec![1.0]).get_class(), vec!["numeric"]);
        assert_eq!(Value::string("a").get_class(), vec!["character"]);
        assert_eq!(Value::logical(true).get_class(), vec!["logical"]);
        assert_eq!(Value::record(IndexMap::new()).get_class(), vec!["list"]);
        assert_eq!(Value::builtin("sum").get_class(), vec!["function"]);
        assert_eq!(Value::null().get_class(), vec!["NULL"]);
    }

    #[test]
    fn explicit_class_is_returned_verbatim() {
        let v = Value::numeric((1..=10).map(f64::from).collect())
            .with_class(vec!["myclass".into()])
            .unwrap();
        assert_eq!(v.get_class(), vec!["myclass"]);

        let v = Value::record(IndexMap::new())
            .with_class(vec!["a".into(), "b".into()])
            .unwrap();
        assert_eq!(v.get_class(), vec!["a", "b"]);
    }

    #[test]
    fn with_class_rejects_empty() {
        assert!(Value::num(1.0).with_class(vec![]).is_err());
        assert!(Value::num(1.0).with_class(vec!["".into()]).is_err());
    }

    #[test]
    fn with_class_preserves_payload() {
        let before = Value::numeric(vec![1.0, 2.0, 3.0]);
        let after = before.clone().with_class(vec!["x".into()]).unwrap();
        assert!(matches!(&after.payload, Payload::Numeric(v) if v == &[1.0, 2.0, 3.0]));
    }

    #[test]
    fn clones_are_independent() {
        let mut fields = IndexMap::new();
        fields.insert("f".to_string(), Value::num(1.0));
        let x = Value::record(fields);
        let mut y = x.clone();
        if let Payload::Record(r) = &mut y.payload {
            r.insert("f".to_string(), Value::num(99.0));
        }
        let Payload::Record(r) = &x.payload else { panic!() };
        assert_eq!(r["f"].scalar_num().unwrap(), 1.0);
    }
}
