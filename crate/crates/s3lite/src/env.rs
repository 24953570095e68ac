//! Lexically scoped environments. Lookup walks the parent chain;
//! definition always writes to the innermost frame.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::error::RuntimeError;
use crate::value::Value;

#[derive(Debug, Clone)]
pub enum Binding {
    Bound(Value),
    /// A parameter the caller did not supply; errors on first use.
    MissingArg,
}

#[derive(Debug)]
struct Frame {
    bindings: HashMap<String, Binding>,
    parent: Option<Env>,
}

#[derive(Debug, Clone)]
pub struct Env(Rc<RefCell<Frame>>);

impl Env {
    pub fn global() -> Env {
        Env(Rc::new(RefCell::new(Frame {
            bindings: HashMap::new(),
            parent: None,
        })))
    }

    pub fn child(&self) -> Env {
        Env(Rc::new(RefCell::new(Frame {
            bindings: HashMap::new(),
            parent: Some(self.clone()),
        })))
    }

    pub fn define(&self, name: impl Into<String>, value: Value) {
        self.0
            .borrow_mut()
            .bindings
            .insert(name.into(), Binding::Bound(value));
    }

    pub fn define_missing(&self, name: impl Into<String>) {
        self.0
            .borrow_mut()
            .bindings
            .insert(name.into(), Binding::MissingArg);
    }

    pub fn lookup(&self, name: &str) -> Result<Value, RuntimeError> {
        match self.lookup_binding(name) {
            Some(Binding::Bound(v)) => Ok(v),
            Some(Binding::MissingArg) => Err(RuntimeError::new(format!(
                "argument '{name}' is missing, with no default"
            ))),
            None => Err(RuntimeError::new(format!("object '{name}' not found"))),
        }
    }

    /// Innermost binding for `name`, without the not-found error.
    pub fn lookup_binding(&self, name: &str) -> Option<Binding> {
        let frame = self.0.borrow();
        if let Some(b) = frame.bindings.get(name) {
            return Some(b.clone());
        }
        frame.parent.as_ref().and_then(|p| p.lookup_binding(name))
    }

    /// The innermost visible value for `name`, if any.
    pub fn lookup_value(&self, name: &str) -> Option<Value> {
        match self.lookup_binding(name) {
            Some(Binding::Bound(v)) => Some(v),
            _ => None,
        }
    }

    /// Names on the whole chain bound to functions and starting with
    /// `prefix`. Innermost bindings win: a name shadowed by a
    /// non-function is excluded. Result is sorted.
    pub fn function_names_with_prefix(&self, prefix: &str) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        let mut env = Some(self.clone());
        while let Some(e) = env {
            let frame = e.0.borrow();
            for (name, binding) in frame.bindings.iter() {
                if seen.insert(name.clone())
                    && name.starts_with(prefix)
                    && matches!(binding, Binding::Bound(v) if v.is_function())
                {
                    found.push(name.clone());
                }
            }
            env = frame.parent.clone();
        }
        found.sort();
        found
    }
}
