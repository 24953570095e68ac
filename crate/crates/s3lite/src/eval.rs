//! Tree-walking evaluator and the interpreter session: environments,
//! call frames, strict left-to-right argument evaluation, replacement
//! assignment, and the diagnostic stream.

use std::rc::Rc;

use crate::ast::{AssignTarget, BinOp, Expr, ExprKind, ReplFn};
use crate::builtins;
use crate::env::Env;
use crate::error::{RuntimeError, SourceError};
use crate::parser::parse_source;
use crate::pretty::pretty;
use crate::printer::format_value;
use crate::value::{Closure, Payload, Value};

const MAX_CALL_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    /// Rendered call context, e.g. `rss.default(lm.fit)`.
    pub context: Option<String>,
}

impl Diagnostic {
    pub fn render(&self) -> String {
        let label = match self.severity {
            Severity::Warning => "Warning",
            Severity::Error => "Error",
        };
        match &self.context {
            Some(ctx) => format!("{label} in {ctx}: {}", self.message),
            None => format!("{label}: {}", self.message),
        }
    }
}

/// One closure invocation. `arg_srcs` is the call-site source text of
/// each argument; a method entered through `UseMethod` keeps the
/// generic call's argument text, so warnings render as in the host
/// language (`rss.default(lm.fit)`).
#[derive(Debug, Clone)]
pub struct FrameInfo {
    pub callee: String,
    pub arg_values: Vec<Value>,
    pub arg_srcs: Vec<String>,
}

impl FrameInfo {
    pub fn render(&self) -> String {
        format!("{}({})", self.callee, self.arg_srcs.join(", "))
    }
}

/// Control flow out of an expression: a runtime error unwinding to the
/// top-level statement, or the tail transfer performed by `UseMethod`.
#[derive(Debug)]
pub enum Flow {
    Error(RuntimeError),
    Return(Value),
}

impl From<RuntimeError> for Flow {
    fn from(e: RuntimeError) -> Flow {
        Flow::Error(e)
    }
}

pub type EvalResult = Result<Value, Flow>;

const PRELUDE: &str = include_str!("../assets/prelude.s3l");

pub struct Session {
    pub globals: Env,
    output: String,
    diagnostics: Vec<Diagnostic>,
    pub(crate) frames: Vec<FrameInfo>,
    pub(crate) tick: u64,
}

impl Session {
    /// A bare session: builtins and bundled data, no prelude.
    pub fn bare() -> Session {
        let globals = Env::global();
        builtins::install(&globals);
        Session {
            globals,
            output: String::new(),
            diagnostics: Vec::new(),
            frames: Vec::new(),
            tick: 0,
        }
    }

    /// A full session with the prelude loaded. `S3L_PRELUDE` may point
    /// at an alternative prelude file.
    pub fn with_prelude() -> Result<Session, SourceError> {
        let mut session = Session::bare();
        match std::env::var("S3L_PRELUDE") {
            Ok(path) => {
                let src = std::fs::read_to_string(&path).map_err(|e| {
                    SourceError::Runtime(RuntimeError::new(format!(
                        "cannot read prelude '{path}': {e}"
                    )))
                })?;
                session.run(&src)?;
            }
            Err(_) => {
                session.run(PRELUDE)?;
            }
        }
        // Prelude execution output is setup noise, not program output.
        session.output.clear();
        session.diagnostics.clear();
        Ok(session)
    }

    pub fn take_output(&mut self) -> String {
        std::mem::take(&mut self.output)
    }

    pub fn take_diagnostics(&mut self) -> Vec<Diagnostic> {
        std::mem::take(&mut self.diagnostics)
    }

    pub(crate) fn write_output(&mut self, text: &str) {
        self.output.push_str(text);
    }

    pub(crate) fn warn(&mut self, message: String) {
        let context = self.frames.last().map(|f| f.render());
        self.diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            message,
            context,
        });
    }

    /// Parses and evaluates `source`, auto-printing visible top-level
    /// results. Stops at the first runtime error; earlier bindings and
    /// output persist. Returns the value of the last statement.
    pub fn run(&mut self, source: &str) -> Result<Value, SourceError> {
        let stmts = parse_source(source)?;
        let mut last = Value::null();
        for stmt in &stmts {
            last = self.eval_statement(stmt).map_err(|e| {
                self.diagnostics.push(Diagnostic {
                    severity: Severity::Error,
                    message: e.message.clone(),
                    context: e.context.clone(),
                });
                SourceError::Runtime(e)
            })?;
        }
        Ok(last)
    }

    /// Evaluates one top-level statement, auto-printing its value when
    /// visible (assignments are invisible, as is a bare Null result).
    pub fn eval_statement(&mut self, stmt: &Expr) -> Result<Value, RuntimeError> {
        self.frames.clear();
        let value = self.eval(stmt, &self.globals.clone()).map_err(|flow| match flow {
            Flow::Error(e) => e,
            Flow::Return(_) => RuntimeError::new("UseMethod called from outside a function"),
        })?;
        let invisible = matches!(
            stmt.kind,
            ExprKind::Assign { .. } | ExprKind::Replacement { .. }
        ) || value.is_null();
        if !invisible {
            self.auto_print(&value)?;
        }
        Ok(value)
    }

    /// Evaluates an expression string and returns its value without
    /// printing. Convenience for tests and embedding.
    pub fn eval_str(&mut self, source: &str) -> Result<Value, SourceError> {
        let stmts = parse_source(source)?;
        let mut last = Value::null();
        for stmt in &stmts {
            self.frames.clear();
            last = self
                .eval(stmt, &self.globals.clone())
                .map_err(|flow| match flow {
                    Flow::Error(e) => SourceError::Runtime(e),
                    Flow::Return(_) => SourceError::Runtime(RuntimeError::new(
                        "UseMethod called from outside a function",
                    )),
                })?;
        }
        Ok(last)
    }

    /// Prints through the `print` generic when the prelude provides
    /// one, otherwise with the built-in renderer.
    fn auto_print(&mut self, value: &Value) -> Result<(), RuntimeError> {
        if let Some(print_fn) = self.globals.lookup_value("print") {
            if print_fn.is_function() {
                self.call_function(&print_fn, "print", vec![value.clone()], vec!["x".into()])?;
                return Ok(());
            }
        }
        let text = format_value(value);
        self.write_output(&text);
        self.write_output("\n");
        Ok(())
    }

    /// Applies a function value to already-evaluated arguments.
    pub fn call_function(
        &mut self,
        callee: &Value,
        callee_name: &str,
        args: Vec<Value>,
        arg_srcs: Vec<String>,
    ) -> Result<Value, RuntimeError> {
        match self.apply(callee, callee_name, args, arg_srcs, &self.globals.clone()) {
            Ok(v) => Ok(v),
            Err(Flow::Error(e)) => Err(e),
            Err(Flow::Return(v)) => Ok(v),
        }
    }

    pub(crate) fn apply(
        &mut self,
        callee: &Value,
        callee_name: &str,
        args: Vec<Value>,
        arg_srcs: Vec<String>,
        env: &Env,
    ) -> EvalResult {
        match &callee.payload {
            Payload::Closure(closure) => {
                if self.frames.len() >= MAX_CALL_DEPTH {
                    return Err(RuntimeError::new("evaluation nested too deeply").into());
                }
                let frame_env = closure.env.child();
                for (i, param) in closure.params.iter().enumerate() {
                    match args.get(i) {
                        Some(v) => frame_env.define(param.clone(), v.clone()),
                        None => frame_env.define_missing(param.clone()),
                    }
                }
                // Arguments beyond the declared parameters are accepted
                // and ignored.
                let frame = FrameInfo {
                    callee: callee_name.to_string(),
                    arg_values: args,
                    arg_srcs,
                };
                let context = frame.render();
                self.frames.push(frame);
                let result = self.eval(&closure.body, &frame_env);
                self.frames.pop();
                match result {
                    Ok(v) => Ok(v),
                    Err(Flow::Return(v)) => Ok(v),
                    Err(Flow::Error(mut e)) => {
                        if e.context.is_none() {
                            e.context = Some(context);
                        }
                        Err(Flow::Error(e))
                    }
                }
            }
            Payload::Builtin(name) => builtins::call(self, env, name, args, &arg_srcs),
            _ => Err(RuntimeError::new("attempt to apply non-function").into()),
        }
    }

    pub(crate) fn eval(&mut self, expr: &Expr, env: &Env) -> EvalResult {
        match &expr.kind {
            ExprKind::Number(x) => Ok(Value::num(*x)),
            ExprKind::Str(s) => Ok(Value::string(s.clone())),
            ExprKind::Ident(name) => Ok(env.lookup(name)?),
            ExprKind::Assign { target, value } => {
                let v = self.eval(value, env)?;
                assign_target(target, v, env)?;
                Ok(Value::null())
            }
            ExprKind::Replacement {
                func,
                target,
                extra,
                value,
            } => {
                let rhs = self.eval(value, env)?;
                let old = env.lookup(target)?;
                let updated = match func {
                    ReplFn::Class => match &rhs.payload {
                        Payload::Strings(names) => old.with_class(names.clone())?,
                        _ => {
                            return Err(
                                RuntimeError::new("class must be a character vector").into()
                            )
                        }
                    },
                    ReplFn::Attr => {
                        let name_v = self.eval(&extra[0], env)?;
                        let name = name_v
                            .scalar_string()
                            .map_err(|_| RuntimeError::new("attribute name must be a string"))?
                            .to_string();
                        let mut v = old;
                        if name == "class" {
                            match &rhs.payload {
                                Payload::Strings(names) => v = v.with_class(names.clone())?,
                                _ => {
                                    return Err(RuntimeError::new(
                                        "class must be a character vector",
                                    )
                                    .into())
                                }
                            }
                        } else if rhs.is_null() {
                            v.attrs.shift_remove(&name);
                        } else {
                            v.attrs.insert(name, rhs);
                        }
                        v
                    }
                };
                env.define(target.clone(), updated);
                Ok(Value::null())
            }
            ExprKind::Field { object, name } => {
                let obj = self.eval(object, env)?;
                match &obj.payload {
                    Payload::Record(fields) => {
                        Ok(fields.get(name).cloned().unwrap_or_else(Value::null))
                    }
                    Payload::Null => Ok(Value::null()),
                    _ => Err(RuntimeError::new("$ operator is invalid for atomic vectors").into()),
                }
            }
            ExprKind::Call { callee, args } => {
                let (callee_val, callee_name) = match &callee.kind {
                    ExprKind::Ident(name) => (env.lookup(name)?, name.clone()),
                    _ => {
                        let v = self.eval(callee, env)?;
                        (v, pretty(callee))
                    }
                };
                let mut values = Vec::with_capacity(args.len());
                let mut srcs = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.eval(a, env)?);
                    srcs.push(pretty(a));
                }
                self.apply(&callee_val, &callee_name, values, srcs, env)
            }
            ExprKind::Function { params, body } => Ok(Value::new(Payload::Closure(Rc::new(
                Closure {
                    params: params.clone(),
                    body: Rc::new((**body).clone()),
                    env: env.clone(),
                },
            )))),
            ExprKind::Block(stmts) => {
                let mut last = Value::null();
                for s in stmts {
                    last = self.eval(s, env)?;
                }
                Ok(last)
            }
            ExprKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let c = self.eval(cond, env)?;
                let truthy = condition_bool(&c)?;
                if truthy {
                    self.eval(then_branch, env)
                } else if let Some(alt) = else_branch {
                    self.eval(alt, env)
                } else {
                    Ok(Value::null())
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let a = self.eval(lhs, env)?;
                let b = self.eval(rhs, env)?;
                Ok(binary_op(*op, &a, &b)?)
            }
            ExprKind::Negate(inner) => {
                let v = self.eval(inner, env)?;
                let xs = v.as_numeric()?;
                Ok(Value::numeric(xs.iter().map(|x| -x).collect()))
            }
        }
    }
}

fn condition_bool(v: &Value) -> Result<bool, RuntimeError> {
    match &v.payload {
        Payload::Logical(b) if b.len() == 1 => Ok(b[0]),
        Payload::Numeric(x) if x.len() == 1 => Ok(x[0] != 0.0),
        Payload::Logical(b) => Err(RuntimeError::new(format!(
            "condition has length {}",
            b.len()
        ))),
        Payload::Numeric(x) => Err(RuntimeError::new(format!(
            "condition has length {}",
            x.len()
        ))),
        _ => Err(RuntimeError::new(
            "argument is not interpretable as logical",
        )),
    }
}

fn assign_target(target: &AssignTarget, value: Value, env: &Env) -> Result<(), RuntimeError> {
    match target {
        AssignTarget::Ident(name) => {
            env.define(name.clone(), value);
            Ok(())
        }
        AssignTarget::Field(..) => {
            let (root, fields) = target_chain(target);
            let old = env.lookup(&root)?;
            let updated = with_field_chain(old, &fields, value)?;
            env.define(root, updated);
            Ok(())
        }
    }
}

fn target_chain(t: &AssignTarget) -> (String, Vec<String>) {
    match t {
        AssignTarget::Ident(n) => (n.clone(), Vec::new()),
        AssignTarget::Field(inner, name) => {
            let (root, mut fields) = target_chain(inner);
            fields.push(name.clone());
            (root, fields)
        }
    }
}

/// Functional update along a `$` chain: every record on the path is
/// copied, so other bindings never observe the mutation.
fn with_field_chain(current: Value, fields: &[String], value: Value) -> Result<Value, RuntimeError> {
    if fields.is_empty() {
        return Ok(value);
    }
    let mut host = current;
    match &mut host.payload {
        Payload::Record(map) => {
            let key = &fields[0];
            if fields.len() == 1 {
                if value.is_null() {
                    map.shift_remove(key);
                } else {
                    map.insert(key.clone(), value);
                }
            } else {
                let inner = map.get(key).cloned().ok_or_else(|| {
                    RuntimeError::new(format!("field '{key}' not found"))
                })?;
                let updated = with_field_chain(inner, &fields[1..], value)?;
                map.insert(key.clone(), updated);
            }
            Ok(host)
        }
        _ => Err(RuntimeError::new("$ assignment is only valid on records")),
    }
}

fn binary_op(op: BinOp, a: &Value, b: &Value) -> Result<Value, RuntimeError> {
    match op {
        BinOp::In => {
            let needle = a.scalar_string().map_err(|_| {
                RuntimeError::new("left operand of %in% must be a single string")
            })?;
            let haystack = b
                .as_strings()
                .map_err(|_| RuntimeError::new("right operand of %in% must be a character vector"))?;
            Ok(Value::logical(haystack.iter().any(|s| s == needle)))
        }
        BinOp::Range => {
            let from = a
                .scalar_num()
                .map_err(|_| RuntimeError::new("range endpoints must be single numbers"))?;
            let to = b
                .scalar_num()
                .map_err(|_| RuntimeError::new("range endpoints must be single numbers"))?;
            let n = (to - from).abs().floor() as usize + 1;
            let step = if to >= from { 1.0 } else { -1.0 };
            Ok(Value::numeric(
                (0..n).map(|i| from + step * i as f64).collect(),
            ))
        }
        _ => {
            let xs = a.as_numeric()?;
            let ys = b.as_numeric()?;
            let n = if xs.is_empty() || ys.is_empty() {
                0
            } else if xs.len() == ys.len() {
                xs.len()
            } else if xs.len() == 1 {
                ys.len()
            } else if ys.len() == 1 {
                xs.len()
            } else {
                return Err(RuntimeError::new(format!(
                    "non-conformable vector lengths ({} and {})",
                    xs.len(),
                    ys.len()
                )));
            };
            let f = |x: f64, y: f64| match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
                BinOp::Pow => x.powf(y),
                _ => unreachable!(),
            };
            let pick = |v: &[f64], i: usize| if v.len() == 1 { v[0] } else { v[i] };
            Ok(Value::numeric(
                (0..n).map(|i| f(pick(xs, i), pick(ys, i))).collect(),
            ))
        }
    }
}
