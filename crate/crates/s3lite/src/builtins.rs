//! Built-in functions. Method registration is purely name-based, so a
//! few builtins are bound under dotted internal names (`.print_default`
//! and friends) and wrapped by prelude-defined methods.

use indexmap::IndexMap;

use crate::dispatch::{methods_of, resolve_method};
use crate::env::Env;
use crate::error::RuntimeError;
use crate::eval::{EvalResult, Flow, Session};
use crate::fixtures::make_fixtures;
use crate::printer::{format_num, format_value};
use crate::summary::{quantile_type7, render_summary_table, summarize_data_frame};
use crate::table::{bundled_iris, load_table_file};
use crate::value::{Payload, Value};

const BUILTIN_NAMES: &[&str] = &[
    "class",
    "attr",
    "inherits",
    "methods",
    "dispatch_trace",
    "UseMethod",
    "sum",
    "paste",
    "warning",
    "stop",
    "all.equal",
    "length",
    "numeric",
    "c",
    "has_field",
    "quantile",
    "load_table",
    "make_fixtures",
    "return",
    "tick",
    "lm.fit",
    ".bundled_iris",
    ".make_summary",
    ".print_default",
    ".print_summary",
];

/// Binds every builtin, the logical constants, and NULL.
pub fn install(env: &Env) {
    for name in BUILTIN_NAMES {
        env.define(*name, Value::builtin(name));
    }
    env.define("TRUE", Value::logical(true));
    env.define("FALSE", Value::logical(false));
    env.define("NULL", Value::null());
}

fn arity(name: &str, args: &[Value], n: usize) -> Result<(), RuntimeError> {
    if args.len() != n {
        return Err(RuntimeError::new(format!(
            "{name} expects {n} argument{}, got {}",
            if n == 1 { "" } else { "s" },
            args.len()
        )));
    }
    Ok(())
}

pub fn call(
    session: &mut Session,
    env: &Env,
    name: &str,
    args: Vec<Value>,
    _arg_srcs: &[String],
) -> EvalResult {
    match name {
        "class" => {
            arity("class", &args, 1)?;
            Ok(Value::strings(args[0].get_class()))
        }
        "attr" => {
            arity("attr", &args, 2)?;
            let attr_name = args[1]
                .scalar_string()
                .map_err(|_| RuntimeError::new("attribute name must be a string"))?;
            Ok(args[0]
                .attrs
                .get(attr_name)
                .cloned()
                .unwrap_or_else(Value::null))
        }
        "inherits" => {
            arity("inherits", &args, 2)?;
            let cls = args[1]
                .scalar_string()
                .map_err(|_| RuntimeError::new("inherits expects a class name string"))?;
            Ok(Value::logical(args[0].get_class().iter().any(|c| c == cls)))
        }
        "methods" => {
            arity("methods", &args, 1)?;
            let generic = args[0]
                .scalar_string()
                .map_err(|_| RuntimeError::new("methods expects a generic name string"))?;
            Ok(Value::strings(methods_of(generic, env)))
        }
        "dispatch_trace" => {
            arity("dispatch_trace", &args, 2)?;
            let generic = args[0]
                .scalar_string()
                .map_err(|_| RuntimeError::new("dispatch_trace expects a generic name string"))?;
            let outcome = resolve_method(generic, &args[1].get_class(), env);
            let mut fields = IndexMap::new();
            fields.insert("generic".to_string(), Value::string(outcome.generic));
            fields.insert("classes".to_string(), Value::strings(outcome.classes));
            fields.insert("tried".to_string(), Value::strings(outcome.tried));
            fields.insert(
                "chosen".to_string(),
                match outcome.chosen {
                    Some(m) => Value::string(m),
                    None => Value::null(),
                },
            );
            Ok(Value::record(fields))
        }
        "UseMethod" => use_method(session, env, args),
        "sum" => {
            let mut total = 0.0;
            for a in &args {
                match &a.payload {
                    Payload::Numeric(v) => total += v.iter().sum::<f64>(),
                    Payload::Logical(v) => {
                        total += v.iter().map(|b| if *b { 1.0 } else { 0.0 }).sum::<f64>()
                    }
                    Payload::Null => {}
                    _ => {
                        return Err(RuntimeError::new(
                            "invalid 'type' (non-numeric) of argument",
                        )
                        .into())
                    }
                }
            }
            Ok(Value::num(total))
        }
        "paste" => Ok(Value::string(paste(&args))),
        "warning" => {
            let message = concat_strings(&args);
            session.warn(message);
            Ok(Value::null())
        }
        "stop" => {
            let message = concat_strings(&args);
            Err(RuntimeError::new(message).into())
        }
        "all.equal" => {
            arity("all.equal", &args, 2)?;
            Ok(Value::logical(all_equal(&args[0], &args[1])))
        }
        "length" => {
            arity("length", &args, 1)?;
            let n = match &args[0].payload {
                Payload::Numeric(v) => v.len(),
                Payload::Strings(v) => v.len(),
                Payload::Logical(v) => v.len(),
                Payload::Record(r) => r.len(),
                Payload::Closure(_) | Payload::Builtin(_) => 1,
                Payload::Null => 0,
            };
            Ok(Value::num(n as f64))
        }
        "numeric" => {
            arity("numeric", &args, 1)?;
            let n = args[0].scalar_num()?;
            if n < 0.0 || n.fract() != 0.0 {
                return Err(RuntimeError::new("numeric expects a nonnegative length").into());
            }
            Ok(Value::numeric(vec![0.0; n as usize]))
        }
        "c" => concat(&args).map_err(Flow::from),
        "has_field" => {
            arity("has_field", &args, 2)?;
            let field = args[1]
                .scalar_string()
                .map_err(|_| RuntimeError::new("has_field expects a field name string"))?;
            let has = matches!(&args[0].payload, Payload::Record(r) if r.contains_key(field));
            Ok(Value::logical(has))
        }
        "quantile" => {
            arity("quantile", &args, 2)?;
            let v = args[0].as_numeric()?;
            let p = args[1].scalar_num()?;
            Ok(Value::num(quantile_type7(v, p)?))
        }
        "load_table" => {
            arity("load_table", &args, 1)?;
            let path = args[0]
                .scalar_string()
                .map_err(|_| RuntimeError::new("load_table expects a file path string"))?;
            Ok(load_table_file(path)?)
        }
        "make_fixtures" => {
            arity("make_fixtures", &args, 0)?;
            Ok(make_fixtures())
        }
        "return" => {
            arity("return", &args, 1)?;
            Err(Flow::Return(args.into_iter().next().unwrap()))
        }
        "tick" => {
            session.tick += 1;
            Ok(Value::num(session.tick as f64))
        }
        "lm.fit" => Err(RuntimeError::new(
            "model fitting is not supported; 'lm.fit' exists only as a function-classed value",
        )
        .into()),
        ".bundled_iris" => {
            arity(".bundled_iris", &args, 0)?;
            Ok(bundled_iris())
        }
        ".make_summary" => {
            arity(".make_summary", &args, 1)?;
            Ok(summarize_data_frame(&args[0])?)
        }
        ".print_default" => {
            arity(".print_default", &args, 1)?;
            let text = format_value(&args[0]);
            session.write_output(&text);
            session.write_output("\n");
            Ok(args.into_iter().next().unwrap())
        }
        ".print_summary" => {
            arity(".print_summary", &args, 1)?;
            let text = render_summary_table(&args[0])?;
            session.write_output(&text);
            session.write_output("\n");
            Ok(args.into_iter().next().unwrap())
        }
        other => Err(RuntimeError::new(format!("unknown builtin '{other}'")).into()),
    }
}

/// `UseMethod("g")`: resolve against the class of the enclosing call's
/// first argument and tail-transfer to the chosen method with the
/// original argument list.
fn use_method(session: &mut Session, env: &Env, args: Vec<Value>) -> EvalResult {
    let generic = args
        .first()
        .and_then(|a| a.scalar_string().ok().map(str::to_string))
        .ok_or_else(|| RuntimeError::new("UseMethod expects a generic name string"))?;
    let frame = session
        .frames
        .last()
        .cloned()
        .ok_or_else(|| RuntimeError::new("UseMethod called from outside a function"))?;
    let receiver = frame
        .arg_values
        .first()
        .ok_or_else(|| RuntimeError::new("argument \"x\" is missing, with no default"))?;
    let classes = receiver.get_class();
    let outcome = resolve_method(&generic, &classes, env);
    let chosen = outcome.chosen.ok_or_else(|| {
        RuntimeError::new(format!(
            "no applicable method for '{generic}' applied to an object of class \"{}\"",
            classes[0]
        ))
    })?;
    let method = env
        .lookup_value(&chosen)
        .expect("resolve_method only chooses visible function bindings");
    let value = match session.apply(
        &method,
        &chosen,
        frame.arg_values.clone(),
        frame.arg_srcs.clone(),
        env,
    ) {
        Ok(v) => v,
        Err(Flow::Return(v)) => v,
        Err(e) => return Err(e),
    };
    // Abandon the rest of the generic's body.
    Err(Flow::Return(value))
}

/// `paste` joins its arguments with single spaces; a multi-element
/// vector argument is element-joined with spaces first.
fn paste(args: &[Value]) -> String {
    args.iter()
        .map(|a| render_elements(a).join(" "))
        .collect::<Vec<_>>()
        .join(" ")
}

fn concat_strings(args: &[Value]) -> String {
    args.iter()
        .map(|a| render_elements(a).join(" "))
        .collect::<Vec<_>>()
        .join("")
}

fn render_elements(v: &Value) -> Vec<String> {
    match &v.payload {
        Payload::Numeric(xs) => xs.iter().map(|x| format_num(*x)).collect(),
        Payload::Strings(xs) => xs.clone(),
        Payload::Logical(xs) => xs
            .iter()
            .map(|b| if *b { "TRUE" } else { "FALSE" }.to_string())
            .collect(),
        Payload::Null => Vec::new(),
        _ => vec![format_value(v)],
    }
}

fn concat(args: &[Value]) -> Result<Value, RuntimeError> {
    let non_null: Vec<&Value> = args.iter().filter(|a| !a.is_null()).collect();
    if non_null.is_empty() {
        return Ok(Value::null());
    }
    let any_string = non_null
        .iter()
        .any(|a| matches!(a.payload, Payload::Strings(_)));
    if any_string {
        let mut out = Vec::new();
        for a in non_null {
            out.extend(render_elements(a));
        }
        return Ok(Value::strings(out));
    }
    let mut out = Vec::new();
    for a in non_null {
        match &a.payload {
            Payload::Numeric(v) => out.extend_from_slice(v),
            Payload::Logical(v) => out.extend(v.iter().map(|b| if *b { 1.0 } else { 0.0 })),
            _ => return Err(RuntimeError::new("c() expects vector arguments")),
        }
    }
    Ok(Value::numeric(out))
}

const NUMERIC_TOLERANCE: f64 = 1.5e-8;

/// Deep structural equality with numeric tolerance; attributes
/// (including class) must match.
fn all_equal(a: &Value, b: &Value) -> bool {
    if a.attrs.len() != b.attrs.len() {
        return false;
    }
    for (k, av) in &a.attrs {
        match b.attrs.get(k) {
            Some(bv) if all_equal(av, bv) => {}
            _ => return false,
        }
    }
    match (&a.payload, &b.payload) {
        (Payload::Numeric(x), Payload::Numeric(y)) => {
            if x.len() != y.len() {
                return false;
            }
            let diff: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum();
            let scale: f64 = x.iter().map(|v| v.abs()).sum();
            if scale == 0.0 {
                diff <= NUMERIC_TOLERANCE
            } else {
                diff / scale <= NUMERIC_TOLERANCE
            }
        }
        (Payload::Strings(x), Payload::Strings(y)) => x == y,
        (Payload::Logical(x), Payload::Logical(y)) => x == y,
        (Payload::Record(x), Payload::Record(y)) => {
            x.len() == y.len()
                && x.iter()
                    .zip(y.iter())
                    .all(|((ka, va), (kb, vb))| ka == kb && all_equal(va, vb))
        }
        (Payload::Null, Payload::Null) => true,
        (Payload::Builtin(x), Payload::Builtin(y)) => x == y,
        (Payload::Closure(x), Payload::Closure(y)) => std::rc::Rc::ptr_eq(x, y),
        _ => false,
    }
}
