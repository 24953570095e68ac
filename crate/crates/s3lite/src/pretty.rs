//! Canonical source rendering. Parsing the output of `pretty` yields a
//! structurally identical tree (positions aside), which the property
//! suite checks by round-tripping generated ASTs.

use crate::ast::{AssignTarget, BinOp, Expr, ExprKind};

const PREC_ASSIGN: u8 = 1;
const PREC_IN: u8 = 2;
const PREC_ADD: u8 = 3;
const PREC_MUL: u8 = 4;
const PREC_RANGE: u8 = 5;
const PREC_UNARY: u8 = 6;
const PREC_POW: u8 = 7;
const PREC_POSTFIX: u8 = 8;
const PREC_ATOM: u8 = 9;

pub fn pretty(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, 0, 0);
    out
}

/// Renders a statement sequence, one per line.
pub fn pretty_program(stmts: &[Expr]) -> String {
    stmts.iter().map(pretty).collect::<Vec<_>>().join("\n")
}

fn op_prec(op: BinOp) -> u8 {
    match op {
        BinOp::In => PREC_IN,
        BinOp::Add | BinOp::Sub => PREC_ADD,
        BinOp::Mul | BinOp::Div => PREC_MUL,
        BinOp::Range => PREC_RANGE,
        BinOp::Pow => PREC_POW,
    }
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Ident(_) | ExprKind::Block(_) => {
            PREC_ATOM
        }
        ExprKind::Field { .. } | ExprKind::Call { .. } => PREC_POSTFIX,
        ExprKind::Binary { op, .. } => op_prec(*op),
        ExprKind::Negate(_) => PREC_UNARY,
        ExprKind::Assign { .. } | ExprKind::Replacement { .. } => PREC_ASSIGN,
        // Control forms swallow everything to their right; parenthesize
        // them whenever they appear as an operand.
        ExprKind::If { .. } | ExprKind::Function { .. } => PREC_ASSIGN,
    }
}

/// True when `e` ends in an `if` without an `else`, in a tail position
/// that a following `else` token would attach to.
fn open_if_tail(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::If {
            else_branch: None, ..
        } => true,
        ExprKind::If {
            else_branch: Some(b),
            ..
        } => open_if_tail(b),
        ExprKind::Assign { value, .. } | ExprKind::Replacement { value, .. } => open_if_tail(value),
        ExprKind::Function { body, .. } => open_if_tail(body),
        _ => false,
    }
}

fn write_operand(out: &mut String, e: &Expr, min_prec: u8, indent: usize) {
    if prec(e) < min_prec {
        out.push('(');
        write_expr(out, e, 0, indent);
        out.push(')');
    } else {
        write_expr(out, e, 0, indent);
    }
}

fn write_target(out: &mut String, t: &AssignTarget) {
    match t {
        AssignTarget::Ident(n) => out.push_str(n),
        AssignTarget::Field(inner, name) => {
            write_target(out, inner);
            out.push('$');
            out.push_str(name);
        }
    }
}

fn escape_string(s: &str) -> String {
    let mut r = String::with_capacity(s.len() + 2);
    r.push('"');
    for c in s.chars() {
        match c {
            '"' => r.push_str("\\\""),
            '\\' => r.push_str("\\\\"),
            c => r.push(c),
        }
    }
    r.push('"');
    r
}

fn write_expr(out: &mut String, e: &Expr, _min: u8, indent: usize) {
    match &e.kind {
        ExprKind::Number(x) => out.push_str(&format!("{x}")),
        ExprKind::Str(s) => out.push_str(&escape_string(s)),
        ExprKind::Ident(n) => out.push_str(n),
        ExprKind::Assign { target, value } => {
            write_target(out, target);
            out.push_str(" <- ");
            write_operand(out, value, PREC_ASSIGN, indent);
        }
        ExprKind::Replacement {
            func,
            target,
            extra,
            value,
        } => {
            out.push_str(func.name());
            out.push('(');
            out.push_str(target);
            for a in extra {
                out.push_str(", ");
                write_expr(out, a, 0, indent);
            }
            out.push_str(") <- ");
            write_operand(out, value, PREC_ASSIGN, indent);
        }
        ExprKind::Field { object, name } => {
            write_operand(out, object, PREC_POSTFIX, indent);
            out.push('$');
            out.push_str(name);
        }
        ExprKind::Call { callee, args } => {
            write_operand(out, callee, PREC_POSTFIX, indent);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, a, 0, indent);
            }
            out.push(')');
        }
        ExprKind::Function { params, body } => {
            out.push_str("function(");
            out.push_str(&params.join(", "));
            out.push_str(") ");
            write_expr(out, body, 0, indent);
        }
        ExprKind::Block(stmts) => {
            if stmts.is_empty() {
                out.push_str("{ }");
                return;
            }
            out.push_str("{\n");
            let inner = indent + 2;
            for s in stmts {
                out.push_str(&" ".repeat(inner));
                write_expr(out, s, 0, inner);
                out.push('\n');
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        ExprKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            out.push_str("if (");
            write_expr(out, cond, 0, indent);
            out.push_str(") ");
            if else_branch.is_some() && open_if_tail(then_branch) {
                out.push('(');
                write_expr(out, then_branch, 0, indent);
                out.push(')');
            } else {
                write_expr(out, then_branch, 0, indent);
            }
            if let Some(alt) = else_branch {
                out.push_str(" else ");
                write_expr(out, alt, 0, indent);
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let p = op_prec(*op);
            match op {
                // Right-associative: parenthesize an equal-precedence lhs.
                BinOp::Pow => {
                    write_operand(out, lhs, p + 1, indent);
                    out.push_str(" ** ");
                    write_operand(out, rhs, p, indent);
                }
                BinOp::Range => {
                    write_operand(out, lhs, p, indent);
                    out.push(':');
                    write_operand(out, rhs, p + 1, indent);
                }
                _ => {
                    write_operand(out, lhs, p, indent);
                    out.push(' ');
                    out.push_str(op.symbol());
                    out.push(' ');
                    write_operand(out, rhs, p + 1, indent);
                }
            }
        }
        ExprKind::Negate(inner) => {
            out.push('-');
            write_operand(out, inner, PREC_UNARY, indent);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    fn roundtrip(src: &str) {
        let a = parse_source(src).unwrap();
        let printed = pretty_program(&a);
        let b = parse_source(&printed)
            .unwrap_or_else(|e| panic!("reparse of {printed:?} failed: {e:?}"));
        assert_eq!(a, b, "round-trip changed structure for {src:?} -> {printed:?}");
    }

    #[test]
    fn canonical_assignment() {
        let e = &parse_source("x<-1").unwrap()[0];
        assert_eq!(pretty(e), "x <- 1");
    }

    #[test]
    fn right_assoc_power_needs_no_parens() {
        let e = &parse_source("a ** b ** c").unwrap()[0];
        assert_eq!(pretty(e), "a ** b ** c");
    }

    #[test]
    fn precedence_forces_parens() {
        let e = &parse_source("(a + b) * c").unwrap()[0];
        assert_eq!(pretty(e), "(a + b) * c");
    }

    #[test]
    fn roundtrips() {
        for src in [
            "x <- 1",
            "rss <- function(x) UseMethod(\"rss\")",
            "x$y - x$predicted",
            "sum(residuals(x)**2)",
            "class(x) <- \"myclass\"",
            "attr(x, \"note\") <- \"hi\"",
            "if (\"rpart\" %in% class(x)) { 1 } else { 2 }",
            "-2**2",
            "2 ** -2",
            "1:10",
            "f <- function(a, b) {\n a + b\n}",
            "y$f <- 1",
            "if (a) if (b) x else y",
            "{ }",
        ] {
            roundtrip(src);
        }
    }

    #[test]
    fn dangling_else_guard() {
        // if (a) (if (b) x) else y must keep its parens.
        let src = "if (a) (if (b) x) else y";
        let a = parse_source(src).unwrap();
        let printed = pretty_program(&a);
        let b = parse_source(&printed).unwrap();
        assert_eq!(a, b);
    }
}
