//! Shared generators for the property suites.

use proptest::prelude::*;

use s3lite::ast::{AssignTarget, BinOp, Expr, ExprKind, ReplFn};
use s3lite::error::Pos;

fn e(kind: ExprKind) -> Expr {
    Expr::new(kind, Pos { line: 1, col: 1 })
}

fn ident_name() -> impl Strategy<Value = String> {
    "[a-z][a-zA-Z0-9._]{0,6}".prop_filter("keyword", |s| {
        s != "if" && s != "else" && s != "function" && !s.ends_with('.') && !s.contains("..")
    })
}

fn string_literal() -> impl Strategy<Value = String> {
    // Printable ASCII; quotes and backslashes exercise the escaping.
    "[ -~]{0,12}".prop_map(|s| s)
}

fn number() -> impl Strategy<Value = f64> {
    prop_oneof![
        (0u32..10_000).prop_map(f64::from),
        (0.0f64..1e9),
        Just(0.0),
        Just(0.5),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        number().prop_map(|x| e(ExprKind::Number(x))),
        string_literal().prop_map(|s| e(ExprKind::Str(s))),
        ident_name().prop_map(|n| e(ExprKind::Ident(n))),
    ]
}

fn assign_target() -> impl Strategy<Value = AssignTarget> {
    (ident_name(), proptest::collection::vec(ident_name(), 0..3)).prop_map(|(root, fields)| {
        fields.into_iter().fold(AssignTarget::Ident(root), |t, f| {
            AssignTarget::Field(Box::new(t), f)
        })
    })
}

fn binop() -> impl Strategy<Value = BinOp> {
    prop_oneof![
        Just(BinOp::Add),
        Just(BinOp::Sub),
        Just(BinOp::Mul),
        Just(BinOp::Div),
        Just(BinOp::Pow),
        Just(BinOp::Range),
        Just(BinOp::In),
    ]
}

/// Arbitrary well-formed expressions. Everything this produces must
/// survive pretty -> parse unchanged.
pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 64, 4, |inner| {
        // Callees are restricted to the shapes the grammar can produce
        // in call position: names and field chains.
        let callee = prop_oneof![
            ident_name().prop_map(|n| e(ExprKind::Ident(n))),
            (ident_name(), ident_name()).prop_map(|(n, f)| {
                e(ExprKind::Field {
                    object: Box::new(e(ExprKind::Ident(n))),
                    name: f,
                })
            }),
        ];
        prop_oneof![
            (binop(), inner.clone(), inner.clone()).prop_map(|(op, lhs, rhs)| {
                e(ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                })
            }),
            inner.clone().prop_map(|x| e(ExprKind::Negate(Box::new(x)))),
            (inner.clone(), ident_name()).prop_map(|(x, f)| {
                e(ExprKind::Field {
                    object: Box::new(x),
                    name: f,
                })
            }),
            (callee, proptest::collection::vec(inner.clone(), 0..3)).prop_map(
                |(callee, args)| {
                    e(ExprKind::Call {
                        callee: Box::new(callee),
                        args,
                    })
                }
            ),
            (assign_target(), inner.clone()).prop_map(|(target, value)| {
                e(ExprKind::Assign {
                    target,
                    value: Box::new(value),
                })
            }),
            (ident_name(), inner.clone()).prop_map(|(target, value)| {
                e(ExprKind::Replacement {
                    func: ReplFn::Class,
                    target,
                    extra: Vec::new(),
                    value: Box::new(value),
                })
            }),
            (ident_name(), string_literal(), inner.clone()).prop_map(
                |(target, name, value)| {
                    e(ExprKind::Replacement {
                        func: ReplFn::Attr,
                        target,
                        extra: vec![e(ExprKind::Str(name))],
                        value: Box::new(value),
                    })
                }
            ),
            (proptest::collection::vec(ident_name(), 0..3), inner.clone()).prop_map(
                |(params, body)| {
                    e(ExprKind::Function {
                        params,
                        body: Box::new(body),
                    })
                }
            ),
            proptest::collection::vec(inner.clone(), 0..3)
                .prop_map(|stmts| e(ExprKind::Block(stmts))),
            (inner.clone(), inner.clone(), proptest::option::of(inner)).prop_map(
                |(cond, then_branch, else_branch)| {
                    e(ExprKind::If {
                        cond: Box::new(cond),
                        then_branch: Box::new(then_branch),
                        else_branch: else_branch.map(Box::new),
                    })
                }
            ),
        ]
    })
}

pub fn program() -> impl Strategy<Value = Vec<Expr>> {
    proptest::collection::vec(expr(), 1..4)
}
