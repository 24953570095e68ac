//! Abstract syntax tree for the mini-language.

use crate::error::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Range,
    In,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "**",
            BinOp::Range => ":",
            BinOp::In => "%in%",
        }
    }
}

/// The left side of `<-`: a plain name or a `$` field chain rooted at one.
#[derive(Debug, Clone, PartialEq)]
pub enum AssignTarget {
    Ident(String),
    Field(Box<AssignTarget>, String),
}

impl AssignTarget {
    /// Name of the variable the whole chain is rooted at.
    pub fn root(&self) -> &str {
        match self {
            AssignTarget::Ident(n) => n,
            AssignTarget::Field(inner, _) => inner.root(),
        }
    }
}

/// Replacement functions admitted on the left of `<-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplFn {
    Class,
    Attr,
}

impl ReplFn {
    pub fn name(self) -> &'static str {
        match self {
            ReplFn::Class => "class",
            ReplFn::Attr => "attr",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    Str(String),
    Ident(String),
    Assign {
        target: AssignTarget,
        value: Box<Expr>,
    },
    /// `class(x) <- v` or `attr(x, name) <- v`.
    Replacement {
        func: ReplFn,
        target: String,
        extra: Vec<Expr>,
        value: Box<Expr>,
    },
    Field {
        object: Box<Expr>,
        name: String,
    },
    Call {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    Function {
        params: Vec<String>,
        body: Box<Expr>,
    },
    Block(Vec<Expr>),
    If {
        cond: Box<Expr>,
        then_branch: Box<Expr>,
        else_branch: Option<Box<Expr>>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Negate(Box<Expr>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Expr {
        Expr { kind, pos }
    }
}

// Structural equality; positions are not part of the tree's identity.
impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}
