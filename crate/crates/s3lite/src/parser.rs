//! Recursive-descent parser.
//!
//! Precedence, tightest first: `$` and calls, `**` (right-assoc), unary
//! minus, `:`, `*` `/`, `+` `-`, `%in%`, `<-` (right-assoc). Statements
//! are separated by newlines or `;`. `f(x) <- v` is only legal for the
//! replacement functions `class` and `attr`; an `else` must follow the
//! closing brace of its `if` on the same line.

use crate::ast::{AssignTarget, BinOp, Expr, ExprKind, ReplFn};
use crate::error::{ParseError, Pos};
use crate::lexer::{tokenize, Token, TokenKind};

pub fn parse(tokens: Vec<Token>) -> Result<Vec<Expr>, ParseError> {
    let mut p = Parser { tokens, i: 0 };
    p.program()
}

/// Convenience: lex and parse a whole source chunk into statements.
pub fn parse_source(source: &str) -> Result<Vec<Expr>, crate::error::SourceError> {
    let tokens = tokenize(source)?;
    Ok(parse(tokens)?)
}

struct Parser {
    tokens: Vec<Token>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.i.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.i < self.tokens.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn at(&self, kind: &TokenKind) -> bool {
        &self.peek().kind == kind
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        if self.at(&kind) {
            Ok(self.bump())
        } else {
            Err(self.err(format!(
                "expected {}, found {}",
                kind.describe(),
                self.peek().kind.describe()
            )))
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            pos: self.peek().pos,
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline | TokenKind::Semi) {
            self.bump();
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.bump();
        }
    }

    fn program(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut stmts = Vec::new();
        self.skip_separators();
        while !self.at(&TokenKind::Eof) {
            stmts.push(self.expr()?);
            if !self.at(&TokenKind::Eof) {
                if !matches!(self.peek().kind, TokenKind::Newline | TokenKind::Semi) {
                    return Err(self.err(format!(
                        "expected end of statement, found {}",
                        self.peek().kind.describe()
                    )));
                }
                self.skip_separators();
            }
        }
        Ok(stmts)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.assign()
    }

    fn assign(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.in_expr()?;
        if self.at(&TokenKind::Arrow) {
            let pos = lhs.pos;
            self.bump();
            self.skip_newlines();
            let rhs = self.assign()?;
            return self.make_assignment(lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn make_assignment(&self, lhs: Expr, rhs: Expr, pos: Pos) -> Result<Expr, ParseError> {
        match lhs.kind {
            ExprKind::Ident(name) => Ok(Expr::new(
                ExprKind::Assign {
                    target: AssignTarget::Ident(name),
                    value: Box::new(rhs),
                },
                pos,
            )),
            ExprKind::Field { .. } => {
                let target = field_target(&lhs).ok_or_else(|| ParseError {
                    message: "invalid assignment target".into(),
                    pos,
                })?;
                Ok(Expr::new(
                    ExprKind::Assign {
                        target,
                        value: Box::new(rhs),
                    },
                    pos,
                ))
            }
            ExprKind::Call { callee, mut args } => {
                let func = match &callee.kind {
                    ExprKind::Ident(n) if n == "class" => ReplFn::Class,
                    ExprKind::Ident(n) if n == "attr" => ReplFn::Attr,
                    ExprKind::Ident(n) => {
                        return Err(ParseError {
                            message: format!("'{n}' is not a replacement function; only class(x) <- and attr(x, name) <- may appear on the left of '<-'"),
                            pos,
                        })
                    }
                    _ => {
                        return Err(ParseError {
                            message: "invalid assignment target".into(),
                            pos,
                        })
                    }
                };
                let want = match func {
                    ReplFn::Class => 1,
                    ReplFn::Attr => 2,
                };
                if args.len() != want {
                    return Err(ParseError {
                        message: format!(
                            "replacement function '{}' takes {} argument{} on the left of '<-'",
                            func.name(),
                            want,
                            if want == 1 { "" } else { "s" }
                        ),
                        pos,
                    });
                }
                let extra = args.split_off(1);
                let target = match args.into_iter().next().unwrap().kind {
                    ExprKind::Ident(n) => n,
                    _ => {
                        return Err(ParseError {
                            message: format!(
                                "the first argument of '{}(...) <-' must be a variable name",
                                func.name()
                            ),
                            pos,
                        })
                    }
                };
                Ok(Expr::new(
                    ExprKind::Replacement {
                        func,
                        target,
                        extra,
                        value: Box::new(rhs),
                    },
                    pos,
                ))
            }
            _ => Err(ParseError {
                message: "invalid assignment target".into(),
                pos,
            }),
        }
    }

    fn in_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.additive()?;
        while self.at(&TokenKind::In) {
            let pos = self.bump().pos;
            self.skip_newlines();
            let rhs = self.additive()?;
            lhs = binary(BinOp::In, lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            let pos = self.bump().pos;
            self.skip_newlines();
            let rhs = self.multiplicative()?;
            lhs = binary(op, lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.range()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => break,
            };
            let pos = self.bump().pos;
            self.skip_newlines();
            let rhs = self.range()?;
            lhs = binary(op, lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn range(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.at(&TokenKind::Colon) {
            let pos = self.bump().pos;
            self.skip_newlines();
            let rhs = self.unary()?;
            lhs = binary(BinOp::Range, lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.at(&TokenKind::Minus) {
            let pos = self.bump().pos;
            let operand = self.unary()?;
            return Ok(Expr::new(ExprKind::Negate(Box::new(operand)), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.postfix()?;
        if self.at(&TokenKind::Pow) {
            let pos = self.bump().pos;
            self.skip_newlines();
            // Right-associative; the exponent may carry a unary minus.
            let exp = self.unary()?;
            return Ok(binary(BinOp::Pow, base, exp, pos));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        loop {
            if self.at(&TokenKind::LParen) {
                let pos = self.bump().pos;
                let mut args = Vec::new();
                if !self.at(&TokenKind::RParen) {
                    loop {
                        args.push(self.expr()?);
                        if !self.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                }
                self.expect(TokenKind::RParen)?;
                e = Expr::new(
                    ExprKind::Call {
                        callee: Box::new(e),
                        args,
                    },
                    pos,
                );
            } else if self.at(&TokenKind::Dollar) {
                let pos = self.bump().pos;
                let name = match self.bump().kind {
                    TokenKind::Ident(n) => n,
                    other => {
                        return Err(ParseError {
                            message: format!(
                                "expected field name after '$', found {}",
                                other.describe()
                            ),
                            pos,
                        })
                    }
                };
                e = Expr::new(
                    ExprKind::Field {
                        object: Box::new(e),
                        name,
                    },
                    pos,
                );
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.peek().pos;
        match self.peek().kind.clone() {
            TokenKind::Number(x) => {
                self.bump();
                Ok(Expr::new(ExprKind::Number(x), pos))
            }
            TokenKind::Str(s) => {
                self.bump();
                Ok(Expr::new(ExprKind::Str(s), pos))
            }
            TokenKind::Ident(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Ident(n), pos))
            }
            TokenKind::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(e)
            }
            TokenKind::LBrace => self.block(pos),
            TokenKind::If => self.if_expr(pos),
            TokenKind::Function => self.function(pos),
            other => Err(ParseError {
                message: format!("expected expression, found {}", other.describe()),
                pos,
            }),
        }
    }

    fn block(&mut self, pos: Pos) -> Result<Expr, ParseError> {
        self.expect(TokenKind::LBrace)?;
        let mut stmts = Vec::new();
        self.skip_separators();
        while !self.at(&TokenKind::RBrace) {
            if self.at(&TokenKind::Eof) {
                return Err(self.err("expected '}', found end of input"));
            }
            stmts.push(self.expr()?);
            if self.at(&TokenKind::RBrace) {
                break;
            }
            if !matches!(self.peek().kind, TokenKind::Newline | TokenKind::Semi) {
                return Err(self.err(format!(
                    "expected end of statement, found {}",
                    self.peek().kind.describe()
                )));
            }
            self.skip_separators();
        }
        self.expect(TokenKind::RBrace)?;
        Ok(Expr::new(ExprKind::Block(stmts), pos))
    }

    fn if_expr(&mut self, pos: Pos) -> Result<Expr, ParseError> {
        self.expect(TokenKind::If)?;
        self.expect(TokenKind::LParen)?;
        let cond = self.expr()?;
        self.expect(TokenKind::RParen)?;
        self.skip_newlines();
        let then_branch = self.expr()?;
        // The `else` must appear before any statement separator, i.e. on
        // the same line as the closing brace of the then-branch.
        let else_branch = if self.at(&TokenKind::Else) {
            self.bump();
            self.skip_newlines();
            Some(Box::new(self.expr()?))
        } else {
            None
        };
        Ok(Expr::new(
            ExprKind::If {
                cond: Box::new(cond),
                then_branch: Box::new(then_branch),
                else_branch,
            },
            pos,
        ))
    }

    fn function(&mut self, pos: Pos) -> Result<Expr, ParseError> {
        self.expect(TokenKind::Function)?;
        self.expect(TokenKind::LParen)?;
        let mut params = Vec::new();
        if !self.at(&TokenKind::RParen) {
            loop {
                match self.bump().kind {
                    TokenKind::Ident(n) => params.push(n),
                    other => {
                        return Err(ParseError {
                            message: format!("expected parameter name, found {}", other.describe()),
                            pos,
                        })
                    }
                }
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen)?;
        self.skip_newlines();
        let body = self.expr()?;
        Ok(Expr::new(
            ExprKind::Function {
                params,
                body: Box::new(body),
            },
            pos,
        ))
    }
}

fn binary(op: BinOp, lhs: Expr, rhs: Expr, pos: Pos) -> Expr {
    Expr::new(
        ExprKind::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        },
        pos,
    )
}

fn field_target(e: &Expr) -> Option<AssignTarget> {
    match &e.kind {
        ExprKind::Ident(n) => Some(AssignTarget::Ident(n.clone())),
        ExprKind::Field { object, name } => Some(AssignTarget::Field(
            Box::new(field_target(object)?),
            name.clone(),
        )),
        _ => None,
    }
}
