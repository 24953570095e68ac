//! Lexer. `#` starts a comment, dots are legal inside identifiers
//! (`rss.default` is a single token), and both `**` and `^` lex as the
//! power operator. Newlines are significant at the top level but
//! suppressed inside parentheses so calls may span lines.

use crate::error::{LexError, Pos};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Number(f64),
    Str(String),
    Arrow,
    Dollar,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Pow,
    Colon,
    In,
    If,
    Else,
    Function,
    Newline,
    Eof,
}

impl TokenKind {
    /// Short description used in parse error messages.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(n) => format!("identifier '{n}'"),
            TokenKind::Number(x) => format!("number {x}"),
            TokenKind::Str(_) => "string literal".into(),
            TokenKind::Arrow => "'<-'".into(),
            TokenKind::Dollar => "'$'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::LBrace => "'{'".into(),
            TokenKind::RBrace => "'}'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Semi => "';'".into(),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Pow => "'**'".into(),
            TokenKind::Colon => "':'".into(),
            TokenKind::In => "'%in%'".into(),
            TokenKind::If => "'if'".into(),
            TokenKind::Else => "'else'".into(),
            TokenKind::Function => "'function'".into(),
            TokenKind::Newline => "end of line".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: u32,
    col: u32,
    brackets: Vec<char>,
    tokens: Vec<Token>,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer {
        chars: source.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
        brackets: Vec::new(),
        tokens: Vec::new(),
    };
    lx.run()?;
    Ok(lx.tokens)
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '.'
}

fn is_ident_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '.' || c == '_'
}

impl Lexer {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn peek2(&self) -> Option<char> {
        self.chars.get(self.i + 1).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, pos: Pos) {
        self.tokens.push(Token { kind, pos });
    }

    fn err(&self, message: impl Into<String>, pos: Pos) -> LexError {
        LexError {
            message: message.into(),
            pos,
        }
    }

    fn run(&mut self) -> Result<(), LexError> {
        while let Some(c) = self.peek() {
            let pos = self.pos();
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' => {
                    self.bump();
                    // Newlines separate statements except directly inside
                    // parentheses; a `{` nested in a call re-enables them.
                    if self.brackets.last() != Some(&'(') {
                        self.push(TokenKind::Newline, pos);
                    }
                }
                '#' => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                '"' => self.string(pos)?,
                '(' => {
                    self.bump();
                    self.brackets.push('(');
                    self.push(TokenKind::LParen, pos);
                }
                ')' => {
                    self.bump();
                    if self.brackets.last() == Some(&'(') {
                        self.brackets.pop();
                    }
                    self.push(TokenKind::RParen, pos);
                }
                '{' => {
                    self.bump();
                    self.brackets.push('{');
                    self.push(TokenKind::LBrace, pos);
                }
                '}' => {
                    self.bump();
                    if self.brackets.last() == Some(&'{') {
                        self.brackets.pop();
                    }
                    self.push(TokenKind::RBrace, pos);
                }
                ',' => {
                    self.bump();
                    self.push(TokenKind::Comma, pos);
                }
                ';' => {
                    self.bump();
                    self.push(TokenKind::Semi, pos);
                }
                '$' => {
                    self.bump();
                    self.push(TokenKind::Dollar, pos);
                }
                '+' => {
                    self.bump();
                    self.push(TokenKind::Plus, pos);
                }
                '-' => {
                    self.bump();
                    self.push(TokenKind::Minus, pos);
                }
                '*' => {
                    self.bump();
                    if self.peek() == Some('*') {
                        self.bump();
                        self.push(TokenKind::Pow, pos);
                    } else {
                        self.push(TokenKind::Star, pos);
                    }
                }
                '^' => {
                    self.bump();
                    self.push(TokenKind::Pow, pos);
                }
                '/' => {
                    self.bump();
                    self.push(TokenKind::Slash, pos);
                }
                ':' => {
                    self.bump();
                    self.push(TokenKind::Colon, pos);
                }
                '<' => {
                    self.bump();
                    if self.peek() == Some('-') {
                        self.bump();
                        self.push(TokenKind::Arrow, pos);
                    } else {
                        return Err(self.err("illegal character '<'", pos));
                    }
                }
                '%' => self.percent_op(pos)?,
                '.' if self.peek2().is_some_and(|c| c.is_ascii_digit()) => self.number(pos)?,
                c if c.is_ascii_digit() => self.number(pos)?,
                c if is_ident_start(c) => self.ident(pos),
                c => return Err(self.err(format!("illegal character '{c}'"), pos)),
            }
        }
        let pos = self.pos();
        self.push(TokenKind::Eof, pos);
        Ok(())
    }

    fn string(&mut self, start: Pos) -> Result<(), LexError> {
        self.bump(); // opening quote
        let mut text = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err("unterminated string literal", start)),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => text.push('"'),
                    Some('\\') => text.push('\\'),
                    Some(c) => {
                        return Err(self.err(format!("unknown escape '\\{c}' in string"), start))
                    }
                    None => return Err(self.err("unterminated string literal", start)),
                },
                Some(c) => text.push(c),
            }
        }
        self.push(TokenKind::Str(text), start);
        Ok(())
    }

    fn percent_op(&mut self, start: Pos) -> Result<(), LexError> {
        self.bump(); // '%'
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c == '%' {
                self.bump();
                if word == "in" {
                    self.push(TokenKind::In, start);
                    return Ok(());
                }
                return Err(self.err(format!("unknown operator '%{word}%'"), start));
            }
            if c.is_ascii_alphanumeric() {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Err(self.err("unterminated '%' operator", start))
    }

    fn number(&mut self, start: Pos) -> Result<(), LexError> {
        let mut text = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            text.push(self.bump().unwrap());
        }
        if self.peek() == Some('.') {
            text.push(self.bump().unwrap());
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().unwrap());
            }
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            // Only an exponent if followed by digits (with optional sign);
            // otherwise the 'e' belongs to a following identifier.
            let mut j = self.i + 1;
            if matches!(self.chars.get(j), Some('+') | Some('-')) {
                j += 1;
            }
            if self.chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().unwrap());
                if matches!(self.peek(), Some('+') | Some('-')) {
                    text.push(self.bump().unwrap());
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    text.push(self.bump().unwrap());
                }
            }
        }
        let value: f64 = text
            .parse()
            .map_err(|_| self.err(format!("invalid number literal '{text}'"), start))?;
        if !value.is_finite() {
            return Err(self.err(format!("number literal '{text}' is not finite"), start));
        }
        self.push(TokenKind::Number(value), start);
        Ok(())
    }

    fn ident(&mut self, start: Pos) {
        let mut name = String::new();
        while self.peek().is_some_and(is_ident_cont) {
            name.push(self.bump().unwrap());
        }
        let kind = match name.as_str() {
            "if" => TokenKind::If,
            "else" => TokenKind::Else,
            "function" => TokenKind::Function,
            _ => TokenKind::Ident(name),
        };
        self.push(kind, start);
    }
}
