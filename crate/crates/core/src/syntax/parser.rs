use std::collections::BTreeSet;
use std::fmt;

use super::lexer::{tokenize, Lexeme, Pos, Token};
use super::{Formula, Open, Program, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Term,
    Open,
    Program,
    Formula,
}

impl std::str::FromStr for Sort {
    type Err = String;

    fn from_str(s: &str) -> Result<Sort, String> {
        match s {
            "term" => Ok(Sort::Term),
            "open" => Ok(Sort::Open),
            "program" => Ok(Sort::Program),
            "formula" => Ok(Sort::Formula),
            other => Err(format!("unknown sort `{other}` (term|open|program|formula)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Term(Term),
    Open(Open),
    Program(Program),
    Formula(Formula),
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Term(t) => t.fmt(f),
            Tree::Open(g) => g.fmt(f),
            Tree::Program(k) => k.fmt(f),
            Tree::Formula(a) => a.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {pos}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
}

pub fn parse(sort: Sort, text: &str) -> Result<Tree, SyntaxError> {
    Ok(match sort {
        Sort::Term => Tree::Term(parse_term(text)?),
        Sort::Open => Tree::Open(parse_open(text)?),
        Sort::Program => Tree::Program(parse_program(text)?),
        Sort::Formula => Tree::Formula(parse_formula(text)?),
    })
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    Parser::run(text, Parser::term)
}

pub fn parse_open(text: &str) -> Result<Open, SyntaxError> {
    Parser::run(text, Parser::open)
}

pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    Parser::run(text, Parser::program)
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    Parser::run(text, Parser::formula)
}

/// Marker for a failed alternative; details live in `Parser::furthest`.
struct Fail;

type PResult<T> = Result<T, Fail>;

struct Parser {
    toks: Vec<Lexeme>,
    at: usize,
    furthest: usize,
    expected: BTreeSet<String>,
}

impl Parser {
    fn run<T>(text: &str, rule: fn(&mut Parser) -> PResult<T>) -> Result<T, SyntaxError> {
        let toks = tokenize(text).map_err(|e| SyntaxError {
            pos: e.pos,
            found: format!("character `{}`", e.found),
            expected: vec!["a token".into()],
        })?;
        let mut p = Parser {
            toks,
            at: 0,
            furthest: 0,
            expected: BTreeSet::new(),
        };
        let result = rule(&mut p).and_then(|v| {
            p.expect(Token::Eof)?;
            Ok(v)
        });
        result.map_err(|Fail| p.error())
    }

    fn error(&self) -> SyntaxError {
        let lex = &self.toks[self.furthest.min(self.toks.len() - 1)];
        SyntaxError {
            pos: lex.pos,
            found: lex.token.describe(),
            expected: self.expected.iter().cloned().collect(),
        }
    }

    fn peek(&self) -> &Token {
        &self.toks[self.at].token
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].token.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&mut self, what: &str) -> PResult<T> {
        if self.at > self.furthest {
            self.furthest = self.at;
            self.expected.clear();
        }
        if self.at == self.furthest {
            self.expected.insert(what.to_string());
        }
        Err(Fail)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => self.fail("identifier"),
        }
    }

    /// Runs `rule`, rewinding the cursor if it fails.
    fn attempt<T>(&mut self, rule: impl FnOnce(&mut Parser) -> PResult<T>) -> Option<T> {
        let mark = self.at;
        match rule(self) {
            Ok(v) => Some(v),
            Err(Fail) => {
                self.at = mark;
                None
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Token::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Token::Succ | Token::Pred => {
                let succ = self.bump() == Token::Succ;
                self.expect(Token::LParen)?;
                let t = self.term()?;
                self.expect(Token::RParen)?;
                Ok(if succ { Term::succ(t) } else { Term::pred(t) })
            }
            Token::LParen => {
                self.bump();
                let l = self.term()?;
                let op = match self.peek() {
                    Token::Plus | Token::Star | Token::Monus => self.bump(),
                    _ => return self.fail("`+`, `*` or `-.`"),
                };
                let r = self.term()?;
                self.expect(Token::RParen)?;
                Ok(match op {
                    Token::Plus => Term::add(l, r),
                    Token::Star => Term::mul(l, r),
                    _ => Term::monus(l, r),
                })
            }
            _ => self.fail("term"),
        }
    }

    /// `( term (=|<) term )`
    fn relation(&mut self) -> PResult<Open> {
        self.expect(Token::LParen)?;
        let l = self.term()?;
        let less = match self.peek() {
            Token::Eq => false,
            Token::Less => true,
            _ => return self.fail("`=` or `<`"),
        };
        self.bump();
        let r = self.term()?;
        self.expect(Token::RParen)?;
        Ok(if less { Open::less(l, r) } else { Open::eq(l, r) })
    }

    fn open(&mut self) -> PResult<Open> {
        match self.peek().clone() {
            Token::True => {
                self.bump();
                Ok(Open::True)
            }
            Token::False => {
                self.bump();
                Ok(Open::False)
            }
            Token::Bang => {
                self.bump();
                Ok(Open::not(self.open()?))
            }
            Token::Question => {
                self.bump();
                Ok(Open::BoolVar(self.ident()?))
            }
            Token::LParen => {
                if let Some(rel) = self.attempt(Parser::relation) {
                    return Ok(rel);
                }
                self.bump();
                let l = self.open()?;
                let op = match self.peek() {
                    Token::Amp | Token::Pipe | Token::Arrow => self.bump(),
                    _ => return self.fail("`&`, `|` or `->`"),
                };
                let r = self.open()?;
                self.expect(Token::RParen)?;
                Ok(match op {
                    Token::Amp => Open::and(l, r),
                    Token::Pipe => Open::or(l, r),
                    _ => Open::implies(l, r),
                })
            }
            _ => self.fail("open formula"),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        match self.peek().clone() {
            Token::Ident(x) => {
                self.bump();
                self.expect(Token::Assign)?;
                Ok(Program::Assign(x, self.term()?))
            }
            Token::Question => {
                self.bump();
                let q = self.ident()?;
                self.expect(Token::Assign)?;
                Ok(Program::BoolAssign(q, self.open()?))
            }
            Token::Skip => {
                self.bump();
                Ok(Program::Skip)
            }
            Token::LBrace => {
                self.bump();
                let mut parts = vec![self.program()?];
                while self.eat(&Token::Semi) {
                    parts.push(self.program()?);
                }
                self.expect(Token::RBrace)?;
                Ok(Program::seq_all(parts))
            }
            Token::If => {
                self.bump();
                let g = self.open()?;
                self.expect(Token::Then)?;
                let k = self.program()?;
                let m = if self.eat(&Token::Else) {
                    self.program()?
                } else {
                    Program::Skip
                };
                self.expect(Token::Fi)?;
                Ok(Program::if_then_else(g, k, m))
            }
            Token::While => {
                self.bump();
                let g = self.open()?;
                self.expect(Token::Do)?;
                let k = self.program()?;
                self.expect(Token::Od)?;
                Ok(Program::while_do(g, k))
            }
            _ => self.fail("program"),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Token::LBracket | Token::UnionBracket | Token::InterBracket => {
                let opener = self.bump();
                let k = self.program()?;
                self.expect(Token::RBracket)?;
                let f = self.formula()?;
                Ok(match opener {
                    Token::LBracket => Formula::boxed(k, f),
                    Token::UnionBracket => Formula::iter_union(k, f),
                    _ => Formula::iter_inter(k, f),
                })
            }
            Token::Forall | Token::Exists => {
                let universal = self.bump() == Token::Forall;
                let x = self.ident()?;
                self.expect(Token::Dot)?;
                let f = self.formula()?;
                Ok(if universal {
                    Formula::forall(x, f)
                } else {
                    Formula::exists(x, f)
                })
            }
            Token::Bang => {
                self.bump();
                Ok(Formula::not(self.formula()?))
            }
            Token::True | Token::False | Token::Question => Ok(Formula::Open(self.open()?)),
            Token::LParen => {
                if let Some(rel) = self.attempt(Parser::relation) {
                    return Ok(Formula::Open(rel));
                }
                self.bump();
                let l = self.formula()?;
                let op = match self.peek() {
                    Token::Amp | Token::Pipe | Token::Arrow | Token::DoubleArrow => self.bump(),
                    _ => return self.fail("`&`, `|`, `->` or `<->`"),
                };
                let r = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(match op {
                    Token::Amp => Formula::and(l, r),
                    Token::Pipe => Formula::or(l, r),
                    Token::Arrow => Formula::implies(l, r),
                    _ => Formula::iff(l, r),
                })
            }
            _ => self.fail("formula"),
        }
    }
}
