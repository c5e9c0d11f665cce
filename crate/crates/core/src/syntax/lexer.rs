use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Zero,
    LParen,
    RParen,
    LBracket,
    UnionBracket,
    InterBracket,
    RBracket,
    LBrace,
    RBrace,
    Plus,
    Star,
    Monus,
    Eq,
    Less,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Question,
    Assign,
    Semi,
    Dot,
    Succ,
    Pred,
    True,
    False,
    Skip,
    If,
    Then,
    Else,
    Fi,
    While,
    Do,
    Od,
    Forall,
    Exists,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        let s = match self {
            Token::Ident(name) => return format!("identifier `{name}`"),
            Token::Zero => "0",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::LBracket => "[",
            Token::UnionBracket => "U[",
            Token::InterBracket => "I[",
            Token::RBracket => "]",
            Token::LBrace => "{",
            Token::RBrace => "}",
            Token::Plus => "+",
            Token::Star => "*",
            Token::Monus => "-.",
            Token::Eq => "=",
            Token::Less => "<",
            Token::Bang => "!",
            Token::Amp => "&",
            Token::Pipe => "|",
            Token::Arrow => "->",
            Token::DoubleArrow => "<->",
            Token::Question => "?",
            Token::Assign => ":=",
            Token::Semi => ";",
            Token::Dot => ".",
            Token::Succ => "s",
            Token::Pred => "P",
            Token::True => "true",
            Token::False => "false",
            Token::Skip => "skip",
            Token::If => "if",
            Token::Then => "then",
            Token::Else => "else",
            Token::Fi => "fi",
            Token::While => "while",
            Token::Do => "do",
            Token::Od => "od",
            Token::Forall => "forall",
            Token::Exists => "exists",
            Token::Eof => "end of input",
        };
        format!("`{s}`")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexeme {
    pub token: Token,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub found: char,
}

pub fn tokenize(text: &str) -> Result<Vec<Lexeme>, LexError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let peek2 = chars.get(i + 2).copied();
        let (token, width) = match c {
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '[' => (Token::LBracket, 1),
            ']' => (Token::RBracket, 1),
            '{' => (Token::LBrace, 1),
            '}' => (Token::RBrace, 1),
            '+' => (Token::Plus, 1),
            '*' => (Token::Star, 1),
            '=' => (Token::Eq, 1),
            '!' => (Token::Bang, 1),
            '&' => (Token::Amp, 1),
            '|' => (Token::Pipe, 1),
            '?' => (Token::Question, 1),
            ';' => (Token::Semi, 1),
            '.' => (Token::Dot, 1),
            '0' if !peek.is_some_and(|p| p.is_ascii_alphanumeric()) => (Token::Zero, 1),
            '-' if peek == Some('.') => (Token::Monus, 2),
            '-' if peek == Some('>') => (Token::Arrow, 2),
            '<' if peek == Some('-') && peek2 == Some('>') => (Token::DoubleArrow, 3),
            '<' => (Token::Less, 1),
            ':' if peek == Some('=') => (Token::Assign, 2),
            'U' if peek == Some('[') => (Token::UnionBracket, 2),
            'I' if peek == Some('[') => (Token::InterBracket, 2),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                while j < chars.len() && chars[j] == '\'' {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let token = keyword(&word).unwrap_or(Token::Ident(word));
                (token, j - start)
            }
            other => return Err(LexError { pos, found: other }),
        };
        out.push(Lexeme { token, pos });
        i += width;
        col += width;
    }
    out.push(Lexeme {
        token: Token::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

fn keyword(word: &str) -> Option<Token> {
    Some(match word {
        "s" => Token::Succ,
        "P" => Token::Pred,
        "true" => Token::True,
        "false" => Token::False,
        "skip" => Token::Skip,
        "if" => Token::If,
        "then" => Token::Then,
        "else" => Token::Else,
        "fi" => Token::Fi,
        "while" => Token::While,
        "do" => Token::Do,
        "od" => Token::Od,
        "forall" => Token::Forall,
        "exists" => Token::Exists,
        _ => return None,
    })
}
