//! The apx fact format: `arg(a).` declares an argument, `att(a,b).` an attack.
//!
//! Whitespace may surround every token and several facts may share a line.
//! Attacks may reference arguments declared later in the file.

use std::fmt::Write as _;

use super::{AfError, ArgumentationFramework};

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if !c.is_whitespace() {
                break;
            }
            if c == '\n' {
                self.line += 1;
            }
            self.chars.next();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.chars.peek().is_none()
    }

    fn err(&self, msg: impl Into<String>) -> AfError {
        AfError::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), AfError> {
        self.skip_ws();
        match self.chars.next() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn word(&mut self) -> Result<String, AfError> {
        self.skip_ws();
        let mut s = String::new();
        match self.chars.peek() {
            Some(&c) if c.is_ascii_alphanumeric() => {}
            Some(&c) => return Err(self.err(format!("expected a name, found `{c}`"))),
            None => return Err(self.err("expected a name, found end of input")),
        }
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        Ok(s)
    }
}

/// Parses an apx document. Duplicate attacks are dropped; duplicate
/// argument declarations and attacks on undeclared arguments are errors.
pub fn parse_apx(text: &str) -> Result<ArgumentationFramework, AfError> {
    let mut lx = Lexer::new(text);
    let mut af = ArgumentationFramework::new();
    let mut attacks: Vec<(usize, String, String)> = Vec::new();
    while !lx.at_end() {
        let line = lx.line;
        let kw = lx.word()?;
        lx.expect('(')?;
        match kw.as_str() {
            "arg" => {
                let name = lx.word()?;
                lx.expect(')')?;
                lx.expect('.')?;
                af.add_argument(name).map_err(|e| match e {
                    AfError::DuplicateArgument { name, .. } => AfError::DuplicateArgument { line: Some(line), name },
                    other => other,
                })?;
            }
            "att" => {
                let a = lx.word()?;
                lx.expect(',')?;
                let b = lx.word()?;
                lx.expect(')')?;
                lx.expect('.')?;
                attacks.push((line, a, b));
            }
            other => {
                return Err(AfError::Parse {
                    line,
                    msg: format!("unknown fact `{other}`"),
                })
            }
        }
    }
    for (line, a, b) in attacks {
        af.add_attack_by_name(&a, &b).map_err(|e| match e {
            AfError::UndeclaredArgument { name, .. } => AfError::UndeclaredArgument { line: Some(line), name },
            other => other,
        })?;
    }
    Ok(af)
}

/// Writes `af` as apx, one fact per line, arguments first.
pub fn write_apx(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for n in af.names() {
        let _ = writeln!(out, "arg({n}).");
    }
    for (a, b) in af.attacks() {
        let _ = writeln!(out, "att({},{}).", af.name(a), af.name(b));
    }
    out
}
