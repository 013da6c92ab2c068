//! Action-spec file format.
//!
//! ```text
//! # comment
//! goal "Safe from fire"
//! action "Kill Cow" { pre: ["Has sword", "Is close to cow"]; post: "Has food"; impl: scripted }
//! ```
//!
//! Goals and actions keep declaration order. `pre` defaults to `[]` and
//! `impl` to `scripted`; `post` is required.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::CompileError;
use crate::bt::ImplKind;
use crate::names::normalize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub name: String,
    pub preconditions: Vec<String>,
    pub postcondition: String,
    #[serde(rename = "impl", default)]
    pub impl_kind: ImplKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub goals: Vec<String>,
    pub actions: Vec<ActionSpec>,
}

impl SpecFile {
    pub fn action(&self, name: &str) -> Option<&ActionSpec> {
        find_action(&self.actions, name)
    }
}

pub fn find_action<'a>(actions: &'a [ActionSpec], name: &str) -> Option<&'a ActionSpec> {
    let key = normalize(name);
    actions.iter().find(|a| normalize(&a.name) == key)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Punct(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Punct(c) => format!("`{c}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, CompileError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let mut chars = line.char_indices().peekable();
        while let Some(&(_, c)) = chars.peek() {
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    chars.next();
                }
                '{' | '}' | '[' | ']' | ':' | ';' | ',' => {
                    out.push((lineno, Tok::Punct(c)));
                    chars.next();
                }
                '"' => {
                    chars.next();
                    let mut s = String::new();
                    let mut closed = false;
                    while let Some((_, c)) = chars.next() {
                        match c {
                            '"' => {
                                closed = true;
                                break;
                            }
                            '\\' => match chars.next() {
                                Some((_, e)) => s.push(e),
                                None => break,
                            },
                            c => s.push(c),
                        }
                    }
                    if !closed {
                        return Err(CompileError::Syntax {
                            line: lineno,
                            expected: "closing `\"`".into(),
                            found: "end of line".into(),
                        });
                    }
                    out.push((lineno, Tok::Str(s)));
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let mut w = String::new();
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_alphanumeric() || c == '_' {
                            w.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((lineno, Tok::Word(w)));
                }
                other => {
                    return Err(CompileError::Syntax {
                        line: lineno,
                        expected: "a keyword, string or punctuation".into(),
                        found: format!("`{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    last_line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map(|(l, _)| *l).unwrap_or(self.last_line)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> CompileError {
        CompileError::Syntax {
            line: self.line(),
            expected: expected.into(),
            found: self.peek().map(Tok::describe).unwrap_or_else(|| "end of input".into()),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), CompileError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn string(&mut self, what: &str) -> Result<String, CompileError> {
        match self.peek() {
            Some(Tok::Str(_)) => match self.next() {
                Some(Tok::Str(s)) => Ok(s.trim().to_string()),
                _ => unreachable!(),
            },
            _ => Err(self.error(what)),
        }
    }

    fn word(&mut self, what: &str) -> Result<String, CompileError> {
        match self.peek() {
            Some(Tok::Word(_)) => match self.next() {
                Some(Tok::Word(w)) => Ok(w),
                _ => unreachable!(),
            },
            _ => Err(self.error(what)),
        }
    }

    fn string_list(&mut self) -> Result<Vec<String>, CompileError> {
        self.punct('[')?;
        let mut items = Vec::new();
        if self.peek() == Some(&Tok::Punct(']')) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.string("a condition string")?);
            match self.peek() {
                Some(Tok::Punct(',')) => self.pos += 1,
                Some(Tok::Punct(']')) => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return Err(self.error("`,` or `]`")),
            }
        }
    }

    fn action_body(&mut self, name: String, line: usize) -> Result<ActionSpec, CompileError> {
        self.punct('{')?;
        let mut pre = None;
        let mut post = None;
        let mut kind = None;
        loop {
            if self.peek() == Some(&Tok::Punct('}')) {
                self.pos += 1;
                break;
            }
            let field_line = self.line();
            let field = self.word("`pre`, `post`, `impl` or `}`")?;
            self.punct(':')?;
            let dup = match field.as_str() {
                "pre" => pre.replace(self.string_list()?).is_some(),
                "post" => post.replace(self.string("a postcondition string")?).is_some(),
                "impl" => {
                    let k = match self.word("`scripted` or `learned`")?.as_str() {
                        "scripted" => ImplKind::Scripted,
                        "learned" => ImplKind::Learned,
                        other => {
                            return Err(CompileError::Syntax {
                                line: field_line,
                                expected: "`scripted` or `learned`".into(),
                                found: format!("`{other}`"),
                            })
                        }
                    };
                    kind.replace(k).is_some()
                }
                other => {
                    return Err(CompileError::Syntax {
                        line: field_line,
                        expected: "`pre`, `post` or `impl`".into(),
                        found: format!("`{other}`"),
                    })
                }
            };
            if dup {
                return Err(CompileError::Syntax {
                    line: field_line,
                    expected: "each field at most once".into(),
                    found: format!("repeated `{field}`"),
                });
            }
            match self.peek() {
                Some(Tok::Punct(';')) => self.pos += 1,
                Some(Tok::Punct('}')) => {}
                _ => return Err(self.error("`;` or `}`")),
            }
        }
        let postcondition = match post {
            Some(p) if !p.is_empty() => p,
            _ => {
                return Err(CompileError::Syntax {
                    line,
                    expected: "a non-empty `post` field".into(),
                    found: format!("action \"{name}\" without one"),
                })
            }
        };
        Ok(ActionSpec {
            name,
            preconditions: pre.unwrap_or_default(),
            postcondition,
            impl_kind: kind.unwrap_or_default(),
        })
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile, CompileError> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let mut p = Parser { toks, pos: 0, last_line };
    let mut goals = Vec::new();
    let mut actions: Vec<ActionSpec> = Vec::new();
    let mut names = HashSet::new();
    while p.peek().is_some() {
        let line = p.line();
        match p.word("`goal` or `action`")?.as_str() {
            "goal" => {
                let g = p.string("a goal condition string")?;
                if g.is_empty() {
                    return Err(CompileError::Syntax {
                        line,
                        expected: "a non-empty goal".into(),
                        found: "\"\"".into(),
                    });
                }
                goals.push(g);
            }
            "action" => {
                let name = p.string("an action name string")?;
                if !names.insert(normalize(&name)) {
                    return Err(CompileError::DuplicateAction { name, line });
                }
                actions.push(p.action_body(name, line)?);
            }
            other => {
                return Err(CompileError::Syntax {
                    line,
                    expected: "`goal` or `action`".into(),
                    found: format!("`{other}`"),
                })
            }
        }
    }
    if goals.is_empty() {
        return Err(CompileError::EmptyGoalList);
    }
    Ok(SpecFile { goals, actions })
}
