//! Parser for the group-spec language:
//!
//! ```text
//! spec   := 'Z(' INT ')' | 'prod(' spec (',' spec)* ')' | 'sd(' spec ',' spec ';' action ')'
//!         | 'hol(' INT ')' | 'heis3' | 'W4374' | 'mat2(' INT ';' matrix (',' matrix)* ')'
//!         | 'gl2(' INT ')' | 'U(' INT ')'
//! action := (NAME '=' (matrix | images))  separated by ','
//! matrix := '[' row (',' row)* ']'      row := '[' INT (',' INT)* ']'
//! images := '<' tuple (',' tuple)* '>'  tuple := '(' INT (',' INT)* ')'
//! ```

use thiserror::Error;

use crate::fingroup::{Element, GroupHandle};

use super::basic::{cyclic, direct_product, heisenberg3};
use super::matrix::{gl2, matrix_group, units};
use super::semidirect::{holomorph_cyclic, semidirect, ActionSpec, AutSpec};
use super::w::build_w;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("group spec error at position {pos}: {message}")]
pub struct SpecError {
    pub pos: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn token_at(src: &str, pos: usize) -> String {
    let rest = &src[pos..];
    if rest.is_empty() {
        return "end of input".into();
    }
    let word: String = rest
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .collect();
    if word.is_empty() {
        format!("'{}'", rest.chars().next().unwrap())
    } else {
        format!("'{word}'")
    }
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError {
            pos,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, SpecError> {
        self.err(
            self.pos,
            format!(
                "expected {expected}, found {}",
                token_at(self.src, self.pos)
            ),
        )
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), SpecError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric() && *c != '_')
            .map_or(self.src.len() - start, |(i, _)| i);
        if len == 0 {
            return self.unexpected("a name");
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn int(&mut self) -> Result<i64, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return self.unexpected("an integer");
        }
        self.pos = end;
        self.src[start..end]
            .parse()
            .or_else(|_| self.err(start, "integer out of range"))
    }

    fn modulus(&mut self, min: i64) -> Result<u32, SpecError> {
        self.skip_ws();
        let at = self.pos;
        let n = self.int()?;
        if n < min || n > u32::MAX as i64 {
            return self.err(at, format!("modulus must be at least {min}, found {n}"));
        }
        Ok(n as u32)
    }

    fn int_list(&mut self, open: char, close: char) -> Result<Vec<i64>, SpecError> {
        self.expect(open)?;
        let mut out = vec![self.int()?];
        while self.eat(',') {
            out.push(self.int()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, SpecError> {
        self.expect('[')?;
        let mut rows = vec![self.int_list('[', ']')?];
        while self.eat(',') {
            rows.push(self.int_list('[', ']')?);
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn images(&mut self) -> Result<Vec<Element>, SpecError> {
        self.expect('<')?;
        let mut out = Vec::new();
        loop {
            let at = self.pos;
            let v = self.int_list('(', ')')?;
            if v.iter().any(|&x| x < 0 || x > u32::MAX as i64) {
                return self.err(at, "image entries must be nonnegative residues");
            }
            out.push(Element(v.into_iter().map(|x| x as u32).collect()));
            if !self.eat(',') {
                break;
            }
        }
        self.expect('>')?;
        Ok(out)
    }

    fn action(&mut self) -> Result<ActionSpec, SpecError> {
        let mut entries = Vec::new();
        if self.peek() == Some(')') {
            return Ok(ActionSpec { entries });
        }
        loop {
            let (_, name) = self.ident()?;
            self.expect('=')?;
            let spec = match self.peek() {
                Some('[') => AutSpec::Matrix(self.matrix()?),
                Some('<') => AutSpec::Images(self.images()?),
                _ => return self.unexpected("a matrix '[[..]]' or images '<(..)>'"),
            };
            entries.push((name.to_string(), spec));
            if !self.eat(',') {
                break;
            }
        }
        Ok(ActionSpec { entries })
    }

    fn spec(&mut self) -> Result<GroupHandle, SpecError> {
        let (start, name) = self.ident()?;
        match name {
            "heis3" => Ok(heisenberg3()),
            "W4374" => Ok(build_w().group().clone()),
            "Z" => {
                self.expect('(')?;
                let n = self.modulus(1)?;
                self.expect(')')?;
                Ok(cyclic(n))
            }
            "hol" | "gl2" | "U" => {
                self.expect('(')?;
                let n = self.modulus(2)?;
                self.expect(')')?;
                Ok(match name {
                    "hol" => holomorph_cyclic(n),
                    "gl2" => gl2(n),
                    _ => units(n),
                })
            }
            "prod" => {
                self.expect('(')?;
                let mut parts = vec![self.spec()?];
                while self.eat(',') {
                    parts.push(self.spec()?);
                }
                self.expect(')')?;
                Ok(direct_product(&parts))
            }
            "sd" => {
                self.expect('(')?;
                let n = self.spec()?;
                self.expect(',')?;
                let k = self.spec()?;
                self.expect(';')?;
                let action = self.action()?;
                self.expect(')')?;
                semidirect(&n, &k, &action)
                    .map(|s| s.group)
                    .or_else(|e| self.err(start, e.to_string()))
            }
            "mat2" => {
                self.expect('(')?;
                let n = self.modulus(2)?;
                self.expect(';')?;
                let mut gens = Vec::new();
                loop {
                    let at = self.pos;
                    let m = self.matrix()?;
                    if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
                        return self.err(at, "mat2 generators must be 2x2");
                    }
                    gens.push(
                        m.iter()
                            .flatten()
                            .map(|&v| v.rem_euclid(n as i64) as u32)
                            .collect::<Vec<u32>>(),
                    );
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                let descriptor = self.src[start..self.pos].to_string();
                matrix_group(n, 2, &gens, descriptor)
                    .map_or_else(|| self.err(start, "mat2 generator is not invertible"), Ok)
            }
            other => self.err(start, format!("unknown group '{other}'")),
        }
    }
}

/// Parses and builds a group from its spec text.
pub fn parse_group_spec(text: &str) -> Result<GroupHandle, SpecError> {
    let mut p = Parser { src: text, pos: 0 };
    let g = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.unexpected("end of input");
    }
    Ok(g)
}
