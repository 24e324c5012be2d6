//! The `P(k,l;U;L;B)` literal format.

use std::str::FromStr;

use thiserror::Error;

use super::{Color, ColoredPartition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed partition literal {literal:?}: {reason}")]
pub struct ParsePartitionError {
    pub literal: String,
    pub reason: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => Err(format!("expected {c:?} at offset {}, found {x:?}", self.pos)),
            None => Err(format!("expected {c:?} at end of input")),
        }
    }

    fn number(&mut self) -> Result<usize, String> {
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| format!("expected a number at offset {start}"))
    }

    fn colors(&mut self) -> Result<Vec<Color>, String> {
        let mut out = Vec::new();
        while let Some(c) = self.peek().and_then(Color::from_letter) {
            out.push(c);
            self.pos += 1;
        }
        Ok(out)
    }

    fn blocks(&mut self) -> Result<Vec<Vec<usize>>, String> {
        self.expect('{')?;
        let mut blocks = Vec::new();
        if self.peek() == Some('}') {
            self.pos += 1;
            return Ok(blocks);
        }
        loop {
            self.expect('{')?;
            let mut block = Vec::new();
            loop {
                let i = self.number()?;
                if i == 0 {
                    return Err("points are numbered from 1".into());
                }
                block.push(i - 1);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some('}') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(format!("expected ',' or '}}' at offset {}", self.pos)),
                }
            }
            blocks.push(block);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    return Ok(blocks);
                }
                _ => return Err(format!("expected ',' or '}}' at offset {}", self.pos)),
            }
        }
    }
}

fn parse(src: &str) -> Result<ColoredPartition, String> {
    let mut cur = Cursor { src, pos: 0 };
    cur.expect('P')?;
    cur.expect('(')?;
    let k = cur.number()?;
    cur.expect(',')?;
    let l = cur.number()?;
    cur.expect(';')?;
    let upper = cur.colors()?;
    cur.expect(';')?;
    let lower = cur.colors()?;
    cur.expect(';')?;
    let blocks = cur.blocks()?;
    cur.expect(')')?;
    if cur.pos != src.len() {
        return Err(format!("trailing input at offset {}", cur.pos));
    }
    if upper.len() != k || lower.len() != l {
        return Err(format!(
            "color strings have lengths {} and {}, expected {k} and {l}",
            upper.len(),
            lower.len()
        ));
    }
    ColoredPartition::new(upper, lower, blocks).map_err(|e| match e {
        PartitionError::InvalidBlocks(msg) => msg,
        other => other.to_string(),
    })
}

impl FromStr for ColoredPartition {
    type Err = ParsePartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s).map_err(|reason| ParsePartitionError {
            literal: s.to_string(),
            reason,
        })
    }
}
