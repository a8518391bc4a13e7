use std::fmt;

use crate::error::{Error, Result};

/// A letter: generator index with exponent ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// Freely reduced word in a free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(gen: usize) -> Self {
        GroupWord {
            letters: vec![Letter { gen, inv: false }],
        }
    }

    /// Freely reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    /// From `(generator, exponent)` syllables.
    pub fn from_powers(syllables: &[(usize, i64)]) -> Self {
        Self::from_letters(syllables.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(
                Letter {
                    gen: g,
                    inv: e < 0,
                },
                e.unsigned_abs() as usize,
            )
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Text form over the given generator names, e.g. `m g m^-1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * if l.inv { -1 } else { 1 };
            let name = &names[l.gen];
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }

    /// Parses words such as `m g (m g m)' g^3 (m g m)^-1 g m g^-2`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos, names, 0)?;
        if pos != chars.len() {
            return Err(word_err(pos, format!("unexpected `{}`", chars[pos])));
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.letters.iter().map(|l| l.gen).max().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        f.write_str(&self.display(&names))
    }
}

fn word_err(pos: usize, msg: String) -> Error {
    Error::Parse {
        line: 1,
        col: pos + 1,
        msg,
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_seq(chars: &[char], pos: &mut usize, names: &[String], depth: usize) -> Result<GroupWord> {
    let mut acc = GroupWord::identity();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() {
            if depth > 0 {
                return Err(word_err(*pos, "expected `)`".into()));
            }
            return Ok(acc);
        }
        let c = chars[*pos];
        let atom = if c == ')' {
            if depth == 0 {
                return Err(word_err(*pos, "unbalanced `)`".into()));
            }
            *pos += 1;
            return Ok(acc);
        } else if c == '(' {
            *pos += 1;
            parse_seq(chars, pos, names, depth + 1)?
        } else if c == '1' {
            *pos += 1;
            GroupWord::identity()
        } else if c.is_alphabetic() || c == '_' {
            let start = *pos;
            while *pos < chars.len() && (chars[*pos].is_alphanumeric() || chars[*pos] == '_') {
                *pos += 1;
            }
            let ident: String = chars[start..*pos].iter().collect();
            let mut run = ident_word(&ident, names)
                .ok_or_else(|| word_err(start, format!("unknown generator `{ident}`")))?;
            // Postfix operators bind to the last letter of a run like `mg^2`.
            let last = run.pop().unwrap();
            acc = acc.mul(&GroupWord::from_letters(run));
            GroupWord::from_letters([last])
        } else {
            return Err(word_err(*pos, format!("unexpected `{c}`")));
        };
        let atom = parse_postfix(chars, pos, atom)?;
        acc = acc.mul(&atom);
    }
}

/// A generator name, or a run of single-character generator names.
fn ident_word(ident: &str, names: &[String]) -> Option<Vec<Letter>> {
    if let Some(gen) = names.iter().position(|n| n == ident) {
        return Some(vec![Letter { gen, inv: false }]);
    }
    ident
        .chars()
        .map(|ch| {
            names
                .iter()
                .position(|n| n.chars().count() == 1 && n.starts_with(ch))
                .map(|gen| Letter { gen, inv: false })
        })
        .collect()
}

fn parse_postfix(chars: &[char], pos: &mut usize, mut atom: GroupWord) -> Result<GroupWord> {
    loop {
        if *pos < chars.len() && chars[*pos] == '\'' {
            *pos += 1;
            atom = atom.inverse();
            continue;
        }
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let start = *pos;
            if *pos < chars.len() && chars[*pos] == '-' {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = chars[start..*pos].iter().collect();
            let e: i64 = s
                .parse()
                .map_err(|_| word_err(start, "expected an integer exponent".into()))?;
            if e.abs() > 1000 {
                return Err(word_err(start, "exponent too large".into()));
            }
            atom = atom.pow(e);
            continue;
        }
        return Ok(atom);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["m".into(), "g".into()]
    }

    #[test]
    fn parse_forms_agree() {
        let a = GroupWord::parse("m g (m g m)' g^3 (m g m)' g m g^-2", &names()).unwrap();
        let b = GroupWord::parse("m g (m g m)^-1 g^3 (m g m)^-1 g m g^-2", &names()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.display(&names()), "m g m^-1 g^-1 m^-1 g^3 m^-1 g^-1 m^-1 g m g^-2");
        let c = GroupWord::parse("mg(mg)'", &names()).unwrap();
        assert_eq!(c.display(&names()), "1");
        let d = GroupWord::parse("mg^2(g m)'", &names()).unwrap();
        assert_eq!(d.display(&names()), "m g^2 m^-1 g^-1");


    }

    #[test]
    fn parse_errors() {
        assert!(GroupWord::parse("m (g", &names()).is_err());
        assert!(GroupWord::parse("m x", &names()).is_err());
        assert!(GroupWord::parse("m)", &names()).is_err());
    }
}
