//! Line-oriented text formats.
//!
//! ```text
//! word     := "1" | letter { letter }         letter := ("x"|"y") int [ "^" sint ]
//! vector   := sint { ("," | " ") sint }       optionally wrapped in () or []
//! matrix   := row { "/" row }                 row := sint { " " sint }
//! element  := { letter | "t[" vector "]" } | "1"
//!
//! group file            hom file (type I)        hom file (type II)
//!   group                 type I                   type II
//!   n 2                   phi x1 -> x1 x2          v -> x2
//!   m 2                   phi x2 -> x2             r: 1 0
//!   A1: 1 1 / 0 1         Q: 1 0 / 0 1             s: 2 -1
//!   A2: 1 0 / 0 1         P: 0 0 / 0 0             Q: 1 0 / 0 0
//!                                                  P: 3 1 / 0 5
//! assignment file
//!   t1 -> x2 t[1,0]
//!   x1 -> x2^2 t[3,1]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Errors carry 1-based
//! line and column numbers.

use num_bigint::BigInt;

use crate::error::{FabfError, Result};
use crate::group::{Element, Group, GroupData};
use crate::hom::{Assignment, Hom, TypeIHom, TypeIIHom};
use crate::words::{FreeEndo, Word};
use crate::{IntMat, IntVec, Matrix};

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
}

impl Scanner {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Self { chars: src.chars().collect(), pos: 0, line, offset }
    }

    fn err(&self, message: impl Into<String>) -> FabfError {
        FabfError::parse(self.line, self.offset + self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn signed(&mut self) -> Result<BigInt> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let digits = self.unsigned()?;
        let v: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let d = self.unsigned()?;
        match d.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i),
            _ => {
                self.pos = at;
                Err(self.err("generator index must be a positive integer"))
            }
        }
    }

    /// `x<i>[^k]`, with the prefix already checked.
    fn letter(&mut self) -> Result<Word> {
        self.pos += 1;
        let i = self.index()?;
        let e = if self.eat('^') {
            let at = self.pos;
            let e = self.signed()?;
            i64::try_from(e).map_err(|_| {
                self.pos = at;
                self.err("exponent too large")
            })?
        } else {
            1
        };
        Ok(Word::generator(i).pow(e))
    }

    fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        if self.eat('1') {
            if !self.at_end() {
                return Err(self.err("unexpected input after identity"));
            }
            return Ok(Word::identity());
        }
        let mut w = Word::identity();
        let mut any = false;
        while !self.at_end() {
            match self.peek() {
                Some('x' | 'y') => {
                    w = w.mul(&self.letter()?);
                    any = true;
                }
                _ => return Err(self.err("expected a letter x<i>")),
            }
        }
        if !any {
            return Err(self.err("empty word"));
        }
        Ok(w)
    }

    fn vector(&mut self) -> Result<IntVec> {
        self.skip_ws();
        let close = if self.eat('(') {
            Some(')')
        } else if self.eat('[') {
            Some(']')
        } else {
            None
        };
        let mut v = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if Some(c) == close => {
                    self.pos += 1;
                    break;
                }
                None if close.is_none() => break,
                None => return Err(self.err(format!("expected '{}'", close.unwrap_or(')')))),
                Some(',') if !v.is_empty() => {
                    self.pos += 1;
                }
                _ => v.push(self.signed()?),
            }
        }
        if v.is_empty() {
            return Err(self.err("empty vector"));
        }
        Ok(v)
    }
}

fn finish(sc: &mut Scanner) -> Result<()> {
    if sc.at_end() {
        Ok(())
    } else {
        Err(sc.err("unexpected trailing input"))
    }
}

pub fn parse_word(s: &str) -> Result<Word> {
    let mut sc = Scanner::new(s, 1, 0);
    sc.word()
}

pub fn parse_vector(s: &str) -> Result<IntVec> {
    let mut sc = Scanner::new(s, 1, 0);
    let v = sc.vector()?;
    finish(&mut sc)?;
    Ok(v)
}

fn matrix_at(s: &str, line: usize, offset: usize) -> Result<IntMat> {
    let mut rows: Vec<IntVec> = Vec::new();
    let mut col = offset;
    for part in s.split('/') {
        let mut sc = Scanner::new(part, line, col);
        let mut row = Vec::new();
        while !sc.at_end() {
            if sc.eat(',') {
                continue;
            }
            row.push(sc.signed()?);
        }
        if row.is_empty() {
            return Err(FabfError::parse(line, col + 1, "empty matrix row"));
        }
        if rows.first().is_some_and(|r| r.len() != row.len()) {
            return Err(FabfError::parse(line, col + 1, "rows of different lengths"));
        }
        rows.push(row);
        col += part.chars().count() + 1;
    }
    Matrix::from_rows(rows)
}

pub fn parse_matrix(s: &str) -> Result<IntMat> {
    matrix_at(s, 1, 0)
}

/// Reads a matrix file: one line in matrix syntax, or one row per line.
pub fn parse_matrix_file(text: &str) -> Result<IntMat> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    match lines.as_slice() {
        [] => Err(FabfError::parse(1, 1, "empty matrix file")),
        [(no, l)] => matrix_at(l, *no, 0),
        _ => {
            let joined = lines.iter().map(|(_, l)| l.trim()).collect::<Vec<_>>().join(" / ");
            matrix_at(&joined, lines[0].0, 0)
        }
    }
}

pub fn format_vector(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_matrix(m: &IntMat) -> String {
    m.to_string()
}

fn element_at(g: &Group, s: &str, line: usize, offset: usize) -> Result<Element> {
    let mut sc = Scanner::new(s, line, offset);
    let mut acc = Element::identity(g);
    let mut any = false;
    while !sc.at_end() {
        let at = sc.pos;
        let factor = match sc.peek() {
            Some('x') => {
                let w = sc.letter()?;
                if w.max_generator() > g.n() {
                    sc.pos = at;
                    return Err(sc.err(format!("letter beyond rank n = {}", g.n())));
                }
                Element::from_word(g, w)?
            }
            Some('t') => {
                sc.pos += 1;
                if sc.peek() != Some('[') {
                    return Err(sc.err("expected '[' after t"));
                }
                let v = sc.vector()?;
                if v.len() != g.m() {
                    sc.pos = at;
                    return Err(sc.err(format!("abelian part has length {}, expected m = {}", v.len(), g.m())));
                }
                Element::abelian(g, v)?
            }
            Some('1') if !any => {
                sc.pos += 1;
                Element::identity(g)
            }
            _ => return Err(sc.err("expected x<i> or t[...]")),
        };
        acc = acc.mul(&factor)?;
        any = true;
    }
    if !any {
        return Err(sc.err("empty element"));
    }
    Ok(acc)
}

/// Parses any interleaving of letters and `t[...]` atoms into normal form.
pub fn parse_element(g: &Group, s: &str) -> Result<Element> {
    element_at(g, s, 1, 0)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Splits `key<sep>rest`, returning the rest and its column offset.
fn split_key<'a>(line: &'a str, sep: &str) -> Option<(&'a str, &'a str, usize)> {
    let i = line.find(sep)?;
    let off = line[..i + sep.len()].chars().count();
    Some((line[..i].trim(), &line[i + sep.len()..], off))
}

fn parse_usize_field(rest: &str, line: usize, offset: usize) -> Result<usize> {
    let mut sc = Scanner::new(rest, line, offset);
    sc.skip_ws();
    let v = sc.index()?;
    finish(&mut sc)?;
    Ok(v)
}

fn generator_index(key: &str, prefix: char, line: usize, column: usize) -> Result<usize> {
    key.strip_prefix(prefix)
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| FabfError::parse(line, column, format!("expected {prefix}<i>, found '{key}'")))
}

pub fn parse_group(text: &str) -> Result<Group> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, l)) if l.trim() == "group" => {}
        Some((no, _)) => return Err(FabfError::parse(no, 1, "expected header 'group'")),
        None => return Err(FabfError::parse(1, 1, "empty group file")),
    }
    let (mut n, mut m) = (None, None);
    let mut mats: Vec<Option<IntMat>> = Vec::new();
    let mut last_line = 1;
    for (no, l) in lines {
        last_line = no;
        let t = l.trim_start();
        let lead = l.len() - t.len();
        if let Some(rest) = t.strip_prefix("n ") {
            n = Some(parse_usize_field(rest, no, lead + 2)?);
        } else if let Some(rest) = t.strip_prefix("m ") {
            m = Some(parse_usize_field(rest, no, lead + 2)?);
        } else if let Some((key, rest, off)) = split_key(t, ":") {
            let i = generator_index(key, 'A', no, lead + 1)?;
            if mats.len() < i {
                mats.resize(i, None);
            }
            if mats[i - 1].is_some() {
                return Err(FabfError::parse(no, lead + 1, format!("A{i} given twice")));
            }
            mats[i - 1] = Some(matrix_at(rest, no, lead + off)?);
        } else {
            return Err(FabfError::parse(no, lead + 1, "expected 'n', 'm' or 'A<i>:'"));
        }
    }
    let n = n.ok_or_else(|| FabfError::parse(last_line, 1, "missing 'n'"))?;
    let m = m.ok_or_else(|| FabfError::parse(last_line, 1, "missing 'm'"))?;
    if mats.len() != n || mats.iter().any(Option::is_none) {
        return Err(FabfError::InvalidGroup(format!("expected matrices A1..A{n}")));
    }
    let mats: Vec<IntMat> = mats.into_iter().flatten().collect();
    if let Some((i, a)) = mats.iter().enumerate().find(|(_, a)| a.rows() != m || a.cols() != m) {
        return Err(FabfError::Dimension(format!("A{} is {}x{}, expected {m}x{m}", i + 1, a.rows(), a.cols())));
    }
    GroupData::new(mats)
}

pub fn format_group(g: &GroupData) -> String {
    let mut out = format!("group\nn {}\nm {}\n", g.n(), g.m());
    for (i, a) in g.action().iter().enumerate() {
        out.push_str(&format!("A{}: {}\n", i + 1, a));
    }
    out
}

/// Reads a hom file between the given groups. The record is not verified.
pub fn parse_hom(text: &str, source: &Group, target: &Group) -> Result<Hom> {
    let mut lines = content_lines(text);
    let type_ii = match lines.next().map(|(no, l)| (no, l.trim())) {
        Some((_, "type I")) => false,
        Some((_, "type II")) => true,
        Some((no, _)) => return Err(FabfError::parse(no, 1, "expected 'type I' or 'type II'")),
        None => return Err(FabfError::parse(1, 1, "empty hom file")),
    };
    let mut phi: Vec<Option<Word>> = vec![None; source.n()];
    let (mut v, mut r, mut s, mut q, mut p) = (None, None, None, None, None);
    let mut last_line = 1;
    for (no, l) in lines {
        last_line = no;
        let t = l.trim_start();
        let lead = l.len() - t.len();
        if let Some((key, rest, off)) = split_key(t, "->") {
            let mut sc = Scanner::new(rest, no, lead + off);
            let w = sc.word()?;
            if w.max_generator() > target.n() {
                return Err(FabfError::parse(no, lead + off + 1, format!("image leaves F_{}", target.n())));
            }
            if let Some(x) = key.strip_prefix("phi") {
                if type_ii {
                    return Err(FabfError::parse(no, lead + 1, "'phi' lines belong to type I"));
                }
                let i = generator_index(x.trim(), 'x', no, lead + 4)?;
                if i > source.n() {
                    return Err(FabfError::parse(no, lead + 1, format!("x{i} beyond rank n = {}", source.n())));
                }
                phi[i - 1] = Some(w);
            } else if key == "v" && type_ii {
                v = Some(w);
            } else {
                return Err(FabfError::parse(no, lead + 1, format!("unknown key '{key}'")));
            }
        } else if let Some((key, rest, off)) = split_key(t, ":") {
            let col = lead + off;
            match key {
                "Q" => q = Some(matrix_at(rest, no, col)?),
                "P" => p = Some(matrix_at(rest, no, col)?),
                "r" if type_ii => r = Some(Scanner::new(rest, no, col).vector()?),
                "s" if type_ii => s = Some(Scanner::new(rest, no, col).vector()?),
                _ => return Err(FabfError::parse(no, lead + 1, format!("unknown key '{key}'"))),
            }
        } else {
            return Err(FabfError::parse(no, lead + 1, "expected 'key: value' or 'key -> word'"));
        }
    }
    let q = q.ok_or_else(|| FabfError::parse(last_line, 1, "missing 'Q:'"))?;
    let p = p.unwrap_or_else(|| Matrix::zeros(source.n(), target.m()));
    if type_ii {
        let missing = |k: &str| FabfError::parse(last_line, 1, format!("missing '{k}'"));
        let v = v.ok_or_else(|| missing("v ->"))?;
        let r = r.ok_or_else(|| missing("r:"))?;
        let s = s.ok_or_else(|| missing("s:"))?;
        Ok(Hom::TypeII(TypeIIHom::new(source, target, v, r, s, q, p)?))
    } else {
        let images = phi
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| FabfError::parse(last_line, 1, format!("missing 'phi x{} ->'", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let phi = FreeEndo::new(target.n(), images)?;
        Ok(Hom::TypeI(TypeIHom::new(source, target, phi, q, p)?))
    }
}

pub fn format_hom(h: &Hom) -> String {
    match h {
        Hom::TypeI(h) => {
            let mut out = String::from("type I\n");
            for (i, w) in h.phi().images().iter().enumerate() {
                out.push_str(&format!("phi x{} -> {}\n", i + 1, w));
            }
            out.push_str(&format!("Q: {}\nP: {}\n", h.q(), h.p()));
            out
        }
        Hom::TypeII(h) => format!(
            "type II\nv -> {}\nr: {}\ns: {}\nQ: {}\nP: {}\n",
            h.v(),
            format_vector(h.r()),
            format_vector(h.s()),
            h.q(),
            h.p()
        ),
    }
}

/// Reads `t<j> -> element` and `x<i> -> element` lines.
pub fn parse_assignment(text: &str, source: &Group, target: &Group) -> Result<Assignment> {
    let mut t: Vec<Option<Element>> = vec![None; source.m()];
    let mut x: Vec<Option<Element>> = vec![None; source.n()];
    let mut last_line = 1;
    for (no, l) in content_lines(text) {
        last_line = no;
        let tl = l.trim_start();
        let lead = l.len() - tl.len();
        let Some((key, rest, off)) = split_key(tl, "->") else {
            return Err(FabfError::parse(no, lead + 1, "expected 't<j> -> element' or 'x<i> -> element'"));
        };
        let e = element_at(target, rest, no, lead + off)?;
        let (slot, prefix) = if key.starts_with('t') { (&mut t, 't') } else { (&mut x, 'x') };
        let i = generator_index(key, prefix, no, lead + 1)?;
        if i > slot.len() {
            return Err(FabfError::parse(no, lead + 1, format!("{key} is not a generator of the source")));
        }
        slot[i - 1] = Some(e);
    }
    let collect = |v: Vec<Option<Element>>, c: char| {
        v.into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| FabfError::parse(last_line, 1, format!("missing image of {c}{}", i + 1))))
            .collect::<Result<Vec<_>>>()
    };
    Assignment::new(source, target, collect(t, 't')?, collect(x, 'x')?)
}

pub fn format_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    for (j, e) in a.t_images().iter().enumerate() {
        out.push_str(&format!("t{} -> {}\n", j + 1, e));
    }
    for (i, e) in a.x_images().iter().enumerate() {
        out.push_str(&format!("x{} -> {}\n", i + 1, e));
    }
    out
}
