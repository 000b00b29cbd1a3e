//! Binary strings, string properties and propositional formulas.
//!
//! Strings are written most-significant first: the text `"10"` has `s_1 = 1`
//! and `s_2 = 0`. The packed value of a string reads its text as a binary
//! number, so ordering strings by packed value is the same as ordering their
//! text lexicographically.

pub mod bounds;
pub mod game;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_WIDTH: u8 = 16;

/// A fixed-width binary string `s_1 ... s_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: u8,
    bits: u16,
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl BitString {
    pub fn new(width: u8, bits: u16) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::input(format!("string width {width} outside 1..={MAX_WIDTH}")));
        }
        if width < 16 && bits >> width != 0 {
            return Err(Error::input(format!("value {bits} does not fit in {width} bits")));
        }
        Ok(BitString { width, bits })
    }

    pub fn width(self) -> u8 {
        self.width
    }

    /// Packed value; also the row index of this string in a truth table.
    pub fn value(self) -> u16 {
        self.bits
    }

    /// `s_i` for `i` in `1..=width`.
    pub fn get(self, i: u8) -> bool {
        debug_assert!(i >= 1 && i <= self.width);
        (self.bits >> (self.width - i)) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of positions where the two strings differ.
    pub fn hamming(self, other: BitString) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// The string with position `i` (1-based) flipped.
    pub fn flip(self, i: u8) -> BitString {
        BitString { width: self.width, bits: self.bits ^ (1 << (self.width - i)) }
    }

    /// All `2^width` strings in increasing order.
    pub fn all(width: u8) -> Result<impl Iterator<Item = BitString>> {
        BitString::new(width, 0)?;
        Ok((0..(1u32 << width)).map(move |b| BitString { width, bits: b as u16 }))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_WIDTH as usize {
            return Err(Error::input(format!("bad string {s:?}: width must be 1..={MAX_WIDTH}")));
        }
        let mut bits = 0u16;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::input(format!("bad string {s:?}: only 0 and 1 allowed"))),
                };
        }
        BitString::new(s.len() as u8, bits)
    }
}

/// A set of same-width strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PropertyJson", into = "PropertyJson")]
pub struct StringProperty {
    width: u8,
    members: BTreeSet<BitString>,
}

#[derive(Serialize, Deserialize)]
struct PropertyJson {
    width: u8,
    strings: Vec<String>,
}

impl TryFrom<PropertyJson> for StringProperty {
    type Error = Error;

    fn try_from(j: PropertyJson) -> Result<Self> {
        let members = j.strings.iter().map(|s| s.parse()).collect::<Result<Vec<BitString>>>()?;
        StringProperty::new(j.width, members)
    }
}

impl From<StringProperty> for PropertyJson {
    fn from(p: StringProperty) -> Self {
        PropertyJson { width: p.width, strings: p.members.iter().map(|s| s.to_string()).collect() }
    }
}

impl StringProperty {
    pub fn new(width: u8, members: impl IntoIterator<Item = BitString>) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::input(format!("property width {width} outside 1..={MAX_WIDTH}")));
        }
        let members: BTreeSet<BitString> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| s.width() != width) {
            return Err(Error::input(format!("string {bad} does not have width {width}")));
        }
        Ok(StringProperty { width, members })
    }

    pub fn empty(width: u8) -> Result<Self> {
        StringProperty::new(width, [])
    }

    /// Parses a list of string literals; the width is taken from the first.
    pub fn parse_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        let members = strings.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<BitString>>>()?;
        let width = members
            .first()
            .map(|s| s.width())
            .ok_or_else(|| Error::input("cannot infer the width of an empty property"))?;
        StringProperty::new(width, members)
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: BitString) -> bool {
        self.members.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = BitString> + '_ {
        self.members.iter().copied()
    }

    pub fn is_disjoint(&self, other: &StringProperty) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn is_subset(&self, other: &StringProperty) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Membership mask over all `2^width` strings, bit `s.value()` set for members.
    pub fn mask(&self) -> Vec<u64> {
        let mut words = vec![0u64; (1usize << self.width).div_ceil(64)];
        for s in &self.members {
            let v = s.value() as usize;
            words[v / 64] |= 1 << (v % 64);
        }
        words
    }

    pub fn filter(&self, mut keep: impl FnMut(BitString) -> bool) -> StringProperty {
        StringProperty { width: self.width, members: self.members.iter().copied().filter(|s| keep(*s)).collect() }
    }
}

impl fmt::Display for StringProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// `p_var` or `!p_var`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: u8,
    pub positive: bool,
}

impl Literal {
    pub fn eval(self, s: BitString) -> bool {
        s.get(self.var) == self.positive
    }

    pub fn to_formula(self) -> PropFormula {
        let v = PropFormula::Var(self.var);
        if self.positive {
            v
        } else {
            PropFormula::not(v)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "p{}", self.var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    /// `p_i`, 1-based.
    Var(u8),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn var(i: u8) -> Self {
        PropFormula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        PropFormula::Not(Box::new(f))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    /// Left fold of a non-empty list with `&`.
    pub fn and_all(items: impl IntoIterator<Item = PropFormula>) -> Option<Self> {
        items.into_iter().reduce(PropFormula::and)
    }

    /// Left fold of a non-empty list with `|`.
    pub fn or_all(items: impl IntoIterator<Item = PropFormula>) -> Option<Self> {
        items.into_iter().reduce(PropFormula::or)
    }

    /// Number of occurrences of propositional symbols.
    pub fn size(&self) -> usize {
        match self {
            PropFormula::Var(_) => 1,
            PropFormula::Not(f) => f.size(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => a.size() + b.size(),
        }
    }

    pub fn max_var(&self) -> u8 {
        match self {
            PropFormula::Var(i) => *i,
            PropFormula::Not(f) => f.max_var(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    pub fn eval(&self, s: BitString) -> Result<bool> {
        if self.max_var() > s.width() {
            return Err(Error::input(format!(
                "formula mentions p{} but string {s} has width {}",
                self.max_var(),
                s.width()
            )));
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: BitString) -> bool {
        match self {
            PropFormula::Var(i) => s.get(*i),
            PropFormula::Not(f) => !f.eval_unchecked(s),
            PropFormula::And(a, b) => a.eval_unchecked(s) && b.eval_unchecked(s),
            PropFormula::Or(a, b) => a.eval_unchecked(s) || b.eval_unchecked(s),
        }
    }

    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            PropFormula::Var(i) => Some(Literal { var: *i, positive: true }),
            PropFormula::Not(f) => match f.as_ref() {
                PropFormula::Var(i) => Some(Literal { var: *i, positive: false }),
                _ => None,
            },
            _ => None,
        }
    }

    /// True when negations only sit directly on variables.
    pub fn is_nnf(&self) -> bool {
        match self {
            PropFormula::Var(_) => true,
            PropFormula::Not(f) => matches!(f.as_ref(), PropFormula::Var(_)),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => a.is_nnf() && b.is_nnf(),
        }
    }

    /// Pushes negations to the leaves with De Morgan; size is unchanged.
    pub fn to_nnf(&self) -> PropFormula {
        self.nnf_with(false)
    }

    fn nnf_with(&self, negate: bool) -> PropFormula {
        match (self, negate) {
            (PropFormula::Var(i), false) => PropFormula::Var(*i),
            (PropFormula::Var(i), true) => PropFormula::not(PropFormula::Var(*i)),
            (PropFormula::Not(f), n) => f.nnf_with(!n),
            (PropFormula::And(a, b), false) => PropFormula::and(a.nnf_with(false), b.nnf_with(false)),
            (PropFormula::And(a, b), true) => PropFormula::or(a.nnf_with(true), b.nnf_with(true)),
            (PropFormula::Or(a, b), false) => PropFormula::or(a.nnf_with(false), b.nnf_with(false)),
            (PropFormula::Or(a, b), true) => PropFormula::and(a.nnf_with(true), b.nnf_with(true)),
        }
    }

    /// `(S, R) |= f`: true on all of `S`, false on all of `R`.
    pub fn separates(&self, s: &StringProperty, r: &StringProperty) -> Result<bool> {
        if s.width() != r.width() {
            return Err(Error::input(format!("property widths differ: {} vs {}", s.width(), r.width())));
        }
        if self.max_var() > s.width() {
            return Err(Error::input(format!(
                "formula mentions p{} but the properties have width {}",
                self.max_var(),
                s.width()
            )));
        }
        Ok(s.iter().all(|x| self.eval_unchecked(x)) && r.iter().all(|x| !self.eval_unchecked(x)))
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Var(i) => write!(f, "p{i}"),
            PropFormula::Not(g) => write!(f, "!{g}"),
            PropFormula::And(a, b) => write!(f, "({a} & {b})"),
            PropFormula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

impl FromStr for PropFormula {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let f = p.inner()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::input(format!("formula parse error at byte {}: {what}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    // primary [op primary]
    fn inner(&mut self) -> Result<PropFormula> {
        let left = self.primary()?;
        match self.peek() {
            Some(b'&') => {
                self.pos += 1;
                Ok(PropFormula::and(left, self.primary()?))
            }
            Some(b'|') => {
                self.pos += 1;
                Ok(PropFormula::or(left, self.primary()?))
            }
            _ => Ok(left),
        }
    }

    fn primary(&mut self) -> Result<PropFormula> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(PropFormula::not(self.primary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.inner()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'p') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let i: u8 = digits.parse().map_err(|_| self.error("expected a variable index"))?;
                if i == 0 || i > MAX_WIDTH {
                    return Err(self.error("variable index outside 1..=16"));
                }
                Ok(PropFormula::Var(i))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
