//! Brute-force ground truth, independent of the game solvers.
//!
//! Propositional: the least leaf count of every Boolean function of up to
//! three variables, by building functions layer by layer from literals with
//! `∧` and `∨`. Negation is free in negation normal form, and the literal
//! layer is closed under complement, so it never has to be applied.

mod fo_enum;

pub use fo_enum::{fo_enumerate_minsize, fo_enumerate_separator};

use crate::error::{Error, Limit, Result};
use crate::prop::game::MinResult;
use crate::prop::{BitString, PropFormula, StringProperty};

pub const ORACLE_MAX_WIDTH: u8 = 3;

/// Bit `v` holds the function's value on the string with packed value `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    width: u8,
    bits: u8,
}

impl TruthTable {
    pub fn new(width: u8, bits: u8) -> Result<Self> {
        check_width(width)?;
        if (bits as u16) & !full_mask(width) != 0 {
            return Err(Error::input(format!("truth table {bits:#b} too wide for {width} variables")));
        }
        Ok(TruthTable { width, bits })
    }

    pub fn of_formula(f: &PropFormula, width: u8) -> Result<Self> {
        check_width(width)?;
        let mut bits = 0u8;
        for s in BitString::all(width)? {
            if f.eval(s)? {
                bits |= 1 << s.value();
            }
        }
        Ok(TruthTable { width, bits })
    }

    pub fn width(self) -> u8 {
        self.width
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn eval(self, s: BitString) -> bool {
        self.bits >> s.value() & 1 == 1
    }
}

fn check_width(width: u8) -> Result<()> {
    if width == 0 {
        return Err(Error::input("width must be at least 1"));
    }
    if width > ORACLE_MAX_WIDTH {
        return Err(Error::resource(Limit::OracleWidth, width, ORACLE_MAX_WIDTH));
    }
    Ok(())
}

fn full_mask(width: u8) -> u16 {
    ((1u32 << (1u32 << width)) - 1) as u16
}

fn literal_table(width: u8, var: u8) -> u8 {
    BitString::all(width).expect("width checked").filter(|s| s.get(var)).fold(0u8, |acc, s| acc | 1 << s.value())
}

/// Least formula size of every function of `width` variables.
#[derive(Debug, Clone)]
pub struct MinSizeTable {
    width: u8,
    sizes: Vec<u32>,
    /// `layers[m]`: functions whose least size is `m`.
    layers: Vec<Vec<u8>>,
}

impl MinSizeTable {
    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn get(&self, t: TruthTable) -> u32 {
        debug_assert_eq!(t.width, self.width);
        self.sizes[t.bits as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (TruthTable, u32)> + '_ {
        self.sizes.iter().enumerate().map(|(bits, &m)| (TruthTable { width: self.width, bits: bits as u8 }, m))
    }

    pub fn max_size(&self) -> u32 {
        self.layers.len() as u32 - 1
    }

    /// Number of functions computed by some formula of size at most `m`.
    pub fn count_up_to(&self, m: u32) -> u64 {
        self.layers.iter().take(m as usize + 1).map(|l| l.len() as u64).sum()
    }
}

pub fn min_size_table(n: u8) -> Result<MinSizeTable> {
    check_width(n)?;
    let functions = 1usize << (1 << n);
    let mask = full_mask(n) as u8;
    let mut sizes = vec![0u32; functions];
    let mut layers: Vec<Vec<u8>> = vec![Vec::new(), Vec::new()];
    for var in 1..=n {
        for t in [literal_table(n, var), !literal_table(n, var) & mask] {
            sizes[t as usize] = 1;
            layers[1].push(t);
        }
    }
    let mut found = layers[1].len();
    let mut m = 1;
    while found < functions {
        m += 1;
        let mut layer = Vec::new();
        for u in 1..=m / 2 {
            for &f in &layers[u] {
                for &g in &layers[m - u] {
                    for h in [f & g, f | g] {
                        if sizes[h as usize] == 0 {
                            sizes[h as usize] = m as u32;
                            layer.push(h);
                        }
                    }
                }
            }
        }
        found += layer.len();
        layer.sort_unstable();
        layers.push(layer);
    }
    Ok(MinSizeTable { width: n, sizes, layers })
}

/// Cheapest function that is true on `S` and false on `R`.
pub fn oracle_minsize(s: &StringProperty, r: &StringProperty) -> Result<MinResult> {
    if s.width() != r.width() {
        return Err(Error::input(format!("property widths differ: {} vs {}", s.width(), r.width())));
    }
    let table = min_size_table(s.width())?;
    if !s.is_disjoint(r) {
        return Ok(MinResult::Inseparable);
    }
    let on = s.iter().fold(0u8, |acc, x| acc | 1 << x.value());
    let off = r.iter().fold(0u8, |acc, x| acc | 1 << x.value());
    let best = table
        .iter()
        .filter(|(t, _)| t.bits & on == on && t.bits & off == 0)
        .map(|(_, m)| m)
        .min()
        .expect("disjoint sides admit some function");
    Ok(MinResult::Size(best as usize))
}

pub fn count_functions_up_to(m: u32, n: u8) -> Result<u64> {
    Ok(min_size_table(n)?.count_up_to(m))
}

/// `2^m (n + 2)^(2m)`: formulas of size at most `m` over `n` variables.
/// `None` when the value does not fit in 128 bits.
pub fn formula_count_bound(m: u32, n: u8) -> Option<u128> {
    1u128.checked_shl(m)?.checked_mul((n as u128 + 2).checked_pow(2 * m)?)
}
