//! Exhaustive search for the smallest separating first-order formula.
//!
//! Formulas are tracked by their truth values on a fixed set of evaluation
//! points: every member of either class, extended by every assignment of the
//! quantifiable variables. Two formulas with the same truth values and the
//! same free variables are interchangeable, so only the first one found is
//! kept. Quantifiable variables are the `w_max - 1` least indices outside the
//! class domain; a formula of size `w` nests at most `w - 1` quantifiers, so
//! that pool is enough after renaming bound variables.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Limit, Result};
use crate::fo::game::{FoMinResult, GameMode};
use crate::fo::{fo_eval, FoFormula, Structure, StructureClass};

pub const MAX_RANK: usize = 4;
pub const MAX_MEMBERS: usize = 3;
pub const MAX_UNIVERSE: u32 = 3;
pub const MAX_SYMBOLS: usize = 2;
pub const MAX_ARITY: usize = 2;
pub const MAX_POINTS: usize = 256;

type Bits = [u64; MAX_POINTS / 64];

struct Item {
    bits: Bits,
    free: u32,
    formula: FoFormula,
}

struct Space {
    /// Domain variables first, then the pool.
    vars: Vec<u32>,
    domain_mask: u32,
    pool: Vec<u32>,
    points: Vec<Structure>,
    a_mask: Bits,
    b_mask: Bits,
    /// `fibers[k][p]`: points that agree with `p` except on pool variable `k`.
    fibers: Vec<Vec<Vec<usize>>>,
}

pub fn fo_enumerate_minsize(
    a: &StructureClass,
    b: &StructureClass,
    w_max: usize,
    mode: GameMode,
) -> Result<FoMinResult> {
    Ok(match fo_enumerate_separator(a, b, w_max, mode)? {
        Some(f) => FoMinResult::Size(f.size()),
        None => FoMinResult::Unknown { searched_up_to: w_max },
    })
}

/// A smallest separator of size at most `w_max`, existential when `mode` is.
pub fn fo_enumerate_separator(
    a: &StructureClass,
    b: &StructureClass,
    w_max: usize,
    mode: GameMode,
) -> Result<Option<FoFormula>> {
    if w_max > MAX_RANK {
        return Err(Error::resource(Limit::EnumerationRank, w_max as u64, MAX_RANK as u64));
    }
    let space = Space::new(a, b, w_max)?;
    let mut seen: HashSet<(Bits, u32)> = HashSet::new();
    let mut layers: Vec<Vec<Item>> = vec![Vec::new()];
    for m in 1..=w_max {
        let mut layer = Vec::new();
        // Keeps a new (truth values, free variables) pair and reports a separator.
        let mut offer = |bits: Bits, free: u32, make: &dyn Fn() -> FoFormula| -> Option<FoFormula> {
            if !seen.insert((bits, free)) {
                return None;
            }
            let formula = make();
            if space.separates(&bits, free) {
                return Some(formula);
            }
            layer.push(Item { bits, free, formula });
            None
        };
        if m == 1 {
            for (bits, free, atom) in space.literals()? {
                if let Some(f) = offer(bits, free, &|| atom.clone()) {
                    return Ok(Some(f));
                }
            }
        }
        for u in 1..=m / 2 {
            for f in &layers[u] {
                for g in &layers[m - u] {
                    let free = f.free | g.free;
                    let both = || FoFormula::and(f.formula.clone(), g.formula.clone());
                    let either = || FoFormula::or(f.formula.clone(), g.formula.clone());
                    if let Some(h) = offer(zip(&f.bits, &g.bits, |x, y| x & y), free, &both) {
                        return Ok(Some(h));
                    }
                    if let Some(h) = offer(zip(&f.bits, &g.bits, |x, y| x | y), free, &either) {
                        return Ok(Some(h));
                    }
                }
            }
        }
        if m >= 2 {
            for f in &layers[m - 1] {
                for (k, &var) in space.pool.iter().enumerate() {
                    let free = f.free & !space.var_bit(var);
                    let some = || FoFormula::exists(var, f.formula.clone());
                    if let Some(h) = offer(space.quantify(k, &f.bits, false), free, &some) {
                        return Ok(Some(h));
                    }
                    if mode == GameMode::Full {
                        let every = || FoFormula::forall(var, f.formula.clone());
                        if let Some(h) = offer(space.quantify(k, &f.bits, true), free, &every) {
                            return Ok(Some(h));
                        }
                    }
                }
            }
        }
        if m < w_max {
            layers.push(layer);
        }
    }
    Ok(None)
}

fn zip(x: &Bits, y: &Bits, op: impl Fn(u64, u64) -> u64) -> Bits {
    std::array::from_fn(|i| op(x[i], y[i]))
}

fn get(bits: &Bits, p: usize) -> bool {
    bits[p / 64] >> (p % 64) & 1 == 1
}

fn set(bits: &mut Bits, p: usize) {
    bits[p / 64] |= 1 << (p % 64);
}

impl Space {
    fn new(a: &StructureClass, b: &StructureClass, w_max: usize) -> Result<Space> {
        a.compatible(b)?;
        let vocabulary = a.vocabulary();
        let widest = vocabulary.symbols().iter().map(|(_, k)| *k).max().unwrap_or(0);
        if vocabulary.len() > MAX_SYMBOLS {
            return Err(Error::resource(Limit::OracleVocabulary, vocabulary.len() as u64, MAX_SYMBOLS as u64));
        }
        if widest > MAX_ARITY {
            return Err(Error::resource(Limit::OracleVocabulary, widest as u64, MAX_ARITY as u64));
        }
        let members = a.len().max(b.len());
        if members > MAX_MEMBERS {
            return Err(Error::resource(Limit::ClassSize, members as u64, MAX_MEMBERS as u64));
        }
        let universe = a.iter().chain(b.iter()).map(|m| m.model().universe()).max().unwrap_or(1);
        if universe > MAX_UNIVERSE {
            return Err(Error::resource(Limit::OracleUniverse, universe, MAX_UNIVERSE));
        }
        let domain: Vec<u32> = a.domain().iter().copied().collect();
        let pool: Vec<u32> = (0..).filter(|j| !a.domain().contains(j)).take(w_max.saturating_sub(1)).collect();
        let needed: usize =
            a.iter().chain(b.iter()).map(|m| (m.model().universe() as usize).pow(pool.len() as u32)).sum();
        if needed > MAX_POINTS {
            return Err(Error::resource(Limit::EvaluationPoints, needed as u64, MAX_POINTS as u64));
        }
        let mut space = Space {
            vars: domain.iter().chain(&pool).copied().collect(),
            domain_mask: (1u32 << domain.len()) - 1,
            pool,
            points: Vec::new(),
            a_mask: [0; MAX_POINTS / 64],
            b_mask: [0; MAX_POINTS / 64],
            fibers: Vec::new(),
        };
        space.fibers = vec![vec![Vec::new(); needed]; space.pool.len()];
        for (side, class) in [(0, a), (1, b)] {
            for m in class.iter() {
                space.add_member(side, m);
            }
        }
        Ok(space)
    }

    /// Points of one member in mixed-radix order, the last pool variable fastest.
    fn add_member(&mut self, side: usize, member: &Structure) {
        let size = member.model().universe() as usize;
        let k = self.pool.len();
        let base = self.points.len();
        let count = size.pow(k as u32);
        for code in 0..count {
            let mut assignment = member.assignment().clone();
            let mut rest = code;
            for &var in self.pool.iter().rev() {
                assignment = assignment.with(var, (rest % size) as u32);
                rest /= size;
            }
            let p = base + code;
            set(if side == 0 { &mut self.a_mask } else { &mut self.b_mask }, p);
            self.points.push(Structure::new(Arc::clone(member.model()), assignment).expect("elements in range"));
            for slot in 0..k {
                let stride = size.pow((k - 1 - slot) as u32);
                let digit = code / stride % size;
                let start = p - digit * stride;
                self.fibers[slot][p] = (0..size).map(|e| start + e * stride).collect();
            }
        }
    }

    fn var_bit(&self, var: u32) -> u32 {
        1 << self.vars.iter().position(|&v| v == var).expect("known variable")
    }

    fn literals(&self) -> Result<Vec<(Bits, u32, FoFormula)>> {
        let mut atoms = Vec::new();
        let vocabulary = self.points.first().map(|p| Arc::clone(p.vocabulary()));
        if let Some(vocabulary) = vocabulary {
            for (name, arity) in vocabulary.symbols() {
                let mut args = vec![0usize; *arity];
                loop {
                    atoms.push(FoFormula::rel(name.clone(), args.iter().map(|&i| self.vars[i]).collect::<Vec<_>>()));
                    if !advance(&mut args, self.vars.len()) {
                        break;
                    }
                }
            }
        }
        for i in 0..self.vars.len() {
            for j in i..self.vars.len() {
                atoms.push(FoFormula::eq(self.vars[i], self.vars[j]));
            }
        }
        let mut out = Vec::new();
        for atom in atoms {
            let free = atom.free_vars().into_iter().fold(0, |acc, v| acc | self.var_bit(v));
            let mut bits = [0u64; MAX_POINTS / 64];
            for (p, point) in self.points.iter().enumerate() {
                if fo_eval(&atom, point)? {
                    set(&mut bits, p);
                }
            }
            let negated = std::array::from_fn(|i| !bits[i]);
            out.push((self.clip(bits), free, atom.clone()));
            out.push((self.clip(negated), free, FoFormula::not(atom)));
        }
        Ok(out)
    }

    fn clip(&self, bits: Bits) -> Bits {
        zip(&bits, &zip(&self.a_mask, &self.b_mask, |x, y| x | y), |x, y| x & y)
    }

    fn quantify(&self, slot: usize, bits: &Bits, universal: bool) -> Bits {
        let mut out = [0u64; MAX_POINTS / 64];
        for p in 0..self.points.len() {
            let fiber = &self.fibers[slot][p];
            let holds =
                if universal { fiber.iter().all(|&q| get(bits, q)) } else { fiber.iter().any(|&q| get(bits, q)) };
            if holds {
                set(&mut out, p);
            }
        }
        out
    }

    fn separates(&self, bits: &Bits, free: u32) -> bool {
        free & !self.domain_mask == 0
            && zip(bits, &self.a_mask, |x, y| x & y) == self.a_mask
            && zip(bits, &self.b_mask, |x, y| x & y) == [0; MAX_POINTS / 64]
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
