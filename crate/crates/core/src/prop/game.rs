//! The splitting game on string properties.
//!
//! A position `(w, S, R)` is won by player I outright when some literal is
//! true on all of `S` and false on all of `R`. Otherwise player I may split
//! either side into two pieces and the rank into `u + v = w`; player II
//! picks which half to continue. Player I has a winning strategy at rank `w`
//! exactly when some formula of size at most `w` separates `S` from `R`,
//! so the least winning rank is the minimal formula size.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BitString, Literal, PropFormula, StringProperty};
use crate::error::{Error, Limit, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinResult {
    Size(usize),
    Inseparable,
}

impl fmt::Display for MinResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinResult::Size(k) => write!(f, "{k}"),
            MinResult::Inseparable => f.write_str("inseparable"),
        }
    }
}

/// How splitting moves are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleMode {
    /// Arbitrary covers `C ∪ D`, possibly overlapping or empty.
    Exact,
    /// Disjoint partitions into two nonempty blocks.
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropPosition {
    pub rank: usize,
    pub left: StringProperty,
    pub right: StringProperty,
}

impl PropPosition {
    pub fn new(rank: usize, left: StringProperty, right: StringProperty) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("rank must be at least 1"));
        }
        if left.width() != right.width() {
            return Err(Error::input(format!("property widths differ: {} vs {}", left.width(), right.width())));
        }
        Ok(PropPosition { rank, left, right })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropMove {
    LeftSplit { u: usize, v: usize, c: StringProperty, d: StringProperty },
    RightSplit { u: usize, v: usize, c: StringProperty, d: StringProperty },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyStep {
    Move(PropMove),
    WinClaim(Literal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropLimits {
    /// Total strings allowed in an exact-rules search (3^k covers per side).
    pub exact_max_strings: usize,
    /// Total strings allowed in a reduced search.
    pub max_strings: usize,
    pub max_width: u8,
}

impl Default for PropLimits {
    fn default() -> Self {
        PropLimits { exact_max_strings: 8, max_strings: 16, max_width: 4 }
    }
}

/// First literal (by variable, positive before negative) separating `S` from
/// `R`. An empty side imposes no constraint.
pub fn literal_win(s: &StringProperty, r: &StringProperty) -> Option<Literal> {
    if s.width() != r.width() {
        return None;
    }
    (1..=s.width())
        .flat_map(|var| [Literal { var, positive: true }, Literal { var, positive: false }])
        .find(|lit| s.iter().all(|x| lit.eval(x)) && r.iter().all(|x| !lit.eval(x)))
}

pub fn winner(pos: &PropPosition, mode: RuleMode, limits: &PropLimits) -> Result<Player> {
    let won = match mode {
        RuleMode::Exact => ExactGame::new(&pos.left, &pos.right, limits)?.wins(pos.rank),
        RuleMode::Reduced => match minsize(&pos.left, &pos.right, limits)? {
            MinResult::Size(k) => k <= pos.rank,
            MinResult::Inseparable => false,
        },
    };
    Ok(if won { Player::I } else { Player::II })
}

/// Least rank at which player I wins, i.e. the size of a smallest separating formula.
pub fn minsize(s: &StringProperty, r: &StringProperty, limits: &PropLimits) -> Result<MinResult> {
    if !s.is_disjoint(r) {
        return Ok(MinResult::Inseparable);
    }
    let mut solver = ReducedSolver::new(s, r, limits)?;
    let v = solver.value(solver.full_s(), solver.full_r());
    Ok(MinResult::Size(v as usize))
}

/// A separating formula of size at most `w` read off the memoized strategy,
/// or `None` when player II wins at rank `w`.
pub fn synthesize(
    s: &StringProperty,
    r: &StringProperty,
    w: usize,
    limits: &PropLimits,
) -> Result<Option<PropFormula>> {
    if !s.is_disjoint(r) {
        return Ok(None);
    }
    let mut solver = ReducedSolver::new(s, r, limits)?;
    let (fs, fr) = (solver.full_s(), solver.full_r());
    if (solver.value(fs, fr) as usize) > w {
        return Ok(None);
    }
    Ok(Some(solver.extract(fs, fr, w)))
}

/// Player I's first move in the strategy read off a separating NNF formula.
pub fn formula_strategy_move(f: &PropFormula, pos: &PropPosition) -> Result<StrategyStep> {
    if !f.is_nnf() {
        return Err(Error::contract(format!("{f} is not in negation normal form")));
    }
    if f.size() > pos.rank {
        return Err(Error::contract(format!("{f} has size {} above rank {}", f.size(), pos.rank)));
    }
    if !f.separates(&pos.left, &pos.right)? {
        return Err(Error::contract(format!("{f} does not separate {} from {}", pos.left, pos.right)));
    }
    if let Some(lit) = f.as_literal() {
        return Ok(StrategyStep::WinClaim(lit));
    }
    let step = match f {
        PropFormula::Or(a, b) => {
            let u = a.size();
            PropMove::LeftSplit {
                u,
                v: pos.rank - u,
                c: pos.left.filter(|x| a.eval_unchecked(x)),
                d: pos.left.filter(|x| b.eval_unchecked(x)),
            }
        }
        PropFormula::And(a, b) => {
            let u = a.size();
            PropMove::RightSplit {
                u,
                v: pos.rank - u,
                c: pos.right.filter(|x| !a.eval_unchecked(x)),
                d: pos.right.filter(|x| !b.eval_unchecked(x)),
            }
        }
        _ => unreachable!("NNF non-literal is a conjunction or disjunction"),
    };
    Ok(StrategyStep::Move(step))
}

/// Plays the formula strategy against every reply of player II and reports
/// whether player I wins all plays while obeying the move rules.
pub fn verify_formula_strategy(f: &PropFormula, pos: &PropPosition) -> Result<bool> {
    match formula_strategy_move(f, pos)? {
        StrategyStep::WinClaim(lit) => {
            Ok(pos.left.iter().all(|x| lit.eval(x)) && pos.right.iter().all(|x| !lit.eval(x)))
        }
        StrategyStep::Move(PropMove::LeftSplit { u, v, c, d }) => {
            let (PropFormula::Or(a, b), true) = (f, legal_split(pos.rank, u, v, &c, &d, &pos.left)) else {
                return Ok(false);
            };
            Ok(verify_formula_strategy(a, &PropPosition { rank: u, left: c, right: pos.right.clone() })?
                && verify_formula_strategy(b, &PropPosition { rank: v, left: d, right: pos.right.clone() })?)
        }
        StrategyStep::Move(PropMove::RightSplit { u, v, c, d }) => {
            let (PropFormula::And(a, b), true) = (f, legal_split(pos.rank, u, v, &c, &d, &pos.right)) else {
                return Ok(false);
            };
            Ok(verify_formula_strategy(a, &PropPosition { rank: u, left: pos.left.clone(), right: c })?
                && verify_formula_strategy(b, &PropPosition { rank: v, left: pos.left.clone(), right: d })?)
        }
    }
}

fn legal_split(rank: usize, u: usize, v: usize, c: &StringProperty, d: &StringProperty, side: &StringProperty) -> bool {
    u >= 1
        && v >= 1
        && u + v == rank
        && c.is_subset(side)
        && d.is_subset(side)
        && side.iter().all(|x| c.contains(x) || d.contains(x))
}

/// Strings of one side, indexed locally so that subsets are bitmasks.
struct Side {
    members: Vec<BitString>,
    /// `ones[i - 1]`: members with `s_i = 1`.
    ones: Vec<u32>,
}

impl Side {
    fn new(p: &StringProperty) -> Self {
        let members: Vec<BitString> = p.iter().collect();
        let ones = (1..=p.width())
            .map(|i| members.iter().enumerate().filter(|(_, s)| s.get(i)).fold(0u32, |m, (k, _)| m | 1 << k))
            .collect();
        Side { members, ones }
    }
}

fn local_literal(left: &Side, right: &Side, width: u8, smask: u32, rmask: u32) -> Option<Literal> {
    (1..=width).find_map(|var| {
        let (sx, rx) = (left.ones[var as usize - 1], right.ones[var as usize - 1]);
        if smask & !sx == 0 && rmask & rx == 0 {
            Some(Literal { var, positive: true })
        } else if smask & sx == 0 && rmask & !rx == 0 {
            Some(Literal { var, positive: false })
        } else {
            None
        }
    })
}

/// Ascending enumeration of the submasks of `set`, including `0` and `set`.
fn submasks(set: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == set { None } else { Some(((cur | !set).wrapping_add(1)) & set) };
        Some(cur)
    })
}

const UNKNOWN: u8 = 0;
const INFINITE: u8 = u8::MAX;

/// Minimal-size table over (subset of S, subset of R), searching only
/// disjoint nonempty two-block partitions.
struct ReducedSolver {
    width: u8,
    left: Side,
    right: Side,
    memo: Vec<u8>,
}

impl ReducedSolver {
    fn new(s: &StringProperty, r: &StringProperty, limits: &PropLimits) -> Result<Self> {
        if s.width() != r.width() {
            return Err(Error::input(format!("property widths differ: {} vs {}", s.width(), r.width())));
        }
        if s.width() > limits.max_width {
            return Err(Error::resource(Limit::Width, s.width() as u32, limits.max_width as u32));
        }
        let total = s.len() + r.len();
        if total > limits.max_strings || total > 30 {
            return Err(Error::resource(Limit::Strings, total as u64, limits.max_strings.min(30) as u64));
        }
        Ok(ReducedSolver { width: s.width(), left: Side::new(s), right: Side::new(r), memo: vec![UNKNOWN; 1 << total] })
    }

    fn full_s(&self) -> u32 {
        (1u32 << self.left.members.len()) - 1
    }

    fn full_r(&self) -> u32 {
        (1u32 << self.right.members.len()) - 1
    }

    fn key(&self, smask: u32, rmask: u32) -> usize {
        (smask as usize) | (rmask as usize) << self.left.members.len()
    }

    fn value(&mut self, smask: u32, rmask: u32) -> u8 {
        if local_literal(&self.left, &self.right, self.width, smask, rmask).is_some() {
            return 1;
        }
        let key = self.key(smask, rmask);
        if self.memo[key] != UNKNOWN {
            return self.memo[key];
        }
        let mut best = INFINITE;
        'search: for (side_mask, left_side) in [(smask, true), (rmask, false)] {
            if side_mask.count_ones() < 2 {
                continue;
            }
            let low = side_mask & side_mask.wrapping_neg();
            let rest = side_mask ^ low;
            for sub in submasks(rest) {
                if sub == rest {
                    continue;
                }
                let (c, d) = (low | sub, rest ^ sub);
                let total = if left_side {
                    self.value(c, rmask).saturating_add(self.value(d, rmask))
                } else {
                    self.value(smask, c).saturating_add(self.value(smask, d))
                };
                best = best.min(total);
                if best == 2 {
                    break 'search;
                }
            }
        }
        self.memo[key] = best;
        best
    }

    /// Walks the memo table with the documented tie-breaking: literal, then
    /// left splits before right splits, smallest `u`, smallest `C` mask.
    fn extract(&mut self, smask: u32, rmask: u32, w: usize) -> PropFormula {
        if let Some(lit) = local_literal(&self.left, &self.right, self.width, smask, rmask) {
            return lit.to_formula();
        }
        for left_side in [true, false] {
            let side_mask = if left_side { smask } else { rmask };
            if side_mask.count_ones() < 2 {
                continue;
            }
            let low = side_mask & side_mask.wrapping_neg();
            let rest = side_mask ^ low;
            for u in 1..w {
                for sub in submasks(rest) {
                    if sub == rest {
                        continue;
                    }
                    let (c, d) = (low | sub, rest ^ sub);
                    let (pc, pd) = if left_side { ((c, rmask), (d, rmask)) } else { ((smask, c), (smask, d)) };
                    if self.value(pc.0, pc.1) as usize <= u && self.value(pd.0, pd.1) as usize <= w - u {
                        let a = self.extract(pc.0, pc.1, u);
                        let b = self.extract(pd.0, pd.1, w - u);
                        return if left_side { PropFormula::or(a, b) } else { PropFormula::and(a, b) };
                    }
                }
            }
        }
        unreachable!("extract is only called on positions won at rank {w}")
    }
}

/// Rules as written: covers may overlap and blocks may be empty.
struct ExactGame {
    width: u8,
    left: Side,
    right: Side,
    memo: HashMap<(usize, u32, u32), bool>,
}

impl ExactGame {
    fn new(s: &StringProperty, r: &StringProperty, limits: &PropLimits) -> Result<Self> {
        if s.width() != r.width() {
            return Err(Error::input(format!("property widths differ: {} vs {}", s.width(), r.width())));
        }
        let total = s.len() + r.len();
        if total > limits.exact_max_strings || total > 30 {
            return Err(Error::resource(Limit::ExactStrings, total as u64, limits.exact_max_strings.min(30) as u64));
        }
        Ok(ExactGame { width: s.width(), left: Side::new(s), right: Side::new(r), memo: HashMap::new() })
    }

    fn wins(&mut self, w: usize) -> bool {
        let (fs, fr) = ((1u32 << self.left.members.len()) - 1, (1u32 << self.right.members.len()) - 1);
        self.win_at(w, fs, fr)
    }

    fn win_at(&mut self, w: usize, smask: u32, rmask: u32) -> bool {
        if local_literal(&self.left, &self.right, self.width, smask, rmask).is_some() {
            return true;
        }
        if w == 1 {
            return false;
        }
        if let Some(&known) = self.memo.get(&(w, smask, rmask)) {
            return known;
        }
        let mut won = false;
        'search: for left_side in [true, false] {
            let side = if left_side { smask } else { rmask };
            for c in submasks(side) {
                // D must contain side \ C and may also reuse part of C.
                for extra in submasks(c) {
                    let d = (side ^ c) | extra;
                    for u in 1..w {
                        let ok = if left_side {
                            self.win_at(u, c, rmask) && self.win_at(w - u, d, rmask)
                        } else {
                            self.win_at(u, smask, c) && self.win_at(w - u, smask, d)
                        };
                        if ok {
                            won = true;
                            break 'search;
                        }
                    }
                }
            }
        }
        self.memo.insert((w, smask, rmask), won);
        won
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prop(strings: &[&str]) -> StringProperty {
        StringProperty::parse_strings(strings).unwrap()
    }

    fn pos(w: usize, s: &[&str], r: &[&str]) -> PropPosition {
        PropPosition::new(w, prop(s), prop(r)).unwrap()
    }

    fn f(text: &str) -> PropFormula {
        text.parse().unwrap()
    }

    const LIMITS: PropLimits = PropLimits { exact_max_strings: 8, max_strings: 16, max_width: 4 };

    #[test]
    fn literal_win_examples() {
        assert_eq!(literal_win(&prop(&["1"]), &prop(&["0"])), Some(Literal { var: 1, positive: true }));
        assert_eq!(literal_win(&prop(&["00", "11"]), &prop(&["01", "10"])), None);
        let empty = StringProperty::empty(2).unwrap();
        let lit = literal_win(&empty, &prop(&["10"])).unwrap();
        assert_eq!(lit, Literal { var: 1, positive: false });
    }

    #[test]
    fn winner_examples_both_modes() {
        for mode in [RuleMode::Exact, RuleMode::Reduced] {
            assert_eq!(winner(&pos(1, &["1"], &["0"]), mode, &LIMITS).unwrap(), Player::I);
            assert_eq!(winner(&pos(3, &["00", "11"], &["01", "10"]), mode, &LIMITS).unwrap(), Player::II);
            assert_eq!(winner(&pos(4, &["00", "11"], &["01", "10"]), mode, &LIMITS).unwrap(), Player::I);
        }
    }

    #[test]
    fn exact_mode_cap() {
        let tight = PropLimits { exact_max_strings: 3, ..LIMITS };
        let err = winner(&pos(4, &["00", "11"], &["01", "10"]), RuleMode::Exact, &tight).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: Limit::ExactStrings, needed: 4, cap: 3 }));
    }

    #[test]
    fn minsize_examples() {
        assert_eq!(minsize(&prop(&["0"]), &prop(&["1"]), &LIMITS).unwrap(), MinResult::Size(1));
        assert_eq!(minsize(&prop(&["00", "11"]), &prop(&["01", "10"]), &LIMITS).unwrap(), MinResult::Size(4));
        assert_eq!(minsize(&prop(&["01"]), &prop(&["01", "11"]), &LIMITS).unwrap(), MinResult::Inseparable);
    }

    #[test]
    fn minsize_with_an_empty_side() {
        let empty = StringProperty::empty(1).unwrap();
        // p1 & !p1
        assert_eq!(minsize(&empty, &prop(&["0", "1"]), &LIMITS).unwrap(), MinResult::Size(2));
        assert_eq!(minsize(&prop(&["0", "1"]), &empty, &LIMITS).unwrap(), MinResult::Size(2));
        assert_eq!(minsize(&empty, &prop(&["1"]), &LIMITS).unwrap(), MinResult::Size(1));
    }

    #[test]
    fn minsize_caps() {
        let err = minsize(&prop(&["00000"]), &prop(&["00001"]), &LIMITS).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: Limit::Width, .. }));
        let wide = PropLimits { max_strings: 2, ..LIMITS };
        let err = minsize(&prop(&["00", "11"]), &prop(&["01"]), &wide).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: Limit::Strings, needed: 3, cap: 2 }));
    }

    #[test]
    fn synthesize_examples() {
        let g = synthesize(&prop(&["11"]), &prop(&["00"]), 1, &LIMITS).unwrap().unwrap();
        assert!(g == f("p1") || g == f("p2"));
        assert_eq!(synthesize(&prop(&["00", "11"]), &prop(&["01", "10"]), 3, &LIMITS).unwrap(), None);
        let g = synthesize(&prop(&["10", "01"]), &prop(&["00"]), 2, &LIMITS).unwrap().unwrap();
        assert!(g == f("(p1 | p2)") || g == f("(p2 | p1)"), "{g}");
        let parity = synthesize(&prop(&["00", "11"]), &prop(&["01", "10"]), 4, &LIMITS).unwrap().unwrap();
        assert_eq!(parity.size(), 4);
        assert!(parity.separates(&prop(&["00", "11"]), &prop(&["01", "10"])).unwrap());
    }

    #[test]
    fn synthesize_is_deterministic() {
        let (s, r) = (prop(&["000", "011", "101", "110"]), prop(&["001", "010", "100", "111"]));
        let a = synthesize(&s, &r, 12, &LIMITS).unwrap().unwrap();
        let b = synthesize(&s, &r, 12, &LIMITS).unwrap().unwrap();
        assert_eq!(a, b);
        assert!(a.separates(&s, &r).unwrap() && a.size() <= 12);
    }

    #[test]
    fn strategy_move_examples() {
        let step = formula_strategy_move(&f("(p1 | p2)"), &pos(2, &["10", "01"], &["00"])).unwrap();
        assert_eq!(step, StrategyStep::Move(PropMove::LeftSplit { u: 1, v: 1, c: prop(&["10"]), d: prop(&["01"]) }));
        let step = formula_strategy_move(&f("p1"), &pos(1, &["1"], &["0"])).unwrap();
        assert_eq!(step, StrategyStep::WinClaim(Literal { var: 1, positive: true }));
        let step = formula_strategy_move(&f("(p1 & p2)"), &pos(2, &["11"], &["01", "10"])).unwrap();
        assert_eq!(step, StrategyStep::Move(PropMove::RightSplit { u: 1, v: 1, c: prop(&["01"]), d: prop(&["10"]) }));
    }

    #[test]
    fn strategy_move_contract_errors() {
        let p = pos(2, &["10", "01"], &["00"]);
        assert!(matches!(formula_strategy_move(&f("p1"), &p), Err(Error::Contract(_))));
        assert!(matches!(formula_strategy_move(&f("!(!p1 & !p2)"), &p), Err(Error::Contract(_))));
        let small = pos(1, &["10", "01"], &["00"]);
        assert!(matches!(formula_strategy_move(&f("(p1 | p2)"), &small), Err(Error::Contract(_))));
    }

    #[test]
    fn formula_strategies_win_against_every_reply() {
        let p = pos(4, &["00", "11"], &["01", "10"]);
        assert!(verify_formula_strategy(&f("((p1 & p2) | (!p1 & !p2))"), &p).unwrap());
        let p = pos(6, &["00", "11"], &["01", "10"]);
        assert!(verify_formula_strategy(&f("((p1 & p2) | (!p1 & !p2))"), &p).unwrap());
        let p = pos(3, &["110", "011"], &["000", "010"]);
        assert!(verify_formula_strategy(&f("((p1 | p3) & p2)"), &p).unwrap());
    }

    #[test]
    fn submask_order() {
        assert_eq!(submasks(0b1010).collect::<Vec<_>>(), vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }
}
