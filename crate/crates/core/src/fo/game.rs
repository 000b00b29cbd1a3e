//! The first-order splitting and supplementing game.
//!
//! Player I wins a position `(w, A, B)` outright when an atom or negated atom
//! holds throughout `A` and fails throughout `B`. Otherwise player I may split
//! either class (as in the propositional game) or, at rank at least 2, pick a
//! variable `x_j` and a choice function on one class; that class is extended
//! by the chosen elements and the other by every element, at rank `w - 1`.
//! Choosing on `A` corresponds to `∃x_j`, choosing on `B` to `∀x_j`; the
//! existential game forbids the latter.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Assignment, ChoiceFunction, FoFormula, Model, Structure, StructureClass, Vocabulary};
use crate::error::{Error, Limit, Result};
use crate::prop::game::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameMode {
    Full,
    Existential,
}

/// Which variables a supplementing move may pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexPolicy {
    /// Only the least variable outside the current domain.
    Fresh,
    /// The fresh variable and every variable already in the domain.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoLimits {
    /// Choice functions enumerated for one supplementing move.
    pub choice_functions: u64,
    /// Memoized positions.
    pub positions: usize,
    /// Members of a class that is split.
    pub class_size: usize,
    /// Atoms over the variables of one position.
    pub atoms: usize,
}

impl Default for FoLimits {
    fn default() -> Self {
        FoLimits { choice_functions: 100_000, positions: 2_000_000, class_size: 20, atoms: 4096 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoPosition {
    pub rank: usize,
    pub left: StructureClass,
    pub right: StructureClass,
}

impl FoPosition {
    pub fn new(rank: usize, left: StructureClass, right: StructureClass) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("rank must be at least 1"));
        }
        left.compatible(&right)?;
        Ok(FoPosition { rank, left, right })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoMove {
    LeftSplit { u: usize, v: usize, c: StructureClass, d: StructureClass },
    RightSplit { u: usize, v: usize, c: StructureClass, d: StructureClass },
    LeftSupp { var: u32, choice: ChoiceFunction },
    RightSupp { var: u32, choice: ChoiceFunction },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoStep {
    /// Player I wins at once; the formula is an atom or a negated atom.
    Atomic(FoFormula),
    Move(FoMove),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoMinResult {
    Size(usize),
    Unknown { searched_up_to: usize },
}

impl fmt::Display for FoMinResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoMinResult::Size(k) => write!(f, "{k}"),
            FoMinResult::Unknown { searched_up_to } => write!(f, "unknown (no win up to rank {searched_up_to})"),
        }
    }
}

pub fn fo_winner(pos: &FoPosition, mode: GameMode, limits: &FoLimits) -> Result<Player> {
    let mut solver = FoSolver::new(&pos.left, &pos.right, mode, limits)?;
    Ok(if solver.wins(pos.rank)? { Player::I } else { Player::II })
}

pub fn fo_minsize(
    a: &StructureClass,
    b: &StructureClass,
    mode: GameMode,
    w_max: usize,
    limits: &FoLimits,
) -> Result<FoMinResult> {
    FoSolver::new(a, b, mode, limits)?.minsize(w_max)
}

pub fn fo_synthesize(
    a: &StructureClass,
    b: &StructureClass,
    w: usize,
    mode: GameMode,
    limits: &FoLimits,
) -> Result<Option<FoFormula>> {
    FoSolver::new(a, b, mode, limits)?.synthesize(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Point {
    model: u32,
    /// Element per variable slot.
    elems: Vec<u32>,
}

#[derive(Debug, Clone)]
enum Atom {
    Rel { symbol: usize, slots: Vec<usize> },
    Eq(usize, usize),
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    lose_up_to: usize,
    win_from: usize,
}

enum Plan {
    LeftSplit { u: usize, c: Vec<u32>, d: Vec<u32> },
    RightSplit { u: usize, c: Vec<u32>, d: Vec<u32> },
    LeftSupp { var: u32, choice: Vec<u32>, a: Vec<u32>, b: Vec<u32> },
    RightSupp { var: u32, choice: Vec<u32>, a: Vec<u32>, b: Vec<u32> },
}

/// Memoized solver for one pair of root classes. Positions are pairs of
/// sorted point-id lists; a point is a model plus one element per slot.
pub struct FoSolver {
    mode: GameMode,
    policy: IndexPolicy,
    limits: FoLimits,
    vocabulary: Arc<Vocabulary>,
    models: Vec<Arc<Model>>,
    points: Vec<Point>,
    point_ids: HashMap<Point, u32>,
    signatures: Vec<Vec<u64>>,
    /// `vars[s]` is the variable held in slot `s`.
    vars: Vec<u32>,
    atoms: Vec<Vec<Atom>>,
    memo: HashMap<(Vec<u32>, Vec<u32>), Bounds>,
    root: (Vec<u32>, Vec<u32>),
}

impl FoSolver {
    pub fn new(a: &StructureClass, b: &StructureClass, mode: GameMode, limits: &FoLimits) -> Result<Self> {
        a.compatible(b)?;
        let mut solver = FoSolver {
            mode,
            policy: IndexPolicy::Fresh,
            limits: *limits,
            vocabulary: Arc::clone(a.vocabulary()),
            models: Vec::new(),
            points: Vec::new(),
            point_ids: HashMap::new(),
            signatures: Vec::new(),
            vars: a.domain().iter().copied().collect(),
            atoms: Vec::new(),
            memo: HashMap::new(),
            root: (Vec::new(), Vec::new()),
        };
        let mut model_ids: HashMap<Arc<Model>, u32> = HashMap::new();
        let mut ids = |solver: &mut FoSolver, class: &StructureClass| -> Result<Vec<u32>> {
            let mut out = Vec::with_capacity(class.len());
            for m in class.iter() {
                let next = solver.models.len() as u32;
                let model = *model_ids.entry(Arc::clone(m.model())).or_insert(next);
                if model == next {
                    solver.models.push(Arc::clone(m.model()));
                }
                let elems = solver.vars.iter().map(|&j| m.assignment().get(j).expect("domain checked")).collect();
                out.push(solver.intern(Point { model, elems })?);
            }
            out.sort_unstable();
            out.dedup();
            Ok(out)
        };
        let left = ids(&mut solver, a)?;
        let right = ids(&mut solver, b)?;
        solver.root = (left, right);
        Ok(solver)
    }

    /// Validation aid: let supplementing moves reuse variables in the domain.
    pub fn with_policy(mut self, policy: IndexPolicy) -> Self {
        self.policy = policy;
        self.memo.clear();
        self
    }

    pub fn positions(&self) -> usize {
        self.memo.len()
    }

    pub fn wins(&mut self, w: usize) -> Result<bool> {
        if w == 0 {
            return Err(Error::input("rank must be at least 1"));
        }
        let (a, b) = self.root.clone();
        self.win(w, &a, &b)
    }

    /// Least winning rank up to `w_max`.
    pub fn minsize(&mut self, w_max: usize) -> Result<FoMinResult> {
        let (a, b) = self.root.clone();
        if a.iter().any(|p| b.binary_search(p).is_ok()) {
            return Ok(FoMinResult::Unknown { searched_up_to: w_max });
        }
        for w in 1..=w_max {
            if self.win(w, &a, &b)? {
                return Ok(FoMinResult::Size(w));
            }
        }
        Ok(FoMinResult::Unknown { searched_up_to: w_max })
    }

    /// A separating formula of size at most `w` read off the winning strategy.
    pub fn synthesize(&mut self, w: usize) -> Result<Option<FoFormula>> {
        if !self.wins(w)? {
            return Ok(None);
        }
        let (a, b) = self.root.clone();
        self.formula(w, &a, &b).map(Some)
    }

    /// Player I's first winning step at rank `w`, if he has one.
    pub fn first_step(&mut self, w: usize) -> Result<Option<FoStep>> {
        if !self.wins(w)? {
            return Ok(None);
        }
        let (a, b) = self.root.clone();
        if let Some((atom, positive)) = self.literal(&a, &b)? {
            return Ok(Some(FoStep::Atomic(self.atom_formula(self.depth(&a, &b), atom, positive))));
        }
        let plan = self.find_move(w, &a, &b)?.expect("won positions have a winning move");
        let step = match plan {
            Plan::LeftSplit { u, c, d } => {
                FoMove::LeftSplit { u, v: w - u, c: self.class_of(&c, &a, &b), d: self.class_of(&d, &a, &b) }
            }
            Plan::RightSplit { u, c, d } => {
                FoMove::RightSplit { u, v: w - u, c: self.class_of(&c, &a, &b), d: self.class_of(&d, &a, &b) }
            }
            Plan::LeftSupp { var, choice, .. } => FoMove::LeftSupp { var, choice: ChoiceFunction(choice) },
            Plan::RightSupp { var, choice, .. } => FoMove::RightSupp { var, choice: ChoiceFunction(choice) },
        };
        Ok(Some(FoStep::Move(step)))
    }

    fn class_of(&self, ids: &[u32], a: &[u32], b: &[u32]) -> StructureClass {
        let k = self.depth(a, b);
        let members = ids
            .iter()
            .map(|&p| {
                let point = &self.points[p as usize];
                let assignment: Assignment = self.vars[..k].iter().copied().zip(point.elems.iter().copied()).collect();
                Structure::new(Arc::clone(&self.models[point.model as usize]), assignment).expect("elements in range")
            })
            .collect();
        StructureClass::new(Arc::clone(&self.vocabulary), self.vars[..k].iter().copied().collect(), members)
            .expect("points share vocabulary and domain")
    }

    fn depth(&self, a: &[u32], b: &[u32]) -> usize {
        a.first().or(b.first()).map_or(self.root_depth(), |&p| self.points[p as usize].elems.len())
    }

    fn root_depth(&self) -> usize {
        let (a, b) = &self.root;
        a.first().or(b.first()).map_or(0, |&p| self.points[p as usize].elems.len())
    }

    fn intern(&mut self, point: Point) -> Result<u32> {
        if let Some(&id) = self.point_ids.get(&point) {
            return Ok(id);
        }
        let k = point.elems.len();
        self.ensure_atoms(k)?;
        let model = &self.models[point.model as usize];
        let atoms = &self.atoms[k];
        let mut sig = vec![0u64; atoms.len().div_ceil(64).max(1)];
        for (i, atom) in atoms.iter().enumerate() {
            let holds = match atom {
                Atom::Rel { symbol, slots } => {
                    let tuple: Vec<u32> = slots.iter().map(|&s| point.elems[s]).collect();
                    model.holds(*symbol, &tuple)
                }
                Atom::Eq(s, t) => point.elems[*s] == point.elems[*t],
            };
            if holds {
                sig[i / 64] |= 1 << (i % 64);
            }
        }
        let id = self.points.len() as u32;
        self.points.push(point.clone());
        self.signatures.push(sig);
        self.point_ids.insert(point, id);
        Ok(id)
    }

    fn ensure_atoms(&mut self, k: usize) -> Result<()> {
        while self.atoms.len() <= k {
            let slots = self.atoms.len();
            let mut atoms = Vec::new();
            for (symbol, (_, arity)) in self.vocabulary.symbols().iter().enumerate() {
                let total = slots.checked_pow(*arity as u32).unwrap_or(usize::MAX);
                if total > self.limits.atoms {
                    return Err(Error::resource(Limit::Atoms, total as u64, self.limits.atoms as u64));
                }
                for mut code in 0..total {
                    let mut tuple = vec![0; *arity];
                    for s in tuple.iter_mut().rev() {
                        *s = code % slots;
                        code /= slots;
                    }
                    atoms.push(Atom::Rel { symbol, slots: tuple });
                }
            }
            for s in 0..slots {
                for t in s..slots {
                    atoms.push(Atom::Eq(s, t));
                }
            }
            if atoms.len() > self.limits.atoms {
                return Err(Error::resource(Limit::Atoms, atoms.len() as u64, self.limits.atoms as u64));
            }
            self.atoms.push(atoms);
        }
        Ok(())
    }

    fn var_for_slot(&mut self, slot: usize) -> u32 {
        while self.vars.len() <= slot {
            let fresh = (0..).find(|j| !self.vars.contains(j)).expect("variables are unbounded");
            self.vars.push(fresh);
        }
        self.vars[slot]
    }

    fn atom_formula(&self, k: usize, atom: usize, positive: bool) -> FoFormula {
        let f = match &self.atoms[k][atom] {
            Atom::Rel { symbol, slots } => FoFormula::rel(
                self.vocabulary.symbols()[*symbol].0.clone(),
                slots.iter().map(|&s| self.vars[s]).collect::<Vec<_>>(),
            ),
            Atom::Eq(s, t) => FoFormula::eq(self.vars[*s], self.vars[*t]),
        };
        if positive {
            f
        } else {
            FoFormula::not(f)
        }
    }

    /// First atom, positive before negative, separating `a` from `b`.
    fn literal(&mut self, a: &[u32], b: &[u32]) -> Result<Option<(usize, bool)>> {
        let k = self.depth(a, b);
        self.ensure_atoms(k)?;
        let n = self.atoms[k].len();
        let words = n.div_ceil(64).max(1);
        let fold = |ids: &[u32], all: bool| -> Vec<u64> {
            let mut acc = vec![if all { u64::MAX } else { 0 }; words];
            for &p in ids {
                for (w, s) in acc.iter_mut().zip(&self.signatures[p as usize]) {
                    if all {
                        *w &= s;
                    } else {
                        *w |= s;
                    }
                }
            }
            acc
        };
        let (and_a, or_a, and_b, or_b) = (fold(a, true), fold(a, false), fold(b, true), fold(b, false));
        for i in 0..n {
            let bit = |v: &[u64]| v[i / 64] >> (i % 64) & 1 == 1;
            if bit(&and_a) && !bit(&or_b) {
                return Ok(Some((i, true)));
            }
            if !bit(&or_a) && bit(&and_b) {
                return Ok(Some((i, false)));
            }
        }
        Ok(None)
    }

    fn win(&mut self, w: usize, a: &[u32], b: &[u32]) -> Result<bool> {
        if self.literal(a, b)?.is_some() {
            return Ok(true);
        }
        if w == 1 {
            return Ok(false);
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(bounds) = self.memo.get(&key) {
            if w >= bounds.win_from {
                return Ok(true);
            }
            if w <= bounds.lose_up_to {
                return Ok(false);
            }
        } else if self.memo.len() >= self.limits.positions {
            return Err(Error::resource(Limit::Positions, self.memo.len() as u64 + 1, self.limits.positions as u64));
        }
        let won = self.find_move(w, a, b)?.is_some();
        let bounds = self.memo.entry(key).or_insert(Bounds { lose_up_to: 0, win_from: usize::MAX });
        if won {
            bounds.win_from = bounds.win_from.min(w);
        } else {
            bounds.lose_up_to = bounds.lose_up_to.max(w);
        }
        Ok(won)
    }

    /// Least `u < w` at which `win(u, …)` holds.
    fn least_rank(&mut self, w: usize, a: &[u32], b: &[u32]) -> Result<Option<usize>> {
        for u in 1..w {
            if self.win(u, a, b)? {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    fn find_move(&mut self, w: usize, a: &[u32], b: &[u32]) -> Result<Option<Plan>> {
        for left in [true, false] {
            let side = if left { a } else { b };
            if side.len() < 2 {
                continue;
            }
            if side.len() > self.limits.class_size {
                return Err(Error::resource(Limit::ClassSize, side.len() as u64, self.limits.class_size as u64));
            }
            let rest: u32 = (1u32 << (side.len() - 1)) - 1;
            let mut sub = 0u32;
            loop {
                if sub != rest {
                    // Block C always holds the first member; bit i of `sub` places member i + 1.
                    let mut c = vec![side[0]];
                    let mut d = Vec::new();
                    for (i, &p) in side[1..].iter().enumerate() {
                        if sub >> i & 1 == 1 {
                            c.push(p);
                        } else {
                            d.push(p);
                        }
                    }
                    let found = if left {
                        match self.least_rank(w, &c, b)? {
                            Some(u) if self.win(w - u, &d, b)? => Some(Plan::LeftSplit { u, c, d }),
                            _ => None,
                        }
                    } else {
                        match self.least_rank(w, a, &c)? {
                            Some(u) if self.win(w - u, a, &d)? => Some(Plan::RightSplit { u, c, d }),
                            _ => None,
                        }
                    };
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                if sub == rest {
                    break;
                }
                sub = ((sub | !rest).wrapping_add(1)) & rest;
            }
        }
        let k = self.depth(a, b);
        let mut slots = vec![k];
        if self.policy == IndexPolicy::All {
            slots.extend(0..k);
        }
        for left in [true, false] {
            if !left && self.mode == GameMode::Existential {
                continue;
            }
            for &slot in &slots {
                let var = self.var_for_slot(slot);
                let (chosen, starred) = if left { (a, b) } else { (b, a) };
                let star = self.star(starred, slot)?;
                let sizes: Vec<u32> = chosen.iter().map(|&p| self.universe(p)).collect();
                let count = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64)).unwrap_or(u64::MAX);
                if count > self.limits.choice_functions {
                    return Err(Error::resource(Limit::ChoiceFunctions, count, self.limits.choice_functions));
                }
                let mut choice = vec![0u32; chosen.len()];
                loop {
                    let mut picked = Vec::with_capacity(chosen.len());
                    for (&p, &e) in chosen.iter().zip(&choice) {
                        picked.push(self.extend(p, slot, e)?);
                    }
                    picked.sort_unstable();
                    picked.dedup();
                    let (na, nb) = if left { (&picked, &star) } else { (&star, &picked) };
                    if self.win(w - 1, na, nb)? {
                        let (na, nb) = (na.clone(), nb.clone());
                        let choice = choice.clone();
                        return Ok(Some(if left {
                            Plan::LeftSupp { var, choice, a: na, b: nb }
                        } else {
                            Plan::RightSupp { var, choice, a: na, b: nb }
                        }));
                    }
                    if !advance(&mut choice, &sizes) {
                        break;
                    }
                }
            }
        }
        Ok(None)
    }

    fn universe(&self, p: u32) -> u32 {
        self.models[self.points[p as usize].model as usize].universe()
    }

    fn extend(&mut self, p: u32, slot: usize, e: u32) -> Result<u32> {
        let mut point = self.points[p as usize].clone();
        if slot == point.elems.len() {
            point.elems.push(e);
        } else {
            point.elems[slot] = e;
        }
        self.intern(point)
    }

    fn star(&mut self, ids: &[u32], slot: usize) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for &p in ids {
            for e in 0..self.universe(p) {
                out.push(self.extend(p, slot, e)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn formula(&mut self, w: usize, a: &[u32], b: &[u32]) -> Result<FoFormula> {
        if let Some((atom, positive)) = self.literal(a, b)? {
            return Ok(self.atom_formula(self.depth(a, b), atom, positive));
        }
        let plan = self.find_move(w, a, b)?.expect("formula is only built for won positions");
        Ok(match plan {
            Plan::LeftSplit { u, c, d } => FoFormula::or(self.formula(u, &c, b)?, self.formula(w - u, &d, b)?),
            Plan::RightSplit { u, c, d } => FoFormula::and(self.formula(u, a, &c)?, self.formula(w - u, a, &d)?),
            Plan::LeftSupp { var, a, b, .. } => FoFormula::exists(var, self.formula(w - 1, &a, &b)?),
            Plan::RightSupp { var, a, b, .. } => FoFormula::forall(var, self.formula(w - 1, &a, &b)?),
        })
    }
}

/// Lexicographic odometer step; `false` once every tuple has been visited.
fn advance(choice: &mut [u32], sizes: &[u32]) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < sizes[i] {
            return true;
        }
        choice[i] = 0;
    }
    false
}
