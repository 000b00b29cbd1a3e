//! Finite relational structures, first-order formulas and the class
//! operations used by the first-order game.
//!
//! Variables are natural numbers; `x3` is variable 3. Elements of a model
//! with universe size `k` are `0..k`. Equality is always available and is
//! never part of a vocabulary.

pub mod bounds;
pub mod game;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vocabulary {
    symbols: Vec<(String, usize)>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> = symbols.into_iter().map(|(n, a)| (n.into(), a)).collect();
        let mut seen = BTreeSet::new();
        for (name, arity) in &symbols {
            if *arity == 0 {
                return Err(Error::input(format!("symbol {name} has arity 0")));
            }
            if name.is_empty() || name.starts_with('x') && name[1..].chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::input(format!("symbol name {name:?} is reserved")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("symbol {name} declared twice")));
            }
        }
        Ok(Vocabulary { symbols })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index(name).map(|i| self.symbols[i].1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    vocabulary: Arc<Vocabulary>,
    universe: u32,
    /// One tuple set per vocabulary symbol, in vocabulary order.
    relations: Vec<BTreeSet<Vec<u32>>>,
}

impl Model {
    pub fn new<S: AsRef<str>>(
        vocabulary: Arc<Vocabulary>,
        universe: u32,
        relations: impl IntoIterator<Item = (S, Vec<Vec<u32>>)>,
    ) -> Result<Self> {
        if universe == 0 {
            return Err(Error::input("universe must be nonempty"));
        }
        let mut tables = vec![BTreeSet::new(); vocabulary.len()];
        for (name, tuples) in relations {
            let name = name.as_ref();
            let idx = vocabulary.index(name).ok_or_else(|| Error::input(format!("unknown symbol {name}")))?;
            let arity = vocabulary.symbols[idx].1;
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::input(format!("{name} has arity {arity}, got tuple {t:?}")));
                }
                if let Some(e) = t.iter().find(|&&e| e >= universe) {
                    return Err(Error::input(format!("element {e} outside universe of size {universe}")));
                }
                tables[idx].insert(t);
            }
        }
        Ok(Model { vocabulary, universe, relations: tables })
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocabulary
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<Vec<u32>>> {
        self.vocabulary.index(name).map(|i| &self.relations[i])
    }

    pub(crate) fn holds(&self, symbol: usize, tuple: &[u32]) -> bool {
        self.relations[symbol].contains(tuple)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<u32, u32>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn get(&self, var: u32) -> Option<u32> {
        self.0.get(&var).copied()
    }

    /// `α(a/j)`.
    pub fn with(&self, var: u32, element: u32) -> Assignment {
        let mut next = self.clone();
        next.0.insert(var, element);
        next
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&j, &a)| (j, a))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn range(&self) -> BTreeSet<u32> {
        self.0.values().copied().collect()
    }
}

impl FromIterator<(u32, u32)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    model: Arc<Model>,
    assignment: Assignment,
}

impl Structure {
    pub fn new(model: Arc<Model>, assignment: Assignment) -> Result<Self> {
        if let Some((j, a)) = assignment.iter().find(|&(_, a)| a >= model.universe) {
            return Err(Error::input(format!("x{j} -> {a} outside universe of size {}", model.universe)));
        }
        Ok(Structure { model, assignment })
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.model.vocabulary
    }

    fn extended(&self, var: u32, element: u32) -> Structure {
        Structure { model: Arc::clone(&self.model), assignment: self.assignment.with(var, element) }
    }
}

/// A finite list of structures sharing a vocabulary and an assignment domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    vocabulary: Arc<Vocabulary>,
    domain: BTreeSet<u32>,
    members: Vec<Structure>,
}

impl StructureClass {
    pub fn new(vocabulary: Arc<Vocabulary>, domain: BTreeSet<u32>, members: Vec<Structure>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if **m.vocabulary() != *vocabulary {
                return Err(Error::input(format!("member {i} has a different vocabulary")));
            }
            if !m.assignment.domain().eq(domain.iter().copied()) {
                return Err(Error::input(format!("member {i} has assignment domain other than {domain:?}")));
            }
        }
        Ok(StructureClass { vocabulary, domain, members })
    }

    /// Vocabulary and domain are taken from the first member.
    pub fn from_members(members: Vec<Structure>) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::input("a class needs at least one member"))?;
        let vocabulary = Arc::clone(first.vocabulary());
        let domain = first.assignment.domain().collect();
        StructureClass::new(vocabulary, domain, members)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocabulary
    }

    pub fn domain(&self) -> &BTreeSet<u32> {
        &self.domain
    }

    pub fn members(&self) -> &[Structure] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Structure> {
        self.members.iter()
    }

    /// Members at the given indices, in that order.
    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> StructureClass {
        StructureClass {
            vocabulary: Arc::clone(&self.vocabulary),
            domain: self.domain.clone(),
            members: indices.into_iter().map(|i| self.members[i].clone()).collect(),
        }
    }

    pub(crate) fn compatible(&self, other: &StructureClass) -> Result<()> {
        if self.vocabulary != other.vocabulary {
            return Err(Error::input("classes have different vocabularies"));
        }
        if self.domain != other.domain {
            return Err(Error::input(format!("class domains differ: {:?} vs {:?}", self.domain, other.domain)));
        }
        Ok(())
    }
}

/// One element of each member's universe, by member index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChoiceFunction(pub Vec<u32>);

/// `A(⋆/j)`: every member extended by every element of its universe.
pub fn extend_star(class: &StructureClass, var: u32) -> StructureClass {
    let members = class.members.iter().flat_map(|m| (0..m.model.universe).map(move |a| m.extended(var, a))).collect();
    let mut domain = class.domain.clone();
    domain.insert(var);
    StructureClass { vocabulary: Arc::clone(&class.vocabulary), domain, members }
}

/// `A(F/j)`: every member extended by the element `F` picks for it.
pub fn extend_choice(class: &StructureClass, choice: &ChoiceFunction, var: u32) -> Result<StructureClass> {
    if choice.0.len() != class.len() {
        return Err(Error::contract(format!(
            "choice function has {} values for a class of {} members",
            choice.0.len(),
            class.len()
        )));
    }
    let mut members = Vec::with_capacity(class.len());
    for (m, &a) in class.members.iter().zip(&choice.0) {
        if a >= m.model.universe {
            return Err(Error::contract(format!("choice {a} outside universe of size {}", m.model.universe)));
        }
        members.push(m.extended(var, a));
    }
    let mut domain = class.domain.clone();
    domain.insert(var);
    Ok(StructureClass { vocabulary: Arc::clone(&class.vocabulary), domain, members })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoFormula {
    Rel { symbol: String, args: Vec<u32> },
    Eq(u32, u32),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Exists(u32, Box<FoFormula>),
    Forall(u32, Box<FoFormula>),
}

impl FoFormula {
    pub fn rel(symbol: impl Into<String>, args: impl Into<Vec<u32>>) -> Self {
        FoFormula::Rel { symbol: symbol.into(), args: args.into() }
    }

    pub fn eq(a: u32, b: u32) -> Self {
        FoFormula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FoFormula) -> Self {
        FoFormula::Not(Box::new(f))
    }

    pub fn and(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(var: u32, f: FoFormula) -> Self {
        FoFormula::Exists(var, Box::new(f))
    }

    pub fn forall(var: u32, f: FoFormula) -> Self {
        FoFormula::Forall(var, Box::new(f))
    }

    pub fn and_all(items: impl IntoIterator<Item = FoFormula>) -> Option<Self> {
        items.into_iter().reduce(FoFormula::and)
    }

    pub fn or_all(items: impl IntoIterator<Item = FoFormula>) -> Option<Self> {
        items.into_iter().reduce(FoFormula::or)
    }

    /// Atoms plus quantifiers.
    pub fn size(&self) -> usize {
        match self {
            FoFormula::Rel { .. } | FoFormula::Eq(..) => 1,
            FoFormula::Not(f) => f.size(),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => a.size() + b.size(),
            FoFormula::Exists(_, f) | FoFormula::Forall(_, f) => f.size() + 1,
        }
    }

    pub fn quantifier_rank(&self) -> usize {
        match self {
            FoFormula::Rel { .. } | FoFormula::Eq(..) => 0,
            FoFormula::Not(f) => f.quantifier_rank(),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            FoFormula::Exists(_, f) | FoFormula::Forall(_, f) => f.quantifier_rank() + 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        match self {
            FoFormula::Rel { args, .. } => args.iter().copied().collect(),
            FoFormula::Eq(a, b) => [*a, *b].into(),
            FoFormula::Not(f) => f.free_vars(),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => &a.free_vars() | &b.free_vars(),
            FoFormula::Exists(j, f) | FoFormula::Forall(j, f) => {
                let mut vars = f.free_vars();
                vars.remove(j);
                vars
            }
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, FoFormula::Rel { .. } | FoFormula::Eq(..))
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            FoFormula::Rel { .. } | FoFormula::Eq(..) => true,
            FoFormula::Not(f) => f.is_atomic(),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => a.is_nnf() && b.is_nnf(),
            FoFormula::Exists(_, f) | FoFormula::Forall(_, f) => f.is_nnf(),
        }
    }

    /// Negations pushed onto atoms; size and truth are unchanged.
    pub fn to_nnf(&self) -> FoFormula {
        self.nnf(true)
    }

    fn nnf(&self, positive: bool) -> FoFormula {
        match (self, positive) {
            (FoFormula::Rel { .. } | FoFormula::Eq(..), true) => self.clone(),
            (FoFormula::Rel { .. } | FoFormula::Eq(..), false) => FoFormula::not(self.clone()),
            (FoFormula::Not(f), _) => f.nnf(!positive),
            (FoFormula::And(a, b), true) | (FoFormula::Or(a, b), false) => {
                FoFormula::and(a.nnf(positive), b.nnf(positive))
            }
            (FoFormula::Or(a, b), true) | (FoFormula::And(a, b), false) => {
                FoFormula::or(a.nnf(positive), b.nnf(positive))
            }
            (FoFormula::Exists(j, f), true) | (FoFormula::Forall(j, f), false) => {
                FoFormula::exists(*j, f.nnf(positive))
            }
            (FoFormula::Forall(j, f), true) | (FoFormula::Exists(j, f), false) => {
                FoFormula::forall(*j, f.nnf(positive))
            }
        }
    }

    /// No universal quantifier once negations are pushed to the atoms.
    pub fn is_existential(&self) -> bool {
        fn no_forall(f: &FoFormula) -> bool {
            match f {
                FoFormula::Rel { .. } | FoFormula::Eq(..) => true,
                FoFormula::Not(g) => no_forall(g),
                FoFormula::And(a, b) | FoFormula::Or(a, b) => no_forall(a) && no_forall(b),
                FoFormula::Exists(_, g) => no_forall(g),
                FoFormula::Forall(..) => false,
            }
        }
        no_forall(&self.to_nnf())
    }

    fn check_symbols(&self, vocabulary: &Vocabulary) -> Result<()> {
        match self {
            FoFormula::Rel { symbol, args } => match vocabulary.arity(symbol) {
                None => Err(Error::input(format!("symbol {symbol} is not in the vocabulary"))),
                Some(a) if a != args.len() => {
                    Err(Error::input(format!("{symbol} has arity {a}, applied to {} variables", args.len())))
                }
                Some(_) => Ok(()),
            },
            FoFormula::Eq(..) => Ok(()),
            FoFormula::Not(f) | FoFormula::Exists(_, f) | FoFormula::Forall(_, f) => f.check_symbols(vocabulary),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => {
                a.check_symbols(vocabulary)?;
                b.check_symbols(vocabulary)
            }
        }
    }

    fn eval_in(&self, model: &Model, env: &mut HashMap<u32, u32>) -> bool {
        match self {
            FoFormula::Rel { symbol, args } => {
                let idx = model.vocabulary.index(symbol).expect("symbols checked before evaluation");
                let tuple: Vec<u32> = args.iter().map(|j| env[j]).collect();
                model.holds(idx, &tuple)
            }
            FoFormula::Eq(a, b) => env[a] == env[b],
            FoFormula::Not(f) => !f.eval_in(model, env),
            FoFormula::And(a, b) => a.eval_in(model, env) && b.eval_in(model, env),
            FoFormula::Or(a, b) => a.eval_in(model, env) || b.eval_in(model, env),
            FoFormula::Exists(j, f) => quantify(*j, f, model, env, true),
            FoFormula::Forall(j, f) => quantify(*j, f, model, env, false),
        }
    }
}

fn quantify(var: u32, body: &FoFormula, model: &Model, env: &mut HashMap<u32, u32>, exists: bool) -> bool {
    let saved = env.get(&var).copied();
    let mut result = !exists;
    for a in 0..model.universe {
        env.insert(var, a);
        if body.eval_in(model, env) == exists {
            result = exists;
            break;
        }
    }
    match saved {
        Some(a) => env.insert(var, a),
        None => env.remove(&var),
    };
    result
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::Rel { symbol, args } if args.len() == 2 && !symbol.chars().any(char::is_alphanumeric) => {
                write!(f, "x{} {symbol} x{}", args[0], args[1])
            }
            FoFormula::Rel { symbol, args } => {
                let args: Vec<String> = args.iter().map(|j| format!("x{j}")).collect();
                write!(f, "{symbol}({})", args.join(", "))
            }
            FoFormula::Eq(a, b) => write!(f, "x{a} = x{b}"),
            FoFormula::Not(g) => match **g {
                FoFormula::Rel { ref args, ref symbol }
                    if args.len() == 2 && !symbol.chars().any(char::is_alphanumeric) =>
                {
                    write!(f, "!({g})")
                }
                FoFormula::Eq(..) => write!(f, "!({g})"),
                _ => write!(f, "!{g}"),
            },
            FoFormula::And(a, b) => write!(f, "({} & {})", Operand(a), Operand(b)),
            FoFormula::Or(a, b) => write!(f, "({} | {})", Operand(a), Operand(b)),
            FoFormula::Exists(j, g) => write!(f, "exists x{j}. {g}"),
            FoFormula::Forall(j, g) => write!(f, "forall x{j}. {g}"),
        }
    }
}

/// Quantified operands of a connective get their own parentheses.
struct Operand<'a>(&'a FoFormula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FoFormula::Exists(..) | FoFormula::Forall(..) => write!(f, "({})", self.0),
            g => write!(f, "{g}"),
        }
    }
}

/// Truth of `f` in a structure; every free variable must be assigned.
pub fn fo_eval(f: &FoFormula, structure: &Structure) -> Result<bool> {
    f.check_symbols(structure.vocabulary())?;
    if let Some(j) = f.free_vars().into_iter().find(|&j| structure.assignment.get(j).is_none()) {
        return Err(Error::contract(format!("x{j} is free in {f} but unassigned")));
    }
    let mut env: HashMap<u32, u32> = structure.assignment.iter().collect();
    Ok(f.eval_in(&structure.model, &mut env))
}

pub fn fo_separates(f: &FoFormula, a: &StructureClass, b: &StructureClass) -> Result<bool> {
    a.compatible(b)?;
    f.check_symbols(&a.vocabulary)?;
    if let Some(j) = f.free_vars().into_iter().find(|j| !a.domain.contains(j)) {
        return Err(Error::input(format!("x{j} is free in {f} but outside the class domain")));
    }
    for m in a.iter() {
        if !fo_eval(f, m)? {
            return Ok(false);
        }
    }
    for m in b.iter() {
        if fo_eval(f, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every atom over the vocabulary and the given variables: each symbol on
/// each tuple of variables, then each equality `x_j = x_k` with `j <= k`.
pub fn candidate_atoms(vocabulary: &Vocabulary, vars: &[u32]) -> Vec<FoFormula> {
    let mut atoms = Vec::new();
    for (name, arity) in vocabulary.symbols() {
        let total = vars.len().pow(*arity as u32);
        for mut code in 0..total {
            let mut args = vec![0; *arity];
            for slot in args.iter_mut().rev() {
                *slot = vars[code % vars.len()];
                code /= vars.len();
            }
            atoms.push(FoFormula::rel(name.clone(), args));
        }
    }
    for (i, &a) in vars.iter().enumerate() {
        for &b in &vars[i..] {
            atoms.push(FoFormula::eq(a, b));
        }
    }
    atoms
}

/// Atoms that hold throughout `A` and fail throughout `B` (polarity `true`),
/// or the reverse (polarity `false`, meaning the negated atom separates).
pub fn atomic_separators(a: &StructureClass, b: &StructureClass) -> Result<Vec<(FoFormula, bool)>> {
    a.compatible(b)?;
    let vars: Vec<u32> = a.domain.iter().copied().collect();
    let mut found = Vec::new();
    for atom in candidate_atoms(&a.vocabulary, &vars) {
        let on_a: Vec<bool> = a.iter().map(|m| fo_eval(&atom, m)).collect::<Result<_>>()?;
        let on_b: Vec<bool> = b.iter().map(|m| fo_eval(&atom, m)).collect::<Result<_>>()?;
        if on_a.iter().all(|&t| t) && on_b.iter().all(|&t| !t) {
            found.push((atom.clone(), true));
        }
        if on_a.iter().all(|&t| !t) && on_b.iter().all(|&t| t) {
            found.push((atom, false));
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StructureJson {
    vocabulary: Vec<(String, usize)>,
    universe: u32,
    #[serde(default)]
    relations: BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default)]
    assignment: BTreeMap<String, u32>,
}

impl Structure {
    pub fn from_json_value(value: serde_json::Value) -> Result<Structure> {
        let raw: StructureJson = serde_json::from_value(value).map_err(|e| Error::input(format!("structure: {e}")))?;
        let vocabulary = Arc::new(Vocabulary::new(raw.vocabulary)?);
        let model = Model::new(vocabulary, raw.universe, raw.relations)?;
        let mut assignment = Assignment::new();
        for (var, a) in raw.assignment {
            let j: u32 = var.parse().map_err(|_| Error::input(format!("variable key {var:?} is not a number")))?;
            assignment = assignment.with(j, a);
        }
        Structure::new(Arc::new(model), assignment)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let vocab = self.model.vocabulary.symbols.clone();
        let relations = vocab
            .iter()
            .zip(&self.model.relations)
            .map(|((name, _), tuples)| (name.clone(), tuples.iter().cloned().collect()))
            .collect();
        let raw = StructureJson {
            vocabulary: vocab,
            universe: self.model.universe,
            relations,
            assignment: self.assignment.iter().map(|(j, a)| (j.to_string(), a)).collect(),
        };
        serde_json::to_value(raw).expect("plain data serializes")
    }
}

impl StructureClass {
    /// A nonempty JSON array of structures. Members with equal vocabularies
    /// share one vocabulary value.
    pub fn from_json_str(text: &str) -> Result<StructureClass> {
        let values: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::input(format!("class: {e}")))?;
        let members = values.into_iter().map(Structure::from_json_value).collect::<Result<Vec<_>>>()?;
        let Some(first) = members.first() else {
            return Err(Error::input("a class file needs at least one structure"));
        };
        let vocabulary = Arc::clone(first.vocabulary());
        let members = members
            .into_iter()
            .map(|m| {
                if **m.vocabulary() == *vocabulary {
                    let model = Model { vocabulary: Arc::clone(&vocabulary), ..(*m.model).clone() };
                    Structure { model: Arc::new(model), assignment: m.assignment }
                } else {
                    m
                }
            })
            .collect();
        StructureClass::from_members(members)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(self.members.iter().map(Structure::to_json_value).collect())
    }
}
