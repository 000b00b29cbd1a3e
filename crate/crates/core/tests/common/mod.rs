//! Position generators and checks shared by the suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use efsize::{
    atomic_separators, extend_choice, extend_star, measure_m, measure_n, minsize, oracle_minsize, synthesize, winner,
    BitString, ChoiceFunction, DensityPair, FoFormula, MinResult, Model, Player, PropLimits, PropPosition, Rational,
    RuleMode, StringProperty, Structure, StructureClass, Vocabulary,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn property(width: u8, mask: u32) -> StringProperty {
    let members = (0..1u32 << width).filter(|v| mask >> v & 1 == 1).map(|v| BitString::new(width, v as u16).unwrap());
    StringProperty::new(width, members).unwrap()
}

/// Every pair of disjoint nonempty properties of the given width.
pub fn disjoint_pairs(width: u8) -> Vec<(StringProperty, StringProperty)> {
    let all = 1u32 << (1 << width);
    let mut out = Vec::new();
    for s in 1..all {
        for r in 1..all {
            if s & r == 0 {
                out.push((property(width, s), property(width, r)));
            }
        }
    }
    out
}

pub fn random_disjoint_pair(rng: &mut impl Rng, width: u8) -> (StringProperty, StringProperty) {
    let strings = 1u32 << width;
    loop {
        let (mut s, mut r) = (0u64, 0u64);
        for v in 0..strings {
            match rng.gen_range(0..3) {
                0 => s |= 1 << v,
                1 => r |= 1 << v,
                _ => {}
            }
        }
        if s != 0 && r != 0 {
            let pick = |mask: u64| {
                let members =
                    (0..strings).filter(|v| mask >> v & 1 == 1).map(|v| BitString::new(width, v as u16).unwrap());
                StringProperty::new(width, members).unwrap()
            };
            return (pick(s), pick(r));
        }
    }
}

/// A random split of a property into two nonempty blocks, if it has two members.
pub fn random_split(rng: &mut impl Rng, p: &StringProperty) -> Option<(StringProperty, StringProperty)> {
    if p.len() < 2 {
        return None;
    }
    let mut members: Vec<BitString> = p.iter().collect();
    members.shuffle(rng);
    let cut = rng.gen_range(1..members.len());
    Some((
        StringProperty::new(p.width(), members[..cut].iter().copied()).unwrap(),
        StringProperty::new(p.width(), members[cut..].iter().copied()).unwrap(),
    ))
}

pub fn subadditive(whole: &DensityPair, a: &DensityPair, b: &DensityPair) -> bool {
    a.product() + b.product() >= whole.product()
}

pub fn density_exceeds_one(d: &DensityPair) -> bool {
    d.s > Rational::from_integer(1) || d.r > Rational::from_integer(1)
}

/// Disagreements between the exact game, the reduced game and the oracle.
pub fn game_mismatches(pairs: &[(StringProperty, StringProperty)], max_rank: usize) -> Vec<String> {
    let limits = PropLimits::default();
    let mut out = Vec::new();
    for (s, r) in pairs {
        let MinResult::Size(truth) = oracle_minsize(s, r).unwrap() else { unreachable!("pairs are disjoint") };
        for w in 1..=max_rank {
            let pos = PropPosition::new(w, s.clone(), r.clone()).unwrap();
            let exact = winner(&pos, RuleMode::Exact, &limits).unwrap();
            let reduced = winner(&pos, RuleMode::Reduced, &limits).unwrap();
            if (exact == Player::I) != (truth <= w) || exact != reduced {
                out.push(format!("{s} vs {r} at rank {w}: exact {exact}, reduced {reduced}, oracle {truth}"));
            }
        }
    }
    out
}

/// Disagreements between the solver's minimum size and the oracle's.
pub fn oracle_mismatch(s: &StringProperty, r: &StringProperty) -> Option<String> {
    let solver = minsize(s, r, &PropLimits::default()).unwrap();
    let oracle = oracle_minsize(s, r).unwrap();
    (solver != oracle).then(|| format!("{s} vs {r}: solver {solver}, oracle {oracle}"))
}

/// Synthesis at every rank up to `max_rank` agrees with minsize and separates.
pub fn prop_synthesis_problem(s: &StringProperty, r: &StringProperty, max_rank: usize) -> Option<String> {
    let limits = PropLimits::default();
    let MinResult::Size(k) = minsize(s, r, &limits).unwrap() else { return None };
    for w in 1..=max_rank {
        match synthesize(s, r, w, &limits).unwrap() {
            Some(f) if w < k => return Some(format!("{s} vs {r}: {f} found below the minimum {k}")),
            Some(f) if f.size() > w || !f.separates(s, r).unwrap() => {
                return Some(format!("{s} vs {r} at rank {w}: {f} is unsound"))
            }
            None if w >= k => return Some(format!("{s} vs {r} at rank {w}: nothing synthesized")),
            _ => {}
        }
    }
    None
}

pub fn unary_vocabulary() -> Arc<Vocabulary> {
    Arc::new(Vocabulary::new([("P1", 1)]).unwrap())
}

/// Every model over `P1` with at most `max_universe` elements.
pub fn unary_models(max_universe: u32) -> Vec<Arc<Model>> {
    let vocabulary = unary_vocabulary();
    let mut out = Vec::new();
    for size in 1..=max_universe {
        for mask in 0..1u32 << size {
            let tuples = (0..size).filter(|e| mask >> e & 1 == 1).map(|e| vec![e]).collect();
            out.push(Arc::new(Model::new(Arc::clone(&vocabulary), size, [("P1", tuples)]).unwrap()));
        }
    }
    out
}

/// Every structure over the models with the given variables assigned.
pub fn structures(models: &[Arc<Model>], vars: &[u32]) -> Vec<Structure> {
    let mut out = Vec::new();
    for m in models {
        let size = m.universe();
        let count = size.pow(vars.len() as u32);
        for mut code in 0..count {
            let mut assignment = Vec::new();
            for &v in vars {
                assignment.push((v, code % size));
                code /= size;
            }
            out.push(Structure::new(Arc::clone(m), assignment.into_iter().collect()).unwrap());
        }
    }
    out
}

/// Classes of one or two distinct members.
pub fn small_classes(pool: &[Structure]) -> Vec<StructureClass> {
    let mut out = Vec::new();
    for i in 0..pool.len() {
        out.push(StructureClass::from_members(vec![pool[i].clone()]).unwrap());
        for j in i + 1..pool.len() {
            out.push(StructureClass::from_members(vec![pool[i].clone(), pool[j].clone()]).unwrap());
        }
    }
    out
}

pub fn fresh_var(class: &StructureClass) -> u32 {
    (0..).find(|j| !class.domain().contains(j)).unwrap()
}

/// Every left supplementing step from a singleton left class with a fresh variable.
pub fn left_supplements(
    a: &StructureClass,
    b: &StructureClass,
) -> Vec<(ChoiceFunction, StructureClass, StructureClass)> {
    let j = fresh_var(a);
    let universe = a.members()[0].model().universe();
    let b_next = extend_star(b, j);
    (0..universe)
        .map(|e| {
            let choice = ChoiceFunction(vec![e]);
            let a_next = extend_choice(a, &choice, j).unwrap();
            (choice, a_next, b_next.clone())
        })
        .collect()
}

/// The root and every position reached from it by up to `depth` left supplementing steps.
pub fn reachable(a: &StructureClass, b: &StructureClass, depth: usize) -> Vec<(StructureClass, StructureClass)> {
    let mut frontier = vec![(a.clone(), b.clone())];
    let mut all = frontier.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (a, b) in &frontier {
            next.extend(left_supplements(a, b).into_iter().map(|(_, a, b)| (a, b)));
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// A random split of the right class into two blocks (either may be empty).
pub fn random_partition(rng: &mut impl Rng, b: &StructureClass) -> (StructureClass, StructureClass) {
    let (mut c, mut d) = (Vec::new(), Vec::new());
    for i in 0..b.len() {
        if rng.gen_bool(0.5) {
            c.push(i)
        } else {
            d.push(i)
        }
    }
    (b.select(c), b.select(d))
}

/// A random subclass of the right class, nonempty when the class is.
pub fn random_subclass(rng: &mut impl Rng, b: &StructureClass) -> StructureClass {
    let mut keep: Vec<usize> = (0..b.len()).filter(|_| rng.gen_bool(0.5)).collect();
    if keep.is_empty() && !b.is_empty() {
        keep.push(rng.gen_range(0..b.len()));
    }
    b.select(keep)
}

pub enum Measure {
    M,
    N,
}

impl Measure {
    pub fn of(&self, a: &StructureClass, b: &StructureClass) -> u64 {
        match self {
            Measure::M => measure_m(a, b).unwrap(),
            Measure::N => measure_n(a, b).unwrap(),
        }
    }
}

/// Positions with a measure above one that an atom or negated atom separates.
pub fn soundness_violations(measure: &Measure, positions: &[(StructureClass, StructureClass)]) -> Vec<String> {
    positions
        .iter()
        .filter_map(|(a, b)| {
            let value = measure.of(a, b);
            let atoms = atomic_separators(a, b).unwrap();
            (value > 1 && !atoms.is_empty())
                .then(|| format!("measure {value} but {} separates (domain {:?})", atoms[0].0, a.domain()))
        })
        .collect()
}

/// Random right-class partitions where the parts measure less than the whole.
pub fn split_violations(
    rng: &mut impl Rng,
    measure: &Measure,
    positions: &[(StructureClass, StructureClass)],
    trials: usize,
) -> Vec<String> {
    let mut out = Vec::new();
    for (a, b) in positions {
        for _ in 0..trials {
            let (c, d) = random_partition(rng, b);
            let (whole, left, right) = (measure.of(a, b), measure.of(a, &c), measure.of(a, &d));
            if left + right < whole {
                out.push(format!("parts {left} + {right} < {whole} (domain {:?})", a.domain()));
            }
        }
    }
    out
}

/// Left supplementing steps after which the measure drops by more than one.
pub fn supplement_violations(measure: &Measure, positions: &[(StructureClass, StructureClass)]) -> Vec<String> {
    let mut out = Vec::new();
    for (a, b) in positions {
        let before = measure.of(a, b);
        for (choice, a_next, b_next) in left_supplements(a, b) {
            let after = measure.of(&a_next, &b_next);
            if after + 1 < before {
                out.push(format!(
                    "choosing {:?} at domain {:?}: {before} -> {after}",
                    choice.0,
                    a.domain().iter().collect::<BTreeSet<_>>()
                ));
            }
        }
    }
    out
}

pub fn log2_ceil(x: u32) -> u32 {
    if x <= 1 {
        0
    } else {
        32 - (x - 1).leading_zeros()
    }
}

pub fn separates_all(f: &FoFormula, a: &StructureClass, b: &StructureClass) -> bool {
    efsize::fo_separates(f, a, b).unwrap()
}
