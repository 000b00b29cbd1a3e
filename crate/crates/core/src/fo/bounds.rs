//! The two first-order lower-bound families and their sentences.
//!
//! Boolean combinations: over unary `P1..Pn`, the structure `A` has one
//! element `a_r` per combination `r`, while `B_s` has two elements `b_r`,
//! `c_r` for every `r != s` and none for `s`. Element `a_r` is the packed
//! value of `r`; in `B_s` the combinations other than `s` are listed in
//! increasing order and the `k`-th one owns `b_r = 2k` and `c_r = 2k + 1`.
//!
//! Linear orders: `A` has `n` elements, `B` has `n - 1`, with `<` the usual
//! order on `0..k`. Segment lengths are measured from a virtual element just
//! below the least one up to each marked element and on to the largest one,
//! so the empty assignment has a single segment of length `k` in a
//! `k`-element order.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{Assignment, FoFormula, Model, Structure, StructureClass, Vocabulary};
use crate::error::{Error, Result};
use crate::prop::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoolCombClassification {
    Flawless,
    GoodEnough(BitString),
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinClassification {
    Nice { defect_index: usize, delta: u32 },
    AcceptableOnly,
    Other,
}

pub fn boolcomb_vocabulary(n: u8) -> Arc<Vocabulary> {
    Arc::new(Vocabulary::new((1..=n).map(|i| (format!("P{i}"), 1))).expect("distinct names"))
}

/// `A`: one element per combination.
pub fn boolcomb_model_a(n: u8) -> Arc<Model> {
    let strings: Vec<BitString> = BitString::all(n).expect("width in range").collect();
    let relations = (1..=n).map(|i| {
        let members = strings.iter().filter(|r| r.get(i)).map(|r| vec![r.value() as u32]).collect();
        (format!("P{i}"), members)
    });
    Arc::new(Model::new(boolcomb_vocabulary(n), 1 << n, relations).expect("well-formed"))
}

/// `B_s`: two elements per combination other than `s`.
pub fn boolcomb_model_b(s: BitString) -> Arc<Model> {
    let n = s.width();
    let others: Vec<BitString> = BitString::all(n).expect("width in range").filter(|&r| r != s).collect();
    let relations = (1..=n).map(|i| {
        let members = others
            .iter()
            .enumerate()
            .filter(|(_, r)| r.get(i))
            .flat_map(|(k, _)| [vec![2 * k as u32], vec![2 * k as u32 + 1]])
            .collect();
        (format!("P{i}"), members)
    });
    Arc::new(Model::new(boolcomb_vocabulary(n), 2 * others.len() as u32, relations).expect("well-formed"))
}

/// Combination and `c`-flag of an element of `B_s`.
fn decode_b(s: BitString, element: u32) -> (BitString, bool) {
    let k = element / 2;
    let value = if k < s.value() as u32 { k } else { k + 1 };
    (BitString::new(s.width(), value as u16).expect("fits the width"), element % 2 == 1)
}

/// Element `b_r` of `B_s` for `r != s`; `c_r` is the next element.
pub fn boolcomb_b_element(s: BitString, r: BitString) -> u32 {
    debug_assert_ne!(r, s);
    let k = if r.value() < s.value() { r.value() } else { r.value() - 1 };
    2 * k as u32
}

fn boolcomb_family(n: u8) -> (StructureClass, StructureClass) {
    let a = Structure::new(boolcomb_model_a(n), Assignment::new()).expect("valid");
    let bs = BitString::all(n)
        .expect("width in range")
        .map(|s| Structure::new(boolcomb_model_b(s), Assignment::new()).expect("valid"))
        .collect();
    let vocab = boolcomb_vocabulary(n);
    (
        StructureClass::new(Arc::clone(&vocab), BTreeSet::new(), vec![a]).expect("valid"),
        StructureClass::new(vocab, BTreeSet::new(), bs).expect("valid"),
    )
}

pub fn boolcomb_instances(n: u8) -> Result<(StructureClass, StructureClass)> {
    if !(1..=3).contains(&n) {
        return Err(Error::input(format!("boolean-combination instances need 1 <= n <= 3, got {n}")));
    }
    Ok(boolcomb_family(n))
}

/// The combination `s` with `member`'s model equal to `B_s`, if any.
fn boolcomb_index(member: &Structure, n: u8) -> Option<BitString> {
    let model = member.model();
    if model.vocabulary().len() != n as usize || model.universe() != 2 * ((1u32 << n) - 1) {
        return None;
    }
    let s = BitString::all(n).ok()?.find(|&s| !has_combination(model, s))?;
    (**model == *boolcomb_model_b(s)).then_some(s)
}

fn has_combination(model: &Model, r: BitString) -> bool {
    (0..model.universe()).any(|e| {
        (1..=r.width()).all(|i| {
            let name = format!("P{i}");
            model.relation(&name).is_some_and(|rel| rel.contains(&vec![e])) == r.get(i)
        })
    })
}

/// Flawless: every variable sent to `a_r` goes to `b_r`, and `a_s` is not
/// hit. Good enough: the same off `s`, while the variables at `a_s` all go
/// to `c_t` for one `t` adjacent to `s`.
pub fn classify_boolcomb(member: &Structure, s: BitString, alpha: &Assignment) -> Result<BoolCombClassification> {
    let beta = member.assignment();
    if !beta.domain().eq(alpha.domain()) {
        return Err(Error::input("assignments have different domains"));
    }
    if boolcomb_index(member, s.width()) != Some(s) {
        return Err(Error::input(format!("member is not the structure B_{s}")));
    }
    classify_in(member, s, alpha)
}

fn classify_in(member: &Structure, s: BitString, alpha: &Assignment) -> Result<BoolCombClassification> {
    let beta = member.assignment();
    let n = s.width();
    let mut hits_s = false;
    let mut witness: Option<BitString> = None;
    let mut consistent = true;
    for (j, a) in alpha.iter() {
        let r = BitString::new(n, a as u16)?;
        let b = beta.get(j).expect("domains agree");
        let (target, is_c) = decode_b(s, b);
        if r != s {
            consistent &= !is_c && target == r;
        } else {
            hits_s = true;
            if !is_c || witness.is_some_and(|t| t != target) {
                consistent = false;
            }
            witness = Some(target);
        }
    }
    Ok(match (consistent, hits_s, witness) {
        (true, false, _) => BoolCombClassification::Flawless,
        (true, true, Some(t)) if s.hamming(t) == 1 => BoolCombClassification::GoodEnough(t),
        _ => BoolCombClassification::Other,
    })
}

fn singleton(a: &StructureClass) -> Result<&Structure> {
    match a.members() {
        [only] => Ok(only),
        other => Err(Error::input(format!("the left class must be a singleton, got {} members", other.len()))),
    }
}

/// `(n + 1)` per flawless member plus one per good-enough member.
pub fn measure_m(a: &StructureClass, b: &StructureClass) -> Result<u64> {
    let alpha = singleton(a)?.assignment();
    let n = a.vocabulary().len() as u8;
    let mut total = 0;
    if b.iter().any(|m| !m.assignment().domain().eq(alpha.domain())) {
        return Err(Error::input("assignments have different domains"));
    }
    let mut index: HashMap<&Model, Option<BitString>> = HashMap::new();
    let members: BTreeSet<&Structure> = b.iter().collect();
    for member in members {
        let found = *index.entry(member.model().as_ref()).or_insert_with(|| boolcomb_index(member, n));
        let Some(s) = found else { continue };
        total += match classify_in(member, s, alpha)? {
            BoolCombClassification::Flawless => n as u64 + 1,
            BoolCombClassification::GoodEnough(_) => 1,
            BoolCombClassification::Other => 0,
        };
    }
    Ok(total)
}

fn check_sentence_n(n: u8, hi: u8) -> Result<()> {
    if (1..=hi).contains(&n) {
        Ok(())
    } else {
        Err(Error::input(format!("sentence parameter must satisfy 1 <= n <= {hi}, got {n}")))
    }
}

fn p(i: u8, var: u32) -> FoFormula {
    FoFormula::rel(format!("P{i}"), [var])
}

fn negate(f: FoFormula) -> FoFormula {
    match f {
        FoFormula::Not(g) => *g,
        g => FoFormula::not(g),
    }
}

/// `a <-> b` written as `(a & b) | (!a & !b)`.
fn iff(a: FoFormula, b: FoFormula) -> FoFormula {
    FoFormula::or(FoFormula::and(a.clone(), b.clone()), FoFormula::and(negate(a), negate(b)))
}

/// One existential block per combination.
pub fn boolcomb_existential_sentence(n: u8) -> Result<FoFormula> {
    check_sentence_n(n, 4)?;
    let blocks = BitString::all(n)?.map(|r| {
        let body = FoFormula::and_all((1..=n).map(|i| if r.get(i) { p(i, 0) } else { FoFormula::not(p(i, 0)) }));
        FoFormula::exists(0, body.expect("n >= 1"))
    });
    Ok(FoFormula::and_all(blocks).expect("at least one combination"))
}

/// Closure of the realized combinations under a cyclic shift and under
/// flipping the first predicate.
pub fn boolcomb_alternating_sentence(n: u8) -> Result<FoFormula> {
    check_sentence_n(n, 4)?;
    let shift = FoFormula::and_all((1..=n).map(|i| iff(p(i, 0), p(i % n + 1, 1)))).expect("n >= 1");
    let flip =
        FoFormula::and_all((2..=n).map(|i| iff(p(i, 0), p(i, 1))).chain([iff(p(1, 0), FoFormula::not(p(1, 1)))]))
            .expect("nonempty");
    Ok(FoFormula::and(
        FoFormula::forall(0, FoFormula::exists(1, shift)),
        FoFormula::forall(0, FoFormula::exists(1, flip)),
    ))
}

pub fn order_vocabulary() -> Arc<Vocabulary> {
    Arc::new(Vocabulary::new([("<", 2)]).expect("one symbol"))
}

pub fn linear_order(k: u32) -> Result<Arc<Model>> {
    let tuples = (0..k).flat_map(|a| (a + 1..k).map(move |b| vec![a, b])).collect();
    Ok(Arc::new(Model::new(order_vocabulary(), k, [("<", tuples)])?))
}

fn check_order_n(n: u8) -> Result<()> {
    if (2..=8).contains(&n) {
        Ok(())
    } else {
        Err(Error::input(format!("linear-order parameter must satisfy 2 <= n <= 8, got {n}")))
    }
}

/// An `n`-element order against an `(n - 1)`-element one.
pub fn linorder_instances(n: u8) -> Result<(StructureClass, StructureClass)> {
    check_order_n(n)?;
    let a = Structure::new(linear_order(n as u32)?, Assignment::new())?;
    let b = Structure::new(linear_order(n as u32 - 1)?, Assignment::new())?;
    Ok((StructureClass::from_members(vec![a])?, StructureClass::from_members(vec![b])?))
}

/// Position of each element in the order, i.e. the number of elements below it.
fn positions(model: &Model) -> Result<Vec<u32>> {
    let less = model.relation("<").ok_or_else(|| Error::input("structure has no < relation"))?;
    let mut below = vec![0u32; model.universe() as usize];
    for t in less {
        below[t[1] as usize] += 1;
    }
    Ok(below)
}

/// Segment lengths from the virtual bottom through the marked positions to
/// the top element.
fn segments(marked: &[u32], size: u32) -> Vec<i64> {
    let mut bounds = vec![-1i64];
    bounds.extend(marked.iter().map(|&p| p as i64));
    bounds.push(size as i64 - 1);
    bounds.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Acceptable: `α(j) ↦ β(j)` is a well-defined map that preserves `<=`.
/// Nice: acceptable with exactly one segment whose length differs.
pub fn classify_linorder(a_member: &Structure, member: &Structure) -> Result<LinClassification> {
    let (alpha, beta) = (a_member.assignment(), member.assignment());
    if !beta.domain().eq(alpha.domain()) {
        return Err(Error::input("assignments have different domains"));
    }
    let (pa, pb) = (positions(a_member.model())?, positions(member.model())?);
    // Marked A-positions in increasing order, each with its B-position.
    let mut image: Vec<(u32, u32)> = Vec::new();
    for (j, a) in alpha.iter() {
        let (x, y) = (pa[a as usize], pb[beta.get(j).expect("domains agree") as usize]);
        match image.binary_search_by_key(&x, |&(x, _)| x) {
            Ok(i) if image[i].1 != y => return Ok(LinClassification::Other),
            Ok(_) => {}
            Err(i) => image.insert(i, (x, y)),
        }
    }
    if image.windows(2).any(|w| w[0].1 > w[1].1) {
        return Ok(LinClassification::Other);
    }
    let da = segments(&image.iter().map(|&(x, _)| x).collect::<Vec<_>>(), a_member.model().universe());
    let db = segments(&image.iter().map(|&(_, y)| y).collect::<Vec<_>>(), member.model().universe());
    let defects: Vec<usize> = (0..da.len()).filter(|&i| da[i] != db[i]).collect();
    Ok(match defects[..] {
        [i] => LinClassification::Nice { defect_index: i, delta: db[i] as u32 },
        _ => LinClassification::AcceptableOnly,
    })
}

/// Sum of `2δ + 1` over the distinct nice members.
pub fn measure_n(a: &StructureClass, b: &StructureClass) -> Result<u64> {
    let left = singleton(a)?;
    let members: BTreeSet<&Structure> = b.iter().collect();
    let mut total = 0;
    for member in members {
        if let LinClassification::Nice { delta, .. } = classify_linorder(left, member)? {
            total += 2 * delta as u64 + 1;
        }
    }
    Ok(total)
}

fn less(a: u32, b: u32) -> FoFormula {
    FoFormula::rel("<", [a, b])
}

/// `∃x0 … ∃x(n-1) (x0 < x1 ∧ … ∧ x(n-2) < x(n-1))`.
pub fn linorder_existential_sentence(n: u8) -> Result<FoFormula> {
    check_order_n(n)?;
    let n = n as u32;
    let chain = (2..n).fold(less(0, 1), |acc, k| FoFormula::and(acc, less(k - 1, k)));
    Ok((0..n).rev().fold(chain, |body, j| FoFormula::exists(j, body)))
}

/// `∃x ∃y θ_n(x, y)` where `θ_k` halves the interval through a midpoint.
pub fn linorder_log_sentence(n: u8) -> Result<FoFormula> {
    check_order_n(n)?;
    let mut next = 2;
    let body = theta(n as u32, 0, 1, &mut next);
    Ok(FoFormula::exists(0, FoFormula::exists(1, body)))
}

/// At least `k` elements in `[x, y]`.
fn theta(k: u32, x: u32, y: u32, next: &mut u32) -> FoFormula {
    if k == 2 {
        return less(x, y);
    }
    let z = *next;
    *next += 1;
    let (l, m) = (k / 2 + 1, k.div_ceil(2));
    let left = theta(l, x, z, next);
    let right = theta(m, z, y, next);
    FoFormula::exists(z, FoFormula::and(left, right))
}

#[cfg(test)]
mod tests {
    use super::super::{extend_choice, extend_star, fo_eval, fo_separates, ChoiceFunction};
    use super::*;

    fn bits(text: &str) -> BitString {
        text.parse().unwrap()
    }

    #[test]
    fn boolcomb_shapes() {
        let (a, b) = boolcomb_instances(1).unwrap();
        assert_eq!(a.members()[0].model().universe(), 2);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|m| m.model().universe() == 2));
        let (_, b) = boolcomb_instances(2).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|m| m.model().universe() == 6));
        assert!(boolcomb_instances(0).is_err() && boolcomb_instances(4).is_err());
    }

    #[test]
    fn element_layout() {
        let s = bits("01");
        for (element, (r, c)) in [(0, ("00", false)), (1, ("00", true)), (2, ("10", false)), (5, ("11", true))] {
            assert_eq!(decode_b(s, element), (bits(r), c));
        }
        assert_eq!(boolcomb_b_element(s, bits("11")), 4);
        let model = boolcomb_model_b(s);
        assert!(model.relation("P1").unwrap().contains(&vec![2]));
        assert!(!model.relation("P2").unwrap().contains(&vec![2]));
    }

    #[test]
    fn measure_m_at_the_root() {
        for (n, expected) in [(1, 4), (2, 12), (3, 32)] {
            let (a, b) = boolcomb_instances(n).unwrap();
            assert_eq!(measure_m(&a, &b).unwrap(), expected);
        }
        let (a, _) = boolcomb_instances(1).unwrap();
        let two = StructureClass::from_members(vec![a.members()[0].clone(), a.members()[0].clone()]).unwrap();
        assert!(matches!(measure_m(&two, &two), Err(Error::Input(_))));
    }

    #[test]
    fn boolcomb_classification_examples() {
        let s1 = bits("1");
        let b1 = Structure::new(boolcomb_model_b(s1), Assignment::new()).unwrap();
        assert_eq!(classify_boolcomb(&b1, s1, &Assignment::new()).unwrap(), BoolCombClassification::Flawless);

        // α = {x0 ↦ a_1}; in B_1 the only combination is 0, so c_0 = 1.
        let alpha: Assignment = [(0, 1)].into_iter().collect();
        let good = Structure::new(boolcomb_model_b(s1), [(0, 1)].into_iter().collect()).unwrap();
        assert_eq!(classify_boolcomb(&good, s1, &alpha).unwrap(), BoolCombClassification::GoodEnough(bits("0")));
        let bad = Structure::new(boolcomb_model_b(s1), [(0, 0)].into_iter().collect()).unwrap();
        assert_eq!(classify_boolcomb(&bad, s1, &alpha).unwrap(), BoolCombClassification::Other);

        // In B_0, α(x0) = a_1 must go to b_1 = 0; c_1 = 1 breaks both conditions.
        let s0 = bits("0");
        let other = Structure::new(boolcomb_model_b(s0), [(0, 1)].into_iter().collect()).unwrap();
        assert_eq!(classify_boolcomb(&other, s0, &alpha).unwrap(), BoolCombClassification::Other);
        let flawless = Structure::new(boolcomb_model_b(s0), [(0, 0)].into_iter().collect()).unwrap();
        assert_eq!(classify_boolcomb(&flawless, s0, &alpha).unwrap(), BoolCombClassification::Flawless);

        assert!(matches!(classify_boolcomb(&b1, s1, &alpha), Err(Error::Input(_))));
        assert!(matches!(classify_boolcomb(&b1, s0, &Assignment::new()), Err(Error::Input(_))));
    }

    #[test]
    fn good_enough_needs_an_adjacent_witness() {
        // n = 2, s = 00, α = {x0 ↦ a_00}; c_11 is at distance 2 from s.
        let s = bits("00");
        let alpha: Assignment = [(0, 0)].into_iter().collect();
        let c = |r: &str| boolcomb_b_element(s, bits(r)) + 1;
        let near = Structure::new(boolcomb_model_b(s), [(0, c("01"))].into_iter().collect()).unwrap();
        let far = Structure::new(boolcomb_model_b(s), [(0, c("11"))].into_iter().collect()).unwrap();
        assert_eq!(classify_boolcomb(&near, s, &alpha).unwrap(), BoolCombClassification::GoodEnough(bits("01")));
        assert_eq!(classify_boolcomb(&far, s, &alpha).unwrap(), BoolCombClassification::Other);
    }

    #[test]
    fn measure_m_after_a_move() {
        // Choosing a_r on A turns the flawless B_r into n good-enough structures.
        let (a, b) = boolcomb_instances(2).unwrap();
        let a1 = extend_choice(&a, &ChoiceFunction(vec![3]), 0).unwrap();
        let b1 = extend_star(&b, 0);
        assert_eq!(measure_m(&a1, &b1).unwrap(), 12 - 1);
    }

    #[test]
    fn boolcomb_sentences() {
        for n in 1..=4u8 {
            let (a, b) = boolcomb_family(n);
            let ex = boolcomb_existential_sentence(n).unwrap();
            assert_eq!(ex.size(), (n as usize + 1) << n);
            assert!(ex.is_existential());
            assert!(fo_separates(&ex, &a, &b).unwrap(), "existential n = {n}");
            let alt = boolcomb_alternating_sentence(n).unwrap();
            assert_eq!(alt.size(), 8 * n as usize + 4);
            assert!(!alt.is_existential());
            assert!(fo_separates(&alt, &a, &b).unwrap(), "alternating n = {n}");
        }
        assert_eq!(
            boolcomb_existential_sentence(1).unwrap().to_string(),
            "((exists x0. !P1(x0)) & (exists x0. P1(x0)))"
        );
        assert!(boolcomb_existential_sentence(5).is_err());
    }

    #[test]
    fn linorder_shapes_and_measure() {
        let (a, b) = linorder_instances(2).unwrap();
        assert_eq!((a.members()[0].model().universe(), b.members()[0].model().universe()), (2, 1));
        for n in 2..=8u8 {
            let (a, b) = linorder_instances(n).unwrap();
            assert_eq!(measure_n(&a, &b).unwrap(), 2 * n as u64 - 1);
            let root = classify_linorder(&a.members()[0], &b.members()[0]).unwrap();
            assert_eq!(root, LinClassification::Nice { defect_index: 0, delta: n as u32 - 1 });
        }
        assert!(linorder_instances(1).is_err() && linorder_instances(9).is_err());
    }

    #[test]
    fn linorder_classification_examples() {
        let (a3, b2) = (linear_order(3).unwrap(), linear_order(2).unwrap());
        let st = |m: &Arc<Model>, pairs: &[(u32, u32)]| {
            Structure::new(Arc::clone(m), pairs.iter().copied().collect()).unwrap()
        };
        // Middle of three against first of two: segments (2, 1) vs (1, 1).
        let c = classify_linorder(&st(&a3, &[(0, 1)]), &st(&b2, &[(0, 0)])).unwrap();
        assert_eq!(c, LinClassification::Nice { defect_index: 0, delta: 1 });
        // Middle against second: (2, 1) vs (2, 0).
        let c = classify_linorder(&st(&a3, &[(0, 1)]), &st(&b2, &[(0, 1)])).unwrap();
        assert_eq!(c, LinClassification::Nice { defect_index: 1, delta: 0 });
        let reversed = classify_linorder(&st(&a3, &[(0, 0), (1, 2)]), &st(&b2, &[(0, 1), (1, 0)])).unwrap();
        assert_eq!(reversed, LinClassification::Other);
        let split = classify_linorder(&st(&a3, &[(0, 0), (1, 0)]), &st(&b2, &[(0, 0), (1, 1)])).unwrap();
        assert_eq!(split, LinClassification::Other);
        // First and last of three against both of two: (1, 2, 0) vs (1, 1, 0).
        let c = classify_linorder(&st(&a3, &[(0, 0), (1, 2)]), &st(&b2, &[(0, 0), (1, 1)])).unwrap();
        assert_eq!(c, LinClassification::Nice { defect_index: 1, delta: 1 });
        // Same as the source: no defect at all.
        let same = classify_linorder(&st(&a3, &[(0, 0)]), &st(&a3, &[(0, 0)])).unwrap();
        assert_eq!(same, LinClassification::AcceptableOnly);
        assert!(classify_linorder(&st(&a3, &[(0, 0)]), &st(&b2, &[])).is_err());
    }

    #[test]
    fn linorder_sentences() {
        for n in 2..=8u8 {
            let (a, b) = linorder_instances(n).unwrap();
            let psi = linorder_existential_sentence(n).unwrap();
            assert_eq!(psi.size(), 2 * n as usize - 1);
            assert!(psi.is_existential());
            assert!(fo_separates(&psi, &a, &b).unwrap());
            let phi = linorder_log_sentence(n).unwrap();
            assert!(fo_separates(&phi, &a, &b).unwrap(), "n = {n}");
            assert!(phi.free_vars().is_empty());
            // The recursion adds one quantifier per halving of n - 1.
            let halvings = (n as u32 - 1).next_power_of_two().trailing_zeros() as usize;
            assert_eq!(phi.quantifier_rank(), halvings + 2, "n = {n}");
        }
        assert_eq!(linorder_existential_sentence(2).unwrap().to_string(), "exists x0. exists x1. x0 < x1");
        assert_eq!(
            linorder_existential_sentence(3).unwrap().to_string(),
            "exists x0. exists x1. exists x2. (x0 < x1 & x1 < x2)"
        );
    }

    #[test]
    fn theta_counts_interval_elements() {
        for k in 2..=8u32 {
            let mut next = 2;
            let t = theta(k, 0, 1, &mut next);
            let order = linear_order(9).unwrap();
            for x in 0..9 {
                for y in 0..9 {
                    let st = Structure::new(Arc::clone(&order), [(0, x), (1, y)].into_iter().collect()).unwrap();
                    let expected = y >= x && y - x + 1 >= k;
                    assert_eq!(fo_eval(&t, &st).unwrap(), expected, "k = {k}, [{x}, {y}]");
                }
            }
        }
    }
}
