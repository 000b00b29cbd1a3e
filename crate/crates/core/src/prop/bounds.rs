//! Density certificates and the parity constructions.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{BitString, Literal, PropFormula, StringProperty};
use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// `s = |E| / |S|` and `r = |E| / |R|`, where `E` collects the cross pairs at
/// Hamming distance one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityPair {
    pub s: Rational,
    pub r: Rational,
    pub edge_count: u64,
}

impl DensityPair {
    pub fn product(&self) -> Rational {
        self.s * self.r
    }

    /// Least integer not below `s * r`.
    pub fn bound(&self) -> u64 {
        self.product().ceil().to_integer() as u64
    }
}

impl fmt::Display for DensityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}), |E| = {}", self.s, self.r, self.edge_count)
    }
}

impl Serialize for DensityPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            s: String,
            r: String,
            edge_count: u64,
            bound: u64,
        }
        Json { s: self.s.to_string(), r: self.r.to_string(), edge_count: self.edge_count, bound: self.bound() }
            .serialize(serializer)
    }
}

pub fn density(s: &StringProperty, r: &StringProperty) -> Result<DensityPair> {
    if s.width() != r.width() {
        return Err(Error::input(format!("property widths differ: {} vs {}", s.width(), r.width())));
    }
    if s.is_empty() || r.is_empty() {
        return Err(Error::input("density needs both sides nonempty"));
    }
    if !s.is_disjoint(r) {
        return Err(Error::input("density needs disjoint sides"));
    }
    let edges = s.iter().map(|x| (1..=x.width()).filter(|&i| r.contains(x.flip(i))).count() as u64).sum::<u64>();
    let e = edges as i128;
    Ok(DensityPair { s: Rational::new(e, s.len() as i128), r: Rational::new(e, r.len() as i128), edge_count: edges })
}

pub fn density_lower_bound(s: &StringProperty, r: &StringProperty) -> Result<u64> {
    let d = density(s, r)?;
    debug_assert!(!d.s.is_zero() || d.bound() == 0);
    Ok(d.bound())
}

/// Even-weight strings against odd-weight strings.
pub fn parity_property(n: u8) -> Result<(StringProperty, StringProperty)> {
    if !(1..=super::MAX_WIDTH).contains(&n) {
        return Err(Error::input(format!("parity width {n} outside 1..=16")));
    }
    let (even, odd): (Vec<BitString>, Vec<BitString>) = BitString::all(n)?.partition(|s| s.weight() % 2 == 0);
    Ok((StringProperty::new(n, even)?, StringProperty::new(n, odd)?))
}

fn check_construction_width(n: u8) -> Result<()> {
    if (1..=10).contains(&n) {
        Ok(())
    } else {
        Err(Error::input(format!("construction width {n} outside 1..=10")))
    }
}

/// One full conjunction of literals per even-weight string.
pub fn parity_dnf(n: u8) -> Result<PropFormula> {
    check_construction_width(n)?;
    let (even, _) = parity_property(n)?;
    let terms = even.iter().collect::<Vec<_>>().into_iter().rev().map(|a| {
        PropFormula::and_all((1..=n).map(|var| Literal { var, positive: a.get(var) }.to_formula()))
            .expect("width is positive")
    });
    Ok(PropFormula::or_all(terms).expect("the zero string is even"))
}

/// Divide-and-conquer equivalence chain of size `n^2` at powers of two.
pub fn parity_balanced(n: u8) -> Result<PropFormula> {
    check_construction_width(n)?;
    Ok(balanced(1, n))
}

fn balanced(i: u8, j: u8) -> PropFormula {
    if i == j {
        return PropFormula::not(PropFormula::var(i));
    }
    let k = (i + j) / 2;
    let (a, b) = (balanced(i, k), balanced(k + 1, j));
    PropFormula::or(PropFormula::and(a.clone(), b.clone()), PropFormula::and(PropFormula::not(a), PropFormula::not(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prop(strings: &[&str]) -> StringProperty {
        StringProperty::parse_strings(strings).unwrap()
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn density_examples() {
        let d = density(&prop(&["00", "11"]), &prop(&["01", "10"])).unwrap();
        assert_eq!((d.s, d.r, d.edge_count), (q(2, 1), q(2, 1), 4));
        let d = density(&prop(&["10"]), &prop(&["01"])).unwrap();
        assert_eq!((d.s, d.r, d.edge_count), (q(0, 1), q(0, 1), 0));
        let d = density(&prop(&["0"]), &prop(&["1"])).unwrap();
        assert_eq!((d.s, d.r, d.edge_count), (q(1, 1), q(1, 1), 1));
    }

    #[test]
    fn density_is_exact_for_unbalanced_sides() {
        let d = density(&prop(&["000"]), &prop(&["001", "010", "011"])).unwrap();
        assert_eq!((d.s, d.r), (q(2, 1), q(2, 3)));
        assert_eq!(d.bound(), 2);
    }

    #[test]
    fn density_rejects_empty_and_overlap() {
        let empty = StringProperty::empty(2).unwrap();
        assert!(matches!(density(&empty, &prop(&["01"])), Err(Error::Input(_))));
        assert!(matches!(density(&prop(&["01"]), &prop(&["01"])), Err(Error::Input(_))));
    }

    #[test]
    fn lower_bound_examples() {
        for (n, expected) in [(2, 4), (3, 9)] {
            let (s, r) = parity_property(n).unwrap();
            assert_eq!(density_lower_bound(&s, &r).unwrap(), expected);
        }
        assert_eq!(density_lower_bound(&prop(&["10"]), &prop(&["01"])).unwrap(), 0);
    }

    #[test]
    fn parity_property_examples() {
        assert_eq!(parity_property(1).unwrap(), (prop(&["0"]), prop(&["1"])));
        assert_eq!(parity_property(2).unwrap(), (prop(&["00", "11"]), prop(&["01", "10"])));
        let (s, r) = parity_property(3).unwrap();
        assert_eq!((s.len(), r.len()), (4, 4));
        let d = density(&s, &r).unwrap();
        assert_eq!((d.s, d.r), (q(3, 1), q(3, 1)));
        assert!(parity_property(0).is_err() && parity_property(17).is_err());
    }

    #[test]
    fn dnf_sizes() {
        assert_eq!(parity_dnf(1).unwrap().to_string(), "!p1");
        assert_eq!(parity_dnf(2).unwrap().to_string(), "((p1 & p2) | (!p1 & !p2))");
        for n in 1..=10u8 {
            assert_eq!(parity_dnf(n).unwrap().size(), n as usize * (1 << (n - 1)));
        }
        assert!(parity_dnf(11).is_err());
    }

    #[test]
    fn balanced_sizes() {
        assert_eq!(parity_balanced(1).unwrap().to_string(), "!p1");
        let expected = [1, 4, 10, 16, 28, 40, 52, 64, 88, 112];
        for n in 1..=10u8 {
            let size = parity_balanced(n).unwrap().size();
            assert_eq!(size, expected[n as usize - 1], "n = {n}");
            assert!(size <= (n as usize + 1).pow(2));
        }
    }

    #[test]
    fn constructions_compute_parity() {
        for n in 1..=10u8 {
            let (s, r) = parity_property(n).unwrap();
            assert!(parity_dnf(n).unwrap().separates(&s, &r).unwrap(), "dnf n = {n}");
            assert!(parity_balanced(n).unwrap().separates(&s, &r).unwrap(), "balanced n = {n}");
        }
    }
}
