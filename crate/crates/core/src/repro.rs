//! Lower bound, upper bound and (where the solvers reach) the exact value for
//! each of the three worked families.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fo::bounds::{
    boolcomb_existential_sentence, boolcomb_instances, linorder_existential_sentence, linorder_instances, measure_m,
    measure_n,
};
use crate::fo::game::{fo_minsize, FoLimits, FoMinResult, GameMode};
use crate::prop::bounds::{density_lower_bound, parity_balanced, parity_property};
use crate::prop::game::{minsize, MinResult, PropLimits};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub experiment: String,
    pub n: u8,
    pub certificate_bound: u64,
    pub construction_size: u64,
    pub exact_minsize: Option<u64>,
    pub runtime_ms: u64,
}

impl ReproReport {
    /// `certificate <= exact <= construction`, with the middle term optional.
    pub fn is_ordered(&self) -> bool {
        match self.exact_minsize {
            Some(e) => self.certificate_bound <= e && e <= self.construction_size,
            None => self.certificate_bound <= self.construction_size,
        }
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact = self.exact_minsize.map_or_else(|| "-".to_string(), |e| e.to_string());
        writeln!(
            f,
            "{:<12} {:>3} {:>12} {:>13} {:>6} {:>8}",
            "experiment", "n", "certificate", "construction", "exact", "ms"
        )?;
        write!(
            f,
            "{:<12} {:>3} {:>12} {:>13} {:>6} {:>8}",
            self.experiment, self.n, self.certificate_bound, self.construction_size, exact, self.runtime_ms
        )
    }
}

/// Propositional parity at width `n`. The exact value comes from the reduced
/// game solver and is omitted when its caps refuse the instance.
pub fn repro_parity(n: u8, limits: &PropLimits) -> Result<ReproReport> {
    let start = Instant::now();
    let (s, r) = parity_property(n)?;
    let certificate_bound = density_lower_bound(&s, &r)?;
    let construction_size = parity_balanced(n)?.size() as u64;
    let exact_minsize = match minsize(&s, &r, limits) {
        Ok(MinResult::Size(k)) => Some(k as u64),
        Ok(MinResult::Inseparable) => return Err(Error::contract("parity sides overlap")),
        Err(Error::Resource { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(finish("parity", n, certificate_bound, construction_size, exact_minsize, start))
}

/// Boolean combinations of unary predicates; exact values from the
/// existential game up to the construction size.
pub fn repro_boolcomb(n: u8, limits: &FoLimits) -> Result<ReproReport> {
    let start = Instant::now();
    let (a, b) = boolcomb_instances(n)?;
    let certificate_bound = measure_m(&a, &b)?;
    let construction_size = boolcomb_existential_sentence(n)?.size() as u64;
    let exact_minsize = fo_exact(&a, &b, construction_size, limits)?;
    Ok(finish("boolcomb", n, certificate_bound, construction_size, exact_minsize, start))
}

/// Orders of length `n` against length `n - 1`.
pub fn repro_linorder(n: u8, limits: &FoLimits) -> Result<ReproReport> {
    let start = Instant::now();
    let (a, b) = linorder_instances(n)?;
    let certificate_bound = measure_n(&a, &b)?;
    let construction_size = linorder_existential_sentence(n)?.size() as u64;
    let exact_minsize = fo_exact(&a, &b, construction_size, limits)?;
    Ok(finish("linorder", n, certificate_bound, construction_size, exact_minsize, start))
}

fn fo_exact(
    a: &crate::fo::StructureClass,
    b: &crate::fo::StructureClass,
    w_max: u64,
    limits: &FoLimits,
) -> Result<Option<u64>> {
    match fo_minsize(a, b, GameMode::Existential, w_max as usize, limits) {
        Ok(FoMinResult::Size(k)) => Ok(Some(k as u64)),
        Ok(FoMinResult::Unknown { searched_up_to }) => Err(Error::contract(format!(
            "the construction separates but the solver found no win up to {searched_up_to}"
        ))),
        Err(Error::Resource { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn finish(
    experiment: &str,
    n: u8,
    certificate_bound: u64,
    construction_size: u64,
    exact_minsize: Option<u64>,
    start: Instant,
) -> ReproReport {
    ReproReport {
        experiment: experiment.to_string(),
        n,
        certificate_bound,
        construction_size,
        exact_minsize,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_small() {
        let limits = PropLimits::default();
        let r1 = repro_parity(1, &limits).unwrap();
        assert_eq!((r1.certificate_bound, r1.construction_size, r1.exact_minsize), (1, 1, Some(1)));
        let r2 = repro_parity(2, &limits).unwrap();
        assert_eq!((r2.certificate_bound, r2.construction_size, r2.exact_minsize), (4, 4, Some(4)));
        let r3 = repro_parity(3, &limits).unwrap();
        assert_eq!(r3.certificate_bound, 9);
        assert!(r3.construction_size <= 16 && r3.is_ordered());
    }

    #[test]
    fn parity_beyond_caps_omits_exact() {
        let r = repro_parity(6, &PropLimits::default()).unwrap();
        assert_eq!(r.exact_minsize, None);
        assert_eq!(r.certificate_bound, 36);
        assert!(r.is_ordered());
    }

    #[test]
    fn linorder_two() {
        let r = repro_linorder(2, &FoLimits::default()).unwrap();
        assert_eq!((r.certificate_bound, r.construction_size, r.exact_minsize), (3, 3, Some(3)));
    }

    #[test]
    fn boolcomb_one() {
        let r = repro_boolcomb(1, &FoLimits::default()).unwrap();
        assert_eq!((r.certificate_bound, r.construction_size, r.exact_minsize), (4, 4, Some(4)));
    }

    #[test]
    fn ordering() {
        let report = |c, k, e| ReproReport {
            experiment: "x".into(),
            n: 1,
            certificate_bound: c,
            construction_size: k,
            exact_minsize: e,
            runtime_ms: 0,
        };
        assert!(report(1, 2, None).is_ordered());
        assert!(report(1, 3, Some(2)).is_ordered());
        assert!(!report(2, 1, None).is_ordered());
        assert!(!report(1, 3, Some(4)).is_ordered());
    }
}
