//! Two-sided estimates of the s-invariant of a monomial ideal sheaf.
//!
//! Upper bounds come from generation degrees of powers, `s ≤ d(J^p)/p`.
//! Lower bounds come from monomial curves `t ↦ (t^{w_j})` in an affine
//! chart: such a curve has degree `max(w)` and meets the subscheme with
//! multiplicity at least `min_g w·g`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::{generation_degree_bounded, regularity, Limits};
use crate::ideal::MonomialIdeal;
use crate::newton::{integral_closure, rees_valuations};
use crate::Rational;

/// Generation degree and regularity of the sheaf defined by `J^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerEntry {
    pub d: u32,
    pub reg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSequence {
    ideal: MonomialIdeal,
    entries: BTreeMap<u32, PowerEntry>,
}

impl PowerSequence {
    /// Wraps stored entries after checking `d_p ≤ reg_p` and
    /// `d_{l+m} ≤ d_l + d_m` on every stored triple.
    pub fn from_entries(ideal: MonomialIdeal, entries: BTreeMap<u32, PowerEntry>) -> Result<Self> {
        let seq = PowerSequence { ideal, entries };
        seq.check()?;
        Ok(seq)
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn entries(&self) -> &BTreeMap<u32, PowerEntry> {
        &self.entries
    }

    pub fn get(&self, p: u32) -> Option<PowerEntry> {
        self.entries.get(&p).copied()
    }

    pub fn horizon(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// `d_p / p` for every stored `p`.
    pub fn ratios(&self) -> Vec<(u32, Rational)> {
        self.entries.iter().map(|(&p, e)| (p, Rational::new(i64::from(e.d), i64::from(p)))).collect()
    }

    /// `min_p d_p / p` with the smallest `p` attaining it.
    pub fn upper_bound(&self) -> Option<(u32, Rational)> {
        self.ratios().into_iter().fold(None, |best, (p, r)| match best {
            Some((_, b)) if b <= r => best,
            _ => Some((p, r)),
        })
    }

    fn check(&self) -> Result<()> {
        for (&p, e) in &self.entries {
            if i64::from(e.d) > e.reg {
                return Err(Error::Internal(alloc::format!(
                    "generation degree {} exceeds regularity {} at p = {p}",
                    e.d,
                    e.reg
                )));
            }
        }
        for (&l, el) in &self.entries {
            for (&m, em) in self.entries.range(l..) {
                if let Some(e) = self.entries.get(&(l + m)) {
                    if e.d > el.d + em.d {
                        return Err(Error::Internal(alloc::format!(
                            "d is not subadditive: d_{} = {} > d_{l} + d_{m} = {}",
                            l + m,
                            e.d,
                            el.d + em.d
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn power_entry(ideal: &MonomialIdeal, p: u32, limits: &Limits) -> Result<PowerEntry> {
    let compute = || -> Result<PowerEntry> {
        let report = regularity(&ideal.power(p)?, limits)?;
        let d = generation_degree_bounded(&report.saturated_input, report.regularity)?;
        Ok(PowerEntry { d, reg: report.regularity })
    };
    compute().map_err(|e| e.at_power(p))
}

/// Entries for `p = 1..=pmax`, computing only those missing from `known`.
pub fn d_sequence(
    ideal: &MonomialIdeal,
    pmax: u32,
    limits: &Limits,
    known: &BTreeMap<u32, PowerEntry>,
) -> Result<PowerSequence> {
    if pmax == 0 {
        return Err(Error::Domain("the power horizon must be at least 1".into()));
    }
    let sat = ideal.saturate();
    if sat.is_zero() || sat.is_unit() {
        return Err(Error::Domain("the s-invariant is undefined for the zero or unit sheaf".into()));
    }
    let mut entries = BTreeMap::new();
    for p in 1..=pmax {
        let entry = match known.get(&p) {
            Some(e) => *e,
            None => power_entry(ideal, p, limits)?,
        };
        entries.insert(p, entry);
    }
    PowerSequence::from_entries(ideal.clone(), entries)
}

/// A monomial curve in the chart `x_chart = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWitness {
    pub chart: usize,
    /// One weight per chart variable, i.e. all variables except `chart`,
    /// in ring order.
    pub weights: Vec<u32>,
    pub valuation: u64,
    pub degree: u32,
    pub bound: Rational,
}

impl CurveWitness {
    /// Weights as a full-length vector with a zero at the chart variable.
    pub fn full_weights(&self) -> Vec<u32> {
        let mut w = self.weights.clone();
        w.insert(self.chart, 0);
        w
    }
}

/// Candidate weight vectors on the chart variables (length `n`).
pub fn default_candidates(ideal: &MonomialIdeal, chart: usize) -> Result<Vec<Vec<u32>>> {
    let n_vars = ideal.ring().num_variables();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for v in rees_valuations(ideal)? {
        let w: Vec<u32> = v
            .normal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != chart)
            .map(|(_, &x)| u32::try_from(x).unwrap_or(0))
            .collect();
        out.push(w);
    }
    // entries in 0..=3 (this includes every 0/1 vector)
    let len = n_vars - 1;
    let mut w = alloc::vec![0u32; len];
    let bounds = alloc::vec![3u32; len];
    while crate::decomposition::next_in_box(&mut w, &bounds) {
        out.push(w.clone());
    }
    Ok(out)
}

fn primitive(w: &[u32]) -> Option<Vec<u32>> {
    let g = w.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    (g > 0).then(|| w.iter().map(|x| x / g).collect())
}

/// Best curve bound over the candidates in every chart. `candidates` maps a
/// chart to its weight vectors; charts without an entry use
/// [`default_candidates`]. Returns a zero bound when no candidate meets the
/// subscheme.
pub fn curve_lower_bound(
    ideal: &MonomialIdeal,
    candidates: Option<&BTreeMap<usize, Vec<Vec<u32>>>>,
) -> Result<CurveWitness> {
    if ideal.is_zero() {
        return Err(Error::Domain("the zero ideal defines no subscheme to meet".into()));
    }
    let n_vars = ideal.ring().num_variables();
    let mut best: Option<CurveWitness> = None;
    for chart in 0..n_vars {
        let local = ideal.chart(chart);
        if local.is_unit() {
            continue;
        }
        let list = match candidates.and_then(|c| c.get(&chart)) {
            Some(list) => list.clone(),
            None if candidates.is_some() => continue,
            None => default_candidates(ideal, chart)?,
        };
        for raw in list {
            if raw.len() + 1 != n_vars {
                return Err(Error::Structural(alloc::format!(
                    "curve weights need {} entries, got {}",
                    n_vars - 1,
                    raw.len()
                )));
            }
            let Some(weights) = primitive(&raw) else { continue };
            let mut full: Vec<i64> = weights.iter().map(|&x| i64::from(x)).collect();
            full.insert(chart, 0);
            let valuation = local.generators().iter().map(|g| g.dot(&full)).min().unwrap_or(0) as u64;
            let degree = *weights.iter().max().expect("nonzero weights");
            let bound = Rational::new(valuation as i64, i64::from(degree));
            if best.as_ref().is_none_or(|b| bound > b.bound) {
                best = Some(CurveWitness { chart, weights, valuation, degree, bound });
            }
        }
    }
    Ok(best.unwrap_or_else(|| CurveWitness {
        chart: 0,
        weights: alloc::vec![1; n_vars - 1],
        valuation: 0,
        degree: 1,
        bound: Rational::zero(),
    }))
}

/// A certified enclosure `lower ≤ s ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBracket {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_witness: CurveWitness,
    /// `(p, d_p)` attaining the upper bound.
    pub upper_witness: (u32, u32),
    pub converged: bool,
    pub sequence: PowerSequence,
}

impl SBracket {
    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn intersects(&self, other: &SBracket) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }
}

pub fn s_bracket(ideal: &MonomialIdeal, pmax: u32, tolerance: Rational, limits: &Limits) -> Result<SBracket> {
    s_bracket_with(ideal, pmax, tolerance, limits, &BTreeMap::new())
}

/// As [`s_bracket`], reusing previously computed power entries.
pub fn s_bracket_with(
    ideal: &MonomialIdeal,
    pmax: u32,
    tolerance: Rational,
    limits: &Limits,
    known: &BTreeMap<u32, PowerEntry>,
) -> Result<SBracket> {
    if tolerance <= Rational::zero() {
        return Err(Error::Domain("the tolerance must be positive".into()));
    }
    let sequence = d_sequence(ideal, pmax, limits, known)?;
    let witness = curve_lower_bound(ideal, None)?;
    let (p, upper) = sequence.upper_bound().expect("pmax >= 1");
    let lower = witness.bound;
    if lower <= Rational::zero() {
        return Err(Error::Internal("no monomial curve meets a proper subscheme".into()));
    }
    for (q, ratio) in sequence.ratios() {
        if lower > ratio {
            return Err(Error::Internal(alloc::format!("curve bound {lower} exceeds d_{q}/{q} = {ratio}")));
        }
    }
    let d_p = sequence.get(p).expect("stored").d;
    Ok(SBracket {
        lower,
        upper,
        lower_witness: witness,
        upper_witness: (p, d_p),
        converged: upper - lower <= tolerance,
        sequence,
    })
}

/// Bracket-level consequences of the algebraic properties of `s`.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub first: SBracket,
    pub second: SBracket,
    pub product: SBracket,
    /// `None` when the sum defines the unit sheaf.
    pub sum: Option<SBracket>,
    pub first_closure: SBracket,
    pub second_closure: SBracket,
    /// `lower(I1·I2) ≤ upper(I1) + upper(I2)`.
    pub product_holds: bool,
    /// `lower(I1 + I2) ≤ max(upper(I1), upper(I2))`.
    pub sum_holds: Option<bool>,
    /// Each ideal's bracket meets the bracket of its integral closure.
    pub closure_overlaps: bool,
}

pub fn property_checks(
    first: &MonomialIdeal,
    second: &MonomialIdeal,
    pmax: u32,
    tolerance: Rational,
    limits: &Limits,
) -> Result<PropertyReport> {
    let bracket = |i: &MonomialIdeal| s_bracket(i, pmax, tolerance, limits);
    let b1 = bracket(first)?;
    let b2 = bracket(second)?;
    let product = bracket(&first.product(second)?)?;
    let sum_ideal = first.sum(second)?;
    let sum = if sum_ideal.saturate().is_unit() { None } else { Some(bracket(&sum_ideal)?) };
    let c1 = bracket(&integral_closure(first)?)?;
    let c2 = bracket(&integral_closure(second)?)?;
    let product_holds = product.lower <= b1.upper + b2.upper;
    let max_upper = if b1.upper > b2.upper { b1.upper } else { b2.upper };
    let sum_holds = sum.as_ref().map(|s| s.lower <= max_upper);
    let closure_overlaps = b1.intersects(&c1) && b2.intersects(&c2);
    Ok(PropertyReport {
        first: b1,
        second: b2,
        product,
        sum,
        first_closure: c1,
        second_closure: c2,
        product_holds,
        sum_holds,
        closure_overlaps,
    })
}

/// The degree-`d` member `(x², x·y·z^d, y²)` of the embedded-point family,
/// in a ring with at least four variables.
pub fn pathology_ideal(ring: &crate::ring::Ring, d: u32) -> Result<MonomialIdeal> {
    if ring.num_variables() < 4 {
        return Err(Error::Structural("the embedded-point family needs four variables".into()));
    }
    let mono = |e: [u32; 3]| {
        let mut v = alloc::vec![0; ring.num_variables()];
        v[..3].copy_from_slice(&e);
        ring.monomial(v)
    };
    MonomialIdeal::new(ring, [mono([2, 0, 0])?, mono([1, 1, d])?, mono([0, 2, 0])?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use alloc::vec;

    fn ring(n: usize) -> Ring {
        Ring::new(["x", "y", "z", "w"].into_iter().take(n)).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, gens).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn d_sequence_examples() {
        let r = ring(3);
        let lim = Limits::default();
        let pt = MonomialIdeal::variables(&r, &[0, 1]);
        let seq = d_sequence(&pt, 3, &lim, &BTreeMap::new()).unwrap();
        for p in 1..=3 {
            assert_eq!(seq.get(p), Some(PowerEntry { d: p, reg: i64::from(p) }));
        }
        let quad = ideal(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let seq = d_sequence(&quad, 3, &lim, &BTreeMap::new()).unwrap();
        for p in 1..=3 {
            assert_eq!(seq.get(p).unwrap().d, 2 * p);
        }
    }

    #[test]
    fn d_sequence_resumes_from_known_entries() {
        let r = ring(3);
        let pt = MonomialIdeal::variables(&r, &[0, 1]);
        let mut known = BTreeMap::new();
        known.insert(1, PowerEntry { d: 1, reg: 1 });
        let seq = d_sequence(&pt, 2, &Limits::default(), &known).unwrap();
        assert_eq!(seq.horizon(), 2);
        // a stored entry violating d ≤ reg is rejected
        known.insert(2, PowerEntry { d: 3, reg: 2 });
        assert!(matches!(d_sequence(&pt, 2, &Limits::default(), &known), Err(Error::Internal(_))));
    }

    #[test]
    fn curve_bound_examples() {
        let r = ring(3);
        let quad = ideal(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let w = curve_lower_bound(&quad, None).unwrap();
        assert_eq!(w.bound, q(2, 1));
        let mut only = BTreeMap::new();
        only.insert(2, vec![vec![1, 1]]);
        assert_eq!(curve_lower_bound(&quad, Some(&only)).unwrap().bound, q(2, 1));
        assert_eq!(curve_lower_bound(&MonomialIdeal::variables(&r, &[0, 1]), None).unwrap().bound, q(1, 1));

        let r4 = ring(4);
        for d in 1..4 {
            let j = pathology_ideal(&r4, d).unwrap();
            let mut only = BTreeMap::new();
            only.insert(3, vec![vec![1, 1, 0]]);
            let w = curve_lower_bound(&j, Some(&only)).unwrap();
            assert_eq!((w.valuation, w.bound), (2, q(2, 1)));
            assert_eq!(curve_lower_bound(&j, None).unwrap().bound, q(2, 1));
        }
    }

    #[test]
    fn bracket_examples() {
        let r = ring(3);
        let lim = Limits::default();
        let tol = q(1, 100);
        let b = s_bracket(&MonomialIdeal::variables(&r, &[0, 1]), 2, tol, &lim).unwrap();
        assert_eq!((b.lower, b.upper, b.converged), (q(1, 1), q(1, 1), true));
        let quad = ideal(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let b = s_bracket(&quad, 2, tol, &lim).unwrap();
        assert!(b.is_point());
        assert_eq!(b.upper, q(2, 1));

        let j = pathology_ideal(&ring(4), 2).unwrap();
        let b = s_bracket(&j, 4, q(3, 5), &lim).unwrap();
        assert_eq!((b.lower, b.upper, b.upper_witness), (q(2, 1), q(5, 2), (4, 10)));
        assert!(b.converged);
    }

    #[test]
    fn bracket_rejects_bad_parameters() {
        let r = ring(3);
        let pt = MonomialIdeal::variables(&r, &[0, 1]);
        assert!(s_bracket(&pt, 0, q(1, 2), &Limits::default()).is_err());
        assert!(s_bracket(&pt, 1, q(0, 1), &Limits::default()).is_err());
        assert!(s_bracket(&MonomialIdeal::irrelevant(&r), 1, q(1, 2), &Limits::default()).is_err());
    }

    #[test]
    fn property_examples() {
        let r = ring(3);
        let lim = Limits::default();
        let tol = q(1, 10);
        let pt = MonomialIdeal::variables(&r, &[0, 1]);
        let rep = property_checks(&pt, &pt, 2, tol, &lim).unwrap();
        assert_eq!(rep.product.lower, q(2, 1));
        assert!(rep.product_holds && rep.closure_overlaps);

        let x = MonomialIdeal::variables(&r, &[0]);
        let y = MonomialIdeal::variables(&r, &[1]);
        let rep = property_checks(&x, &y, 2, tol, &lim).unwrap();
        assert_eq!(rep.sum_holds, Some(true));
        assert!(rep.sum.unwrap().lower <= q(1, 1));

        let ci = ideal(&r, &[&[2, 0, 0], &[0, 2, 0]]);
        let rep = property_checks(&ci, &ci, 2, tol, &lim).unwrap();
        assert!(rep.closure_overlaps);
        assert_eq!(rep.first_closure.lower, q(2, 1));
    }

    #[test]
    fn sum_can_be_the_unit_sheaf() {
        let r = ring(3);
        let x = MonomialIdeal::variables(&r, &[0]);
        let yz = MonomialIdeal::variables(&r, &[1, 2]);
        let rep = property_checks(&x, &yz, 1, q(1, 2), &Limits::default()).unwrap();
        assert!(rep.sum.is_none() && rep.sum_holds.is_none());
    }
}
