//! Power containment and the index of nilpotency `(√J)^t ⊆ J`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::decomposition::irreducible_decomposition;
use crate::error::{Error, Result};
use crate::homology::Limits;
use crate::ideal::MonomialIdeal;
use crate::newton::sheaf_r_coefficient;
use crate::ring::Monomial;

/// Largest `t` such that some product of `t` generators of `ideal`
/// (repetitions allowed) avoids the irreducible ideal
/// `(x_j^{b_j} : j ∈ powers)`. `None` when the avoidance is unbounded.
pub fn max_avoiding_power(ideal: &MonomialIdeal, powers: &[(usize, u32)]) -> Option<u64> {
    let gens: Vec<Vec<u32>> =
        ideal.generators().iter().map(|g| powers.iter().map(|&(j, _)| g.exponents()[j]).collect()).collect();
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    let budget: Vec<u32> = powers.iter().map(|&(_, b)| b - 1).collect();
    let mut memo = BTreeMap::new();
    Some(knapsack(&gens, 0, budget, &mut memo))
}

// max Σ c_i subject to Σ c_i g_i ≤ budget componentwise
fn knapsack(gens: &[Vec<u32>], i: usize, budget: Vec<u32>, memo: &mut BTreeMap<(usize, Vec<u32>), u64>) -> u64 {
    if i == gens.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(i, budget.clone())) {
        return v;
    }
    let g = &gens[i];
    let mut best = 0;
    let mut remaining = budget.clone();
    let mut c = 0u64;
    loop {
        best = best.max(c + knapsack(gens, i + 1, remaining.clone(), memo));
        let fits = remaining.iter().zip(g).all(|(r, e)| r >= e);
        if !fits {
            break;
        }
        for (r, e) in remaining.iter_mut().zip(g) {
            *r -= e;
        }
        c += 1;
    }
    memo.insert((i, budget), best);
    best
}

fn component_powers(q: &MonomialIdeal) -> Vec<(usize, u32)> {
    q.generators()
        .iter()
        .map(|g| {
            let j = g.support()[0];
            (j, g.exponents()[j])
        })
        .collect()
}

/// Least `t ≥ 1` with `base^t ⊆ target`, or `None` when no power of
/// `base` lies in `target`.
pub fn least_contained_power(base: &MonomialIdeal, target: &MonomialIdeal) -> Result<Option<u64>> {
    if target.is_unit() {
        return Ok(Some(1));
    }
    if target.is_zero() {
        return Ok(None);
    }
    let mut worst = 0u64;
    for q in irreducible_decomposition(target)? {
        match max_avoiding_power(base, &component_powers(&q)) {
            Some(t) => worst = worst.max(t),
            None => return Ok(None),
        }
    }
    Ok(Some(worst + 1))
}

/// `base^t ⊆ target`.
pub fn power_contained_in(base: &MonomialIdeal, t: u64, target: &MonomialIdeal) -> Result<bool> {
    if t == 0 {
        return Ok(target.is_unit());
    }
    Ok(least_contained_power(base, target)?.is_some_and(|least| t >= least))
}

/// One reading of the effective Nullstellensatz exponent, checked at the
/// level of sheaves: `(√J)^exponent ⊆ sat(J^p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionCheck {
    pub p: u32,
    pub exponent: i64,
    /// `None` when the exponent is not positive.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub index: u64,
    pub computed_on: MonomialIdeal,
    /// Largest coefficient among facet valuations with a nonempty center.
    pub r_sheaf: i64,
    /// Exponent `r·(n + p − 1)`.
    pub increasing: Vec<InclusionCheck>,
    /// Exponent `r·(n + 1 − p)`.
    pub decreasing: Vec<InclusionCheck>,
    /// `index ≤ n·r`.
    pub within_bound: bool,
}

impl NilpotencyReport {
    pub fn increasing_verified(&self) -> bool {
        self.increasing.iter().all(|c| c.holds == Some(true))
    }
}

/// Index of nilpotency of the sheaf defined by `ideal`, with the theorem
/// inclusions for `p = 1..=max_p`.
pub fn nilpotency_index(ideal: &MonomialIdeal, max_p: u32, limits: &Limits) -> Result<NilpotencyReport> {
    let sat = ideal.saturate();
    if sat.is_zero() || sat.is_unit() {
        return Err(Error::Domain("the index of nilpotency is undefined for the zero or unit sheaf".into()));
    }
    let radical = sat.radical();
    let index = least_contained_power(&radical, &sat)?
        .ok_or_else(|| Error::Internal("no power of the radical lies in the ideal".into()))?;
    if index > u64::from(limits.max_nilpotency_index) {
        return Err(Error::Resource { what: "index of nilpotency", cap: limits.max_nilpotency_index as usize });
    }
    let n = sat.ring().projective_dimension() as i64;
    let r_sheaf = sheaf_r_coefficient(&sat)?;
    let mut increasing = Vec::new();
    let mut decreasing = Vec::new();
    for p in 1..=max_p {
        let target = sat.power(p)?.saturate();
        let least = least_contained_power(&radical, &target)?;
        let check = |exponent: i64| InclusionCheck {
            p,
            exponent,
            holds: (exponent > 0).then(|| least.is_some_and(|l| exponent as u64 >= l)),
        };
        increasing.push(check(r_sheaf * (n + i64::from(p) - 1)));
        decreasing.push(check(r_sheaf * (n + 1 - i64::from(p))));
    }
    Ok(NilpotencyReport {
        index,
        computed_on: sat,
        r_sheaf,
        increasing,
        decreasing,
        within_bound: index as i64 <= n * r_sheaf,
    })
}

/// Every product of `t` generators of `base`: the literal power.
pub fn literal_power_contained_in(base: &MonomialIdeal, t: u32, target: &MonomialIdeal) -> Result<bool> {
    if t == 0 {
        return Ok(target.is_unit());
    }
    let pw = base.power(t)?;
    Ok(pw.generators().iter().all(|g: &Monomial| target.contains(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn ring(n: usize) -> Ring {
        Ring::new(["x", "y", "z", "w"].into_iter().take(n)).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, gens).unwrap()
    }

    #[test]
    fn nilpotency_examples() {
        let r = ring(3);
        let lim = Limits::default();
        let q = ideal(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        assert_eq!(nilpotency_index(&q, 3, &lim).unwrap().index, 2);
        assert_eq!(nilpotency_index(&MonomialIdeal::variables(&r, &[0, 1]), 3, &lim).unwrap().index, 1);
        let r4 = ring(4);
        for d in 1..5 {
            let j = ideal(&r4, &[&[2, 0, 0, 0], &[1, 1, d, 0], &[0, 2, 0, 0]]);
            let rep = nilpotency_index(&j, 3, &lim).unwrap();
            assert_eq!(rep.index, 3);
            assert_eq!(rep.r_sheaf, 2);
            assert!(rep.increasing_verified());
            assert!(rep.within_bound);
        }
    }

    #[test]
    fn decreasing_exponent_runs_out() {
        let r = ring(3);
        let rep = nilpotency_index(&MonomialIdeal::variables(&r, &[0, 1]), 3, &Limits::default()).unwrap();
        assert_eq!(rep.decreasing[2].exponent, 0);
        assert_eq!(rep.decreasing[2].holds, None);
    }

    #[test]
    fn containment_matches_literal_powers() {
        let r = ring(3);
        let j = ideal(&r, &[&[3, 0, 0], &[1, 2, 1], &[0, 3, 0], &[0, 0, 2]]);
        let rad = j.radical();
        for t in 1..7 {
            assert_eq!(
                power_contained_in(&rad, u64::from(t), &j).unwrap(),
                literal_power_contained_in(&rad, t, &j).unwrap()
            );
        }
    }

    #[test]
    fn nilpotency_cap_is_enforced() {
        let r = ring(3);
        let j = ideal(&r, &[&[9, 0, 0], &[0, 9, 0]]);
        let lim = Limits { max_nilpotency_index: 5, ..Limits::default() };
        assert!(matches!(nilpotency_index(&j, 1, &lim), Err(Error::Resource { .. })));
    }
}
