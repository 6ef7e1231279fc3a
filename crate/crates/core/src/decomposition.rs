//! Irreducible decomposition, associated primes, standard pairs and the
//! arithmetic degree profile of a monomial ideal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::Monomial;

/// A prime ideal generated by a nonempty set of variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordinatePrime {
    variables: Vec<usize>,
}

impl CoordinatePrime {
    pub fn new(mut variables: Vec<usize>) -> Result<Self> {
        variables.sort_unstable();
        variables.dedup();
        if variables.is_empty() {
            return Err(Error::Structural("a coordinate prime needs at least one variable".into()));
        }
        Ok(CoordinatePrime { variables })
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn codimension(&self) -> usize {
        self.variables.len()
    }
}

fn check_proper(ideal: &MonomialIdeal, what: &str) -> Result<()> {
    if ideal.is_zero() || ideal.is_unit() {
        Err(Error::Domain(alloc::format!("{what} is undefined for the zero or unit ideal")))
    } else {
        Ok(())
    }
}

/// Odometer over the box `0..=bounds[j]`.
pub(crate) fn next_in_box(current: &mut [u32], bounds: &[u32]) -> bool {
    for (c, &b) in current.iter_mut().zip(bounds) {
        if *c < b {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// The unique irredundant decomposition into ideals generated by pure
/// powers of variables.
///
/// Works through the artinian completion `I + (x_j^{M_j + 1})` with `M_j`
/// the largest exponent of `x_j` among the generators: every maximal
/// standard monomial `u` in the box contributes `(x_j^{u_j + 1})`, and the
/// added powers are dropped again.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    check_proper(ideal, "the irreducible decomposition")?;
    let ring = ideal.ring();
    let bounds = ideal.exponent_bounds();
    let mut components: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    let mut u = alloc::vec![0u32; bounds.len()];
    loop {
        let m = Monomial::from_exponents(u.clone());
        if !ideal.contains(&m) && is_corner(ideal, &u, &bounds) {
            let powers: Vec<(usize, u32)> =
                u.iter().zip(&bounds).enumerate().filter(|(_, (e, b))| e < b).map(|(j, (e, _))| (j, e + 1)).collect();
            components.insert(powers);
        }
        if !next_in_box(&mut u, &bounds) {
            break;
        }
    }
    let ideals: Vec<MonomialIdeal> = components
        .into_iter()
        .map(|powers| {
            let gens = powers
                .into_iter()
                .map(|(j, e)| {
                    let mut x = alloc::vec![0; bounds.len()];
                    x[j] = e;
                    Monomial::from_exponents(x)
                })
                .collect::<Vec<_>>();
            MonomialIdeal::from_checked(ring.clone(), gens)
        })
        .collect();
    // A component containing another one is redundant.
    let mut out = Vec::new();
    for (i, q) in ideals.iter().enumerate() {
        let redundant = ideals
            .iter()
            .enumerate()
            .any(|(k, other)| k != i && q != other && q.contains_ideal(other).unwrap_or(false));
        if !redundant {
            out.push(q.clone());
        }
    }
    Ok(out)
}

// `u` is maximal among standard monomials of the artinian completion.
fn is_corner(ideal: &MonomialIdeal, u: &[u32], bounds: &[u32]) -> bool {
    (0..u.len()).all(|j| {
        if u[j] == bounds[j] {
            return true;
        }
        let mut up = u.to_vec();
        up[j] += 1;
        ideal.contains(&Monomial::from_exponents(up))
    })
}

/// Radicals of the irredundant irreducible components, deduplicated.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<CoordinatePrime>> {
    let mut primes: BTreeSet<CoordinatePrime> = BTreeSet::new();
    for q in irreducible_decomposition(ideal)? {
        let vars: Vec<usize> = q.generators().iter().flat_map(Monomial::support).collect();
        primes.insert(CoordinatePrime::new(vars)?);
    }
    Ok(primes.into_iter().collect())
}

/// A standard pair `(root, free)`: the monomials `root · k[free]` avoid the
/// ideal, and no larger such family contains them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardPair {
    pub root: Monomial,
    pub free: Vec<usize>,
}

impl StandardPair {
    pub fn covers(&self, m: &Monomial) -> bool {
        m.exponents().iter().zip(self.root.exponents()).enumerate().all(|(j, (&e, &r))| {
            if self.free.contains(&j) {
                r == 0
            } else {
                e == r
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPairDecomposition {
    pairs: Vec<StandardPair>,
}

impl StandardPairDecomposition {
    pub fn pairs(&self) -> &[StandardPair] {
        &self.pairs
    }

    /// Number of pairs for each size of the free set.
    pub fn by_size(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for p in &self.pairs {
            *out.entry(p.free.len()).or_insert(0) += 1;
        }
        out
    }

    /// Checks that every standard monomial of degree at most `degree` lies
    /// in some pair, that no ideal monomial lies in any, and that no pair's
    /// family sits inside another's. Families may overlap: in `k[x, y]/(xy)`
    /// both `(1, {x})` and `(1, {y})` contain `1`.
    pub fn verify_cover(&self, ideal: &MonomialIdeal, degree: u32) -> Result<()> {
        for d in 0..=degree {
            for m in ideal.ring().monomials_of_degree(d) {
                let covered = self.pairs.iter().any(|p| p.covers(&m));
                if covered == ideal.contains(&m) {
                    return Err(Error::Internal(alloc::format!(
                        "monomial {} is {} by the standard pairs",
                        ideal.ring().display(&m),
                        if covered { "wrongly covered" } else { "not covered" }
                    )));
                }
            }
        }
        for (i, p) in self.pairs.iter().enumerate() {
            for (j, q) in self.pairs.iter().enumerate() {
                if i != j && p.free.iter().all(|v| q.free.contains(v)) && q.covers(&p.root) {
                    return Err(Error::Internal(alloc::format!(
                        "standard pair rooted at {} is not maximal",
                        ideal.ring().display(&p.root)
                    )));
                }
            }
        }
        Ok(())
    }
}

const MAX_PAIR_VARIABLES: usize = 20;

/// All standard pairs of a nonzero ideal.
///
/// `(a, u)` is a standard pair exactly when `a` avoids `I` with the
/// variables of `u` set to one, while for every other variable `x_j`,
/// setting `x_j = 1` in `a` lands in `I` with `u ∪ {j}` set to one. Such
/// roots have every exponent below the largest generator exponent, so a box
/// search is complete.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Result<StandardPairDecomposition> {
    check_proper(ideal, "the standard pair decomposition")?;
    let n = ideal.ring().num_variables();
    if n > MAX_PAIR_VARIABLES {
        return Err(Error::Resource { what: "variables for standard-pair enumeration", cap: MAX_PAIR_VARIABLES });
    }
    let bounds = ideal.exponent_bounds();
    let mut localized: BTreeMap<u64, MonomialIdeal> = BTreeMap::new();
    let mut local = |mask: u64| -> MonomialIdeal {
        localized
            .entry(mask)
            .or_insert_with(|| {
                let mut j_ideal = ideal.clone();
                for j in (0..n).filter(|j| mask >> j & 1 == 1) {
                    j_ideal = j_ideal.saturation_by_variable(j);
                }
                j_ideal
            })
            .clone()
    };
    let mut pairs = Vec::new();
    for mask in 0u64..(1 << n) {
        let free: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let here = local(mask);
        if here.is_unit() {
            continue;
        }
        let extended: Vec<(usize, MonomialIdeal)> =
            (0..n).filter(|j| mask >> j & 1 == 0).map(|j| (j, local(mask | 1 << j))).collect();
        // roots: exponents below the bound outside `free`, zero on it
        let root_bounds: Vec<u32> =
            (0..n).map(|j| if free.contains(&j) { 0 } else { bounds[j].saturating_sub(1) }).collect();
        let mut a = alloc::vec![0u32; n];
        loop {
            let root = Monomial::from_exponents(a.clone());
            if !here.contains(&root) && extended.iter().all(|(j, ext)| ext.contains(&root.without_variable(*j))) {
                pairs.push(StandardPair { root, free: free.clone() });
            }
            if !next_in_box(&mut a, &root_bounds) {
                break;
            }
        }
    }
    pairs.sort();
    Ok(StandardPairDecomposition { pairs })
}

/// Arithmetic degrees `adeg^k` of the sheaf defined by an ideal, one per
/// codimension `k = 1..=n` on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdegProfile {
    pub by_codimension: BTreeMap<usize, u64>,
    pub computed_on: MonomialIdeal,
}

impl AdegProfile {
    pub fn get(&self, k: usize) -> u64 {
        self.by_codimension.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.by_codimension.values().sum()
    }
}

pub fn adeg_profile(ideal: &MonomialIdeal) -> Result<AdegProfile> {
    let sat = ideal.saturate();
    check_proper(&sat, "the arithmetic degree of a sheaf")?;
    let n_vars = sat.ring().num_variables();
    let pairs = standard_pairs(&sat)?;
    let mut by_codimension: BTreeMap<usize, u64> = (1..n_vars).map(|k| (k, 0)).collect();
    for (size, count) in pairs.by_size() {
        if size == 0 {
            return Err(Error::Internal("a standard pair with no free variables survived saturation".into()));
        }
        *by_codimension.entry(n_vars - size).or_insert(0) += count;
    }
    Ok(AdegProfile { by_codimension, computed_on: sat })
}
