//! Multigraded Betti numbers, Castelnuovo–Mumford regularity and the sheaf
//! generation degree of monomial ideals.
//!
//! Nonzero Betti numbers of a monomial ideal `I` live only in multidegrees
//! of its lcm lattice. At such a multidegree `b`,
//!
//! ```text
//! β_{i,b}(I) = dim H̃_{i-1}(K^b(I); Q),   K^b(I) = { F ⊆ supp(b) : x^{b-F} ∈ I },
//! ```
//!
//! where `K^b` is the upper Koszul simplicial complex on at most `n + 1`
//! vertices. The same numbers are also `dim H̃_{i-1}` of the order complex
//! of the open lattice interval `(1, b)`; that route is available as
//! [`betti_numbers_order_complex`] for small lattices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{zero_or_unit_sheaf, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::ring::Monomial;

/// Caps that turn exponential blow-ups into loud errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of minimal generators accepted by lattice-based
    /// computations.
    pub max_generators: usize,
    /// Largest nilpotency index searched for.
    pub max_nilpotency_index: u32,
    /// Maximum number of chains enumerated by the order-complex route.
    pub max_chains: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_generators: 24, max_nilpotency_index: 64, max_chains: 200_000 }
    }
}

/// The lcm lattice of a monomial ideal: all lcms of nonempty generator
/// subsets together with the bottom element `1`.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    elements: Vec<Monomial>,
    atoms_below: BTreeMap<Monomial, Vec<usize>>,
}

impl LcmLattice {
    /// Elements sorted by degree, then lexicographically. The bottom
    /// element comes first.
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.atoms_below.contains_key(m)
    }

    /// Indices of the generators dividing `element`. This is the largest
    /// generator subset whose lcm is `element`; every realizing subset is
    /// contained in it.
    pub fn atoms_below(&self, element: &Monomial) -> Option<&[usize]> {
        self.atoms_below.get(element).map(Vec::as_slice)
    }
}

pub fn lcm_lattice(ideal: &MonomialIdeal, limits: &Limits) -> Result<LcmLattice> {
    if ideal.is_zero() {
        return Err(Error::Domain("the lcm lattice of the zero ideal is undefined".into()));
    }
    check_generator_cap(ideal, limits)?;
    let gens = ideal.generators();
    let mut seen: BTreeSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for element in &frontier {
            for g in gens {
                let j = element.lcm(g);
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let bottom = ideal.ring().one();
    seen.insert(bottom);
    let mut elements: Vec<Monomial> = seen.into_iter().collect();
    elements.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    let atoms_below = elements
        .iter()
        .map(|e| {
            let atoms = gens.iter().enumerate().filter(|(_, g)| g.divides(e)).map(|(i, _)| i).collect();
            (e.clone(), atoms)
        })
        .collect();
    Ok(LcmLattice { elements, atoms_below })
}

fn check_generator_cap(ideal: &MonomialIdeal, limits: &Limits) -> Result<()> {
    if ideal.num_generators() > limits.max_generators {
        Err(Error::Resource { what: "minimal generators for lcm-lattice computations", cap: limits.max_generators })
    } else {
        Ok(())
    }
}

/// Multigraded Betti numbers `β_{i,b}` of the ideal (not the quotient):
/// `β_{0,b} = 1` exactly at the minimal generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, b), r)| (*i, b, *r))
    }

    pub fn get(&self, i: usize, b: &Monomial) -> u64 {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, i: usize, b: Monomial, rank: u64) {
        if rank > 0 {
            *self.entries.entry((i, b)).or_insert(0) += rank;
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total Betti number `β_i = Σ_b β_{i,b}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|((j, _), _)| *j == i).map(|(_, r)| r).sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Graded Betti numbers `β_{i,j}` with `j` the total degree.
    pub fn graded(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, b), r) in &self.entries {
            *out.entry((*i, b.degree())).or_insert(0) += r;
        }
        out
    }
}

/// A finite abstract simplicial complex, stored as bitmask faces.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    faces: BTreeSet<u64>,
}

impl SimplicialComplex {
    pub fn from_faces(faces: impl IntoIterator<Item = u64>) -> Self {
        SimplicialComplex { faces: faces.into_iter().collect() }
    }

    /// Number of faces of each dimension `-1, 0, 1, ...` (index `k + 1`).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for &face in &self.faces {
            let k = face.count_ones() as usize;
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
        f
    }

    /// Ranks of reduced homology over `Q`, `out[k + 1] = dim H̃_k`.
    pub fn reduced_homology(&self) -> Result<Vec<u64>> {
        let mut by_size: Vec<Vec<u64>> = Vec::new();
        for &face in &self.faces {
            let k = face.count_ones() as usize;
            if by_size.len() <= k {
                by_size.resize(k + 1, Vec::new());
            }
            by_size[k].push(face);
        }
        if by_size.is_empty() {
            return Ok(Vec::new());
        }
        // rank of ∂ : C_{size} -> C_{size-1}, indexed by face size
        let mut ranks = alloc::vec![0usize; by_size.len() + 1];
        for size in 1..by_size.len() {
            ranks[size] = boundary_rank(&by_size[size], &by_size[size - 1])?;
        }
        Ok((0..by_size.len()).map(|size| (by_size[size].len() - ranks[size] - ranks[size + 1]) as u64).collect())
    }
}

fn boundary_rank(faces: &[u64], lower: &[u64]) -> Result<usize> {
    if faces.is_empty() || lower.is_empty() {
        return Ok(0);
    }
    let index: BTreeMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let rows = faces
        .iter()
        .map(|&face| {
            let mut row = alloc::vec![0i64; lower.len()];
            let mut sign = 1i64;
            let mut bits = face;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                if let Some(&i) = index.get(&(face & !(1u64 << v))) {
                    row[i] = sign;
                }
                sign = -sign;
            }
            row
        })
        .collect();
    linalg::rank(rows)
}

/// The upper Koszul simplicial complex `K^b(I)`, on the variables of the
/// support of `b`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &Monomial) -> SimplicialComplex {
    let support = b.support();
    let mut faces = Vec::new();
    for mask in 0u64..(1u64 << support.len()) {
        let mut e = b.exponents().to_vec();
        for (bit, &var) in support.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                e[var] -= 1;
            }
        }
        if ideal.contains(&Monomial::from_exponents(e)) {
            let mut face = 0u64;
            for (bit, &var) in support.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    face |= 1 << var;
                }
            }
            faces.push(face);
        }
    }
    SimplicialComplex::from_faces(faces)
}

pub fn betti_numbers(ideal: &MonomialIdeal, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal, limits)?;
    let mut table = BettiTable::default();
    for b in lattice.elements() {
        let homology = upper_koszul_complex(ideal, b).reduced_homology()?;
        // homology[k + 1] = H̃_k contributes to β_{k+1}
        for (idx, &rank) in homology.iter().enumerate() {
            table.insert(idx, b.clone(), rank);
        }
    }
    Ok(table)
}

/// Chains of the open interval `(1, b)` of the lcm lattice, each chain a
/// list of element indices in increasing order. The empty chain is included.
pub fn open_interval_chains(lattice: &LcmLattice, b: &Monomial, max_chains: usize) -> Result<Vec<Vec<usize>>> {
    let below: Vec<usize> = lattice
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_one() && *c != b && c.divides(b))
        .map(|(i, _)| i)
        .collect();
    let mut chains = alloc::vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    while let Some(chain) = stack.pop() {
        let last = chain.last().map(|&i| &lattice.elements()[i]);
        for &i in &below {
            let c = &lattice.elements()[i];
            let extends = match last {
                None => true,
                Some(l) => l != c && l.divides(c) && chain.last().is_some_and(|&li| li < i),
            };
            if extends {
                let mut next = chain.clone();
                next.push(i);
                chains.push(next.clone());
                if chains.len() > max_chains {
                    return Err(Error::Resource { what: "chains in an lcm-lattice interval", cap: max_chains });
                }
                stack.push(next);
            }
        }
    }
    Ok(chains)
}

/// Betti numbers from the order complexes of the open lattice intervals.
/// Exponential in the lattice size; kept as an independent route for
/// cross-checking [`betti_numbers`].
pub fn betti_numbers_order_complex(ideal: &MonomialIdeal, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal, limits)?;
    let mut table = BettiTable::default();
    for b in lattice.elements().iter().filter(|b| !b.is_one()) {
        let chains = open_interval_chains(&lattice, b, limits.max_chains)?;
        let homology = chain_complex_homology(&chains)?;
        for (idx, &rank) in homology.iter().enumerate() {
            table.insert(idx, b.clone(), rank);
        }
    }
    Ok(table)
}

/// Reduced homology of an order complex given by its chains (faces as
/// sorted index lists, including the empty face).
fn chain_complex_homology(chains: &[Vec<usize>]) -> Result<Vec<u64>> {
    let mut by_size: Vec<Vec<&Vec<usize>>> = Vec::new();
    for c in chains {
        if by_size.len() <= c.len() {
            by_size.resize(c.len() + 1, Vec::new());
        }
        by_size[c.len()].push(c);
    }
    let mut ranks = alloc::vec![0usize; by_size.len() + 1];
    for size in 1..by_size.len() {
        let index: BTreeMap<&Vec<usize>, usize> = by_size[size - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows = by_size[size]
            .iter()
            .map(|face| {
                let mut row = alloc::vec![0i64; by_size[size - 1].len()];
                for drop in 0..face.len() {
                    let mut sub = (*face).clone();
                    sub.remove(drop);
                    if let Some(&i) = index.get(&sub) {
                        row[i] = if drop % 2 == 0 { 1 } else { -1 };
                    }
                }
                row
            })
            .collect();
        ranks[size] = linalg::rank(rows)?;
    }
    Ok((0..by_size.len()).map(|size| (by_size[size].len() - ranks[size] - ranks[size + 1]) as u64).collect())
}

/// Sheaf regularity of a monomial ideal on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regularity: i64,
    /// `(i, b)` attaining `max(|b| - i)`; ties prefer the smallest positive
    /// `i`, then the lexicographically larger multidegree.
    pub witness: (usize, Monomial),
    pub saturated_input: MonomialIdeal,
    pub betti: BettiTable,
}

/// Regularity of the saturation, `max { |b| - i : β_{i,b} ≠ 0 }`.
pub fn regularity(ideal: &MonomialIdeal, limits: &Limits) -> Result<RegularityReport> {
    let sat = ideal.saturate();
    if sat.is_zero() || sat.is_unit() {
        return Err(zero_or_unit_sheaf());
    }
    let betti = betti_numbers(&sat, limits)?;
    let (regularity, witness) = betti
        .entries()
        .map(|(i, b, _)| (i64::from(b.degree()) - i as i64, witness_preference(i), b))
        .max()
        .map(|(r, pref, b)| (r, (pref_index(pref), b.clone())))
        .ok_or_else(|| Error::Internal("empty Betti table for a nonzero ideal".into()))?;
    Ok(RegularityReport { regularity, witness, saturated_input: sat, betti })
}

// Among entries attaining the maximum, the witness is the one with the
// smallest positive homological index (generators only when no syzygy
// attains it), then the lexicographically largest multidegree.
fn witness_preference(i: usize) -> (bool, core::cmp::Reverse<usize>) {
    (i > 0, core::cmp::Reverse(i))
}

fn pref_index(pref: (bool, core::cmp::Reverse<usize>)) -> usize {
    pref.1 .0
}

/// `d_H(J)`: least `d` such that the degree-`d` piece of the saturation
/// generates the same sheaf.
pub fn generation_degree(ideal: &MonomialIdeal, limits: &Limits) -> Result<u32> {
    let report = regularity(ideal, limits)?;
    generation_degree_bounded(&report.saturated_input, report.regularity)
}

/// Search `0..=upper` for the generation degree of a saturated ideal.
/// Global generation at the regularity bounds the search.
pub fn generation_degree_bounded(saturated: &MonomialIdeal, upper: i64) -> Result<u32> {
    if saturated.is_zero() || saturated.is_unit() {
        return Err(zero_or_unit_sheaf());
    }
    let upper = u32::try_from(upper.max(0)).unwrap_or(u32::MAX);
    // below the smallest generator degree the piece is empty
    let start = saturated.generators().iter().map(Monomial::degree).min().unwrap_or(0);
    for d in start..=upper {
        if saturated.truncation(d).saturate() == *saturated {
            return Ok(d);
        }
    }
    Err(Error::Internal(alloc::format!("no generation degree found up to the regularity {upper}")))
}
