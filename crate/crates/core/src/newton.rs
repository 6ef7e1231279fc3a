//! Newton polyhedra of monomial ideals and their facet valuations.
//!
//! For a monomial ideal `J` the Rees valuations are the monomial valuations
//! given by the inner facet normals of `NP(J) = conv(exponents) + R^N_{≥0}`.
//! A facet `v·x ≥ r` with `r > 0` contributes an exceptional component of
//! the normalized blow-up with coefficient `r`, centered on the coordinate
//! subspace cut out by the variables in the support of `v`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::ring::Monomial;
use crate::Rational;

/// A supporting inequality `normal · x ≥ offset` of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, m: &Monomial) -> i64 {
        m.dot(&self.normal)
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    ideal: MonomialIdeal,
    facets: Vec<Facet>,
    vertices: Vec<Monomial>,
}

impl NewtonPolyhedron {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Facets with positive offset, sorted.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    /// `x ∈ NP(J)` for a lattice point `x ≥ 0`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.facets.iter().all(|f| f.value(m) >= f.offset)
    }
}

pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    if ideal.is_zero() {
        return Err(Error::Domain("the Newton polyhedron of the zero ideal is empty".into()));
    }
    let n = ideal.ring().num_variables();
    let points = ideal.generators();
    let all = all_facets(points, n);
    let vertices = points
        .iter()
        .filter(|p| {
            // tight valid inequalities: facets through p plus coordinate
            // hyperplanes x_j = 0 containing p
            let mut tight: Vec<Vec<i64>> =
                all.iter().filter(|f| f.value(p) == f.offset).map(|f| f.normal.clone()).collect();
            for (j, &e) in p.exponents().iter().enumerate() {
                if e == 0 {
                    let mut ej = alloc::vec![0i64; n];
                    ej[j] = 1;
                    tight.push(ej);
                }
            }
            linalg::rank(tight).map(|r| r == n).unwrap_or(false)
        })
        .cloned()
        .collect();
    let facets = all.into_iter().filter(|f| f.offset > 0).collect();
    Ok(NewtonPolyhedron { ideal: ideal.clone(), facets, vertices })
}

/// Every facet of `conv(points) + R^n_{≥0}`, including offset-zero ones.
///
/// Each facet is spanned by `n` affinely independent elements among the
/// points and the recession rays `e_j`, at least one of them a point. We
/// enumerate such `n`-subsets, take the normal of the hyperplane they span,
/// and keep it when it is nonnegative and the base point minimizes it.
fn all_facets(points: &[Monomial], n: usize) -> Vec<Facet> {
    let pts: Vec<Vec<i64>> = points.iter().map(|p| p.exponents().iter().map(|&e| i64::from(e)).collect()).collect();
    let mut facets = BTreeSet::new();
    let total = pts.len() + n;
    // element index < pts.len() is a point, otherwise the ray e_{idx - len}
    let mut combo: Vec<usize> = (0..n).collect();
    if total < n {
        return Vec::new();
    }
    loop {
        let base = combo[0];
        if base < pts.len() {
            let dirs: Vec<Vec<i64>> = combo[1..]
                .iter()
                .map(|&idx| {
                    if idx < pts.len() {
                        pts[idx].iter().zip(&pts[base]).map(|(a, b)| a - b).collect()
                    } else {
                        let mut e = alloc::vec![0i64; n];
                        e[idx - pts.len()] = 1;
                        e
                    }
                })
                .collect();
            let mut normal = linalg::cofactor_normal(&dirs, n);
            if normal.iter().all(|&x| x <= 0) {
                for x in &mut normal {
                    *x = -*x;
                }
            }
            if normal.iter().any(|&x| x != 0) && normal.iter().all(|&x| x >= 0) {
                let offset = pts.iter().map(|p| dot(p, &normal)).min().unwrap_or(0);
                if dot(&pts[base], &normal) == offset {
                    facets.insert(Facet { normal, offset });
                }
            }
        } else {
            // combinations are increasing, so no later one starts with a point
            break;
        }
        if !next_combination(&mut combo, total) {
            break;
        }
    }
    facets.into_iter().collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn next_combination(combo: &mut [usize], total: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < total - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A facet valuation of `NP(J)` with positive value on `J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReesValuation {
    pub normal: Vec<i64>,
    /// `r_i = min_{g ∈ J} normal · g`.
    pub coefficient: i64,
    /// Variables with positive weight: the center is `{x_j = 0 : j ∈ center}`.
    pub center: Vec<usize>,
    /// Projective dimension of the center, `N - |center| - 1`. Equals `-1`
    /// when the center is the irrelevant locus (empty in `P^n`).
    pub center_dimension: i64,
}

impl ReesValuation {
    /// Whether the center is a nonempty subvariety of `P^n`, i.e. a
    /// distinguished subvariety of the ideal sheaf.
    pub fn is_distinguished(&self) -> bool {
        self.center_dimension >= 0
    }
}

pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<Vec<ReesValuation>> {
    let np = newton_polyhedron(ideal)?;
    let n = ideal.ring().num_variables() as i64;
    Ok(np
        .facets
        .iter()
        .map(|f| {
            let center: Vec<usize> = f.normal.iter().enumerate().filter(|(_, v)| **v > 0).map(|(j, _)| j).collect();
            ReesValuation {
                normal: f.normal.clone(),
                coefficient: f.offset,
                center_dimension: n - center.len() as i64 - 1,
                center,
            }
        })
        .collect())
}

/// `r(J)`, the largest Rees coefficient over all facet valuations.
pub fn r_coefficient(ideal: &MonomialIdeal) -> Result<i64> {
    rees_valuations(ideal)?
        .iter()
        .map(|v| v.coefficient)
        .max()
        .ok_or_else(|| Error::Domain("the unit ideal has no Rees valuations".into()))
}

/// `r(J)` of the ideal sheaf on `P^n`: the largest coefficient among the
/// valuations whose center is a nonempty subvariety.
pub fn sheaf_r_coefficient(ideal: &MonomialIdeal) -> Result<i64> {
    rees_valuations(ideal)?
        .iter()
        .filter(|v| v.is_distinguished())
        .map(|v| v.coefficient)
        .max()
        .ok_or_else(|| Error::Domain("the ideal sheaf is trivial on projective space".into()))
}

/// `m ∈ \bar J`, decided by the facet inequalities.
pub fn closure_contains(ideal: &MonomialIdeal, m: &Monomial) -> Result<bool> {
    ideal.ring().check(m)?;
    Ok(newton_polyhedron(ideal)?.contains(m))
}

/// Integral closure: minimal lattice points of `NP(J)` inside the box
/// bounded by the componentwise vertex maxima.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let np = newton_polyhedron(ideal)?;
    let n = ideal.ring().num_variables();
    let mut bound = alloc::vec![0u32; n];
    for v in &np.vertices {
        for (b, &e) in bound.iter_mut().zip(v.exponents()) {
            *b = (*b).max(e);
        }
    }
    let mut gens = Vec::new();
    let mut point = alloc::vec![0u32; n];
    loop {
        let m = Monomial::from_exponents(point.clone());
        if np.contains(&m) {
            gens.push(m);
        }
        // odometer over the box
        let mut j = 0;
        loop {
            if j == n {
                return MonomialIdeal::new(ideal.ring(), gens);
            }
            if point[j] < bound[j] {
                point[j] += 1;
                break;
            }
            point[j] = 0;
            j += 1;
        }
    }
}

/// Both sides of the degree bound `Σ r_i s^{dim Z_i} deg Z_i ≤ s^n deg X`
/// with every `deg = 1`, plus the corollary `r(J) ≤ max(1, s)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub s_used: Rational,
    pub satisfied: bool,
    /// `r(J)` over distinguished valuations.
    pub r_sheaf: i64,
    /// `max(1, s)^n`.
    pub corollary_bound: Rational,
    pub corollary_satisfied: bool,
    /// Valuations centered on the irrelevant locus; reported, not summed.
    pub excluded: Vec<ReesValuation>,
    /// `(r_i, dim Z_i)` of every summed term.
    pub terms: Vec<(i64, i64)>,
}

pub fn bezout_check(ideal: &MonomialIdeal, s: Rational) -> Result<BezoutReport> {
    if s <= Rational::zero() {
        return Err(Error::Domain("the Bezout check needs s > 0".into()));
    }
    if ideal.is_zero() || ideal.saturate().is_unit() {
        return Err(Error::Domain("the Bezout check needs a nonzero, nontrivial ideal sheaf".into()));
    }
    let n = ideal.ring().projective_dimension() as i32;
    let vals = rees_valuations(ideal)?;
    let (summed, excluded): (Vec<_>, Vec<_>) = vals.into_iter().partition(ReesValuation::is_distinguished);
    let terms: Vec<(i64, i64)> = summed.iter().map(|v| (v.coefficient, v.center_dimension)).collect();
    let mut lhs = Rational::zero();
    for &(r, dim) in &terms {
        lhs += Rational::from_integer(r) * pow(s, dim as i32);
    }
    let rhs = pow(s, n);
    let r_sheaf = summed.iter().map(|v| v.coefficient).max().unwrap_or(0);
    let s_plus = if s > Rational::one() { s } else { Rational::one() };
    let corollary_bound = pow(s_plus, n);
    Ok(BezoutReport {
        satisfied: lhs <= rhs,
        corollary_satisfied: Rational::from_integer(r_sheaf) <= corollary_bound,
        lhs,
        rhs,
        s_used: s,
        r_sheaf,
        corollary_bound,
        excluded,
        terms,
    })
}

fn pow(s: Rational, k: i32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * s)
}
