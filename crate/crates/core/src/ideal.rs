//! Monomial ideals in canonical minimal form.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

/// A monomial ideal, stored by its unique minimal generating set.
///
/// Generators are kept sorted by exponent vector, so structural equality is
/// ideal equality. The empty generating set is the zero ideal; the single
/// generator `1` is the unit ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Ring,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, minimalized.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Self::from_checked(ring.clone(), gens))
    }

    pub fn from_exponents(ring: &Ring, gens: &[&[u32]]) -> Result<Self> {
        Self::new(ring, gens.iter().map(|e| Monomial::from_exponents(e.to_vec())))
    }

    pub fn zero(ring: &Ring) -> Self {
        MonomialIdeal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        MonomialIdeal { ring: ring.clone(), generators: alloc::vec![ring.one()] }
    }

    /// The ideal generated by the variables with the given indices.
    pub fn variables(ring: &Ring, indices: &[usize]) -> Self {
        Self::from_checked(ring.clone(), indices.iter().map(|&i| ring.variable(i)).collect())
    }

    /// The irrelevant ideal `(x_0, ..., x_n)`.
    pub fn irrelevant(ring: &Ring) -> Self {
        let all: Vec<usize> = (0..ring.num_variables()).collect();
        Self::variables(ring, &all)
    }

    pub(crate) fn from_checked(ring: Ring, gens: Vec<Monomial>) -> Self {
        MonomialIdeal { ring, generators: minimalize(gens) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Componentwise maximum of the generator exponents.
    pub fn exponent_bounds(&self) -> Vec<u32> {
        let mut bound = alloc::vec![0; self.ring.num_variables()];
        for g in &self.generators {
            for (b, &e) in bound.iter_mut().zip(g.exponents()) {
                *b = (*b).max(e);
            }
        }
        bound
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ok(Self::from_checked(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::from_checked(self.ring.clone(), gens))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::from_checked(self.ring.clone(), gens))
    }

    /// `I^p` by repeated squaring, minimalizing after every multiplication.
    pub fn power(&self, p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("power exponent must be positive".into()));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut k = p;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.product(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.product(&base)?;
        }
        Ok(result.expect("p >= 1"))
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> Result<Self> {
        self.ring.check(m)?;
        let gens = self.generators.iter().map(|g| g.quotient_by(m)).collect();
        Ok(Self::from_checked(self.ring.clone(), gens))
    }

    /// `(I : J)` for a monomial ideal `J`, as the intersection of the colons
    /// by its generators.
    pub fn colon_ideal(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: Option<Self> = None;
        for g in &other.generators {
            let c = self.colon(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?,
            });
        }
        // (I : 0) is the whole ring.
        Ok(acc.unwrap_or_else(|| Self::unit(&self.ring)))
    }

    /// `(I : P^∞)` for an ideal `P` generated by variables, by iterating the
    /// colon until it stabilizes.
    pub fn saturation_by(&self, prime: &Self) -> Result<Self> {
        self.same_ring(prime)?;
        if prime.generators.iter().any(|g| g.degree() != 1) {
            return Err(Error::Structural("saturation requires an ideal generated by variables".into()));
        }
        let mut current = self.clone();
        loop {
            let next = current.colon_ideal(prime)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// `(I : x_j^∞)`: drop variable `j` from every generator.
    pub fn saturation_by_variable(&self, j: usize) -> Self {
        let gens = self.generators.iter().map(|g| g.without_variable(j)).collect();
        Self::from_checked(self.ring.clone(), gens)
    }

    /// Saturation with respect to the irrelevant ideal. Two ideals define the
    /// same sheaf on `P^n` exactly when their saturations agree.
    ///
    /// Computed as `∩_j (I : x_j^∞)`, which equals `I : m^∞` for monomial
    /// ideals.
    pub fn saturate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.ring.num_variables();
        let mut acc = self.saturation_by_variable(0);
        for j in 1..n {
            let next = self.saturation_by_variable(j);
            acc = acc.intersection(&next).expect("same ring");
        }
        acc
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    pub fn radical(&self) -> Self {
        let gens = self.generators.iter().map(Monomial::support_monomial).collect();
        Self::from_checked(self.ring.clone(), gens)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(other.generators.iter().all(|g| self.contains(g)))
    }

    /// All degree-`d` monomials of the ring lying in the ideal.
    pub fn graded_piece(&self, d: u32) -> Vec<Monomial> {
        self.ring.monomials_of_degree(d).into_iter().filter(|m| self.contains(m)).collect()
    }

    /// The ideal generated by the degree-`d` piece, built from generator
    /// multiples rather than by enumerating the whole degree.
    pub fn truncation(&self, d: u32) -> Self {
        let mut gens = Vec::new();
        for g in &self.generators {
            let dg = g.degree();
            if dg > d {
                continue;
            }
            for m in self.ring.monomials_of_degree(d - dg) {
                gens.push(g.mul(&m));
            }
        }
        Self::from_checked(self.ring.clone(), gens)
    }

    /// The dehomogenization on the chart `x_c = 1`, kept in the same ring
    /// (generators simply no longer involve `x_c`).
    pub fn chart(&self, c: usize) -> Self {
        self.saturation_by_variable(c)
    }

    pub fn display(&self) -> DisplayIdeal<'_> {
        DisplayIdeal(self)
    }
}

/// Canonical minimal generating set: sorted, deduplicated, no generator
/// divisible by another.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

pub struct DisplayIdeal<'a>(&'a MonomialIdeal);

impl fmt::Display for DisplayIdeal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ideal = self.0;
        f.write_str("(")?;
        for (i, g) in ideal.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", ideal.ring.display(g))?;
        }
        if ideal.generators.is_empty() {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}
