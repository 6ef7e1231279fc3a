//! Polynomial rings and monomials.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A polynomial ring `k[x_0, ..., x_n]` over a field of characteristic zero,
/// identified by its ordered list of variable names.
///
/// Interpreted as the homogeneous coordinate ring of `P^n`; the grading is
/// total degree.
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Structural("a ring needs at least one variable".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Structural("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::Structural(alloc::format!("duplicate variable `{name}`")));
            }
        }
        Ok(Ring { names: names.into() })
    }

    pub fn num_variables(&self) -> usize {
        self.names.len()
    }

    /// Dimension `n` of the projective space `P^n` with this coordinate ring.
    pub fn projective_dimension(&self) -> usize {
        self.names.len() - 1
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial(alloc::vec![0; self.num_variables()])
    }

    pub fn variable(&self, index: usize) -> Monomial {
        let mut e = alloc::vec![0; self.num_variables()];
        e[index] = 1;
        Monomial(e)
    }

    pub fn monomial(&self, exponents: Vec<u32>) -> Result<Monomial> {
        if exponents.len() != self.num_variables() {
            return Err(Error::Structural(alloc::format!(
                "exponent vector of length {} in a ring with {} variables",
                exponents.len(),
                self.num_variables()
            )));
        }
        Ok(Monomial(exponents))
    }

    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.0.len() == self.num_variables() {
            Ok(())
        } else {
            Err(Error::Structural(alloc::format!(
                "monomial with {} exponents in a ring with {} variables",
                m.0.len(),
                self.num_variables()
            )))
        }
    }

    /// All monomials of total degree `degree`, in lexicographically
    /// decreasing exponent order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = alloc::vec![0u32; self.num_variables()];
        fill_degree(&mut current, 0, degree, &mut out);
        out
    }

    /// Renders a monomial using this ring's variable names, e.g. `x^2*y`.
    pub fn display<'a>(&'a self, m: &'a Monomial) -> DisplayMonomial<'a> {
        DisplayMonomial { ring: self, monomial: m }
    }
}

fn fill_degree(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// An exponent vector. Ordered lexicographically by exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn quotient_by(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Product of the variables dividing `self`.
    pub fn support_monomial(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| u32::from(e > 0)).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect()
    }

    /// The monomial with the exponent of variable `index` set to zero.
    pub fn without_variable(&self, index: usize) -> Monomial {
        let mut e = self.0.clone();
        e[index] = 0;
        Monomial(e)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn dot(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| i64::from(e) * w).sum()
    }
}

pub struct DisplayMonomial<'a> {
    ring: &'a Ring,
    monomial: &'a Monomial,
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.ring.names.iter().zip(self.monomial.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_empty_names() {
        assert!(Ring::new(["x", "x"]).is_err());
        assert!(Ring::new(Vec::<String>::new()).is_err());
        assert!(Ring::new(["x", ""]).is_err());
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(2).len(), 6);
        assert_eq!(r.monomials_of_degree(4).len(), 15);
        assert!(r.monomials_of_degree(3).iter().all(|m| m.degree() == 3));
    }

    #[test]
    fn display_uses_names() {
        let r = Ring::new(["x", "y"]).unwrap();
        let m = r.monomial(alloc::vec![2, 1]).unwrap();
        assert_eq!(alloc::format!("{}", r.display(&m)), "x^2*y");
        assert_eq!(alloc::format!("{}", r.display(&r.one())), "1");
    }
}
