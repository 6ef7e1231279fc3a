//! Nef boundaries on abelian surfaces given by Néron–Severi lattice data.
//!
//! On an abelian surface the nef cone is the closed half of the quadratic
//! cone `{α : α² ≥ 0}` containing a fixed ample class `h`. The least `s`
//! with `sH − C` nef is then a root of a quadratic, so it lives in a real
//! quadratic field.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

type Big = BigRational;

fn big(q: Rational) -> Big {
    Big::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

fn small(q: &Big) -> Option<Rational> {
    Some(Rational::new(q.numer().to_i64()?, q.denom().to_i64()?))
}

/// `rational + coefficient·√radicand` with a squarefree radicand, over
/// arbitrary-precision rationals. Rational numbers use radicand 1 and
/// coefficient 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    rational: Big,
    coefficient: Big,
    radicand: i64,
}

impl QuadraticIrrational {
    pub fn from_rational(q: Rational) -> Self {
        Self::from_big(big(q))
    }

    fn from_big(q: Big) -> Self {
        QuadraticIrrational { rational: q, coefficient: Big::zero(), radicand: 1 }
    }

    /// `a + b·√n` for an integer `n ≥ 0`, normalized.
    pub fn new(a: Rational, b: Rational, n: i64) -> Result<Self> {
        Self::new_big(big(a), big(b), n)
    }

    fn new_big(a: Big, b: Big, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::Domain("negative radicand".into()));
        }
        if n == 0 || b.is_zero() {
            return Ok(Self::from_big(a));
        }
        let (square, free) = split_square(n);
        let b = b * Big::from_integer(BigInt::from(square));
        if free == 1 {
            return Ok(Self::from_big(a + b));
        }
        Ok(QuadraticIrrational { rational: a, coefficient: b, radicand: free })
    }

    /// `√q` for a rational `q ≥ 0`.
    pub fn sqrt(q: Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let (num, den) = (*q.numer(), *q.denom());
        let n = num.checked_mul(den).ok_or(Error::Resource { what: "radicand size", cap: 63 })?;
        Self::new(Rational::zero(), Rational::new(1, den), n)
    }

    /// Rational part, when it fits in 64-bit integers.
    pub fn rational_part(&self) -> Option<Rational> {
        small(&self.rational)
    }

    /// Coefficient of the square root, when it fits in 64-bit integers.
    pub fn irrational_coefficient(&self) -> Option<Rational> {
        small(&self.coefficient)
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            small(&self.rational)
        } else {
            None
        }
    }

    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.coefficient;
        let sa = a.cmp(&Big::zero());
        let sb = b.cmp(&Big::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²·D
        let a2 = a * a;
        let b2d = b * b * Big::from_integer(BigInt::from(self.radicand));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Field of a binary operation, if the two operands share one.
    fn common_radicand(&self, other: &Self) -> Result<i64> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(1),
            (true, false) => Ok(other.radicand),
            (false, true) => Ok(self.radicand),
            (false, false) if self.radicand == other.radicand => Ok(self.radicand),
            _ => Err(Error::Domain("quadratic irrationals from different fields".into())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Self::new_big(&self.rational + &other.rational, &self.coefficient + &other.coefficient, d)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dq = Big::from_integer(BigInt::from(d));
        Self::new_big(
            &self.rational * &other.rational + &self.coefficient * &other.coefficient * dq,
            &self.rational * &other.coefficient + &self.coefficient * &other.rational,
            d,
        )
    }

    pub fn scale(&self, q: Rational) -> Self {
        let q = big(q);
        QuadraticIrrational {
            rational: &self.rational * &q,
            coefficient: &self.coefficient * &q,
            radicand: self.radicand,
        }
        .normalized()
    }

    pub fn add_rational(&self, q: Rational) -> Self {
        QuadraticIrrational { rational: &self.rational + big(q), ..self.clone() }
    }

    fn normalized(self) -> Self {
        if self.coefficient.is_zero() {
            Self::from_big(self.rational)
        } else {
            self
        }
    }

    /// Floating-point value, for display only. The caller supplies the
    /// square root.
    pub fn approximate(&self, sqrt: impl Fn(f64) -> f64) -> f64 {
        let f = |q: &Big| q.to_f64().unwrap_or(f64::NAN);
        f(&self.rational) + f(&self.coefficient) * sqrt(self.radicand as f64)
    }
}

fn split_square(n: i64) -> (i64, i64) {
    let mut square = 1i64;
    let mut free = n;
    let mut p = 2i64;
    while p * p <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, free)
}

impl PartialOrd for QuadraticIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.checked_sub(other).ok()?.signum())
    }
}

impl Neg for QuadraticIrrational {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticIrrational { rational: -self.rational, coefficient: -self.coefficient, radicand: self.radicand }
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        // common denominator form (p + q√D)/m
        let m = self.rational.denom().lcm(self.coefficient.denom());
        let p = (&self.rational * Big::from_integer(m.clone())).to_integer();
        let q = (&self.coefficient * Big::from_integer(m.clone())).to_integer();
        let root = if q.is_one() {
            alloc::format!("√{}", self.radicand)
        } else if (-q.clone()).is_one() {
            alloc::format!("-√{}", self.radicand)
        } else {
            alloc::format!("{q}√{}", self.radicand)
        };
        let body = if p.is_zero() {
            root
        } else if q.is_positive() {
            alloc::format!("{p}+{root}")
        } else {
            alloc::format!("{p}{root}")
        };
        if m.is_one() {
            f.write_str(&body)
        } else if p.is_zero() {
            write!(f, "{body}/{m}")
        } else {
            write!(f, "({body})/{m}")
        }
    }
}

/// A divisor class in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        DivisorClass { coords: coords.iter().map(|&c| Rational::from_integer(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coords: alloc::vec![Rational::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, q: Rational) -> Self {
        DivisorClass { coords: self.coords.iter().map(|c| c * q).collect() }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, other: &DivisorClass) -> DivisorClass {
        DivisorClass { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, other: &DivisorClass) -> DivisorClass {
        DivisorClass { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&DivisorClass> for Rational {
    type Output = DivisorClass;
    fn mul(self, d: &DivisorClass) -> DivisorClass {
        d.scale(self)
    }
}

/// A Néron–Severi lattice with its intersection form and a reference ample
/// class, under the abelian-surface nef criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSLattice {
    gram: Vec<Vec<i64>>,
    ample: Vec<i64>,
}

impl NSLattice {
    /// Checks symmetry, `h² > 0` and signature `(1, rank − 1)`.
    pub fn new(gram: Vec<Vec<i64>>, ample: Vec<i64>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::Structural("a lattice needs positive rank".into()));
        }
        if gram.iter().any(|row| row.len() != rank) {
            return Err(Error::Structural("the Gram matrix is not square".into()));
        }
        if ample.len() != rank {
            return Err(Error::Structural(alloc::format!(
                "reference class has {} coordinates in a rank {rank} lattice",
                ample.len()
            )));
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Structural("the Gram matrix is not symmetric".into()));
                }
            }
        }
        let (positive, negative) = signature(&gram)?;
        if positive != 1 || negative != rank - 1 {
            return Err(Error::Domain(alloc::format!(
                "intersection form has signature ({positive}, {negative}), expected (1, {})",
                rank - 1
            )));
        }
        let lattice = NSLattice { gram, ample };
        let h = DivisorClass::from_integers(&lattice.ample);
        if lattice.intersect(&h, &h)? <= Rational::zero() {
            return Err(Error::Domain("the reference class has nonpositive self-intersection".into()));
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn ample_reference(&self) -> DivisorClass {
        DivisorClass::from_integers(&self.ample)
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::Structural(alloc::format!(
                "class with {} coordinates in a rank {} lattice",
                d.rank(),
                self.rank()
            )))
        }
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        let mut total = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    total += a.coords[i] * b.coords[j] * Rational::from_integer(g);
                }
            }
        }
        Ok(total)
    }

    /// `α² ≥ 0` and `α·h ≥ 0`.
    pub fn is_nef(&self, alpha: &DivisorClass) -> Result<bool> {
        let h = self.ample_reference();
        Ok(self.intersect(alpha, alpha)? >= Rational::zero() && self.intersect(alpha, &h)? >= Rational::zero())
    }

    /// `H² > 0` and `H·h > 0`.
    pub fn is_ample_numerically(&self, h_class: &DivisorClass) -> Result<bool> {
        let h = self.ample_reference();
        Ok(self.intersect(h_class, h_class)? > Rational::zero() && self.intersect(h_class, &h)? > Rational::zero())
    }
}

/// Counts positive and negative pivots of a symmetric congruence
/// diagonalization. A degenerate form is rejected.
pub fn signature(gram: &[Vec<i64>]) -> Result<(usize, usize)> {
    type Q = Ratio<i128>;
    let n = gram.len();
    let mut m: Vec<Vec<Q>> =
        gram.iter().map(|row| row.iter().map(|&x| Q::from_integer(i128::from(x))).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][i].is_zero());
        match pivot {
            Some(p) => {
                m.swap(k, p);
                for row in m.iter_mut() {
                    row.swap(k, p);
                }
            }
            None => {
                // all remaining diagonal entries vanish: e_i ← e_i + e_j
                let Some((i, j)) = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
                else {
                    return Err(Error::Domain("the intersection form is degenerate".into()));
                };
                let row_j = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(&row_j) {
                    *x += y;
                }
                for row in m.iter_mut() {
                    let y = row[j];
                    row[i] += y;
                }
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            }
        }
        let d = m[k][k];
        for i in k + 1..n {
            let factor = m[i][k] / d;
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= factor * v;
            }
            for j in k..n {
                let v = m[j][k];
                m[j][i] -= factor * v;
            }
        }
        if d > Q::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok((pos, neg))
}

/// Least `s ≥ 0` with `sH − C` nef.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialS {
    pub value: QuadraticIrrational,
    /// `−C` is already nef, so every `s ≥ 0` works and the value is `0`.
    pub nef_at_zero: bool,
    /// `(H·C)² − H²·C²`, whose square class decides rationality.
    pub discriminant: Rational,
}

pub fn s_invariant_divisorial(
    lattice: &NSLattice,
    h_class: &DivisorClass,
    c_class: &DivisorClass,
) -> Result<DivisorialS> {
    lattice.check(h_class)?;
    lattice.check(c_class)?;
    if !lattice.is_ample_numerically(h_class)? {
        return Err(Error::Domain("H is not ample: need H² > 0 and H·h > 0".into()));
    }
    let h = lattice.ample_reference();
    let hh = lattice.intersect(h_class, h_class)?;
    let hc = lattice.intersect(h_class, c_class)?;
    let cc = lattice.intersect(c_class, c_class)?;
    let h_ref = lattice.intersect(h_class, &h)?;
    let c_ref = lattice.intersect(c_class, &h)?;
    let discriminant = hc * hc - hh * cc;
    if lattice.is_nef(&(&DivisorClass::zero(lattice.rank()) - c_class))? {
        return Ok(DivisorialS {
            value: QuadraticIrrational::from_rational(Rational::zero()),
            nef_at_zero: true,
            discriminant,
        });
    }
    if discriminant.is_negative() {
        return Err(Error::Internal("negative discriminant contradicts the signature".into()));
    }
    let root = QuadraticIrrational::sqrt(discriminant)?;
    let inv = Rational::one() / hh;
    let roots = [root.scale(-inv).add_rational(hc * inv), root.scale(inv).add_rational(hc * inv)];
    let linear = QuadraticIrrational::from_rational(c_ref / h_ref);
    let zero = QuadraticIrrational::from_rational(Rational::zero());
    let mut best: Option<QuadraticIrrational> = None;
    for candidate in roots.into_iter().chain([linear]) {
        if candidate < zero || !nef_at(lattice, h_class, c_class, &candidate)? {
            continue;
        }
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    let value = best.ok_or_else(|| Error::Domain("sH − C is never on the nef boundary".into()))?;
    let probe = QuadraticIrrational::from_rational(Rational::new(1, 1_000_000));
    if value > zero && nef_at(lattice, h_class, c_class, &value.checked_sub(&probe)?)? {
        return Err(Error::Internal("the nef boundary value is not minimal".into()));
    }
    Ok(DivisorialS { value, nef_at_zero: false, discriminant })
}

/// Whether `sH − C` is nef for an exact quadratic irrational `s`.
pub fn nef_at(
    lattice: &NSLattice,
    h_class: &DivisorClass,
    c_class: &DivisorClass,
    s: &QuadraticIrrational,
) -> Result<bool> {
    let h = lattice.ample_reference();
    let q = |r: Rational| QuadraticIrrational::from_rational(r);
    let hh = q(lattice.intersect(h_class, h_class)?);
    let hc = q(lattice.intersect(h_class, c_class)?);
    let cc = q(lattice.intersect(c_class, c_class)?);
    let h_ref = q(lattice.intersect(h_class, &h)?);
    let c_ref = q(lattice.intersect(c_class, &h)?);
    // (sH − C)² = s²H² − 2s H·C + C²
    let square = s
        .checked_mul(s)?
        .checked_mul(&hh)?
        .checked_sub(&s.checked_mul(&hc)?.scale(Rational::from_integer(2)))?
        .checked_add(&cc)?;
    let linear = s.checked_mul(&h_ref)?.checked_sub(&c_ref)?;
    Ok(square.signum() != Ordering::Less && linear.signum() != Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleReport {
    pub original: QuadraticIrrational,
    pub rescaled: QuadraticIrrational,
    pub expected: QuadraticIrrational,
    pub holds: bool,
}

/// Compares `s(aH, C + bH)` with `(s(H, C) + b)/a`.
pub fn rescale_check(
    lattice: &NSLattice,
    h_class: &DivisorClass,
    c_class: &DivisorClass,
    a: u32,
    b: u32,
) -> Result<RescaleReport> {
    if a == 0 {
        return Err(Error::Domain("the rescaling factor must be positive".into()));
    }
    let original = s_invariant_divisorial(lattice, h_class, c_class)?.value;
    let a_q = Rational::from_integer(i64::from(a));
    let b_q = Rational::from_integer(i64::from(b));
    let scaled_h = h_class.scale(a_q);
    let shifted_c = c_class + &h_class.scale(b_q);
    let rescaled = s_invariant_divisorial(lattice, &scaled_h, &shifted_c)?.value;
    let expected = original.add_rational(b_q).scale(Rational::one() / a_q);
    Ok(RescaleReport { holds: rescaled == expected, original, rescaled, expected })
}

/// Integer square root test, exposed for discriminant classification.
pub fn is_perfect_square(q: Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |x: i64| {
        let r = x.sqrt();
        r * r == x
    };
    sq(*q.numer()) && sq(*q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn exe() -> NSLattice {
        NSLattice::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]], vec![1, 1, 0]).unwrap()
    }

    fn class(c: &[i64]) -> DivisorClass {
        DivisorClass::from_integers(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap(), (1, 2));
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]).unwrap(), (1, 1));
        assert_eq!(signature(&[vec![1, 0], vec![0, 1]]).unwrap(), (2, 0));
        assert!(signature(&[vec![1, 1], vec![1, 1]]).is_err());
        assert!(NSLattice::new(vec![vec![1, 0], vec![0, 1]], vec![1, 0]).is_err());
        assert!(NSLattice::new(vec![vec![0, 1], vec![2, 0]], vec![1, 1]).is_err());
    }

    #[test]
    fn nef_examples() {
        let l = exe();
        assert!(l.is_nef(&class(&[1, 1, 0])).unwrap());
        assert!(!l.is_nef(&class(&[-1, 0, 0])).unwrap());
        assert!(l.is_nef(&class(&[1, 0, 0])).unwrap());
        assert!(l.is_nef(&class(&[1, 0])).is_err());
    }

    #[test]
    fn irrational_boundary() {
        let l = exe();
        let s = s_invariant_divisorial(&l, &class(&[1, 2, 0]), &class(&[1, 1, 1])).unwrap();
        let expected = QuadraticIrrational::new(q(3, 2), q(1, 2), 3).unwrap();
        assert_eq!(s.value, expected);
        assert!(!s.value.is_rational());
        assert!(!is_perfect_square(s.discriminant));
        assert_eq!(alloc::format!("{}", s.value), "(3+√3)/2");
        let eps = QuadraticIrrational::from_rational(q(1, 1_000_000));
        let h = class(&[1, 2, 0]);
        let c = class(&[1, 1, 1]);
        assert!(nef_at(&l, &h, &c, &s.value.checked_add(&eps).unwrap()).unwrap());
        assert!(!nef_at(&l, &h, &c, &s.value.checked_sub(&eps).unwrap()).unwrap());
    }

    #[test]
    fn rational_boundary_and_zero() {
        let l = exe();
        let s = s_invariant_divisorial(&l, &class(&[1, 1, 0]), &class(&[2, 1, 0])).unwrap();
        assert_eq!(s.value.as_rational(), Some(q(2, 1)));
        let z = s_invariant_divisorial(&l, &class(&[1, 1, 0]), &DivisorClass::zero(3)).unwrap();
        assert_eq!(z.value.as_rational(), Some(q(0, 1)));
        assert!(z.nef_at_zero);
        assert!(s_invariant_divisorial(&l, &class(&[1, 0, 0]), &class(&[1, 1, 1])).is_err());
    }

    #[test]
    fn rescaling() {
        let l = exe();
        let (h, c) = (class(&[1, 2, 0]), class(&[1, 1, 1]));
        let r = rescale_check(&l, &h, &c, 2, 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.rescaled, QuadraticIrrational::new(q(3, 4), q(1, 4), 3).unwrap());
        let r = rescale_check(&l, &h, &c, 1, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.rescaled, r.original.add_rational(q(3, 1)));
    }

    #[test]
    fn quadratic_arithmetic() {
        let a = QuadraticIrrational::new(q(1, 1), q(1, 1), 8).unwrap();
        assert_eq!((a.radicand(), a.irrational_coefficient()), (2, Some(q(2, 1))));
        assert_eq!(QuadraticIrrational::new(q(1, 1), q(1, 1), 9).unwrap().as_rational(), Some(q(4, 1)));
        let s3 = QuadraticIrrational::new(q(0, 1), q(1, 1), 3).unwrap();
        assert_eq!(s3.checked_mul(&s3).unwrap().as_rational(), Some(q(3, 1)));
        assert!(s3 > QuadraticIrrational::from_rational(q(173, 100)));
        assert!(s3 < QuadraticIrrational::from_rational(q(174, 100)));
        let s2 = QuadraticIrrational::new(q(0, 1), q(1, 1), 2).unwrap();
        assert!(s2.checked_add(&s3).is_err());
        assert_eq!(
            QuadraticIrrational::sqrt(q(48, 1)).unwrap(),
            QuadraticIrrational::new(q(0, 1), q(4, 1), 3).unwrap()
        );
    }
}
