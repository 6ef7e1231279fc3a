//! Brute-force oracles and the seeded random ideal suite shared by the
//! integration tests. Nothing here calls the library's own algorithms for
//! the quantity being checked.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use monoideal_core::{Monomial, MonomialIdeal, Ring};
use num_rational::Ratio;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5eed_1de4;
pub const SUITE_SIZE: usize = 50;

pub fn ring(n: usize) -> Ring {
    Ring::new(["x", "y", "z", "w", "v"].into_iter().take(n)).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(r, gens).unwrap()
}

pub fn pathology(d: u32) -> MonomialIdeal {
    ideal(&ring(4), &[&[2, 0, 0, 0], &[1, 1, d, 0], &[0, 2, 0, 0]])
}

/// Random monomial ideals in 2 to 4 variables with 2 to 6 minimal
/// generators of degree at most 4, keeping only those defining a proper
/// nonempty subscheme. Linear generators are rare so that they do not
/// swallow the others.
pub fn random_suite(seed: u64, size: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let n = rng.gen_range(2..=4);
        let r = ring(n);
        let k = rng.gen_range(2..=6);
        let gens: Vec<Monomial> = (0..k)
            .map(|_| {
                let degree = if rng.gen_bool(0.1) { 1 } else { rng.gen_range(2..=4) };
                let mut e = vec![0u32; n];
                for _ in 0..degree {
                    e[rng.gen_range(0..n)] += 1;
                }
                Monomial::from_exponents(e)
            })
            .collect();
        let i = MonomialIdeal::new(&r, gens).unwrap();
        let sat = i.saturate();
        if i.num_generators() >= 2 && !sat.is_unit() && !sat.is_zero() {
            out.push(i);
        }
    }
    out
}

pub fn suite() -> Vec<MonomialIdeal> {
    random_suite(SUITE_SEED, SUITE_SIZE)
}

/// Hand-picked examples used alongside the random suite.
pub fn bundled_examples() -> Vec<(&'static str, MonomialIdeal)> {
    let r3 = ring(3);
    let mut out = vec![
        ("point", MonomialIdeal::variables(&r3, &[0, 1])),
        ("quadric", ideal(&r3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]])),
        ("complete intersection", ideal(&r3, &[&[2, 0, 0], &[0, 2, 0]])),
        ("line with embedded point", ideal(&r3, &[&[2, 0, 0], &[1, 1, 0]])),
        ("two lines", ideal(&r3, &[&[1, 1, 0]])),
        ("staircase", ideal(&r3, &[&[3, 0, 0], &[1, 1, 0], &[0, 3, 0]])),
    ];
    for d in 1..=3 {
        out.push(("pathology", pathology(d)));
    }
    out
}

fn exact_rank(rows: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<Ratio<i128>>> =
        rows.into_iter().map(|r| r.into_iter().map(|x| Ratio::from_integer(i128::from(x))).collect()).collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col] / m[rank][col];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from the multidegree strands of the Taylor complex: at
/// multidegree `b` the generator subsets with lcm exactly `b`, with the
/// boundary kept only between subsets of equal lcm.
pub fn taylor_betti(i: &MonomialIdeal) -> BTreeMap<(usize, Vec<u32>), u64> {
    let gens = i.generators();
    let k = gens.len();
    assert!(k <= 12, "Taylor oracle is exponential");
    let mut by_lcm: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for mask in 1u32..(1 << k) {
        let mut l = vec![0u32; i.ring().num_variables()];
        for (j, g) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (a, &e) in l.iter_mut().zip(g.exponents()) {
                    *a = (*a).max(e);
                }
            }
        }
        by_lcm.entry(l).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, masks) in by_lcm {
        let max_size = masks.iter().map(|m| m.count_ones() as usize).max().unwrap();
        let of_size =
            |s: usize| -> Vec<u32> { masks.iter().copied().filter(|m| m.count_ones() as usize == s).collect() };
        // rank of ∂ from size s to size s-1
        let boundary_rank = |s: usize| -> usize {
            if s < 2 {
                return 0;
            }
            let upper = of_size(s);
            let lower = of_size(s - 1);
            if upper.is_empty() || lower.is_empty() {
                return 0;
            }
            let rows = upper
                .iter()
                .map(|&f| {
                    lower
                        .iter()
                        .map(|&g| {
                            if g & f != g {
                                return 0;
                            }
                            let removed = (f ^ g).trailing_zeros();
                            let before = (f & ((1 << removed) - 1)).count_ones();
                            if before % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            exact_rank(rows)
        };
        for s in 1..=max_size {
            let dim = of_size(s).len();
            let h = dim - boundary_rank(s) - boundary_rank(s + 1);
            if h > 0 {
                out.insert((s - 1, b.clone()), h as u64);
            }
        }
    }
    out
}

/// Irreducible decomposition by recursive splitting of mixed generators,
/// memoized on the canonical generator list.
pub fn splitting_decomposition(i: &MonomialIdeal) -> BTreeSet<Vec<Vec<u32>>> {
    fn go(i: &MonomialIdeal, memo: &mut HashMap<Vec<Vec<u32>>, BTreeSet<Vec<Vec<u32>>>>) -> BTreeSet<Vec<Vec<u32>>> {
        let key: Vec<Vec<u32>> = i.generators().iter().map(|g| g.exponents().to_vec()).collect();
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let out = if i.is_unit() {
            BTreeSet::new()
        } else if let Some(g) = i.generators().iter().find(|g| g.support().len() > 1) {
            let j = g.support()[0];
            let mut pure = vec![0; g.len()];
            pure[j] = g.exponents()[j];
            let rest = g.without_variable(j);
            let r = i.ring();
            let a = i.sum(&MonomialIdeal::new(r, [Monomial::from_exponents(pure)]).unwrap()).unwrap();
            let b = i.sum(&MonomialIdeal::new(r, [rest]).unwrap()).unwrap();
            let mut s = go(&a, memo);
            s.extend(go(&b, memo));
            s
        } else {
            BTreeSet::from([key.clone()])
        };
        memo.insert(key, out.clone());
        out
    }
    let mut memo = HashMap::new();
    let all = go(i, &mut memo);
    // drop components containing another one
    let contains = |big: &Vec<Vec<u32>>, small: &Vec<Vec<u32>>| {
        small.iter().all(|s| big.iter().any(|g| g.iter().zip(s).all(|(a, b)| a <= b)))
    };
    all.iter().filter(|q| !all.iter().any(|o| o != *q && contains(q, o))).cloned().collect()
}

/// `base^t ⊆ target` by forming the power.
pub fn literal_power_contained(base: &MonomialIdeal, t: u32, target: &MonomialIdeal) -> bool {
    base.power(t).unwrap().generators().iter().all(|g| target.contains(g))
}

/// Integral dependence test: `m^k ∈ I^k` for some `k ≤ max_k`.
pub fn integrally_dependent(i: &MonomialIdeal, m: &Monomial, max_k: u32) -> bool {
    (1..=max_k).any(|k| i.power(k).unwrap().contains(&m.pow(k)))
}

/// Standard monomials of `i` of total degree `d`, by enumeration.
pub fn standard_monomials(i: &MonomialIdeal, d: u32) -> Vec<Monomial> {
    i.ring().monomials_of_degree(d).into_iter().filter(|m| !i.contains(m)).collect()
}

pub fn q(n: i64, d: i64) -> monoideal_core::Rational {
    monoideal_core::Rational::new(n, d)
}
