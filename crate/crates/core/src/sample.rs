//! Seeded random rational data for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::{AlgebraSignature, CliffordElement};
use crate::rational::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-4..=4), rng.random_range(1..=3))
}

pub fn small_vector<R: Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    (0..k).map(|_| small_rational(rng)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// A rational point on the unit sphere of `ℝ^k` by inverse stereographic
/// projection of a random point of `ℝ^{k-1}`.
pub fn unit_vector<R: Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    if k == 1 {
        return vec![if rng.random_bool(0.5) { Rational::ONE } else { -Rational::ONE }];
    }
    let x = small_vector(rng, k - 1);
    let s = dot(&x, &x);
    let d = s + Rational::ONE;
    let mut u: Vec<Rational> = x.iter().map(|&xi| Rational::from_int(2) * xi / d).collect();
    u.push((s - Rational::ONE) / d);
    u
}

/// `v - h(u, v)·u` for a unit vector `u`.
pub fn project_out(v: &[Rational], u: &[Rational]) -> Vec<Rational> {
    let c = dot(u, v);
    v.iter().zip(u).map(|(&vi, &ui)| vi - c * ui).collect()
}

/// A sparse element with up to `terms` blades, restricted to even blades
/// when `even` is set.
pub fn element<R: Rng>(rng: &mut R, sig: AlgebraSignature, terms: usize, even: bool) -> CliffordElement {
    let full = sig.full_mask();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut mask = rng.random::<u32>() & full;
        if even && mask.count_ones() % 2 == 1 {
            mask ^= 1;
        }
        out.push((mask, small_rational(rng)));
    }
    CliffordElement::from_terms(sig, out).expect("mask within signature")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut r = rng(3);
        for k in 1..6 {
            let u = unit_vector(&mut r, k);
            assert_eq!(dot(&u, &u), Rational::ONE);
            let v = project_out(&small_vector(&mut r, k), &u);
            assert!(dot(&u, &v).is_zero());
        }
    }

    #[test]
    fn same_seed_same_samples() {
        assert_eq!(small_vector(&mut rng(9), 5), small_vector(&mut rng(9), 5));
    }
}
