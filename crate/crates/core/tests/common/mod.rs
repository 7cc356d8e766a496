#![allow(dead_code)]

use plainchart::poly::{PolyRing, Polynomial, RingRef};
use plainchart::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(vars: &[&str]) -> RingRef {
    PolyRing::grevlex(vars)
}

pub fn p(s: &str, r: &RingRef) -> Polynomial {
    plainchart::cli::parse_poly(s, r).unwrap_or_else(|e| panic!("parse `{s}`: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    Rational::new(n, d)
}

/// Random polynomial with up to `max_terms` terms of total degree <= `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, r: &RingRef, deg: u32, max_terms: usize) -> Polynomial {
    let n = r.arity();
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 {
            let i = rng.gen_range(0..n);
            e[i] += 1;
            budget -= 1;
        }
        let mut c = small_rational(rng);
        if c.is_zero() {
            c = Rational::one();
        }
        (e, c)
    });
    Polynomial::from_terms(r, terms).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A random center through the origin: `r` subvariety coordinates chosen
/// among `n`, and `f` in the remaining ones with a nonzero linear term in
/// the last free coordinate.
pub fn random_center(rng: &mut ChaCha8Rng) -> plainchart::geometry::CenterSpec {
    use plainchart::geometry::{AffinePatch, CenterSpec};
    let names = ["a", "b", "c", "d"];
    let n = rng.gen_range(2..=4);
    let r_ = ring(&names[..n]);
    let r = rng.gen_range(1..=2usize.min(n - 1));
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    let sub: Vec<usize> = idx[..r].to_vec();
    let free: Vec<usize> = (0..n).filter(|i| !sub.contains(i)).collect();
    let shift = *free.last().unwrap();
    let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(1..=4))
        .filter_map(|_| {
            let mut e = vec![0u32; n];
            let deg = rng.gen_range(1..=3);
            for _ in 0..deg {
                e[free[rng.gen_range(0..free.len())]] += 1;
            }
            let c = small_rational(rng);
            (!c.is_zero()).then_some((e, c))
        })
        .collect();
    let mut f = Polynomial::from_terms(&r_, terms).unwrap();
    let lin = plainchart::poly::Monomial::var(n, shift, 1);
    let c = f.coefficient(&lin);
    let mut k = small_rational(rng);
    if k.is_zero() {
        k = Rational::one();
    }
    f = &(&f - &Polynomial::monomial(&r_, lin.clone(), c)) + &Polynomial::monomial(&r_, lin, k);
    let sub_names: Vec<&str> = sub.iter().map(|&i| names[i]).collect();
    CenterSpec::new(
        AffinePatch::affine_space(&r_),
        &sub_names,
        f,
        vec![Rational::zero(); n],
        None,
    )
    .unwrap()
}
