//! Ideals and reduced Gröbner bases.
//!
//! Bases are computed with Buchberger's algorithm using the normal selection
//! strategy (smallest lcm degree first) and both of Buchberger's criteria.
//! Reduction is fraction-free: reducers are kept primitive with integer
//! coefficients and content is cleared as reduction proceeds. Reduced bases
//! are returned monic.
//!
//! Each basis computation is bounded by a budget of pair reductions; see
//! [`with_budget`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::AffinePatch;
use crate::poly::{
    product, Monomial, MonomialOrder, PolyRing, Polynomial, RingRef, RESERVED_PREFIX,
};
use crate::rational::{int_gcd, Rational};

/// Default number of S-pair reductions a single basis computation may perform.
pub const DEFAULT_BUDGET: usize = 10_000;

thread_local! {
    static BUDGET: Cell<usize> = const { Cell::new(DEFAULT_BUDGET) };
}

/// Runs `f` with the per-basis reduction budget set to `budget` on this thread.
pub fn with_budget<T>(budget: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            BUDGET.with(|b| b.set(self.0));
        }
    }
    let _restore = Restore(BUDGET.with(|b| b.replace(budget)));
    f()
}

pub fn current_budget() -> usize {
    BUDGET.with(|b| b.get())
}

/// An ideal given by generators. Zero generators are dropped; an empty
/// generator list is the zero ideal.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators
                .into_iter()
                .filter(|g| !g.is_zero())
                .map(|g| g.with_ring(ring))
                .collect(),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// This ideal plus extra generators.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Moves the ideal into a ring containing all its variables (matched by name).
    pub fn embed_by_name(&self, target: &RingRef) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed_by_name(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }
}

/// A reduced Gröbner basis: monic, and no term of any element is divisible by
/// the leading monomial of another element.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    ring: RingRef,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The ring of the basis elements (the ideal's variables under `order`).
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring().vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        let f = f.with_ring(&self.ring);
        let (rem, scale) = reduce(&f, &self.basis, true);
        let inv = scale.recip().expect("nonzero scale");
        Ok(rem.scale(&inv).with_ring(self.ideal.ring()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring().vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        if self.is_unit_ideal() || f.is_zero() {
            return Ok(true);
        }
        Ok(reduce(&f.with_ring(&self.ring), &self.basis, true)
            .0
            .is_zero())
    }
}

/// The S-polynomial of two nonzero polynomials in the same ring.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).expect("lcm"), &gc.clone());
    let b = g.mul_term(&l.div(gm).expect("lcm"), &fc.clone());
    &a - &b
}

/// Reduces `p` by `basis` (all primitive with positive leading coefficient,
/// or monic). Returns `(r, scale)` with `r == scale * (p - sum q_i g_i)`
/// and `r` primitive. With `full == false` only leading terms are reduced.
fn reduce(p: &Polynomial, basis: &[Polynomial], full: bool) -> (Polynomial, Rational) {
    let ring = p.ring().clone();
    let order = ring.order();
    if p.is_zero() {
        return (p.clone(), Rational::one());
    }
    let prim = p.primitive();
    let mut scale =
        &prim.leading_coeff().expect("nonzero").clone() / p.leading_coeff().expect("nonzero");
    let mut w = prim.into_terms();
    let leads: Vec<&Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero"))
        .collect();
    let mut i = 0;
    let mut steps_since_content = 0usize;
    while i < w.len() {
        let found = leads.iter().position(|lm| lm.divides(&w[i].0));
        let Some(k) = found else {
            if !full {
                break;
            }
            i += 1;
            continue;
        };
        let g = &basis[k];
        let (gm, gc) = g.leading_term().expect("nonzero");
        let m = w[i].0.div(gm).expect("divisible");
        let b = w[i].1.clone();
        // w <- alpha * w - beta * m * g with alpha, beta chosen to stay integral.
        let (alpha, beta) = if gc.is_one() {
            (Rational::one(), b)
        } else if gc.is_integer() && b.is_integer() {
            let gd = int_gcd(gc.numer(), b.numer());
            (
                Rational::from_integer(gc.numer() / &gd),
                Rational::from_integer(b.numer() / &gd),
            )
        } else {
            (Rational::one(), &b / gc)
        };
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(w.len() + g.len());
        if alpha.is_one() {
            out.extend(w.drain(..i));
        } else {
            out.extend(w.drain(..i).map(|(mm, c)| (mm, c * &alpha)));
        }
        let rest = &w[1..];
        let tail = &g.terms()[1..];
        let (mut a, mut bidx) = (0, 0);
        while a < rest.len() || bidx < tail.len() {
            let ord = if a >= rest.len() {
                Ordering::Less
            } else if bidx >= tail.len() {
                Ordering::Greater
            } else {
                order.compare(&rest[a].0, &tail[bidx].0.mul(&m))
            };
            match ord {
                Ordering::Greater => {
                    out.push((rest[a].0.clone(), &rest[a].1 * &alpha));
                    a += 1;
                }
                Ordering::Less => {
                    out.push((tail[bidx].0.mul(&m), -(&tail[bidx].1 * &beta)));
                    bidx += 1;
                }
                Ordering::Equal => {
                    let c = &(&rest[a].1 * &alpha) - &(&tail[bidx].1 * &beta);
                    if !c.is_zero() {
                        out.push((rest[a].0.clone(), c));
                    }
                    a += 1;
                    bidx += 1;
                }
            }
        }
        w = out;
        scale *= &alpha;
        steps_since_content += 1;
        if steps_since_content >= 16 {
            steps_since_content = 0;
            scale *= &clear_content(&mut w);
        }
    }
    if w.is_empty() {
        return (Polynomial::zero(&ring), scale);
    }
    scale *= &clear_content(&mut w);
    (Polynomial::from_sorted_terms(&ring, w), scale)
}

/// Divides integer-coefficient terms by their content (sign of the leading
/// coefficient made positive); returns the factor applied. Non-integral
/// coefficients are first cleared of denominators.
fn clear_content(w: &mut [(Monomial, Rational)]) -> Rational {
    if w.is_empty() {
        return Rational::one();
    }
    let mut den = BigInt::one();
    for (_, c) in w.iter() {
        if !c.is_integer() {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
    }
    let mut g = BigInt::zero();
    for (_, c) in w.iter() {
        let n = c.numer() * (&den / c.denom());
        g = int_gcd(&g, &n);
        if g.is_one() && den.is_one() {
            break;
        }
    }
    let mut factor = Rational::new(den, g);
    if w[0].1.is_negative() {
        factor = -factor;
    }
    if !factor.is_one() {
        for (_, c) in w.iter_mut() {
            *c = &*c * &factor;
        }
    }
    factor
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of `ideal` under `order`, within the current budget.
pub fn buchberger_reduced(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    let ring = ideal.ring().with_order(order)?;
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.with_ring(&ring))
        .collect();
    let basis = buchberger(&ring, gens, current_budget())?;
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order,
        ring,
        basis,
    })
}

fn buchberger(ring: &RingRef, gens: Vec<Polynomial>, budget: usize) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        basis.push(g.primitive());
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut pairs: Vec<Pair> = Vec::new();
    let mut queued: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&basis, &mut pairs, &mut queued, i, j);
        }
    }
    let mut reductions = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first (degree, then term order), ties by indices
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.compare(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        queued.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (
            fi.leading_monomial().unwrap(),
            fj.leading_monomial().unwrap(),
        );
        if li.coprime(lj) {
            continue;
        }
        if chain_criterion(&basis, &queued, &pair) {
            continue;
        }
        reductions += 1;
        if reductions > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let s = s_polynomial(fi, fj);
        let (r, _) = reduce(&s, &basis, true);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        basis.push(r);
        let k = basis.len() - 1;
        for i in 0..k {
            push_pair(&basis, &mut pairs, &mut queued, i, k);
        }
    }
    Ok(interreduce(basis))
}

fn push_pair(
    basis: &[Polynomial],
    pairs: &mut Vec<Pair>,
    queued: &mut HashSet<(usize, usize)>,
    i: usize,
    j: usize,
) {
    let lcm = basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap());
    pairs.push(Pair { i, j, lcm });
    queued.insert((i, j));
}

/// Buchberger's second criterion: skip (i, j) if some other element's leading
/// monomial divides lcm(i, j) and neither (i, k) nor (j, k) is still pending.
fn chain_criterion(basis: &[Polynomial], queued: &HashSet<(usize, usize)>, pair: &Pair) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != pair.i
            && k != pair.j
            && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
            && !queued.contains(&key(pair.i, k))
            && !queued.contains(&key(pair.j, k))
    })
}

/// Minimalizes, fully reduces and normalizes a Gröbner basis.
fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let ring = match basis.first() {
        Some(b) => b.ring().clone(),
        None => return basis,
    };
    let order = ring.order();
    // drop elements whose leading monomial is divisible by another's (keep the first of equals)
    let mut keep: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| {
        order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !keep
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            keep.push(g);
        }
    }
    let mut out: Vec<Polynomial> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (r, _) = reduce(&keep[i], &others, true);
        out.push(r.monic());
    }
    out.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

/// Remainder of `f` modulo a reduced basis.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.normal_form(f)
}

/// Whether `f` lies in `ideal`.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if f.ring().vars() != ideal.ring().vars() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero()
        || ideal
            .generators()
            .iter()
            .any(|g| f.is_scalar_multiple_of(g))
    {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    let gb = buchberger_reduced(ideal, MonomialOrder::Grevlex)?;
    gb.contains(f)
}

/// Whether two ideals of the same ring coincide.
pub fn ideal_equality(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.ring().vars() != b.ring().vars() {
        return Err(Error::RingMismatch);
    }
    let contained = |x: &Ideal, y: &Ideal| -> Result<bool> {
        if x.generators()
            .iter()
            .all(|g| y.generators().iter().any(|h| g.is_scalar_multiple_of(h)))
        {
            return Ok(true);
        }
        if y.is_zero() {
            return Ok(x.is_zero());
        }
        let gb = buchberger_reduced(y, MonomialOrder::Grevlex)?;
        for g in x.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(contained(a, b)? && contained(b, a)?)
}

/// `I ∩ k[remaining variables]`, as an ideal of the ring of remaining variables
/// (grevlex, original relative order).
pub fn elimination_ideal<S: AsRef<str>>(ideal: &Ideal, drop: &[S]) -> Result<Ideal> {
    let ring = ideal.ring();
    let mut drop_idx = Vec::new();
    for d in drop {
        let i = ring.index_of(d.as_ref())?;
        if !drop_idx.contains(&i) {
            drop_idx.push(i);
        }
    }
    if drop_idx.len() == ring.arity() && ring.arity() > 0 {
        return Err(Error::EliminateAll);
    }
    let keep_idx: Vec<usize> = (0..ring.arity())
        .filter(|i| !drop_idx.contains(i))
        .collect();
    let keep_names: Vec<&str> = keep_idx.iter().map(|&i| ring.vars()[i].as_str()).collect();
    let kept_ring = PolyRing::new(&keep_names, MonomialOrder::Grevlex)?;
    if drop_idx.is_empty() {
        let gb = buchberger_reduced(ideal, MonomialOrder::Grevlex)?;
        return Ideal::new(
            &kept_ring,
            gb.basis().iter().map(|g| g.with_ring(&kept_ring)).collect(),
        );
    }
    // block ring: dropped variables first
    let mut names: Vec<&str> = drop_idx.iter().map(|&i| ring.vars()[i].as_str()).collect();
    names.extend(keep_names.iter().copied());
    let block = PolyRing::new(&names, MonomialOrder::Block(drop_idx.len()))?;
    let mut to_block = vec![0; ring.arity()];
    for (pos, &i) in drop_idx.iter().chain(keep_idx.iter()).enumerate() {
        to_block[i] = pos;
    }
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&block, &to_block))
        .collect();
    let basis = buchberger(&block, gens, current_budget())?;
    let nd = drop_idx.len();
    let back: Vec<usize> = (0..block.arity()).map(|k| k.saturating_sub(nd)).collect();
    let kept: Vec<Polynomial> = basis
        .into_iter()
        .filter(|g| (0..nd).all(|k| !g.involves(k)))
        .map(|g| g.embed(&kept_ring, &back))
        .collect();
    Ideal::new(&kept_ring, kept)
}

/// Reduced basis of `relations + extra + (1 - w * prod(inequalities))` in the
/// ring extended by a fresh `w` (no extension when there are no inequalities).
pub(crate) struct LocalizedBasis {
    base: RingRef,
    ext: RingRef,
    gb: GroebnerBasis,
}

impl LocalizedBasis {
    pub(crate) fn new(
        relations: &Ideal,
        extra: &[Polynomial],
        inequalities: &[Polynomial],
    ) -> Result<Self> {
        let base = relations.ring().clone();
        let nonconstant: Vec<&Polynomial> =
            inequalities.iter().filter(|g| !g.is_constant()).collect();
        let mut gens: Vec<Polynomial> = relations.generators().to_vec();
        gens.extend(extra.iter().cloned());
        let ext = if nonconstant.is_empty() {
            base.clone()
        } else {
            let w = base.fresh_name(&format!("{RESERVED_PREFIX}w"), &[]);
            base.extend(&[w])?
        };
        let mut gens: Vec<Polynomial> = gens
            .iter()
            .map(|g| g.embed_by_name(&ext))
            .collect::<Result<_>>()?;
        if !nonconstant.is_empty() {
            let w = Polynomial::var_index(&ext, ext.arity() - 1);
            let prod = product(&base, nonconstant.iter().copied()).embed_by_name(&ext)?;
            gens.push(&Polynomial::one(&ext) - &(&w * &prod));
        }
        let ideal = Ideal::new(&ext, gens)?;
        let gb = buchberger_reduced(&ideal, MonomialOrder::Grevlex)?;
        Ok(LocalizedBasis { base, ext, gb })
    }

    pub(crate) fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring().vars() != self.base.vars() {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        self.gb.contains(&f.embed_by_name(&self.ext)?)
    }

    pub(crate) fn is_unit_ideal(&self) -> bool {
        self.gb.is_unit_ideal()
    }
}

/// Whether `f` lies in `ideal` localized at the product of `inequalities`
/// (i.e. in the saturation of the ideal by that product).
pub fn member_on_patch(f: &Polynomial, ideal: &Ideal, inequalities: &[Polynomial]) -> Result<bool> {
    if f.is_zero()
        || ideal
            .generators()
            .iter()
            .any(|g| f.is_scalar_multiple_of(g))
    {
        return Ok(true);
    }
    if ideal.is_zero() && f.ring().vars() == ideal.ring().vars() {
        // the localization of a polynomial ring is a domain containing it
        return Ok(false);
    }
    LocalizedBasis::new(ideal, &[], inequalities)?.contains(f)
}

/// Whether two ideals agree after inverting `inequalities`.
pub fn ideal_equality_on_patch(a: &Ideal, b: &Ideal, inequalities: &[Polynomial]) -> Result<bool> {
    if a.ring().vars() != b.ring().vars() {
        return Err(Error::RingMismatch);
    }
    let contained = |x: &Ideal, y: &Ideal| -> Result<bool> {
        let pending: Vec<&Polynomial> = x
            .generators()
            .iter()
            .filter(|g| !y.generators().iter().any(|h| g.is_scalar_multiple_of(h)))
            .filter(|g| !divisible_by_some_generator(g, y))
            .collect();
        if pending.is_empty() {
            return Ok(true);
        }
        let loc = LocalizedBasis::new(y, &[], inequalities)?;
        for g in pending {
            if !loc.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(contained(a, b)? && contained(b, a)?)
}

/// Cheap certificate: `g` is a polynomial multiple of one generator of `y`.
fn divisible_by_some_generator(g: &Polynomial, y: &Ideal) -> bool {
    y.generators().iter().any(|h| g.exact_divide(h).is_ok())
}

/// Cheap certificate that `f` is a unit wherever all `inequalities` are
/// nonzero: `f` is a constant times a product of powers of them.
pub(crate) fn divides_inequality_power(f: &Polynomial, inequalities: &[Polynomial]) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut rest = f.clone();
    loop {
        if rest.is_constant() {
            return true;
        }
        let mut progressed = false;
        for g in inequalities.iter().filter(|g| !g.is_constant()) {
            if let Ok(q) = rest.exact_divide(g) {
                rest = q;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return false;
        }
    }
}

/// Whether `f` is invertible on the patch (modulo `modulo`, if given):
/// `1 ∈ modulo + relations + (f) + (1 - w * prod(inequalities))`.
pub fn is_unit_on_patch(
    f: &Polynomial,
    patch: &AffinePatch,
    modulo: Option<&Ideal>,
) -> Result<bool> {
    if f.ring().vars() != patch.ring().vars() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(false);
    }
    let mut relations = patch.relations().clone();
    if let Some(m) = modulo {
        if m.ring().vars() != patch.ring().vars() {
            return Err(Error::RingMismatch);
        }
        relations = relations.with_generators(m.generators())?;
    }
    if divides_inequality_power(f, patch.inequalities()) {
        return Ok(true);
    }
    let loc = LocalizedBasis::new(&relations, std::slice::from_ref(f), patch.inequalities())?;
    Ok(loc.is_unit_ideal())
}

/// Kernel of `k[R][y_1..y_m] -> R[t]`, `y_i -> a_i t`, with `images[i] = a_i * t`
/// living in a ring that contains the variable `t`. The kernel lives in the ring
/// of the images' variables except `t`, followed by `source_vars`.
pub fn ring_map_kernel<S: AsRef<str>>(
    source_vars: &[S],
    images: &[Polynomial],
    t: &str,
) -> Result<Ideal> {
    let first = images
        .first()
        .ok_or_else(|| Error::Malformed("no images given".into()))?;
    let image_ring = first.ring().clone();
    let ti = image_ring.index_of(t)?;
    let tpoly = Polynomial::var_index(&image_ring, ti);
    let base_names: Vec<&str> = image_ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != ti)
        .map(|(_, v)| v.as_str())
        .collect();
    let base = PolyRing::new(&base_names, MonomialOrder::Grevlex)?;
    let mut coefficients = Vec::with_capacity(images.len());
    for (k, im) in images.iter().enumerate() {
        if im.ring().vars() != image_ring.vars() {
            return Err(Error::RingMismatch);
        }
        let a = im
            .exact_divide(&tpoly)
            .map_err(|_| Error::Malformed(format!("image {k} is not a multiple of {t}")))?;
        if a.involves(ti) {
            return Err(Error::Malformed(format!(
                "image {k} is not of the form a*{t}"
            )));
        }
        if a.is_zero() {
            return Err(Error::ZeroGenerator(k));
        }
        coefficients.push(a.embed_by_name(&base)?);
    }
    kernel_of_scaling(&base, &Ideal::zero(&base), &[], source_vars, &coefficients)
}

/// Kernel of `y_i -> a_i t` over `base / relations` localized at `inequalities`.
pub(crate) fn kernel_of_scaling<S: AsRef<str>>(
    base: &RingRef,
    relations: &Ideal,
    inequalities: &[Polynomial],
    source_vars: &[S],
    coefficients: &[Polynomial],
) -> Result<Ideal> {
    if source_vars.len() != coefficients.len() {
        return Err(Error::ArityMismatch {
            expected: coefficients.len(),
            found: source_vars.len(),
        });
    }
    for v in source_vars {
        if base.contains(v.as_ref()) {
            return Err(Error::Malformed(format!(
                "source variable `{}` clashes with a base variable",
                v.as_ref()
            )));
        }
    }
    let target = base.extend(source_vars)?;
    let t = target.fresh_name(&format!("{RESERVED_PREFIX}t"), &[]);
    let nonconstant: Vec<&Polynomial> = inequalities.iter().filter(|g| !g.is_constant()).collect();
    let mut aux = vec![t];
    if !nonconstant.is_empty() {
        aux.push(target.fresh_name(&format!("{RESERVED_PREFIX}w"), &aux));
    }
    let work = target.extend(&aux)?;
    let tpoly = Polynomial::var_index(&work, target.arity());
    let mut gens = Vec::new();
    for (k, a) in coefficients.iter().enumerate() {
        let y = Polynomial::var_index(&work, base.arity() + k);
        gens.push(&y - &(&a.embed_by_name(&work)? * &tpoly));
    }
    for r in relations.generators() {
        gens.push(r.embed_by_name(&work)?);
    }
    if !nonconstant.is_empty() {
        let w = Polynomial::var_index(&work, target.arity() + 1);
        let prod = product(base, nonconstant.iter().copied()).embed_by_name(&work)?;
        gens.push(&Polynomial::one(&work) - &(&w * &prod));
    }
    let eliminated = elimination_ideal(&Ideal::new(&work, gens)?, &aux)?;
    // the elimination ring has exactly `target`'s variables in the same order
    eliminated.embed_by_name(&target)
}

/// The leading coefficient sign convention used for display: positive leading coefficient.
pub fn normalize_sign(p: &Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(c) if c.is_negative() => -p,
        _ => p.clone(),
    }
}
