use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::{Monomial, MonomialOrder, RingRef};
use crate::error::{Error, Result};
use crate::rational::{int_gcd, int_lcm, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in decreasing order under the ring's monomial order
/// and never carry a zero coefficient, so the leading term is `terms[0]`.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Rational)>,
}

/// Which ring operation [`Polynomial::ring_op`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.arity()), c));
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn var_index(ring: &RingRef, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), index, 1), Rational::one())],
        }
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Polynomial::var_index(ring, ring.index_of(name)?))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.arity(), ring.arity());
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects terms, merging equal exponent vectors and dropping zeros.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (e, c) in terms {
            if e.len() != ring.arity() {
                return Err(Error::ArityMismatch {
                    expected: ring.arity(),
                    found: e.len(),
                });
            }
            *acc.entry(Monomial(e)).or_insert_with(Rational::zero) += &c;
        }
        Ok(Polynomial::from_map(ring, acc))
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted descending in `ring`'s order with no zero coefficients.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[index])
            .max()
            .unwrap_or(0)
    }

    /// Whether the variable at `index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[index] > 0)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.vars() == other.ring.vars() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The other operand re-sorted into this polynomial's order, if the orders differ.
    fn aligned<'a>(&self, other: &'a Polynomial) -> std::borrow::Cow<'a, Polynomial> {
        if self.ring.order() == other.ring.order() {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_ring(&self.ring))
        }
    }

    /// Checked ring arithmetic.
    pub fn ring_op(&self, other: &Polynomial, op: RingOp) -> Result<Polynomial> {
        self.check_ring(other)?;
        let other = self.aligned(other);
        Ok(match op {
            RingOp::Add => self.merge(&other, false),
            RingOp::Sub => self.merge(&other, true),
            RingOp::Mul => self.mul_poly(&other),
        })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring_op(other, RingOp::Add)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring_op(other, RingOp::Sub)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring_op(other, RingOp::Mul)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_poly(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// `self * c * m`. Monomial orders are multiplicative, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        result
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = int_lcm(&den, c.denom());
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            num = int_gcd(&num, &n);
        }
        let mut factor = Rational::new(den, num);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        if factor.is_one() {
            self.clone()
        } else {
            self.scale(&factor)
        }
    }

    /// Whether `self == c * other` for some nonzero rational `c`.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let other = self.aligned(other);
        let ratio = &self.terms[0].1 / &other.terms[0].1;
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && *ca == cb * &ratio)
    }

    /// Exact quotient `q` with `q * d == self`, or [`Error::NotDivisible`].
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::NotDivisible);
        }
        let d = self.aligned(d);
        let (dm, dc) = d.leading_term().expect("nonzero divisor");
        let dc_inv = dc.recip().expect("nonzero");
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(dm).ok_or(Error::NotDivisible)?;
            let c = rc * &dc_inv;
            rem = rem.merge(&d.mul_term(&m, &c), true);
            quotient.push((m, c));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: quotient,
        })
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.index_of(var)?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let e = m.0[i];
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                (m2, c * &Rational::from(e as i64))
            })
            .collect();
        // d/dx_i maps distinct monomials to distinct ones but may reorder them.
        let mut p = Polynomial {
            ring: self.ring.clone(),
            terms,
        };
        let order = self.ring.order();
        p.terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        p
    }

    /// Replaces `target` by `target + shift` and expands.
    pub fn taylor_shift(&self, target: &str, shift: &str) -> Result<Polynomial> {
        let ti = self.ring.index_of(target)?;
        let si = self.ring.index_of(shift)?;
        if ti == si {
            return Err(Error::ShiftOntoItself(target.to_string()));
        }
        let images: Vec<Polynomial> = (0..self.ring.arity())
            .map(|k| {
                let v = Polynomial::var_index(&self.ring, k);
                if k == ti {
                    v.merge(&Polynomial::var_index(&self.ring, si), false)
                } else {
                    v
                }
            })
            .collect();
        self.compose_images(&images, &self.ring)
    }

    /// Simultaneous substitution of named variables. Unassigned variables must
    /// exist in `target` under the same name and map to themselves.
    pub fn substitute(
        &self,
        assignments: &[(String, Polynomial)],
        target: &RingRef,
    ) -> Result<Polynomial> {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.arity()];
        for (name, image) in assignments {
            let i = self.ring.index_of(name)?;
            if image.ring.vars() != target.vars() {
                return Err(Error::RingMismatch);
            }
            images[i] = Some(image.with_ring(target));
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, im)| match im {
                Some(p) => Ok(p),
                None => Polynomial::var(target, &self.ring.vars()[i]),
            })
            .collect::<Result<Vec<_>>>()?;
        self.compose_images(&images, target)
    }

    /// The ring homomorphism sending variable `i` to `images[i]`.
    pub fn compose_images(&self, images: &[Polynomial], target: &RingRef) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                found: images.len(),
            });
        }
        for im in images {
            if im.ring.vars() != target.vars() {
                return Err(Error::RingMismatch);
            }
        }
        let images: Vec<Polynomial> = images.iter().map(|p| p.with_ring(target)).collect();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_poly(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul_poly(&powers[i][e as usize]);
            }
            for (tm, tc) in term.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += &tc;
            }
        }
        Ok(Polynomial::from_map(target, acc))
    }

    /// Exact value at `point`, by recursive Horner evaluation.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                found: point.len(),
            });
        }
        let mut terms: Vec<(&[u32], &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.as_slice(), c))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(a.0));
        Ok(horner(&terms, 0, point))
    }

    /// Re-expresses the polynomial in a ring with the same variables but possibly another order.
    pub fn with_ring(&self, ring: &RingRef) -> Polynomial {
        if Arc::ptr_eq(&self.ring, ring) {
            return self.clone();
        }
        debug_assert_eq!(self.ring.vars(), ring.vars());
        let mut p = Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        };
        if self.ring.order() != ring.order() {
            let order = ring.order();
            p.terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        }
        p
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable `map[i]`.
    pub fn embed(&self, target: &RingRef, map: &[usize]) -> Polynomial {
        debug_assert_eq!(map.len(), self.ring.arity());
        let arity = target.arity();
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; arity];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        let order = target.order();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn embed_by_name(&self, target: &RingRef) -> Result<Polynomial> {
        let map = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if self.involves(i) {
                    target.index_of(v)
                } else {
                    Ok(target.index_of(v).unwrap_or(0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if target.arity() == 0 {
            return match self.as_constant() {
                Some(c) => Ok(Polynomial::constant(target, c)),
                None => Err(Error::RingMismatch),
            };
        }
        Ok(self.embed(target, &map))
    }

    /// Canonical text: terms in descending grevlex order, explicit `*` and `^`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, Rational)> = self.terms.iter().collect();
        if self.ring.order() != MonomialOrder::Grevlex {
            terms.sort_unstable_by(|a, b| MonomialOrder::Grevlex.compare(&b.0, &a.0));
        }
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn horner(terms: &[(&[u32], &Rational)], var: usize, point: &[Rational]) -> Rational {
    if terms.is_empty() {
        return Rational::zero();
    }
    if var == point.len() {
        let mut s = Rational::zero();
        for (_, c) in terms {
            s += c;
        }
        return s;
    }
    // Terms are sorted lexicographically descending, so equal exponents of
    // `var` are contiguous and appear in decreasing order.
    let x = &point[var];
    let mut acc = Rational::zero();
    let mut prev_exp: Option<u32> = None;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[var];
        let mut end = start;
        while end < terms.len() && terms[end].0[var] == e {
            end += 1;
        }
        if let Some(pe) = prev_exp {
            acc = acc * x.pow(pe - e);
        }
        acc += &horner(&terms[start..end], var + 1, point);
        prev_exp = Some(e);
        start = end;
    }
    if let Some(pe) = prev_exp {
        acc = acc * x.pow(pe);
    }
    acc
}

impl PartialEq for Polynomial {
    /// Equal when the variable lists agree and the term sets agree, whatever the orders.
    fn eq(&self, other: &Self) -> bool {
        if self.ring.vars() != other.ring.vars() || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.ring.order() == other.ring.order() {
            return self.terms == other.terms;
        }
        let mut a: Vec<_> = self.terms.iter().collect();
        let mut b: Vec<_> = other.terms.iter().collect();
        a.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        b.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        a == b
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_canonical_string())
    }
}

// Operator sugar for internal code where both operands are known to share a ring.
// These panic on mismatched rings; public entry points use `ring_op`.
macro_rules! poly_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.ring_op(rhs, $op).expect("operands share a ring")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, RingOp::Add);
poly_binop!(Sub, sub, RingOp::Sub);
poly_binop!(Mul, mul, RingOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Product of a list of polynomials (one for the empty list).
pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(
    ring: &RingRef,
    factors: I,
) -> Polynomial {
    factors.into_iter().fold(Polynomial::one(ring), |acc, f| {
        acc.mul_poly(&f.with_ring(ring))
    })
}
