//! Principal open patches of affine varieties, rational maps between them,
//! and the smoothness and center checks the blowup construction relies on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CenterDefect, Error, Result};
use crate::groebner::{
    divides_inequality_power, ideal_equality_on_patch, is_unit_on_patch, member_on_patch, Ideal,
    LocalizedBasis,
};
use crate::poly::{Polynomial, RingRef};
use crate::rational::Rational;

/// Seed for the sample-point search; fixed so patches are reproducible.
const SAMPLE_SEED: u64 = 0x5a3b_1e00;
const SAMPLE_TRIALS: usize = 10_000;
const SAMPLE_BOX: i64 = 10;
const SAMPLE_MAX_DEN: i64 = 8;

/// A point with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn origin(n: usize) -> Self {
        RationalPoint(vec![Rational::zero(); n])
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

/// The complement of finitely many hypersurfaces, inside the zero set of
/// `relations`, with a witness point proving nonemptiness.
#[derive(Debug, Clone)]
pub struct AffinePatch {
    ring: RingRef,
    inequalities: Vec<Polynomial>,
    relations: Ideal,
    sample: Vec<Rational>,
}

impl AffinePatch {
    /// All of affine space in the coordinates of `ring`.
    pub fn affine_space(ring: &RingRef) -> Self {
        AffinePatch {
            ring: ring.clone(),
            inequalities: Vec::new(),
            relations: Ideal::zero(ring),
            sample: vec![Rational::zero(); ring.arity()],
        }
    }

    /// Builds a patch. Constant and repeated inequalities are dropped; a zero
    /// inequality is rejected. Without a `sample`, one is searched for.
    pub fn new(
        ring: &RingRef,
        inequalities: Vec<Polynomial>,
        relations: Ideal,
        sample: Option<Vec<Rational>>,
    ) -> Result<Self> {
        if relations.ring().vars() != ring.vars() {
            return Err(Error::RingMismatch);
        }
        let inequalities = simplify_inequalities(ring, inequalities)?;
        let mut patch = AffinePatch {
            ring: ring.clone(),
            inequalities,
            relations: relations.embed_by_name(ring)?,
            sample: Vec::new(),
        };
        patch.sample = match sample {
            Some(pt) => {
                if !patch.contains_point(&pt)? {
                    return Err(Error::EmptyPatch(
                        "supplied sample point is not on the patch".into(),
                    ));
                }
                pt
            }
            None => patch.search_sample(None)?,
        };
        Ok(patch)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn inequalities(&self) -> &[Polynomial] {
        &self.inequalities
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn sample(&self) -> &[Rational] {
        &self.sample
    }

    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    /// Whether `pt` satisfies all relations and no inequality vanishes there.
    pub fn contains_point(&self, pt: &[Rational]) -> Result<bool> {
        for g in &self.inequalities {
            if g.evaluate(pt)?.is_zero() {
                return Ok(false);
            }
        }
        for r in self.relations.generators() {
            if !r.evaluate(pt)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same patch with extra inequalities. The current sample is kept when
    /// it still qualifies; `hint` is tried next, then a search.
    pub fn restrict(&self, extra: &[Polynomial], hint: Option<&[Rational]>) -> Result<Self> {
        let mut ineq = self.inequalities.clone();
        ineq.extend(extra.iter().cloned());
        let mut patch = AffinePatch {
            ring: self.ring.clone(),
            inequalities: simplify_inequalities(&self.ring, ineq)?,
            relations: self.relations.clone(),
            sample: Vec::new(),
        };
        patch.sample = if patch.contains_point(&self.sample)? {
            self.sample.clone()
        } else {
            patch.search_sample(hint)?
        };
        Ok(patch)
    }

    fn search_sample(&self, hint: Option<&[Rational]>) -> Result<Vec<Rational>> {
        let n = self.ring.arity();
        let origin = vec![Rational::zero(); n];
        if let Some(h) = hint {
            if h.len() == n && self.contains_point(h)? {
                return Ok(h.to_vec());
            }
        }
        if self.contains_point(&origin)? {
            return Ok(origin);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_TRIALS {
            let pt: Vec<Rational> = (0..n)
                .map(|_| {
                    let d = rng.gen_range(1..=SAMPLE_MAX_DEN);
                    let num = rng.gen_range(-SAMPLE_BOX * d..=SAMPLE_BOX * d);
                    Rational::new(num, d)
                })
                .collect();
            if self.contains_point(&pt)? {
                return Ok(pt);
            }
        }
        Err(Error::EmptyPatch(format!(
            "no rational point after {SAMPLE_TRIALS} trials in [-{SAMPLE_BOX}, {SAMPLE_BOX}]"
        )))
    }
}

fn simplify_inequalities(ring: &RingRef, inequalities: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in inequalities {
        if g.ring().vars() != ring.vars() {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::EmptyPatch("zero inequality".into()));
        }
        if g.is_constant() || out.iter().any(|h| h.is_scalar_multiple_of(&g)) {
            continue;
        }
        out.push(g.with_ring(ring));
    }
    Ok(out)
}

/// A map between patches whose components are fractions of polynomials in
/// the source coordinates, one per target coordinate.
#[derive(Debug, Clone)]
pub struct RationalMap {
    source: AffinePatch,
    target: AffinePatch,
    components: Vec<(Polynomial, Polynomial)>,
}

impl RationalMap {
    /// Checks that every denominator is a unit on the source and that the
    /// source sample point lands in the target patch.
    pub fn new(
        source: AffinePatch,
        target: AffinePatch,
        components: Vec<(Polynomial, Polynomial)>,
    ) -> Result<Self> {
        let map = RationalMap::new_unchecked_units(source, target, components)?;
        let mut seen: Vec<&Polynomial> = Vec::new();
        for (_, d) in &map.components {
            if d.is_constant() || seen.contains(&d) {
                continue;
            }
            if !is_unit_on_patch(d, &map.source, None)? {
                return Err(Error::NotAUnit(d.to_string()));
            }
            seen.push(d);
        }
        Ok(map)
    }

    /// Shape and sample-point checks only. Used where the denominators are
    /// units by construction; [`RationalMap::new`] is the checked entry point.
    pub(crate) fn new_unchecked_units(
        source: AffinePatch,
        target: AffinePatch,
        components: Vec<(Polynomial, Polynomial)>,
    ) -> Result<Self> {
        if components.len() != target.arity() {
            return Err(Error::ArityMismatch {
                expected: target.arity(),
                found: components.len(),
            });
        }
        let ring = source.ring().clone();
        let mut comps = Vec::with_capacity(components.len());
        for (n, d) in components {
            if n.ring().vars() != ring.vars() || d.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
            if d.is_zero() {
                return Err(Error::NotAUnit("0".into()));
            }
            comps.push((n.with_ring(&ring), d.with_ring(&ring)));
        }
        let map = RationalMap {
            source,
            target,
            components: comps,
        };
        let image = map.evaluate(map.source.sample())?;
        if !map.target.contains_point(&image)? {
            return Err(Error::IncompatiblePatches(
                "sample point does not map into the target patch".into(),
            ));
        }
        Ok(map)
    }

    pub fn identity(patch: &AffinePatch) -> Self {
        let ring = patch.ring();
        RationalMap {
            source: patch.clone(),
            target: patch.clone(),
            components: (0..ring.arity())
                .map(|i| (Polynomial::var_index(ring, i), Polynomial::one(ring)))
                .collect(),
        }
    }

    pub fn source(&self) -> &AffinePatch {
        &self.source
    }

    pub fn target(&self) -> &AffinePatch {
        &self.target
    }

    pub fn components(&self) -> &[(Polynomial, Polynomial)] {
        &self.components
    }

    /// Image of a source point. Fails if a denominator vanishes there.
    pub fn evaluate(&self, pt: &[Rational]) -> Result<Vec<Rational>> {
        self.components
            .iter()
            .map(|(n, d)| {
                let dv = d.evaluate(pt)?;
                let inv = dv
                    .recip()
                    .ok_or_else(|| Error::NotAUnit(format!("{d} vanishes at the point")))?;
                Ok(&n.evaluate(pt)? * &inv)
            })
            .collect()
    }

    /// Pulls back a target polynomial: returns `(num, den)` with
    /// `h(self) = num / den` and `den` a product of component denominators.
    pub fn pullback_fraction(&self, h: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if h.ring().vars() != self.target.ring().vars() {
            return Err(Error::RingMismatch);
        }
        Ok(pullback_fraction(h, &self.components, self.source.ring()))
    }
}

/// `h(n_1/d_1, ..., n_m/d_m)` as a single fraction. Components sharing a
/// denominator share its power, which keeps the common denominator small.
fn pullback_fraction(
    h: &Polynomial,
    components: &[(Polynomial, Polynomial)],
    ring: &RingRef,
) -> (Polynomial, Polynomial) {
    let mut dens: Vec<Polynomial> = Vec::new();
    let mut group: Vec<Option<usize>> = Vec::with_capacity(components.len());
    for (_, d) in components {
        if d.is_one_poly() {
            group.push(None);
            continue;
        }
        match dens.iter().position(|e| e == d) {
            Some(k) => group.push(Some(k)),
            None => {
                dens.push(d.clone());
                group.push(Some(dens.len() - 1));
            }
        }
    }
    let mut exps = vec![0u32; dens.len()];
    for (m, _) in h.terms() {
        let mut sums = vec![0u32; dens.len()];
        for (l, &e) in m.exponents().iter().enumerate() {
            if let Some(k) = group[l] {
                sums[k] += e;
            }
        }
        for k in 0..dens.len() {
            exps[k] = exps[k].max(sums[k]);
        }
    }
    let mut num_pows: Vec<Vec<Polynomial>> = components
        .iter()
        .map(|(n, _)| vec![Polynomial::one(ring), n.clone()])
        .collect();
    let mut den_pows: Vec<Vec<Polynomial>> = dens
        .iter()
        .map(|d| vec![Polynomial::one(ring), d.clone()])
        .collect();
    fn power(cache: &mut Vec<Polynomial>, e: u32) -> &Polynomial {
        while cache.len() <= e as usize {
            let next = cache.last().unwrap() * &cache[1];
            cache.push(next);
        }
        &cache[e as usize]
    }
    let mut acc: Vec<(Vec<u32>, Rational)> = Vec::new();
    for (m, c) in h.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        let mut sums = vec![0u32; dens.len()];
        for (l, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if let Some(k) = group[l] {
                sums[k] += e;
            }
            term = &term * power(&mut num_pows[l], e);
        }
        for k in 0..dens.len() {
            let missing = exps[k] - sums[k];
            if missing > 0 {
                term = &term * power(&mut den_pows[k], missing);
            }
        }
        acc.extend(
            term.terms()
                .iter()
                .map(|(mm, cc)| (mm.exponents().to_vec(), cc.clone())),
        );
    }
    let num = Polynomial::from_terms(ring, acc).expect("arity matches");
    let mut den = Polynomial::one(ring);
    for k in 0..dens.len() {
        den = &den * power(&mut den_pows[k], exps[k]);
    }
    (num, den)
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for Polynomial {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// Cancels factors from `candidates` common to numerator and denominator.
fn cancel_known_factors(
    mut num: Polynomial,
    mut den: Polynomial,
    candidates: &[&Polynomial],
) -> (Polynomial, Polynomial) {
    for c in candidates {
        if c.is_constant() {
            continue;
        }
        loop {
            if num.is_zero() {
                return (num, Polynomial::one(den.ring()));
            }
            let (Ok(n2), Ok(d2)) = (num.exact_divide(c), den.exact_divide(c)) else {
                break;
            };
            num = n2;
            den = d2;
        }
    }
    // constant denominators are folded into the numerator
    if let Some(k) = den.as_constant() {
        let inv = k.recip().expect("nonzero denominator");
        return (num.scale(&inv), Polynomial::one(den.ring()));
    }
    (num, den)
}

/// `g ∘ f`: first `f`, then `g`. Requires `f`'s target coordinates to match
/// `g`'s source coordinates; every composed denominator must be a unit on `f`'s source.
pub fn compose(g: &RationalMap, f: &RationalMap) -> Result<RationalMap> {
    if f.target.ring().vars() != g.source.ring().vars() {
        return Err(Error::IncompatiblePatches(
            "target of the first map is not the source of the second".into(),
        ));
    }
    let ring = f.source.ring().clone();
    let f_dens: Vec<&Polynomial> = {
        let mut v: Vec<&Polynomial> = Vec::new();
        for (_, d) in &f.components {
            if !v.contains(&d) {
                v.push(d);
            }
        }
        v
    };
    let mut comps = Vec::with_capacity(g.components.len());
    for (gn, gd) in &g.components {
        let (nn, nd) = pullback_fraction(gn, &f.components, &ring);
        let (num, den) = if gd.is_one_poly() {
            (nn, nd)
        } else {
            let (dn, dd) = pullback_fraction(gd, &f.components, &ring);
            if dn.is_zero() {
                return Err(Error::NotAUnit(format!(
                    "denominator {gd} vanishes identically after composition"
                )));
            }
            let (num, den) = cancel_known_factors(nn, dn, &[]);
            // num/den * dd/nd
            let (num, den) = (&num * &dd, &den * &nd);
            cancel_known_factors(num, den, &f_dens)
        };
        let (num, den) = cancel_known_factors(num, den, &f_dens);
        if !den.is_constant()
            && !divides_inequality_power(&den, f.source.inequalities())
            && !is_unit_on_patch(&den, &f.source, None)?
        {
            return Err(Error::NotAUnit(format!(
                "composed denominator {den} is not a unit on the source"
            )));
        }
        comps.push((num, den));
    }
    RationalMap::new_unchecked_units(f.source.clone(), g.target.clone(), comps)
}

/// Whether two maps with the same source and target coordinates agree on the
/// source patch, decided symbolically: every cross-multiplied component
/// difference must lie in the source relations localized at the inequalities.
pub fn map_equal_on_patch(f: &RationalMap, g: &RationalMap) -> Result<bool> {
    if f.source.ring().vars() != g.source.ring().vars()
        || f.target.ring().vars() != g.target.ring().vars()
    {
        return Err(Error::RingMismatch);
    }
    let patch = &f.source;
    // fast numeric pre-check at the sample point
    if let (Ok(a), Ok(b)) = (f.evaluate(patch.sample()), g.evaluate(patch.sample())) {
        if a != b {
            return Ok(false);
        }
    }
    let diffs: Vec<Polynomial> = f
        .components
        .iter()
        .zip(&g.components)
        .map(|((nf, df), (ng, dg))| &(nf * dg) - &(ng * df))
        .filter(|h| !h.is_zero())
        .collect();
    if diffs.is_empty() {
        return Ok(true);
    }
    if patch.relations().is_zero() {
        // a localized polynomial ring is a domain: only zero vanishes there
        return Ok(false);
    }
    let loc = LocalizedBasis::new(patch.relations(), &[], patch.inequalities())?;
    for h in &diffs {
        if !loc.contains(h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of partial derivatives: one row per generator, one column per variable.
pub fn jacobian<S: AsRef<str>>(ideal: &Ideal, vars: &[S]) -> Result<Vec<Vec<Polynomial>>> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            vars.iter()
                .map(|v| g.partial_derivative(v.as_ref()))
                .collect()
        })
        .collect()
}

fn determinant(m: &[Vec<Polynomial>], ring: &RingRef) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Polynomial::zero(ring);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, ring);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors of a polynomial matrix.
pub fn minors(m: &[Vec<Polynomial>], k: usize, ring: &RingRef) -> Vec<Polynomial> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            let d = determinant(&sub, ring);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Jacobian criterion on a patch: the ideal plus all `codim x codim` minors
/// of its Jacobian generates the unit ideal once the inequalities are inverted.
pub fn smoothness_check(ideal: &Ideal, codim: usize, patch: &AffinePatch) -> Result<bool> {
    if ideal.ring().vars() != patch.ring().vars() {
        return Err(Error::RingMismatch);
    }
    if codim == 0 {
        return Ok(true);
    }
    let ring = patch.ring();
    let jac = jacobian(ideal, ring.vars())?;
    let ms = minors(&jac, codim, ring);
    if ms.is_empty() {
        return Ok(false);
    }
    let rel = patch.relations().with_generators(ideal.generators())?;
    let loc = LocalizedBasis::new(&rel, &ms, patch.inequalities())?;
    Ok(loc.is_unit_ideal())
}

/// A smooth hypersurface `f = 0` of the coordinate subvariety
/// `x_i = 0 (i in subvariety)`, around the point `p`, to be blown up after
/// shifting along `shift`.
#[derive(Debug, Clone)]
pub struct CenterSpec {
    ambient: AffinePatch,
    subvariety: Vec<usize>,
    f: Polynomial,
    point: Vec<Rational>,
    shift: usize,
}

impl CenterSpec {
    /// Assembles a center without validating it. When `shift` is `None`, the
    /// highest-index non-subvariety variable whose partial is nonzero at `p`
    /// is chosen (falling back to the last non-subvariety variable).
    pub fn new<S: AsRef<str>>(
        ambient: AffinePatch,
        subvariety: &[S],
        f: Polynomial,
        point: Vec<Rational>,
        shift: Option<&str>,
    ) -> Result<Self> {
        let ring = ambient.ring().clone();
        if f.ring().vars() != ring.vars() {
            return Err(Error::RingMismatch);
        }
        if point.len() != ring.arity() {
            return Err(Error::ArityMismatch {
                expected: ring.arity(),
                found: point.len(),
            });
        }
        let mut sub = Vec::new();
        for s in subvariety {
            let i = ring.index_of(s.as_ref())?;
            if !sub.contains(&i) {
                sub.push(i);
            }
        }
        let f = f.with_ring(&ring);
        let shift = match shift {
            Some(name) => ring.index_of(name)?,
            None => {
                let free: Vec<usize> = (0..ring.arity()).filter(|i| !sub.contains(i)).collect();
                let mut choice = None;
                for &i in free.iter().rev() {
                    if !f.derivative_index(i).evaluate(&point)?.is_zero() {
                        choice = Some(i);
                        break;
                    }
                }
                match choice.or(free.last().copied()) {
                    Some(i) => i,
                    None => {
                        return Err(Error::InvalidCenter(CenterDefect::SingularPoint));
                    }
                }
            }
        };
        Ok(CenterSpec {
            ambient,
            subvariety: sub,
            f,
            point,
            shift,
        })
    }

    pub fn ambient(&self) -> &AffinePatch {
        &self.ambient
    }

    pub fn ring(&self) -> &RingRef {
        self.ambient.ring()
    }

    /// Indices of the coordinates vanishing on the subvariety.
    pub fn subvariety(&self) -> &[usize] {
        &self.subvariety
    }

    pub fn subvariety_names(&self) -> Vec<String> {
        self.subvariety
            .iter()
            .map(|&i| self.ring().vars()[i].clone())
            .collect()
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn shift_name(&self) -> &str {
        &self.ring().vars()[self.shift]
    }

    /// The ideal of the center in the ambient ring: `(x_i for i in subvariety, f)`.
    pub fn ideal(&self) -> Ideal {
        let ring = self.ring();
        let mut gens: Vec<Polynomial> = self
            .subvariety
            .iter()
            .map(|&i| Polynomial::var_index(ring, i))
            .collect();
        gens.push(self.f.clone());
        Ideal::new(ring, gens).expect("same ring")
    }
}

/// Checks every invariant of a center, reporting the first failure.
pub fn validate_center(c: &CenterSpec) -> Result<CenterSpec> {
    let ring = c.ring();
    let fail = |d: CenterDefect| Err(Error::InvalidCenter(d));
    if !c.ambient.relations().is_zero() {
        return fail(CenterDefect::AmbientHasRelations);
    }
    if c.subvariety.contains(&c.shift) {
        return fail(CenterDefect::ShiftInSubvariety(c.shift_name().to_string()));
    }
    for &i in &c.subvariety {
        if c.f.involves(i) {
            return fail(CenterDefect::FunctionUsesSubvarietyVariable(
                ring.vars()[i].clone(),
            ));
        }
        if !c.point[i].is_zero() {
            return fail(CenterDefect::PointOffSubvariety(ring.vars()[i].clone()));
        }
    }
    if !c.ambient.contains_point(&c.point)? {
        return fail(CenterDefect::PointOutsideAmbient);
    }
    if !c.f.evaluate(&c.point)?.is_zero() {
        return fail(CenterDefect::PointNotOnCenter);
    }
    if c.f.derivative_index(c.shift).evaluate(&c.point)?.is_zero() {
        let mut alternatives = Vec::new();
        for i in 0..ring.arity() {
            if c.subvariety.contains(&i) || i == c.shift {
                continue;
            }
            if !c.f.derivative_index(i).evaluate(&c.point)?.is_zero() {
                alternatives.push(ring.vars()[i].clone());
            }
        }
        if alternatives.is_empty() {
            return fail(CenterDefect::SingularPoint);
        }
        return fail(CenterDefect::ShiftPartialVanishes {
            shift: c.shift_name().to_string(),
            alternatives,
        });
    }
    Ok(c.clone())
}

/// The ideal generated by the pulled-back generators of `ideal` (with
/// denominators cleared), plus the source relations.
pub fn pullback_ideal(m: &RationalMap, ideal: &Ideal) -> Result<Ideal> {
    if ideal.ring().vars() != m.target.ring().vars() {
        return Err(Error::RingMismatch);
    }
    let mut gens = Vec::with_capacity(ideal.generators().len());
    for g in ideal.generators() {
        let (num, _den) = m.pullback_fraction(g)?;
        gens.push(num);
    }
    m.source.relations().with_generators(&gens)
}

/// Ideal equality on a patch: both ideals are compared after adding the
/// patch relations and inverting its inequalities.
pub fn ideals_equal_on(patch: &AffinePatch, a: &Ideal, b: &Ideal) -> Result<bool> {
    let a = a.with_generators(patch.relations().generators())?;
    let b = b.with_generators(patch.relations().generators())?;
    ideal_equality_on_patch(&a, &b, patch.inequalities())
}

/// Whether `f` vanishes on the patch (lies in its relations localized at the inequalities).
pub fn vanishes_on(patch: &AffinePatch, f: &Polynomial) -> Result<bool> {
    member_on_patch(f, patch.relations(), patch.inequalities())
}
