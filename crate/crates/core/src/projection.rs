//! Local hypersurface models of smooth subvarieties by generic linear projection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ProjectionFailure, Result};
use crate::geometry::{compose, map_equal_on_patch, AffinePatch, RationalMap};
use crate::groebner::{buchberger_reduced, elimination_ideal, member_on_patch, Ideal};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::rational::Rational;

/// Entries of sampled matrices are drawn from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 100;
pub const RETRY_BUDGET: usize = 20;

/// A linear map `k^n -> k^m` given by an `m x n` matrix of full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProjection {
    matrix: Vec<Vec<Rational>>,
}

impl LinearProjection {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.first().map_or(0, |r| r.len());
        if matrix.is_empty() || n == 0 {
            return Err(Error::Malformed("empty projection matrix".into()));
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: row.len(),
            });
        }
        if rank(&matrix) < matrix.len() {
            return Err(Error::Degenerate(ProjectionFailure::RankDeficient));
        }
        Ok(LinearProjection { matrix })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LinearProjection { matrix }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// Source dimension.
    pub fn n(&self) -> usize {
        self.matrix[0].len()
    }

    /// Target dimension.
    pub fn m(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, pt: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(pt)
                    .fold(Rational::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect()
    }

    /// The image coordinates as linear forms in `ring`.
    fn forms(&self, ring: &RingRef) -> Vec<Polynomial> {
        self.matrix
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(l, a)| {
                        let mut e = vec![0u32; ring.arity()];
                        e[l] = 1;
                        (e, a.clone())
                    });
                Polynomial::from_terms(ring, terms).expect("arity matches")
            })
            .collect()
    }
}

/// Row rank by Gaussian elimination.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][c].recip().expect("nonzero pivot");
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let k = &row[c] * &inv;
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &(&k * y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `H(u) = 0` near `p = pi(q)`, with a rational inverse `alpha` from a patch
/// `W` of the hypersurface back onto `Z`.
#[derive(Debug, Clone)]
pub struct HypersurfaceModel {
    pub projection: LinearProjection,
    pub h: Polynomial,
    pub inverse: RationalMap,
    pub base_point: Vec<Rational>,
    pub image_point: Vec<Rational>,
}

fn image_ring(source: &RingRef, m: usize) -> Result<RingRef> {
    let mut names: Vec<String> = Vec::with_capacity(m);
    for k in 0..m {
        let n = source.fresh_name(&format!("u{}", k + 1), &names);
        names.push(n);
    }
    PolyRing::new(&names, MonomialOrder::Grevlex)
}

/// `Z + (u_k - pi_k(x))` in the ring `x_1..x_n, u_1..u_m`.
fn graph_ideal(z: &Ideal, proj: &LinearProjection, uring: &RingRef) -> Result<Ideal> {
    let xring = z.ring();
    let joint = xring.extend(uring.vars())?;
    let forms = proj.forms(xring);
    let mut gens: Vec<Polynomial> = z
        .generators()
        .iter()
        .map(|g| g.embed_by_name(&joint))
        .collect::<Result<_>>()?;
    for (k, form) in forms.iter().enumerate() {
        let u = Polynomial::var_index(&joint, xring.arity() + k);
        gens.push(&u - &form.embed_by_name(&joint)?);
    }
    Ideal::new(&joint, gens)
}

/// The equation of the closure of `pi(Z)`, with integer coefficients.
pub fn implicitize(z: &Ideal, proj: &LinearProjection) -> Result<Polynomial> {
    if proj.n() != z.ring().arity() {
        return Err(Error::ArityMismatch {
            expected: z.ring().arity(),
            found: proj.n(),
        });
    }
    let uring = image_ring(z.ring(), proj.m())?;
    let graph = graph_ideal(z, proj, &uring)?;
    let image = elimination_ideal(&graph, z.ring().vars())?;
    match image.generators() {
        [h] => Ok(h.embed_by_name(&uring)?.primitive()),
        gens => Err(Error::Degenerate(ProjectionFailure::NotHypersurface {
            generators: gens.len(),
        })),
    }
}

/// Expresses each source coordinate near `pi(q)` as a fraction in the image
/// coordinates. The result maps the patch of `H = 0` where the denominators
/// are nonzero onto `Z`.
pub fn local_inverse(z: &Ideal, proj: &LinearProjection, q: &[Rational]) -> Result<RationalMap> {
    let h = implicitize(z, proj)?;
    local_inverse_with(z, proj, q, &h)
}

fn local_inverse_with(
    z: &Ideal,
    proj: &LinearProjection,
    q: &[Rational],
    h: &Polynomial,
) -> Result<RationalMap> {
    let xring = z.ring().clone();
    let uring = h.ring().clone();
    let p = proj.apply(q);
    let graph = graph_ideal(z, proj, &uring)?;
    let mut comps = Vec::with_capacity(xring.arity());
    for (l, name) in xring.vars().iter().enumerate() {
        let others: Vec<&String> = xring
            .vars()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != l)
            .map(|(_, v)| v)
            .collect();
        let eliminated = if others.is_empty() {
            graph.clone()
        } else {
            elimination_ideal(&graph, &others)?
        };
        // x_l first, image coordinates last
        let mut order: Vec<&str> = vec![name.as_str()];
        order.extend(uring.vars().iter().map(|s| s.as_str()));
        let block = PolyRing::new(&order, MonomialOrder::Block(1))?;
        let moved = Ideal::new(
            &block,
            eliminated
                .generators()
                .iter()
                .map(|g| g.embed_by_name(&block))
                .collect::<Result<_>>()?,
        )?;
        let gb = buchberger_reduced(&moved, MonomialOrder::Block(1))?;
        let mut found = None;
        for g in gb.basis() {
            if g.degree_in(0) != 1 {
                continue;
            }
            let (d, n) = split_linear(g, &uring)?;
            if !d.evaluate(&p)?.is_zero() {
                found = Some((n, d));
                break;
            }
        }
        match found {
            Some(c) => comps.push(c),
            None => {
                return Err(Error::Degenerate(ProjectionFailure::NoLocalInverse(
                    name.clone(),
                )))
            }
        }
    }
    let dens: Vec<Polynomial> = comps.iter().map(|(_, d)| d.clone()).collect();
    let w = AffinePatch::new(
        &uring,
        dens,
        Ideal::new(&uring, vec![h.clone()])?,
        Some(p.clone()),
    )?;
    let target = AffinePatch::new(&xring, vec![], z.clone(), Some(q.to_vec()))?;
    RationalMap::new(w, target, comps)
}

/// Splits `d * x + e` (with `x` the first variable of `g`'s ring) into
/// `(d, -e)` over `uring`, so that `x = -e / d`.
fn split_linear(g: &Polynomial, uring: &RingRef) -> Result<(Polynomial, Polynomial)> {
    let mut d = Vec::new();
    let mut e = Vec::new();
    for (m, c) in g.terms() {
        let exps = m.exponents();
        let rest = exps[1..].to_vec();
        if exps[0] == 1 {
            d.push((rest, c.clone()));
        } else {
            e.push((rest, -c));
        }
    }
    Ok((
        Polynomial::from_terms(uring, d)?,
        Polynomial::from_terms(uring, e)?,
    ))
}

/// Pointwise smoothness of `Z` at `q` of the given dimension: all generators
/// vanish and the Jacobian has rank at least the codimension there.
fn smooth_at(z: &Ideal, dim: usize, q: &[Rational]) -> Result<bool> {
    let n = z.ring().arity();
    for g in z.generators() {
        if !g.evaluate(q)?.is_zero() {
            return Ok(false);
        }
    }
    let jac: Vec<Vec<Rational>> = z
        .generators()
        .iter()
        .map(|g| (0..n).map(|i| g.derivative_index(i).evaluate(q)).collect())
        .collect::<Result<_>>()?;
    Ok(rank(&jac) + dim >= n)
}

fn sample_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| Rational::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
                .collect()
        })
        .collect()
}

/// Builds and certifies the model for one projection.
pub fn hypersurface_model(
    z: &Ideal,
    proj: &LinearProjection,
    q: &[Rational],
) -> Result<HypersurfaceModel> {
    let h = implicitize(z, proj)?;
    let inverse = local_inverse_with(z, proj, q, &h)?;
    let model = HypersurfaceModel {
        projection: proj.clone(),
        image_point: proj.apply(q),
        base_point: q.to_vec(),
        h,
        inverse,
    };
    let grad_vanishes = (0..model.h.ring().arity()).all(|k| {
        model
            .h
            .derivative_index(k)
            .evaluate(&model.image_point)
            .map_or(true, |v| v.is_zero())
    });
    if grad_vanishes {
        return Err(Error::Degenerate(ProjectionFailure::SingularImage));
    }
    if !verify_local_iso(z, proj, &model) {
        return Err(Error::Degenerate(ProjectionFailure::VerificationFailed));
    }
    Ok(model)
}

/// Samples projections to `dim + 1` dimensions from `seed` until one yields
/// a certified hypersurface model. The identity is used when `Z` already is
/// a hypersurface.
pub fn generic_projection(
    z: &Ideal,
    dim: usize,
    q: &[Rational],
    seed: u64,
) -> Result<(LinearProjection, HypersurfaceModel)> {
    let n = z.ring().arity();
    let m = dim + 1;
    if q.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: q.len(),
        });
    }
    if m > n {
        return Err(Error::Malformed(format!(
            "dimension {dim} leaves no room for a hypersurface in {n} variables"
        )));
    }
    if !smooth_at(z, dim, q)? {
        return Err(Error::Malformed(
            "base point is not a smooth point of the subvariety".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = ProjectionFailure::VerificationFailed;
    for attempt in 0..RETRY_BUDGET {
        let outcome = if m == n && attempt == 0 {
            Ok(LinearProjection::identity(n))
        } else {
            LinearProjection::new(sample_matrix(&mut rng, m, n))
        }
        .and_then(|proj| hypersurface_model(z, &proj, q).map(|model| (proj, model)));
        match outcome {
            Ok(found) => return Ok(found),
            Err(Error::Degenerate(kind)) => last = kind,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted {
        attempts: RETRY_BUDGET,
        last,
    })
}

/// Certifies a model: `alpha` inverts `pi` on `Z` near `q`, `alpha` maps the
/// hypersurface into `Z`, and the base and image points correspond.
pub fn verify_local_iso(z: &Ideal, proj: &LinearProjection, model: &HypersurfaceModel) -> bool {
    certify(z, proj, model).unwrap_or(false)
}

fn certify(z: &Ideal, proj: &LinearProjection, model: &HypersurfaceModel) -> Result<bool> {
    let alpha = &model.inverse;
    let xring = z.ring();
    let uring = model.h.ring();
    if alpha.target().ring().vars() != xring.vars() || alpha.source().ring().vars() != uring.vars()
    {
        return Ok(false);
    }
    let p = proj.apply(&model.base_point);
    // pointwise: H(p) = 0, alpha defined at p, alpha(p) = q
    if p != model.image_point || !model.h.evaluate(&p)?.is_zero() {
        return Ok(false);
    }
    match alpha.evaluate(&p) {
        Ok(back) if back == model.base_point => {}
        _ => return Ok(false),
    }
    let dens: Vec<Polynomial> = alpha
        .components()
        .iter()
        .map(|(_, d)| d.clone())
        .filter(|d| !d.is_constant())
        .collect();
    // Z generators pulled back along alpha lie in (H) on W
    let hideal = Ideal::new(uring, vec![model.h.clone()])?;
    for g in z.generators() {
        let (num, _) = alpha.pullback_fraction(g)?;
        if !member_on_patch(&num, &hideal, &dens)? {
            return Ok(false);
        }
    }
    // alpha after pi is the identity on Z near q
    let forms = proj.forms(xring);
    let pulled: Vec<Polynomial> = dens
        .iter()
        .map(|d| d.compose_images(&forms, xring))
        .collect::<Result<_>>()?;
    let v = AffinePatch::new(xring, pulled, z.clone(), Some(model.base_point.clone()))?;
    let w = AffinePatch::new(uring, dens.clone(), hideal, Some(p))?;
    let one = Polynomial::one(xring);
    let pi = RationalMap::new(
        v.clone(),
        w,
        forms.into_iter().map(|f| (f, one.clone())).collect(),
    )?;
    let alpha_on_w = RationalMap::new(
        pi.target().clone(),
        alpha.target().clone(),
        alpha.components().to_vec(),
    )?;
    let round = compose(&alpha_on_w, &pi)?;
    map_equal_on_patch(&round, &RationalMap::identity(&v))
}
