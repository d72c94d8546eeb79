//! Near-separated polynomials `F(X, Y) = f1(X) f2(Y) - f2(X) f1(Y)` and the
//! decomposition algorithm that reads a right component off an irreducible
//! factor of `F` of least degree in `X`.

use crate::decompose::{
    compute_u_linear, sample_point, Certification, DecompReport, Decomposition, Outcome, RETRY_BUDGET,
};
use crate::factor::{factor_multivariate, FactorField};
use crate::fields::Field;
use crate::pencil::{make_reduced, RationalFunctionMV};
use crate::polys::MultiPoly;
use crate::{Error, Result, Stream};

/// Largest number of variables accepted by [`grs_decompose`].
pub const MAX_VARS: usize = 3;
/// Default largest degree accepted by [`grs_decompose`].
pub const MAX_DEGREE: usize = 10;

/// `F(X, Y)` in `2n` variables, `X` first.
#[derive(Clone, Debug, PartialEq)]
pub struct NearSeparated<F: Field> {
    pub poly: MultiPoly<F>,
    pub n: usize,
}

/// `p(X)` and `p(Y)` inside the ring in `2n` variables.
fn blocks<F: Field>(p: &MultiPoly<F>) -> (MultiPoly<F>, MultiPoly<F>) {
    let n = p.nvars();
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..2 * n).collect();
    (p.remap_vars(&xs, 2 * n), p.remap_vars(&ys, 2 * n))
}

pub fn near_separated<F: Field>(f: &RationalFunctionMV<F>) -> NearSeparated<F> {
    let (f1x, f1y) = blocks(f.num());
    let (f2x, f2y) = blocks(f.den());
    NearSeparated { poly: f1x.mul(&f2y).sub(&f2x.mul(&f1y)), n: f.nvars() }
}

/// Total degree in the first `n` variables.
pub fn degree_in_x<F: Field>(p: &MultiPoly<F>, n: usize) -> usize {
    p.terms().iter().map(|(m, _)| m.exps()[..n].iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
}

/// `H(X, b)` as a polynomial in `n` variables.
fn specialize_y<F: Field>(h: &MultiPoly<F>, n: usize, b: &[F::Elem]) -> MultiPoly<F> {
    let k = h.field().clone();
    let images: Vec<MultiPoly<F>> = (0..2 * n)
        .map(|i| if i < n { MultiPoly::var(k.clone(), n, i) } else { MultiPoly::constant(k.clone(), n, b[i - n].clone()) })
        .collect();
    h.compose_all(&images)
}

/// Right component of `f` read off a factor `H` of its near-separated
/// polynomial as `H(X, b) / H(X, b')`, verified by solving for `u`.
pub fn extract_component<F: Field>(
    h: &MultiPoly<F>,
    f: &RationalFunctionMV<F>,
    rng: &mut Stream,
) -> Option<RationalFunctionMV<F>> {
    let n = f.nvars();
    let k = f.field().clone();
    for _ in 0..RETRY_BUDGET {
        let b = sample_point(&k, n, f.degree(), rng);
        let b2 = sample_point(&k, n, f.degree(), rng);
        let (g1, g2) = (specialize_y(h, n, &b), specialize_y(h, n, &b2));
        if g2.is_zero() {
            continue;
        }
        let Ok(cand) = make_reduced(g1, g2) else { continue };
        let dh = cand.degree();
        if dh == 0 || f.degree() % dh != 0 {
            continue;
        }
        if compute_u_linear(f, &cand).is_ok() {
            return Some(cand);
        }
    }
    None
}

/// `(h1, h2)` with `H = h1(X) h2(Y) - h2(X) h1(Y)` when `H` has that shape.
pub fn is_near_separated_form<F: Field>(h: &MultiPoly<F>) -> Option<(MultiPoly<F>, MultiPoly<F>)> {
    let nv = h.nvars();
    if nv % 2 != 0 || h.is_zero() {
        return None;
    }
    let n = nv / 2;
    if h.swap_halves() != h.neg() {
        return None;
    }
    let k = h.field().clone();
    // Two specializations span the pencil of (h1, h2); the antisymmetric
    // product of a basis is H up to a constant.
    for j in 0..8i64 {
        let b: Vec<F::Elem> = (0..n).map(|i| k.from_i64(j + i as i64)).collect();
        let b2: Vec<F::Elem> = (0..n).map(|i| k.from_i64(2 * j + 1 - i as i64)).collect();
        let (g1, g2) = (specialize_y(h, n, &b), specialize_y(h, n, &b2));
        let ((g1x, g1y), (g2x, g2y)) = (blocks(&g1), blocks(&g2));
        let g = g1x.mul(&g2y).sub(&g2x.mul(&g1y));
        if g.is_zero() {
            continue;
        }
        let c = g.proportional(h)?;
        let h1 = g1.scale(&c);
        let (h1x, h1y) = blocks(&h1);
        if h1x.mul(&g2y).sub(&g2x.mul(&h1y)) == *h {
            return Some((h1, g2));
        }
        return None;
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrsReport<F: Field> {
    pub decomp: DecompReport<F>,
    /// Irreducible factors of `F` with multiplicities.
    pub factors: Vec<(MultiPoly<F>, usize)>,
    /// Factors of least `X`-degree that were tried.
    pub candidates_examined: usize,
}

/// Modified GRS algorithm with the default degree guard.
pub fn grs_decompose<F: FactorField>(f: &RationalFunctionMV<F>, rng: &mut Stream) -> Result<GrsReport<F>> {
    grs_decompose_with(f, MAX_DEGREE, rng)
}

/// Factor `F(X, Y)`; irreducible means non-composite, otherwise a factor of
/// least `X`-degree yields the right component.
pub fn grs_decompose_with<F: FactorField>(
    f: &RationalFunctionMV<F>,
    max_degree: usize,
    rng: &mut Stream,
) -> Result<GrsReport<F>> {
    let n = f.nvars();
    let d = f.degree();
    if n > MAX_VARS || d > max_degree {
        return Err(Error::DimensionGuard(format!("n = {n}, d = {d}")));
    }
    let mut decomp = DecompReport {
        outcome: Outcome::NonComposite(Certification::Deterministic),
        trials_used: 1,
        points_sampled: 0,
        trace: Vec::new(),
        warnings: Vec::new(),
    };
    if d <= 1 {
        return Ok(GrsReport { decomp, factors: vec![], candidates_examined: 0 });
    }
    let big = near_separated(f).poly;
    let fl = factor_multivariate(&big, rng)?;
    let factors = fl.factors.clone();
    if factors.len() == 1 && factors[0].1 == 1 {
        return Ok(GrsReport { decomp, factors, candidates_examined: 0 });
    }
    let m = factors.iter().map(|(p, _)| degree_in_x(p, n)).filter(|&e| e > 0).min().unwrap_or(0);
    let mut examined = 0;
    for (p, _) in factors.iter().filter(|(p, _)| degree_in_x(p, n) == m) {
        examined += 1;
        if let Some(h) = extract_component(p, f, rng) {
            if h.degree() < d {
                let u = compute_u_linear(f, &h)?;
                decomp.outcome = Outcome::Decomposed(Decomposition::new(f, u, h, Some(Certification::Deterministic))?);
                return Ok(GrsReport { decomp, factors, candidates_examined: examined });
            }
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}
