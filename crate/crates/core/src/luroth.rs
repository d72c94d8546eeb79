//! Generators of the field `K(f_1, ..., f_m)` when it has transcendence
//! degree one: gcds of anchored pencil members, the univariate greatest
//! common right component, and a decomposition-based variant.

use crate::decompose::{compute_u_linear, decomp_with, sample_point, DecompOptions, Outcome, RETRY_BUDGET};
use crate::factor::FactorField;
use crate::fields::Field;
use crate::pencil::{anchored_pencil_member, compose, make_reduced, RationalFunctionMV, RationalFunctionUV};
use crate::polys::{gcd, linalg, MultiPoly};
use crate::{Error, Result, Stream};

#[derive(Clone, Debug, PartialEq)]
pub enum LurothOutcome<F: Field> {
    Generator(RationalFunctionMV<F>),
    NoGenerator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LurothResult<F: Field> {
    pub outcome: LurothOutcome<F>,
    /// Point pairs tried, in order.
    pub points: Vec<(Vec<F::Elem>, Vec<F::Elem>)>,
    /// The gcds `(H_a, H_b)` of the last point pair.
    pub gcds: Option<(MultiPoly<F>, MultiPoly<F>)>,
    pub retries: usize,
}

impl<F: Field> LurothResult<F> {
    pub fn generator(&self) -> Option<&RationalFunctionMV<F>> {
        match &self.outcome {
            LurothOutcome::Generator(h) => Some(h),
            LurothOutcome::NoGenerator => None,
        }
    }
}

/// Every function decomposes through `h`.
pub fn generates_all<F: Field>(h: &RationalFunctionMV<F>, fs: &[&RationalFunctionMV<F>]) -> bool {
    !h.is_constant() && fs.iter().all(|f| compute_u_linear(f, h).is_ok())
}

/// One run of Sederberg's method at fixed points: `H_a / H_b` with `H_x`
/// the gcd of the anchored members of `f` and `g` at `x`.
pub fn sederberg_generalized<F: Field>(
    f: &RationalFunctionMV<F>,
    g: &RationalFunctionMV<F>,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<LurothResult<F>> {
    let ha = gcd(&anchored_pencil_member(f, a)?, &anchored_pencil_member(g, a)?).normalized();
    let mut res = LurothResult {
        outcome: LurothOutcome::NoGenerator,
        points: vec![(a.to_vec(), b.to_vec())],
        gcds: None,
        retries: 0,
    };
    if ha.is_constant() {
        return Ok(res);
    }
    let hb = gcd(&anchored_pencil_member(f, b)?, &anchored_pencil_member(g, b)?).normalized();
    res.gcds = Some((ha.clone(), hb.clone()));
    if hb.is_constant() {
        return Ok(res);
    }
    let h = make_reduced(ha, hb)?;
    if !generates_all(&h, &[f, g]) {
        return Err(Error::RetryNeeded);
    }
    res.outcome = LurothOutcome::Generator(h);
    Ok(res)
}

/// Sederberg's method with the given points first, then fresh random
/// points whenever verification fails.
pub fn sederberg_with_retry<F: Field>(
    f: &RationalFunctionMV<F>,
    g: &RationalFunctionMV<F>,
    points: Option<(Vec<F::Elem>, Vec<F::Elem>)>,
    rng: &mut Stream,
) -> Result<LurothResult<F>> {
    let k = f.field().clone();
    let n = f.nvars();
    let d = f.degree().max(g.degree());
    let mut tried = Vec::new();
    for attempt in 0..RETRY_BUDGET {
        let (a, b) = match (&points, attempt) {
            (Some(p), 0) => p.clone(),
            _ => (sample_point(&k, n, d, rng), sample_point(&k, n, d, rng)),
        };
        tried.push((a.clone(), b.clone()));
        match sederberg_generalized(f, g, &a, &b) {
            Ok(mut r) => {
                r.points = tried;
                r.retries = attempt;
                return Ok(r);
            }
            Err(Error::RetryNeeded) | Err(Error::BasePointOfPencil) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}

fn uv_to_mv<F: Field>(u: &RationalFunctionUV<F>) -> RationalFunctionMV<F> {
    make_reduced(MultiPoly::from_uni(u.num(), 1, 0), MultiPoly::from_uni(u.den(), 1, 0)).expect("nonzero denominator")
}

fn mv_to_uv<F: Field>(f: &RationalFunctionMV<F>) -> RationalFunctionUV<F> {
    RationalFunctionUV::new(f.num().to_uni(0).unwrap(), f.den().to_uni(0).unwrap()).expect("nonzero denominator")
}

/// Greatest common right component of `u` and `v` from the gcds of their
/// anchored members at `x1` and `x2`.
pub fn gcrc_univariate<F: Field>(
    u: &RationalFunctionUV<F>,
    v: &RationalFunctionUV<F>,
    x1: &F::Elem,
    x2: &F::Elem,
) -> Result<RationalFunctionUV<F>> {
    if x1 == x2 {
        return Err(Error::InvalidInput("points must differ".into()));
    }
    let (um, vm) = (uv_to_mv(u), uv_to_mv(v));
    let a1 = gcd(&anchored_pencil_member(&um, &[x1.clone()])?, &anchored_pencil_member(&vm, &[x1.clone()])?);
    let a2 = gcd(&anchored_pencil_member(&um, &[x2.clone()])?, &anchored_pencil_member(&vm, &[x2.clone()])?);
    let w = make_reduced(a1, a2)?;
    if !generates_all(&w, &[&um, &vm]) {
        return Err(Error::RetryNeeded);
    }
    Ok(mv_to_uv(&w))
}

fn gcrc_with_retry<F: Field>(
    u: &RationalFunctionUV<F>,
    v: &RationalFunctionUV<F>,
    rng: &mut Stream,
) -> Result<RationalFunctionUV<F>> {
    let k = u.field().clone();
    let d = u.degree().max(v.degree());
    for _ in 0..RETRY_BUDGET {
        let x1 = sample_point(&k, 1, d, rng).remove(0);
        let x2 = sample_point(&k, 1, d, rng).remove(0);
        match gcrc_univariate(u, v, &x1, &x2) {
            Ok(w) => return Ok(w),
            Err(Error::RetryNeeded) | Err(Error::InvalidInput(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}

/// Decompose `f = u ∘ h`, express `g = v ∘ h` and return `w ∘ h` for `w`
/// the greatest common right component of `u` and `v`.
pub fn luroth_with_decomp<F: FactorField>(
    f: &RationalFunctionMV<F>,
    g: &RationalFunctionMV<F>,
    points: Option<(Vec<F::Elem>, Vec<F::Elem>)>,
    rng: &mut Stream,
) -> Result<LurothResult<F>> {
    let k = f.field().clone();
    let opts = DecompOptions { points: points.clone(), budget: RETRY_BUDGET };
    let report = decomp_with(f, &opts, rng)?;
    let (u, h) = match report.outcome {
        Outcome::Decomposed(d) => (d.u, d.h),
        Outcome::NonComposite(_) => (RationalFunctionUV::identity(k), f.clone()),
    };
    let mut res = LurothResult {
        outcome: LurothOutcome::NoGenerator,
        points: report.trace.iter().map(|t| (t.a.clone(), t.b.clone())).collect(),
        gcds: None,
        retries: report.trials_used.saturating_sub(1),
    };
    let v = match compute_u_linear(g, &h) {
        Ok(v) => v,
        Err(Error::NoSuchU) => return Ok(res),
        Err(e) => return Err(e),
    };
    let w = gcrc_with_retry(&u, &v, rng)?;
    let gen = compose(&w, &h);
    if !generates_all(&gen, &[f, g]) {
        return Err(Error::RetryNeeded);
    }
    res.outcome = LurothOutcome::Generator(gen);
    Ok(res)
}

/// Generator of `K(f_1, ..., f_m)` by folding Sederberg's method over the
/// list.
pub fn luroth_generator<F: Field>(
    functions: &[RationalFunctionMV<F>],
    points: &[Option<(Vec<F::Elem>, Vec<F::Elem>)>],
    rng: &mut Stream,
) -> Result<LurothResult<F>> {
    let Some(first) = functions.first() else {
        return Err(Error::InvalidInput("no functions".into()));
    };
    let mut res = LurothResult { outcome: LurothOutcome::Generator(first.clone()), points: vec![], gcds: None, retries: 0 };
    let mut h = first.clone();
    for (i, fi) in functions.iter().enumerate().skip(1) {
        let z = points.get(i - 1).cloned().flatten();
        let r = sederberg_with_retry(&h, fi, z, rng)?;
        res.points.extend(r.points);
        res.retries += r.retries;
        res.gcds = r.gcds;
        match r.outcome {
            LurothOutcome::Generator(next) => h = next,
            LurothOutcome::NoGenerator => {
                res.outcome = LurothOutcome::NoGenerator;
                return Ok(res);
            }
        }
    }
    let all: Vec<&RationalFunctionMV<F>> = functions.iter().collect();
    if !generates_all(&h, &all) {
        return Err(Error::RetryNeeded);
    }
    res.outcome = LurothOutcome::Generator(h);
    Ok(res)
}

/// `Some(H_a)` when `alpha H_a + beta = H_b` for constants `alpha != 0`,
/// `beta`; then `H_a` is a polynomial generator.
pub fn polynomial_generator_upgrade<F: Field>(ha: &MultiPoly<F>, hb: &MultiPoly<F>) -> Option<MultiPoly<F>> {
    let k = ha.field().clone();
    let mut monos: Vec<_> = ha.terms().iter().chain(hb.terms()).map(|t| t.0.clone()).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<F::Elem>> = monos
        .iter()
        .map(|m| vec![ha.coeff(m), if m.is_one() { k.one() } else { k.zero() }])
        .collect();
    let rhs: Vec<F::Elem> = monos.iter().map(|m| hb.coeff(m)).collect();
    let sol = linalg::solve(&k, &rows, &rhs)?;
    (!k.is_zero(&sol[0]) && !ha.is_constant()).then(|| ha.clone())
}
