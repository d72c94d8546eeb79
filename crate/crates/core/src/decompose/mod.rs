//! Functional decomposition `f = u ∘ h` of multivariate rational functions:
//! recovering `u` from `h`, the randomized algorithm driven by two anchored
//! pencil members, and the deterministic variant over finite fields.

mod compute_u;

pub use compute_u::{compute_u_linear, compute_u_series, mobius_relation};

use crate::factor::{factor_absolute, factor_multivariate, FactorField};
use crate::fields::{check_hypothesis_c, ExtField, Field, FiniteField};
use crate::pencil::{canonical_generator, 
    anchored_pencil_member, check_hypothesis_h, compose, make_reduced, pencil_member, random_affine_change,
    RationalFunctionMV, RationalFunctionUV,
};
use crate::polys::MultiPoly;
use crate::{Error, Result, Stream};

/// Resampling budget for [`decomp`].
pub const RETRY_BUDGET: usize = 10;
/// Pairs of minimal-degree factors tried per trial.
pub const PAIR_CAP: usize = 25;

/// How a claim about non-compositeness was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Deterministic,
    Probabilistic,
    Polytope,
}

impl Certification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certification::Deterministic => "deterministic",
            Certification::Probabilistic => "probabilistic",
            Certification::Polytope => "polytope",
        }
    }
}

/// A verified `f = u ∘ h` with `deg u >= 2`, `h` in the form given by
/// [`canonical_generator`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F: Field> {
    pub u: RationalFunctionUV<F>,
    pub h: RationalFunctionMV<F>,
    /// How `h` is known to be non-composite, if it is.
    pub certified: Option<Certification>,
}

impl<F: Field> Decomposition<F> {
    pub fn new(
        f: &RationalFunctionMV<F>,
        u: RationalFunctionUV<F>,
        h: RationalFunctionMV<F>,
        certified: Option<Certification>,
    ) -> Result<Self> {
        let hc = canonical_generator(&h);
        let (u, h) = if hc == h { (u, h) } else { (compute_u_linear(f, &hc)?, hc) };
        if u.degree() < 2 || u.degree() * h.degree() != f.degree() || compose(&u, &h) != *f {
            return Err(Error::InvalidInput("not a decomposition of f".into()));
        }
        Ok(Decomposition { u, h, certified })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<F: Field> {
    NonComposite(Certification),
    Decomposed(Decomposition<F>),
}

impl<F: Field> Outcome<F> {
    pub fn is_composite(&self) -> bool {
        matches!(self, Outcome::Decomposed(_))
    }

    pub fn decomposition(&self) -> Option<&Decomposition<F>> {
        match self {
            Outcome::Decomposed(d) => Some(d),
            Outcome::NonComposite(_) => None,
        }
    }
}

/// What one trial looked at.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord<F: Field> {
    pub a: Vec<F::Elem>,
    pub b: Vec<F::Elem>,
    pub fa: Option<MultiPoly<F>>,
    pub fb: Option<MultiPoly<F>>,
    pub fa_factors: Vec<MultiPoly<F>>,
    pub fb_factors: Vec<MultiPoly<F>>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompReport<F: Field> {
    pub outcome: Outcome<F>,
    pub trials_used: usize,
    pub points_sampled: usize,
    pub trace: Vec<TrialRecord<F>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct DecompOptions<F: Field> {
    /// Points used by the first trial instead of random ones.
    pub points: Option<(Vec<F::Elem>, Vec<F::Elem>)>,
    pub budget: usize,
}

impl<F: Field> Default for DecompOptions<F> {
    fn default() -> Self {
        DecompOptions { points: None, budget: RETRY_BUDGET }
    }
}

/// Uniform over a finite field; integers in a box of size `max(101, 4d^3)`
/// otherwise.
pub(crate) fn sample_point<F: Field>(k: &F, n: usize, d: usize, rng: &mut Stream) -> Vec<F::Elem> {
    let bound = (4 * d * d * d).max(101) as u64;
    (0..n).map(|_| k.random(rng, bound)).collect()
}

fn is_irreducible_list<F: Field>(fl: &crate::factor::MultiFactors<F>) -> bool {
    fl.factors.len() == 1 && fl.factors[0].1 == 1
}

fn min_degree_factors<F: Field>(fs: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
    let m = fs.iter().map(|p| p.tdeg()).min().unwrap_or(0);
    fs.iter().filter(|p| p.tdeg() == m).cloned().collect()
}

/// Probabilistic decomposition with default options.
pub fn decomp<F: FactorField>(f: &RationalFunctionMV<F>, rng: &mut Stream) -> Result<DecompReport<F>> {
    decomp_with(f, &DecompOptions::default(), rng)
}

/// Probabilistic decomposition: factor two anchored pencil members, build `h` from
/// minimal-degree factors, solve for `u`, verify and otherwise resample.
pub fn decomp_with<F: FactorField>(
    f: &RationalFunctionMV<F>,
    opts: &DecompOptions<F>,
    rng: &mut Stream,
) -> Result<DecompReport<F>> {
    let d = f.degree();
    let mut report = DecompReport {
        outcome: Outcome::NonComposite(Certification::Deterministic),
        trials_used: 0,
        points_sampled: 0,
        trace: Vec::new(),
        warnings: Vec::new(),
    };
    if d <= 1 {
        return Ok(report);
    }
    check_hypothesis_c(f.field(), d)?;
    if f.nvars() >= 2 && opts.points.is_none() && !check_hypothesis_h(f).0 {
        let (g, _, inverse) = random_affine_change(f, rng)?;
        let mut r = decomp_with(&g, opts, rng)?;
        r.warnings.push("degree not attained in the last variable; applied a random affine change".into());
        if let Outcome::Decomposed(dec) = r.outcome {
            let h = inverse.apply(&dec.h);
            r.outcome = Outcome::Decomposed(Decomposition::new(f, dec.u, h, None)?);
        }
        return Ok(r);
    }
    let k = f.field().clone();
    let n = f.nvars();
    for trial in 0..opts.budget {
        report.trials_used = trial + 1;
        let (a, b) = match (&opts.points, trial) {
            (Some(p), 0) => p.clone(),
            _ => {
                report.points_sampled += 2;
                (sample_point(&k, n, d, rng), sample_point(&k, n, d, rng))
            }
        };
        let mut rec = TrialRecord {
            a: a.clone(),
            b: b.clone(),
            fa: None,
            fb: None,
            fa_factors: vec![],
            fb_factors: vec![],
            note: String::new(),
        };
        let members = anchored_pencil_member(f, &a).and_then(|fa| Ok((fa, anchored_pencil_member(f, &b)?)));
        let (fa, fb) = match members {
            Ok(m) => m,
            Err(Error::BasePointOfPencil) => {
                rec.note = "base point of the pencil".into();
                report.trace.push(rec);
                continue;
            }
            Err(e) => return Err(e),
        };
        rec.fa = Some(fa.clone());
        rec.fb = Some(fb.clone());
        let la = factor_multivariate(&fa, rng)?;
        let lb = factor_multivariate(&fb, rng)?;
        rec.fa_factors = la.factors.iter().map(|t| t.0.clone()).collect();
        rec.fb_factors = lb.factors.iter().map(|t| t.0.clone()).collect();
        if is_irreducible_list(&la) || is_irreducible_list(&lb) {
            rec.note = "irreducible anchored member".into();
            report.trace.push(rec);
            report.outcome = Outcome::NonComposite(Certification::Probabilistic);
            return Ok(report);
        }
        let ma = min_degree_factors(&rec.fa_factors);
        let mb = min_degree_factors(&rec.fb_factors);
        let pairs = ma.iter().flat_map(|x| mb.iter().map(move |y| (x, y))).take(PAIR_CAP);
        for (x, y) in pairs {
            let Ok(h) = make_reduced(x.clone(), y.clone()) else { continue };
            let dh = h.degree();
            if dh == 0 || dh == d || d % dh != 0 {
                continue;
            }
            if let Ok(u) = compute_u_linear(f, &h) {
                rec.note = "decomposed".into();
                report.trace.push(rec);
                report.outcome = Outcome::Decomposed(Decomposition::new(f, u, h, Some(Certification::Probabilistic))?);
                return Ok(report);
            }
        }
        rec.note = "no verified component".into();
        report.trace.push(rec);
    }
    Err(Error::RetryBudgetExhausted(opts.budget))
}

/// `max(d^2, ceil(3d^2/2) - 2d + 1)`, the number of pencil parameters the
/// deterministic algorithm may need.
pub fn det_set_size(d: usize) -> usize {
    let b = (3 * d * d).div_ceil(2) + 1;
    (d * d).max(b.saturating_sub(2 * d))
}

/// The first `det_set_size(d)` elements of the field (fewer if the field is
/// smaller).
pub fn default_det_set<F: FiniteField>(k: &F, d: usize) -> Vec<F::Elem> {
    (0..det_set_size(d) as u64).map_while(|i| k.element(i)).collect()
}

/// Split a factor with coefficients outside the base field into its
/// power-basis components and return two independent ones; both are
/// members of the same degree-one pencil.
pub fn extract_h_from_extension_factor<B: FiniteField>(
    ext: &ExtField<B>,
    g: &MultiPoly<ExtField<B>>,
) -> Result<(MultiPoly<B>, MultiPoly<B>)> {
    let base = ext.base().clone();
    let n = g.nvars();
    let comps: Vec<MultiPoly<B>> = (0..ext.degree())
        .map(|i| {
            MultiPoly::from_terms(
                base.clone(),
                n,
                g.terms().iter().map(|(m, c)| (m.clone(), ext.coords(c)[i].clone())),
            )
        })
        .collect();
    let Some(first) = comps.iter().position(|c| !c.is_zero()) else {
        return Err(Error::FactorIsRational);
    };
    let second = comps
        .iter()
        .skip(first + 1)
        .find(|c| !c.is_zero() && comps[first].proportional(c).is_none())
        .ok_or(Error::FactorIsRational)?;
    Ok((comps[first].clone(), second.clone()))
}

/// Deterministic decomposition over a finite field with parameter set `s`.
pub fn decomp_det<F: FiniteField + FactorField>(
    f: &RationalFunctionMV<F>,
    s: &[F::Elem],
    rng: &mut Stream,
) -> Result<DecompReport<F>> {
    let d = f.degree();
    let mut report = DecompReport {
        outcome: Outcome::NonComposite(Certification::Deterministic),
        trials_used: 0,
        points_sampled: 0,
        trace: Vec::new(),
        warnings: Vec::new(),
    };
    if d <= 1 {
        return Ok(report);
    }
    let k = f.field().clone();
    let need = det_set_size(d);
    if s.len() < need {
        report
            .warnings
            .push(format!("parameter set has {} elements, fewer than the {} that guarantee termination", s.len(), need));
    }
    for (i, sl) in s.iter().enumerate() {
        report.trials_used = i + 1;
        let member = pencil_member(f, &k.one(), &k.neg(sl));
        let mut rec = TrialRecord {
            a: vec![sl.clone()],
            b: vec![],
            fa: Some(member.clone()),
            fb: None,
            fa_factors: vec![],
            fb_factors: vec![],
            note: String::new(),
        };
        if member.tdeg() != d {
            rec.note = "degree drop".into();
            report.trace.push(rec);
            continue;
        }
        let (ext, fl) = factor_absolute(&member, rng)?;
        rec.fa_factors = fl
            .factors
            .iter()
            .filter_map(|(g, _)| g.terms().iter().all(|(_, c)| ext.to_base(c).is_some()).then(|| g.map_coeffs(&k, |c| ext.to_base(c).unwrap())))
            .collect();
        if is_irreducible_list(&fl) {
            rec.note = "absolutely irreducible".into();
            report.trace.push(rec);
            return Ok(report);
        }
        let candidate = if rec.fa_factors.len() >= 2 {
            Some((rec.fa_factors[0].clone(), rec.fa_factors[1].clone()))
        } else {
            fl.factors
                .iter()
                .find_map(|(g, _)| extract_h_from_extension_factor(&ext, g).ok())
        };
        if let Some((h1, h2)) = candidate {
            if let Ok(h) = make_reduced(h1, h2) {
                let dh = h.degree();
                if dh > 0 && dh < d && d % dh == 0 {
                    if let Ok(u) = compute_u_linear(f, &h) {
                        rec.note = "decomposed".into();
                        report.trace.push(rec);
                        report.outcome =
                            Outcome::Decomposed(Decomposition::new(f, u, h, Some(Certification::Deterministic))?);
                        return Ok(report);
                    }
                }
            }
        }
        rec.note = "no component".into();
        report.trace.push(rec);
    }
    Err(Error::FieldTooSmall { needed: need.to_string(), available: s.len().to_string() })
}

/// One-sided test: `true` once an anchored member of full degree at a random
/// point is irreducible. Over finite fields irreducibility is absolute; over
/// other fields it is irreducibility over the field itself, which is weaker
/// evidence.
pub fn is_noncomposite_probabilistic<F: FactorField>(
    f: &RationalFunctionMV<F>,
    trials: usize,
    rng: &mut Stream,
) -> Result<bool> {
    let d = f.degree();
    if d <= 1 {
        return Ok(true);
    }
    let k = f.field().clone();
    for _ in 0..trials {
        let a = sample_point(&k, f.nvars(), d, rng);
        let Ok(fa) = anchored_pencil_member(f, &a) else { continue };
        if fa.tdeg() != d {
            continue;
        }
        let irreducible = match k.absolute_irreducibility(&fa, rng) {
            Some(r) => r?,
            None => is_irreducible_list(&factor_multivariate(&fa, rng)?),
        };
        if irreducible {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};
    use crate::polys::UniPoly;
    use rand::SeedableRng;

    fn h_parts<F: Field>(k: &F) -> (MultiPoly<F>, MultiPoly<F>) {
        let h1 = MultiPoly::from_int_terms(k.clone(), 2, &[(1, &[3, 0]), (1, &[0, 3]), (1, &[0, 0])]);
        let h2 = MultiPoly::from_int_terms(k.clone(), 2, &[(3, &[1, 1])]);
        (h1, h2)
    }

    fn cubic_ratio<F: Field>(k: &F) -> RationalFunctionMV<F> {
        let (h1, h2) = h_parts(k);
        make_reduced(h1, h2).unwrap()
    }

    fn sextic<F: Field>(k: &F) -> RationalFunctionMV<F> {
        let u = RationalFunctionUV::new(UniPoly::from_i64(k.clone(), &[1, 0, 1]), UniPoly::x(k.clone())).unwrap();
        compose(&u, &cubic_ratio(k))
    }

    #[test]
    fn set_size() {
        assert_eq!(det_set_size(6), 43);
        assert_eq!(det_set_size(3), 9);
        assert_eq!(det_set_size(2), 4);
    }

    #[test]
    fn decomp_cubic_ratio_is_noncomposite() {
        let k = Rationals;
        let f = cubic_ratio(&k);
        let mut rng = Stream::seed_from_u64(1);
        let r = decomp(&f, &mut rng).unwrap();
        assert!(!r.outcome.is_composite());
    }

    #[test]
    fn decomp_sextic_forced_points() {
        let k = Rationals;
        let f = sextic(&k);
        let opts = DecompOptions {
            points: Some((vec![k.from_i64(2), k.from_i64(1)], vec![k.from_i64(1), k.from_i64(-1)])),
            budget: RETRY_BUDGET,
        };
        let mut rng = Stream::seed_from_u64(2);
        let r = decomp_with(&f, &opts, &mut rng).unwrap();
        assert_eq!(r.trials_used, 1);
        let t = &r.trace[0];
        let want_a = MultiPoly::from_int_terms(k, 2, &[(1, &[3, 0]), (1, &[0, 3]), (-5, &[1, 1]), (1, &[0, 0])]);
        let want_b = MultiPoly::from_int_terms(k, 2, &[(1, &[3, 0]), (1, &[0, 3]), (1, &[1, 1]), (1, &[0, 0])]);
        assert!(t.fa_factors.contains(&want_a));
        assert!(t.fb_factors.contains(&want_b));
        let dec = r.outcome.decomposition().unwrap();
        assert_eq!(dec.u.degree(), 2);
        assert!(mobius_relation(&dec.h, &cubic_ratio(&k)).is_some());
    }

    #[test]
    fn det_examples() {
        let k = PrimeField::new(101).unwrap();
        let (h1, h2) = h_parts(&k);
        let f = make_reduced(h2, h1).unwrap();
        let mut rng = Stream::seed_from_u64(3);
        let r = decomp_det(&f, &default_det_set(&k, 3), &mut rng).unwrap();
        assert_eq!(r.outcome, Outcome::NonComposite(Certification::Deterministic));
        assert_eq!(r.trials_used, 2);

        for p in [13, 43] {
            let k = PrimeField::new(p).unwrap();
            let f = sextic(&k);
            let r = decomp_det(&f, &default_det_set(&k, 6), &mut rng).unwrap();
            let dec = r.outcome.decomposition().expect("composite");
            assert_eq!(dec.u.degree(), 2);
            assert!(mobius_relation(&dec.h, &cubic_ratio(&k)).is_some());
            assert_eq!(r.trials_used, 1);
        }
    }

    #[test]
    fn extension_components() {
        let k = PrimeField::new(43).unwrap();
        let ext = ExtField::new(k, 2).unwrap();
        let (h1, h2) = h_parts(&k);
        let alpha = ext.generator();
        let lift = |p: &MultiPoly<PrimeField>| p.map_coeffs(&ext, |c| ext.embed(c));
        let g = lift(&h1).add(&lift(&h2).scale(&alpha));
        assert_eq!(extract_h_from_extension_factor(&ext, &g).unwrap(), (h1.clone(), h2.clone()));
        let t = ext.add(&ext.embed(&2), &ext.mul(&ext.embed(&5), &alpha));
        let g = lift(&h1).add(&lift(&h2).scale(&t));
        let (g1, g2) = extract_h_from_extension_factor(&ext, &g).unwrap();
        let w = make_reduced(g1, g2).unwrap();
        assert!(mobius_relation(&w, &cubic_ratio(&k)).is_some());
        assert_eq!(extract_h_from_extension_factor(&ext, &lift(&h1)), Err(Error::FactorIsRational));
    }

    #[test]
    fn probabilistic_test() {
        let k = PrimeField::new(101).unwrap();
        let mut rng = Stream::seed_from_u64(4);
        assert!(is_noncomposite_probabilistic(&cubic_ratio(&k), 3, &mut rng).unwrap());
        assert!(!is_noncomposite_probabilistic(&sextic(&k), 3, &mut rng).unwrap());
        let x = RationalFunctionMV::from_poly(MultiPoly::var(k, 2, 0));
        assert!(is_noncomposite_probabilistic(&x, 1, &mut rng).unwrap());
    }
}
