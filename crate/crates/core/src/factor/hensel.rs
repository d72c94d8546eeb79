//! Multivariate factorization of a squarefree primitive polynomial:
//! specialize all variables but one, factor the univariate image, lift the
//! factors degree by degree in the other variables, then recombine.

use std::collections::HashMap;

use super::FactorField;
use crate::fields::Field;
use crate::polys::{Monomial, MultiPoly, UniPoly};
use crate::{Error, Result, Stream};

const BUDGET: usize = 25;
const IMAGES: usize = 4;

/// Product keeping only terms of degree at most `k` outside `X_v`.
fn mul_trunc<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize, k: u32) -> MultiPoly<F> {
    let f = a.field();
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
    for (ma, ca) in a.terms() {
        let da = ma.degree_without(v);
        if da > k {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + mb.degree_without(v) > k {
                continue;
            }
            let t = f.mul(ca, cb);
            let m = ma.mul(mb);
            match acc.get_mut(&m) {
                Some(x) => *x = f.add(x, &t),
                None => {
                    acc.insert(m, t);
                }
            }
        }
    }
    MultiPoly::from_terms(f.clone(), a.nvars(), acc)
}

fn product_trunc<F: Field>(ps: &[&MultiPoly<F>], v: usize, k: u32, nvars: usize, field: &F) -> MultiPoly<F> {
    let mut acc = MultiPoly::one(field.clone(), nvars);
    for p in ps {
        acc = mul_trunc(&acc, p, v, k);
    }
    acc
}

/// Factor `f`, squarefree with no content in any variable, whose used
/// variables are `used` (at least two).
pub(super) fn factor_primitive<F: FactorField>(
    f: &MultiPoly<F>,
    used: &[usize],
    rng: &mut Stream,
) -> Result<Vec<MultiPoly<F>>> {
    let n = f.nvars();
    let m = used.len();
    let mut to_small = vec![0; n];
    for (j, &i) in used.iter().enumerate() {
        to_small[i] = j;
    }
    let g = f.remap_vars(&to_small, m);
    match factor_compressed(&g, rng)? {
        Some(fs) => Ok(fs.iter().map(|p| p.remap_vars(used, n)).collect()),
        None => match f.field().factor_via_extension(f, rng) {
            Some(r) => r,
            None => Err(Error::BadSpecializationExhausted(BUDGET)),
        },
    }
}

/// `None` when no usable change of variables or evaluation point was found.
fn factor_compressed<F: FactorField>(g: &MultiPoly<F>, rng: &mut Stream) -> Result<Option<Vec<MultiPoly<F>>>> {
    let k = g.field().clone();
    let n = g.nvars();
    let d = g.tdeg();
    // Main variable: one carrying the full degree, so that the leading
    // coefficient in it is a constant.
    let (v, change) = match (0..n).rev().find(|&v| g.degree_in(v) == d) {
        Some(v) => (v, None),
        None => {
            let v = n - 1;
            let top = g.homogeneous_part(d);
            let mut found = None;
            for attempt in 0..BUDGET {
                let mut c: Vec<F::Elem> = (0..n).map(|_| k.specialization(rng, attempt + 1)).collect();
                c[v] = k.one();
                if !k.is_zero(&top.evaluate(&c)?) {
                    found = Some(c);
                    break;
                }
            }
            let Some(c) = found else {
                return Ok(None);
            };
            (v, Some(c))
        }
    };
    let xv = MultiPoly::var(k.clone(), n, v);
    let changed = match &change {
        None => g.clone(),
        Some(c) => {
            let images: Vec<_> = (0..n)
                .map(|i| {
                    let x = MultiPoly::var(k.clone(), n, i);
                    if i == v { x } else { x.add(&xv.scale(&c[i])) }
                })
                .collect();
            g.compose_all(&images)
        }
    };
    debug_assert_eq!(changed.degree_in(v), d);

    // Among a few evaluation points with a squarefree image, keep the one
    // whose image has the fewest factors: spurious factors are expensive to
    // lift and to recombine.
    let mut best: Option<(Vec<F::Elem>, Vec<UniPoly<F>>)> = None;
    let mut good = 0;
    for attempt in 0..BUDGET {
        let a: Vec<F::Elem> = (0..n).map(|i| if i == v { k.zero() } else { k.specialization(rng, attempt) }).collect();
        let mut img = changed.clone();
        for i in (0..n).filter(|&i| i != v) {
            img = img.partial_evaluate(i, &a[i]);
        }
        let u = img.to_uni(v).unwrap();
        if u.degree() != d || !u.is_squarefree() {
            continue;
        }
        let us: Vec<UniPoly<F>> = k.factor_squarefree_uni(&u.monic(), rng).into_iter().map(|u| u.monic()).collect();
        if us.len() == 1 {
            return Ok(Some(vec![g.clone()]));
        }
        if best.as_ref().is_none_or(|b| us.len() < b.1.len()) {
            best = Some((a, us));
        }
        good += 1;
        if good == IMAGES {
            break;
        }
    }
    let Some((a, mut us)) = best else {
        return Ok(None);
    };
    us.sort_by_key(|u| u.degree());

    let shift = |p: &MultiPoly<F>, sign: bool| -> MultiPoly<F> {
        let images: Vec<_> = (0..n)
            .map(|i| {
                let x = MultiPoly::var(k.clone(), n, i);
                if i == v || k.is_zero(&a[i]) {
                    x
                } else {
                    let c = MultiPoly::constant(k.clone(), n, a[i].clone());
                    if sign { x.add(&c) } else { x.sub(&c) }
                }
            })
            .collect();
        p.compose_all(&images)
    };
    let shifted = shift(&changed, true);
    let lc = shifted.coeff(&Monomial::var(n, v, d as u32));
    let target = shifted.scale(&k.inv(&lc).unwrap());

    let lifted = lift(&target, v, &us, d as u32);
    let found = recombine(&target, v, lifted);

    let mut out = Vec::with_capacity(found.len());
    for p in found {
        let mut p = shift(&p, false);
        if let Some(c) = &change {
            let images: Vec<_> = (0..n)
                .map(|i| {
                    let x = MultiPoly::var(k.clone(), n, i);
                    if i == v { x } else { x.sub(&xv.scale(&c[i])) }
                })
                .collect();
            p = p.compose_all(&images);
        }
        out.push(p.normalized());
    }
    Ok(Some(out))
}

/// Lift the monic coprime factorization `target(X_v, 0) = prod us` to
/// factors that agree with `target` up to degree `bound` in the variables
/// other than `X_v`.
fn lift<F: Field>(target: &MultiPoly<F>, v: usize, us: &[UniPoly<F>], bound: u32) -> Vec<MultiPoly<F>> {
    let k = target.field().clone();
    let n = target.nvars();
    let r = us.len();
    let sigmas: Vec<UniPoly<F>> = (0..r)
        .map(|i| {
            let others = us
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .fold(UniPoly::one(k.clone()), |acc, (_, u)| acc.mul(u));
            others.rem(&us[i]).ext_gcd(&us[i]).1
        })
        .collect();
    let mut lifted: Vec<MultiPoly<F>> = us.iter().map(|u| MultiPoly::from_uni(u, n, v)).collect();
    for deg in 1..=bound {
        let refs: Vec<&MultiPoly<F>> = lifted.iter().collect();
        let prod = product_trunc(&refs, v, deg, n, &k);
        let mut groups: HashMap<Monomial, Vec<(usize, F::Elem)>> = HashMap::new();
        for (m, c) in target.sub(&prod).terms() {
            if m.degree_without(v) == deg {
                groups.entry(m.with(v, 0)).or_default().push((m.get(v) as usize, c.clone()));
            }
        }
        if groups.is_empty() {
            continue;
        }
        let mut updates: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); r];
        for (mono, cs) in groups {
            let top = cs.iter().map(|t| t.0).max().unwrap();
            let mut coeffs = vec![k.zero(); top + 1];
            for (e, c) in cs {
                coeffs[e] = c;
            }
            let c = UniPoly::new(k.clone(), coeffs);
            for i in 0..r {
                let delta = c.mul(&sigmas[i]).rem(&us[i]);
                for (j, x) in delta.coeffs().iter().enumerate() {
                    if !k.is_zero(x) {
                        updates[i].push((mono.with(v, j as u32), x.clone()));
                    }
                }
            }
        }
        for (p, up) in lifted.iter_mut().zip(updates) {
            if !up.is_empty() {
                *p = p.add(&MultiPoly::from_terms(k.clone(), n, up));
            }
        }
    }
    lifted
}

/// Group lifted factors into true factors by trying subsets of increasing
/// size.
fn recombine<F: Field>(target: &MultiPoly<F>, v: usize, lifted: Vec<MultiPoly<F>>) -> Vec<MultiPoly<F>> {
    let k = target.field().clone();
    let n = target.nvars();
    let mut remaining = lifted;
    let mut cur = target.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let sel: Vec<&MultiPoly<F>> = idx.iter().map(|&i| &remaining[i]).collect();
            let m: u32 = sel.iter().map(|p| p.degree_in(v) as u32).sum();
            let cand = product_trunc(&sel, v, m, n, &k);
            if cand.tdeg() as u32 == m {
                if let Ok(q) = cur.exact_div(&cand) {
                    out.push(cand);
                    cur = q;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] != i + r - s {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if !cur.is_constant() {
        out.push(cur);
    }
    out
}
