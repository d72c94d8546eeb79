//! Multivariate gcd by content/primitive-part recursion with a subresultant
//! remainder sequence on one variable, and resultants by the same sequence.

use super::multi::MultiPoly;
use super::uni::UniPoly;
use crate::fields::Field;
use crate::Stream;
use rand::SeedableRng;

const LINES: u64 = 8;

/// The line `a + t * b` number `j` of a fixed pseudorandom sequence.
fn line<F: Field>(field: &F, n: usize, j: u64) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let mut rng = Stream::seed_from_u64(j);
    let a = (0..n).map(|_| field.random(&mut rng, 1000)).collect();
    let b = (0..n).map(|_| field.random(&mut rng, 1000)).collect();
    (a, b)
}

fn restrict<F: Field>(p: &MultiPoly<F>, a: &[F::Elem], b: &[F::Elem]) -> UniPoly<F> {
    let k = p.field().clone();
    let n = p.nvars();
    let t = MultiPoly::var(k.clone(), 1, 0);
    let images: Vec<MultiPoly<F>> =
        (0..n).map(|i| t.scale(&b[i]).add(&MultiPoly::constant(k.clone(), 1, a[i].clone()))).collect();
    p.compose_all(&images).to_uni(0).unwrap()
}

fn top_survives<F: Field>(p: &MultiPoly<F>, b: &[F::Elem]) -> bool {
    let k = p.field();
    p.homogeneous_part(p.tdeg()).evaluate(b).map(|x| !k.is_zero(&x)).unwrap_or(false)
}

/// `true` only if `p` is squarefree: a repeated factor would survive on any
/// line along which `p` keeps its degree.
pub(crate) fn squarefree_on_a_line<F: Field>(p: &MultiPoly<F>) -> bool {
    let k = p.field();
    (0..LINES).any(|j| {
        let (a, b) = line(k, p.nvars(), j);
        top_survives(p, &b) && restrict(p, &a, &b).is_squarefree()
    })
}

/// `true` only if the polynomials have no common factor of positive degree.
fn coprime_on_a_line<F: Field>(cs: &[&MultiPoly<F>]) -> bool {
    let Some(first) = cs.first() else { return false };
    let k = first.field();
    (0..LINES).any(|j| {
        let (a, b) = line(k, first.nvars(), j);
        if !cs.iter().any(|c| top_survives(c, &b)) {
            return false;
        }
        let mut g = UniPoly::zero(k.clone());
        for c in cs {
            g = g.gcd(&restrict(c, &a, &b));
            if g.degree() == 0 && !g.is_zero() {
                return true;
            }
        }
        false
    })
}

type Coeffs<F> = Vec<MultiPoly<F>>;

fn strip<F: Field>(v: &mut Coeffs<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn degree<F: Field>(v: &Coeffs<F>) -> usize {
    v.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `R[X_v]`.
fn prem<F: Field>(a: &Coeffs<F>, b: &Coeffs<F>) -> Coeffs<F> {
    let mut r = a.clone();
    let db = degree(b);
    let lb = b.last().unwrap().clone();
    let mut steps = 0usize;
    let total = degree(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            let idx = dr - db + j;
            r[idx] = r[idx].sub(&t);
        }
        strip(&mut r);
        steps += 1;
    }
    if steps < total {
        let f = lb.pow((total - steps) as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn exact_div_all<F: Field>(v: &mut Coeffs<F>, d: &MultiPoly<F>) {
    if d.is_one() {
        return;
    }
    for c in v.iter_mut() {
        *c = c.exact_div(d).expect("subresultant division is exact");
    }
}

/// gcd of all coefficients (a polynomial not involving the split variable).
fn content_of<F: Field>(cs: &[MultiPoly<F>], field: &F, nvars: usize) -> MultiPoly<F> {
    let nonzero: Vec<&MultiPoly<F>> = cs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.iter().any(|c| c.is_constant()) || coprime_on_a_line(&nonzero) {
        return MultiPoly::one(field.clone(), nvars);
    }
    let mut g = MultiPoly::zero(field.clone(), nvars);
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one(field.clone(), nvars);
        }
    }
    g
}

/// Content with respect to `X_v`.
pub fn content_in<F: Field>(a: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    content_of(&a.coeffs_in(v), a.field(), a.nvars())
}

/// Primitive part with respect to `X_v`, normalized.
pub fn primitive_part_in<F: Field>(a: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let c = content_in(a, v);
    a.exact_div(&c).expect("content divides").normalized()
}

/// Normalized greatest common divisor; `gcd(0, b)` is `b` normalized.
pub fn gcd<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    let field = a.field().clone();
    let n = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(field, n);
    }
    let ua = a.used_vars();
    let ub = b.used_vars();
    let common: Vec<usize> = ua.iter().copied().filter(|v| ub.contains(v)).collect();
    if common.is_empty() {
        // Any common factor would involve only variables shared by both.
        return MultiPoly::one(field, n);
    }
    if ua.len() == 1 && ub.len() == 1 {
        let v = ua[0];
        let g = a.to_uni(v).unwrap().gcd(&b.to_uni(v).unwrap());
        return MultiPoly::from_uni(&g, n, v).normalized();
    }
    // Variables occurring in only one input can be removed through contents.
    if let Some(&v) = ua.iter().find(|v| !ub.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = ub.iter().find(|v| !ua.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *common.iter().min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v))).unwrap();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = content_of(&ca, &field, n);
    let cont_b = content_of(&cb, &field, n);
    let cont = gcd(&cont_a, &cont_b);
    let mut pa: Coeffs<F> = ca;
    let mut pb: Coeffs<F> = cb;
    exact_div_all(&mut pa, &cont_a);
    exact_div_all(&mut pb, &cont_b);
    let g = prs_gcd(pa, pb, &field, n);
    let g = MultiPoly::from_coeffs_in(field.clone(), n, v, &g);
    let g = if g.is_constant() {
        MultiPoly::one(field.clone(), n)
    } else {
        primitive_part_in(&g, v)
    };
    cont.mul(&g).normalized()
}

/// Subresultant gcd of primitive polynomials given by coefficient lists.
fn prs_gcd<F: Field>(mut a: Coeffs<F>, mut b: Coeffs<F>, field: &F, n: usize) -> Coeffs<F> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let one = MultiPoly::one(field.clone(), n);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = degree(&a) - degree(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![one];
        }
        a = b;
        let d = g.mul(&h.pow(delta as u32));
        let mut nb = r;
        exact_div_all(&mut nb, &d);
        b = nb;
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1)).expect("exact")
        };
    }
}

/// Resultant with respect to `X_v` by the subresultant algorithm.
pub fn resultant<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let field = a.field().clone();
    let n = a.nvars();
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(field, n);
    }
    let mut pa = a.coeffs_in(v);
    let mut pb = b.coeffs_in(v);
    let mut sign_neg = false;
    if pa.len() < pb.len() {
        if degree(&pa) % 2 == 1 && degree(&pb) % 2 == 1 {
            sign_neg = true;
        }
        std::mem::swap(&mut pa, &mut pb);
    }
    if degree(&pb) == 0 {
        let r = pb[0].pow(degree(&pa) as u32);
        return if sign_neg { r.neg() } else { r };
    }
    let one = MultiPoly::one(field.clone(), n);
    let mut g = one.clone();
    let mut h = one;
    loop {
        let (da, db) = (degree(&pa), degree(&pb));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&pa, &pb);
        if r.is_empty() {
            return MultiPoly::zero(field, n);
        }
        pa = pb;
        let d = g.mul(&h.pow(delta as u32));
        let mut nb = r;
        exact_div_all(&mut nb, &d);
        pb = nb;
        g = pa.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1)).expect("exact")
        };
        if degree(&pb) == 0 {
            let da = degree(&pa) as u32;
            let lb = pb[0].clone();
            let res = if da == 0 {
                one_like(&lb)
            } else {
                lb.pow(da).exact_div(&h.pow(da - 1)).expect("exact")
            };
            return if sign_neg { res.neg() } else { res };
        }
    }
}

fn one_like<F: Field>(p: &MultiPoly<F>) -> MultiPoly<F> {
    MultiPoly::one(p.field().clone(), p.nvars())
}

/// `gcd(f, df/dX_1, ..., df/dX_n)` is constant.
pub fn is_squarefree<F: Field>(f: &MultiPoly<F>) -> bool {
    if f.is_constant() || squarefree_on_a_line(f) {
        return true;
    }
    let mut g = f.clone();
    for v in f.used_vars() {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d);
        if g.is_constant() {
            return true;
        }
    }
    // Either a repeated factor or, when every partial derivative vanishes,
    // a p-th power in characteristic p.
    false
}
