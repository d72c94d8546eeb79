//! Recover `u` from `f` and a right component `h` with `f = u ∘ h`.

use std::collections::HashMap;

use crate::fields::Field;
use crate::pencil::{compose, RationalFunctionMV, RationalFunctionUV};
use crate::polys::{linalg, pade_approximant, series_compositional_inverse, Monomial, MultiPoly, UniPoly};
use crate::{Error, Result};

const LINE_BUDGET: usize = 10;

fn powers<F: Field>(p: &MultiPoly<F>, k: usize) -> Vec<MultiPoly<F>> {
    let mut out = vec![MultiPoly::one(p.field().clone(), p.nvars())];
    for i in 1..=k {
        out.push(out[i - 1].mul(p));
    }
    out
}

fn outer_degree<F: Field>(f: &RationalFunctionMV<F>, h: &RationalFunctionMV<F>) -> Result<usize> {
    let (df, dh) = (f.degree(), h.degree());
    if dh == 0 || df % dh != 0 {
        return Err(Error::NoSuchU);
    }
    Ok(df / dh)
}

fn verified<F: Field>(f: &RationalFunctionMV<F>, h: &RationalFunctionMV<F>, u: RationalFunctionUV<F>) -> Option<RationalFunctionUV<F>> {
    (compose(&u, h) == *f).then_some(u)
}

/// Solve `f2 * A(h1, h2) - f1 * B(h1, h2) = 0` for the homogenized
/// coefficient vectors of `u = A / B`.
pub fn compute_u_linear<F: Field>(f: &RationalFunctionMV<F>, h: &RationalFunctionMV<F>) -> Result<RationalFunctionUV<F>> {
    let k = outer_degree(f, h)?;
    let field = f.field().clone();
    let p1 = powers(h.num(), k);
    let p2 = powers(h.den(), k);
    let basis: Vec<MultiPoly<F>> = (0..=k).map(|i| p1[i].mul(&p2[k - i])).collect();
    let cols: Vec<MultiPoly<F>> = basis
        .iter()
        .map(|b| f.den().mul(b))
        .chain(basis.iter().map(|b| f.num().mul(b).neg()))
        .collect();
    let ncols = cols.len();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        for (m, x) in c.terms() {
            let r = *index.entry(m.clone()).or_insert_with(|| {
                rows.push(vec![field.zero(); ncols]);
                rows.len() - 1
            });
            rows[r][j] = x.clone();
        }
    }
    for v in linalg::nullspace(&field, &rows, ncols) {
        let a = UniPoly::new(field.clone(), v[..=k].to_vec());
        let b = UniPoly::new(field.clone(), v[k + 1..].to_vec());
        if b.is_zero() {
            continue;
        }
        if let Some(u) = verified(f, h, RationalFunctionUV::new(a, b)?) {
            return Ok(u);
        }
    }
    Err(Error::NoSuchU)
}

/// Restriction of `p` to the line `c + t * dir`.
fn on_line<F: Field>(p: &MultiPoly<F>, c: &[F::Elem], dir: &[F::Elem]) -> UniPoly<F> {
    let k = p.field().clone();
    let t = MultiPoly::var(k.clone(), 1, 0);
    let images: Vec<MultiPoly<F>> = c
        .iter()
        .zip(dir)
        .map(|(ci, di)| t.scale(di).add(&MultiPoly::constant(k.clone(), 1, ci.clone())))
        .collect();
    p.compose_all(&images).to_uni(0).unwrap()
}

/// The axis `(0, ..., 0, t)` first, then a fixed sequence of other lines.
fn line<F: Field>(k: &F, n: usize, j: usize) -> (Vec<F::Elem>, Vec<F::Elem>) {
    if j == 0 {
        let mut dir = vec![k.zero(); n];
        dir[n - 1] = k.one();
        return (vec![k.zero(); n], dir);
    }
    let c = (0..n).map(|i| if i + 1 == n { k.zero() } else { k.from_i64((j + i) as i64) }).collect();
    let dir = (0..n)
        .map(|i| if i + 1 == n { k.one() } else { k.from_i64(((j * (i + 2)) % 5) as i64) })
        .collect();
    (c, dir)
}

/// Same `u` as [`compute_u_linear`], found by inverting `h` as a power series
/// along a line, composing with `f` and reading `u` off a Padé approximant.
pub fn compute_u_series<F: Field>(f: &RationalFunctionMV<F>, h: &RationalFunctionMV<F>) -> Result<RationalFunctionUV<F>> {
    let k = outer_degree(f, h)?;
    let field = f.field().clone();
    let n = f.nvars();
    let prec = 2 * k + 1;
    let mut usable_line = false;
    for j in 0..LINE_BUDGET {
        let (c, dir) = line(&field, n, j);
        let (hn, hd) = (on_line(h.num(), &c, &dir), on_line(h.den(), &c, &dir));
        let (fn_, fd) = (on_line(f.num(), &c, &dir), on_line(f.den(), &c, &dir));
        if hd.is_zero() || fd.is_zero() {
            continue;
        }
        let dh = hn.derivative().mul(&hd).sub(&hn.mul(&hd.derivative()));
        if dh.is_zero() {
            continue;
        }
        usable_line = true;
        let tries = 4 * (f.degree() + 1) + 10;
        for t in 0..tries {
            let t0 = field.from_i64(t as i64);
            if field.is_zero(&hd.eval(&t0)) || field.is_zero(&fd.eval(&t0)) || field.is_zero(&dh.eval(&t0)) {
                continue;
            }
            let Ok(big_h) = series_compositional_inverse(&hn, &hd, &t0, prec) else {
                continue;
            };
            let Some(s) = big_h.compose_rational(&fn_, &fd) else {
                continue;
            };
            // s(e) = u(g0 + e)
            let g0 = field.div(&hn.eval(&t0), &hd.eval(&t0)).unwrap();
            let Ok((p, q)) = pade_approximant(&s, k, k) else {
                break;
            };
            let back = UniPoly::linear(field.clone(), &g0);
            let u = RationalFunctionUV::new(p.compose(&back), q.compose(&back))?;
            if let Some(u) = verified(f, h, u) {
                return Ok(u);
            }
            break;
        }
    }
    if usable_line {
        Err(Error::NoSuchU)
    } else {
        Err(Error::SingularExpansionPoint)
    }
}

/// `w` of degree one with `g = w ∘ h`, if any.
pub fn mobius_relation<F: Field>(g: &RationalFunctionMV<F>, h: &RationalFunctionMV<F>) -> Option<RationalFunctionUV<F>> {
    if g.degree() != h.degree() || g.degree() == 0 {
        return None;
    }
    compute_u_linear(g, h).ok().filter(|w| w.degree() == 1)
}
