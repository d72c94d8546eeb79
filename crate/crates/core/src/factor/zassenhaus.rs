//! Factorization in `Z[x]`: factor modulo a prime, lift the modular
//! factorization by multifactor Hensel lifting, then recombine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::finite;
use crate::fields::{primality, Field, PrimeField};
use crate::polys::UniPoly;
use crate::Stream;

pub(crate) type ZPoly = Vec<BigInt>;

fn strip(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    strip(r)
}

fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    strip(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact quotient in `Z[x]`, `None` if `b` does not divide `a`.
fn zdiv(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(strip(q))
}

fn to_fp(a: &ZPoly, k: PrimeField) -> UniPoly<PrimeField> {
    UniPoly::new(k, a.iter().map(|c| k.from_bigint(c)).collect())
}

fn from_fp(a: &UniPoly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn norm2_ceil(a: &ZPoly) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

fn choose_prime(f: &ZPoly) -> PrimeField {
    let n = f.len() - 1;
    let lc = f.last().unwrap();
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bits = maxc.bits() as f64;
    let start = (2.0 * n as f64 * (bits / n as f64).exp2()).min(1e15) as u64;
    let mut p = primality::next_prime_u64(start.max(2));
    loop {
        let lcm = lc.mod_floor(&BigInt::from(p));
        if !lcm.is_zero() {
            let k = PrimeField::new(p).unwrap();
            let img = to_fp(f, k);
            if img.degree() == n && img.is_squarefree() {
                return k;
            }
        }
        p = primality::next_prime_u64(p);
    }
}

/// Irreducible factors of a primitive squarefree `f` in `Z[x]` (each
/// primitive with positive leading coefficient).
pub(crate) fn factor_squarefree_z(f: &ZPoly, rng: &mut Stream) -> Vec<ZPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let k = choose_prime(&f);
    let p = k.p();
    let lc = f.last().unwrap().clone();
    let img = to_fp(&f, k).monic();
    let mut modular = finite::factor_squarefree(&img, rng);
    if modular.len() == 1 {
        return vec![f];
    }
    modular.sort_by_key(|g| g.degree());
    // Lift until p^e > 2 |lc| B with B = 2^n ||f||_2 bounding factor coefficients.
    let bound = (BigInt::one() << (n + 1)) * norm2_ceil(&f) * lc.abs();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut e = 1;
    while modulus <= bound {
        modulus *= &pb;
        e += 1;
    }
    let lifted = hensel_lift(&f, &modular, k, e);
    recombine(&f, lifted, &modulus)
}

/// Monic lifts modulo `p^e` of the monic factorization of `lc^-1 f mod p`.
fn hensel_lift(f: &ZPoly, factors: &[UniPoly<PrimeField>], k: PrimeField, e: u32) -> Vec<ZPoly> {
    let p = BigInt::from(k.p());
    let r = factors.len();
    // sigma_i = (prod_{l != i} g_l)^-1 mod g_i
    let sigmas: Vec<UniPoly<PrimeField>> = (0..r)
        .map(|i| {
            let mut others = UniPoly::one(k);
            for (l, g) in factors.iter().enumerate() {
                if l != i {
                    others = others.mul(g);
                }
            }
            let (_, s, _) = others.rem(&factors[i]).ext_gcd(&factors[i]);
            s
        })
        .collect();
    let mut lifted: Vec<ZPoly> = factors.iter().map(from_fp).collect();
    let pe = p.pow(e);
    let lc = f.last().unwrap();
    let lc_inv = lc.extended_gcd(&pe).x.mod_floor(&pe);
    let target: ZPoly = reduce(&f.iter().map(|c| c * &lc_inv).collect(), &pe);
    let mut pj = p.clone();
    for _ in 1..e {
        let next = &pj * &p;
        let prod = lifted.iter().fold(vec![BigInt::one()], |acc, g| reduce(&zmul(&acc, g), &next));
        let err: ZPoly = (0..target.len().max(prod.len()))
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let c = to_fp(&strip(err), k);
        if !c.is_zero() {
            for (i, g) in lifted.iter_mut().enumerate() {
                let delta = c.mul(&sigmas[i]).rem(&factors[i]);
                for (j, d) in delta.coeffs().iter().enumerate() {
                    g[j] += &pj * BigInt::from(*d);
                }
            }
        }
        pj = next;
    }
    lifted
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = cur.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &idx {
                cand = reduce(&zmul(&cand, &remaining[i]), modulus);
            }
            let cand = primitive(&strip(cand.iter().map(|c| symmetric_mod(c, modulus)).collect()));
            if let Some(q) = zdiv(&cur, &cand) {
                out.push(cand);
                cur = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
                continue 'outer;
            }
            // next combination
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
    if cur.len() > 1 {
        out.push(primitive(&cur));
    }
    out
}

/// Integer polynomial with the same roots as a rational one (denominators
/// cleared, made primitive).
pub(crate) fn clear_denominators(coeffs: &[num_rational::BigRational]) -> ZPoly {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: ZPoly = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive(&strip(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn splits_pencil_polynomial() {
        // 60T^2 - 136T + 60 = 4 (3T - 5)(5T - 3)
        let mut rng = Stream::seed_from_u64(1);
        let mut fs = factor_squarefree_z(&z(&[60, -136, 60]), &mut rng);
        fs.sort();
        assert_eq!(fs, vec![z(&[-5, 3]), z(&[-3, 5])]);
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let mut rng = Stream::seed_from_u64(2);
        let fs = factor_squarefree_z(&z(&[1, 0, -10, 0, 1]), &mut rng);
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn product_of_several_factors() {
        let mut rng = Stream::seed_from_u64(3);
        let parts = [z(&[1, 1]), z(&[-2, 0, 3]), z(&[7, 0, 0, 1]), z(&[3, -1, 0, 0, 0, 2])];
        let f = parts.iter().fold(z(&[1]), |a, b| zmul(&a, b));
        let fs = factor_squarefree_z(&f, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(z(&[1]), |a, b| zmul(&a, b));
        assert_eq!(prod, f);
    }
}
