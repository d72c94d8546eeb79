//! Absolute factorization over finite fields: find the extension over which
//! every rational factor splits into absolutely irreducible conjugates.

use super::{factor_multivariate, factor_squarefree_multi, FactorField, MultiFactors};
use crate::fields::{ExtField, FiniteField};
use crate::polys::{lcm_usize, MultiPoly};
use crate::{Result, Stream};

const LINE_BUDGET: usize = 25;

/// Apply the relative Frobenius to every coefficient.
pub fn frobenius_poly<B: FiniteField>(ext: &ExtField<B>, g: &MultiPoly<ExtField<B>>) -> MultiPoly<ExtField<B>> {
    g.map_coeffs(ext, |c| ext.frobenius(c))
}

fn embed_poly<B: FiniteField>(ext: &ExtField<B>, f: &MultiPoly<B>) -> MultiPoly<ExtField<B>> {
    f.map_coeffs(ext, |c| ext.embed(c))
}

/// Products over Frobenius orbits of normalized extension factors, which
/// are the irreducible factors over the base field.
fn descend<B: FiniteField>(ext: &ExtField<B>, factors: Vec<MultiPoly<ExtField<B>>>) -> Vec<MultiPoly<B>> {
    let base = ext.base().clone();
    let mut seen: Vec<MultiPoly<ExtField<B>>> = Vec::new();
    let mut out = Vec::new();
    for g in factors {
        let g = g.normalized();
        if seen.contains(&g) {
            continue;
        }
        let mut prod = g.clone();
        seen.push(g.clone());
        let mut c = frobenius_poly(ext, &g);
        while c != g {
            prod = prod.mul(&c);
            seen.push(c.clone());
            c = frobenius_poly(ext, &c);
        }
        out.push(prod.map_coeffs(&base, |x| ext.to_base(x).expect("orbit product is rational")).normalized());
    }
    out
}

fn extension_degree_for<F: FiniteField>(k: &F, d: usize) -> usize {
    // Enough points that a random specialization is good with high
    // probability.
    let want = num_bigint::BigUint::from((8 * d * d).max(64));
    let q = k.order_big();
    let mut e = 2;
    while q.pow(e as u32) < want {
        e += 1;
    }
    e
}

/// Factor a squarefree polynomial over a larger field and descend.
pub(super) fn factor_by_extension<F: FiniteField + FactorField>(
    k: &F,
    f: &MultiPoly<F>,
    rng: &mut Stream,
) -> Result<Vec<MultiPoly<F>>> {
    let e = extension_degree_for(k, f.tdeg());
    let ext = ExtField::new(k.clone(), e)?;
    let fs = factor_squarefree_multi(&embed_poly(&ext, f), rng)?;
    Ok(descend(&ext, fs))
}

/// Number of absolutely irreducible factors of an irreducible `g`.
fn absolute_count<F: FiniteField + FactorField>(g: &MultiPoly<F>, rng: &mut Stream) -> Result<usize> {
    let k = g.field().clone();
    let d = g.tdeg();
    if d <= 1 {
        return Ok(1);
    }
    let n = g.nvars();
    let top = g.homogeneous_part(d);
    // Each absolute factor is defined over F_{q^s}, so s divides the degree
    // of every irreducible factor of a squarefree full-degree line image.
    let mut bound = d;
    for _ in 0..LINE_BUDGET {
        let dir: Vec<F::Elem> = (0..n).map(|_| k.random(rng, 0)).collect();
        if k.is_zero(&top.evaluate(&dir)?) {
            continue;
        }
        let start: Vec<F::Elem> = (0..n).map(|_| k.random(rng, 0)).collect();
        let t = MultiPoly::var(k.clone(), 1, 0);
        let images: Vec<_> = (0..n)
            .map(|i| t.scale(&dir[i]).add(&MultiPoly::constant(k.clone(), 1, start[i].clone())))
            .collect();
        let line = g.compose_all(&images).to_uni(0).unwrap();
        if line.degree() != d || !line.is_squarefree() {
            continue;
        }
        let degs: Vec<usize> = k.factor_squarefree_uni(&line, rng).iter().map(|u| u.degree()).collect();
        bound = degs.iter().fold(0, |a, &b| num_integer::gcd(a, b));
        break;
    }
    if bound == 1 {
        return Ok(1);
    }
    let ext = ExtField::new(k.clone(), bound)?;
    Ok(factor_squarefree_multi(&embed_poly(&ext, g), rng)?.len())
}

/// Factorization into absolutely irreducible factors together with the
/// smallest extension of the base field over which they are defined.
pub fn factor_absolute<F: FiniteField + FactorField>(
    f: &MultiPoly<F>,
    rng: &mut Stream,
) -> Result<(ExtField<F>, MultiFactors<ExtField<F>>)> {
    let k = f.field().clone();
    let rational = factor_multivariate(f, rng)?;
    let mut e = 1;
    for (g, _) in &rational.factors {
        e = lcm_usize(e, absolute_count(g, rng)?);
    }
    let ext = ExtField::new(k, e)?;
    let fl = factor_multivariate(&embed_poly(&ext, f), rng)?;
    Ok((ext, fl))
}

/// Irreducible over the base field and over every finite extension.
pub fn is_absolutely_irreducible<F: FiniteField + FactorField>(f: &MultiPoly<F>, rng: &mut Stream) -> Result<bool> {
    if f.is_constant() {
        return Ok(false);
    }
    let fl = factor_multivariate(f, rng)?;
    if fl.factors.len() != 1 || fl.factors[0].1 != 1 {
        return Ok(false);
    }
    Ok(absolute_count(f, rng)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;
    use rand::SeedableRng;

    fn h1h2(k: PrimeField) -> (MultiPoly<PrimeField>, MultiPoly<PrimeField>) {
        let h1 = MultiPoly::from_int_terms(k, 2, &[(1, &[3, 0]), (1, &[0, 3]), (1, &[0, 0])]);
        let h2 = MultiPoly::from_int_terms(k, 2, &[(3, &[1, 1])]);
        (h1, h2)
    }

    #[test]
    fn sum_of_squares_splits_in_base_field_when_minus_one_is_square() {
        let k = PrimeField::new(13).unwrap();
        let (h1, h2) = h1h2(k);
        let f = h1.pow(2).add(&h2.pow(2));
        let mut rng = Stream::seed_from_u64(1);
        let (ext, fl) = factor_absolute(&f, &mut rng).unwrap();
        assert_eq!(ext.degree(), 1);
        assert_eq!(fl.factors.len(), 2);
        // i = 5: factors h1 + 5 h2 and h1 - 5 h2
        let plus = h1.add(&h2.scale(&5)).normalized();
        let fs: Vec<_> = fl
            .factors
            .iter()
            .map(|(g, _)| g.map_coeffs(&k, |c| ext.to_base(c).unwrap()))
            .collect();
        assert!(fs.contains(&plus));
        assert_eq!(fl.expand(&ext, 2), embed_poly(&ext, &f));
    }

    #[test]
    fn sum_of_squares_needs_quadratic_extension() {
        let k = PrimeField::new(43).unwrap();
        let (h1, h2) = h1h2(k);
        let f = h1.pow(2).add(&h2.pow(2));
        let mut rng = Stream::seed_from_u64(2);
        assert!(!is_absolutely_irreducible(&f, &mut rng).unwrap());
        let (ext, fl) = factor_absolute(&f, &mut rng).unwrap();
        assert_eq!(ext.degree(), 2);
        assert_eq!(fl.factors.len(), 2);
        assert_eq!(fl.expand(&ext, 2), embed_poly(&ext, &f));
        let (a, b) = (&fl.factors[0].0, &fl.factors[1].0);
        assert!(frobenius_poly(&ext, a) == *b || frobenius_poly(&ext, b) == *a);
    }

    #[test]
    fn absolute_irreducibility_examples() {
        let mut rng = Stream::seed_from_u64(3);
        let k = PrimeField::new(101).unwrap();
        let g = MultiPoly::from_int_terms(k, 2, &[(1, &[3, 0]), (1, &[0, 3]), (-6, &[1, 1]), (3, &[0, 0])]);
        assert!(is_absolutely_irreducible(&g, &mut rng).unwrap());
        let k13 = PrimeField::new(13).unwrap();
        let s = MultiPoly::from_int_terms(k13, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert!(!is_absolutely_irreducible(&s, &mut rng).unwrap());
        let x = MultiPoly::var(k, 2, 0);
        assert!(is_absolutely_irreducible(&x, &mut rng).unwrap());
    }

    #[test]
    fn rationally_irreducible_but_absolutely_reducible() {
        // X^2 + Y^2 over F_7 is irreducible but splits over F_49.
        let k = PrimeField::new(7).unwrap();
        let s = MultiPoly::from_int_terms(k, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        let mut rng = Stream::seed_from_u64(4);
        assert_eq!(factor_multivariate(&s, &mut rng).unwrap().factors.len(), 1);
        assert!(!is_absolutely_irreducible(&s, &mut rng).unwrap());
    }
}
