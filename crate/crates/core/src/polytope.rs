//! Newton polytopes of rational functions and the vertex-gcd
//! indecomposability test.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fields::Field;
use crate::pencil::RationalFunctionMV;
use crate::polys::MultiPoly;
use crate::{Error, Result};

/// Exponent vectors of the monomials of `f`.
pub fn support<F: Field>(f: &MultiPoly<F>) -> Result<BTreeSet<Vec<u32>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.terms().iter().map(|(m, _)| m.exps().to_vec()).collect())
}

/// Convex lattice polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub nvars: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<Vec<u32>>,
}

impl LatticePolytope {
    /// Hull of a finite point set.
    pub fn hull(nvars: usize, points: &BTreeSet<Vec<u32>>) -> Self {
        let pts: Vec<Vec<u32>> = points.iter().cloned().collect();
        let mut vertices = match nvars {
            0 => pts,
            1 => {
                let mut v = vec![pts[0].clone(), pts[pts.len() - 1].clone()];
                v.dedup();
                v
            }
            2 => hull_2d(&pts),
            _ => (0..pts.len()).filter(|&i| is_vertex_lp(&pts, i)).map(|i| pts[i].clone()).collect(),
        };
        vertices.sort();
        LatticePolytope { nvars, vertices }
    }

    /// gcd of all vertex coordinates, zero when they all vanish.
    pub fn coordinate_gcd(&self) -> u64 {
        self.vertices.iter().flatten().fold(0u64, |g, &c| g.gcd(&(c as u64)))
    }
}

fn cross(o: &[u32], a: &[u32], b: &[u32]) -> i64 {
    let (ox, oy) = (o[0] as i64, o[1] as i64);
    (a[0] as i64 - ox) * (b[1] as i64 - oy) - (a[1] as i64 - oy) * (b[0] as i64 - ox)
}

/// Monotone chain; collinear points are dropped.
fn hull_2d(pts: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let mut lower: Vec<Vec<u32>> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<u32>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `pts[i]` is a vertex iff it is not a convex combination of the others,
/// decided by phase one of the simplex method in exact arithmetic.
fn is_vertex_lp(pts: &[Vec<u32>], i: usize) -> bool {
    let others: Vec<&Vec<u32>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|t| t.1).collect();
    if others.is_empty() {
        return true;
    }
    let n = pts[i].len();
    // Rows: coordinates, then sum of weights = 1.
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for c in 0..n {
        a.push(others.iter().map(|q| BigRational::from_integer(q[c].into())).collect());
        b.push(BigRational::from_integer(pts[i][c].into()));
    }
    a.push(vec![BigRational::one(); others.len()]);
    b.push(BigRational::one());
    !feasible(a, b)
}

/// Whether `A x = b, x >= 0` has a solution (`b >= 0` is not required).
pub(crate) fn feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let nx = a.first().map_or(0, |r| r.len());
    for r in 0..m {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // Tableau with artificial variables nx..nx+m; objective row minimizes
    // their sum.
    let cols = nx + m;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row = a[r].clone();
            row.extend((0..m).map(|j| if j == r { BigRational::one() } else { BigRational::zero() }));
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nx..cols).collect();
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for row in &t {
        for (j, x) in row.iter().enumerate() {
            if j < nx || j == cols {
                obj[j] -= x;
            }
        }
    }
    loop {
        // Bland's rule: first column with negative reduced cost.
        let Some(e) = (0..cols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][e].is_positive() {
                let ratio = &t[r][cols] / &t[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            break;
        };
        let piv = t[r][e].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[r].clone();
        for (rr, row) in t.iter_mut().enumerate() {
            if rr != r && !row[e].is_zero() {
                let c = row[e].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &c * p;
                }
            }
        }
        let c = obj[e].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= &c * p;
        }
        basis[r] = e;
    }
    obj[cols].is_zero()
}

/// Hull of the union of the supports of numerator and denominator.
pub fn newton_polytope<F: Field>(f: &RationalFunctionMV<F>) -> LatticePolytope {
    let mut pts = support(f.num()).unwrap_or_default();
    pts.extend(support(f.den()).unwrap_or_default());
    LatticePolytope::hull(f.nvars(), &pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    NonComposite,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecompResult {
    pub verdict: Indecomposability,
    pub gcd: u64,
    pub polytope: LatticePolytope,
}

/// `NonComposite` when the vertex coordinates of the Newton polytope are
/// coprime; one-sided.
pub fn indecomposability_test<F: Field>(f: &RationalFunctionMV<F>) -> Result<IndecompResult> {
    if !f.field().char_exceeds(f.degree()) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: f.field().characteristic().to_string(),
            degree: f.degree(),
        });
    }
    let polytope = newton_polytope(f);
    let gcd = polytope.coordinate_gcd();
    let verdict = if gcd == 1 { Indecomposability::NonComposite } else { Indecomposability::Inconclusive };
    Ok(IndecompResult { verdict, gcd, polytope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};
    use crate::pencil::make_reduced;
    use proptest::prelude::*;

    fn q(terms: &[(i64, &[u32])]) -> MultiPoly<Rationals> {
        MultiPoly::from_int_terms(Rationals, 2, terms)
    }

    fn set(v: &[[u32; 2]]) -> BTreeSet<Vec<u32>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn supports() {
        assert_eq!(support(&q(&[(1, &[3, 0]), (1, &[0, 3]), (1, &[0, 0])])).unwrap(), set(&[[3, 0], [0, 3], [0, 0]]));
        assert_eq!(support(&q(&[(3, &[1, 1])])).unwrap(), set(&[[1, 1]]));
        assert_eq!(
            support(&q(&[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])])).unwrap(),
            set(&[[2, 0], [1, 1], [0, 2]])
        );
        assert_eq!(support(&q(&[])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn examples() {
        let h = make_reduced(q(&[(1, &[3, 0]), (1, &[0, 3]), (1, &[0, 0])]), q(&[(3, &[1, 1])])).unwrap();
        let r = indecomposability_test(&h).unwrap();
        assert_eq!(r.polytope.vertices, vec![vec![0, 0], vec![0, 3], vec![3, 0]]);
        assert_eq!((r.verdict, r.gcd), (Indecomposability::Inconclusive, 3));
        let f = make_reduced(
            h.num().pow(2).add(&h.den().pow(2)),
            h.num().mul(h.den()),
        )
        .unwrap();
        let r = indecomposability_test(&f).unwrap();
        assert_eq!(r.polytope.vertices, vec![vec![0, 0], vec![0, 6], vec![6, 0]]);
        assert_eq!((r.verdict, r.gcd), (Indecomposability::Inconclusive, 6));
        let g = RationalFunctionMV::from_poly(q(&[(1, &[2, 0]), (1, &[0, 1])]));
        let r = indecomposability_test(&g).unwrap();
        assert_eq!(r.verdict, Indecomposability::NonComposite);
        assert_eq!(r.polytope.vertices, vec![vec![0, 0], vec![0, 1], vec![2, 0]]);
        // The denominator 1 contributes the origin.
        let m = RationalFunctionMV::from_poly(q(&[(1, &[2, 3])]));
        assert_eq!(newton_polytope(&m).vertices, vec![vec![0, 0], vec![2, 3]]);
        let c = RationalFunctionMV::from_poly(q(&[(7, &[0, 0])]));
        assert_eq!(newton_polytope(&c).vertices, vec![vec![0, 0]]);
        assert_eq!(indecomposability_test(&c).unwrap().verdict, Indecomposability::Inconclusive);
        let k = PrimeField::new(5).unwrap();
        let big = RationalFunctionMV::from_poly(MultiPoly::from_int_terms(k, 2, &[(1, &[5, 0]), (1, &[0, 1])]));
        assert!(matches!(indecomposability_test(&big), Err(Error::CharacteristicTooSmall { .. })));
    }

    #[test]
    fn three_dimensional_hull() {
        let mut pts: BTreeSet<Vec<u32>> = BTreeSet::new();
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    pts.insert(vec![x, y, z]);
                }
            }
        }
        let p = LatticePolytope::hull(3, &pts);
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.coordinate_gcd(), 2);
        let simplex: BTreeSet<Vec<u32>> =
            [vec![0, 0, 0], vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3], vec![1, 1, 1]].into_iter().collect();
        assert_eq!(LatticePolytope::hull(3, &simplex).vertices.len(), 4);
    }

    fn on_segment(p: &[u32], a: &[u32], b: &[u32]) -> bool {
        cross(a, b, p) == 0
            && p[0] >= a[0].min(b[0])
            && p[0] <= a[0].max(b[0])
            && p[1] >= a[1].min(b[1])
            && p[1] <= a[1].max(b[1])
    }

    /// `p` in the convex hull of `a`, `b`, `c`, which may coincide.
    fn in_triangle(p: &[u32], a: &[u32], b: &[u32], c: &[u32]) -> bool {
        if cross(a, b, c) == 0 {
            return on_segment(p, a, b) || on_segment(p, b, c) || on_segment(p, a, c);
        }
        let d1 = cross(a, b, p);
        let d2 = cross(b, c, p);
        let d3 = cross(c, a, p);
        let neg = d1 < 0 || d2 < 0 || d3 < 0;
        let pos = d1 > 0 || d2 > 0 || d3 > 0;
        !(neg && pos)
    }

    /// Extreme points by exhaustive triangle containment.
    fn brute_vertices(pts: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        'p: for (i, p) in pts.iter().enumerate() {
            let others: Vec<&Vec<u32>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|t| t.1).collect();
            for a in 0..others.len() {
                for b in a..others.len() {
                    for c in b..others.len() {
                        if in_triangle(p, others[a], others[b], others[c]) {
                            continue 'p;
                        }
                    }
                }
            }
            out.push(p.clone());
        }
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn hull_matches_brute_force(raw in prop::collection::vec((0u32..8, 0u32..8), 1..30)) {
            let pts: BTreeSet<Vec<u32>> = raw.iter().map(|&(x, y)| vec![x, y]).collect();
            let v: Vec<Vec<u32>> = pts.iter().cloned().collect();
            let hull = LatticePolytope::hull(2, &pts);
            prop_assert_eq!(&hull.vertices, &brute_vertices(&v));
            let lp: Vec<Vec<u32>> = (0..v.len()).filter(|&i| is_vertex_lp(&v, i)).map(|i| v[i].clone()).collect();
            prop_assert_eq!(hull.vertices, lp);
        }
    }
}
