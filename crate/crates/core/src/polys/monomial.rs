use smallvec::SmallVec;

pub type Exps = SmallVec<[u32; 6]>;

/// Exponent vector with its total degree cached. The derived ordering is
/// graded lexicographic: total degree first, then exponents of `X1, X2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Monomial {
    pub fn new(exps: impl Into<Exps>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e;
        m
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        Self::new(Exps::from_slice(exps))
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    /// `self / other` when every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { deg: self.deg - other.deg, exps })
    }

    pub fn with(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = e;
        Monomial::new(exps)
    }

    /// Degree in every variable except `v`.
    pub fn degree_without(&self, v: usize) -> u32 {
        self.deg - self.exps[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::from_slice(&[2, 0]);
        let xy = Monomial::from_slice(&[1, 1]);
        let y2 = Monomial::from_slice(&[0, 2]);
        let x = Monomial::from_slice(&[1, 0]);
        let y3 = Monomial::from_slice(&[0, 3]);
        assert!(x2 > xy && xy > y2 && y2 > x && y3 > x2);
    }

    #[test]
    fn division() {
        let a = Monomial::from_slice(&[2, 1]);
        let b = Monomial::from_slice(&[1, 1]);
        assert_eq!(a.div(&b), Some(Monomial::from_slice(&[1, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div(&b).unwrap().mul(&b), a);
    }
}
