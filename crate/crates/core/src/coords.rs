//! Coordinates on an elementary abelian section of a group.

use std::collections::HashMap;

use crate::error::CoordError;
use crate::group::{Elem, FiniteGroup};
use crate::linalg::FpVector;

/// An ordered basis `b_1..b_k` of an elementary abelian subgroup, with the
/// isomorphism to `F_p^k`. Element `b_1^{c_1}···b_k^{c_k}` has coordinates
/// `(c_1, …, c_k)`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    p: u32,
    basis: Vec<Elem>,
    // code (base p, b_1 most significant) -> element
    elements: Vec<Elem>,
    codes: HashMap<Elem, usize>,
}

impl Coordinates {
    pub fn new<G: FiniteGroup + ?Sized>(g: &G, basis: &[Elem]) -> Result<Self, CoordError> {
        let p = g.prime();
        for &a in basis {
            if a == g.identity() || g.pow(a, p as u64) != g.identity() {
                return Err(CoordError::DependentBasis);
            }
            if basis.iter().any(|&b| g.mul(a, b) != g.mul(b, a)) {
                return Err(CoordError::DependentBasis);
            }
        }
        let mut elements = vec![g.identity()];
        for &b in basis {
            let mut next = Vec::with_capacity(elements.len() * p as usize);
            for &x in &elements {
                let mut y = x;
                for _ in 0..p {
                    next.push(y);
                    y = g.mul(y, b);
                }
            }
            elements = next;
        }
        let mut codes = HashMap::with_capacity(elements.len());
        for (code, &x) in elements.iter().enumerate() {
            if codes.insert(x, code).is_some() {
                return Err(CoordError::DependentBasis);
            }
        }
        Ok(Self { p, basis: basis.to_vec(), elements, codes })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.codes.contains_key(&x)
    }

    /// The elements of the span, in code order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn coordinates(&self, x: Elem) -> Result<FpVector, CoordError> {
        let mut code = *self.codes.get(&x).ok_or(CoordError::NotInSpan(x))?;
        let mut digits = vec![0u32; self.dim()];
        for d in digits.iter_mut().rev() {
            *d = (code % self.p as usize) as u32;
            code /= self.p as usize;
        }
        Ok(FpVector::new(self.p, digits))
    }

    pub fn decode(&self, v: &FpVector) -> Elem {
        assert_eq!(v.len(), self.dim());
        let code = v.entries().iter().fold(0usize, |acc, &c| acc * self.p as usize + c as usize);
        self.elements[code]
    }
}
