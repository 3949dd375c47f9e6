use super::subgroup::Subgroup;
use crate::error::StructureError;
use crate::group::{Elem, FiniteGroup};

/// `G/N` by explicit cosets. Coset `i` is represented by the smallest
/// element of the coset; cosets are numbered in increasing order of their
/// representatives, so coset `0` is `N` itself.
pub struct QuotientGroup<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    normal: Subgroup,
    reps: Vec<Elem>,
    coset_of: Vec<u32>,
    generators: Vec<Elem>,
}

impl<'a, G: FiniteGroup + ?Sized> QuotientGroup<'a, G> {
    pub fn new(parent: &'a G, normal: &Subgroup) -> Result<Self, StructureError> {
        if let Some((element, by)) = normal.is_normal(parent) {
            return Err(StructureError::NotNormal { element, by });
        }
        let mut coset_of = vec![u32::MAX; parent.order()];
        let mut reps = Vec::with_capacity(parent.order() / normal.order());
        for x in parent.elements() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &n in normal.members() {
                coset_of[parent.mul(x, n) as usize] = c;
            }
        }
        debug_assert_eq!(reps.len() * normal.order(), parent.order());

        // well-definedness spot check: a second representative of each coset
        if let Some(&n) = normal.generators().first() {
            for s in parent.generators() {
                for &r in &reps {
                    let a = coset_of[parent.mul(r, s) as usize];
                    let b = coset_of[parent.mul(parent.mul(r, n), s) as usize];
                    assert_eq!(a, b, "coset product depends on the representative");
                }
            }
        }

        let mut generators: Vec<Elem> = Vec::new();
        for s in parent.generators() {
            let c = coset_of[s as usize];
            if c != 0 && !generators.contains(&c) {
                generators.push(c);
            }
        }
        Ok(Self { parent, normal: normal.clone(), reps, coset_of, generators })
    }

    pub fn parent(&self) -> &G {
        self.parent
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.normal
    }

    pub fn coset_of(&self, x: Elem) -> Elem {
        self.coset_of[x as usize]
    }

    pub fn representative(&self, c: Elem) -> Elem {
        self.reps[c as usize]
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.reps
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self.parent.elements().filter(|&x| h.contains(self.coset_of(x))).collect();
        Subgroup::from_closed_set(self.parent, members)
    }

    /// Image of a subgroup of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        Subgroup::generate(self, h.generators().iter().map(|&x| self.coset_of(x)))
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for QuotientGroup<'_, G> {
    fn prime(&self) -> u32 {
        self.parent.prime()
    }

    fn order(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.coset_of[self.parent.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.coset_of[self.parent.inv(self.reps[a as usize]) as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.generators.clone()
    }
}
