use crate::group::{log_p, Elem, FiniteGroup};

/// A subgroup as an explicit element set.
///
/// `generators` is irredundant by construction: each one was added only
/// because it was not already in the span of the previous ones.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn trivial<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let mut mask = vec![false; g.order()];
        mask[g.identity() as usize] = true;
        Self { members: vec![g.identity()], mask, generators: Vec::new() }
    }

    pub fn whole<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        Self::generate(g, g.generators())
    }

    /// `⟨candidates⟩`; candidates already in the running span are skipped.
    pub fn generate<G: FiniteGroup + ?Sized>(g: &G, candidates: impl IntoIterator<Item = Elem>) -> Self {
        let mut h = Self::trivial(g);
        for x in candidates {
            h.extend(g, x);
        }
        h
    }

    /// Enlarge to `⟨self, x⟩`. Returns whether anything changed.
    pub fn extend<G: FiniteGroup + ?Sized>(&mut self, g: &G, x: Elem) -> bool {
        if self.mask[x as usize] {
            return false;
        }
        self.generators.push(x);
        // every new element is a word ending in some generator; closing under
        // right multiplication by generators from all current members suffices
        let mut queue: Vec<Elem> = self.members.clone();
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &s in &self.generators {
                let z = g.mul(y, s);
                if !self.mask[z as usize] {
                    self.mask[z as usize] = true;
                    self.members.push(z);
                    queue.push(z);
                }
            }
        }
        self.members.sort_unstable();
        true
    }

    /// Subgroup from a set already known to be closed.
    pub(crate) fn from_closed_set<G: FiniteGroup + ?Sized>(g: &G, members: Vec<Elem>) -> Self {
        let mut sorted = members;
        sorted.sort_unstable();
        sorted.dedup();
        // recover an irredundant generating list
        let h = Self::generate(g, sorted.iter().copied());
        debug_assert_eq!(h.members, sorted, "set is not closed");
        h
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// `log_p |H|`.
    pub fn log_order(&self, p: u32) -> usize {
        log_p(p, self.order())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect<G: FiniteGroup + ?Sized>(&self, g: &G, other: &Subgroup) -> Subgroup {
        let common: Vec<Elem> = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_closed_set(g, common)
    }

    /// `⟨self, other⟩`.
    pub fn join<G: FiniteGroup + ?Sized>(&self, g: &G, other: &Subgroup) -> Subgroup {
        let mut h = self.clone();
        for &x in other.generators() {
            h.extend(g, x);
        }
        h
    }

    pub fn is_normal<G: FiniteGroup + ?Sized>(&self, g: &G) -> Option<(Elem, Elem)> {
        for &h in &self.generators {
            for s in g.generators() {
                let c = g.conj(h, s);
                if !self.contains(c) {
                    return Some((h, s));
                }
            }
        }
        None
    }
}

/// Equality of element sets; the generator lists may differ.
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

/// The subgroup `H` as a group in its own right, with local indices
/// `0..|H|` following the sorted member order.
pub struct SubgroupView<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    members: &'a [Elem],
    local: Vec<u32>,
    generators: Vec<Elem>,
}

impl<'a, G: FiniteGroup + ?Sized> SubgroupView<'a, G> {
    pub fn new(parent: &'a G, h: &'a Subgroup) -> Self {
        let mut local = vec![u32::MAX; parent.order()];
        for (i, &x) in h.members().iter().enumerate() {
            local[x as usize] = i as u32;
        }
        let generators = h.generators().iter().map(|&x| local[x as usize]).collect();
        Self { parent, members: h.members(), local, generators }
    }

    pub fn to_parent(&self, x: Elem) -> Elem {
        self.members[x as usize]
    }

    pub fn to_local(&self, x: Elem) -> Option<Elem> {
        self.local.get(x as usize).copied().filter(|&l| l != u32::MAX)
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for SubgroupView<'_, G> {
    fn prime(&self) -> u32 {
        self.parent.prime()
    }

    fn order(&self) -> usize {
        self.members.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.local[self.parent.mul(self.members[a as usize], self.members[b as usize]) as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.local[self.parent.inv(self.members[a as usize]) as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.generators.clone()
    }
}
