//! The finite-group abstraction shared by pc groups, quotients and subgroup views.
//!
//! Every group in this crate enumerates its elements as dense indices
//! `0..order`, with `0` the identity. Algorithms in [`crate::structure`] are
//! written against [`FiniteGroup`] so that they run unchanged on `G`, on
//! `G/N`, and on a subgroup viewed as a group in its own right.

/// Dense element index. `0` is always the identity.
pub type Elem = u32;

pub trait FiniteGroup {
    /// The prime `p` of this `p`-group.
    fn prime(&self) -> u32;

    fn order(&self) -> usize;

    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn inv(&self, a: Elem) -> Elem;

    /// A generating set. Need not be minimal.
    fn generators(&self) -> Vec<Elem>;

    fn identity(&self) -> Elem {
        0
    }

    fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order() as Elem
    }

    /// `a^b = b⁻¹ a b`.
    fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    fn pow(&self, a: Elem, mut m: u64) -> Elem {
        let mut base = a;
        let mut acc = self.identity();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            m >>= 1;
        }
        acc
    }

    /// Order of `a`; always a power of `p`.
    fn element_order(&self, a: Elem) -> u64 {
        let p = self.prime() as u64;
        let mut x = a;
        let mut ord = 1u64;
        while x != self.identity() {
            x = self.pow(x, p);
            ord *= p;
        }
        ord
    }

    /// `[a, x, x, …, x]` with `count` copies of `x`; `count = 0` gives `a`.
    fn left_normed_comm(&self, a: Elem, x: Elem, count: usize) -> Elem {
        (0..count).fold(a, |acc, _| self.comm(acc, x))
    }

    /// Left-normed commutator of a sequence: `[a, b, c] = [[a, b], c]`.
    fn comm_seq(&self, elems: &[Elem]) -> Elem {
        match elems.split_first() {
            None => self.identity(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &y| self.comm(acc, y)),
        }
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// `log_p(n)` for an exact power of `p`.
pub(crate) fn log_p(p: u32, mut n: usize) -> usize {
    let p = p as usize;
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0, "{n} is not a power of {p}");
        n /= p;
        k += 1;
    }
    k
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
