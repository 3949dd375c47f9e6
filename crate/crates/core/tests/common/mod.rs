//! Brute-force reference computations that use only the group multiplication.
#![allow(dead_code)]

use std::collections::BTreeSet;

use noninner::{Elem, FiniteGroup, PcGroup};

pub fn group(text: &str) -> PcGroup {
    PcGroup::from_text(text, 1 << 13).unwrap()
}

/// Closure of `gens` under multiplication.
pub fn closure(g: &PcGroup, gens: impl IntoIterator<Item = Elem>) -> BTreeSet<Elem> {
    let gens: Vec<Elem> = gens.into_iter().collect();
    let mut set = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn center(g: &PcGroup) -> BTreeSet<Elem> {
    g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).collect()
}

pub fn centralizer_of(g: &PcGroup, s: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    g.elements().filter(|&x| s.iter().all(|&y| g.mul(x, y) == g.mul(y, x))).collect()
}

/// `Z_0 ≤ Z_1 ≤ …` from the definition `Z_{i+1} = {x : [x, y] ∈ Z_i for all y}`.
pub fn upper_series(g: &PcGroup) -> Vec<BTreeSet<Elem>> {
    let mut series = vec![BTreeSet::from([0])];
    loop {
        let last = series.last().unwrap();
        let next: BTreeSet<Elem> = g.elements().filter(|&x| g.elements().all(|y| last.contains(&g.comm(x, y)))).collect();
        if next.len() == last.len() {
            return series;
        }
        let done = next.len() == g.order();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// `G′Gᵖ` as the closure of all commutators and `p`-th powers.
pub fn frattini(g: &PcGroup) -> BTreeSet<Elem> {
    let p = g.prime() as u64;
    let mut gens: BTreeSet<Elem> = g.elements().map(|x| g.pow(x, p)).collect();
    for x in g.elements() {
        for y in g.elements() {
            gens.insert(g.comm(x, y));
        }
    }
    closure(g, gens)
}

pub fn z_phi(g: &PcGroup) -> BTreeSet<Elem> {
    let phi = frattini(g);
    centralizer_of(g, &phi).intersection(&phi).copied().collect()
}

/// Elements of `Z(Φ(G))` of order dividing `p`.
pub fn module_a(g: &PcGroup) -> BTreeSet<Elem> {
    let p = g.prime() as u64;
    z_phi(g).into_iter().filter(|&a| g.pow(a, p) == 0).collect()
}

pub fn log_p(p: u32, mut n: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p as usize, 0);
        n /= p as usize;
        k += 1;
    }
    k
}

/// `x·x^y·…·x^{y^{p−1}}`.
pub fn trace(g: &PcGroup, a: Elem, x: Elem) -> Elem {
    let mut term = a;
    let mut acc = 0;
    for _ in 0..g.prime() {
        acc = g.mul(acc, term);
        term = g.conj(term, x);
    }
    acc
}

pub fn corpus_groups() -> Vec<(noninner::corpus::CorpusEntry, PcGroup)> {
    noninner::corpus::load_corpus().into_iter().map(|e| {
        let g = e.group().unwrap();
        (e, g)
    }).collect()
}
