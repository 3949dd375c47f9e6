//! Collection from the left.
//!
//! The state is a normal word `g_1^{e_1}···g_n^{e_n}`; pending generator
//! letters sit on a worklist. Multiplying the state by `g_k` moves `g_k`
//! past the tail `T = g_{k+1}^{e_{k+1}}···g_n^{e_n}` using
//! `T g_k = g_k T^{g_k}` and `g_j^{g_k} = g_j [g_j, g_k]`, then resolves
//! `g_k^p` by its power relation. Every letter pushed while handling `g_k`
//! has index above `k`, so collection terminates.

use super::presentation::{PcPresentation, Word};

pub(crate) struct Collector<'a> {
    pres: &'a PcPresentation,
    // conj[j][k] = letters of g_j^{g_k} = g_j [g_j, g_k], k < j
    conj: Vec<Vec<Vec<usize>>>,
    power_letters: Vec<Vec<usize>>,
}

fn letters(w: &[u32]) -> Vec<usize> {
    w.iter()
        .enumerate()
        .flat_map(|(k, &e)| std::iter::repeat(k).take(e as usize))
        .collect()
}

impl<'a> Collector<'a> {
    pub(crate) fn new(pres: &'a PcPresentation) -> Self {
        let n = pres.ngens();
        let conj = (0..n)
            .map(|j| {
                (0..j)
                    .map(|k| {
                        let mut l = vec![j];
                        l.extend(letters(pres.commutator(j, k)));
                        l
                    })
                    .collect()
            })
            .collect();
        let power_letters = (0..n).map(|i| letters(pres.power(i))).collect();
        Self { pres, conj, power_letters }
    }

    pub(crate) fn identity(&self) -> Word {
        vec![0; self.pres.ngens()]
    }

    /// Multiply `state` on the right by the letters, in order.
    pub(crate) fn collect(&self, state: &mut [u32], word: &[usize]) {
        let p = self.pres.prime();
        let n = self.pres.ngens();
        let mut stack: Vec<usize> = word.iter().rev().copied().collect();
        let mut pending: Vec<usize> = Vec::new();
        while let Some(k) = stack.pop() {
            pending.clear();
            if state[k] + 1 == p {
                state[k] = 0;
                pending.extend_from_slice(&self.power_letters[k]);
            } else {
                state[k] += 1;
            }
            for j in k + 1..n {
                for _ in 0..state[j] {
                    pending.extend_from_slice(&self.conj[j][k]);
                }
                state[j] = 0;
            }
            stack.extend(pending.iter().rev());
        }
    }

    /// Product of two normal words.
    pub(crate) fn mul_words(&self, a: &[u32], b: &[u32]) -> Word {
        let mut s = a.to_vec();
        self.collect(&mut s, &letters(b));
        s
    }

    pub(crate) fn word_letters(w: &[u32]) -> Vec<usize> {
        letters(w)
    }

    /// Normal form of a letter sequence.
    pub(crate) fn normal_form(&self, word: &[usize]) -> Word {
        let mut s = self.identity();
        self.collect(&mut s, word);
        s
    }
}
