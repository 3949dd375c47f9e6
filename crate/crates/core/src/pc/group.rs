use super::collect::Collector;
use super::consistency::{check_consistency, ConsistencyReport};
use super::presentation::{format_word, PcPresentation, Word};
use crate::error::PcError;
use crate::group::{Elem, FiniteGroup};

/// Default hard limit on the number of enumerated elements.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Groups up to this order get a full Cayley table; larger ones multiply
/// through the right-multiplication-by-generator table.
const FULL_TABLE_MAX: usize = 2048;

/// A finite `p`-group given by a consistent pc presentation, with every
/// element enumerated. Element `x` is the normal word whose exponent vector
/// is the base-`p` expansion of `x` (most significant digit = `g_1`), so
/// index order is lexicographic order on exponent vectors.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    order: usize,
    // right_gen[x * n + k] = x · g_k
    right_gen: Vec<Elem>,
    full: Option<Vec<Elem>>,
    inverse: Vec<Elem>,
}

impl PcGroup {
    pub fn new(pres: PcPresentation) -> Result<Self, PcError> {
        Self::with_cap(pres, DEFAULT_MAX_ORDER)
    }

    /// Build with an explicit element cap. Runs the consistency check first.
    pub fn with_cap(pres: PcPresentation, cap: usize) -> Result<Self, PcError> {
        let p = pres.prime() as usize;
        let n = pres.ngens();
        let order = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&o| o <= cap));
        let order = order.ok_or(PcError::CapExceeded { prime: pres.prime(), exponent: n, cap })?;

        let report: ConsistencyReport = check_consistency(&pres);
        if let Some(f) = report.first_failure {
            return Err(PcError::Inconsistent {
                overlap: f.description.clone(),
                left: format_word(&f.left),
                right: format_word(&f.right),
            });
        }

        let collector = Collector::new(&pres);
        let mut right_gen = vec![0 as Elem; order * n];
        let mut word = vec![0u32; n];
        for x in 0..order {
            decode_into(x as Elem, p as u32, &mut word);
            for k in 0..n {
                let mut s = word.clone();
                collector.collect(&mut s, &[k]);
                right_gen[x * n + k] = encode(&s, p as u32);
            }
        }
        let mut g = Self { pres, order, right_gen, full: None, inverse: Vec::new() };
        if order <= FULL_TABLE_MAX {
            let mut full = vec![0 as Elem; order * order];
            for a in 0..order {
                for b in 0..order {
                    full[a * order + b] = g.mul_by_word(a as Elem, b as Elem);
                }
            }
            g.full = Some(full);
        }
        g.inverse = (0..order as Elem).map(|x| g.compute_inverse(x)).collect();
        Ok(g)
    }

    /// Parse, check and enumerate in one step.
    pub fn from_text(text: &str, cap: usize) -> Result<Self, crate::error::Error> {
        let pres = super::parse_presentation(text)?;
        Ok(Self::with_cap(pres, cap)?)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn ngens(&self) -> usize {
        self.pres.ngens()
    }

    /// The pc generator `g_{k+1}` (0-based `k`).
    pub fn pc_generator(&self, k: usize) -> Elem {
        let mut w = vec![0; self.ngens()];
        w[k] = 1;
        self.element(&w)
    }

    pub fn element(&self, exponents: &[u32]) -> Elem {
        assert_eq!(exponents.len(), self.ngens());
        encode(exponents, self.prime())
    }

    pub fn exponents(&self, x: Elem) -> Word {
        let mut w = vec![0; self.ngens()];
        decode_into(x, self.prime(), &mut w);
        w
    }

    pub fn format(&self, x: Elem) -> String {
        format_word(&self.exponents(x))
    }

    fn mul_by_word(&self, a: Elem, b: Elem) -> Elem {
        let n = self.ngens();
        let p = self.prime();
        let mut state = a;
        let mut rest = b as usize;
        let mut digits = vec![0u32; n];
        for k in (0..n).rev() {
            digits[k] = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        for (k, &e) in digits.iter().enumerate() {
            for _ in 0..e {
                state = self.right_gen[state as usize * n + k];
            }
        }
        state
    }

    fn compute_inverse(&self, x: Elem) -> Elem {
        // x^{|x|-1}; element orders divide p^n
        let ord = self.element_order(x);
        self.pow(x, ord - 1)
    }
}

fn encode(w: &[u32], p: u32) -> Elem {
    w.iter().fold(0u64, |acc, &e| acc * p as u64 + e as u64) as Elem
}

fn decode_into(mut x: Elem, p: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = x % p;
        x /= p;
    }
}

impl FiniteGroup for PcGroup {
    fn prime(&self) -> u32 {
        self.pres.prime()
    }

    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.full {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.mul_by_word(a, b),
        }
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        (0..self.ngens()).map(|k| self.pc_generator(k)).collect()
    }
}
