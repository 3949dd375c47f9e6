//! The standard finite family of overlap tests for a power-commutator
//! presentation in which every relative order is `p`.

use super::collect::Collector;
use super::presentation::{format_word, PcPresentation, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    /// Human-readable bracketing of the two sides, e.g. `(g3 g2) g1 vs g3 (g2 g1)`.
    pub description: String,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub first_failure: Option<Overlap>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn check_consistency(pres: &PcPresentation) -> ConsistencyReport {
    let c = Collector::new(pres);
    let n = pres.ngens();
    let p = pres.prime();
    let letters = Collector::word_letters;
    let gen_pow = |i: usize, e: u32| {
        let mut w = vec![0; n];
        w[i] = e;
        w
    };
    let mut checked = 0;
    let mut report = |desc: String, left: Word, right: Word| -> Option<Overlap> {
        checked += 1;
        (left != right).then_some(Overlap { description: desc, left, right })
    };

    let mut failure = None;
    'outer: {
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = c.mul_words(&c.normal_form(&[k, j]), &gen_pow(i, 1));
                    let right = c.mul_words(&gen_pow(k, 1), &c.normal_form(&[j, i]));
                    let d = format!("(g{0} g{1}) g{2} vs g{0} (g{1} g{2})", k + 1, j + 1, i + 1);
                    if let Some(f) = report(d, left, right) {
                        failure = Some(f);
                        break 'outer;
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let left = c.mul_words(pres.power(j), &gen_pow(i, 1));
                let right = c.mul_words(&gen_pow(j, p - 1), &c.normal_form(&[j, i]));
                let d = format!("(g{0}^p) g{1} vs g{0}^(p-1) (g{0} g{1})", j + 1, i + 1);
                if let Some(f) = report(d, left, right) {
                    failure = Some(f);
                    break 'outer;
                }
                let left = c.mul_words(&gen_pow(j, 1), pres.power(i));
                let mut right = c.normal_form(&[j, i]);
                c.collect(&mut right, &vec![i; (p - 1) as usize]);
                let d = format!("g{0} (g{1}^p) vs (g{0} g{1}) g{1}^(p-1)", j + 1, i + 1);
                if let Some(f) = report(d, left, right) {
                    failure = Some(f);
                    break 'outer;
                }
            }
        }
        for i in 0..n {
            let left = c.mul_words(pres.power(i), &gen_pow(i, 1));
            let mut right = gen_pow(i, 1);
            c.collect(&mut right, &letters(pres.power(i)));
            let d = format!("(g{0}^p) g{0} vs g{0} (g{0}^p)", i + 1);
            if let Some(f) = report(d, left, right) {
                failure = Some(f);
                break 'outer;
            }
        }
    }
    ConsistencyReport { checked, first_failure: failure }
}

impl Overlap {
    pub fn left_text(&self) -> String {
        format_word(&self.left)
    }

    pub fn right_text(&self) -> String {
        format_word(&self.right)
    }
}
