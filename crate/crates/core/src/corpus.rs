//! The built-in regression groups, with the profile and criterion each one is expected to produce.

use crate::engine::Criterion;
use crate::error::Error;
use crate::pc::{check_consistency, parse_presentation, PcGroup, PcPresentation};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub order: u64,
    pub class: usize,
    pub d: usize,
    /// Cyclic factor orders of `Z(G)`, largest first.
    pub center: &'static [u64],
    pub criterion: Criterion,
}

impl CorpusEntry {
    /// Parse and check consistency.
    pub fn presentation(&self) -> Result<PcPresentation, Error> {
        let pres = parse_presentation(self.text)?;
        match check_consistency(&pres).first_failure {
            None => Ok(pres),
            Some(f) => Err(Error::Other(format!("{}: inconsistent at {}", self.name, f.description))),
        }
    }

    pub fn group(&self) -> Result<PcGroup, Error> {
        Ok(PcGroup::new(self.presentation()?)?)
    }
}

macro_rules! entry {
    ($name:literal, $order:expr, $class:expr, $d:expr, $center:expr, $criterion:expr) => {
        CorpusEntry {
            name: $name,
            text: include_str!(concat!("../../../corpus/", $name, ".pc")),
            order: $order,
            class: $class,
            d: $d,
            center: &$center,
            criterion: $criterion,
        }
    };
}

pub fn load_corpus() -> Vec<CorpusEntry> {
    use Criterion::*;
    vec![
        entry!("d8", 8, 2, 2, [2], CentralizerFallback),
        entry!("heis27", 27, 2, 2, [3], CentralizerFallback),
        entry!("d16", 16, 3, 2, [2], CentralizerFallback),
        entry!("q16", 16, 3, 2, [2], CentralizerFallback),
        entry!("sd16", 16, 3, 2, [2], CentralizerFallback),
        entry!("d16xc2xc2", 64, 3, 4, [2, 2, 2], EvenNonCyclicCenter),
        entry!("h128", 128, 3, 3, [2], CenterDirectFactor),
        entry!("w81", 81, 3, 2, [3], CentralizerFallback),
        entry!("w81xc3", 243, 3, 3, [3, 3], NonCyclicCenter),
        entry!("f3c3", 243, 3, 2, [3, 3], RankBoundOdd),
        entry!("m625", 625, 3, 2, [5], CentralizerFallback),
        entry!("f5c3", 3125, 3, 2, [5, 5], LargePrime),
        entry!("h2187", 2187, 3, 3, [3, 3], DimensionMismatch),
    ]
}
