//! Power-commutator presentations and their text format.
//!
//! ```text
//! # dihedral group of order 16
//! p = 2
//! n = 4
//! g2^p = g3
//! g3^p = g4
//! [g2,g1] = g3*g4
//! [g3,g1] = g4
//! ```
//!
//! Statements are separated by newlines or `;`. A power relation may be
//! written `g<i>^p` or with the literal prime (`g2^2`). Word factors are
//! `g<k>` or `g<k>^<e>` with `0 <= e < p`, joined by `*`, with strictly
//! increasing indices; the empty word is `1`. Relations left unspecified are
//! trivial. See `docs/presentation-format.md` for the full grammar.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::ParseError;

/// A normal word: the exponent vector `(e_1, …, e_n)` of `g_1^{e_1}···g_n^{e_n}`.
pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    powers: Vec<Word>,
    // commutators[j][i] = [g_j, g_i] for i < j
    commutators: Vec<Vec<Word>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PcPresentation {
    /// The elementary abelian presentation: all relations trivial.
    pub fn trivial(prime: u32, ngens: usize) -> Result<Self, ParseError> {
        if !is_prime(prime) {
            return Err(ParseError::NotPrime(prime));
        }
        Ok(Self {
            prime,
            ngens,
            powers: vec![vec![0; ngens]; ngens],
            commutators: (0..ngens).map(|j| vec![vec![0; ngens]; j]).collect(),
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// `log_p |G|`.
    pub fn order_exponent(&self) -> usize {
        self.ngens
    }

    /// Word for `g_i^p` (0-based `i`).
    pub fn power(&self, i: usize) -> &Word {
        &self.powers[i]
    }

    /// Word for `[g_j, g_i]`, `i < j` (0-based).
    pub fn commutator(&self, j: usize, i: usize) -> &Word {
        &self.commutators[j][i]
    }

    fn check_word(&self, word: &[u32], min_index: usize, what: &str) -> Result<(), ParseError> {
        if word.len() != self.ngens {
            return Err(ParseError::Invalid(format!(
                "{what}: word has length {}, expected {}",
                word.len(),
                self.ngens
            )));
        }
        if let Some(k) = word.iter().position(|&e| e >= self.prime) {
            return Err(ParseError::ExponentOutOfRange {
                line: 0,
                exponent: word[k],
                prime: self.prime,
            });
        }
        if let Some(k) = word[..min_index.min(self.ngens)].iter().position(|&e| e != 0) {
            return Err(ParseError::Weighting {
                line: 0,
                message: format!("{what} uses g{} which is not above the defining generators", k + 1),
            });
        }
        Ok(())
    }

    pub fn set_power(&mut self, i: usize, word: Word) -> Result<(), ParseError> {
        self.check_word(&word, i + 1, &format!("g{}^p", i + 1))?;
        self.powers[i] = word;
        Ok(())
    }

    pub fn set_commutator(&mut self, j: usize, i: usize, word: Word) -> Result<(), ParseError> {
        if i >= j {
            return Err(ParseError::Weighting {
                line: 0,
                message: format!("commutator [g{},g{}] must have its first index larger", j + 1, i + 1),
            });
        }
        self.check_word(&word, j + 1, &format!("[g{},g{}]", j + 1, i + 1))?;
        self.commutators[j][i] = word;
        Ok(())
    }

    /// Canonical text: header plus every non-trivial relation in a fixed
    /// order (powers by index, then commutators by `(j, i)`).
    pub fn canonical_text(&self) -> String {
        let mut out = format!("p={}\nn={}\n", self.prime, self.ngens);
        for (i, w) in self.powers.iter().enumerate() {
            if w.iter().any(|&e| e != 0) {
                let _ = writeln!(out, "g{}^p={}", i + 1, format_word(w));
            }
        }
        for (j, row) in self.commutators.iter().enumerate() {
            for (i, w) in row.iter().enumerate() {
                if w.iter().any(|&e| e != 0) {
                    let _ = writeln!(out, "[g{},g{}]={}", j + 1, i + 1, format_word(w));
                }
            }
        }
        out
    }

    /// SHA-256 of [`Self::canonical_text`], hex encoded.
    pub fn group_id(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

pub fn format_word(w: &[u32]) -> String {
    let factors: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| if e == 1 { format!("g{}", k + 1) } else { format!("g{}^{}", k + 1, e) })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: self.col0 + self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("number too large"))
    }

    fn generator(&mut self) -> Result<usize, ParseError> {
        if !self.eat('g') {
            return Err(self.err("expected a generator g<k>"));
        }
        // no whitespace between 'g' and its index
        if !self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.err("expected a generator index after 'g'"));
        }
        let k = self.number()?;
        if k == 0 {
            return Err(self.err("generator indices start at 1"));
        }
        Ok(k as usize)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

enum Statement {
    Prime(u64),
    Ngens(u64),
    Power { i: usize, exp: Option<u64>, word: Vec<(usize, u64)> },
    Commutator { j: usize, i: usize, word: Vec<(usize, u64)> },
}

fn parse_word(cur: &mut Cursor<'_>) -> Result<Vec<(usize, u64)>, ParseError> {
    if cur.eat('1') {
        return Ok(Vec::new());
    }
    let mut factors = Vec::new();
    loop {
        let k = cur.generator()?;
        let e = if cur.eat('^') { cur.number()? } else { 1 };
        factors.push((k, e));
        if !cur.eat('*') {
            break;
        }
    }
    Ok(factors)
}

fn parse_statement(cur: &mut Cursor<'_>) -> Result<Statement, ParseError> {
    match cur.peek() {
        Some('p') => {
            cur.pos += 1;
            cur.expect('=')?;
            Ok(Statement::Prime(cur.number()?))
        }
        Some('n') => {
            cur.pos += 1;
            cur.expect('=')?;
            Ok(Statement::Ngens(cur.number()?))
        }
        Some('g') => {
            let i = cur.generator()?;
            cur.expect('^')?;
            let exp = if cur.eat('p') { None } else { Some(cur.number()?) };
            cur.expect('=')?;
            let word = parse_word(cur)?;
            Ok(Statement::Power { i, exp, word })
        }
        Some('[') => {
            cur.pos += 1;
            let j = cur.generator()?;
            cur.expect(',')?;
            let i = cur.generator()?;
            cur.expect(']')?;
            cur.expect('=')?;
            let word = parse_word(cur)?;
            Ok(Statement::Commutator { j, i, word })
        }
        _ => Err(cur.err("expected 'p =', 'n =', a power relation or a commutator relation")),
    }
}

/// Parse presentation text. See the module docs for the grammar.
pub fn parse_presentation(text: &str) -> Result<PcPresentation, ParseError> {
    let mut prime: Option<u32> = None;
    let mut pres: Option<PcPresentation> = None;
    let mut seen_powers = std::collections::BTreeSet::new();
    let mut seen_comms = std::collections::BTreeSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in content.split(';') {
            let col0 = offset;
            offset += piece.len() + 1;
            let mut cur = Cursor { text: piece, pos: 0, line, col0 };
            if cur.at_end() {
                continue;
            }
            let stmt = parse_statement(&mut cur)?;
            if !cur.at_end() {
                return Err(cur.err("unexpected trailing input"));
            }
            match stmt {
                Statement::Prime(p) => {
                    if prime.is_some() {
                        return Err(cur.err("duplicate 'p =' header"));
                    }
                    let p = u32::try_from(p).map_err(|_| cur.err("prime too large"))?;
                    if !is_prime(p) {
                        return Err(ParseError::NotPrime(p));
                    }
                    prime = Some(p);
                }
                Statement::Ngens(n) => {
                    let p = prime.ok_or_else(|| cur.err("'n =' must follow 'p ='"))?;
                    if pres.is_some() {
                        return Err(cur.err("duplicate 'n =' header"));
                    }
                    if n > 64 {
                        return Err(cur.err("too many generators"));
                    }
                    pres = Some(PcPresentation::trivial(p, n as usize)?);
                }
                Statement::Power { i, exp, word } => {
                    let pr = pres.as_mut().ok_or_else(|| cur.err("relation before 'n =' header"))?;
                    if let Some(e) = exp {
                        if e != pr.prime as u64 {
                            return Err(cur.err(format!(
                                "power relations must use exponent p = {} (all relative orders equal p)",
                                pr.prime
                            )));
                        }
                    }
                    check_index(&cur, i, pr.ngens)?;
                    if !seen_powers.insert(i) {
                        return Err(cur.err(format!("duplicate power relation for g{i}")));
                    }
                    let w = build_word(&cur, pr, &word, i)?;
                    pr.set_power(i - 1, w).map_err(|e| with_line(e, line))?;
                }
                Statement::Commutator { j, i, word } => {
                    let pr = pres.as_mut().ok_or_else(|| cur.err("relation before 'n =' header"))?;
                    check_index(&cur, j, pr.ngens)?;
                    check_index(&cur, i, pr.ngens)?;
                    if j <= i {
                        return Err(ParseError::Weighting {
                            line,
                            message: format!("commutator [g{j},g{i}] must be written with the larger index first"),
                        });
                    }
                    if !seen_comms.insert((j, i)) {
                        return Err(cur.err(format!("duplicate relation for [g{j},g{i}]")));
                    }
                    let w = build_word(&cur, pr, &word, j)?;
                    pr.set_commutator(j - 1, i - 1, w).map_err(|e| with_line(e, line))?;
                }
            }
        }
    }
    match pres {
        Some(p) => Ok(p),
        None if prime.is_none() => Err(ParseError::MissingHeader("p")),
        None => Err(ParseError::MissingHeader("n")),
    }
}

fn check_index(cur: &Cursor<'_>, k: usize, n: usize) -> Result<(), ParseError> {
    if k > n {
        Err(cur.err(format!("generator g{k} out of range (n = {n})")))
    } else {
        Ok(())
    }
}

/// Turn factor list into an exponent vector, enforcing increasing indices,
/// exponent range and weighting (all indices above `defining`, 1-based).
fn build_word(
    cur: &Cursor<'_>,
    pres: &PcPresentation,
    factors: &[(usize, u64)],
    defining: usize,
) -> Result<Word, ParseError> {
    let mut w = vec![0u32; pres.ngens];
    let mut last = 0usize;
    for &(k, e) in factors {
        check_index(cur, k, pres.ngens)?;
        if k <= defining {
            return Err(ParseError::Weighting {
                line: cur.line,
                message: format!("relation for g{defining} references g{k}; words may only use later generators"),
            });
        }
        if k <= last {
            return Err(cur.err("word indices must be strictly increasing"));
        }
        if e >= pres.prime as u64 {
            return Err(ParseError::ExponentOutOfRange { line: cur.line, exponent: e as u32, prime: pres.prime });
        }
        last = k;
        w[k - 1] = e as u32;
    }
    Ok(w)
}

fn with_line(e: ParseError, line: usize) -> ParseError {
    match e {
        ParseError::Weighting { message, .. } => ParseError::Weighting { line, message },
        ParseError::ExponentOutOfRange { exponent, prime, .. } => {
            ParseError::ExponentOutOfRange { line, exponent, prime }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_case() {
        let p = parse_presentation("p=2; n=1;").unwrap();
        assert_eq!(p.prime(), 2);
        assert_eq!(p.ngens(), 1);
        assert_eq!(p.power(0), &vec![0]);
    }

    #[test]
    fn dihedral_sixteen_text() {
        let p = parse_presentation("p=2; n=4; g2^2=g3; g3^2=g4; [g2,g1]=g3*g4^1; [g3,g1]=g4").unwrap();
        assert_eq!(p.ngens(), 4);
        assert_eq!(p.commutator(1, 0), &vec![0, 0, 1, 1]);
        assert_eq!(p.power(2), &vec![0, 0, 0, 1]);
    }

    #[test]
    fn weighting_violation() {
        let err = parse_presentation("p=2; n=2; [g1,g2]=g1").unwrap_err();
        assert!(matches!(err, ParseError::Weighting { .. }), "{err:?}");
        let err = parse_presentation("p=3\nn=3\n[g3,g1]=g2").unwrap_err();
        assert!(matches!(err, ParseError::Weighting { line: 3, .. }), "{err:?}");
        let err = parse_presentation("p=3\nn=3\ng2^p=g2").unwrap_err();
        assert!(matches!(err, ParseError::Weighting { .. }), "{err:?}");
    }

    #[test]
    fn exponent_out_of_range() {
        let err = parse_presentation("p=3\nn=2\ng1^p=g2^3").unwrap_err();
        assert!(matches!(err, ParseError::ExponentOutOfRange { line: 3, exponent: 3, prime: 3 }), "{err:?}");
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_presentation("p = 3\nn = 2\n[g2 g1] = 1").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_relative_orders_rejected() {
        assert!(parse_presentation("p=2\nn=2\ng1^4=g2").is_err());
    }

    #[test]
    fn comments_and_defaults() {
        let p = parse_presentation("# heisenberg\np = 3\nn = 3\n[g2,g1] = g3 # the only relation\n").unwrap();
        assert_eq!(p.commutator(2, 0), &vec![0, 0, 0]);
        assert_eq!(p.commutator(1, 0), &vec![0, 0, 1]);
    }

    #[test]
    fn canonical_text_ignores_layout_and_trivial_relations() {
        let a = parse_presentation("p=3;n=3;[g2,g1]=g3;g1^p=1").unwrap();
        let b = parse_presentation("# x\np = 3\nn = 3\n\n[g2, g1] = g3^1\n").unwrap();
        assert_eq!(a.canonical_text(), b.canonical_text());
        assert_eq!(a.group_id(), b.group_id());
        assert_eq!(parse_presentation(&a.canonical_text()).unwrap(), a);
    }

    #[test]
    fn not_prime() {
        assert!(matches!(parse_presentation("p=4\nn=1"), Err(ParseError::NotPrime(4))));
    }

    #[test]
    fn missing_header() {
        assert!(matches!(parse_presentation("# nothing"), Err(ParseError::MissingHeader("p"))));
    }
}
