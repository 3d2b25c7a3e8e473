//! Words and noncommutative polynomials.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// An ordered generator alphabet. The declared order induces the deglex
/// monomial order used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: &[&str]) -> Self {
        Alphabet::from_names(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(names: Vec<String>) -> Self {
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate generator name {:?}", n);
        }
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }
}

/// A monomial: a finite sequence of generator indices. The empty word is
/// the unit monomial. `Ord` is deglex: degree first, then lexicographic
/// in the alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: u32) -> Self {
        Word(vec![i])
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn append(&self, g: u32) -> Word {
        let mut v = self.0.clone();
        v.push(g);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero
/// scalars. The map-keyed form is canonical; no zero coefficients are
/// ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::empty())
    }

    pub fn gen(i: u32) -> Self {
        NcPoly::from_word(Word::gen(i))
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        NcPoly { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word::empty(), c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.degree()).max().unwrap_or(0)
    }

    /// Deglex-leading term.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &NcPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), factor * c);
        }
    }

    pub fn scale(&self, factor: &Scalar) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_scaled(self, factor);
        p
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::int(-1))
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut p = self.clone();
        p.add_scaled(other, &Scalar::int(-1));
        p
    }

    /// Distributive word-concatenation product.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Word-reversal of every monomial (the image in the opposite algebra).
    pub fn reversed(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())))
    }

    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = format!("{}", c);
            let needs_parens = coeff.contains(' ') || coeff.contains('+');
            if w.is_empty() {
                if needs_parens {
                    let _ = write!(out, "({})", coeff);
                } else {
                    out.push_str(&coeff);
                }
                continue;
            }
            if coeff != "1" {
                if needs_parens {
                    let _ = write!(out, "({})*", coeff);
                } else if coeff == "-1" {
                    out.push('-');
                } else {
                    let _ = write!(out, "{}*", coeff);
                }
            }
            let word = w
                .letters()
                .iter()
                .map(|&g| alphabet.name(g).to_string())
                .collect::<Vec<_>>()
                .join("*");
            out.push_str(&word);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let aa = a.concat(&a);
        let ab = a.concat(&b);
        assert!(Word::empty() < a);
        assert!(a < b);
        assert!(b < aa);
        assert!(aa < ab);
    }

    #[test]
    fn product_of_generators() {
        let p = NcPoly::gen(0).mul(&NcPoly::gen(1));
        assert_eq!(p.num_terms(), 1);
        let (w, c) = p.leading().unwrap();
        assert_eq!(w.letters(), &[0, 1]);
        assert!(c.is_one());
    }

    #[test]
    fn unit_law() {
        let p = NcPoly::gen(0).add(&NcPoly::gen(1));
        assert_eq!(p.mul(&NcPoly::one()), p);
        assert_eq!(NcPoly::one().mul(&p), p);
    }

    #[test]
    fn hand_expanded_product() {
        // (x0 - x1)(x0 + x1) = x0x0 + x0x1 - x1x0 - x1x1
        let x0 = NcPoly::gen(0);
        let x1 = NcPoly::gen(1);
        let p = x0.sub(&x1).mul(&x0.add(&x1));
        let expect = NcPoly::from_terms(vec![
            (Word::from_letters(vec![0, 0]), Scalar::one()),
            (Word::from_letters(vec![0, 1]), Scalar::one()),
            (Word::from_letters(vec![1, 0]), Scalar::int(-1)),
            (Word::from_letters(vec![1, 1]), Scalar::int(-1)),
        ]);
        assert_eq!(p, expect);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = NcPoly::gen(0).sub(&NcPoly::gen(0));
        assert!(p.is_zero());
    }
}
