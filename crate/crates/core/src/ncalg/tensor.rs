//! Elements of tensor products of presented algebras.

use super::poly::{NcPoly, Word};
use super::{same_presentation, PresRef};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A finite sum of scalars times tuples of words, one word per tensor
/// factor. An element with a single factor is a noncommutative polynomial
/// in that algebra.
#[derive(Debug, Clone)]
pub struct TensorElem {
    factors: Vec<PresRef>,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| same_presentation(a, b))
    }
}

impl TensorElem {
    pub fn zero(factors: Vec<PresRef>) -> Self {
        TensorElem {
            factors,
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(factors: Vec<PresRef>) -> Self {
        let key = vec![Word::empty(); factors.len()];
        let mut t = TensorElem::zero(factors);
        t.add_term(key, Scalar::one());
        t
    }

    pub fn from_poly(pres: PresRef, poly: &NcPoly) -> Self {
        let mut t = TensorElem::zero(vec![pres]);
        for (w, c) in poly.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// Pure tensor of polynomials, one per factor, expanded multilinearly.
    pub fn from_factor_polys(factors: Vec<PresRef>, polys: &[NcPoly]) -> Self {
        assert_eq!(factors.len(), polys.len());
        let mut t = TensorElem::unit(factors);
        for (i, p) in polys.iter().enumerate() {
            t = t.mul_factorwise_at(i, p);
        }
        t
    }

    fn mul_factorwise_at(&self, pos: usize, p: &NcPoly) -> TensorElem {
        let mut out = TensorElem::zero(self.factors.clone());
        for (key, c) in &self.terms {
            for (w, d) in p.terms() {
                let mut k = key.clone();
                k[pos] = k[pos].concat(w);
                out.add_term(k, c * d);
            }
        }
        out
    }

    pub fn factors(&self) -> &[PresRef] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: Scalar) {
        debug_assert_eq!(key.len(), self.factors.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn same_factors(&self, other: &TensorElem) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| same_presentation(a, b))
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        assert!(self.same_factors(other), "tensor factor-list mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, factor: &Scalar) -> TensorElem {
        let mut out = TensorElem::zero(self.factors.clone());
        for (k, c) in &self.terms {
            out.add_term(k.clone(), factor * c);
        }
        out
    }

    /// Componentwise product
    /// `(a1 (x) ... (x) ak)(b1 (x) ... (x) bk) = a1 b1 (x) ... (x) ak bk`,
    /// extended bilinearly. No signs.
    pub fn tensor_mul(&self, other: &TensorElem) -> TensorElem {
        assert!(self.same_factors(other), "tensor factor-list mismatch");
        let mut out = TensorElem::zero(self.factors.clone());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key: Vec<Word> = k1
                    .iter()
                    .zip(k2)
                    .map(|(w1, w2)| w1.concat(w2))
                    .collect();
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    /// Outer tensor product: concatenates factor lists.
    pub fn outer(&self, other: &TensorElem) -> TensorElem {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut out = TensorElem::zero(factors);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut key = k1.clone();
                key.extend(k2.iter().cloned());
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    /// Multiplies factors `pos` and `pos + 1` together (they must present
    /// the same algebra), shrinking the arity by one. This is the
    /// multiplication map applied at one spot of the tensor product.
    pub fn contract(&self, pos: usize) -> TensorElem {
        assert!(pos + 1 < self.factors.len());
        assert!(
            same_presentation(&self.factors[pos], &self.factors[pos + 1]),
            "cannot contract distinct factors"
        );
        let mut factors = self.factors.clone();
        factors.remove(pos + 1);
        let mut out = TensorElem::zero(factors);
        for (k, c) in &self.terms {
            let mut key = k.clone();
            let merged = key[pos].concat(&key[pos + 1]);
            key[pos] = merged;
            key.remove(pos + 1);
            out.add_term(key, c.clone());
        }
        out
    }

    /// Drops every factor presenting the ground field (empty alphabet);
    /// words there are necessarily empty. Realizes `k (x) A = A`.
    pub fn strip_units(&self) -> TensorElem {
        let keep: Vec<usize> = (0..self.factors.len())
            .filter(|&i| !self.factors[i].is_unit())
            .collect();
        if keep.len() == self.factors.len() {
            return self.clone();
        }
        let factors: Vec<PresRef> = keep.iter().map(|&i| self.factors[i].clone()).collect();
        let mut out = TensorElem::zero(factors);
        for (k, c) in &self.terms {
            let key: Vec<Word> = keep.iter().map(|&i| k[i].clone()).collect();
            out.add_term(key, c.clone());
        }
        out
    }

    /// For an element all of whose factors are the ground field, the value
    /// as a scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.factors.iter().all(|f| f.is_unit()) {
            return None;
        }
        let mut acc = Scalar::zero();
        for (_, c) in &self.terms {
            acc = &acc + c;
        }
        Some(acc)
    }

    /// Extracts the polynomial of a single-factor element.
    pub fn as_poly(&self) -> Option<NcPoly> {
        if self.factors.len() != 1 {
            return None;
        }
        Some(NcPoly::from_terms(
            self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())),
        ))
    }

    pub fn max_factor_degree(&self, pos: usize) -> usize {
        self.terms.keys().map(|k| k[pos].degree()).max().unwrap_or(0)
    }
}

impl std::fmt::Display for TensorElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = format!("{}", c);
            if coeff != "1" || key.iter().all(|w| w.is_empty()) {
                if coeff.contains(' ') {
                    let _ = write!(out, "({})", coeff);
                } else {
                    out.push_str(&coeff);
                }
                if !key.iter().all(|w| w.is_empty()) {
                    out.push('*');
                }
            }
            let mut first_factor = true;
            for (pos, w) in key.iter().enumerate() {
                if key.iter().all(|w| w.is_empty()) {
                    break;
                }
                if !first_factor {
                    out.push_str(" @ ");
                }
                first_factor = false;
                if w.is_empty() {
                    out.push('1');
                } else {
                    let word = w
                        .letters()
                        .iter()
                        .map(|&g| self.factors[pos].alphabet.name(g).to_string())
                        .collect::<Vec<_>>()
                        .join("*");
                    out.push_str(&word);
                }
            }
        }
        write!(f, "{}", out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Presentation;
    use std::sync::Arc;

    fn free2() -> PresRef {
        Arc::new(Presentation::free("F", &["x", "y"]))
    }

    #[test]
    fn componentwise_product() {
        let p = free2();
        let factors = vec![p.clone(), p.clone()];
        // (x (x) 1) * (1 (x) y) = x (x) y
        let a = TensorElem::from_factor_polys(factors.clone(), &[NcPoly::gen(0), NcPoly::one()]);
        let b = TensorElem::from_factor_polys(factors.clone(), &[NcPoly::one(), NcPoly::gen(1)]);
        let prod = a.tensor_mul(&b);
        let expect =
            TensorElem::from_factor_polys(factors, &[NcPoly::gen(0), NcPoly::gen(1)]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn unit_of_tensor_product() {
        let p = free2();
        let factors = vec![p.clone(), p.clone()];
        let one = TensorElem::unit(factors.clone());
        let t = TensorElem::from_factor_polys(factors, &[NcPoly::gen(1), NcPoly::gen(0)]);
        assert_eq!(one.tensor_mul(&t), t);
        assert_eq!(t.tensor_mul(&one), t);
    }

    #[test]
    fn bilinearity_expansion() {
        let p = free2();
        let factors = vec![p.clone(), p.clone()];
        let x = NcPoly::gen(0);
        let y = NcPoly::gen(1);
        let xy = TensorElem::from_factor_polys(factors.clone(), &[x.clone(), y.clone()]);
        let yx = TensorElem::from_factor_polys(factors.clone(), &[y.clone(), x.clone()]);
        let zw = TensorElem::from_factor_polys(factors.clone(), &[x.clone(), x.clone()]);
        let lhs = xy.add(&yx).tensor_mul(&zw);
        let expect = xy.tensor_mul(&zw).add(&yx.tensor_mul(&zw));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn contract_concatenates_words() {
        let p = free2();
        let factors = vec![p.clone(), p.clone()];
        let t = TensorElem::from_factor_polys(factors, &[NcPoly::gen(0), NcPoly::gen(1)]);
        let c = t.contract(0);
        assert_eq!(c.arity(), 1);
        let poly = c.as_poly().unwrap();
        assert_eq!(poly, NcPoly::gen(0).mul(&NcPoly::gen(1)));
    }

    #[test]
    fn strip_units_collapses_ground_field_factors() {
        let p = free2();
        let k = Presentation::unit();
        let t = TensorElem::from_factor_polys(
            vec![k.clone(), p.clone()],
            &[NcPoly::one(), NcPoly::gen(0)],
        );
        let s = t.strip_units();
        assert_eq!(s.arity(), 1);
        assert_eq!(s.as_poly().unwrap(), NcPoly::gen(0));
    }
}
