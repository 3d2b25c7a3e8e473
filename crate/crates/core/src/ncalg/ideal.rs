//! Bounded-degree ideal membership.
//!
//! For a presentation `P` and a degree cap `D`, [`IdealBasis`] is the exact
//! row-reduced echelon basis of `span{ u*r*v : r a relation, deg(u r v) <= D }`
//! in the coordinate space of monomials of degree at most `D`, under the
//! deglex order induced by the alphabet.
//!
//! Normal forms are computed by using the echelon rows as rewrite rules on
//! subwords (leading monomial -> minus tail). Every rewrite strictly
//! decreases the deglex order, so reduction terminates. For elements of
//! degree at most `D` this reduction is complete: any element of the
//! spanned slice reduces to zero. Words above the cap are rewritten
//! opportunistically; if a nonzero residue above the cap survives, the
//! verdict is inconclusive rather than a refutation.

use super::morphism::{AlgMorphism, ApplyError};
use super::poly::{NcPoly, Word};
use super::tensor::TensorElem;
use super::PresRef;
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("capacity exceeded: {0} monomials of degree <= {1} (limit {2})")]
pub struct CapacityError(pub usize, pub usize, pub usize);

/// Outcome of a bounded-degree zero test.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroVerdict {
    /// The element lies in the ideal; sound at any cap and monotone in it.
    Verified,
    /// A nonzero normal form whose words all fit under the cap. This is
    /// evidence against membership at this cap, with the residue as
    /// witness; the report must always state the cap alongside it.
    NonzeroAtCap(TensorElem),
    /// No verdict: degree overflow, truncation, or capacity.
    Inconclusive(String),
}

impl ZeroVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, ZeroVerdict::Verified)
    }
}

/// Row-reduced bounded-degree basis of a two-sided ideal.
pub struct IdealBasis {
    pres: PresRef,
    degree_cap: usize,
    rows: Vec<NcPoly>,
    by_lead: HashMap<Vec<u32>, usize>,
    max_lead_len: usize,
    nf_cache: RwLock<HashMap<Word, Arc<NcPoly>>>,
}

impl IdealBasis {
    pub fn build(
        pres: PresRef,
        degree_cap: usize,
        capacity_monomials: usize,
    ) -> Result<Self, CapacityError> {
        let n = pres.alphabet.len();
        let mut count: usize = 0;
        let mut layer: usize = 1;
        for _ in 0..=degree_cap {
            count = count.saturating_add(layer);
            layer = layer.saturating_mul(n.max(1));
            if count > capacity_monomials {
                return Err(CapacityError(count, degree_cap, capacity_monomials));
            }
        }

        let mut basis = IdealBasis {
            pres: pres.clone(),
            degree_cap,
            rows: Vec::new(),
            by_lead: HashMap::new(),
            max_lead_len: 0,
            nf_cache: RwLock::new(HashMap::new()),
        };

        // all u * r * v with deg(u r v) <= cap, by increasing multiplier degree
        for extra in 0..=degree_cap {
            for rel in &pres.relations {
                let dr = rel.degree();
                if dr + extra > degree_cap {
                    continue;
                }
                for a in 0..=extra {
                    let b = extra - a;
                    for u in words_of_len(n, a) {
                        for v in words_of_len(n, b) {
                            let candidate = NcPoly::from_terms(rel.terms().map(|(w, c)| {
                                (u.concat(w).concat(&v), c.clone())
                            }));
                            basis.insert_candidate(candidate);
                        }
                    }
                }
            }
        }

        basis.interreduce();
        Ok(basis)
    }

    pub fn presentation(&self) -> &PresRef {
        &self.pres
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn rows(&self) -> &[NcPoly] {
        &self.rows
    }

    fn insert_candidate(&mut self, candidate: NcPoly) {
        let reduced = self.linear_reduce(candidate);
        if reduced.is_zero() {
            return;
        }
        let (lead, coeff) = {
            let (w, c) = reduced.leading().unwrap();
            (w.clone(), c.clone())
        };
        let monic = reduced.scale(&coeff.inv().expect("nonzero leading coefficient"));
        self.max_lead_len = self.max_lead_len.max(lead.degree());
        self.by_lead.insert(lead.letters().to_vec(), self.rows.len());
        self.rows.push(monic);
    }

    /// Full-monomial elimination (the u = v = 1 case of rewriting):
    /// subtracts rows whose leading word appears as a whole term.
    fn linear_reduce(&self, mut p: NcPoly) -> NcPoly {
        loop {
            let hit = p
                .terms()
                .rev()
                .find_map(|(w, c)| {
                    self.by_lead
                        .get(w.letters())
                        .map(|&i| (c.clone(), i))
                });
            match hit {
                None => return p,
                Some((c, i)) => {
                    let row = self.rows[i].clone();
                    p.add_scaled(&row, &c.neg());
                }
            }
        }
    }

    /// Reduces every row's tail against the other rows, bottom-up, so that
    /// no non-leading monomial of any row is a leading monomial.
    fn interreduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| {
            self.rows[a]
                .leading()
                .unwrap()
                .0
                .cmp(self.rows[b].leading().unwrap().0)
        });
        let mut new_rows: Vec<NcPoly> = Vec::with_capacity(self.rows.len());
        let mut new_by_lead: HashMap<Vec<u32>, usize> = HashMap::new();
        for &i in &order {
            let row = self.rows[i].clone();
            let (lead, _) = row.leading().unwrap();
            let lead = lead.clone();
            // reduce the tail with the smaller-lead rows already rebuilt
            let mut tail = row.clone();
            tail.add_term(lead.clone(), Scalar::int(-1));
            let tail = reduce_against(&new_rows, &new_by_lead, tail);
            let mut rebuilt = tail;
            rebuilt.add_term(lead.clone(), Scalar::one());
            new_by_lead.insert(lead.letters().to_vec(), new_rows.len());
            new_rows.push(rebuilt);
        }
        self.rows = new_rows;
        self.by_lead = new_by_lead;
    }

    /// Finds a row whose leading word occurs as a subword of `w`,
    /// preferring longer matches; returns (start, length, row index).
    fn find_rewrite(&self, w: &Word) -> Option<(usize, usize, usize)> {
        let letters = w.letters();
        let max_len = self.max_lead_len.min(letters.len());
        for len in (1..=max_len).rev() {
            for start in 0..=letters.len() - len {
                if let Some(&i) = self.by_lead.get(&letters[start..start + len]) {
                    return Some((start, len, i));
                }
            }
        }
        None
    }

    /// Normal form of a single word: iterated subword rewriting by the
    /// echelon rows, memoized. Strictly deglex-decreasing, so terminating.
    pub fn normal_form_word(&self, w: &Word) -> Arc<NcPoly> {
        if let Some(p) = self.nf_cache.read().unwrap().get(w) {
            return p.clone();
        }
        // iterative memoized DFS; recursion depth can be large for
        // degree-preserving rewrite chains
        struct Frame {
            word: Word,
            expansion: Vec<(Word, Scalar)>,
            idx: usize,
            acc: NcPoly,
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut pending = w.clone();
        'outer: loop {
            // resolve `pending`: either cached, irreducible, or expandable
            let resolved: Option<Arc<NcPoly>> = {
                let cached = self.nf_cache.read().unwrap().get(&pending).cloned();
                match cached {
                    Some(p) => Some(p),
                    None => match self.find_rewrite(&pending) {
                        None => {
                            let nf = Arc::new(NcPoly::from_word(pending.clone()));
                            self.nf_cache
                                .write()
                                .unwrap()
                                .insert(pending.clone(), nf.clone());
                            Some(nf)
                        }
                        Some((start, len, row)) => {
                            // w = u * lead * v  =>  w ~ -u * tail * v
                            let letters = pending.letters();
                            let u = pending.subword(0, start);
                            let v = pending.subword(start + len, letters.len() - start - len);
                            let rowp = &self.rows[row];
                            let (lead, _) = rowp.leading().unwrap();
                            let lead = lead.clone();
                            let mut expansion = Vec::with_capacity(rowp.num_terms() - 1);
                            for (t, c) in rowp.terms() {
                                if *t == lead {
                                    continue;
                                }
                                expansion.push((u.concat(t).concat(&v), c.neg()));
                            }
                            if expansion.is_empty() {
                                // monomial relation: the word dies outright
                                let nf = Arc::new(NcPoly::zero());
                                self.nf_cache
                                    .write()
                                    .unwrap()
                                    .insert(pending.clone(), nf.clone());
                                Some(nf)
                            } else {
                                let first = expansion[0].0.clone();
                                stack.push(Frame {
                                    word: pending.clone(),
                                    expansion,
                                    idx: 1,
                                    acc: NcPoly::zero(),
                                });
                                pending = first;
                                None
                            }
                        }
                    },
                }
            };
            if let Some(nf) = resolved {
                // feed the result to the parent frame, or finish
                let mut value = nf;
                loop {
                    match stack.last_mut() {
                        None => return value,
                        Some(frame) => {
                            if frame.idx > 0 {
                                let (_, c) = &frame.expansion[frame.idx - 1];
                                frame.acc.add_scaled(&value, c);
                            }
                            if frame.idx < frame.expansion.len() {
                                let (next, _) = &frame.expansion[frame.idx];
                                pending = next.clone();
                                frame.idx += 1;
                                continue 'outer;
                            }
                            let done = stack.pop().unwrap();
                            let nf = Arc::new(done.acc);
                            self.nf_cache
                                .write()
                                .unwrap()
                                .insert(done.word, nf.clone());
                            value = nf;
                        }
                    }
                }
            }
        }
    }

    pub fn reduce_poly(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }
}

fn reduce_against(rows: &[NcPoly], by_lead: &HashMap<Vec<u32>, usize>, mut p: NcPoly) -> NcPoly {
    loop {
        let hit = p
            .terms()
            .rev()
            .find_map(|(w, c)| by_lead.get(w.letters()).map(|&i| (c.clone(), i)));
        match hit {
            None => return p,
            Some((c, i)) => {
                let row = rows[i].clone();
                p.add_scaled(&row, &c.neg());
            }
        }
    }
}

fn words_of_len(n: usize, len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    loop {
        out.push(Word::from_letters(current.clone()));
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if (current[i] as usize) < n {
                break;
            }
            current[i] = 0;
        }
    }
}

/// Shared context for bounded-degree reductions: builds and caches one
/// [`IdealBasis`] per (presentation, cap) pair and hosts the zero tests
/// used by every verifier layer.
pub struct ReductionContext {
    capacity_monomials: usize,
    bases: Mutex<HashMap<(usize, usize), Arc<IdealBasis>>>,
}

impl Default for ReductionContext {
    fn default() -> Self {
        ReductionContext::new(500_000)
    }
}

impl ReductionContext {
    pub fn new(capacity_monomials: usize) -> Self {
        ReductionContext {
            capacity_monomials,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self, pres: &PresRef, cap: usize) -> Result<Arc<IdealBasis>, CapacityError> {
        let key = (Arc::as_ptr(pres) as usize, cap);
        if let Some(b) = self.bases.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let built = Arc::new(IdealBasis::build(
            pres.clone(),
            cap,
            self.capacity_monomials,
        )?);
        let mut guard = self.bases.lock().unwrap();
        Ok(guard.entry(key).or_insert(built).clone())
    }

    /// Reduces every factor coordinate of `t` against the corresponding
    /// echelon basis at cap `cap`. Idempotent.
    pub fn normal_form(&self, t: &TensorElem, cap: usize) -> Result<TensorElem, CapacityError> {
        let mut current = t.clone();
        for pos in 0..t.arity() {
            let basis = self.basis(&t.factors()[pos].clone(), cap)?;
            let mut next = TensorElem::zero(current.factors().to_vec());
            for (key, c) in current.terms() {
                let nf = basis.normal_form_word(&key[pos]);
                for (w, d) in nf.terms() {
                    let mut k = key.clone();
                    k[pos] = w.clone();
                    next.add_term(k, c * d);
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Bounded-degree zero test. Membership verified at `cap` stays
    /// verified for every larger cap.
    pub fn is_zero_mod(&self, t: &TensorElem, cap: usize) -> ZeroVerdict {
        let nf = match self.normal_form(t, cap) {
            Ok(nf) => nf,
            Err(e) => return ZeroVerdict::Inconclusive(format!("capacity: {}", e)),
        };
        if nf.is_zero() {
            return ZeroVerdict::Verified;
        }
        let overflow = nf
            .terms()
            .any(|(key, _)| key.iter().any(|w| w.degree() > cap));
        if overflow {
            ZeroVerdict::Inconclusive(format!(
                "degree overflow: residue exceeds cap {} ({})",
                cap, nf
            ))
        } else {
            ZeroVerdict::NonzeroAtCap(nf)
        }
    }

    /// Checks that the generator images satisfy every relation of the
    /// domain, i.e. that the morphism exists. Returns one verdict per
    /// relation, in relation order. Anti-morphisms are handled by the
    /// image computation itself (products reversed), so reduction always
    /// happens in the codomain's own ideal.
    pub fn morphism_well_defined(
        &self,
        f: &AlgMorphism,
        cap: usize,
    ) -> Vec<(String, ZeroVerdict)> {
        f.domain
            .relations
            .iter()
            .enumerate()
            .map(|(i, rel)| {
                let name = format!("{}:rel[{}]", f.name, i);
                let verdict = match f.apply_poly(rel) {
                    Err(ApplyError::UndefinedGenerator(g)) => {
                        ZeroVerdict::Inconclusive(format!("truncation: no image for {}", g))
                    }
                    Err(e) => ZeroVerdict::Inconclusive(format!("{}", e)),
                    Ok(image) => self.is_zero_mod(&image, cap),
                };
                (name, verdict)
            })
            .collect()
    }

    /// Equality of algebra morphisms on generators; sound because both
    /// sides are multiplicative, so agreement on generators extends to
    /// the whole algebra. Returns one verdict per generator.
    pub fn morphisms_equal(
        &self,
        f: &AlgMorphism,
        g: &AlgMorphism,
        cap: usize,
    ) -> Vec<(String, ZeroVerdict)> {
        assert!(
            super::same_presentation(&f.domain, &g.domain),
            "morphisms_equal: different domains"
        );
        (0..f.domain.alphabet.len() as u32)
            .map(|i| {
                let name = format!(
                    "{}={} on {}",
                    f.name,
                    g.name,
                    f.domain.alphabet.name(i)
                );
                let verdict = match (f.image(i), g.image(i)) {
                    (Some(a), Some(b)) => {
                        let a = a.strip_units();
                        let b = b.strip_units();
                        if !a.same_factors(&b) {
                            ZeroVerdict::Inconclusive(
                                "codomain factor lists differ".to_string(),
                            )
                        } else {
                            self.is_zero_mod(&a.sub(&b), cap)
                        }
                    }
                    _ => ZeroVerdict::Inconclusive(format!(
                        "truncation: no image for {}",
                        f.domain.alphabet.name(i)
                    )),
                };
                (name, verdict)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{Alphabet, Presentation};

    fn pres_involution() -> PresRef {
        // one generator a with a^2 = 1
        let rel = NcPoly::from_terms(vec![
            (Word::from_letters(vec![0, 0]), Scalar::one()),
            (Word::empty(), Scalar::int(-1)),
        ]);
        Arc::new(Presentation::new(
            "inv",
            Alphabet::new(&["a"]),
            vec![rel],
        ))
    }

    #[test]
    fn free_algebra_has_empty_basis() {
        let p = Arc::new(Presentation::free("F", &["x", "y"]));
        let b = IdealBasis::build(p, 4, 100_000).unwrap();
        assert!(b.rows().is_empty());
    }

    #[test]
    fn single_relation_at_minimal_cap() {
        let p = pres_involution();
        let b = IdealBasis::build(p, 2, 100_000).unwrap();
        assert_eq!(b.rows().len(), 1);
        assert_eq!(b.rows()[0].leading().unwrap().0.letters(), &[0, 0]);
    }

    #[test]
    fn relations_reduce_to_zero() {
        let p = pres_involution();
        let ctx = ReductionContext::default();
        let t = TensorElem::from_poly(p.clone(), &p.relations[0]);
        assert_eq!(ctx.is_zero_mod(&t, 3), ZeroVerdict::Verified);
    }

    #[test]
    fn unit_is_nonzero_at_cap() {
        let p = pres_involution();
        let ctx = ReductionContext::default();
        let t = TensorElem::unit(vec![p]);
        assert!(matches!(
            ctx.is_zero_mod(&t, 3),
            ZeroVerdict::NonzeroAtCap(_)
        ));
    }

    #[test]
    fn high_powers_reduce_through_rewriting() {
        // a^5 = a in the involution algebra, even with a^5 over the cap
        let p = pres_involution();
        let ctx = ReductionContext::default();
        let a5 = NcPoly::from_word(Word::from_letters(vec![0; 5]));
        let a = NcPoly::gen(0);
        let t = TensorElem::from_poly(p, &a5.sub(&a));
        assert_eq!(ctx.is_zero_mod(&t, 3), ZeroVerdict::Verified);
    }

    #[test]
    fn normal_form_is_idempotent() {
        let p = pres_involution();
        let ctx = ReductionContext::default();
        let poly = NcPoly::from_word(Word::from_letters(vec![0, 0, 0]))
            .add(&NcPoly::gen(0))
            .add(&NcPoly::one());
        let t = TensorElem::from_poly(p, &poly);
        let nf1 = ctx.normal_form(&t, 3).unwrap();
        let nf2 = ctx.normal_form(&nf1, 3).unwrap();
        assert_eq!(nf1, nf2);
    }

    #[test]
    fn capacity_failure_is_explicit() {
        let p = Arc::new(Presentation::free("big", &["a", "b", "c", "d", "e"]));
        assert!(IdealBasis::build(p, 10, 1000).is_err());
    }

    #[test]
    fn echelon_leads_are_distinct() {
        // group algebra of Z/2 x free mix: relations ab - 1, ba - 1
        let ab = NcPoly::from_terms(vec![
            (Word::from_letters(vec![0, 1]), Scalar::one()),
            (Word::empty(), Scalar::int(-1)),
        ]);
        let ba = NcPoly::from_terms(vec![
            (Word::from_letters(vec![1, 0]), Scalar::one()),
            (Word::empty(), Scalar::int(-1)),
        ]);
        let p = Arc::new(Presentation::new(
            "grp",
            Alphabet::new(&["a", "b"]),
            vec![ab, ba],
        ));
        let b = IdealBasis::build(p, 4, 100_000).unwrap();
        let mut leads: Vec<_> = b
            .rows()
            .iter()
            .map(|r| r.leading().unwrap().0.clone())
            .collect();
        let n = leads.len();
        leads.dedup();
        assert_eq!(leads.len(), n);
    }
}
