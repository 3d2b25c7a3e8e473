//! Free associative algebras, presentations by generators and relations,
//! tensor products of presented algebras, algebra (anti)morphisms, and
//! bounded-degree ideal membership.
//!
//! Ideal membership is decided by filtered linear algebra instead of
//! noncommutative Groebner completion: for a degree cap `D` we row-reduce
//! the span of all `u * r * v` with `deg(u r v) <= D` and use the echelon
//! rows as rewrite rules. Within the cap the verdict is complete; above
//! the cap reduction is sound but may return an inconclusive verdict.

mod ideal;
mod matrix;
mod morphism;
mod poly;
mod tensor;

pub use ideal::{CapacityError, IdealBasis, ReductionContext, ZeroVerdict};
pub use matrix::NcMatrix;
pub use morphism::{AlgMorphism, ApplyError};
pub use poly::{Alphabet, NcPoly, Word};
pub use tensor::TensorElem;

use std::sync::Arc;

/// A finitely presented associative algebra: a generator alphabet plus a
/// list of relations, each understood as `relation = 0`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub relations: Vec<NcPoly>,
}

pub type PresRef = Arc<Presentation>;

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, relations: Vec<NcPoly>) -> Self {
        let name = name.into();
        for (i, r) in relations.iter().enumerate() {
            assert!(!r.is_zero(), "relation {} of {} is zero", i, name);
            for (w, _) in r.terms() {
                for &g in w.letters() {
                    assert!(
                        (g as usize) < alphabet.len(),
                        "relation {} of {} uses generator index {} outside the alphabet",
                        i,
                        name,
                        g
                    );
                }
            }
        }
        Presentation {
            name,
            alphabet,
            relations,
        }
    }

    /// The free algebra on the given generators.
    pub fn free(name: impl Into<String>, generators: &[&str]) -> Self {
        Presentation::new(name, Alphabet::new(generators), vec![])
    }

    /// The ground field presented as an algebra: no generators, no relations.
    pub fn unit() -> PresRef {
        Arc::new(Presentation::free("k", &[]))
    }

    pub fn is_unit(&self) -> bool {
        self.alphabet.len() == 0
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations
            .iter()
            .map(|r| r.degree())
            .max()
            .unwrap_or(0)
    }
}

/// Structural equality of presentations; names are labels only.
impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.relations == other.relations
    }
}
impl Eq for Presentation {}

/// Do two presentation references denote the same algebra?
pub fn same_presentation(a: &PresRef, b: &PresRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// All words of degree at most `max_deg` over an alphabet of size `n`,
/// in deglex order (the empty word first).
pub fn words_up_to(n: usize, max_deg: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_deg {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for g in 0..n {
                next.push(w.append(g as u32));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
