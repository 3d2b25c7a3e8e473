//! Algebra morphisms and anti-morphisms given by generator images.

use super::poly::{NcPoly, Word};
use super::tensor::TensorElem;
use super::{same_presentation, PresRef};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApplyError {
    #[error("factor at position {0} is not the morphism domain")]
    DomainMismatch(usize),
    #[error("generator {0} has no image (beyond the truncation)")]
    UndefinedGenerator(String),
}

/// A map out of a presented algebra, given by one tensor image per
/// generator. When `anti` is set the map lands in the opposite algebra:
/// products are reversed on application.
///
/// Images may be missing for individual generators; this happens only for
/// truncations of infinitely presented families, where the structure maps
/// shift generator levels. Applying the morphism to a word touching an
/// imageless generator reports `UndefinedGenerator` instead of guessing.
#[derive(Debug, Clone)]
pub struct AlgMorphism {
    pub name: String,
    pub domain: PresRef,
    pub codomain: Vec<PresRef>,
    images: Vec<Option<TensorElem>>,
    pub anti: bool,
}

impl AlgMorphism {
    pub fn new(
        name: impl Into<String>,
        domain: PresRef,
        codomain: Vec<PresRef>,
        images: Vec<TensorElem>,
        anti: bool,
    ) -> Self {
        assert_eq!(images.len(), domain.alphabet.len(), "one image per generator");
        for img in &images {
            assert_eq!(img.arity(), codomain.len());
            for (f, g) in img.factors().iter().zip(&codomain) {
                assert!(same_presentation(f, g), "image outside stated codomain");
            }
        }
        AlgMorphism {
            name: name.into(),
            domain,
            codomain,
            images: images.into_iter().map(Some).collect(),
            anti,
        }
    }

    pub fn new_partial(
        name: impl Into<String>,
        domain: PresRef,
        codomain: Vec<PresRef>,
        images: Vec<Option<TensorElem>>,
        anti: bool,
    ) -> Self {
        assert_eq!(images.len(), domain.alphabet.len());
        AlgMorphism {
            name: name.into(),
            domain,
            codomain,
            images,
            anti,
        }
    }

    pub fn identity(pres: PresRef) -> Self {
        let images = (0..pres.alphabet.len() as u32)
            .map(|i| TensorElem::from_poly(pres.clone(), &NcPoly::gen(i)))
            .collect();
        AlgMorphism::new("id", pres.clone(), vec![pres], images, false)
    }

    pub fn image(&self, generator: u32) -> Option<&TensorElem> {
        self.images[generator as usize].as_ref()
    }

    pub fn images(&self) -> impl Iterator<Item = (u32, Option<&TensorElem>)> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, img)| (i as u32, img.as_ref()))
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(|i| i.is_some())
    }

    /// Image of a single word: the product of the generator images, in
    /// reversed order for an anti-morphism.
    pub fn apply_word(&self, w: &Word) -> Result<TensorElem, ApplyError> {
        let mut acc = TensorElem::unit(self.codomain.clone());
        let letters: Vec<u32> = if self.anti {
            w.letters().iter().rev().copied().collect()
        } else {
            w.letters().to_vec()
        };
        for g in letters {
            let img = self.images[g as usize].as_ref().ok_or_else(|| {
                ApplyError::UndefinedGenerator(self.domain.alphabet.name(g).to_string())
            })?;
            acc = acc.tensor_mul(img);
        }
        Ok(acc)
    }

    /// Image of a polynomial in the domain algebra.
    pub fn apply_poly(&self, p: &NcPoly) -> Result<TensorElem, ApplyError> {
        let mut acc = TensorElem::zero(self.codomain.clone());
        for (w, c) in p.terms() {
            acc = acc.add(&self.apply_word(w)?.scale(c));
        }
        Ok(acc)
    }

    /// Substitutes generator images into the factor at `position`,
    /// splicing the morphism codomain in place of that factor.
    pub fn apply(&self, t: &TensorElem, position: usize) -> Result<TensorElem, ApplyError> {
        if position >= t.arity() || !same_presentation(&t.factors()[position], &self.domain) {
            return Err(ApplyError::DomainMismatch(position));
        }
        let mut factors: Vec<PresRef> = t.factors()[..position].to_vec();
        factors.extend(self.codomain.iter().cloned());
        factors.extend(t.factors()[position + 1..].iter().cloned());
        let mut out = TensorElem::zero(factors);
        for (key, c) in t.terms() {
            let image = self.apply_word(&key[position])?;
            for (ikey, d) in image.terms() {
                let mut nk: Vec<Word> = key[..position].to_vec();
                nk.extend(ikey.iter().cloned());
                nk.extend(key[position + 1..].iter().cloned());
                out.add_term(nk, c * d);
            }
        }
        Ok(out)
    }

    /// Post-composes `g` at one codomain position: the result maps a
    /// generator `x` to `g` applied at `position` of `self(x)`. Only
    /// meaningful when `g` is a plain morphism.
    pub fn then_at(&self, g: &AlgMorphism, position: usize) -> Result<AlgMorphism, ApplyError> {
        assert!(!g.anti, "composition through an anti-morphism factor");
        let mut codomain: Vec<PresRef> = self.codomain[..position].to_vec();
        codomain.extend(g.codomain.iter().cloned());
        codomain.extend(self.codomain[position + 1..].iter().cloned());
        let mut images = Vec::with_capacity(self.images.len());
        for img in &self.images {
            match img {
                None => images.push(None),
                Some(t) => match g.apply(t, position) {
                    Ok(r) => images.push(Some(r)),
                    Err(ApplyError::UndefinedGenerator(_)) => images.push(None),
                    Err(e) => return Err(e),
                },
            }
        }
        Ok(AlgMorphism {
            name: format!("{};{}@{}", self.name, g.name, position),
            domain: self.domain.clone(),
            codomain,
            images,
            anti: self.anti,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Presentation;
    use std::sync::Arc;

    #[test]
    fn identity_is_identity() {
        let p = Arc::new(Presentation::free("F", &["x", "y"]));
        let id = AlgMorphism::identity(p.clone());
        let t = TensorElem::from_poly(p.clone(), &NcPoly::gen(0).mul(&NcPoly::gen(1)));
        assert_eq!(id.apply(&t, 0).unwrap(), t);
    }

    #[test]
    fn substitution_on_power() {
        // f(x) = y on a single-generator domain, applied to x^2, gives y^2
        let dom = Arc::new(Presentation::free("D", &["x"]));
        let cod = Arc::new(Presentation::free("C", &["y"]));
        let f = AlgMorphism::new(
            "f",
            dom.clone(),
            vec![cod.clone()],
            vec![TensorElem::from_poly(cod.clone(), &NcPoly::gen(0))],
            false,
        );
        let x2 = TensorElem::from_poly(dom, &NcPoly::gen(0).mul(&NcPoly::gen(0)));
        let y2 = TensorElem::from_poly(cod, &NcPoly::gen(0).mul(&NcPoly::gen(0)));
        assert_eq!(f.apply(&x2, 0).unwrap(), y2);
    }

    #[test]
    fn anti_morphism_reverses_words() {
        // anti f(x_i) = y_i sends x1 x2 to y2 y1
        let dom = Arc::new(Presentation::free("D", &["x1", "x2"]));
        let cod = Arc::new(Presentation::free("C", &["y1", "y2"]));
        let f = AlgMorphism::new(
            "f",
            dom.clone(),
            vec![cod.clone()],
            vec![
                TensorElem::from_poly(cod.clone(), &NcPoly::gen(0)),
                TensorElem::from_poly(cod.clone(), &NcPoly::gen(1)),
            ],
            true,
        );
        let x1x2 = TensorElem::from_poly(dom, &NcPoly::gen(0).mul(&NcPoly::gen(1)));
        let y2y1 = TensorElem::from_poly(cod, &NcPoly::gen(1).mul(&NcPoly::gen(0)));
        assert_eq!(f.apply(&x1x2, 0).unwrap(), y2y1);
    }

    #[test]
    fn undefined_generator_is_reported() {
        let dom = Arc::new(Presentation::free("D", &["x", "top"]));
        let cod = Arc::new(Presentation::free("C", &["y"]));
        let f = AlgMorphism::new_partial(
            "f",
            dom.clone(),
            vec![cod.clone()],
            vec![Some(TensorElem::from_poly(cod, &NcPoly::gen(0))), None],
            false,
        );
        let t = TensorElem::from_poly(dom, &NcPoly::gen(1));
        assert_eq!(
            f.apply(&t, 0),
            Err(ApplyError::UndefinedGenerator("top".into()))
        );
    }
}
