//! The example families: algebras of bilinear forms `B(E,F)`,
//! cosovereign-type algebras `H(E,F)`, and the level-truncated free
//! Hopf algebras `H(m,n)`, with their structure morphisms, the
//! isomorphisms between parameter choices, the inter-family morphisms
//! used as nonzero-ness evidence, and the symmetrizer / quadratic
//! utilities.

pub mod bef;
pub mod hef;
pub mod hmn;
pub mod matrix;
pub mod search;

pub use bef::{bef_delta, bef_phi, build_bef, build_bef_system, trace_invariant};
pub use hef::{
    build_hef, build_hef_system, cor32_quadratic, cor45_quadratic, find_symmetrizer,
    hef_iso_conjugate, hef_iso_transpose, hef_to_bef, verify_symmetrizer, Quadratic,
};
pub use hmn::{build_hmn, build_hmn_system, hmn_delta, hmn_phi, hmn_phi_partial, hmn_to_bef};
pub use matrix::{FieldMatrix, MatrixError};
pub use search::search_matching_invariant;

use crate::hg::HopfGaloisSystem;
use crate::ncalg::{AlgMorphism, NcMatrix, NcPoly, PresRef, TensorElem};
use crate::scalar::Scalar;

/// A catalog-built Hopf-Galois system together with the facts it takes
/// on citation rather than verifying (e.g. nonzero-ness of the presented
/// algebras) and informational notes (e.g. truncation levels).
pub struct CatalogSystem {
    pub system: HopfGaloisSystem,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

/// A rectangular block of generators inside a presentation's alphabet,
/// laid out row-major starting at `offset`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Grid {
    /// 1-based grid coordinates to alphabet index.
    pub fn idx(&self, i: usize, j: usize) -> u32 {
        debug_assert!(1 <= i && i <= self.rows && 1 <= j && j <= self.cols);
        (self.offset + (i - 1) * self.cols + (j - 1)) as u32
    }
}

/// Row-major generator names for one grid: `x11` style, switching to
/// `x1_1` when an index may exceed one digit.
pub(crate) fn grid_names(prefix: &str, rows: usize, cols: usize) -> Vec<String> {
    let wide = rows >= 10 || cols >= 10;
    let mut out = Vec::with_capacity(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            out.push(if wide {
                format!("{}{}_{}", prefix, i, j)
            } else {
                format!("{}{}{}", prefix, i, j)
            });
        }
    }
    out
}

/// The grid's generators as a matrix over the (single-factor) algebra.
pub(crate) fn grid_nc_matrix(pres: &PresRef, grid: Grid) -> NcMatrix {
    NcMatrix::from_fn(vec![pres.clone()], grid.rows, grid.cols, |i, j| {
        TensorElem::from_poly(pres.clone(), &NcPoly::gen(grid.idx(i + 1, j + 1)))
    })
}

/// Entries of `m - I` as polynomials, zero entries dropped.
pub(crate) fn minus_identity_relations(m: &NcMatrix) -> Vec<NcPoly> {
    assert_eq!(m.rows(), m.cols());
    let id = NcMatrix::identity(m.factors().to_vec(), m.rows());
    m.sub(&id)
        .entries()
        .filter_map(|e| e.as_poly())
        .filter(|p| !p.is_zero())
        .collect()
}

/// Comatrix morphism `x_ij -> sum_k x_ik (x) x_kj` on one or more
/// aligned grid families (domain grid, first-factor grid, second-factor
/// grid); the summation index runs over the inner size shared by the
/// two codomain grids.
pub(crate) fn comatrix_morphism(
    name: &str,
    dom: &PresRef,
    c1: &PresRef,
    c2: &PresRef,
    families: &[(Grid, Grid, Grid)],
) -> AlgMorphism {
    let factors = vec![c1.clone(), c2.clone()];
    let mut images: Vec<Option<TensorElem>> = vec![None; dom.alphabet.len()];
    for (d, g1, g2) in families {
        assert_eq!(g1.cols, g2.rows, "inner sizes must agree");
        assert_eq!((d.rows, d.cols), (g1.rows, g2.cols));
        for i in 1..=d.rows {
            for j in 1..=d.cols {
                let mut img = TensorElem::zero(factors.clone());
                for k in 1..=g1.cols {
                    img = img.add(&TensorElem::from_factor_polys(
                        factors.clone(),
                        &[
                            NcPoly::gen(g1.idx(i, k)),
                            NcPoly::gen(g2.idx(k, j)),
                        ],
                    ));
                }
                images[d.idx(i, j) as usize] = Some(img);
            }
        }
    }
    let images: Vec<TensorElem> = images
        .into_iter()
        .map(|o| o.expect("families must cover the alphabet"))
        .collect();
    AlgMorphism::new(name, dom.clone(), factors, images, false)
}

/// Counit morphism sending each grid generator `x_ij` to the Kronecker
/// delta of its grid coordinates.
pub(crate) fn kronecker_counit(name: &str, dom: &PresRef, grids: &[Grid]) -> AlgMorphism {
    use crate::ncalg::Presentation;
    let k = Presentation::unit();
    let mut images: Vec<Option<TensorElem>> = vec![None; dom.alphabet.len()];
    for g in grids {
        for i in 1..=g.rows {
            for j in 1..=g.cols {
                images[g.idx(i, j) as usize] = Some(if i == j {
                    TensorElem::unit(vec![k.clone()])
                } else {
                    TensorElem::zero(vec![k.clone()])
                });
            }
        }
    }
    let images: Vec<TensorElem> = images
        .into_iter()
        .map(|o| o.expect("grids must cover the alphabet"))
        .collect();
    AlgMorphism::new(name, dom.clone(), vec![k], images, false)
}

/// Images of a grid morphism read off from a computed matrix over the
/// codomain: generator `(i, j)` of `grid` goes to entry `(i, j)`.
pub(crate) fn fill_grid_images(
    images: &mut [Option<TensorElem>],
    grid: Grid,
    value: &NcMatrix,
) {
    assert_eq!((value.rows(), value.cols()), (grid.rows, grid.cols));
    for i in 1..=grid.rows {
        for j in 1..=grid.cols {
            images[grid.idx(i, j) as usize] = Some(value.entry(i - 1, j - 1).clone());
        }
    }
}

pub(crate) fn unwrap_images(images: Vec<Option<TensorElem>>) -> Vec<TensorElem> {
    images
        .into_iter()
        .map(|o| o.expect("image missing for a generator"))
        .collect()
}

/// Formats a scalar for refusal messages.
pub(crate) fn show_scalar(s: &Scalar) -> String {
    format!("{}", s)
}
