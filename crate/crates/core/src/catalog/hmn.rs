//! The free-Hopf-algebra family `H(m,n)`: level-truncated
//! presentations, comatrix morphisms, the level-shifting anti-morphism
//! `phi`, the morphism to `B(E,F)` used as nonzero evidence, and the
//! system `(H(m), H(n), H(m,n), H(n,m))`.
//!
//! The full algebra has generators `x^(alpha)_ij` for all natural
//! `alpha`; the artifact materializes levels `0..=alpha_cap`. Every
//! axiom instance only touches finitely many levels, so each check is
//! faithful; `phi` shifts levels up by one and is therefore undefined
//! on the top level, which the verifier reports as a truncation note
//! rather than a failure.

use super::bef::bef_grid;
use super::matrix::FieldMatrix;
use super::{
    comatrix_morphism, fill_grid_images, grid_nc_matrix, kronecker_counit,
    minus_identity_relations, show_scalar, unwrap_images, CatalogSystem, Grid,
};
use crate::hg::{Bialgebra, BicomoduleAlgebra, HopfGaloisSystem};
use crate::ncalg::{AlgMorphism, Alphabet, NcPoly, Presentation, PresRef, TensorElem};
use std::sync::Arc;

/// The grid of level-`alpha` generators in an `H(m,n)` alphabet.
pub(crate) fn level_grid(m: usize, n: usize, alpha: usize) -> Grid {
    Grid {
        offset: alpha * m * n,
        rows: m,
        cols: n,
    }
}

fn level_names(m: usize, n: usize, alpha_cap: usize) -> Vec<String> {
    let mut out = Vec::new();
    for a in 0..=alpha_cap {
        for i in 1..=m {
            for j in 1..=n {
                out.push(format!("x{}_{}_{}", a, i, j));
            }
        }
    }
    out
}

/// The truncated presentation of `H(m,n)`: generators `x^(alpha)_ij`
/// for `0 <= alpha <= alpha_cap` with the relations
/// `x^(alpha) t x^(alpha+1) = I_m` and `t x^(alpha+1) x^(alpha) = I_n`
/// for `0 <= alpha <= alpha_cap - 1`.
pub fn build_hmn(
    name: impl Into<String>,
    m: usize,
    n: usize,
    alpha_cap: usize,
) -> Presentation {
    assert!(m >= 1 && n >= 1 && alpha_cap >= 1);
    let alphabet = Alphabet::from_names(level_names(m, n, alpha_cap));
    let free: PresRef = Arc::new(Presentation::new("free", alphabet.clone(), vec![]));
    let mut relations = Vec::new();
    for a in 0..alpha_cap {
        let x = grid_nc_matrix(&free, level_grid(m, n, a));
        let x_next_t = grid_nc_matrix(&free, level_grid(m, n, a + 1)).transpose();
        relations.extend(minus_identity_relations(&x.mat_mul(&x_next_t)));
        relations.extend(minus_identity_relations(&x_next_t.mat_mul(&x)));
    }
    Presentation::new(name, alphabet, relations)
}

/// The comatrix morphism `delta^p_{m,n}: H(m,n) -> H(m,p) (x) H(p,n)`,
/// levelwise `x^(alpha)_ij -> sum_k x^(alpha)_ik (x) x^(alpha)_kj`.
/// All three presentations must share the truncation level.
pub fn hmn_delta(
    name: &str,
    dom: &PresRef,
    c1: &PresRef,
    c2: &PresRef,
    m: usize,
    n: usize,
    p: usize,
    alpha_cap: usize,
) -> AlgMorphism {
    let families: Vec<(Grid, Grid, Grid)> = (0..=alpha_cap)
        .map(|a| {
            (
                level_grid(m, n, a),
                level_grid(m, p, a),
                level_grid(p, n, a),
            )
        })
        .collect();
    comatrix_morphism(name, dom, c1, c2, &families)
}

/// The anti-morphism `phi: H(n,m) -> H(m,n)^op`,
/// `phi(x^(alpha)) = t x^(alpha+1)`. The codomain must carry at least
/// one more level than the domain, since the shift consumes one.
pub fn hmn_phi(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    m: usize,
    n: usize,
    dom_cap: usize,
    cod_cap: usize,
) -> Result<AlgMorphism, String> {
    if cod_cap < dom_cap + 1 {
        return Err(format!(
            "phi shifts levels up by one: domain truncated at {} needs codomain level >= {}, got {}",
            dom_cap,
            dom_cap + 1,
            cod_cap
        ));
    }
    Ok(phi_images(name, dom, cod, m, n, dom_cap, dom_cap))
}

/// `phi` on equal truncation levels: total on levels `< cap`, undefined
/// on the top level (which verifiers report as a truncation note).
pub fn hmn_phi_partial(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    m: usize,
    n: usize,
    cap: usize,
) -> AlgMorphism {
    phi_images(name, dom, cod, m, n, cap, cap.saturating_sub(1))
}

fn phi_images(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    m: usize,
    n: usize,
    dom_cap: usize,
    last_defined: usize,
) -> AlgMorphism {
    // domain H(n,m): level grids are n x m; images live in the m x n
    // grids of the codomain, transposed
    let mut images: Vec<Option<TensorElem>> = vec![None; dom.alphabet.len()];
    for a in 0..=dom_cap.min(last_defined) {
        let d = level_grid(n, m, a);
        let c = level_grid(m, n, a + 1);
        for i in 1..=n {
            for j in 1..=m {
                images[d.idx(i, j) as usize] = Some(TensorElem::from_poly(
                    cod.clone(),
                    &NcPoly::gen(c.idx(j, i)),
                ));
            }
        }
    }
    AlgMorphism::new_partial(name, dom.clone(), vec![cod.clone()], images, true)
}

/// The morphism `f: H(m,n) -> B(E,F)` of the nonzero-ness argument:
/// `f(x^(2k)) = (E^{-1} tE)^k x (F^{-1} tF)^k` and
/// `f(x^(2k+1)) = tE (E^{-1} tE)^k x (F^{-1} tF)^k tF^{-1}`, requiring
/// equal trace invariants.
pub fn hmn_to_bef(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    e: &FieldMatrix,
    f: &FieldMatrix,
    alpha_cap: usize,
) -> Result<AlgMorphism, String> {
    let m = e.rows();
    let n = f.rows();
    let inv_e = super::trace_invariant(e).map_err(|err| err.to_string())?;
    let inv_f = super::trace_invariant(f).map_err(|err| err.to_string())?;
    if inv_e != inv_f {
        return Err(format!(
            "trace invariants differ: {} vs {}",
            show_scalar(&inv_e),
            show_scalar(&inv_f)
        ));
    }
    let ce = e.inverse().map_err(|err| err.to_string())?.mul(&e.transpose());
    let cf = f.inverse().map_err(|err| err.to_string())?.mul(&f.transpose());
    let x = grid_nc_matrix(cod, bef_grid(m, n));
    let mut images: Vec<Option<TensorElem>> = vec![None; dom.alphabet.len()];
    for a in 0..=alpha_cap {
        let k = a / 2;
        let mut value = x
            .scalar_mul_left(&ce.pow(k).to_rows())
            .scalar_mul_right(&cf.pow(k).to_rows());
        if a % 2 == 1 {
            value = value
                .scalar_mul_left(&e.transpose().to_rows())
                .scalar_mul_right(
                    &f.transpose()
                        .inverse()
                        .map_err(|err| err.to_string())?
                        .to_rows(),
                );
        }
        fill_grid_images(&mut images, level_grid(m, n, a), &value);
    }
    Ok(AlgMorphism::new(
        name,
        dom.clone(),
        vec![cod.clone()],
        unwrap_images(images),
        false,
    ))
}

/// The quadruple `(H(m), H(n), H(m,n), H(n,m))`, truncated at
/// `alpha_cap`, with comatrix coactions and `S = phi` (partial at the
/// top level).
pub fn build_hmn_system(m: usize, n: usize, alpha_cap: usize) -> Result<CatalogSystem, String> {
    if m < 2 || n < 2 {
        return Err("H(m,n) systems need m, n >= 2".to_string());
    }
    if alpha_cap < 1 {
        return Err("truncation level must be at least 1".to_string());
    }
    let a_pres: PresRef = Arc::new(build_hmn("H(m)", m, m, alpha_cap));
    let b_pres: PresRef = Arc::new(build_hmn("H(n)", n, n, alpha_cap));
    let z_pres: PresRef = Arc::new(build_hmn("H(m,n)", m, n, alpha_cap));
    let t_pres: PresRef = Arc::new(build_hmn("H(n,m)", n, m, alpha_cap));

    let all_levels = |rows: usize, cols: usize| -> Vec<Grid> {
        (0..=alpha_cap).map(|a| level_grid(rows, cols, a)).collect()
    };
    let a = Bialgebra::new(
        a_pres.clone(),
        hmn_delta("Delta_A", &a_pres, &a_pres, &a_pres, m, m, m, alpha_cap),
        kronecker_counit("eps_A", &a_pres, &all_levels(m, m)),
    );
    let b = Bialgebra::new(
        b_pres.clone(),
        hmn_delta("Delta_B", &b_pres, &b_pres, &b_pres, n, n, n, alpha_cap),
        kronecker_counit("eps_B", &b_pres, &all_levels(n, n)),
    );
    let z = BicomoduleAlgebra::new(
        z_pres.clone(),
        hmn_delta("alpha", &z_pres, &a_pres, &z_pres, m, n, m, alpha_cap),
        hmn_delta("beta", &z_pres, &z_pres, &b_pres, m, n, n, alpha_cap),
    );
    let gamma = hmn_delta("gamma", &a_pres, &z_pres, &t_pres, m, m, n, alpha_cap);
    let delta = hmn_delta("delta", &b_pres, &t_pres, &z_pres, n, n, m, alpha_cap);
    let s = hmn_phi_partial("S", &t_pres, &z_pres, m, n, alpha_cap);

    let system = HopfGaloisSystem::new(
        format!("hmn(m={}, n={}, levels 0..={})", m, n, alpha_cap),
        a,
        b,
        z,
        t_pres,
        gamma,
        delta,
        s,
    );
    Ok(CatalogSystem {
        system,
        assumptions: vec![
            "H(m,n) != 0, via the surjection onto a nonzero B(E,F) (cited)".to_string(),
        ],
        notes: vec![format!(
            "levels truncated at alpha = {}; S is undefined on the top level",
            alpha_cap
        )],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn generator_and_relation_counts() {
        let pres = build_hmn("H", 2, 3, 4);
        assert_eq!(pres.alphabet.len(), 5 * 2 * 3);
        assert_eq!(pres.relations.len(), 4 * (4 + 9));
    }

    #[test]
    fn phi_cap_mismatch_is_refused() {
        let dom: PresRef = Arc::new(build_hmn("H(n,m)", 2, 2, 3));
        let cod: PresRef = Arc::new(build_hmn("H(m,n)", 2, 2, 3));
        let err = hmn_phi("phi", &dom, &cod, 2, 2, 3, 3).unwrap_err();
        assert!(err.contains("level >= 4"), "{}", err);
        let cod4: PresRef = Arc::new(build_hmn("H(m,n)", 2, 2, 4));
        assert!(hmn_phi("phi", &dom, &cod4, 2, 2, 3, 4).is_ok());
    }

    #[test]
    fn phi_partial_leaves_top_level_undefined() {
        let dom: PresRef = Arc::new(build_hmn("H(n,m)", 2, 2, 2));
        let cod: PresRef = Arc::new(build_hmn("H(m,n)", 2, 2, 2));
        let phi = hmn_phi_partial("phi", &dom, &cod, 2, 2, 2);
        assert!(phi.image(0).is_some());
        let top = level_grid(2, 2, 2).idx(1, 1);
        assert!(phi.image(top).is_none());
    }

    #[test]
    fn hmn_to_bef_identity_matrices_collapse() {
        // E = F = I2: all conjugating factors are identities, so
        // f(x^(alpha)) = x for every level
        let dom: PresRef = Arc::new(build_hmn("H(2,2)", 2, 2, 3));
        let e = FieldMatrix::identity(2);
        let cod: PresRef = Arc::new(super::super::build_bef("B", &e, &e).unwrap());
        let f = hmn_to_bef("f", &dom, &cod, &e, &e, 3).unwrap();
        for a in 0..=3usize {
            for i in 1..=2usize {
                for j in 1..=2usize {
                    let img = f.image(level_grid(2, 2, a).idx(i, j)).unwrap();
                    let expect = TensorElem::from_poly(
                        cod.clone(),
                        &NcPoly::gen(bef_grid(2, 2).idx(i, j)),
                    );
                    assert_eq!(img.sub(&expect).is_zero(), true);
                }
            }
        }
    }

    #[test]
    fn hmn_to_bef_odd_level_formula() {
        // k = 0 odd level: f(x^(1)) = tE x tF^{-1} exactly
        let e = FieldMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let f = FieldMatrix::from_int_rows(&[&[1, 0], &[1, 1]]);
        assert_eq!(
            super::super::trace_invariant(&e).unwrap(),
            super::super::trace_invariant(&f).unwrap()
        );
        let dom: PresRef = Arc::new(build_hmn("H(2,2)", 2, 2, 2));
        let cod: PresRef = Arc::new(super::super::build_bef("B", &e, &f).unwrap());
        let morf = hmn_to_bef("f", &dom, &cod, &e, &f, 2).unwrap();
        let x = grid_nc_matrix(&cod, bef_grid(2, 2));
        let expect = x
            .scalar_mul_left(&e.transpose().to_rows())
            .scalar_mul_right(&f.transpose().inverse().unwrap().to_rows());
        for i in 1..=2usize {
            for j in 1..=2usize {
                let img = morf.image(level_grid(2, 2, 1).idx(i, j)).unwrap();
                assert!(img.sub(expect.entry(i - 1, j - 1)).is_zero());
            }
        }
    }

    #[test]
    fn system_assembles_with_truncation_note() {
        let sys = build_hmn_system(2, 2, 3).unwrap();
        assert!(sys.notes.iter().any(|s| s.contains("truncated")));
        assert_eq!(sys.system.z.pres.alphabet.len(), 4 * 4);
        let _ = Scalar::one();
    }
}
