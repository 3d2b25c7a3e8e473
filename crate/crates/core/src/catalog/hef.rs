//! The cosovereign-type algebras `H(E,F)`, their parameter
//! isomorphisms, the Hopf-Galois system `(H(E), H(F), H(E,F), H(F,E))`,
//! the morphism to `B(G,K)` that certifies nonzero-ness, and the
//! symmetrizer / quadratic utilities.

use super::bef::bef_grid;
use super::matrix::{FieldMatrix, MatrixError};
use super::{
    comatrix_morphism, fill_grid_images, grid_names, grid_nc_matrix, kronecker_counit,
    minus_identity_relations, show_scalar, unwrap_images, CatalogSystem, Grid,
};
use crate::hg::{Bialgebra, BicomoduleAlgebra, HopfGaloisSystem};
use crate::ncalg::{AlgMorphism, Alphabet, Presentation, PresRef};
use crate::scalar::{root_of_unity, Scalar};
use num::{BigInt, BigRational, Signed, Zero};
use std::sync::Arc;

pub(crate) fn u_grid(m: usize, n: usize) -> Grid {
    Grid {
        offset: 0,
        rows: m,
        cols: n,
    }
}

pub(crate) fn v_grid(m: usize, n: usize) -> Grid {
    Grid {
        offset: m * n,
        rows: m,
        cols: n,
    }
}

/// The presentation of `H(E,F)`: generators `u_ij`, `v_ij`
/// (`1 <= i <= m`, `1 <= j <= n`) with the entrywise relations of
/// `u tv = I_m = v F tu E^{-1}` and `tv u = I_n = F tu E^{-1} v`.
pub fn build_hef(
    name: impl Into<String>,
    e: &FieldMatrix,
    f: &FieldMatrix,
) -> Result<Presentation, MatrixError> {
    let m = square_size(e)?;
    let n = square_size(f)?;
    let mut names = grid_names("u", m, n);
    names.extend(grid_names("v", m, n));
    let alphabet = Alphabet::from_names(names);
    let free: PresRef = Arc::new(Presentation::new("free", alphabet.clone(), vec![]));
    let u = grid_nc_matrix(&free, u_grid(m, n));
    let v = grid_nc_matrix(&free, v_grid(m, n));
    // F tu E^{-1}, the recurring n x m block
    let ftue = u
        .transpose()
        .scalar_mul_left(&f.to_rows())
        .scalar_mul_right(&e.inverse()?.to_rows());
    let mut relations = minus_identity_relations(&u.mat_mul(&v.transpose()));
    relations.extend(minus_identity_relations(&v.mat_mul(&ftue)));
    relations.extend(minus_identity_relations(&v.transpose().mat_mul(&u)));
    relations.extend(minus_identity_relations(&ftue.mat_mul(&v)));
    Ok(Presentation::new(name, alphabet, relations))
}

fn square_size(m: &FieldMatrix) -> Result<usize, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::SizeMismatch(format!(
            "{}x{} matrix where a square one is required",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_invertible() {
        return Err(MatrixError::Singular);
    }
    Ok(m.rows())
}

/// The candidate isomorphism `H(E,F) -> H(PEP^{-1}, QFQ^{-1})`:
/// `f(u) = tP u tQ^{-1}`, `f(v) = P^{-1} v Q`.
pub fn hef_iso_conjugate(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    p: &FieldMatrix,
    q: &FieldMatrix,
) -> Result<AlgMorphism, MatrixError> {
    let m = square_size(p)?;
    let n = square_size(q)?;
    let u = grid_nc_matrix(cod, u_grid(m, n));
    let v = grid_nc_matrix(cod, v_grid(m, n));
    let fu = u
        .scalar_mul_left(&p.transpose().to_rows())
        .scalar_mul_right(&q.inverse()?.transpose().to_rows());
    let fv = v
        .scalar_mul_left(&p.inverse()?.to_rows())
        .scalar_mul_right(&q.to_rows());
    let mut images = vec![None; dom.alphabet.len()];
    fill_grid_images(&mut images, u_grid(m, n), &fu);
    fill_grid_images(&mut images, v_grid(m, n), &fv);
    Ok(AlgMorphism::new(
        name,
        dom.clone(),
        vec![cod.clone()],
        unwrap_images(images),
        false,
    ))
}

/// The candidate isomorphism `H(E,F) -> H(tE^{-1}, tF^{-1})`:
/// `g(u) = v`, `g(v) = E u F^{-1}`.
pub fn hef_iso_transpose(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    e: &FieldMatrix,
    f: &FieldMatrix,
) -> Result<AlgMorphism, MatrixError> {
    let m = square_size(e)?;
    let n = square_size(f)?;
    let u = grid_nc_matrix(cod, u_grid(m, n));
    let v = grid_nc_matrix(cod, v_grid(m, n));
    let gv = u
        .scalar_mul_left(&e.to_rows())
        .scalar_mul_right(&f.inverse()?.to_rows());
    let mut images = vec![None; dom.alphabet.len()];
    fill_grid_images(&mut images, u_grid(m, n), &v);
    fill_grid_images(&mut images, v_grid(m, n), &gv);
    Ok(AlgMorphism::new(
        name,
        dom.clone(),
        vec![cod.clone()],
        unwrap_images(images),
        false,
    ))
}

/// The quadruple `(H(E), H(F), H(E,F), H(F,E))` with comatrix coactions
/// on both generator families and `S = phi`, `phi(u) = tv`,
/// `phi(v) = F tu E^{-1}`. The hypothesis `H(E,F) != 0` is recorded as
/// an assumption; symmetrizer-based evidence lives in [`hef_to_bef`].
pub fn build_hef_system(e: &FieldMatrix, f: &FieldMatrix) -> Result<CatalogSystem, String> {
    let m = square_size(e).map_err(|err| err.to_string())?;
    let n = square_size(f).map_err(|err| err.to_string())?;

    let a_pres: PresRef = Arc::new(build_hef("H(E)", e, e).map_err(|err| err.to_string())?);
    let b_pres: PresRef = Arc::new(build_hef("H(F)", f, f).map_err(|err| err.to_string())?);
    let z_pres: PresRef = Arc::new(build_hef("H(E,F)", e, f).map_err(|err| err.to_string())?);
    let t_pres: PresRef = Arc::new(build_hef("H(F,E)", f, e).map_err(|err| err.to_string())?);

    let both = |m: usize, n: usize, p: usize| {
        [
            (u_grid(m, n), u_grid(m, p), u_grid(p, n)),
            (v_grid(m, n), v_grid(m, p), v_grid(p, n)),
        ]
    };
    let a = Bialgebra::new(
        a_pres.clone(),
        comatrix_morphism("Delta_A", &a_pres, &a_pres, &a_pres, &both(m, m, m)),
        kronecker_counit("eps_A", &a_pres, &[u_grid(m, m), v_grid(m, m)]),
    );
    let b = Bialgebra::new(
        b_pres.clone(),
        comatrix_morphism("Delta_B", &b_pres, &b_pres, &b_pres, &both(n, n, n)),
        kronecker_counit("eps_B", &b_pres, &[u_grid(n, n), v_grid(n, n)]),
    );
    let z = BicomoduleAlgebra::new(
        z_pres.clone(),
        comatrix_morphism("alpha", &z_pres, &a_pres, &z_pres, &both(m, n, m)),
        comatrix_morphism("beta", &z_pres, &z_pres, &b_pres, &both(m, n, n)),
    );
    let gamma = comatrix_morphism("gamma", &a_pres, &z_pres, &t_pres, &both(m, m, n));
    let delta = comatrix_morphism("delta", &b_pres, &t_pres, &z_pres, &both(n, n, m));

    // phi: H(F,E) -> H(E,F)^op on the codomain generator matrices
    let u = grid_nc_matrix(&z_pres, u_grid(m, n));
    let v = grid_nc_matrix(&z_pres, v_grid(m, n));
    let phi_v = u
        .transpose()
        .scalar_mul_left(&f.to_rows())
        .scalar_mul_right(&e.inverse().map_err(|err| err.to_string())?.to_rows());
    let mut images = vec![None; t_pres.alphabet.len()];
    fill_grid_images(&mut images, u_grid(n, m), &v.transpose());
    fill_grid_images(&mut images, v_grid(n, m), &phi_v);
    let s = AlgMorphism::new(
        "S",
        t_pres.clone(),
        vec![z_pres.clone()],
        unwrap_images(images),
        true,
    );

    let system = HopfGaloisSystem::new(
        format!("hef(m={}, n={})", m, n),
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
        assumptions: vec!["H(E,F) != 0 (hypothesis of the system statement)".to_string()],
        notes: vec![],
    })
}

/// Candidate morphism `H(E,F) -> B(G,K)`, `f(u) = x`,
/// `f(v) = tG x tK^{-1}`, under the hypotheses `E = tG G^{-1}`,
/// `F = tK K^{-1}` and `tr(E) = tr(F)`; refuses when a hypothesis
/// fails. Since `x` generates `B(G,K)`, well-definedness makes the
/// morphism surjective, so `B(G,K) != 0` forces `H(E,F) != 0`.
pub fn hef_to_bef(
    name: &str,
    dom: &PresRef,
    cod: &PresRef,
    e: &FieldMatrix,
    f: &FieldMatrix,
    g: &FieldMatrix,
    k: &FieldMatrix,
) -> Result<AlgMorphism, String> {
    let m = square_size(e).map_err(|err| err.to_string())?;
    let n = square_size(f).map_err(|err| err.to_string())?;
    if !verify_symmetrizer(e, g) {
        return Err("hypothesis E = tG G^{-1} fails".to_string());
    }
    if !verify_symmetrizer(f, k) {
        return Err("hypothesis F = tK K^{-1} fails".to_string());
    }
    if e.trace() != f.trace() {
        return Err(format!(
            "hypothesis tr(E) = tr(F) fails: {} vs {}",
            show_scalar(&e.trace()),
            show_scalar(&f.trace())
        ));
    }
    let x = grid_nc_matrix(cod, bef_grid(m, n));
    let fv = x
        .scalar_mul_left(&g.transpose().to_rows())
        .scalar_mul_right(
            &k.inverse()
                .map_err(|err| err.to_string())?
                .transpose()
                .to_rows(),
        );
    let mut images = vec![None; dom.alphabet.len()];
    fill_grid_images(&mut images, u_grid(m, n), &x);
    fill_grid_images(&mut images, v_grid(m, n), &fv);
    Ok(AlgMorphism::new(
        name,
        dom.clone(),
        vec![cod.clone()],
        unwrap_images(images),
        false,
    ))
}

/// Does `K` symmetrize `F`, i.e. `F = tK K^{-1}` exactly?
pub fn verify_symmetrizer(f: &FieldMatrix, k: &FieldMatrix) -> bool {
    f.is_square()
        && k.is_square()
        && f.rows() == k.rows()
        && k.is_invertible()
        // F = tK K^{-1}  <=>  F K = tK
        && f.mul(k).sub(&k.transpose()).is_zero()
}

/// Searches for an invertible `K` with `F = tK K^{-1}`. The constraint
/// `tK - F K = 0` is linear in the entries of `K`, so the candidates
/// form the nullspace of an `n^2 x n^2` exact linear system; small
/// integer combinations of a nullspace basis are then scanned for an
/// invertible element.
pub fn find_symmetrizer(f: &FieldMatrix) -> Option<FieldMatrix> {
    if !f.is_square() {
        return None;
    }
    let n = f.rows();
    // row (i,j): entry (i,j) of tK - F K = K_ji - sum_l F_il K_lj
    let dim = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Scalar::zero(); dim];
            row[j * n + i] = &row[j * n + i] + &Scalar::one();
            for l in 0..n {
                let idx = l * n + j;
                row[idx] = &row[idx] - f.get(i, l);
            }
            rows.push(row);
        }
    }
    let basis = nullspace(&rows, dim);
    if basis.is_empty() {
        return None;
    }
    let to_matrix = |v: &[Scalar]| FieldMatrix::new(n, n, v.to_vec());
    for b in &basis {
        let k = to_matrix(b);
        if k.is_invertible() {
            return Some(k);
        }
    }
    // small integer combinations of basis pairs
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            for ca in -2i64..=2 {
                for cb in -2i64..=2 {
                    if ca == 0 && cb == 0 {
                        continue;
                    }
                    let v: Vec<Scalar> = basis[a]
                        .iter()
                        .zip(&basis[b])
                        .map(|(x, y)| &(&Scalar::int(ca) * x) + &(&Scalar::int(cb) * y))
                        .collect();
                    let k = to_matrix(&v);
                    if k.is_invertible() {
                        return Some(k);
                    }
                }
            }
        }
    }
    None
}

/// Nullspace basis of the homogeneous system given by `rows` in `dim`
/// unknowns, by exact Gaussian elimination.
fn nullspace(rows: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let mut mat: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; dim];
    let mut rank = 0usize;
    for col in 0..dim {
        let pivot = (rank..mat.len()).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let inv = mat[rank][col].inv().expect("nonzero pivot");
        for x in mat[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..mat.len() {
            if r == rank || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in 0..dim {
                let delta = &factor * &mat[rank][c];
                mat[r][c] = &mat[r][c] - &delta;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free_col in 0..dim {
        if pivot_of_col[free_col].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); dim];
        v[free_col] = Scalar::one();
        for col in 0..dim {
            if let Some(r) = pivot_of_col[col] {
                v[col] = mat[r][free_col].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// The quadratic `q^2 + b q + c` with whatever exact roots the session
/// field contains (found by rational-root testing and, in cyclotomic
/// sessions, scanning root-of-unity multiples of the candidates).
#[derive(Debug, Clone)]
pub struct Quadratic {
    /// Coefficients `(1, b, c)` of the monic quadratic.
    pub b: Scalar,
    pub c: Scalar,
    pub roots: Vec<Scalar>,
}

impl Quadratic {
    pub fn eval(&self, q: &Scalar) -> Scalar {
        &(&(q * q) + &(&self.b * q)) + &self.c
    }
}

/// Corollary 4.5 matching quadratic for `H(F)`: `q^2 - tr(F) q + 1`.
pub fn cor45_quadratic(f: &FieldMatrix) -> Quadratic {
    monic_quadratic(f.trace().neg(), Scalar::one())
}

/// The bilinear-form analog: `q^2 + tr(E tE^{-1}) q + 1`.
pub fn cor32_quadratic(e: &FieldMatrix) -> Result<Quadratic, MatrixError> {
    Ok(monic_quadratic(super::trace_invariant(e)?, Scalar::one()))
}

fn monic_quadratic(b: Scalar, c: Scalar) -> Quadratic {
    let mut roots = Vec::new();
    for cand in root_candidates(&b, &c) {
        let quad = Quadratic {
            b: b.clone(),
            c: c.clone(),
            roots: vec![],
        };
        if quad.eval(&cand).is_zero() && !roots.contains(&cand) {
            roots.push(cand);
        }
    }
    Quadratic { b, c, roots }
}

/// Exact root candidates: rational-root candidates from the cleared
/// denominators when the coefficients are rational, and root-of-unity
/// multiples of `1` in cyclotomic sessions.
fn root_candidates(b: &Scalar, c: &Scalar) -> Vec<Scalar> {
    let mut out = Vec::new();
    if let (Scalar::Rat(rb), Scalar::Rat(rc)) = (b, c) {
        // clear denominators: d q^2 + (d b) q + (d c) with integer
        // coefficients; rational roots are p/s with p | d c, s | d
        let d: BigInt = rb.denom() * rc.denom();
        let lead = d.clone();
        let constant: BigInt = (rc * BigRational::from(d.clone())).to_integer();
        for p in small_divisors(&constant) {
            for s in small_divisors(&lead) {
                let root = BigRational::new(p.clone(), s.clone());
                out.push(Scalar::from_rat(root.clone()));
                out.push(Scalar::from_rat(-root));
            }
        }
    }
    let order = b.order().or_else(|| c.order());
    if let Some(m) = order {
        for j in 0..m as i64 {
            out.push(root_of_unity(m, j));
            out.push(root_of_unity(m, j).neg());
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}
