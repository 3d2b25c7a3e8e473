//! The function algebra on a symmetric group, its coordinate generators
//! `x_ij`, the abelian subgroup `H = (Z/mZ)^n` of `S_mn` generated by the
//! block `m`-cycles, and the surjection `pi` onto its group algebra.

use super::algebra::{vec_basis, vec_zero, FinDimAlgebra, FinDimBialgebra, Vect};
use super::ast::blockstar;
use super::perm::{Perm, PermGroup};
use crate::scalar::{root_of_unity, Scalar};

/// Which incidence the coordinate function records. The paper never
/// fixes it; `resolve_convention` picks the one consistent with the
/// displayed formulas (see the open-question note in `pi_morphism`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XConvention {
    /// `x_ij(g) = [g(j) = i]`
    Row,
    /// `x_ij(g) = [g(i) = j]`
    Column,
}

/// `O(G)`: basis of delta functions `e_g`, pointwise product, and the
/// coalgebra structure dual to the group law.
pub fn build_function_algebra(g: &PermGroup) -> FinDimBialgebra {
    let order = g.order();
    let labels: Vec<String> = g
        .elements
        .iter()
        .map(|p| {
            let imgs: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
            format!("e[{}]", imgs.join(" "))
        })
        .collect();
    let mut mul = vec![vec![Vec::new(); order]; order];
    for (i, row) in mul.iter_mut().enumerate() {
        row[i] = vec![(i, Scalar::one())];
    }
    let unit = vec![Scalar::one(); order];
    let alg = FinDimAlgebra::new(labels, mul, unit).expect("function algebra axioms");

    let mut comul = vec![Vec::new(); order];
    for a in 0..order {
        for b in 0..order {
            comul[g.compose(a, b)].push((a, b, Scalar::one()));
        }
    }
    let counit: Vec<Scalar> = (0..order)
        .map(|i| {
            if i == g.identity() {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let antipode: Vec<Vect> = (0..order).map(|i| vec_basis(order, g.inv(i))).collect();
    FinDimBialgebra::new(alg, comul, counit, Some(antipode)).expect("function bialgebra axioms")
}

/// The coordinate generator `x_ij` (1-based indices) as an element of
/// the function algebra: the sum of `e_g` over matching permutations.
pub fn x_generator(g: &PermGroup, i: usize, j: usize, convention: XConvention) -> Vect {
    assert!(i >= 1 && i <= g.n && j >= 1 && j <= g.n);
    let mut v = vec_zero(g.order());
    for (idx, p) in g.elements.iter().enumerate() {
        let hit = match convention {
            XConvention::Row => p[j - 1] == i - 1,
            XConvention::Column => p[i - 1] == j - 1,
        };
        if hit {
            v[idx] = Scalar::one();
        }
    }
    v
}

/// The group algebra of `H = (Z/mZ)^n` together with the embedding of
/// its generators `t_i` as block `m`-cycles in `S_mn`.
pub struct HGroup {
    pub m: u32,
    pub n: usize,
    pub bi: FinDimBialgebra,
    /// Exponent vector of each basis element, in basis order.
    pub exps: Vec<Vec<i64>>,
}

impl HGroup {
    pub fn index_of_exp(&self, a: &[i64]) -> usize {
        let m = self.m as i64;
        let mut idx = 0usize;
        for &c in a {
            idx = idx * self.m as usize + c.rem_euclid(m) as usize;
        }
        idx
    }

    /// `t_i` (1-based) as the cycle `(m(i-1)+1, .., mi)` of `S_mn`.
    pub fn t_perm(&self, i: usize) -> Perm {
        let m = self.m as usize;
        let mn = m * self.n;
        let mut p: Perm = (0..mn).collect();
        for s in 0..m {
            p[m * (i - 1) + s] = m * (i - 1) + (s + 1) % m;
        }
        p
    }

    /// `t^a` as a permutation of `S_mn`.
    pub fn embed_exp(&self, a: &[i64]) -> Perm {
        let m = self.m as usize;
        let mn = m * self.n;
        (0..mn)
            .map(|x| {
                let block = x / m;
                let shift = a[block].rem_euclid(self.m as i64) as usize;
                block * m + (x % m + shift) % m
            })
            .collect()
    }
}

pub fn build_group_algebra_h(m: u32, n: usize) -> HGroup {
    let size = (m as usize).pow(n as u32);
    let mut exps: Vec<Vec<i64>> = Vec::with_capacity(size);
    let mut cur = vec![0i64; n];
    loop {
        exps.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < m as i64 {
                break;
            }
            cur[i] = 0;
        }
        if cur.iter().all(|&c| c == 0) {
            break;
        }
    }
    let labels: Vec<String> = exps
        .iter()
        .map(|a| {
            let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            format!("t^({})", parts.join(","))
        })
        .collect();
    let index = |a: &[i64]| {
        let mut idx = 0usize;
        for &c in a {
            idx = idx * m as usize + c.rem_euclid(m as i64) as usize;
        }
        idx
    };
    let mut mul = vec![vec![Vec::new(); size]; size];
    for (i, a) in exps.iter().enumerate() {
        for (j, b) in exps.iter().enumerate() {
            let sum: Vec<i64> = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x + y).rem_euclid(m as i64))
                .collect();
            mul[i][j] = vec![(index(&sum), Scalar::one())];
        }
    }
    let unit = vec_basis(size, 0);
    let alg = FinDimAlgebra::new(labels, mul, unit).expect("group algebra axioms");
    let comul = (0..size).map(|i| vec![(i, i, Scalar::one())]).collect();
    let counit = vec![Scalar::one(); size];
    let antipode: Vec<Vect> = exps
        .iter()
        .map(|a| {
            let neg: Vec<i64> = a.iter().map(|c| (-c).rem_euclid(m as i64)).collect();
            vec_basis(size, index(&neg))
        })
        .collect();
    let bi =
        FinDimBialgebra::new(alg, comul, counit, Some(antipode)).expect("group bialgebra axioms");
    HGroup { m, n, bi, exps }
}

/// The Hopf algebra surjection `pi: O(S_mn) -> k[H]`.
///
/// At basis level it is restriction of functions to `H` followed by the
/// Fourier identification of `O(H)` with `k[H]`:
/// `pi(e_{t^a}) = m^{-n} sum_b xi^{-<a,b>} t^b` and `pi(e_g) = 0` off `H`.
/// On the coordinate generators this reproduces the closed form
/// `pi(x_ij) = (delta_{i*j*}/m) sum_k xi^{k(j-i)} t_{i*}^k`.
pub struct PiMorphism {
    pub convention: XConvention,
    /// Image of each `e_g`, as a vector in `k[H]`.
    pub basis_images: Vec<Vect>,
    /// Image of `x_ij` by the closed form, indexed `[i-1][j-1]`.
    pub x_images: Vec<Vec<Vect>>,
}

pub fn pi_morphism(g: &PermGroup, h: &HGroup, convention: XConvention) -> PiMorphism {
    let m = h.m;
    let n = h.n;
    let mn = m as usize * n;
    assert_eq!(g.n, mn);
    let hsize = h.bi.dim();

    let mut basis_images = vec![vec_zero(hsize); g.order()];
    let inv_order = Scalar::rational(1, hsize as i64);
    for a in &h.exps {
        let gi = g.index_of(&h.embed_exp(a)).expect("H embeds in S_mn");
        let mut img = vec_zero(hsize);
        for (bidx, b) in h.exps.iter().enumerate() {
            let pairing: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            img[bidx] = &root_of_unity(m, -pairing) * &inv_order;
        }
        basis_images[gi] = img;
    }

    let mut x_images = vec![vec![vec_zero(hsize); mn]; mn];
    let inv_m = Scalar::rational(1, m as i64);
    for i in 1..=mn {
        for j in 1..=mn {
            if blockstar(i, m as usize) != blockstar(j, m as usize) {
                continue;
            }
            let block = blockstar(i, m as usize);
            let mut img = vec_zero(hsize);
            for k in 0..m as i64 {
                let mut exp = vec![0i64; n];
                exp[block - 1] = k;
                let idx = h.index_of_exp(&exp);
                img[idx] = &img[idx] + &(&root_of_unity(m, k * (j as i64 - i as i64)) * &inv_m);
            }
            x_images[i - 1][j - 1] = img;
        }
    }

    PiMorphism {
        convention,
        basis_images,
        x_images,
    }
}

impl PiMorphism {
    pub fn apply(&self, v: &Vect) -> Vect {
        let hsize = self.x_images[0][0].len();
        let mut out = vec_zero(hsize);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in self.basis_images[i].iter().enumerate() {
                out[k] = &out[k] + &(c * d);
            }
        }
        out
    }

    /// Full verification: the closed-form generator images match the
    /// basis-level map under the stated convention, the map is an
    /// algebra morphism (all basis pairs + unit), and a coalgebra
    /// morphism (all basis elements + all `x_ij` comatrix identities).
    /// Returns the list of violations (empty = verified).
    pub fn verify(&self, func: &FinDimBialgebra, g: &PermGroup, h: &HGroup) -> Vec<String> {
        let mut bad = Vec::new();
        let mn = g.n;
        let hsize = h.bi.dim();

        for i in 1..=mn {
            for j in 1..=mn {
                let via_basis = self.apply(&x_generator(g, i, j, self.convention));
                if via_basis != self.x_images[i - 1][j - 1] {
                    bad.push(format!("closed form of pi(x_{}{}) mismatch", i, j));
                }
            }
        }

        // algebra morphism on all basis pairs, and pi(1) = 1
        for a in 0..func.dim() {
            for b in 0..func.dim() {
                let lhs = self.apply(&func.alg.mul_vec(
                    &vec_basis(func.dim(), a),
                    &vec_basis(func.dim(), b),
                ));
                let rhs = h
                    .bi
                    .alg
                    .mul_vec(&self.basis_images[a], &self.basis_images[b]);
                if lhs != rhs {
                    bad.push(format!("pi not multiplicative at basis pair ({}, {})", a, b));
                }
            }
        }
        if self.apply(&func.alg.unit) != h.bi.alg.unit {
            bad.push("pi(1) != 1".to_string());
        }

        // coalgebra morphism on every basis element
        for i in 0..func.dim() {
            let mut lhs: std::collections::HashMap<(usize, usize), Scalar> = Default::default();
            for (k, c) in self.basis_images[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (a, b, d) in h.bi.comul_basis(k) {
                    let e = lhs.entry((*a, *b)).or_insert_with(Scalar::zero);
                    *e = &*e + &(c * d);
                }
            }
            let mut rhs: std::collections::HashMap<(usize, usize), Scalar> = Default::default();
            for (a, b, c) in func.comul_basis(i) {
                for (x, cx) in self.basis_images[*a].iter().enumerate() {
                    if cx.is_zero() {
                        continue;
                    }
                    for (y, cy) in self.basis_images[*b].iter().enumerate() {
                        if cy.is_zero() {
                            continue;
                        }
                        let e = rhs.entry((x, y)).or_insert_with(Scalar::zero);
                        *e = &*e + &(&(c * cx) * cy);
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                bad.push(format!("pi not comultiplicative at basis {}", i));
            }
        }

        // comatrix identity on the generators:
        // Delta_H(pi(x_ij)) = sum_k pi(x_ik) (x) pi(x_kj)
        for i in 1..=mn {
            for j in 1..=mn {
                let mut lhs: std::collections::HashMap<(usize, usize), Scalar> =
                    Default::default();
                for (k, c) in self.x_images[i - 1][j - 1].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (a, b, d) in h.bi.comul_basis(k) {
                        let e = lhs.entry((*a, *b)).or_insert_with(Scalar::zero);
                        *e = &*e + &(c * d);
                    }
                }
                let mut rhs: std::collections::HashMap<(usize, usize), Scalar> =
                    Default::default();
                for k in 1..=mn {
                    for (x, cx) in self.x_images[i - 1][k - 1].iter().enumerate() {
                        if cx.is_zero() {
                            continue;
                        }
                        for (y, cy) in self.x_images[k - 1][j - 1].iter().enumerate() {
                            if cy.is_zero() {
                                continue;
                            }
                            let e = rhs.entry((x, y)).or_insert_with(Scalar::zero);
                            *e = &*e + &(cx * cy);
                        }
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    bad.push(format!("comatrix identity fails for pi(x_{}{})", i, j));
                }
            }
        }
        let _ = hsize;
        bad
    }
}

/// Brute-forces the evaluation convention on the given sizes: the one
/// under which the basis-level restriction map reproduces the displayed
/// generator formula and all morphism checks pass. The paper leaves the
/// convention implicit; with composition `(a*b)(x) = a(b(x))` exactly one
/// convention survives.
pub fn resolve_convention(m: u32, n: usize) -> Result<XConvention, String> {
    let g = PermGroup::symmetric(m as usize * n);
    let func = build_function_algebra(&g);
    let h = build_group_algebra_h(m, n);
    for convention in [XConvention::Row, XConvention::Column] {
        let pi = pi_morphism(&g, &h, convention);
        if pi.verify(&func, &g, &h).is_empty() {
            return Ok(convention);
        }
    }
    Err("no evaluation convention satisfies the displayed formulas".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_function_algebra() {
        let g = PermGroup::symmetric(2);
        let bi = build_function_algebra(&g);
        assert_eq!(bi.dim(), 2);
        // Delta(e_id) = e_id (x) e_id + e_t (x) e_t
        let id = g.identity();
        let row = bi.comul_basis(id);
        assert_eq!(row.len(), 2);
        assert!(row.iter().any(|(a, b, _)| *a == id && *b == id));
        assert!(row.iter().any(|(a, b, _)| *a != id && *b != id));
    }

    #[test]
    fn x_row_relations_hold() {
        // x_ij x_ik = delta_jk x_ij and the row/column sums are 1
        let g = PermGroup::symmetric(3);
        let bi = build_function_algebra(&g);
        for conv in [XConvention::Row, XConvention::Column] {
            for i in 1..=3 {
                let mut row_sum = vec_zero(g.order());
                let mut col_sum = vec_zero(g.order());
                for l in 1..=3 {
                    for (a, b) in row_sum
                        .iter_mut()
                        .zip(&x_generator(&g, i, l, conv))
                    {
                        *a = &*a + b;
                    }
                    for (a, b) in col_sum
                        .iter_mut()
                        .zip(&x_generator(&g, l, i, conv))
                    {
                        *a = &*a + b;
                    }
                }
                assert_eq!(row_sum, bi.alg.unit);
                assert_eq!(col_sum, bi.alg.unit);
                for j in 1..=3 {
                    for k in 1..=3 {
                        let prod = bi.alg.mul_vec(
                            &x_generator(&g, i, j, conv),
                            &x_generator(&g, i, k, conv),
                        );
                        let expect = if j == k {
                            x_generator(&g, i, j, conv)
                        } else {
                            vec_zero(g.order())
                        };
                        assert_eq!(prod, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn s2_x11_is_e_id() {
        let g = PermGroup::symmetric(2);
        let x11 = x_generator(&g, 1, 1, XConvention::Row);
        assert_eq!(x11, vec_basis(2, g.identity()));
    }

    #[test]
    fn h_embedding_cycles() {
        let h = build_group_algebra_h(2, 2);
        assert_eq!(h.bi.dim(), 4);
        // t_1 = (1 2), t_2 = (3 4) in S_4 (0-based images)
        assert_eq!(h.t_perm(1), vec![1, 0, 2, 3]);
        assert_eq!(h.t_perm(2), vec![0, 1, 3, 2]);
        // t_i^m = identity
        assert_eq!(h.embed_exp(&[2, 0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn pi_small_case_m2_n1() {
        // pi(x_11) = (1 + t)/2 and pi(x_12) = (1 - t)/2
        let g = PermGroup::symmetric(2);
        let h = build_group_algebra_h(2, 1);
        let pi = pi_morphism(&g, &h, XConvention::Row);
        let half = Scalar::rational(1, 2);
        let neg_half = Scalar::rational(-1, 2);
        assert_eq!(pi.x_images[0][0], vec![half.clone(), half.clone()]);
        assert_eq!(pi.x_images[0][1], vec![half, neg_half]);
    }

    #[test]
    fn convention_resolves_to_row() {
        assert_eq!(resolve_convention(2, 2).unwrap(), XConvention::Row);
    }

    #[test]
    fn pi_verifies_for_s4() {
        let g = PermGroup::symmetric(4);
        let func = build_function_algebra(&g);
        let h = build_group_algebra_h(2, 2);
        let pi = pi_morphism(&g, &h, XConvention::Row);
        let bad = pi.verify(&func, &g, &h);
        assert!(bad.is_empty(), "{:?}", bad);
    }
}
