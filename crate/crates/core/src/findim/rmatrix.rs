//! The rank-4 R-matrix attached to an AST matrix and the presentations
//! `O_{q,p}(S_mn)` it defines.

use super::ast::{blockstar, ASTMatrix};
use crate::ncalg::{Alphabet, NcPoly, Presentation, Word};
use crate::scalar::{root_of_unity, Scalar};

/// `R_{ij}^{lk}(p)`, 1-based indices in `1..=mn`.
pub struct RMatrix {
    pub m: u32,
    pub n: usize,
    entries: Vec<Scalar>,
}

impl RMatrix {
    pub fn size(&self) -> usize {
        self.m as usize * self.n
    }

    pub fn get(&self, i: usize, j: usize, l: usize, k: usize) -> &Scalar {
        let mn = self.size();
        &self.entries[(((i - 1) * mn + (j - 1)) * mn + (l - 1)) * mn + (k - 1)]
    }

    /// `R_{ij}^{lk} = R_{kl}^{ji}` on all index tuples.
    pub fn check_symmetry(&self) -> bool {
        let mn = self.size();
        for i in 1..=mn {
            for j in 1..=mn {
                for l in 1..=mn {
                    for k in 1..=mn {
                        if self.get(i, j, l, k) != self.get(k, l, j, i) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `R_{ij}^{lk}(p) = delta_{i*k*} delta_{j*l*}
///   sum_{r,s=0}^{m-1} xi^{r(i-k) + s(j-l)} p_{j*i*}^{rs}`.
pub fn rmatrix(p: &ASTMatrix) -> RMatrix {
    let m = p.m;
    let mn = m as usize * p.n;
    let mut entries = Vec::with_capacity(mn * mn * mn * mn);
    for i in 1..=mn {
        for j in 1..=mn {
            for l in 1..=mn {
                for k in 1..=mn {
                    let istar = blockstar(i, m as usize);
                    let jstar = blockstar(j, m as usize);
                    let kstar = blockstar(k, m as usize);
                    let lstar = blockstar(l, m as usize);
                    if istar != kstar || jstar != lstar {
                        entries.push(Scalar::zero());
                        continue;
                    }
                    let e = p.exponent(jstar - 1, istar - 1);
                    let mut acc = Scalar::zero();
                    for r in 0..m as i64 {
                        for s in 0..m as i64 {
                            let exp =
                                r * (i as i64 - k as i64) + s * (j as i64 - l as i64) + e * r * s;
                            acc = &acc + &root_of_unity(m, exp);
                        }
                    }
                    entries.push(acc);
                }
            }
        }
    }
    RMatrix {
        m,
        n: p.n,
        entries,
    }
}

/// Generator name for `x_ij` in an `mn x mn` family.
pub fn xname(i: usize, j: usize, mn: usize) -> String {
    if mn < 10 {
        format!("x{}{}", i, j)
    } else {
        format!("x{}_{}", i, j)
    }
}

fn xgen(i: usize, j: usize, mn: usize) -> u32 {
    let _ = mn;
    ((i - 1) * mn + (j - 1)) as u32
}

/// The presentation of `O_{q,p}(S_mn)`: the magic-unitary style
/// relations (1) plus the R-matrix exchange relations (2),
/// `sum_{k,l} R_{ij}^{lk}(p) x_{al} x_{bk} = sum_{k,l} R_{lk}^{ab}(q) x_{li} x_{kj}`,
/// with zero and duplicate relations pruned.
pub fn build_oqp(name: impl Into<String>, q: &ASTMatrix, p: &ASTMatrix) -> Presentation {
    assert_eq!((q.m, q.n), (p.m, p.n), "parameter sizes must agree");
    let mn = q.m as usize * q.n;
    let names: Vec<String> = (1..=mn)
        .flat_map(|i| (1..=mn).map(move |j| xname(i, j, mn)))
        .collect();
    let alphabet = Alphabet::from_names(names);

    let mono = |a: u32, b: u32| Word::from_letters(vec![a, b]);
    let mut relations: Vec<NcPoly> = Vec::new();
    let push = |r: NcPoly, relations: &mut Vec<NcPoly>| {
        if r.is_zero() {
            return;
        }
        let monic = {
            let (_, c) = r.leading().unwrap();
            r.scale(&c.inv().expect("nonzero leading coefficient"))
        };
        if !relations.contains(&monic) {
            relations.push(monic);
        }
    };

    // relations (1)
    for i in 1..=mn {
        for j in 1..=mn {
            for k in 1..=mn {
                let mut row = NcPoly::from_word(mono(xgen(i, j, mn), xgen(i, k, mn)));
                if j == k {
                    row.add_term(Word::gen(xgen(i, j, mn)), Scalar::int(-1));
                }
                push(row, &mut relations);
                let mut col = NcPoly::from_word(mono(xgen(j, i, mn), xgen(k, i, mn)));
                if j == k {
                    col.add_term(Word::gen(xgen(j, i, mn)), Scalar::int(-1));
                }
                push(col, &mut relations);
            }
        }
        let mut row_sum = NcPoly::constant(Scalar::int(-1));
        let mut col_sum = NcPoly::constant(Scalar::int(-1));
        for l in 1..=mn {
            row_sum.add_term(Word::gen(xgen(i, l, mn)), Scalar::one());
            col_sum.add_term(Word::gen(xgen(l, i, mn)), Scalar::one());
        }
        push(row_sum, &mut relations);
        push(col_sum, &mut relations);
    }

    // relations (2)
    let rp = rmatrix(p);
    let rq = rmatrix(q);
    for a in 1..=mn {
        for b in 1..=mn {
            for i in 1..=mn {
                for j in 1..=mn {
                    let mut rel = NcPoly::zero();
                    for k in 1..=mn {
                        for l in 1..=mn {
                            rel.add_term(
                                mono(xgen(a, l, mn), xgen(b, k, mn)),
                                rp.get(i, j, l, k).clone(),
                            );
                            rel.add_term(
                                mono(xgen(l, i, mn), xgen(k, j, mn)),
                                rq.get(l, k, a, b).neg(),
                            );
                        }
                    }
                    push(rel, &mut relations);
                }
            }
        }
    }

    Presentation::new(name, alphabet, relations)
}
