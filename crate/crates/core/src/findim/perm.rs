//! Symmetric groups, enumerated explicitly.

/// A permutation on `{0, .., n-1}` stored as its image list.
pub type Perm = Vec<usize>;

/// `S_N` with a composition table. Composition is `(a * b)(x) = a(b(x))`.
pub struct PermGroup {
    pub n: usize,
    pub elements: Vec<Perm>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl PermGroup {
    pub fn symmetric(n: usize) -> Self {
        let mut elements = vec![Vec::new()];
        for k in 0..n {
            // insert k at each position of each shorter permutation
            let mut next = Vec::with_capacity(elements.len() * (k + 1));
            for p in &elements {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            elements = next;
        }
        elements.sort();
        let index = |p: &Perm| elements.binary_search(p).unwrap();
        let order = elements.len();
        let mut table = vec![vec![0; order]; order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c: Perm = (0..n).map(|x| a[b[x]]).collect();
                table[i][j] = index(&c);
            }
        }
        let identity = index(&(0..n).collect());
        let mut inverse = vec![0; order];
        for i in 0..order {
            inverse[i] = (0..order).find(|&j| table[i][j] == identity).unwrap();
        }
        PermGroup {
            n,
            elements,
            table,
            inverse,
            identity,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_group() {
        let g = PermGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            assert_eq!(g.compose(a, g.identity()), a);
            assert_eq!(g.compose(g.identity(), a), a);
            assert_eq!(g.compose(a, g.inv(a)), g.identity());
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(
                        g.compose(g.compose(a, b), c),
                        g.compose(a, g.compose(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn composition_convention() {
        let g = PermGroup::symmetric(3);
        // a = (0 1), b = (1 2); (a*b)(2) = a(b(2)) = a(1) = 0
        let a = g.index_of(&vec![1, 0, 2]).unwrap();
        let b = g.index_of(&vec![0, 2, 1]).unwrap();
        let ab = g.compose(a, b);
        assert_eq!(g.elements[ab][2], 0);
    }
}
