//! ℤ₂-linear systems `a_j ⊕ b_k = r` over bit-packed rows.

use serde::Serialize;

/// Row-major bit matrix, each row packed into `u64` words.
#[derive(Clone, Debug, Default)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            words: cols.div_ceil(64).max(1),
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.data.len() / self.words
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Appends a row with the given columns set.
    pub fn push_row(&mut self, set: &[usize]) {
        let start = self.data.len();
        self.data.resize(start + self.words, 0);
        for &c in set {
            assert!(c < self.cols, "column {c} out of range");
            self.data[start + c / 64] ^= 1 << (c % 64);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// Rank over GF(2). Rows are reduced in insertion order against a basis
    /// kept sorted by leading (lowest set) column.
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Reduced basis as `(pivot column, row)` pairs sorted by pivot.
    fn echelon(&self) -> Vec<(usize, Vec<u64>)> {
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        for r in 0..self.rows() {
            let mut row = self.row(r).to_vec();
            for (pivot, b) in &basis {
                if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(b) {
                        *x ^= *y;
                    }
                }
            }
            if let Some(pivot) = first_set(&row) {
                let pos = basis.partition_point(|(p, _)| *p < pivot);
                basis.insert(pos, (pivot, row));
            }
        }
        basis
    }
}

fn first_set(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// One equation `a_j ⊕ b_k = rhs`, tagged with the third-qubit measurement
/// index `l` and outcome `z` it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub a: usize,
    pub b: usize,
    pub rhs: u8,
    pub provenance: (usize, u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gf2System {
    pub num_a_vars: usize,
    pub num_b_vars: usize,
    pub equations: Vec<Equation>,
}

impl Gf2System {
    pub fn new(num_a_vars: usize, num_b_vars: usize) -> Self {
        Gf2System {
            num_a_vars,
            num_b_vars,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, eq: Equation) {
        assert!(eq.a < self.num_a_vars && eq.b < self.num_b_vars, "variable index out of range");
        assert!(eq.rhs <= 1, "rhs must be a bit");
        self.equations.push(eq);
    }

    pub fn num_vars(&self) -> usize {
        self.num_a_vars + self.num_b_vars
    }

    /// Coefficient matrix Γ; columns are `a_0..a_{N-1}, b_0..b_{M-1}`.
    pub fn coefficient_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.num_vars());
        for e in &self.equations {
            m.push_row(&[e.a, self.num_a_vars + e.b]);
        }
        m
    }

    /// `(Γ | r)`, with `r` in the last column.
    pub fn augmented_matrix(&self) -> BitMatrix {
        let n = self.num_vars();
        let mut m = BitMatrix::new(n + 1);
        for e in &self.equations {
            if e.rhs == 1 {
                m.push_row(&[e.a, self.num_a_vars + e.b, n]);
            } else {
                m.push_row(&[e.a, self.num_a_vars + e.b]);
            }
        }
        m
    }

    pub fn coefficient_rank(&self) -> usize {
        self.coefficient_matrix().rank()
    }

    pub fn augmented_rank(&self) -> usize {
        self.augmented_matrix().rank()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.augmented_rank() > self.coefficient_rank()
    }

    /// A solution `(a, b)` when the system is consistent; free variables are 0.
    pub fn solve(&self) -> Option<(Vec<u8>, Vec<u8>)> {
        let n = self.num_vars();
        let mut basis = self.augmented_matrix().echelon();
        if basis.iter().any(|(p, _)| *p == n) {
            return None;
        }
        // Back-substitute from the highest pivot down.
        let mut x = vec![0u8; n];
        basis.reverse();
        for (pivot, row) in &basis {
            let bit = |c: usize| (row[c / 64] >> (c % 64) & 1) as u8;
            let mut v = bit(n);
            for c in (pivot + 1)..n {
                if bit(c) == 1 {
                    v ^= x[c];
                }
            }
            x[*pivot] = v;
        }
        let b = x.split_off(self.num_a_vars);
        Some((x, b))
    }

    pub fn is_satisfied_by(&self, a: &[u8], b: &[u8]) -> bool {
        self.equations.iter().all(|e| a[e.a] ^ b[e.b] == e.rhs)
    }
}
