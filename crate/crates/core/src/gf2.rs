//! Dense linear systems over GF(2) with bit-packed rows.

/// A system `A x = b` over GF(2). Each row stores its coefficients packed
/// into 64-bit words, with the right-hand side kept separately.
#[derive(Debug, Clone)]
pub struct Gf2System {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
}

impl Gf2System {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            words: cols.div_ceil(64).max(1),
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds the equation `sum_{i in vars} x_i = rhs`. Repeated variables cancel.
    pub fn push_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words];
        for &v in vars {
            assert!(v < self.cols, "variable {v} out of range");
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn bit(row: &[u64], c: usize) -> bool {
        row[c / 64] >> (c % 64) & 1 == 1
    }

    /// Gauss-Jordan elimination. Returns a solution with every free variable
    /// set to zero, or `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| Self::bit(&rows[i], c)) else {
                continue;
            };
            rows.swap(r, p);
            rhs.swap(r, p);
            for i in 0..rows.len() {
                if i != r && Self::bit(&rows[i], c) {
                    let (src, dst) = if i < r {
                        let (lo, hi) = rows.split_at_mut(r);
                        (&hi[0], &mut lo[i])
                    } else {
                        let (lo, hi) = rows.split_at_mut(i);
                        (&lo[r], &mut hi[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d ^= *s;
                    }
                    rhs[i] ^= rhs[r];
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        // Zero rows with a nonzero right-hand side mean 0 = 1.
        if rhs[r..].iter().any(|&b| b) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rhs[i];
        }
        Some(x)
    }
}
