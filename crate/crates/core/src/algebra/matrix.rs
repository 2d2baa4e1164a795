//! Sparse integer matrices and the Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A sparse integer matrix. Stored entries are always nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    /// `[row, col, value]` triplets in row-major order.
    triplets: Vec<(usize, usize, String)>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, BigInt)>>(
        rows: usize,
        cols: usize,
        t: I,
    ) -> Self {
        let mut m = Self::zero(rows, cols);
        for (i, j, v) in t {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(i, j), v) in &o.entries {
            by_row.entry(i).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_insert_with(BigInt::zero) += a * b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntegerMatrix {
            rows: self.rows,
            cols: o.cols,
            entries: acc,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    fn from_big_dense(d: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Self {
        let mut m = Self::zero(rows, cols);
        for (i, row) in d.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Diagonal entries `d_0, d_1, …` up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn to_json(&self) -> String {
        let j = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            triplets: self
                .entries
                .iter()
                .map(|(&(i, j), v)| (i, j, v.to_string()))
                .collect(),
        };
        serde_json::to_string(&j).expect("matrix serialisation")
    }
}

/// Result of [`smith_normal_form`]: `u · m · v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl Smith {
    /// Nonzero invariant factors, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with smallest magnitude; a pivot that fails to divide
/// the rest of the active block absorbs the offending row and the step is
/// repeated.
pub fn smith_normal_form(m: &IntegerMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut u = IntegerMatrix::identity(r).to_dense();
    let mut v = IntegerMatrix::identity(c).to_dense();

    let row_op = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        // row dst -= f * row src
        if f.is_zero() {
            return;
        }
        let (s, d) = if src < dst {
            let (lo, hi) = mat.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = mat.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= f * y;
            }
        }
    };
    let col_op = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        if f.is_zero() {
            return;
        }
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let t = f * &row[src];
                row[dst] -= t;
            }
        }
    };
    let swap_cols = |mat: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry in the active block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_op(&mut a, i, t, &q);
                row_op(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_op(&mut a, j, t, &q);
                col_op(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the remaining block
                let bad = (t + 1..r).find_map(|i| {
                    (t + 1..c)
                        .find(|&j| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t]))
                        .map(|_| i)
                });
                match bad {
                    None => break,
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        row_op(&mut a, t, i, &minus_one);
                        row_op(&mut u, t, i, &minus_one);
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut a, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    Smith {
        d: IntegerMatrix::from_big_dense(a, r, c),
        u: IntegerMatrix::from_big_dense(u, r, r),
        v: IntegerMatrix::from_big_dense(v, c, c),
    }
}

/// Invariant factors only, without transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors()
}
