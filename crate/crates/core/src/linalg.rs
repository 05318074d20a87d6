//! Exact linear algebra, generic over the scalar type: dense routines plus
//! sparse symmetric elimination for large graph-shaped matrices.
//!
//! The routines only need the algebraic structure they actually use:
//! fraction-free elimination needs an integral domain with exact division,
//! solving needs a field, Smith normal form needs a Euclidean domain.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    /// Builds a matrix from row-major data.
    ///
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Borrowed view of row `i`.
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Applies `f` entrywise.
    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).take(self.rows).collect()
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Submatrix on the given row and column indices (in that order).
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let data = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self[(i, j)].clone())
            .collect();
        Self::new(idx.len(), idx.len(), data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
///
/// Every division performed is exact in an integral domain, so this is
/// correct for integers as well as for any field.
pub fn det_bareiss<T: Clone + Num>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        T::zero() - d
    } else {
        d
    }
}

/// All leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
///
/// Bareiss elimination without pivoting produces them as its pivots; once a
/// zero pivot appears the remaining minors are evaluated directly.
pub fn leading_principal_minors<T: Clone + Num>(m: &Matrix<T>) -> Vec<T> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.to_rows();
    let mut minors = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            minors.push(T::zero());
            for s in k + 2..=n {
                let idx: Vec<usize> = (0..s).collect();
                minors.push(det_bareiss(&m.principal_submatrix(&idx)));
            }
            return minors;
        }
        minors.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    minors
}

/// Negative definiteness of a symmetric matrix via the signs of its leading
/// principal minors: the k-th minor must have sign `(-1)^k`.
pub fn is_negative_definite<T: Clone + Num + Signed>(m: &Matrix<T>) -> bool {
    m.is_symmetric()
        && leading_principal_minors(m)
            .iter()
            .enumerate()
            .all(|(k, minor)| if k % 2 == 0 { minor.is_negative() } else { minor.is_positive() })
}

/// Exact determinant of a matrix of fractions.
///
/// Each row is scaled by the lcm of its denominators, the resulting integer
/// matrix goes through [`det_bareiss`], and the scale factors are divided
/// back out.
pub fn det_ratio<T: Clone + Integer>(m: &Matrix<Ratio<T>>) -> Ratio<T> {
    assert!(m.is_square());
    let mut scale = T::one();
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = row.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
        data.extend(row.iter().map(|x| x.numer().clone() * (l.clone() / x.denom().clone())));
        scale = scale * l;
    }
    let int_det = det_bareiss(&Matrix::new(m.rows(), m.cols(), data));
    Ratio::new(int_det, scale)
}

/// Solves `A x = b` over a field by Gauss-Jordan elimination.
/// Returns `None` when `A` is singular.
pub fn solve<T: Clone + Num>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert!(a.is_square() && b.len() == a.rows());
    let n = a.rows();
    let mut m: Vec<Vec<T>> = a
        .to_rows()
        .into_iter()
        .zip(b)
        .map(|(mut row, bi)| {
            row.push(bi.clone());
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        let pivot = m[k][k].clone();
        for x in m[k][k..].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let v = m[i][j].clone() - f.clone() * m[k][j].clone();
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Diagonal of the Smith normal form of an integer-like matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm<T> {
    /// `min(rows, cols)` non-negative entries, each dividing the next
    /// nonzero one; zeros come last.
    pub diagonal: Vec<T>,
}

impl<T: Clone + Integer> SmithNormalForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero invariant factors different from one.
    pub fn torsion(&self) -> Vec<T> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form by unimodular row and column operations, always
/// pivoting on an entry of smallest magnitude.
pub fn smith_normal_form<T: Clone + Integer + Signed>(m: &Matrix<T>) -> SmithNormalForm<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let size = r.min(c);
    for t in 0..size {
        let Some((pi, pj)) = smallest_nonzero(&a, t, r, c) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..c {
                        let v = a[i][j].clone() - q.clone() * a[t][j].clone();
                        a[i][j] = v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = row[j].clone() - q.clone() * row[t].clone();
                        row[j] = v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let best_row = (t + 1..r)
                    .filter(|&i| !a[i][t].is_zero())
                    .min_by(|&x, &y| a[x][t].abs().cmp(&a[y][t].abs()));
                let best_col = (t + 1..c)
                    .filter(|&j| !a[t][j].is_zero())
                    .min_by(|&x, &y| a[t][x].abs().cmp(&a[t][y].abs()));
                let row_val = best_row.map(|i| a[i][t].abs());
                let col_val = best_col.map(|j| a[t][j].abs());
                match (row_val, col_val) {
                    (Some(rv), Some(cv)) if cv < rv => swap_cols(&mut a, t, best_col.unwrap()),
                    (Some(_), _) => a.swap(t, best_row.unwrap()),
                    (None, Some(_)) => swap_cols(&mut a, t, best_col.unwrap()),
                    (None, None) => unreachable!("unclean pivot column without entries"),
                }
                continue;
            }
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !(a[i][j].clone() % a[t][t].clone()).is_zero())
            });
            match offender {
                Some(i) => {
                    for j in t..c {
                        let v = a[t][j].clone() + a[i][j].clone();
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
    }
    SmithNormalForm {
        diagonal: (0..size).map(|i| a[i][i].abs()).collect(),
    }
}

fn smallest_nonzero<T: Clone + Integer + Signed>(
    a: &[Vec<T>],
    t: usize,
    r: usize,
    c: usize,
) -> Option<(usize, usize)> {
    (t..r)
        .flat_map(|i| (t..c).map(move |j| (i, j)))
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
}

fn swap_cols<T>(a: &mut [Vec<T>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// Symmetric matrix stored as one map of nonzero entries per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSymmetric<T> {
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Clone + Num> SparseSymmetric<T> {
    pub fn new(n: usize) -> Self {
        Self { rows: vec![BTreeMap::new(); n] }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `v` at `(i, j)` and, off the diagonal, at `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        add_entry(&mut self.rows[i], j, v.clone());
        if i != j {
            add_entry(&mut self.rows[j], i, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        let mut s = Self::new(m.rows());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    s.rows[i].insert(j, m[(i, j)].clone());
                }
            }
        }
        s
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.len(), self.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn map<U: Clone + Num>(&self, mut f: impl FnMut(&T) -> U) -> SparseSymmetric<U> {
        SparseSymmetric {
            rows: self.rows.iter().map(|r| r.iter().map(|(&j, v)| (j, f(v))).collect()).collect(),
        }
    }

    /// Principal submatrix on `idx`, reindexed in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let rows = idx
            .iter()
            .map(|&i| {
                self.rows[i]
                    .iter()
                    .filter_map(|(j, v)| pos.get(j).map(|&k| (k, v.clone())))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Symmetric Gaussian elimination in minimum-degree order, which keeps
    /// tree-like matrices sparse. `None` when a zero pivot is met.
    pub fn eliminate(&self) -> Option<Elimination<T>> {
        let mut rows = self.rows.clone();
        let n = rows.len();
        let mut alive = vec![true; n];
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..n).map(|v| Reverse((rows[v].len(), v))).collect();
        let mut steps = Vec::with_capacity(n);
        while let Some(Reverse((deg, v))) = heap.pop() {
            if !alive[v] || deg != rows[v].len() {
                continue;
            }
            alive[v] = false;
            let mut row = std::mem::take(&mut rows[v]);
            let pivot = row.remove(&v).filter(|p| !p.is_zero())?;
            let entries: Vec<(usize, T)> = row.into_iter().collect();
            for (i, _) in &entries {
                rows[*i].remove(&v);
            }
            for (i, ai) in &entries {
                let f = ai.clone() / pivot.clone();
                for (j, aj) in &entries {
                    add_entry(&mut rows[*i], *j, T::zero() - f.clone() * aj.clone());
                }
            }
            for (i, _) in &entries {
                heap.push(Reverse((rows[*i].len(), *i)));
            }
            steps.push((v, pivot, entries));
        }
        Some(Elimination { steps })
    }
}

fn add_entry<T: Clone + Num>(row: &mut BTreeMap<usize, T>, j: usize, v: T) {
    let sum = row.remove(&j).map_or(v.clone(), |x| x + v);
    if !sum.is_zero() {
        row.insert(j, sum);
    }
}

/// Record of a symmetric elimination: for every eliminated index its pivot
/// and its remaining row at that moment.
#[derive(Clone, Debug)]
pub struct Elimination<T> {
    steps: Vec<Step<T>>,
}

/// Eliminated index, its pivot and its off-diagonal row.
type Step<T> = (usize, T, Vec<(usize, T)>);

impl<T: Clone + Num> Elimination<T> {
    pub fn pivots(&self) -> impl Iterator<Item = &T> {
        self.steps.iter().map(|(_, p, _)| p)
    }

    pub fn det(&self) -> T {
        self.pivots().fold(T::one(), |acc, p| acc * p.clone())
    }

    /// Solves `A x = b` with the recorded factorization.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut y = b.to_vec();
        for (v, p, entries) in &self.steps {
            let f = y[*v].clone() / p.clone();
            for (i, a) in entries {
                y[*i] = y[*i].clone() - a.clone() * f.clone();
            }
        }
        let mut x = vec![T::zero(); b.len()];
        for (v, p, entries) in self.steps.iter().rev() {
            let s = entries
                .iter()
                .fold(y[*v].clone(), |acc, (j, a)| acc - a.clone() * x[*j].clone());
            x[*v] = s / p.clone();
        }
        x
    }
}

impl<T: Clone + Num + Signed> Elimination<T> {
    /// Sylvester's criterion in the elimination order.
    pub fn is_negative_definite(&self) -> bool {
        self.pivots().all(Signed::is_negative)
    }
}

impl<T: Clone + Integer + Signed> SparseSymmetric<T> {
    /// Smith normal form after removing unit pivots one at a time, choosing
    /// the pivot with the least fill-in; only the remainder is reduced
    /// densely.
    pub fn smith_normal_form(&self) -> SmithNormalForm<T> {
        let n = self.len();
        let mut rows = self.rows.clone();
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                cols[j].insert(i);
            }
        }
        let (mut row_alive, mut col_alive) = (vec![true; n], vec![true; n]);
        let cost = |rows: &[BTreeMap<usize, T>], cols: &[BTreeSet<usize>], r: usize, c: usize| {
            (rows[r].len() - 1) * (cols[c].len() - 1)
        };
        let mut heap = BinaryHeap::new();
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                if v.abs().is_one() {
                    heap.push(Reverse((cost(&rows, &cols, r, c), r, c)));
                }
            }
        }
        let mut units = 0;
        while let Some(Reverse((old, r, c))) = heap.pop() {
            if !row_alive[r] || !col_alive[c] || !rows[r].get(&c).is_some_and(|v| v.abs().is_one()) {
                continue;
            }
            let now = cost(&rows, &cols, r, c);
            if now > old {
                heap.push(Reverse((now, r, c)));
                continue;
            }
            let unit = rows[r][&c].clone();
            let pivot_row = rows[r].clone();
            let touched: Vec<usize> = cols[c].iter().copied().filter(|&x| x != r).collect();
            for &r2 in &touched {
                let f = rows[r2][&c].clone() * unit.clone();
                for (&j, v) in &pivot_row {
                    let before = rows[r2].contains_key(&j);
                    add_entry(&mut rows[r2], j, T::zero() - f.clone() * v.clone());
                    match (before, rows[r2].contains_key(&j)) {
                        (false, true) => {
                            cols[j].insert(r2);
                        }
                        (true, false) => {
                            cols[j].remove(&r2);
                        }
                        _ => {}
                    }
                }
            }
            for &j in pivot_row.keys() {
                cols[j].remove(&r);
            }
            for &r2 in &touched {
                for (&j, v) in &rows[r2] {
                    if v.abs().is_one() && j != c {
                        heap.push(Reverse((cost(&rows, &cols, r2, j), r2, j)));
                    }
                }
            }
            rows[r].clear();
            row_alive[r] = false;
            col_alive[c] = false;
            units += 1;
        }
        let keep_r: Vec<usize> = (0..n).filter(|&r| row_alive[r]).collect();
        let keep_c: Vec<usize> = (0..n).filter(|&c| col_alive[c]).collect();
        let dense = Matrix::from_rows(
            keep_r
                .iter()
                .map(|&r| keep_c.iter().map(|c| rows[r].get(c).cloned().unwrap_or_else(T::zero)).collect())
                .collect(),
        );
        let rest = if keep_r.is_empty() { Vec::new() } else { smith_normal_form(&dense).diagonal };
        let mut diagonal = vec![T::one(); units];
        diagonal.extend(rest);
        SmithNormalForm { diagonal }
    }
}
