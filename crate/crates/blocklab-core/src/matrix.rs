use crate::error::Error;
use crate::field::{Fe, Field};

/// Dense row-major matrix over a fixed finite field. The field is passed to
/// each operation rather than stored, so matrices stay plain data.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fe>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Fe> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Mat, f: &Field) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                let orow = o.row(k);
                let out_row = &mut out.data[i * o.cols..(i + 1) * o.cols];
                if a == 1 {
                    for (x, &b) in out_row.iter_mut().zip(orow) {
                        *x = f.add(*x, b);
                    }
                } else {
                    for (x, &b) in out_row.iter_mut().zip(orow) {
                        if b != 0 {
                            *x = f.add(*x, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(self.row(k)) {
                if b != 0 {
                    *x = f.add(*x, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn trace(&self, f: &Field) -> Fe {
        assert_eq!(self.rows, self.cols);
        let mut t = 0;
        for i in 0..self.rows {
            t = f.add(t, self.at(i, i));
        }
        t
    }

    /// Reduced row echelon form (pivots normalized to 1, cleared above and
    /// below). Returns the reduced matrix and pivot column indices.
    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let mut piv = None;
            for i in r..m.rows {
                if m.at(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            m.swap_rows(r, piv);
            let inv = f.inv(m.at(r, c));
            if inv != 1 {
                for j in c..m.cols {
                    let v = m.at(r, j);
                    m.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.at(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let t = self.at(a, j);
            self.set(a, j, self.at(b, j));
            self.set(b, j, t);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis (as rows) of the right kernel { x : A x^T = 0 }.
    pub fn kernel(&self, f: &Field) -> Mat {
        let (r, pivots) = self.rref(f);
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r.at(i, fc));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Mat::zeros(0, self.cols)
        } else {
            Mat::from_rows(rows)
        }
    }

    /// Basis (as rows) of the left kernel { v : v A = 0 }.
    pub fn left_kernel(&self, f: &Field) -> Mat {
        self.transpose().kernel(f)
    }

    /// One solution of A x^T = b^T, or None if inconsistent.
    pub fn solve(&self, b: &[Fe], f: &Field) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(i, self.cols);
        }
        Some(x)
    }

    /// One solution of x A = b, or None.
    pub fn solve_left(&self, b: &[Fe], f: &Field) -> Option<Vec<Fe>> {
        self.transpose().solve(b, f)
    }

    pub fn det(&self, f: &Field) -> Fe {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det: Fe = 1;
        for c in 0..m.cols {
            let mut piv = None;
            for i in c..m.rows {
                if m.at(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { return 0 };
            if piv != c {
                m.swap_rows(c, piv);
                det = f.neg(det);
            }
            let d = m.at(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d);
            for i in (c + 1)..m.rows {
                let factor = f.mul(m.at(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Incrementally built echelon span: the workhorse for spinning vectors and
/// accumulating images of linear maps without repeated full eliminations.
#[derive(Clone)]
pub struct RowSpan {
    ambient: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(ambient: usize) -> RowSpan {
        RowSpan { ambient, rows: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Eliminate the pivot coordinates of `v` against the stored rows.
    pub fn reduce(&self, v: &mut [Fe], f: &Field) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    /// Insert `v`; returns true (and the stored reduced row index) if the
    /// rank grew.
    pub fn insert(&mut self, mut v: Vec<Fe>, f: &Field) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v, f);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        if inv != 1 {
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Fe], f: &Field) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        w.iter().all(|&x| x == 0)
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn into_subspace(self, f: &Field) -> Subspace {
        Subspace::from_rows(&self.rows, self.ambient, f)
    }
}

/// A subspace of k^n held as a reduced-row-echelon basis, which makes
/// membership, coordinates, and comparison canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(rows: &[Vec<Fe>], ambient: usize, f: &Field) -> Subspace {
        if rows.is_empty() {
            return Subspace {
                ambient,
                basis: Mat::zeros(0, ambient),
                pivots: vec![],
            };
        }
        let m = Mat::from_rows(rows.to_vec());
        assert_eq!(m.cols, ambient);
        let (r, pivots) = m.rref(f);
        let rank = pivots.len();
        let mut basis_rows = Vec::with_capacity(rank);
        for i in 0..rank {
            basis_rows.push(r.row_vec(i));
        }
        let basis = if rank == 0 {
            Mat::zeros(0, ambient)
        } else {
            Mat::from_rows(basis_rows)
        };
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Fe], f: &Field) -> bool {
        self.residual(v, f).iter().all(|&x| x == 0)
    }

    /// `v` minus its projection onto the subspace along the pivot
    /// coordinates: the canonical coset representative modulo this subspace
    /// (zero exactly when `v` lies in the subspace).
    pub fn residual(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(self.basis.row(i)) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    /// For an rref basis these are just the entries at the pivot columns.
    pub fn coords(&self, v: &[Fe], f: &Field) -> Option<Vec<Fe>> {
        if !self.contains(v, f) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &Field) -> bool {
        (0..self.basis.rows).all(|i| other.contains(self.basis.row(i), f))
    }

    pub fn sum(&self, other: &Subspace, f: &Field) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.basis.rows {
            rows.push(self.basis.row_vec(i));
        }
        for i in 0..other.basis.rows {
            rows.push(other.basis.row_vec(i));
        }
        Subspace::from_rows(&rows, self.ambient, f)
    }

    /// Zassenhaus: rref of [A|A; B|0] leaves the intersection in the right
    /// half of rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace, f: &Field) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut rows = Vec::new();
        for i in 0..self.basis.rows {
            let mut r = vec![0; 2 * n];
            r[..n].copy_from_slice(self.basis.row(i));
            r[n..].copy_from_slice(self.basis.row(i));
            rows.push(r);
        }
        for i in 0..other.basis.rows {
            let mut r = vec![0; 2 * n];
            r[..n].copy_from_slice(other.basis.row(i));
            rows.push(r);
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        let (r, _) = Mat::from_rows(rows).rref(f);
        let mut out = Vec::new();
        for i in 0..r.rows {
            let row = r.row(i);
            if row[..n].iter().all(|&x| x == 0) && row[n..].iter().any(|&x| x != 0) {
                out.push(row[n..].to_vec());
            }
        }
        Subspace::from_rows(&out, n, f)
    }

    /// dim(V/W) for W a subspace of V; errors if W is not contained in V.
    pub fn quotient_dim(&self, w: &Subspace, f: &Field) -> Result<usize, Error> {
        if !w.is_subspace_of(self, f) {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - w.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn rank_and_kernel_over_gf2() {
        let f = gf2();
        // Circulant over GF(2): rank 2, kernel spanned by (1,1,1).
        let m = Mat::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.rows, 1);
        assert_eq!(k.row(0), &[1, 1, 1]);
    }

    #[test]
    fn rref_identity() {
        let f = Field::new(5, 1).unwrap();
        let m = Mat::from_rows(vec![vec![2, 1], vec![1, 1]]);
        let (r, pivots) = m.rref(&f);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Mat::identity(2));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Field::new(3, 1).unwrap();
        let a = Mat::from_rows(vec![vec![1, 2], vec![2, 1]]);
        let x = a.solve(&[1, 2], &f).unwrap();
        // Verify A x = b.
        let ax: Vec<Fe> = (0..2)
            .map(|i| {
                let mut s = 0;
                for j in 0..2 {
                    s = f.add(s, f.mul(a.at(i, j), x[j]));
                }
                s
            })
            .collect();
        assert_eq!(ax, vec![1, 2]);

        let sing = Mat::from_rows(vec![vec![1, 1], vec![2, 2]]);
        assert!(sing.solve(&[1, 0], &f).is_none());
    }

    #[test]
    fn matmul_and_inverse_shape() {
        let f = Field::new(2, 2).unwrap();
        let a = Mat::from_rows(vec![vec![2, 1], vec![1, 0]]);
        let b = Mat::from_rows(vec![vec![0, 1], vec![1, 2]]);
        let ab = a.mul(&b, &f);
        assert_eq!(ab.at(0, 0), f.add(f.mul(2, 0), f.mul(1, 1)));
        assert_eq!(ab.at(0, 1), f.add(f.mul(2, 1), f.mul(1, 2)));
    }

    #[test]
    fn subspace_quotient_dim() {
        let f = gf2();
        let v = Subspace::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3, &f);
        let w = Subspace::from_rows(&[vec![1, 1, 0]], 3, &f);
        assert_eq!(v.quotient_dim(&w, &f).unwrap(), 1);
        let not_sub = Subspace::from_rows(&[vec![0, 0, 1]], 3, &f);
        assert!(v.quotient_dim(&not_sub, &f).is_err());
    }

    #[test]
    fn intersect_via_zassenhaus() {
        let f = gf2();
        let a = Subspace::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3, &f);
        let b = Subspace::from_rows(&[vec![0, 1, 0], vec![0, 0, 1]], 3, &f);
        let i = a.intersect(&b, &f);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 1, 0], &f));
        // Dimension formula dim(A) + dim(B) = dim(A+B) + dim(A∩B).
        assert_eq!(a.sum(&b, &f).dim() + i.dim(), a.dim() + b.dim());
    }

    #[test]
    fn rowspan_incremental() {
        let f = gf2();
        let mut s = RowSpan::new(3);
        assert!(s.insert(vec![1, 1, 0], &f));
        assert!(s.insert(vec![0, 1, 1], &f));
        assert!(!s.insert(vec![1, 0, 1], &f)); // dependent
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1], &f));
        assert!(!s.contains(&[1, 0, 0], &f));
    }

    #[test]
    fn coords_in_rref_basis() {
        let f = Field::new(3, 1).unwrap();
        let v = Subspace::from_rows(&[vec![1, 2, 0], vec![0, 0, 1]], 3, &f);
        let c = v.coords(&[2, 1, 1], &f).unwrap();
        // Reconstruct: c[0]*row0 + c[1]*row1.
        let rec: Vec<Fe> = (0..3)
            .map(|j| {
                f.add(
                    f.mul(c[0], v.basis().at(0, j)),
                    f.mul(c[1], v.basis().at(1, j)),
                )
            })
            .collect();
        assert_eq!(rec, vec![2, 1, 1]);
        assert!(v.coords(&[1, 0, 0], &f).is_none());
    }

    #[test]
    fn det_small() {
        let f = Field::new(5, 1).unwrap();
        let m = Mat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        // det = 4 - 6 = -2 = 3 mod 5.
        assert_eq!(m.det(&f), 3);
        let sing = Mat::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(&f), 0);
    }

    #[test]
    fn rank_nullity() {
        let f = Field::new(2, 2).unwrap();
        let m = Mat::from_rows(vec![vec![1, 2, 3, 0], vec![2, 3, 1, 0], vec![3, 1, 2, 0]]);
        assert_eq!(m.rank(&f) + m.kernel(&f).rows, m.cols);
    }
}
