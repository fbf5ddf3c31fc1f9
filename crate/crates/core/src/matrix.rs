//! Dense binary matrices with bit-packed rows and XOR elimination.

use crate::vector::BitVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { cols, rows }
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    /// Column `c` as a vector of length `num_rows`.
    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_positions(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.get(c)).map(|(i, _)| i),
        )
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVector::from_positions(cols.len(), cols.iter().enumerate().filter(|(_, &c)| r.get(c)).map(|(j, _)| j)))
            .collect();
        BinaryMatrix::from_rows(cols.len(), rows)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BinaryMatrix::from_rows(self.cols, rows)
    }

    /// `M · vᵀ`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        BitVector::from_positions(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.dot(v)).map(|(i, _)| i),
        )
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Reduced row echelon form in place; returns the pivot columns in row order.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.reduce_on_columns(&cols)
    }

    /// Gauss–Jordan elimination that only places pivots in `cols`, visited in
    /// the given order. Pivot rows are moved to the top; returns the pivot
    /// column of each of them.
    pub fn reduce_on_columns(&mut self, cols: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for &c in cols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(c)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Basis of `{x : M·xᵀ = 0}`.
    pub fn null_space(&self) -> BinaryMatrix {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BinaryMatrix::new(self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.rows[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push_row(v);
        }
        basis
    }

    /// Removes all-zero rows.
    pub fn drop_zero_rows(&mut self) {
        self.rows.retain(|r| !r.is_zero());
    }

    /// One line of `0`/`1` characters per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.cols + 1));
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        let cols = rows[0].len();
        BinaryMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| BitVector::from_bits(&r.chars().map(|c| c == '1').collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[test]
    fn rank_and_rref() {
        let mut a = m(&["1100", "0110", "1010", "0001"]);
        assert_eq!(a.rank(), 3);
        let pivots = a.row_reduce();
        assert_eq!(pivots, vec![0, 1, 3]);
        assert_eq!(a.to_text(), "1010\n0110\n0001\n0000\n");
    }

    #[test]
    fn restricted_pivots() {
        let mut a = m(&["1100", "0110"]);
        let pivots = a.reduce_on_columns(&[2, 3]);
        assert_eq!(pivots, vec![2]);
        assert_eq!(a.row(0).to_bit_string(), "0110");
    }

    #[test]
    fn mul_and_select() {
        let a = m(&["1101", "0111"]);
        let v = BitVector::from_bits(&[true, true, false, false]);
        assert_eq!(a.mul_vec(&v).to_bit_string(), "01");
        assert_eq!(a.select_columns(&[3, 0]).to_text(), "11\n10\n");
        assert_eq!(a.column(1).to_bit_string(), "11");
        assert_eq!(a.stack(&a).rank(), 2);
    }
}
