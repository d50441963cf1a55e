use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A square Cayley table over the carrier `{0, .., n-1}`, stored row-major.
///
/// Ordering is lexicographic on `(size, cells)`, which is what canonical
/// forms and deterministic output rely on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Self { n, cells }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        Self { n, cells: vec![value; n * n] }
    }

    /// Builds a table from rows, rejecting ragged input and out-of-range cells.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                cells.push(v);
            }
        }
        Ok(Self { n, cells })
    }

    /// Builds a table from a flat row-major cell vector.
    pub fn from_cells(n: usize, cells: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if cells.len() != n * n {
            return Err(Error::Malformed(format!("{} cells for a {n}x{n} table", cells.len())));
        }
        if let Some(&v) = cells.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: v, size: n });
        }
        Ok(Self { n, cells })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect()
    }

    /// Transports the table along the bijection `perm` (old label -> new label):
    /// `new(perm[a], perm[b]) = perm[old(a, b)]`.
    pub fn relabel(&self, perm: &[usize]) -> Table {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.get(a, b)];
            }
        }
        Table { n, cells }
    }

    pub fn transpose(&self) -> Table {
        Table::from_fn(self.n, |a, b| self.get(b, a))
    }
}

impl TryFrom<Vec<Vec<usize>>> for Table {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Table::from_rows(rows)
    }
}

impl From<Table> for Vec<Vec<usize>> {
    fn from(t: Table) -> Self {
        t.rows()
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
