#![allow(dead_code)]

use trusslab::Table;

/// Bracket `a - b + c` computed directly from a group table.
pub struct NaiveHeap {
    pub n: usize,
    add: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl NaiveHeap {
    pub fn new(add: &Table) -> Self {
        let n = add.size();
        let rows = add.rows();
        let e = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x)).expect("identity");
        let inv = (0..n).map(|a| (0..n).find(|&b| rows[a][b] == e).expect("inverse")).collect();
        Self { n, add: rows, inv }
    }

    pub fn bracket(&self, a: usize, b: usize, c: usize) -> usize {
        self.add[self.add[a][self.inv[b]]][c]
    }
}

/// Associativity and full distributivity over every quadruple.
pub fn naive_is_truss(heap: &NaiveHeap, mul: &Table) -> bool {
    let n = heap.n;
    let m = |a: usize, b: usize| mul.get(a, b);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return false;
                }
                for w in 0..n {
                    if m(x, heap.bracket(y, z, w)) != heap.bracket(m(x, y), m(x, z), m(x, w)) {
                        return false;
                    }
                    if m(heap.bracket(y, z, w), x) != heap.bracket(m(y, x), m(z, x), m(w, x)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All `n^(n*n)` tables on `n` elements, lexicographically.
pub fn all_tables(n: usize) -> impl Iterator<Item = Table> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; cells];
        for slot in v.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        Table::from_cells(n, v).unwrap()
    })
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
