//! Finite abelian heaps.
//!
//! A heap is stored as its retract group at base `0`: `add` is the group law
//! `x +0 y = [x, 0, y]` and the bracket is recovered as `[a, b, c] = a - b + c`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::table::Table;

/// Checks that `add` is an abelian group table and returns its identity.
pub fn group_identity(add: &Table) -> Result<usize> {
    let n = add.size();
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| add.get(e, x) == x && add.get(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            if add.get(a, b) != add.get(b, a) {
                return Err(Error::NotAGroup(format!("not commutative at ({a}, {b})")));
            }
        }
        if !(0..n).any(|b| add.get(a, b) == identity) {
            return Err(Error::NotAGroup(format!("element {a} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = add.get(a, b);
            for c in 0..n {
                if add.get(ab, c) != add.get(a, add.get(b, c)) {
                    return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(identity)
}

/// Inverse table of an abelian group with the given identity.
pub(crate) fn group_inverses(add: &Table, identity: usize) -> Vec<usize> {
    let n = add.size();
    (0..n).map(|a| (0..n).find(|&b| add.get(a, b) == identity).expect("validated group")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteHeap {
    add: Table,
    neg: Vec<usize>,
}

impl FiniteHeap {
    /// The heap `H(G)` of an abelian group given by its Cayley table.
    ///
    /// The identity of `G` may sit at any index; the stored retract is
    /// re-based at element `0` without permuting the carrier, so
    /// `[a, b, c] = a - b + c` is computed exactly as in `G`.
    pub fn from_group(add: Table) -> Result<Self> {
        let identity = group_identity(&add)?;
        let neg = group_inverses(&add, identity);
        if identity == 0 {
            return Ok(Self { add, neg });
        }
        // x +0 y = x - 0 + y in G
        let rebased = Table::from_fn(add.size(), |x, y| add.get(add.get(x, neg[0]), y));
        let neg0 = group_inverses(&rebased, 0);
        Ok(Self { add: rebased, neg: neg0 })
    }

    /// `Z_n` with `x +0 y = x + y mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        Self::from_group(Table::from_fn(n, |a, b| (a + b) % n))
    }

    /// Componentwise heap on `self x other`, pair `(a, x)` encoded as `a * m + x`.
    pub fn direct_product(&self, other: &FiniteHeap) -> FiniteHeap {
        let m = other.size();
        let n = self.size() * m;
        let add = Table::from_fn(n, |p, q| {
            let (a, x) = (p / m, p % m);
            let (b, y) = (q / m, q % m);
            self.add(a, b) * m + other.add(x, y)
        });
        let neg = (0..n).map(|p| self.neg(p / m) * m + other.neg(p % m)).collect();
        FiniteHeap { add, neg }
    }

    /// `self^k` with tuples encoded big-endian in base `n`.
    pub fn power(&self, k: usize) -> FiniteHeap {
        let mut out = FiniteHeap::cyclic(1).expect("trivial group");
        for _ in 0..k {
            out = out.direct_product(self);
        }
        out
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.add.size()
    }

    /// The retract group law at base `0`.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add.get(a, self.neg[b])
    }

    /// `[a, b, c] = a - b + c`. Panics on out-of-range indices.
    #[inline]
    pub fn bracket(&self, a: usize, b: usize, c: usize) -> usize {
        self.add.get(self.add.get(a, self.neg[b]), c)
    }

    pub fn try_bracket(&self, a: usize, b: usize, c: usize) -> Result<usize> {
        for &i in &[a, b, c] {
            self.check_index(i)?;
        }
        Ok(self.bracket(a, b, c))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.size() })
        }
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    /// The retract `G(H; e)`: `x +e y = [x, e, y]`, identity `e`,
    /// inverse of `a` equal to `[e, a, e]`.
    pub fn retract(&self, e: usize) -> Result<Table> {
        self.check_index(e)?;
        Ok(Table::from_fn(self.size(), |x, y| self.bracket(x, e, y)))
    }

    pub fn ternary(&self) -> TernaryTable {
        let n = self.size();
        let mut cells = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cells.push(self.bracket(a, b, c));
                }
            }
        }
        TernaryTable { n, cells }
    }

    /// A generating set of the retract at `0`, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.size();
        let mut in_span = vec![false; n];
        in_span[0] = true;
        let mut gens = Vec::new();
        for x in 0..n {
            if in_span[x] {
                continue;
            }
            gens.push(x);
            // close the span under adding every generator
            let mut queue: VecDeque<usize> = (0..n).filter(|&e| in_span[e]).collect();
            while let Some(e) = queue.pop_front() {
                for &g in &gens {
                    let next = self.add(e, g);
                    if !in_span[next] {
                        in_span[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        gens
    }

    /// All group homomorphisms between the retracts at `0`, in lexicographic order.
    pub fn additive_homomorphisms(&self, dst: &FiniteHeap) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let m = dst.size();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(g) = self.extend_from_generators(dst, &gens, &images) {
                out.push(g);
            }
            // odometer over generator images
            let mut i = gens.len();
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                images[i] += 1;
                if images[i] < m {
                    break;
                }
                images[i] = 0;
            }
        }
    }

    fn extend_from_generators(&self, dst: &FiniteHeap, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.size();
        let mut g = vec![usize::MAX; n];
        g[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (&s, &img) in gens.iter().zip(images) {
                let next = self.add(e, s);
                let val = dst.add(g[e], img);
                if g[next] == usize::MAX {
                    g[next] = val;
                    queue.push_back(next);
                } else if g[next] != val {
                    return None;
                }
            }
        }
        debug_assert!(g.iter().all(|&v| v != usize::MAX));
        Some(g)
    }

    /// All heap morphisms `self -> dst`, as `f(x) = t +0 g(x)` with `g`
    /// additive and `t = f(0)`. Lexicographic order.
    pub fn heap_morphisms(&self, dst: &FiniteHeap) -> Vec<Vec<usize>> {
        let homs = self.additive_homomorphisms(dst);
        let mut out = Vec::with_capacity(homs.len() * dst.size());
        for t in 0..dst.size() {
            for g in &homs {
                out.push(g.iter().map(|&v| dst.add(t, v)).collect());
            }
        }
        out.sort();
        out
    }

    /// Heap endomorphisms (see [`FiniteHeap::heap_morphisms`]).
    pub fn endomorphisms(&self) -> Vec<Vec<usize>> {
        self.heap_morphisms(self)
    }

    /// Finds `(a, c)` with `f([a, 0, c]) != [f(a), f(0), f(c)]`, if any.
    ///
    /// Exact test for heap morphisms: `f` preserves the bracket iff
    /// `x -> f(x) - f(0)` is additive.
    pub fn affine_defect(&self, dst: &FiniteHeap, f: &[usize]) -> Option<(usize, usize)> {
        let n = self.size();
        let f0 = f[0];
        for a in 0..n {
            for c in a..n {
                if f[self.add(a, c)] != dst.bracket(f[a], f0, f[c]) {
                    return Some((a, c));
                }
            }
        }
        None
    }
}

/// True iff `f` preserves the bracket on every triple.
pub fn is_heap_morphism(src: &FiniteHeap, dst: &FiniteHeap, f: &[usize]) -> bool {
    let n = src.size();
    if f.len() != n || f.iter().any(|&v| v >= dst.size()) {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if f[src.bracket(a, b, c)] != dst.bracket(f[a], f[b], f[c]) {
                    return false;
                }
            }
        }
    }
    true
}

/// One heap per isomorphism class of abelian groups of order `n`, named by
/// invariant factors (`"Z4"`, `"Z2xZ2"`). Cyclic first.
pub fn abelian_groups(n: usize) -> Result<Vec<(String, FiniteHeap)>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n == 1 {
        return Ok(vec![("Z1".to_string(), FiniteHeap::cyclic(1)?)]);
    }
    let mut lists = Vec::new();
    invariant_factors(n, 1, &mut Vec::new(), &mut lists);
    lists.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    lists
        .into_iter()
        .map(|factors| {
            let name = factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x");
            let mut heap = FiniteHeap::cyclic(1)?;
            for d in factors {
                heap = heap.direct_product(&FiniteHeap::cyclic(d)?);
            }
            Ok((name, heap))
        })
        .collect()
}

// d1 | d2 | ... | dk with product n
fn invariant_factors(rem: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rem == 1 {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        return;
    }
    for d in 2..=rem {
        if rem.is_multiple_of(d) && d.is_multiple_of(last) {
            acc.push(d);
            invariant_factors(rem / d, d, acc, out);
            acc.pop();
        }
    }
}

/// An arbitrary ternary operation, for auditing data that may not be a heap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryTable {
    n: usize,
    cells: Vec<usize>,
}

impl TernaryTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut cells = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = f(a, b, c);
                    if v >= n {
                        return Err(Error::IndexOutOfRange { index: v, size: n });
                    }
                    cells.push(v);
                }
            }
        }
        Ok(Self { n, cells })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        self.cells[(a * self.n + b) * self.n + c]
    }
}

/// Largest carrier on which the 9-variable interchange law is scanned.
pub const INTERCHANGE_MAX: usize = 4;

/// Every violated instance of heap associativity, the Mal'cev identities and
/// commutativity. The interchange law is checked as well for carriers of at
/// most [`INTERCHANGE_MAX`] elements.
pub fn validate_heap(t: &TernaryTable) -> ValidationReport {
    let n = t.size();
    let br = |a, b, c| t.get(a, b, c);
    let mut report = ValidationReport::new();
    for a in 0..n {
        for b in 0..n {
            report.check("malcev-left", &[a, b], br(a, a, b), b);
            report.check("malcev-right", &[a, b], br(b, a, a), b);
            for c in 0..n {
                report.check("heap-comm", &[a, b, c], br(a, b, c), br(c, b, a));
                let abc = br(a, b, c);
                for x in 0..n {
                    for y in 0..n {
                        report.check("heap-assoc", &[a, b, c, x, y], br(abc, x, y), br(a, b, br(c, x, y)));
                    }
                }
            }
        }
    }
    if n <= INTERCHANGE_MAX {
        let mut idx = [0usize; 9];
        'outer: loop {
            let [x1, x2, x3, y1, y2, y3, z1, z2, z3] = idx;
            let lhs = br(br(x1, x2, x3), br(y1, y2, y3), br(z1, z2, z3));
            let rhs = br(br(x1, y1, z1), br(x2, y2, z2), br(x3, y3, z3));
            report.check("interchange", &idx, lhs, rhs);
            for slot in (0..9).rev() {
                idx[slot] += 1;
                if idx[slot] < n {
                    continue 'outer;
                }
                idx[slot] = 0;
            }
            break;
        }
    } else {
        report.skipped.push("interchange".into());
    }
    report
}
