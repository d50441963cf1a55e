//! Enumeration of truss products on a heap, isomorphism, canonical forms and
//! the census that groups products into isomorphism classes.
//!
//! Isomorphisms are arbitrary bijections preserving the bracket and the
//! multiplication; no base point is fixed.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::heap::{abelian_groups, FiniteHeap};
use crate::limits::{ensure, Limits};
use crate::operators::{search_operators, EndoMap, OperatorKind};
use crate::table::Table;
use crate::truss::FiniteTruss;

struct Enumerator<'a> {
    heap: &'a FiniteHeap,
    n: usize,
    candidates: Vec<Vec<usize>>,
    rows: Vec<usize>,
    out: Vec<FiniteTruss>,
}

impl Enumerator<'_> {
    fn cell(&self, x: usize, y: usize) -> usize {
        self.candidates[self.rows[x]][y]
    }

    /// Checks the constraints that become decidable once row `r` is placed:
    /// column affinity and associativity on rows `0..=r`.
    fn consistent(&self, r: usize) -> bool {
        let h = self.heap;
        for a in 0..=r {
            for c in 0..=r {
                let s = h.add(a, c);
                if s > r || (a != r && c != r && s != r) {
                    continue;
                }
                for y in 0..self.n {
                    if self.cell(s, y) != h.bracket(self.cell(a, y), self.cell(0, y), self.cell(c, y)) {
                        return false;
                    }
                }
            }
        }
        for x in 0..=r {
            for y in 0..=r {
                let xy = self.cell(x, y);
                if xy > r || (x != r && y != r && xy != r) {
                    continue;
                }
                for z in 0..self.n {
                    if self.cell(xy, z) != self.cell(x, self.cell(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, r: usize) {
        if r == self.n {
            let cells = (0..self.n).flat_map(|x| (0..self.n).map(move |y| (x, y))).map(|(x, y)| self.cell(x, y));
            let mul = Table::from_cells(self.n, cells.collect()).expect("square table");
            self.out.push(FiniteTruss::new_unchecked(self.heap.clone(), mul));
            return;
        }
        for i in 0..self.candidates.len() {
            self.rows.push(i);
            if self.consistent(r) {
                self.run(r + 1);
            }
            self.rows.pop();
        }
    }
}

/// Every multiplication making `h` a truss, in lexicographic order of
/// tables. Backtracks row by row over heap endomorphisms (left
/// distributivity), pruning on column affinity (right distributivity) and
/// associativity as soon as the rows involved are placed.
pub fn enumerate_truss_products(h: &FiniteHeap, limits: &Limits) -> Result<Vec<FiniteTruss>> {
    ensure(h.size(), limits.enumerate)?;
    let mut e = Enumerator { heap: h, n: h.size(), candidates: h.endomorphisms(), rows: Vec::new(), out: Vec::new() };
    e.run(0);
    Ok(e.out)
}

fn signature(t: &FiniteTruss, x: usize) -> [usize; 6] {
    let n = t.size();
    let count = |p: &dyn Fn(usize) -> bool| (0..n).filter(|&y| p(y)).count();
    [
        usize::from(t.mul(x, x) == x),
        count(&|y| t.mul(x, y) == x),
        count(&|y| t.mul(y, x) == x),
        count(&|y| t.mul(x, y) == y),
        count(&|y| t.mul(y, x) == y),
        (0..n).map(|y| t.mul(x, y)).sorted().dedup().count(),
    ]
}

struct IsoSearch<'a> {
    a: &'a FiniteTruss,
    b: &'a FiniteTruss,
    sig_a: Vec<[usize; 6]>,
    sig_b: Vec<[usize; 6]>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    const FREE: usize = usize::MAX;

    fn consistent(&self, k: usize) -> bool {
        let (a, b, map) = (self.a, self.b, &self.map);
        let n = a.size();
        let placed = |x: usize| map[x] != Self::FREE;
        for x in (0..n).filter(|&x| placed(x)) {
            for (p, q) in [(x, k), (k, x)] {
                let pq = a.mul(p, q);
                if placed(pq) && map[pq] != b.mul(map[p], map[q]) {
                    return false;
                }
            }
            for y in (0..n).filter(|&y| placed(y)) {
                for (p, q, r) in [(k, x, y), (x, k, y), (x, y, k)] {
                    let s = a.bracket(p, q, r);
                    if placed(s) && map[s] != b.bracket(map[p], map[q], map[r]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        let n = self.a.size();
        if k == n {
            return true;
        }
        for v in 0..n {
            if self.used[v] || self.sig_a[k] != self.sig_b[v] {
                continue;
            }
            self.map[k] = v;
            self.used[v] = true;
            if self.consistent(k) && self.run(k + 1) {
                return true;
            }
            self.map[k] = Self::FREE;
            self.used[v] = false;
        }
        false
    }
}

/// A bijection `f` with `f` preserving bracket and multiplication from `a`
/// to `b`, or `None` when the trusses are not isomorphic.
pub fn isomorphism(a: &FiniteTruss, b: &FiniteTruss) -> Option<Vec<usize>> {
    let n = a.size();
    if b.size() != n {
        return None;
    }
    let sig_a: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    if sig_a.iter().sorted().ne(sig_b.iter().sorted()) {
        return None;
    }
    let mut search = IsoSearch { a, b, sig_a, sig_b, map: vec![IsoSearch::FREE; n], used: vec![false; n] };
    if search.run(0) {
        debug_assert!(a.heap().affine_defect(b.heap(), &search.map).is_none());
        Some(search.map)
    } else {
        None
    }
}

/// The lexicographically least `(add, mul)` over all relabelings, with the
/// heap presented as its retract at the relabeled `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub add: Table,
    pub mul: Table,
}

impl CanonicalForm {
    pub fn to_truss(&self) -> Result<FiniteTruss> {
        FiniteTruss::new(FiniteHeap::from_group(self.add.clone())?, self.mul.clone())
    }
}

pub fn canonical_form(t: &FiniteTruss, limits: &Limits) -> Result<CanonicalForm> {
    let n = t.size();
    ensure(n, limits.canonical)?;
    let mut best: Option<CanonicalForm> = None;
    for perm in (0..n).permutations(n) {
        let relabeled = t.relabel(&perm)?;
        let form = CanonicalForm { add: relabeled.heap().add_table().clone(), mul: relabeled.mul_table().clone() };
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
    }
    Ok(best.expect("at least one permutation"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeapDescriptor {
    pub size: usize,
    /// Invariant-factor name of the retract group, e.g. `Z2xZ2`.
    pub group: String,
    pub add: Table,
}

impl HeapDescriptor {
    pub fn of(h: &FiniteHeap) -> Result<Self> {
        let order_profile = |g: &FiniteHeap| -> Vec<usize> {
            (0..g.size())
                .map(|x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != 0 {
                        y = g.add(y, x);
                        k += 1;
                    }
                    k
                })
                .sorted()
                .collect()
        };
        let profile = order_profile(h);
        let group = abelian_groups(h.size())?
            .into_iter()
            .find(|(_, g)| order_profile(g) == profile)
            .map(|(name, _)| name)
            .expect("every finite abelian group is listed");
        Ok(Self { size: h.size(), group, add: h.add_table().clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryEntry {
    pub count: usize,
    pub operators: Vec<EndoMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub representative: CanonicalForm,
    pub class_size: usize,
    /// Multiplication tables of the enumerated products in this class.
    pub members: Vec<Table>,
    pub two_sided_absorbers: Vec<usize>,
    pub idempotents: Vec<usize>,
    /// Operators on the representative, keyed by kind (`rb0:0`, `rey`, ...).
    pub inventory: BTreeMap<String, InventoryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub heap: HeapDescriptor,
    pub total_products: usize,
    pub classes: Vec<CensusClass>,
}

/// Every operator of every applicable kind on `t`.
pub fn operator_inventory(t: &FiniteTruss, limits: &Limits) -> Result<BTreeMap<String, InventoryEntry>> {
    let mut out = BTreeMap::new();
    for kind in OperatorKind::applicable(t) {
        let operators = search_operators(t, kind, limits)?;
        out.insert(kind.to_string(), InventoryEntry { count: operators.len(), operators });
    }
    Ok(out)
}

/// Groups trusses into isomorphism classes by canonical form; classes come
/// out sorted by representative, members in input order.
pub fn classify(trusses: &[FiniteTruss], limits: &Limits) -> Result<Vec<(CanonicalForm, Vec<usize>)>> {
    let mut buckets: BTreeMap<CanonicalForm, Vec<usize>> = BTreeMap::new();
    for (i, t) in trusses.iter().enumerate() {
        buckets.entry(canonical_form(t, limits)?).or_default().push(i);
    }
    Ok(buckets.into_iter().collect())
}

/// All truss products on `h`, bucketed into isomorphism classes, with the
/// operator inventory of each class representative.
pub fn census(h: &FiniteHeap, limits: &Limits) -> Result<CensusReport> {
    let products = enumerate_truss_products(h, limits)?;
    let mut classes = Vec::new();
    for (form, members) in classify(&products, limits)? {
        let rep = form.to_truss()?;
        classes.push(CensusClass {
            class_size: members.len(),
            members: members.iter().map(|&i| products[i].mul_table().clone()).collect(),
            two_sided_absorbers: rep.absorbers().two_sided,
            idempotents: rep.idempotents(),
            inventory: operator_inventory(&rep, limits)?,
            representative: form,
        });
    }
    Ok(CensusReport { heap: HeapDescriptor::of(h)?, total_products: products.len(), classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{z2_heap, z2_table, z2_truss};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn z2_products() {
        let all = enumerate_truss_products(&z2_heap(), &lim()).unwrap();
        let mut expected: Vec<Table> = (1..=8).map(z2_table).collect();
        expected.sort();
        let got: Vec<Table> = all.iter().map(|t| t.mul_table().clone()).collect();
        assert_eq!(got, expected);
        assert_eq!(enumerate_truss_products(&FiniteHeap::cyclic(1).unwrap(), &lim()).unwrap().len(), 1);
    }

    #[test]
    fn z2_isomorphisms() {
        let t = |k| z2_truss(k).unwrap();
        assert_eq!(isomorphism(&t(7), &t(3)), Some(vec![1, 0]));
        assert_eq!(isomorphism(&t(6), &t(2)), Some(vec![1, 0]));
        assert_eq!(isomorphism(&t(8), &t(1)), Some(vec![1, 0]));
        assert_eq!(isomorphism(&t(1), &t(3)), None);
        assert_eq!(isomorphism(&t(4), &t(4)), Some(vec![0, 1]));
        assert_eq!(canonical_form(&t(7), &lim()).unwrap(), canonical_form(&t(3), &lim()).unwrap());
    }

    #[test]
    fn z2_census() {
        let report = census(&z2_heap(), &lim()).unwrap();
        assert_eq!(report.heap.group, "Z2");
        assert_eq!(report.total_products, 8);
        assert_eq!(report.classes.len(), 5);
        let reps: Vec<Table> = report.classes.iter().map(|c| c.representative.mul.clone()).collect();
        let mut expected: Vec<Table> = (1..=5).map(|k| canonical_form(&z2_truss(k).unwrap(), &lim()).unwrap().mul).collect();
        expected.sort();
        assert_eq!(reps, expected);
        let class = |k: usize| {
            let form = canonical_form(&z2_truss(k).unwrap(), &lim()).unwrap();
            report.classes.iter().find(|c| c.representative == form).unwrap().clone()
        };
        assert_eq!(class(3).inventory["rb0:0"].count, 1);
        assert!(class(3).inventory["rb1"].operators.contains(&EndoMap::new(vec![1, 0], 2).unwrap()));
        assert_eq!(class(1).inventory["rb0:0"].count, 2);
        for k in [2, 4, 5] {
            assert!(class(k).inventory.keys().all(|key| !key.starts_with("rb0") && !key.starts_with("der")));
        }
    }

    #[test]
    fn trivial_census() {
        let report = census(&FiniteHeap::cyclic(1).unwrap(), &lim()).unwrap();
        assert_eq!(report.classes.len(), 1);
        assert!(report.classes[0].inventory.values().all(|e| e.count == 1));
    }

    #[test]
    fn heap_descriptor_names() {
        for n in 1..=8 {
            for (name, g) in abelian_groups(n).unwrap() {
                assert_eq!(HeapDescriptor::of(&g).unwrap().group, name);
            }
        }
    }
}
