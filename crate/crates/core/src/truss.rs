//! Trusses, rings, absorbers and the functors between rings and trusses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::{group_identity, is_heap_morphism, FiniteHeap};
use crate::report::ValidationReport;
use crate::table::Table;

/// An abelian heap with an associative multiplication that distributes over
/// the bracket on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTruss {
    heap: FiniteHeap,
    mul: Table,
}

/// Associativity and both distributivity laws of `mul` over `heap`.
///
/// Distributivity is tested in its reduced form: `x . [u, v, w]` equals
/// `[x.u, x.v, x.w]` for all `u, v, w` iff it does for `v = 0`, because a map
/// preserves the bracket iff it is affine on the retract at `0`. Witnesses
/// are therefore reported as `(x, u, 0, w)` and `(u, 0, w, d)`; each is a
/// genuine violated instance of the law.
pub fn validate_truss(heap: &FiniteHeap, mul: &Table) -> ValidationReport {
    let n = heap.size();
    let mut report = ValidationReport::new();
    for x in 0..n {
        for y in 0..n {
            let xy = mul.get(x, y);
            for z in 0..n {
                report.check("assoc", &[x, y, z], mul.get(xy, z), mul.get(x, mul.get(y, z)));
            }
        }
    }
    for x in 0..n {
        let x0 = mul.get(x, 0);
        for u in 0..n {
            for w in 0..n {
                let uw = heap.add(u, w);
                report.check("left-dist", &[x, u, 0, w], mul.get(x, uw), heap.bracket(mul.get(x, u), x0, mul.get(x, w)));
            }
        }
    }
    for d in 0..n {
        let zd = mul.get(0, d);
        for u in 0..n {
            for w in 0..n {
                let uw = heap.add(u, w);
                report.check("right-dist", &[u, 0, w, d], mul.get(uw, d), heap.bracket(mul.get(u, d), zd, mul.get(w, d)));
            }
        }
    }
    report
}

impl FiniteTruss {
    pub fn new(heap: FiniteHeap, mul: Table) -> Result<Self> {
        if mul.size() != heap.size() {
            return Err(Error::SizeMismatch { left: heap.size(), right: mul.size() });
        }
        let report = validate_truss(&heap, &mul);
        if !report.is_valid() {
            return Err(Error::InvalidTruss(report));
        }
        Ok(Self { heap, mul })
    }

    pub(crate) fn new_unchecked(heap: FiniteHeap, mul: Table) -> Self {
        debug_assert!(validate_truss(&heap, &mul).is_valid());
        Self { heap, mul }
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    #[inline]
    pub fn bracket(&self, a: usize, b: usize, c: usize) -> usize {
        self.heap.bracket(a, b, c)
    }

    pub fn absorbers(&self) -> AbsorberSet {
        let n = self.size();
        let left: Vec<usize> = (0..n).filter(|&z| (0..n).all(|t| self.mul(t, z) == z)).collect();
        let right: Vec<usize> = (0..n).filter(|&z| (0..n).all(|t| self.mul(z, t) == z)).collect();
        let two_sided = left.iter().copied().filter(|z| right.contains(z)).collect();
        AbsorberSet { left, right, two_sided }
    }

    pub fn is_absorber(&self, z: usize) -> bool {
        z < self.size() && (0..self.size()).all(|t| self.mul(t, z) == z && self.mul(z, t) == z)
    }

    pub fn is_central(&self, e: usize) -> bool {
        e < self.size() && (0..self.size()).all(|x| self.mul(e, x) == self.mul(x, e))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.is_central(e)).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// `T(R)`: the heap of the additive group with the same multiplication.
    pub fn from_ring(r: &FiniteRing) -> Result<Self> {
        let heap = FiniteHeap::from_group(r.add.clone())?;
        Self::new(heap, r.mul.clone())
    }

    /// `R(T; z)`: the retract at the absorber `z` with the same multiplication.
    pub fn to_ring(&self, z: usize) -> Result<FiniteRing> {
        self.heap.check_index(z)?;
        if !self.is_absorber(z) {
            return Err(Error::NotAnAbsorber(z));
        }
        Ok(FiniteRing { add: self.heap.retract(z)?, mul: self.mul.clone(), zero: z })
    }

    /// Heap morphism that is also multiplicative.
    pub fn is_morphism_to(&self, dst: &FiniteTruss, f: &[usize]) -> bool {
        if !is_heap_morphism(&self.heap, &dst.heap, f) {
            return false;
        }
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| f[self.mul(x, y)] == dst.mul(f[x], f[y])))
    }

    /// Nonempty and closed under the bracket and the multiplication.
    pub fn is_subtruss(&self, s: &[usize]) -> bool {
        is_closed(self.size(), s, |a, b, c| self.bracket(a, b, c), |a, b| self.mul(a, b))
    }

    /// Transports the truss along the bijection `perm` (old -> new label).
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteTruss> {
        let n = self.size();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let add = Table::from_fn(n, |p, q| perm[self.bracket(inv[p], inv[0], inv[q])]);
        let heap = FiniteHeap::from_group(add)?;
        Ok(FiniteTruss::new_unchecked(heap, self.mul.relabel(perm)))
    }
}

pub(crate) fn is_closed(
    n: usize,
    s: &[usize],
    bracket: impl Fn(usize, usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> bool {
    if s.is_empty() || s.iter().any(|&x| x >= n) {
        return false;
    }
    let mut member = vec![false; n];
    for &x in s {
        member[x] = true;
    }
    for &a in s {
        for &b in s {
            if !member[mul(a, b)] {
                return false;
            }
            for &c in s {
                if !member[bracket(a, b, c)] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorberSet {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub two_sided: Vec<usize>,
}

/// An associative, not necessarily unital ring. The additive identity is
/// `zero`, which need not be index `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    add: Table,
    mul: Table,
    zero: usize,
}

pub fn validate_ring(add: &Table, mul: &Table) -> Result<ValidationReport> {
    group_identity(add)?;
    let n = add.size();
    let mut report = ValidationReport::new();
    for x in 0..n {
        for y in 0..n {
            let xy = mul.get(x, y);
            let sxy = add.get(x, y);
            for z in 0..n {
                report.check("ring-assoc", &[x, y, z], mul.get(xy, z), mul.get(x, mul.get(y, z)));
                report.check("ring-left-dist", &[z, x, y], mul.get(z, sxy), add.get(mul.get(z, x), mul.get(z, y)));
                report.check("ring-right-dist", &[x, y, z], mul.get(sxy, z), add.get(mul.get(x, z), mul.get(y, z)));
            }
        }
    }
    Ok(report)
}

impl FiniteRing {
    pub fn new(add: Table, mul: Table) -> Result<Self> {
        if add.size() != mul.size() {
            return Err(Error::SizeMismatch { left: add.size(), right: mul.size() });
        }
        let report = validate_ring(&add, &mul)?;
        if !report.is_valid() {
            return Err(Error::InvalidRing(report));
        }
        let zero = group_identity(&add)?;
        Ok(Self { add, mul, zero })
    }

    /// The field with two elements.
    pub fn f2() -> Self {
        FiniteRing::new(Table::from_fn(2, |a, b| a ^ b), Table::from_fn(2, |a, b| a & b)).expect("F2")
    }

    /// `Z/nZ` with its usual multiplication.
    pub fn integers_mod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        FiniteRing::new(Table::from_fn(n, |a, b| (a + b) % n), Table::from_fn(n, |a, b| (a * b) % n))
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn mul_table(&self) -> &Table {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    /// `T(R)` followed by `R(-; zero)` is the identity; this is `T(R)`.
    pub fn to_truss(&self) -> Result<FiniteTruss> {
        FiniteTruss::from_ring(self)
    }

    pub fn is_additive(&self, f: &[usize]) -> bool {
        let n = self.size();
        f.len() == n
            && f.iter().all(|&v| v < n)
            && (0..n).all(|x| (0..n).all(|y| f[self.add(x, y)] == self.add(f[x], f[y])))
    }
}
