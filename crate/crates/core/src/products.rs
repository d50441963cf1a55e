//! Trusses built from other trusses: the two semidirect-style products on
//! `T x T`, the hemisemi-direct products, function trusses `T^k`, and the
//! module truss of an idempotent matrix.
//!
//! Pairs `(a, x)` are encoded as `a * n + x`; tuples big-endian in base `n`.
//! Every constructor re-validates its output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::FiniteHeap;
use crate::limits::{ensure, Limits};
use crate::table::Table;
use crate::truss::{FiniteRing, FiniteTruss};

#[inline]
pub fn pair(n: usize, a: usize, x: usize) -> usize {
    a * n + x
}

#[inline]
pub fn unpair(n: usize, p: usize) -> (usize, usize) {
    (p / n, p % n)
}

fn square_heap(t: &FiniteTruss, limits: &Limits) -> Result<FiniteHeap> {
    ensure(t.size() * t.size(), limits.construct)?;
    Ok(t.heap().direct_product(t.heap()))
}

fn pair_table(t: &FiniteTruss, f: impl Fn(usize, usize, usize, usize) -> (usize, usize)) -> Table {
    let n = t.size();
    Table::from_fn(n * n, |p, q| {
        let (a, x) = unpair(n, p);
        let (b, y) = unpair(n, q);
        let (c, z) = f(a, x, b, y);
        pair(n, c, z)
    })
}

/// `(a, x) . (b, y) = (ab, [ay, z, xb])` for a two-sided absorber `z`.
pub fn ltimes_table(t: &FiniteTruss, z: usize) -> Table {
    pair_table(t, |a, x, b, y| (t.mul(a, b), t.bracket(t.mul(a, y), z, t.mul(x, b))))
}

/// `T ⋉ T`.
pub fn product_ltimes(t: &FiniteTruss, z: usize, limits: &Limits) -> Result<FiniteTruss> {
    t.heap().check_index(z)?;
    if !t.is_absorber(z) {
        return Err(Error::NotAnAbsorber(z));
    }
    FiniteTruss::new(square_heap(t, limits)?, ltimes_table(t, z))
}

/// `(a, x) . (b, y) = (ab, [ay, e.x.y, xb])`. Not checked for centrality
/// or trussness; graph tests only need closure.
pub fn bowtie_table(t: &FiniteTruss, e: usize) -> Table {
    pair_table(t, |a, x, b, y| {
        (t.mul(a, b), t.bracket(t.mul(a, y), t.mul(t.mul(e, x), y), t.mul(x, b)))
    })
}

/// `T ⋈_e T` for a central `e`.
///
/// Associativity of this product needs `e.x.y.z = e.e.x.y.z`, so for a
/// non-idempotent `e` the result is usually rejected with `InvalidTruss`.
pub fn product_bowtie(t: &FiniteTruss, e: usize, limits: &Limits) -> Result<FiniteTruss> {
    t.heap().check_index(e)?;
    if !t.is_central(e) {
        return Err(Error::NotCentral(e));
    }
    FiniteTruss::new(square_heap(t, limits)?, bowtie_table(t, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HemisemiSide {
    /// `(a, x) . (b, y) = (ab, ay)`
    Left,
    /// `(a, x) . (b, y) = (ab, xb)`
    Right,
    /// `(a, x) . (b, y) = (ab, xy)`
    Medium,
}

pub fn hemisemi_table(t: &FiniteTruss, side: HemisemiSide) -> Table {
    pair_table(t, |a, x, b, y| {
        let second = match side {
            HemisemiSide::Left => t.mul(a, y),
            HemisemiSide::Right => t.mul(x, b),
            HemisemiSide::Medium => t.mul(x, y),
        };
        (t.mul(a, b), second)
    })
}

pub fn hemisemi_product(t: &FiniteTruss, side: HemisemiSide, limits: &Limits) -> Result<FiniteTruss> {
    FiniteTruss::new(square_heap(t, limits)?, hemisemi_table(t, side))
}

fn digits(mut p: usize, base: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = p % base;
        p /= base;
    }
    out
}

fn undigits(ds: impl IntoIterator<Item = usize>, base: usize) -> usize {
    ds.into_iter().fold(0, |acc, d| acc * base + d)
}

fn checked_power(n: usize, k: usize, cap: usize) -> Result<usize> {
    let size = u32::try_from(k).ok().and_then(|k| n.checked_pow(k)).unwrap_or(usize::MAX);
    ensure(size, cap)?;
    Ok(size)
}

/// `T^k` with pointwise bracket and multiplication.
pub fn function_truss(t: &FiniteTruss, k: usize, limits: &Limits) -> Result<FiniteTruss> {
    if k == 0 {
        return Err(Error::InvalidParameters("exponent must be at least 1".into()));
    }
    let n = t.size();
    let size = checked_power(n, k, limits.construct)?;
    let heap = t.heap().power(k);
    let mul = Table::from_fn(size, |p, q| {
        let (xs, ys) = (digits(p, n, k), digits(q, n, k));
        undigits(xs.iter().zip(&ys).map(|(&x, &y)| t.mul(x, y)), n)
    });
    FiniteTruss::new(heap, mul)
}

/// The truss on `R^k` with `x . y = x + y e` for an idempotent `k x k`
/// matrix `e` over `r` (rows of `e` indexed first).
pub fn idempotent_module_truss(r: &FiniteRing, k: usize, e: &[Vec<usize>], limits: &Limits) -> Result<FiniteTruss> {
    if k == 0 {
        return Err(Error::InvalidParameters("module rank must be at least 1".into()));
    }
    let m = r.size();
    if e.len() != k || e.iter().any(|row| row.len() != k) {
        return Err(Error::Malformed(format!("matrix must be {k}x{k}")));
    }
    if let Some(&v) = e.iter().flatten().find(|&&v| v >= m) {
        return Err(Error::IndexOutOfRange { index: v, size: m });
    }
    let size = checked_power(m, k, limits.construct)?;

    let dot = |row: &dyn Fn(usize) -> usize, col: &dyn Fn(usize) -> usize| {
        (0..k).fold(r.zero(), |acc, i| r.add(acc, r.mul(row(i), col(i))))
    };
    let square: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).map(|j| dot(&|l| e[i][l], &|l| e[l][j])).collect()).collect();
    if square != e {
        return Err(Error::NotIdempotent);
    }

    let add = Table::from_fn(size, |p, q| {
        let (xs, ys) = (digits(p, m, k), digits(q, m, k));
        undigits(xs.iter().zip(&ys).map(|(&x, &y)| r.add(x, y)), m)
    });
    let heap = FiniteHeap::from_group(add)?;
    let mul = Table::from_fn(size, |p, q| {
        let (xs, ys) = (digits(p, m, k), digits(q, m, k));
        undigits((0..k).map(|j| r.add(xs[j], dot(&|i| ys[i], &|i| e[i][j]))), m)
    });
    FiniteTruss::new(heap, mul)
}
