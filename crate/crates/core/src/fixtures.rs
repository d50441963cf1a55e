//! Named small structures used by tests, the CLI fixtures and `demo`.

use crate::classify::{classify, enumerate_truss_products};
use crate::error::Result;
use crate::heap::{abelian_groups, FiniteHeap};
use crate::limits::Limits;
use crate::products::{function_truss, hemisemi_product, idempotent_module_truss, product_ltimes, HemisemiSide};
use crate::table::Table;
use crate::truss::{FiniteRing, FiniteTruss};

/// The eight multiplication tables on `Z2`, numbered as in the classic
/// classification: (1)-(5) are pairwise non-isomorphic, and (6), (7), (8)
/// are isomorphic to (2), (3), (1).
pub fn z2_table(k: usize) -> Table {
    let rows: [[usize; 4]; 8] = [
        [0, 0, 0, 0],
        [0, 1, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 1],
        [0, 1, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 1, 1],
        [1, 1, 1, 1],
    ];
    assert!((1..=8).contains(&k), "Z2 tables are numbered 1..=8");
    Table::from_cells(2, rows[k - 1].to_vec()).expect("static table")
}

pub fn z2_heap() -> FiniteHeap {
    FiniteHeap::cyclic(2).expect("Z2")
}

pub fn z2_truss(k: usize) -> Result<FiniteTruss> {
    FiniteTruss::new(z2_heap(), z2_table(k))
}

/// Reading of the ambiguous bottom-right cell `(a+b).(a+b)` of the Klein
/// four-group table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleinReading {
    /// The cell is `a+b`; this is also what left distributivity forces.
    Sum,
    /// The cell is `b`.
    Second,
}

/// Klein four-group `{0, a, b, a+b}` as indices `0..4` under XOR.
pub fn klein_heap() -> FiniteHeap {
    FiniteHeap::from_group(Table::from_fn(4, |x, y| x ^ y)).expect("V4")
}

pub const KLEIN_LABELS: [&str; 4] = ["0", "a", "b", "a+b"];

pub fn klein_table(reading: KleinReading) -> Table {
    let corner = match reading {
        KleinReading::Sum => 3,
        KleinReading::Second => 2,
    };
    Table::from_rows(vec![vec![0, 0, 2, 1], vec![1, 1, 3, 0], vec![2, 2, 0, 3], vec![3, 3, 3, corner]])
        .expect("static table")
}

/// The Klein table as a truss candidate. Neither reading is a truss.
pub fn klein_v4(reading: KleinReading) -> Result<FiniteTruss> {
    FiniteTruss::new(klein_heap(), klein_table(reading))
}

pub fn f2_ring() -> FiniteRing {
    FiniteRing::f2()
}

/// Tables `(vee, succ, prec)` of the tridendriform structure on `Z2` induced
/// by the swap as a weight-1 Rota-Baxter operator on table (3).
pub fn z2_tridendriform_tables() -> (Table, Table, Table) {
    let vee = Table::from_rows(vec![vec![0, 0], vec![0, 1]]).expect("static");
    let succ = Table::from_rows(vec![vec![0, 1], vec![0, 0]]).expect("static");
    let prec = Table::from_rows(vec![vec![0, 0], vec![1, 0]]).expect("static");
    (vee, succ, prec)
}

/// The test corpus: one representative of every truss class on every heap
/// of size 1 to 3, followed by a handful of 4-element constructions.
pub fn corpus(limits: &Limits) -> Result<Vec<(String, FiniteTruss)>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (name, heap) in abelian_groups(n)? {
            for (i, (form, _)) in classify(&enumerate_truss_products(&heap, limits)?, limits)?.into_iter().enumerate() {
                out.push((format!("{name}/class{i}"), form.to_truss()?));
            }
        }
    }
    let (t1, t3) = (z2_truss(1)?, z2_truss(3)?);
    out.push(("Z2(1) ltimes Z2(1)".into(), product_ltimes(&t1, 0, limits)?));
    out.push(("Z2(3) ltimes Z2(3)".into(), product_ltimes(&t3, 0, limits)?));
    out.push(("Z2(3)^2".into(), function_truss(&t3, 2, limits)?));
    out.push(("Z2(5)^2".into(), function_truss(&z2_truss(5)?, 2, limits)?));
    out.push(("Z2(3) left-hemisemi".into(), hemisemi_product(&t3, HemisemiSide::Left, limits)?));
    let e = vec![vec![1, 0], vec![0, 0]];
    out.push(("F2^2 by diag(1,0)".into(), idempotent_module_truss(&f2_ring(), 2, &e, limits)?));
    Ok(out)
}
