use serde::Serialize;

use trusslab::classify::census;
use trusslab::fixtures::{klein_v4, klein_heap, klein_table, z2_heap, z2_tridendriform_tables, z2_truss, KleinReading};
use trusslab::operators::{check_operator, search_operators, EndoMap, OperatorKind};
use trusslab::structures::split_from_operator;
use trusslab::truss::validate_truss;
use trusslab::{Error, Limits};

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, result: trusslab::Result<(bool, String)>) -> Check {
    match result {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
    }
}

pub fn run(limits: &Limits) -> Vec<Check> {
    let swap = EndoMap::new(vec![1, 0], 2).expect("valid map");
    vec![
        check("z2-census", (|| {
            let report = census(&z2_heap(), limits)?;
            let sizes: Vec<usize> = report.classes.iter().map(|c| c.class_size).collect();
            Ok((
                report.total_products == 8 && report.classes.len() == 5,
                format!("{} products, {} classes, class sizes {sizes:?}", report.total_products, report.classes.len()),
            ))
        })()),
        check("table3-rb0-search", (|| {
            let ops = search_operators(&z2_truss(3)?, OperatorKind::RotaBaxterZero { zero: 0 }, limits)?;
            Ok((ops == vec![EndoMap::constant(2, 0)], format!("operators {ops:?}")))
        })()),
        check("table3-swap-rb1", (|| {
            let report = check_operator(&z2_truss(3)?, &swap, OperatorKind::RotaBaxterOne)?;
            Ok((report.holds, format!("{report:?}")))
        })()),
        check("z2-tridendriform", (|| {
            let s = split_from_operator(&z2_truss(3)?, &swap, OperatorKind::RotaBaxterWeighted { weight: 1 })?;
            let (vee, succ, prec) = z2_tridendriform_tables();
            let pass = s.table("vee") == &vee && s.table("succ") == &succ && s.table("prec") == &prec;
            Ok((pass, format!("vee {:?}, succ {:?}, prec {:?}", s.table("vee"), s.table("succ"), s.table("prec"))))
        })()),
        check("klein-v4-audit", {
            let rejected = matches!(klein_v4(KleinReading::Sum), Err(Error::InvalidTruss(_)));
            let report = validate_truss(&klein_heap(), &klein_table(KleinReading::Sum));
            let witness = report.first("right-dist").cloned();
            Ok((rejected && witness.is_some(), format!("first right-dist witness {witness:?}")))
        }),
    ]
}
