//! Acceptance criteria 1-10, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use trusslab::classify::enumerate_truss_products;
use trusslab::fixtures::{corpus, z2_heap, z2_truss};
use trusslab::heap::abelian_groups;
use trusslab::operators::{
    all_maps, check_operator, graph_characterization, nijenhuis_from_rb0, search_operators, search_operators_naive,
    EndoMap, OperatorKind,
};
use trusslab::structures::{
    dendriform_ring_from_rb_ring, derive_truss, ring_side_to_truss_side, split_from_operator,
    split_from_operator_unchecked, subadjacent, truss_side_to_ring_side, validate_structure,
};
use trusslab::truss::validate_truss;
use trusslab::zfamilies::{verify_window, zrb_constant_product, ZFamily, ZTruss};
use trusslab::{isomorphism, FiniteTruss, Limits, Table};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lim() -> Limits {
    Limits::default()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn trusslab(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_trusslab")).args(args).env_remove("TRUSSLAB_LIMITS").output().unwrap();
    (out.status.code(), serde_json::from_slice(&out.stdout).unwrap_or(Value::Null))
}

fn table(rows: &[&[usize]]) -> Table {
    Table::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, format!("took {spent:.2?}, budget {budget:?}"))
}

/// Independent check of the truss axioms on Z2 with `[a, b, c] = a ^ b ^ c`.
fn naive_z2_truss(m: &[[usize; 2]; 2]) -> bool {
    let br = |a: usize, b: usize, c: usize| a ^ b ^ c;
    let r = 0..2;
    r.clone().all(|x| {
        r.clone().all(|y| {
            r.clone().all(|z| {
                m[m[x][y]][z] == m[x][m[y][z]]
                    && r.clone().all(|w| {
                        m[x][br(y, z, w)] == br(m[x][y], m[x][z], m[x][w])
                            && m[br(y, z, w)][x] == br(m[y][x], m[z][x], m[w][x])
                    })
            })
        })
    })
}

fn printed_z2_tables() -> Vec<Table> {
    [
        [[0, 0], [0, 0]],
        [[0, 1], [1, 0]],
        [[0, 0], [0, 1]],
        [[0, 0], [1, 1]],
        [[0, 1], [0, 1]],
        [[1, 0], [0, 1]],
        [[0, 1], [1, 1]],
        [[1, 1], [1, 1]],
    ]
    .iter()
    .map(|m| table(&[&m[0], &m[1]]))
    .collect()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let printed = printed_z2_tables();
    // the printed tables, including (6), (7), (8), must agree with the fixtures
    for (k, t) in printed.iter().enumerate() {
        ensure(trusslab::fixtures::z2_table(k + 1) == *t, format!("fixture table ({}) differs", k + 1))?;
    }
    let mut naive = 0;
    for code in 0..16usize {
        let m = [[code >> 3 & 1, code >> 2 & 1], [code >> 1 & 1, code & 1]];
        naive += usize::from(naive_z2_truss(&m));
    }
    let (code, v) = trusslab(&["census", "--size", "2"]);
    ensure(code == Some(0), format!("census exit {code:?}"))?;
    let report = &v[0];
    let total = report["total_products"].as_u64().unwrap_or(0) as usize;
    ensure(total == 8 && naive == 8, format!("census {total}, naive oracle {naive}"))?;
    let classes = report["classes"].as_array().cloned().unwrap_or_default();
    ensure(classes.len() == 5, format!("{} classes", classes.len()))?;
    let mut reps: Vec<Table> =
        classes.iter().map(|c| serde_json::from_value(c["representative"]["mul"].clone()).unwrap()).collect();
    reps.sort();
    let mut first_five = printed[..5].to_vec();
    first_five.sort();
    ensure(reps == first_five, "representatives differ from tables (1)-(5)")?;
    let h = z2_heap();
    let t = |k: usize| FiniteTruss::new(h.clone(), printed[k - 1].clone()).unwrap();
    for (a, b) in [(6, 2), (7, 3), (8, 1)] {
        ensure(isomorphism(&t(a), &t(b)).is_some(), format!("({a}) not isomorphic to ({b})"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("8 products, 5 classes = tables (1)-(5), naive oracle 8 ({:.0?})", start.elapsed()))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let t3 = z2_truss(3).unwrap();
    let kind = OperatorKind::RotaBaxterZero { zero: 0 };
    let found = search_operators(&t3, kind, &lim()).unwrap();
    let naive = search_operators_naive(&t3, kind, &lim()).unwrap();
    let expected = vec![EndoMap::constant(2, 0)];
    ensure(found == expected && naive == expected, format!("found {found:?}, naive {naive:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("RB0 on (3) = {const-0}, naive filter agrees".into())
}

fn c3() -> Outcome {
    let t3 = z2_truss(3).unwrap();
    let swap = EndoMap::new(vec![1, 0], 2).unwrap();
    ensure(check_operator(&t3, &swap, OperatorKind::RotaBaxterOne).unwrap().holds, "swap is not RB1")?;
    let vee = table(&[&[0, 0], &[0, 1]]);
    let succ = table(&[&[0, 1], &[0, 0]]);
    let prec = table(&[&[0, 0], &[1, 0]]);
    for kind in [OperatorKind::RotaBaxterWeighted { weight: 1 }, OperatorKind::RotaBaxterOne] {
        let s = split_from_operator(&t3, &swap, kind).map_err(|e| format!("{kind}: {e}"))?;
        ensure(
            s.table("vee") == &vee && s.table("succ") == &succ && s.table("prec") == &prec,
            format!("{kind}: tables differ"),
        )?;
    }
    Ok("swap is RB1; weight-1 split gives the printed vee, succ, prec".into())
}

fn splittable(kind: OperatorKind) -> bool {
    !matches!(
        kind,
        OperatorKind::Derivation { .. }
            | OperatorKind::ModifiedDerivation
            | OperatorKind::AveragingLeft
            | OperatorKind::AveragingRight
    )
}

fn derivable(kind: OperatorKind) -> bool {
    splittable(kind) && !matches!(kind, OperatorKind::Averaging | OperatorKind::HomomorphicAveraging)
}

fn c4() -> Outcome {
    let start = Instant::now();
    let mut operators = 0;
    let mut failures: Vec<String> = Vec::new();
    let mut split_failures = 0;
    let mut first_split_failure = None;
    let mut failing_kinds = std::collections::BTreeSet::new();
    let mut failing_laws = std::collections::BTreeSet::new();
    for (name, t) in corpus(&lim()).unwrap() {
        for kind in OperatorKind::applicable(&t).into_iter().filter(|&k| splittable(k)) {
            for f in search_operators(&t, kind, &lim()).unwrap() {
                operators += 1;
                let s = split_from_operator_unchecked(&t, &f, kind).unwrap();
                let report = validate_structure(&s);
                if !report.is_valid() {
                    split_failures += 1;
                    failing_kinds.insert(kind.to_string());
                    failing_laws.extend(report.violations.iter().map(|v| v.law.clone()));
                    let v = &report.violations[0];
                    first_split_failure.get_or_insert(format!(
                        "{name} {kind} {:?}: {} at {:?} ({} vs {})",
                        f.image(),
                        v.law,
                        v.args,
                        v.lhs,
                        v.rhs
                    ));
                }
                if !derivable(kind) {
                    continue;
                }
                let d = match derive_truss(&t, &f, kind) {
                    Ok(d) if validate_truss(d.heap(), d.mul_table()).is_valid() => d,
                    other => {
                        failures.push(format!("(a) {name} {kind} {:?}: {:?}", f.image(), other.err()));
                        continue;
                    }
                };
                let combined = s.combined_table().unwrap();
                if &combined != d.mul_table() {
                    failures.push(format!("(c) {name} {kind} {:?}", f.image()));
                }
                if report.is_valid() && subadjacent(&s).ok().as_ref() != Some(&d) {
                    failures.push(format!("(c) subadjacent {name} {kind} {:?}", f.image()));
                }
                if !d.is_morphism_to(&t, f.image()) {
                    failures.push(format!("(d) {name} {kind} {:?}", f.image()));
                }
            }
        }
        for zero in t.absorbers().two_sided {
            for r in search_operators(&t, OperatorKind::RotaBaxterZero { zero }, &lim()).unwrap() {
                let ok = nijenhuis_from_rb0(&t, &r, zero, &lim())
                    .map(|(sq, n)| check_operator(&sq, &n, OperatorKind::Nijenhuis).unwrap().holds)
                    .unwrap_or(false);
                if !ok {
                    failures.push(format!("(e) {name} {:?}", r.image()));
                }
            }
        }
    }
    let others_hold = failures.is_empty();
    if split_failures > 0 {
        failures.insert(
            0,
            format!(
                "(b) {split_failures}/{operators} splits fail validation (kinds {:?}, laws {:?}), first: {}",
                failing_kinds,
                failing_laws,
                first_split_failure.unwrap_or_default()
            ),
        );
        if others_hold {
            failures.push("(a), (c), (d), (e) hold".into());
        }
    }
    within(start, Duration::from_secs(60))?;
    if failures.is_empty() {
        Ok(format!("{operators} operators, (a)-(e) hold ({:.0?})", start.elapsed()))
    } else {
        Err(format!("{operators} operators; {}", failures.join("; ")))
    }
}

fn c5() -> Outcome {
    let start = Instant::now();
    let mut maps = 0u64;
    for n in 1..=3 {
        for (_, h) in abelian_groups(n).unwrap() {
            for t in enumerate_truss_products(&h, &lim()).unwrap() {
                let mut kinds: Vec<OperatorKind> = t
                    .absorbers()
                    .two_sided
                    .into_iter()
                    .map(|zero| OperatorKind::RotaBaxterZero { zero })
                    .collect();
                kinds.extend(t.center().into_iter().map(|weight| OperatorKind::RotaBaxterWeighted { weight }));
                kinds.extend([OperatorKind::AveragingLeft, OperatorKind::AveragingRight]);
                for f in all_maps(n) {
                    maps += 1;
                    for &kind in &kinds {
                        let direct = check_operator(&t, &f, kind).unwrap().holds;
                        let graph = graph_characterization(&t, &f, kind).unwrap();
                        ensure(direct == graph, format!("{kind} {:?} on {:?}: direct {direct}, graph {graph}", f.image(), t.mul_table().rows()))?;
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{maps} (truss, map) pairs agree ({:.0?})", start.elapsed()))
}

fn c6() -> Outcome {
    let mut pairs = 0;
    for (name, t) in corpus(&lim()).unwrap() {
        for zero in t.absorbers().two_sided {
            for d in all_maps(t.size()).filter(EndoMap::is_bijective) {
                let inv = d.inverse().unwrap();
                let holds = |f: &EndoMap, k| check_operator(&t, f, k).unwrap().holds;
                let der = holds(&d, OperatorKind::Derivation { zero });
                let rb0 = holds(&inv, OperatorKind::RotaBaxterZero { zero });
                ensure(der == rb0, format!("{name} {:?}: derivation {der}, RB0 of inverse {rb0}", d.image()))?;
                let mder = holds(&d, OperatorKind::ModifiedDerivation);
                let rey = holds(&inv, OperatorKind::Reynolds);
                ensure(mder == rey, format!("{name} {:?}: modified derivation {mder}, Reynolds of inverse {rey}", d.image()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} bijections checked on both dualities"))
}

fn c7() -> Outcome {
    let (mut trips, mut dendriform) = (0, 0);
    for (name, t) in corpus(&lim()).unwrap() {
        for zero in t.absorbers().two_sided {
            let ring = t.to_ring(zero).unwrap();
            ensure(FiniteTruss::from_ring(&ring).unwrap() == t, format!("T(R({name})) != {name}"))?;
            let back = ring.to_truss().unwrap().to_ring(ring.zero()).unwrap();
            ensure(back == ring, format!("R(T(R)) != R for {name} at {zero}"))?;
            trips += 1;
            for r in search_operators(&t, OperatorKind::RotaBaxterZero { zero }, &lim()).unwrap() {
                let truss_side = split_from_operator(&t, &r, OperatorKind::RotaBaxterZero { zero }).map_err(|e| e.to_string())?;
                let ring_side = truss_side_to_ring_side(&truss_side, zero).map_err(|e| e.to_string())?;
                let classical = dendriform_ring_from_rb_ring(&ring, &r).map_err(|e| e.to_string())?;
                ensure(ring_side == classical, format!("{name}: dendriform ring differs"))?;
                ensure(ring_side_to_truss_side(&ring_side).ok() == Some(truss_side), format!("{name}: dendriform truss differs"))?;
                dendriform += 1;
            }
        }
    }
    Ok(format!("{trips} ring/truss round trips, {dendriform} dendriform correspondences"))
}

fn c8() -> Outcome {
    let (code, v) = trusslab(&["verify", "--in", &fixture("klein_v4.json")]);
    ensure(code == Some(1), format!("exit {code:?}"))?;
    let right: Vec<&Value> =
        v["violations"].as_array().map(|vs| vs.iter().filter(|w| w["law"] == "right-dist").collect()).unwrap_or_default();
    // [a, 0, b] . (a+b) with 0, a, b, a+b = 0, 1, 2, 3
    let witness = right
        .iter()
        .find(|w| w["args"] == serde_json::json!([1, 0, 2, 3]))
        .or(right.first())
        .ok_or("no right-dist witness")?;
    Ok(format!("exit 1, right-dist witness {} ({} vs {})", witness["args"], witness["lhs"], witness["rhs"]))
}

fn c9() -> Outcome {
    let start = Instant::now();
    let mut families = vec![ZFamily::ProjL, ZFamily::ProjR];
    for a in [0, 2, 3] {
        families.extend([ZFamily::F40a { a }, ZFamily::F40b { a }]);
    }
    for c in [1, 2, 3] {
        families.extend([ZFamily::F41a { c }, ZFamily::F41b { c }]);
    }
    for a in 3..=10i64 {
        for b in 2..a {
            if (b * (b - 1)) % a == 0 {
                families.push(ZFamily::F42 { a, b, c: b * (b - 1) / a });
            }
        }
    }
    for f in &families {
        let report = verify_window(&ZTruss::new(*f).map_err(|e| e.to_string())?, 25).unwrap();
        ensure(report.is_valid(), format!("{f}: {} violations", report.violation_count))?;
    }
    for a in [-2, 0, 3] {
        let report = zrb_constant_product(a, 20).unwrap();
        ensure(report.is_valid(), format!("zrb a={a}: {} violations", report.violation_count))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} families at W=25, zrb a in {{-2,0,3}} at W=20 ({:.1?})", families.len(), start.elapsed()))
}

fn c10() -> Outcome {
    let t3 = z2_truss(3).unwrap();
    let found = search_operators(&t3, OperatorKind::Reynolds, &lim()).unwrap();
    let naive = search_operators_naive(&t3, OperatorKind::Reynolds, &lim()).unwrap();
    let mut expected = vec![EndoMap::constant(2, 0), EndoMap::constant(2, 1), EndoMap::identity(2)];
    expected.sort();
    let mut got = found.clone();
    got.sort();
    ensure(got == expected && naive.len() == 3, format!("found {found:?}, naive {naive:?}"))?;
    Ok("Reynolds on (3) = {const-0, const-1, identity}".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Z2 census", c1),
        ("RB0 uniqueness", c2),
        ("weight-1 example", c3),
        ("theorem suite", c4),
        ("graph characterization", c5),
        ("dualities", c6),
        ("functor round trips", c7),
        ("V4 audit", c8),
        ("Z families", c9),
        ("Reynolds inventory", c10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
