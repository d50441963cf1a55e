use trusslab::classify::{enumerate_truss_products, operator_inventory};
use trusslab::fixtures::{corpus, z2_truss};
use trusslab::heap::abelian_groups;
use trusslab::operators::{
    all_maps, check_operator, check_rb_ring, graph_characterization, search_operators, search_operators_naive, EndoMap,
    OperatorKind,
};
use trusslab::{FiniteRing, FiniteTruss, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn small_corpus() -> Vec<(String, FiniteTruss)> {
    corpus(&lim()).unwrap().into_iter().filter(|(_, t)| t.size() <= 3).collect()
}

fn holds(t: &FiniteTruss, f: &EndoMap, kind: OperatorKind) -> bool {
    check_operator(t, f, kind).unwrap().holds
}

#[test]
fn decomposition_search_equals_naive_filter() {
    for (name, t) in small_corpus() {
        for kind in OperatorKind::applicable(&t) {
            assert_eq!(
                search_operators(&t, kind, &lim()).unwrap(),
                search_operators_naive(&t, kind, &lim()).unwrap(),
                "{name} {kind}"
            );
        }
    }
}

#[test]
fn averaging_result_sets_nest() {
    for (name, t) in corpus(&lim()).unwrap() {
        let find = |k| search_operators(&t, k, &lim()).unwrap();
        let (hom, both) = (find(OperatorKind::HomomorphicAveraging), find(OperatorKind::Averaging));
        let (left, right) = (find(OperatorKind::AveragingLeft), find(OperatorKind::AveragingRight));
        assert!(hom.iter().all(|f| both.contains(f)), "{name}");
        let meet: Vec<EndoMap> = left.iter().filter(|f| right.contains(f)).cloned().collect();
        assert_eq!(both, meet, "{name}");
    }
}

#[test]
fn inverse_dualities() {
    for (name, t) in small_corpus() {
        for f in all_maps(t.size()) {
            let Some(inv) = f.inverse() else { continue };
            for zero in t.absorbers().two_sided {
                assert_eq!(
                    holds(&t, &f, OperatorKind::Derivation { zero }),
                    holds(&t, &inv, OperatorKind::RotaBaxterZero { zero }),
                    "{name} {f:?}"
                );
            }
            assert_eq!(holds(&t, &f, OperatorKind::ModifiedDerivation), holds(&t, &inv, OperatorKind::Reynolds));
        }
    }
}

#[test]
fn weight_at_absorber_versus_weight_zero() {
    for (name, t) in small_corpus() {
        for zero in t.absorbers().two_sided {
            for f in all_maps(t.size()) {
                let weighted = holds(&t, &f, OperatorKind::RotaBaxterWeighted { weight: zero });
                let rb0 = holds(&t, &f, OperatorKind::RotaBaxterZero { zero });
                if f.apply(zero) == zero {
                    assert_eq!(weighted, rb0, "{name} {f:?}");
                } else {
                    assert!(!rb0);
                }
            }
        }
    }
    // the weighted definition has no R(0) = 0 clause
    let t3 = z2_truss(3).unwrap();
    let one = EndoMap::constant(2, 1);
    assert!(holds(&t3, &one, OperatorKind::RotaBaxterWeighted { weight: 0 }));
    assert!(!holds(&t3, &one, OperatorKind::RotaBaxterZero { zero: 0 }));
}

#[test]
fn graph_closure_alone_misses_the_absorber_condition() {
    use trusslab::products::{ltimes_table, pair};
    let t3 = z2_truss(3).unwrap();
    let square = t3.heap().direct_product(t3.heap());
    let table = ltimes_table(&t3, 0);
    let graph = [pair(2, 1, 0), pair(2, 1, 1)];
    let closed = graph.iter().all(|&p| {
        graph.iter().all(|&q| graph.contains(&table.get(p, q)) && graph.iter().all(|&r| graph.contains(&square.bracket(p, q, r))))
    });
    assert!(closed);
    assert!(!graph_characterization(&t3, &EndoMap::constant(2, 1), OperatorKind::RotaBaxterZero { zero: 0 }).unwrap());
}

#[test]
fn graph_characterization_on_z2() {
    for k in 1..=8 {
        let t = z2_truss(k).unwrap();
        let mut kinds = vec![OperatorKind::AveragingLeft, OperatorKind::AveragingRight, OperatorKind::Averaging, OperatorKind::HomomorphicAveraging];
        kinds.extend(t.absorbers().two_sided.into_iter().map(|zero| OperatorKind::RotaBaxterZero { zero }));
        kinds.extend(t.center().into_iter().map(|weight| OperatorKind::RotaBaxterWeighted { weight }));
        for f in all_maps(2) {
            for &kind in &kinds {
                assert_eq!(graph_characterization(&t, &f, kind).unwrap(), holds(&t, &f, kind), "({k}) {kind} {f:?}");
            }
        }
    }
}

fn rings() -> Vec<FiniteRing> {
    let mut out = vec![FiniteRing::f2(), FiniteRing::integers_mod(3).unwrap(), FiniteRing::integers_mod(4).unwrap()];
    for (_, t) in corpus(&lim()).unwrap() {
        for z in t.absorbers().two_sided {
            out.push(t.to_ring(z).unwrap());
        }
    }
    out
}

#[test]
fn ring_rota_baxter_matches_truss_rota_baxter() {
    for r in rings().into_iter().filter(|r| r.size() <= 4) {
        let t = r.to_truss().unwrap();
        for f in all_maps(r.size()) {
            if !r.is_additive(f.image()) {
                assert!(!check_rb_ring(&r, &f).unwrap().holds);
                continue;
            }
            assert_eq!(
                check_rb_ring(&r, &f).unwrap().holds,
                holds(&t, &f, OperatorKind::RotaBaxterZero { zero: r.zero() }),
                "{r:?} {f:?}"
            );
        }
    }
}

#[test]
fn isomorphic_trusses_have_conjugate_inventories() {
    for n in 2..=3 {
        for (_, heap) in abelian_groups(n).unwrap() {
            let products = enumerate_truss_products(&heap, &lim()).unwrap();
            for a in &products {
                let inv_a = operator_inventory(a, &lim()).unwrap();
                for b in &products {
                    let Some(p) = trusslab::isomorphism(a, b) else { continue };
                    let inv_b = operator_inventory(b, &lim()).unwrap();
                    for kind in OperatorKind::applicable(a) {
                        let moved = match kind {
                            OperatorKind::RotaBaxterZero { zero } => OperatorKind::RotaBaxterZero { zero: p[zero] },
                            OperatorKind::Derivation { zero } => OperatorKind::Derivation { zero: p[zero] },
                            OperatorKind::RotaBaxterWeighted { weight } => OperatorKind::RotaBaxterWeighted { weight: p[weight] },
                            other => other,
                        };
                        let ops_a = &inv_a[&kind.to_string()].operators;
                        let ops_b = &inv_b[&moved.to_string()].operators;
                        assert_eq!(ops_a.len(), ops_b.len());
                        let mut conj: Vec<EndoMap> = ops_a.iter().map(|f| f.conjugate(&p)).collect();
                        conj.sort();
                        assert_eq!(&conj, ops_b);
                    }
                }
            }
        }
    }
}
