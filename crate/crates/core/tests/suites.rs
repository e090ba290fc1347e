use loom_core::audit::{self, Target};
use loom_core::crystal::DEFAULT_NODE_CAP;
use loom_core::loop_embed::LoopSetup;
use loom_core::report::Report;
use loom_core::CartanData;

fn target(label: &str, rank: usize, i: usize, m: usize) -> Target {
    Target::new(CartanData::build(label, rank).unwrap(), i, m, DEFAULT_NODE_CAP).unwrap()
}

fn assert_pass(what: &str, r: &Report) {
    let failures: Vec<_> = r.failures().collect();
    assert!(failures.is_empty(), "{what}: {failures:?}");
}

#[test]
fn operator_identities_on_small_crystals() {
    let mut targets = Vec::new();
    for m in 1..=3 {
        targets.push(target("A", 1, 1, m));
        targets.push(target("A", 2, 1, m));
    }
    targets.push(target("C", 2, 1, 1));
    for t in &targets {
        let what = format!("{} i={} m={}", t.cartan.cartan_type(), t.i, t.m);
        assert_pass(&what, &audit::normality_suite(t).unwrap());
        assert_pass(&what, &audit::weyl_suite(t).unwrap());
        assert_pass(&what, &audit::stretch_suite(t).unwrap());
        assert_pass(&what, &audit::concat_suite(t).unwrap());
    }
}

#[test]
fn energy_and_major_index() {
    for (label, rank) in [("A", 1), ("A", 2), ("C", 2)] {
        let t = target(label, rank, 1, 2);
        assert_pass(label, &audit::energy_suite(&t, 5).unwrap());
    }
    for (label, rank) in [("A", 1), ("A", 2)] {
        for m in 2..=3 {
            assert_pass(label, &audit::maj_suite(&target(label, rank, 1, m)).unwrap());
        }
    }
}

#[test]
fn energy_preorder_reported_only_for_type_a() {
    let c2 = audit::energy_suite(&target("C", 2, 1, 1), 1).unwrap();
    assert!(c2.checks.iter().all(|c| c.name != "energy_total_preorder"));
    let a2 = audit::energy_suite(&target("A", 2, 1, 1), 1).unwrap();
    assert!(a2.checks.iter().any(|c| c.name == "energy_total_preorder" && c.pass));
}

#[test]
fn projection_commutes_with_operators() {
    let a1 = CartanData::build("A", 1).unwrap();
    assert_pass("A1", &audit::xi_suite(&a1, 1, 1, 3, DEFAULT_NODE_CAP).unwrap());
    assert_pass("A1 m=2", &audit::xi_suite(&a1, 1, 2, 3, DEFAULT_NODE_CAP).unwrap());
    let a2 = CartanData::build("A", 2).unwrap();
    assert_pass("A2", &audit::xi_suite(&a2, 1, 1, 2, DEFAULT_NODE_CAP).unwrap());
}

#[test]
fn psi_side_alone() {
    let setup = LoopSetup::new(CartanData::build("A", 1).unwrap(), 1, 2).unwrap();
    assert_pass("psi", &audit::psi_suite(&setup, 3).unwrap());
}

#[test]
fn lattice_lemma_up_to_three() {
    for t1 in 1..=3 {
        for t2 in 1..=3 {
            assert_pass(&format!("({t1},{t2})"), &audit::sl2_suite(t1, t2).unwrap());
        }
    }
}

#[test]
fn arithmetic_layer() {
    assert_pass("arithmetic", &audit::arithmetic_suite(3).unwrap());
}

#[test]
fn cartan_types() {
    for (label, rank) in [("A", 1), ("A", 2), ("C", 2), ("B", 3), ("D", 4), ("G", 2), ("F", 4), ("E", 6)] {
        assert_pass(label, &audit::cartan_suite(&CartanData::build(label, rank).unwrap()));
    }
}
