//! The nine acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p loom-cli --test acceptance -- --nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use loom_core::audit::{self, Target};
use loom_core::crystal::{generate, CrystalGraph, GenerateOptions, PathCrystal, DEFAULT_NODE_CAP};
use loom_core::energy::{compatible_preorder, energy_table};
use loom_core::loop_embed::verify_decomposition;
use loom_core::report::Report;
use loom_core::{Ambient, CartanData, Path, Weight};

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { pass: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn report(&mut self, what: &str, r: loom_core::Result<Report>) {
        match r {
            Ok(r) => {
                for c in r.failures() {
                    self.require(false, format!("{what}: {} {}", c.name, c.detail));
                }
            }
            Err(e) => self.require(false, format!("{what}: {e}")),
        }
    }

    fn within(&mut self, start: Instant, limit: Duration, what: &str) {
        let took = start.elapsed();
        self.require(took < limit, format!("{what} took {took:?}, limit {limit:?}"));
    }
}

fn cartan(label: &str, rank: usize) -> CartanData {
    CartanData::build(label, rank).unwrap()
}

fn target(label: &str, rank: usize, m: usize) -> Target {
    Target::new(cartan(label, rank), 1, m, DEFAULT_NODE_CAP).unwrap()
}

fn classical(c: &CartanData, coords: &[i64]) -> CrystalGraph<Path> {
    let seed = Path::linear(Weight::from_ints(coords, None)).unwrap();
    generate(&PathCrystal::new(c, Ambient::Classical), seed, GenerateOptions::default()).unwrap()
}

fn weighted_edges(g: &CrystalGraph<Path>) -> Vec<(Weight, Weight, usize)> {
    let mut out: Vec<_> =
        g.edges().into_iter().map(|(s, d, i)| (g.weight(s).clone(), g.weight(d).clone(), i)).collect();
    out.sort();
    out
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    for (label, rank) in [("A", 1), ("A", 2), ("C", 2), ("B", 3)] {
        let c = cartan(label, rank);
        let n = c.size();
        let a = c.matrix();
        let (marks, comarks, d) = (c.marks(), c.comarks(), c.symmetrizer());
        for i in 0..n {
            let row: i64 = (0..n).map(|j| a[i][j] * marks[j]).sum();
            let col: i64 = (0..n).map(|j| comarks[j] * a[j][i]).sum();
            v.require(row == 0, format!("{label}{rank}: (A·marks)_{i} = {row}"));
            v.require(col == 0, format!("{label}{rank}: (comarks·A)_{i} = {col}"));
            for j in 0..n {
                v.require(d[i] * a[i][j] == d[j] * a[j][i], format!("{label}{rank}: DA not symmetric at ({i},{j})"));
            }
        }
        v.require(marks[0] == 1 && comarks[0] == 1, format!("{label}{rank}: a_0 or a_0^∨ is not 1"));
        v.report(label, Ok(audit::cartan_suite(&c)));
    }
    v.within(start, Duration::from_secs(1), "Cartan checks");
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    let w = |c: &[i64]| Weight::from_ints(c, None);
    // A_1: π₊ = π_{Λ_1 − Λ_0}, f_1 π₊ = π₋ and f_0 π₋ = π₊.
    let a1 = classical(&cartan("A", 1), &[-1, 1]);
    v.require(a1.len() == 2, format!("A1 has {} nodes", a1.len()));
    let mut want = vec![(w(&[-1, 1]), w(&[1, -1]), 1), (w(&[1, -1]), w(&[-1, 1]), 0)];
    want.sort();
    v.require(weighted_edges(&a1) == want, "A1 edges differ from f_1: π₊ → π₋, f_0: π₋ → π₊");
    // A_2: ϖ_1 → ϖ_1 − α_1 → ϖ_1 − α_1 − α_2 → ϖ_1.
    let a2 = classical(&cartan("A", 2), &[-1, 1, 0]);
    v.require(a2.len() == 3, format!("A2 has {} nodes", a2.len()));
    let mut want = vec![
        (w(&[-1, 1, 0]), w(&[0, -1, 1]), 1),
        (w(&[0, -1, 1]), w(&[1, 0, -1]), 2),
        (w(&[1, 0, -1]), w(&[-1, 1, 0]), 0),
    ];
    want.sort();
    v.require(weighted_edges(&a2) == want, "A2 edges are not the three-cycle");
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let mut targets = Vec::new();
    for m in 1..=3 {
        targets.push(("A", 1, m));
        targets.push(("A", 2, m));
    }
    targets.push(("C", 2, 1));
    for (label, rank, m) in targets {
        let t = target(label, rank, m);
        let what = format!("{label}{rank} m={m}");
        v.report(&what, audit::normality_suite(&t));
        v.report(&what, audit::weyl_suite(&t));
        v.report(&what, audit::stretch_suite(&t));
        v.report(&what, audit::concat_suite(&t));
        v.report(&what, audit::xi_suite(&t.cartan, 1, m, 2, DEFAULT_NODE_CAP));
    }
    v.within(start, Duration::from_secs(30), "operator suites");
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    let c = cartan("A", 1);
    let g = classical(&c, &[-1, 1]);
    let table = energy_table(&g).unwrap();
    let plus = Path::linear(Weight::from_ints(&[-1, 1], None)).unwrap();
    let minus = Path::linear(Weight::from_ints(&[1, -1], None)).unwrap();
    for (a, b, want) in [(&plus, &plus, 0), (&plus, &minus, 1), (&minus, &plus, 0), (&minus, &minus, 0)] {
        let got = table.chi(a, b).unwrap();
        v.require(got == want, format!("χ({a}, {b}) = {got}, expected {want}"));
    }
    for (label, rank) in [("A", 1), ("A", 2), ("C", 2)] {
        v.report(label, audit::energy_suite(&target(label, rank, 2), 20));
    }
    for rank in [1, 2] {
        let t = target("A", rank, 1);
        let table = energy_table(&t.fundamental).unwrap();
        v.require(compatible_preorder(&table).is_some(), format!("A{rank}: no total preorder compatible with χ"));
    }
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    for rank in [1, 2] {
        for m in [2, 3] {
            v.report(&format!("A{rank} m={m}"), audit::maj_suite(&target("A", rank, m)));
        }
    }
    v
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    for (label, rank, m, window) in [("A", 1, 1, 3), ("A", 1, 2, 3), ("A", 1, 3, 4), ("A", 2, 2, 3)] {
        let what = format!("{label}{rank} m={m} W={window}");
        let start = Instant::now();
        v.report(&what, verify_decomposition(label, rank, 1, m, window).map(|(r, _)| r));
        v.within(start, Duration::from_secs(60), &what);
    }
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    for t1 in 0..=4 {
        for t2 in 0..=4 {
            v.report(&format!("({t1},{t2})"), audit::sl2_suite(t1, t2));
        }
    }
    v.within(start, Duration::from_secs(60), "lattice lemma grid");
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    v.report("arithmetic", audit::arithmetic_suite(4));
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    let artifacts: [&[&str]; 7] = [
        &["cartan", "--type", "B", "--rank", "3"],
        &["gen", "--type", "A", "--rank", "2", "--power", "2"],
        &["gen", "--type", "A", "--rank", "1", "--ls", "--weight", "2w1+1d", "--window", "3", "--format", "dot"],
        &["gen", "--type", "A", "--rank", "1", "--m", "2", "--affinize", "--window", "2"],
        &["energy", "--type", "C", "--rank", "2"],
        &["embed", "--type", "A", "--rank", "1", "--m", "2", "--window", "3"],
        &["verify", "all", "--type", "A", "--rank", "1", "--m", "2"],
    ];
    let dir = tempfile::tempdir().unwrap();
    for args in artifacts {
        let mut outputs = Vec::new();
        for (run, threads) in [(0, "1"), (1, "1"), (2, "4")] {
            let file = dir.path().join(format!("run{run}"));
            let status = Command::new(env!("CARGO_BIN_EXE_loom"))
                .args(["--threads", threads])
                .args(args)
                .arg("--output")
                .arg(&file)
                .env_remove("LOOM_NODE_CAP")
                .status()
                .unwrap();
            v.require(status.success(), format!("{args:?} exited with {status}"));
            outputs.push(std::fs::read(&file).unwrap_or_default());
        }
        v.require(!outputs[0].is_empty(), format!("{args:?} wrote nothing"));
        v.require(outputs[0] == outputs[1], format!("{args:?} differs between runs"));
        v.require(outputs[0] == outputs[2], format!("{args:?} differs between 1 and 4 threads"));
    }
    v
}

type Criterion = (&'static str, fn() -> Verdict);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("Cartan self-consistency", criterion_1),
        ("path operator base cases", criterion_2),
        ("operator identity suites", criterion_3),
        ("energy function", criterion_4),
        ("major index and kappa", criterion_5),
        ("decomposition desk runs", criterion_6),
        ("crystal lattice lemma", criterion_7),
        ("arithmetic layer", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let tag = if verdict.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name} ({:.2?})", n + 1, start.elapsed());
        for note in verdict.notes.iter().take(5) {
            println!("    {note}");
        }
        if !verdict.pass {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
