//! Verification suites. Each runs an identity exhaustively over generated
//! crystals and returns a [`Report`]; an empty violation list is a pass.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{CartanData, CartanType};
use crate::crystal::{
    generate, normality_audit, phi_epsilon_audit, quasi_inverse_audit, weight_gradient_audit, Affinized, CrystalGraph,
    CrystalKind, FiniteCrystal, GenerateOptions, PathCrystal, Tensor, TensorCrystal,
};
use crate::energy::{compatible_preorder, edge_rule_violations, energy_table, energy_table_shuffled};
use crate::error::Result;
use crate::loop_embed::{kappa, LoopSetup};
use crate::path::Path;
use crate::rational::{self, Q};
use crate::report::Report;
use crate::sl2::{lattice, qbinom, Bracketing, Op, TensorVector};
use crate::weight::Ambient;

/// `B(ϖ_i)`, its tensor power `B(ϖ_i)^{⊗m}` and the concatenation of every
/// tensor word, all generated with a node cap.
#[derive(Debug, Clone)]
pub struct Target {
    pub cartan: CartanData,
    pub i: usize,
    pub m: usize,
    pub fundamental: CrystalGraph<Path>,
    pub power: CrystalGraph<Tensor<Path>>,
}

impl Target {
    pub fn new(cartan: CartanData, i: usize, m: usize, node_cap: usize) -> Result<Self> {
        let opts = GenerateOptions { window: None, node_cap };
        let seed = Path::linear(cartan.classical_fundamental(i)?)?;
        let fundamental = generate(&PathCrystal::new(&cartan, Ambient::Classical), seed.clone(), opts)?;
        let power =
            generate(&TensorCrystal::new(FiniteCrystal::new(&fundamental)?), Tensor::new(vec![seed; m.max(1)]), opts)?;
        Ok(Target { cartan, i, m: m.max(1), fundamental, power })
    }

    /// Every path of `B(ϖ_i)` together with `π_1 * … * π_m` for every word.
    pub fn paths(&self) -> Result<Vec<Path>> {
        let mut set: BTreeSet<Path> = self.fundamental.nodes().iter().cloned().collect();
        for w in self.power.nodes() {
            set.insert(Path::concat(&w.factors)?);
        }
        Ok(set.into_iter().collect())
    }

    fn path_kind(&self) -> PathCrystal<'_> {
        PathCrystal::new(&self.cartan, Ambient::Classical)
    }
}

/// `A·marks = 0`, `comarks·A = 0`, symmetrizability and `a_0 = a_0^∨ = 1`.
pub fn cartan_suite(cartan: &CartanData) -> Report {
    let mut report = Report::new();
    report.push_violations(format!("cartan_{}", cartan.cartan_type()), &cartan.self_check());
    report
}

/// Normality, quasi-inverse, weight gradient and `φ − ε` on `B(ϖ_i)` and
/// `B(ϖ_i)^{⊗m}`, plus tensor associativity and generation independence.
pub fn normality_suite(t: &Target) -> Result<Report> {
    let mut report = Report::new();
    structure_checks(&mut report, "fundamental", &t.cartan, &t.fundamental)?;
    structure_checks(&mut report, "power", &t.cartan, &t.power)?;
    report.push_violations("tensor_associativity", &associativity_violations(t)?);
    report.push_violations("generation_independence", &generation_violations(t)?);
    Ok(report)
}

fn structure_checks<E>(report: &mut Report, tag: &str, cartan: &CartanData, g: &CrystalGraph<E>) -> Result<()> {
    report.push_violations(format!("{tag}_normal"), &normality_audit(g)?);
    report.push_violations(format!("{tag}_quasi_inverse"), &quasi_inverse_audit(g));
    report.push_violations(format!("{tag}_weight_gradient"), &weight_gradient_audit(cartan, g)?);
    report.push_violations(format!("{tag}_phi_minus_epsilon"), &phi_epsilon_audit(g));
    Ok(())
}

/// `(b_1 ⊗ b_2) ⊗ b_3` and `b_1 ⊗ (b_2 ⊗ b_3)` against the flat triple for
/// every triple of `B(ϖ_i)`.
fn associativity_violations(t: &Target) -> Result<Vec<String>> {
    let opts = GenerateOptions::default();
    let single = FiniteCrystal::new(&t.fundamental)?;
    let seed = t.fundamental.node(t.fundamental.seed().expect("seeded"));
    let wrap = TensorCrystal::new(&single);
    let ones = generate(&wrap, Tensor::new(vec![seed.clone()]), opts)?;
    let pairs = generate(&wrap, Tensor::new(vec![seed.clone(); 2]), opts)?;
    // Tag 0 holds the pairs, tag 1 the single factors; tags keep the nodes sorted.
    let mixed = pairs.disjoint_union(&ones);
    let nested = TensorCrystal::new(FiniteCrystal::new(&mixed)?);
    let flat = TensorCrystal::new(&single);
    let flatten = |x: Tensor<(u8, Tensor<Path>)>| -> Tensor<Path> {
        Tensor::new(x.factors.into_iter().flat_map(|(_, w)| w.factors).collect())
    };
    let mut bad = Vec::new();
    let nodes = t.fundamental.nodes();
    for a in nodes {
        for b in nodes {
            for c in nodes {
                let triple = Tensor::new(vec![a.clone(), b.clone(), c.clone()]);
                let left = Tensor::new(vec![
                    (0u8, Tensor::new(vec![a.clone(), b.clone()])),
                    (1u8, Tensor::new(vec![c.clone()])),
                ]);
                let right = Tensor::new(vec![
                    (1u8, Tensor::new(vec![a.clone()])),
                    (0u8, Tensor::new(vec![b.clone(), c.clone()])),
                ]);
                for i in 0..t.cartan.size() {
                    let want = (
                        flat.lower(&triple, i)?,
                        flat.raise(&triple, i)?,
                        flat.epsilon(&triple, i)?,
                        flat.phi(&triple, i)?,
                    );
                    for (side, x) in [("left", &left), ("right", &right)] {
                        let got = (
                            nested.lower(x, i)?.map(flatten),
                            nested.raise(x, i)?.map(flatten),
                            nested.epsilon(x, i)?,
                            nested.phi(x, i)?,
                        );
                        if got != want {
                            bad.push(format!("{side} bracketing, label {i}, triple {triple:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// Regenerating `B(ϖ_i)^{⊗m}` from any of its nodes gives the same set.
fn generation_violations(t: &Target) -> Result<Vec<String>> {
    let kind = TensorCrystal::new(FiniteCrystal::new(&t.fundamental)?);
    let mut bad = Vec::new();
    for x in t.power.nodes() {
        let g = generate(&kind, x.clone(), GenerateOptions::default())?;
        if g.nodes() != t.power.nodes() {
            bad.push(format!("from {x:?}: {} nodes instead of {}", g.len(), t.power.len()));
        }
    }
    Ok(bad)
}

/// `s_i s_i π = π`, `wt(s_i π) = s_i wt(π)`, `s_i π` stays in the crystal,
/// and `s_i π_λ = π_{s_i λ}` on linear paths.
pub fn weyl_suite(t: &Target) -> Result<Report> {
    let paths = t.paths()?;
    let members: BTreeSet<&Path> = paths.iter().collect();
    let (mut invol, mut wt, mut closed, mut linear) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for p in &paths {
        for i in 0..t.cartan.size() {
            let s = p.weyl_act(&t.cartan, i)?;
            if s.weyl_act(&t.cartan, i)? != *p {
                invol.push(format!("s_{i} twice on {p}"));
            }
            if s.endpoint() != t.cartan.reflect(i, &p.endpoint())? {
                wt.push(format!("s_{i} on {p}"));
            }
            if !members.contains(&s) {
                closed.push(format!("s_{i} {p} = {s}"));
            }
            if p.is_linear() && s != Path::linear(t.cartan.reflect(i, &p.endpoint())?)? {
                linear.push(format!("s_{i} {p} = {s}"));
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("weyl_involution", &invol);
    report.push_violations("weyl_weight", &wt);
    report.push_violations("weyl_closed", &closed);
    report.push_violations("weyl_linear", &linear);
    Ok(report)
}

/// `S_n(e_i π) = e_i^n S_n(π)` and the same for `f_i`, for `n = 2, 3`, and
/// the segmentation law for every nonzero `e_i π`.
pub fn stretch_suite(t: &Target) -> Result<Report> {
    let kind = t.path_kind();
    let mut law = Vec::new();
    for p in t.paths()? {
        for n in [2u32, 3] {
            let sp = p.stretch(n)?;
            for i in 0..t.cartan.size() {
                for lowering in [false, true] {
                    let step = |x: &Path| {
                        if lowering {
                            kind.lower(x, i)
                        } else {
                            kind.raise(x, i)
                        }
                    };
                    let lhs = step(&p)?.map(|q| q.stretch(n)).transpose()?;
                    let mut rhs = Some(sp.clone());
                    for _ in 0..n {
                        rhs = match rhs {
                            Some(x) => step(&x)?,
                            None => None,
                        };
                    }
                    // A null e_i π must leave S_n π without any e_i step at all.
                    let rhs_first = step(&sp)?;
                    if lhs != rhs || (lhs.is_none() && rhs_first.is_some()) {
                        let op = if lowering { "f" } else { "e" };
                        law.push(format!("{op}_{i}, n = {n}, on {p}"));
                    }
                }
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("stretch_law", &law);
    let (reflect, sum) = segmentation_violations(t)?;
    report.push_violations("segmentation_reflection", &reflect);
    report.push_violations("segmentation_sum", &sum);
    Ok(report)
}

/// With `k = N·e^i_−` and `l = N·e^i_+`, the uniform directions of `e_i π`
/// are those of `π` with positions `k+1..=l` reflected by `s_i`, and
/// `Σ_{j=k+1}^{l} ⟨α_i^∨, ν_j⟩ = −N`.
fn segmentation_violations(t: &Target) -> Result<(Vec<String>, Vec<String>)> {
    let (mut reflect, mut sum) = (Vec::new(), Vec::new());
    for p in t.paths()? {
        for i in 0..t.cartan.size() {
            let times = p.root_times(&t.cartan, i)?;
            let (Some((lo, hi)), Some(q)) = (times.raise, p.raise(&t.cartan, i)?) else {
                continue;
            };
            let dens = [rational::denom_u64(&lo), rational::denom_u64(&hi)];
            let n = [p.grid(), q.grid()].into_iter().chain(dens.into_iter().flatten()).fold(1, rational::lcm_u64);
            let nq = Q::from_integer(n.into());
            let (k, l) = (rational::to_i64(&(&lo * &nq)), rational::to_i64(&(&hi * &nq)));
            let (Some(k), Some(l)) = (k, l) else {
                reflect.push(format!("e_{i} on {p}: root times off the 1/{n} grid"));
                continue;
            };
            let (k, l) = (k as usize, l as usize);
            let nu = p.segment_uniform(n)?;
            let nu2 = q.segment_uniform(n)?;
            let mut want = nu.clone();
            for v in &mut want[k..l] {
                *v = t.cartan.reflect(i, v)?;
            }
            if want != nu2 {
                reflect.push(format!("e_{i} on {p}, N = {n}, k = {k}, l = {l}"));
            }
            let total: Q = nu[k..l].iter().map(|v| v.coord(i).clone()).sum();
            if total != -nq.clone() {
                sum.push(format!("e_{i} on {p}: sum {} instead of -{n}", rational::to_string(&total)));
            }
        }
    }
    Ok((reflect, sum))
}

/// The map `π_1 ⊗ … ⊗ π_m ↦ π_1 * … * π_m` intertwines the tensor rule with
/// the root operators and preserves `ε`, `φ` and the weight.
pub fn concat_suite(t: &Target) -> Result<Report> {
    let kind = t.path_kind();
    let tensor = TensorCrystal::new(FiniteCrystal::new(&t.fundamental)?);
    let mut bad = Vec::new();
    for (k, w) in t.power.nodes().iter().enumerate() {
        let p = Path::concat(&w.factors)?;
        if p.endpoint() != *t.power.weight(k) {
            bad.push(format!("weight of {w:?}"));
        }
        for i in 0..t.cartan.size() {
            let via_word = |x: Option<Tensor<Path>>| x.map(|x| Path::concat(&x.factors)).transpose();
            let pairs = [
                (kind.lower(&p, i)?, via_word(tensor.lower(w, i)?)?, "f"),
                (kind.raise(&p, i)?, via_word(tensor.raise(w, i)?)?, "e"),
            ];
            for (direct, word, op) in pairs {
                if direct != word {
                    bad.push(format!("{op}_{i} on {w:?}"));
                }
            }
            if kind.epsilon(&p, i)? != t.power.epsilon(k, i) || kind.phi(&p, i)? != t.power.phi(k, i) {
                bad.push(format!("eps/phi_{i} on {w:?}"));
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("concat_matches_tensor_rule", &bad);
    Ok(report)
}

/// `Ξ` commutes with every `e_j`, `f_j` and preserves `ε_j`, `φ_j` on the
/// interior of the affine window generated from `π_{mϖ_i}`.
pub fn xi_suite(cartan: &CartanData, i: usize, m: usize, window: i64, node_cap: usize) -> Result<Report> {
    let affine = PathCrystal::new(cartan, Ambient::Affine);
    let classical = PathCrystal::new(cartan, Ambient::Classical);
    let lambda = cartan.classical_fundamental(i)?.scale(&rational::int(m as i64));
    let seed = Path::linear(lambda.with_delta(Q::zero()))?;
    let g = generate(&affine, seed.clone(), GenerateOptions { window: Some(window), node_cap })?;
    let mut bad = Vec::new();
    if seed.project()? != Path::linear(lambda)? {
        bad.push("Ξ of the linear seed".into());
    }
    for k in g.nodes_within(window - 1) {
        let p = g.node(k);
        let xp = p.project()?;
        for j in 0..cartan.size() {
            let proj = |x: Option<Path>| x.map(|x| x.project()).transpose();
            if proj(affine.raise(p, j)?)? != classical.raise(&xp, j)? {
                bad.push(format!("e_{j} on {p}"));
            }
            if proj(affine.lower(p, j)?)? != classical.lower(&xp, j)? {
                bad.push(format!("f_{j} on {p}"));
            }
            if g.epsilon(k, j) != classical.epsilon(&xp, j)? || g.phi(k, j) != classical.phi(&xp, j)? {
                bad.push(format!("eps/phi_{j} on {p}"));
            }
        }
    }
    let mut report = Report::new();
    report.push("xi_window", !g.is_empty(), format!("{} nodes in window {window}", g.len()));
    report.push_violations("xi_morphism", &bad);
    Ok(report)
}

/// The energy table exists, satisfies the shift rule on every edge of
/// `B ⊗ B`, is nonnegative, does not depend on the search order, and in
/// type `A` with `i = 1` comes from a total preorder.
pub fn energy_suite(t: &Target, seeds: u64) -> Result<Report> {
    let mut report = Report::new();
    let table = energy_table(&t.fundamental)?;
    report.push_violations("energy_edge_rule", &edge_rule_violations(&t.fundamental, &table));
    let negative: Vec<String> = table
        .values()
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter().enumerate().filter(|(_, v)| **v < 0).map(move |(b, v)| format!("chi({a},{b}) = {v}"))
        })
        .collect();
    report.push_violations("energy_nonnegative", &negative);
    let mut differing = Vec::new();
    for s in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        if energy_table_shuffled(&t.fundamental, &mut rng)? != table {
            differing.push(format!("seed {s}"));
        }
    }
    report.push_violations("energy_order_independent", &differing);
    if matches!(t.cartan.cartan_type(), CartanType::A(_)) && t.i == 1 {
        report.push("energy_total_preorder", compatible_preorder(&table).is_some(), String::new());
    }
    Ok(report)
}

/// Along every `f_j` edge of `B(ϖ_i)^{⊗m}`, `Maj_χ` moves by `δ_{j,0}`
/// mod `m` (both over the `m` factors and over `T_N`); and
/// `κ_0 = 0`, `κ_{Nm} = n` for every `b ⊗ t^n` with `|n| ≤ 2`.
pub fn maj_suite(t: &Target) -> Result<Report> {
    let table = energy_table(&t.fundamental)?;
    let m = t.m as i64;
    let (mut plain, mut refined) = (Vec::new(), Vec::new());
    for (src, dst, j) in t.power.edges() {
        let want = i64::from(j == 0);
        let (a, b) = (&t.power.node(src).factors, &t.power.node(dst).factors);
        if (table.maj(b)? - table.maj(a)? - want).rem_euclid(m) != 0 {
            plain.push(format!("f_{j}: {src} -> {dst}"));
        }
        if (table.maj_refined(b)? - table.maj_refined(a)? - want).rem_euclid(m) != 0 {
            refined.push(format!("f_{j}: {src} -> {dst}"));
        }
    }
    let mut ends = Vec::new();
    for w in t.power.nodes() {
        for n in -2..=2 {
            let k = kappa(&w.factors, n, &table)?;
            if !k[0].is_zero() || *k.last().expect("nonempty") != rational::int(n) {
                ends.push(format!("{w:?} at degree {n}"));
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("maj_shift", &plain);
    report.push_violations("maj_shift_refined", &refined);
    report.push_violations("kappa_endpoints", &ends);
    Ok(report)
}

/// The ψ-side checks on a window of the affinized tensor power.
pub fn psi_suite(setup: &LoopSetup, window: i64) -> Result<Report> {
    let ps = setup.psi_side(window)?;
    let mut report = setup.psi_checks(&ps)?;
    let seed = Affinized::new(setup.seed_word(), 0);
    let inside = ps.graph.contains(&seed);
    report.push("psi_window_has_seed", inside, format!("{} sources", ps.graph.len()));
    Ok(report)
}

/// Bracketing independence of the coproduct on a tensor shape.
pub fn bracketing_violations(shape: &[u32]) -> Result<Vec<String>> {
    let k = shape.len();
    let (left, right) = (Bracketing::left_comb(k), Bracketing::right_comb(k));
    let mut bad = Vec::new();
    for idx in TensorVector::indices(shape) {
        let v = TensorVector::basis(shape, &idx)?;
        for op in [Op::E(1), Op::F(1), Op::E(2), Op::F(2), Op::K(1), Op::K(-1)] {
            if v.act_with(op, &left) != v.act_with(op, &right) {
                bad.push(format!("{op:?} on {idx:?}"));
            }
        }
    }
    Ok(bad)
}

/// `[m n]` is a bar-invariant Laurent polynomial for `0 ≤ n ≤ m ≤ max`.
pub fn qbinom_bar_violations(max: u32) -> Vec<String> {
    let mut bad = Vec::new();
    for m in 0..=max {
        for n in 0..=m {
            let b = qbinom(m, n);
            if !b.is_laurent() || b.bar() != b {
                bad.push(format!("[{m} {n}]"));
            }
        }
    }
    bad
}

/// The lattice lemma on `V(t_1) ⊗ V(t_2)` plus the defining relations.
pub fn sl2_suite(t1: u32, t2: u32) -> Result<Report> {
    let (mut report, _) = lattice::verify_lemma(t1, t2)?;
    report.push_violations("sl2_relations", &lattice::relation_violations(&[t1, t2])?);
    Ok(report)
}

/// Relations up to `(max, max)`, bracketing on three factors and the
/// `q`-binomial symmetry.
pub fn arithmetic_suite(max: u32) -> Result<Report> {
    let mut report = Report::new();
    let mut rel = Vec::new();
    for t1 in 0..=max {
        for t2 in 0..=max {
            rel.extend(lattice::relation_violations(&[t1, t2])?.into_iter().map(|v| format!("({t1},{t2}) {v}")));
        }
    }
    report.push_violations("sl2_relations", &rel);
    for shape in [[1u32, 1, 1], [2, 1, 1]] {
        report.push_violations(format!("coproduct_bracketing_{shape:?}"), &bracketing_violations(&shape)?);
    }
    report.push_violations("qbinom_bar_symmetric", &qbinom_bar_violations(8));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::DEFAULT_NODE_CAP;

    fn target(label: &str, rank: usize, i: usize, m: usize) -> Target {
        Target::new(CartanData::build(label, rank).unwrap(), i, m, DEFAULT_NODE_CAP).unwrap()
    }

    fn assert_pass(r: &Report) {
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn a1_suites_pass() {
        let t = target("A", 1, 1, 2);
        for r in [
            normality_suite(&t).unwrap(),
            weyl_suite(&t).unwrap(),
            stretch_suite(&t).unwrap(),
            concat_suite(&t).unwrap(),
            energy_suite(&t, 3).unwrap(),
            maj_suite(&t).unwrap(),
        ] {
            assert_pass(&r);
        }
        assert_pass(&xi_suite(&t.cartan, 1, 1, 3, DEFAULT_NODE_CAP).unwrap());
    }

    #[test]
    fn concat_paths_include_the_fundamental_crystal() {
        let t = target("A", 2, 1, 2);
        assert_eq!(t.power.len(), 9);
        let paths = t.paths().unwrap();
        assert!(t.fundamental.nodes().iter().all(|p| paths.contains(p)));
    }

    #[test]
    fn small_arithmetic() {
        assert_pass(&arithmetic_suite(1).unwrap());
        assert!(qbinom_bar_violations(8).is_empty());
    }
}
