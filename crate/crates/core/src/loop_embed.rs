//! The embedding `ψ` of the affinized tensor power `B(ϖ_i)^{⊗m} × ℤ` into
//! the affine path crystal, and the check that its image splits as
//! `⊔_{s<m} B(mϖ_i + sδ)`.
//!
//! For `b = π_1 ⊗ … ⊗ π_m` refined to `T_N(b) = π_{ν_1} ⊗ … ⊗ π_{ν_{Nm}}`,
//! `ψ(b ⊗ t^n)` is the path through the turning points
//! `λ_j + κ_j δ` at times `j/Nm`, where `λ_j = (1/N) Σ_{k≤j} ν_k` and
//!
//! ```text
//! κ_j = (j/Nm)(Maj_χ(T_N b)/N + n) − (1/N) Σ_{s<j} s·χ_s − (j/N) Σ_{s≥j} χ_s
//! ```
//!
//! with `χ_s = χ(π_{ν_s} ⊗ π_{ν_{s+1}})`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cartan::CartanData;
use crate::crystal::{
    generate, Affinization, Affinized, CrystalGraph, CrystalKind, FiniteCrystal, GenerateOptions, PathCrystal, Tensor,
    TensorCrystal, DEFAULT_NODE_CAP,
};
use crate::energy::{energy_table, EnergyTable};
use crate::error::{Error, Result};
use crate::path::{Path, Segment};
use crate::rational::{self, Q};
use crate::report::Report;
use crate::weight::{Ambient, Weight};

pub type AffineWord = Affinized<Tensor<Path>>;

/// `ψ(x)` together with the pre-merge turning data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiImage {
    pub path: Path,
    /// `κ_0, …, κ_{Nm}`.
    pub kappa: Vec<Q>,
    /// `λ̂_0, …, λ̂_{Nm}`.
    pub turning_points: Vec<Weight>,
}

/// `κ_0, …, κ_{Nm}` for `b ⊗ t^n`.
pub fn kappa(factors: &[Path], degree: i64, table: &EnergyTable) -> Result<Vec<Q>> {
    let word = table.refine(factors)?;
    kappa_of_refined(&word, degree, table)
}

fn kappa_of_refined(word: &[Path], degree: i64, table: &EnergyTable) -> Result<Vec<Q>> {
    let len = word.len();
    let n = Q::from_integer(table.grid().into());
    let idx: Vec<usize> = word.iter().map(|p| table.index_of(p)).collect::<Result<_>>()?;
    // chi[s-1] = χ_s for s = 1..len-1
    let chi: Vec<i64> = idx.windows(2).map(|w| table.chi_at(w[0], w[1])).collect();
    let maj: i64 = chi.iter().enumerate().map(|(k, &c)| (k as i64 + 1) * c).sum();
    let lead = Q::from_integer(maj.into()) / &n + rational::int(degree);
    let total = rational::int(len as i64);
    let mut out = Vec::with_capacity(len + 1);
    for j in 0..=len {
        let before: i64 = (1..j).map(|s| s as i64 * chi[s - 1]).sum();
        let after: i64 = (j.max(1)..len).map(|s| chi[s - 1]).sum();
        let jq = rational::int(j as i64);
        let k = &jq / &total * &lead - rational::int(before) / &n - &jq / &n * rational::int(after);
        out.push(k);
    }
    Ok(out)
}

/// `ψ(b ⊗ t^n)`.
pub fn psi(x: &AffineWord, table: &EnergyTable) -> Result<PsiImage> {
    let word = table.refine(&x.base.factors)?;
    let kappa = kappa_of_refined(&word, x.degree, table)?;
    let len = word.len();
    let n = Q::from_integer(table.grid().into());
    let size = word[0].size();
    let mut lambda = Weight::zero(size, Ambient::Classical);
    let mut points = vec![lambda.with_delta(Q::zero())];
    for (j, p) in word.iter().enumerate() {
        lambda = lambda.try_add(&p.endpoint().scale(&n.recip()))?;
        points.push(lambda.with_delta(kappa[j + 1].clone()));
    }
    let total = rational::int(len as i64);
    let step = total.recip();
    let segments = points
        .windows(2)
        .map(|w| Ok(Segment { dir: w[1].try_sub(&w[0])?.scale(&total), len: step.clone() }))
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiImage { path: Path::new(segments)?, kappa, turning_points: points })
}

/// The class `s ∈ {0, …, m−1}` of `b ⊗ t^n`: `(Maj_χ(b) + n) mod m`, with
/// `Maj_χ` taken over the `m` factors of `b`.
pub fn c_class(x: &AffineWord, table: &EnergyTable, m: usize) -> Result<usize> {
    let maj = table.maj(&x.base.factors)?;
    Ok((maj + x.degree).rem_euclid(m as i64) as usize)
}

/// Everything that does not depend on the window: `B(ϖ_i)`, its energy
/// table and the tensor power `B(ϖ_i)^{⊗m}`.
#[derive(Debug, Clone)]
pub struct LoopSetup {
    pub cartan: CartanData,
    pub i: usize,
    pub m: usize,
    pub node_cap: usize,
    pub fundamental: CrystalGraph<Path>,
    pub table: EnergyTable,
    pub power: CrystalGraph<Tensor<Path>>,
}

impl LoopSetup {
    pub fn new(cartan: CartanData, i: usize, m: usize) -> Result<Self> {
        Self::with_cap(cartan, i, m, DEFAULT_NODE_CAP)
    }

    pub fn with_cap(cartan: CartanData, i: usize, m: usize, node_cap: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("tensor power must be at least 1".into()));
        }
        let opts = GenerateOptions { window: None, node_cap };
        let varpi = cartan.classical_fundamental(i)?;
        let seed = Path::linear(varpi)?;
        let fundamental = generate(&PathCrystal::new(&cartan, Ambient::Classical), seed.clone(), opts)?;
        let table = energy_table(&fundamental)?;
        let tensor = TensorCrystal::new(FiniteCrystal::new(&fundamental)?);
        let power = generate(&tensor, Tensor::new(vec![seed; m]), opts)?;
        Ok(LoopSetup { cartan, i, m, node_cap, fundamental, table, power })
    }

    pub fn seed_word(&self) -> Tensor<Path> {
        let seed = self.fundamental.node(self.fundamental.seed().expect("generated graph has a seed"));
        Tensor::new(vec![seed.clone(); self.m])
    }

    /// `π_{mϖ_i + nδ}`.
    pub fn linear_seed(&self, n: i64) -> Result<Path> {
        let w = self.cartan.classical_fundamental(self.i)?.scale(&rational::int(self.m as i64));
        Path::linear(w.with_delta(rational::int(n)))
    }

    /// The affinized tensor power restricted to degrees `|n| ≤ window`,
    /// mapped through `ψ`.
    pub fn psi_side(&self, window: i64) -> Result<PsiSide> {
        let mut elems = Vec::with_capacity(self.power.len() * (2 * window as usize + 1));
        for b in self.power.nodes() {
            for n in -window..=window {
                elems.push(Affinized::new(b.clone(), n));
            }
        }
        if elems.len() > self.node_cap {
            return Err(Error::NodeCap(self.node_cap));
        }
        let kind = Affinization::new(TensorCrystal::new(FiniteCrystal::new(&self.fundamental)?));
        let graph = CrystalGraph::from_elements(&kind, elems, Some(window))?;
        let images = graph.nodes().iter().map(|x| psi(x, &self.table)).collect::<Result<Vec<_>>>()?;
        let classes = graph.nodes().iter().map(|x| c_class(x, &self.table, self.m)).collect::<Result<Vec<_>>>()?;
        Ok(PsiSide { window, graph, images, classes })
    }

    /// `B(mϖ_i + sδ)` for `s < m` and, for the periodicity check,
    /// `B(mϖ_i + rδ)` for `|r| < window`, each generated in the window.
    pub fn direct_side(&self, window: i64) -> Result<DirectSide> {
        let kind = PathCrystal::new(&self.cartan, Ambient::Affine);
        let opts = GenerateOptions { window: Some(window), node_cap: self.node_cap };
        let mut shifted = BTreeMap::new();
        for r in -(window - 1)..=(window - 1) {
            shifted.insert(r, generate(&kind, self.linear_seed(r)?, opts)?);
        }
        let pieces = (0..self.m as i64)
            .map(|s| match shifted.get(&s) {
                Some(g) => Ok(g.clone()),
                None => generate(&kind, self.linear_seed(s)?, opts),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DirectSide { window, pieces, shifted })
    }

    /// Checks on the ψ side alone: injectivity, edges, seeds, projection,
    /// `κ` endpoints and the class partition.
    pub fn psi_checks(&self, ps: &PsiSide) -> Result<Report> {
        let mut report = Report::new();
        let kind = PathCrystal::new(&self.cartan, Ambient::Affine);
        let interior: Vec<usize> = ps.graph.nodes_within(ps.window - 1);
        let all: BTreeSet<&Path> = ps.images.iter().map(|im| &im.path).collect();
        report.push(
            "psi_injective",
            all.len() == ps.images.len(),
            format!("{} sources, {} distinct images", ps.images.len(), all.len()),
        );

        let mut edge_bad = Vec::new();
        for &k in &interior {
            let image = &ps.images[k].path;
            for j in 0..self.cartan.size() {
                for lowering in [true, false] {
                    let link = if lowering { ps.graph.lower_link(k, j) } else { ps.graph.raise_link(k, j) };
                    let via_source = link.node().map(|t| &ps.images[t].path);
                    let direct = if lowering { kind.lower(image, j)? } else { kind.raise(image, j)? };
                    if via_source != direct.as_ref() {
                        let op = if lowering { "f" } else { "e" };
                        edge_bad.push(format!("{op}_{j} at {:?}", ps.graph.node(k)));
                    }
                }
            }
        }
        report.push_violations("psi_edge_preserving", &edge_bad);

        let mut seed_bad = Vec::new();
        let seed = self.seed_word();
        for n in -ps.window..=ps.window {
            let x = Affinized::new(seed.clone(), n);
            if psi(&x, &self.table)?.path != self.linear_seed(n)? {
                seed_bad.push(format!("degree {n}"));
            }
        }
        report.push_violations("psi_linear_seeds", &seed_bad);

        let mut proj_bad = Vec::new();
        let mut kappa_bad = Vec::new();
        for (k, x) in ps.graph.nodes().iter().enumerate() {
            let im = &ps.images[k];
            if im.path.project()? != Path::concat(&x.base.factors)? {
                proj_bad.push(format!("{x:?}"));
            }
            let last = im.kappa.last().expect("nonempty");
            let wt = ps.graph.weight(k);
            if !im.kappa[0].is_zero() || *last != rational::int(x.degree) || im.path.endpoint() != *wt {
                kappa_bad.push(format!("{x:?}"));
            }
        }
        report.push_violations("classical_projection", &proj_bad);
        report.push_violations("kappa_endpoints", &kappa_bad);

        let mut cross = Vec::new();
        for (src, dst, j) in ps.graph.edges() {
            if ps.classes[src] != ps.classes[dst] {
                cross.push(format!("edge {src} -{j}-> {dst}"));
            }
        }
        report.push_violations("class_partition", &cross);

        Ok(report)
    }

    /// Compares the two sides on the shrunken window `|δ| ≤ window − 1`.
    pub fn compare(&self, ps: &PsiSide, ds: &DirectSide) -> Result<Report> {
        let inner = ps.window - 1;
        let mut report = Report::new();
        let interior: Vec<usize> = ps.graph.nodes_within(inner);

        let expected = self.fundamental.len().pow(self.m as u32);
        let power_ok = self.power.len() == expected && self.power.is_indecomposable()?;
        report.push(
            "tensor_power_indecomposable",
            power_ok,
            format!("{} nodes (expected {expected})", self.power.len()),
        );

        let piece_sets: Vec<BTreeSet<&Path>> =
            ds.pieces.iter().map(|g| g.nodes_within(inner).into_iter().map(|k| g.node(k)).collect()).collect();
        let union: BTreeSet<&Path> = piece_sets.iter().flatten().copied().collect();
        let image: BTreeSet<&Path> = interior.iter().map(|&k| &ps.images[k].path).collect();
        let missing = union.difference(&image).count();
        let extra = image.difference(&union).count();
        report.push(
            "image_equals_union",
            missing == 0 && extra == 0,
            format!("image {} nodes, union {} nodes, {missing} missing, {extra} extra", image.len(), union.len()),
        );

        let piece_total: usize = piece_sets.iter().map(BTreeSet::len).sum();
        report.push(
            "pieces_disjoint",
            piece_total == union.len(),
            format!("piece sizes {:?}", piece_sets.iter().map(BTreeSet::len).collect::<Vec<_>>()),
        );
        report.push(
            "node_counts",
            piece_total == image.len() && image.len() == interior.len(),
            format!("sum of pieces {piece_total}, image {}, sources {}", image.len(), interior.len()),
        );

        let mut class_bad = Vec::new();
        for (s, piece) in piece_sets.iter().enumerate() {
            let from_class: BTreeSet<&Path> =
                interior.iter().filter(|&&k| ps.classes[k] == s).map(|&k| &ps.images[k].path).collect();
            if from_class != *piece {
                class_bad.push(format!("class {s}: image {} nodes vs piece {} nodes", from_class.len(), piece.len()));
            }
        }
        report.push_violations("psi_class_matches", &class_bad);

        report.extend(self.psi_checks(ps)?);

        let mut period_bad = Vec::new();
        for (&r, g) in &ds.shifted {
            let s = r.rem_euclid(self.m as i64) as usize;
            let set: BTreeSet<&Path> = g.nodes_within(inner).into_iter().map(|k| g.node(k)).collect();
            if set != piece_sets[s] {
                period_bad.push(format!("r = {r}: {} nodes vs piece {s} with {}", set.len(), piece_sets[s].len()));
            }
        }
        report.push_violations("periodicity", &period_bad);

        let disconnected: Vec<String> = ds
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.window_connected())
            .map(|(s, _)| format!("piece {s}"))
            .collect();
        report.push_violations("pieces_window_connected", &disconnected);
        Ok(report)
    }
}

#[derive(Debug, Clone)]
pub struct PsiSide {
    pub window: i64,
    pub graph: CrystalGraph<AffineWord>,
    pub images: Vec<PsiImage>,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DirectSide {
    pub window: i64,
    /// `B(mϖ_i + sδ)` for `s = 0, …, m−1`.
    pub pieces: Vec<CrystalGraph<Path>>,
    /// `B(mϖ_i + rδ)` for `|r| ≤ window − 1`.
    pub shifted: BTreeMap<i64, CrystalGraph<Path>>,
}

/// Node counts reported alongside the checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCounts {
    pub image: usize,
    pub pieces: Vec<usize>,
}

impl DecompositionCounts {
    pub fn of(ps: &PsiSide, ds: &DirectSide) -> Self {
        let inner = ps.window - 1;
        DecompositionCounts {
            image: ps.graph.nodes_within(inner).len(),
            pieces: ds.pieces.iter().map(|g| g.nodes_within(inner).len()).collect(),
        }
    }
}

/// Runs both generations and the comparison.
pub fn verify_decomposition(
    label: &str,
    rank: usize,
    i: usize,
    m: usize,
    window: i64,
) -> Result<(Report, DecompositionCounts)> {
    if window < 2 {
        return Err(Error::Invalid("window must be at least 2".into()));
    }
    let setup = LoopSetup::new(CartanData::build(label, rank)?, i, m)?;
    let ps = setup.psi_side(window)?;
    let ds = setup.direct_side(window)?;
    Ok((setup.compare(&ps, &ds)?, DecompositionCounts::of(&ps, &ds)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn a1(m: usize) -> LoopSetup {
        LoopSetup::new(CartanData::build("A", 1).unwrap(), 1, m).unwrap()
    }

    fn pm(s: &LoopSetup) -> (Path, Path) {
        let w = s.cartan.classical_fundamental(1).unwrap();
        (Path::linear(w.clone()).unwrap(), Path::linear(-&w).unwrap())
    }

    #[test]
    fn kappa_example() {
        let s = a1(2);
        let (plus, minus) = pm(&s);
        let k = kappa(&[plus, minus], 0, &s.table).unwrap();
        assert_eq!(k, vec![Q::zero(), frac(-1, 2), Q::zero()]);
    }

    #[test]
    fn psi_examples() {
        let s = a1(2);
        let (plus, minus) = pm(&s);
        let w = s.cartan.classical_fundamental(1).unwrap();
        let seed = Affinized::new(Tensor::new(vec![plus.clone(), plus.clone()]), 0);
        assert_eq!(psi(&seed, &s.table).unwrap().path, s.linear_seed(0).unwrap());

        let x = Affinized::new(Tensor::new(vec![plus.clone(), minus.clone()]), 0);
        let im = psi(&x, &s.table).unwrap();
        assert_eq!(im.turning_points[1], w.with_delta(frac(-1, 2)));
        assert!(im.path.endpoint().is_zero());
        assert_eq!(im.path.segments().len(), 2);

        let raised = im.path.raise(&s.cartan, 0).unwrap().unwrap();
        let y = Affinized::new(Tensor::new(vec![minus.clone(), minus.clone()]), 1);
        let im_y = psi(&y, &s.table).unwrap();
        assert_eq!(raised, im_y.path);
        assert_eq!(im_y.kappa[1], frac(1, 2));
        assert_eq!(raised.endpoint(), (-&w.scale(&rational::int(2))).with_delta(rational::int(1)));
    }

    #[test]
    fn classes_of_seeds() {
        let s = a1(3);
        for r in -4..=4 {
            let x = Affinized::new(s.seed_word(), r);
            assert_eq!(c_class(&x, &s.table, 3).unwrap() as i64, r.rem_euclid(3));
        }
    }

    #[test]
    fn a1_m2_decomposes() {
        let (report, counts) = verify_decomposition("A", 1, 1, 2, 3).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(counts.pieces.iter().sum::<usize>(), counts.image);
    }
}
