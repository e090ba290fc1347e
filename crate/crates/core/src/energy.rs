//! The energy function on `B(ϖ_i) ⊗ B(ϖ_i)`, the uniform refinement `T_N`
//! and the generalized major index `Maj_χ`.
//!
//! `χ` is normalized by `χ(π_{ϖ_i} ⊗ π_{ϖ_i}) = 0`, is unchanged by every
//! operator with label `i ≠ 0`, and moves under label 0 as follows:
//!
//! | operator | acts on | shift |
//! |----------|---------|-------|
//! | `f_0`    | left    | `+1`  |
//! | `f_0`    | right   | `−1`  |
//! | `e_0`    | left    | `−1`  |
//! | `e_0`    | right   | `+1`  |

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::crystal::{CrystalGraph, CrystalKind, FiniteCrystal, Tensor, TensorCrystal};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::rational;

/// `χ` on ordered pairs of nodes of a generated `B(ϖ_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyTable {
    nodes: Vec<Path>,
    seed: usize,
    grid: u64,
    chi: Vec<Vec<i64>>,
}

/// Shift of `χ` when `f_i` (`lowering`) or `e_i` acts on the left or right
/// factor.
pub fn shift(i: usize, lowering: bool, left: bool) -> i64 {
    if i != 0 {
        return 0;
    }
    match (lowering, left) {
        (true, true) | (false, false) => 1,
        (true, false) | (false, true) => -1,
    }
}

/// Least `N` with every breakpoint of every node on the `1/N` grid.
pub fn choose_n(graph: &CrystalGraph<Path>) -> u64 {
    graph.nodes().iter().map(Path::grid).fold(1, rational::lcm_u64)
}

/// Computes `χ` by breadth-first search over `B ⊗ B` from the seed pair.
pub fn energy_table(graph: &CrystalGraph<Path>) -> Result<EnergyTable> {
    build(graph, None)
}

/// Same table, visiting pairs and labels in an order drawn from `rng`.
pub fn energy_table_shuffled<R: Rng>(graph: &CrystalGraph<Path>, rng: &mut R) -> Result<EnergyTable> {
    build(graph, Some(rng))
}

fn build(graph: &CrystalGraph<Path>, mut rng: Option<&mut dyn RngCore>) -> Result<EnergyTable> {
    let seed = graph.seed().ok_or_else(|| Error::Invalid("graph has no seed".into()))?;
    let base = FiniteCrystal::new(graph)?;
    let tensor = TensorCrystal::new(base);
    let n = graph.len();
    let labels = graph.num_labels();
    let mut chi: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];
    chi[seed][seed] = Some(0);
    let mut queue = VecDeque::from([(seed, seed)]);
    let mut reached = 1usize;
    let mut order: Vec<(usize, bool)> = (0..labels).flat_map(|i| [(i, true), (i, false)]).collect();
    while let Some((a, b)) = queue.pop_front() {
        let here = chi[a][b].expect("queued pairs are assigned");
        let word = Tensor::new(vec![graph.node(a).clone(), graph.node(b).clone()]);
        if let Some(r) = rng.as_deref_mut() {
            order.shuffle(r);
        }
        let mut found = Vec::new();
        for &(i, lowering) in &order {
            let next = if lowering { tensor.lower(&word, i)? } else { tensor.raise(&word, i)? };
            let Some(next) = next else { continue };
            let left = next.factors[0] != word.factors[0];
            let a2 = graph.index_of(&next.factors[0]).ok_or(Error::Truncated)?;
            let b2 = graph.index_of(&next.factors[1]).ok_or(Error::Truncated)?;
            let value = here + shift(i, lowering, left);
            match chi[a2][b2] {
                Some(old) if old != value => return Err(Error::InconsistentEnergy(a2, b2, old, value)),
                Some(_) => {}
                None => {
                    chi[a2][b2] = Some(value);
                    reached += 1;
                    found.push((a2, b2));
                }
            }
        }
        if let Some(r) = rng.as_deref_mut() {
            found.shuffle(r);
        }
        queue.extend(found);
    }
    if reached != n * n {
        return Err(Error::DisconnectedTensorSquare(reached, n * n));
    }
    let chi: Vec<Vec<i64>> =
        chi.into_iter().map(|row| row.into_iter().map(|v| v.expect("all reached")).collect()).collect();
    let table = EnergyTable { nodes: graph.nodes().to_vec(), seed, grid: choose_n(graph), chi };
    if let Some(v) = edge_rule_violations(graph, &table).into_iter().next() {
        return Err(Error::Invalid(format!("energy table fails the shift rule: {v}")));
    }
    Ok(table)
}

/// Checks every labeled edge of `B ⊗ B` against the shift rule, deciding
/// the acting factor directly from `φ_i(a)` and `ε_i(b)`.
pub fn edge_rule_violations(graph: &CrystalGraph<Path>, table: &EnergyTable) -> Vec<String> {
    let mut bad = Vec::new();
    let n = graph.len();
    for a in 0..n {
        for b in 0..n {
            for i in 0..graph.num_labels() {
                let (phi_a, eps_b) = (graph.phi(a, i), graph.epsilon(b, i));
                // f_i acts on the left iff φ_i(a) > ε_i(b).
                let f_left = phi_a > eps_b;
                let f_target = if f_left {
                    graph.lower_link(a, i).node().map(|a2| (a2, b))
                } else {
                    graph.lower_link(b, i).node().map(|b2| (a, b2))
                };
                if let Some((a2, b2)) = f_target {
                    let want = table.chi[a][b] + shift(i, true, f_left);
                    if table.chi[a2][b2] != want {
                        bad.push(format!("f_{i} on ({a},{b}): chi {} expected {want}", table.chi[a2][b2]));
                    }
                }
                // e_i acts on the left iff φ_i(a) ≥ ε_i(b).
                let e_left = phi_a >= eps_b;
                let e_target = if e_left {
                    graph.raise_link(a, i).node().map(|a2| (a2, b))
                } else {
                    graph.raise_link(b, i).node().map(|b2| (a, b2))
                };
                if let Some((a2, b2)) = e_target {
                    let want = table.chi[a][b] + shift(i, false, e_left);
                    if table.chi[a2][b2] != want {
                        bad.push(format!("e_{i} on ({a},{b}): chi {} expected {want}", table.chi[a2][b2]));
                    }
                }
            }
        }
    }
    bad
}

impl EnergyTable {
    pub fn nodes(&self) -> &[Path] {
        &self.nodes
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    /// The segmentation denominator `N`.
    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn index_of(&self, p: &Path) -> Result<usize> {
        self.nodes.binary_search(p).map_err(|_| Error::Unregistered(format!("{p} is not a node of the energy table")))
    }

    pub fn chi_at(&self, a: usize, b: usize) -> i64 {
        self.chi[a][b]
    }

    pub fn chi(&self, a: &Path, b: &Path) -> Result<i64> {
        Ok(self.chi[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.chi
    }

    /// `T_N`: the uniform directions of every factor, as linear paths.
    pub fn refine(&self, factors: &[Path]) -> Result<Vec<Path>> {
        refine(factors, self.grid)
    }

    /// `Σ_r r · χ(π_r ⊗ π_{r+1})`.
    pub fn maj(&self, word: &[Path]) -> Result<i64> {
        let idx: Vec<usize> = word.iter().map(|p| self.index_of(p)).collect::<Result<_>>()?;
        Ok(idx.windows(2).enumerate().map(|(r, w)| (r as i64 + 1) * self.chi[w[0]][w[1]]).sum())
    }

    /// `Maj_χ(T_N(b))`.
    pub fn maj_refined(&self, factors: &[Path]) -> Result<i64> {
        self.maj(&self.refine(factors)?)
    }
}

/// `T_N(π_1 ⊗ … ⊗ π_m)`: the concatenated uniform directions, each wrapped
/// as a linear path.
pub fn refine(factors: &[Path], n: u64) -> Result<Vec<Path>> {
    let mut out = Vec::with_capacity(factors.len() * n as usize);
    for p in factors {
        for dir in p.segment_uniform(n)? {
            out.push(Path::linear(dir)?);
        }
    }
    Ok(out)
}

/// Whether some total preorder `⪰` on the nodes satisfies
/// `χ(b ⊗ b′) = 0 ⇔ b ⪰ b′`; returns the node ranking (0 = top) if so.
///
/// Such a preorder exists iff the relation `R = {(b, b′) : χ = 0}` is
/// reflexive, transitive and total, in which case the ranking is read off
/// by counting predecessors.
pub fn compatible_preorder(table: &EnergyTable) -> Option<Vec<usize>> {
    let n = table.nodes.len();
    let r = |a: usize, b: usize| table.chi[a][b] == 0;
    for a in 0..n {
        if !r(a, a) {
            return None;
        }
        for b in 0..n {
            if !r(a, b) && !r(b, a) {
                return None;
            }
            for c in 0..n {
                if r(a, b) && r(b, c) && !r(a, c) {
                    return None;
                }
            }
        }
    }
    Some((0..n).map(|a| (0..n).filter(|&b| r(b, a) && !r(a, b)).count()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::crystal::{generate, GenerateOptions, PathCrystal};
    use crate::weight::Ambient;

    fn fundamental(label: &str, rank: usize, i: usize) -> (CartanData, CrystalGraph<Path>) {
        let c = CartanData::build(label, rank).unwrap();
        let seed = Path::linear(c.classical_fundamental(i).unwrap()).unwrap();
        let g = generate(&PathCrystal::new(&c, Ambient::Classical), seed, GenerateOptions::default()).unwrap();
        (c, g)
    }

    #[test]
    fn a1_table() {
        let (c, g) = fundamental("A", 1, 1);
        let t = energy_table(&g).unwrap();
        let plus = Path::linear(c.classical_fundamental(1).unwrap()).unwrap();
        let minus = Path::linear(-&c.classical_fundamental(1).unwrap()).unwrap();
        assert_eq!(t.chi(&plus, &plus).unwrap(), 0);
        assert_eq!(t.chi(&plus, &minus).unwrap(), 1);
        assert_eq!(t.chi(&minus, &plus).unwrap(), 0);
        assert_eq!(t.chi(&minus, &minus).unwrap(), 0);
        assert_eq!(t.grid(), 1);
        assert_eq!(t.maj(&[plus.clone(), minus.clone()]).unwrap(), 1);
        assert_eq!(t.maj(&[minus.clone(), plus.clone()]).unwrap(), 0);
        assert_eq!(t.maj(&[plus.clone(), plus.clone()]).unwrap(), 0);
        assert_eq!(t.refine(&[plus.clone(), minus.clone()]).unwrap(), vec![plus.clone(), minus]);
        assert_eq!(refine(core::slice::from_ref(&plus), 2).unwrap(), vec![plus.clone(), plus]);
    }

    #[test]
    fn a2_table_has_a_total_preorder() {
        let (_, g) = fundamental("A", 2, 1);
        let t = energy_table(&g).unwrap();
        assert!(t.values().iter().flatten().all(|&v| v == 0 || v == 1));
        assert!(compatible_preorder(&t).is_some());
    }

    #[test]
    fn preorder_rejects_a_cycle() {
        let (_, g) = fundamental("A", 2, 1);
        let mut t = energy_table(&g).unwrap();
        t.chi = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert!(compatible_preorder(&t).is_none());
    }
}
