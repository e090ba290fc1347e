use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::CrystalKind;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::weight::Weight;

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// Where an operator sends a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Link {
    /// The operator returns null.
    Null,
    /// The operator lands on the node with this index.
    Node(usize),
    /// The operator lands outside the generated window.
    Outside,
}

impl Link {
    pub fn node(self) -> Option<usize> {
        match self {
            Link::Node(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    /// Keep only nodes whose weight has `|δ-coordinate| ≤ window`.
    pub window: Option<i64>,
    pub node_cap: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { window: None, node_cap: DEFAULT_NODE_CAP }
    }
}

impl GenerateOptions {
    pub fn window(window: i64) -> Self {
        GenerateOptions { window: Some(window), ..Self::default() }
    }
}

/// A finite (possibly windowed) crystal with its structure tables.
///
/// Nodes are sorted by their canonical key, so the node indices and every
/// table are determined by the node set alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph<E> {
    nodes: Vec<E>,
    weights: Vec<Weight>,
    eps: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
    lower: Vec<Vec<Link>>,
    raise: Vec<Vec<Link>>,
    labels: usize,
    seed: Option<usize>,
    truncated: bool,
    window: Option<i64>,
}

/// BFS closure of `seed` under all `e_i`, `f_i`.
pub fn generate<K: CrystalKind>(kind: &K, seed: K::Elem, opts: GenerateOptions) -> Result<CrystalGraph<K::Elem>> {
    if kind.is_affine() && opts.window.is_none() {
        return Err(Error::BoundRequired);
    }
    let inside = |x: &K::Elem| -> Result<bool> { in_window(&kind.weight(x)?, opts.window) };
    if !inside(&seed)? {
        return Err(Error::Invalid("seed lies outside the window".into()));
    }
    let mut seen: BTreeSet<K::Elem> = BTreeSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for x in &frontier {
            for i in 0..kind.num_labels() {
                for y in [kind.lower(x, i)?, kind.raise(x, i)?].into_iter().flatten() {
                    if !seen.contains(&y) && inside(&y)? {
                        next.insert(y);
                    }
                }
            }
        }
        for y in &next {
            seen.insert(y.clone());
        }
        if seen.len() > opts.node_cap {
            return Err(Error::NodeCap(opts.node_cap));
        }
        frontier = next.into_iter().collect();
    }
    let mut graph = CrystalGraph::build(kind, seen.into_iter().collect(), opts.window)?;
    graph.seed = graph.index_of(&seed);
    Ok(graph)
}

fn in_window(w: &Weight, window: Option<i64>) -> Result<bool> {
    let Some(bound) = window else {
        return Ok(true);
    };
    let d = w.delta().cloned().unwrap_or_else(Q::zero);
    Ok(d <= Q::from_integer(bound.into()) && d >= Q::from_integer((-bound).into()))
}

impl<E: Clone + Ord> CrystalGraph<E> {
    /// Builds the tables for an explicit node set. Operators that leave the
    /// set are recorded as [`Link::Outside`] and mark the graph truncated.
    pub fn from_elements<K: CrystalKind<Elem = E>>(kind: &K, elems: Vec<E>, window: Option<i64>) -> Result<Self> {
        let set: BTreeSet<E> = elems.into_iter().collect();
        Self::build(kind, set.into_iter().collect(), window)
    }

    fn build<K: CrystalKind<Elem = E>>(kind: &K, nodes: Vec<E>, window: Option<i64>) -> Result<Self> {
        let labels = kind.num_labels();
        let index: BTreeMap<&E, usize> = nodes.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let link = |y: Option<E>| match y {
            None => Link::Null,
            Some(y) => index.get(&y).map_or(Link::Outside, |&k| Link::Node(k)),
        };
        let n = nodes.len();
        let (mut weights, mut eps, mut phi) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        let (mut lower, mut raise) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let mut truncated = false;
        for x in &nodes {
            weights.push(kind.weight(x)?);
            let mut e = Vec::with_capacity(labels);
            let mut p = Vec::with_capacity(labels);
            let mut lo = Vec::with_capacity(labels);
            let mut hi = Vec::with_capacity(labels);
            for i in 0..labels {
                e.push(kind.epsilon(x, i)?);
                p.push(kind.phi(x, i)?);
                lo.push(link(kind.lower(x, i)?));
                hi.push(link(kind.raise(x, i)?));
            }
            truncated |= lo.iter().chain(&hi).any(|l| *l == Link::Outside);
            eps.push(e);
            phi.push(p);
            lower.push(lo);
            raise.push(hi);
        }
        Ok(CrystalGraph { nodes, weights, eps, phi, lower, raise, labels, seed: None, truncated, window })
    }
}

impl<E> CrystalGraph<E> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[E] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> &E {
        &self.nodes[k]
    }

    pub fn weight(&self, k: usize) -> &Weight {
        &self.weights[k]
    }

    pub fn epsilon(&self, k: usize, i: usize) -> i64 {
        self.eps[k][i]
    }

    pub fn phi(&self, k: usize, i: usize) -> i64 {
        self.phi[k][i]
    }

    pub fn lower_link(&self, k: usize, i: usize) -> Link {
        self.lower[k][i]
    }

    pub fn raise_link(&self, k: usize, i: usize) -> Link {
        self.raise[k][i]
    }

    pub fn num_labels(&self) -> usize {
        self.labels
    }

    pub fn seed(&self) -> Option<usize> {
        self.seed
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    /// Edges `(src, dst, i)` meaning `f_i(src) = dst`, in index order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.len() {
            for i in 0..self.labels {
                if let Link::Node(t) = self.lower[k][i] {
                    out.push((k, t, i));
                }
            }
        }
        out
    }

    /// Overwrites one `ε` entry; used to build negative controls.
    pub fn set_epsilon(&mut self, k: usize, i: usize, value: i64) {
        self.eps[k][i] = value;
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for i in 0..self.labels {
                    for l in [self.lower[k][i], self.raise[k][i]] {
                        if let Link::Node(t) = l {
                            if comp[t] == usize::MAX {
                                comp[t] = id;
                                members.push(t);
                                stack.push(t);
                            }
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Connectivity of the generated node set, whether or not it is windowed.
    pub fn window_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A crystal is indecomposable iff its graph is connected. Only
    /// meaningful for a closed (untruncated) crystal.
    pub fn is_indecomposable(&self) -> Result<bool> {
        if self.truncated {
            return Err(Error::Truncated);
        }
        Ok(self.window_connected())
    }

    /// Indices of nodes whose weight has `|δ-coordinate| ≤ bound`.
    pub fn nodes_within(&self, bound: i64) -> Vec<usize> {
        (0..self.len()).filter(|&k| in_window(&self.weights[k], Some(bound)).unwrap_or(false)).collect()
    }
}

impl<E: Clone + Ord> CrystalGraph<E> {
    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.nodes.binary_search(x).ok()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index_of(x).is_some()
    }

    /// Disjoint union of two graphs over the same labels (negative control
    /// for indecomposability). Node keys are tagged by their origin.
    pub fn disjoint_union(&self, other: &Self) -> CrystalGraph<(u8, E)> {
        let shift = self.len();
        let relink = |l: Link, s: usize| match l {
            Link::Node(k) => Link::Node(k + s),
            other => other,
        };
        let mut nodes: Vec<(u8, E)> = self.nodes.iter().cloned().map(|x| (0, x)).collect();
        nodes.extend(other.nodes.iter().cloned().map(|x| (1, x)));
        let mut lower = self.lower.clone();
        lower.extend(other.lower.iter().map(|r| r.iter().map(|&l| relink(l, shift)).collect()));
        let mut raise = self.raise.clone();
        raise.extend(other.raise.iter().map(|r| r.iter().map(|&l| relink(l, shift)).collect()));
        CrystalGraph {
            nodes,
            weights: self.weights.iter().chain(&other.weights).cloned().collect(),
            eps: self.eps.iter().chain(&other.eps).cloned().collect(),
            phi: self.phi.iter().chain(&other.phi).cloned().collect(),
            lower,
            raise,
            labels: self.labels,
            seed: self.seed,
            truncated: self.truncated || other.truncated,
            window: self.window,
        }
    }
}
