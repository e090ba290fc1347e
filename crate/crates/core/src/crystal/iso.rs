use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{CrystalGraph, Link};
use crate::weight::Weight;

type Signature = (Weight, Vec<i64>, Vec<i64>, Vec<(u8, u8)>);

fn kind(l: Link) -> u8 {
    match l {
        Link::Null => 0,
        Link::Node(_) => 1,
        Link::Outside => 2,
    }
}

fn signatures<E>(g: &CrystalGraph<E>) -> Vec<Signature> {
    (0..g.len())
        .map(|k| {
            let labels = 0..g.num_labels();
            (
                g.weight(k).clone(),
                labels.clone().map(|i| g.epsilon(k, i)).collect(),
                labels.clone().map(|i| g.phi(k, i)).collect(),
                labels.map(|i| (kind(g.lower_link(k, i)), kind(g.raise_link(k, i)))).collect(),
            )
        })
        .collect()
}

/// A bijection `g1 → g2` (as `map[k1] = k2`) preserving edge labels,
/// weights, `ε` and `φ`, or `None`.
///
/// Because every node has at most one `i`-successor and `i`-predecessor,
/// the image of one node determines the image of its whole component; the
/// search tries each signature-compatible anchor per component.
pub fn isomorphic<E, F>(g1: &CrystalGraph<E>, g2: &CrystalGraph<F>) -> Option<Vec<usize>> {
    if g1.len() != g2.len() || g1.num_labels() != g2.num_labels() {
        return None;
    }
    let s1 = signatures(g1);
    let s2 = signatures(g2);
    let comps2 = g2.components();
    let mut comp_of2 = vec![0usize; g2.len()];
    for (c, members) in comps2.iter().enumerate() {
        for &k in members {
            comp_of2[k] = c;
        }
    }
    let mut used = vec![false; comps2.len()];
    let mut map = vec![usize::MAX; g1.len()];
    for comp in g1.components() {
        let anchor = comp[0];
        let mut matched = None;
        for cand in 0..g2.len() {
            let c = comp_of2[cand];
            if used[c] || comps2[c].len() != comp.len() || s1[anchor] != s2[cand] {
                continue;
            }
            if let Some(local) = propagate(g1, g2, &s1, &s2, anchor, cand) {
                if local.len() == comp.len() {
                    matched = Some((c, local));
                    break;
                }
            }
        }
        let (c, local) = matched?;
        used[c] = true;
        for (a, b) in local {
            map[a] = b;
        }
    }
    Some(map)
}

fn propagate<E, F>(
    g1: &CrystalGraph<E>,
    g2: &CrystalGraph<F>,
    s1: &[Signature],
    s2: &[Signature],
    a: usize,
    b: usize,
) -> Option<BTreeMap<usize, usize>> {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    fwd.insert(a, b);
    back.insert(b, a);
    let mut stack = vec![(a, b)];
    while let Some((x, y)) = stack.pop() {
        if s1[x] != s2[y] {
            return None;
        }
        for i in 0..g1.num_labels() {
            for (lx, ly) in [(g1.lower_link(x, i), g2.lower_link(y, i)), (g1.raise_link(x, i), g2.raise_link(y, i))] {
                if let (Link::Node(tx), Link::Node(ty)) = (lx, ly) {
                    match (fwd.get(&tx), back.get(&ty)) {
                        (Some(&m), _) if m != ty => return None,
                        (_, Some(&m)) if m != tx => return None,
                        (Some(_), Some(_)) => {}
                        _ => {
                            fwd.insert(tx, ty);
                            back.insert(ty, tx);
                            stack.push((tx, ty));
                        }
                    }
                }
            }
        }
    }
    Some(fwd)
}
