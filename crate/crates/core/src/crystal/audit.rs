use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CrystalGraph, Link};
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::rational;

fn string_length<E>(g: &CrystalGraph<E>, k: usize, i: usize, up: bool) -> Option<i64> {
    let mut cur = k;
    let mut n = 0i64;
    loop {
        let l = if up { g.raise_link(cur, i) } else { g.lower_link(cur, i) };
        match l {
            Link::Null => return Some(n),
            Link::Outside => return None,
            Link::Node(t) => {
                cur = t;
                n += 1;
                if n as usize > g.len() {
                    return None;
                }
            }
        }
    }
}

/// `ε_i(b) = max{n : e_i^n b ≠ 0}` and `φ_i(b) = max{n : f_i^n b ≠ 0}`
/// against the stored tables.
pub fn normality_audit<E>(g: &CrystalGraph<E>) -> Result<Vec<String>> {
    if g.truncated() {
        return Err(Error::Truncated);
    }
    let mut bad = Vec::new();
    for k in 0..g.len() {
        for i in 0..g.num_labels() {
            let up = string_length(g, k, i, true);
            if up != Some(g.epsilon(k, i)) {
                bad.push(format!("node {k}, label {i}: eps {} but e-string {:?}", g.epsilon(k, i), up));
            }
            let down = string_length(g, k, i, false);
            if down != Some(g.phi(k, i)) {
                bad.push(format!("node {k}, label {i}: phi {} but f-string {:?}", g.phi(k, i), down));
            }
        }
    }
    Ok(bad)
}

/// `e_i f_i x = x` and `f_i e_i y = y` for every in-graph edge.
pub fn quasi_inverse_audit<E>(g: &CrystalGraph<E>) -> Vec<String> {
    let mut bad = Vec::new();
    for k in 0..g.len() {
        for i in 0..g.num_labels() {
            if let Link::Node(t) = g.lower_link(k, i) {
                if g.raise_link(t, i) != Link::Node(k) {
                    bad.push(format!("e_{i} f_{i} of node {k} is {:?}", g.raise_link(t, i)));
                }
            }
            if let Link::Node(t) = g.raise_link(k, i) {
                if g.lower_link(t, i) != Link::Node(k) {
                    bad.push(format!("f_{i} e_{i} of node {k} is {:?}", g.lower_link(t, i)));
                }
            }
        }
    }
    bad
}

/// Every `i`-edge changes the weight by exactly `−α_i`.
pub fn weight_gradient_audit<E>(cartan: &CartanData, g: &CrystalGraph<E>) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (src, dst, i) in g.edges() {
        let root = cartan.root_in(i, g.weight(src).ambient())?;
        if *g.weight(dst) != g.weight(src).try_sub(&root)? {
            bad.push(format!("edge {src} -{i}-> {dst}: wt {} -> {}", g.weight(src), g.weight(dst)));
        }
    }
    Ok(bad)
}

/// `φ_i(b) − ε_i(b) = ⟨α_i^∨, wt b⟩`.
pub fn phi_epsilon_audit<E>(g: &CrystalGraph<E>) -> Vec<String> {
    let mut bad = Vec::new();
    for k in 0..g.len() {
        for i in 0..g.num_labels() {
            let pairing = rational::to_i64(g.weight(k).coord(i));
            if pairing != Some(g.phi(k, i) - g.epsilon(k, i)) {
                bad.push(format!("node {k}, label {i}: phi - eps != <h_i, wt>"));
            }
        }
    }
    bad
}
