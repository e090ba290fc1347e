//! JSON and DOT renderings. Keys come out sorted (serde_json's default map is
//! ordered) and rationals are `p/q` strings, so equal inputs give equal bytes.

use std::fmt::Write as _;

use loom_core::crystal::{Affinized, CrystalGraph, Tensor};
use loom_core::energy::EnergyTable;
use loom_core::loop_embed::PsiSide;
use loom_core::rational;
use loom_core::report::Report;
use loom_core::sl2::lattice::LimitRow;
use loom_core::{Ambient, CartanData, Path, Weight};
use serde_json::{json, Value};

pub fn ambient(a: Ambient) -> &'static str {
    match a {
        Ambient::Classical => "classical",
        Ambient::Affine => "affine",
    }
}

pub fn weight(w: &Weight) -> Value {
    json!(w.to_strings())
}

pub fn cartan(c: &CartanData) -> Value {
    json!({
        "type": c.type_label(),
        "rank": c.rank(),
        "matrix": c.matrix(),
        "marks": c.marks(),
        "comarks": c.comarks(),
        "d": c.symmetrizer(),
    })
}

pub fn path(p: &Path) -> Value {
    let segments: Vec<Value> =
        p.segments().iter().map(|s| json!({"dir": weight(&s.dir), "len": rational::to_string(&s.len)})).collect();
    json!({"ambient": ambient(p.ambient()), "segments": segments})
}

/// Crystal elements that can be written out as graph nodes.
pub trait Element {
    fn to_json(&self) -> Value;
    fn label(&self) -> String;
}

impl Element for Path {
    fn to_json(&self) -> Value {
        json!({"path": path(self)})
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl Element for Tensor<Path> {
    fn to_json(&self) -> Value {
        json!({"factors": self.factors.iter().map(path).collect::<Vec<_>>()})
    }

    fn label(&self) -> String {
        self.factors.iter().map(Path::to_string).collect::<Vec<_>>().join(" ⊗ ")
    }
}

impl Element for Affinized<Tensor<Path>> {
    fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        v["degree"] = json!(self.degree);
        v
    }

    fn label(&self) -> String {
        format!("{} ⊗ t^{}", self.base.label(), self.degree)
    }
}

pub fn graph<E: Element>(g: &CrystalGraph<E>) -> Value {
    let labels = g.num_labels();
    let nodes: Vec<Value> = (0..g.len())
        .map(|k| {
            json!({
                "id": k,
                "label": g.node(k).label(),
                "elem": g.node(k).to_json(),
                "wt": weight(g.weight(k)),
                "eps": (0..labels).map(|i| g.epsilon(k, i)).collect::<Vec<_>>(),
                "phi": (0..labels).map(|i| g.phi(k, i)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<Value> = g.edges().into_iter().map(|(s, d, i)| json!({"src": s, "dst": d, "i": i})).collect();
    json!({
        "nodes": nodes,
        "edges": edges,
        "seed": g.seed(),
        "truncated": g.truncated(),
        "window": g.window(),
    })
}

const COLOURS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4"];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn dot<E: Element>(g: &CrystalGraph<E>) -> String {
    let mut out = String::from("digraph crystal {\n  node [shape=box];\n");
    for k in 0..g.len() {
        let _ = writeln!(out, "  n{k} [label=\"{}\"];", escape(&g.node(k).label()));
    }
    for (s, d, i) in g.edges() {
        let _ = writeln!(out, "  n{s} -> n{d} [label=\"{i}\", color=\"{}\"];", COLOURS[i % COLOURS.len()]);
    }
    out.push_str("}\n");
    out
}

pub fn energy(id: &str, table: &EnergyTable) -> Value {
    let mut chi = Vec::new();
    for (a, row) in table.values().iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            chi.push(json!({"a": a, "b": b, "v": v}));
        }
    }
    let nodes: Vec<Value> =
        table.nodes().iter().enumerate().map(|(k, p)| json!({"id": k, "label": p.label(), "path": path(p)})).collect();
    json!({"crystal": id, "N": table.grid(), "chi": chi, "nodes": nodes, "seed": table.seed()})
}

/// `ψ` on every node of the affinized window, with word indices into
/// `fundamental`.
pub fn embedding(fundamental: &CrystalGraph<Path>, ps: &PsiSide) -> Value {
    let images: Vec<Value> = ps
        .graph
        .nodes()
        .iter()
        .zip(&ps.images)
        .zip(&ps.classes)
        .enumerate()
        .map(|(k, ((x, img), class))| {
            let word: Vec<Option<usize>> = x.base.factors.iter().map(|p| fundamental.index_of(p)).collect();
            json!({
                "id": k,
                "word": word,
                "degree": x.degree,
                "class": class,
                "kappa": img.kappa.iter().map(rational::to_string).collect::<Vec<_>>(),
                "path": path(&img.path),
            })
        })
        .collect();
    json!({"window": ps.window, "images": images})
}

pub fn checks(r: &Report) -> Value {
    json!(r.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>())
}

pub fn limit_table(rows: &[LimitRow]) -> Value {
    let pair = |p: Option<(u32, u32)>| p.map(|(a, b)| json!([a, b]));
    json!(rows.iter().map(|r| json!({"s1": r.s1, "s2": r.s2, "e": pair(r.e), "f": pair(r.f)})).collect::<Vec<_>>())
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built from json! always serialize");
    s.push('\n');
    s
}
