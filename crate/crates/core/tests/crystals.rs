use loom_core::crystal::{
    generate, isomorphic, normality_audit, phi_epsilon_audit, CrystalGraph, FiniteCrystal, GenerateOptions, Link,
    PathCrystal, Tensor, TensorCrystal,
};
use loom_core::{Ambient, CartanData, Error, Path, Weight};

fn classical(cartan: &CartanData, seed: Path) -> CrystalGraph<Path> {
    generate(&PathCrystal::new(cartan, Ambient::Classical), seed, GenerateOptions::default()).unwrap()
}

fn linear(coords: &[i64]) -> Path {
    Path::linear(Weight::from_ints(coords, None)).unwrap()
}

/// The edge list `(src weight, dst weight, label)` of a graph.
fn weighted_edges(g: &CrystalGraph<Path>) -> Vec<(Weight, Weight, usize)> {
    let mut out: Vec<_> =
        g.edges().into_iter().map(|(s, d, i)| (g.weight(s).clone(), g.weight(d).clone(), i)).collect();
    out.sort();
    out
}

#[test]
fn a1_fundamental_has_two_nodes() {
    let c = CartanData::build("A", 1).unwrap();
    // ϖ_1 = Λ_1 − Λ_0.
    let plus = linear(&[-1, 1]);
    let minus = linear(&[1, -1]);
    let g = classical(&c, plus.clone());
    assert_eq!(g.nodes(), {
        let mut v = vec![plus.clone(), minus.clone()];
        v.sort();
        v
    });
    let mut want = vec![
        (Weight::from_ints(&[-1, 1], None), Weight::from_ints(&[1, -1], None), 1),
        (Weight::from_ints(&[1, -1], None), Weight::from_ints(&[-1, 1], None), 0),
    ];
    want.sort();
    assert_eq!(weighted_edges(&g), want);
    assert!(!g.truncated());
    assert!(g.is_indecomposable().unwrap());
}

#[test]
fn a2_fundamental_is_a_three_cycle() {
    let c = CartanData::build("A", 2).unwrap();
    // ϖ_1 = Λ_1 − Λ_0 and its images under α_1 = (−1, 2, −1), α_2 = (−1, −1, 2).
    let w0 = [-1, 1, 0];
    let w1 = [0, -1, 1];
    let w2 = [1, 0, -1];
    let g = classical(&c, linear(&w0));
    assert_eq!(g.len(), 3);
    let w = |v: &[i64]| Weight::from_ints(v, None);
    let mut want = vec![(w(&w0), w(&w1), 1), (w(&w1), w(&w2), 2), (w(&w2), w(&w0), 0)];
    want.sort();
    assert_eq!(weighted_edges(&g), want);
    assert!(g.nodes().iter().all(Path::is_linear));
}

#[test]
fn c2_vector_crystal() {
    let c = CartanData::build("C", 2).unwrap();
    let seed = Path::linear(c.classical_fundamental(1).unwrap()).unwrap();
    let g = classical(&c, seed);
    assert_eq!(g.len(), 4);
    assert!(normality_audit(&g).unwrap().is_empty());
    // Weights ϖ_1, ϖ_1 − α_1, ϖ_1 − α_1 − α_2, ϖ_1 − 2α_1 − α_2.
    let w = c.classical_fundamental(1).unwrap();
    let a1 = c.root_in(1, Ambient::Classical).unwrap();
    let a2 = c.root_in(2, Ambient::Classical).unwrap();
    let mut want = vec![w.clone(), &w - &a1, &(&w - &a1) - &a2, &(&(&w - &a1) - &a1) - &a2];
    want.sort();
    let mut got: Vec<Weight> = (0..g.len()).map(|k| g.weight(k).clone()).collect();
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn constant_path_is_isolated() {
    let c = CartanData::build("A", 2).unwrap();
    let g = classical(&c, Path::constant(3, Ambient::Classical));
    assert_eq!(g.len(), 1);
    for i in 0..3 {
        assert_eq!(g.lower_link(0, i), Link::Null);
        assert_eq!(g.raise_link(0, i), Link::Null);
    }
}

#[test]
fn isomorphism_matches_tensor_and_concatenation() {
    let c = CartanData::build("A", 1).unwrap();
    let plus = linear(&[-1, 1]);
    let b = classical(&c, plus.clone());
    let tensor = TensorCrystal::new(FiniteCrystal::new(&b).unwrap());
    let square = generate(&tensor, Tensor::new(vec![plus.clone(); 2]), GenerateOptions::default()).unwrap();
    assert_eq!(square.len(), 4);
    let concat = classical(&c, Path::concat(&[plus.clone(), plus]).unwrap());
    let map = isomorphic(&square, &concat).expect("B ⊗ B is the crystal of the concatenations");
    for (k, &t) in map.iter().enumerate() {
        assert_eq!(Path::concat(&square.node(k).factors).unwrap(), *concat.node(t));
    }
    assert_eq!(isomorphic(&b, &b), Some(vec![0, 1]));
    let a2 = classical(&CartanData::build("A", 2).unwrap(), linear(&[-1, 1, 0]));
    assert!(isomorphic(&b, &a2).is_none());
}

#[test]
fn disjoint_union_is_decomposable() {
    let c = CartanData::build("A", 2).unwrap();
    let g = classical(&c, linear(&[-1, 1, 0]));
    let u = g.disjoint_union(&g);
    assert_eq!(u.len(), 6);
    assert_eq!(u.components().len(), 2);
    assert!(!u.is_indecomposable().unwrap());
    assert!(isomorphic(&u, &u).is_some());
    assert!(normality_audit(&u).unwrap().is_empty());
}

#[test]
fn corrupted_epsilon_gives_one_normality_violation() {
    let c = CartanData::build("A", 1).unwrap();
    let mut g = classical(&c, linear(&[-1, 1]));
    g.set_epsilon(0, 1, 5);
    assert_eq!(normality_audit(&g).unwrap().len(), 1);
    assert_eq!(phi_epsilon_audit(&g).len(), 1);
}

#[test]
fn affine_generation_needs_a_window() {
    let c = CartanData::build("A", 1).unwrap();
    let seed = Path::linear(c.classical_fundamental(1).unwrap().with_delta(loom_core::rational::int(0))).unwrap();
    let kind = PathCrystal::new(&c, Ambient::Affine);
    let err = generate(&kind, seed.clone(), GenerateOptions::default()).unwrap_err();
    assert!(matches!(err, Error::BoundRequired));
    let g = generate(&kind, seed.clone(), GenerateOptions::window(2)).unwrap();
    assert!(g.truncated());
    assert!(matches!(g.is_indecomposable(), Err(Error::Truncated)));
    assert!(matches!(normality_audit(&g), Err(Error::Truncated)));
    // Degrees −2..=2 of the two A_1 paths.
    assert_eq!(g.len(), 10);
    let capped = generate(&kind, seed, GenerateOptions { window: Some(50), node_cap: 20 });
    assert!(matches!(capped, Err(Error::NodeCap(20))));
}
