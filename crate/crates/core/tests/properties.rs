use loom_core::crystal::{generate, CrystalKind, FiniteCrystal, GenerateOptions, PathCrystal, Tensor, TensorCrystal};
use loom_core::rational::{frac, int};
use loom_core::sl2::{Poly, QScalar};
use loom_core::{Ambient, CartanData, Path, Weight};
use proptest::prelude::*;

fn weight(size: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-6i64..=6, size).prop_map(|v| Weight::from_ints(&v, None))
}

/// Integer directions on the `1/N` grid whose average is integral.
fn uniform_path(size: usize) -> impl Strategy<Value = Path> {
    (1usize..=4, prop::collection::vec(-3i64..=3, size))
        .prop_flat_map(move |(n, target)| {
            (Just(n), Just(target), prop::collection::vec(prop::collection::vec(-3i64..=3, size), n - 1))
        })
        .prop_map(move |(n, target, mut dirs)| {
            let last: Vec<i64> =
                (0..size).map(|j| n as i64 * target[j] - dirs.iter().map(|d| d[j]).sum::<i64>()).collect();
            dirs.push(last);
            let ws: Vec<Weight> = dirs.iter().map(|d| Weight::from_ints(d, None)).collect();
            Path::from_uniform(&ws).unwrap()
        })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 1..5).prop_map(|v| Poly::new(v.into_iter().map(int).collect()))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (poly(), poly(), -3i64..=3).prop_filter_map("zero denominator", |(n, d, k)| {
        let x = QScalar::new(n, d).ok()?;
        Some(&x * &QScalar::q_pow(k))
    })
}

proptest! {
    #[test]
    fn reflection_negates_its_pairing(w in weight(3), i in 0usize..3) {
        let c = CartanData::build("A", 2).unwrap();
        let r = c.reflect(i, &w).unwrap();
        prop_assert_eq!(c.pairing(i, &r).unwrap(), -c.pairing(i, &w).unwrap());
        prop_assert_eq!(c.reflect(i, &r).unwrap(), w);
    }

    #[test]
    fn reflection_keeps_the_delta_coordinate_of_level_zero_weights(w in weight(3), i in 0usize..3, d in -3i64..=3) {
        let c = CartanData::build("A", 2).unwrap();
        let w = w.with_delta(int(d));
        let r = c.reflect(i, &w).unwrap();
        let shift = if i == 0 { -c.pairing(0, &w).unwrap() } else { int(0) };
        prop_assert_eq!(r.delta().cloned().unwrap(), int(d) + shift);
    }

    #[test]
    fn canonical_form_is_idempotent(p in uniform_path(3)) {
        let again = Path::new(p.segments().to_vec()).unwrap();
        prop_assert_eq!(&again, &p);
        let turning = p.turning_points();
        prop_assert_eq!(turning.last().unwrap(), &p.endpoint());
    }

    #[test]
    fn uniform_segmentation_round_trips(p in uniform_path(2), k in 1u64..=3) {
        let n = p.grid() * k;
        let dirs = p.segment_uniform(n).unwrap();
        prop_assert_eq!(dirs.len() as u64, n);
        prop_assert_eq!(Path::from_uniform(&dirs).unwrap(), p);
    }

    #[test]
    fn concat_and_stretch_endpoints(a in uniform_path(3), b in uniform_path(3), n in 1u32..=4) {
        let c = Path::concat(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(c.endpoint(), &a.endpoint() + &b.endpoint());
        prop_assert_eq!(a.stretch(n).unwrap().endpoint(), a.endpoint().scale(&int(n.into())));
        prop_assert_eq!(a.stretch(1).unwrap(), a.clone());
        prop_assert_eq!(Path::concat(std::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).valuation(), Some(a.valuation().unwrap() + b.valuation().unwrap()));
        }
    }

    #[test]
    fn scalar_evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        prop_assume!(a.in_local_ring() && b.in_local_ring());
        let (x, y) = (a.eval_at_zero().unwrap(), b.eval_at_zero().unwrap());
        prop_assert_eq!((&a * &b).eval_at_zero().unwrap(), &x * &y);
        prop_assert_eq!((&a + &b).eval_at_zero().unwrap(), x + y);
    }

    #[test]
    fn tensor_operators_are_quasi_inverse(word in prop::collection::vec(0usize..3, 1..5), i in 0usize..3) {
        let cartan = CartanData::build("A", 2).unwrap();
        let seed = Path::linear(cartan.classical_fundamental(1).unwrap()).unwrap();
        let g = generate(&PathCrystal::new(&cartan, Ambient::Classical), seed, GenerateOptions::default()).unwrap();
        let kind = TensorCrystal::new(FiniteCrystal::new(&g).unwrap());
        let x = Tensor::new(word.iter().map(|&k| g.node(k).clone()).collect());
        if let Some(y) = kind.lower(&x, i).unwrap() {
            prop_assert_eq!(kind.raise(&y, i).unwrap(), Some(x.clone()));
            prop_assert_eq!(kind.epsilon(&y, i).unwrap(), kind.epsilon(&x, i).unwrap() + 1);
        } else {
            prop_assert_eq!(kind.phi(&x, i).unwrap(), 0);
        }
        let wt = kind.weight(&x).unwrap();
        prop_assert_eq!(
            int(kind.phi(&x, i).unwrap() - kind.epsilon(&x, i).unwrap()),
            cartan.pairing(i, &wt).unwrap()
        );
    }

    #[test]
    fn fractions_parse_back(p in -50i64..50, q in 1i64..50) {
        let x = frac(p, q);
        prop_assert_eq!(loom_core::rational::parse(&loom_core::rational::to_string(&x)).unwrap(), x);
    }
}
