use std::path::PathBuf;

use affine_descent::affine::{AffineElement, AffineWeyl};
use affine_descent::descent::ModuleSpec;
use affine_descent::gkm::{GraphLocus, HbarMode};
use affine_descent::linalg;
use affine_descent::rational::{qf, RationalVector, Q};
use affine_descent::rootdata::Isogeny;
use proptest::prelude::*;

const TYPES: [(&str, Isogeny); 6] = [
    ("A1", Isogeny::Adjoint),
    ("A2", Isogeny::Adjoint),
    ("A2", Isogeny::SimplyConnected),
    ("B2", Isogeny::Adjoint),
    ("B2", Isogeny::SimplyConnected),
    ("G2", Isogeny::Adjoint),
];

fn weyl(k: usize) -> AffineWeyl {
    let (label, iso) = &TYPES[k];
    AffineWeyl::from_label(label, iso.clone()).unwrap()
}

/// A word in the affine simple reflections times a length-zero element.
fn element(aw: &AffineWeyl, word: &[usize], omega: usize) -> AffineElement {
    let n = aw.num_simple();
    let w: Vec<usize> = word.iter().map(|j| j % n).collect();
    let zeros = aw.length_zero_elements();
    aw.compose(&aw.from_word(&w), &zeros[omega % zeros.len()].1).unwrap()
}

fn point(aw: &AffineWeyl, raw: &[(i64, i64)]) -> RationalVector {
    RationalVector(raw.iter().take(aw.rank()).map(|&(n, d)| qf(n, d)).collect())
}

fn words() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..9)
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-12i64..=12, 1i64..=7), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn action_is_a_homomorphism(
        t in 0..TYPES.len(), a in words(), b in words(), oa in 0usize..4, ob in 0usize..4,
        x in coords(), h in (-5i64..=5, 1i64..=4),
    ) {
        let aw = weyl(t);
        let (g, k) = (element(&aw, &a, oa), element(&aw, &b, ob));
        let x = point(&aw, &x);
        let hbar = qf(h.0, h.1);
        let gk = aw.compose(&g, &k).unwrap();
        prop_assert_eq!(aw.act(&gk, &x, &hbar), aw.act(&g, &aw.act(&k, &x, &hbar), &hbar));
    }

    #[test]
    fn inverse_and_length(t in 0..TYPES.len(), a in words(), o in 0usize..4) {
        let aw = weyl(t);
        let g = element(&aw, &a, o);
        let gi = aw.invert(&g).unwrap();
        prop_assert!(aw.compose(&g, &gi).unwrap().is_identity());
        prop_assert_eq!(aw.length(&gi), aw.length(&g));
        for j in 0..aw.num_simple() {
            let gs = aw.compose(&g, &aw.simple_reflection(j).element).unwrap();
            prop_assert_eq!(aw.length(&gs).abs_diff(aw.length(&g)), 1);
        }
        let (alcove, omega) = aw.decompose(&g).unwrap();
        prop_assert_eq!(alcove.word.len(), aw.length(&g));
        prop_assert_eq!(aw.length(&omega), 0);
        prop_assert_eq!(aw.compose(&aw.from_word(&alcove.word), &omega).unwrap(), g);
    }

    #[test]
    fn finite_parts_permute_roots(t in 0..TYPES.len(), a in words(), o in 0usize..4) {
        let aw = weyl(t);
        let g = element(&aw, &a, o);
        let d = aw.datum();
        for r in d.roots() {
            let image = linalg::mat_vec(&g.finite, &r.weight);
            prop_assert!(d.root_index_by_weight(&image).is_some());
        }
    }

    #[test]
    fn pairings_are_invariant(t in 0..TYPES.len(), a in words(), x in coords()) {
        let aw = weyl(t);
        let g = element(&aw, &a, 0);
        let d = aw.datum();
        let x = point(&aw, &x);
        let gx = aw.act_linear(&g, &x);
        for r in d.roots() {
            let image = linalg::mat_vec(&g.finite, &r.weight);
            let k = d.root_index_by_weight(&image).unwrap();
            prop_assert_eq!(d.root(k).pairing(&gx), r.pairing(&x));
        }
    }

    #[test]
    fn pi1_is_additive(t in 0..TYPES.len(), a in words(), b in words(), oa in 0usize..4, ob in 0usize..4) {
        let aw = weyl(t);
        let (g, k) = (element(&aw, &a, oa), element(&aw, &b, ob));
        let gk = aw.compose(&g, &k).unwrap();
        prop_assert_eq!(aw.pi1(&gk), aw.datum().pi1_add(&aw.pi1(&g), &aw.pi1(&k)));
        prop_assert_eq!(aw.in_affine_weyl(&g), aw.pi1(&g).is_identity());
    }

    #[test]
    fn module_actions_are_cocycles(a in words(), b in words(), which in 0usize..3) {
        let (label, file) = [("A1", "sign_global_a1.json"), ("A1", "extension_a1.json"), ("A2", "extension_a2.json")][which];
        let aw = AffineWeyl::from_label(label, Isogeny::Adjoint).unwrap();
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(file);
        let spec = ModuleSpec::load(&path).unwrap();
        let (g, k) = (element(&aw, &a, 0), element(&aw, &b, 0));
        let images = GraphLocus { element: aw.invert(&g).unwrap() }.target(aw.rank(), HbarMode::SetToOne);
        let lhs = spec.action(&aw, &aw.compose(&g, &k).unwrap()).unwrap();
        let rhs = spec.action(&aw, &g).unwrap().mul(&spec.action(&aw, &k).unwrap().map(|p| p.substitute(&images)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn translations_act_by_shifts() {
    let aw = weyl(1);
    let t = aw.translation(&[2, -1]).unwrap();
    let x = RationalVector(vec![qf(1, 3), qf(-2, 5)]);
    let hbar = Q::from_integer(3.into());
    assert_eq!(aw.act(&t, &x, &hbar), RationalVector(vec![qf(1, 3) + qf(6, 1), qf(-2, 5) - qf(3, 1)]));
}
