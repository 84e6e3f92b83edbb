use lambda_invariants::oracle::{group_generators, ExplicitModule};
use lambda_invariants::wedge::TensorWord;
use lambda_invariants::wedge::{
    build_invariant_pair, hodge_dual, induced_inner_product, project_to_wedge, standard_polynomial, wedge_product,
    InnerProduct, Rational, WedgeElement,
};
use lambda_invariants::{GroupFamily, GroupId};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn wedge(terms: &[(&[u16], Rational)]) -> WedgeElement {
    let degree = terms[0].0.len();
    WedgeElement::from_terms(degree, terms.iter().map(|(idx, c)| (idx.iter().map(|i| i - 1).collect(), c.clone())))
}

fn expected_v() -> WedgeElement {
    wedge(&[
        (&[1, 2, 3], q(1, 1)),
        (&[3, 4, 7], q(-3, 1)),
        (&[1, 6, 9], q(-3, 1)),
        (&[2, 5, 8], q(3, 1)),
        (&[7, 8, 10], q(6, 1)),
        (&[4, 9, 10], q(-6, 1)),
        (&[5, 6, 10], q(6, 1)),
        (&[5, 7, 9], q(3, 1)),
        (&[4, 6, 8], q(3, 1)),
    ])
}

fn expected_dual() -> WedgeElement {
    wedge(&[
        (&[4, 5, 6, 7, 8, 9, 10], q(1, 1)),
        (&[1, 2, 5, 6, 8, 9, 10], q(-1, 3)),
        (&[2, 3, 4, 5, 7, 8, 10], q(-1, 3)),
        (&[1, 3, 4, 6, 7, 9, 10], q(-1, 3)),
        (&[1, 2, 3, 4, 5, 6, 9], q(-1, 9)),
        (&[1, 2, 3, 5, 6, 7, 8], q(1, 9)),
        (&[1, 2, 3, 4, 7, 8, 9], q(-1, 9)),
        (&[1, 2, 3, 4, 6, 8, 10], q(-1, 9)),
        (&[1, 2, 3, 5, 7, 9, 10], q(1, 9)),
    ])
}

#[test]
fn cubic_ternary_invariant_and_dual() {
    let pair = build_invariant_pair(3, 3, 3).unwrap();
    assert_eq!(pair.v, expected_v());
    assert_eq!(pair.dual, expected_dual());
    assert_eq!(
        pair.v.render(),
        "a1^a2^a3 - 3 a1^a6^a9 + 3 a2^a5^a8 - 3 a3^a4^a7 + 3 a4^a6^a8 - 6 a4^a9^a10 + 6 a5^a6^a10 + 3 a5^a7^a9 + 6 a7^a8^a10"
    );
}

#[test]
fn dual_satisfies_the_defining_identity() {
    let pair = build_invariant_pair(3, 3, 3).unwrap();
    let vol = pair.basis.volume();
    let norm = induced_inner_product(&pair.v, &pair.v, &pair.basis, InnerProduct::TensorInduced).unwrap();
    assert_eq!(norm, q(20, 3));
    assert_eq!(wedge_product(&pair.v, &pair.dual), vol.scale(&norm));
    // u ^ *v = <u, v> vol on every basis 3-wedge.
    for i in 0..10u16 {
        for j in i + 1..10 {
            for k in j + 1..10 {
                let u = WedgeElement::basis(vec![i, j, k], q(1, 1));
                let ip = induced_inner_product(&u, &pair.v, &pair.basis, InnerProduct::TensorInduced).unwrap();
                assert_eq!(wedge_product(&u, &pair.dual), vol.scale(&ip));
            }
        }
    }
}

#[test]
fn orthonormal_convention_changes_only_the_dual() {
    let pair = build_invariant_pair(3, 3, 3).unwrap();
    let vol = pair.basis.volume();
    let dual = hodge_dual(&pair.v, &vol, &pair.basis, InnerProduct::OrthonormalMonomial).unwrap();
    let norm = induced_inner_product(&pair.v, &pair.v, &pair.basis, InnerProduct::OrthonormalMonomial).unwrap();
    assert_eq!(norm, q(154, 1));
    assert_eq!(wedge_product(&pair.v, &dual), vol.scale(&norm));
    assert_eq!(dual.len(), pair.dual.len());
}

fn assert_sl_invariant(v: &WedgeElement, n: usize, k: u32) {
    let basis = lambda_invariants::wedge::SymBasis::new(n, k);
    let module = ExplicitModule::symmetric_power(&basis);
    let gens = group_generators(GroupId::new(GroupFamily::Sl, n).unwrap());
    for x in &gens.basis {
        assert!(v.apply_derivation(&module.represent(x)).is_zero(), "not killed by {x:?}");
    }
}

#[test]
fn invariants_are_annihilated_by_sl() {
    let pair = build_invariant_pair(3, 3, 3).unwrap();
    assert_sl_invariant(&pair.v, 3, 3);
    // The dual of an invariant is invariant as well.
    assert_sl_invariant(&pair.dual, 3, 3);
}

#[test]
fn pairs_for_the_other_generated_cases() {
    // Each of these invariant rings is spanned by 1, v, *v and v ^ *v.
    for (n, k, p) in [(2, 5, 2), (2, 6, 3), (2, 8, 4), (3, 4, 6), (2, 3, 2), (3, 3, 7)] {
        let pair = build_invariant_pair(n, k, p).unwrap();
        assert!(!pair.v.is_zero(), "n={n} k={k} p={p}");
        assert_eq!(pair.dual.degree(), pair.basis.len() - p);
        assert_sl_invariant(&pair.v, n, k);
        assert_sl_invariant(&pair.dual, n, k);
    }
}

#[test]
fn fast_projection_agrees_with_word_expansion() {
    for (n, k, p) in [(3, 3, 3), (2, 3, 2), (2, 8, 4), (2, 2, 3)] {
        let pair = build_invariant_pair(n, k, p).unwrap();
        let copies = k as usize * p / n;
        let word = standard_polynomial(n).power(copies).permute_positions(&pair.arrangement());
        let literal = project_to_wedge(&word, &pair.basis, p).unwrap();
        assert_eq!(literal.normalized(), pair.v, "n={n} k={k} p={p}");
    }
}

#[test]
fn vanishing_and_rejected_cases() {
    let pair = build_invariant_pair(3, 3, 2).unwrap();
    assert!(pair.v.is_zero());
    assert!(pair.dual.is_zero());
    assert!(build_invariant_pair(3, 4, 2).is_err());
}

#[test]
fn projection_is_gl_equivariant() {
    let (n, k, p) = (3usize, 2u32, 2usize);
    let basis = lambda_invariants::wedge::SymBasis::new(n, k);
    let module = ExplicitModule::symmetric_power(&basis);
    let words = [vec![0u8, 1, 2, 2], vec![0, 0, 1, 2], vec![1, 2, 0, 1], vec![2, 2, 2, 0]];
    for w in words {
        let x = TensorWord::word(w);
        let fx = project_to_wedge(&x, &basis, p).unwrap();
        for i in 0..n {
            for j in 0..n {
                let lhs = project_to_wedge(&x.act(i as u8, j as u8), &basis, p).unwrap();
                let rhs = fx.apply_derivation(&module.gl_action(i, j));
                assert_eq!(lhs, rhs, "E_{i}{j}");
            }
        }
    }
}

fn element(degree: usize, raw: Vec<(Vec<u16>, i64)>) -> WedgeElement {
    WedgeElement::from_terms(degree, raw.into_iter().map(|(idx, c)| (idx, q(c, 1))))
}

fn arb_element(degree: usize) -> impl Strategy<Value = WedgeElement> {
    prop::collection::vec((prop::collection::vec(0u16..8, degree), -5i64..=5), 0..5)
        .prop_map(move |raw| element(degree, raw))
}

fn arb_graded() -> impl Strategy<Value = (usize, WedgeElement)> {
    (0usize..4).prop_flat_map(|d| (Just(d), arb_element(d)))
}

proptest! {
    #[test]
    fn graded_anticommutativity((a, u) in arb_graded(), (b, w) in arb_graded()) {
        let sign = if (a * b) % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        prop_assert_eq!(wedge_product(&u, &w), wedge_product(&w, &u).scale(&sign));
    }
}
