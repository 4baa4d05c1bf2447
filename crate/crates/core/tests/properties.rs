use proptest::prelude::*;

use unitcode::card::CodeCard;
use unitcode::design::{build_generator, classify_selection, gsb, Selection, SelectionScheme, UnitScheme};
use unitcode::distance::{free_distance_exact, DistanceOptions};
use unitcode::groupring::{gr_mul, gr_transpose, to_matrix, GroupRingElement, GroupSpec};
use unitcode::polymat::{check_matrix, right_inverse_structured};
use unitcode::repro::brute_force_distance;
use unitcode::{make_field, Field, Matrix};

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::prime(23).unwrap()),
        Just(make_field(2, 4, None).unwrap()),
        Just(make_field(3, 2, None).unwrap()),
        Just(make_field(5, 2, None).unwrap()),
    ]
}

fn group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..9).prop_map(|n| GroupSpec::Cyclic { n }),
        (1u32..4, 1u32..4).prop_map(|(n, m)| GroupSpec::Product { n, m }),
        (1u32..5).prop_map(|n| GroupSpec::Dihedral { n }),
    ]
}

fn element(f: Field, g: GroupSpec) -> impl Strategy<Value = GroupRingElement> {
    let q = f.cardinality();
    proptest::collection::vec((0..g.order() as u32, 0..q), 0..6).prop_map(move |terms| {
        GroupRingElement::from_terms(&f, g, terms.into_iter().map(|(x, c)| (x, f.element(c).unwrap())))
    })
}

fn pair() -> impl Strategy<Value = (GroupRingElement, GroupRingElement)> {
    (small_field(), group()).prop_flat_map(|(f, g)| (element(f.clone(), g), element(f, g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(f in small_field(), a in 0u64..1024, b in 0u64..1024, c in 0u64..1024) {
        let q = f.cardinality();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert!(f.add(a, f.neg(a)).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q - 1), f.one());
        }
    }

    #[test]
    fn embedding_is_a_ring_map((a, b) in pair()) {
        let ab = gr_mul(&a, &b).unwrap();
        prop_assert_eq!(to_matrix(&ab), to_matrix(&a).mul(&to_matrix(&b)).unwrap());
        prop_assert_eq!(to_matrix(&a.add(&b).unwrap()), to_matrix(&a).add(&to_matrix(&b)).unwrap());
        prop_assert_eq!(to_matrix(&gr_transpose(&a)), to_matrix(&a).transpose());
    }

    #[test]
    fn cyclic_embeddings_are_circulant(f in small_field(), n in 1usize..9, seed in any::<u64>()) {
        let q = f.cardinality();
        let terms = (0..n as u32).map(|x| (x, f.element((seed >> (x * 7)) % q).unwrap()));
        let m = to_matrix(&GroupRingElement::from_terms(&f, GroupSpec::Cyclic { n: n as u32 }, terms));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(i, j), m.get((i + 1) % n, (j + 1) % n));
            }
        }
    }

    #[test]
    fn product_embeddings_are_block_circulant(f in small_field(), n in 1usize..4, m in 1usize..4, seed in any::<u64>()) {
        let g = GroupSpec::Product { n: n as u32, m: m as u32 };
        let q = f.cardinality();
        let terms = (0..g.order() as u32).map(|x| (x, f.element((seed >> (x * 3)) % q).unwrap()));
        let a = to_matrix(&GroupRingElement::from_terms(&f, g, terms));
        for bi in 0..m {
            for bj in 0..m {
                let blk = a.block(bi * n, bj * n, n, n);
                prop_assert_eq!(&blk, &a.block(((bi + 1) % m) * n, ((bj + 1) % m) * n, n, n));
                for i in 0..n {
                    for j in 0..n {
                        prop_assert_eq!(blk.get(i, j), blk.get((i + 1) % n, (j + 1) % n));
                    }
                }
            }
        }
    }

    #[test]
    fn singleton_at_degree_zero(n in 2usize..40, r in 1usize..39) {
        prop_assume!(r < n);
        prop_assert_eq!(gsb(n, r, 0), n - r + 1);
        prop_assert!(gsb(n, r, r) > gsb(n, r, 0));
    }
}

fn random_unit(q: u64, n: usize, entries: &[u64]) -> Option<UnitScheme> {
    let f = Field::prime(q).unwrap();
    let u = Matrix::from_fn(&f, n, n, |i, j| f.element(entries[i * n + j] % q).unwrap());
    UnitScheme::from_u(u).ok()
}

fn disjoint_scheme() -> impl Strategy<Value = (u64, usize, Vec<u64>, Vec<Vec<usize>>)> {
    (prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], 3usize..6).prop_flat_map(|(q, n)| {
        let entries = proptest::collection::vec(0..q, n * n);
        // E_0 = {0}; later tuples from the remaining rows
        let later = proptest::collection::vec(proptest::sample::subsequence((1..n).collect::<Vec<_>>(), 1), 1..3);
        (Just(q), Just(n), entries, later)
    })
    .prop_map(|(q, n, e, later)| {
        let mut tuples = vec![vec![0]];
        tuples.extend(later);
        (q, n, e, tuples)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disjoint_schemes_certify((q, n, entries, tuples) in disjoint_scheme()) {
        let Some(unit) = random_unit(q, n, &entries) else { return Ok(()) };
        let scheme = SelectionScheme::new(tuples).unwrap();
        prop_assert_eq!(classify_selection(&scheme), Selection::Disjoint);
        let code = build_generator(&unit, &scheme).unwrap();
        let h = right_inverse_structured(&scheme, &unit).unwrap();
        prop_assert!(code.generator().mul(&h).unwrap().is_identity());
        let k = check_matrix(&scheme, &unit).unwrap();
        prop_assert!(code.generator().mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.coeff(0).rank(), n - 1);
    }

    #[test]
    fn trellis_matches_brute_force((q, n, entries, tuples) in disjoint_scheme()) {
        let Some(unit) = random_unit(q, n, &entries) else { return Ok(()) };
        let code = build_generator(&unit, &SelectionScheme::new(tuples).unwrap()).unwrap();
        let exact = free_distance_exact(&code, &DistanceOptions::default()).unwrap();
        prop_assert!(exact.verify_witness(&code));
        prop_assert!(exact.lower <= gsb(code.n, code.r, code.delta));
        if let Some(oracle) = brute_force_distance(&code, 200_000) {
            prop_assert_eq!(exact.lower, oracle);
        }
    }

    #[test]
    fn cards_round_trip((q, n, entries, tuples) in disjoint_scheme()) {
        let Some(unit) = random_unit(q, n, &entries) else { return Ok(()) };
        let mut code = build_generator(&unit, &SelectionScheme::new(tuples).unwrap()).unwrap();
        code.certify(Some(&unit)).unwrap();
        code.certificates.distance = Some(free_distance_exact(&code, &DistanceOptions::default()).unwrap());
        let card = CodeCard::new(&code, Some(&unit), 0);
        let back = CodeCard::from_json(&card.to_json()).unwrap();
        prop_assert_eq!(&back, &card);
        let (code2, unit2) = back.verify().unwrap();
        prop_assert_eq!(CodeCard::new(&code2, unit2.as_ref(), 0), card);
    }
}
