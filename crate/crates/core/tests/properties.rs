use proptest::prelude::*;
use quiverlab::linalg::{gaussian_binomial, Field};
use quiverlab::{DimVector, Engine, KostantPartition, Lab};

fn partition(lab: &Lab, mult: Vec<usize>) -> KostantPartition {
    KostantPartition::from_multiplicities(lab.roots(), &mult)
}

fn mult_strategy(roots: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=max, roots)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_identity_in_e6(a in mult_strategy(36, 1), b in mult_strategy(36, 1)) {
        let lab = Lab::from_name("E6").unwrap();
        let (a, b) = (partition(&lab, a), partition(&lab, b));
        prop_assert_eq!(lab.hom_dim(&a, &b) - lab.ext_dim(&a, &b), lab.euler(a.total(), b.total()));
    }

    #[test]
    fn hom_is_additive(a in mult_strategy(12, 2), b in mult_strategy(12, 2), c in mult_strategy(12, 2)) {
        let lab = Lab::from_name("D4").unwrap();
        let (a, b, c) = (partition(&lab, a), partition(&lab, b), partition(&lab, c));
        prop_assert_eq!(lab.hom_dim(&a.sum(&b), &c), lab.hom_dim(&a, &c) + lab.hom_dim(&b, &c));
        prop_assert_eq!(lab.ext_dim(&c, &a.sum(&b)), lab.ext_dim(&c, &a) + lab.ext_dim(&c, &b));
    }

    #[test]
    fn format_parse_round_trip(a in mult_strategy(10, 3)) {
        let lab = Lab::from_name("A4").unwrap();
        let l = partition(&lab, a);
        prop_assert_eq!(lab.parse(&lab.format(&l)).unwrap(), l);
    }

    #[test]
    fn identify_inverts_build(a in mult_strategy(12, 1), three in any::<bool>()) {
        let lab = Lab::from_name("D4").unwrap();
        let l = partition(&lab, a);
        let f = if three { Field::F3 } else { Field::F2 };
        prop_assert_eq!(lab.identify(&lab.build(&l, f).unwrap()).unwrap(), l);
    }
}

#[test]
fn degeneration_order_is_a_partial_order() {
    let lab = Lab::from_name("A3").unwrap();
    for gamma in ["1,2,1", "2,2,1", "1,1,1"] {
        let kps = lab.kps(&lab.parse_dim(gamma).unwrap());
        for a in &kps {
            assert!(lab.leq(a, a));
            for b in &kps {
                if lab.leq(a, b) && lab.leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &kps {
                    if lab.leq(a, b) && lab.leq(b, c) {
                        assert!(lab.leq(a, c));
                    }
                }
            }
        }
        let split = lab.maximal_elements(&kps);
        assert_eq!(split.len(), 1);
        assert_eq!(split[0].num_parts() as i64, lab.parse_dim(gamma).unwrap().total());
    }
}

#[test]
fn semisimple_grassmannians_are_products_of_gaussian_binomials() {
    let e = Engine::from_name("A3").unwrap();
    let lab: &Lab = &e;
    for gamma in ["2,1,1", "1,2,1", "2,2,0"] {
        let gamma = lab.parse_dim(gamma).unwrap();
        let split = lab.maximal_elements(&lab.kps(&gamma)).remove(0);
        for beta in DimVector::all_up_to(3, gamma.total()) {
            if !beta.le(&gamma) {
                continue;
            }
            for f in [Field::F2, Field::F3] {
                let expected: u128 = (0..3)
                    .map(|i| gaussian_binomial(gamma.get(i) as usize, beta.get(i) as usize, f.order() as u64))
                    .product();
                assert_eq!(e.point_count(&split, &beta, f).unwrap(), expected);
            }
        }
    }
}

#[test]
fn strata_counts_sum_to_the_point_count() {
    let e = Engine::from_name("A3").unwrap();
    let lambda = e.parse("[1,3]+[2,2]+[2,3]").unwrap();
    for beta in DimVector::all_up_to(3, 3) {
        if !beta.le(lambda.total()) {
            continue;
        }
        let r = e.strata(&lambda, &beta, Field::F3).unwrap();
        assert_eq!(r.strata.iter().map(|s| s.count).sum::<u128>(), r.total);
        assert_eq!(r.total, e.point_count(&lambda, &beta, Field::F3).unwrap());
        for s in &r.strata {
            assert_eq!(s.nu.total(), &beta);
            assert_eq!(&s.mu.sum(&s.nu).total().clone(), lambda.total());
        }
    }
}

#[test]
fn cap_violations_are_errors() {
    let lab = std::sync::Arc::new(Lab::from_name("A3").unwrap());
    let e = Engine::new(lab, quiverlab::EnumConfig::new(vec![Field::F2], 4).unwrap());
    let l = e.parse("4[2,2]").unwrap();
    let err = e.point_count(&l, &e.parse_dim("0,2,0").unwrap(), Field::F2).unwrap_err();
    assert!(matches!(err, quiverlab::Error::CapExceeded { .. }));
}
