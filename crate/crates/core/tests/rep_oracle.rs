use quiverlab::linalg::{FFMatrix, Field};
use quiverlab::rep::hom_space_dim;
use quiverlab::{DiagramType, DynkinQuiver, Lab, Rep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> FFMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.order())).collect();
        let m = FFMatrix::from_data(f, n, n, data).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

#[test]
fn indecomposables_have_root_dims_and_trivial_endomorphisms() {
    for name in ["A4", "D4", "D5", "E6"] {
        let lab = Lab::from_name(name).unwrap();
        for f in [Field::F2, Field::F3] {
            let inds = lab.indecomposables(f).unwrap();
            for (k, m) in inds.iter().enumerate() {
                assert_eq!(m.dim(), lab.roots().root(k));
                assert_eq!(hom_space_dim(m, m).unwrap(), 1, "{name} root {k}");
            }
        }
    }
}

#[test]
fn d4_highest_root_has_two_at_center() {
    let lab = Lab::from_name("D4").unwrap();
    let top = lab.roots().roots().iter().position(|r| r.total() == 5).unwrap();
    let m = lab.indecomposable(top, Field::F3).unwrap();
    let center = lab.quiver().index(2).unwrap();
    assert_eq!(m.dim().get(center), 2);
}

#[test]
fn reflection_modules_match_chain_modules_in_type_a() {
    let orientations: [&[(usize, usize)]; 3] = [
        &[(1, 2), (2, 3), (3, 4)],
        &[(2, 1), (2, 3), (4, 3)],
        &[(4, 3), (3, 2), (2, 1)],
    ];
    for arrows in orientations {
        let lab = Lab::new(DynkinQuiver::new(DiagramType::A, 4, arrows).unwrap());
        let q = lab.quiver().clone();
        for k in 0..lab.roots().len() {
            let (a, b) = lab.roots().segment(&q, k).unwrap();
            let chain = Rep::chain_module(q.clone(), Field::F3, a, b).unwrap();
            let built = lab.indecomposable(k, Field::F3).unwrap();
            assert_eq!(hom_space_dim(&chain, &built).unwrap(), 1);
            assert_eq!(hom_space_dim(&built, &chain).unwrap(), 1);
            assert_eq!(lab.identify(&chain).unwrap(), lab.root_kp(k));
        }
    }
}

#[test]
fn identify_round_trips_in_a3() {
    let lab = Lab::from_name("A3").unwrap();
    for f in [Field::F2, Field::F3] {
        for lambda in lab.kps_up_to(6) {
            let m = lab.build(&lambda, f).unwrap();
            assert_eq!(lab.identify(&m).unwrap(), lambda);
        }
    }
}

#[test]
fn identify_a2_examples() {
    let lab = Lab::from_name("A2").unwrap();
    let q = lab.quiver().clone();
    let f = Field::F2;
    let dim = lab.parse_dim("1,1").unwrap();
    let one = Rep::new(q.clone(), f, dim.clone(), vec![FFMatrix::identity(f, 1)]).unwrap();
    assert_eq!(lab.format(&lab.identify(&one).unwrap()), "[1,2]");
    let zero = Rep::zero_maps(q, f, dim).unwrap();
    assert_eq!(lab.format(&lab.identify(&zero).unwrap()), "[1,1]+[2,2]");
}

#[test]
fn identify_is_constant_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A3", "D4"] {
        let lab = Lab::from_name(name).unwrap();
        let all = lab.kps_up_to(5);
        for f in [Field::F2, Field::F3] {
            for _ in 0..40 {
                let lambda = &all[rng.gen_range(0..all.len())];
                let m = lab.build(lambda, f).unwrap();
                let g: Vec<FFMatrix> = (0..lab.rank())
                    .map(|v| random_invertible(&mut rng, f, m.dim().get(v) as usize))
                    .collect();
                let gm = m.base_change(&g).unwrap();
                assert_eq!(&lab.identify(&gm).unwrap(), lambda);
            }
        }
    }
}

#[test]
fn hom_space_dim_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lab = Lab::from_name("D4").unwrap();
    let all = lab.kps_up_to(4);
    let f = Field::F3;
    for _ in 0..50 {
        let pick = |rng: &mut ChaCha8Rng| lab.build(&all[rng.gen_range(0..all.len())], f).unwrap();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let ab = a.direct_sum(&b).unwrap();
        assert_eq!(
            hom_space_dim(&ab, &c).unwrap(),
            hom_space_dim(&a, &c).unwrap() + hom_space_dim(&b, &c).unwrap()
        );
        assert_eq!(
            hom_space_dim(&c, &ab).unwrap(),
            hom_space_dim(&c, &a).unwrap() + hom_space_dim(&c, &b).unwrap()
        );
    }
}

#[test]
fn random_pairs_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["A3", "D4"] {
        let lab = Lab::from_name(name).unwrap();
        let all = lab.kps_up_to(6);
        for f in [Field::F2, Field::F3] {
            for _ in 0..100 {
                let mu = &all[rng.gen_range(0..all.len())];
                let nu = &all[rng.gen_range(0..all.len())];
                let got = hom_space_dim(&lab.build(mu, f).unwrap(), &lab.build(nu, f).unwrap()).unwrap();
                assert_eq!(got as i64, lab.hom_dim(mu, nu), "{name} {} {}", lab.format(mu), lab.format(nu));
            }
        }
    }
}
