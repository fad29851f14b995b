use quiverlab::{Engine, KostantPartition, Verdict};

fn pairs(e: &Engine, max: i64) -> Vec<(KostantPartition, KostantPartition)> {
    let kps: Vec<_> = e.kps_up_to(max).into_iter().filter(|l| !l.is_empty()).collect();
    let mut out = Vec::new();
    for mu in &kps {
        for nu in &kps {
            if mu.total().total() + nu.total().total() <= max {
                out.push((mu.clone(), nu.clone()));
            }
        }
    }
    out
}

#[test]
fn middle_terms_are_below_split_with_semicontinuous_homs() {
    let e = Engine::from_name("A3").unwrap();
    for (mu, nu) in pairs(&e, 4) {
        let v = e.simplicity_necessary(&mu, &nu).unwrap();
        let split = mu.sum(&nu);
        for row in &v.table {
            assert!(e.leq(&row.lambda, &split));
            assert!(row.nu_lambda <= row.nu_split && row.mu_lambda <= row.mu_split);
        }
        assert_eq!(v.witness.is_some(), v.verdict == Verdict::CannotBeSimple);
        let set = e.ext_set(&mu, &nu).unwrap();
        if set.classes == vec![split] {
            assert_eq!(v.verdict, Verdict::PassesNecessaryTest);
        }
    }
}

#[test]
fn generic_extension_is_minimum_of_extension_set() {
    let e = Engine::from_name("A3").unwrap();
    for (mu, nu) in pairs(&e, 4) {
        let g = e.generic_ext(&mu, &nu).unwrap();
        let set = e.ext_set(&mu, &nu).unwrap();
        assert!(set.classes.contains(&g));
        assert!(set.classes.iter().all(|l| e.leq(&g, l)));
        let b = e.head_socle_bounds(&mu, &nu).unwrap();
        assert!(b.socle.contains(&g) && b.socle.contains(&b.split));
        assert!(b.head.contains(&b.split));
    }
}

#[test]
fn degree_report_rows_and_split_epsilon() {
    let e = Engine::from_name("A3").unwrap();
    for (mu, nu) in pairs(&e, 3) {
        let rows = e.degree_report(&mu, &nu).unwrap();
        let split = mu.sum(&nu);
        for r in &rows {
            assert_eq!(r.bound, 2 * r.e + r.d);
            assert!(!r.ext_ger || r.generic_pair);
            assert_eq!(r.epsilon.is_some(), r.lambda == split);
        }
    }
}

#[test]
fn semicuspidal_pairs_generate_their_root() {
    let e = Engine::from_name("A3").unwrap();
    for k in 0..e.roots().len() {
        let alpha = e.roots().root(k).clone();
        for (mu, nu) in e.semicuspidal_pairs(&alpha).unwrap() {
            assert_eq!(e.generic_ext(&mu, &nu).unwrap(), e.root_kp(k));
            assert!(mu.parts().iter().all(|&p| p < k) && nu.parts().iter().all(|&p| p > k));
        }
    }
}

#[test]
fn degree_bound_decreases_towards_split() {
    let e = Engine::from_name("A3").unwrap();
    for (mu, nu) in pairs(&e, 4) {
        let rows = e.degree_report(&mu, &nu).unwrap();
        for a in &rows {
            for b in &rows {
                if e.lt(&a.lambda, &b.lambda) {
                    assert!(b.bound < a.bound, "({}, {}): {} vs {}", e.format(&mu), e.format(&nu), e.format(&a.lambda), e.format(&b.lambda));
                }
            }
        }
    }
}
