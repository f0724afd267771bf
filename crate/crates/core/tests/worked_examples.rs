use qhh_core::parse::parse_input;
use qhh_core::relative::RelativeHh1;
use qhh_core::Rationals;

fn fixture(name: &str) -> String {
    let p = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn notsolv_dims() {
    let pair = parse_input(&fixture("notsolv.quiv")).unwrap().into_pair().unwrap();
    let rel = RelativeHh1::new(&pair, &Rationals).unwrap();
    let r = rel.report().unwrap();
    let abs = rel.absolute_lie().unwrap().report().unwrap();
    assert_eq!((abs.dim, abs.radical_dim, abs.semisimple_dim), (4, Some(1), Some(3)));
    assert_eq!(r.dim_rel, 1);
    assert!(r.lie.abelian);
}

#[test]
fn example2_dims() {
    let pair = parse_input(&fixture("example2.quiv")).unwrap().into_pair().unwrap();
    let rel = RelativeHh1::new(&pair, &Rationals).unwrap();
    let r = rel.report().unwrap();
    assert_eq!(r.dim_rel, 5);
    assert_eq!(r.lie.radical_dim, Some(2));
    assert_eq!(r.lie.semisimple_dim, Some(3));
    assert_eq!(r.dim_im_rel, 1);
}

fn algebra(name: &str) -> qhh_core::MonomialAlgebra {
    parse_input(&fixture(name)).unwrap().into_algebra()
}

#[test]
fn notcong_ji() {
    use qhh_core::dualext::DualExtension;
    let b = algebra("notcong.quiv");
    let de = DualExtension::new(&b, &b).unwrap();
    let r = de.analyze(&Rationals).unwrap().report().unwrap();
    assert_eq!((r.dim_i, r.dim_j_prime, r.dim_ker_rel, r.dim_j_mod_i), (1, 2, 5, 6));
    assert_eq!(r.dim_hh1_rel, 5);
    assert!(r.checks.all(), "{:?}", r.checks);
}

#[test]
fn string_dual_extensions() {
    use qhh_core::dualext::DualExtension;
    for n in 2..=5usize {
        let b = algebra(&format!("a{n}.quiv"));
        let de = DualExtension::new(&b, &b).unwrap();
        let r = de.analyze(&Rationals).unwrap().report().unwrap();
        let t = n * (n - 1) / 2;
        assert_eq!((r.dim_hh0_lambda, r.dim_hh1_lambda, r.dim_hh1_rel, r.dim_j_mod_i), (n, t, t, t), "n={n}");
        assert!(r.hh1_lambda_lie.solvable);
        assert!(r.checks.all(), "{:?}", r.checks);
    }
}

#[test]
fn notsolv_is_a_dual_extension() {
    use qhh_core::dualext::DualExtension;
    let de = DualExtension::new(&algebra("kronecker2.quiv"), &algebra("a2.quiv")).unwrap();
    assert_eq!(de.lambda().dim(), 7);
    let r = de.analyze(&Rationals).unwrap().report().unwrap();
    assert_eq!((r.dim_hh1_lambda, r.dim_hh1_b, r.dim_j_mod_i), (4, 3, 1));
    assert_eq!(r.degree_one.hh1_lambda, 4);
    assert!(r.checks.all(), "{:?}", r.checks);
}

#[test]
fn radzero_examples() {
    use qhh_core::radzero::{classify_complement, report, ClassKind};
    let pair = parse_input(&fixture("example2.quiv")).unwrap().into_pair().unwrap();
    let r = report(&pair).unwrap();
    assert!(r.crosscheck.is_ok(), "{:?}", r.crosscheck);
    let d = &r.descriptor;
    assert_eq!(d.semisimple.len(), 1);
    assert_eq!(d.semisimple[0].size, 2);
    assert_eq!(d.radical_blocks.iter().map(|b| b.ideal_dim + b.scalar).collect::<Vec<_>>(), vec![2]);
    assert_eq!(d.abelian_tail, 0);
    assert_eq!((d.total_dim, d.semisimple_dim, d.radical_dim), (5, 3, 2));

    let pre = parse_input(&fixture("pre_example2.quiv")).unwrap().into_pair().unwrap();
    let classes = classify_complement(&pre).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!((classes[0].kind, classes[0].size), (ClassKind::D, 2));
    let r = report(&pre).unwrap();
    assert!(r.crosscheck.is_ok(), "{:?}", r.crosscheck);
    let abs = RelativeHh1::new(&pre, &Rationals).unwrap();
    assert_eq!(abs.dim(), abs.absolute().dim());
}

#[test]
fn worked_example_theta() {
    use qhh_core::fundgroup::*;
    use std::collections::BTreeMap;
    let pair = parse_input(&fixture("example2.quiv")).unwrap().into_pair().unwrap();
    let roots = BTreeMap::from([(1, 2), (3, 4)]);
    let data = extended_tree(&pair, TreeOrder::Bfs, &roots).unwrap();
    let q = pair.ambient().quiver();
    assert_eq!(q.arrow_names(&data.generators), vec!["α1", "δ2"]);
    let parade = relative_parade(&pair, &data, Some(3)).unwrap();
    let x1 = parade.walks.iter().find(|w| w.vertex == 2).unwrap();
    assert_eq!(x1.connecting.steps, vec![(q.arrow_index("δ1").unwrap(), 1)]);
    let w = Walk::parse(q, 3, "δ1 α1 α2^-1 δ1^-1").unwrap();
    let word = walk_to_word(q, &w, &data).unwrap();
    assert_eq!(word.letters, vec![(0, 1)]);
    let back = w.then(q, &w.inverse(q).unwrap()).unwrap();
    assert!(walk_to_word(q, &back, &data).unwrap().is_empty());

    let r = verify_pullback(&pair, &Rationals, &roots, Some(3)).unwrap();
    let labels: Vec<Vec<(String, String, String)>> = r
        .theta
        .iter()
        .map(|t| t.terms.iter().map(|x| (x.left.arrows.join("*"), x.right.arrows.join("*"), x.coeff.clone())).collect())
        .collect();
    assert_eq!(
        labels,
        vec![
            vec![("α1".to_string(), "α1".to_string(), "1".to_string())],
            vec![("δ2".to_string(), "δ2".to_string(), "1".to_string())]
        ]
    );
    assert_eq!((r.contracted_rank, r.theta_image_dim), (2, 2));
    assert!(r.pullback_checks.all(), "{:?}", r.pullback_checks);

    let notsolv = parse_input(&fixture("notsolv.quiv")).unwrap().into_pair().unwrap();
    let r = verify_pullback(&notsolv, &Rationals, &BTreeMap::new(), None).unwrap();
    assert_eq!((r.betti_A, r.betti_B, r.contracted_rank, r.theta_image_dim), (2, 1, 1, 1));
    assert!(r.pullback_checks.all());
}

#[test]
fn radsq5_contracted() {
    use qhh_core::fundgroup::*;
    let pair = parse_input(&fixture("radsq5.quiv")).unwrap().into_pair().unwrap();
    let data = extended_tree(&pair, TreeOrder::Bfs, &Default::default()).unwrap();
    assert_eq!(data.tree_a.len(), 4);
    assert_eq!(data.rank(), 1);
    let r = verify_pullback(&pair, &Rationals, &Default::default(), None).unwrap();
    assert!(r.pullback_checks.all(), "{:?}", r.pullback_checks);
}
