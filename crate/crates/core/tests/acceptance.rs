//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{betti, center_dim, fixture, hh1_by_derivations};
use qhh_core::complex::{center, CochainComplex};
use qhh_core::dualext::DualExtension;
use qhh_core::fundgroup::{contracted_rank, extended_tree, relative_parade, verify_pullback, walk_to_word, TreeOrder, Walk};
use qhh_core::lie::{bracket_raw, brackets_land_in, LiePresentation};
use qhh_core::linalg::{Subquotient, Subspace};
use qhh_core::parse::parse_input;
use qhh_core::relative::RelativeHh1;
use qhh_core::suites::{case_rng, generate, run_suite, Instance, Suite, Summary, DEFAULT_SEED};
use qhh_core::{Arrow, Field, MonomialAlgebra, PrimeField, Quiver, Rationals, SubalgebraPair};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn pair(name: &str) -> SubalgebraPair {
    parse_input(&fixture(name)).unwrap().into_pair().unwrap()
}

fn algebra(name: &str) -> MonomialAlgebra {
    parse_input(&fixture(name)).unwrap().into_algebra()
}

fn suite(s: Suite, cases: usize) -> Result<Summary, String> {
    let r = run_suite(s, cases, DEFAULT_SEED);
    if let Some(f) = r.failures.first() {
        return Err(format!(
            "{}: {} of {} failed; case {}: {}\n{}",
            s.name(),
            r.failed,
            r.cases,
            f.case,
            f.message,
            f.counterexample
        ));
    }
    if r.passed == 0 {
        return Err(format!("{}: every case was skipped", s.name()));
    }
    Ok(r)
}

fn counts(r: &Summary) -> String {
    format!("{} passed, {} skipped of {}", r.passed, r.skipped, r.cases)
}

fn c1_notsolv() -> Check {
    let p = pair("notsolv.quiv");
    let rel = RelativeHh1::new(&p, &Rationals).map_err(|e| e.to_string())?;
    let abs = rel.absolute_lie().unwrap().report().unwrap();
    let r = rel.report().map_err(|e| e.to_string())?;
    ensure!(
        (abs.dim, abs.radical_dim, abs.semisimple_dim) == (4, Some(1), Some(3)),
        "HH¹(A): {abs:?}"
    );
    ensure!(r.dim_rel == 1 && r.lie.abelian, "HH¹(A|B): {:?}", r.lie);
    Ok("HH¹(A) dim 4 = 3 + 1, HH¹(A|B) = k".into())
}

fn c2_example2() -> Check {
    let p = pair("example2.quiv");
    let rel = RelativeHh1::new(&p, &Rationals).map_err(|e| e.to_string())?;
    let r = rel.report().map_err(|e| e.to_string())?;
    ensure!(r.dim_rel == 5, "dim {}", r.dim_rel);
    ensure!(
        (r.lie.radical_dim, r.lie.semisimple_dim) == (Some(2), Some(3)),
        "radical/semisimple {:?}",
        r.lie
    );
    let q = p.ambient().quiver();
    let c = rel.complex();
    let d1 = c.unit1("δ1", &qhh_core::Path::from_names(q, &["δ1"]).unwrap()).unwrap();
    let d2 = c.unit1("δ2", &qhh_core::Path::from_names(q, &["δ2"]).unwrap()).unwrap();
    let sum: Vec<_> = d1.iter().zip(&d2).map(|(x, y)| Rationals.add(x, y)).collect();
    let expected = Subspace::span(&Rationals, c.dim1(), vec![sum]);
    ensure!(*rel.image() == expected, "Im δ⁰_(A|B) = {:?}", r.image_rel);
    Ok("dim 5, radical 2, semisimple 3, Im δ⁰_(A|B) = ⟨δ1//δ1 + δ2//δ2⟩".into())
}

fn kronecker(n: usize, m: usize) -> SubalgebraPair {
    let q = Quiver::new(vec![1, 2], (1..=n).map(|i| Arrow::new(format!("a{i}"), 1, 2)).collect()).unwrap();
    let a = MonomialAlgebra::new(format!("K{n}"), q, vec![]).unwrap();
    SubalgebraPair::from_arrow_indices(a, "B", &(0..m).collect::<Vec<_>>()).unwrap()
}

fn c3_kronecker() -> Check {
    let mut seen = Vec::new();
    for n in 1..=4 {
        for m in 1..=n {
            let p = kronecker(n, m);
            let rel = RelativeHh1::new(&p, &Rationals).map_err(|e| e.to_string())?;
            let ker = rel.kernel().clone();
            ensure!(ker.dim() == (n - m) * n, "n={n} m={m}: dim Ker = {}", ker.dim());
            if m + 1 == n {
                let c = rel.complex();
                let sq = Subquotient::new(ker.clone(), Subspace::zero(&Rationals, c.dim1())).unwrap();
                let labels = (0..sq.dim()).map(|k| format!("k{k}")).collect();
                let lie = LiePresentation::from_subquotient(&sq, labels, |x, y| bracket_raw(c, x, y)).unwrap();
                let der = lie.derived_algebra();
                ensure!(der.dim() == n - 1, "n={n}: derived dim {}", der.dim());
                ensure!(lie.restrict(&der).unwrap().is_abelian(), "n={n}: derived subalgebra not abelian");
            }
            seen.push((n, m));
        }
    }
    Ok(format!("{} pairs (n, m), Ker dims (n−m)n, derived abelian of dim n−1 for m = n−1", seen.len()))
}

fn c4_loop_f2() -> Check {
    let a = algebra("loop.quiv");
    let f2 = PrimeField::new(2).unwrap();
    let c = CochainComplex::new(&a, &f2);
    let ker = c.ker_d1();
    let sq = Subquotient::new(ker.clone(), Subspace::zero(&f2, c.dim1())).unwrap();
    let labels = (0..sq.dim()).map(|k| format!("k{k}")).collect();
    let lie = LiePresentation::from_subquotient(&sq, labels, |x, y| bracket_raw(&c, x, y)).unwrap();
    ensure!(ker.dim() == 2, "dim Ker δ¹ = {}", ker.dim());
    ensure!(lie.is_solvable() && !lie.is_abelian(), "series {:?}", lie.derived_series());
    let q = CochainComplex::new(&a, &Rationals).ker_d1().dim();
    Ok(format!("Ker δ¹ over 𝔽₂ dim 2, solvable, nonabelian (over ℚ dim {q})"))
}

fn c5_radzero() -> Check {
    let r = suite(Suite::Radzero, 0)?;
    Ok(format!("exhaustive: {} canonical pairs agree", r.passed))
}

fn c6_theorems() -> Check {
    let a = suite(Suite::TheoremA, 200)?;
    let b = suite(Suite::TheoremB, 200)?;
    Ok(format!("theoremA {}; theoremB over 𝔽₂, 𝔽₃ {}", counts(&a), counts(&b)))
}

fn c7_string() -> Check {
    for n in 2..=5 {
        let b = algebra(&format!("a{n}.quiv"));
        let de = DualExtension::new(&b, &b).map_err(|e| e.to_string())?;
        let r = de.analyze(&Rationals).unwrap().report().map_err(|e| e.to_string())?;
        let t = n * (n - 1) / 2;
        ensure!(r.dim_hh0_lambda == n, "n={n}: HH⁰ = {}", r.dim_hh0_lambda);
        ensure!(center_dim(de.lambda()) == n, "n={n}: oracle center differs");
        ensure!(
            r.dim_hh1_lambda == t && r.dim_hh1_rel == t,
            "n={n}: HH¹(Λ) = {}, HH¹(Λ|B) = {}",
            r.dim_hh1_lambda,
            r.dim_hh1_rel
        );
        ensure!(r.hh1_lambda_lie.solvable, "n={n}: not solvable");
    }
    Ok("n = 2..5: HH⁰ = n, HH¹(Λ) = HH¹(Λ|B) = n(n−1)/2, solvable".into())
}

fn c8_notcong() -> Check {
    let b = algebra("notcong.quiv");
    let de = DualExtension::new(&b, &b).map_err(|e| e.to_string())?;
    let r = de.analyze(&Rationals).unwrap().report().map_err(|e| e.to_string())?;
    ensure!(
        (r.dim_i, r.dim_j_prime, r.dim_ker_rel, r.dim_j_mod_i, r.dim_hh1_rel) == (1, 2, 5, 6, 5),
        "ℐ {} 𝒥′ {} Ker {} 𝒥/ℐ {} HH¹(Λ|B) {}",
        r.dim_i,
        r.dim_j_prime,
        r.dim_ker_rel,
        r.dim_j_mod_i,
        r.dim_hh1_rel
    );
    Ok("dim 𝒥/ℐ = 6 ≠ 5 = dim HH¹(Λ|B)".into())
}

fn c9_exact_sequence() -> Check {
    let r = suite(Suite::DualMain, 100)?;
    Ok(format!("{} (pairs with Q_B connected)", counts(&r)))
}

fn c10_worked_example() -> Check {
    let p = pair("example2.quiv");
    let roots = BTreeMap::from([(1, 2), (3, 4)]);
    let r = verify_pullback(&p, &Rationals, &roots, Some(3)).map_err(|e| e.to_string())?;
    let images: Vec<String> = r
        .theta
        .iter()
        .map(|t| {
            t.terms
                .iter()
                .map(|x| format!("{}·{}//{}", x.coeff, x.left.arrows.join("*"), x.right.arrows.join("*")))
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    ensure!(images == ["1·α1//α1", "1·δ2//δ2"], "θ images {images:?}");
    ensure!(r.contracted_rank == 2, "rank {}", r.contracted_rank);
    ensure!(r.pullback_checks.all(), "{:?}", r.pullback_checks);
    let data = extended_tree(&p, TreeOrder::Bfs, &roots).unwrap();
    let q = p.ambient().quiver();
    let parade = relative_parade(&p, &data, Some(3)).unwrap();
    ensure!(
        parade.walks.iter().find(|w| w.vertex == 2).unwrap().connecting.steps == [(q.arrow_index("δ1").unwrap(), 1)],
        "γ_(*,2) is not δ1"
    );
    let w = Walk::parse(q, 3, "δ1 α1 α2^-1 δ1^-1").unwrap();
    ensure!(walk_to_word(q, &w, &data).unwrap().letters == [(0, 1)], "word of δ1⁻¹α2⁻¹α1δ1");
    Ok(format!("θ images {}; rank 2; pullback checks pass", images.join(", ")))
}

fn c11_contracted() -> Check {
    let r = suite(Suite::Contracted, 200)?;
    let mut compared = 0;
    for k in 0..200 {
        let Instance::Pair { algebra, sub } = generate(Suite::Contracted, &mut case_rng(DEFAULT_SEED, k)) else {
            unreachable!()
        };
        let Ok(a) = algebra.build("A", 40) else { continue };
        let q = a.quiver().clone();
        let all: Vec<usize> = (0..q.arrows().len()).collect();
        let p = SubalgebraPair::from_arrow_indices(a, "B", &sub).unwrap();
        let rank = contracted_rank(&p).unwrap() as i64;
        let dfs = extended_tree(&p, TreeOrder::Dfs, &BTreeMap::new()).unwrap().rank() as i64;
        let expected = betti(&q, &all) - betti(&q, &sub);
        ensure!(rank == expected && dfs == expected, "case {k}: rank {rank}/{dfs}, β₁ difference {expected}");
        compared += 1;
    }
    Ok(format!("{}; oracle β₁ difference matched on {compared}", counts(&r)))
}

fn structural_checks<F: Field>(a: &MonomialAlgebra, f: &F) -> Result<(), String> {
    let c = CochainComplex::new(a, f);
    ensure!(c.d1_after_d0_is_zero(), "{}: δ¹δ⁰ ≠ 0", a.name());
    let hh = c.hh1().map_err(|e| e.to_string())?;
    let labels = (0..hh.dim()).map(|k| format!("h{k}")).collect();
    let lie = LiePresentation::from_subquotient(&hh, labels, |x, y| bracket_raw(&c, x, y)).map_err(|e| e.to_string())?;
    ensure!(lie.is_antisymmetric() && lie.satisfies_jacobi(), "{}: Lie axioms", a.name());
    let (ker, im) = (c.ker_d1(), c.im_d0());
    ensure!(brackets_land_in(&c, &ker, &im, &im), "{}: [Ker δ¹, Im δ⁰] ⊄ Im δ⁰", a.name());
    Ok(())
}

fn c12_structure() -> Check {
    let j = suite(Suite::Jacobi, 100)?;
    let names = [
        "notsolv.quiv",
        "example2.quiv",
        "pre_example2.quiv",
        "loop.quiv",
        "kronecker2.quiv",
        "a2.quiv",
        "a3.quiv",
        "a4.quiv",
        "a5.quiv",
        "notcong.quiv",
        "radsq5.quiv",
        "discrete2.quiv",
    ];
    let mut algebras: Vec<MonomialAlgebra> = names.iter().map(|n| algebra(n)).collect();
    for (b, a) in [("notcong.quiv", "notcong.quiv"), ("a3.quiv", "a3.quiv"), ("kronecker2.quiv", "a2.quiv")] {
        let de = DualExtension::new(&algebra(b), &algebra(a)).unwrap();
        let an = de.analyze(&Rationals).unwrap();
        ensure!(
            brackets_land_in(an.complex(), &an.complex().ker_d1(), an.j(), an.j()),
            "[Ker δ¹_Λ, 𝒥] ⊄ 𝒥 for Λ({b}, {a}^op)"
        );
        algebras.push(de.lambda().clone());
    }
    let mut oracle = 0;
    for a in &algebras {
        structural_checks(a, &Rationals)?;
        structural_checks(a, &PrimeField::new(2).unwrap())?;
        if a.dim() <= 12 {
            let hh = CochainComplex::new(a, &Rationals).hh1().unwrap().dim();
            let brute = hh1_by_derivations(a);
            ensure!(hh == brute, "{}: HH¹ {hh} but derivations give {brute}", a.name());
            ensure!(center(a, &Rationals).dim() == center_dim(a), "{}: center differs", a.name());
            oracle += 1;
        }
    }
    Ok(format!(
        "jacobi {}; axioms on {} algebras; oracle HH¹ agrees on {oracle} with dim ≤ 12",
        counts(&j),
        algebras.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("notsolv example", c1_notsolv),
        ("Example2 relative structure", c2_example2),
        ("Kronecker bouquet lemma", c3_kronecker),
        ("char-2 loop", c4_loop_f2),
        ("radical-square-zero cross-check", c5_radzero),
        ("Theorem A / B suites", c6_theorems),
        ("A_n dual extensions", c7_string),
        ("notcong 𝒥/ℐ", c8_notcong),
        ("exact sequence and degree one", c9_exact_sequence),
        ("worked θ example", c10_worked_example),
        ("contracted rank", c11_contracted),
        ("structural axioms and oracle", c12_structure),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
