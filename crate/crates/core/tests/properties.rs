mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qhh_core::complex::CochainComplex;
use qhh_core::fundgroup::FreeWord;
use qhh_core::linalg::{null_space, rref, Subspace};
use qhh_core::parse::{parse_input, write_algebra};
use qhh_core::suites::{case_rng, random_algebra};
use qhh_core::{Field, PrimeField, Rationals};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

proptest! {
    #[test]
    fn prime_field_axioms(pi in 0usize..PRIMES.len(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        }
    }

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))) {
        let cols = m[0].len();
        let rows: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let (ech, pivots) = rref(&Rationals, rows.clone(), cols);
        prop_assert_eq!(ech.len(), pivots.len());
        prop_assert_eq!(ech.len(), common::rank(rows.clone()));
        let ker = null_space(&Rationals, rows.clone(), cols);
        prop_assert_eq!(ker.dim() + ech.len(), cols);
        for v in ker.basis() {
            for r in &rows {
                let dot = r.iter().zip(v).fold(q(0), |acc, (x, y)| acc + x * y);
                prop_assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn rank_mod_p_never_exceeds_rank_over_q(m in matrix(4, 5), pi in 0usize..PRIMES.len()) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let rq = rref(&Rationals, m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), 5).1.len();
        let rp = rref(&f, m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect(), 5).1.len();
        prop_assert!(rp <= rq);
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(3, 5), b in matrix(3, 5)) {
        let span = |m: &Vec<Vec<i64>>| Subspace::span(&Rationals, 5, m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect());
        let (u, w) = (span(&a), span(&b));
        let (s, i) = (u.sum(&w), u.intersection(&w));
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn free_words_reduce(letters in prop::collection::vec((0usize..3, prop::bool::ANY), 0..24)) {
        let mut w = FreeWord::default();
        for &(g, pos) in &letters {
            w.push(g, if pos { 1 } else { -1 });
        }
        prop_assert!(w.letters.windows(2).all(|p| p[0].0 != p[1].0 || p[0].1 != -p[1].1));
        let mut back = w.clone();
        for &(g, e) in w.letters.iter().rev() {
            back.push(g, -e);
        }
        prop_assert!(back.is_empty());
        for g in 0..3 {
            let raw: i64 = letters.iter().filter(|l| l.0 == g).map(|l| if l.1 { 1 } else { -1 }).sum();
            prop_assert_eq!(w.exponent_sum(g), raw);
        }
    }

    #[test]
    fn random_algebras(seed in any::<u64>()) {
        let raw = random_algebra(&mut case_rng(seed, 0), 4, 5, true, false);
        let Ok(a) = raw.build("R", 40) else { return Ok(()) };
        let again = parse_input(&write_algebra(&a)).unwrap().into_algebra();
        prop_assert_eq!(again.basis(), a.basis());
        prop_assert_eq!(again.relations(), a.relations());
        let c = CochainComplex::new(&a, &Rationals);
        prop_assert!(c.d1_after_d0_is_zero());
        if a.dim() <= 10 {
            prop_assert_eq!(c.hh1().unwrap().dim(), common::hh1_by_derivations(&a));
        }
    }
}
