//! Brute-force oracles that share no linear algebra with the library.

#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use qhh_core::{MonomialAlgebra, Quiver};

pub fn fixture(name: &str) -> String {
    let p = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(p).unwrap()
}

/// Rank by plain Gaussian elimination over ℚ.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..ncols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Multiplication table: prod[i][j] = Some(k) when basis i followed by basis j is basis k.
pub fn multiplication_table(a: &MonomialAlgebra) -> Vec<Vec<Option<usize>>> {
    let basis = a.basis();
    let key = |src: u32, arrows: &[usize]| (src, arrows.to_vec());
    let index: HashMap<(u32, Vec<usize>), usize> =
        basis.iter().enumerate().map(|(i, p)| (key(p.source(), p.arrows()), i)).collect();
    let rels: Vec<Vec<usize>> = a.relations().iter().map(|r| r.arrows().to_vec()).collect();
    basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    if x.target() != y.source() {
                        return None;
                    }
                    let mut word = x.arrows().to_vec();
                    word.extend_from_slice(y.arrows());
                    if rels.iter().any(|r| word.windows(r.len()).any(|w| w == r.as_slice())) {
                        return None;
                    }
                    index.get(&key(x.source(), &word)).copied()
                })
                .collect()
        })
        .collect()
}

/// dim Der(A) − dim Inn(A), solving the Leibniz rule entry by entry.
pub fn hh1_by_derivations(a: &MonomialAlgebra) -> usize {
    let t = multiplication_table(a);
    let d = t.len();
    let var = |k: usize, i: usize| k * d + i; // coefficient of basis k in D(basis i)
    let mut eqs: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut rows: HashMap<usize, Vec<BigRational>> = HashMap::new();
            let mut add = |l: usize, v: usize, c: i64| {
                let row = rows.entry(l).or_insert_with(|| vec![BigRational::zero(); d * d]);
                row[v] += BigRational::from_integer(c.into());
            };
            if let Some(m) = t[i][j] {
                for l in 0..d {
                    add(l, var(l, m), 1);
                }
            }
            for k in 0..d {
                if let Some(l) = t[k][j] {
                    add(l, var(k, i), -1);
                }
                if let Some(l) = t[i][k] {
                    add(l, var(k, j), -1);
                }
            }
            eqs.extend(rows.into_values().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
    }
    let der = d * d - rank(eqs);
    let inner: Vec<Vec<BigRational>> = (0..d)
        .map(|x| {
            let mut v = vec![BigRational::zero(); d * d];
            for y in 0..d {
                if let Some(l) = t[x][y] {
                    v[var(l, y)] += BigRational::one();
                }
                if let Some(l) = t[y][x] {
                    v[var(l, y)] -= BigRational::one();
                }
            }
            v
        })
        .collect();
    der - rank(inner)
}

/// dim of the center.
pub fn center_dim(a: &MonomialAlgebra) -> usize {
    let t = multiplication_table(a);
    let d = t.len();
    let mut eqs = Vec::new();
    for y in 0..d {
        // Σ_x z_x (x·y − y·x) = 0, one equation per output basis element
        let mut rows = vec![vec![BigRational::zero(); d]; d];
        for x in 0..d {
            if let Some(l) = t[x][y] {
                rows[l][x] += BigRational::one();
            }
            if let Some(l) = t[y][x] {
                rows[l][x] -= BigRational::one();
            }
        }
        eqs.extend(rows);
    }
    d - rank(eqs)
}

/// β₁ = m − n + c, components found by depth-first search.
pub fn betti(q: &Quiver, arrows: &[usize]) -> i64 {
    let n = q.vertices().len();
    let pos = |v: u32| q.vertices().iter().position(|&w| w == v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &a in arrows {
        let x = q.arrow(a);
        adj[pos(x.source)].push(pos(x.target));
        adj[pos(x.target)].push(pos(x.source));
    }
    let mut seen = vec![false; n];
    let mut c = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        c += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    arrows.len() as i64 - n as i64 + c
}
