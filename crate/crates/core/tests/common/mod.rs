//! Oracles independent of the intersection chain machinery.

#![allow(dead_code)]

use ihom::{Perversity, SimplicialComplex, StratifiedSpace};

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = m[rank][c]
                    .checked_mul(m[r][k])
                    .and_then(|a| m[r][c].checked_mul(m[rank][k]).and_then(|b| a.checked_sub(b)))
                    .expect("Bareiss overflow");
                m[r][k] = v / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dense matrix of `∂_j: C_j → C_{j−1}` restricted to simplices outside
/// `skip`. Rows are `(j−1)`-simplices, columns `j`-simplices.
fn boundary_matrix(k: &SimplicialComplex, j: usize, skip: &dyn Fn(&[u32]) -> bool) -> Vec<Vec<i128>> {
    let rows: Vec<&ihom::Simplex> = k.simplices(j - 1).iter().filter(|s| !skip(s.vertices())).collect();
    let cols: Vec<&ihom::Simplex> = k.simplices(j).iter().filter(|s| !skip(s.vertices())).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (c, s) in cols.iter().enumerate() {
        let v = s.vertices();
        for i in 0..v.len() {
            let face: Vec<u32> = v.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &u)| u).collect();
            if let Some(r) = rows.iter().position(|f| f.vertices() == face.as_slice()) {
                m[r][c] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

fn homology_skipping(k: &SimplicialComplex, skip: &dyn Fn(&[u32]) -> bool) -> Vec<usize> {
    let n = k.dim().map_or(0, |d| d + 1);
    let count = |j: usize| k.simplices(j).iter().filter(|s| !skip(s.vertices())).count();
    let ranks: Vec<usize> = (0..=n).map(|j| if j == 0 || j >= n { 0 } else { bareiss_rank(boundary_matrix(k, j, skip)) }).collect();
    (0..n).map(|j| count(j) - ranks[j] - ranks[j + 1]).collect()
}

/// Ordinary simplicial Betti numbers over the rationals.
pub fn simplicial_betti(k: &SimplicialComplex) -> Vec<usize> {
    homology_skipping(k, &|_| false)
}

/// Betti numbers of `H(K, L)` for `L` the full subcomplex on `vertices`.
pub fn relative_betti(k: &SimplicialComplex, vertices: &std::collections::BTreeSet<u32>) -> Vec<usize> {
    homology_skipping(k, &|s| s.iter().all(|v| vertices.contains(v)))
}

/// Intersection homology of the cone on a manifold `L` from the cone
/// formula: `H_j(L)` below `l − 1 − p_l`, zero from there on.
pub fn cone_formula(link: &StratifiedSpace, p: &Perversity) -> Vec<usize> {
    let l = link.dim() + 1;
    let b = simplicial_betti(link.complex());
    let cut = l as i64 - 1 - p.get(l) as i64;
    (0..=l).map(|j| if (j as i64) < cut { b.get(j).copied().unwrap_or(0) } else { 0 }).collect()
}

/// Interior vertices regular, boundary vertices at most one step below.
pub fn is_trivially_stratified(x: &StratifiedSpace) -> bool {
    let l = x.dim();
    x.depths().iter().all(|(v, &d)| d == l || (d + 1 == l && x.boundary_vertices().contains(v)))
}

pub fn padded(mut v: Vec<usize>, n: usize) -> Vec<usize> {
    v.resize(n, 0);
    v
}
