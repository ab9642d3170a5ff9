//! Betti numbers, representative cycles, induced maps and exactness of long
//! sequences.
//!
//! For a complex `C / D` the cycles are `Z_j = {ξ ∈ C_j : ∂ξ ∈ D_{j-1}}` and
//! the boundaries `B_j = ∂C_{j+1} + D_j`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::chains::{IntersectionComplex, Variant};
use crate::complex::{sort_sign, Chain, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, RatMatrix, SparseVec, TrackedEchelon};

/// Homology of one complex. Bases are present when computed with
/// [`homology`].
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub name: String,
    pub variant: Variant,
    pub perversity: String,
    pub betti: Vec<usize>,
    reps: Option<Vec<Vec<SparseVec>>>,
    classes: Option<Vec<TrackedEchelon>>,
}

impl HomologyResult {
    pub fn betti(&self, j: usize) -> usize {
        self.betti.get(j).copied().unwrap_or(0)
    }

    pub fn has_basis(&self) -> bool {
        self.reps.is_some()
    }

    /// Representative cycles of degree `j`, in ambient coordinates.
    pub fn representatives(&self, j: usize) -> &[SparseVec] {
        self.reps.as_ref().and_then(|r| r.get(j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Coordinates of the class of the cycle `z` on the representatives, or
    /// `None` if `z` is not a cycle.
    pub fn class_of(&self, j: usize, z: &SparseVec) -> Option<Vec<Rational>> {
        let classes = self.classes.as_ref().expect("homology computed without bases");
        let Some(e) = classes.get(j) else {
            return z.is_zero().then(Vec::new);
        };
        let c = e.coordinates(z.clone())?;
        Some((0..self.betti(j) as u32).map(|k| c.get(k)).collect())
    }
}

fn echelon_of<'a>(vecs: impl IntoIterator<Item = &'a SparseVec>) -> Echelon {
    let mut e = Echelon::new();
    for v in vecs {
        e.insert(v.clone());
    }
    e
}

/// Echelon of `B_j = D_j + ∂C_{j+1}`.
fn boundaries(c: &IntersectionComplex, j: usize) -> Echelon {
    let mut e = echelon_of(c.quotient(j));
    for v in c.chains(j + 1) {
        e.insert(c.boundary(j + 1, v));
    }
    e
}

/// Betti numbers only.
pub fn betti_numbers(c: &IntersectionComplex) -> HomologyResult {
    let n = c.len();
    let b: Vec<usize> = (0..n).into_par_iter().map(|j| boundaries(c, j).rank()).collect();
    let betti = (0..n)
        .map(|j| {
            let image = if j == 0 { 0 } else { b[j - 1] - c.quotient(j - 1).len() };
            c.chains(j).len() - image - b[j]
        })
        .collect();
    HomologyResult {
        name: c.name().to_string(),
        variant: c.variant(),
        perversity: c.perversity().label(),
        betti,
        reps: None,
        classes: None,
    }
}

/// Basis of `Z_j`.
fn cycles(c: &IntersectionComplex, j: usize) -> Vec<SparseVec> {
    let basis = c.chains(j);
    if j == 0 {
        return basis.to_vec();
    }
    let mut t = TrackedEchelon::new();
    for d in c.quotient(j - 1) {
        t.insert(d.clone(), SparseVec::new());
    }
    let mut out = Vec::new();
    for (k, v) in basis.iter().enumerate() {
        if let Some(rel) = t.insert(c.boundary(j, v), SparseVec::unit(k as u32)) {
            let z = rel.expand(basis);
            if !z.is_zero() {
                out.push(z);
            }
        }
    }
    out
}

fn degree_homology(c: &IntersectionComplex, j: usize) -> (Vec<SparseVec>, TrackedEchelon) {
    let z = cycles(c, j);
    let mut t = TrackedEchelon::new();
    for d in c.quotient(j) {
        t.insert(d.clone(), SparseVec::new());
    }
    for v in c.chains(j + 1) {
        t.insert(c.boundary(j + 1, v), SparseVec::new());
    }
    let mut reps = Vec::new();
    for v in z {
        if t.insert(v.clone(), SparseVec::unit(reps.len() as u32)).is_none() {
            reps.push(v);
        }
    }
    (reps, t)
}

/// Betti numbers with representative cycles.
pub fn homology(c: &IntersectionComplex) -> HomologyResult {
    let parts: Vec<(Vec<SparseVec>, TrackedEchelon)> =
        (0..c.len()).into_par_iter().map(|j| degree_homology(c, j)).collect();
    let betti = parts.iter().map(|p| p.0.len()).collect();
    let (reps, classes) = parts.into_iter().unzip();
    HomologyResult {
        name: c.name().to_string(),
        variant: c.variant(),
        perversity: c.perversity().label(),
        betti,
        reps: Some(reps),
        classes: Some(classes),
    }
}

/// Cycles representing a basis of `H_j`.
pub fn homology_basis(c: &IntersectionComplex, j: usize) -> Vec<Chain> {
    degree_homology(c, j).0.iter().map(|v| c.to_chain(j, v)).collect()
}

/// A chain map between complexes.
#[derive(Clone, Debug)]
pub enum ChainMap {
    /// Inclusion or projection between complexes on the same ambient
    /// simplices.
    Identity,
    /// The simplicial map induced by a vertex map.
    VertexMap(HashMap<u32, u32>),
}

impl ChainMap {
    fn apply(&self, src: &IntersectionComplex, tgt: &IntersectionComplex, j: usize, v: &SparseVec) -> Result<SparseVec> {
        match self {
            ChainMap::Identity => Ok(v.clone()),
            ChainMap::VertexMap(f) => {
                let mut out = Vec::new();
                for &(i, c) in v.entries() {
                    let s = &src.ambient().simplices(j)[i as usize];
                    let mut image: Vec<u32> = Vec::with_capacity(s.vertices().len());
                    for u in s.vertices() {
                        image.push(*f.get(u).ok_or(Error::NotAChainMap { degree: j })?);
                    }
                    let sign = sort_sign(&mut image);
                    if image.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let t = crate::complex::Simplex::from_sorted(&image);
                    let ti = tgt.ambient().index_of(&t).ok_or(Error::NotAChainMap { degree: j })?;
                    out.push((ti as u32, c * sign));
                }
                Ok(SparseVec::from_entries(out))
            }
        }
    }

    fn maps_into(
        &self,
        src: &IntersectionComplex,
        tgt: &IntersectionComplex,
        j: usize,
        from: &[SparseVec],
        into: &[SparseVec],
    ) -> Result<bool> {
        if from.is_empty() {
            return Ok(true);
        }
        let e = echelon_of(into);
        for v in from {
            if !e.contains(&self.apply(src, tgt, j, v)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Matrix of a map on homology: column `k` holds the coordinates of the
/// image of source class `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub matrix: RatMatrix,
}

/// The map `H_j(src) → H_j(tgt)` induced by `f`. Both homologies need
/// bases. Verifies `f(C) ⊆ C'` and `f(D) ⊆ D'` in the degrees involved.
pub fn induced_map(
    f: &ChainMap,
    src: (&IntersectionComplex, &HomologyResult),
    tgt: (&IntersectionComplex, &HomologyResult),
    j: usize,
) -> Result<InducedMap> {
    let (sc, sh) = src;
    let (tc, th) = tgt;
    for d in [j, j + 1] {
        if !f.maps_into(sc, tc, d, sc.chains(d), tc.chains(d))? {
            return Err(Error::NotAChainMap { degree: d });
        }
    }
    for d in j.saturating_sub(1)..=j {
        if !f.maps_into(sc, tc, d, sc.quotient(d), tc.quotient(d))? {
            return Err(Error::NotAChainMap { degree: d });
        }
    }
    let reps = sh.representatives(j);
    let mut matrix = RatMatrix::zeros(th.betti(j), reps.len());
    for (k, z) in reps.iter().enumerate() {
        let image = f.apply(sc, tc, j, z)?;
        let coords = th.class_of(j, &image).ok_or(Error::NotAChainMap { degree: j })?;
        for (i, x) in coords.into_iter().enumerate() {
            matrix.set(i, k, x);
        }
    }
    Ok(InducedMap { degree: j, matrix })
}

/// `0 → (D₂, D₁) → (C, D₁) → (C, D₂) → 0` for subcomplexes `D₁ ⊆ D₂ ⊆ C`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub first: IntersectionComplex,
    pub middle: IntersectionComplex,
    pub last: IntersectionComplex,
}

impl ShortExactSequence {
    /// From the middle complex `(C, D₁)` and generators of `D₂` beyond `D₁`.
    pub fn nested(middle: &IntersectionComplex, larger: &[Vec<SparseVec>], last_variant: Variant) -> Self {
        ShortExactSequence {
            first: middle.subquotient(larger),
            middle: middle.clone(),
            last: middle.with_quotient(larger, last_variant),
        }
    }
}

/// One group of a long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub degree: usize,
    pub dim: usize,
}

/// Groups `H_n(A), H_n(B), H_n(C), H_{n-1}(A), …, H_0(C)` and the maps
/// between consecutive groups.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub nodes: Vec<Node>,
    /// `maps[i]` goes from `nodes[i]` to `nodes[i + 1]`.
    pub maps: Vec<RatMatrix>,
}

/// Derives the long exact sequence, with connecting maps from the snake
/// construction: a cycle `z` of `C / D₂` has `∂z ∈ D₂`, which is a cycle of
/// `D₂ / D₁`.
pub fn long_exact_sequence(ses: &ShortExactSequence, labels: [&str; 3]) -> Result<LongExactSequence> {
    let terms = [&ses.first, &ses.middle, &ses.last];
    let hs: Vec<HomologyResult> = terms.par_iter().map(|c| homology(c)).collect();
    let n = ses.middle.len();
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for j in (0..n).rev() {
        for (t, label) in labels.iter().enumerate() {
            nodes.push(Node { label: format!("{label}_{j}"), degree: j, dim: hs[t].betti(j) });
        }
        maps.push(induced_map(&ChainMap::Identity, (terms[0], &hs[0]), (terms[1], &hs[1]), j)?.matrix);
        maps.push(induced_map(&ChainMap::Identity, (terms[1], &hs[1]), (terms[2], &hs[2]), j)?.matrix);
        if j > 0 {
            maps.push(connecting_map(ses, &hs[2], &hs[0], j)?);
        }
    }
    Ok(LongExactSequence { nodes, maps })
}

/// `δ: H_j(C / D₂) → H_{j-1}(D₂ / D₁)`.
pub fn connecting_map(ses: &ShortExactSequence, last: &HomologyResult, first: &HomologyResult, j: usize) -> Result<RatMatrix> {
    let reps = last.representatives(j);
    let mut m = RatMatrix::zeros(first.betti(j - 1), reps.len());
    for (k, z) in reps.iter().enumerate() {
        let w = ses.last.boundary(j, z);
        let coords = first.class_of(j - 1, &w).ok_or(Error::NotAChainMap { degree: j - 1 })?;
        for (i, x) in coords.into_iter().enumerate() {
            m.set(i, k, x);
        }
    }
    Ok(m)
}

/// Exactness verdict at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeVerdict {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeVerdict>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn first_failure(&self) -> Option<&NodeVerdict> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.nodes {
            write!(f, "{:<12} dim {:>2}  in {:>2}  out {:>2}  {}", n.label, n.dim, n.rank_in, n.rank_out, if n.exact { "exact" } else { "NOT EXACT" })?;
            if let Some(w) = &n.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Checks `im(incoming) = ker(outgoing)` at every node, with zero maps
/// before the first and after the last node.
pub fn check_exactness(les: &LongExactSequence) -> ExactnessReport {
    let n = les.nodes.len();
    let mut out = Vec::with_capacity(n);
    for (i, node) in les.nodes.iter().enumerate() {
        let f = if i == 0 { RatMatrix::zeros(node.dim, 0) } else { les.maps[i - 1].clone() };
        let g = if i + 1 == n { RatMatrix::zeros(0, node.dim) } else { les.maps[i].clone() };
        let (rf, rg) = (f.rank(), g.rank());
        let gf = g.mul(&f);
        let mut witness = None;
        if !gf.is_zero() {
            let col = (0..gf.cols()).find(|&c| gf.column(c).iter().any(|x| !x.is_zero())).unwrap();
            witness = Some(format!(
                "class {} of the previous group maps to a nonzero class {}",
                col,
                format_vector(&gf.column(col))
            ));
        } else if rf + rg != node.dim {
            let missing = g.nullspace().into_iter().find(|v| !f.column_space_contains(v));
            witness = Some(match missing {
                Some(v) => format!("class {} is in the kernel but not the image", format_vector(&v)),
                None => format!("ranks {rf} + {rg} != {}", node.dim),
            });
        }
        out.push(NodeVerdict {
            label: node.label.clone(),
            dim: node.dim,
            rank_in: rf,
            rank_out: rg,
            exact: witness.is_none(),
            witness,
        });
    }
    ExactnessReport { nodes: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{build_boundary_pair, build_intersection_complex, BuildOptions};
    use crate::complex::SimplicialComplex;
    use crate::perversity::Perversity;
    use crate::stratified::StratifiedSpace;

    fn circle() -> StratifiedSpace {
        let k = SimplicialComplex::from_maximal([[0u32, 1], [1, 2], [0, 2]]).unwrap();
        StratifiedSpace::trivial("circle", k)
    }

    fn disk() -> StratifiedSpace {
        let k = SimplicialComplex::from_maximal([[0u32, 1, 3], [1, 2, 3], [0, 2, 3]]).unwrap();
        let x = StratifiedSpace::attach_filtration("disk", k, [(0, 1), (1, 1), (2, 1), (3, 2)]).unwrap();
        x.declare_boundary([0, 1, 2]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = build_intersection_complex(&circle(), &Perversity::vacuous(1), BuildOptions::no_subdivision()).unwrap();
        assert_eq!(betti_numbers(&c).betti, vec![1, 1]);
        let h = homology(&c);
        assert_eq!(h.betti, vec![1, 1]);
        let cycle = homology_basis(&c, 1);
        assert_eq!(cycle.len(), 1);
        assert_eq!(cycle[0].len(), 3);
        assert!(cycle[0].boundary().is_zero());
    }

    #[test]
    fn disk_pair_sequence_is_exact() {
        let (abs, rel) = build_boundary_pair(&disk(), &Perversity::zero(2), BuildOptions::subdivide(1)).unwrap();
        assert_eq!(betti_numbers(&abs).betti, vec![1, 0, 0]);
        assert_eq!(betti_numbers(&rel).betti, vec![0, 0, 1]);
        let larger: Vec<Vec<SparseVec>> = (0..rel.len()).map(|j| rel.quotient(j).to_vec()).collect();
        let ses = ShortExactSequence::nested(&abs, &larger, Variant::RelativeBoundary);
        let les = long_exact_sequence(&ses, ["A", "X", "X/A"]).unwrap();
        let report = check_exactness(&les);
        assert!(report.passed(), "{report}");

        let mut broken = les.clone();
        let idx = broken.maps.iter().position(|m| !m.is_zero()).unwrap();
        broken.maps[idx] = RatMatrix::zeros(broken.maps[idx].rows(), broken.maps[idx].cols());
        let report = check_exactness(&broken);
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn identity_induces_identity() {
        let c = build_intersection_complex(&circle(), &Perversity::vacuous(1), BuildOptions::no_subdivision()).unwrap();
        let h = homology(&c);
        for j in 0..2 {
            let m = induced_map(&ChainMap::Identity, (&c, &h), (&c, &h), j).unwrap();
            assert_eq!(m.matrix, RatMatrix::identity(1));
        }
    }
}
