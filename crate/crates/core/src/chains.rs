//! Allowable simplices and intersection chain complexes.
//!
//! Every complex is stored as a pair `(C, D)` of subspaces of the simplicial
//! chains of one ambient complex, with `D ⊆ C` and both closed under the
//! boundary. Its homology is the homology of `C / D`. Absolute complexes have
//! `D = 0`; the relative, Borel-Moore and open-set variants differ only in
//! `D`. Since all variants built on one subdivided space share coordinates,
//! inclusions and projections between them act as the identity.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{Chain, Rational, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec, TrackedEchelon};
use crate::perversity::Perversity;
use crate::stratified::{SpacePair, StratifiedSpace, VertexSet};

/// How many barycentric subdivisions to apply before building chains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// `None` picks the default: two subdivisions, or one for spaces of
    /// dimension 4 and up.
    pub subdivisions: Option<usize>,
}

impl BuildOptions {
    pub fn subdivide(times: usize) -> Self {
        BuildOptions { subdivisions: Some(times) }
    }

    pub fn no_subdivision() -> Self {
        Self::subdivide(0)
    }

    pub fn count_for(&self, l: usize) -> usize {
        self.subdivisions.unwrap_or(if l >= 4 { 1 } else { 2 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Absolute,
    RelativeBoundary,
    BorelMoore,
    RelativeOpen,
    RelativeBorelMoore,
    /// A subquotient `(D₂, D₁)` appearing as the first term of a short exact
    /// sequence.
    Subquotient,
}

/// Perversity used for chains of `∂X` in the relative Borel-Moore complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryMode {
    /// The boundary perversity `p̌`.
    #[default]
    CheckPDown,
    /// `p` itself, truncated to the dimension of `∂X`.
    CheckP,
}

/// Allowability data for one space and perversity.
struct Allow {
    l: usize,
    p: Vec<i32>,
    pb: Option<Vec<i32>>,
    depth: HashMap<u32, usize>,
    boundary: VertexSet,
}

impl Allow {
    fn new(x: &StratifiedSpace, p: &Perversity) -> Self {
        let pb = x.has_boundary().then(|| p.boundary_or_vacuous().values().to_vec());
        Allow {
            l: x.dim(),
            p: p.values().to_vec(),
            pb,
            depth: x.depths().iter().map(|(&v, &d)| (v, d)).collect(),
            boundary: x.boundary_vertices().clone(),
        }
    }

    fn allowable(&self, s: &Simplex, i: usize) -> bool {
        let i = i as i64;
        let l = self.l;
        let in_boundary = self.pb.is_some() && s.vertices().iter().all(|v| self.boundary.contains(v));
        if !in_boundary {
            for k in 2..=l {
                let c = s.vertices().iter().filter(|v| self.depth[v] + k <= l).count() as i64;
                if c > 0 && c - 1 > i - k as i64 + self.p[k - 2] as i64 {
                    return false;
                }
            }
        }
        if let Some(pb) = &self.pb {
            for m in 2..l {
                let c = s
                    .vertices()
                    .iter()
                    .filter(|v| self.boundary.contains(v) && self.depth[v] + 1 + m <= l)
                    .count() as i64;
                if c > 0 && c - 1 > i - m as i64 + pb[m - 2] as i64 {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether the closed simplex `σ` is `(i, p)`-allowable in `X`. With a
/// nonempty boundary, `σ ⊄ ∂X` is tested against `p` and `σ ∩ ∂X` against
/// the boundary perversity.
pub fn simplex_allowable(s: &Simplex, i: usize, p: &Perversity, x: &StratifiedSpace) -> bool {
    Allow::new(x, p).allowable(s, i)
}

/// `∂v` for `v` a `j`-chain of `k` in simplex-index coordinates.
pub(crate) fn boundary_vec(k: &SimplicialComplex, j: usize, v: &SparseVec) -> SparseVec {
    if j == 0 {
        return SparseVec::new();
    }
    let simplices = k.simplices(j);
    let mut out = Vec::with_capacity(v.len() * (j + 1));
    for &(i, c) in v.entries() {
        for (f, sign) in simplices[i as usize].facets() {
            let fi = k.index_of(&f).expect("complex is face closed");
            out.push((fi as u32, c * sign));
        }
    }
    SparseVec::from_entries(out)
}

/// `I^pC_•` of the subcomplex `sub` of `ambient`, with allowability from
/// `allow`, as vectors in the ambient simplex coordinates.
fn ip_chains(
    sub: &SimplicialComplex,
    allow: &Allow,
    ambient: &SimplicialComplex,
    top: usize,
) -> Vec<Vec<SparseVec>> {
    let flags: Vec<Vec<bool>> = (0..=top)
        .into_par_iter()
        .map(|j| sub.simplices(j).iter().map(|s| allow.allowable(s, j)).collect())
        .collect();
    (0..=top)
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            let mut kernel = TrackedEchelon::new();
            let mut bad: Vec<u32> = Vec::new();
            for (si, s) in sub.simplices(j).iter().enumerate() {
                if !flags[j][si] {
                    continue;
                }
                let amb = ambient.index_of(s).expect("subcomplex of ambient") as u32;
                if j == 0 {
                    out.push(SparseVec::unit(amb));
                    continue;
                }
                let proj: Vec<(u32, i128)> = s
                    .facets()
                    .filter_map(|(f, sign)| {
                        let fi = sub.index_of(&f).expect("face closed");
                        (!flags[j - 1][fi]).then_some((fi as u32, sign))
                    })
                    .collect();
                if proj.is_empty() {
                    out.push(SparseVec::unit(amb));
                    continue;
                }
                let local = bad.len() as u32;
                bad.push(amb);
                if let Some(rel) = kernel.insert(SparseVec::from_entries(proj), SparseVec::unit(local)) {
                    let mut xi = rel.map_indices(|k| Some((bad[k as usize], 1)));
                    let g = xi.content();
                    if g > 1 {
                        xi = SparseVec::from_entries(xi.entries().iter().map(|&(i, c)| (i, c / g)).collect());
                    }
                    out.push(xi);
                }
            }
            out
        })
        .collect()
}

/// Keeps a maximal independent subfamily, in order.
fn independent(vecs: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    vecs.into_iter().filter(|v| e.insert(v.clone())).collect()
}

pub(crate) fn sum_spans(a: &[Vec<SparseVec>], b: &[Vec<SparseVec>]) -> Vec<Vec<SparseVec>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|j| {
            let mut all: Vec<SparseVec> = a.get(j).cloned().unwrap_or_default();
            all.extend(b.get(j).cloned().unwrap_or_default());
            independent(all)
        })
        .collect()
}

/// A chain complex `C / D` in the simplicial chains of a subdivided space.
#[derive(Clone, Debug)]
pub struct IntersectionComplex {
    variant: Variant,
    perversity: Perversity,
    name: String,
    space: Arc<StratifiedSpace>,
    chains: Vec<Vec<SparseVec>>,
    quotient: Vec<Vec<SparseVec>>,
}

impl IntersectionComplex {
    pub(crate) fn new(
        variant: Variant,
        perversity: Perversity,
        space: Arc<StratifiedSpace>,
        chains: Vec<Vec<SparseVec>>,
        quotient: Vec<Vec<SparseVec>>,
    ) -> Self {
        let top = chains.len();
        let mut quotient = quotient;
        quotient.resize_with(top, Vec::new);
        IntersectionComplex { variant, perversity, name: space.name().to_string(), space, chains, quotient }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn perversity(&self) -> &Perversity {
        &self.perversity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The subdivided space whose simplices index the chain coordinates.
    pub fn space(&self) -> &StratifiedSpace {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<StratifiedSpace> {
        self.space.clone()
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        self.space.complex()
    }

    /// Number of degrees, `top + 1`.
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.iter().all(Vec::is_empty)
    }

    /// Basis of `C_j`.
    pub fn chains(&self, j: usize) -> &[SparseVec] {
        self.chains.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Basis of `D_j`.
    pub fn quotient(&self, j: usize) -> &[SparseVec] {
        self.quotient.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `dim C_j − dim D_j`.
    pub fn rank(&self, j: usize) -> usize {
        self.chains(j).len() - self.quotient(j).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.len()).map(|j| if j % 2 == 0 { 1 } else { -1 } * self.rank(j) as i64).sum()
    }

    pub fn boundary(&self, j: usize, v: &SparseVec) -> SparseVec {
        boundary_vec(self.ambient(), j, v)
    }

    pub fn to_chain(&self, j: usize, v: &SparseVec) -> Chain {
        let simplices = self.ambient().simplices(j);
        Chain::from_terms(
            j,
            v.entries().iter().map(|&(i, c)| (simplices[i as usize].clone(), Rational::from_integer(c))),
        )
    }

    pub fn from_chain(&self, c: &Chain) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (s, q) in c.terms() {
            let i = self.ambient().index_of(s).ok_or_else(|| Error::SimplexNotFound(s.clone()))?;
            if !q.is_integer() {
                return Err(Error::InvalidInput("chain with non-integral coefficient".into()));
            }
            out.push((i as u32, *q.numer()));
        }
        Ok(SparseVec::from_entries(out))
    }

    /// Basis chains of `C_j`.
    pub fn basis(&self, j: usize) -> Vec<Chain> {
        self.chains(j).iter().map(|v| self.to_chain(j, v)).collect()
    }

    /// `∂∂ = 0` on every basis chain and `∂D ⊆ D`, `∂C ⊆ C`.
    pub fn verify(&self) -> bool {
        (1..self.len()).all(|j| {
            let below: Echelon = {
                let mut e = Echelon::new();
                for v in self.chains(j - 1) {
                    e.insert(v.clone());
                }
                e
            };
            let dbelow: Echelon = {
                let mut e = Echelon::new();
                for v in self.quotient(j - 1) {
                    e.insert(v.clone());
                }
                e
            };
            self.chains(j).iter().all(|v| {
                let b = self.boundary(j, v);
                below.contains(&b) && self.boundary(j - 1, &b).is_zero()
            }) && self.quotient(j).iter().all(|v| dbelow.contains(&self.boundary(j, v)))
        })
    }

    /// `(C, D + extra)`.
    pub fn with_quotient(&self, extra: &[Vec<SparseVec>], variant: Variant) -> IntersectionComplex {
        let mut out = self.clone();
        out.quotient = sum_spans(&self.quotient, extra);
        out.quotient.resize_with(self.len(), Vec::new);
        out.variant = variant;
        out
    }

    /// `(D₂, D)` where `D₂ = D + larger` is the quotient of a coarser complex.
    pub fn subquotient(&self, larger: &[Vec<SparseVec>]) -> IntersectionComplex {
        let mut chains = sum_spans(&self.quotient, larger);
        chains.resize_with(self.len(), Vec::new);
        IntersectionComplex {
            variant: Variant::Subquotient,
            perversity: self.perversity.clone(),
            name: self.name.clone(),
            space: self.space.clone(),
            chains,
            quotient: self.quotient.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// A stratified space after subdivision, with vertex sets carried along.
/// Chain spaces of subcomplexes built from one `Subdivision` share
/// coordinates.
#[derive(Clone, Debug)]
pub struct Subdivision {
    space: Arc<StratifiedSpace>,
    marked: Vec<VertexSet>,
}

impl Subdivision {
    pub fn new(x: &StratifiedSpace, marked: Vec<VertexSet>, opts: BuildOptions) -> Result<Self> {
        x.require_filtration()?;
        let mut marked = marked;
        let space = x.subdivide_times(opts.count_for(x.dim()), &mut marked);
        Ok(Subdivision { space: Arc::new(space), marked })
    }

    pub fn space(&self) -> &StratifiedSpace {
        &self.space
    }

    pub fn marked(&self, i: usize) -> &VertexSet {
        &self.marked[i]
    }

    fn top(&self) -> usize {
        self.space.dim()
    }

    /// `I^pC_•(X)`.
    pub fn chains(&self, p: &Perversity) -> Vec<Vec<SparseVec>> {
        let allow = Allow::new(&self.space, p);
        ip_chains(self.space.complex(), &allow, self.space.complex(), self.top())
    }

    /// `I^pC_•(X) ∩ C_•(N)` for `N` the full subcomplex on marked set `i`.
    pub fn chains_in(&self, i: usize, p: &Perversity) -> Vec<Vec<SparseVec>> {
        self.chains_on(&self.marked[i], p)
    }

    /// `I^pC_•(X) ∩ C_•(N)` for `N` the full subcomplex on `set`.
    pub fn chains_on(&self, set: &VertexSet, p: &Perversity) -> Vec<Vec<SparseVec>> {
        let sub = self.space.complex().full_subcomplex(|v| set.contains(&v));
        let allow = Allow::new(&self.space, p);
        ip_chains(&sub, &allow, self.space.complex(), self.top())
    }

    /// `I^{p̌}C_•(∂X)`, optionally intersected with marked set `i`.
    pub fn boundary_chains(&self, pb: &Perversity, within: Option<usize>) -> Result<Vec<Vec<SparseVec>>> {
        let b = self.space.boundary_space()?;
        let allow = Allow::new(&b, pb);
        let sub = match within {
            None => b.complex().clone(),
            Some(i) => {
                let set = &self.marked[i];
                b.complex().full_subcomplex(|v| set.contains(&v))
            }
        };
        Ok(ip_chains(&sub, &allow, self.space.complex(), self.top()))
    }

    pub fn complex(&self, variant: Variant, p: &Perversity, chains: Vec<Vec<SparseVec>>, quotient: Vec<Vec<SparseVec>>) -> IntersectionComplex {
        IntersectionComplex::new(variant, p.clone(), self.space.clone(), chains, quotient)
    }
}

fn check_ambient(x: &StratifiedSpace, p: &Perversity) -> Result<()> {
    if p.ambient_dim() != x.dim() {
        return Err(Error::LengthMismatch { expected: x.dim(), got: p.ambient_dim() });
    }
    Ok(())
}

/// Verifies `D_j ⊆ C_j` in every degree.
fn verify_inclusion(chains: &[Vec<SparseVec>], sub: &[Vec<SparseVec>]) -> Result<()> {
    for (j, (c, d)) in chains.iter().zip(sub).enumerate() {
        let mut e = Echelon::new();
        for v in c {
            e.insert(v.clone());
        }
        if d.iter().any(|v| !e.contains(v)) {
            return Err(Error::InclusionViolated { degree: j });
        }
    }
    Ok(())
}

/// `I^pC_•(X)`.
pub fn build_intersection_complex(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<IntersectionComplex> {
    check_ambient(x, p)?;
    let sd = Subdivision::new(x, Vec::new(), opts)?;
    let c = sd.chains(p);
    Ok(sd.complex(Variant::Absolute, p, c, Vec::new()))
}

/// Absolute and relative complexes on one subdivision:
/// `(I^pC(X), I^pC(X)/I^{p̌}C(∂X))`. The inclusion of the boundary chains is
/// verified before quotienting.
pub fn build_boundary_pair(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<(IntersectionComplex, IntersectionComplex)> {
    check_ambient(x, p)?;
    if !x.has_boundary() {
        return Err(Error::NoBoundary);
    }
    let sd = Subdivision::new(x, Vec::new(), opts)?;
    let c = sd.chains(p);
    let d = sd.boundary_chains(&p.boundary_or_vacuous(), None)?;
    verify_inclusion(&c, &d)?;
    let abs = sd.complex(Variant::Absolute, p, c, Vec::new());
    let rel = abs.with_quotient(&d, Variant::RelativeBoundary);
    Ok((abs, rel))
}

/// `I^pC_•(X) / I^{p̌}C_•(∂X)`.
pub fn build_relative_complex(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<IntersectionComplex> {
    build_boundary_pair(x, p, opts).map(|(_, rel)| rel)
}

/// Borel-Moore intersection chains of `|K| \ |L|`, modelled as
/// `I^pC(K̂) / I^pC(K̂) ∩ C(cone L)` with `K̂ = K ∪ cone(L)`.
pub fn build_bm_complex(pair: &SpacePair, p: &Perversity, opts: BuildOptions) -> Result<IntersectionComplex> {
    check_ambient(pair.space(), p)?;
    if pair.is_compact() {
        return build_intersection_complex(pair.space(), p, opts).map(|mut c| {
            c.variant = Variant::BorelMoore;
            c
        });
    }
    let (sd, c, n) = bm_parts(pair, p, opts)?;
    Ok(sd.complex(Variant::BorelMoore, p, c, n))
}

type BmParts = (Subdivision, Vec<Vec<SparseVec>>, Vec<Vec<SparseVec>>);

fn bm_parts(pair: &SpacePair, p: &Perversity, opts: BuildOptions) -> Result<BmParts> {
    let (hat, cone, _) = pair.compactify();
    let sd = Subdivision::new(&hat, vec![cone], opts)
        .map_err(|e| Error::PairInvalid(format!("compactification: {e}")))?;
    let c = sd.chains(p);
    let n = sd.chains_in(0, p);
    Ok((sd, c, n))
}

/// Ordinary intersection chains of `|K| \ |L|`, on the full subcomplex of
/// the subdivision spanned by the vertices outside `L`.
pub fn build_open_complex(pair: &SpacePair, p: &Perversity, opts: BuildOptions) -> Result<IntersectionComplex> {
    if pair.is_compact() {
        return build_intersection_complex(pair.space(), p, opts);
    }
    check_ambient(pair.space(), p)?;
    let sd = Subdivision::new(pair.space(), vec![pair.removed().clone()], opts)?;
    let keep: VertexSet = sd.space().complex().vertices().filter(|v| !sd.marked(0).contains(v)).collect();
    let c = sd.chains_on(&keep, p);
    Ok(sd.complex(Variant::Absolute, p, c, Vec::new()))
}

/// `I^pC^{BM}(X) / I^{p̌}C^{BM}(∂X)`.
pub fn build_relative_bm_complex(pair: &SpacePair, p: &Perversity, mode: BoundaryMode, opts: BuildOptions) -> Result<IntersectionComplex> {
    check_ambient(pair.space(), p)?;
    if !pair.space().has_boundary() {
        return Err(Error::NoBoundary);
    }
    let pb = match mode {
        BoundaryMode::CheckPDown => p.boundary_or_vacuous(),
        BoundaryMode::CheckP => p.truncate(p.ambient_dim() - 1)?,
    };
    let (sd, c, n) = if pair.is_compact() {
        let sd = Subdivision::new(pair.space(), Vec::new(), opts)?;
        let c = sd.chains(p);
        (sd, c, Vec::new())
    } else {
        bm_parts(pair, p, opts)?
    };
    let d = sd.boundary_chains(&pb, None)?;
    verify_inclusion(&c, &d)?;
    Ok(sd.complex(Variant::RelativeBorelMoore, p, c, sum_spans(&n, &d)))
}

/// `I^pC(X) / I^pC(W)` for `W` the open set carried by the full subcomplex on
/// `w`, optionally also dividing by `I^{p̌}C(∂X)`.
pub fn build_relative_open_complex(
    x: &StratifiedSpace,
    w: &VertexSet,
    p: &Perversity,
    include_boundary: bool,
    opts: BuildOptions,
) -> Result<IntersectionComplex> {
    check_ambient(x, p)?;
    if let Some(v) = w.iter().find(|&&v| !x.complex().has_vertex(v)) {
        return Err(Error::CarrierNotSubcomplex(format!("vertex {v} is not in {}", x.name())));
    }
    let sd = Subdivision::new(x, vec![w.clone()], opts)?;
    let c = sd.chains(p);
    let mut d = sd.chains_in(0, p);
    if include_boundary {
        let b = sd.boundary_chains(&p.boundary_or_vacuous(), None)?;
        verify_inclusion(&c, &b)?;
        d = sum_spans(&d, &b);
    }
    Ok(sd.complex(Variant::RelativeOpen, p, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_space() -> StratifiedSpace {
        let k = SimplicialComplex::from_maximal([[0u32, 1], [1, 2]]).unwrap();
        StratifiedSpace::trivial("path", k)
    }

    #[test]
    fn boundary_of_edge() {
        let k = SimplicialComplex::from_maximal([[0u32, 1]]).unwrap();
        let b = boundary_vec(&k, 1, &SparseVec::unit(0));
        assert_eq!(b.entries(), &[(0, -1), (1, 1)]);
    }

    #[test]
    fn trivial_stratification_allows_everything() {
        let x = path_space();
        let c = build_intersection_complex(&x, &Perversity::vacuous(1), BuildOptions::no_subdivision()).unwrap();
        assert_eq!(c.chains(0).len(), 3);
        assert_eq!(c.chains(1).len(), 2);
        assert!(c.verify());
    }

    #[test]
    fn cone_point_edges_not_allowable() {
        // cone on three points: apex 0 at depth 0 in a 2-dimensional space
        let k = SimplicialComplex::from_maximal([[0u32, 1, 2], [0, 2, 3], [0, 3, 1]]).unwrap();
        let x = StratifiedSpace::attach_filtration("disk", k, [(0, 0), (1, 2), (2, 2), (3, 2)]).unwrap();
        let p = Perversity::zero(2);
        let e = Simplex::new(&[0, 1]).unwrap();
        assert!(!simplex_allowable(&e, 1, &p, &x));
        assert!(simplex_allowable(&Simplex::new(&[0, 1, 2]).unwrap(), 2, &p, &x));
        assert!(simplex_allowable(&Simplex::new(&[1, 2]).unwrap(), 1, &p, &x));
    }

    #[test]
    fn kernel_chains_have_allowable_boundary() {
        let k = SimplicialComplex::from_maximal([[0u32, 1, 2], [0, 2, 3], [0, 3, 1]]).unwrap();
        let x = StratifiedSpace::attach_filtration("disk", k, [(0, 0), (1, 2), (2, 2), (3, 2)]).unwrap();
        let c = build_intersection_complex(&x, &Perversity::zero(2), BuildOptions::no_subdivision()).unwrap();
        // the only 2-chain avoiding the apex edges is the sum of the triangles
        assert_eq!(c.chains(2).len(), 1);
        assert_eq!(c.chains(2)[0].len(), 3);
        assert!(c.verify());
    }
}
