//! Filtered simplicial complexes, pseudomanifold and ∂-pseudomanifold
//! validation, and stratified subdivision.
//!
//! A filtration is stored as a depth per vertex: `X_i` is the full
//! subcomplex on the vertices of depth `≤ i`. The boundary is the full
//! subcomplex on a declared vertex set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

pub type VertexSet = BTreeSet<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedSpace {
    name: String,
    complex: SimplicialComplex,
    dim: usize,
    depth: BTreeMap<u32, usize>,
    boundary: VertexSet,
}

/// One named condition of a validation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationItem {
    pub condition: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub items: Vec<ValidationItem>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    fn push(&mut self, condition: &'static str, witness: Option<String>) {
        self.items.push(ValidationItem { condition, passed: witness.is_none(), witness });
    }

    pub fn first_failure(&self) -> Option<&ValidationItem> {
        self.items.iter().find(|i| !i.passed)
    }

    /// Verdict pattern, used to compare validation results across subdivisions.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        self.items.iter().map(|i| (i.condition, i.passed)).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let mark = if item.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", item.condition)?;
            if let Some(w) = &item.witness {
                write!(f, " (witness: {w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn first_witness<'a>(mut it: impl Iterator<Item = &'a Simplex>) -> Option<String> {
    it.next().map(|s| s.to_string())
}

impl StratifiedSpace {
    /// Attaches vertex depths to a complex of dimension `l`. The boundary is
    /// empty; use [`StratifiedSpace::declare_boundary`] to add one.
    pub fn attach_filtration(
        name: impl Into<String>,
        complex: SimplicialComplex,
        depth: impl IntoIterator<Item = (u32, i64)>,
    ) -> Result<Self> {
        let l = complex.dim().unwrap_or(0);
        let given: BTreeMap<u32, i64> = depth.into_iter().collect();
        let mut out = BTreeMap::new();
        for v in complex.vertices() {
            let d = *given.get(&v).ok_or(Error::MissingDepth(v))?;
            if d < 0 || d as usize > l {
                return Err(Error::DepthOutOfRange { vertex: v, depth: d, dim: l });
            }
            out.insert(v, d as usize);
        }
        Ok(StratifiedSpace {
            name: name.into(),
            complex,
            dim: l,
            depth: out,
            boundary: VertexSet::new(),
        })
    }

    /// All vertices at depth `l`.
    pub fn trivial(name: impl Into<String>, complex: SimplicialComplex) -> Self {
        let l = complex.dim().unwrap_or(0);
        let depth: Vec<(u32, i64)> = complex.vertices().map(|v| (v, l as i64)).collect();
        Self::attach_filtration(name, complex, depth).expect("depth l is always in range")
    }

    pub(crate) fn from_parts(
        name: String,
        complex: SimplicialComplex,
        dim: usize,
        depth: BTreeMap<u32, usize>,
        boundary: VertexSet,
    ) -> Self {
        StratifiedSpace { name, complex, dim, depth, boundary }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Ambient dimension `l`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self, v: u32) -> usize {
        self.depth[&v]
    }

    pub fn depths(&self) -> &BTreeMap<u32, usize> {
        &self.depth
    }

    pub fn boundary_vertices(&self) -> &VertexSet {
        &self.boundary
    }

    pub fn has_boundary(&self) -> bool {
        !self.boundary.is_empty()
    }

    pub fn in_boundary(&self, s: &Simplex) -> bool {
        !self.boundary.is_empty() && s.vertices().iter().all(|v| self.boundary.contains(v))
    }

    /// `X_i` as a subcomplex.
    pub fn skeleton(&self, i: usize) -> SimplicialComplex {
        self.complex.full_subcomplex(|v| self.depth[&v] <= i)
    }

    /// `∂X` as an `(l−1)`-dimensional stratified space with the induced
    /// filtration `X'_j = X_j ∩ ∂X`.
    pub fn boundary_space(&self) -> Result<StratifiedSpace> {
        if self.boundary.is_empty() {
            return Err(Error::NoBoundary);
        }
        let complex = self.complex.full_subcomplex(|v| self.boundary.contains(&v));
        let depth = self.boundary.iter().map(|&v| (v, self.depth[&v])).collect();
        Ok(StratifiedSpace {
            name: format!("∂{}", self.name),
            complex,
            dim: self.dim - 1,
            depth,
            boundary: VertexSet::new(),
        })
    }

    /// Structural filtration checks required before building chain
    /// complexes: `dim X_i ≤ i` and boundary vertices not at depth `l`.
    pub fn check_filtration(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let mut witness = None;
        for s in self.complex.all_simplices() {
            let max_depth = s.vertices().iter().map(|v| self.depth[v]).max().unwrap();
            if s.dim() > max_depth {
                witness = Some(format!("{s} lies in X_{max_depth}"));
                break;
            }
        }
        r.push("dim X_i <= i", witness);
        let w = self
            .boundary
            .iter()
            .find(|v| self.depth[v] >= self.dim && self.dim > 0)
            .map(|v| format!("boundary vertex {v} at depth {}", self.dim));
        r.push("boundary is a union of singular strata closures", w);
        r
    }

    pub(crate) fn require_filtration(&self) -> Result<()> {
        let r = self.check_filtration();
        match r.first_failure() {
            None => Ok(()),
            Some(item) => Err(Error::ValidationRequired(format!(
                "{}: {} ({})",
                self.name,
                item.condition,
                item.witness.clone().unwrap_or_default()
            ))),
        }
    }

    /// Combinatorial pseudomanifold conditions: every simplex lies in an
    /// `l`-simplex, every `(l−1)`-simplex has two `l`-cofaces, and
    /// `X_{l−1} = X_{l−2}`.
    pub fn validate_pseudomanifold(&self) -> ValidationReport {
        let mut r = self.check_filtration();
        let l = self.dim;
        let k = &self.complex;
        let impure = k.maximal_simplices().into_iter().find(|s| s.dim() != l);
        r.push("pure (X_reg dense)", impure.map(|s| s.to_string()));
        if l >= 1 {
            let counts = k.coface_counts(l - 1);
            let bad = k.simplices(l - 1).iter().zip(&counts).find(|(_, &c)| c != 2);
            r.push(
                "codimension-one simplices have two cofaces",
                bad.map(|(s, c)| format!("{s} has {c}")),
            );
        }
        if l >= 1 {
            let w = self.depth.iter().find(|(_, &d)| d == l - 1).map(|(v, _)| format!("vertex {v}"));
            r.push("X_{l-1} = X_{l-2}", w);
        }
        r
    }

    /// Validates against the ∂-pseudomanifold conditions, or the
    /// pseudomanifold conditions when the boundary is empty.
    pub fn validate(&self) -> ValidationReport {
        if self.boundary.is_empty() {
            return self.validate_pseudomanifold();
        }
        self.boundary_report()
    }

    fn boundary_report(&self) -> ValidationReport {
        let l = self.dim;
        let k = &self.complex;
        let mut r = self.check_filtration();
        let impure = k.maximal_simplices().into_iter().find(|s| s.dim() != l);
        r.push("pure (X_reg dense)", impure.map(|s| s.to_string()));
        let counts = k.coface_counts(l - 1);
        let mut one = None;
        let mut two = None;
        for (s, &c) in k.simplices(l - 1).iter().zip(&counts) {
            let inside = self.in_boundary(s);
            if inside && c != 1 && one.is_none() {
                one = Some(format!("{s} has {c}"));
            }
            if !inside && c != 2 && two.is_none() {
                two = Some(format!("{s} has {c}"));
            }
        }
        r.push("boundary (l-1)-simplices have one coface", one);
        r.push("interior (l-1)-simplices have two cofaces", two);
        let w = self
            .depth
            .iter()
            .find(|(v, &d)| d == l - 1 && !self.boundary.contains(v))
            .map(|(v, _)| format!("interior vertex {v}"));
        r.push("X_{l-1} \\ ∂X = X_{l-2} \\ ∂X", w);
        match self.boundary_space() {
            Ok(b) => {
                let bl = b.dim;
                let mut bad = None;
                if bl >= 1 {
                    let bc = b.complex.coface_counts(bl - 1);
                    bad = first_witness(
                        b.complex.simplices(bl - 1).iter().zip(&bc).filter(|(_, &c)| c != 2).map(|(s, _)| s),
                    );
                }
                r.push("non-∂-regular locus has dim < l-2", bad);
                let sub = b.validate_pseudomanifold();
                let w = sub.first_failure().map(|i| {
                    format!("{}{}", i.condition, i.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default())
                });
                r.push("∂X is a stratified pseudomanifold", w);
            }
            Err(e) => r.push("∂X is a stratified pseudomanifold", Some(e.to_string())),
        }
        r
    }

    /// Declares the full subcomplex on `vertices` to be `∂X` and validates it.
    pub fn declare_boundary(&self, vertices: impl IntoIterator<Item = u32>) -> Result<StratifiedSpace> {
        let set: VertexSet = vertices.into_iter().collect();
        let l = self.dim;
        for &v in &set {
            if !self.complex.has_vertex(v) {
                return Err(Error::VertexNotFound(v));
            }
        }
        if l == 0 {
            return Err(Error::BoundaryNotFull { expected: 0, reason: "a point has no boundary".into() });
        }
        let sub = self.complex.full_subcomplex(|v| set.contains(&v));
        if sub.dim() != Some(l - 1) {
            return Err(Error::BoundaryNotFull {
                expected: l - 1,
                reason: format!("spans dimension {:?}", sub.dim()),
            });
        }
        if let Some(s) = sub.maximal_simplices().into_iter().find(|s| s.dim() != l - 1) {
            return Err(Error::BoundaryNotFull { expected: l - 1, reason: format!("{s} is maximal") });
        }
        let counts = self.complex.coface_counts(l - 1);
        for (s, &c) in self.complex.simplices(l - 1).iter().zip(&counts) {
            let inside = s.vertices().iter().all(|v| set.contains(v));
            let expected = if inside { 1 } else { 2 };
            if c != expected {
                return Err(Error::CofaceCountViolation { simplex: s.clone(), expected, found: c });
            }
        }
        let out = StratifiedSpace { boundary: set, ..self.clone() };
        let report = out.boundary_report();
        if let Some(item) = report.first_failure() {
            return Err(Error::ValidationRequired(format!(
                "{}: {}",
                item.condition,
                item.witness.clone().unwrap_or_default()
            )));
        }
        Ok(out)
    }

    pub(crate) fn set_depth(&mut self, v: u32, d: usize) {
        self.depth.insert(v, d);
    }

    /// Barycentric subdivision. The barycenter of `σ` gets the maximal depth
    /// of the vertices of `σ`, and lies on the boundary iff `σ ⊆ ∂X`.
    pub fn subdivide(&self) -> Subdivided {
        let (complex, provenance) = self.complex.barycentric_subdivision();
        let mut depth = BTreeMap::new();
        let mut boundary = VertexSet::new();
        for (i, s) in provenance.iter().enumerate() {
            let d = s.vertices().iter().map(|v| self.depth[v]).max().unwrap();
            depth.insert(i as u32, d);
            if self.in_boundary(s) {
                boundary.insert(i as u32);
            }
        }
        Subdivided {
            space: StratifiedSpace { name: self.name.clone(), complex, dim: self.dim, depth, boundary },
            provenance,
        }
    }

    /// Iterated subdivision, carrying vertex sets through each step.
    pub fn subdivide_times(&self, times: usize, sets: &mut [VertexSet]) -> StratifiedSpace {
        let mut space = self.clone();
        for _ in 0..times {
            let sd = space.subdivide();
            for set in sets.iter_mut() {
                *set = sd.map_set(set);
            }
            space = sd.space;
        }
        space
    }
}

/// Result of a stratified barycentric subdivision.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub space: StratifiedSpace,
    /// `provenance[i]` is the simplex whose barycenter is vertex `i`.
    pub provenance: Vec<Simplex>,
}

impl Subdivided {
    /// The new vertex set whose full subcomplex subdivides the full
    /// subcomplex on `set`.
    pub fn map_set(&self, set: &VertexSet) -> VertexSet {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, s)| s.vertices().iter().all(|v| set.contains(v)))
            .map(|(i, _)| i as u32)
            .collect()
    }
}

/// A compact stratified space `K` and a closed full subcomplex `L`,
/// representing the locally closed space `|K| \ |L|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacePair {
    space: StratifiedSpace,
    removed: VertexSet,
}

impl SpacePair {
    pub fn new(space: StratifiedSpace, removed: impl IntoIterator<Item = u32>) -> Result<Self> {
        let removed: VertexSet = removed.into_iter().collect();
        for &v in &removed {
            if !space.complex.has_vertex(v) {
                return Err(Error::PairInvalid(format!("vertex {v} of L is not in K")));
            }
        }
        if !removed.is_empty() && removed.len() == space.complex.count(0) {
            return Err(Error::PairInvalid("L is all of K".into()));
        }
        Ok(SpacePair { space, removed })
    }

    /// The pair `(K, ∅)`.
    pub fn compact(space: StratifiedSpace) -> Self {
        SpacePair { space, removed: VertexSet::new() }
    }

    pub fn space(&self) -> &StratifiedSpace {
        &self.space
    }

    pub fn removed(&self) -> &VertexSet {
        &self.removed
    }

    pub fn is_compact(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn name(&self) -> &str {
        self.space.name()
    }

    /// `K ∪ cone(L)` with a new apex at depth 0. Returns the space, the
    /// vertex set of `cone(L)` and the apex. The apex is a boundary vertex
    /// when `L` meets `∂K`. No subdivision is applied.
    pub fn compactify(&self) -> (StratifiedSpace, VertexSet, u32) {
        let k = &self.space;
        let apex = k.complex.vertices().max().map_or(0, |v| v + 1);
        let l_complex = k.complex.full_subcomplex(|v| self.removed.contains(&v));
        let mut maximal: Vec<Simplex> = k.complex.maximal_simplices();
        for s in l_complex.maximal_simplices() {
            maximal.push(s.with_vertex(apex).expect("apex is a new vertex"));
        }
        let complex = SimplicialComplex::from_simplices(maximal);
        let mut depth = k.depth.clone();
        depth.insert(apex, 0);
        let mut boundary = k.boundary.clone();
        if self.removed.iter().any(|v| boundary.contains(v)) {
            boundary.insert(apex);
        }
        let mut cone = self.removed.clone();
        cone.insert(apex);
        let space = StratifiedSpace {
            name: format!("{}^", k.name),
            complex,
            dim: k.dim,
            depth,
            boundary,
        };
        (space, cone, apex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_of_simplex(n: u32) -> SimplicialComplex {
        let verts: Vec<u32> = (0..=n + 1).collect();
        let facets: Vec<Vec<u32>> = (0..verts.len())
            .map(|i| verts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect())
            .collect();
        SimplicialComplex::from_maximal(facets).unwrap()
    }

    #[test]
    fn depth_range() {
        let k = SimplicialComplex::from_maximal([[0u32, 1, 2]]).unwrap();
        let err = StratifiedSpace::attach_filtration("t", k, [(0, 5), (1, 2), (2, 2)]).unwrap_err();
        assert!(matches!(err, Error::DepthOutOfRange { vertex: 0, .. }));
    }

    #[test]
    fn sphere_is_pseudomanifold() {
        let s3 = StratifiedSpace::trivial("S3", boundary_of_simplex(3));
        assert!(s3.validate_pseudomanifold().passed());
    }

    #[test]
    fn two_triangles_fail_coface_condition() {
        let k = SimplicialComplex::from_maximal([[0u32, 1, 2], [1, 2, 3]]).unwrap();
        let x = StratifiedSpace::trivial("pair", k);
        let r = x.validate_pseudomanifold();
        assert!(!r.passed());
        let item = r.first_failure().unwrap();
        assert_eq!(item.condition, "codimension-one simplices have two cofaces");
    }

    #[test]
    fn depth_l_minus_one_rejected_without_boundary() {
        let x = StratifiedSpace::attach_filtration(
            "s2",
            boundary_of_simplex(2),
            [(0, 1), (1, 2), (2, 2), (3, 2)],
        )
        .unwrap();
        assert!(!x.validate_pseudomanifold().passed());
    }

    #[test]
    fn subdivision_depth_is_max() {
        let k = SimplicialComplex::from_maximal([[0u32, 1]]).unwrap();
        let x = StratifiedSpace::attach_filtration("e", k, [(0, 0), (1, 1)]).unwrap();
        let sd = x.subdivide();
        let edge_barycenter =
            sd.provenance.iter().position(|s| s.dim() == 1).unwrap() as u32;
        assert_eq!(sd.space.depth(edge_barycenter), 1);
    }
}
