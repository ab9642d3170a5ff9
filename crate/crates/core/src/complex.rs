//! Finite abstract simplicial complexes and rational chains on them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i128>;

/// A simplex, stored as its strictly increasing vertex list. The sorted order
/// fixes the orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[u32; 6]>);

impl Simplex {
    pub fn new(vertices: &[u32]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        let mut v: SmallVec<[u32; 6]> = vertices.iter().copied().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInSimplex(vertices.to_vec()));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub(crate) fn from_sorted(vertices: &[u32]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices.iter().copied().collect())
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Facets with their boundary signs `(-1)^i`, `i` the omitted position.
    pub fn facets(&self) -> impl Iterator<Item = (Simplex, i128)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (Simplex(v), if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u32..(1u32 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }

    pub fn with_vertex(&self, v: u32) -> Result<Simplex> {
        let mut all: Vec<u32> = self.0.to_vec();
        all.push(v);
        Simplex::new(&all)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A face-closed set of simplices. Simplices of each dimension are kept in
/// lexicographic order, which fixes the coordinate order of every chain
/// space built on the complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Face closure of the given simplices.
    pub fn from_maximal<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut all = HashSet::new();
        for m in maximal {
            let s = Simplex::new(m.as_ref())?;
            if all.contains(&s) {
                continue;
            }
            all.extend(s.faces());
        }
        Ok(Self::from_closed_set(all))
    }

    pub(crate) fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all = HashSet::new();
        for s in simplices {
            if !all.contains(&s) {
                all.extend(s.faces());
            }
        }
        Self::from_closed_set(all)
    }

    fn from_closed_set(all: HashSet<Simplex>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            let d = s.dim();
            if simplices.len() <= d {
                simplices.resize_with(d + 1, Vec::new);
            }
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort_unstable();
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { simplices, index }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the empty complex (dimension −∞).
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.simplices(0).iter().map(|s| s.vertices()[0])
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Simplices that are not faces of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let counts = self.coface_counts(d);
            out.extend(
                self.simplices[d].iter().zip(counts).filter(|(_, c)| *c == 0).map(|(s, _)| s.clone()),
            );
        }
        out
    }

    /// Number of `(d+1)`-dimensional cofaces of each `d`-simplex.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(d)];
        for s in self.simplices(d + 1) {
            for (f, _) in s.facets() {
                counts[self.index[d][&f]] += 1;
            }
        }
        counts
    }

    /// The subcomplex of all simplices whose vertices satisfy `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        let all = self
            .all_simplices()
            .filter(|s| s.vertices().iter().all(|&v| keep(v)))
            .cloned()
            .collect();
        Self::from_closed_set(all)
    }

    /// A subcomplex given by a face-closed selection of simplices.
    pub fn subcomplex(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        Self::from_simplices(self.all_simplices().filter(|s| keep(s)).cloned())
    }

    /// Barycentric subdivision. Vertex `i` of the result is the barycenter of
    /// `provenance[i]`; simplices of the result are chains of faces.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<Simplex>) {
        let provenance: Vec<Simplex> = self.all_simplices().cloned().collect();
        let id: HashMap<&Simplex, u32> =
            provenance.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let mut flags: HashSet<Simplex> = HashSet::new();
        let mut scratch = Vec::new();
        for top in self.maximal_simplices() {
            full_flags(&top, &id, &mut scratch, &mut flags);
        }
        (Self::from_simplices(flags), provenance)
    }

    /// Closed star and link of a vertex.
    pub fn star_and_link(&self, v: u32) -> Result<(SimplicialComplex, SimplicialComplex)> {
        if !self.has_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
        let star = Self::from_simplices(self.all_simplices().filter(|s| s.contains(v)).cloned());
        let link = star.subcomplex(|s| !s.contains(v));
        Ok((star, link))
    }

    /// Connected components, each as a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let verts: Vec<u32> = self.vertices().collect();
        let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let a = find(&mut parent, pos[&e.vertices()[0]]);
            let b = find(&mut parent, pos[&e.vertices()[1]]);
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }
}

fn full_flags(
    s: &Simplex,
    id: &HashMap<&Simplex, u32>,
    scratch: &mut Vec<u32>,
    out: &mut HashSet<Simplex>,
) {
    scratch.push(id[s]);
    if s.dim() == 0 {
        let mut v = scratch.clone();
        v.sort_unstable();
        out.insert(Simplex::from_sorted(&v));
    } else {
        for (f, _) in s.facets() {
            full_flags(&f, id, scratch, out);
        }
    }
    scratch.pop();
}

/// A chain with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Simplex, Rational>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Simplex, Rational)>) -> Self {
        let mut c = Chain::zero(degree);
        for (s, q) in terms {
            c.add_term(s, q);
        }
        c
    }

    pub fn simplex(s: Simplex) -> Self {
        let d = s.dim();
        Chain::from_terms(d, [(s, Rational::one())])
    }

    pub fn add_term(&mut self, s: Simplex, q: Rational) {
        assert_eq!(s.dim(), self.degree, "simplex {s} has the wrong degree for this chain");
        let entry = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Simplex) -> Rational {
        self.terms.get(s).copied().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (s, q) in &self.terms {
            for (f, sign) in s.facets() {
                out.add_term(f, *q * Rational::from_integer(sign));
            }
        }
        out
    }

    /// Closure of the simplices with nonzero coefficient.
    pub fn support(&self) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.terms.keys().cloned())
    }

    pub fn scaled(&self, q: Rational) -> Chain {
        Chain::from_terms(self.degree, self.terms.iter().map(|(s, c)| (s.clone(), *c * q)))
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (s, q) in &other.terms {
            out.add_term(s.clone(), *q);
        }
        out
    }
}

/// `∂` of a chain, checking every simplex belongs to `complex`.
pub fn boundary_of_chain(complex: &SimplicialComplex, c: &Chain) -> Result<Chain> {
    for (s, _) in c.terms() {
        if !complex.contains(s) {
            return Err(Error::SimplexNotFound(s.clone()));
        }
    }
    Ok(c.boundary())
}

/// Sign of the permutation sorting `v` (which has no repeats).
pub(crate) fn sort_sign(v: &mut [u32]) -> i128 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v).unwrap()
    }

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn build_closure() {
        let circle = SimplicialComplex::from_maximal([[0u32, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(circle.f_vector(), vec![3, 3]);
        let tet = SimplicialComplex::from_maximal([[0u32, 1, 2, 3]]).unwrap();
        assert_eq!(tet.total(), 15);
        let mut faces = Vec::new();
        for a in 0..5u32 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    for d in c + 1..5 {
                        faces.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        let s3 = SimplicialComplex::from_maximal(faces).unwrap();
        assert_eq!(s3.f_vector(), vec![5, 10, 10, 5]);
        assert!(matches!(
            SimplicialComplex::from_maximal([[0u32, 0, 1]]),
            Err(Error::DuplicateVertexInSimplex(_))
        ));
    }

    #[test]
    fn boundary_signs() {
        let d = Chain::simplex(s(&[0, 1, 2])).boundary();
        let expect = Chain::from_terms(1, [(s(&[1, 2]), q(1)), (s(&[0, 2]), q(-1)), (s(&[0, 1]), q(1))]);
        assert_eq!(d, expect);
        assert!(Chain::simplex(s(&[0, 1, 2, 3])).boundary().boundary().is_zero());
    }

    #[test]
    fn fundamental_cycle_of_tetrahedron_boundary() {
        // ∂[0,1,2,3] is a coherently oriented 2-sphere
        let cycle = Chain::simplex(s(&[0, 1, 2, 3])).boundary();
        assert_eq!(cycle.len(), 4);
        assert!(cycle.boundary().is_zero());
        let sphere = SimplicialComplex::from_maximal([[1u32, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]).unwrap();
        assert_eq!(cycle.support(), sphere);
    }

    #[test]
    fn support_cases() {
        assert!(Chain::zero(1).support().is_empty());
        let c = Chain::from_terms(1, [(s(&[0, 1]), q(1)), (s(&[1, 2]), q(-1))]);
        assert_eq!(c.support().f_vector(), vec![3, 2]);
    }

    #[test]
    fn subdivision_counts() {
        let edge = SimplicialComplex::from_maximal([[0u32, 1]]).unwrap();
        let (sd, prov) = edge.barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![3, 2]);
        assert_eq!(prov.len(), 3);
        let tri = SimplicialComplex::from_maximal([[0u32, 1, 2]]).unwrap();
        let (sd, _) = tri.barycentric_subdivision();
        assert_eq!(sd.count(0), 7);
        assert_eq!(sd.count(2), 6);
        let pt = SimplicialComplex::from_maximal([[7u32]]).unwrap();
        assert_eq!(pt.barycentric_subdivision().0.f_vector(), vec![1]);
    }

    #[test]
    fn star_link_of_sphere_vertex() {
        let sphere = SimplicialComplex::from_maximal([[1u32, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]).unwrap();
        let (star, link) = sphere.star_and_link(0).unwrap();
        assert_eq!(star.count(2), 3);
        assert_eq!(link.f_vector(), vec![3, 3]);
        assert_eq!(sphere.star_and_link(9).unwrap_err(), Error::VertexNotFound(9));
    }

    #[test]
    fn permutation_sign() {
        let mut v = [2, 0, 1];
        assert_eq!(sort_sign(&mut v), 1);
        assert_eq!(v, [0, 1, 2]);
        let mut w = [1, 0];
        assert_eq!(sort_sign(&mut w), -1);
    }
}
