//! Constructors for stratified spaces and the named example catalog.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::chains::BuildOptions;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::stratified::{SpacePair, StratifiedSpace, VertexSet};

/// A generated example: a compact space, or a pair `(K, L)` standing for
/// `|K| \ |L|`.
#[derive(Clone, Debug)]
pub enum Example {
    Space(StratifiedSpace),
    Pair(SpacePair),
}

impl Example {
    pub fn name(&self) -> &str {
        match self {
            Example::Space(x) => x.name(),
            Example::Pair(p) => p.name(),
        }
    }

    pub fn space(&self) -> &StratifiedSpace {
        match self {
            Example::Space(x) => x,
            Example::Pair(p) => p.space(),
        }
    }

    pub fn pair(&self) -> SpacePair {
        match self {
            Example::Space(x) => SpacePair::compact(x.clone()),
            Example::Pair(p) => p.clone(),
        }
    }
}

fn space(name: &str, maximal: Vec<Vec<u32>>, depth: impl Fn(u32) -> usize) -> StratifiedSpace {
    let k = SimplicialComplex::from_maximal(maximal).expect("catalog simplices are valid");
    let d: Vec<(u32, i64)> = k.vertices().map(|v| (v, depth(v) as i64)).collect();
    StratifiedSpace::attach_filtration(name, k, d).expect("catalog depths are in range")
}

fn with_boundary(x: StratifiedSpace, b: impl IntoIterator<Item = u32>) -> StratifiedSpace {
    x.declare_boundary(b).expect("catalog boundary is valid")
}

/// A single point.
pub fn point() -> StratifiedSpace {
    space("point", vec![vec![0]], |_| 0)
}

/// `∂Δ^{n+1}`.
pub fn sphere(n: usize) -> StratifiedSpace {
    let verts: Vec<u32> = (0..=n as u32 + 1).collect();
    let facets: Vec<Vec<u32>> =
        (0..verts.len()).map(|i| verts.iter().copied().filter(|&v| v != i as u32).collect()).collect();
    space(&format!("sphere{n}"), facets, |_| n)
}

fn torus_triangles() -> Vec<Vec<u32>> {
    let mut t = Vec::new();
    for i in 0..7u32 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    t
}

/// The 7-vertex torus.
pub fn torus() -> StratifiedSpace {
    space("torus", torus_triangles(), |_| 2)
}

/// `ΣT²` with both suspension points at depth 0.
pub fn suspension_torus() -> StratifiedSpace {
    let s = suspension(&torus()).expect("torus is compact");
    s.with_name("suspension_torus")
}

/// Suspension with the two new points at depth 0 and all other depths
/// raised by one.
pub fn suspension(x: &StratifiedSpace) -> Result<StratifiedSpace> {
    if x.has_boundary() {
        return Err(Error::InvalidInput("suspension of a space with boundary".into()));
    }
    let top = x.complex().vertices().max().map_or(0, |v| v + 1);
    let (n, s) = (top, top + 1);
    let mut maximal = Vec::new();
    for m in x.complex().maximal_simplices() {
        maximal.push(m.with_vertex(n)?);
        maximal.push(m.with_vertex(s)?);
    }
    let k = SimplicialComplex::from_simplices(maximal);
    let depth: Vec<(u32, i64)> =
        k.vertices().map(|v| (v, if v == n || v == s { 0 } else { x.depth(v) as i64 + 1 })).collect();
    StratifiedSpace::attach_filtration(format!("S{}", x.name()), k, depth)
}

fn ring(start: u32, len: u32, i: u32) -> u32 {
    start + i % len
}

/// Staircase triangles of the annulus between two rings of `len` vertices.
fn annulus_strip(a: u32, b: u32, len: u32) -> Vec<Vec<u32>> {
    let mut t = Vec::new();
    for i in 0..len {
        t.push(vec![ring(a, len, i), ring(a, len, i + 1), ring(b, len, i + 1)]);
        t.push(vec![ring(a, len, i), ring(b, len, i), ring(b, len, i + 1)]);
    }
    t
}

/// Torus with one meridian collapsed: an annulus whose two boundary
/// circles are coned to a single point at depth 0.
pub fn pinched_torus() -> StratifiedSpace {
    let mut t = annulus_strip(0, 3, 3);
    for i in 0..3 {
        t.push(vec![ring(0, 3, i), ring(0, 3, i + 1), 6]);
        t.push(vec![ring(3, 3, i), ring(3, 3, i + 1), 6]);
    }
    space("pinched_torus", t, |v| if v == 6 { 0 } else { 2 })
}

/// Torus with two meridians collapsed: two spheres meeting in two points.
pub fn double_pinched_torus() -> StratifiedSpace {
    let mut t = Vec::new();
    for c in [0u32, 3] {
        for i in 0..3 {
            t.push(vec![ring(c, 3, i), ring(c, 3, i + 1), 6]);
            t.push(vec![ring(c, 3, i), ring(c, 3, i + 1), 7]);
        }
    }
    space("double_pinched_torus", t, |v| if v >= 6 { 0 } else { 2 })
}

/// Staircase triangulation of `simplex × [0, 1]` with the given vertex
/// labels on each end. `lower[i]` and `upper[i]` lie over vertex `i`.
fn prism(lower: &[u32], upper: &[u32]) -> Vec<Vec<u32>> {
    (0..lower.len())
        .map(|i| lower[..=i].iter().chain(&upper[i..]).copied().collect())
        .collect()
}

/// `S¹ × D²` with a 3-vertex core circle and boundary torus of 9 vertices.
pub fn solid_torus() -> StratifiedSpace {
    // vertex (t, v) = 4t + v, v = 0 the disk center, 1..=3 the rim
    let id = |t: u32, v: u32| 4 * (t % 3) + v;
    let disk = [[0u32, 1, 2], [0, 2, 3], [0, 1, 3]];
    let mut tets = Vec::new();
    for t in 0..3 {
        for tri in &disk {
            let lower: Vec<u32> = tri.iter().map(|&v| id(t, v)).collect();
            let upper: Vec<u32> = tri.iter().map(|&v| id(t + 1, v)).collect();
            tets.extend(prism(&lower, &upper));
        }
    }
    let x = space("solid_torus", tets, |v| if v % 4 == 0 { 3 } else { 2 });
    with_boundary(x, (0..12).filter(|v| v % 4 != 0))
}

/// Cone over a triangle boundary, as a manifold with boundary.
pub fn disk() -> StratifiedSpace {
    let x = space("disk", vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]], |v| if v == 3 { 2 } else { 1 });
    with_boundary(x, [0, 1, 2])
}

/// Solid torus with two parallel boundary longitudes each collapsed to a
/// point: the suspension of the annulus `S¹ × [0, 2]`. The suspension
/// points are the pinch points; the boundary is the suspension of the two
/// boundary circles of the annulus, a doubly pinched torus.
pub fn outer_pinched_solid() -> StratifiedSpace {
    let mut tris = annulus_strip(0, 3, 3);
    tris.extend(annulus_strip(3, 6, 3));
    let (n, s) = (9u32, 10u32);
    let tets: Vec<Vec<u32>> = tris
        .iter()
        .flat_map(|t| {
            let mut a = t.clone();
            a.push(n);
            let mut b = t.clone();
            b.push(s);
            [a, b]
        })
        .collect();
    let depth = |v: u32| match v {
        9 | 10 => 0,
        3..=5 => 3,
        _ => 2,
    };
    let x = space("outer_pinched_solid", tets, depth);
    with_boundary(x, [0, 1, 2, 6, 7, 8, 9, 10])
}

/// The open interval as a path with both ends removed.
pub fn interval_pair() -> SpacePair {
    let x = space("interval_pair", (0..4).map(|i| vec![i, i + 1]).collect(), |_| 1);
    SpacePair::new(x, [0, 4]).expect("valid pair")
}

/// The open cylinder `S¹ × (0, 1)`.
pub fn circle_cylinder_pair() -> SpacePair {
    let mut t = Vec::new();
    for layer in 0..4 {
        t.extend(annulus_strip(3 * layer, 3 * (layer + 1), 3));
    }
    let x = space("circle_cylinder_pair", t, |_| 2);
    SpacePair::new(x, (0..3).chain(12..15)).expect("valid pair")
}

/// Cone with apex at depth 0. The base is not part of the boundary; a
/// boundary of the base becomes the boundary `cone(∂X)`.
pub fn cone(x: &StratifiedSpace) -> StratifiedSpace {
    let apex = x.complex().vertices().max().map_or(0, |v| v + 1);
    let maximal: Vec<Simplex> =
        x.complex().maximal_simplices().iter().map(|m| m.with_vertex(apex).unwrap()).collect();
    let complex = SimplicialComplex::from_simplices(maximal);
    let mut depth: BTreeMap<u32, usize> = x.depths().iter().map(|(&v, &d)| (v, d + 1)).collect();
    depth.insert(apex, 0);
    let mut boundary = x.boundary_vertices().clone();
    if !boundary.is_empty() {
        boundary.insert(apex);
    }
    StratifiedSpace::from_parts(format!("c{}", x.name()), complex, x.dim() + 1, depth, boundary)
}

/// `X × [0, steps]` with layers `0..=steps`. Vertex `(v, t)` gets id
/// `t · n + rank(v)`, depth `depth(v) + 1`. Returns the product and the
/// vertex ids of each layer.
pub(crate) fn product_layers(x: &StratifiedSpace, steps: u32) -> (StratifiedSpace, Vec<VertexSet>) {
    let verts: Vec<u32> = x.complex().vertices().collect();
    let rank: HashMap<u32, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let n = verts.len() as u32;
    let id = |v: u32, t: u32| t * n + rank[&v];
    let mut maximal = Vec::new();
    for m in x.complex().maximal_simplices() {
        for t in 0..steps {
            let lower: Vec<u32> = m.vertices().iter().map(|&v| id(v, t)).collect();
            let upper: Vec<u32> = m.vertices().iter().map(|&v| id(v, t + 1)).collect();
            maximal.extend(prism(&lower, &upper));
        }
    }
    let complex = SimplicialComplex::from_maximal(maximal).expect("prism simplices are valid");
    let mut depth = BTreeMap::new();
    let mut boundary = VertexSet::new();
    let mut layers = vec![VertexSet::new(); steps as usize + 1];
    for &v in &verts {
        for t in 0..=steps {
            depth.insert(id(v, t), x.depth(v) + 1);
            layers[t as usize].insert(id(v, t));
            if x.boundary_vertices().contains(&v) {
                boundary.insert(id(v, t));
            }
        }
    }
    let name = format!("{}xI", x.name());
    (StratifiedSpace::from_parts(name, complex, x.dim() + 1, depth, boundary), layers)
}

/// `X × [0, 1]` and the pair standing for `X × (0, 1)`. The pair uses two
/// prism layers so that the removed ends `X × {0}` and `X × {2}` are
/// disjoint full subcomplexes. `∂X × I` is the boundary of both.
pub fn product_with_interval(x: &StratifiedSpace) -> (StratifiedSpace, SpacePair) {
    let (closed, _) = product_layers(x, 1);
    let (open, layers) = product_layers(x, 2);
    let removed: Vec<u32> = layers[0].iter().chain(&layers[2]).copied().collect();
    let pair = SpacePair::new(open, removed).expect("ends are proper");
    (closed, pair)
}

/// Two copies of `X` glued along `∂X`. Boundary vertices at depth `l − 1`
/// become regular.
pub fn double(x: &StratifiedSpace) -> Result<StratifiedSpace> {
    if !x.has_boundary() {
        return Err(Error::NoBoundary);
    }
    let offset = x.complex().vertices().max().map_or(0, |v| v + 1);
    let b = x.boundary_vertices();
    let shift = |v: u32| if b.contains(&v) { v } else { v + offset };
    let mut maximal: Vec<Vec<u32>> = Vec::new();
    for m in x.complex().maximal_simplices() {
        maximal.push(m.vertices().to_vec());
        maximal.push(m.vertices().iter().map(|&v| shift(v)).collect());
    }
    let l = x.dim();
    let k = SimplicialComplex::from_maximal(maximal)?;
    let depth: Vec<(u32, i64)> = k
        .vertices()
        .map(|v| {
            let orig = if v >= offset { v - offset } else { v };
            let d = x.depth(orig);
            (v, if d + 1 == l { l as i64 } else { d as i64 })
        })
        .collect();
    StratifiedSpace::attach_filtration(format!("D{}", x.name()), k, depth)
}

/// `K ∪ cone(L)`, subdivided as the chain builders do.
pub fn one_point_compactification(pair: &SpacePair, opts: BuildOptions) -> Result<StratifiedSpace> {
    let (hat, _, _) = pair.compactify();
    hat.require_filtration().map_err(|e| Error::PairInvalid(e.to_string()))?;
    Ok(hat.subdivide_times(opts.count_for(hat.dim()), &mut []))
}

/// Local model at a vertex: `X^ε` is the closed star, the link models the
/// sphere `S(x₀; ε) ∩ X`.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub vertex: u32,
    /// Closed star with inherited depths; boundary `star ∩ ∂X`.
    pub star: StratifiedSpace,
    /// Link as an `(l − 1)`-dimensional space, depths lowered by one;
    /// boundary `link ∩ ∂X`.
    pub link: StratifiedSpace,
    /// `X^ε \ x₀` as the pair `(star, {x₀})`.
    pub punctured: SpacePair,
}

impl LocalModel {
    pub fn on_boundary(&self) -> bool {
        self.star.has_boundary()
    }

    /// `∂X^ε = star ∩ ∂X`.
    pub fn star_boundary(&self) -> Result<StratifiedSpace> {
        self.star.boundary_space()
    }
}

pub fn local_model(x: &StratifiedSpace, v: u32) -> Result<LocalModel> {
    let (star, link) = x.complex().star_and_link(v)?;
    let b = x.boundary_vertices();
    let star_b: VertexSet = star.vertices().filter(|u| b.contains(u)).collect();
    let link_b: VertexSet = link.vertices().filter(|u| b.contains(u)).collect();
    let star_depth = star.vertices().map(|u| (u, x.depth(u))).collect();
    let link_depth = link.vertices().map(|u| (u, x.depth(u).saturating_sub(1))).collect();
    let l = x.dim();
    let star = StratifiedSpace::from_parts(format!("{}@{v}", x.name()), star, l, star_depth, star_b);
    let link = StratifiedSpace::from_parts(format!("lk({}@{v})", x.name()), link, l - 1, link_depth, link_b);
    let punctured = SpacePair::new(star.clone(), [v])?;
    Ok(LocalModel { vertex: v, star, link, punctured })
}

/// Identifies vertices along `map` (unmapped vertices are fixed). Depth of an
/// image is the minimum over its preimages. Fails unless the map is
/// injective on every simplex and distinct simplices stay distinct.
pub fn identify_vertices(x: &StratifiedSpace, map: &HashMap<u32, u32>) -> Result<StratifiedSpace> {
    let f = |v: u32| *map.get(&v).unwrap_or(&v);
    let mut seen: HashSet<Simplex> = HashSet::new();
    let mut images = Vec::new();
    for s in x.complex().all_simplices() {
        let mut img: Vec<u32> = s.vertices().iter().map(|&v| f(v)).collect();
        img.sort_unstable();
        if img.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidQuotient(format!("{s} contains identified vertices")));
        }
        let t = Simplex::from_sorted(&img);
        if !seen.insert(t.clone()) {
            return Err(Error::InvalidQuotient(format!("two simplices map to {t}")));
        }
        images.push(t);
    }
    let k = SimplicialComplex::from_simplices(images);
    let mut depth: BTreeMap<u32, usize> = BTreeMap::new();
    let mut boundary = BTreeSet::new();
    for (&v, &d) in x.depths() {
        let e = depth.entry(f(v)).or_insert(d);
        *e = (*e).min(d);
        if x.boundary_vertices().contains(&v) {
            boundary.insert(f(v));
        }
    }
    Ok(StratifiedSpace::from_parts(format!("{}/~", x.name()), k, x.dim(), depth, boundary))
}

/// `ΣT²` after one subdivision with `extra` additional point strata placed
/// at barycenters of tetrahedra away from the suspension points.
pub fn suspension_torus_marked(extra: usize) -> StratifiedSpace {
    let sd = suspension_torus().subdivide().space;
    let l = sd.dim();
    let mut chosen: Vec<u32> = Vec::new();
    let k = sd.complex();
    let mut neighbours: HashMap<u32, HashSet<u32>> = HashMap::new();
    for e in k.simplices(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        neighbours.entry(a).or_default().insert(b);
        neighbours.entry(b).or_default().insert(a);
    }
    for v in k.vertices() {
        if chosen.len() == extra {
            break;
        }
        let free = sd.depth(v) == l
            && neighbours[&v].iter().all(|u| sd.depth(*u) > 0 && !chosen.contains(u));
        if free {
            chosen.push(v);
        }
    }
    let mut out = sd.with_name(format!("suspension_torus+{extra}"));
    for v in chosen {
        out.set_depth(v, 0);
    }
    out
}

/// Names accepted by [`generate_example`].
pub const CATALOG: &[&str] = &[
    "sphere1",
    "sphere2",
    "sphere3",
    "torus",
    "suspension_torus",
    "pinched_torus",
    "double_pinched_torus",
    "solid_torus",
    "disk",
    "outer_pinched_solid",
    "interval_pair",
    "circle_cylinder_pair",
];

pub fn generate_example(name: &str) -> Result<Example> {
    let e = match name {
        "sphere0" => Example::Space(sphere(0)),
        "sphere1" => Example::Space(sphere(1)),
        "sphere2" => Example::Space(sphere(2)),
        "sphere3" => Example::Space(sphere(3)),
        "torus" => Example::Space(torus()),
        "suspension_torus" => Example::Space(suspension_torus()),
        "pinched_torus" => Example::Space(pinched_torus()),
        "double_pinched_torus" => Example::Space(double_pinched_torus()),
        "solid_torus" => Example::Space(solid_torus()),
        "disk" => Example::Space(disk()),
        "outer_pinched_solid" => Example::Space(outer_pinched_solid()),
        "interval_pair" => Example::Pair(interval_pair()),
        "circle_cylinder_pair" => Example::Pair(circle_cylinder_pair()),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_validates() {
        for name in CATALOG {
            let e = generate_example(name).unwrap();
            let r = e.space().validate();
            match &e {
                Example::Space(_) => assert!(r.passed(), "{name}:\n{r}"),
                // pairs are compact models with an ordinary boundary
                Example::Pair(_) => assert!(e.space().check_filtration().passed()),
            }
        }
    }

    #[test]
    fn torus_is_a_surface() {
        let t = torus();
        assert_eq!(t.complex().f_vector(), vec![7, 21, 14]);
    }

    #[test]
    fn sizes() {
        assert_eq!(solid_torus().complex().count(3), 27);
        let x = outer_pinched_solid();
        assert_eq!(x.complex().count(3), 24);
        assert_eq!(x.complex().count(0), 11);
        let (closed, _) = product_with_interval(&sphere(1));
        // three prisms of two triangles each
        assert_eq!(closed.complex().count(2), 6);
    }

    #[test]
    fn doubles_are_pseudomanifolds() {
        assert!(double(&disk()).unwrap().validate_pseudomanifold().passed());
        assert!(double(&solid_torus()).unwrap().validate_pseudomanifold().passed());
        assert!(double(&outer_pinched_solid()).unwrap().validate_pseudomanifold().passed());
        assert_eq!(double(&torus()).unwrap_err(), Error::NoBoundary);
    }

    #[test]
    fn identification_rejects_folding() {
        let map: HashMap<u32, u32> = [(1, 0)].into_iter().collect();
        assert!(matches!(identify_vertices(&torus(), &map), Err(Error::InvalidQuotient(_))));
    }

    #[test]
    fn local_model_of_pinch_point() {
        let m = local_model(&outer_pinched_solid(), 9).unwrap();
        assert!(m.on_boundary());
        assert_eq!(m.link.dim(), 2);
        // the link of a suspension point is the annulus
        assert_eq!(m.link.complex().count(2), 12);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(generate_example("klein").unwrap_err(), Error::UnknownName("klein".into()));
    }
}
