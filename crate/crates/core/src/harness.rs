//! Verification of duality theorems, local computations, product lemmas and
//! exact sequences over the example corpus.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{
    build_bm_complex, build_boundary_pair, build_intersection_complex, build_open_complex, BuildOptions,
    Subdivision, Variant,
};
use crate::constructions::{self, local_model, product_with_interval, CATALOG};
use crate::error::{Error, Result};
use crate::homology::{betti_numbers, check_exactness, long_exact_sequence, ExactnessReport, ShortExactSequence};
use crate::linalg::{RatMatrix, SparseVec};
use crate::perversity::Perversity;
use crate::stratified::{SpacePair, StratifiedSpace, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one check. `right[j] = None` marks a degree the statement
/// leaves unconstrained; it is reported but not compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub space: String,
    pub perversity: String,
    pub degrees: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<Option<usize>>,
    pub verdict: Verdict,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckReport {
    fn compare(check: &str, space: &str, p: &Perversity, left: Vec<usize>, right: Vec<Option<usize>>) -> Self {
        let n = left.len().max(right.len());
        let mut left = left;
        let mut right = right;
        left.resize(n, 0);
        right.resize(n, Some(0));
        let witness = (0..n)
            .find(|&j| right[j].is_some_and(|r| r != left[j]))
            .map(|j| format!("degree {j}: {} != {}", left[j], right[j].unwrap()));
        CheckReport {
            check: check.to_string(),
            space: space.to_string(),
            perversity: p.label(),
            degrees: (0..n).collect(),
            left,
            right,
            verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
            witness,
            note: None,
            wall_time: Duration::ZERO,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn key(&self) -> (String, String, String, Option<String>) {
        (self.check.clone(), self.space.clone(), self.perversity.clone(), self.note.clone())
    }
}

fn fmt_row(v: impl Iterator<Item = String>) -> String {
    v.collect::<Vec<_>>().join(" ")
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{mark} {} {} p={} ({:.2?})", self.check, self.space, self.perversity, self.wall_time)?;
        writeln!(f, "  degree {}", fmt_row(self.degrees.iter().map(|d| format!("{d:>2}"))))?;
        writeln!(f, "  left   {}", fmt_row(self.left.iter().map(|d| format!("{d:>2}"))))?;
        writeln!(
            f,
            "  right  {}",
            fmt_row(self.right.iter().map(|d| d.map_or(" -".to_string(), |d| format!("{d:>2}"))))
        )?;
        if let Some(n) = &self.note {
            writeln!(f, "  note: {n}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}

fn reversed(v: &[usize], l: usize) -> Vec<Option<usize>> {
    (0..=l).map(|j| Some(v.get(l - j).copied().unwrap_or(0))).collect()
}

/// `dim I^pH_j(X; ∂X) = dim I^qH_{l−j}(X)` for compact `X`, `q` the
/// complement of `p`. Without boundary the left side is `I^pH_j(X)`.
pub fn check_lefschetz(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let l = x.dim();
    let q = p.complement();
    let left = if x.has_boundary() {
        let (_, rel) = build_boundary_pair(x, p, opts)?;
        betti_numbers(&rel).betti
    } else {
        betti_numbers(&build_intersection_complex(x, p, opts)?).betti
    };
    let right = betti_numbers(&build_intersection_complex(x, &q, opts)?).betti;
    Ok(CheckReport::compare("lefschetz", x.name(), p, left, reversed(&right, l))
        .with_note(format!("left I^pH(X;∂X), right I^qH_(l-j)(X), q={}", q.label()))
        .timed(start))
}

/// `dim I^pH_j(X) = dim I^qH_{l−j}(X)` for compact `X` without boundary.
pub fn check_poincare(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<CheckReport> {
    if x.has_boundary() {
        return Err(Error::ValidationRequired(format!("{} has a boundary", x.name())));
    }
    let start = Instant::now();
    let q = p.complement();
    let left = betti_numbers(&build_intersection_complex(x, p, opts)?).betti;
    let right = betti_numbers(&build_intersection_complex(x, &q, opts)?).betti;
    Ok(CheckReport::compare("poincare", x.name(), p, left, reversed(&right, x.dim()))
        .with_note(format!("q={}", q.label()))
        .timed(start))
}

/// Expected value of a local group: `Some(Some(v))` asserts `v`,
/// `Some(None)` is unconstrained.
fn regime(iso: bool, zero: bool, value: usize) -> Option<usize> {
    if iso {
        Some(value)
    } else if zero {
        Some(0)
    } else {
        None
    }
}

fn describe(right: &[Option<usize>]) -> String {
    let unconstrained: Vec<String> =
        right.iter().enumerate().filter(|(_, r)| r.is_none()).map(|(j, _)| j.to_string()).collect();
    if unconstrained.is_empty() {
        "all degrees asserted".to_string()
    } else {
        format!("unconstrained degrees: {}", unconstrained.join(","))
    }
}

/// Local groups at a vertex, computed on the closed star and the link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGroups {
    /// `I^pH(X^ε)`.
    pub star: Vec<usize>,
    /// `I^pH(X^ε \ x₀)`, computed on the link with the truncated perversity.
    pub punctured: Vec<usize>,
    /// `I^pH(X^ε; ∂X^ε)`.
    pub star_rel: Vec<usize>,
    /// `I^pH(X^ε \ x₀; ∂X^ε \ x₀)`.
    pub punctured_rel: Vec<usize>,
    /// `I^pH^{BM}(X^ε)`.
    pub star_bm: Vec<usize>,
}

/// Computes the local groups at a boundary vertex. The space is subdivided
/// once first when the closed star of `v` is not a full subcomplex.
pub fn local_groups(x: &StratifiedSpace, v: u32, p: &Perversity, opts: BuildOptions) -> Result<LocalGroups> {
    if !x.complex().has_vertex(v) {
        return Err(Error::VertexNotFound(v));
    }
    if !x.boundary_vertices().contains(&v) || x.depth(v) != 0 {
        return Err(Error::VertexNotOnBoundary(v));
    }
    let (star, _) = x.complex().star_and_link(v)?;
    let star_verts: VertexSet = star.vertices().collect();
    let full = x.complex().full_subcomplex(|u| star_verts.contains(&u));
    let (space, v) = if full == star {
        (x.clone(), v)
    } else {
        let sd = x.subdivide();
        let nv = sd.provenance.iter().position(|s| s.dim() == 0 && s.vertices()[0] == v).unwrap() as u32;
        (sd.space, nv)
    };
    let m = local_model(&space, v)?;
    let l = x.dim();
    let pl = p.truncate(l - 1)?;
    let star_b = betti_numbers(&build_intersection_complex(&m.star, p, opts)?).betti;
    let (_, star_rel) = build_boundary_pair(&m.star, p, opts)?;
    let link_b = betti_numbers(&build_intersection_complex(&m.link, &pl, opts)?).betti;
    let link_rel = if m.link.has_boundary() {
        let (_, r) = build_boundary_pair(&m.link, &pl, opts)?;
        betti_numbers(&r).betti
    } else {
        link_b.clone()
    };
    let link_vertices: Vec<u32> = m.link.complex().vertices().collect();
    let open_star = SpacePair::new(m.star.clone(), link_vertices)?;
    let bm = betti_numbers(&build_bm_complex(&open_star, p, opts)?).betti;
    Ok(LocalGroups {
        star: star_b,
        punctured: link_b,
        star_rel: betti_numbers(&star_rel).betti,
        punctured_rel: link_rel,
        star_bm: bm,
    })
}

/// The four local cases and the Borel-Moore remark at a depth-0 boundary
/// vertex. Degrees the statements leave open are reported as unconstrained.
pub fn check_local_cases(x: &StratifiedSpace, v: u32, p: &Perversity, opts: BuildOptions) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let g = local_groups(x, v, p, opts)?;
    let l = x.dim() as i64;
    let p3 = if l >= 3 { p.get(3) } else { 0 };
    let pl = if l >= 2 { p.get(l as usize) as i64 } else { 0 };
    let at = |v: &[usize], j: i64| if j < 0 { 0 } else { v.get(j as usize).copied().unwrap_or(0) };
    let degrees = 0..=l;
    let space = format!("{}@{v}", x.name());
    let mut out = Vec::new();

    let (name, right): (&str, Vec<Option<usize>>) = if p3 == 0 {
        ("local_case1", degrees.clone().map(|j| regime(pl < l - j - 2, pl > l - j - 2, at(&g.punctured, j))).collect())
    } else {
        ("local_case2", degrees.clone().map(|j| regime(pl < l - j - 1, pl >= l - j - 1, at(&g.punctured, j))).collect())
    };
    let note = describe(&right);
    out.push(CheckReport::compare(name, &space, p, g.star.clone(), right).with_note(note));

    let (name, right): (&str, Vec<Option<usize>>) = if p3 == 0 {
        ("local_case3", degrees.clone().map(|j| regime(pl <= l - j - 2, pl > l - j - 2, at(&g.punctured_rel, j))).collect())
    } else {
        ("local_case4", degrees.clone().map(|j| regime(pl < l - j - 1, pl > l - j - 1, at(&g.punctured_rel, j))).collect())
    };
    let note = describe(&right);
    out.push(CheckReport::compare(name, &space, p, g.star_rel.clone(), right).with_note(note));

    let right: Vec<Option<usize>> = if p3 == 0 {
        degrees.map(|j| regime(pl > l - j - 1, pl < l - j - 1, at(&g.punctured, j - 1))).collect()
    } else {
        degrees.map(|j| regime(pl > l - j - 1, pl < l - j, at(&g.punctured, j - 1))).collect()
    };
    let note = describe(&right);
    out.push(CheckReport::compare("local_bm", &space, p, g.star_bm.clone(), right).with_note(note));
    Ok(out.into_iter().map(|r| r.timed(start)).collect())
}

/// Product lemma and its Borel-Moore version for an `(l−1)`-dimensional
/// compact `X` and an `l`-perversity `p`.
pub fn check_product_lemmas(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let l = x.dim() + 1;
    if p.ambient_dim() != l {
        return Err(Error::LengthMismatch { expected: l, got: p.ambient_dim() });
    }
    let pp = p.truncate(l - 1)?;
    let (_, pair) = product_with_interval(x);
    let base = betti_numbers(&build_intersection_complex(x, &pp, opts)?).betti;
    let open = betti_numbers(&build_open_complex(&pair, p, opts)?).betti;
    let ordinary = CheckReport::compare("product", x.name(), p, base.clone(), open.iter().map(|&b| Some(b)).collect())
        .with_note(format!("left I^p'H(X), right I^pH(X x (0,1)), p'={}", pp.label()))
        .timed(start);
    let bm = betti_numbers(&build_bm_complex(&pair, p, opts)?).betti;
    let shifted: Vec<usize> = (0..=l).map(|j| if j == 0 { 0 } else { base.get(j - 1).copied().unwrap_or(0) }).collect();
    let bm_report = CheckReport::compare("product_bm", x.name(), p, shifted, bm.iter().map(|&b| Some(b)).collect())
        .with_note("left BM_(j-1)(X), right BM_j(X x (0,1))")
        .timed(start);
    Ok(vec![ordinary, bm_report])
}

/// An open subset `W` of a noncompact pair whose frontier has a product
/// collar, given by combinatorial data.
#[derive(Clone, Debug)]
pub struct CollaredOpen {
    /// Vertices of `K` spanning the closed complement of `W`.
    pub complement: VertexSet,
    /// `W` itself as a pair, for the comparison with `I^pH^{BM}(W)`.
    pub w: SpacePair,
}

/// `X × (0, 4)` with `W = X × (0, 2)`; the frontier `X × {2}` is collared
/// by construction.
pub fn collared_product(x: &StratifiedSpace) -> (SpacePair, CollaredOpen) {
    let (k, layers) = constructions::product_layers(x, 4);
    let removed: Vec<u32> = layers[0].iter().chain(&layers[4]).copied().collect();
    let pair = SpacePair::new(k.with_name(format!("{}x(0,4)", x.name())), removed).expect("ends are proper");
    let complement: VertexSet = layers[2..].iter().flatten().copied().collect();
    let (wk, wl) = constructions::product_layers(x, 2);
    let wr: Vec<u32> = wl[0].iter().chain(&wl[2]).copied().collect();
    let w = SpacePair::new(wk.with_name(format!("{}x(0,2)", x.name())), wr).expect("ends are proper");
    (pair, CollaredOpen { complement, w })
}

/// Which short exact sequence to derive.
#[derive(Clone, Debug)]
pub enum PairVariant {
    /// `(X, ∂X)`.
    BoundaryPair,
    /// `(X; ∂X) → (X; W ∪ ∂X)` for the open set carried by a vertex set.
    OpenPair(VertexSet),
    /// Borel-Moore sequence of `(X; W)`; requires a collared `W`.
    BmRelative(Option<CollaredOpen>),
}

impl PairVariant {
    pub fn label(&self) -> &'static str {
        match self {
            PairVariant::BoundaryPair => "les_boundary",
            PairVariant::OpenPair(_) => "les_open",
            PairVariant::BmRelative(_) => "les_bm",
        }
    }
}

fn exactness_report(name: &str, space: &str, p: &Perversity, r: &ExactnessReport) -> CheckReport {
    let left: Vec<usize> = r.nodes.iter().map(|n| n.dim).collect();
    let right: Vec<Option<usize>> = r.nodes.iter().map(|n| Some(n.rank_in + n.rank_out)).collect();
    let mut out = CheckReport::compare(name, space, p, left, right);
    if let Some(f) = r.first_failure() {
        out.verdict = Verdict::Fail;
        out.witness = Some(format!("{}: {}", f.label, f.witness.clone().unwrap_or_default()));
    }
    let labels: Vec<&str> = r.nodes.iter().map(|n| n.label.as_str()).collect();
    out.with_note(format!("left dim, right rank in + rank out at {}", labels.join(" ")))
}

fn nested(middle: &crate::chains::IntersectionComplex, larger: &[Vec<SparseVec>], labels: [&str; 3]) -> Result<ExactnessReport> {
    let ses = ShortExactSequence::nested(middle, larger, Variant::RelativeOpen);
    Ok(check_exactness(&long_exact_sequence(&ses, labels)?))
}

/// Builds the chain-level short exact sequence, derives the long exact
/// sequence with connecting maps and checks exactness at every node. For
/// the Borel-Moore variant a second report compares `Ĥ(X; W)` with
/// `I^pH^{BM}(W)`.
pub fn check_pair_sequence(pair: &SpacePair, p: &Perversity, variant: &PairVariant, opts: BuildOptions) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let x = pair.space();
    let name = variant.label();
    match variant {
        PairVariant::BoundaryPair => {
            if !pair.is_compact() {
                return Err(Error::NotCompact);
            }
            let (abs, rel) = build_boundary_pair(x, p, opts)?;
            let larger: Vec<Vec<SparseVec>> = (0..rel.len()).map(|j| rel.quotient(j).to_vec()).collect();
            let r = nested(&abs, &larger, ["dX", "X", "X,dX"])?;
            Ok(vec![exactness_report(name, x.name(), p, &r).timed(start)])
        }
        PairVariant::OpenPair(w) => {
            if !pair.is_compact() {
                return Err(Error::NotCompact);
            }
            if let Some(v) = w.iter().find(|&&v| !x.complex().has_vertex(v)) {
                return Err(Error::CarrierNotSubcomplex(format!("vertex {v} is not in {}", x.name())));
            }
            let sd = Subdivision::new(x, vec![w.clone()], opts)?;
            let c = sd.chains(p);
            let d = if x.has_boundary() { sd.boundary_chains(&p.boundary_or_vacuous(), None)? } else { Vec::new() };
            let middle = sd.complex(Variant::RelativeBoundary, p, c, d);
            let dw = sd.chains_in(0, p);
            let r = nested(&middle, &dw, ["W,WndX", "X,dX", "X,WudX"])?;
            let space = format!("{}/W{}", x.name(), w.len());
            Ok(vec![exactness_report(name, &space, p, &r).timed(start)])
        }
        PairVariant::BmRelative(collar) => {
            let collar = collar.as_ref().ok_or(Error::CollarRequired)?;
            let (hat, cone, _) = pair.compactify();
            let mut far = collar.complement.clone();
            far.extend(cone.iter().copied());
            let sd = Subdivision::new(&hat, vec![cone, far], opts).map_err(|e| Error::PairInvalid(e.to_string()))?;
            let c = sd.chains(p);
            let n = sd.chains_in(0, p);
            let f = sd.chains_in(1, p);
            let middle = sd.complex(Variant::BorelMoore, p, c, n);
            let ses = ShortExactSequence::nested(&middle, &f, Variant::BorelMoore);
            let les = long_exact_sequence(&ses, ["X;W", "X", "X^W"])?;
            let r = check_exactness(&les);
            let report = exactness_report(name, x.name(), p, &r).timed(start);
            let quotient = betti_numbers(&ses.last).betti;
            let bm_w = betti_numbers(&build_bm_complex(&collar.w, p, opts)?).betti;
            let ident = CheckReport::compare("bm_collar", x.name(), p, quotient, bm_w.into_iter().map(Some).collect())
                .with_note("left H(BM(X)/BM(X;W)), right BM(W)")
                .timed(start);
            Ok(vec![report, ident])
        }
    }
}

/// Negative control: zeroes one entry of a nonzero map in the `(X, ∂X)`
/// sequence. Passes when the corrupted sequence is reported non-exact with
/// a witness.
pub fn check_negative_control(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let (abs, rel) = build_boundary_pair(x, p, opts)?;
    let larger: Vec<Vec<SparseVec>> = (0..rel.len()).map(|j| rel.quotient(j).to_vec()).collect();
    let ses = ShortExactSequence::nested(&abs, &larger, Variant::RelativeBoundary);
    let mut les = long_exact_sequence(&ses, ["dX", "X", "X,dX"])?;
    let Some(i) = les.maps.iter().position(|m| !m.is_zero()) else {
        return Err(Error::InvalidInput("no nonzero map to corrupt".into()));
    };
    let m = &les.maps[i];
    let (r, c) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !num_traits::Zero::is_zero(&m.get(r, c)))
        .unwrap();
    let mut corrupted: RatMatrix = m.clone();
    corrupted.set(r, c, num_traits::Zero::zero());
    les.maps[i] = corrupted;
    let report = check_exactness(&les);
    let caught = report.first_failure().and_then(|f| f.witness.clone());
    let mut out = CheckReport::compare("negative_control", x.name(), p, vec![usize::from(caught.is_some())], vec![Some(1)])
        .with_note(format!("zeroed entry ({r},{c}) of map {i}"))
        .timed(start);
    out.witness = caught.or(out.witness);
    Ok(out)
}

/// One unit of work in the suite.
#[derive(Clone, Debug)]
enum Task {
    Lefschetz(StratifiedSpace, Perversity),
    Poincare(StratifiedSpace, Perversity),
    Local(StratifiedSpace, u32, Perversity),
    Product(StratifiedSpace, Perversity),
    Pair(SpacePair, Perversity, PairVariant),
    Negative(StratifiedSpace, Perversity),
}

fn run_task(t: &Task, opts: BuildOptions) -> Vec<CheckReport> {
    let result = match t {
        Task::Lefschetz(x, p) => check_lefschetz(x, p, opts).map(|r| vec![r]),
        Task::Poincare(x, p) => check_poincare(x, p, opts).map(|r| vec![r]),
        Task::Local(x, v, p) => check_local_cases(x, *v, p, opts),
        Task::Product(x, p) => check_product_lemmas(x, p, opts),
        Task::Pair(x, p, v) => check_pair_sequence(x, p, v, opts),
        Task::Negative(x, p) => check_negative_control(x, p, opts).map(|r| vec![r]),
    };
    result.unwrap_or_else(|e| {
        let (check, space, p) = match t {
            Task::Lefschetz(x, p) => ("lefschetz", x.name().to_string(), p),
            Task::Poincare(x, p) => ("poincare", x.name().to_string(), p),
            Task::Local(x, _, p) => ("local", x.name().to_string(), p),
            Task::Product(x, p) => ("product", x.name().to_string(), p),
            Task::Pair(x, p, v) => (v.label(), x.name().to_string(), p),
            Task::Negative(x, p) => ("negative_control", x.name().to_string(), p),
        };
        let mut r = CheckReport::compare(check, &space, p, vec![], vec![]);
        r.verdict = Verdict::Fail;
        r.witness = Some(format!("error: {e}"));
        vec![r]
    })
}

/// Compact spaces without boundary used for Poincaré duality.
pub fn closed_corpus() -> Vec<StratifiedSpace> {
    let mut out: Vec<StratifiedSpace> = ["sphere1", "sphere2", "sphere3", "torus", "suspension_torus", "pinched_torus", "double_pinched_torus"]
        .iter()
        .map(|n| constructions::generate_example(n).unwrap().space().clone())
        .collect();
    for x in boundary_corpus() {
        out.push(constructions::double(&x).expect("boundary corpus has boundaries"));
    }
    out
}

/// Catalog ∂-pseudomanifolds.
pub fn boundary_corpus() -> Vec<StratifiedSpace> {
    CATALOG
        .iter()
        .filter_map(|n| match constructions::generate_example(n).unwrap() {
            constructions::Example::Space(x) if x.has_boundary() => Some(x),
            _ => None,
        })
        .collect()
}

/// Spaces for the product lemmas.
pub fn product_corpus() -> Vec<StratifiedSpace> {
    vec![
        constructions::point(),
        constructions::sphere(1),
        constructions::torus(),
        constructions::suspension_torus(),
        constructions::solid_torus(),
    ]
}

fn tasks() -> Vec<Task> {
    let mut t = Vec::new();
    for x in boundary_corpus() {
        for p in Perversity::enumerate(x.dim()) {
            t.push(Task::Lefschetz(x.clone(), p.clone()));
            t.push(Task::Pair(SpacePair::compact(x.clone()), p.clone(), PairVariant::BoundaryPair));
            for v in x.boundary_vertices().iter().filter(|&&v| x.depth(v) == 0) {
                t.push(Task::Local(x.clone(), *v, p.clone()));
            }
        }
    }
    for x in closed_corpus() {
        for p in Perversity::enumerate(x.dim()) {
            t.push(Task::Poincare(x.clone(), p));
        }
    }
    for x in product_corpus() {
        for p in Perversity::enumerate(x.dim() + 1) {
            t.push(Task::Product(x.clone(), p));
        }
    }
    for (x, w) in open_pair_corpus() {
        for p in Perversity::enumerate(x.dim()) {
            t.push(Task::Pair(SpacePair::compact(x.clone()), p, PairVariant::OpenPair(w.clone())));
        }
    }
    for x in [constructions::point(), constructions::sphere(1)] {
        let (pair, collar) = collared_product(&x);
        for p in Perversity::enumerate(x.dim() + 1) {
            t.push(Task::Pair(pair.clone(), p, PairVariant::BmRelative(Some(collar.clone()))));
        }
    }
    let x = constructions::outer_pinched_solid();
    t.push(Task::Negative(x, Perversity::top(3)));
    t
}

/// Open sets for the open-pair sequence: a meridian disk neighbourhood and a
/// boundary collar of the solid torus, and a pinch point and the core circle
/// of the pinched solid.
pub fn open_pair_corpus() -> Vec<(StratifiedSpace, VertexSet)> {
    let st = constructions::solid_torus();
    let disk: VertexSet = (0..4).collect();
    let collar: VertexSet = st.boundary_vertices().clone();
    let ps = constructions::outer_pinched_solid();
    let pinch: VertexSet = [9].into_iter().collect();
    let core: VertexSet = (3..6).collect();
    vec![(st.clone(), disk), (st, collar), (ps.clone(), pinch), (ps, core)]
}

/// Runs every check over the corpus in parallel. Reports are sorted by
/// check, space and perversity.
pub fn suite(opts: BuildOptions) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = tasks().par_iter().flat_map(|t| run_task(t, opts)).collect();
    reports.sort_by_key(CheckReport::key);
    reports
}

/// Distinct checks in a report list, for summaries.
pub fn summary(reports: &[CheckReport]) -> Vec<(String, usize, usize)> {
    let names: BTreeSet<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    names
        .into_iter()
        .map(|n| {
            let all: Vec<&CheckReport> = reports.iter().filter(|r| r.check == n).collect();
            (n.to_string(), all.iter().filter(|r| r.passed()).count(), all.len())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_schema_is_stable() {
        let p = Perversity::zero(3);
        let r = CheckReport::compare("x", "s", &p, vec![1, 2], vec![Some(1), None, Some(0)]);
        assert!(r.passed());
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["check", "degrees", "left", "perversity", "right", "space", "verdict", "witness"]);
        assert_eq!(json["right"], serde_json::json!([1, null, 0]));
        assert_eq!(json["verdict"], "pass");
    }

    #[test]
    fn mismatch_names_the_degree() {
        let p = Perversity::top(3);
        let r = CheckReport::compare("x", "s", &p, vec![0, 1], vec![Some(0), Some(2)]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness.as_deref(), Some("degree 1: 1 != 2"));
    }

    #[test]
    fn uncollared_bm_sequence_is_refused() {
        let (pair, _) = collared_product(&constructions::point());
        let err = check_pair_sequence(&pair, &Perversity::zero(1), &PairVariant::BmRelative(None), BuildOptions::default());
        assert!(matches!(err, Err(Error::CollarRequired)));
    }

    #[test]
    fn local_checks_need_a_boundary_point() {
        let x = constructions::outer_pinched_solid();
        let err = check_local_cases(&x, 3, &Perversity::top(3), BuildOptions::default());
        assert!(matches!(err, Err(Error::VertexNotOnBoundary(3))));
    }
}
