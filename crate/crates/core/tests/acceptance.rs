//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines always reach the output.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ihom::chains::{build_boundary_pair, build_intersection_complex, BuildOptions};
use ihom::constructions::{self as c, Example};
use ihom::harness::{self, CheckReport, PairVariant};
use ihom::homology::betti_numbers;
use ihom::perversity::{Perversity, PerversityKind};
use ihom::StratifiedSpace;

use common::{cone_formula, is_trivially_stratified, padded, relative_betti, simplicial_betti};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(reports: &[&CheckReport], what: &str) -> Outcome {
    ensure(!reports.is_empty(), || format!("no {what} reports"))?;
    if let Some(r) = reports.iter().find(|r| !r.passed()) {
        return Err(format!("{what} failed:\n{r}"));
    }
    Ok(format!("{} {what} checks", reports.len()))
}

fn select<'a>(reports: &'a [CheckReport], prefix: &[&str]) -> Vec<&'a CheckReport> {
    reports.iter().filter(|r| prefix.iter().any(|p| r.check.starts_with(p))).collect()
}

fn betti(x: &StratifiedSpace, p: &Perversity, opts: BuildOptions) -> Vec<usize> {
    padded(betti_numbers(&build_intersection_complex(x, p, opts).unwrap()).betti, x.dim() + 1)
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let x = c::outer_pinched_solid();
    let opts = BuildOptions::subdivide(2);
    let zero = betti(&x, &Perversity::zero(3), opts);
    let (_, rel) = build_boundary_pair(&x, &Perversity::top(3), opts).map_err(|e| e.to_string())?;
    let top_rel = padded(betti_numbers(&rel).betti, 4);
    let elapsed = start.elapsed();
    ensure(zero == [1, 0, 1, 0], || format!("I^0H = {zero:?}"))?;
    ensure(top_rel == [0, 1, 0, 1], || format!("I^tH(X;dX) = {top_rel:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("I^0H = {zero:?}, I^tH(X;dX) = {top_rel:?} in {elapsed:.2?}"))
}

fn perversity_algebra() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for l in 2..=10 {
        let all = Perversity::enumerate(l);
        for p in &all {
            let q = p.complement();
            ensure(all.contains(&q), || format!("complement of {p} invalid"))?;
            ensure(q.complement() == *p, || format!("complement of {p} not an involution"))?;
            if l >= 3 {
                let bp = p.boundary().map_err(|e| format!("{p}: {e}"))?;
                ensure(Perversity::enumerate(l - 1).contains(&bp), || format!("boundary of {p} invalid"))?;
                let bq = q.boundary().map_err(|e| e.to_string())?;
                ensure(bp.complement() == bq, || format!("boundaries of {p} and {q} are not complements"))?;
            }
            checked += 1;
        }
        if l >= 3 {
            let named = |k: PerversityKind, l: usize| Perversity::standard(k, l).unwrap();
            let pairs = [
                (PerversityKind::Zero, PerversityKind::Zero),
                (PerversityKind::Top, PerversityKind::Top),
                (PerversityKind::UpperMiddle, PerversityKind::LowerMiddle),
                (PerversityKind::LowerMiddle, PerversityKind::UpperMiddle),
            ];
            for (a, b) in pairs {
                let got = named(a, l).boundary().unwrap();
                ensure(got == named(b, l - 1), || format!("boundary of {a:?} in dim {l} is {got}"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} perversities, l <= 10, in {elapsed:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let opts = BuildOptions::default();
    let mut manifolds: Vec<StratifiedSpace> = Vec::new();
    for name in c::CATALOG {
        if let Ok(Example::Space(x)) = c::generate_example(name) {
            if is_trivially_stratified(&x) {
                manifolds.push(x);
            }
        }
    }
    manifolds.push(c::double(&c::disk()).unwrap());
    manifolds.push(c::double(&c::solid_torus()).unwrap());
    let mut checked = 0;
    for x in &manifolds {
        ensure(is_trivially_stratified(x), || format!("{} is not trivially stratified", x.name()))?;
        let expected = padded(simplicial_betti(x.complex()), x.dim() + 1);
        let expected_rel = padded(relative_betti(x.complex(), x.boundary_vertices()), x.dim() + 1);
        for p in Perversity::enumerate(x.dim()) {
            let got = betti(x, &p, opts);
            ensure(got == expected, || format!("{} p={p}: {got:?} vs oracle {expected:?}", x.name()))?;
            if x.has_boundary() {
                let (_, rel) = build_boundary_pair(x, &p, opts).unwrap();
                let got = padded(betti_numbers(&rel).betti, x.dim() + 1);
                ensure(got == expected_rel, || format!("{} p={p} relative: {got:?} vs {expected_rel:?}", x.name()))?;
            }
            checked += 1;
        }
    }
    for link in [c::sphere(1), c::sphere(2), c::torus()] {
        let cone = c::cone(&link);
        for p in Perversity::enumerate(cone.dim()) {
            let got = betti(&cone, &p, opts);
            let expected = cone_formula(&link, &p);
            ensure(got == expected, || format!("{} p={p}: {got:?} vs cone formula {expected:?}", cone.name()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (space, perversity) comparisons, {} manifolds, 3 cones", manifolds.len()))
}

fn robustness(first: &[CheckReport]) -> Outcome {
    let mut notes = Vec::new();
    let sub = |x: &StratifiedSpace, counts: &[usize]| -> Result<(), String> {
        for p in Perversity::enumerate(x.dim()) {
            let all: Vec<Vec<usize>> = counts.iter().map(|&n| betti(x, &p, BuildOptions::subdivide(n))).collect();
            ensure(all.windows(2).all(|w| w[0] == w[1]), || format!("{} p={p}: {all:?} over {counts:?} subdivisions", x.name()))?;
        }
        Ok(())
    };
    sub(&c::pinched_torus(), &[1, 2, 3])?;
    sub(&c::double_pinched_torus(), &[1, 2, 3])?;
    sub(&c::outer_pinched_solid(), &[1, 2])?;
    sub(&c::suspension_torus(), &[1, 2])?;
    notes.push("subdivision invariance on 4 spaces".to_string());

    let opts = BuildOptions::default();
    let variants = [c::suspension_torus(), c::suspension_torus_marked(0), c::suspension_torus_marked(1), c::suspension_torus_marked(2)];
    for p in Perversity::enumerate(3) {
        let all: Vec<Vec<usize>> = variants.iter().map(|x| betti(x, &p, opts)).collect();
        ensure(all.windows(2).all(|w| w[0] == w[1]), || format!("suspension_torus strata p={p}: {all:?}"))?;
    }
    let torus = c::torus();
    let spurious = StratifiedSpace::attach_filtration(
        "torus+pt",
        torus.complex().clone(),
        torus.complex().vertices().map(|v| (v, if v == 0 { 0 } else { 2 })),
    )
    .unwrap();
    ensure(spurious.validate().passed(), || "torus with a point stratum fails validation".into())?;
    let (a, b) = (betti(&torus, &Perversity::zero(2), opts), betti(&spurious, &Perversity::zero(2), opts));
    ensure(a == b, || format!("torus {a:?} vs torus with a point stratum {b:?}"))?;
    notes.push("stratification independence on suspension_torus (+0,+1,+2 points) and torus".to_string());

    let second = harness::suite(opts);
    let (j1, j2) = (serde_json::to_string_pretty(first).unwrap(), serde_json::to_string_pretty(&second).unwrap());
    ensure(j1 == j2, || "suite reports differ between runs".into())?;
    notes.push(format!("suite report byte-identical across runs ({} bytes)", j1.len()));
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let reports = harness::suite(BuildOptions::default());
    let lefschetz = select(&reports, &["lefschetz"]);
    let poincare = select(&reports, &["poincare"]);
    let local = select(&reports, &["local_"]);
    let product = select(&reports, &["product"]);
    let sequences = select(&reports, &["les_", "bm_collar", "negative_control"]);

    let criteria: Vec<Criterion> = vec![
        ("example reproduction on outer_pinched_solid", Box::new(example_reproduction)),
        ("Lefschetz duality", Box::new(|| all_pass(&lefschetz, "lefschetz"))),
        ("Poincare duality", Box::new(|| all_pass(&poincare, "poincare"))),
        (
            "local computations",
            Box::new(|| {
                let out = all_pass(&local, "local")?;
                let open = local.iter().filter(|r| r.right.iter().any(Option::is_none)).count();
                Ok(format!("{out}, {open} with unconstrained degrees reported"))
            }),
        ),
        ("product lemmas", Box::new(|| all_pass(&product, "product"))),
        (
            "exact sequences",
            Box::new(|| {
                let out = all_pass(&sequences, "sequence")?;
                for kind in ["les_boundary", "les_open", "les_bm", "negative_control"] {
                    ensure(sequences.iter().any(|r| r.check == kind), || format!("no {kind} report"))?;
                }
                let neg = sequences.iter().find(|r| r.check == "negative_control").unwrap();
                ensure(neg.witness.is_some(), || "corrupted sequence reported without a witness".into())?;
                let (pair, _) = harness::collared_product(&c::point());
                let missing = harness::check_pair_sequence(&pair, &Perversity::zero(1), &PairVariant::BmRelative(None), BuildOptions::default());
                ensure(matches!(missing, Err(ihom::Error::CollarRequired)), || "uncollared BM sequence accepted".into())?;
                Ok(out)
            }),
        ),
        ("perversity algebra", Box::new(perversity_algebra)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("robustness invariants", Box::new(|| robustness(&reports))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL\n{why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
