mod common;

use ihom::chains::{build_boundary_pair, build_intersection_complex, simplex_allowable, BuildOptions};
use ihom::constructions as c;
use ihom::homology::betti_numbers;
use ihom::{Perversity, StratifiedSpace};
use proptest::prelude::*;

fn perversity(l: usize) -> impl Strategy<Value = Perversity> {
    prop::collection::vec(any::<bool>(), l.saturating_sub(2)).prop_map(move |steps| {
        let mut values = vec![0];
        for s in steps {
            values.push(values.last().unwrap() + i32::from(s));
        }
        Perversity::new(l, &values).unwrap()
    })
}

fn sized_perversity() -> impl Strategy<Value = Perversity> {
    (2usize..=12).prop_flat_map(perversity)
}

fn small_spaces() -> Vec<StratifiedSpace> {
    vec![
        c::sphere(2),
        c::torus(),
        c::pinched_torus(),
        c::double_pinched_torus(),
        c::disk(),
        c::solid_torus(),
        c::outer_pinched_solid(),
        c::suspension_torus(),
        c::cone(&c::torus()),
    ]
}

proptest! {
    #[test]
    fn complement_is_an_involution(p in sized_perversity()) {
        prop_assert_eq!(p.complement().complement(), p.clone());
        prop_assert!(Perversity::enumerate(p.ambient_dim()).contains(&p.complement()));
    }

    #[test]
    fn truncation_commutes_with_complement(p in sized_perversity(), cut in 2usize..=12) {
        let target = cut.min(p.ambient_dim());
        prop_assert_eq!(
            p.complement().truncate(target).unwrap(),
            p.truncate(target).unwrap().complement()
        );
    }

    #[test]
    fn boundary_of_complements(p in (3usize..=12).prop_flat_map(perversity)) {
        let (bp, bq) = (p.boundary().unwrap(), p.complement().boundary().unwrap());
        prop_assert_eq!(bp.complement(), bq);
    }

    #[test]
    fn labels_parse_back(p in sized_perversity()) {
        prop_assert_eq!(Perversity::parse(&p.label(), p.ambient_dim()).unwrap(), p);
    }

    #[test]
    fn allowability_is_monotone(k in 0usize..9, seed in any::<u64>()) {
        let x = &small_spaces()[k];
        let all = Perversity::enumerate(x.dim());
        let p = &all[seed as usize % all.len()];
        for q in all.iter().filter(|q| p.le(q)) {
            for d in 0..=x.dim() {
                for s in x.complex().simplices(d) {
                    prop_assert!(!simplex_allowable(s, d, p, x) || simplex_allowable(s, d, q, x));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn built_complexes_are_chain_complexes(k in 0usize..9, seed in any::<u64>()) {
        let x = &small_spaces()[k];
        let all = Perversity::enumerate(x.dim());
        let p = &all[seed as usize % all.len()];
        let opts = BuildOptions::subdivide(1);
        prop_assert!(build_intersection_complex(x, p, opts).unwrap().verify());
        if x.has_boundary() {
            let (abs, rel) = build_boundary_pair(x, p, opts).unwrap();
            prop_assert!(abs.verify() && rel.verify());
        }
    }
}

#[test]
fn perversity_counts_are_catalan_like() {
    let counts: Vec<usize> = (2..=10).map(|l| Perversity::enumerate(l).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 8, 16, 32, 64, 128, 256]);
}

#[test]
fn manifold_betti_matches_oracle_without_subdivision() {
    for x in [c::sphere(1), c::sphere(2), c::sphere(3), c::torus()] {
        let expected = common::padded(common::simplicial_betti(x.complex()), x.dim() + 1);
        for p in Perversity::enumerate(x.dim()) {
            let c = build_intersection_complex(&x, &p, BuildOptions::no_subdivision()).unwrap();
            assert_eq!(common::padded(betti_numbers(&c).betti, x.dim() + 1), expected, "{} {p}", x.name());
        }
    }
}
