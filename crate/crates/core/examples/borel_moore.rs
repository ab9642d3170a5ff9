//! Borel-Moore intersection homology of open spaces, computed through the
//! one-point compactification, and the collared pair sequence.

use ihom::chains::{build_bm_complex, build_open_complex, BuildOptions};
use ihom::constructions::{circle_cylinder_pair, interval_pair, point, sphere};
use ihom::harness::{check_pair_sequence, collared_product, PairVariant};
use ihom::homology::betti_numbers;
use ihom::Perversity;

fn main() -> ihom::Result<()> {
    let opts = BuildOptions::default();
    for pair in [interval_pair(), circle_cylinder_pair()] {
        let p = Perversity::zero(pair.space().dim());
        let bm = betti_numbers(&build_bm_complex(&pair, &p, opts)?);
        let ordinary = betti_numbers(&build_open_complex(&pair, &p, opts)?);
        println!("{}: BM {:?}, ordinary {:?}", pair.name(), bm.betti, ordinary.betti);
    }

    for x in [point(), sphere(1)] {
        let (pair, collar) = collared_product(&x);
        let p = Perversity::zero(pair.space().dim());
        for r in check_pair_sequence(&pair, &p, &PairVariant::BmRelative(Some(collar)), opts)? {
            print!("{r}");
        }
    }
    Ok(())
}
