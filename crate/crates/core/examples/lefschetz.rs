//! Lefschetz duality on the catalog ∂-pseudomanifolds and Poincaré duality
//! on their doubles.

use ihom::chains::BuildOptions;
use ihom::constructions::double;
use ihom::harness::{boundary_corpus, check_lefschetz, check_poincare};
use ihom::Perversity;

fn main() -> ihom::Result<()> {
    let opts = BuildOptions::default();
    for x in boundary_corpus() {
        let d = double(&x)?;
        for p in Perversity::enumerate(x.dim()) {
            print!("{}", check_lefschetz(&x, &p, opts)?);
            print!("{}", check_poincare(&d, &p, opts)?);
        }
    }
    Ok(())
}
