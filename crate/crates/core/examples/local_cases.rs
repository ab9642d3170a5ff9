//! Local groups at the pinch points of the pinched solid torus.

use ihom::chains::BuildOptions;
use ihom::constructions::outer_pinched_solid;
use ihom::harness::{check_local_cases, local_groups};
use ihom::Perversity;

fn main() -> ihom::Result<()> {
    let x = outer_pinched_solid();
    let opts = BuildOptions::default();
    for v in [9, 10] {
        for p in Perversity::enumerate(3) {
            let g = local_groups(&x, v, &p, opts)?;
            println!("vertex {v}, p = {}", p.label());
            println!("  star {:?}  punctured {:?}", g.star, g.punctured);
            println!("  star rel ∂ {:?}  punctured rel ∂ {:?}", g.star_rel, g.punctured_rel);
            println!("  star BM {:?}", g.star_bm);
            for r in check_local_cases(&x, v, &p, opts)? {
                print!("{r}");
            }
        }
    }
    Ok(())
}
