//! X versus X × (0,1), ordinary and Borel-Moore.

use ihom::chains::BuildOptions;
use ihom::harness::{check_product_lemmas, product_corpus};
use ihom::Perversity;

fn main() -> ihom::Result<()> {
    let opts = BuildOptions::default();
    for x in product_corpus() {
        for p in Perversity::enumerate(x.dim() + 1) {
            for r in check_product_lemmas(&x, &p, opts)? {
                print!("{r}");
            }
        }
    }
    Ok(())
}
