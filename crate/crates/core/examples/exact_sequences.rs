//! Long exact sequences of (X, ∂X) and of an open subset, with connecting
//! maps, checked node by node.

use ihom::chains::BuildOptions;
use ihom::constructions::outer_pinched_solid;
use ihom::harness::{check_negative_control, check_pair_sequence, open_pair_corpus, PairVariant};
use ihom::{Perversity, SpacePair};

fn main() -> ihom::Result<()> {
    let opts = BuildOptions::default();
    let x = outer_pinched_solid();
    let p = Perversity::top(3);
    let pair = SpacePair::compact(x.clone());
    for r in check_pair_sequence(&pair, &p, &PairVariant::BoundaryPair, opts)? {
        print!("{r}");
    }

    for (x, w) in open_pair_corpus() {
        let pair = SpacePair::compact(x);
        for r in check_pair_sequence(&pair, &Perversity::zero(3), &PairVariant::OpenPair(w), opts)? {
            print!("{r}");
        }
    }

    // corrupt one map and expect a witness
    print!("{}", check_negative_control(&x, &p, opts)?);
    Ok(())
}
