//! Intersection homology of the solid torus with two boundary longitudes
//! pinched to points.
//!
//! Run with `cargo run --release --example pinched_solid`.

use std::time::Instant;

use ihom::chains::{build_intersection_complex, build_relative_complex, BuildOptions};
use ihom::constructions::outer_pinched_solid;
use ihom::homology::{betti_numbers, homology_basis};
use ihom::Perversity;

fn main() -> ihom::Result<()> {
    let x = outer_pinched_solid();
    println!("{}: f-vector {:?}", x.name(), x.complex().f_vector());
    print!("{}", x.validate());

    let start = Instant::now();
    let opts = BuildOptions::default();
    let zero = build_intersection_complex(&x, &Perversity::zero(3), opts)?;
    println!("subdivided f-vector {:?}", zero.ambient().f_vector());
    let h0 = betti_numbers(&zero);
    println!("I^0H(X)      = {:?}", h0.betti);

    let rel = build_relative_complex(&x, &Perversity::top(3), opts)?;
    let ht = betti_numbers(&rel);
    println!("I^tH(X; ∂X)  = {:?}", ht.betti);

    let sphere = homology_basis(&zero, 2);
    if let Some(c) = sphere.first() {
        println!("I^0H_2 generator: cycle with {} triangles", c.len());
    }
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
