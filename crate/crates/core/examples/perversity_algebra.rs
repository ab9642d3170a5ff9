//! Perversities, complements and boundary perversities.

use ihom::Perversity;

fn main() -> ihom::Result<()> {
    for l in 2..=6 {
        let all = Perversity::enumerate(l);
        println!("l = {l}: {} perversities", all.len());
        for p in &all {
            let boundary = if l >= 3 { p.boundary()?.label() } else { "-".into() };
            println!("  p = {:<12} q = {:<12} p̌ = {boundary}", p.label(), p.complement().label());
        }
    }

    let p = Perversity::parse("0,0,1,1", 5)?;
    println!("{p} truncated to 3: {}", p.truncate(3)?);
    Ok(())
}
