//! Geodesics and related components. In T4 every two points are joined only
//! by the whole set.
//!
//! cargo run --example geodesics

use goodset::catalog;
use goodset::structure::{geodesic, related_components};

pub fn main() -> goodset::Result<()> {
    let t4 = catalog::t4().set;
    let pts = t4.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let g = geodesic(&t4, &pts[i], &pts[j])?.expect("T4 is full");
            println!(
                "{} -> {}: length {}",
                t4.space().format_point(&pts[i]),
                t4.space().format_point(&pts[j]),
                g.length()
            );
        }
    }

    for inst in [catalog::ex07(), catalog::ex10(3)] {
        let p = related_components(&inst.set)?;
        println!("{}: {} related component(s)", inst.name, p.len());
        for c in &p.components {
            println!("  {}", c.format());
        }
    }
    Ok(())
}
