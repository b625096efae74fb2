//! Boundary sets: E_i classes, one relation per related component, and the
//! free generators of the eliminated system.
//!
//! cargo run --example boundary

use goodset::catalog;
use goodset::model::{int, FunctionTable, PinSet};
use goodset::solver::solve_with_boundary;
use goodset::structure::{boundary, is_boundary};

pub fn main() -> goodset::Result<()> {
    for inst in [catalog::t4(), catalog::ex07(), catalog::ex08()] {
        let s = &inst.set;
        let b = boundary(s)?;
        let coords: Vec<String> = b.boundary.iter().map(|c| s.space().format_coordinate(c)).collect();
        println!(
            "{:<5} components {} generators {} boundary {{{}}}",
            inst.name,
            b.components.len(),
            b.generators.len(),
            coords.join(", ")
        );
        assert!(is_boundary(s, &b.boundary)?);

        // arbitrary values on the boundary fix the solution
        let pins: PinSet = b
            .boundary
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, int(i as i64 + 1)))
            .collect();
        let f = FunctionTable::from_fn(s, |_| int(10));
        let r = solve_with_boundary(s, &f, &pins)?;
        println!("      solve with boundary values: {}", r.verdict.as_str());
    }
    Ok(())
}
