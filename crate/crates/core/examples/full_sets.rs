//! Full sets: the deficiency test, closure within the projections, the
//! split into two full pieces, and maximal extension in the whole product.
//!
//! cargo run --example full_sets

use std::sync::Arc;

use goodset::catalog;
use goodset::goodness::{extend_to_maximal, full_closure, is_full, is_full_definitional, full_split};
use goodset::model::{PointSet, Space};

pub fn main() -> goodset::Result<()> {
    for inst in [catalog::t4(), catalog::e5(), catalog::ex08()] {
        let s = &inst.set;
        println!(
            "{:<6} deficiency {} full {} (span check {})",
            inst.name,
            s.deficiency()?,
            is_full(s)?,
            is_full_definitional(s)?
        );
    }

    let space = Arc::new(Space::uniform(3, &["0", "1"])?);
    let diagonal = PointSet::from_labels(space, &[vec!["0", "0", "0"], vec!["1", "1", "1"]])?;
    println!("diagonal   {}", diagonal.format());
    println!("closure    {}", full_closure(&diagonal)?.format());
    let f = full_split(&diagonal)?;
    println!("split F    {}", f.format());
    println!("F minus S  {} (full: {})", f.difference(&diagonal)?.format(), is_full(&f.difference(&diagonal)?)?);
    println!("maximal    {}", extend_to_maximal(&diagonal)?.format());
    Ok(())
}
