//! Goodness by rank, and the loop certifying a set that is not good.
//!
//! cargo run --example goodness_and_loops

use goodset::catalog;
use goodset::goodness::is_good;

pub fn main() -> goodset::Result<()> {
    for inst in [catalog::e5(), catalog::e5plus(), catalog::ex07(), catalog::rectangle()] {
        let s = &inst.set;
        let verdict = is_good(s)?;
        println!("{:<10} {}", inst.name, s.format());
        match verdict.certificate {
            None => println!("           good"),
            Some(l) => {
                let terms: Vec<String> = l
                    .points
                    .iter()
                    .zip(&l.coefficients)
                    .map(|(p, k)| format!("{k:+}{}", s.space().format_point(p)))
                    .collect();
                println!("           not good, loop {}", terms.join(" "));
                assert!(l.verify());
            }
        }
    }
    Ok(())
}
