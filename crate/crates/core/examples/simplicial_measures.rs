//! A measure is extreme among those with its marginals exactly when its
//! support is good. Otherwise a loop gives two measures with the same
//! marginals.
//!
//! cargo run --example simplicial_measures

use goodset::catalog;
use goodset::measures::{is_simplicial, marginals, FiniteMeasure};

pub fn main() -> goodset::Result<()> {
    for inst in [catalog::t4(), catalog::rectangle(), catalog::e5plus()] {
        let m = FiniteMeasure::uniform(inst.set.clone())?;
        let v = is_simplicial(&m)?;
        println!("{:<10} simplicial {}", inst.name, v.simplicial);
        if let Some(c) = v.certificate {
            println!("           epsilon {} coefficients {:?}", c.epsilon, c.cycle.coefficients);
            for sign in [1, -1] {
                let w: Vec<String> = c.apply(&m, sign).iter().map(|(_, x)| x.to_string()).collect();
                println!("           {:+} [{}]", sign, w.join(", "));
            }
            assert!(c.verify(&m));
        }
        let mv = marginals(&m);
        for (i, axis) in mv.axes.iter().enumerate() {
            let parts: Vec<String> = axis
                .iter()
                .map(|(v, x)| format!("{}={x}", inst.set.space().axes()[i].label(*v)))
                .collect();
            println!("           axis {i}: {}", parts.join(" "));
        }
    }
    Ok(())
}
