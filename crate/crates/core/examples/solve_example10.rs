//! The unbounded solution: `u + v + w` equal to the indicator of the first
//! point, with `u(x_0) = v(y_0) = 0`, doubles at every step.
//!
//! cargo run --example solve_example10 [depth]

use goodset::catalog;
use goodset::model::{Coordinate, FunctionTable};
use goodset::solver::{solve_direct, solve_via_geodesics};

pub fn main() -> goodset::Result<()> {
    let depth = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);
    let inst = catalog::ex10(depth);
    let s = &inst.set;
    let f = inst.f.clone().unwrap_or_else(|| FunctionTable::zero(s));
    let direct = solve_direct(s, &f, &inst.pins)?;
    let d = direct.decomposition.expect("unique");
    println!("{:>3} {:>8} {:>8} {:>8}", "n", "U(x_n)", "V(y_n)", "W(z_n)");
    for m in 0..=depth {
        let at = |axis| d.get(Coordinate::new(axis, m)).map(|v| v.to_string()).unwrap_or_default();
        println!("{m:>3} {:>8} {:>8} {:>8}", at(0), at(1), at(2));
    }

    let via = solve_via_geodesics(s, &f, &s.points()[0])?;
    assert_eq!(via.decomposition.as_ref(), Some(&d));
    println!(
        "geodesic method agrees; longest geodesic {}",
        via.diagnostics.max_geodesic_length.unwrap_or(0)
    );
    Ok(())
}
