//! Driving the command line from code: write the bundled instances to a
//! temporary directory and run a few commands on them.
//!
//! cargo run --example command_line

use goodset::cli;

pub fn main() -> goodset::Result<()> {
    let dir = std::env::temp_dir().join(format!("goodset-example-{}", std::process::id()));
    cli::emit_examples(&dir)?;
    let file = |name: &str| dir.join(name).to_string_lossy().into_owned();
    for args in [
        vec!["check-good".to_string(), file("e5plus.json")],
        vec!["geodesic".into(), file("t4.json"), "--from".into(), "0".into(), "--to".into(), "3".into()],
        vec!["solve".into(), file("ex10_depth2.json"), "--method".into(), "geodesic".into(), "--human".into()],
    ] {
        let out = cli::run(std::iter::once("goodset".to_string()).chain(args));
        print!("{}", out.stdout);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
