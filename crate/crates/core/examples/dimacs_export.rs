//! Write an intersection graph in DIMACS edge format and read it back.
//!
//! `cargo run --example dimacs_export`

use convex_chroma::constructions::pentagon_family;
use convex_chroma::graph::{from_dimacs, to_dimacs, IntersectionGraph};

fn main() -> convex_chroma::Result<()> {
    let family = pentagon_family(1)?;
    let g = IntersectionGraph::build(&family)?;
    let text = to_dimacs(&g);
    print!("{text}");
    let back = from_dimacs(&text)?;
    assert_eq!(back.edges(), g.edges());
    assert_eq!(back.family_ref(), family.digest());
    Ok(())
}
