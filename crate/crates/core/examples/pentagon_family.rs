//! Five translates of a square whose graph is a 5-cycle, blown up `k` times.
//!
//! `cargo run --example pentagon_family -- 3`

use convex_chroma::constructions::{explicit_pentagon_coloring, pentagon_disjoint_family, pentagon_family};
use convex_chroma::graph::{verify_coloring, Caps, GraphInvariants, IntersectionGraph};

fn main() -> convex_chroma::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let family = pentagon_family(k)?;
    let g = IntersectionGraph::build(&family)?;
    let inv = GraphInvariants::compute(&g, Caps::default())?;
    println!("pentagon k={k}: {} members, {} edges", family.len(), g.edge_count());
    println!(
        "  omega={:?} chi={:?} nu={:?} theta={:?}",
        inv.omega.exact(),
        inv.chi.exact(),
        inv.alpha.exact(),
        inv.theta.exact()
    );
    println!("  chi/omega = {}/{} (ceil(5k/2) = {})", inv.chi.lower(), inv.omega.lower(), (5 * k).div_ceil(2));

    let colors = explicit_pentagon_coloring(k);
    println!("  explicit colouring proper: {}", verify_coloring(&g, &colors)?);

    let disjoint = pentagon_disjoint_family(k)?;
    let gd = IntersectionGraph::build(&disjoint)?;
    let inv = GraphInvariants::compute(&gd, Caps::default())?;
    println!(
        "{k} disjoint pentagons: nu={:?} theta={:?}",
        inv.alpha.exact(),
        inv.theta.exact()
    );
    Ok(())
}
