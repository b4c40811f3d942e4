//! Colour and clique-partition random translates with the line decomposition.
//!
//! `cargo run --example translate_coloring -- disk 30 7`

use convex_chroma::cli::parse_body;
use convex_chroma::constructions::{random_family, RandomSpec};
use convex_chroma::graph::{chromatic_number, clique_cover_number, max_clique, verify_coloring, Caps, IntersectionGraph};
use convex_chroma::translate::analyze;

fn main() -> convex_chroma::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let body = parse_body(args.first().map_or("triangle", String::as_str))?;
    let count = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    let seed = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(1);

    let family = random_family(&RandomSpec::translates(body, count, (0.0, 6.0), seed))?;
    let analysis = analyze(&family, seed)?;
    let p = &analysis.normalization.params;
    println!("r = {:.6}, M = {}, c = {}, t = {}", p.r, p.m, p.c, p.t_bound);

    let g = IntersectionGraph::build(&family)?;
    let caps = Caps::default();
    let coloring = analysis.coloring();
    println!(
        "colouring: {} colours, proper {}, bound t*omega = {}, chi = {:?}, omega = {:?}",
        coloring.colors_used,
        verify_coloring(&g, &coloring.colors)?,
        coloring.bound_value,
        chromatic_number(&g, caps).exact(),
        max_clique(&g, caps).exact()
    );
    let partition = analysis.clique_partition();
    println!(
        "clique partition: {} classes, bound t*nu = {}, theta = {:?}",
        partition.classes_used,
        partition.bound_value,
        clique_cover_number(&g, caps).exact()
    );
    for class in analysis.classes.iter().filter(|c| c.poset.len() > 1).take(5) {
        println!(
            "  line {:?} block {:?}: {} members, {} chains, {} antichains",
            class.line_key,
            class.block,
            class.poset.len(),
            class.chains.len(),
            class.antichains.len()
        );
    }
    Ok(())
}
