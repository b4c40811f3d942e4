//! First-fit colouring and piercing-based clique partition of random homothets.
//!
//! `cargo run --example homothet_coloring -- square 30 5`

use convex_chroma::cli::parse_body;
use convex_chroma::constructions::{random_family, RandomSpec};
use convex_chroma::covering::difference_certificate;
use convex_chroma::graph::{Caps, IntersectionGraph, GraphInvariants};
use convex_chroma::homothet::{clique_partition_homothets, color_homothets};

fn main() -> convex_chroma::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let body = parse_body(args.first().map_or("square", String::as_str))?;
    let count = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    let seed = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(3);

    let family = random_family(&RandomSpec { body: body.clone(), count, window: (0.0, 8.0), scales: (1.0, 3.0), seed })?;
    let cert = difference_certificate(&body, 20_000)?;
    println!("covering certificate: kappa <= {}", cert.kappa_ub);

    let caps = Caps::default();
    let inv = GraphInvariants::compute(&IntersectionGraph::build(&family)?, caps)?;
    let coloring = color_homothets(&family, &cert, caps)?;
    println!(
        "colouring: {} colours (chi {:?}), bound kappa(omega-1)+1 = {}, max back degree {:?}",
        coloring.colors_used,
        inv.chi.exact(),
        coloring.bound_value,
        coloring.max_back_degree
    );

    let partition = clique_partition_homothets(&family, &cert, caps)?;
    println!(
        "clique partition: {} classes (theta {:?}) in {} rounds, bound {}",
        partition.report.classes_used,
        inv.theta.exact(),
        partition.rounds.len(),
        partition.report.bound_value
    );
    for (i, round) in partition.rounds.iter().enumerate() {
        println!(
            "  round {i}: smallest #{} meets {} members, {} piercing points{}",
            round.representative,
            round.members.len(),
            round.piercing.point_count(),
            if round.single_clique { " (one clique)" } else { "" }
        );
    }
    Ok(())
}
