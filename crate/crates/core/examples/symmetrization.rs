//! Translates of `C` and of `(C - C) / 2` share their intersection graph.
//!
//! `cargo run --example symmetrization`

use convex_chroma::constructions::{random_family, RandomSpec};
use convex_chroma::geometry::ConvexBody;
use convex_chroma::graph::{Caps, IntersectionGraph};
use convex_chroma::homothet::{color_translates_symmetrized, symmetrized_family};

fn main() -> convex_chroma::Result<()> {
    let triangle = ConvexBody::right_triangle();
    println!("C area {:.4}, symmetral area {:.4}", triangle.area(), triangle.symmetrize().area());
    for seed in 0..5 {
        let family = random_family(&RandomSpec::translates(triangle.clone(), 30, (0.0, 6.0), seed))?;
        let sym = symmetrized_family(&family)?;
        let same = IntersectionGraph::build(&family)?.edges() == IntersectionGraph::build(&sym)?.edges();
        let report = color_translates_symmetrized(&family, Caps::default(), 20_000)?;
        println!(
            "seed {seed}: same graph {same}, {} colours, bound {} (kappa {})",
            report.colors_used, report.bound_value, report.factor
        );
    }
    Ok(())
}
