//! Grid families of translates: clique number, clique cover and density.
//!
//! `cargo run --example grid_family -- 3`

use convex_chroma::constructions::{density, grid_family, volume_ratio_bounds};
use convex_chroma::geometry::ConvexBody;
use convex_chroma::graph::Caps;

fn main() -> convex_chroma::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    for (name, body) in [("square", ConvexBody::unit_square()), ("disk", ConvexBody::Disk), ("triangle", ConvexBody::right_triangle())] {
        let family = grid_family(&body, m)?;
        let ratio = volume_ratio_bounds(&family, Caps::default())?;
        let rho = density(&family, &[0.0, 0.0], &[1.0, 1.0])?.rho;
        println!(
            "{name:9} m={m}: {} members, omega {}, theta {:?} >= {:.2}, density on [0,1]^2 {:.3}",
            ratio.members, ratio.s_m, ratio.theta, ratio.bound, rho
        );
    }
    Ok(())
}
