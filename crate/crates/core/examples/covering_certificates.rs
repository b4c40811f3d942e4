//! Coverings of `C - C` by translates of `C`, checked on low-discrepancy samples.
//!
//! `cargo run --example covering_certificates`

use convex_chroma::covering::{difference_certificate, known_kappa, reference_ceiling, verify_certificate};
use convex_chroma::geometry::ConvexBody;

fn main() -> convex_chroma::Result<()> {
    let bodies = [
        ("square", ConvexBody::unit_square()),
        ("disk", ConvexBody::Disk),
        ("triangle", ConvexBody::right_triangle()),
        ("pentagon", ConvexBody::polygon((0..5).map(|i| {
            let a = std::f64::consts::FRAC_PI_2 + i as f64 * 2.0 * std::f64::consts::PI / 5.0;
            [a.cos(), a.sin()]
        }))?),
        ("cube", ConvexBody::unit_cube(3)),
    ];
    for (name, body) in bodies {
        let known = known_kappa(&body).map(|c| c.kappa_ub);
        let cert = difference_certificate(&body, 50_000)?;
        let check = verify_certificate(&cert, 50_000)?;
        println!(
            "{name:9} kappa <= {:3} (closed form {:?}, ceiling {}), {} samples, worst margin {:.2e}",
            cert.kappa_ub,
            known,
            reference_ceiling(body.dimension()),
            check.samples,
            check.worst_margin
        );
    }
    Ok(())
}
