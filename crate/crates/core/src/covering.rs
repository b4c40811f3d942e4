//! Covering certificates `D ⊆ ⋃ (K + v_i)`.
//!
//! The count of translations is an upper bound on the covering number
//! `κ(D, K)`. Certificates are checked by deterministic sampling: a Halton
//! sequence over the target's interior plus points spread along its boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{difference_body, inradius, ConvexBody, ScaledBody};

/// Containment tolerance for a sample to count as covered.
pub const COVER_TOL: f64 = 1e-9;
/// Default number of interior samples.
pub const DEFAULT_SAMPLES: usize = 100_000;
/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 1_000;
const BOUNDARY_SAMPLES: usize = 1_000;
const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub target: ScaledBody,
    pub unit: ConvexBody,
    pub translations: Vec<Vec<f64>>,
    pub kappa_ub: usize,
    pub verified_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub uncovered: usize,
    /// Smallest over samples of the best covering depth; negative means a gap.
    pub worst_margin: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.uncovered == 0
    }
}

impl CoveringCertificate {
    fn assemble(target: ScaledBody, unit: ConvexBody, translations: Vec<Vec<f64>>, samples: usize) -> Result<Self> {
        let mut cert = Self { kappa_ub: translations.len(), target, unit, translations, verified_samples: 0 };
        let report = verify_certificate(&cert, samples)?;
        if !report.passed() {
            return Err(Error::CertificateRejected { uncovered: report.uncovered, worst_margin: report.worst_margin });
        }
        cert.verified_samples = report.samples;
        Ok(cert)
    }

    /// Checks that this certificate covers `C - C` by translates of `C`.
    pub fn check_difference_cover(&self, body: &ConvexBody) -> Result<()> {
        let diff = difference_body(body);
        if !self.unit.approx_eq(body, 1e-9) {
            return Err(Error::CertificateMismatch("unit body differs from the family body".into()));
        }
        if !self.target.body.approx_eq(&diff.body, 1e-9) || (self.target.scale - diff.scale).abs() > 1e-9 {
            return Err(Error::CertificateMismatch("target is not the difference body".into()));
        }
        if self.kappa_ub != self.translations.len() || self.kappa_ub == 0 {
            return Err(Error::CertificateMismatch("kappa_ub disagrees with the translations".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base as u64) as f64 * inv;
        i /= base as u64;
        inv /= b;
    }
    out
}

/// Point `index` of the Halton sequence in `[0, 1)^n`.
pub fn halton(index: u64, n: usize) -> Vec<f64> {
    PRIMES[..n].iter().map(|&p| radical_inverse(index, p)).collect()
}

/// Deterministic verification samples: `interior` Halton points inside the
/// target, then boundary points and vertices.
pub fn sample_target(target: &ScaledBody, interior: usize) -> Vec<Vec<f64>> {
    let n = target.dimension();
    let (lo, hi) = target.bounding_box();
    let mut out = Vec::with_capacity(interior + BOUNDARY_SAMPLES + 8);
    let mut index = 1u64;
    let budget = 1000 * interior as u64 + 1000;
    while out.len() < interior && index < budget {
        let u = halton(index, n);
        index += 1;
        let p: Vec<f64> = (0..n).map(|i| lo[i] + u[i] * (hi[i] - lo[i])).collect();
        if target.depth(&p) >= 0.0 {
            out.push(p);
        }
    }
    let s = target.scale;
    match &target.body {
        ConvexBody::Polygon(poly) => {
            let per = poly.perimeter();
            for k in 0..BOUNDARY_SAMPLES {
                let q = poly.boundary_point(per * k as f64 / BOUNDARY_SAMPLES as f64) * s;
                out.push(vec![q.x, q.y]);
            }
            out.extend(poly.vertices().iter().map(|v| vec![v.x * s, v.y * s]));
        }
        ConvexBody::Disk => {
            for k in 0..BOUNDARY_SAMPLES {
                let t = std::f64::consts::TAU * k as f64 / BOUNDARY_SAMPLES as f64;
                out.push(vec![s * t.cos(), s * t.sin()]);
            }
        }
        ConvexBody::Box(b) => {
            let half: Vec<f64> = b.sides().iter().map(|x| 0.5 * x * s).collect();
            for k in 0..BOUNDARY_SAMPLES {
                // Push the coordinate that is relatively farthest out onto its face.
                let u = halton(k as u64 + 1, n);
                let mut p: Vec<f64> = (0..n).map(|i| (2.0 * u[i] - 1.0) * half[i]).collect();
                let axis = (0..n)
                    .max_by(|&a, &c| (p[a] / half[a]).abs().total_cmp(&(p[c] / half[c]).abs()))
                    .unwrap_or(0);
                p[axis] = half[axis].copysign(p[axis]);
                out.push(p);
            }
            if n <= 10 {
                for mask in 0..1usize << n {
                    out.push((0..n).map(|i| if mask >> i & 1 == 1 { half[i] } else { -half[i] }).collect());
                }
            }
        }
    }
    out
}

fn cover_depth(unit: &ConvexBody, v: &[f64], p: &[f64]) -> f64 {
    let local: Vec<f64> = p.iter().zip(v).map(|(x, y)| x - y).collect();
    unit.depth(&local)
}

/// Samples the target and counts points outside every translate.
pub fn verify_certificate(cert: &CoveringCertificate, samples: usize) -> Result<VerificationReport> {
    let n = cert.target.dimension();
    if cert.unit.dimension() != n {
        return Err(Error::DimensionMismatch { expected: n, found: cert.unit.dimension() });
    }
    if let Some(v) = cert.translations.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let points = sample_target(&cert.target, samples.max(MIN_SAMPLES));
    let mut uncovered = 0;
    let mut worst = f64::INFINITY;
    for p in &points {
        let best = cert
            .translations
            .iter()
            .map(|v| cover_depth(&cert.unit, v, p))
            .fold(f64::NEG_INFINITY, f64::max);
        if best < -COVER_TOL {
            uncovered += 1;
        }
        worst = worst.min(best);
    }
    Ok(VerificationReport { samples: points.len(), uncovered, worst_margin: worst })
}

/// Known certificates for `C - C` by `C`: `2^n` orthant translates for a box,
/// the hexagonal seven-disk configuration for the disk.
pub fn known_kappa(body: &ConvexBody) -> Option<CoveringCertificate> {
    let translations: Vec<Vec<f64>> = match body {
        ConvexBody::Box(b) => {
            let n = b.dimension();
            (0..1usize << n)
                .map(|mask| {
                    (0..n)
                        .map(|i| if mask >> i & 1 == 1 { 0.5 * b.sides()[i] } else { -0.5 * b.sides()[i] })
                        .collect()
                })
                .collect()
        }
        ConvexBody::Disk => {
            let r = 3f64.sqrt();
            std::iter::once(vec![0.0, 0.0])
                .chain((0..6).map(|i| {
                    let t = std::f64::consts::FRAC_PI_3 * i as f64;
                    vec![r * t.cos(), r * t.sin()]
                }))
                .collect()
        }
        ConvexBody::Polygon(_) => return None,
    };
    Some(CoveringCertificate {
        target: difference_body(body),
        unit: body.clone(),
        kappa_ub: translations.len(),
        translations,
        verified_samples: 0,
    })
}

/// Default lattice step: half the unit body's inradius.
pub fn default_step(unit: &ConvexBody) -> f64 {
    0.5 * inradius(unit).1
}

/// Greedy lattice covering of `target` by translates of `unit`.
///
/// Translates are placed with their incentre on the lattice
/// `lo + (i + 1/2) * step` over the target's bounding box; those covering no
/// sample are dropped, then the rest are pruned farthest-from-centroid first
/// whenever every sample stays covered.
pub fn cover_by_translates(
    target: &ScaledBody,
    unit: &ConvexBody,
    step: Option<f64>,
    samples: usize,
) -> Result<CoveringCertificate> {
    let n = target.dimension();
    if unit.dimension() != n {
        return Err(Error::DimensionMismatch { expected: n, found: unit.dimension() });
    }
    let step = step.unwrap_or_else(|| default_step(unit));
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidPlacement(format!("lattice step {step} is not positive")));
    }
    let (lo, hi) = target.bounding_box();
    let counts: Vec<usize> = (0..n).map(|i| (((hi[i] - lo[i]) / step).ceil() as usize).max(1)).collect();
    let total: usize = counts.iter().product();
    if total > 200_000 {
        return Err(Error::InvalidPlacement(format!("lattice step {step} gives {total} translates")));
    }
    let (incenter, _) = inradius(unit);
    let mut lattice = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rest = flat;
        let v: Vec<f64> = (0..n)
            .map(|i| {
                let k = rest % counts[i];
                rest /= counts[i];
                lo[i] + (k as f64 + 0.5) * step - incenter[i]
            })
            .collect();
        lattice.push(v);
    }

    let points = sample_target(target, samples.max(MIN_SAMPLES));
    let covers: Vec<Vec<u32>> = lattice
        .iter()
        .map(|v| {
            (0..points.len() as u32)
                .filter(|&s| cover_depth(unit, v, &points[s as usize]) >= -COVER_TOL)
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..lattice.len()).filter(|&t| !covers[t].is_empty()).collect();
    let mut depth = vec![0u32; points.len()];
    for &t in &live {
        for &s in &covers[t] {
            depth[s as usize] += 1;
        }
    }
    let uncovered = depth.iter().filter(|&&d| d == 0).count();
    if uncovered > 0 {
        return Err(Error::CertificateRejected { uncovered, worst_margin: f64::NAN });
    }

    let centroid = target.centroid();
    let dist = |v: &[f64]| -> f64 {
        v.iter().zip(&incenter).zip(&centroid).map(|((x, c0), c)| (x + c0 - c).powi(2)).sum::<f64>()
    };
    let mut order = live.clone();
    order.sort_by(|&a, &b| dist(&lattice[b]).total_cmp(&dist(&lattice[a])).then(a.cmp(&b)));
    for t in order {
        if covers[t].iter().all(|&s| depth[s as usize] >= 2) {
            for &s in &covers[t] {
                depth[s as usize] -= 1;
            }
            live.retain(|&x| x != t);
        }
    }
    let translations = live.into_iter().map(|t| lattice[t].clone()).collect();
    CoveringCertificate::assemble(target.clone(), unit.clone(), translations, samples)
}

/// Certificate for `κ(C - C, C)`: the known configuration when available,
/// otherwise a greedy lattice cover.
pub fn difference_certificate(body: &ConvexBody, samples: usize) -> Result<CoveringCertificate> {
    match known_kappa(body) {
        Some(cert) => {
            let translations = cert.translations.clone();
            CoveringCertificate::assemble(cert.target, cert.unit, translations, samples)
        }
        None => cover_by_translates(&difference_body(body), body, None, samples),
    }
}

/// Reference ceiling `3^{n+1} 2^n (n+1)^{-1} θ` for `κ(C - C, C)`, with the
/// covering density proxy `θ = n + 1`. Reported only, never asserted.
pub fn reference_ceiling(n: usize) -> f64 {
    3f64.powi(n as i32 + 1) * 2f64.powi(n as i32)
}
