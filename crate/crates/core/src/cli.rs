//! Commands behind the `convex-chroma` binary, usable directly as a library.
//!
//! Every command returns a [`RunReport`] whose JSON encoding is a pure function
//! of the inputs (wall time is only recorded on request), together with the
//! exit code it maps to.

use std::collections::BTreeSet;
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::constructions::{grid_family, pentagon_disjoint_family, pentagon_family, random_family, RandomSpec};
use crate::covering::{difference_certificate, CoveringCertificate};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::geometry::{ConvexBody, Placement};
use crate::graph::{
    to_dimacs, verify_clique_partition, verify_coloring, Caps, GraphInvariants, IntersectionGraph,
};
use crate::homothet::{
    clique_partition_homothets, color_homothets, color_translates_symmetrized_with, symmetrized_family,
};
use crate::report::{ColoringReport, PartitionReport};
use crate::translate::{clique_partition_translates, color_translates};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// Exit code for an error raised before a report exists.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

/// Parses `square`, `disk`, `triangle`, `cube:<n>`, `box:<s1,s2,..>` or an
/// inline body JSON object.
pub fn parse_body(text: &str) -> Result<ConvexBody> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    let bad = || Error::Parse(format!("unknown body `{text}`"));
    match text.split_once(':') {
        None => match text {
            "square" => Ok(ConvexBody::unit_square()),
            "disk" => Ok(ConvexBody::Disk),
            "triangle" => Ok(ConvexBody::right_triangle()),
            _ => Err(bad()),
        },
        Some(("cube", n)) => Ok(ConvexBody::unit_cube(n.parse().map_err(|_| bad())?)),
        Some(("box", sides)) => ConvexBody::boxed(parse_list(sides)?),
        Some(_) => Err(bad()),
    }
}

/// Comma-separated numbers.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("`{x}` is not a number"))))
        .collect()
}

/// A construction name and its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Pentagon { k: usize },
    PentagonDisjoint { k: usize },
    Grid { body: ConvexBody, m: usize },
    Random(RandomSpec),
}

pub fn cmd_generate(construction: &Construction) -> Result<Family> {
    match construction {
        Construction::Pentagon { k } => pentagon_family(*k),
        Construction::PentagonDisjoint { k } => pentagon_disjoint_family(*k),
        Construction::Grid { body, m } => grid_family(body, *m),
        Construction::Random(spec) => random_family(spec),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Translates,
    Homothets,
    Symmetrized,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "translates" => Ok(Method::Translates),
            "homothets" => Ok(Method::Homothets),
            "symmetrized" => Ok(Method::Symmetrized),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

/// Settings shared by the analysis commands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub samples: usize,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, caps: Caps::default(), samples: crate::covering::DEFAULT_SAMPLES, timing: false }
    }
}

/// One checked inequality or property.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub input_digest: String,
    pub seed: u64,
    pub members: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracles: Option<GraphInvariants>,
    pub colorings: Vec<ColoringReport>,
    pub partitions: Vec<PartitionReport>,
    pub checks: Vec<Check>,
    pub capped: bool,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    fn new(command: &str, method: Option<Method>, family: &Family, cfg: &RunConfig) -> Self {
        Self {
            command: command.into(),
            method,
            input_digest: family.digest(),
            seed: cfg.seed,
            members: family.len(),
            oracles: None,
            colorings: Vec::new(),
            partitions: Vec::new(),
            checks: Vec::new(),
            capped: false,
            exit_code: EXIT_OK,
            wall_time_ms: None,
        }
    }

    fn check(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), holds, detail: detail.into() });
    }

    fn finish(mut self, started: Instant, cfg: &RunConfig) -> Self {
        self.exit_code = if self.checks.iter().any(|c| !c.holds && c.name == "claimed_adjacency") {
            EXIT_INPUT
        } else if self.checks.iter().any(|c| !c.holds) {
            EXIT_BOUND
        } else if self.capped {
            EXIT_CAP
        } else {
            EXIT_OK
        };
        if cfg.timing {
            self.wall_time_ms = Some(started.elapsed().as_millis());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_OK
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn oracles(report: &mut RunReport, g: &IntersectionGraph, caps: Caps) -> Result<()> {
    let inv = GraphInvariants::compute(g, caps)?;
    report.capped = [&inv.omega, &inv.alpha, &inv.chi, &inv.theta].iter().any(|s| s.is_capped());
    if let (Some(o), Some(c)) = (inv.omega.exact(), inv.chi.exact()) {
        report.check("omega<=chi", o <= c, format!("{o} <= {c}"));
    }
    if let (Some(a), Some(t)) = (inv.alpha.exact(), inv.theta.exact()) {
        report.check("nu<=theta", a <= t, format!("{a} <= {t}"));
    }
    report.oracles = Some(inv);
    Ok(())
}

fn check_coloring(report: &mut RunReport, g: &IntersectionGraph, c: &ColoringReport) -> Result<()> {
    let m = &c.method;
    report.check(format!("{m}:proper"), verify_coloring(g, &c.colors)?, format!("{} colours", c.colors_used));
    if let Some(chi) = report.oracles.as_ref().and_then(|o| o.chi.exact()) {
        report.check(format!("{m}:chi<=colors"), chi <= c.colors_used, format!("{chi} <= {}", c.colors_used));
    }
    report.check(
        format!("{m}:colors<=bound"),
        c.within_bound(),
        format!("{} <= {} (factor {}, omega {})", c.colors_used, c.bound_value, c.factor, c.omega_used),
    );
    if let Some(same) = c.graph_matches {
        report.check(format!("{m}:same_graph"), same, "symmetral graph equals the original");
    }
    Ok(())
}

fn check_partition(report: &mut RunReport, g: &IntersectionGraph, p: &PartitionReport) -> Result<()> {
    let m = &p.method;
    report.check(format!("{m}:cliques"), verify_clique_partition(g, &p.classes)?, format!("{} classes", p.classes_used));
    if let Some(theta) = report.oracles.as_ref().and_then(|o| o.theta.exact()) {
        report.check(format!("{m}:theta<=classes"), theta <= p.classes_used, format!("{theta} <= {}", p.classes_used));
        if let Some(tau) = p.piercing_count {
            report.check(format!("{m}:theta<=piercing"), theta <= tau, format!("{theta} <= {tau}"));
        }
    }
    report.check(
        format!("{m}:classes<=bound"),
        p.within_bound(),
        format!("{} <= {} (factor {}, nu {})", p.classes_used, p.bound_value, p.factor, p.nu_used),
    );
    Ok(())
}

/// Difference-body certificates are pure functions of body and sample count,
/// so they are built once per process.
pub fn certificate(body: &ConvexBody, samples: usize) -> Result<CoveringCertificate> {
    static CACHE: Mutex<Vec<(ConvexBody, usize, CoveringCertificate)>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((_, _, cert)) = cache.iter().find(|(b, s, _)| b == body && *s == samples) {
        return Ok(cert.clone());
    }
    let cert = difference_certificate(body, samples)?;
    cache.push((body.clone(), samples, cert.clone()));
    Ok(cert)
}

fn run_coloring(family: &Family, method: Method, cfg: &RunConfig) -> Result<ColoringReport> {
    match method {
        Method::Translates => color_translates(family, cfg.seed),
        Method::Homothets => color_homothets(family, &certificate(&family.body, cfg.samples)?, cfg.caps),
        Method::Symmetrized => {
            let sym = symmetrized_family(family)?;
            color_translates_symmetrized_with(family, &sym, &certificate(&sym.body, cfg.samples)?, cfg.caps)
        }
    }
}

fn run_partition(family: &Family, method: Method, cfg: &RunConfig) -> Result<PartitionReport> {
    match method {
        Method::Translates => clique_partition_translates(family, cfg.seed),
        Method::Homothets => {
            let cert = certificate(&family.body, cfg.samples)?;
            Ok(clique_partition_homothets(family, &cert, cfg.caps)?.report)
        }
        Method::Symmetrized => Err(Error::Parse("clique partitions support translates and homothets".into())),
    }
}

pub fn cmd_color(family: &Family, method: Method, cfg: &RunConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut report = RunReport::new("color", Some(method), family, cfg);
    let coloring = run_coloring(family, method, cfg)?;
    let g = IntersectionGraph::build(family)?;
    oracles(&mut report, &g, cfg.caps)?;
    check_coloring(&mut report, &g, &coloring)?;
    report.colorings.push(coloring);
    Ok(report.finish(started, cfg))
}

pub fn cmd_partition(family: &Family, method: Method, cfg: &RunConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut report = RunReport::new("partition", Some(method), family, cfg);
    if family.is_empty() {
        return Ok(report.finish(started, cfg));
    }
    let partition = run_partition(family, method, cfg)?;
    let g = IntersectionGraph::build(family)?;
    oracles(&mut report, &g, cfg.caps)?;
    check_partition(&mut report, &g, &partition)?;
    report.partitions.push(partition);
    Ok(report.finish(started, cfg))
}

/// Runs every applicable algorithm and oracle and checks the inequality chain.
pub fn cmd_verify(family: &Family, cfg: &RunConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut report = RunReport::new("verify", None, family, cfg);
    let g = IntersectionGraph::build(family)?;
    if let Some(claimed) = &family.claimed_edges {
        let claimed: BTreeSet<(usize, usize)> = claimed.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
        let actual: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
        let missing: Vec<_> = actual.difference(&claimed).collect();
        let extra: Vec<_> = claimed.difference(&actual).collect();
        report.check(
            "claimed_adjacency",
            missing.is_empty() && extra.is_empty(),
            format!("unclaimed edges {missing:?}; claimed non-edges {extra:?}"),
        );
    }
    oracles(&mut report, &g, cfg.caps)?;
    if family.is_empty() {
        return Ok(report.finish(started, cfg));
    }
    let mut methods = vec![Method::Homothets];
    if family.is_translate_family() {
        methods = vec![Method::Translates, Method::Symmetrized, Method::Homothets];
    }
    for method in methods {
        let coloring = run_coloring(family, method, cfg)?;
        check_coloring(&mut report, &g, &coloring)?;
        report.colorings.push(coloring);
        if method != Method::Symmetrized {
            let partition = run_partition(family, method, cfg)?;
            check_partition(&mut report, &g, &partition)?;
            report.partitions.push(partition);
        }
    }
    Ok(report.finish(started, cfg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dimacs,
    Svg,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" => Ok(ExportFormat::Dimacs),
            "svg" => Ok(ExportFormat::Svg),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::Parse(format!("unknown export format `{other}`"))),
        }
    }
}

/// Reads a colouring given as a JSON array or as any report with a `colors` field.
pub fn parse_coloring(text: &str) -> Result<Vec<usize>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let colors = match &value {
        serde_json::Value::Array(_) => value,
        _ => value
            .get("colors")
            .or_else(|| value.pointer("/colorings/0/colors"))
            .cloned()
            .ok_or_else(|| Error::Parse("no `colors` array in colouring file".into()))?,
    };
    Ok(serde_json::from_value(colors)?)
}

pub fn cmd_export(family: &Family, format: ExportFormat, coloring: Option<&[usize]>, caps: Caps) -> Result<String> {
    match format {
        ExportFormat::Dimacs => Ok(to_dimacs(&IntersectionGraph::build(family)?)),
        ExportFormat::Svg => svg(family, coloring),
        ExportFormat::Csv => {
            let inv = GraphInvariants::compute(&IntersectionGraph::build(family)?, caps)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["invariant", "value", "status"]).map_err(csv_err)?;
            for (name, solved) in [("omega", &inv.omega), ("nu", &inv.alpha), ("chi", &inv.chi), ("theta", &inv.theta)] {
                let (value, status) = match solved.exact() {
                    Some(v) => (v.to_string(), "exact"),
                    None => (solved.lower().to_string(), "lower_bound"),
                };
                w.write_record([name, value.as_str(), status]).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn member_outline(body: &ConvexBody, p: &Placement) -> Vec<(f64, f64)> {
    match body {
        ConvexBody::Polygon(poly) => {
            poly.vertices().iter().map(|v| (p.center[0] + p.scale * v.x, p.center[1] + p.scale * v.y)).collect()
        }
        ConvexBody::Box(b) => {
            let (hx, hy) = (0.5 * b.sides()[0] * p.scale, 0.5 * b.sides()[1] * p.scale);
            let (x, y) = (p.center[0], p.center[1]);
            vec![(x - hx, y - hy), (x + hx, y - hy), (x + hx, y + hy), (x - hx, y + hy)]
        }
        ConvexBody::Disk => Vec::new(),
    }
}

fn svg(family: &Family, coloring: Option<&[usize]>) -> Result<String> {
    if family.dimension() != 2 {
        return Err(Error::UnsupportedBody("SVG export draws planar families only".into()));
    }
    if let Some(c) = coloring {
        if c.len() != family.len() {
            return Err(Error::IndexOutOfRange { index: c.len(), count: family.len() });
        }
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    let (blo, bhi) = family.body.bounding_box();
    for p in &family.placements {
        for i in 0..2 {
            lo[i] = lo[i].min(p.center[i] + p.scale * blo[i]);
            hi[i] = hi[i].max(p.center[i] + p.scale * bhi[i]);
        }
    }
    if family.is_empty() {
        (lo, hi) = ([0.0, 0.0], [1.0, 1.0]);
    }
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let palette_size = coloring.and_then(|c| c.iter().max()).map_or(1, |m| m + 1);
    let fill = |i: usize| match coloring {
        Some(c) => format!("hsl({},70%,60%)", c[i] * 360 / palette_size),
        None => "none".to_string(),
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n<g transform=\"scale(1,-1)\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"{}\">\n",
        lo[0] - pad,
        -(hi[1] + pad),
        hi[0] - lo[0] + 2.0 * pad,
        hi[1] - lo[1] + 2.0 * pad,
        pad / 20.0,
    );
    for (i, p) in family.placements.iter().enumerate() {
        match &family.body {
            ConvexBody::Disk => out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
                p.center[0],
                p.center[1],
                p.scale,
                fill(i)
            )),
            body => {
                let pts: Vec<String> = member_outline(body, p).iter().map(|(x, y)| format!("{x},{y}")).collect();
                out.push_str(&format!("<polygon points=\"{}\" fill=\"{}\"/>\n", pts.join(" "), fill(i)));
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
