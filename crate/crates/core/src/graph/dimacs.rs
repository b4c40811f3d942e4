//! DIMACS edge format: `p edge N M` header, 1-based `e i j` lines, `c` comments.

use super::IntersectionGraph;
use crate::error::{Error, Result};

pub fn to_dimacs(g: &IntersectionGraph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    if !g.family_ref().is_empty() {
        out.push_str(&format!("c family {}\n", g.family_ref()));
    }
    out.push_str(&format!("p edge {} {}\n", g.member_count(), edges.len()));
    for (i, j) in edges {
        out.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    out
}

pub fn from_dimacs(text: &str) -> Result<IntersectionGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut family = String::new();
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: `{line}`", lineno + 1));
        match fields.first().copied() {
            Some("c") if fields.len() == 3 && fields[1] == "family" => family = fields[2].to_string(),
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() || fields.len() != 4 || fields[1] != "edge" {
                    return Err(bad());
                }
                header = Some((fields[2].parse().map_err(|_| bad())?, fields[3].parse().map_err(|_| bad())?));
            }
            Some("e") => {
                if header.is_none() || fields.len() != 3 {
                    return Err(bad());
                }
                let i: usize = fields[1].parse().map_err(|_| bad())?;
                let j: usize = fields[2].parse().map_err(|_| bad())?;
                if i == 0 || j == 0 {
                    return Err(bad());
                }
                edges.push((i - 1, j - 1));
            }
            Some(_) => return Err(bad()),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing `p edge` header".into()))?;
    if edges.len() != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(IntersectionGraph::from_edges(n, edges)?.with_family_ref(family))
}
