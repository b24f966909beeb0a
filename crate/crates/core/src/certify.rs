//! Short certificates for "the dispersion number is at least k".
//!
//! A certificate names the vertices `W` used by a dispersed set and the number
//! `n_e` of points strictly inside every edge. The verifier introduces, for
//! each occupied edge `e = {u, v}`, the distances `x(u,e)` and `x(v,e)` from
//! its endpoints to the nearest interior point, and decides exactly whether
//! positions satisfying every pairwise distance requirement exist.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::fourier_motzkin::{Feasibility, System};
use crate::graph::Graph;
use crate::point::{Point, WitnessSet};
use crate::rational::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error(transparent)]
    Rational(#[from] RationalError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    /// Vertices that carry a point.
    pub w: BTreeSet<usize>,
    /// Interior point count per edge; zero counts are omitted.
    pub counts: BTreeMap<usize, u64>,
}

impl Certificate {
    pub fn total(&self) -> u64 {
        self.w.len() as u64 + self.counts.values().sum::<u64>()
    }

    /// The file format: `k`, then `W: v1 v2 ..`, then `e n_e` per occupied edge.
    pub fn to_text(&self, k: u64) -> String {
        let mut out = format!("{k}\nW:");
        for v in &self.w {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
        for (e, n) in &self.counts {
            if *n > 0 {
                writeln!(out, "{e} {n}").unwrap();
            }
        }
        out
    }

    /// Parses the file format into `(k, certificate)`.
    pub fn parse(text: &str) -> Result<(u64, Certificate), CertificateError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, reason: &str| CertificateError::Format { line, reason: reason.into() };

        let (line, k) = lines.next().ok_or_else(|| bad(1, "missing bound k"))?;
        let k: u64 = k.parse().map_err(|_| bad(line, "bound k must be a non-negative integer"))?;

        let (line, wline) = lines.next().ok_or_else(|| bad(line + 1, "missing 'W:' line"))?;
        let rest = wline.strip_prefix("W:").ok_or_else(|| bad(line, "expected 'W:'"))?;
        let mut cert = Certificate::default();
        for tok in rest.split_whitespace() {
            let v = tok.parse().map_err(|_| bad(line, "bad vertex id in W"))?;
            if !cert.w.insert(v) {
                return Err(bad(line, "repeated vertex in W"));
            }
        }
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let (Some(e), Some(n), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(line, "expected 'e n_e'"));
            };
            let e: usize = e.parse().map_err(|_| bad(line, "bad edge index"))?;
            let n: u64 = n.parse().map_err(|_| bad(line, "bad count"))?;
            if cert.counts.insert(e, n).is_some() {
                return Err(bad(line, "edge listed twice"));
            }
        }
        cert.counts.retain(|_, n| *n > 0);
        Ok((k, cert))
    }

    fn validate(&self, g: &Graph) -> Result<(), CertificateError> {
        if let Some(&v) = self.w.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(CertificateError::VertexOutOfRange(v));
        }
        if let Some(&e) = self.counts.keys().find(|&&e| e >= g.edge_count()) {
            return Err(CertificateError::EdgeOutOfRange(e));
        }
        Ok(())
    }
}

/// Reads off `W` and the interior counts of a witness.
pub fn extract_certificate(w: &WitnessSet) -> Certificate {
    let mut cert = Certificate::default();
    for p in &w.points {
        match *p {
            Point::Vertex(v) => {
                cert.w.insert(v);
            }
            Point::Interior { edge, .. } => *cert.counts.entry(edge).or_default() += 1,
        }
    }
    cert
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    Cardinality { total: u64, required: u64 },
    EdgeOverCapacity { edge: usize, count: u64 },
    VerticesTooClose { u: usize, v: usize, distance: u32 },
    /// The position system is infeasible; the contradiction surfaced after
    /// `stage` eliminations.
    Infeasible { stage: usize, variable: Option<String> },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Cardinality { total, required } => {
                write!(f, "certificate holds {total} points, fewer than k = {required}")
            }
            RejectReason::EdgeOverCapacity { edge, count } => {
                write!(f, "edge {edge} cannot hold {count} interior points")
            }
            RejectReason::VerticesTooClose { u, v, distance } => {
                write!(f, "vertices {u} and {v} in W are only {distance} apart")
            }
            RejectReason::Infeasible { stage, variable } => {
                write!(f, "no feasible point positions (contradiction after eliminating {stage} variable(s)")?;
                if let Some(var) = variable {
                    write!(f, ", last {var}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

/// Variable index of `x(endpoint, edge)`.
#[derive(Debug, Clone)]
struct Vars {
    index: BTreeMap<(usize, usize), usize>,
    names: Vec<String>,
}

impl Vars {
    fn new(g: &Graph, cert: &Certificate) -> Self {
        let mut index = BTreeMap::new();
        let mut names = Vec::new();
        for (&e, _) in cert.counts.iter().filter(|(_, &n)| n > 0) {
            let (u, v) = g.edge(e);
            for end in [u, v] {
                index.insert((end, e), names.len());
                names.push(format!("x({end},e{e})"));
            }
        }
        Vars { index, names }
    }

    fn get(&self, end: usize, e: usize) -> usize {
        self.index[&(end, e)]
    }
}

/// Builds the position system of a certificate, or the reason a constant
/// constraint between two `W` vertices already fails.
fn position_system(
    g: &Graph,
    delta: Rational,
    cert: &Certificate,
) -> Result<Result<(System, Vars), RejectReason>, RationalError> {
    let hops = g.hop_distances();
    let d = |u: usize, v: usize| Rational::integer(hops.get(u, v) as i64);

    let ws: Vec<usize> = cert.w.iter().copied().collect();
    for (i, &u) in ws.iter().enumerate() {
        for &v in &ws[i + 1..] {
            if d(u, v) < delta {
                return Ok(Err(RejectReason::VerticesTooClose { u, v, distance: hops.get(u, v) }));
            }
        }
    }

    let vars = Vars::new(g, cert);
    let mut sys = System::new(vars.names.len());
    let one = Rational::ONE;
    let occupied: Vec<(usize, u64)> = cert.counts.iter().filter(|(_, &n)| n > 0).map(|(&e, &n)| (e, n)).collect();

    for &(e, n) in &occupied {
        let (u, v) = g.edge(e);
        let (xu, xv) = (vars.get(u, e), vars.get(v, e));
        sys.add_ge(&[(xu, one)], Rational::ZERO);
        sys.add_ge(&[(xv, one)], Rational::ZERO);
        let spread = delta.checked_mul_int(n as i64 - 1)?;
        sys.add_le(&[(xu, one), (xv, one)], one.checked_sub(&spread)?);
        if n >= 2 {
            // first and last point of the edge, measured around through u-v
            sys.add_ge(&[(xu, one), (xv, one)], delta.checked_sub(&d(u, v))?);
        }
        for &w in &ws {
            for end in [u, v] {
                let rhs = delta.checked_sub(&d(end, w))?;
                if rhs.is_positive() {
                    sys.add_ge(&[(vars.get(end, e), one)], rhs);
                }
            }
        }
    }
    for (i, &(e, _)) in occupied.iter().enumerate() {
        let (u, v) = g.edge(e);
        for &(f, _) in &occupied[i + 1..] {
            let (s, t) = g.edge(f);
            for end in [u, v] {
                for other in [s, t] {
                    // rows with rhs <= 0 already follow from x >= 0
                    let rhs = delta.checked_sub(&d(end, other))?;
                    if rhs.is_positive() {
                        sys.add_ge(&[(vars.get(end, e), one), (vars.get(other, f), one)], rhs);
                    }
                }
            }
        }
    }
    Ok(Ok((sys, vars)))
}

/// Accepts iff the certificate describes at least `k` points and positions
/// for them exist that are pairwise at least `delta` apart.
pub fn verify_certificate(
    g: &Graph,
    delta: Rational,
    cert: &Certificate,
    k: u64,
) -> Result<Verdict, CertificateError> {
    cert.validate(g)?;
    let total = cert.total();
    if total < k {
        return Ok(Verdict::Reject(RejectReason::Cardinality { total, required: k }));
    }
    if delta.is_positive() {
        // loose cap: at most floor(1/δ) + 1 points fit on one edge
        let cap = Rational::ONE.checked_div(&delta)?.floor() as u64 + 1;
        if let Some((&edge, &count)) = cert.counts.iter().find(|(_, &n)| n > cap) {
            return Ok(Verdict::Reject(RejectReason::EdgeOverCapacity { edge, count }));
        }
    }
    let (sys, vars) = match position_system(g, delta, cert)? {
        Ok(built) => built,
        Err(reason) => return Ok(Verdict::Reject(reason)),
    };
    Ok(match sys.feasibility()? {
        Feasibility::Feasible => Verdict::Accept,
        Feasibility::Infeasible { stage, variable } => Verdict::Reject(RejectReason::Infeasible {
            stage,
            variable: variable.map(|i| vars.names[i].clone()),
        }),
    })
}
