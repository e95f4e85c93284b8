//! Constructors for the extremal and exceptional graph families.
//!
//! Labelling is fixed so that fixtures and certificates are byte-stable:
//! in `S(n,k)` the clique is `0..k` and the independent side `k..n`; the
//! extra edge of `S⁺(n,k)` is `{k, k+1}`; every `L`-type family has its
//! (first) centre at vertex 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, SparseGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    S,
    SPlus,
    L,
    Book,
    DoubleL,
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(FamilyKind::S),
            "splus" | "s+" | "s_plus" => Ok(FamilyKind::SPlus),
            "l" => Ok(FamilyKind::L),
            "book" => Ok(FamilyKind::Book),
            "doublel" | "double-l" | "double_l" => Ok(FamilyKind::DoubleL),
            other => Err(Error::InvalidFamily(format!("unknown family kind {other:?}"))),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::S => "S",
            FamilyKind::SPlus => "SPlus",
            FamilyKind::L => "L",
            FamilyKind::Book => "Book",
            FamilyKind::DoubleL => "DoubleL",
        };
        f.write_str(s)
    }
}

/// Parameterised family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// `K_k ∨ K̄_{n−k}`.
    S { n: usize, k: usize },
    /// `S(n,k)` plus one edge inside the independent side.
    SPlus { n: usize, k: usize },
    /// `K_1 ∨ tK_k`: `t` copies of `K_{k+1}` sharing the centre.
    L { t: usize, k: usize },
    /// `K_1 ∨ ((t−1)K_k ∪ K_{k+1})`, order `tk+2`.
    Book { t: usize, k: usize },
    /// `L(s,k)` and `L(t,k)` with their centres joined by an edge.
    DoubleL { s: usize, t: usize, k: usize },
}

impl FamilySpec {
    /// Builds a spec from loosely supplied parameters, as the CLI does.
    pub fn from_parts(
        kind: FamilyKind,
        n: Option<usize>,
        k: Option<usize>,
        t: Option<usize>,
        s: Option<usize>,
    ) -> Result<Self> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidFamily(format!("{kind} requires parameter {name}")))
        };
        let spec = match kind {
            FamilyKind::S => FamilySpec::S { n: need(n, "n")?, k: need(k, "k")? },
            FamilyKind::SPlus => FamilySpec::SPlus { n: need(n, "n")?, k: need(k, "k")? },
            FamilyKind::L => FamilySpec::L { t: need(t, "t")?, k: need(k, "k")? },
            FamilyKind::Book => FamilySpec::Book { t: need(t, "t")?, k: need(k, "k")? },
            FamilyKind::DoubleL => FamilySpec::DoubleL { s: need(s, "s")?, t: need(t, "t")?, k: need(k, "k")? },
        };
        spec.validate()?;
        if let (Some(n), false) = (n, matches!(kind, FamilyKind::S | FamilyKind::SPlus)) {
            if n != spec.order() {
                return Err(Error::InvalidFamily(format!("{kind} with these parameters has order {}, not {n}", spec.order())));
            }
        }
        Ok(spec)
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::S { .. } => FamilyKind::S,
            FamilySpec::SPlus { .. } => FamilyKind::SPlus,
            FamilySpec::L { .. } => FamilyKind::L,
            FamilySpec::Book { .. } => FamilyKind::Book,
            FamilySpec::DoubleL { .. } => FamilyKind::DoubleL,
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::S { n, .. } | FamilySpec::SPlus { n, .. } => n,
            FamilySpec::L { t, k } => t * k + 1,
            FamilySpec::Book { t, k } => t * k + 2,
            FamilySpec::DoubleL { s, t, k } => (s + t) * k + 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match *self {
            FamilySpec::S { n, k } => {
                if k == 0 || n < k + 1 {
                    return bad(format!("S(n={n},k={k}) needs k >= 1 and n >= k+1"));
                }
            }
            FamilySpec::SPlus { n, k } => {
                if k == 0 || n < k + 3 {
                    return bad(format!("SPlus(n={n},k={k}) needs k >= 1 and n >= k+3"));
                }
            }
            FamilySpec::L { t, k } | FamilySpec::Book { t, k } => {
                if t == 0 || k == 0 {
                    return bad(format!("{}(t={t},k={k}) needs positive t and k", self.kind()));
                }
            }
            FamilySpec::DoubleL { s, t, k } => {
                if s == 0 || t == 0 || k == 0 {
                    return bad(format!("DoubleL(s={s},t={t},k={k}) needs positive s, t, k"));
                }
            }
        }
        Ok(())
    }

    /// Order and edge list of the canonical construction.
    pub fn edges(&self) -> Result<(usize, Vec<(usize, usize)>)> {
        self.validate()?;
        let n = self.order();
        let mut edges = Vec::new();
        match *self {
            FamilySpec::S { n, k } | FamilySpec::SPlus { n, k } => {
                for u in 0..k {
                    for v in u + 1..n {
                        edges.push((u, v));
                    }
                }
                if matches!(self, FamilySpec::SPlus { .. }) {
                    edges.push((k, k + 1));
                }
            }
            FamilySpec::L { t, k } => push_fan(&mut edges, 0, 1, &vec![k; t]),
            FamilySpec::Book { t, k } => {
                let mut sizes = vec![k; t - 1];
                sizes.push(k + 1);
                push_fan(&mut edges, 0, 1, &sizes);
            }
            FamilySpec::DoubleL { s, t, k } => {
                let second = s * k + 1;
                push_fan(&mut edges, 0, 1, &vec![k; s]);
                push_fan(&mut edges, second, second + 1, &vec![k; t]);
                edges.push((0, second));
            }
        }
        Ok((n, edges))
    }

    /// Sparse construction; works for any order.
    pub fn build_sparse(&self) -> Result<SparseGraph> {
        let (n, edges) = self.edges()?;
        SparseGraph::from_edges(n, &edges)
    }
}

/// Centre joined to consecutive cliques of the given sizes starting at `first`.
fn push_fan(edges: &mut Vec<(usize, usize)>, centre: usize, first: usize, sizes: &[usize]) {
    let mut start = first;
    for &size in sizes {
        for u in start..start + size {
            edges.push((centre, u));
            for v in u + 1..start + size {
                edges.push((u, v));
            }
        }
        start += size;
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::S { n, k } => write!(f, "S({n},{k})"),
            FamilySpec::SPlus { n, k } => write!(f, "SPlus({n},{k})"),
            FamilySpec::L { t, k } => write!(f, "L({t},{k})"),
            FamilySpec::Book { t, k } => write!(f, "Book({t},{k})"),
            FamilySpec::DoubleL { s, t, k } => write!(f, "DoubleL({s},{t},{k})"),
        }
    }
}

/// Compact construction of a family member.
pub fn make_family(spec: FamilySpec) -> Result<Graph> {
    let (n, edges) = spec.edges()?;
    Graph::from_edges(n, &edges)
}
