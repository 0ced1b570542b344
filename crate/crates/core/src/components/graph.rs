use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::labels::{is_strongly_stable_sheet, project, quotient_label, sheets, Quotient, SheetLabel};
use crate::base::{Region, Stratum, WallBranch};
use crate::error::{Error, Result};
use crate::signatures::Sign;
use crate::wonenburger::WonenburgerTriple;

/// Index of a connected component, numbered in order of first node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentId(pub usize);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

/// Sheets off the bifurcation locus and their closure adjacencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentGraph {
    pub quotient: Quotient,
    pub nodes: Vec<SheetLabel>,
    /// Pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    component: Vec<ComponentId>,
    count: usize,
}

/// Strata of the graph: the seven regions and the discriminant branches.
fn graph_strata() -> Vec<Stratum> {
    Region::ALL
        .iter()
        .map(|&r| Stratum::Region(r))
        .chain([WallBranch::D1, WallBranch::D2, WallBranch::D3].map(Stratum::Wall))
        .collect()
}

/// Regions whose closure contains a discriminant branch.
fn incident_regions(w: WallBranch) -> [Region; 2] {
    match w {
        WallBranch::D1 => [Region::HMinusMinus, Region::N],
        WallBranch::D2 => [Region::E2, Region::N],
        _ => [Region::HPlusPlus, Region::N],
    }
}

/// Signature of `B` near a sheet, positive entries first.
fn limit_signature(l: &SheetLabel) -> Vec<Sign> {
    if l.stratum == Stratum::Region(Region::N) {
        return vec![Sign::Positive, Sign::Negative];
    }
    let mut s = l.decoration.clone();
    s.sort_by(|a, b| b.cmp(a));
    s
}

fn spi_edges(nodes: &[SheetLabel]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, d) in nodes.iter().enumerate() {
        let Stratum::Wall(w) = d.stratum else { continue };
        for r in incident_regions(w) {
            for (j, l) in nodes.iter().enumerate() {
                if l.stratum == Stratum::Region(r) && limit_signature(l) == d.decoration {
                    edges.push((i.min(j), i.max(j)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

impl ComponentGraph {
    fn from_parts(quotient: Quotient, nodes: Vec<SheetLabel>, edges: Vec<(usize, usize)>) -> Self {
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut component = vec![None; n];
        let mut count = 0;
        for start in 0..n {
            if component[start].is_some() {
                continue;
            }
            let id = ComponentId(count);
            count += 1;
            component[start] = Some(id);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if component[u].is_none() {
                        component[u] = Some(id);
                        queue.push_back(u);
                    }
                }
            }
        }
        Self {
            quotient,
            nodes,
            edges,
            component: component.into_iter().flatten().collect(),
            count,
        }
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn index_of(&self, l: &SheetLabel) -> Option<usize> {
        self.nodes.iter().position(|n| n == l)
    }

    pub fn component_of(&self, l: &SheetLabel) -> Option<ComponentId> {
        self.index_of(l).map(|i| self.component[i])
    }

    pub fn members(&self, id: ComponentId) -> Vec<&SheetLabel> {
        self.nodes
            .iter()
            .zip(&self.component)
            .filter(|(_, c)| **c == id)
            .map(|(n, _)| n)
            .collect()
    }

    pub fn components(&self) -> Vec<Vec<&SheetLabel>> {
        (0..self.count).map(|k| self.members(ComponentId(k))).collect()
    }

    pub fn adjacent(&self, a: &SheetLabel, b: &SheetLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    /// Labels adjacent to both `a` and `b`.
    pub fn common_neighbours(&self, a: &SheetLabel, b: &SheetLabel) -> Vec<&SheetLabel> {
        self.nodes
            .iter()
            .filter(|n| self.adjacent(a, n) && self.adjacent(b, n))
            .collect()
    }

    pub fn is_strongly_stable(&self, l: &SheetLabel) -> bool {
        is_strongly_stable_sheet(l)
    }
}

/// Builds the graph of a quotient. Over the triple quotient a discriminant
/// sheet is glued to the region sheets whose `B`-signature limits to its
/// own; the symplectic graph is the image under [`project`].
pub fn build_component_graph(q: Quotient) -> ComponentGraph {
    let spi_nodes: Vec<SheetLabel> = graph_strata()
        .into_iter()
        .flat_map(|s| sheets(s, Quotient::SpI))
        .collect();
    let spi = spi_edges(&spi_nodes);
    match q {
        Quotient::SpI => ComponentGraph::from_parts(q, spi_nodes, spi),
        Quotient::Sp4 => {
            let nodes: Vec<SheetLabel> = graph_strata()
                .into_iter()
                .flat_map(|s| sheets(s, Quotient::Sp4))
                .collect();
            let find = |l: &SheetLabel| nodes.iter().position(|n| *n == project(l)).expect("image node");
            let mut edges: Vec<(usize, usize)> = spi
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (find(&spi_nodes[i]), find(&spi_nodes[j]));
                    (a.min(b), a.max(b))
                })
                .collect();
            edges.sort_unstable();
            edges.dedup();
            ComponentGraph::from_parts(q, nodes, edges)
        }
    }
}

/// Cached graph of a quotient.
pub fn component_graph(q: Quotient) -> &'static ComponentGraph {
    static SPI: OnceLock<ComponentGraph> = OnceLock::new();
    static SP4: OnceLock<ComponentGraph> = OnceLock::new();
    match q {
        Quotient::SpI => SPI.get_or_init(|| build_component_graph(q)),
        Quotient::Sp4 => SP4.get_or_init(|| build_component_graph(q)),
    }
}

pub fn component_of_label(l: &SheetLabel, q: Quotient) -> Result<ComponentId> {
    if l.stratum.is_bifurcation_locus() {
        return Err(Error::OnBifurcationLocus(l.stratum));
    }
    component_graph(q)
        .component_of(l)
        .ok_or(Error::OnBifurcationLocus(l.stratum))
}

pub fn component_id(t: &WonenburgerTriple, q: Quotient, tol: f64) -> Result<ComponentId> {
    component_of_label(&quotient_label(t, q, tol)?, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CylinderVerdict {
    /// The two classes lie in different components; no orbit cylinder joins
    /// them.
    Obstructed { first: ComponentId, second: ComponentId },
    /// Same component; the test is inconclusive.
    PossiblyConnected { component: ComponentId },
}

pub fn cylinder_obstruction(
    t1: &WonenburgerTriple,
    t2: &WonenburgerTriple,
    q: Quotient,
    tol: f64,
) -> Result<CylinderVerdict> {
    let a = component_id(t1, q, tol)?;
    let b = component_id(t2, q, tol)?;
    Ok(if a == b {
        CylinderVerdict::PossiblyConnected { component: a }
    } else {
        CylinderVerdict::Obstructed { first: a, second: b }
    })
}
