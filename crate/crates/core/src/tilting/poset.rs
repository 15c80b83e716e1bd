use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::module::{FieldData, Scope};

use super::{Certificate, Engine, Pair};

/// Version tag written into poset JSON.
pub const POSET_SCHEMA: &str = "tautilt.poset/1";

#[derive(Clone, Debug, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    pub summands: Vec<String>,
    pub dims: Vec<usize>,
    /// Composition multiplicities of each summand of `M`.
    pub compositions: Vec<Vec<usize>>,
    /// Names of the simples whose PIMs make up `P`.
    pub projectives: Vec<String>,
    pub dim: usize,
    pub certificate: Certificate,
    #[serde(skip)]
    pub pair: Pair,
}

#[derive(Clone, Debug)]
pub struct HassePoset {
    pub nodes: Vec<Node>,
    /// Mutation arrows `(from, to)`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Covering relations recomputed from the order on all nodes, sorted.
    pub covering: Vec<(usize, usize)>,
    /// `order[a][b]` iff node `a ≥` node `b`.
    pub order: Vec<Vec<bool>>,
    pub field: FieldData,
    pub group: GroupSpec,
    pub block: Option<usize>,
    pub simples: Vec<String>,
}

#[derive(Serialize)]
struct PosetJson<'a> {
    schema: &'a str,
    field: &'a FieldData,
    group: &'a GroupSpec,
    block: Option<usize>,
    simples: &'a [String],
    nodes: &'a [Node],
    edges: &'a [(usize, usize)],
}

impl HassePoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of `(Λ, 0)`.
    pub fn top(&self) -> usize {
        0
    }

    /// Index of `(0, Λ)`.
    pub fn bottom(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node_of(&self, pair: &Pair) -> Option<usize> {
        self.nodes.iter().position(|n| &n.pair == pair)
    }

    pub fn successors(&self, a: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.0 == a)
            .map(|e| e.1)
            .collect()
    }

    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    pub fn edges_match_covering(&self) -> bool {
        self.edges == self.covering
    }

    /// Reflexive, antisymmetric and transitive on all nodes.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if !self.order[a][a] {
                return false;
            }
            for b in 0..n {
                if a != b && self.order[a][b] && self.order[b][a] {
                    return false;
                }
                for c in 0..n {
                    if self.order[a][b] && self.order[b][c] && !self.order[a][c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Top above everything, bottom below everything.
    pub fn has_extremes(&self) -> bool {
        let (t, b) = (self.top(), self.bottom());
        (0..self.len()).all(|i| self.order[t][i] && self.order[i][b])
    }

    /// Every node is reachable from the top along edges.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([self.top()]);
        seen[self.top()] = true;
        while let Some(a) = queue.pop_front() {
            for b in self.successors(a) {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from(
            "digraph stt {\n  rankdir=TB;\n  node [shape=box, fontname=\"Helvetica\"];\n",
        );
        for n in &self.nodes {
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\"];",
                n.id,
                n.label.replace('"', "\\\"")
            );
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let view = PosetJson {
            schema: POSET_SCHEMA,
            field: &self.field,
            group: &self.group,
            block: self.block,
            simples: &self.simples,
            nodes: &self.nodes,
            edges: &self.edges,
        };
        serde_json::to_string_pretty(&view).expect("poset serializes")
    }
}

/// Breadth-first closure under downward mutation starting from `(Λ, 0)`.
/// Every node is certified by both criteria.
pub fn enumerate_poset(engine: &mut Engine, cap: usize) -> Result<HassePoset> {
    let top = engine.top_pair();
    let mut index: HashMap<Pair, usize> = HashMap::from([(top.clone(), 0)]);
    let mut pairs = vec![top];
    let mut certs = Vec::new();
    let mut edges = BTreeSet::new();
    let mut next = 0;
    while next < pairs.len() {
        let pair = pairs[next].clone();
        certs.push(engine.certify(&pair)?);
        for idx in 0..pair.m.len() {
            if !engine.is_left_mutable(&pair, idx)? {
                continue;
            }
            let (down, _) = engine.mutate(&pair, idx)?;
            let to = match index.get(&down) {
                Some(&i) => i,
                None => {
                    if pairs.len() >= cap {
                        return Err(Error::NodeCapExceeded {
                            cap,
                            found: pairs.len() + 1,
                        });
                    }
                    index.insert(down.clone(), pairs.len());
                    pairs.push(down);
                    pairs.len() - 1
                }
            };
            edges.insert((next, to));
        }
        next += 1;
    }

    // top first, then more summands of M, then larger M, then registry ids
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| {
        let p = &pairs[i];
        (
            i != 0,
            std::cmp::Reverse(p.m.len()),
            std::cmp::Reverse(engine.pair_dim(p)),
            p.m.clone(),
            p.p.clone(),
        )
    });
    let mut rank = vec![0; pairs.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut edges: Vec<(usize, usize)> =
        edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    edges.sort_unstable();

    let catalog = engine.catalog().clone();
    let mut nodes = Vec::with_capacity(pairs.len());
    for (id, &old) in order.iter().enumerate() {
        let pair = pairs[old].clone();
        let mut summands: Vec<(bool, String, usize, Vec<usize>)> = pair
            .m
            .iter()
            .map(|&i| {
                (
                    engine.pim_of(i).is_some(),
                    engine.label(i).to_owned(),
                    engine.module(i).dim(),
                    engine.composition(i).to_vec(),
                )
            })
            .collect();
        summands.sort();
        nodes.push(Node {
            id,
            label: engine.pair_label(&pair),
            summands: summands.iter().map(|s| s.1.clone()).collect(),
            dims: summands.iter().map(|s| s.2).collect(),
            compositions: summands.iter().map(|s| s.3.clone()).collect(),
            projectives: pair.p.iter().map(|&k| catalog.name(k).to_owned()).collect(),
            dim: engine.pair_dim(&pair),
            certificate: certs[old],
            pair,
        });
    }

    let n = nodes.len();
    let mut geq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            geq[a][b] = a == b || engine.geq(&nodes[a].pair, &nodes[b].pair)?;
        }
    }
    let mut covering = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !geq[a][b] {
                continue;
            }
            let between = (0..n).any(|c| c != a && c != b && geq[a][c] && geq[c][b]);
            if !between {
                covering.push((a, b));
            }
        }
    }

    Ok(HassePoset {
        nodes,
        edges,
        covering,
        order: geq,
        field: FieldData::of(catalog.field()),
        group: catalog.group().to_spec(),
        block: match catalog.scope() {
            Scope::Whole => None,
            Scope::Block { index, .. } => Some(*index),
        },
        simples: catalog.names().to_vec(),
    })
}
