use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::IngestError;

/// Undirected simple graph over participants `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialNetwork {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl SocialNetwork {
    /// Builds a network from explicit edges. Edges are normalized to
    /// `(min, max)` and sorted.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, IngestError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(IngestError::Network(format!("self-loop on node {a}")));
            }
            if a >= n || b >= n {
                return Err(IngestError::Network(format!(
                    "edge ({a}, {b}) has an endpoint out of range for n = {n}"
                )));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(IngestError::Network(format!("duplicate edge ({a}, {b})")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(IngestError::Network(format!(
                    "{} labels for {n} nodes",
                    l.len()
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            adjacency,
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Sorted neighbor list of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        let mut v = json!({ "n": self.n, "edges": edges });
        if let Some(labels) = &self.labels {
            v["labels"] = json!(labels);
        }
        v
    }
}

/// Regular ring lattice: node `i` links to `i ± 1 … i ± degree/2 (mod n)`.
pub fn build_ring_lattice(n: usize, degree: usize) -> Result<SocialNetwork, IngestError> {
    if degree < 2 || degree % 2 == 1 {
        return Err(IngestError::Network(format!(
            "ring degree must be even and ≥ 2, got {degree}"
        )));
    }
    if n < degree + 1 {
        return Err(IngestError::Network(format!(
            "ring of degree {degree} needs at least {} nodes, got {n}",
            degree + 1
        )));
    }
    let half = degree / 2;
    let edges = (0..n).flat_map(|i| (1..=half).map(move |k| (i, (i + k) % n)));
    SocialNetwork::from_edges(n, edges, None)
}

/// Parses `{"type":"ring","n":N,"degree":D}` or `{"n":N,"edges":[[a,b],...]}`.
pub fn parse_network(input: &str) -> Result<SocialNetwork, IngestError> {
    let v: Value = serde_json::from_str(input).map_err(|e| IngestError::Json {
        line: e.line(),
        message: e.to_string(),
    })?;
    let obj = v.as_object().ok_or(IngestError::NotAnObject { line: 1 })?;
    let count = |name: &'static str| -> Result<usize, IngestError> {
        obj.get(name)
            .ok_or(IngestError::MissingField { line: 1, field: name })?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| IngestError::InvalidField {
                line: 1,
                field: name,
                reason: "expected a non-negative integer".into(),
            })
    };
    match obj.get("type") {
        Some(Value::String(t)) if t == "ring" => build_ring_lattice(count("n")?, count("degree")?),
        Some(other) => Err(IngestError::Network(format!("unknown network type {other}"))),
        None => {
            let n = count("n")?;
            let raw = obj
                .get("edges")
                .and_then(Value::as_array)
                .ok_or(IngestError::MissingField { line: 1, field: "edges" })?;
            let mut edges = Vec::with_capacity(raw.len());
            for e in raw {
                let pair = e
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
                    .ok_or_else(|| IngestError::InvalidField {
                        line: 1,
                        field: "edges",
                        reason: format!("expected [int, int], got {e}"),
                    })?;
                edges.push(pair);
            }
            let labels = match obj.get("labels") {
                None | Some(Value::Null) => None,
                Some(Value::Array(items)) => Some(
                    items
                        .iter()
                        .map(|x| x.as_str().map(str::to_string))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| IngestError::InvalidField {
                            line: 1,
                            field: "labels",
                            reason: "expected strings".into(),
                        })?,
                ),
                Some(_) => {
                    return Err(IngestError::InvalidField {
                        line: 1,
                        field: "labels",
                        reason: "expected an array".into(),
                    })
                }
            };
            SocialNetwork::from_edges(n, edges, labels)
        }
    }
}
