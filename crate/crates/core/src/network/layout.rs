use std::f64::consts::TAU;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize, Serializer};

use super::NetworkError;
use crate::dimred::ProjectionSet;
use crate::ingest::{Session, SocialNetwork};
use crate::scalar::{Point3, Real};

/// Unit-circle positions in the z = 0 plane, node `i` at angle `2πi/n`.
pub fn layout_ring<T: Real>(network: &SocialNetwork) -> Result<Vec<Point3<T>>, NetworkError> {
    let n = network.n();
    if n == 0 {
        return Err(NetworkError::EmptyNetwork);
    }
    Ok((0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            [T::lit(a.cos()), T::lit(a.sin()), T::zero()]
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdeaNode<T> {
    pub id: String,
    pub author: usize,
    pub x: T,
    pub y: T,
    /// Normalized PC1.
    pub z: T,
    pub raw_pc1: T,
    #[serde(serialize_with = "rfc3339")]
    pub birth: DateTime<Utc>,
    pub saturation: T,
}

pub(crate) fn rfc3339<S: Serializer>(t: &DateTime<Utc>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_rfc3339_opts(chrono::SecondsFormat::AutoSi, true))
}

/// One idea node per idea, in session order, above its author's ring slot.
pub fn place_idea_nodes<T: Real>(
    session: &Session,
    projections: &ProjectionSet<T>,
) -> Result<Vec<IdeaNode<T>>, NetworkError> {
    let ring = layout_ring::<T>(&session.network)?;
    session
        .ideas
        .iter()
        .map(|idea| {
            let p = projections
                .get(&idea.id)
                .ok_or_else(|| NetworkError::MissingProjection(idea.id.clone()))?;
            let slot = ring[idea.participant];
            Ok(IdeaNode {
                id: idea.id.clone(),
                author: idea.participant,
                x: slot[0],
                y: slot[1],
                z: p.pc1,
                raw_pc1: p.pc1_raw,
                birth: idea.timestamp,
                saturation: T::one(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkPolicy {
    /// Each idea links to the latest earlier idea of its own author and of
    /// each social neighbour.
    #[default]
    MostRecent,
    /// Each idea links to every earlier idea in its social neighbourhood.
    AllPairs,
}

/// Directed from the newer idea to the older one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdeaEdge {
    pub from: String,
    pub to: String,
}

/// `nodes` must be in `(birth, id)` order, as produced by [`place_idea_nodes`].
pub fn link_idea_nodes<T: Real>(nodes: &[IdeaNode<T>], network: &SocialNetwork, policy: LinkPolicy) -> Vec<IdeaEdge> {
    let mut edges = Vec::new();
    let mut latest: Vec<Option<usize>> = vec![None; network.n()];
    for (i, node) in nodes.iter().enumerate() {
        let mut authors = vec![node.author];
        authors.extend_from_slice(network.neighbors(node.author));
        authors.sort_unstable();
        match policy {
            LinkPolicy::MostRecent => {
                for a in authors {
                    if let Some(j) = latest[a] {
                        edges.push(IdeaEdge {
                            from: node.id.clone(),
                            to: nodes[j].id.clone(),
                        });
                    }
                }
            }
            LinkPolicy::AllPairs => {
                for earlier in &nodes[..i] {
                    if authors.binary_search(&earlier.author).is_ok() {
                        edges.push(IdeaEdge {
                            from: node.id.clone(),
                            to: earlier.id.clone(),
                        });
                    }
                }
            }
        }
        latest[node.author] = Some(i);
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::build_ring_lattice;
    use chrono::TimeZone;

    fn node(id: &str, author: usize, hour: u32) -> IdeaNode<f64> {
        IdeaNode {
            id: id.into(),
            author,
            x: 0.0,
            y: 0.0,
            z: 0.0,
            raw_pc1: 0.0,
            birth: Utc.with_ymd_and_hms(2019, 3, 1, hour, 0, 0).unwrap(),
            saturation: 1.0,
        }
    }

    #[test]
    fn quarter_turns() {
        let net = SocialNetwork::from_edges(4, vec![], None).unwrap();
        let pos: Vec<[f64; 3]> = layout_ring(&net).unwrap();
        let want = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, w) in pos.iter().zip(want) {
            assert!((p[0] - w[0]).abs() < 1e-15 && (p[1] - w[1]).abs() < 1e-15 && p[2] == 0.0);
        }
        let empty = SocialNetwork::from_edges(0, vec![], None).unwrap();
        assert!(layout_ring::<f64>(&empty).is_err());
    }

    #[test]
    fn linking() {
        let net = build_ring_lattice(26, 4).unwrap();
        assert!(link_idea_nodes(&[node("a", 0, 1)], &net, LinkPolicy::MostRecent).is_empty());
        let e = link_idea_nodes(&[node("A", 0, 1), node("B", 1, 2)], &net, LinkPolicy::MostRecent);
        assert_eq!(e, vec![IdeaEdge { from: "B".into(), to: "A".into() }]);
        assert!(link_idea_nodes(&[node("A", 0, 1), node("B", 5, 2)], &net, LinkPolicy::AllPairs).is_empty());
        let three = [node("A", 0, 1), node("B", 0, 2), node("C", 1, 3)];
        assert_eq!(link_idea_nodes(&three, &net, LinkPolicy::MostRecent).len(), 2);
        assert_eq!(link_idea_nodes(&three, &net, LinkPolicy::AllPairs).len(), 3);
    }
}
