use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ProjectiveRepresentation, SubspaceRepresentation, VerificationReport};
use crate::graph::Graph;
use crate::linalg::{BlockDiagonal, CMatrix, Subspace, Tolerances};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Body<M> {
    graph: Graph,
    d: usize,
    r: usize,
    assignment: BTreeMap<String, M>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Wire {
    Osr(Body<CMatrix>),
    Fosr(Body<CMatrix>),
    Projective(Body<BlockDiagonal>),
    FaithfulProjective(Body<BlockDiagonal>),
}

/// Any representation certificate, tagged by `kind` on the wire.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Subspace(SubspaceRepresentation),
    Projective(ProjectiveRepresentation),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Subspace(s) if s.faithful => "fosr",
            Certificate::Subspace(_) => "osr",
            Certificate::Projective(p) if p.faithful => "faithful-projective",
            Certificate::Projective(_) => "projective",
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Certificate::Subspace(s) => &s.graph,
            Certificate::Projective(p) => &p.graph,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Certificate::Subspace(s) => s.d,
            Certificate::Projective(p) => p.d,
        }
    }

    pub fn r(&self) -> usize {
        match self {
            Certificate::Subspace(s) => s.r,
            Certificate::Projective(p) => p.r,
        }
    }

    pub fn verify(&self, tol: &Tolerances) -> VerificationReport {
        match self {
            Certificate::Subspace(s) => s.verify(tol),
            Certificate::Projective(p) => p.verify(tol),
        }
    }
}

fn ordered<M, E: serde::de::Error>(graph: &Graph, mut map: BTreeMap<String, M>) -> Result<Vec<M>, E> {
    let out = graph
        .labels()
        .iter()
        .map(|l| map.remove(l).ok_or_else(|| E::custom(format!("no assignment for vertex {l:?}"))))
        .collect::<Result<Vec<M>, E>>()?;
    match map.into_keys().next() {
        Some(extra) => Err(E::custom(format!("assignment names unknown vertex {extra:?}"))),
        None => Ok(out),
    }
}

fn keyed<M: Clone>(graph: &Graph, items: &[M]) -> BTreeMap<String, M> {
    graph.labels().iter().cloned().zip(items.iter().cloned()).collect()
}

fn subspace_body(s: &SubspaceRepresentation) -> Body<CMatrix> {
    let bases: Vec<CMatrix> = s.assignment.iter().map(|x| x.basis().clone()).collect();
    Body {
        graph: s.graph.clone(),
        d: s.d,
        r: s.r,
        assignment: keyed(&s.graph, &bases),
    }
}

fn projective_body(p: &ProjectiveRepresentation) -> Body<BlockDiagonal> {
    Body {
        graph: p.graph.clone(),
        d: p.d,
        r: p.r,
        assignment: keyed(&p.graph, &p.assignment),
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            Certificate::Subspace(x) if x.faithful => Wire::Fosr(subspace_body(x)),
            Certificate::Subspace(x) => Wire::Osr(subspace_body(x)),
            Certificate::Projective(x) if x.faithful => Wire::FaithfulProjective(projective_body(x)),
            Certificate::Projective(x) => Wire::Projective(projective_body(x)),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let subspace = |b: Body<CMatrix>, faithful| -> Result<Certificate, D::Error> {
            let bases = ordered(&b.graph, b.assignment)?;
            Ok(Certificate::Subspace(SubspaceRepresentation::new(
                b.graph,
                b.d,
                b.r,
                bases.into_iter().map(Subspace::from_basis_unchecked).collect(),
                faithful,
            )))
        };
        let projective = |b: Body<BlockDiagonal>, faithful| -> Result<Certificate, D::Error> {
            let projectors = ordered(&b.graph, b.assignment)?;
            Ok(Certificate::Projective(ProjectiveRepresentation::new(
                b.graph, b.d, b.r, projectors, faithful,
            )))
        };
        match Wire::deserialize(d)? {
            Wire::Osr(b) => subspace(b, false),
            Wire::Fosr(b) => subspace(b, true),
            Wire::Projective(b) => projective(b, false),
            Wire::FaithfulProjective(b) => projective(b, true),
        }
    }
}

impl Serialize for SubspaceRepresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Certificate::Subspace(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubspaceRepresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Certificate::deserialize(d)? {
            Certificate::Subspace(s) => Ok(s),
            other => Err(D::Error::custom(format!("expected osr or fosr, found {}", other.kind()))),
        }
    }
}

impl Serialize for ProjectiveRepresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Certificate::Projective(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectiveRepresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Certificate::deserialize(d)? {
            Certificate::Projective(p) => Ok(p),
            other => Err(D::Error::custom(format!(
                "expected projective or faithful-projective, found {}",
                other.kind()
            ))),
        }
    }
}
