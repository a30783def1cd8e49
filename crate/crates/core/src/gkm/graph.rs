use serde::ser::{SerializeMap, SerializeTuple};

use super::class::EqClass;
use crate::combinatorics::{tangent_weights, GrassmannianShape, PivotSubset};
use crate::poly::{LinearForm, Polynomial};

/// The T-invariant curve joining `from` and `to = from \ {i} ∪ {j}`, with
/// character `t_j - t_i` at `from` (and its negative at `to`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmEdge {
    pub from: PivotSubset,
    pub to: PivotSubset,
    pub weight: LinearForm,
}

impl serde::Serialize for GkmEdge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.from.to_string())?;
        t.serialize_element(&self.to.to_string())?;
        t.serialize_element(&self.weight.to_string())?;
        t.end()
    }
}

#[derive(Clone, Debug)]
pub struct GkmGraph {
    shape: GrassmannianShape,
    vertices: Vec<PivotSubset>,
    edges: Vec<GkmEdge>,
}

impl GkmGraph {
    pub fn shape(&self) -> &GrassmannianShape {
        &self.shape
    }

    pub fn vertices(&self) -> &[PivotSubset] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    /// Characters of the edges at `v`, oriented outward.
    pub fn incident_weights(&self, v: &PivotSubset) -> Vec<LinearForm> {
        self.edges
            .iter()
            .filter_map(|e| {
                if &e.from == v {
                    Some(e.weight.clone())
                } else if &e.to == v {
                    Some(e.weight.negate())
                } else {
                    None
                }
            })
            .collect()
    }

    /// No two edge characters at a vertex are proportional.
    pub fn pairwise_independent(&self) -> bool {
        self.vertices.iter().all(|v| {
            let ws = self.incident_weights(v);
            ws.iter()
                .enumerate()
                .all(|(a, wa)| ws[a + 1..].iter().all(|wb| !wa.is_proportional(wb)))
        })
    }
}

impl serde::Serialize for GkmGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.shape.n())?;
        map.serialize_entry("k", &self.shape.k())?;
        map.serialize_entry("vertices", &vertices)?;
        map.serialize_entry("edges", &self.edges)?;
        map.end()
    }
}

/// Vertices are all pivot subsets; each pair differing in one element is
/// joined once, oriented from the lexicographically smaller end.
pub fn gkm_graph(shape: &GrassmannianShape) -> GkmGraph {
    let vertices = shape.subsets();
    let mut edges = Vec::new();
    for from in &vertices {
        for &i in from.elements() {
            for j in from.complement(shape) {
                let to = from.exchange(i, j);
                if from < &to {
                    edges.push(GkmEdge {
                        from: from.clone(),
                        to,
                        weight: LinearForm::weight(j, i),
                    });
                }
            }
        }
    }
    let graph = GkmGraph {
        shape: *shape,
        vertices,
        edges,
    };
    assert!(graph.pairwise_independent(), "tangent characters of {shape} are pairwise independent");
    graph
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmViolation {
    pub edge: GkmEdge,
    /// Remainder of `c(from) - c(to)` modulo the edge character.
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GkmReport {
    pub violations: Vec<GkmViolation>,
}

impl GkmReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `χ | c(I) - c(J)` on every edge.
pub fn gkm_check(c: &EqClass) -> GkmReport {
    gkm_check_on(&gkm_graph(c.shape()), c)
}

pub fn gkm_check_on(graph: &GkmGraph, c: &EqClass) -> GkmReport {
    assert_eq!(graph.shape(), c.shape(), "graph and class live on the same Grassmannian");
    let violations = graph
        .edges
        .iter()
        .filter_map(|e| {
            let diff = &c.restriction(&e.from) - &c.restriction(&e.to);
            if diff.is_zero() {
                return None;
            }
            match diff.exact_divide(&e.weight.to_polynomial()) {
                Ok(_) => None,
                Err(crate::Error::NotDivisible { remainder }) => Some(GkmViolation {
                    edge: e.clone(),
                    remainder,
                }),
                Err(other) => unreachable!("exact_divide only fails with NotDivisible: {other}"),
            }
        })
        .collect();
    GkmReport { violations }
}

/// Whether each vertex's tangent weights are exactly its outward edge characters.
pub fn edges_match_tangent_weights(graph: &GkmGraph) -> bool {
    graph.vertices.iter().all(|v| {
        let mut a = graph.incident_weights(v);
        let mut b = tangent_weights(v, &graph.shape);
        a.sort();
        b.sort();
        a == b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, parse_subset, Partition};
    use crate::gkm::class::schubert_class;

    fn shape(n: usize, k: usize) -> GrassmannianShape {
        GrassmannianShape::new(n, k).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = gkm_graph(&shape(2, 1));
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].weight, LinearForm::weight(2, 1));

        let g = gkm_graph(&shape(4, 2));
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(g.edges().len(), 12);
    }

    #[test]
    fn edge_counts_and_tangent_weights() {
        for n in 2..=7 {
            for k in 1..n {
                let sh = shape(n, k);
                let g = gkm_graph(&sh);
                assert_eq!(g.edges().len(), binomial(n, k) * sh.dim() / 2);
                assert!(edges_match_tangent_weights(&g));
                for e in g.edges() {
                    assert!(tangent_weights(&e.from, &sh).contains(&e.weight));
                    assert!(tangent_weights(&e.to, &sh).contains(&e.weight.negate()));
                }
            }
        }
    }

    #[test]
    fn check_examples() {
        let sh = shape(4, 2);
        for lam in sh.partitions() {
            assert!(gkm_check(&schubert_class(&lam, &sh).unwrap()).is_ok(), "{lam}");
        }
        let sh = shape(2, 1);
        let bad = EqClass::from_restrictions(sh, [(parse_subset("{1}", &sh).unwrap(), Polynomial::one())]).unwrap();
        let report = gkm_check(&bad);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].remainder.is_one());
        let constant = EqClass::constant(sh, "t1^2 + 3*t2".parse().unwrap());
        assert!(gkm_check(&constant).is_ok());
        let _ = Partition::empty();
    }

    #[test]
    fn json_shape() {
        let g = gkm_graph(&shape(2, 1));
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"n":2,"k":1,"vertices":["{1}","{2}"],"edges":[["{1}","{2}","t2 - t1"]]}"#
        );
    }
}
