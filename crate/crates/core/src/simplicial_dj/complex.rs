use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::VertexSet;

/// A finite simplicial complex on vertices `1..=m`, stored by its facets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from 1-based facet lists. Faces contained in other
    /// listed faces are dropped; every vertex must occur in some facet.
    pub fn new(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > VertexSet::CAPACITY {
            return Err(Error::InvalidComplex(format!("at most {} vertices", VertexSet::CAPACITY)));
        }
        let mut sets = BTreeSet::new();
        for f in facets {
            let set = VertexSet::from_labels(f)
                .filter(|s| s.is_subset(VertexSet::full(m)))
                .ok_or_else(|| Error::InvalidComplex(format!("face {f:?} has a vertex outside 1..{m}")))?;
            if set.len() != f.len() {
                return Err(Error::InvalidComplex(format!("face {f:?} repeats a vertex")));
            }
            sets.insert(set);
        }
        if sets.is_empty() {
            return Err(Error::InvalidComplex("no faces given".into()));
        }
        let maximal: Vec<VertexSet> = sets
            .iter()
            .copied()
            .filter(|&f| !sets.iter().any(|&g| g != f && f.is_subset(g)))
            .collect();
        let covered = maximal.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f));
        if covered != VertexSet::full(m) {
            let missing = VertexSet::full(m).difference(covered);
            return Err(Error::InvalidComplex(format!("vertices {missing} lie in no face")));
        }
        Ok(SimplicialComplex { m, facets: maximal })
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: usize) -> Self {
        SimplicialComplex {
            m,
            facets: vec![VertexSet::full(m)],
        }
    }

    /// Parses `{"m": int, "facets": [[int, …], …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(raw.m, &raw.facets)
    }

    pub(crate) fn from_value(v: &serde_json::Value) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(raw.m, &raw.facets)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            m: self.m,
            facets: self.facets.iter().map(|f| f.labels()).collect(),
        })
        .expect("plain data")
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_face(&self, set: VertexSet) -> bool {
        self.facets.iter().any(|f| set.is_subset(*f))
    }

    /// All faces, including the empty face, in increasing order.
    pub fn faces(&self) -> Vec<VertexSet> {
        let all: BTreeSet<VertexSet> = self.facets.iter().flat_map(|f| f.subsets()).collect();
        let mut out: Vec<VertexSet> = all.into_iter().collect();
        out.sort_by_key(|f| (f.len(), f.labels()));
        out
    }

    /// Largest face dimension plus one.
    pub fn rank(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// The inclusion-minimal non-faces, i.e. the supports of the
    /// Stanley–Reisner generators.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        // A minimal non-face is a face plus one vertex.
        let mut out = BTreeSet::new();
        for face in self.faces() {
            for v in VertexSet::full(self.m).difference(face).iter() {
                let cand = face.insert(v);
                if !self.is_face(cand) && cand.iter().all(|u| self.is_face(cand.difference(VertexSet::singleton(u)))) {
                    out.insert(cand);
                }
            }
        }
        let mut out: Vec<VertexSet> = out.into_iter().collect();
        out.sort_by_key(|f| (f.len(), f.labels()));
        out
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.facets.iter().map(ToString::to_string).collect();
        write!(f, "K[{}]{{{}}}", self.m, parts.join(", "))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels).unwrap()
    }

    #[test]
    fn minimal_nonfaces_examples() {
        let two_points = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(two_points.minimal_nonfaces(), vec![set(&[1, 2])]);
        let boundary = SimplicialComplex::new(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert_eq!(boundary.minimal_nonfaces(), vec![set(&[1, 2, 3])]);
        assert!(SimplicialComplex::simplex(4).minimal_nonfaces().is_empty());
        let l = SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(l.minimal_nonfaces(), vec![set(&[1, 3]), set(&[1, 4])]);
    }

    #[test]
    fn validation() {
        assert!(SimplicialComplex::new(3, &[vec![1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![1, 3]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![1, 1], vec![2]]).is_err());
        let k = SimplicialComplex::new(3, &[vec![1], vec![1, 2], vec![3], vec![2, 1]]).unwrap();
        assert_eq!(k.facets().len(), 2);
        assert!(k.facets().contains(&set(&[1, 2])) && k.facets().contains(&set(&[3])));
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::from_json(r#"{"m": 4, "facets": [[1,2],[2,3,4]]}"#).unwrap();
        assert_eq!(SimplicialComplex::from_value(&k.to_json()).unwrap(), k);
        assert!(matches!(SimplicialComplex::from_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn faces_of_point() {
        let point = SimplicialComplex::new(0, &[vec![]]).unwrap();
        assert_eq!(point.faces(), vec![VertexSet::EMPTY]);
        assert!(point.minimal_nonfaces().is_empty());
    }
}
