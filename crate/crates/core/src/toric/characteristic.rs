use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::{smith_normal_form, IntMatrix};
use crate::exponents::VertexSet;
use crate::simplicial_dj::SimplicialComplex;

/// The characteristic function λ: row `i` is λ(Fᵢ) ∈ ℤⁿ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<i64>>,
    n: usize,
}

impl CharacteristicMatrix {
    /// `n` is needed explicitly only when there are no rows.
    pub fn new(rows: Vec<Vec<i64>>, n: Option<usize>) -> Result<Self> {
        let n = match (rows.first(), n) {
            (Some(r), Some(n)) if r.len() != n => {
                return Err(Error::Shape(format!("rows have {} entries, expected {n}", r.len())))
            }
            (Some(r), _) => r.len(),
            (None, n) => n.unwrap_or(0),
        };
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Shape(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
        }
        Ok(CharacteristicMatrix { rows, n })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.to_vec(), None)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    fn submatrix(&self, face: VertexSet) -> IntMatrix {
        let rows: Vec<Vec<i64>> = face.iter().map(|i| self.rows[i].clone()).collect();
        IntMatrix::from_rows_with_cols(&rows, self.n).expect("rectangular")
    }
}

impl fmt::Display for CharacteristicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for CharacteristicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whether the rows of every face span a direct summand of ℤⁿ of full rank:
/// the Smith form of each face submatrix must have all invariant factors 1.
pub fn validate_characteristic(k: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Result<bool> {
    if lambda.m() != k.vertices() {
        return Err(Error::Shape(format!(
            "λ has {} rows but the complex has {} vertices",
            lambda.m(),
            k.vertices()
        )));
    }
    for face in k.faces() {
        if face.is_empty() {
            continue;
        }
        if face.len() > lambda.n() {
            return Ok(false);
        }
        let snf = smith_normal_form(&lambda.submatrix(face));
        if snf.rank() != face.len() || !snf.all_units() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validated quasitoric data `(K, λ)`: K is pure of dimension n − 1 and λ
/// satisfies the direct-summand condition on every face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasitoricManifold {
    complex: SimplicialComplex,
    lambda: CharacteristicMatrix,
}

#[derive(Deserialize)]
struct ManifoldJson {
    complex: Value,
    lambda: Vec<Vec<i64>>,
    #[serde(default)]
    n: Option<usize>,
}

impl QuasitoricManifold {
    pub fn new(complex: SimplicialComplex, lambda: CharacteristicMatrix) -> Result<Self> {
        if !validate_characteristic(&complex, &lambda)? {
            return Err(Error::InvalidCharacteristic(format!(
                "λ = {lambda} fails the direct-summand condition on some face of {complex}"
            )));
        }
        if let Some(f) = complex.facets().iter().find(|f| f.len() != lambda.n()) {
            return Err(Error::InvalidCharacteristic(format!(
                "facet {f} has {} vertices, expected n = {}",
                f.len(),
                lambda.n()
            )));
        }
        Ok(QuasitoricManifold { complex, lambda })
    }

    /// Parses `{"complex": {"m": …, "facets": …}, "lambda": [[…], …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ManifoldJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let complex = SimplicialComplex::from_value(&raw.complex)?;
        let n = raw.n.or_else(|| raw.lambda.is_empty().then(|| complex.rank()));
        Self::new(complex, CharacteristicMatrix::new(raw.lambda, n)?)
    }

    pub fn to_json(&self) -> Value {
        json!({ "complex": self.complex.to_json(), "lambda": self.lambda.rows() })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn lambda(&self) -> &CharacteristicMatrix {
        &self.lambda
    }

    /// Vertex count m of K (facet count of the polytope).
    pub fn m(&self) -> usize {
        self.lambda.m()
    }

    /// Complex dimension n of the manifold.
    pub fn n(&self) -> usize {
        self.lambda.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_triangle() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap()
    }

    fn lam(rows: &[Vec<i64>]) -> CharacteristicMatrix {
        CharacteristicMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn validation_examples() {
        let k = boundary_triangle();
        assert!(validate_characteristic(&k, &lam(&[vec![1, 0], vec![0, 1], vec![-1, -1]])).unwrap());
        assert!(!validate_characteristic(&k, &lam(&[vec![1, 0], vec![0, 1], vec![-2, 0]])).unwrap());
        let sq = square();
        assert!(validate_characteristic(&sq, &lam(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])).unwrap());
        assert!(validate_characteristic(&k, &lam(&[vec![1, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn non_primitive_vertex_is_rejected() {
        // A single row (2, 0) already fails on the vertex face.
        let k = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        assert!(!validate_characteristic(&k, &lam(&[vec![2], vec![-1]])).unwrap());
        assert!(validate_characteristic(&k, &lam(&[vec![1], vec![-1]])).unwrap());
    }

    #[test]
    fn manifold_json() {
        let text = r#"{"complex": {"m": 3, "facets": [[1,2],[1,3],[2,3]]}, "lambda": [[1,0],[0,1],[-1,-1]]}"#;
        let mfd = QuasitoricManifold::from_json(text).unwrap();
        assert_eq!((mfd.m(), mfd.n()), (3, 2));
        assert_eq!(QuasitoricManifold::from_json(&mfd.to_json().to_string()).unwrap(), mfd);
        let bad = r#"{"complex": {"m": 3, "facets": [[1,2],[1,3],[2,3]]}, "lambda": [[1,0],[0,1],[-2,0]]}"#;
        assert!(matches!(QuasitoricManifold::from_json(bad), Err(Error::InvalidCharacteristic(_))));
        let point = r#"{"complex": {"m": 0, "facets": [[]]}, "lambda": []}"#;
        assert_eq!(QuasitoricManifold::from_json(point).unwrap().n(), 0);
    }
}
