//! Affine Cartan data and classical weights.
//!
//! Convention: `⟨α_i^∨, α_j⟩ = a_ij`, so the classical image of `α_j` is
//! `Σ_i a_ij Λ_i` (column `j` of the matrix). Marks `a_i` span the right
//! kernel (`Σ_j a_ij a_j = 0`, the null root `δ`), comarks `a_i^∨` the left
//! kernel (`Σ_i a_i^∨ a_ij = 0`, the central element `c`). The level of a
//! classical weight `Σ k_i Λ_i` is `Σ a_i^∨ k_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("invalid Cartan data: {0}")]
    Invalid(String),
    #[error("unknown index `{0}`")]
    UnknownIndex(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("a word must be nonempty")]
    EmptyWord,
    #[error("index {0} does not occur in the word")]
    IndexAbsent(usize),
    #[error("no Verma relation for (a_ij, a_ji) = ({0}, {1})")]
    UnsupportedPair(i64, i64),
}

#[derive(Deserialize)]
struct RawCartan {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

/// Index set, generalized Cartan matrix, marks and comarks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCartan")]
pub struct CartanData {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

impl TryFrom<RawCartan> for CartanData {
    type Error = CartanError;
    fn try_from(r: RawCartan) -> Result<Self, CartanError> {
        CartanData::new(r.labels, r.matrix, r.marks, r.comarks)
    }
}

impl CartanData {
    /// Checks the generalized-Cartan-matrix axioms and shapes. Whether the
    /// marks actually span the kernels is checked separately by
    /// [`CartanData::check_marks`].
    pub fn new(
        labels: Vec<String>,
        matrix: Vec<Vec<i64>>,
        marks: Vec<i64>,
        comarks: Vec<i64>,
    ) -> Result<Self, CartanError> {
        let n = labels.len();
        let bad = |m: String| Err(CartanError::Invalid(m));
        if n == 0 {
            return bad("empty index set".into());
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return bad(format!("matrix must be {n}x{n}"));
        }
        if marks.len() != n || comarks.len() != n {
            return bad("marks and comarks need one entry per index".into());
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return bad(format!("a_{i}{i} = {} (must be 2)", matrix[i][i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return bad(format!("a_{i}{j} = {} is positive", matrix[i][j]));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return bad(format!("a_{i}{j} and a_{j}{i} must vanish together"));
                }
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return bad("duplicate labels".into());
        }
        Ok(CartanData {
            labels,
            matrix,
            marks,
            comarks,
        })
    }

    /// Type G2^(1), nodes 0 - 1 ≡> 2.
    pub fn g2_affine() -> Self {
        CartanData::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -3, 2]],
            vec![1, 2, 3],
            vec![1, 2, 1],
        )
        .expect("valid preset")
    }

    /// Type D4^(3), the Langlands dual of G2^(1) (transposed matrix).
    pub fn d43_affine() -> Self {
        CartanData::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![vec![2, -1, 0], vec![-1, 2, -3], vec![0, -1, 2]],
            vec![1, 2, 1],
            vec![1, 2, 3],
        )
        .expect("valid preset")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "G2(1)" | "g2-affine" => Some(CartanData::g2_affine()),
            "D4(3)" | "d43-affine" => Some(CartanData::d43_affine()),
            _ => None,
        }
    }

    /// Verifies that marks are a positive right-kernel vector and comarks a
    /// positive left-kernel vector of the matrix.
    pub fn check_marks(&self) -> Result<(), CartanError> {
        let n = self.rank();
        for i in 0..n {
            let s: i64 = (0..n).map(|j| self.matrix[i][j] * self.marks[j]).sum();
            if s != 0 {
                return Err(CartanError::Invalid(format!(
                    "marks are not in the kernel (row {i} gives {s})"
                )));
            }
        }
        for j in 0..n {
            let s: i64 = (0..n).map(|i| self.comarks[i] * self.matrix[i][j]).sum();
            if s != 0 {
                return Err(CartanError::Invalid(format!(
                    "comarks are not in the co-kernel (column {j} gives {s})"
                )));
            }
        }
        if self.marks.iter().chain(&self.comarks).any(|&m| m <= 0) {
            return Err(CartanError::Invalid("marks must be positive".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CartanError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CartanError::UnknownIndex(label.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<(), CartanError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(CartanError::IndexOutOfRange(i))
        }
    }

    /// Classical image of the simple root `α_j`.
    pub fn simple_root(&self, j: usize) -> ClassicalWeight {
        ClassicalWeight::new((0..self.rank()).map(|i| self.matrix[i][j]).collect())
    }

    pub fn level(&self, w: &ClassicalWeight) -> i64 {
        w.coeffs().iter().zip(&self.comarks).map(|(k, a)| k * a).sum()
    }

    /// All dominant classical weights of level `l`, in lexicographic order
    /// of their coefficient vectors.
    pub fn dominant_weights(&self, l: i64) -> Vec<ClassicalWeight> {
        fn go(comarks: &[i64], left: i64, acc: &mut Vec<i64>, out: &mut Vec<ClassicalWeight>) {
            if acc.len() == comarks.len() {
                if left == 0 {
                    out.push(ClassicalWeight::new(acc.clone()));
                }
                return;
            }
            let a = comarks[acc.len()];
            for k in 0..=left / a {
                acc.push(k);
                go(comarks, left - k * a, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if l >= 0 {
            go(&self.comarks, l, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// `Σ k_i Λ_i` in the classical weight lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassicalWeight(Vec<i64>);

impl ClassicalWeight {
    pub fn new(k: Vec<i64>) -> Self {
        ClassicalWeight(k)
    }

    pub fn zero(rank: usize) -> Self {
        ClassicalWeight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut k = vec![0; rank];
        k[i] = 1;
        ClassicalWeight(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// `⟨α_i^∨, λ⟩`, i.e. the coefficient of `Λ_i`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn add(&self, o: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> ClassicalWeight {
        self.scale(-1)
    }
}

impl fmt::Display for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("L{i}")),
                -1 => parts.push(format!("-L{i}")),
                _ => parts.push(format!("{k}L{i}")),
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join("+").replace("+-", "-"))
    }
}

impl fmt::Debug for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonempty sequence of indices. Reducedness is not checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(w: Vec<usize>) -> Result<Self, CartanError> {
        if w.is_empty() {
            return Err(CartanError::EmptyWord);
        }
        Ok(Word(w))
    }

    /// The word `(0,1,2,1,2,1)` parametrizing the G2^(1) crystal.
    pub fn g2_v1() -> Self {
        Word(vec![0, 1, 2, 1, 2, 1])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn validate(&self, cartan: &CartanData) -> Result<(), CartanError> {
        self.0.iter().try_for_each(|&i| cartan.check_index(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_have_consistent_marks() {
        CartanData::g2_affine().check_marks().unwrap();
        CartanData::d43_affine().check_marks().unwrap();
    }

    #[test]
    fn g2_roots_in_pcl() {
        let g = CartanData::g2_affine();
        assert_eq!(g.simple_root(0), ClassicalWeight::new(vec![2, -1, 0]));
        assert_eq!(g.simple_root(1), ClassicalWeight::new(vec![-1, 2, -3]));
        assert_eq!(g.simple_root(2), ClassicalWeight::new(vec![0, -1, 2]));
        for j in 0..3 {
            assert_eq!(g.level(&g.simple_root(j)), 0);
        }
    }

    #[test]
    fn d43_roots_in_pcl() {
        let d = CartanData::d43_affine();
        assert_eq!(d.simple_root(0), ClassicalWeight::new(vec![2, -1, 0]));
        assert_eq!(d.simple_root(1), ClassicalWeight::new(vec![-1, 2, -1]));
        assert_eq!(d.simple_root(2), ClassicalWeight::new(vec![0, -3, 2]));
    }

    #[test]
    fn same_comarks_as_marks_fail_for_g2() {
        let js = r#"{"labels":["0","1","2"],"matrix":[[2,-1,0],[-1,2,-1],[0,-3,2]],"marks":[1,2,3],"comarks":[1,2,3]}"#;
        let c: CartanData = serde_json::from_str(js).unwrap();
        assert!(c.check_marks().is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let g = CartanData::g2_affine();
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<CartanData>(&js).unwrap(), g);
        let bad = r#"{"labels":["0","1"],"matrix":[[2,1],[-1,2]],"marks":[1,1],"comarks":[1,1]}"#;
        assert!(serde_json::from_str::<CartanData>(bad).is_err());
        let bad = r#"{"labels":["0","1"],"matrix":[[2,0],[-1,2]],"marks":[1,1],"comarks":[1,1]}"#;
        assert!(serde_json::from_str::<CartanData>(bad).is_err());
    }

    #[test]
    fn dominant_weights_by_level() {
        let d = CartanData::d43_affine();
        let w = |v: Vec<i64>| ClassicalWeight::new(v);
        assert_eq!(d.dominant_weights(1), vec![w(vec![1, 0, 0])]);
        assert_eq!(d.dominant_weights(2), vec![w(vec![0, 1, 0]), w(vec![2, 0, 0])]);
        assert_eq!(d.dominant_weights(3).len(), 3);
        for l in 0..8 {
            for wt in d.dominant_weights(l) {
                assert!(wt.is_dominant());
                assert_eq!(d.level(&wt), l);
            }
        }
    }

    #[test]
    fn word_rules() {
        assert_eq!(Word::new(vec![]), Err(CartanError::EmptyWord));
        let g = CartanData::g2_affine();
        assert!(Word::new(vec![0, 3]).unwrap().validate(&g).is_err());
        assert_eq!(Word::g2_v1().len(), 6);
        assert_eq!(g.index_of("2"), Ok(2));
        assert!(g.index_of("7").is_err());
    }
}
