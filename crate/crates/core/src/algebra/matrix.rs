use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Dense square matrix over [`Polynomial`] whose rows and columns share one label list.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    labels: Vec<String>,
    entries: Vec<Polynomial>,
}

impl SquareMatrix {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix(format!(
                "expected {n}x{n} entries for {n} labels"
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::BadMatrix(format!("duplicate label `{dup}`")));
        }
        Ok(SquareMatrix {
            labels,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Labels `0..n` as strings.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(labels, rows)
    }

    pub fn from_fn(labels: Vec<String>, mut f: impl FnMut(usize, usize) -> Polynomial) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(labels, rows)
    }

    pub fn identity(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(labels, |i, j| {
            if i == j {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
        .expect("distinct labels")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size() + j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn entry(&self, row: &str, col: &str) -> Result<&Polynomial> {
        let i = self
            .index_of(row)
            .ok_or_else(|| Error::UnknownRoom(row.to_owned()))?;
        let j = self
            .index_of(col)
            .ok_or_else(|| Error::UnknownRoom(col.to_owned()))?;
        Ok(self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        let n = self.size();
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Principal submatrix on the given labels, in the given order.
    pub fn restrict(&self, labels: &[String]) -> Result<SquareMatrix> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownRoom(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_fn(labels.to_vec(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// Same matrix with rows and columns reordered to `labels`.
    pub fn permuted(&self, labels: &[String]) -> Result<SquareMatrix> {
        if labels.len() != self.size() {
            return Err(Error::BadMatrix("permutation has the wrong length".into()));
        }
        self.restrict(labels)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> SquareMatrix {
        SquareMatrix {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> SquareMatrix {
        Self::from_fn(self.labels.clone(), |i, j| self.get(j, i).clone()).expect("same labels")
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        let n = self.size();
        if other.size() != n {
            return Err(Error::BadMatrix("size mismatch in product".into()));
        }
        Self::from_fn(self.labels.clone(), |i, j| {
            (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix {:?}", self.labels)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// JSON form: `{"labels": [...], "entries": [["1","x"],["y","1"]]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    labels: Vec<String>,
    entries: Vec<Vec<Polynomial>>,
}

impl Serialize for SquareMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            labels: self.labels.clone(),
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquareMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        SquareMatrix::new(r.labels, r.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::poly;

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareMatrix::from_rows(vec![vec![poly("1"), poly("2")]]).is_err());
        assert!(SquareMatrix::new(
            vec!["a".into(), "a".into()],
            vec![vec![poly("1"); 2]; 2]
        )
        .is_err());
    }

    #[test]
    fn restrict_and_lookup() {
        let m = SquareMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![poly("1"), poly("x"), poly("y")],
                vec![poly("2"), poly("3"), poly("4")],
                vec![poly("z"), poly("5"), poly("6")],
            ],
        )
        .unwrap();
        let r = m.restrict(&["c".into(), "a".into()]).unwrap();
        assert_eq!(r.rows(), vec![vec![poly("6"), poly("z")], vec![poly("y"), poly("1")]]);
        assert_eq!(m.entry("a", "b").unwrap(), &poly("x"));
        assert!(m.entry("a", "q").is_err());
        assert_eq!(m.transpose().get(0, 2), &poly("z"));
    }

    #[test]
    fn json_shape() {
        let m = SquareMatrix::from_rows(vec![vec![poly("1"), poly("x")], vec![poly("y"), poly("1")]])
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"labels":["0","1"],"entries":[["1","x"],["y","1"]]}"#);
        let back: SquareMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
