//! Oriented simply laced Dynkin diagrams.
//!
//! Vertices are stored internally as `0..n` in a topological order, so every
//! arrow `(s, t)` satisfies `s < t`. Users talk in the labels of the standard
//! diagram (`1..=n`), and every textual interface converts at the boundary.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramType {
    A,
    D,
    E,
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagramType::A => "A",
            DiagramType::D => "D",
            DiagramType::E => "E",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for DiagramType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(DiagramType::A),
            "D" | "d" => Ok(DiagramType::D),
            "E" | "e" => Ok(DiagramType::E),
            other => Err(Error::Parse(format!("unknown diagram type '{other}'"))),
        }
    }
}

/// Edges of the standard labeled diagram, as unordered pairs of 1-based labels.
///
/// A_n is the chain `1 - 2 - ... - n`. D_n is the chain `1 - ... - (n-1)` with
/// `n` attached to `n-2`. E_n is the chain `1 - ... - (n-1)` with `n` attached
/// to `3`.
pub fn standard_edges(kind: DiagramType, rank: usize) -> Result<Vec<(usize, usize)>> {
    let chain_len = match kind {
        DiagramType::A if rank >= 1 => rank,
        DiagramType::D if rank >= 4 => rank - 1,
        DiagramType::E if (6..=8).contains(&rank) => rank - 1,
        _ => {
            return Err(Error::InvalidQuiver(format!(
                "{kind}{rank} is not a Dynkin diagram"
            )))
        }
    };
    let mut edges: Vec<(usize, usize)> = (1..chain_len).map(|i| (i, i + 1)).collect();
    match kind {
        DiagramType::A => {}
        DiagramType::D => edges.push((rank - 2, rank)),
        DiagramType::E => edges.push((3, rank)),
    }
    Ok(edges)
}

/// A dimension vector in internal vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::Precondition(format!(
                "dimension vector {coords:?} has a negative entry"
            )));
        }
        Ok(DimVector(coords))
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of the coordinates.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, other: &DimVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// `self - other`, or `None` if a coordinate would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        v.iter().all(|&c| c >= 0).then_some(DimVector(v))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All vectors of length `rank` with coordinate sum at most `max_total`,
    /// ordered by total and then lexicographically.
    pub fn all_up_to(rank: usize, max_total: i64) -> Vec<DimVector> {
        let mut out = vec![DimVector::zero(rank)];
        let mut frontier = vec![DimVector::zero(rank)];
        for _ in 0..max_total {
            let mut next = std::collections::BTreeSet::new();
            for v in &frontier {
                for i in 0..rank {
                    let mut w = v.clone();
                    w.0[i] += 1;
                    next.insert(w);
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;

    /// Panics if the difference has a negative entry; use `checked_sub` otherwise.
    fn sub(self, rhs: &DimVector) -> DimVector {
        self.checked_sub(rhs).expect("negative dimension vector")
    }
}

/// An oriented ADE diagram with vertices renumbered topologically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinQuiver {
    kind: DiagramType,
    rank: usize,
    /// Arrows in internal indices, sorted, each with `s < t`.
    arrows: Vec<(usize, usize)>,
    /// `labels[v]` is the user label of internal vertex `v`.
    labels: Vec<usize>,
    /// `index_of[label - 1]` is the internal vertex of a user label.
    index_of: Vec<usize>,
}

impl DynkinQuiver {
    /// Build a quiver from arrows given in user labels.
    pub fn new(kind: DiagramType, rank: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let expected: BTreeSet<(usize, usize)> = standard_edges(kind, rank)?.into_iter().collect();
        let mut seen = BTreeSet::new();
        for &(s, t) in arrows {
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at vertex {s}")));
            }
            if s == 0 || t == 0 || s > rank || t > rank {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {s}->{t} uses a vertex outside 1..={rank}"
                )));
            }
            let edge = (s.min(t), s.max(t));
            if !seen.insert(edge) {
                return Err(Error::InvalidQuiver(format!(
                    "multiple edges between {} and {}",
                    edge.0, edge.1
                )));
            }
            if !expected.contains(&edge) {
                return Err(Error::InvalidQuiver(format!(
                    "edge {}-{} is not in the {kind}{rank} diagram",
                    edge.0, edge.1
                )));
            }
        }
        if seen != expected {
            let missing: Vec<String> = expected
                .difference(&seen)
                .map(|(a, b)| format!("{a}-{b}"))
                .collect();
            return Err(Error::InvalidQuiver(format!(
                "missing orientation for edges {}",
                missing.join(", ")
            )));
        }

        // Kahn's algorithm, always taking the smallest available label.
        let mut indeg = vec![0usize; rank + 1];
        for &(_, t) in arrows {
            indeg[t] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=rank).filter(|&v| indeg[v] == 0).collect();
        let mut labels = Vec::with_capacity(rank);
        while let Some(v) = ready.pop_first() {
            labels.push(v);
            for &(s, t) in arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        if labels.len() != rank {
            // Unreachable for trees, kept as a guard for malformed input.
            return Err(Error::InvalidQuiver("orientation is cyclic".into()));
        }
        let mut index_of = vec![0; rank];
        for (v, &l) in labels.iter().enumerate() {
            index_of[l - 1] = v;
        }
        let mut internal: Vec<(usize, usize)> = arrows
            .iter()
            .map(|&(s, t)| (index_of[s - 1], index_of[t - 1]))
            .collect();
        internal.sort_unstable();
        Ok(DynkinQuiver {
            kind,
            rank,
            arrows: internal,
            labels,
            index_of,
        })
    }

    /// The standard diagram with every edge oriented from smaller to larger label.
    pub fn standard(kind: DiagramType, rank: usize) -> Result<Self> {
        let edges = standard_edges(kind, rank)?;
        Self::new(kind, rank, &edges)
    }

    /// Parse names such as `A3`, `D4`, `E6`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let kind: DiagramType = chars
            .next()
            .ok_or_else(|| Error::Parse("empty diagram name".into()))?
            .to_string()
            .parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad diagram name '{name}'")))?;
        Self::standard(kind, rank)
    }

    /// Parse the quiver spec format: `type A 3` followed by `arrow s t` lines.
    pub fn from_spec(text: &str) -> Result<Self> {
        let mut header: Option<(DiagramType, usize)> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: cannot parse '{line}'", lineno + 1));
            match words.as_slice() {
                ["type", kind, rank] if header.is_none() => {
                    header = Some((kind.parse()?, rank.parse().map_err(|_| bad())?));
                }
                ["arrow", s, t] if header.is_some() => {
                    arrows.push((s.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?));
                }
                _ => return Err(bad()),
            }
        }
        let (kind, rank) = header.ok_or_else(|| Error::Parse("missing 'type' line".into()))?;
        Self::new(kind, rank, &arrows)
    }

    /// Render in the spec format, using user labels.
    pub fn to_spec(&self) -> String {
        let mut out = format!("type {} {}\n", self.kind, self.rank);
        for (s, t) in self.arrows_user() {
            out.push_str(&format!("arrow {s} {t}\n"));
        }
        out
    }

    pub fn kind(&self) -> DiagramType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// Arrows in internal indices, each with `s < t`.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Arrows in user labels, sorted by label.
    pub fn arrows_user(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<_> = self
            .arrows
            .iter()
            .map(|&(s, t)| (self.labels[s], self.labels[t]))
            .collect();
        a.sort_unstable();
        a
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn index(&self, label: usize) -> Result<usize> {
        if label == 0 || label > self.rank {
            return Err(Error::Parse(format!(
                "vertex {label} is outside 1..={}",
                self.rank
            )));
        }
        Ok(self.index_of[label - 1])
    }

    /// Whether the user labels already form a topological order.
    pub fn is_identity_numbering(&self) -> bool {
        self.labels.iter().enumerate().all(|(v, &l)| l == v + 1)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|&(s, t)| {
                if s == v {
                    Some(t)
                } else if t == v {
                    Some(s)
                } else {
                    None
                }
            })
            .collect();
        n.sort_unstable();
        n
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.arrows.iter().any(|&(s, t)| (s, t) == (a, b) || (s, t) == (b, a))
    }

    /// Euler form `sum a_i b_i - sum_h a_s(h) b_t(h)`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.euler_unchecked(a.coords(), b.coords()))
    }

    pub(crate) fn euler_unchecked(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum();
        diag - off
    }

    /// Symmetrised Euler form `(a, b) = <a, b> + <b, a>`.
    pub fn symmetric_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    /// Euler matrix `E` with `<a, b> = a^T E b`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut e = vec![vec![0; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            e[s][t] -= 1;
        }
        e
    }

    /// Cartan matrix in internal vertex order.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &self.arrows {
            c[s][t] -= 1;
            c[t][s] -= 1;
        }
        c
    }

    /// Simple reflection `s_i(v) = v - (sum_j C_ij v_j) e_i` on a signed vector.
    pub fn reflect(&self, i: usize, v: &mut [i64]) {
        let mut pairing = 2 * v[i];
        for j in self.neighbors(i) {
            pairing -= v[j];
        }
        v[i] -= pairing;
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.kind {
            DiagramType::A => n * (n + 1) / 2,
            DiagramType::D => n * (n - 1),
            DiagramType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match self.kind {
            DiagramType::A => n + 1,
            DiagramType::D => 2 * n - 2,
            DiagramType::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// Internal vertices reachable from `v` by a directed path (including `v`).
    pub fn successors_closure(&self, v: usize) -> Vec<bool> {
        let mut reach = vec![false; self.rank];
        reach[v] = true;
        // Arrows go up in the topological order, so one sweep suffices.
        for &(s, t) in &self.arrows {
            if reach[s] {
                reach[t] = true;
            }
        }
        reach
    }

    /// Dimension vector of the indecomposable projective at `v`.
    pub fn projective_dim(&self, v: usize) -> DimVector {
        DimVector(self.successors_closure(v).iter().map(|&r| r as i64).collect())
    }

    /// Dimension vector of the indecomposable injective at `v`.
    pub fn injective_dim(&self, v: usize) -> DimVector {
        DimVector((0..self.rank).map(|u| self.successors_closure(u)[v] as i64).collect())
    }

    pub fn simple_dim(&self, v: usize) -> DimVector {
        DimVector::unit(self.rank, v)
    }

    fn check_len(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a quiver of rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Parse comma-separated coordinates in user labels, e.g. `0,1,1`.
    pub fn parse_dim(&self, text: &str) -> Result<DimVector> {
        let coords: Vec<i64> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate '{}' in '{text}'", t.trim())))
            })
            .collect::<Result<_>>()?;
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "'{text}' has {} coordinates, expected {}",
                coords.len(),
                self.rank
            )));
        }
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::Parse(format!("negative coordinate in '{text}'")));
        }
        self.from_user(&coords)
    }

    /// Convert a vector indexed by user label (position `l - 1`) into internal order.
    pub fn from_user(&self, coords: &[i64]) -> Result<DimVector> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for rank {}",
                coords.len(),
                self.rank
            )));
        }
        DimVector::new((0..self.rank).map(|v| coords[self.labels[v] - 1]).collect())
    }

    /// Coordinates indexed by user label.
    pub fn to_user(&self, v: &DimVector) -> Vec<i64> {
        (1..=self.rank).map(|l| v.get(self.index_of[l - 1])).collect()
    }

    pub fn format_dim(&self, v: &DimVector) -> String {
        self.to_user(v)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Whether the quiver is `1 -> 2 -> ... -> n` in user labels.
    pub fn is_linear_a(&self) -> bool {
        self.kind == DiagramType::A && self.arrows_user().iter().all(|&(s, t)| t == s + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_linear() {
        let q = DynkinQuiver::new(DiagramType::A, 3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(q.arrows_user(), vec![(1, 2), (2, 3)]);
        assert!(q.is_identity_numbering());
        assert!(q.is_linear_a());
    }

    #[test]
    fn a1_has_no_arrows() {
        let q = DynkinQuiver::new(DiagramType::A, 1, &[]).unwrap();
        assert_eq!(q.rank(), 1);
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn d4_into_center_is_renumbered() {
        let q = DynkinQuiver::new(DiagramType::D, 4, &[(1, 2), (3, 2), (4, 2)]).unwrap();
        assert_eq!(q.arrows().len(), 3);
        assert_eq!(q.label(3), 2);
        assert!(q.arrows().iter().all(|&(s, t)| s < t));
        assert!(!q.is_identity_numbering());
    }

    #[test]
    fn reversed_a3_is_renumbered() {
        let q = DynkinQuiver::new(DiagramType::A, 3, &[(2, 1), (3, 2)]).unwrap();
        assert_eq!(q.labels(), &[3, 2, 1]);
        assert_eq!(q.arrows(), &[(0, 1), (1, 2)]);
        let v = q.parse_dim("1,0,0").unwrap();
        assert_eq!(v.coords(), &[0, 0, 1]);
        assert_eq!(q.format_dim(&v), "1,0,0");
        assert!(!q.is_linear_a());
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            DynkinQuiver::new(DiagramType::A, 3, &[(1, 2)]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            DynkinQuiver::new(DiagramType::A, 3, &[(1, 2), (2, 1), (2, 3)]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            DynkinQuiver::new(DiagramType::A, 3, &[(1, 3), (2, 3)]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            DynkinQuiver::new(DiagramType::A, 2, &[(1, 1)]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(DynkinQuiver::standard(DiagramType::D, 3).is_err());
        assert!(DynkinQuiver::standard(DiagramType::E, 9).is_err());
        assert!(DynkinQuiver::standard(DiagramType::A, 0).is_err());
    }

    #[test]
    fn spec_format_round_trip() {
        let text = "# a twisted D5\ntype D 5\narrow 2 1\narrow 2 3\narrow 4 3\narrow 3 5\n";
        let q = DynkinQuiver::from_spec(text).unwrap();
        let again = DynkinQuiver::from_spec(&q.to_spec()).unwrap();
        assert_eq!(q, again);
        assert!(DynkinQuiver::from_spec("arrow 1 2").is_err());
        assert!(DynkinQuiver::from_spec("type A 2\narrow 1 x").is_err());
    }

    #[test]
    fn euler_form_examples() {
        let q = DynkinQuiver::from_name("A3").unwrap();
        let a = q.parse_dim("1,1,0").unwrap();
        let b = q.parse_dim("0,1,1").unwrap();
        assert_eq!(q.euler_form(&a, &b).unwrap(), -1);
        assert_eq!(q.euler_form(&a, &DimVector::zero(3)).unwrap(), 0);
        assert!(q.euler_form(&a, &DimVector::zero(2)).is_err());
    }

    #[test]
    fn symmetric_form_is_cartan() {
        for name in ["A1", "A4", "D4", "D6", "E6", "E7", "E8"] {
            let q = DynkinQuiver::from_name(name).unwrap();
            let c = q.cartan_matrix();
            for i in 0..q.rank() {
                for j in 0..q.rank() {
                    let (ei, ej) = (q.simple_dim(i), q.simple_dim(j));
                    assert_eq!(q.symmetric_form(&ei, &ej).unwrap(), c[i][j]);
                }
            }
        }
    }

    #[test]
    fn projectives_and_injectives_in_a2() {
        let q = DynkinQuiver::from_name("A2").unwrap();
        assert_eq!(q.projective_dim(0).coords(), &[1, 1]);
        assert_eq!(q.projective_dim(1).coords(), &[0, 1]);
        assert_eq!(q.injective_dim(0).coords(), &[1, 0]);
        assert_eq!(q.injective_dim(1).coords(), &[1, 1]);
    }
}
