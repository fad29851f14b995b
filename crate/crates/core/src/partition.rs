//! Kostant partitions: multisets of positive roots.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quiver::{DiagramType, DimVector, DynkinQuiver};
use crate::roots::RootTable;

/// A multiset of root indices, kept sorted in decreasing order, with its total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantPartition {
    total: DimVector,
    parts: Vec<usize>,
}

impl KostantPartition {
    pub fn empty(rank: usize) -> Self {
        KostantPartition {
            total: DimVector::zero(rank),
            parts: Vec::new(),
        }
    }

    pub fn from_parts(roots: &RootTable, mut parts: Vec<usize>) -> Result<Self> {
        let rank = roots.root(0).len();
        let mut total = DimVector::zero(rank);
        for &p in &parts {
            if p >= roots.len() {
                return Err(Error::Precondition(format!("root index {p} out of range")));
            }
            total = &total + roots.root(p);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(KostantPartition { total, parts })
    }

    pub fn single(roots: &RootTable, k: usize) -> Self {
        Self::from_parts(roots, vec![k]).expect("valid root index")
    }

    /// Multiplicity vector indexed by root.
    pub fn from_multiplicities(roots: &RootTable, mult: &[usize]) -> Self {
        let parts = mult
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(k, m))
            .collect();
        Self::from_parts(roots, parts).expect("valid multiplicities")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> &DimVector {
        &self.total
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn multiplicities(&self, num_roots: usize) -> Vec<usize> {
        let mut m = vec![0; num_roots];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Multiset union.
    pub fn sum(&self, other: &KostantPartition) -> KostantPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        KostantPartition {
            total: &self.total + &other.total,
            parts,
        }
    }

    /// All Kostant partitions of `gamma`, sorted.
    pub fn enumerate(roots: &RootTable, gamma: &DimVector) -> Vec<KostantPartition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        enumerate_rec(roots, gamma.clone(), roots.len(), &mut current, &mut out);
        let rank = gamma.len();
        let mut result: Vec<KostantPartition> = out
            .into_iter()
            .map(|parts| KostantPartition {
                total: gamma.clone(),
                parts,
            })
            .collect();
        if result.is_empty() && gamma.is_zero() {
            result.push(Self::empty(rank));
        }
        result.sort();
        result
    }

    /// Segment syntax in type A (`[1,2]+[2,3]`), coordinate syntax otherwise.
    /// Parts are listed in increasing root order; the empty partition is `0`.
    pub fn format(&self, q: &DynkinQuiver, roots: &RootTable) -> String {
        if q.kind() == DiagramType::A {
            self.format_segments(q, roots)
        } else {
            self.format_coords(q, roots)
        }
    }

    pub fn format_segments(&self, q: &DynkinQuiver, roots: &RootTable) -> String {
        self.join_parts(|k, out| {
            let (a, b) = roots.segment(q, k).expect("type A root");
            let _ = write!(out, "[{a},{b}]");
        })
    }

    pub fn format_coords(&self, q: &DynkinQuiver, roots: &RootTable) -> String {
        self.join_parts(|k, out| out.push_str(&q.format_dim(roots.root(k))))
    }

    fn join_parts(&self, mut each: impl FnMut(usize, &mut String)) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, &k) in self.parts.iter().rev().enumerate() {
            if n > 0 {
                out.push('+');
            }
            each(k, &mut out);
        }
        out
    }

    /// Parse either syntax. Summands are separated by `+`; a summand may carry
    /// a multiplicity prefix such as `2[1,1]` or `2*1,0,0`.
    pub fn parse(text: &str, q: &DynkinQuiver, roots: &RootTable) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(Self::empty(q.rank()));
        }
        let mut parts = Vec::new();
        for token in trimmed.split('+') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::Parse(format!("empty summand in '{text}'")));
            }
            let (mult, body) = split_multiplicity(token)?;
            let k = parse_root(body, q, roots)?;
            parts.extend(std::iter::repeat_n(k, mult));
        }
        Self::from_parts(roots, parts)
    }
}

fn enumerate_rec(
    roots: &RootTable,
    remaining: DimVector,
    limit: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining.is_zero() {
        out.push(current.clone());
        return;
    }
    for k in (0..limit).rev() {
        if let Some(rest) = remaining.checked_sub(roots.root(k)) {
            current.push(k);
            // Allow k again to keep parts non-increasing.
            enumerate_rec(roots, rest, k + 1, current, out);
            current.pop();
        }
    }
}

fn split_multiplicity(token: &str) -> Result<(usize, &str)> {
    let digits = token.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 || digits == token.len() {
        return Ok((1, token));
    }
    let rest = &token[digits..];
    let body = if let Some(b) = rest.strip_prefix('*') {
        b.trim()
    } else if rest.starts_with('[') {
        rest
    } else {
        // Plain coordinates such as `1,1,0`.
        return Ok((1, token));
    };
    let mult = token[..digits]
        .parse()
        .map_err(|_| Error::Parse(format!("bad multiplicity in '{token}'")))?;
    Ok((mult, body))
}

fn parse_root(body: &str, q: &DynkinQuiver, roots: &RootTable) -> Result<usize> {
    if let Some(inner) = body.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated segment '{body}'")))?;
        if q.kind() != DiagramType::A {
            return Err(Error::Parse(format!(
                "segment syntax '{body}' needs a type A quiver"
            )));
        }
        let ends: Vec<&str> = inner.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad segment '{body}'")))
        };
        let (a, b) = match ends.as_slice() {
            [a] => (parse(a)?, parse(a)?),
            [a, b] => (parse(a)?, parse(b)?),
            _ => return Err(Error::Parse(format!("bad segment '{body}'"))),
        };
        return roots.segment_index(q, a, b);
    }
    let v = q.parse_dim(body)?;
    roots
        .index_of(&v)
        .ok_or_else(|| Error::Parse(format!("'{body}' is not a positive root of {}", q.name())))
}

/// Type-A rank function: number of segments of `lambda` containing `[i, j]`
/// (user labels).
pub fn segment_rank(
    lambda: &KostantPartition,
    q: &DynkinQuiver,
    roots: &RootTable,
    i: usize,
    j: usize,
) -> usize {
    lambda
        .parts()
        .iter()
        .filter(|&&k| {
            let (a, b) = roots.segment(q, k).expect("type A root");
            a <= i && j <= b
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(name: &str) -> (DynkinQuiver, RootTable) {
        let q = DynkinQuiver::from_name(name).unwrap();
        let t = RootTable::new(&q);
        (q, t)
    }

    #[test]
    fn a2_counts() {
        let (q, t) = setup("A2");
        assert_eq!(KostantPartition::enumerate(&t, &q.parse_dim("1,1").unwrap()).len(), 2);
        assert_eq!(KostantPartition::enumerate(&t, &q.parse_dim("2,2").unwrap()).len(), 3);
        assert_eq!(KostantPartition::enumerate(&t, &q.parse_dim("1,0").unwrap()).len(), 1);
        let zero = KostantPartition::enumerate(&t, &DimVector::zero(2));
        assert_eq!(zero, vec![KostantPartition::empty(2)]);
    }

    #[test]
    fn parse_examples() {
        let (q, t) = setup("A3");
        let l = KostantPartition::parse("[1,3]+[2,2]", &q, &t).unwrap();
        assert_eq!(l.total().coords(), &[1, 2, 1]);
        assert_eq!(l.format(&q, &t), "[1,3]+[2,2]");
        let m = KostantPartition::parse("1,1,0 + 0,1,1", &q, &t).unwrap();
        assert_eq!(m.format(&q, &t), "[1,2]+[2,3]");
        assert_eq!(m.format_coords(&q, &t), "1,1,0+0,1,1");
        assert!(matches!(KostantPartition::parse("[3,2]", &q, &t), Err(Error::Parse(_))));
        assert!(matches!(KostantPartition::parse("1,0,1", &q, &t), Err(Error::Parse(_))));
        assert!(matches!(KostantPartition::parse("[1,2]+", &q, &t), Err(Error::Parse(_))));
        assert!(matches!(KostantPartition::parse("[1,x]", &q, &t), Err(Error::Parse(_))));
        let two = KostantPartition::parse("2[1,1]+[3]", &q, &t).unwrap();
        assert_eq!(two.format(&q, &t), "[1,1]+[1,1]+[3,3]");
        let star = KostantPartition::parse("2*1,0,0", &q, &t).unwrap();
        assert_eq!(star, KostantPartition::parse("[1,1]+[1,1]", &q, &t).unwrap());
        assert_eq!(KostantPartition::parse("0", &q, &t).unwrap().format(&q, &t), "0");
    }

    #[test]
    fn d4_uses_coordinates() {
        let (q, t) = setup("D4");
        let top = t.roots().iter().position(|r| r.coords().contains(&2)).unwrap();
        let l = KostantPartition::single(&t, top);
        let text = l.format(&q, &t);
        assert_eq!(text, "1,2,1,1");
        assert_eq!(KostantPartition::parse(&text, &q, &t).unwrap(), l);
        assert!(KostantPartition::parse("[1,2]", &q, &t).is_err());
    }

    #[test]
    fn rank_function() {
        let (q, t) = setup("A3");
        let l = KostantPartition::parse("[1,3]+[2,2]", &q, &t).unwrap();
        assert_eq!(segment_rank(&l, &q, &t, 2, 2), 2);
        assert_eq!(segment_rank(&l, &q, &t, 1, 3), 1);
    }

    #[test]
    fn enumerate_round_trip_a4() {
        let (q, t) = setup("A4");
        let mut total = 0;
        for g in DimVector::all_up_to(4, 8) {
            for l in KostantPartition::enumerate(&t, &g) {
                assert_eq!(l.total(), &g);
                let s = l.format(&q, &t);
                assert_eq!(KostantPartition::parse(&s, &q, &t).unwrap(), l);
                let sum = l.parts().iter().fold(DimVector::zero(4), |acc, &k| &acc + t.root(k));
                assert_eq!(sum, g);
                total += 1;
            }
        }
        assert!(total > 1000);
    }
}
