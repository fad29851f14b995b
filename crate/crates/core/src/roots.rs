//! Positive roots ordered by an adapted reduced word for the longest element.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, DynkinQuiver};

/// Roots `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` for a reduced word of `w_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    word: Vec<usize>,
    roots: Vec<DimVector>,
    index: HashMap<DimVector, usize>,
}

/// Apply `s_{w_0} s_{w_1} ... s_{w_{k-1}}` to `v` (rightmost letter first).
fn apply_word(q: &DynkinQuiver, word: &[usize], v: &mut [i64]) {
    for &i in word.iter().rev() {
        q.reflect(i, v);
    }
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

/// Reduced word for `w_0` adapted to the orientation.
///
/// Sweeps the vertices in topological order (sources first) and appends a
/// letter whenever it keeps the word reduced, until the word has full length.
pub fn adapted_reduced_word(q: &DynkinQuiver) -> Vec<usize> {
    let n = q.rank();
    let m = q.num_positive_roots();
    let mut word = Vec::with_capacity(m);
    while word.len() < m {
        let before = word.len();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            apply_word(q, &word, &mut v);
            if is_positive(&v) {
                word.push(i);
                if word.len() == m {
                    break;
                }
            }
        }
        assert!(word.len() > before, "sweep made no progress");
    }
    word
}

/// Whether each letter is a source of the quiver obtained by reflecting at the
/// letters before it.
pub fn is_adapted(q: &DynkinQuiver, word: &[usize]) -> bool {
    let mut arrows: Vec<(usize, usize)> = q.arrows().to_vec();
    for &i in word {
        if arrows.iter().any(|&(_, t)| t == i) {
            return false;
        }
        for a in arrows.iter_mut() {
            if a.0 == i {
                *a = (a.1, a.0);
            }
        }
    }
    true
}

impl RootTable {
    pub fn new(q: &DynkinQuiver) -> Self {
        Self::with_word(q, adapted_reduced_word(q)).expect("adapted word is valid")
    }

    /// Build from an explicit word; it must be a reduced word of full length.
    pub fn with_word(q: &DynkinQuiver, word: Vec<usize>) -> Result<Self> {
        let n = q.rank();
        let m = q.num_positive_roots();
        if word.len() != m {
            return Err(Error::Precondition(format!(
                "word of length {} but {} positive roots",
                word.len(),
                m
            )));
        }
        if word.iter().any(|&i| i >= n) {
            return Err(Error::Precondition("word letter out of range".into()));
        }
        let mut roots = Vec::with_capacity(m);
        let mut index = HashMap::with_capacity(m);
        for k in 0..m {
            let mut v = vec![0i64; n];
            v[word[k]] = 1;
            apply_word(q, &word[..k], &mut v);
            if !is_positive(&v) {
                return Err(Error::Precondition(format!(
                    "word is not reduced at position {}",
                    k + 1
                )));
            }
            let root = DimVector::new(v).expect("positive");
            if index.insert(root.clone(), k).is_some() {
                return Err(Error::Precondition("word repeats a root".into()));
            }
            roots.push(root);
        }
        Ok(RootTable { word, roots, index })
    }

    /// A second adapted word, obtained by swapping the first adjacent pair of
    /// commuting letters. `None` when no such pair exists.
    pub fn alternative_word(q: &DynkinQuiver, word: &[usize]) -> Option<Vec<usize>> {
        (0..word.len().saturating_sub(1))
            .find(|&k| word[k] != word[k + 1] && !q.adjacent(word[k], word[k + 1]))
            .map(|k| {
                let mut w = word.to_vec();
                w.swap(k, k + 1);
                w
            })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, k: usize) -> &DimVector {
        &self.roots[k]
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    /// Position of a root in the order, if it is one.
    pub fn index_of(&self, v: &DimVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Position of the simple root at internal vertex `i`.
    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&DimVector::unit(self.roots[0].len(), i)]
    }

    /// Support of a type-A root as a user-label segment `[a, b]`.
    pub fn segment(&self, q: &DynkinQuiver, k: usize) -> Option<(usize, usize)> {
        let user = q.to_user(&self.roots[k]);
        let support: Vec<usize> = (0..user.len()).filter(|&l| user[l] != 0).collect();
        let (a, b) = (*support.first()?, *support.last()?);
        let contiguous = (a..=b).all(|l| user[l] == 1);
        (q.kind() == crate::quiver::DiagramType::A && contiguous).then_some((a + 1, b + 1))
    }

    /// Root index of the user-label segment `[a, b]` in type A.
    pub fn segment_index(&self, q: &DynkinQuiver, a: usize, b: usize) -> Result<usize> {
        if a > b {
            return Err(Error::Parse(format!("segment [{a},{b}] has a > b")));
        }
        if a == 0 || b > q.rank() {
            return Err(Error::Parse(format!(
                "segment [{a},{b}] is outside 1..={}",
                q.rank()
            )));
        }
        let coords: Vec<i64> = (1..=q.rank()).map(|l| (a <= l && l <= b) as i64).collect();
        let v = q.from_user(&coords)?;
        self.index_of(&v)
            .ok_or_else(|| Error::Parse(format!("[{a},{b}] is not a root of {}", q.name())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: [&str; 12] = [
        "A1", "A2", "A3", "A5", "D4", "D5", "D6", "D7", "E6", "E7", "E8", "A8",
    ];

    #[test]
    fn counts_and_positivity() {
        for name in NAMES {
            let q = DynkinQuiver::from_name(name).unwrap();
            let t = RootTable::new(&q);
            assert_eq!(t.len(), q.num_positive_roots(), "{name}");
            for r in t.roots() {
                assert_eq!(q.euler_form(r, r).unwrap(), 1, "{name}");
            }
        }
    }

    #[test]
    fn word_is_adapted_for_many_orientations() {
        for name in NAMES {
            let q = DynkinQuiver::from_name(name).unwrap();
            assert!(is_adapted(&q, &adapted_reduced_word(&q)), "{name}");
        }
        let odd = [
            DynkinQuiver::new(crate::quiver::DiagramType::A, 4, &[(2, 1), (2, 3), (4, 3)]).unwrap(),
            DynkinQuiver::new(crate::quiver::DiagramType::D, 4, &[(1, 2), (3, 2), (4, 2)]).unwrap(),
            DynkinQuiver::new(crate::quiver::DiagramType::E, 6, &[(2, 1), (2, 3), (4, 3), (4, 5), (6, 3)])
                .unwrap(),
        ];
        for q in &odd {
            let w = adapted_reduced_word(q);
            assert!(is_adapted(q, &w));
            assert_eq!(RootTable::new(q).len(), q.num_positive_roots());
        }
    }

    #[test]
    fn a3_segment_order() {
        let q = DynkinQuiver::from_name("A3").unwrap();
        let t = RootTable::new(&q);
        let segs: Vec<_> = (0..t.len()).map(|k| t.segment(&q, k).unwrap()).collect();
        assert_eq!(segs, vec![(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]);
    }

    #[test]
    fn linear_a_order_is_lexicographic() {
        for n in 1..=6 {
            let q = DynkinQuiver::standard(crate::quiver::DiagramType::A, n).unwrap();
            let t = RootTable::new(&q);
            let segs: Vec<_> = (0..t.len()).map(|k| t.segment(&q, k).unwrap()).collect();
            let mut sorted = segs.clone();
            sorted.sort();
            assert_eq!(segs, sorted);
        }
    }

    #[test]
    fn alternative_word_gives_same_root_set() {
        for name in ["A3", "D4", "E6"] {
            let q = DynkinQuiver::from_name(name).unwrap();
            let t = RootTable::new(&q);
            let w2 = RootTable::alternative_word(&q, t.word()).unwrap();
            assert!(is_adapted(&q, &w2));
            let t2 = RootTable::with_word(&q, w2).unwrap();
            let mut a = t.roots().to_vec();
            let mut b = t2.roots().to_vec();
            assert_ne!(a, b);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        let a2 = DynkinQuiver::from_name("A2").unwrap();
        assert!(RootTable::alternative_word(&a2, RootTable::new(&a2).word()).is_none());
    }

    #[test]
    fn rejects_bad_words() {
        let q = DynkinQuiver::from_name("A2").unwrap();
        assert!(RootTable::with_word(&q, vec![0, 0, 1]).is_err());
        assert!(RootTable::with_word(&q, vec![0, 1]).is_err());
        assert!(RootTable::with_word(&q, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn segment_parse_errors() {
        let q = DynkinQuiver::from_name("A3").unwrap();
        let t = RootTable::new(&q);
        assert!(t.segment_index(&q, 3, 2).is_err());
        assert!(t.segment_index(&q, 1, 4).is_err());
        assert_eq!(t.segment_index(&q, 2, 3).unwrap(), 4);
    }
}
