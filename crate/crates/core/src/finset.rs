//! Labelled finite sets and functions between them.
//!
//! Everything downstream (matrices, monads, categories) indexes elements by
//! position; labels exist for input files and report rendering.

use std::fmt;
use std::sync::Arc;

/// A finite set with printable element labels. Cloning is cheap.
#[derive(Clone)]
pub struct FinSet {
    labels: Arc<Vec<String>>,
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> FinSet {
        FinSet {
            labels: Arc::new(labels),
        }
    }

    /// The set {0, 1, .., n-1} with numeric labels.
    pub fn of_size(n: usize) -> FinSet {
        FinSet::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn singleton() -> FinSet {
        FinSet::new(vec!["*".to_string()])
    }

    pub fn empty() -> FinSet {
        FinSet::new(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cartesian product, elements ordered as (i, j) -> i * |other| + j.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for a in self.labels.iter() {
            for b in other.labels.iter() {
                labels.push(format!("({a},{b})"));
            }
        }
        FinSet::new(labels)
    }

    pub fn pair_index(&self, other: &FinSet, i: usize, j: usize) -> usize {
        debug_assert!(i < self.len() && j < other.len());
        i * other.len() + j
    }

    pub fn unpair(&self, other: &FinSet, p: usize) -> (usize, usize) {
        (p / other.len(), p % other.len())
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> FinSet {
        FinSet::new(self.labels.iter().map(|l| f(l)).collect())
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// A function between finite sets, stored by element index.
#[derive(Clone, PartialEq, Eq)]
pub struct FinMap {
    source: FinSet,
    target: FinSet,
    map: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinSet, target: FinSet, map: Vec<usize>) -> FinMap {
        assert_eq!(map.len(), source.len(), "map must be total");
        assert!(
            map.iter().all(|&i| i < target.len()),
            "map image must lie in the target"
        );
        FinMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(set: &FinSet) -> FinMap {
        FinMap::new(set.clone(), set.clone(), (0..set.len()).collect())
    }

    /// The identity assignment between two sets of equal size. Used when a
    /// construction relabels a carrier without permuting it.
    pub fn relabelling(source: FinSet, target: FinSet) -> FinMap {
        assert_eq!(source.len(), target.len());
        let n = source.len();
        FinMap::new(source, target, (0..n).collect())
    }

    pub fn constant(source: FinSet, target: FinSet, value: usize) -> FinMap {
        let n = source.len();
        FinMap::new(source, target, vec![value; n])
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// `other` after `self`: (self.then(other))(x) = other(self(x)).
    pub fn then(&self, other: &FinMap) -> FinMap {
        assert_eq!(
            self.target, other.source,
            "composition shape mismatch"
        );
        FinMap::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&i| other.apply(i)).collect(),
        )
    }

    /// First projection X x Y -> X.
    pub fn projection1(x: &FinSet, y: &FinSet) -> FinMap {
        let prod = x.product(y);
        let map = (0..prod.len()).map(|p| prod_first(p, y.len())).collect();
        FinMap::new(prod, x.clone(), map)
    }

    /// Second projection X x Y -> Y.
    pub fn projection2(x: &FinSet, y: &FinSet) -> FinMap {
        let prod = x.product(y);
        let map = (0..prod.len()).map(|p| p % y.len()).collect();
        FinMap::new(prod, y.clone(), map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

fn prod_first(p: usize, second_len: usize) -> usize {
    p / second_len
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.source.label(i), self.target.label(j)))
            .collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

/// Iterate over all functions from a `dom`-element set to a `cod`-element set,
/// in lexicographic order. The closure receives each assignment vector.
pub fn for_each_function(dom: usize, cod: usize, mut visit: impl FnMut(&[usize])) {
    if dom == 0 {
        visit(&[]);
        return;
    }
    if cod == 0 {
        return;
    }
    let mut current = vec![0usize; dom];
    loop {
        visit(&current);
        // increment as a base-`cod` counter, most significant digit first
        let mut pos = dom;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < cod {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// All subsets of {0, .., n-1} as index lists, in mask order. n must be <= 63.
pub fn for_each_subset(n: usize, mut visit: impl FnMut(&[usize])) {
    assert!(n <= 63, "subset enumeration limited to 63 elements");
    let mut buf = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << n) {
        buf.clear();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                buf.push(i);
            }
        }
        visit(&buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_indexing_round_trips() {
        let x = FinSet::of_size(3);
        let y = FinSet::of_size(4);
        let prod = x.product(&y);
        assert_eq!(prod.len(), 12);
        for i in 0..3 {
            for j in 0..4 {
                let p = x.pair_index(&y, i, j);
                assert_eq!(x.unpair(&y, p), (i, j));
            }
        }
        let p1 = FinMap::projection1(&x, &y);
        let p2 = FinMap::projection2(&x, &y);
        assert_eq!(p1.apply(x.pair_index(&y, 2, 1)), 2);
        assert_eq!(p2.apply(x.pair_index(&y, 2, 1)), 1);
    }

    #[test]
    fn function_enumeration_counts() {
        let mut count = 0;
        for_each_function(3, 2, |_| count += 1);
        assert_eq!(count, 8);
        count = 0;
        for_each_function(0, 5, |f| {
            assert!(f.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
        count = 0;
        for_each_function(2, 0, |_| count += 1);
        assert_eq!(count, 0);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0;
        for_each_subset(4, |_| count += 1);
        assert_eq!(count, 16);
    }
}
