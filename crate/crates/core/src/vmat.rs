//! The quantaloid of V-valued matrices between finite sets.
//!
//! A matrix r: X -> Y stores an element of V for every pair (y, x); rows are
//! indexed by the target, columns by the source, so composition reads as the
//! usual sup-of-tensor product. Functions embed as graph matrices with k on
//! the graph pairs. Both residuals of composition are provided.

use crate::finset::{FinMap, FinSet};
use crate::quantale::Quantale;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("shape mismatch in {op}: {left} vs {right}")]
    ShapeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("expected {expected} entries for {rows} x {cols}, got {got}")]
    WrongEntryCount {
        expected: usize,
        got: usize,
        rows: usize,
        cols: usize,
    },
    #[error("entry {entry} at ({row}, {col}) lies outside the quantale carrier")]
    EntryOutOfRange {
        entry: usize,
        row: String,
        col: String,
    },
    #[error("matrices live over different quantales: {0} vs {1}")]
    QuantaleMismatch(String, String),
}

#[derive(Clone, PartialEq)]
pub struct VMatrix {
    quantale: Arc<Quantale>,
    source: FinSet,
    target: FinSet,
    entries: Vec<usize>, // row-major, entries[row * |source| + col]
}

impl VMatrix {
    pub fn new(
        quantale: Arc<Quantale>,
        source: FinSet,
        target: FinSet,
        entries: Vec<usize>,
    ) -> Result<VMatrix, MatError> {
        let expected = source.len() * target.len();
        if entries.len() != expected {
            return Err(MatError::WrongEntryCount {
                expected,
                got: entries.len(),
                rows: target.len(),
                cols: source.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&e| e >= quantale.size()) {
            let row = pos / source.len();
            let col = pos % source.len();
            return Err(MatError::EntryOutOfRange {
                entry: entries[pos],
                row: target.label(row).to_string(),
                col: source.label(col).to_string(),
            });
        }
        Ok(VMatrix {
            quantale,
            source,
            target,
            entries,
        })
    }

    pub fn from_fn(
        quantale: Arc<Quantale>,
        source: FinSet,
        target: FinSet,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> VMatrix {
        let mut entries = Vec::with_capacity(source.len() * target.len());
        for row in 0..target.len() {
            for col in 0..source.len() {
                entries.push(f(row, col));
            }
        }
        VMatrix::new(quantale, source, target, entries).expect("from_fn produces total tables")
    }

    /// Diagonal matrix with k on the diagonal and bottom elsewhere.
    pub fn identity(set: &FinSet, quantale: Arc<Quantale>) -> VMatrix {
        let k = quantale.unit();
        let bot = quantale.bottom();
        VMatrix::from_fn(quantale, set.clone(), set.clone(), |row, col| {
            if row == col {
                k
            } else {
                bot
            }
        })
    }

    /// The graph of a function: k at (f(x), x), bottom elsewhere.
    pub fn graph(f: &FinMap, quantale: Arc<Quantale>) -> VMatrix {
        let k = quantale.unit();
        let bot = quantale.bottom();
        VMatrix::from_fn(
            quantale,
            f.source().clone(),
            f.target().clone(),
            |row, col| if f.apply(col) == row { k } else { bot },
        )
    }

    /// The transpose of the graph of a function: k at (x, f(x)).
    pub fn cograph(f: &FinMap, quantale: Arc<Quantale>) -> VMatrix {
        VMatrix::graph(f, quantale).involution()
    }

    pub fn constant(
        quantale: Arc<Quantale>,
        source: FinSet,
        target: FinSet,
        value: usize,
    ) -> VMatrix {
        VMatrix::from_fn(quantale, source, target, |_, _| value)
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row * self.source.len() + col]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    fn shape(&self) -> String {
        format!(
            "{}x{} ({:?} -> {:?})",
            self.target.len(),
            self.source.len(),
            self.source,
            self.target
        )
    }

    fn check_same_quantale(&self, other: &VMatrix, _op: &'static str) -> Result<(), MatError> {
        if self.quantale.as_ref() == other.quantale.as_ref() {
            Ok(())
        } else {
            Err(MatError::QuantaleMismatch(
                self.quantale.name().to_string(),
                other.quantale.name().to_string(),
            ))
        }
    }

    /// Sup-of-tensor composite: (self . r)(z, x) = join_y self(z, y) (x) r(y, x).
    pub fn compose(&self, r: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_same_quantale(r, "compose")?;
        if self.source != r.target {
            return Err(MatError::ShapeMismatch {
                op: "compose",
                left: self.shape(),
                right: r.shape(),
            });
        }
        let q = &self.quantale;
        let mid = self.source.len();
        Ok(VMatrix::from_fn(
            self.quantale.clone(),
            r.source.clone(),
            self.target.clone(),
            |z, x| q.join_of((0..mid).map(|y| q.tensor(self.get(z, y), r.get(y, x)))),
        ))
    }

    /// Transpose: r°(x, y) = r(y, x).
    pub fn involution(&self) -> VMatrix {
        VMatrix::from_fn(
            self.quantale.clone(),
            self.target.clone(),
            self.source.clone(),
            |x, y| self.get(y, x),
        )
    }

    /// Right adjoint to precomposition: s . r <= t iff s <= t.extension(r),
    /// with (t <- r)(z, y) = meet_x hom(r(y, x), t(z, x)) for t: X -> Z, r: X -> Y.
    pub fn extension(&self, r: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_same_quantale(r, "extension")?;
        if self.source != r.source {
            return Err(MatError::ShapeMismatch {
                op: "extension",
                left: self.shape(),
                right: r.shape(),
            });
        }
        let q = &self.quantale;
        let xs = self.source.len();
        Ok(VMatrix::from_fn(
            self.quantale.clone(),
            r.target.clone(),
            self.target.clone(),
            |z, y| q.meet_of((0..xs).map(|x| q.hom(r.get(y, x), self.get(z, x)))),
        ))
    }

    /// Right adjoint to postcomposition: r . p <= q iff p <= r.lifting(q),
    /// with (r -> q)(x, z) = meet_y hom(r(y, x), q(y, z)) for r: X -> Y, q: Z -> Y.
    pub fn lifting(&self, q_mat: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_same_quantale(q_mat, "lifting")?;
        if self.target != q_mat.target {
            return Err(MatError::ShapeMismatch {
                op: "lifting",
                left: self.shape(),
                right: q_mat.shape(),
            });
        }
        let q = &self.quantale;
        let ys = self.target.len();
        Ok(VMatrix::from_fn(
            self.quantale.clone(),
            q_mat.source.clone(),
            self.source.clone(),
            |x, z| q.meet_of((0..ys).map(|y| q.hom(self.get(y, x), q_mat.get(y, z)))),
        ))
    }

    fn check_parallel(&self, other: &VMatrix, op: &'static str) -> Result<(), MatError> {
        self.check_same_quantale(other, op)?;
        if self.source != other.source || self.target != other.target {
            return Err(MatError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// Entrywise join of parallel matrices.
    pub fn join(&self, other: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_parallel(other, "join")?;
        let q = &self.quantale;
        Ok(VMatrix::from_fn(
            self.quantale.clone(),
            self.source.clone(),
            self.target.clone(),
            |row, col| q.join2(self.get(row, col), other.get(row, col)),
        ))
    }

    /// Entrywise meet of parallel matrices.
    pub fn meet(&self, other: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_parallel(other, "meet")?;
        let q = &self.quantale;
        Ok(VMatrix::from_fn(
            self.quantale.clone(),
            self.source.clone(),
            self.target.clone(),
            |row, col| q.meet2(self.get(row, col), other.get(row, col)),
        ))
    }

    /// Tensor of matrices: for a: X -> X' and b: Y -> Y', the matrix
    /// X x Y -> X' x Y' with ((x',y'), (x,y)) entry a(x',x) (x) b(y',y).
    pub fn tensor(&self, other: &VMatrix) -> Result<VMatrix, MatError> {
        self.check_same_quantale(other, "tensor")?;
        let q = self.quantale.clone();
        let src = self.source.product(&other.source);
        let tgt = self.target.product(&other.target);
        let (b_src, b_tgt) = (other.source.len(), other.target.len());
        Ok(VMatrix::from_fn(q.clone(), src, tgt, |row, col| {
            let (xp, yp) = (row / b_tgt, row % b_tgt);
            let (x, y) = (col / b_src, col % b_src);
            q.tensor(self.get(xp, x), other.get(yp, y))
        }))
    }

    /// Entrywise order on parallel matrices. Panics on shape mismatch; use the
    /// checked operations to normalize shapes first.
    pub fn leq(&self, other: &VMatrix) -> bool {
        assert_eq!(self.source, other.source, "leq shape mismatch");
        assert_eq!(self.target, other.target, "leq shape mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|(&a, &b)| self.quantale.leq(a, b))
    }

    /// First (row, col) where the entrywise order fails, for witnesses.
    pub fn leq_witness(&self, other: &VMatrix) -> Option<(usize, usize)> {
        for row in 0..self.target.len() {
            for col in 0..self.source.len() {
                if !self.quantale.leq(self.get(row, col), other.get(row, col)) {
                    return Some((row, col));
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for VMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "VMatrix {:?} -> {:?} [", self.source, self.target)?;
        for row in 0..self.target.len() {
            let cells: Vec<&str> = (0..self.source.len())
                .map(|col| self.quantale.label(self.get(row, col)))
                .collect();
            writeln!(f, "  {}: [{}]", self.target.label(row), cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Enumerate every matrix of the given shape over the quantale.
pub fn for_each_matrix(
    quantale: &Arc<Quantale>,
    source: &FinSet,
    target: &FinSet,
    mut visit: impl FnMut(VMatrix),
) {
    let cells = source.len() * target.len();
    crate::finset::for_each_function(cells, quantale.size(), |entries| {
        visit(
            VMatrix::new(
                quantale.clone(),
                source.clone(),
                target.clone(),
                entries.to_vec(),
            )
            .expect("enumerated entries are total"),
        )
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn goedel3() -> Arc<Quantale> {
        Arc::new(Quantale::goedel_chain(3).unwrap())
    }

    fn two() -> Arc<Quantale> {
        Arc::new(Quantale::two())
    }

    fn lawvere4() -> Arc<Quantale> {
        Arc::new(Quantale::lawvere_chain(4).unwrap())
    }

    fn mat(q: &Arc<Quantale>, src: usize, tgt: usize, entries: Vec<usize>) -> VMatrix {
        VMatrix::new(
            q.clone(),
            FinSet::of_size(src),
            FinSet::of_size(tgt),
            entries,
        )
        .unwrap()
    }

    #[test]
    fn identity_is_unit_for_composition() {
        let q = lawvere4();
        let r = mat(&q, 2, 3, vec![0, 1, 2, 3, 1, 0]);
        let idx = VMatrix::identity(r.source(), q.clone());
        let idy = VMatrix::identity(r.target(), q.clone());
        assert_eq!(r.compose(&idx).unwrap(), r);
        assert_eq!(idy.compose(&r).unwrap(), r);
    }

    #[test]
    fn singleton_identity_over_two() {
        let q = two();
        let id = VMatrix::identity(&FinSet::singleton(), q.clone());
        assert_eq!(id.entries(), &[1]);
        assert_eq!(id.involution(), id);
    }

    #[test]
    fn composition_over_two_is_relation_composition() {
        let q = two();
        let r = mat(&q, 2, 2, vec![1, 0, 1, 1]); // y r x
        let s = mat(&q, 2, 2, vec![0, 1, 1, 0]); // z s y
        let sr = s.compose(&r).unwrap();
        for z in 0..2 {
            for x in 0..2 {
                let expected = (0..2).any(|y| s.get(z, y) == 1 && r.get(y, x) == 1);
                assert_eq!(sr.get(z, x) == 1, expected);
            }
        }
    }

    // Fixed min-plus instance: join of tensors = min(1+1, 2+inf) = 2.
    #[test]
    fn min_plus_composition_entry() {
        let q = lawvere4();
        let inf = 3;
        let r = mat(&q, 1, 2, vec![1, inf]); // column [1, inf]
        let s = mat(&q, 2, 1, vec![1, 2]); // row [1, 2]
        let sr = s.compose(&r).unwrap();
        assert_eq!(sr.get(0, 0), 2);
    }

    #[test]
    fn involution_of_composite() {
        let q = lawvere4();
        let r = mat(&q, 2, 2, vec![0, 3, 1, 2]);
        let s = mat(&q, 2, 2, vec![2, 1, 3, 0]);
        let lhs = s.compose(&r).unwrap().involution();
        let rhs = r.involution().compose(&s.involution()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_over_two_is_converse() {
        let q = two();
        let r = mat(&q, 3, 2, vec![1, 0, 1, 0, 0, 1]);
        let c = r.involution();
        for y in 0..2 {
            for x in 0..3 {
                assert_eq!(r.get(y, x), c.get(x, y));
            }
        }
    }

    #[test]
    fn extension_by_identity_is_identity() {
        let q = goedel3();
        let t = mat(&q, 2, 2, vec![0, 2, 1, 1]);
        let id = VMatrix::identity(t.source(), q.clone());
        assert_eq!(t.extension(&id).unwrap(), t);
    }

    #[test]
    fn extension_over_two_is_relational_residual() {
        let q = two();
        let t = mat(&q, 2, 2, vec![1, 0, 1, 1]);
        let r = mat(&q, 2, 2, vec![0, 1, 1, 1]);
        let ext = t.extension(&r).unwrap();
        // z (t <- r) y iff for all x: y r x implies z t x
        for z in 0..2 {
            for y in 0..2 {
                let expected = (0..2).all(|x| r.get(y, x) == 0 || t.get(z, x) == 1);
                assert_eq!(ext.get(z, y) == 1, expected, "z={z} y={y}");
            }
        }
    }

    /// Both residuation adjunctions, exhaustively over all 2x2 matrices.
    #[test]
    fn residual_adjunctions_exhaustive_goedel3() {
        let q = goedel3();
        let set = FinSet::of_size(2);
        let mut rs = Vec::new();
        for_each_matrix(&q, &set, &set, |m| rs.push(m));
        for r in &rs {
            for t in &rs {
                let ext = t.extension(r).unwrap();
                let lif = r.lifting(t).unwrap();
                for s in &rs {
                    assert_eq!(s.compose(r).unwrap().leq(t), s.leq(&ext));
                    assert_eq!(r.compose(s).unwrap().leq(t), s.leq(&lif));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn composition_associative(
            a in proptest::collection::vec(0usize..3, 4),
            b in proptest::collection::vec(0usize..3, 6),
            c in proptest::collection::vec(0usize..3, 6),
        ) {
            let q = goedel3();
            let r = mat(&q, 2, 2, a);       // X(2) -> Y(2)
            let s = mat(&q, 2, 3, b);       // Y(2) -> Z(3)
            let t = mat(&q, 3, 2, c);       // Z(3) -> W(2)
            let lhs = t.compose(&s.compose(&r).unwrap()).unwrap();
            let rhs = t.compose(&s).unwrap().compose(&r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn composition_distributes_over_joins(
            a in proptest::collection::vec(0usize..3, 4),
            b in proptest::collection::vec(0usize..3, 4),
            c in proptest::collection::vec(0usize..3, 4),
        ) {
            let q = goedel3();
            let r1 = mat(&q, 2, 2, a);
            let r2 = mat(&q, 2, 2, b);
            let s = mat(&q, 2, 2, c);
            let lhs = s.compose(&r1.join(&r2).unwrap()).unwrap();
            let rhs = s.compose(&r1).unwrap().join(&s.compose(&r2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shape_mismatch_reports_both_shapes() {
        let q = two();
        let r = mat(&q, 2, 3, vec![0; 6]);
        let s = mat(&q, 2, 3, vec![0; 6]);
        let err = s.compose(&r).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("compose"), "{msg}");
        assert!(msg.contains("3x2"), "{msg}");
    }
}
