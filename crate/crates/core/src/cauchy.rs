//! Adjoint distributors out of the tensor unit E, the Cauchy completion with
//! its Yoneda embedding, and the Cauchy-completeness predicate.
//!
//! With T1 = 1, a distributor E -o-> X is a function TX -> V and a
//! distributor X -o-> E is a function X -> V, so both sides of an adjunction
//! are finite tables and adjointness is decidable by enumeration. The right
//! adjoint is searched via the largest residual candidate: psi is left
//! adjoint iff psi -> (psi lift a) passes the unit inequality, because any
//! right adjoint is below the residual and forces it to work too.

use crate::finset::{for_each_function, FinMap, FinSet};
use crate::tcat::{
    distributor_witness, exponential_graph, graph_morphism_witness, is_tdistributor, TCategory,
    TcatError,
};
use crate::theory::TMatrix;
use crate::vmat::VMatrix;

/// A verified adjunction psi -| phi of distributors E -o-> X and X -o-> E.
#[derive(Clone, PartialEq)]
pub struct AdjointPair {
    /// psi: E -o-> X, the left adjoint; a V-matrix 1 -> TX.
    pub left: TMatrix,
    /// phi: X -o-> E, the right adjoint; a V-matrix X -> T1 = X -> 1.
    pub right: TMatrix,
    /// Value of the unit composite phi o psi: E -o-> E; k is below it.
    pub unit_entry: usize,
}

impl AdjointPair {
    /// The left adjoint as a value table on TX.
    pub fn left_table(&self) -> Vec<usize> {
        let tx_len = self.left.matrix().target().len();
        (0..tx_len).map(|t| self.left.get(t, 0)).collect()
    }

    /// The right adjoint as a value table on X.
    pub fn right_table(&self) -> Vec<usize> {
        let x_len = self.right.source().len();
        (0..x_len).map(|x| self.right.get(0, x)).collect()
    }
}

impl std::fmt::Debug for AdjointPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AdjointPair(left {:?}, right {:?})",
            self.left_table(),
            self.right_table()
        )
    }
}

/// The representable x_*: E -o-> X with values a(-, x).
pub fn representable_left(x: &TCategory, point: usize) -> TMatrix {
    let th = x.theory().clone();
    let tx_len = th.apply(x.objects()).len();
    let entries: Vec<usize> = (0..tx_len).map(|t| x.a(t, point)).collect();
    TMatrix::new(th, FinSet::singleton(), x.objects().clone(), entries)
        .expect("representable entries are total")
}

/// The representable x^*: X -o-> E with values a(e x, -).
pub fn representable_right(x: &TCategory, point: usize) -> TMatrix {
    let th = x.theory().clone();
    let e = th.unit(x.objects());
    let entries: Vec<usize> = (0..x.len()).map(|z| x.a(e.apply(point), z)).collect();
    TMatrix::new(th, x.objects().clone(), FinSet::singleton(), entries)
        .expect("representable entries are total")
}

/// Exhaustively enumerate the left adjoint distributors E -o-> X, paired with
/// their right adjoints. Pairs are deduplicated by matrix equality and
/// returned in lexicographic order of the left table.
pub fn left_adjoint_distributors(x: &TCategory) -> Result<Vec<AdjointPair>, TcatError> {
    let th = x.theory().clone();
    let q = th.quantale().clone();
    let e_cat = TCategory::unit_e(th.clone());
    let tx_len = th.apply(x.objects()).len();
    let k_bang = e_cat.structure().clone();

    let mut out = Vec::new();
    let mut failure: Option<TcatError> = None;
    for_each_function(tx_len, q.size(), |table| {
        if failure.is_some() {
            return;
        }
        let psi = TMatrix::new(
            th.clone(),
            FinSet::singleton(),
            x.objects().clone(),
            table.to_vec(),
        )
        .expect("enumerated entries are total");
        if !is_tdistributor(&psi, &e_cat, x) {
            return;
        }
        // largest candidate right adjoint: the Kleisli lifting of a through psi
        let phi = match psi.kleisli_lifting(x.structure()) {
            Ok(phi) => phi,
            Err(e) => {
                failure = Some(e.into());
                return;
            }
        };
        // the lifting lemma promises phi is a distributor; check rather than trust
        if let Some(w) = distributor_witness(&phi, x, &e_cat) {
            failure = Some(TcatError::Defect {
                op: "kleisli_lifting",
                witness: w,
            });
            return;
        }
        let unit = match phi.kleisli_compose(&psi) {
            Ok(u) => u,
            Err(e) => {
                failure = Some(e.into());
                return;
            }
        };
        if k_bang.leq(&unit) {
            out.push(AdjointPair {
                left: psi,
                right: phi,
                unit_entry: unit.get(0, 0),
            });
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Slow cross-validation oracle: enumerate candidate (left, right) pairs
/// outright and keep the lefts that admit some right adjoint. Independent of
/// the residual-based search.
pub fn left_adjoints_by_pair_enumeration(x: &TCategory) -> Result<Vec<Vec<usize>>, TcatError> {
    let th = x.theory().clone();
    let q = th.quantale().clone();
    let e_cat = TCategory::unit_e(th.clone());
    let tx_len = th.apply(x.objects()).len();
    let k_bang = e_cat.structure().clone();

    let mut lefts = Vec::new();
    let mut failure: Option<TcatError> = None;
    for_each_function(tx_len, q.size(), |left_table| {
        if failure.is_some() {
            return;
        }
        let psi = TMatrix::new(
            th.clone(),
            FinSet::singleton(),
            x.objects().clone(),
            left_table.to_vec(),
        )
        .expect("total");
        if !is_tdistributor(&psi, &e_cat, x) {
            return;
        }
        let mut found = false;
        for_each_function(x.len(), q.size(), |right_table| {
            if found || failure.is_some() {
                return;
            }
            let phi = TMatrix::new(
                th.clone(),
                x.objects().clone(),
                FinSet::singleton(),
                right_table.to_vec(),
            )
            .expect("total");
            if !is_tdistributor(&phi, x, &e_cat) {
                return;
            }
            let counit = match psi.kleisli_compose(&phi) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e.into());
                    return;
                }
            };
            if !counit.leq(x.structure()) {
                return;
            }
            let unit = match phi.kleisli_compose(&psi) {
                Ok(u) => u,
                Err(e) => {
                    failure = Some(e.into());
                    return;
                }
            };
            if k_bang.leq(&unit) {
                found = true;
            }
        });
        if found {
            lefts.push(left_table.to_vec());
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(lefts),
    }
}

/// The Cauchy completion: objects are the left adjoint distributors, the
/// structure is induced from the exponential T-graph V^X through the right
/// adjoints (whose restriction along e is the Kleisli-residual hom), and the
/// Yoneda embedding sends x to x_*.
pub struct CauchyCompletion {
    pub category: TCategory,
    /// x -> index of the pair whose left adjoint is x_*.
    pub yoneda: FinMap,
    pub pairs: Vec<AdjointPair>,
}

pub fn cauchy_completion(x: &TCategory) -> Result<CauchyCompletion, TcatError> {
    let th = x.theory().clone();
    let q = th.quantale().clone();
    let pairs = left_adjoint_distributors(x)?;
    let expo = exponential_graph(x)?;

    // locate each right adjoint inside the exponential carrier
    let mut member: Vec<usize> = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let table = pair.right_table();
        match expo.index_of(&table) {
            Some(i) => member.push(i),
            None => {
                return Err(TcatError::Defect {
                    op: "cauchy_completion",
                    witness: format!(
                        "right adjoint {table:?} is not a T-functor X -> V"
                    ),
                })
            }
        }
    }

    let labels: Vec<String> = pairs
        .iter()
        .map(|p| {
            let cells: Vec<&str> = p.left_table().iter().map(|&v| q.label(v)).collect();
            format!("<{}>", cells.join(","))
        })
        .collect();
    let carrier = FinSet::new(labels);
    let into_expo = FinMap::new(
        carrier.clone(),
        expo.graph.objects().clone(),
        member.clone(),
    );
    let t_into = th.map(&into_expo);
    let tcarrier = th.apply(&carrier);
    let matrix = VMatrix::from_fn(q, carrier.clone(), tcarrier, |row, col| {
        expo.graph.structure().get(t_into.apply(row), member[col])
    });
    let structure = TMatrix::from_vmatrix(th.clone(), carrier, matrix)?;
    let category = TCategory::new(structure)?;

    // Yoneda: x -> x_*
    let mut yoneda_values = Vec::with_capacity(x.len());
    for point in 0..x.len() {
        let xstar = representable_left(x, point);
        match pairs.iter().position(|p| p.left == xstar) {
            Some(i) => yoneda_values.push(i),
            None => {
                return Err(TcatError::Defect {
                    op: "cauchy_completion",
                    witness: format!(
                        "representable at {} is not among the adjoint pairs",
                        x.objects().label(point)
                    ),
                })
            }
        }
    }
    let yoneda = FinMap::new(
        x.objects().clone(),
        category.objects().clone(),
        yoneda_values,
    );
    if let Some(w) = graph_morphism_witness(&yoneda, x.structure(), category.structure()) {
        return Err(TcatError::Defect {
            op: "cauchy_completion",
            witness: format!("yoneda fails to be a T-functor: {w}"),
        });
    }
    Ok(CauchyCompletion {
        category,
        yoneda,
        pairs,
    })
}

/// Cauchy completeness: every left adjoint distributor is representable.
pub fn is_cauchy_complete(x: &TCategory) -> Result<bool, TcatError> {
    let pairs = left_adjoint_distributors(x)?;
    let representables: Vec<TMatrix> =
        (0..x.len()).map(|p| representable_left(x, p)).collect();
    Ok(pairs
        .iter()
        .all(|pair| representables.iter().any(|r| *r == pair.left)))
}

/// Structure-compatible bijection test between two T-categories.
pub fn tcategory_isomorphic(a: &TCategory, b: &TCategory) -> bool {
    if a.len() != b.len() || a.theory() != b.theory() {
        return false;
    }
    let th = a.theory().clone();
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let map = FinMap::new(a.objects().clone(), b.objects().clone(), perm.clone());
        let tmap = th.map(&map);
        let tx_len = th.apply(a.objects()).len();
        let ok = (0..tx_len)
            .all(|t| (0..n).all(|x| a.a(t, x) == b.a(tmap.apply(t), map.apply(x))));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
