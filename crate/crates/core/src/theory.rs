//! Strict topological theories: a computable monad on finite sets together
//! with an algebra map xi on the quantale carrier, the induced lax extension
//! to V-matrices, and Kleisli convolution of T-matrices.
//!
//! Two theories ship. The identity theory exists for every quantale. The
//! finite-ultrafilter theory instantiates the ultrafilter monad on finite
//! carriers, where every ultrafilter is principal: U then acts by relabelling
//! and xi(principal v) = v, which agrees with the meet-of-joins formula on
//! principal ultrafilters. That degeneracy (an isomorphism with the identity
//! theory) is recorded in the theory's metadata rather than hidden.
//!
//! All constructions go through the generic formulas (fibers of the pairing,
//! multiplication as a graph matrix), never through the degeneracy.

use crate::finset::{for_each_function, FinMap, FinSet};
use crate::quantale::Quantale;
use crate::report::LawReport;
use crate::vmat::{MatError, VMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("theory `{theory}` violates T1 = 1: {detail}")]
    UnitNotSingleton { theory: String, detail: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonadKind {
    Identity,
    FiniteUltrafilter,
}

impl MonadKind {
    fn wrap_label(&self, label: &str) -> String {
        match self {
            MonadKind::Identity => label.to_string(),
            MonadKind::FiniteUltrafilter => format!("U({label})"),
        }
    }
}

/// A strict topological theory with a computable monad part.
#[derive(Clone)]
pub struct Theory {
    name: String,
    quantale: Arc<Quantale>,
    monad: MonadKind,
    /// Value of xi on T(V), as indices into the carrier; None means the
    /// canonical structure map of the shipped monad.
    xi_table: Option<Vec<usize>>,
    degeneracy_note: Option<String>,
}

impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        self.monad == other.monad
            && self.quantale.as_ref() == other.quantale.as_ref()
            && self.xi_table == other.xi_table
    }
}

impl std::fmt::Debug for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Theory({})", self.name)
    }
}

impl Theory {
    /// The identity theory: T = Id, xi = id.
    pub fn identity(quantale: Arc<Quantale>) -> Theory {
        Theory {
            name: format!("identity({})", quantale.name()),
            quantale,
            monad: MonadKind::Identity,
            xi_table: None,
            degeneracy_note: None,
        }
    }

    /// The ultrafilter theory on finite carriers.
    pub fn finite_ultrafilter(quantale: Arc<Quantale>) -> Theory {
        Theory {
            name: format!("finite-ultrafilter({})", quantale.name()),
            quantale,
            monad: MonadKind::FiniteUltrafilter,
            xi_table: None,
            degeneracy_note: Some(
                "ultrafilters on finite sets are principal, so U is isomorphic to the \
                 identity functor and xi(principal v) = v"
                    .to_string(),
            ),
        }
    }

    /// The word theory is excluded by the standing assumption T1 = 1: the
    /// free monoid on a singleton is infinite.
    pub fn word(quantale: Arc<Quantale>) -> Result<Theory, TheoryError> {
        Err(TheoryError::UnitNotSingleton {
            theory: format!("word({})", quantale.name()),
            detail: "L(1) is the free monoid on one generator, which is infinite".to_string(),
        })
    }

    /// Replace xi by an explicit table on T(V). Meant for exercising
    /// `validate`, which will report the broken algebra squares.
    pub fn with_xi_table(mut self, table: Vec<usize>) -> Theory {
        assert_eq!(table.len(), self.apply(&self.quantale.carrier_set()).len());
        self.name = format!("{}[custom-xi]", self.name);
        self.xi_table = Some(table);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn monad(&self) -> MonadKind {
        self.monad
    }

    pub fn degeneracy_note(&self) -> Option<&str> {
        self.degeneracy_note.as_deref()
    }

    /// T on objects.
    pub fn apply(&self, x: &FinSet) -> FinSet {
        match self.monad {
            MonadKind::Identity => x.clone(),
            MonadKind::FiniteUltrafilter => x.relabel(|l| self.monad.wrap_label(l)),
        }
    }

    /// T on functions.
    pub fn map(&self, f: &FinMap) -> FinMap {
        FinMap::new(
            self.apply(f.source()),
            self.apply(f.target()),
            f.values().to_vec(),
        )
    }

    /// Unit e_X: X -> TX.
    pub fn unit(&self, x: &FinSet) -> FinMap {
        FinMap::relabelling(x.clone(), self.apply(x))
    }

    /// Multiplication m_X: TTX -> TX.
    pub fn mult(&self, x: &FinSet) -> FinMap {
        let tx = self.apply(x);
        FinMap::relabelling(self.apply(&tx), tx)
    }

    /// Pairing tau_{X,Y}: T(X x Y) -> TX x TY, the Hopf structure map.
    pub fn pairing(&self, x: &FinSet, y: &FinSet) -> FinMap {
        let source = self.apply(&x.product(y));
        let target = self.apply(x).product(&self.apply(y));
        FinMap::relabelling(source, target)
    }

    /// The carrier of T(V).
    pub fn tv_set(&self) -> FinSet {
        self.apply(&self.quantale.carrier_set())
    }

    /// xi: T(V) -> V by element index.
    pub fn xi(&self, i: usize) -> usize {
        match &self.xi_table {
            Some(table) => table[i],
            None => i,
        }
    }

    pub fn xi_map(&self) -> FinMap {
        let tv = self.tv_set();
        let values = (0..tv.len()).map(|i| self.xi(i)).collect();
        FinMap::new(tv, self.quantale.carrier_set(), values)
    }

    /// The lax extension of T to V-matrices:
    /// T_xi r(y', x') = join of xi(Tr(w)) over w in T(Y x X) with
    /// T(pi1)(w) = y' and T(pi2)(w) = x'.
    pub fn lax_extend(&self, r: &VMatrix) -> VMatrix {
        let q = &self.quantale;
        let x = r.source();
        let y = r.target();
        let prod = y.product(x);
        let tprod = self.apply(&prod);
        let tp1 = self.map(&FinMap::projection1(y, x));
        let tp2 = self.map(&FinMap::projection2(y, x));
        // r as a function Y x X -> V
        let r_fn = FinMap::new(
            prod.clone(),
            q.carrier_set(),
            (0..prod.len())
                .map(|p| {
                    let (row, col) = y.unpair(x, p);
                    r.get(row, col)
                })
                .collect(),
        );
        let tr = self.map(&r_fn);
        let tx = self.apply(x);
        let ty = self.apply(y);
        let mut acc = vec![q.bottom(); tx.len() * ty.len()];
        for w in 0..tprod.len() {
            let row = tp1.apply(w);
            let col = tp2.apply(w);
            let v = self.xi(tr.apply(w));
            let cell = &mut acc[row * tx.len() + col];
            *cell = q.join2(*cell, v);
        }
        VMatrix::new(q.clone(), tx, ty, acc).expect("lax extension entries are total")
    }

    /// Exhaustive law checks on the given sample sets. `seed` drives the
    /// sampled matrix-level checks.
    pub fn validate(&self, samples: &[FinSet], seed: u64) -> LawReport {
        validate_theory(self, samples, seed)
    }
}

/// A T-matrix X -|-> Y: a V-matrix X -> TY tagged with its base target.
#[derive(Clone, PartialEq)]
pub struct TMatrix {
    theory: Arc<Theory>,
    source: FinSet,
    target_base: FinSet,
    matrix: VMatrix,
}

impl TMatrix {
    pub fn new(
        theory: Arc<Theory>,
        source: FinSet,
        target_base: FinSet,
        entries: Vec<usize>,
    ) -> Result<TMatrix, MatError> {
        let matrix = VMatrix::new(
            theory.quantale().clone(),
            source.clone(),
            theory.apply(&target_base),
            entries,
        )?;
        Ok(TMatrix {
            theory,
            source,
            target_base,
            matrix,
        })
    }

    pub fn from_vmatrix(
        theory: Arc<Theory>,
        target_base: FinSet,
        matrix: VMatrix,
    ) -> Result<TMatrix, MatError> {
        let expected = theory.apply(&target_base);
        if *matrix.target() != expected {
            return Err(MatError::ShapeMismatch {
                op: "t-matrix",
                left: format!("{:?}", matrix.target()),
                right: format!("{expected:?}"),
            });
        }
        Ok(TMatrix {
            theory,
            source: matrix.source().clone(),
            target_base,
            matrix,
        })
    }

    /// The lax Kleisli identity e_X: X -|-> X, the graph of the unit.
    pub fn kleisli_unit(theory: Arc<Theory>, x: &FinSet) -> TMatrix {
        let q = theory.quantale().clone();
        let matrix = VMatrix::graph(&theory.unit(x), q);
        TMatrix {
            theory,
            source: x.clone(),
            target_base: x.clone(),
            matrix,
        }
    }

    pub fn theory(&self) -> &Arc<Theory> {
        &self.theory
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target_base(&self) -> &FinSet {
        &self.target_base
    }

    pub fn matrix(&self) -> &VMatrix {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.matrix.get(row, col)
    }

    /// Kleisli convolution: for self: Y -|-> Z and alpha: X -|-> Y, the
    /// composite m . T_xi(self) . alpha: X -|-> Z.
    pub fn kleisli_compose(&self, alpha: &TMatrix) -> Result<TMatrix, MatError> {
        if self.source != alpha.target_base {
            return Err(MatError::ShapeMismatch {
                op: "kleisli_compose",
                left: format!("{:?} -|-> {:?}", self.source, self.target_base),
                right: format!("{:?} -|-> {:?}", alpha.source, alpha.target_base),
            });
        }
        let th = &self.theory;
        let extended = th.lax_extend(&self.matrix);
        let mult = VMatrix::graph(&th.mult(&self.target_base), th.quantale().clone());
        let matrix = mult.compose(&extended)?.compose(&alpha.matrix)?;
        Ok(TMatrix {
            theory: th.clone(),
            source: alpha.source.clone(),
            target_base: self.target_base.clone(),
            matrix,
        })
    }

    /// The Kleisli lifting: for self = psi: Y -|-> X and gamma: Z -|-> X, the
    /// largest delta: Z -|-> Y with psi o delta <= gamma, computed as the
    /// matrix lifting of gamma through m . T_xi(psi).
    pub fn kleisli_lifting(&self, gamma: &TMatrix) -> Result<TMatrix, MatError> {
        if self.target_base != gamma.target_base {
            return Err(MatError::ShapeMismatch {
                op: "kleisli_lifting",
                left: format!("{:?} -|-> {:?}", self.source, self.target_base),
                right: format!("{:?} -|-> {:?}", gamma.source, gamma.target_base),
            });
        }
        let th = &self.theory;
        let extended = th.lax_extend(&self.matrix); // TY -> TTX
        let mult = VMatrix::graph(&th.mult(&self.target_base), th.quantale().clone());
        let flat = mult.compose(&extended)?; // TY -> TX
        let matrix = flat.lifting(&gamma.matrix)?; // Z -> TY
        Ok(TMatrix {
            theory: th.clone(),
            source: gamma.source.clone(),
            target_base: self.source.clone(),
            matrix,
        })
    }

    pub fn leq(&self, other: &TMatrix) -> bool {
        self.matrix.leq(&other.matrix)
    }

    pub fn join(&self, other: &TMatrix) -> Result<TMatrix, MatError> {
        Ok(TMatrix {
            theory: self.theory.clone(),
            source: self.source.clone(),
            target_base: self.target_base.clone(),
            matrix: self.matrix.join(&other.matrix)?,
        })
    }

    pub fn meet(&self, other: &TMatrix) -> Result<TMatrix, MatError> {
        Ok(TMatrix {
            theory: self.theory.clone(),
            source: self.source.clone(),
            target_base: self.target_base.clone(),
            matrix: self.matrix.meet(&other.matrix)?,
        })
    }
}

impl std::fmt::Debug for TMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TMatrix {:?} -|-> {:?}: {:?}",
            self.source, self.target_base, self.matrix
        )
    }
}

/// Enumerate all T-matrices X -|-> Y over the theory.
pub fn for_each_tmatrix(
    theory: &Arc<Theory>,
    source: &FinSet,
    target_base: &FinSet,
    mut visit: impl FnMut(TMatrix),
) {
    let cells = source.len() * theory.apply(target_base).len();
    for_each_function(cells, theory.quantale().size(), |entries| {
        visit(
            TMatrix::new(
                theory.clone(),
                source.clone(),
                target_base.clone(),
                entries.to_vec(),
            )
            .expect("enumerated entries are total"),
        )
    });
}

fn random_matrix(
    q: &Arc<Quantale>,
    source: &FinSet,
    target: &FinSet,
    rng: &mut ChaCha8Rng,
) -> VMatrix {
    VMatrix::from_fn(q.clone(), source.clone(), target.clone(), |_, _| {
        rng.gen_range(0..q.size())
    })
}

fn maps_between(a: &FinSet, b: &FinSet) -> Vec<FinMap> {
    let mut out = Vec::new();
    for_each_function(a.len(), b.len(), |values| {
        out.push(FinMap::new(a.clone(), b.clone(), values.to_vec()));
    });
    out
}

fn validate_theory(th: &Theory, samples: &[FinSet], seed: u64) -> LawReport {
    let mut report = LawReport::new(th.name().to_string());
    let q = th.quantale().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // T1 = 1, the standing assumption
    let t1 = th.apply(&FinSet::singleton());
    report.record("theory.unit_cardinality", t1.len() == 1, || {
        format!("|T1| = {}", t1.len())
    });

    // functor laws on sample sets
    let mut functor_id = None;
    for s in samples {
        let tid = th.map(&FinMap::identity(s));
        if tid.values() != FinMap::identity(&th.apply(s)).values() {
            functor_id = Some(format!("T(id) differs from id on {s:?}"));
        }
    }
    report.record("functor.identity", functor_id.is_none(), || {
        functor_id.clone().unwrap()
    });

    let mut functor_comp = None;
    'fc: for a in samples {
        for b in samples {
            for c in samples {
                for f in maps_between(a, b) {
                    for g in maps_between(b, c) {
                        let lhs = th.map(&f.then(&g));
                        let rhs = th.map(&f).then(&th.map(&g));
                        if lhs.values() != rhs.values() {
                            functor_comp =
                                Some(format!("T(g . f) != T(g) . T(f) for f={f:?}, g={g:?}"));
                            break 'fc;
                        }
                    }
                }
            }
        }
    }
    report.record("functor.composition", functor_comp.is_none(), || {
        functor_comp.clone().unwrap()
    });

    // monad laws
    let mut monad_unit = None;
    let mut monad_assoc = None;
    for s in samples {
        let tx = th.apply(s);
        let m = th.mult(s);
        let e_tx = th.unit(&tx);
        let te_x = th.map(&th.unit(s));
        if e_tx.then(&m).values() != FinMap::identity(&tx).values() {
            monad_unit = Some(format!("m . e_TX != id on {s:?}"));
        }
        if te_x.then(&m).values() != FinMap::identity(&tx).values() {
            monad_unit = Some(format!("m . T(e_X) != id on {s:?}"));
        }
        let m_tx = th.mult(&tx);
        let tm = th.map(&m);
        if tm.then(&m).values() != m_tx.then(&m).values() {
            monad_assoc = Some(format!("m . T(m) != m . m_T on {s:?}"));
        }
    }
    report.record("monad.unit", monad_unit.is_none(), || {
        monad_unit.clone().unwrap()
    });
    report.record("monad.associativity", monad_assoc.is_none(), || {
        monad_assoc.clone().unwrap()
    });

    // (V, xi) is an Eilenberg-Moore algebra
    let carrier = q.carrier_set();
    let tv = th.tv_set();
    let e_v = th.unit(&carrier);
    let mut em_unit = None;
    for v in 0..carrier.len() {
        if th.xi(e_v.apply(v)) != v {
            em_unit = Some(format!("xi(e({})) = {}", q.label(v), q.label(th.xi(e_v.apply(v)))));
        }
    }
    report.record("algebra.unit", em_unit.is_none(), || em_unit.clone().unwrap());

    let mut em_mult = None;
    let t_xi = th.map(&th.xi_map());
    let m_v = th.mult(&carrier);
    for w in 0..th.apply(&tv).len() {
        let lhs = th.xi(t_xi.apply(w));
        let rhs = th.xi(m_v.apply(w));
        if lhs != rhs {
            em_mult = Some(format!(
                "xi . T(xi) and xi . m disagree at index {w}: {} vs {}",
                q.label(lhs),
                q.label(rhs)
            ));
        }
    }
    report.record("algebra.multiplication", em_mult.is_none(), || {
        em_mult.clone().unwrap()
    });

    // the monoid structure of V lifts to the algebra: both squares of the
    // strict-theory condition (b)
    let vv = carrier.product(&carrier);
    let tensor_fn = FinMap::new(
        vv.clone(),
        carrier.clone(),
        (0..vv.len())
            .map(|p| {
                let (a, b) = carrier.unpair(&carrier, p);
                q.tensor(a, b)
            })
            .collect(),
    );
    let t_tensor = th.map(&tensor_fn);
    let tvv = th.apply(&vv);
    let tp1 = th.map(&FinMap::projection1(&carrier, &carrier));
    let tp2 = th.map(&FinMap::projection2(&carrier, &carrier));
    let mut monoid_tensor = None;
    for w in 0..tvv.len() {
        let lhs = th.xi(t_tensor.apply(w));
        let rhs = q.tensor(th.xi(tp1.apply(w)), th.xi(tp2.apply(w)));
        if lhs != rhs {
            monoid_tensor = Some(format!(
                "xi . T(tensor) = {} but tensor . <xi T pi1, xi T pi2> = {} at {}",
                q.label(lhs),
                q.label(rhs),
                tvv.label(w)
            ));
            break;
        }
    }
    report.record("monoid.tensor_is_homomorphism", monoid_tensor.is_none(), || {
        monoid_tensor.clone().unwrap()
    });

    let one = FinSet::singleton();
    let k_fn = FinMap::constant(one.clone(), carrier.clone(), q.unit());
    let t_k = th.map(&k_fn);
    let t1_set = th.apply(&one);
    let mut monoid_unit = None;
    for w in 0..t1_set.len() {
        let got = th.xi(t_k.apply(w));
        if got != q.unit() {
            monoid_unit = Some(format!("xi(T(k)) = {} instead of k", q.label(got)));
        }
    }
    report.record("monoid.unit_is_homomorphism", monoid_unit.is_none(), || {
        monoid_unit.clone().unwrap()
    });

    // the internal hom is automatically oplax
    let hom_fn = FinMap::new(
        vv.clone(),
        carrier.clone(),
        (0..vv.len())
            .map(|p| {
                let (a, b) = carrier.unpair(&carrier, p);
                q.hom(a, b)
            })
            .collect(),
    );
    let t_hom = th.map(&hom_fn);
    let mut hom_oplax = None;
    for w in 0..tvv.len() {
        let lhs = q.hom(th.xi(tp1.apply(w)), th.xi(tp2.apply(w)));
        let rhs = th.xi(t_hom.apply(w));
        if !q.leq(lhs, rhs) {
            hom_oplax = Some(format!(
                "hom . <xi T pi1, xi T pi2> = {} exceeds xi . T(hom) = {} at {}",
                q.label(lhs),
                q.label(rhs),
                tvv.label(w)
            ));
            break;
        }
    }
    report.record("hom.oplax", hom_oplax.is_none(), || hom_oplax.clone().unwrap());

    // condition (c): xi-hat is natural for the left adjoints of inverse image
    let mut xihat = None;
    'xihat: for a in samples {
        for b in samples {
            if q.size().pow(a.len() as u32) > 4096 {
                continue;
            }
            for f in maps_between(a, b) {
                let ta = th.apply(a);
                let tb = th.apply(b);
                let tf = th.map(&f);
                let mut ok = true;
                for_each_function(a.len(), q.size(), |phi| {
                    // P_V f (phi): y -> join { phi(x) : f(x) = y }
                    let pushed: Vec<usize> = (0..b.len())
                        .map(|y| {
                            q.join_of(
                                (0..a.len()).filter(|&x| f.apply(x) == y).map(|x| phi[x]),
                            )
                        })
                        .collect();
                    // xi_B of it: TB -> V
                    let pushed_fn = FinMap::new(b.clone(), carrier.clone(), pushed);
                    let t_pushed = th.map(&pushed_fn);
                    let lhs: Vec<usize> =
                        (0..tb.len()).map(|yy| th.xi(t_pushed.apply(yy))).collect();
                    // P_V(Tf) of xi_A(phi)
                    let phi_fn = FinMap::new(a.clone(), carrier.clone(), phi.to_vec());
                    let t_phi = th.map(&phi_fn);
                    let xi_phi: Vec<usize> =
                        (0..ta.len()).map(|xx| th.xi(t_phi.apply(xx))).collect();
                    let rhs: Vec<usize> = (0..tb.len())
                        .map(|yy| {
                            q.join_of(
                                (0..ta.len())
                                    .filter(|&xx| tf.apply(xx) == yy)
                                    .map(|xx| xi_phi[xx]),
                            )
                        })
                        .collect();
                    if lhs != rhs {
                        ok = false;
                    }
                });
                if !ok {
                    xihat = Some(format!("xi-hat not natural at f={f:?}"));
                    break 'xihat;
                }
            }
        }
    }
    report.record("xihat.natural", xihat.is_none(), || xihat.clone().unwrap());

    // Hopf squares for the pairing tau, on sampled matrices
    let mut hopf = None;
    'hopf: for x in samples.iter().take(2) {
        for y in samples.iter().take(2) {
            for _ in 0..3 {
                let xp = samples[rng.gen_range(0..samples.len())].clone();
                let yp = samples[rng.gen_range(0..samples.len())].clone();
                let r = random_matrix(&q, x, &xp, &mut rng);
                let s = random_matrix(&q, y, &yp, &mut rng);
                let tau_src = VMatrix::graph(&th.pairing(x, y), q.clone());
                let tau_tgt = VMatrix::graph(&th.pairing(&xp, &yp), q.clone());
                let lhs = tau_tgt.compose(&th.lax_extend(&r.tensor(&s).unwrap())).unwrap();
                let rhs = th
                    .lax_extend(&r)
                    .tensor(&th.lax_extend(&s))
                    .unwrap()
                    .compose(&tau_src)
                    .unwrap();
                if lhs != rhs {
                    hopf = Some(format!(
                        "tau square fails for matrices {:?} and {:?}",
                        r, s
                    ));
                    break 'hopf;
                }
            }
        }
    }
    report.record("hopf.pairing_square", hopf.is_none(), || hopf.clone().unwrap());

    // counit square: ! . T_xi(k) = k . ! as matrices T1 -> 1
    let k_mat = VMatrix::from_fn(q.clone(), one.clone(), one.clone(), |_, _| q.unit());
    let bang = FinMap::constant(t1_set.clone(), one.clone(), 0);
    let bang_mat = VMatrix::graph(&bang, q.clone());
    let lhs = bang_mat.compose(&th.lax_extend(&k_mat)).unwrap();
    let rhs = k_mat.compose(&bang_mat).unwrap();
    report.record("hopf.counit_square", lhs == rhs, || {
        "! . T_xi(k) differs from k . !".to_string()
    });

    // e is oplax natural and m strictly natural for the lax extension
    let mut e_oplax = None;
    let mut m_natural = None;
    for x in samples {
        for y in samples {
            for _ in 0..3 {
                let r = random_matrix(&q, x, y, &mut rng);
                let e_x = VMatrix::graph(&th.unit(x), q.clone());
                let e_y = VMatrix::graph(&th.unit(y), q.clone());
                let lhs = e_y.compose(&r).unwrap();
                let rhs = th.lax_extend(&r).compose(&e_x).unwrap();
                if !lhs.leq(&rhs) {
                    e_oplax = Some(format!("e_Y . r not below T_xi(r) . e_X for {r:?}"));
                }
                let m_x = VMatrix::graph(&th.mult(x), q.clone());
                let m_y = VMatrix::graph(&th.mult(y), q.clone());
                let lhs = m_y.compose(&th.lax_extend(&th.lax_extend(&r))).unwrap();
                let rhs = th.lax_extend(&r).compose(&m_x).unwrap();
                if lhs != rhs {
                    m_natural = Some(format!("m not strictly natural at {r:?}"));
                }
            }
        }
    }
    report.record("extension.e_oplax", e_oplax.is_none(), || e_oplax.clone().unwrap());
    report.record("extension.m_natural", m_natural.is_none(), || {
        m_natural.clone().unwrap()
    });

    // T_xi respects involution and is (at least laxly) functorial
    let mut involution = None;
    let mut lax_functorial = None;
    let mut strict_functorial = None;
    for x in samples.iter().take(2) {
        for y in samples.iter().take(2) {
            for z in samples.iter().take(2) {
                for _ in 0..2 {
                    let r = random_matrix(&q, x, y, &mut rng);
                    let s = random_matrix(&q, y, z, &mut rng);
                    if th.lax_extend(&r.involution()) != th.lax_extend(&r).involution() {
                        involution = Some(format!("T_xi(r deg) != (T_xi r) deg for {r:?}"));
                    }
                    let comp = th.lax_extend(&s.compose(&r).unwrap());
                    let split = th.lax_extend(&s).compose(&th.lax_extend(&r)).unwrap();
                    if !split.leq(&comp) {
                        lax_functorial = Some(format!("T_xi(s.r) not above T_xi(s).T_xi(r)"));
                    }
                    if comp != split {
                        strict_functorial = Some(format!("T_xi(s.r) != T_xi(s).T_xi(r)"));
                    }
                }
            }
        }
    }
    report.record("extension.involution", involution.is_none(), || {
        involution.clone().unwrap()
    });
    report.record("extension.lax_functorial", lax_functorial.is_none(), || {
        lax_functorial.clone().unwrap()
    });
    report.record(
        "extension.strict_functorial",
        strict_functorial.is_none(),
        || strict_functorial.clone().unwrap(),
    );

    // Beck-Chevalley spot checks: naturality squares of m are weak pullbacks
    let mut bc_m = None;
    'bcm: for a in samples {
        for b in samples {
            for f in maps_between(a, b) {
                let ta = th.apply(a);
                let tf = th.map(&f);
                let ttf = th.map(&tf);
                let m_a = th.mult(a);
                let m_b = th.mult(b);
                let tta = th.apply(&ta);
                let ttb = th.apply(&th.apply(b));
                for u in 0..ttb.len() {
                    for v in 0..ta.len() {
                        if m_b.apply(u) == tf.apply(v) {
                            let witness = (0..tta.len())
                                .any(|w| ttf.apply(w) == u && m_a.apply(w) == v);
                            if !witness {
                                bc_m = Some(format!(
                                    "m-naturality square at {f:?} is not a weak pullback"
                                ));
                                break 'bcm;
                            }
                        }
                    }
                }
            }
        }
    }
    report.record("bc.m_squares_weak_pullbacks", bc_m.is_none(), || {
        bc_m.clone().unwrap()
    });

    // T sends sampled pullbacks to weak pullbacks
    let mut bc_t = None;
    'bct: for a in samples.iter().take(2) {
        for b in samples.iter().take(2) {
            for c in samples.iter().take(2) {
                for f in maps_between(a, c).into_iter().take(4) {
                    for g in maps_between(b, c).into_iter().take(4) {
                        // pullback of f and g inside A x B
                        let mut labels = Vec::new();
                        let mut proj_a = Vec::new();
                        let mut proj_b = Vec::new();
                        for i in 0..a.len() {
                            for j in 0..b.len() {
                                if f.apply(i) == g.apply(j) {
                                    labels.push(format!("({},{})", a.label(i), b.label(j)));
                                    proj_a.push(i);
                                    proj_b.push(j);
                                }
                            }
                        }
                        let p = FinSet::new(labels);
                        let pa = FinMap::new(p.clone(), a.clone(), proj_a);
                        let pb = FinMap::new(p.clone(), b.clone(), proj_b);
                        let tpa = th.map(&pa);
                        let tpb = th.map(&pb);
                        let tf = th.map(&f);
                        let tg = th.map(&g);
                        let tp = th.apply(&p);
                        for u in 0..th.apply(a).len() {
                            for v in 0..th.apply(b).len() {
                                if tf.apply(u) == tg.apply(v) {
                                    let hit = (0..tp.len())
                                        .any(|w| tpa.apply(w) == u && tpb.apply(w) == v);
                                    if !hit {
                                        bc_t = Some(format!(
                                            "T image of the pullback of {f:?}, {g:?} is not weak"
                                        ));
                                        break 'bct;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.record("bc.preserves_weak_pullbacks", bc_t.is_none(), || {
        bc_t.clone().unwrap()
    });

    report
}

/// Default sample sets for `Theory::validate`: sizes 1 to 3.
pub fn default_samples() -> Vec<FinSet> {
    vec![FinSet::of_size(1), FinSet::of_size(2), FinSet::of_size(3)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<Quantale> {
        Arc::new(Quantale::two())
    }

    fn theories() -> Vec<Arc<Theory>> {
        let qs = vec![
            two(),
            Arc::new(Quantale::goedel_chain(3).unwrap()),
            Arc::new(Quantale::lawvere_chain(4).unwrap()),
        ];
        let mut out = Vec::new();
        for q in qs {
            out.push(Arc::new(Theory::identity(q.clone())));
            out.push(Arc::new(Theory::finite_ultrafilter(q)));
        }
        out
    }

    #[test]
    fn shipped_theories_validate() {
        for th in theories() {
            let report = th.validate(&default_samples(), 7);
            assert!(report.all_hold(), "{} failed:\n{report}", th.name());
        }
    }

    #[test]
    fn word_theory_is_rejected() {
        let err = Theory::word(two()).unwrap_err();
        assert!(err.to_string().contains("T1 = 1"));
    }

    #[test]
    fn identity_extension_is_identity() {
        let th = Theory::identity(two());
        let set = FinSet::of_size(2);
        crate::vmat::for_each_matrix(th.quantale(), &set, &set, |r| {
            assert_eq!(th.lax_extend(&r), r);
        });
    }

    #[test]
    fn ultrafilter_xi_is_principal_evaluation() {
        let th = Theory::finite_ultrafilter(two());
        for v in 0..th.quantale().size() {
            assert_eq!(th.xi(th.unit(&th.quantale().carrier_set()).apply(v)), v);
        }
        assert!(th.degeneracy_note().is_some());
    }

    #[test]
    fn ultrafilter_extension_matches_identity_extension() {
        let q = Arc::new(Quantale::goedel_chain(3).unwrap());
        let ident = Theory::identity(q.clone());
        let ultra = Theory::finite_ultrafilter(q.clone());
        let x = FinSet::of_size(2);
        let y = FinSet::of_size(3);
        crate::vmat::for_each_matrix(&q, &x, &y, |r| {
            // same entries under the relabelling isomorphism U(X) ~ X
            assert_eq!(ident.lax_extend(&r).entries(), ultra.lax_extend(&r).entries());
        });
    }

    #[test]
    fn extension_of_identity_matrix_is_identity() {
        for th in theories() {
            let set = FinSet::of_size(3);
            let id = VMatrix::identity(&set, th.quantale().clone());
            let ext = th.lax_extend(&id);
            let id_tx = VMatrix::identity(&th.apply(&set), th.quantale().clone());
            assert!(id_tx.leq(&ext), "{}", th.name());
            assert_eq!(ext, id_tx, "{}", th.name());
        }
    }

    #[test]
    fn kleisli_units_and_identity_theory_composition() {
        for th in theories() {
            let x = FinSet::of_size(2);
            let y = FinSet::of_size(2);
            for_each_tmatrix(&th, &x, &y, |alpha| {
                let e_y = TMatrix::kleisli_unit(th.clone(), &y);
                let e_x = TMatrix::kleisli_unit(th.clone(), &x);
                assert_eq!(e_y.kleisli_compose(&alpha).unwrap(), alpha, "{}", th.name());
                assert!(alpha.leq(&alpha.kleisli_compose(&e_x).unwrap()), "{}", th.name());
            });
        }
    }

    #[test]
    fn identity_theory_kleisli_is_matrix_composition() {
        let th = Arc::new(Theory::identity(two()));
        let x = FinSet::of_size(2);
        for_each_tmatrix(&th, &x, &x, |alpha| {
            for_each_tmatrix(&th, &x, &x, |beta| {
                let kleisli = beta.kleisli_compose(&alpha).unwrap();
                let plain = beta.matrix().compose(alpha.matrix()).unwrap();
                assert_eq!(kleisli.matrix().entries(), plain.entries());
            });
        });
    }

    #[test]
    fn kleisli_associativity_sampled() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for th in theories() {
            let sizes = [1usize, 2, 3];
            for _ in 0..40 {
                let nx = sizes[rng.gen_range(0..3)];
                let ny = sizes[rng.gen_range(0..3)];
                let nz = sizes[rng.gen_range(0..3)];
                let nw = sizes[rng.gen_range(0..3)];
                let (x, y, z, w) = (
                    FinSet::of_size(nx),
                    FinSet::of_size(ny),
                    FinSet::of_size(nz),
                    FinSet::of_size(nw),
                );
                let qn = th.quantale().size();
                let mk = |src: &FinSet, tgt: &FinSet, rng: &mut ChaCha8Rng| {
                    let cells = src.len() * th.apply(tgt).len();
                    let entries = (0..cells).map(|_| rng.gen_range(0..qn)).collect();
                    TMatrix::new(th.clone(), src.clone(), tgt.clone(), entries).unwrap()
                };
                let alpha = mk(&x, &y, &mut rng);
                let beta = mk(&y, &z, &mut rng);
                let gamma = mk(&z, &w, &mut rng);
                let lhs = gamma.kleisli_compose(&beta.kleisli_compose(&alpha).unwrap()).unwrap();
                let rhs = gamma.kleisli_compose(&beta).unwrap().kleisli_compose(&alpha).unwrap();
                assert_eq!(lhs, rhs, "{}", th.name());
            }
        }
    }

    #[test]
    fn corrupted_xi_fails_condition_b() {
        let q = two();
        // swap the two values of xi: no longer an algebra over the identity monad
        let th = Theory::identity(q).with_xi_table(vec![1, 0]);
        let report = th.validate(&default_samples(), 3);
        assert!(report.has_failure());
        assert_eq!(
            report.verdict_of("algebra.unit"),
            Some(crate::report::Verdict::Fails)
        );
    }
}
