//! Plain V-categories (the identity-theory case): presheaves, weighted limits
//! and colimits, and the complete-distributivity and total-algebraicity
//! predicates computed by explicit adjoint search.
//!
//! Representing objects of (co)limits are only determined up to isomorphism,
//! so searches return a representative together with its isomorphism class.

use crate::finset::{for_each_function, FinSet};
use crate::quantale::Quantale;
use crate::vmat::VMatrix;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VcatError {
    #[error("V-category `{0}` violates {1}: {2}")]
    LawViolation(String, &'static str, String),
    #[error("V-category `{0}` is not complete: {1}")]
    NotComplete(String, String),
}

/// A V-category on a finite object set. The structure matrix stores
/// hom(x -> y) at (row x, column y): rows index the hom-domain, matching the
/// T-categorical reading of a structure entry a(t, x) as "hom from t to x".
#[derive(Clone, PartialEq)]
pub struct VCategory {
    objects: FinSet,
    structure: VMatrix,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    /// phi with hom(x,y) (x) phi(x) <= phi(y): a V-functor A -> V, i.e. a
    /// distributor 1 -o-> A.
    Covariant,
    /// phi with hom(x,y) (x) phi(y) <= phi(x): a distributor A -o-> 1.
    Contravariant,
}

/// A weight function on a V-category, tagged with its variance.
#[derive(Clone, PartialEq, Debug)]
pub struct Presheaf {
    pub weights: Vec<usize>,
    pub variance: Variance,
}

/// A representing object for a universal property, with the full isomorphism
/// class of objects that also represent it.
#[derive(Clone, PartialEq, Debug)]
pub struct Representative {
    pub object: usize,
    pub iso_class: Vec<usize>,
}

impl VCategory {
    pub fn new(objects: FinSet, structure: VMatrix) -> Result<VCategory, VcatError> {
        assert_eq!(*structure.source(), objects);
        assert_eq!(*structure.target(), objects);
        let q = structure.quantale().clone();
        let name = format!("{objects:?}");
        for x in 0..objects.len() {
            if !q.leq(q.unit(), structure.get(x, x)) {
                return Err(VcatError::LawViolation(
                    name,
                    "reflexivity",
                    format!("k is not below hom({0}, {0})", objects.label(x)),
                ));
            }
        }
        let square = structure.compose(&structure).expect("endo shapes agree");
        if let Some((row, col)) = square.leq_witness(&structure) {
            return Err(VcatError::LawViolation(
                name,
                "transitivity",
                format!(
                    "composite exceeds hom at ({}, {})",
                    objects.label(col),
                    objects.label(row)
                ),
            ));
        }
        Ok(VCategory { objects, structure })
    }

    /// Discrete V-category: identity structure.
    pub fn discrete(objects: FinSet, quantale: Arc<Quantale>) -> VCategory {
        let structure = VMatrix::identity(&objects, quantale);
        VCategory { objects, structure }
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        self.structure.quantale()
    }

    pub fn structure(&self) -> &VMatrix {
        &self.structure
    }

    /// hom from x to y.
    pub fn hom(&self, x: usize, y: usize) -> usize {
        self.structure.get(x, y)
    }

    pub fn isomorphic_objects(&self, x: usize, y: usize) -> bool {
        let q = self.quantale();
        q.leq(q.unit(), self.hom(x, y)) && q.leq(q.unit(), self.hom(y, x))
    }

    /// The opposite category (transposed structure).
    pub fn op(&self) -> VCategory {
        VCategory {
            objects: self.objects.clone(),
            structure: self.structure.involution(),
        }
    }

    pub fn full_subcategory(&self, objects: &[usize]) -> VCategory {
        let set = FinSet::new(
            objects
                .iter()
                .map(|&i| self.objects.label(i).to_string())
                .collect(),
        );
        let structure = VMatrix::from_fn(
            self.quantale().clone(),
            set.clone(),
            set.clone(),
            |row, col| self.structure.get(objects[row], objects[col]),
        );
        VCategory {
            objects: set,
            structure,
        }
    }

    /// Is `f` (an object assignment into `other`) a V-functor?
    pub fn is_functor_to(&self, other: &VCategory, f: &[usize]) -> bool {
        let q = self.quantale();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if !q.leq(self.hom(x, y), other.hom(f[x], f[y])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_presheaf(&self, weights: &[usize], variance: Variance) -> bool {
        let q = self.quantale();
        for x in 0..self.len() {
            for y in 0..self.len() {
                let ok = match variance {
                    Variance::Covariant => {
                        q.leq(q.tensor(self.hom(x, y), weights[x]), weights[y])
                    }
                    Variance::Contravariant => {
                        q.leq(q.tensor(self.hom(x, y), weights[y]), weights[x])
                    }
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The representable presheaves: covariant hom(x, -), contravariant hom(-, x).
    pub fn representable(&self, x: usize, variance: Variance) -> Presheaf {
        let weights = (0..self.len())
            .map(|z| match variance {
                Variance::Covariant => self.hom(x, z),
                Variance::Contravariant => self.hom(z, x),
            })
            .collect();
        Presheaf { weights, variance }
    }

    fn find_by_hom_row(&self, want: impl Fn(usize) -> usize) -> Option<Representative> {
        let mut class = Vec::new();
        for s in 0..self.len() {
            if (0..self.len()).all(|y| self.hom(s, y) == want(y)) {
                class.push(s);
            }
        }
        let object = *class.first()?;
        Some(Representative {
            object,
            iso_class: class,
        })
    }

    fn find_by_hom_col(&self, want: impl Fn(usize) -> usize) -> Option<Representative> {
        let mut class = Vec::new();
        for s in 0..self.len() {
            if (0..self.len()).all(|y| self.hom(y, s) == want(y)) {
                class.push(s);
            }
        }
        let object = *class.first()?;
        Some(Representative {
            object,
            iso_class: class,
        })
    }

    /// Tensor v (x) x: hom(v (x) x, y) = hom_V(v, hom(x, y)) for all y.
    pub fn tensor_object(&self, v: usize, x: usize) -> Option<Representative> {
        let q = self.quantale().clone();
        self.find_by_hom_row(|y| q.hom(v, self.hom(x, y)))
    }

    /// Cotensor v -* x: hom(y, v -* x) = hom_V(v, hom(y, x)) for all y.
    pub fn cotensor_object(&self, v: usize, x: usize) -> Option<Representative> {
        let q = self.quantale().clone();
        self.find_by_hom_col(|y| q.hom(v, self.hom(y, x)))
    }

    /// Supremum of a weighted family: the colimit of the identity weighted by
    /// phi, i.e. hom(sup, y) = meet_x hom_V(phi(x), hom(x, y)). Accepts either
    /// variance; existence is a normal `None`, not an error.
    pub fn sup_of_presheaf(&self, phi: &Presheaf) -> Option<Representative> {
        assert_eq!(phi.weights.len(), self.len());
        let q = self.quantale().clone();
        self.find_by_hom_row(|y| {
            q.meet_of((0..self.len()).map(|x| q.hom(phi.weights[x], self.hom(x, y))))
        })
    }

    /// Infimum of a weighted family: hom(y, inf) = meet_x hom_V(phi(x), hom(y, x)).
    pub fn inf_of_presheaf(&self, phi: &Presheaf) -> Option<Representative> {
        assert_eq!(phi.weights.len(), self.len());
        let q = self.quantale().clone();
        self.find_by_hom_col(|y| {
            q.meet_of((0..self.len()).map(|x| q.hom(phi.weights[x], self.hom(y, x))))
        })
    }

    /// Conical supremum of a set of objects (constant weight k).
    pub fn conical_sup(&self, elems: &[usize]) -> Option<Representative> {
        let q = self.quantale().clone();
        self.find_by_hom_row(|y| q.meet_of(elems.iter().map(|&x| self.hom(x, y))))
    }

    /// Conical infimum of a set of objects.
    pub fn conical_inf(&self, elems: &[usize]) -> Option<Representative> {
        let q = self.quantale().clone();
        self.find_by_hom_col(|y| q.meet_of(elems.iter().map(|&x| self.hom(y, x))))
    }

    /// Colimit of h: I -> A weighted by a contravariant psi on I:
    /// hom(colim, y) = meet_i hom_V(psi(i), hom(h(i), y)).
    ///
    /// Contravariant weights are the ones with suprema here: the supremum of
    /// the contravariant representable at x is x itself, and the colimit
    /// weighted by a representable is the corresponding value of h.
    pub fn weighted_colimit(
        &self,
        index: &VCategory,
        psi: &Presheaf,
        h: &[usize],
    ) -> Option<Representative> {
        assert_eq!(psi.variance, Variance::Contravariant);
        assert_eq!(psi.weights.len(), index.len());
        assert_eq!(h.len(), index.len());
        let q = self.quantale().clone();
        self.find_by_hom_row(|y| {
            q.meet_of(
                (0..index.len()).map(|i| q.hom(psi.weights[i], self.hom(h[i], y))),
            )
        })
    }

    /// Limit of h: I -> A weighted by a covariant phi on I:
    /// hom(y, lim) = meet_i hom_V(phi(i), hom(y, h(i))).
    pub fn weighted_limit(
        &self,
        index: &VCategory,
        phi: &Presheaf,
        h: &[usize],
    ) -> Option<Representative> {
        assert_eq!(phi.variance, Variance::Covariant);
        assert_eq!(phi.weights.len(), index.len());
        assert_eq!(h.len(), index.len());
        let q = self.quantale().clone();
        self.find_by_hom_col(|y| {
            q.meet_of(
                (0..index.len()).map(|i| q.hom(phi.weights[i], self.hom(y, h[i]))),
            )
        })
    }

    /// Completeness: a top (empty infimum), all binary conical infima, and all
    /// cotensors. By finiteness this yields every weighted limit: a weighted
    /// limit is a conical infimum of cotensors, and arbitrary conical infima
    /// fold through binary ones.
    pub fn is_complete(&self) -> bool {
        self.completeness_witness().is_none()
    }

    pub fn completeness_witness(&self) -> Option<String> {
        if self.conical_inf(&[]).is_none() {
            return Some("no top (empty infimum)".to_string());
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.conical_inf(&[x, y]).is_none() {
                    return Some(format!(
                        "no infimum of {{{}, {}}}",
                        self.objects.label(x),
                        self.objects.label(y)
                    ));
                }
            }
        }
        for v in self.quantale().elements() {
            for x in 0..self.len() {
                if self.cotensor_object(v, x).is_none() {
                    return Some(format!(
                        "no cotensor of {} by {}",
                        self.objects.label(x),
                        self.quantale().label(v)
                    ));
                }
            }
        }
        None
    }

    /// Dual of `is_complete`.
    pub fn is_cocomplete(&self) -> bool {
        if self.conical_sup(&[]).is_none() {
            return false;
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.conical_sup(&[x, y]).is_none() {
                    return false;
                }
            }
        }
        for v in self.quantale().elements() {
            for x in 0..self.len() {
                if self.tensor_object(v, x).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// All presheaves of the given variance, enumerated in lexicographic
    /// weight order, together with the presheaf V-category structure
    /// [phi, psi] = meet_x hom_V(phi(x), psi(x)).
    pub fn presheaf_category(&self, variance: Variance) -> PresheafCategory {
        let q = self.quantale().clone();
        let candidates = q.size().checked_pow(self.len() as u32);
        assert!(
            candidates.is_some_and(|c| c <= 1 << 22),
            "presheaf category too large to enumerate ({} candidates over {} objects)",
            q.size(),
            self.len()
        );
        let mut weights: Vec<Vec<usize>> = Vec::new();
        for_each_function(self.len(), q.size(), |w| {
            if self.is_presheaf(w, variance) {
                weights.push(w.to_vec());
            }
        });
        let labels: Vec<String> = weights
            .iter()
            .map(|w| {
                let cells: Vec<&str> = w.iter().map(|&v| q.label(v)).collect();
                format!("<{}>", cells.join(","))
            })
            .collect();
        let objects = FinSet::new(labels);
        let structure = VMatrix::from_fn(q.clone(), objects.clone(), objects.clone(), |row, col| {
            // hom from row to col: [phi, psi] = meet_x hom(phi(x), psi(x))
            q.meet_of(
                (0..self.len()).map(|x| q.hom(weights[row][x], weights[col][x])),
            )
        });
        PresheafCategory {
            category: VCategory { objects, structure },
            weights,
            variance,
        }
    }

    /// Complete distributivity: the category is complete and cocomplete and
    /// the sup functor S (left adjoint to the Yoneda embedding into
    /// contravariant presheaves) has a further left adjoint.
    pub fn is_completely_distributive(&self) -> Result<bool, VcatError> {
        Ok(self.distributivity_data()?.is_some())
    }

    /// Totally algebraic: completely distributive, and the restricted Yoneda
    /// embedding into presheaves on the equalizer of y and t is an
    /// isomorphism of V-categories.
    pub fn is_totally_algebraic(&self) -> Result<bool, VcatError> {
        let Some(data) = self.distributivity_data()? else {
            return Ok(false);
        };
        let basis = &data.equalizer;
        let sub = self.full_subcategory(basis);
        let sub_presheaves = sub.presheaf_category(Variance::Contravariant);
        let q = self.quantale().clone();
        // restricted Yoneda: x -> hom(b, x) for b in the basis
        let rho: Vec<Vec<usize>> = (0..self.len())
            .map(|x| basis.iter().map(|&b| self.hom(b, x)).collect())
            .collect();
        // fully faithful: presheaf hom of restrictions recovers hom
        for x in 0..self.len() {
            for y in 0..self.len() {
                let presheaf_hom =
                    q.meet_of((0..basis.len()).map(|i| q.hom(rho[x][i], rho[y][i])));
                if presheaf_hom != self.hom(x, y) {
                    return Ok(false);
                }
            }
        }
        // surjective on presheaves
        for w in &sub_presheaves.weights {
            if !rho.iter().any(|r| r == w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn distributivity_data(&self) -> Result<Option<DistributivityData>, VcatError> {
        if let Some(witness) = self.completeness_witness() {
            return Err(VcatError::NotComplete(format!("{:?}", self.objects), witness));
        }
        let presheaves = self.presheaf_category(Variance::Contravariant);
        let q = self.quantale().clone();
        // Yoneda embedding
        let yoneda: Vec<usize> = (0..self.len())
            .map(|x| {
                let w = self.representable(x, Variance::Contravariant).weights;
                presheaves
                    .index_of(&w)
                    .expect("representables are presheaves")
            })
            .collect();
        // S: pointwise left adjoint of yoneda; S(phi) represents
        // meet_z hom_V(phi(z), hom(z, -))
        let mut sup = Vec::with_capacity(presheaves.len());
        for w in &presheaves.weights {
            let phi = Presheaf {
                weights: w.clone(),
                variance: Variance::Contravariant,
            };
            match self.sup_of_presheaf(&phi) {
                Some(rep) => sup.push(rep.object),
                None => return Ok(None), // not cocomplete
            }
        }
        // t: for each x a presheaf tau with [tau, phi] = hom(x, S phi) for all phi
        let mut totally_below_of = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let mut found = None;
            'cand: for (ti, tw) in presheaves.weights.iter().enumerate() {
                for (pi, pw) in presheaves.weights.iter().enumerate() {
                    let lhs = q.meet_of((0..self.len()).map(|z| q.hom(tw[z], pw[z])));
                    let rhs = self.hom(x, sup[pi]);
                    if lhs != rhs {
                        continue 'cand;
                    }
                }
                found = Some(ti);
                break;
            }
            match found {
                Some(ti) => totally_below_of.push(ti),
                None => return Ok(None),
            }
        }
        let equalizer: Vec<usize> = (0..self.len())
            .filter(|&x| {
                presheaves.weights[yoneda[x]] == presheaves.weights[totally_below_of[x]]
            })
            .collect();
        Ok(Some(DistributivityData { equalizer }))
    }

    /// Quotient by isomorphism of objects; returns the quotient category and
    /// the class index of every object.
    pub fn poset_reflection(&self) -> (VCategory, Vec<usize>) {
        let mut class_of = vec![usize::MAX; self.len()];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.len() {
            if let Some(&c) = reps
                .iter()
                .enumerate()
                .find(|(_, &r)| self.isomorphic_objects(r, x))
                .map(|(c, _)| c)
                .as_ref()
            {
                class_of[x] = c;
            } else {
                class_of[x] = reps.len();
                reps.push(x);
            }
        }
        let labels: Vec<String> = reps
            .iter()
            .map(|&r| format!("[{}]", self.objects.label(r)))
            .collect();
        let objects = FinSet::new(labels);
        let structure = VMatrix::from_fn(
            self.quantale().clone(),
            objects.clone(),
            objects.clone(),
            |row, col| self.structure.get(reps[row], reps[col]),
        );
        (
            VCategory {
                objects,
                structure,
            },
            class_of,
        )
    }

    /// Search for a structure-preserving bijection with `other`.
    pub fn isomorphism_to(&self, other: &VCategory) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.quantale() != other.quantale() {
            return None;
        }
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|x| {
                (0..n).all(|y| self.hom(x, y) == other.hom(perm[x], perm[y]))
            });
            if ok {
                return Some(perm);
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }
}

struct DistributivityData {
    equalizer: Vec<usize>,
}

impl std::fmt::Debug for VCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VCategory on {:?}", self.objects)
    }
}

/// A presheaf V-category together with the weight table of each object.
pub struct PresheafCategory {
    pub category: VCategory,
    pub weights: Vec<Vec<usize>>,
    pub variance: Variance,
}

impl PresheafCategory {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, weights: &[usize]) -> Option<usize> {
        self.weights.iter().position(|w| w == weights)
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
