//! Finite commutative unital quantales as explicit tables.
//!
//! A quantale here is a complete lattice (given by a full order table) with a
//! commutative, unital, join-continuous tensor. Every law is checked eagerly
//! at construction by exhaustive enumeration; all downstream theorem checks
//! lean on these laws, so none of them is taken on trust. Carriers are meant
//! to be small (a handful of elements), which keeps the subset enumerations
//! cheap.

use crate::finset::FinSet;
use crate::report::LawReport;
use thiserror::Error;

/// Hard cap on carrier size; validation enumerates all `2^n` subsets.
pub const MAX_CARRIER: usize = 12;

#[derive(Debug, Error)]
pub enum QuantaleError {
    #[error("quantale `{name}` violates {law}: {witness}")]
    LawViolation {
        name: String,
        law: String,
        witness: String,
    },
    #[error("chain quantales need at least 2 elements, got {0}")]
    ChainTooShort(usize),
    #[error("carrier of {0} elements exceeds the exhaustive-validation cap of {MAX_CARRIER}")]
    CarrierTooLarge(usize),
    #[error("malformed quantale table: {0}")]
    MalformedTable(String),
}

/// A validated finite commutative unital quantale.
///
/// Elements are identified by their index into the carrier; `label` maps back
/// to the printable identifier. Values are immutable after construction.
#[derive(Clone)]
pub struct Quantale {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,     // leq[a * n + b] = a <= b
    tensor: Vec<usize>, // tensor[a * n + b]
    unit: usize,
    // derived at construction
    hom: Vec<usize>, // hom[y * n + z], right adjoint to - (x) y
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
    totally_below: Vec<bool>,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq && self.tensor == other.tensor
            && self.unit == other.unit
    }
}

impl Eq for Quantale {}

impl std::fmt::Debug for Quantale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Quantale({}, {} elements)", self.name, self.n)
    }
}

impl Quantale {
    /// The two-element chain {0, 1} with tensor = meet and unit 1.
    pub fn two() -> Quantale {
        let mut q = Quantale::goedel_chain(2).expect("two-element chain is valid");
        q.name = "two".to_string();
        q
    }

    /// The n-element chain {0 < 1 < .. < n-1} with tensor = min and unit n-1.
    pub fn goedel_chain(n: usize) -> Result<Quantale, QuantaleError> {
        if n < 2 {
            return Err(QuantaleError::ChainTooShort(n));
        }
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut leq = vec![false; n * n];
        let mut tensor = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = a <= b;
                tensor[a * n + b] = a.min(b);
            }
        }
        Quantale::from_raw(format!("goedel-chain({n})"), labels, leq, tensor, n - 1)
    }

    /// The chain {0, 1, .., n-2, inf} ordered in reverse of numeric order
    /// (0 is top and the unit, inf is bottom) with tensor the addition that
    /// saturates to inf whenever the numeric sum exceeds n-2. This is the
    /// quotient of the extended-real min-plus quantale collapsing everything
    /// above n-2.
    pub fn lawvere_chain(n: usize) -> Result<Quantale, QuantaleError> {
        if n < 2 {
            return Err(QuantaleError::ChainTooShort(n));
        }
        let inf = n - 1;
        let labels: Vec<String> = (0..n)
            .map(|i| if i == inf { "inf".to_string() } else { i.to_string() })
            .collect();
        let mut leq = vec![false; n * n];
        let mut tensor = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                // numeric order with inf largest; the quantale order reverses it
                leq[a * n + b] = a >= b;
                tensor[a * n + b] = if a == inf || b == inf {
                    inf
                } else {
                    let s = a + b;
                    if s > n - 2 {
                        inf
                    } else {
                        s
                    }
                };
            }
        }
        Quantale::from_raw(format!("lawvere-chain({n})"), labels, leq, tensor, 0)
    }

    /// Componentwise product of two quantales.
    pub fn product(a: &Quantale, b: &Quantale) -> Result<Quantale, QuantaleError> {
        let n = a.n * b.n;
        if n > MAX_CARRIER {
            return Err(QuantaleError::CarrierTooLarge(n));
        }
        let idx = |i: usize, j: usize| i * b.n + j;
        let mut labels = Vec::with_capacity(n);
        for i in 0..a.n {
            for j in 0..b.n {
                labels.push(format!("({},{})", a.labels[i], b.labels[j]));
            }
        }
        let mut leq = vec![false; n * n];
        let mut tensor = vec![0usize; n * n];
        for i1 in 0..a.n {
            for j1 in 0..b.n {
                for i2 in 0..a.n {
                    for j2 in 0..b.n {
                        let p = idx(i1, j1);
                        let q = idx(i2, j2);
                        leq[p * n + q] = a.leq(i1, i2) && b.leq(j1, j2);
                        tensor[p * n + q] = idx(a.tensor(i1, i2), b.tensor(j1, j2));
                    }
                }
            }
        }
        Quantale::from_raw(
            format!("product({},{})", a.name, b.name),
            labels,
            leq,
            tensor,
            idx(a.unit, b.unit),
        )
    }

    /// Build a quantale from explicit tables, validating every law.
    ///
    /// `leq[a][b]` means `a <= b`; `tensor[a][b]` is the index of the tensor.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Quantale, QuantaleError> {
        let name = name.into();
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::MalformedTable(format!(
                "leq table of `{name}` must be {n}x{n}"
            )));
        }
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::MalformedTable(format!(
                "tensor table of `{name}` must be {n}x{n}"
            )));
        }
        if tensor.iter().flatten().any(|&v| v >= n) {
            return Err(QuantaleError::MalformedTable(format!(
                "tensor table of `{name}` has an entry outside the carrier"
            )));
        }
        if unit >= n {
            return Err(QuantaleError::MalformedTable(format!(
                "unit of `{name}` is outside the carrier"
            )));
        }
        let leq_flat: Vec<bool> = leq.into_iter().flatten().collect();
        let tensor_flat: Vec<usize> = tensor.into_iter().flatten().collect();
        Quantale::from_raw(name, labels, leq_flat, tensor_flat, unit)
    }

    fn from_raw(
        name: String,
        labels: Vec<String>,
        leq: Vec<bool>,
        tensor: Vec<usize>,
        unit: usize,
    ) -> Result<Quantale, QuantaleError> {
        let n = labels.len();
        if n == 0 || n > MAX_CARRIER {
            return Err(QuantaleError::CarrierTooLarge(n));
        }
        let report = validate_tables(&name, &labels, &leq, &tensor, unit);
        if let Some(failure) = report.first_failure() {
            return Err(QuantaleError::LawViolation {
                name,
                law: failure.law.clone(),
                witness: failure.witness.clone().unwrap_or_default(),
            });
        }
        // Laws hold; derive the rest of the structure.
        let lub_by_mask = lub_table(n, &leq).expect("completeness was just validated");
        let full_mask = (1usize << n) - 1;
        let top = lub_by_mask[full_mask];
        let bottom = lub_by_mask[0];
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = lub_by_mask[(1 << a) | (1 << b)];
                // glb = lub of the common lower bounds
                let mut mask = 0usize;
                for c in 0..n {
                    if leq[c * n + a] && leq[c * n + b] {
                        mask |= 1 << c;
                    }
                }
                meet[a * n + b] = lub_by_mask[mask];
            }
        }
        let mut hom = vec![0usize; n * n];
        for y in 0..n {
            for z in 0..n {
                let mut mask = 0usize;
                for x in 0..n {
                    if leq[tensor[x * n + y] * n + z] {
                        mask |= 1 << x;
                    }
                }
                hom[y * n + z] = lub_by_mask[mask];
            }
        }
        let totally_below = totally_below_table(n, &leq, &lub_by_mask);
        Ok(Quantale {
            name,
            labels,
            n,
            leq,
            tensor,
            unit,
            hom,
            join,
            meet,
            top,
            bottom,
            totally_below,
        })
    }

    /// Re-run the exhaustive law checks against the stored tables.
    pub fn validate(&self) -> LawReport {
        validate_tables(&self.name, &self.labels, &self.leq, &self.tensor, self.unit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The carrier as a finite set, for applying monads to V itself.
    pub fn carrier_set(&self) -> FinSet {
        FinSet::new(self.labels.clone())
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.n + b]
    }

    /// Internal hom: x (x) y <= z iff x <= hom(y, z).
    pub fn hom(&self, y: usize, z: usize) -> usize {
        self.hom[y * self.n + z]
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    /// Join of arbitrarily many elements; the empty join is bottom.
    pub fn join_of(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Meet of arbitrarily many elements; the empty meet is top.
    pub fn meet_of(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |acc, e| self.meet2(acc, e))
    }

    /// The totally-below relation: u << v iff every inhabited subset S with
    /// v <= join(S) contains some s with u <= s.
    ///
    /// Covers range over inhabited subsets; this matches the chain behaviour
    /// (u << v iff u <= v on finite chains) used in the frame hypotheses.
    pub fn totally_below(&self, u: usize, v: usize) -> bool {
        self.totally_below[u * self.n + v]
    }

    pub fn totally_below_table(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.totally_below(u, v)).collect())
            .collect()
    }

    /// The hypotheses on V used by the ultrafilter-theory comparison of
    /// T-suprema with finite suprema: top = k, the elements totally below k
    /// form a directed set, and k is join-irreducible.
    pub fn check_frm_hypotheses(&self) -> LawReport {
        let mut report = LawReport::new(self.name.clone());
        report.record("frm.top_eq_unit", self.top == self.unit, || {
            format!(
                "top = {} but unit = {}",
                self.labels[self.top], self.labels[self.unit]
            )
        });

        let below_k: Vec<usize> = self
            .elements()
            .filter(|&u| self.totally_below(u, self.unit))
            .collect();
        let mut directed_witness = None;
        if below_k.is_empty() {
            directed_witness = Some("no element is totally below k".to_string());
        } else {
            'outer: for &u in &below_k {
                for &v in &below_k {
                    if !below_k
                        .iter()
                        .any(|&w| self.leq(u, w) && self.leq(v, w))
                    {
                        directed_witness = Some(format!(
                            "{} and {} have no upper bound among {{u : u << k}}",
                            self.labels[u], self.labels[v]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        match directed_witness {
            None => report.holds("frm.totally_below_unit_directed"),
            Some(w) => report.fails("frm.totally_below_unit_directed", w),
        }

        let mut irred_witness = None;
        'pairs: for u in self.elements() {
            for v in self.elements() {
                if self.leq(self.unit, self.join2(u, v))
                    && !self.leq(self.unit, u)
                    && !self.leq(self.unit, v)
                {
                    irred_witness = Some(format!(
                        "k <= {} v {} but k is below neither",
                        self.labels[u], self.labels[v]
                    ));
                    break 'pairs;
                }
            }
        }
        match irred_witness {
            None => report.holds("frm.unit_join_irreducible"),
            Some(w) => report.fails("frm.unit_join_irreducible", w),
        }
        report
    }

}

/// Least upper bounds for every subset, or None when some subset lacks one.
fn lub_table(n: usize, leq: &[bool]) -> Option<Vec<usize>> {
    let le = |a: usize, b: usize| leq[a * n + b];
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0usize..(1 << n) {
        let mut lub = None;
        for c in 0..n {
            let is_ub = (0..n).all(|s| mask & (1 << s) == 0 || le(s, c));
            if !is_ub {
                continue;
            }
            // least among the upper bounds
            let least = (0..n).all(|d| {
                let d_is_ub = (0..n).all(|s| mask & (1 << s) == 0 || le(s, d));
                !d_is_ub || le(c, d)
            });
            if least {
                lub = Some(c);
                break;
            }
        }
        table.push(lub?);
    }
    Some(table)
}

fn totally_below_table(n: usize, leq: &[bool], lub_by_mask: &[usize]) -> Vec<bool> {
    let le = |a: usize, b: usize| leq[a * n + b];
    // up_mask[s] = bitmask of {u : u <= s}
    let mut down_of: Vec<usize> = vec![0; n];
    for s in 0..n {
        for u in 0..n {
            if le(u, s) {
                down_of[s] |= 1 << u;
            }
        }
    }
    // failing[v] = bitmask of u's for which some inhabited cover of v misses u
    let mut failing = vec![0usize; n];
    for mask in 1usize..(1 << n) {
        let lub = lub_by_mask[mask];
        let mut covered = 0usize;
        for s in 0..n {
            if mask & (1 << s) != 0 {
                covered |= down_of[s];
            }
        }
        let missed = !covered & ((1 << n) - 1);
        for v in 0..n {
            if le(v, lub) {
                failing[v] |= missed;
            }
        }
    }
    let mut table = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            table[u * n + v] = failing[v] & (1 << u) == 0;
        }
    }
    table
}

/// Exhaustively check the quantale laws over raw tables. The report carries
/// one entry per law, with a witness for every failure.
fn validate_tables(
    name: &str,
    labels: &[String],
    leq: &[bool],
    tensor: &[usize],
    unit: usize,
) -> LawReport {
    let n = labels.len();
    let le = |a: usize, b: usize| leq[a * n + b];
    let t = |a: usize, b: usize| tensor[a * n + b];
    let mut report = LawReport::new(name.to_string());

    let refl = (0..n).find(|&a| !le(a, a));
    report.record("order.reflexive", refl.is_none(), || {
        format!("not {0} <= {0}", labels[refl.unwrap()])
    });

    let mut antisym = None;
    for a in 0..n {
        for b in 0..n {
            if a != b && le(a, b) && le(b, a) {
                antisym = Some((a, b));
            }
        }
    }
    report.record("order.antisymmetric", antisym.is_none(), || {
        let (a, b) = antisym.unwrap();
        format!("{} <= {} <= {} with distinct elements", labels[a], labels[b], labels[a])
    });

    let mut trans = None;
    'trans: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if le(a, b) && le(b, c) && !le(a, c) {
                    trans = Some((a, b, c));
                    break 'trans;
                }
            }
        }
    }
    report.record("order.transitive", trans.is_none(), || {
        let (a, b, c) = trans.unwrap();
        format!(
            "{} <= {} <= {} but not {} <= {}",
            labels[a], labels[b], labels[c], labels[a], labels[c]
        )
    });

    let order_ok = report.all_hold();
    let lubs = if order_ok { lub_table(n, leq) } else { None };
    match (&lubs, order_ok) {
        (Some(_), _) => report.holds("lattice.complete"),
        (None, true) => {
            // find a witness subset without a least upper bound
            let mut witness = String::new();
            'masks: for mask in 0usize..(1 << n) {
                let mut found = false;
                for c in 0..n {
                    let is_ub = (0..n).all(|s| mask & (1 << s) == 0 || le(s, c));
                    let least = is_ub
                        && (0..n).all(|d| {
                            let d_ub = (0..n).all(|s| mask & (1 << s) == 0 || le(s, d));
                            !d_ub || le(c, d)
                        });
                    if least {
                        found = true;
                        break;
                    }
                }
                if !found {
                    let members: Vec<&str> = (0..n)
                        .filter(|s| mask & (1 << s) != 0)
                        .map(|s| labels[s].as_str())
                        .collect();
                    witness = format!("subset {{{}}} has no least upper bound", members.join(", "));
                    break 'masks;
                }
            }
            report.fails("lattice.complete", witness);
        }
        (None, false) => {
            report.unknown("lattice.complete", "skipped: order laws failed");
        }
    }

    let mut comm = None;
    for a in 0..n {
        for b in 0..n {
            if t(a, b) != t(b, a) {
                comm = Some((a, b));
            }
        }
    }
    report.record("tensor.commutative", comm.is_none(), || {
        let (a, b) = comm.unwrap();
        format!(
            "{} (x) {} = {} but {} (x) {} = {}",
            labels[a],
            labels[b],
            labels[t(a, b)],
            labels[b],
            labels[a],
            labels[t(b, a)]
        )
    });

    let mut assoc = None;
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t(t(a, b), c) != t(a, t(b, c)) {
                    assoc = Some((a, b, c));
                    break 'assoc;
                }
            }
        }
    }
    report.record("tensor.associative", assoc.is_none(), || {
        let (a, b, c) = assoc.unwrap();
        format!(
            "({} (x) {}) (x) {} = {} but {} (x) ({} (x) {}) = {}",
            labels[a],
            labels[b],
            labels[c],
            labels[t(t(a, b), c)],
            labels[a],
            labels[b],
            labels[c],
            labels[t(a, t(b, c))]
        )
    });

    let unit_bad = (0..n).find(|&a| t(unit, a) != a);
    report.record("tensor.unit", unit_bad.is_none(), || {
        let a = unit_bad.unwrap();
        format!(
            "k (x) {} = {} instead of {}",
            labels[a],
            labels[t(unit, a)],
            labels[a]
        )
    });

    if let Some(lubs) = &lubs {
        let mut cont = None;
        'cont: for x in 0..n {
            for mask in 0usize..(1 << n) {
                let mut image_mask = 0usize;
                for s in 0..n {
                    if mask & (1 << s) != 0 {
                        image_mask |= 1 << t(x, s);
                    }
                }
                if t(x, lubs[mask]) != lubs[image_mask] {
                    cont = Some((x, mask));
                    break 'cont;
                }
            }
        }
        report.record("tensor.join_continuous", cont.is_none(), || {
            let (x, mask) = cont.unwrap();
            let members: Vec<&str> = (0..n)
                .filter(|s| mask & (1 << s) != 0)
                .map(|s| labels[s].as_str())
                .collect();
            format!(
                "{} (x) join{{{}}} differs from the join of the tensors",
                labels[x],
                members.join(", ")
            )
        });

        // residuation: hom(y, z) = join{x : x (x) y <= z} witnesses the adjunction
        let mut adj = None;
        'adj: for y in 0..n {
            for z in 0..n {
                let mut mask = 0usize;
                for x in 0..n {
                    if le(t(x, y), z) {
                        mask |= 1 << x;
                    }
                }
                let h = lubs[mask];
                for x in 0..n {
                    if le(t(x, y), z) != le(x, h) {
                        adj = Some((x, y, z));
                        break 'adj;
                    }
                }
            }
        }
        report.record("residuation.adjunction", adj.is_none(), || {
            let (x, y, z) = adj.unwrap();
            format!(
                "x (x) y <= z and x <= hom(y,z) disagree at x={}, y={}, z={}",
                labels[x], labels[y], labels[z]
            )
        });
    } else {
        report.unknown("tensor.join_continuous", "skipped: lattice not complete");
        report.unknown("residuation.adjunction", "skipped: lattice not complete");
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Vec<Quantale> {
        vec![
            Quantale::two(),
            Quantale::goedel_chain(3).unwrap(),
            Quantale::lawvere_chain(4).unwrap(),
            Quantale::product(&Quantale::two(), &Quantale::two()).unwrap(),
        ]
    }

    #[test]
    fn builtins_validate() {
        for q in builtins() {
            let report = q.validate();
            assert!(report.all_hold(), "{} failed:\n{report}", q.name());
        }
    }

    #[test]
    fn two_hom_is_boolean_implication() {
        let q = Quantale::two();
        assert_eq!(q.hom(1, 0), 0);
        for x in q.elements() {
            assert_eq!(q.hom(0, x), 1);
        }
        assert_eq!(q.hom(1, 1), 1);
    }

    // Values below are fixed from the residuation oracle
    // hom(y, z) = join{x : x (x) y <= z}, expanded by hand over the table.
    #[test]
    fn lawvere_chain_hom_table() {
        let q = Quantale::lawvere_chain(4).unwrap();
        let inf = q.index_of("inf").unwrap();
        assert_eq!(inf, 3);
        // hom(0, z) = z
        for z in q.elements() {
            assert_eq!(q.hom(0, z), z);
        }
        // hom(inf, z) = 0 (top): everything tensored with inf lands at inf
        for z in q.elements() {
            assert_eq!(q.hom(inf, z), 0);
        }
        // min-plus reading: hom(y, z) is truncated subtraction z - y
        assert_eq!(q.hom(1, 2), 1);
        assert_eq!(q.hom(2, 1), 0);
        assert_eq!(q.hom(1, 1), 0);
        // saturation makes 2 + 1 land at inf already, so hom(1, inf) = 2
        assert_eq!(q.hom(1, inf), 2);
        assert_eq!(q.hom(2, inf), 1);
    }

    #[test]
    fn lawvere_chain_order_and_tensor() {
        let q = Quantale::lawvere_chain(4).unwrap();
        let inf = 3;
        assert_eq!(q.top(), 0);
        assert_eq!(q.bottom(), inf);
        assert_eq!(q.unit(), 0);
        assert!(q.leq(inf, 2) && q.leq(2, 1) && q.leq(1, 0));
        assert_eq!(q.tensor(1, 1), 2);
        assert_eq!(q.tensor(1, 2), inf); // 3 > 2 saturates
        assert_eq!(q.tensor(2, inf), inf);
        // quantale join = numeric min
        assert_eq!(q.join2(1, 2), 1);
        assert_eq!(q.join2(2, inf), 2);
    }

    #[test]
    fn goedel_chain_values() {
        let q = Quantale::goedel_chain(3).unwrap();
        assert_eq!(q.tensor(1, 2), 1);
        assert_eq!(q.hom(1, 0), 0);
        assert_eq!(q.hom(1, 2), 2);
        assert_eq!(q.unit(), 2);
        assert_eq!(q.top(), 2);
    }

    #[test]
    fn residuation_adjunction_exhaustive() {
        for q in builtins() {
            for x in q.elements() {
                for y in q.elements() {
                    for z in q.elements() {
                        assert_eq!(
                            q.leq(q.tensor(x, y), z),
                            q.leq(x, q.hom(y, z)),
                            "{}: x={x} y={y} z={z}",
                            q.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hom_identities() {
        for q in builtins() {
            for z in q.elements() {
                assert_eq!(q.hom(q.unit(), z), z, "{}", q.name());
                for y in q.elements() {
                    assert!(q.leq(z, q.hom(y, q.tensor(y, z))), "{}", q.name());
                }
            }
        }
    }

    #[test]
    fn empty_join_and_meet() {
        for q in builtins() {
            assert_eq!(q.join_of([]), q.bottom());
            assert_eq!(q.meet_of([]), q.top());
        }
    }

    #[test]
    fn totally_below_two() {
        let q = Quantale::two();
        assert!(q.totally_below(0, 0));
        assert!(q.totally_below(0, 1));
        assert!(q.totally_below(1, 1));
        assert!(!q.totally_below(1, 0));
    }

    #[test]
    fn totally_below_on_chains_is_leq() {
        for q in [
            Quantale::goedel_chain(3).unwrap(),
            Quantale::lawvere_chain(4).unwrap(),
        ] {
            for u in q.elements() {
                for v in q.elements() {
                    assert_eq!(q.totally_below(u, v), q.leq(u, v), "{}", q.name());
                }
            }
        }
    }

    #[test]
    fn totally_below_is_down_closed() {
        for q in builtins() {
            for u in q.elements() {
                for v in q.elements() {
                    if q.totally_below(u, v) {
                        for u2 in q.elements() {
                            if q.leq(u2, u) {
                                assert!(q.totally_below(u2, v), "{}", q.name());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frm_hypotheses_verdicts() {
        assert!(Quantale::two().check_frm_hypotheses().all_hold());
        assert!(Quantale::lawvere_chain(4)
            .unwrap()
            .check_frm_hypotheses()
            .all_hold());
        let p = Quantale::product(&Quantale::two(), &Quantale::two()).unwrap();
        let report = p.check_frm_hypotheses();
        assert_eq!(
            report.verdict_of("frm.unit_join_irreducible"),
            Some(crate::report::Verdict::Fails)
        );
        assert!(!report.all_hold());
    }

    #[test]
    fn non_associative_table_is_rejected_with_witness() {
        // carrier {y, x, u}: x (x) x = y while x (x) u = x, so
        // (x (x) x) (x) u = y but x (x) (x (x) u) = x (x) x = y .. adjust:
        // u is the unit, x (x) x = y, x (x) y = u gives
        // (x (x) x) (x) y = y (x) y and x (x) (x (x) y) = x (x) u = x.
        let labels = vec!["y".to_string(), "x".to_string(), "u".to_string()];
        let leq = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let tensor = vec![
            vec![0, 2, 0], // y(x)y=y, y(x)x=u (breaks assoc), y(x)u=y
            vec![2, 0, 1], // x(x)y=u, x(x)x=y, x(x)u=x
            vec![0, 1, 2],
        ];
        let err = Quantale::from_tables("broken", labels, leq, tensor, 2).unwrap_err();
        match err {
            QuantaleError::LawViolation { law, witness, .. } => {
                assert!(
                    law == "tensor.associative" || law == "tensor.commutative",
                    "unexpected law {law}"
                );
                assert!(!witness.is_empty());
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn validate_reports_every_failure() {
        // same table, but inspected through validate_tables directly
        let labels = vec!["y".to_string(), "x".to_string(), "u".to_string()];
        let leq = vec![
            true, true, true, false, true, true, false, false, true,
        ];
        let tensor = vec![0, 2, 0, 2, 0, 1, 0, 1, 2];
        let report = validate_tables("broken", &labels, &leq, &tensor, 2);
        assert!(report.has_failure());
        assert_eq!(
            report.verdict_of("tensor.associative"),
            Some(crate::report::Verdict::Fails)
        );
    }
}
