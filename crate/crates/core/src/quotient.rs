//! Rees quotients `S/I` and the structural operations on finite semigroups
//! with zero used throughout the crate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finite::FiniteSemigroup;
use crate::ideal::Ideal;
use crate::numerical::NumericalSemigroup;

/// Label of the zero element of every Rees quotient.
pub const INFINITY_LABEL: &str = "inf";

/// `S/I` viewed as a finite semigroup whose finite part carries the
/// integer labels of `S \ I`. The zero is labelled `inf` and comes last.
///
/// Two values are equal when they have the same ambient semigroup and ideal.
#[derive(Clone, Debug)]
pub struct ReesQuotient {
    ideal: Ideal,
    finite_part: Vec<u64>,
    table: FiniteSemigroup,
}

impl PartialEq for ReesQuotient {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for ReesQuotient {}

impl ReesQuotient {
    pub fn new(semigroup: &NumericalSemigroup, ideal: &Ideal) -> Result<Self> {
        if ideal.ambient() != semigroup {
            return Err(Error::AmbientMismatch);
        }
        Ok(Self::of_ideal(ideal))
    }

    /// `S/I_k(S)`.
    pub fn cut(semigroup: &NumericalSemigroup, k: u64) -> Result<Self> {
        Ok(Self::of_ideal(&Ideal::cutting(semigroup, k)?))
    }

    /// `S/I_{c(S)}`; for `ℕ` this is `ℕ/I₂`. Fails with
    /// [`Error::ImproperIdeal`] when the conductor equals the multiplicity.
    pub fn at_conductor(semigroup: &NumericalSemigroup) -> Result<Self> {
        Self::cut(semigroup, semigroup.conductor().max(2))
    }

    /// `ℕ/I_r`, the members of the class C_ℕ.
    pub fn naturals_cut(r: u64) -> Result<Self> {
        Self::cut(&NumericalSemigroup::naturals(), r)
    }

    pub fn of_ideal(ideal: &Ideal) -> Self {
        let finite_part = ideal.complement();
        let n = finite_part.len();
        let mut labels: Vec<String> = finite_part.iter().map(u64::to_string).collect();
        labels.push(INFINITY_LABEL.to_string());
        let index = |v: u64| finite_part.binary_search(&v).ok();
        let table = FiniteSemigroup::from_fn(labels, n, |a, b| {
            if a == n || b == n {
                return n;
            }
            index(finite_part[a] + finite_part[b]).unwrap_or(n)
        });
        ReesQuotient {
            ideal: ideal.clone(),
            finite_part,
            table,
        }
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        self.ideal.ambient()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn finite_part(&self) -> &[u64] {
        &self.finite_part
    }

    pub fn table(&self) -> &FiniteSemigroup {
        &self.table
    }

    pub fn into_table(self) -> FiniteSemigroup {
        self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the finite element labelled `v`.
    pub fn index_of_value(&self, v: u64) -> Option<usize> {
        self.finite_part.binary_search(&v).ok()
    }

    /// `a ⊕ b` on integer labels; `None` stands for `∞`.
    pub fn add(&self, a: u64, b: u64) -> Option<u64> {
        let s = a + b;
        self.index_of_value(s).map(|_| s)
    }
}

/// `Qⁱ` as a set of element indices.
pub fn power_layer(q: &FiniteSemigroup, i: usize) -> BTreeSet<usize> {
    let mut layer: BTreeSet<usize> = (0..q.len()).collect();
    for _ in 1..i.max(1) {
        let next: BTreeSet<usize> = layer
            .iter()
            .flat_map(|&a| (0..q.len()).map(move |b| (a, b)))
            .map(|(a, b)| q.mul(a, b))
            .collect();
        if next == layer {
            break;
        }
        layer = next;
    }
    layer
}

/// Least `n` with `|Qⁿ| = 1`.
pub fn nilpotency_class(q: &FiniteSemigroup) -> Result<usize> {
    let mut layer: BTreeSet<usize> = (0..q.len()).collect();
    let mut n = 1;
    while layer.len() > 1 {
        let next: BTreeSet<usize> = layer
            .iter()
            .flat_map(|&a| (0..q.len()).map(move |b| q.mul(a, b)))
            .collect();
        if next == layer {
            return Err(Error::NotNilpotent);
        }
        layer = next;
        n += 1;
    }
    Ok(n)
}

/// Non-zero elements that are not a product of two elements, ascending.
pub fn minimal_generating_system(q: &FiniteSemigroup) -> Vec<usize> {
    let square = power_layer(q, 2);
    q.nonzero().filter(|x| !square.contains(x)).collect()
}

/// A failure of cancellation: `a·b = a·c ≠ 0` with `b ≠ c` (or the mirrored
/// `b·a = c·a` when `right` is set). `b < c` as indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CancellationWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub product: usize,
    pub right: bool,
}

impl CancellationWitness {
    pub fn describe(&self, q: &FiniteSemigroup) -> String {
        let (a, b, c, p) = (q.label(self.a), q.label(self.b), q.label(self.c), q.label(self.product));
        if self.right {
            format!("{b}*{a} = {c}*{a} = {p}")
        } else {
            format!("{a}*{b} = {a}*{c} = {p}")
        }
    }
}

/// Every cancellation failure among non-zero elements.
pub fn cancellation_failures(q: &FiniteSemigroup) -> Vec<CancellationWitness> {
    let z = q.zero();
    let nz: Vec<usize> = q.nonzero().collect();
    let commutative = q.is_commutative();
    let mut out = Vec::new();
    for &a in &nz {
        for (i, &b) in nz.iter().enumerate() {
            for &c in &nz[i + 1..] {
                let p = q.mul(a, b);
                if p != z && p == q.mul(a, c) {
                    out.push(CancellationWitness { a, b, c, product: p, right: false });
                }
                let p = q.mul(b, a);
                if p != z && p == q.mul(c, a) && !commutative {
                    out.push(CancellationWitness { a, b, c, product: p, right: true });
                }
            }
        }
    }
    out
}

/// `Ok` when cancellation holds on the non-zero elements, else the first failure.
pub fn cancellation_holds(q: &FiniteSemigroup) -> std::result::Result<(), CancellationWitness> {
    match cancellation_failures(q).into_iter().next() {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// A semigroup `T` whose conductor cut is isomorphic to `S/I_k(S)`.
///
/// For `k ≤ c(S)` with `k − 1 ∉ S` this is `S ∪ {n ≥ k}`; otherwise the
/// doubling `2S ∪ {n ≥ 2k}` is used, whose conductor is always `2k`.
pub fn conductor_normalize(s: &NumericalSemigroup, k: u64) -> Result<NumericalSemigroup> {
    Ideal::cutting(s, k)?;
    if k <= s.conductor() && !s.contains(k - 1) {
        Ok(s.with_tail(k))
    } else {
        Ok(s.scaled_with_tail(2, 2 * k))
    }
}

/// Componentwise product; elements are listed as `(a, b)` in row-major
/// order and the zero is the pair of zeros.
pub fn direct_product(a: &FiniteSemigroup, b: &FiniteSemigroup) -> FiniteSemigroup {
    let (na, nb) = (a.len(), b.len());
    let labels = (0..na * nb)
        .map(|k| format!("({},{})", a.label(k / nb), b.label(k % nb)))
        .collect();
    let zero = a.zero() * nb + b.zero();
    FiniteSemigroup::from_fn(labels, zero, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
}

/// Union-find over element indices.
struct Classes(Vec<usize>);

impl Classes {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = (rx.min(ry), rx.max(ry));
        self.0[hi] = lo;
        true
    }
}

/// `Q/θ` for the congruence `θ` generated by `pairs`.
///
/// Classes are ordered by their least member. A singleton class keeps its
/// label, the class of the zero keeps the zero's label, and any other class
/// is labelled `{x,y,…}`.
pub fn quotient_by_congruence(q: &FiniteSemigroup, pairs: &[(usize, usize)]) -> FiniteSemigroup {
    let n = q.len();
    let mut classes = Classes((0..n).collect());
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((x, y)) = work.pop() {
        if classes.union(x, y) {
            for z in 0..n {
                work.push((q.mul(x, z), q.mul(y, z)));
                work.push((q.mul(z, x), q.mul(z, y)));
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| classes.find(x)).collect();
    let reps: Vec<usize> = (0..n).filter(|&x| roots[x] == x).collect();
    let class_of = |x: usize| reps.binary_search(&roots[x]).unwrap();
    let zero_root = roots[q.zero()];
    let labels = reps
        .iter()
        .map(|&r| {
            let members: Vec<&str> = (0..n).filter(|&x| roots[x] == r).map(|x| q.label(x)).collect();
            if r == zero_root {
                q.label(q.zero()).to_string()
            } else if members.len() == 1 {
                members[0].to_string()
            } else {
                format!("{{{}}}", members.join(","))
            }
        })
        .collect();
    FiniteSemigroup::from_fn(labels, class_of(q.zero()), |a, b| class_of(q.mul(reps[a], reps[b])))
}
