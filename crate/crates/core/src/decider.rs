//! Classification of finite tables against the chain
//! `Cℕ ⊆ CQNS ⊆ RQNS ⊆ N ∩ Com`, with certificates.
//!
//! Membership in RQNS and CQNS is semi-decided by searching integer labels
//! for the minimal generators. Labels of the other elements follow from
//! representative words, and a labeling is accepted when every word over
//! the generators has a value determined by its label sum.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::finite::FiniteSemigroup;
use crate::ideal::Ideal;
use crate::morphism::{evaluate, find_isomorphism, is_homomorphism, SemigroupMap};
use crate::numerical::NumericalSemigroup;
use crate::presentation::{representative_words, CommutativeWord};
use crate::quotient::{cancellation_holds, minimal_generating_system, nilpotency_class, power_layer, ReesQuotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassName {
    #[serde(rename = "CN")]
    Cn,
    #[serde(rename = "CQNS")]
    Cqns,
    #[serde(rename = "RQNS")]
    Rqns,
    #[serde(rename = "NcapCom")]
    NcapCom,
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassName::Cn => "CN",
            ClassName::Cqns => "CQNS",
            ClassName::Rqns => "RQNS",
            ClassName::NcapCom => "NcapCom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    InClass,
    NotInClass { reason: String, witness: Vec<String> },
    /// No realization with labels up to `bound`.
    Unknown { bound: u64 },
}

/// A semigroup and ideal whose quotient reproduces the input, with the
/// integer carried by each non-zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub semigroup: NumericalSemigroup,
    pub ideal: Ideal,
    pub labeling: BTreeMap<String, u64>,
}

impl Serialize for Realization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            semigroup: &'a NumericalSemigroup,
            ideal_generators: &'a [u64],
            labeling: &'a BTreeMap<String, u64>,
        }
        Out {
            semigroup: &self.semigroup,
            ideal_generators: self.ideal.min_ideal_generators(),
            labeling: &self.labeling,
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub class: ClassName,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realization: Option<Realization>,
}

impl Certificate {
    fn yes(class: ClassName, realization: Option<Realization>) -> Self {
        Certificate {
            class,
            verdict: Verdict::InClass,
            realization,
        }
    }

    fn no(class: ClassName, reason: impl Into<String>, witness: Vec<String>) -> Self {
        Certificate {
            class,
            verdict: Verdict::NotInClass {
                reason: reason.into(),
                witness,
            },
            realization: None,
        }
    }

    fn unknown(class: ClassName, bound: u64) -> Self {
        Certificate {
            class,
            verdict: Verdict::Unknown { bound },
            realization: None,
        }
    }

    pub fn is_in_class(&self) -> bool {
        self.verdict == Verdict::InClass
    }

    pub fn is_not_in_class(&self) -> bool {
        matches!(self.verdict, Verdict::NotInClass { .. })
    }

    /// CLI exit status: 0 in class, 1 not in class, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::InClass => 0,
            Verdict::NotInClass { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::InClass => write!(f, "{}: in class", self.class)?,
            Verdict::NotInClass { reason, .. } => write!(f, "{}: not in class ({reason})", self.class)?,
            Verdict::Unknown { bound } => write!(f, "{}: unknown (no realization with labels <= {bound})", self.class)?,
        }
        if let Some(r) = &self.realization {
            let labels: Vec<String> = r.labeling.iter().map(|(k, v)| format!("{k}->{v}")).collect();
            write!(
                f,
                "\n  semigroup {}\n  ideal generated by {:?}\n  labels {}",
                r.semigroup,
                r.ideal.min_ideal_generators(),
                labels.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Default label bound `4·|Q|²`.
pub fn default_label_bound(q: &FiniteSemigroup) -> u64 {
    4 * (q.len() as u64).pow(2)
}

/// Commutative and nilpotent.
pub fn check_ncap_com(q: &FiniteSemigroup) -> Certificate {
    let class = ClassName::NcapCom;
    if let Some((a, b)) = q.commutativity_failure() {
        let (la, lb) = (q.label(a), q.label(b));
        return Certificate::no(class, format!("{la}*{lb} != {lb}*{la}"), vec![la.into(), lb.into()]);
    }
    if let Some(x) = (0..q.len()).find(|&x| q.idempotent_power(x) != q.zero()) {
        let e = q.idempotent_power(x);
        return Certificate::no(
            class,
            format!("{} is a non-zero idempotent power of {}", q.label(e), q.label(x)),
            vec![q.label(x).into(), q.label(e).into()],
        );
    }
    Certificate::yes(class, None)
}

/// `Some(certificate)` when `q` fails a necessary condition for RQNS.
pub fn necessary_conditions_rqns(q: &FiniteSemigroup) -> Option<Certificate> {
    let base = check_ncap_com(q);
    if let Verdict::NotInClass { reason, witness } = base.verdict {
        return Some(Certificate::no(ClassName::Rqns, reason, witness));
    }
    if q.is_trivial() {
        return Some(Certificate::no(
            ClassName::Rqns,
            "a quotient by a proper ideal has a non-zero element",
            vec![],
        ));
    }
    if let Err(w) = cancellation_holds(q) {
        return Some(Certificate::no(
            ClassName::Rqns,
            format!("cancellation fails: {}", w.describe(q)),
            vec![q.label(w.a).into(), q.label(w.b).into(), q.label(w.c).into()],
        ));
    }
    None
}

/// The two-generator obstruction to being a cutting-point quotient:
/// minimal generators `{a, b}` with `a³ = b³ = 0`, `|Q² \ Q³| = 2` and
/// `|Q³ \ Q⁴| = 1`.
pub fn cqns_obstruction(q: &FiniteSemigroup) -> Option<String> {
    if !q.is_commutative() {
        return None;
    }
    let gens = minimal_generating_system(q);
    if gens.len() != 2 {
        return None;
    }
    let cube = |x: usize| q.mul(q.mul(x, x), x);
    if gens.iter().any(|&g| cube(g) != q.zero()) {
        return None;
    }
    let layers: Vec<_> = (2..=4).map(|i| power_layer(q, i)).collect();
    let diff = |i: usize| layers[i].difference(&layers[i + 1]).count();
    (diff(0) == 2 && diff(1) == 1).then(|| {
        format!(
            "two generators {} and {} with zero cubes and layer sizes 2, 1",
            q.label(gens[0]),
            q.label(gens[1])
        )
    })
}

/// Whether `q` is isomorphic to `ℕ/I_{|q|}`.
pub fn decide_cn(q: &FiniteSemigroup) -> Certificate {
    let class = ClassName::Cn;
    if q.is_trivial() {
        return Certificate::no(class, "a quotient by a proper ideal has a non-zero element", vec![]);
    }
    let n = ReesQuotient::naturals_cut(q.len() as u64).expect("size at least 2");
    match find_isomorphism(n.table(), q) {
        Ok(Some(f)) => {
            let labeling = q
                .nonzero()
                .map(|e| {
                    let back = f.inverse().unwrap().apply(e);
                    (q.label(e).to_string(), n.finite_part()[back])
                })
                .collect();
            let realization = Realization {
                semigroup: n.ambient().clone(),
                ideal: n.ideal().clone(),
                labeling,
            };
            Certificate::yes(class, Some(realization))
        }
        _ => {
            let gens = minimal_generating_system(q);
            let reason = if gens.len() != 1 {
                format!("{} minimal generators, every N/I_k is monogenic", gens.len())
            } else {
                format!("not isomorphic to N/I_{}", q.len())
            };
            Certificate::no(class, reason, gens.iter().map(|&g| q.label(g).to_string()).collect())
        }
    }
}

/// Bounded search for a realization `Q ≅ S/I`.
pub fn decide_rqns(q: &FiniteSemigroup, label_bound: u64) -> Certificate {
    if let Some(c) = necessary_conditions_rqns(q) {
        return c;
    }
    match search_rqns_labeling(q, label_bound) {
        Some(labels) => match realize_rqns(q, &labels) {
            Some(r) => Certificate::yes(ClassName::Rqns, Some(r)),
            None => unreachable!("accepted labelings always realize"),
        },
        None => Certificate::unknown(ClassName::Rqns, label_bound),
    }
}

/// Bounded search for a realization `Q ≅ T/I_k(T)`.
pub fn decide_cqns(q: &FiniteSemigroup, label_bound: u64) -> Certificate {
    if let Some(mut c) = necessary_conditions_rqns(q) {
        c.class = ClassName::Cqns;
        return c;
    }
    if let Some(reason) = cqns_obstruction(q) {
        let gens = minimal_generating_system(q);
        return Certificate::no(ClassName::Cqns, reason, gens.iter().map(|&g| q.label(g).to_string()).collect());
    }
    match search_cqns_labeling(q, label_bound) {
        Some(labels) => match realize_cqns(q, &labels) {
            Some(r) => Certificate::yes(ClassName::Cqns, Some(r)),
            None => unreachable!("accepted labelings always realize"),
        },
        None => Certificate::unknown(ClassName::Cqns, label_bound),
    }
}

/// Labels of the minimal generators (in [`minimal_generating_system`]
/// order) admitting a realization, with the least possible maximum.
pub fn search_rqns_labeling(q: &FiniteSemigroup, label_bound: u64) -> Option<Vec<u64>> {
    Search::new(q, false)?.run(label_bound)
}

/// As [`search_rqns_labeling`], additionally requiring that every label sum
/// up to the largest label is itself a label.
pub fn search_cqns_labeling(q: &FiniteSemigroup, label_bound: u64) -> Option<Vec<u64>> {
    Search::new(q, true)?.run(label_bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Empty,
    Zero,
    Finite(usize),
}

struct Search<'a> {
    q: &'a FiniteSemigroup,
    gens: Vec<usize>,
    class: u64,
    prefix_closed: bool,
    /// `(i, j)` with `i < j` whose swap is an automorphism.
    twins: Vec<(usize, usize)>,
}

impl<'a> Search<'a> {
    fn new(q: &'a FiniteSemigroup, prefix_closed: bool) -> Option<Self> {
        let gens = minimal_generating_system(q);
        let class = nilpotency_class(q).ok()? as u64;
        let reps = representative_words(q, &gens).ok()?;
        let k = gens.len();
        let mut twins = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut images = gens.clone();
                images.swap(i, j);
                let f = (0..q.len())
                    .map(|e| reps[e].as_ref().map_or(q.zero(), |w| evaluate(q, &images, w)))
                    .collect();
                let map = SemigroupMap { assignment: f };
                if map.is_bijective(q.len()) && is_homomorphism(&map.assignment, q, q) {
                    twins.push((i, j));
                }
            }
        }
        Some(Search {
            q,
            gens,
            class,
            prefix_closed,
            twins,
        })
    }

    fn run(&self, label_bound: u64) -> Option<Vec<u64>> {
        (1..=label_bound).find_map(|top| {
            (1..=top)
                .into_par_iter()
                .find_map_first(|first| {
                    let mut labels = vec![first];
                    self.extend(&mut labels, top)
                })
        })
    }

    /// Depth-first completion of a partial labeling whose labels are `≤ top`
    /// and that becomes valid only if some label equals `top`.
    fn extend(&self, labels: &mut Vec<u64>, top: u64) -> Option<Vec<u64>> {
        let j = labels.len() - 1;
        if self.twins.iter().any(|&(a, b)| b == j && labels[a] >= labels[b]) {
            return None;
        }
        let slots = self.slots(labels)?;
        if labels.len() == self.gens.len() {
            let complete = labels.contains(&top)
                && labels.iter().fold(0, |g, &l| g.gcd(&l)) == 1
                && self.q.nonzero().all(|e| slots.contains(&Slot::Finite(e)));
            return complete.then(|| labels.clone());
        }
        for next in 1..=top {
            labels.push(next);
            if let Some(found) = self.extend(labels, top) {
                return Some(found);
            }
            labels.pop();
        }
        None
    }

    /// Values of all words over the labelled generators, indexed by label
    /// sum up to `(class − 1)·max`; `None` on a conflict.
    fn slots(&self, labels: &[u64]) -> Option<Vec<Slot>> {
        let q = self.q;
        let top = *labels.iter().max().unwrap();
        let len = ((self.class.max(2) - 1) * top) as usize + 1;
        let mut slots = vec![Slot::Empty; len];
        let mut seen_at = vec![usize::MAX; q.len()];
        let mut last_finite = 0;
        for s in 1..len {
            let mut acc = Slot::Empty;
            for (i, &l) in labels.iter().enumerate() {
                let l = l as usize;
                if l > s {
                    continue;
                }
                let x = self.gens[i];
                let v = if l == s {
                    Slot::Finite(x)
                } else {
                    match slots[s - l] {
                        Slot::Empty => continue,
                        Slot::Zero => Slot::Zero,
                        Slot::Finite(e) => {
                            let p = q.mul(e, x);
                            if p == q.zero() {
                                Slot::Zero
                            } else {
                                Slot::Finite(p)
                            }
                        }
                    }
                };
                acc = match (acc, v) {
                    (Slot::Empty, v) => v,
                    (a, v) if a == v => a,
                    _ => return None,
                };
            }
            if let Slot::Finite(e) = acc {
                if seen_at[e] != usize::MAX {
                    return None;
                }
                seen_at[e] = s;
                last_finite = s;
            }
            slots[s] = acc;
        }
        if self.prefix_closed && slots[..last_finite].contains(&Slot::Zero) {
            return None;
        }
        Some(slots)
    }
}

/// Integer labels of every non-zero element, from generator labels.
fn element_labels(q: &FiniteSemigroup, gen_labels: &[u64]) -> Option<Vec<(usize, u64)>> {
    let gens = minimal_generating_system(q);
    let reps = representative_words(q, &gens).ok()?;
    Some(
        q.nonzero()
            .map(|e| (e, reps[e].as_ref().map(|w: &CommutativeWord| w.evaluate(gen_labels)).unwrap()))
            .collect(),
    )
}

/// Checks that `e ↦ label(e)` is an isomorphism onto `rebuilt`.
fn verify(q: &FiniteSemigroup, labels: &[(usize, u64)], rebuilt: &ReesQuotient) -> Option<BTreeMap<String, u64>> {
    if rebuilt.len() != q.len() {
        return None;
    }
    let mut f = vec![rebuilt.table().zero(); q.len()];
    for &(e, v) in labels {
        f[e] = rebuilt.index_of_value(v)?;
    }
    let map = SemigroupMap { assignment: f };
    (map.is_bijective(q.len()) && is_homomorphism(&map.assignment, q, rebuilt.table()))
        .then(|| labels.iter().map(|&(e, v)| (q.label(e).to_string(), v)).collect())
}

/// `S = ⟨labels⟩`, `I = S \ labels`.
pub fn realize_rqns(q: &FiniteSemigroup, gen_labels: &[u64]) -> Option<Realization> {
    let labels = element_labels(q, gen_labels)?;
    let s = NumericalSemigroup::from_generators(gen_labels).ok()?;
    let image: Vec<u64> = labels.iter().map(|&(_, v)| v).collect();
    let top = image.iter().max().copied()? + s.min_generators().last()?;
    let outside: Vec<u64> = s.elements_up_to(top).filter(|v| !image.contains(v)).collect();
    let ideal = Ideal::from_generators(&s, &outside).ok()?;
    let rebuilt = ReesQuotient::new(&s, &ideal).ok()?;
    let labeling = verify(q, &labels, &rebuilt)?;
    Some(Realization {
        semigroup: s,
        ideal,
        labeling,
    })
}

/// `T = labels ∪ {x ≥ k}` cut at `k = max(labels) + 1`.
pub fn realize_cqns(q: &FiniteSemigroup, gen_labels: &[u64]) -> Option<Realization> {
    let labels = element_labels(q, gen_labels)?;
    let k = labels.iter().map(|&(_, v)| v).max()? + 1;
    let mut gens: Vec<u64> = labels.iter().map(|&(_, v)| v).collect();
    gens.extend(k..2 * k);
    let t = NumericalSemigroup::from_generators(&gens).ok()?;
    let ideal = Ideal::cutting(&t, k).ok()?;
    let rebuilt = ReesQuotient::new(&t, &ideal).ok()?;
    let labeling = verify(q, &labels, &rebuilt)?;
    Some(Realization {
        semigroup: t,
        ideal,
        labeling,
    })
}

/// Rebuilds the quotient of a realization and tests isomorphism with `q`.
pub fn realization_rebuilds(q: &FiniteSemigroup, r: &Realization) -> bool {
    ReesQuotient::new(&r.semigroup, &r.ideal)
        .ok()
        .and_then(|rebuilt| find_isomorphism(rebuilt.table(), q).ok().flatten())
        .is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::direct_product;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn cut_3_5_by_6() -> FiniteSemigroup {
        let s = ns(&[3, 5]);
        ReesQuotient::new(&s, &Ideal::from_generators(&s, &[6]).unwrap()).unwrap().into_table()
    }

    #[test]
    fn rqns_realizes_example_table() {
        let q = cut_3_5_by_6();
        let c = decide_rqns(&q, default_label_bound(&q));
        assert!(c.is_in_class(), "{c}");
        let r = c.realization.as_ref().unwrap();
        // Smallest labels first: 3 -> 3, 5 -> 2 inside <2,3>.
        assert_eq!(r.semigroup, ns(&[2, 3]));
        assert_eq!((r.labeling["3"], r.labeling["5"], r.labeling["13"]), (3, 2, 7));
        assert!(realize_rqns(&q, &[3, 5]).is_some());
        assert!(realization_rebuilds(&q, r));
    }

    #[test]
    fn cqns_obstruction_blocks_example_table() {
        let q = cut_3_5_by_6();
        assert!(cqns_obstruction(&q).is_some());
        assert!(decide_cqns(&q, 50).is_not_in_class());
        assert!(search_cqns_labeling(&q, 30).is_none());
        assert!(decide_cn(&q).is_not_in_class());
    }

    #[test]
    fn cutting_quotients_are_cqns() {
        let q = ReesQuotient::cut(&ns(&[3, 5]), 10).unwrap().into_table();
        let c = decide_cqns(&q, default_label_bound(&q));
        assert!(c.is_in_class(), "{c}");
        assert!(realization_rebuilds(&q, c.realization.as_ref().unwrap()));
        let n4 = ReesQuotient::naturals_cut(4).unwrap().into_table();
        assert!(decide_cqns(&n4, 10).is_in_class());
        let c = decide_cn(&n4);
        assert!(c.is_in_class());
        assert_eq!(c.realization.unwrap().labeling["3"], 3);
        assert!(decide_cn(&ReesQuotient::at_conductor(&ns(&[3, 5])).unwrap().into_table()).is_not_in_class());
    }

    #[test]
    fn necessary_conditions() {
        let monoid = FiniteSemigroup::new(vec!["1".into(), "0".into()], 1, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(check_ncap_com(&monoid).is_not_in_class());
        let q = ReesQuotient::naturals_cut(3).unwrap().into_table();
        let product = direct_product(&q, &q);
        assert!(check_ncap_com(&product).is_in_class());
        assert!(necessary_conditions_rqns(&product).is_some());
        assert!(necessary_conditions_rqns(&cut_3_5_by_6()).is_none());
    }

    #[test]
    fn certificate_json() {
        let n3 = ReesQuotient::naturals_cut(3).unwrap().into_table();
        let v = serde_json::to_value(decide_rqns(&n3, 10)).unwrap();
        assert_eq!(v["class"], "RQNS");
        assert_eq!(v["verdict"], "in_class");
        assert_eq!(v["realization"]["labeling"]["2"], 2);
        let v = serde_json::to_value(check_ncap_com(
            &FiniteSemigroup::new(vec!["1".into(), "0".into()], 1, vec![vec![0, 1], vec![1, 1]]).unwrap(),
        ))
        .unwrap();
        assert_eq!(v["verdict"], "not_in_class");
        assert!(v.get("realization").is_none());
    }
}
