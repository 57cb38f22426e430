//! Homomorphisms between finite semigroups with zero: verification,
//! isomorphism search by extending generator bijections, automorphism
//! groups, and an exhaustive backtracking oracle.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finite::FiniteSemigroup;
use crate::presentation::{presentation_of_table, representative_words, CommutativeWord, Presentation};
use crate::quotient::{minimal_generating_system, ReesQuotient};

/// Default element bound for [`brute_force_isomorphic`].
pub const BRUTE_FORCE_BOUND: usize = 12;

/// A total map between element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupMap {
    pub assignment: Vec<usize>,
}

impl SemigroupMap {
    pub fn identity(n: usize) -> Self {
        SemigroupMap {
            assignment: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &SemigroupMap) -> SemigroupMap {
        SemigroupMap {
            assignment: first.assignment.iter().map(|&x| self.assignment[x]).collect(),
        }
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        let mut hit = vec![false; target_len];
        self.assignment.len() == target_len
            && self.assignment.iter().all(|&y| y < target_len && !std::mem::replace(&mut hit[y], true))
    }

    pub fn inverse(&self) -> Option<SemigroupMap> {
        if !self.is_bijective(self.assignment.len()) {
            return None;
        }
        let mut inv = vec![0; self.assignment.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            inv[y] = x;
        }
        Some(SemigroupMap { assignment: inv })
    }

    /// Label-to-label form, e.g. `{"2":"3","4":"6","5":"5","inf":"inf"}`.
    pub fn label_map(&self, source: &FiniteSemigroup, target: &FiniteSemigroup) -> BTreeMap<String, String> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.label(x).to_string(), target.label(y).to_string()))
            .collect()
    }

    pub fn to_json(&self, source: &FiniteSemigroup, target: &FiniteSemigroup) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.label(x).to_string(), serde_json::Value::from(target.label(y))))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Whether `f` is a total map `A → B` with `f(xy) = f(x)f(y)` and `f(0) = 0`.
pub fn is_homomorphism(f: &[usize], a: &FiniteSemigroup, b: &FiniteSemigroup) -> bool {
    if f.len() != a.len() || f.iter().any(|&y| y >= b.len()) || f[a.zero()] != b.zero() {
        return false;
    }
    (0..a.len()).all(|x| (0..a.len()).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

/// Value of a non-empty word under an assignment of its generators.
pub(crate) fn evaluate(b: &FiniteSemigroup, images: &[usize], w: &CommutativeWord) -> usize {
    let mut acc: Option<usize> = None;
    for (i, &e) in w.exponents.iter().enumerate() {
        for _ in 0..e {
            acc = Some(match acc {
                None => images[i],
                Some(v) => b.mul(v, images[i]),
            });
        }
    }
    acc.expect("words are non-empty")
}

/// Least `n` with `xⁿ = 0`, if any.
fn zero_depth(q: &FiniteSemigroup, x: usize) -> Option<usize> {
    let mut p = x;
    for n in 1..=q.len() {
        if p == q.zero() {
            return Some(n);
        }
        p = q.mul(p, x);
    }
    None
}

/// All isomorphisms `A → B`, each obtained by extending a bijection of
/// minimal generating systems that satisfies the relations of `p` along
/// representative words. `p` must present `A` over its minimal generating
/// system. Results are sorted by the images of the generators.
pub fn isomorphisms_via_generators(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    p: &Presentation,
) -> Result<Vec<SemigroupMap>> {
    let x1 = minimal_generating_system(a);
    if p.generators.len() != x1.len() || p.generators.iter().zip(&x1).any(|(g, &x)| g != a.label(x)) {
        return Err(Error::PresentationMismatch);
    }
    if a.len() != b.len() || a.commutativity_failure().is_some() != b.commutativity_failure().is_some() {
        return Ok(Vec::new());
    }
    let x2 = minimal_generating_system(b);
    if x1.len() != x2.len() {
        return Ok(Vec::new());
    }
    let reps = representative_words(a, &x1)?;
    let d1: Vec<Option<usize>> = x1.iter().map(|&g| zero_depth(a, g)).collect();
    let d2: Vec<Option<usize>> = x2.iter().map(|&g| zero_depth(b, g)).collect();
    let k = x1.len();

    let extend = |images: &[usize]| -> Option<SemigroupMap> {
        let holds = p.relations.iter().all(|(u, v)| evaluate(b, images, u) == evaluate(b, images, v))
            && p.zero_relations.iter().all(|w| evaluate(b, images, w) == b.zero());
        if !holds {
            return None;
        }
        let assignment: Vec<usize> = (0..a.len())
            .map(|e| match &reps[e] {
                None => b.zero(),
                Some(w) => evaluate(b, images, w),
            })
            .collect();
        let f = SemigroupMap { assignment };
        (f.is_bijective(b.len()) && is_homomorphism(&f.assignment, a, b)).then_some(f)
    };

    fn search(
        i: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: &(&[Option<usize>], &[Option<usize>], &[usize]),
        out: &mut Vec<Vec<usize>>,
    ) {
        let (d1, d2, x2) = *ctx;
        if i == d1.len() {
            out.push(images.clone());
            return;
        }
        for j in 0..x2.len() {
            if !used[j] && d1[i] == d2[j] {
                used[j] = true;
                images.push(x2[j]);
                search(i + 1, images, used, ctx, out);
                images.pop();
                used[j] = false;
            }
        }
    }

    let ctx = (&d1[..], &d2[..], &x2[..]);
    let roots: Vec<usize> = (0..k).filter(|&j| d1.first() == Some(&d2[j])).collect();
    let mut found: Vec<SemigroupMap> = roots
        .par_iter()
        .flat_map_iter(|&j| {
            let mut bijections = Vec::new();
            let mut used = vec![false; k];
            used[j] = true;
            search(1, &mut vec![x2[j]], &mut used, &ctx, &mut bijections);
            bijections.into_iter().filter_map(|images| extend(&images)).collect::<Vec<_>>()
        })
        .collect();
    found.sort_by_cached_key(|f| x1.iter().map(|&g| f.apply(g)).collect::<Vec<_>>());
    Ok(found)
}

/// The reduced presentation of a Rees quotient, with generators named by
/// their decimal labels so that it matches the quotient table.
pub fn table_presentation_of_quotient(q: &ReesQuotient) -> Result<Presentation> {
    let p = crate::presentation::reduced_quotient_presentation(q.ambient(), q.ideal())?;
    let names = minimal_generating_system(q.table())
        .into_iter()
        .map(|i| q.table().label(i).to_string())
        .collect();
    p.relabeled(names)
}

/// All isomorphisms between two Rees quotients.
pub fn quotient_isomorphisms(a: &ReesQuotient, b: &ReesQuotient) -> Result<Vec<SemigroupMap>> {
    isomorphisms_via_generators(a.table(), b.table(), &table_presentation_of_quotient(a)?)
}

/// Some isomorphism `A → B`, if one exists. Uses generator bijections when
/// `A` is commutative and generated by its minimal generating system, and
/// exhaustive search otherwise.
pub fn find_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Result<Option<SemigroupMap>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    match presentation_of_table(a) {
        Ok(p) => Ok(isomorphisms_via_generators(a, b, &p)?.into_iter().next()),
        Err(Error::NotCommutative { .. } | Error::NotNilpotent) => brute_force_isomorphic_within(a, b, usize::MAX),
        Err(e) => Err(e),
    }
}

/// All automorphisms of `A`, identity first.
pub fn automorphism_group(a: &FiniteSemigroup) -> Vec<SemigroupMap> {
    let mut group = match presentation_of_table(a) {
        Ok(p) => isomorphisms_via_generators(a, a, &p).expect("presentation matches its own table"),
        Err(_) => Backtracker::new(a, a).all(),
    };
    group.sort();
    group
}

/// Exhaustive isomorphism test for tables with at most
/// [`BRUTE_FORCE_BOUND`] elements.
pub fn brute_force_isomorphic(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Result<Option<SemigroupMap>> {
    brute_force_isomorphic_within(a, b, BRUTE_FORCE_BOUND)
}

/// [`brute_force_isomorphic`] with an explicit element bound.
pub fn brute_force_isomorphic_within(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    bound: usize,
) -> Result<Option<SemigroupMap>> {
    let largest = a.len().max(b.len());
    if largest > bound {
        return Err(Error::ResourceBound {
            what: "brute-force isomorphism elements".into(),
            bound: bound as u64,
        });
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    Ok(Backtracker::new(a, b).first())
}

/// Isomorphism-invariant description of one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    is_zero: bool,
    idempotent: bool,
    power_count: usize,
    zero_depth: Option<usize>,
    left_annihilated: usize,
    right_annihilated: usize,
    square_roots: usize,
    factorizations: usize,
}

fn profiles(q: &FiniteSemigroup) -> Vec<Profile> {
    let n = q.len();
    let mut roots = vec![0; n];
    let mut facts = vec![0; n];
    for x in 0..n {
        roots[q.mul(x, x)] += 1;
        for y in 0..n {
            facts[q.mul(x, y)] += 1;
        }
    }
    (0..n)
        .map(|x| Profile {
            is_zero: x == q.zero(),
            idempotent: q.is_idempotent(x),
            power_count: q.powers(x).len(),
            zero_depth: zero_depth(q, x),
            left_annihilated: (0..n).filter(|&y| q.mul(x, y) == q.zero()).count(),
            right_annihilated: (0..n).filter(|&y| q.mul(y, x) == q.zero()).count(),
            square_roots: roots[x],
            factorizations: facts[x],
        })
        .collect()
}

struct Backtracker<'a> {
    a: &'a FiniteSemigroup,
    b: &'a FiniteSemigroup,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    /// `factorizations[p]`: pairs `(u, v)` with `uv = p`.
    factorizations: Vec<Vec<(usize, usize)>>,
    feasible: bool,
}

impl<'a> Backtracker<'a> {
    fn new(a: &'a FiniteSemigroup, b: &'a FiniteSemigroup) -> Self {
        let (pa, pb) = (profiles(a), profiles(b));
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        let feasible = a.len() == b.len() && sa == sb;
        let candidates = (0..a.len())
            .map(|x| (0..b.len()).filter(|&y| pa[x] == pb[y]).collect())
            .collect::<Vec<Vec<usize>>>();
        // Most constrained elements first.
        let mut order: Vec<usize> = (0..a.len()).collect();
        order.sort_by_key(|&x| (candidates[x].len(), x));
        let mut factorizations = vec![Vec::new(); a.len()];
        for u in 0..a.len() {
            for v in 0..a.len() {
                factorizations[a.mul(u, v)].push((u, v));
            }
        }
        Backtracker {
            a,
            b,
            order,
            candidates,
            factorizations,
            feasible,
        }
    }

    fn first(&self) -> Option<SemigroupMap> {
        let mut out = Vec::new();
        self.run(&mut out, true);
        out.pop()
    }

    fn all(&self) -> Vec<SemigroupMap> {
        let mut out = Vec::new();
        self.run(&mut out, false);
        out
    }

    fn run(&self, out: &mut Vec<SemigroupMap>, stop_at_first: bool) {
        if !self.feasible {
            return;
        }
        let n = self.a.len();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.step(0, &mut f, &mut used, out, stop_at_first);
    }

    fn consistent(&self, f: &[usize], x: usize) -> bool {
        let (a, b) = (self.a, self.b);
        for y in 0..a.len() {
            if f[y] == usize::MAX {
                continue;
            }
            for (l, r) in [(x, y), (y, x)] {
                let p = a.mul(l, r);
                if f[p] != usize::MAX && f[p] != b.mul(f[l], f[r]) {
                    return false;
                }
            }
        }
        self.factorizations[x]
            .iter()
            .all(|&(u, v)| f[u] == usize::MAX || f[v] == usize::MAX || b.mul(f[u], f[v]) == f[x])
    }

    fn step(&self, i: usize, f: &mut [usize], used: &mut [bool], out: &mut Vec<SemigroupMap>, stop: bool) -> bool {
        if i == self.order.len() {
            debug_assert!(is_homomorphism(f, self.a, self.b));
            out.push(SemigroupMap { assignment: f.to_vec() });
            return stop;
        }
        let x = self.order[i];
        for &y in &self.candidates[x] {
            if used[y] {
                continue;
            }
            f[x] = y;
            used[y] = true;
            if self.consistent(f, x) && self.step(i + 1, f, used, out, stop) {
                return true;
            }
            used[y] = false;
            f[x] = usize::MAX;
        }
        false
    }
}
