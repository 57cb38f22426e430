//! Commutative presentations (with zero) of numerical semigroups and of
//! their Rees quotients, and a completion-based enumerator that turns a
//! presentation back into a finite table.
//!
//! Words are exponent vectors aligned with the generator list: every
//! semigroup handled here is commutative.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::finite::FiniteSemigroup;
use crate::ideal::Ideal;
use crate::numerical::NumericalSemigroup;
use crate::quotient::minimal_generating_system;
use crate::text::{raw_word, RawWord, Scanner};

/// Two sides of a relation; `None` is the zero.
type Equation = (Option<Vec<u32>>, Option<Vec<u32>>);

/// Label of the zero of a presented semigroup.
pub const ZERO_LABEL: &str = "0";

/// A word in the free commutative semigroup, as exponents per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutativeWord {
    pub exponents: Vec<u32>,
}

impl CommutativeWord {
    pub fn new(exponents: Vec<u32>) -> Self {
        CommutativeWord { exponents }
    }

    pub fn letter(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        CommutativeWord { exponents: e }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Indices of the generators that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Restriction to the generator positions in `keep`, in that order.
    fn project(&self, keep: &[usize]) -> Self {
        CommutativeWord::new(keep.iter().map(|&i| self.exponents[i]).collect())
    }

    /// `Σ eᵢ·valueᵢ`.
    pub fn evaluate(&self, values: &[u64]) -> u64 {
        self.exponents.iter().zip(values).map(|(&e, &v)| e as u64 * v).sum()
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.exponents[i] {
                1 => names[i].clone(),
                e => format!("{}^{e}", names[i]),
            })
            .collect();
        parts.join("*")
    }
}

/// Degree first; within a degree `a² < a·b < b²`.
fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// `⟨X | R, w = 0 (w ∈ Z)⟩` over commutative words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(CommutativeWord, CommutativeWord)>,
    pub zero_relations: Vec<CommutativeWord>,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Same presentation with the generators renamed.
    pub fn relabeled(&self, generators: Vec<String>) -> Result<Self> {
        if generators.len() != self.rank() || generators.iter().collect::<BTreeSet<_>>().len() != generators.len() {
            return Err(Error::PresentationMismatch);
        }
        Ok(Presentation {
            generators,
            ..self.clone()
        })
    }

    /// Total number of relations, zero-relations included.
    pub fn relation_count(&self) -> usize {
        self.relations.len() + self.zero_relations.len()
    }

    fn validate(&self) -> Result<()> {
        let k = self.rank();
        let ok = |w: &CommutativeWord| w.exponents.len() == k && w.degree() > 0;
        if self.relations.iter().all(|(u, v)| ok(u) && ok(v)) && self.zero_relations.iter().all(ok) {
            Ok(())
        } else {
            Err(Error::InvalidTable("malformed presentation word".into()))
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.generators;
        write!(f, "<{}", g.join(","))?;
        let mut rels: Vec<String> = self
            .relations
            .iter()
            .map(|(u, v)| format!("{}={}", u.render(g), v.render(g)))
            .collect();
        rels.extend(self.zero_relations.iter().map(|w| format!("{}=0", w.render(g))));
        if !rels.is_empty() {
            write!(f, " | {}", rels.join(", "))?;
        }
        f.write_str(">")
    }
}

impl FromStr for Presentation {
    type Err = Error;

    /// Parses `<a,b | a^5=b^2, a^3=0, a*b=0>`.
    fn from_str(input: &str) -> Result<Self> {
        let mut sc = Scanner::new(input);
        sc.skip_ws();
        if !sc.eat('<') {
            return Err(sc.error("expected '<'").into());
        }
        let mut generators: Vec<String> = Vec::new();
        loop {
            sc.skip_ws();
            let at = sc.offset();
            let name = sc.ident()?;
            if generators.iter().any(|g| g == name) {
                return Err(ParseError::new(input, at, format!("duplicate generator {name}")).into());
            }
            generators.push(name.to_string());
            sc.skip_ws();
            if !sc.eat(',') {
                break;
            }
        }
        let k = generators.len();
        let mut relations = Vec::new();
        let mut zero_relations = Vec::new();
        if sc.eat('|') {
            loop {
                sc.skip_ws();
                if sc.peek() == Some('>') {
                    break;
                }
                let at = sc.offset();
                let lhs = resolve(&raw_word(&mut sc)?, &generators, input, at)?;
                sc.skip_ws();
                if !sc.eat('=') {
                    return Err(sc.error("expected '='").into());
                }
                sc.skip_ws();
                let at_rhs = sc.offset();
                let rhs = resolve(&raw_word(&mut sc)?, &generators, input, at_rhs)?;
                match (lhs, rhs) {
                    (Some(u), Some(v)) => relations.push((u, v)),
                    (Some(w), None) | (None, Some(w)) => zero_relations.push(w),
                    (None, None) => return Err(ParseError::new(input, at, "relation 0=0").into()),
                }
                sc.skip_ws();
                if !sc.eat(',') {
                    break;
                }
            }
        }
        sc.skip_ws();
        if !sc.eat('>') {
            return Err(sc.error("expected '>'").into());
        }
        sc.skip_ws();
        if !sc.at_end() {
            return Err(sc.error("trailing input").into());
        }
        debug_assert!(relations.iter().all(|(u, _): &(CommutativeWord, _)| u.exponents.len() == k));
        Ok(Presentation {
            generators,
            relations,
            zero_relations,
        })
    }
}

fn resolve(raw: &RawWord<'_>, names: &[String], input: &str, at: usize) -> Result<Option<CommutativeWord>> {
    match raw {
        RawWord::Zero => Ok(None),
        RawWord::Factors(fs) => {
            let mut e = vec![0u32; names.len()];
            for (name, exp) in fs {
                let i = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| ParseError::new(input, at, format!("unknown generator {name}")))?;
                e[i] += exp;
            }
            Ok(Some(CommutativeWord::new(e)))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relations: Vec<(BTreeMap<String, u32>, BTreeMap<String, u32>)>,
    zero_relations: Vec<BTreeMap<String, u32>>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map = |w: &CommutativeWord| -> BTreeMap<String, u32> {
            w.support().map(|i| (self.generators[i].clone(), w.exponents[i])).collect()
        };
        PresentationJson {
            generators: self.generators.clone(),
            relations: self.relations.iter().map(|(u, v)| (map(u), map(v))).collect(),
            zero_relations: self.zero_relations.iter().map(map).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PresentationJson::deserialize(deserializer)?;
        let word = |m: &BTreeMap<String, u32>| -> std::result::Result<CommutativeWord, D::Error> {
            let mut e = vec![0; raw.generators.len()];
            for (name, &exp) in m {
                let i = raw
                    .generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| D::Error::custom(format!("unknown generator {name}")))?;
                e[i] = exp;
            }
            Ok(CommutativeWord::new(e))
        };
        let p = Presentation {
            generators: raw.generators.clone(),
            relations: raw
                .relations
                .iter()
                .map(|(u, v)| Ok((word(u)?, word(v)?)))
                .collect::<std::result::Result<_, D::Error>>()?,
            zero_relations: raw.zero_relations.iter().map(word).collect::<std::result::Result<_, _>>()?,
        };
        p.validate().map_err(D::Error::custom)?;
        Ok(p)
    }
}

/// `a, b, …, z, x26, x27, …`
pub fn letter_labels(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// Factorizations over a fixed generator list.
struct Factorizer<'a> {
    gens: &'a [u64],
    // representable[j][x]: x is a non-negative combination of gens[j..].
    representable: Vec<Vec<bool>>,
}

impl<'a> Factorizer<'a> {
    fn new(gens: &'a [u64], bound: u64) -> Self {
        let size = bound as usize + 1;
        let mut representable = vec![vec![false; size]; gens.len() + 1];
        representable[gens.len()][0] = true;
        for j in (0..gens.len()).rev() {
            let g = gens[j] as usize;
            for x in 0..size {
                representable[j][x] = representable[j + 1][x] || (x >= g && representable[j][x - g]);
            }
        }
        Factorizer { gens, representable }
    }

    /// The lexicographically smallest exponent vector with value `x`.
    fn lexmin(&self, x: u64) -> Option<CommutativeWord> {
        if !self.representable[0][x as usize] {
            return None;
        }
        let mut rest = x;
        let mut e = Vec::with_capacity(self.gens.len());
        for (j, &g) in self.gens.iter().enumerate() {
            let mut k = 0u64;
            while !self.representable[j + 1][(rest - k * g) as usize] {
                k += 1;
            }
            e.push(k as u32);
            rest -= k * g;
        }
        Some(CommutativeWord::new(e))
    }
}

/// The fixed word `w_g` for an element `g` of `S`: the lexicographically
/// smallest factorization over the minimal generators. A minimal
/// generator gets the single letter.
pub fn representative_word(s: &NumericalSemigroup, g: u64) -> Result<CommutativeWord> {
    Factorizer::new(s.min_generators(), g).lexmin(g).ok_or(Error::NotAMember(g))
}

/// A minimal presentation of `S` over its minimal generators (labelled
/// `a, b, …` in increasing order), from the disconnected factorization
/// graphs.
pub fn minimal_presentation(s: &NumericalSemigroup) -> Presentation {
    let gens = s.min_generators();
    let k = gens.len();
    // A disconnected graph needs a vertex g with n - g - m outside S⁰.
    let bound = s.frobenius() + s.multiplicity() + gens[k - 1];
    let fact = Factorizer::new(gens, bound);
    let mut relations = Vec::new();
    for n in s.elements_up_to(bound) {
        let vertices: Vec<usize> = (0..k).filter(|&j| gens[j] <= n && s.contains_with_zero(n - gens[j])).collect();
        if vertices.len() < 2 {
            continue;
        }
        let mut comp: Vec<usize> = (0..vertices.len()).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                x = comp[x];
            }
            x
        }
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                let used = gens[vertices[a]] + gens[vertices[b]];
                if used <= n && s.contains_with_zero(n - used) {
                    let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                    comp[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut leaders: Vec<usize> = Vec::new();
        for a in 0..vertices.len() {
            let r = root(&mut comp, a);
            if !leaders.contains(&r) {
                leaders.push(r);
            }
        }
        if leaders.len() < 2 {
            continue;
        }
        let words: Vec<CommutativeWord> = leaders
            .iter()
            .map(|&r| {
                let j = vertices[r];
                let mut w = fact.lexmin(n - gens[j]).expect("vertex minus generator lies in S⁰");
                w.exponents[j] += 1;
                w
            })
            .collect();
        for w in &words[1..] {
            relations.push((words[0].clone(), w.clone()));
        }
    }
    Presentation {
        generators: letter_labels(k),
        relations,
        zero_relations: Vec::new(),
    }
}

/// `⟨X | R, w_g = 0 (g ∈ G)⟩` over all minimal generators of `S`.
pub fn quotient_presentation(s: &NumericalSemigroup, ideal: &Ideal) -> Result<Presentation> {
    if ideal.ambient() != s {
        return Err(Error::AmbientMismatch);
    }
    let mut p = minimal_presentation(s);
    p.zero_relations = ideal
        .min_ideal_generators()
        .iter()
        .map(|&g| representative_word(s, g))
        .collect::<Result<_>>()?;
    Ok(p)
}

/// `⟨X \ I | R₁ ∪ R₂, w_g = 0 (g ∈ G \ X)⟩`, a presentation over the minimal
/// generating system of `S/I`. Generators keep their letters from
/// [`minimal_presentation`].
pub fn reduced_quotient_presentation(s: &NumericalSemigroup, ideal: &Ideal) -> Result<Presentation> {
    if ideal.ambient() != s {
        return Err(Error::AmbientMismatch);
    }
    let full = minimal_presentation(s);
    let gens = s.min_generators();
    let keep: Vec<usize> = (0..gens.len()).filter(|&j| !ideal.contains(gens[j])).collect();
    let outside = |w: &CommutativeWord| w.support().all(|j| keep.contains(&j));
    let mut relations = Vec::new();
    let mut zero_relations: Vec<CommutativeWord> = Vec::new();
    let push_zero = |w: CommutativeWord, zs: &mut Vec<CommutativeWord>| {
        if !zs.contains(&w) {
            zs.push(w);
        }
    };
    for (u, v) in &full.relations {
        match (outside(u), outside(v)) {
            (true, true) => relations.push((u.project(&keep), v.project(&keep))),
            (true, false) => push_zero(u.project(&keep), &mut zero_relations),
            (false, true) => push_zero(v.project(&keep), &mut zero_relations),
            (false, false) => {}
        }
    }
    for &g in ideal.min_ideal_generators() {
        if gens.contains(&g) {
            continue;
        }
        let w = representative_word(s, g)?;
        debug_assert!(outside(&w), "w_g avoids I whenever g is not a generator");
        push_zero(w.project(&keep), &mut zero_relations);
    }
    Ok(Presentation {
        generators: keep.iter().map(|&j| full.generators[j].clone()).collect(),
        relations,
        zero_relations,
    })
}

/// A presentation with zero of a commutative table over its minimal
/// generating system: one relation `w_e·x = w_{ex}` per element and
/// generator, where `w_e` are breadth-first representative words.
pub fn presentation_of_table(q: &FiniteSemigroup) -> Result<Presentation> {
    if let Some((a, b)) = q.commutativity_failure() {
        return Err(Error::NotCommutative {
            a: q.label(a).into(),
            b: q.label(b).into(),
        });
    }
    let gens = minimal_generating_system(q);
    let reps = representative_words(q, &gens)?;
    let k = gens.len();
    let mut relations = Vec::new();
    let mut zero_relations = Vec::new();
    let mut seen = BTreeSet::new();
    for e in q.nonzero() {
        let we = reps[e].as_ref().expect("every non-zero element has a word");
        for (i, &x) in gens.iter().enumerate() {
            let mut lhs = we.clone();
            lhs.exponents[i] += 1;
            if !seen.insert(lhs.exponents.clone()) {
                continue;
            }
            let p = q.mul(e, x);
            if p == q.zero() {
                zero_relations.push(lhs);
            } else {
                let rhs = reps[p].as_ref().unwrap();
                if *rhs != lhs {
                    relations.push((lhs, rhs.clone()));
                }
            }
        }
    }
    debug_assert!(relations.iter().all(|(u, _)| u.exponents.len() == k));
    Ok(Presentation {
        generators: gens.iter().map(|&g| q.label(g).to_string()).collect(),
        relations,
        zero_relations,
    })
}

/// Breadth-first words over `gens` for every non-zero element (zero gets
/// `None`). Fails when `gens` does not generate the non-zero part.
pub(crate) fn representative_words(q: &FiniteSemigroup, gens: &[usize]) -> Result<Vec<Option<CommutativeWord>>> {
    let k = gens.len();
    let mut reps: Vec<Option<CommutativeWord>> = vec![None; q.len()];
    let mut queue = std::collections::VecDeque::new();
    for (i, &g) in gens.iter().enumerate() {
        reps[g] = Some(CommutativeWord::letter(k, i));
        queue.push_back(g);
    }
    while let Some(e) = queue.pop_front() {
        for (i, &x) in gens.iter().enumerate() {
            let p = q.mul(e, x);
            if p != q.zero() && reps[p].is_none() {
                let mut w = reps[e].clone().unwrap();
                w.exponents[i] += 1;
                reps[p] = Some(w);
                queue.push_back(p);
            }
        }
    }
    if q.nonzero().any(|e| reps[e].is_none()) {
        return Err(Error::NotNilpotent);
    }
    Ok(reps)
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Vec<u32>,
    rhs: Option<Vec<u32>>,
}

/// Completed commutative rewriting system; `None` is the zero.
struct Rewriter {
    rules: Vec<Rule>,
}

impl Rewriter {
    fn reduce(&self, w: Option<Vec<u32>>) -> Option<Vec<u32>> {
        let mut w = w?;
        'outer: loop {
            for r in &self.rules {
                if r.lhs.iter().zip(&w).all(|(a, b)| a <= b) {
                    let rhs = r.rhs.as_ref()?;
                    for ((x, l), rr) in w.iter_mut().zip(&r.lhs).zip(rhs) {
                        *x = *x - l + rr;
                    }
                    continue 'outer;
                }
            }
            return Some(w);
        }
    }

    fn complete(rank: usize, equations: Vec<Equation>) -> Self {
        let mut rw = Rewriter { rules: Vec::new() };
        let mut queue = equations;
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (rw.reduce(a), rw.reduce(b));
            let rule = match (a, b) {
                (None, None) => continue,
                (Some(w), None) | (None, Some(w)) => Rule { lhs: w, rhs: None },
                (Some(u), Some(v)) => match graded_lex(&u, &v) {
                    Ordering::Equal => continue,
                    Ordering::Greater => Rule { lhs: u, rhs: Some(v) },
                    Ordering::Less => Rule { lhs: v, rhs: Some(u) },
                },
            };
            for old in &rw.rules {
                if rule.lhs.iter().zip(&old.lhs).all(|(&x, &y)| x == 0 || y == 0) {
                    continue;
                }
                let lcm: Vec<u32> = rule.lhs.iter().zip(&old.lhs).map(|(&x, &y)| x.max(y)).collect();
                let lift = |r: &Rule| {
                    r.rhs.as_ref().map(|rhs| {
                        (0..rank).map(|i| rhs[i] + lcm[i] - r.lhs[i]).collect::<Vec<u32>>()
                    })
                };
                queue.push((lift(&rule), lift(old)));
            }
            rw.rules.push(rule);
        }
        rw
    }
}

/// Materializes the semigroup with zero defined by `p`.
///
/// Elements are the normal forms of a completed rewriting system, listed
/// in graded-lex order with the zero (`0`) last. Stops with
/// [`Error::SizeBoundExceeded`] once more than `size_bound` elements appear.
pub fn semigroup_from_presentation(p: &Presentation, size_bound: usize) -> Result<FiniteSemigroup> {
    p.validate()?;
    let k = p.rank();
    let mut equations: Vec<Equation> = p
        .relations
        .iter()
        .map(|(u, v)| (Some(u.exponents.clone()), Some(v.exponents.clone())))
        .collect();
    equations.extend(p.zero_relations.iter().map(|w| (Some(w.exponents.clone()), None)));
    let rw = Rewriter::complete(k, equations);

    let mut forms: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue: Vec<Vec<u32>> = Vec::new();
    let letter = |i: usize| CommutativeWord::letter(k, i).exponents;
    for i in 0..k {
        if let Some(w) = rw.reduce(Some(letter(i))) {
            if forms.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    while let Some(w) = queue.pop() {
        if forms.len() + 1 > size_bound {
            return Err(Error::SizeBoundExceeded(size_bound));
        }
        for i in 0..k {
            let mut next = w.clone();
            next[i] += 1;
            if let Some(nf) = rw.reduce(Some(next)) {
                if forms.insert(nf.clone()) {
                    queue.push(nf);
                }
            }
        }
    }
    if forms.len() + 1 > size_bound {
        return Err(Error::SizeBoundExceeded(size_bound));
    }
    let mut forms: Vec<Vec<u32>> = forms.into_iter().collect();
    forms.sort_by(|a, b| graded_lex(a, b));
    let index: HashMap<Vec<u32>, usize> = forms.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let zero = forms.len();
    let mut labels: Vec<String> = forms
        .iter()
        .map(|w| CommutativeWord::new(w.clone()).render(&p.generators))
        .collect();
    labels.push(ZERO_LABEL.to_string());
    let table: Vec<Vec<usize>> = (0..=zero)
        .map(|a| {
            (0..=zero)
                .map(|b| {
                    if a == zero || b == zero {
                        return zero;
                    }
                    let sum: Vec<u32> = forms[a].iter().zip(&forms[b]).map(|(x, y)| x + y).collect();
                    rw.reduce(Some(sum)).map_or(zero, |nf| index[&nf])
                })
                .collect()
        })
        .collect();
    FiniteSemigroup::new(labels, zero, table)
}
