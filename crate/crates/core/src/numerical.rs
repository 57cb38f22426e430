//! Numerical semigroups: co-finite subsemigroups of the positive integers.
//!
//! A [`NumericalSemigroup`] never contains `0`; the monoid `S⁰` obtained by
//! adjoining the identity is available through
//! [`NumericalSemigroup::contains_with_zero`]. Values are kept in canonical
//! form (minimal generators, small elements and conductor), so structural
//! equality is semigroup equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::text::Scanner;

/// Frobenius numbers above this are rejected by [`enumerate_by_frobenius`].
pub const DEFAULT_FROBENIUS_LIMIT: u64 = 20;

/// Environment variable overriding [`DEFAULT_FROBENIUS_LIMIT`].
pub const FROBENIUS_LIMIT_ENV: &str = "RQNS_MAX_FROBENIUS";

// Bitmask search needs every element below the Frobenius number to fit in a u64.
const HARD_FROBENIUS_LIMIT: u64 = 63;

// Largest conductor from_generators will materialize.
const CONDUCTOR_LIMIT: u64 = 1 << 24;

/// The active enumeration limit (environment override, else the default).
pub fn frobenius_limit() -> u64 {
    std::env::var(FROBENIUS_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map_or(DEFAULT_FROBENIUS_LIMIT, |v| v.min(HARD_FROBENIUS_LIMIT))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SemigroupJson", into = "SemigroupJson")]
pub struct NumericalSemigroup {
    min_generators: Vec<u64>,
    small_elements: Vec<u64>,
    conductor: u64,
}

#[derive(Serialize, Deserialize)]
struct SemigroupJson {
    min_generators: Vec<u64>,
    #[serde(default)]
    small_elements: Option<Vec<u64>>,
    #[serde(default)]
    conductor: Option<u64>,
}

impl TryFrom<SemigroupJson> for NumericalSemigroup {
    type Error = Error;

    fn try_from(raw: SemigroupJson) -> Result<Self> {
        let s = NumericalSemigroup::from_generators(&raw.min_generators)?;
        let consistent = s.min_generators == raw.min_generators
            && raw.small_elements.as_ref().is_none_or(|e| *e == s.small_elements)
            && raw.conductor.is_none_or(|c| c == s.conductor);
        if !consistent {
            return Err(Error::InvalidConductor(raw.conductor.unwrap_or(0)));
        }
        Ok(s)
    }
}

impl From<NumericalSemigroup> for SemigroupJson {
    fn from(s: NumericalSemigroup) -> Self {
        SemigroupJson {
            min_generators: s.min_generators,
            small_elements: Some(s.small_elements),
            conductor: Some(s.conductor),
        }
    }
}

impl NumericalSemigroup {
    /// The semigroup of all positive integers, `⟨1⟩`.
    pub fn naturals() -> Self {
        NumericalSemigroup {
            min_generators: vec![1],
            small_elements: vec![1],
            conductor: 1,
        }
    }

    /// The numerical semigroup generated by `gens`, after dividing by their gcd.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let d = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        let mut gens: Vec<u64> = gens.iter().map(|g| g / d).collect();
        gens.sort_unstable();
        gens.dedup();
        let m = gens[0];

        // member[x] for x >= 1; stop once m consecutive members appear.
        let mut member = vec![true]; // index 0 stands for the adjoined identity
        let mut run = 0u64;
        let mut x = 0u64;
        while run < m {
            x += 1;
            if x > CONDUCTOR_LIMIT {
                return Err(Error::ResourceBound {
                    what: "conductor".into(),
                    bound: CONDUCTOR_LIMIT,
                });
            }
            let is_member = gens
                .iter()
                .take_while(|&&g| g <= x)
                .any(|&g| member[(x - g) as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
        }
        let conductor = x - m + 1;
        Ok(Self::from_membership(conductor, |y| member[y as usize]))
    }

    /// Rebuilds a semigroup from its small elements; `conductor` must be the
    /// largest of them.
    pub fn from_small_elements(smalls: &[u64], conductor: u64) -> Result<Self> {
        let mut smalls = smalls.to_vec();
        smalls.sort_unstable();
        smalls.dedup();
        if conductor == 0
            || smalls.last() != Some(&conductor)
            || smalls.first() == Some(&0)
            || (conductor > 1 && smalls.binary_search(&(conductor - 1)).is_ok())
        {
            return Err(Error::InvalidConductor(conductor));
        }
        let member = |x: u64| x >= conductor || smalls.binary_search(&x).is_ok();
        for (i, &a) in smalls.iter().enumerate() {
            for &b in &smalls[i..] {
                if !member(a + b) {
                    return Err(Error::ClosureViolation { a, b, sum: a + b });
                }
            }
        }
        Ok(Self::from_membership(conductor, member))
    }

    /// Builds the canonical form from a membership predicate that is already
    /// known to describe a numerical semigroup with the given conductor.
    fn from_membership(conductor: u64, member: impl Fn(u64) -> bool) -> Self {
        let small_elements: Vec<u64> = (1..=conductor).filter(|&x| member(x)).collect();
        let m = small_elements[0];
        let min_generators = (m..conductor + m)
            .filter(|&x| member(x))
            .filter(|&x| !(m..x).any(|a| member(a) && member(x - a)))
            .collect();
        NumericalSemigroup {
            min_generators,
            small_elements,
            conductor,
        }
    }

    pub fn min_generators(&self) -> &[u64] {
        &self.min_generators
    }

    /// Members not greater than the conductor (the conductor included).
    pub fn small_elements(&self) -> &[u64] {
        &self.small_elements
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Greatest positive integer outside the semigroup (`0` for ℕ).
    pub fn frobenius(&self) -> u64 {
        self.conductor - 1
    }

    pub fn multiplicity(&self) -> u64 {
        self.min_generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.min_generators.len()
    }

    pub fn genus(&self) -> usize {
        (self.conductor as usize) - self.small_elements.len()
    }

    pub fn gaps(&self) -> Vec<u64> {
        (1..self.conductor).filter(|&x| !self.contains(x)).collect()
    }

    pub fn is_naturals(&self) -> bool {
        self.conductor == 1
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.conductor || (x > 0 && self.small_elements.binary_search(&x).is_ok())
    }

    /// Membership in `S⁰ = S ∪ {0}`.
    pub fn contains_with_zero(&self, x: u64) -> bool {
        x == 0 || self.contains(x)
    }

    /// Members of `S` up to and including `bound`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (1..=bound).filter(move |&x| self.contains(x))
    }

    /// The Apéry set of `n`: for each residue mod `n`, the least member of
    /// `S⁰` in that class. Returned ascending.
    pub fn apery_set(&self, n: u64) -> Result<Vec<u64>> {
        if !self.contains(n) {
            return Err(Error::NotAMember(n));
        }
        let mut least = vec![None; n as usize];
        let mut found = 0;
        let mut s = 0u64;
        while found < n {
            if self.contains_with_zero(s) {
                let slot = &mut least[(s % n) as usize];
                if slot.is_none() {
                    *slot = Some(s);
                    found += 1;
                }
            }
            s += 1;
        }
        let mut out: Vec<u64> = least.into_iter().flatten().collect();
        out.sort_unstable();
        Ok(out)
    }

    fn gap_duality(&self, skip_half: bool) -> Result<bool> {
        if self.is_naturals() {
            return Err(Error::UndefinedForFullSemigroup);
        }
        let f = self.frobenius();
        Ok(self
            .gaps()
            .into_iter()
            .filter(|&z| !(skip_half && 2 * z == f))
            .all(|z| self.contains_with_zero(f - z)))
    }

    /// Every gap `z` has `F − z ∈ S⁰` (forces `F` odd).
    pub fn is_symmetric(&self) -> Result<bool> {
        Ok(self.frobenius() % 2 == 1 && self.gap_duality(false)?)
    }

    /// `F` even and every gap `z ≠ F/2` has `F − z ∈ S⁰`.
    pub fn is_pseudo_symmetric(&self) -> Result<bool> {
        Ok(self.frobenius().is_multiple_of(2) && self.gap_duality(true)?)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.is_symmetric()? || self.is_pseudo_symmetric()?)
    }

    /// `{k·s : s ∈ S} ∪ {n ≥ k·t}`, assuming `t` exceeds the conductor.
    pub(crate) fn scaled_with_tail(&self, factor: u64, tail: u64) -> Self {
        let member = |x: u64| x >= tail || (x.is_multiple_of(factor) && self.contains(x / factor));
        let mut c = tail;
        while c > 1 && member(c - 1) {
            c -= 1;
        }
        Self::from_membership(c, member)
    }

    /// `S ∪ {n ≥ k}` (the result may have a conductor below `k`).
    pub(crate) fn with_tail(&self, k: u64) -> Self {
        let member = |x: u64| x >= k || self.contains(x);
        let mut c = k.min(self.conductor);
        while c > 1 && member(c - 1) {
            c -= 1;
        }
        Self::from_membership(c, member)
    }

    /// Generator notation, e.g. `<3,5>`.
    pub fn generator_notation(&self) -> String {
        format!("<{}>", join(&self.min_generators))
    }

    /// Small-element notation, e.g. `{3,5,6,8^>}`.
    pub fn small_element_notation(&self) -> String {
        format!("{{{}^>}}", join(&self.small_elements))
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.small_elements.cmp(&other.small_elements)
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.small_element_notation())
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    /// Accepts `<3,5>` (generators, `⟨⟩` also allowed) or `{3,5,6,8^>}`.
    fn from_str(input: &str) -> Result<Self> {
        let mut sc = Scanner::new(input);
        sc.skip_ws();
        let (close, small_form) = match sc.peek() {
            Some('<') | Some('⟨') => (['>', '⟩'], false),
            Some('{') => (['}', '}'], true),
            _ => return Err(sc.error("expected '<' or '{'").into()),
        };
        sc.bump();
        let mut values = Vec::new();
        let mut tail_marker = false;
        loop {
            sc.skip_ws();
            let start = sc.offset();
            let v = sc.number()?;
            if v == 0 {
                return Err(ParseError::new(input, start, "elements must be positive").into());
            }
            values.push(v);
            sc.skip_ws();
            if small_form && sc.eat_str("^>") {
                tail_marker = true;
                sc.skip_ws();
                if !matches!(sc.peek(), Some('}')) {
                    return Err(sc.error("'^>' must mark the last element").into());
                }
            }
            match sc.peek() {
                Some(',') => {
                    sc.bump();
                }
                Some(c) if close.contains(&c) => {
                    sc.bump();
                    break;
                }
                _ => return Err(sc.error("expected ',' or closing bracket").into()),
            }
        }
        sc.skip_ws();
        if !sc.at_end() {
            return Err(sc.error("trailing input").into());
        }
        if small_form {
            if !tail_marker {
                return Err(ParseError::new(input, input.len(), "small-element form needs '^>'").into());
            }
            let c = *values.last().unwrap();
            NumericalSemigroup::from_small_elements(&values, c)
        } else {
            NumericalSemigroup::from_generators(&values)
        }
    }
}

/// All numerical semigroups with Frobenius number exactly `f`, ordered
/// lexicographically by small elements.
pub fn enumerate_by_frobenius(f: u64) -> Result<Vec<NumericalSemigroup>> {
    let limit = frobenius_limit();
    if f == 0 || f > limit {
        return Err(Error::ResourceBound {
            what: format!("Frobenius number {f}"),
            bound: limit,
        });
    }
    // Branch on the multiplicity; branches are disjoint.
    let mut all: Vec<NumericalSemigroup> = (2..=f + 1)
        .into_par_iter()
        .flat_map_iter(|m| {
            let mut found = Vec::new();
            if m == f + 1 {
                found.push(0u64);
            } else if !f.is_multiple_of(m) {
                extend(f, 1u64 << m, m + 1, &mut found);
            }
            found.into_iter().map(move |mask| {
                let smalls: Vec<u64> = (1..f).filter(|&x| mask >> x & 1 == 1).chain([f + 1]).collect();
                NumericalSemigroup::from_membership(f + 1, |x| x > f || smalls.binary_search(&x).is_ok())
            })
        })
        .collect();
    all.sort();
    Ok(all)
}

// Decide membership of x, x+1, …, f-1 given the members below x in `mask`.
fn extend(f: u64, mask: u64, x: u64, out: &mut Vec<u64>) {
    if x == f {
        out.push(mask);
        return;
    }
    let has = |y: u64| mask >> y & 1 == 1;
    let forced = (1..=x / 2).any(|a| has(a) && has(x - a));
    let allowed = 2 * x != f && !(x < f && f - x < x && has(f - x));
    if forced {
        if allowed {
            extend(f, mask | 1 << x, x + 1, out);
        }
        return;
    }
    extend(f, mask, x + 1, out);
    if allowed {
        extend(f, mask | 1 << x, x + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn three_five() {
        let s = ns(&[3, 5]);
        assert_eq!(s.min_generators(), &[3, 5]);
        assert_eq!(s.small_elements(), &[3, 5, 6, 8]);
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.frobenius(), 7);
        assert_eq!(s.genus(), 4);
        assert!(!s.contains(7));
        assert!(s.contains(100));
    }

    #[test]
    fn naturals_and_gcd_normalization() {
        let s = ns(&[1]);
        assert_eq!(s.small_elements(), &[1]);
        assert_eq!(s.conductor(), 1);
        assert_eq!(s.frobenius(), 0);
        assert_eq!(ns(&[6, 10]), ns(&[3, 5]));
        assert_eq!(ns(&[4, 6, 9, 11, 8, 12]).min_generators(), &[4, 6, 9, 11]);
    }

    #[test]
    fn four_eleven_thirteen_eighteen() {
        let s = ns(&[4, 11, 13, 18]);
        assert_eq!(s.small_elements(), &[4, 8, 11, 12, 13, 15]);
        assert_eq!(s.conductor(), 15);
        assert_eq!(s.min_generators(), &[4, 11, 13, 18]);
    }

    #[test]
    fn small_elements_constructor() {
        let s = NumericalSemigroup::from_small_elements(&[3, 6, 8, 9, 11], 11).unwrap();
        assert_eq!(s.min_generators(), &[3, 8, 13]);
        assert_eq!(NumericalSemigroup::from_small_elements(&[2], 2).unwrap(), ns(&[2, 3]));
        let t = NumericalSemigroup::from_small_elements(&[4, 6, 8], 8).unwrap();
        assert_eq!(t.min_generators(), &[4, 6, 9, 11]);
        assert!(matches!(
            NumericalSemigroup::from_small_elements(&[3, 5, 7], 7),
            Err(Error::ClosureViolation { .. })
        ));
        assert!(matches!(
            NumericalSemigroup::from_small_elements(&[3, 5, 6], 6),
            Err(Error::InvalidConductor(6))
        ));
    }

    #[test]
    fn empty_and_zero_generators_rejected() {
        assert!(matches!(NumericalSemigroup::from_generators(&[]), Err(Error::EmptyGenerators)));
        assert!(matches!(NumericalSemigroup::from_generators(&[0, 3]), Err(Error::ZeroGenerator)));
    }

    #[test]
    fn apery() {
        assert_eq!(ns(&[3, 5]).apery_set(3).unwrap(), vec![0, 5, 10]);
        assert_eq!(ns(&[1]).apery_set(1).unwrap(), vec![0]);
        assert_eq!(ns(&[2, 5]).apery_set(2).unwrap(), vec![0, 5]);
        assert!(matches!(ns(&[3, 5]).apery_set(4), Err(Error::NotAMember(4))));
    }

    #[test]
    fn irreducibility() {
        let pseudo = NumericalSemigroup::from_small_elements(&[3, 6, 8, 9, 11], 11).unwrap();
        assert!(pseudo.is_pseudo_symmetric().unwrap());
        assert!(!pseudo.is_symmetric().unwrap());
        let sym = NumericalSemigroup::from_small_elements(&[2, 4, 6, 8, 10], 10).unwrap();
        assert!(sym.is_symmetric().unwrap());
        let red = NumericalSemigroup::from_small_elements(&[7, 9, 11], 11).unwrap();
        assert!(!red.is_irreducible().unwrap());
        assert!(matches!(ns(&[1]).is_irreducible(), Err(Error::UndefinedForFullSemigroup)));
    }

    #[test]
    fn notation_round_trip() {
        let s: NumericalSemigroup = "{3,5,6,8^>}".parse().unwrap();
        assert_eq!(s, ns(&[3, 5]));
        assert_eq!(s.to_string(), "{3,5,6,8^>}");
        assert_eq!(s.generator_notation(), "<3,5>");
        let t: NumericalSemigroup = " < 4, 11,13 ,18> ".parse().unwrap();
        assert_eq!(t.conductor(), 15);
        let u: NumericalSemigroup = "⟨2,5⟩".parse().unwrap();
        assert_eq!(u, ns(&[2, 5]));
    }

    #[test]
    fn notation_errors_carry_columns() {
        match "<3,x>".parse::<NumericalSemigroup>() {
            Err(Error::Parse(e)) => assert_eq!((e.line, e.column), (1, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!("{3,5,6,8}".parse::<NumericalSemigroup>().is_err());
        assert!("{3^>,5}".parse::<NumericalSemigroup>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = ns(&[3, 5]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"min_generators":[3,5],"small_elements":[3,5,6,8],"conductor":8}"#);
        let back: NumericalSemigroup = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<NumericalSemigroup>(r#"{"min_generators":[3,5],"conductor":9}"#).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_by_frobenius(1).unwrap(), vec![ns(&[2, 3])]);
        let eight = enumerate_by_frobenius(8).unwrap();
        assert_eq!(eight.len(), 10);
        let irr: Vec<_> = eight
            .iter()
            .filter(|s| s.is_irreducible().unwrap())
            .map(|s| s.small_elements().to_vec())
            .collect();
        assert_eq!(irr, vec![vec![3, 6, 7, 9], vec![5, 6, 7, 9]]);
        assert!(matches!(enumerate_by_frobenius(0), Err(Error::ResourceBound { .. })));
        assert!(matches!(enumerate_by_frobenius(64), Err(Error::ResourceBound { .. })));
    }

    #[test]
    fn conductor_tails() {
        let s = ns(&[3, 5]);
        assert_eq!(s.scaled_with_tail(2, 20).small_elements(), &[6, 10, 12, 16, 18, 20]);
        assert_eq!(s.with_tail(8), s);
        assert_eq!(s.with_tail(7).conductor(), 5);
    }
}
