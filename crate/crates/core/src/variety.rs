//! Commutative identities, their evaluation on finite tables, nilpotency,
//! and separation of identities by the quotients `Q_r = ℕ/I_r`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finite::FiniteSemigroup;
use crate::presentation::CommutativeWord;
use crate::quotient::{nilpotency_class, ReesQuotient};
use crate::text::{raw_word, RawWord, Scanner};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Equation(CommutativeWord, CommutativeWord),
    /// `w = 0`.
    Zero(CommutativeWord),
}

/// An identity in the variables `variables`, all of which occur in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub variables: Vec<String>,
    pub kind: IdentityKind,
}

impl Identity {
    pub fn equation(variables: Vec<String>, lhs: Vec<u32>, rhs: Vec<u32>) -> Result<Self> {
        Self::checked(variables, IdentityKind::Equation(CommutativeWord::new(lhs), CommutativeWord::new(rhs)))
    }

    pub fn zero(variables: Vec<String>, lhs: Vec<u32>) -> Result<Self> {
        Self::checked(variables, IdentityKind::Zero(CommutativeWord::new(lhs)))
    }

    fn checked(variables: Vec<String>, kind: IdentityKind) -> Result<Self> {
        let n = variables.len();
        let words: Vec<&CommutativeWord> = match &kind {
            IdentityKind::Equation(u, v) => vec![u, v],
            IdentityKind::Zero(u) => vec![u],
        };
        let shaped = words.iter().all(|w| w.exponents.len() == n && w.degree() > 0);
        let all_used = (0..n).all(|i| words.iter().any(|w| w.exponents[i] > 0));
        if !shaped || !all_used {
            return Err(Error::InvalidTable("identity words must be non-empty over used variables".into()));
        }
        Ok(Identity { variables, kind })
    }

    /// Whether both sides are the same commutative word.
    pub fn is_trivial(&self) -> bool {
        matches!(&self.kind, IdentityKind::Equation(u, v) if u == v)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            IdentityKind::Equation(u, v) => write!(f, "{} = {}", u.render(&self.variables), v.render(&self.variables)),
            IdentityKind::Zero(u) => write!(f, "{} = 0", u.render(&self.variables)),
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    /// Parses `x^2*y = x*y^2` or `x^3 = 0`.
    fn from_str(input: &str) -> Result<Self> {
        let mut sc = Scanner::new(input);
        let lhs = raw_word(&mut sc)?;
        sc.skip_ws();
        if !sc.eat('=') {
            return Err(sc.error("expected '='").into());
        }
        let rhs = raw_word(&mut sc)?;
        sc.skip_ws();
        if !sc.at_end() {
            return Err(sc.error("trailing input").into());
        }
        let mut variables: Vec<String> = Vec::new();
        for side in [&lhs, &rhs] {
            if let RawWord::Factors(fs) = side {
                for (name, _) in fs {
                    if !variables.iter().any(|v| v == name) {
                        variables.push(name.to_string());
                    }
                }
            }
        }
        let word = |side: &RawWord<'_>| -> Option<Vec<u32>> {
            match side {
                RawWord::Zero => None,
                RawWord::Factors(fs) => {
                    let mut e = vec![0; variables.len()];
                    for (name, exp) in fs {
                        e[variables.iter().position(|v| v == name).unwrap()] += exp;
                    }
                    Some(e)
                }
            }
        };
        match (word(&lhs), word(&rhs)) {
            (Some(u), Some(v)) => Identity::equation(variables, u, v),
            (Some(u), None) | (None, Some(u)) => Identity::zero(variables, u),
            (None, None) => Err(sc.error("identity 0 = 0").into()),
        }
    }
}

fn evaluate(q: &FiniteSemigroup, w: &CommutativeWord, values: &[usize]) -> usize {
    let mut acc: Option<usize> = None;
    for (i, &e) in w.exponents.iter().enumerate() {
        for _ in 0..e {
            acc = Some(acc.map_or(values[i], |a| q.mul(a, values[i])));
        }
    }
    acc.expect("identity words are non-empty")
}

/// The first assignment (lexicographic on element indices) under which
/// `id` fails in `q`, if any.
pub fn find_violation(q: &FiniteSemigroup, id: &Identity) -> Option<Vec<usize>> {
    let n = id.variables.len();
    let mut values = vec![0usize; n];
    loop {
        let holds = match &id.kind {
            IdentityKind::Equation(u, v) => evaluate(q, u, &values) == evaluate(q, v, &values),
            IdentityKind::Zero(u) => evaluate(q, u, &values) == q.zero(),
        };
        if !holds {
            return Some(values);
        }
        // Odometer with the last variable fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < q.len() {
                break;
            }
            values[i] = 0;
        }
    }
}

pub fn satisfies(q: &FiniteSemigroup, id: &Identity) -> bool {
    find_violation(q, id).is_none()
}

/// The nilpotency class, if `q` is nilpotent.
pub fn is_nilpotent(q: &FiniteSemigroup) -> Option<usize> {
    nilpotency_class(q).ok()
}

/// `xⁿ = 0` for every element, with `n = |q|`.
pub fn nilpotent_by_powers(q: &FiniteSemigroup) -> bool {
    let n = q.len();
    (0..n).all(|x| {
        let mut p = x;
        for _ in 1..n {
            p = q.mul(p, x);
        }
        p == q.zero()
    })
}

/// `x^ω = 0` for every element.
pub fn nilpotent_by_idempotents(q: &FiniteSemigroup) -> bool {
    (0..q.len()).all(|x| q.idempotent_power(x) == q.zero())
}

/// A quotient `Q_r` falsifying an identity, with the falsifying values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub r: u64,
    /// One label of `Q_r` per variable.
    pub assignment: Vec<String>,
}

/// Scan cap for [`separating_index`]: beyond it the all-ones assignment,
/// or ones with a single 2, already falsifies `id`.
pub fn separation_bound(id: &Identity) -> u64 {
    match &id.kind {
        IdentityKind::Zero(u) => 1 + u.degree() as u64,
        IdentityKind::Equation(u, v) => {
            let (da, db) = (u.degree() as u64, v.degree() as u64);
            let bumped = (1..id.variables.len())
                .map(|i| (da + u.exponents[i] as u64).max(db + v.exponents[i] as u64))
                .max()
                .unwrap_or(0);
            1 + da.max(db).max(bumped)
        }
    }
}

/// The least `r` such that `ℕ/I_r` fails `id`.
pub fn separating_index(id: &Identity) -> Result<Separation> {
    if id.is_trivial() {
        return Err(Error::TrivialIdentity);
    }
    let bound = separation_bound(id);
    for r in 2..=bound {
        let q = ReesQuotient::naturals_cut(r)?;
        if let Some(values) = find_violation(q.table(), id) {
            return Ok(Separation {
                r,
                assignment: values.iter().map(|&v| q.table().label(v).to_string()).collect(),
            });
        }
    }
    unreachable!("Q_{bound} falsifies every nontrivial identity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let id: Identity = "x^2*y = x*y^2".parse().unwrap();
        assert_eq!(id.variables, vec!["x", "y"]);
        assert_eq!(id.to_string(), "x^2*y = x*y^2");
        let z: Identity = "0 = x^3".parse().unwrap();
        assert_eq!(z.to_string(), "x^3 = 0");
        assert!("0 = 0".parse::<Identity>().is_err());
        assert!("x = ".parse::<Identity>().is_err());
    }

    #[test]
    fn evaluation_on_naturals_quotients() {
        let q4 = ReesQuotient::naturals_cut(4).unwrap();
        let id: Identity = "x^2 = x^3".parse().unwrap();
        let w = find_violation(q4.table(), &id).unwrap();
        assert_eq!(q4.table().label(w[0]), "1");
        assert!(satisfies(q4.table(), &"x*y = y*x".parse().unwrap()));
        assert!(satisfies(q4.table(), &"x^4 = 0".parse().unwrap()));
        assert!(!satisfies(q4.table(), &"x^3 = 0".parse().unwrap()));
    }

    #[test]
    fn separation() {
        let s = separating_index(&"x^2 = x^3".parse().unwrap()).unwrap();
        assert_eq!((s.r, s.assignment.clone()), (3, vec!["1".to_string()]));
        assert_eq!(separation_bound(&"x^2 = x^3".parse().unwrap()), 4);
        let s = separating_index(&"x^3 = 0".parse().unwrap()).unwrap();
        assert_eq!(s.r, 4);
        assert!(matches!(separating_index(&"x*y = y*x".parse().unwrap()), Err(Error::TrivialIdentity)));
    }

    #[test]
    fn nilpotency_characterizations() {
        for r in 2..8 {
            let q = ReesQuotient::naturals_cut(r).unwrap();
            assert_eq!(is_nilpotent(q.table()), Some(r as usize));
            assert!(nilpotent_by_powers(q.table()) && nilpotent_by_idempotents(q.table()));
        }
        let monoid = FiniteSemigroup::new(vec!["1".into(), "0".into()], 1, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(is_nilpotent(&monoid), None);
        assert!(!nilpotent_by_powers(&monoid) && !nilpotent_by_idempotents(&monoid));
    }
}
