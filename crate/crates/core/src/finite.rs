//! Finite semigroups with zero given by a multiplication table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite semigroup with a distinguished zero element.
///
/// Elements are addressed by index; labels are opaque strings. Associativity
/// and the absorbing zero are checked on construction. Commutativity is not
/// assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    zero: usize,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    pub fn new(labels: Vec<String>, zero: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("no elements".into()));
        }
        let mut seen = BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidTable(format!("duplicate label {dup:?}")));
        }
        if zero >= n {
            return Err(Error::InvalidTable("zero index out of range".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}x{n}")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if flat.iter().any(|&v| v >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let s = FiniteSemigroup {
            labels,
            zero,
            table: flat,
        };
        for x in 0..n {
            if s.mul(zero, x) != zero || s.mul(x, zero) != zero {
                return Err(Error::InvalidTable(format!(
                    "{} is not absorbing for {}",
                    s.labels[zero], s.labels[x]
                )));
            }
        }
        if let Some((a, b, c)) = s.associativity_failure() {
            return Err(Error::InvalidTable(format!(
                "not associative at ({}, {}, {})",
                s.labels[a], s.labels[b], s.labels[c]
            )));
        }
        Ok(s)
    }

    /// Builds a table from a product function; the caller vouches for
    /// associativity (checked in debug builds).
    pub(crate) fn from_fn(labels: Vec<String>, zero: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = labels.len();
        let table = (0..n * n).map(|k| mul(k / n, k % n)).collect();
        let s = FiniteSemigroup { labels, zero, table };
        debug_assert!(s.associativity_failure().is_none());
        s
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Indices of the non-zero elements, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != self.zero)
    }

    /// The first pair `(a, b)` with `ab ≠ ba`, if any.
    pub fn commutativity_failure(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_failure().is_none()
    }

    /// `x, x², x³, …` until the first repetition.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut seen = BTreeSet::from([x]);
        loop {
            let next = self.mul(*out.last().unwrap(), x);
            if !seen.insert(next) {
                return out;
            }
            out.push(next);
        }
    }

    /// The idempotent power `x^ω`.
    pub fn idempotent_power(&self, x: usize) -> usize {
        self.powers(x)
            .into_iter()
            .find(|&p| self.is_idempotent(p))
            .expect("every finite monogenic semigroup contains an idempotent")
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Relabels elements; `labels[i]` replaces the label of element `i`.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidTable("label count mismatch".into()));
        }
        let mut seen = BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidTable(format!("duplicate label {dup:?}")));
        }
        Ok(FiniteSemigroup {
            labels,
            zero: self.zero,
            table: self.table.clone(),
        })
    }

    /// Plain-text multiplication table, one row per element.
    pub fn render_table(&self) -> String {
        let shown: Vec<String> = self.labels.iter().map(|l| display_label(l)).collect();
        let width = shown.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
        let pad = |s: &str| format!("{:>width$}", s, width = width);
        let n = self.len();
        let mut out = String::new();
        out.push_str(&pad("⊕"));
        out.push_str(" ||");
        for l in &shown {
            out.push(' ');
            out.push_str(&pad(l));
            out.push_str(" |");
        }
        out.push('\n');
        out.push_str(&"=".repeat(width + 1));
        out.push_str("++");
        out.push_str(&format!("{}+", "=".repeat(width + 2)).repeat(n));
        out.push('\n');
        for a in 0..n {
            out.push_str(&pad(&shown[a]));
            out.push_str(" ||");
            for b in 0..n {
                out.push(' ');
                out.push_str(&pad(&shown[self.mul(a, b)]));
                out.push_str(" |");
            }
            out.push('\n');
        }
        out
    }
}

fn display_label(l: &str) -> String {
    l.replace("inf", "∞")
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Label(String),
    Index(usize),
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    elements: Vec<String>,
    zero: String,
    table: Vec<Vec<Cell>>,
}

impl Serialize for FiniteSemigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.len();
        TableJson {
            elements: self.labels.clone(),
            zero: self.labels[self.zero].clone(),
            table: (0..n)
                .map(|a| (0..n).map(|b| Cell::Label(self.labels[self.mul(a, b)].clone())).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableJson::deserialize(deserializer)?;
        let index: HashMap<&str, usize> = raw
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let zero = *index
            .get(raw.zero.as_str())
            .ok_or_else(|| D::Error::custom(format!("zero {:?} is not an element", raw.zero)))?;
        let mut table = Vec::with_capacity(raw.table.len());
        for row in &raw.table {
            let mut r = Vec::with_capacity(row.len());
            for cell in row {
                r.push(match cell {
                    Cell::Index(i) => *i,
                    Cell::Label(l) => *index
                        .get(l.as_str())
                        .ok_or_else(|| D::Error::custom(format!("unknown element {l:?} in table")))?,
                });
            }
            table.push(r);
        }
        FiniteSemigroup::new(raw.elements.clone(), zero, table).map_err(D::Error::custom)
    }
}
