//! Proper ideals `I = G + S⁰` of a numerical semigroup `S`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerical::NumericalSemigroup;

/// An ideal stored through its minimal ideal generating system. Membership
/// is computed on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct Ideal {
    ambient: NumericalSemigroup,
    min_ideal_generators: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    ambient: NumericalSemigroup,
    ideal_generators: Vec<u64>,
}

impl TryFrom<IdealJson> for Ideal {
    type Error = Error;

    fn try_from(raw: IdealJson) -> Result<Self> {
        Ideal::from_generators(&raw.ambient, &raw.ideal_generators)
    }
}

impl From<Ideal> for IdealJson {
    fn from(i: Ideal) -> Self {
        IdealJson {
            ambient: i.ambient,
            ideal_generators: i.min_ideal_generators,
        }
    }
}

impl Ideal {
    /// `gens + S⁰`, with `gens` reduced to the minimal ideal generating system.
    pub fn from_generators(ambient: &NumericalSemigroup, gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&g) = gens.iter().find(|&&g| !ambient.contains(g)) {
            return Err(Error::NotInAmbient(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut minimal: Vec<u64> = Vec::with_capacity(sorted.len());
        for g in sorted {
            if !minimal.iter().any(|&h| ambient.contains(g - h)) {
                minimal.push(g);
            }
        }
        let ideal = Ideal {
            ambient: ambient.clone(),
            min_ideal_generators: minimal,
        };
        // I = S exactly when every minimal generator of S lies in I.
        if ambient.min_generators().iter().all(|&x| ideal.contains(x)) {
            return Err(Error::ImproperIdeal);
        }
        Ok(ideal)
    }

    /// `I_k(S) = {x ∈ S : x ≥ k}`.
    pub fn cutting(ambient: &NumericalSemigroup, k: u64) -> Result<Self> {
        if k <= ambient.multiplicity() {
            return Err(Error::ImproperIdeal);
        }
        // The least member of I_k in each residue class mod m lies below k + c + m.
        let bound = k + ambient.conductor() + ambient.multiplicity();
        let candidates: Vec<u64> = (k..bound).filter(|&x| ambient.contains(x)).collect();
        Ideal::from_generators(ambient, &candidates)
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn min_ideal_generators(&self) -> &[u64] {
        &self.min_ideal_generators
    }

    pub fn contains(&self, x: u64) -> bool {
        self.min_ideal_generators
            .iter()
            .take_while(|&&g| g <= x)
            .any(|&g| self.ambient.contains_with_zero(x - g))
    }

    /// Every integer from this point on belongs to the ideal.
    pub fn tail_start(&self) -> u64 {
        self.min_ideal_generators[0] + self.ambient.conductor()
    }

    /// `S \ I`, ascending. Never empty.
    pub fn complement(&self) -> Vec<u64> {
        self.ambient
            .elements_up_to(self.tail_start())
            .filter(|&x| !self.contains(x))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn example_ideal_of_three_five() {
        let s = ns(&[3, 5]);
        let i = Ideal::from_generators(&s, &[6]).unwrap();
        let members: Vec<u64> = (1..=16).filter(|&x| i.contains(x)).collect();
        assert_eq!(members, vec![6, 9, 11, 12, 14, 15, 16]);
        assert!(!i.contains(8));
        assert!(i.contains(6));
        assert!(!i.contains(13));
        assert_eq!(i.complement(), vec![3, 5, 8, 10, 13]);
    }

    #[test]
    fn generators_are_minimized() {
        let s = ns(&[2, 5]);
        let i = Ideal::from_generators(&s, &[6, 7, 8, 9, 12]).unwrap();
        assert_eq!(i.min_ideal_generators(), &[6, 7]);
        assert!((6..30).all(|x| i.contains(x)));
        assert_eq!(i.complement(), vec![2, 4, 5]);
    }

    #[test]
    fn improper_and_foreign_generators() {
        let s = ns(&[2, 3]);
        assert!(matches!(Ideal::from_generators(&s, &[2, 3]), Err(Error::ImproperIdeal)));
        assert!(matches!(Ideal::from_generators(&ns(&[3, 5]), &[7]), Err(Error::NotInAmbient(7))));
        assert!(matches!(Ideal::cutting(&ns(&[3, 5]), 3), Err(Error::ImproperIdeal)));
    }

    #[test]
    fn cutting_ideals() {
        assert_eq!(Ideal::cutting(&ns(&[3, 5]), 10).unwrap().min_ideal_generators(), &[10, 11, 12]);
        assert_eq!(Ideal::cutting(&ns(&[1]), 7).unwrap().min_ideal_generators(), &[7]);
        assert_eq!(
            Ideal::cutting(&ns(&[4, 5]), 12).unwrap().min_ideal_generators(),
            &[12, 13, 14, 15]
        );
        // Below the conductor the generating system can be irregular.
        assert_eq!(Ideal::cutting(&ns(&[4, 5]), 5).unwrap().min_ideal_generators(), &[5, 8]);
    }

    #[test]
    fn json_shape() {
        let i = Ideal::from_generators(&ns(&[3, 5]), &[6]).unwrap();
        let v = serde_json::to_value(&i).unwrap();
        assert_eq!(v["ideal_generators"], serde_json::json!([6]));
        assert_eq!(v["ambient"]["conductor"], 8);
        let back: Ideal = serde_json::from_value(v).unwrap();
        assert_eq!(back, i);
    }
}
