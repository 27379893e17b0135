use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One isotypic component: `mult` copies of `V_hw`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub hw: i64,
    pub mult: usize,
}

/// Multiset of irreducibles, sorted by descending highest weight, with
/// positive multiplicities only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decomposition {
    components: Vec<Component>,
}

impl Decomposition {
    pub fn new(components: impl IntoIterator<Item = Component>) -> Self {
        let mut acc: BTreeMap<i64, usize> = BTreeMap::new();
        for c in components {
            assert!(c.hw >= 0, "negative highest weight");
            *acc.entry(c.hw).or_default() += c.mult;
        }
        Decomposition {
            components: acc
                .into_iter()
                .rev()
                .filter(|&(_, m)| m > 0)
                .map(|(hw, mult)| Component { hw, mult })
                .collect(),
        }
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        Self::new(pairs.iter().map(|&(hw, mult)| Component { hw, mult }))
    }

    /// Multiplicity-free sum of the given highest weights.
    pub fn from_weights(hws: impl IntoIterator<Item = i64>) -> Self {
        Self::new(hws.into_iter().map(|hw| Component { hw, mult: 1 }))
    }

    pub fn zero() -> Self {
        Decomposition::default()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.mult * (c.hw as usize + 1))
            .sum()
    }

    pub fn multiplicity(&self, hw: i64) -> usize {
        self.components
            .iter()
            .find(|c| c.hw == hw)
            .map_or(0, |c| c.mult)
    }

    /// Weight multiplicities of the sum of the components.
    pub fn character(&self) -> BTreeMap<i64, usize> {
        let mut ch = BTreeMap::new();
        for c in &self.components {
            for k in 0..=c.hw {
                *ch.entry(c.hw - 2 * k).or_default() += c.mult;
            }
        }
        ch
    }

    /// Inverse of [`character`](Self::character); `None` if the weights do
    /// not come from a finite-dimensional module.
    pub fn from_character(ch: &BTreeMap<i64, usize>) -> Option<Self> {
        let mut comps = Vec::new();
        for (&w, &d) in ch.range(0..) {
            let above = ch.get(&(w + 2)).copied().unwrap_or(0);
            if above > d || ch.get(&-w).copied() != Some(d) {
                return None;
            }
            comps.push(Component { hw: w, mult: d - above });
        }
        Some(Self::new(comps))
    }

    /// Tensor product of two decompositions by Clebsch–Gordan.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut comps = Vec::new();
        for a in &self.components {
            for b in &other.components {
                let lo = (a.hw - b.hw).abs();
                let mut hw = a.hw + b.hw;
                while hw >= lo {
                    comps.push(Component { hw, mult: a.mult * b.mult });
                    hw -= 2;
                }
            }
        }
        Self::new(comps)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                if c.mult == 1 {
                    format!("V{}", c.hw)
                } else {
                    format!("{}V{}", c.mult, c.hw)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let d = Decomposition::from_pairs(&[(1, 2), (3, 1)]);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"[{"hw":3,"mult":1},{"hw":1,"mult":2}]"#
        );
        assert_eq!(d.to_string(), "V3 + 2V1");
        assert_eq!(d.dim(), 8);
        assert_eq!(Decomposition::zero().to_string(), "0");
    }

    #[test]
    fn character_round_trip() {
        let d = Decomposition::from_pairs(&[(6, 1), (4, 2), (0, 3)]);
        assert_eq!(Decomposition::from_character(&d.character()), Some(d));
    }
}
