//! Perversity arithmetic.
//!
//! A perversity for an `l`-dimensional space is a sequence `(p_2, ..., p_l)`
//! with `p_2 = 0` and steps in `{0, 1}`. Spaces of dimension 0 or 1 have no
//! codimension-2 strata, so their perversity is the empty sequence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named perversities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PerversityKind {
    Zero,
    Top,
    LowerMiddle,
    UpperMiddle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perversity {
    ambient_dim: usize,
    values: Vec<i32>,
}

impl Perversity {
    /// Validates `values = (p_2, ..., p_l)`.
    ///
    /// For `l < 2` only the empty sequence is accepted.
    pub fn new(l: usize, values: &[i32]) -> Result<Self> {
        let expected = l.saturating_sub(1);
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        if let Some(&first) = values.first() {
            if first != 0 {
                return Err(Error::BaseViolation(first));
            }
        }
        for (i, w) in values.windows(2).enumerate() {
            let step = w[1] - w[0];
            if step != 0 && step != 1 {
                return Err(Error::GrowthViolation { k: i + 2 });
            }
        }
        Ok(Perversity { ambient_dim: l, values: values.to_vec() })
    }

    /// The unique perversity of a space of dimension `l < 2`.
    pub fn vacuous(l: usize) -> Self {
        assert!(l < 2, "vacuous perversities only exist below dimension 2");
        Perversity { ambient_dim: l, values: Vec::new() }
    }

    pub fn standard(kind: PerversityKind, l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::AmbientTooSmall(l));
        }
        let values = (2..=l as i32)
            .map(|k| match kind {
                PerversityKind::Zero => 0,
                PerversityKind::Top => k - 2,
                PerversityKind::LowerMiddle => (k - 2) / 2,
                PerversityKind::UpperMiddle => (k - 1) / 2,
            })
            .collect();
        Ok(Perversity { ambient_dim: l, values })
    }

    pub fn zero(l: usize) -> Self {
        if l < 2 {
            Self::vacuous(l)
        } else {
            Self::standard(PerversityKind::Zero, l).unwrap()
        }
    }

    pub fn top(l: usize) -> Self {
        if l < 2 {
            Self::vacuous(l)
        } else {
            Self::standard(PerversityKind::Top, l).unwrap()
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// `p_k` for `2 <= k <= l`.
    pub fn get(&self, k: usize) -> i32 {
        assert!(k >= 2 && k <= self.ambient_dim, "p_{k} undefined for l = {}", self.ambient_dim);
        self.values[k - 2]
    }

    /// `q` with `p + q = t`.
    pub fn complement(&self) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &p)| i as i32 - p)
            .collect();
        Perversity { ambient_dim: self.ambient_dim, values }
    }

    /// The perversity governing chains on the boundary: `p̌_j = p_{j+1} - p_3`.
    pub fn boundary(&self) -> Result<Self> {
        let l = self.ambient_dim;
        if l < 3 {
            return Err(Error::AmbientTooSmall(l));
        }
        let p3 = self.get(3);
        let values: Vec<i32> = (2..l).map(|j| self.get(j + 1) - p3).collect();
        Perversity::new(l - 1, &values)
    }

    /// Boundary perversity, extended so that 2-dimensional spaces get the
    /// vacuous perversity on their 1-dimensional boundary.
    pub(crate) fn boundary_or_vacuous(&self) -> Self {
        if self.ambient_dim < 3 {
            Perversity::vacuous(self.ambient_dim.saturating_sub(1))
        } else {
            self.boundary().expect("boundary perversity of a valid perversity is valid")
        }
    }

    /// `(p_2, ..., p_{l'})`.
    pub fn truncate(&self, target: usize) -> Result<Self> {
        if target > self.ambient_dim {
            return Err(Error::RangeError { ambient: self.ambient_dim, target });
        }
        if target < 2 {
            return Ok(Perversity::vacuous(target));
        }
        Ok(Perversity { ambient_dim: target, values: self.values[..target - 1].to_vec() })
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Perversity) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Every perversity of ambient dimension `l`, in lexicographic order.
    pub fn enumerate(l: usize) -> Vec<Perversity> {
        if l < 2 {
            return vec![Perversity::vacuous(l)];
        }
        let mut out = Vec::new();
        let mut current = vec![0];
        fn rec(l: usize, current: &mut Vec<i32>, out: &mut Vec<Perversity>) {
            if current.len() == l - 1 {
                out.push(Perversity { ambient_dim: l, values: current.clone() });
                return;
            }
            let last = *current.last().unwrap();
            for step in 0..=1 {
                current.push(last + step);
                rec(l, current, out);
                current.pop();
            }
        }
        rec(l, &mut current, &mut out);
        out
    }

    /// Parses `0`, `t`, `m`, `n`, or an explicit list `d2,d3,...,dl`,
    /// optionally in parentheses. `-` names the vacuous perversity.
    pub fn parse(s: &str, l: usize) -> Result<Self> {
        let s = s.trim();
        if s == "-" && l < 2 {
            return Ok(Perversity::vacuous(l));
        }
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let kind = match s {
            "0" => Some(PerversityKind::Zero),
            "t" => Some(PerversityKind::Top),
            "m" => Some(PerversityKind::LowerMiddle),
            "n" => Some(PerversityKind::UpperMiddle),
            _ => None,
        };
        if let Some(kind) = kind {
            if l < 2 {
                return Ok(Perversity::vacuous(l));
            }
            return Perversity::standard(kind, l);
        }
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::PerversityParse(s.to_string()))?;
        Perversity::new(l, &values)
    }

    /// Short label: `0`, `t`, `m`, `n` where unambiguous, otherwise the list.
    pub fn label(&self) -> String {
        if self.ambient_dim < 2 {
            return "-".to_string();
        }
        let l = self.ambient_dim;
        for (kind, tag) in [
            (PerversityKind::Zero, "0"),
            (PerversityKind::Top, "t"),
            (PerversityKind::LowerMiddle, "m"),
            (PerversityKind::UpperMiddle, "n"),
        ] {
            if *self == Perversity::standard(kind, l).unwrap() {
                return tag.to_string();
            }
        }
        self.to_string()
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: usize, v: &[i32]) -> Perversity {
        Perversity::new(l, v).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(p(4, &[0, 1, 2]), Perversity::top(4));
        assert_eq!(p(2, &[0]), Perversity::zero(2));
        assert_eq!(Perversity::new(4, &[0, 0, 2]), Err(Error::GrowthViolation { k: 3 }));
        assert_eq!(Perversity::new(3, &[1, 1]), Err(Error::BaseViolation(1)));
        assert!(matches!(Perversity::new(4, &[0, 1]), Err(Error::LengthMismatch { .. })));
        assert_eq!(Perversity::new(1, &[]).unwrap(), Perversity::vacuous(1));
    }

    #[test]
    fn named() {
        use PerversityKind::*;
        assert_eq!(Perversity::standard(Top, 5).unwrap().values(), &[0, 1, 2, 3]);
        assert_eq!(Perversity::standard(LowerMiddle, 5).unwrap().values(), &[0, 0, 1, 1]);
        assert_eq!(Perversity::standard(UpperMiddle, 5).unwrap().values(), &[0, 1, 1, 2]);
        assert_eq!(Perversity::standard(Zero, 1), Err(Error::AmbientTooSmall(1)));
    }

    #[test]
    fn complements() {
        use PerversityKind::*;
        assert_eq!(Perversity::zero(4).complement(), Perversity::top(4));
        assert_eq!(p(4, &[0, 0, 1]).complement(), p(4, &[0, 1, 1]));
        let m5 = Perversity::standard(LowerMiddle, 5).unwrap();
        assert_eq!(m5.complement(), Perversity::standard(UpperMiddle, 5).unwrap());
    }

    #[test]
    fn boundary_perversities() {
        use PerversityKind::*;
        assert_eq!(Perversity::top(4).boundary().unwrap(), Perversity::top(3));
        assert_eq!(Perversity::zero(4).boundary().unwrap(), Perversity::zero(3));
        let n5 = Perversity::standard(UpperMiddle, 5).unwrap();
        assert_eq!(n5.boundary().unwrap(), Perversity::standard(LowerMiddle, 4).unwrap());
        assert_eq!(Perversity::zero(2).boundary(), Err(Error::AmbientTooSmall(2)));
    }

    #[test]
    fn truncation() {
        assert_eq!(Perversity::top(5).truncate(4).unwrap(), Perversity::top(4));
        assert_eq!(p(5, &[0, 1, 1, 2]).truncate(3).unwrap(), p(3, &[0, 1]));
        assert_eq!(Perversity::top(5).truncate(5).unwrap(), Perversity::top(5));
        assert!(matches!(Perversity::top(3).truncate(4), Err(Error::RangeError { .. })));
    }

    #[test]
    fn parsing() {
        assert_eq!(Perversity::parse("t", 3).unwrap(), Perversity::top(3));
        assert_eq!(Perversity::parse("0,1,1,2", 5).unwrap(), p(5, &[0, 1, 1, 2]));
        assert!(Perversity::parse("x", 3).is_err());
        assert_eq!(p(5, &[0, 1, 1, 2]).label(), "n");
        assert_eq!(p(4, &[0, 0, 1]).label(), "m");
        assert_eq!(p(5, &[0, 0, 0, 1]).label(), "(0,0,0,1)");
    }

    #[test]
    fn enumeration_counts() {
        // 2^(l-2) sequences for l >= 2
        for l in 2..=10 {
            assert_eq!(Perversity::enumerate(l).len(), 1 << (l - 2));
        }
    }
}
