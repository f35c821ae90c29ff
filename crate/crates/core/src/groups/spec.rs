use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A group from the shipped catalog of irreducible well-generated
/// 2-reflection groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// Symmetric group on `n + 1` letters, rank `n ≥ 1`.
    A(u32),
    /// Hyperoctahedral group, rank `n ≥ 2`.
    B(u32),
    /// Even-signed permutations `G(2,2,n)`, rank `n ≥ 4`.
    D(u32),
    /// Dihedral group of order `2e`, `e ≥ 3`.
    I2(u32),
    /// Monomial group `G(e,e,n)`, `e ≥ 2`, `n ≥ 3`.
    G { e: u32, n: u32 },
    H3,
    F4,
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(format!("{self}: {msg}")));
        match *self {
            GroupSpec::A(n) if n < 1 => bad("rank must be at least 1"),
            GroupSpec::B(n) if n < 2 => bad("rank must be at least 2"),
            GroupSpec::D(n) if n < 4 => bad("rank must be at least 4"),
            GroupSpec::I2(e) if e < 3 => bad("I2(e) needs e >= 3 (I2(2) is reducible)"),
            GroupSpec::G { e, n } if e < 2 || n < 3 => {
                bad("G(e,e,n) needs e >= 2 and n >= 3 (use I2 for rank 2)")
            }
            _ => Ok(()),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupSpec::A(n) | GroupSpec::B(n) | GroupSpec::D(n) => n as usize,
            GroupSpec::I2(_) => 2,
            GroupSpec::G { n, .. } => n as usize,
            GroupSpec::H3 => 3,
            GroupSpec::F4 => 4,
        }
    }

    /// Invariant degrees, sorted increasingly.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = match *self {
            GroupSpec::A(n) => (2..=n + 1).collect(),
            GroupSpec::B(n) => (1..=n).map(|i| 2 * i).collect(),
            GroupSpec::D(n) => (1..n).map(|i| 2 * i).chain([n]).collect(),
            GroupSpec::I2(e) => vec![2, e],
            GroupSpec::G { e, n } => (1..n).map(|i| i * e).chain([n]).collect(),
            GroupSpec::H3 => vec![2, 6, 10],
            GroupSpec::F4 => vec![2, 6, 8, 12],
        };
        d.sort_unstable();
        d
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().last().expect("rank is positive")
    }

    /// `∏ d_i`, the group order.
    pub fn order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    /// `Σ (d_i - 1)`, the number of reflections of a 2-reflection group.
    pub fn reflection_count(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64 - 1).sum()
    }

    /// Conductor of the cyclotomic field holding the catalog matrices.
    pub fn conductor(&self) -> u32 {
        match *self {
            GroupSpec::A(_) | GroupSpec::B(_) | GroupSpec::F4 => 1,
            // G(2,2,n); Q(ζ_2) = Q
            GroupSpec::D(_) => 2,
            GroupSpec::I2(e) | GroupSpec::G { e, .. } => e,
            GroupSpec::H3 => 5,
        }
    }

    /// Groups checked by default.
    pub fn default_catalog() -> Vec<GroupSpec> {
        let mut out: Vec<GroupSpec> = (1..=5).map(GroupSpec::A).collect();
        out.extend((2..=4).map(GroupSpec::B));
        out.push(GroupSpec::D(4));
        out.extend((3..=12).map(GroupSpec::I2));
        out.push(GroupSpec::G { e: 3, n: 3 });
        out.push(GroupSpec::G { e: 4, n: 3 });
        out.push(GroupSpec::G { e: 3, n: 4 });
        out.push(GroupSpec::H3);
        out.push(GroupSpec::F4);
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::A(n) => write!(f, "A{n}"),
            GroupSpec::B(n) => write!(f, "B{n}"),
            GroupSpec::D(n) => write!(f, "D{n}"),
            GroupSpec::I2(e) => write!(f, "I2:{e}"),
            GroupSpec::G { e, n } => write!(f, "G:{e},{e},{n}"),
            GroupSpec::H3 => f.write_str("H3"),
            GroupSpec::F4 => f.write_str("F4"),
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `A3`, `B4`, `D4`, `I2:7`, `G:3,3,4`, `H3`, `F4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = |why: &str| Error::InvalidSpec(format!("'{s}': {why}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| err("expected a positive integer"));
        let spec = match s {
            "H3" => GroupSpec::H3,
            "F4" => GroupSpec::F4,
            _ if s.starts_with("I2:") => GroupSpec::I2(num(&s[3..])?),
            _ if s.starts_with("G:") => {
                let parts: Vec<&str> = s[2..].split(',').collect();
                let [a, b, n] = parts[..] else {
                    return Err(err("expected G:e,e,n"));
                };
                let (a, b, n) = (num(a)?, num(b)?, num(n)?);
                if a != b {
                    return Err(err("only G(e,e,n) is well-generated and in the catalog"));
                }
                GroupSpec::G { e: a, n }
            }
            _ if s.len() >= 2 => {
                let (head, tail) = s.split_at(1);
                let n = num(tail)?;
                match head {
                    "A" => GroupSpec::A(n),
                    "B" => GroupSpec::B(n),
                    "D" => GroupSpec::D(n),
                    _ => return Err(err("unknown family")),
                }
            }
            _ => return Err(err("unknown family")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["A3", "B4", "D4", "I2:7", "G:3,3,4", "H3", "F4"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn rejects_reducible_and_badly_generated() {
        for s in ["I2:2", "G:2,2,2", "G:3,1,3", "A0", "D3", "E6", "", "B", "G:3,3"] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn degrees_and_orders() {
        assert_eq!(GroupSpec::A(2).degrees(), vec![2, 3]);
        assert_eq!(GroupSpec::B(2).degrees(), vec![2, 4]);
        assert_eq!(GroupSpec::D(4).degrees(), vec![2, 4, 4, 6]);
        assert_eq!(GroupSpec::G { e: 3, n: 3 }.degrees(), vec![3, 3, 6]);
        assert_eq!(GroupSpec::G { e: 3, n: 3 }.order(), 54);
        assert_eq!(GroupSpec::G { e: 3, n: 4 }.order(), 648);
        assert_eq!(GroupSpec::H3.order(), 120);
        assert_eq!(GroupSpec::F4.order(), 1152);
        assert_eq!(GroupSpec::F4.reflection_count(), 24);
        assert_eq!(GroupSpec::I2(7).coxeter_number(), 7);
    }
}
