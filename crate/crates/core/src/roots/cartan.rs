use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical Cartan families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::D => 2,
        }
    }
}

/// A simple factor such as `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::InvalidCartanData(format!(
                "{family:?}{rank}: rank must be at least {}",
                family.min_rank()
            )));
        }
        Ok(SimpleType { family, rank })
    }

    /// Cartan matrix `a_ij = <α_i^∨, α_j>` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain_end = match self.family {
            Family::D => r.saturating_sub(1),
            _ => r,
        };
        for i in 1..chain_end {
            a[i - 1][i] = -1;
            a[i][i - 1] = -1;
        }
        match self.family {
            Family::A => {}
            // α_r = e_r is short
            Family::B => a[r - 1][r - 2] = -2,
            // α_r = 2e_r is long
            Family::C => a[r - 2][r - 1] = -2,
            // α_r = e_{r-1} + e_r hangs off α_{r-2}
            Family::D => {
                if r >= 3 {
                    a[r - 1][r - 3] = -1;
                    a[r - 3][r - 1] = -1;
                }
            }
        }
        a
    }

    pub fn root_count(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1),
            Family::B | Family::C => 2 * r * r,
            Family::D => 2 * r * (r - 1),
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let r = self.rank as u64;
        let fact: u64 = (1..=r).product();
        match self.family {
            Family::A => fact * (r + 1),
            Family::B | Family::C => (1u64 << r) * fact,
            Family::D => (1u64 << (r - 1)) * fact,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Either a product of classical types or an explicit Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    Classical(Vec<SimpleType>),
    Explicit(Vec<Vec<i64>>),
}

impl CartanType {
    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(CartanType::Classical(vec![SimpleType::new(family, rank)?]))
    }

    pub fn rank(&self) -> usize {
        match self {
            CartanType::Classical(parts) => parts.iter().map(|p| p.rank).sum(),
            CartanType::Explicit(m) => m.len(),
        }
    }

    /// Block-diagonal Cartan matrix of the product.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        match self {
            CartanType::Explicit(m) => m.clone(),
            CartanType::Classical(parts) => {
                let r = self.rank();
                let mut a = vec![vec![0i64; r]; r];
                let mut offset = 0;
                for part in parts {
                    let block = part.cartan_matrix();
                    for (i, row) in block.iter().enumerate() {
                        for (j, &v) in row.iter().enumerate() {
                            a[offset + i][offset + j] = v;
                        }
                    }
                    offset += part.rank;
                }
                a
            }
        }
    }

    /// Closed-form root count, when the type is classical.
    pub fn expected_root_count(&self) -> Option<usize> {
        match self {
            CartanType::Classical(parts) => Some(parts.iter().map(SimpleType::root_count).sum()),
            CartanType::Explicit(_) => None,
        }
    }

    /// Closed-form Weyl group order, when the type is classical.
    pub fn expected_weyl_order(&self) -> Option<u64> {
        match self {
            CartanType::Classical(parts) => Some(parts.iter().map(SimpleType::weyl_order).product()),
            CartanType::Explicit(_) => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::Classical(parts) => {
                let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", names.join("x"))
            }
            CartanType::Explicit(m) => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "{}", rows.join(";"))
            }
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `"A2"`, `"A1xA1"`, `"B3xA1"`, or an explicit matrix with rows
    /// separated by `;` and entries by `,`, e.g. `"2,-1;-1,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') || s.contains(';') || s.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
            let rows = s
                .trim_matches(|c| c == '[' || c == ']')
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|e| {
                            e.trim()
                                .parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad Cartan matrix entry {e:?}")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(CartanType::Explicit(rows));
        }
        let parts = s
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let family = match chars.next() {
                    Some('A') | Some('a') => Family::A,
                    Some('B') | Some('b') => Family::B,
                    Some('C') | Some('c') => Family::C,
                    Some('D') | Some('d') => Family::D,
                    _ => return Err(Error::Parse(format!("unknown Cartan type {part:?}"))),
                };
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
                SimpleType::new(family, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CartanType::Classical(parts))
    }
}
