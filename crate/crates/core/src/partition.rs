//! Partitions `I_1 : ... : I_K` of the subsystem index set.
//!
//! Internally indices are 0-based. Text forms (`"1,2:3"`) and `Display`
//! are 1-based. Blocks are kept sorted internally and ordered by their
//! smallest element, so two partitions with the same blocks compare equal
//! regardless of how they were written.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl Partition {
    /// Builds a partition of `{0..n}` from 0-based blocks.
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("no subsystems".into()));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {} out of range 1..={}",
                        i + 1,
                        n
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("index {} repeated", i + 1)));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "index {} not covered",
                missing + 1
            )));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { blocks, n })
    }

    /// All singletons `{1}{2}...{N}`.
    pub fn finest(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| vec![i]).collect(), n)
    }

    /// The single block `{1..N}`.
    pub fn single_block(n: usize) -> Result<Self> {
        Self::new(vec![(0..n).collect()], n)
    }

    /// Parses colon-separated blocks of comma-separated 1-based indices.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for raw in text.trim().split(':') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::InvalidPartition(format!("empty block in {text:?}")));
            }
            let mut block = Vec::new();
            for item in raw.split(',') {
                let item = item.trim();
                let idx: usize = item.parse().map_err(|_| {
                    Error::InvalidPartition(format!("cannot parse index {item:?} in {text:?}"))
                })?;
                if idx == 0 || idx > n {
                    return Err(Error::InvalidPartition(format!(
                        "index {idx} out of range 1..={n}"
                    )));
                }
                block.push(idx - 1);
            }
            blocks.push(block);
        }
        Self::new(blocks, n)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> Result<&[usize]> {
        self.blocks
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: j,
                blocks: self.blocks.len(),
            })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_subsystems(&self) -> usize {
        self.n
    }

    /// Block index owning each subsystem.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (j, block) in self.blocks.iter().enumerate() {
            for &i in block {
                owner[i] = j;
            }
        }
        owner
    }

    /// Subsystem order that makes every block a contiguous ascending run.
    pub fn canonical_order(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// True when blocks are already contiguous runs in ascending order.
    pub fn is_canonical(&self) -> bool {
        self.canonical_order()
            .iter()
            .enumerate()
            .all(|(k, &i)| k == i)
    }

    /// True iff every block of `self` lies inside some block of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> Result<bool> {
        if self.n != coarser.n {
            return Err(Error::DimensionMismatch(format!(
                "partitions over {} and {} subsystems",
                self.n, coarser.n
            )));
        }
        let owner = coarser.block_of();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&i| owner[i] == owner[b[0]])))
    }
}

pub fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    Partition::parse(text, n)
}

pub fn is_refinement(p: &Partition, q: &Partition) -> Result<bool> {
    p.is_refinement_of(q)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, block) in self.blocks.iter().enumerate() {
            if j > 0 {
                f.write_str(":")?;
            }
            for (k, i) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    /// N is inferred as the largest index present; coverage is then validated.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let n = text
            .split([':', ','])
            .filter_map(|t| t.trim().parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Partition::parse(&text, n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_finest_and_grouped() {
        let p = Partition::parse("1:2:3", 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1], vec![2]]);
        let q = Partition::parse("1,2:3", 3).unwrap();
        assert_eq!(q.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(q.to_string(), "1,2:3");
    }

    #[test]
    fn normalizes_block_order() {
        let p = Partition::parse("3:2,1", 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2]]);
        let q = Partition::parse("2:1,3", 3).unwrap();
        assert_eq!(q.blocks(), &[vec![0, 2], vec![1]]);
        assert!(!q.is_canonical());
        assert_eq!(q.canonical_order(), vec![0, 2, 1]);
    }

    #[test]
    fn rejects_bad_partitions() {
        for (text, n) in [
            ("1:1,2", 2),
            ("1:3", 3),
            ("1:4", 3),
            ("0:1", 2),
            ("1::2", 2),
            ("1,x:2", 2),
            ("", 1),
        ] {
            assert!(
                matches!(Partition::parse(text, n), Err(Error::InvalidPartition(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn refinement_examples() {
        let finest = Partition::parse("1:2:3", 3).unwrap();
        let a = Partition::parse("1,2:3", 3).unwrap();
        let b = Partition::parse("1:2,3", 3).unwrap();
        assert!(finest.is_refinement_of(&a).unwrap());
        assert!(!a.is_refinement_of(&b).unwrap());
        assert!(a.is_refinement_of(&a).unwrap());
        assert!(a
            .is_refinement_of(&Partition::single_block(3).unwrap())
            .unwrap());
        let other = Partition::finest(4).unwrap();
        assert!(matches!(
            finest.is_refinement_of(&other),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let p = Partition::parse("1,3:2", 3).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "\"1,3:2\"");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
