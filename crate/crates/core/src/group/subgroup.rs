use std::fmt;
use std::io::{self, BufRead, Write};

use fixedbitset::FixedBitSet;

use super::{Group, GroupRepr};
use crate::error::{Error, Result};

/// A subgroup of an enumerated group: a member bitmask over the parent's index
/// space, the sorted member list, and a generating witness.
#[derive(Clone)]
pub struct Subgroup {
    parent_order: usize,
    mask: FixedBitSet,
    members: Vec<u32>,
    witness: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.members.len())
            .field("parent_order", &self.parent_order)
            .field("witness", &self.witness)
            .finish()
    }
}

impl Subgroup {
    /// `members` must be sorted; `witness` must generate them. Neither is
    /// checked here.
    pub(crate) fn from_parts(parent_order: usize, members: Vec<u32>, witness: Vec<u32>) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent_order);
        for &m in &members {
            mask.insert(m as usize);
        }
        Subgroup {
            parent_order,
            mask,
            members,
            witness,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    #[inline]
    pub fn contains(&self, g: u32) -> bool {
        self.mask.contains(g as usize)
    }

    /// Members in ascending index order.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn witness(&self) -> &[u32] {
        &self.witness
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent_order == other.parent_order && self.mask.is_subset(&other.mask)
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.mask.intersection(&other.mask).count()
    }

    /// Writes the sorted member indices, one header line then one index per
    /// line, referencing the parent's element ordering.
    pub fn write_members<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "subgroup parent_order={} order={}", self.parent_order, self.order())?;
        for m in &self.members {
            writeln!(out, "{m}")?;
        }
        Ok(())
    }

    /// Reads a member list written by [`Subgroup::write_members`] and rebuilds
    /// the subgroup inside `group`, checking closure.
    pub fn read_members<R: GroupRepr, B: BufRead>(group: &Group<R>, input: B) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CacheFormat("empty subgroup file".into()))??;
        let field = |key: &str| -> Result<usize> {
            header
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::CacheFormat(format!("missing {key} in subgroup header")))
        };
        let parent_order = field("parent_order=")?;
        let order = field("order=")?;
        if parent_order != group.order() {
            return Err(Error::CacheMismatch(format!(
                "subgroup refers to a group of order {parent_order}, not {}",
                group.order()
            )));
        }
        let mut members = Vec::with_capacity(order);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let m: u32 = line
                .trim()
                .parse()
                .map_err(|_| Error::CacheFormat(format!("bad member index {line:?}")))?;
            members.push(m);
        }
        if members.len() != order || members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::CacheFormat("member list is not sorted or has the wrong length".into()));
        }
        let sub = group.generated_subgroup(&members)?;
        if sub.members() != &members[..] {
            return Err(Error::CacheFormat("member list is not closed under multiplication".into()));
        }
        Ok(group.subgroup_from_members(members))
    }
}

/// Incremental closure: holds a subgroup and extends it one generator at a
/// time.
pub struct SubgroupBuilder<'g, R: GroupRepr> {
    group: &'g Group<R>,
    mask: FixedBitSet,
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl<'g, R: GroupRepr> SubgroupBuilder<'g, R> {
    pub fn new(group: &'g Group<R>) -> Self {
        let mut mask = FixedBitSet::with_capacity(group.order());
        mask.insert(group.identity() as usize);
        SubgroupBuilder {
            group,
            mask,
            members: vec![group.identity()],
            gens: Vec::new(),
        }
    }

    pub fn from_subgroup(group: &'g Group<R>, sub: &Subgroup) -> Self {
        SubgroupBuilder {
            group,
            mask: sub.mask.clone(),
            members: sub.members.clone(),
            gens: sub.witness.clone(),
        }
    }

    pub fn contains(&self, g: u32) -> bool {
        self.mask.contains(g as usize)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    /// Adds `g` and closes. Returns `false` if `g` was already a member.
    pub fn add_generator(&mut self, g: u32) -> bool {
        if self.contains(g) {
            return false;
        }
        self.gens.push(g);
        let group = self.group;
        let mut frontier = Vec::new();
        // The current set is closed under the old generators, so only
        // products with `g` can leave it at first.
        for i in 0..self.members.len() {
            let x = group.mul(self.members[i], g);
            if !self.mask.put(x as usize) {
                self.members.push(x);
                frontier.push(x);
            }
        }
        while let Some(x) = frontier.pop() {
            for gi in 0..self.gens.len() {
                let y = group.mul(x, self.gens[gi]);
                if !self.mask.put(y as usize) {
                    self.members.push(y);
                    frontier.push(y);
                }
            }
        }
        true
    }

    pub fn finish(mut self) -> Subgroup {
        self.members.sort_unstable();
        Subgroup {
            parent_order: self.group.order(),
            mask: self.mask,
            members: self.members,
            witness: self.gens,
        }
    }
}
