use fixedbitset::FixedBitSet;

use super::{Group, GroupRepr, Subgroup, SubgroupBuilder};
use crate::error::{Error, Result};

/// Largest group order for which the Thompson search is attempted.
pub const THOMPSON_LIMIT: usize = 1 << 17;

#[derive(Clone, Debug)]
pub struct ElementaryAbelianReport {
    /// The p-rank.
    pub rank: u32,
    /// Every elementary abelian subgroup of rank `rank`, in discovery order.
    pub maximal_subgroups: Vec<Subgroup>,
    /// Search nodes visited, for diagnostics.
    pub nodes: u64,
}

struct Search<'g, R: GroupRepr> {
    group: &'g Group<R>,
    p: u64,
    /// Candidate id of the cyclic subgroup containing each element, or MAX.
    id_of: Vec<u32>,
    /// Representative element of each candidate id.
    reps: Vec<u32>,
    adjacency: Vec<FixedBitSet>,
    best: u32,
    found: Vec<(Vec<u32>, Vec<u32>)>,
    nodes: u64,
}

impl<R: GroupRepr> Group<R> {
    /// `J(G)` together with every maximal-rank elementary abelian subgroup.
    ///
    /// Every elementary abelian subgroup of maximal rank contains
    /// `E0 = Omega_1(Z(G))`, so the search runs over extensions of `E0` by
    /// cyclic subgroups of order `p`. A subgroup is reached only along its
    /// canonical basis: each added cyclic subgroup must have the smallest id
    /// among the cyclic subgroups it brings in.
    pub fn thompson(&self) -> Result<(Subgroup, ElementaryAbelianReport)> {
        if self.order() > THOMPSON_LIMIT {
            return Err(Error::budget(
                format!("Thompson subgroup of {}", self.label()),
                self.order() as u128,
                THOMPSON_LIMIT,
            ));
        }
        let p = self.prime() as u64;
        let logs = self.order_logs();
        let e0 = self.omega1(&self.center());

        // One representative per cyclic subgroup of order p outside E0.
        let mut cyclic_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() as u32 {
            if logs[g as usize] != 1 || cyclic_of[g as usize] != u32::MAX || e0.contains(g) {
                continue;
            }
            let mut x = g;
            for _ in 1..p {
                cyclic_of[x as usize] = reps.len() as u32;
                x = self.mul(x, g);
            }
            reps.push(g);
        }

        let n = reps.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if self.commutes(reps[i], reps[j]) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }

        // Ids ordered by descending degree in the commuting graph.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(adjacency[i].count_ones(..)), reps[i]));
        let mut new_id = vec![0u32; n];
        for (id, &old) in order.iter().enumerate() {
            new_id[old] = id as u32;
        }
        let reps_sorted: Vec<u32> = order.iter().map(|&i| reps[i]).collect();
        let adjacency_sorted: Vec<FixedBitSet> = order
            .iter()
            .map(|&old| {
                let mut b = FixedBitSet::with_capacity(n);
                for j in adjacency[old].ones() {
                    b.insert(new_id[j] as usize);
                }
                b
            })
            .collect();
        let id_of: Vec<u32> = cyclic_of
            .iter()
            .map(|&c| if c == u32::MAX { c } else { new_id[c as usize] })
            .collect();

        let base_rank = super::log_p(e0.order(), self.prime());
        let mut search = Search {
            group: self,
            p,
            id_of,
            reps: reps_sorted,
            adjacency: adjacency_sorted,
            best: base_rank,
            found: vec![(e0.members().to_vec(), e0.witness().to_vec())],
            nodes: 0,
        };
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(..);
        search.best = search.best.max(search.greedy_rank(e0.members(), base_rank, &cand));
        if search.best > base_rank {
            search.found.clear();
        }
        search.dfs(e0.members().to_vec(), e0.witness().to_vec(), base_rank, &cand, 0);

        let mut builder = SubgroupBuilder::new(self);
        let mut maximal = Vec::with_capacity(search.found.len());
        for (mut members, witness) in search.found {
            for &w in &witness {
                builder.add_generator(w);
            }
            members.sort_unstable();
            maximal.push(Subgroup::from_parts(self.order(), members, witness));
        }
        Ok((
            builder.finish(),
            ElementaryAbelianReport {
                rank: search.best,
                maximal_subgroups: maximal,
                nodes: search.nodes,
            },
        ))
    }
}

impl<R: GroupRepr> Search<'_, R> {
    /// Number of cyclic subgroups of order p that a rank-`r` extension of a
    /// rank-`k` elementary abelian group adds.
    fn needed(&self, k: u32, r: u32) -> u64 {
        (self.p.pow(r) - self.p.pow(k)) / (self.p - 1)
    }

    /// Elements of `<E, c>` outside `E`.
    fn extend(&self, members: &[u32], c: u32) -> Vec<u32> {
        let g = self.group;
        let mut out = Vec::with_capacity(members.len() * (self.p as usize - 1));
        let mut power = c;
        for _ in 1..self.p {
            out.extend(members.iter().map(|&x| g.mul(x, power)));
            power = g.mul(power, c);
        }
        out
    }

    /// A quick lower bound on the rank: extend by the first compatible ids.
    fn greedy_rank(&self, members: &[u32], rank: u32, cand: &FixedBitSet) -> u32 {
        let mut members = members.to_vec();
        let mut cand = cand.clone();
        let mut rank = rank;
        while let Some(c) = cand.ones().next() {
            members.extend(self.extend(&members, self.reps[c]));
            cand.intersect_with(&self.adjacency[c]);
            for &x in &members {
                let id = self.id_of[x as usize];
                if id != u32::MAX {
                    cand.set(id as usize, false);
                }
            }
            rank += 1;
        }
        rank
    }

    fn dfs(&mut self, members: Vec<u32>, witness: Vec<u32>, rank: u32, cand: &FixedBitSet, from: usize) {
        self.nodes += 1;
        let ids: Vec<usize> = cand.ones().filter(|&c| c >= from).collect();
        for (pos, &c) in ids.iter().enumerate() {
            let remaining = (ids.len() - pos) as u64;
            if self.best > rank && remaining < self.needed(rank, self.best) {
                break;
            }
            let added = self.extend(&members, self.reps[c]);
            let canonical = added
                .iter()
                .all(|&x| self.id_of[x as usize] as usize >= c);
            if !canonical {
                continue;
            }
            let new_rank = rank + 1;
            let mut child_cand = cand.clone();
            child_cand.intersect_with(&self.adjacency[c]);
            child_cand.set_range(..c + 1, false);
            for &x in &added {
                child_cand.set(self.id_of[x as usize] as usize, false);
            }
            let mut child_members = members.clone();
            child_members.extend(added);
            let mut child_witness = witness.clone();
            child_witness.push(self.reps[c]);
            if new_rank > self.best {
                self.best = new_rank;
                self.found.clear();
            }
            if new_rank == self.best {
                self.found.push((child_members.clone(), child_witness.clone()));
            }
            self.dfs(child_members, child_witness, new_rank, &child_cand, c + 1);
        }
    }
}
