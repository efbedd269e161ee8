use super::{Group, GroupRepr, Subgroup, SubgroupBuilder};

/// Above this value of `|A| * |B|` the automatic strategy stops forming every
/// elementwise commutator.
pub const ELEMENTWISE_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CommutatorStrategy {
    /// Elementwise below [`ELEMENTWISE_LIMIT`], generators above.
    #[default]
    Auto,
    /// `<[a, b] : a in A, b in B>` over the full member sets.
    Elementwise,
    /// The normal closure in `<A, B>` of the commutators of the witnesses.
    Generators,
}

#[derive(Clone, Debug)]
pub struct ProductReport {
    pub subgroup: Subgroup,
    /// `Some(HK == <H, K>)` when both factors are normal.
    pub set_product_matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub order: usize,
    pub normal: bool,
    pub abelian: bool,
    pub elementary_abelian: bool,
    pub center_order: usize,
    pub generated_by_abelian_normal: bool,
}

impl<R: GroupRepr> Group<R> {
    /// `{g in ambient : g commutes with every witness of h}`.
    pub fn centralizer_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        let wit = h.witness();
        if wit.is_empty() {
            return ambient.clone();
        }
        let members: Vec<u32> = ambient
            .members()
            .iter()
            .copied()
            .filter(|&g| wit.iter().all(|&w| self.commutes(g, w)))
            .collect();
        self.wrap_members(ambient, members)
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let wit = h.witness();
        if wit.is_empty() {
            return self.whole();
        }
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| wit.iter().all(|&w| self.commutes(g, w)))
            .collect();
        if members.len() == self.order() {
            return self.whole();
        }
        self.subgroup_from_members(members)
    }

    /// Centralizer by definition: scans every member of `h`, not just the
    /// witness.
    pub fn centralizer_by_definition(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| h.members().iter().all(|&x| self.commutes(g, x)))
            .collect();
        self.subgroup_from_members(members)
    }

    /// `Z(h)`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    fn wrap_members(&self, ambient: &Subgroup, members: Vec<u32>) -> Subgroup {
        if members.len() == ambient.order() {
            ambient.clone()
        } else {
            self.subgroup_from_members(members)
        }
    }

    /// The subgroup of `h` generated by its elements of order dividing `p`.
    pub fn omega1(&self, h: &Subgroup) -> Subgroup {
        if h.witness().iter().all(|&w| self.order_log(w) <= 1) {
            return h.clone();
        }
        let mut b = SubgroupBuilder::new(self);
        for &g in h.members() {
            if !b.contains(g) && self.order_log(g) <= 1 {
                b.add_generator(g);
            }
        }
        b.finish()
    }

    /// The smallest subgroup containing `gens` and normalized by `ambient_gens`.
    pub fn normal_closure(&self, gens: &[u32], ambient_gens: &[u32]) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for &g in gens {
            b.add_generator(g);
        }
        let mut i = 0;
        while i < b.generators().len() {
            let w = b.generators()[i];
            for &s in ambient_gens {
                let c = self.conjugate(w, s);
                if !b.contains(c) {
                    b.add_generator(c);
                }
            }
            i += 1;
        }
        b.finish()
    }

    /// `<g^G>`.
    pub fn normal_closure_of(&self, g: u32) -> Subgroup {
        self.normal_closure(&[g], self.generators())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normalized_by(h, self.generators())
    }

    pub fn is_normalized_by(&self, h: &Subgroup, by: &[u32]) -> bool {
        h.witness()
            .iter()
            .all(|&w| by.iter().all(|&s| h.contains(self.conjugate(w, s))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let w = h.witness();
        (0..w.len()).all(|i| (i + 1..w.len()).all(|j| self.commutes(w[i], w[j])))
    }

    pub fn is_elementary_abelian(&self, h: &Subgroup) -> bool {
        self.is_abelian(h) && h.witness().iter().all(|&w| self.order_log(w) <= 1)
    }

    /// `[a, b]`.
    pub fn commutator_subgroup(
        &self,
        a: &Subgroup,
        b: &Subgroup,
        strategy: CommutatorStrategy,
    ) -> Subgroup {
        let elementwise = match strategy {
            CommutatorStrategy::Elementwise => true,
            CommutatorStrategy::Generators => false,
            CommutatorStrategy::Auto => a.order().saturating_mul(b.order()) <= ELEMENTWISE_LIMIT,
        };
        if elementwise {
            let mut builder = SubgroupBuilder::new(self);
            for &x in a.members() {
                for &y in b.members() {
                    let c = self.commutator(x, y);
                    if !builder.contains(c) {
                        builder.add_generator(c);
                    }
                }
            }
            builder.finish()
        } else {
            let mut seeds = Vec::new();
            for &x in a.witness() {
                for &y in b.witness() {
                    let c = self.commutator(x, y);
                    if c != self.identity() {
                        seeds.push(c);
                    }
                }
            }
            let ambient: Vec<u32> = a.witness().iter().chain(b.witness()).copied().collect();
            self.normal_closure(&seeds, &ambient)
        }
    }

    /// `[a, b; t] = [[a, b; t-1], b]`, with `[a, b; 1] = [a, b]`. Returns every
    /// term `K_1, ..., K_t`; once a term is trivial the rest are copied.
    pub fn commutator_series(
        &self,
        a: &Subgroup,
        b: &Subgroup,
        t: u32,
        strategy: CommutatorStrategy,
    ) -> Vec<Subgroup> {
        assert!(t >= 1, "iterated commutator needs t >= 1");
        let mut out: Vec<Subgroup> = Vec::with_capacity(t as usize);
        let mut k = a.clone();
        for _ in 0..t {
            k = if k.is_trivial() {
                k
            } else {
                self.commutator_subgroup(&k, b, strategy)
            };
            out.push(k.clone());
        }
        out
    }

    pub fn iterated_commutator(
        &self,
        a: &Subgroup,
        b: &Subgroup,
        t: u32,
        strategy: CommutatorStrategy,
    ) -> Subgroup {
        self.commutator_series(a, b, t, strategy).pop().expect("t >= 1")
    }

    /// Whether `[[[x, y1], y2], ...]` is trivial for every sampled tuple, the
    /// elementwise reading of an iterated commutator condition.
    pub fn elementwise_iterated_trivial(&self, x: u32, ys: &[u32]) -> bool {
        let mut c = x;
        for &y in ys {
            c = self.commutator(c, y);
        }
        c == self.identity()
    }

    /// `<H, K>`, with an explicit `HK` set check when both are normal and the
    /// product set is small enough to form.
    pub fn product_subgroup(&self, h: &Subgroup, k: &Subgroup) -> ProductReport {
        // Nested factors need no closure, which matters for the whole group.
        for (big, small) in [(h, k), (k, h)] {
            if small.witness().iter().all(|&w| big.contains(w)) {
                let normal = self.is_normal(h) && self.is_normal(k);
                return ProductReport {
                    subgroup: big.clone(),
                    set_product_matches: normal.then_some(true),
                };
            }
        }
        let gens: Vec<u32> = h.witness().iter().chain(k.witness()).copied().collect();
        let joined = self.generated_subgroup(&gens).expect("witnesses are members");
        let set_product_matches = (self.is_normal(h) && self.is_normal(k)).then(|| {
            if h.order().saturating_mul(k.order()) <= ELEMENTWISE_LIMIT {
                let mut seen = fixedbitset::FixedBitSet::with_capacity(self.order());
                for &x in h.members() {
                    for &y in k.members() {
                        seen.insert(self.mul(x, y) as usize);
                    }
                }
                seen == *joined.mask()
            } else {
                h.order() * k.order() / h.intersection_order(k) == joined.order()
            }
        });
        ProductReport {
            subgroup: joined,
            set_product_matches,
        }
    }

    /// Whether `h` is generated by its abelian normal subgroups. An element lies
    /// in an abelian normal subgroup exactly when its normal closure in `h` is
    /// abelian, so it suffices to join those closures.
    pub fn generated_by_abelian_normal(&self, h: &Subgroup) -> bool {
        let mut b = SubgroupBuilder::new(self);
        for &g in h.members() {
            if b.contains(g) {
                continue;
            }
            let n = self.normal_closure(&[g], h.witness());
            if self.is_abelian(&n) {
                for &w in n.witness() {
                    b.add_generator(w);
                }
            }
            if b.order() == h.order() {
                return true;
            }
        }
        b.order() == h.order()
    }

    pub fn structure(&self, h: &Subgroup) -> StructureReport {
        StructureReport {
            order: h.order(),
            normal: self.is_normal(h),
            abelian: self.is_abelian(h),
            elementary_abelian: self.is_elementary_abelian(h),
            center_order: self.center_of(h).order(),
            generated_by_abelian_normal: self.generated_by_abelian_normal(h),
        }
    }
}
