//! Finite p-group engine over enumerated groups.
//!
//! A [`GroupRepr`] supplies the elements and the exact multiplication; a
//! [`Group`] wraps it with a dense index space `0..order`, and every
//! algorithm here works on those indices.

use std::borrow::Cow;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};

mod ops;
mod subgroup;
mod table;
mod thompson;

pub use ops::{CommutatorStrategy, ProductReport, StructureReport, ELEMENTWISE_LIMIT};
pub use subgroup::{Subgroup, SubgroupBuilder};
pub use table::{MatrixGroup, TableGroup};
pub use thompson::{ElementaryAbelianReport, THOMPSON_LIMIT};

/// Hard element budget for enumerated groups.
pub const DEFAULT_BUDGET: usize = 1 << 24;

/// Groups up to this order keep every element materialized.
const MATERIALIZE_LIMIT: usize = 1 << 17;

/// Element-level description of a finite group with a canonical numbering.
pub trait GroupRepr: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn order(&self) -> usize;

    /// The prime `p` with `order = p^e`.
    fn prime(&self) -> u32;

    fn element(&self, index: usize) -> Self::Elem;

    /// Checked lookup: `None` unless `elem` belongs to the group.
    fn index_of(&self, elem: &Self::Elem) -> Option<usize>;

    /// Lookup for elements already known to be members, such as products of
    /// members. May skip validation.
    fn index_of_member(&self, elem: &Self::Elem) -> usize {
        self.index_of(elem).expect("element is not a group member")
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn identity(&self) -> Self::Elem;

    /// A generating set, as element indices.
    fn generators(&self) -> Vec<usize>;

    fn label(&self) -> String;
}

/// Outcome of [`Group::verify_closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub elements: usize,
    /// Every index decodes to an element that the checked lookup maps back.
    pub codec_bijective: bool,
    pub inverses: bool,
    pub closed_under_generators: bool,
    pub generated_order: usize,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.codec_bijective
            && self.inverses
            && self.closed_under_generators
            && self.generated_order == self.elements
    }
}

pub struct Group<R: GroupRepr> {
    repr: R,
    cache: Option<Vec<R::Elem>>,
    identity: u32,
    generators: Vec<u32>,
    order_logs: OnceLock<Vec<u8>>,
}

impl<R: GroupRepr> Group<R> {
    /// Wraps `repr`, failing when its order exceeds `budget`.
    pub fn new(repr: R, budget: usize) -> Result<Self> {
        let order = repr.order();
        if order > budget {
            return Err(Error::budget(repr.label(), order as u128, budget));
        }
        let cache = (order <= MATERIALIZE_LIMIT).then(|| (0..order).map(|i| repr.element(i)).collect());
        let identity = repr.index_of_member(&repr.identity()) as u32;
        let generators = repr.generators().into_iter().map(|g| g as u32).collect();
        Ok(Group {
            repr,
            cache,
            identity,
            generators,
            order_logs: OnceLock::new(),
        })
    }

    pub fn repr(&self) -> &R {
        &self.repr
    }

    pub fn order(&self) -> usize {
        self.repr.order()
    }

    pub fn prime(&self) -> u32 {
        self.repr.prime()
    }

    pub fn label(&self) -> String {
        self.repr.label()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    pub fn element(&self, i: u32) -> Cow<'_, R::Elem> {
        match &self.cache {
            Some(c) => Cow::Borrowed(&c[i as usize]),
            None => Cow::Owned(self.repr.element(i as usize)),
        }
    }

    pub fn index_of(&self, e: &R::Elem) -> Option<u32> {
        self.repr.index_of(e).map(|i| i as u32)
    }

    #[inline]
    pub fn index_of_member(&self, e: &R::Elem) -> u32 {
        self.repr.index_of_member(e) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.repr.mul(&self.element(a), &self.element(b));
        self.index_of_member(&prod)
    }

    /// Exhaustive closure check using only checked lookups. If the element
    /// set `T` satisfies `T g = T` for every generator `g` and the generators
    /// generate a subgroup of order `|T|`, then `T` is that subgroup, so this
    /// certifies closure without forming all `|T|^2` products.
    pub fn verify_closure(&self) -> ClosureReport {
        let r = &self.repr;
        let id = r.identity();
        let gens: Vec<R::Elem> = self.generators.iter().map(|&g| self.element(g).into_owned()).collect();
        let mut codec_bijective = true;
        let mut inverses = true;
        let mut closed = true;
        for i in 0..self.order() {
            let e = self.element(i as u32);
            codec_bijective &= r.index_of(&e) == Some(i);
            inverses &= r.mul(&e, &r.inv(&e)) == id;
            closed &= gens.iter().all(|g| r.index_of(&r.mul(&e, g)).is_some());
        }
        let generated_order = self
            .generated_subgroup(&self.generators)
            .map(|h| h.order())
            .unwrap_or(0);
        ClosureReport {
            elements: self.order(),
            codec_bijective,
            inverses,
            closed_under_generators: closed,
            generated_order,
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        let inv = self.repr.inv(&self.element(a));
        self.index_of_member(&inv)
    }

    /// `a^{-1} b^{-1} a b`
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let r = &self.repr;
        let (ea, eb) = (self.element(a), self.element(b));
        let left = r.mul(&r.inv(&ea), &r.inv(&eb));
        let right = r.mul(&ea, &eb);
        self.index_of_member(&r.mul(&left, &right))
    }

    /// `by^{-1} a by`
    pub fn conjugate(&self, a: u32, by: u32) -> u32 {
        let r = &self.repr;
        let eb = self.element(by);
        let x = r.mul(&r.mul(&r.inv(&eb), &self.element(a)), &eb);
        self.index_of_member(&x)
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        let r = &self.repr;
        let (ea, eb) = (self.element(a), self.element(b));
        r.mul(&ea, &eb) == r.mul(&eb, &ea)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let r = &self.repr;
        let mut result = r.identity();
        let mut base = self.element(a).into_owned();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = r.mul(&result, &base);
            }
            base = r.mul(&base, &base);
            e >>= 1;
        }
        self.index_of_member(&result)
    }

    /// `log_p` of the order of `a`.
    pub fn order_log(&self, a: u32) -> u32 {
        if let Some(cache) = self.order_logs.get() {
            return cache[a as usize] as u32;
        }
        self.compute_order_log(a)
    }

    fn compute_order_log(&self, a: u32) -> u32 {
        let r = &self.repr;
        let id = r.identity();
        let mut x = self.element(a).into_owned();
        let mut e = 0;
        while x != id {
            let base = x.clone();
            for _ in 1..self.prime() {
                x = r.mul(&x, &base);
            }
            e += 1;
        }
        e
    }

    /// Computes and caches the order of every element.
    pub fn order_logs(&self) -> &[u8] {
        self.order_logs.get_or_init(|| {
            (0..self.order() as u32)
                .map(|a| self.compute_order_log(a) as u8)
                .collect()
        })
    }

    /// `log_p |G|`.
    pub fn order_exponent(&self) -> u32 {
        log_p(self.order(), self.prime())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        SubgroupBuilder::new(self).finish()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(
            self.order(),
            (0..self.order() as u32).collect(),
            self.generators.clone(),
        )
    }

    /// `<gens>`, by closing `{1}` under right multiplication.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Result<Subgroup> {
        if let Some(&g) = gens.iter().find(|&&g| g as usize >= self.order()) {
            return Err(Error::NotMember(format!(
                "index {g} is outside a group of order {}",
                self.order()
            )));
        }
        let mut b = SubgroupBuilder::new(self);
        for &g in gens {
            b.add_generator(g);
        }
        Ok(b.finish())
    }

    /// Wraps a known subgroup given by its sorted member list and computes a
    /// generating witness greedily.
    pub fn subgroup_from_members(&self, members: Vec<u32>) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for &m in &members {
            b.add_generator(m);
        }
        let sub = b.finish();
        debug_assert_eq!(sub.members(), &members[..]);
        sub
    }
}

pub(crate) fn log_p(mut n: usize, p: u32) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % p as usize, 0);
        n /= p as usize;
        e += 1;
    }
    e
}
