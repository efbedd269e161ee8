//! Iterated wreath products `C_{p^r} wr C_p wr ... wr C_p` as enumerable groups.
//!
//! An element of height `h` is stored flat as `p` blocks of height `h - 1`
//! followed by the top exponent in `C_p`; at height 0 it is a single exponent
//! in `C_{p^r}`. Multiplication is `(b, t)(b', t') = (b * shift_t(b'), t + t')`
//! with `shift_t(b')_i = b'_{i - t}`.

use crate::error::{Error, Result};
use crate::group::{Group, GroupRepr, Subgroup, DEFAULT_BUDGET};
use crate::oliver::{check_conjecture, ConjectureVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WreathSpec {
    p: u32,
    r: u32,
    height: u32,
}

impl WreathSpec {
    /// Requires `p >= 5` prime.
    pub fn new(p: u32, r: u32, height: u32) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::InvalidParams(format!("wreath towers need p >= 5, got p = {p}")));
        }
        Ok(WreathSpec { p, r, height })
    }

    /// Accepts any prime; for small test groups with p below 5.
    pub fn any_prime(p: u32, r: u32, height: u32) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(WreathSpec { p, r, height })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// `log_p` of the order: `r p^h + (p^h - 1)/(p - 1)`.
    pub fn order_exponent(&self) -> u128 {
        let ph = (self.p as u128).pow(self.height);
        self.r as u128 * ph + (ph - 1) / (self.p as u128 - 1)
    }

    /// The order, or `None` if it overflows `u128`.
    pub fn order(&self) -> Option<u128> {
        u32::try_from(self.order_exponent())
            .ok()
            .and_then(|e| (self.p as u128).checked_pow(e))
    }

    /// The spec one layer down.
    pub fn lower(&self) -> Option<WreathSpec> {
        (self.height > 0).then(|| WreathSpec {
            height: self.height - 1,
            ..*self
        })
    }

    pub fn label(&self) -> String {
        let mut s = format!("C{}", (self.p as u64).pow(self.r));
        for _ in 0..self.height {
            s.push_str(&format!(" wr C{}", self.p));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct WreathGroup {
    spec: WreathSpec,
    /// Flat length per height.
    lens: Vec<usize>,
    /// Order per height.
    orders: Vec<u64>,
    generators: Vec<usize>,
}

impl WreathGroup {
    pub fn new(spec: WreathSpec, budget: usize) -> Result<Self> {
        let order = spec.order().unwrap_or(u128::MAX);
        if order > budget as u128 {
            return Err(Error::budget(spec.label(), order, budget));
        }
        let p = spec.p as usize;
        let mut lens = vec![1usize];
        let mut orders = vec![(spec.p as u64).pow(spec.r)];
        for h in 1..=spec.height as usize {
            lens.push(p * lens[h - 1] + 1);
            orders.push(orders[h - 1].pow(spec.p) * spec.p as u64);
        }
        let mut g = WreathGroup {
            spec,
            lens,
            orders,
            generators: Vec::new(),
        };
        g.generators = g.make_generators();
        Ok(g)
    }

    pub fn spec(&self) -> &WreathSpec {
        &self.spec
    }

    fn top(&self) -> usize {
        self.spec.height as usize
    }

    fn mul_at(&self, h: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
        if h == 0 {
            out[0] = ((a[0] as u64 + b[0] as u64) % self.orders[0]) as u32;
            return;
        }
        let p = self.spec.p as usize;
        let l = self.lens[h - 1];
        let t = a[p * l] as usize;
        for i in 0..p {
            let j = (i + p - t) % p;
            self.mul_at(
                h - 1,
                &a[i * l..(i + 1) * l],
                &b[j * l..(j + 1) * l],
                &mut out[i * l..(i + 1) * l],
            );
        }
        out[p * l] = ((t + b[p * l] as usize) % p) as u32;
    }

    fn inv_at(&self, h: usize, a: &[u32], out: &mut [u32]) {
        if h == 0 {
            out[0] = ((self.orders[0] - a[0] as u64) % self.orders[0]) as u32;
            return;
        }
        // (b, t)^{-1} = (shift_{-t}(b^{-1}), -t)
        let p = self.spec.p as usize;
        let l = self.lens[h - 1];
        let t = a[p * l] as usize;
        for i in 0..p {
            let j = (i + t) % p;
            self.inv_at(h - 1, &a[j * l..(j + 1) * l], &mut out[i * l..(i + 1) * l]);
        }
        out[p * l] = ((p - t) % p) as u32;
    }

    fn index_at(&self, h: usize, a: &[u32]) -> u64 {
        if h == 0 {
            return a[0] as u64;
        }
        let p = self.spec.p as usize;
        let l = self.lens[h - 1];
        let mut idx = 0u64;
        for i in 0..p {
            idx = idx * self.orders[h - 1] + self.index_at(h - 1, &a[i * l..(i + 1) * l]);
        }
        idx * p as u64 + a[p * l] as u64
    }

    fn decode_at(&self, h: usize, mut idx: u64, out: &mut [u32]) {
        if h == 0 {
            out[0] = idx as u32;
            return;
        }
        let p = self.spec.p as usize;
        let l = self.lens[h - 1];
        out[p * l] = (idx % p as u64) as u32;
        idx /= p as u64;
        for i in (0..p).rev() {
            self.decode_at(h - 1, idx % self.orders[h - 1], &mut out[i * l..(i + 1) * l]);
            idx /= self.orders[h - 1];
        }
    }

    fn valid_at(&self, h: usize, a: &[u32]) -> bool {
        if h == 0 {
            return (a[0] as u64) < self.orders[0];
        }
        let p = self.spec.p as usize;
        let l = self.lens[h - 1];
        (a[p * l] as usize) < p && (0..p).all(|i| self.valid_at(h - 1, &a[i * l..(i + 1) * l]))
    }

    /// The bottom generator in the first leaf, plus one top generator per
    /// layer placed in the first block of every layer above it.
    fn make_generators(&self) -> Vec<usize> {
        let top = self.top();
        let mut gens = Vec::new();
        if self.orders[0] > 1 {
            let mut e = vec![0u32; self.lens[top]];
            e[0] = 1;
            gens.push(self.index_at(top, &e) as usize);
        }
        for h in 1..=top {
            let mut e = vec![0u32; self.lens[top]];
            // The layer-h top sits at the end of the first height-h block.
            e[self.lens[h] - 1] = 1;
            gens.push(self.index_at(top, &e) as usize);
        }
        gens
    }

    /// Indices of the base subgroup `P^p`: elements with top exponent 0.
    pub fn base_members(&self) -> Vec<u32> {
        if self.top() == 0 {
            return (0..self.orders[0] as u32).collect();
        }
        (0..GroupRepr::order(self) as u32)
            .filter(|&i| i % self.spec.p == 0)
            .collect()
    }

    /// Indices of `H^p` inside the base, for `H` given by member indices of
    /// the group one layer down.
    pub fn base_power(&self, lower_members: &[u32]) -> Vec<u32> {
        assert!(self.top() > 0);
        let p = self.spec.p as usize;
        let lower = self.orders[self.top() - 1];
        let mut out = vec![0u64];
        for _ in 0..p {
            out = out
                .iter()
                .flat_map(|&acc| lower_members.iter().map(move |&m| acc * lower + m as u64))
                .collect();
        }
        let mut v: Vec<u32> = out.into_iter().map(|x| (x * p as u64) as u32).collect();
        v.sort_unstable();
        v
    }
}

impl GroupRepr for WreathGroup {
    type Elem = Vec<u32>;

    fn order(&self) -> usize {
        self.orders[self.top()] as usize
    }

    fn prime(&self) -> u32 {
        self.spec.p
    }

    fn element(&self, index: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.lens[self.top()]];
        self.decode_at(self.top(), index as u64, &mut out);
        out
    }

    fn index_of(&self, elem: &Vec<u32>) -> Option<usize> {
        (elem.len() == self.lens[self.top()] && self.valid_at(self.top(), elem))
            .then(|| self.index_at(self.top(), elem) as usize)
    }

    fn index_of_member(&self, elem: &Vec<u32>) -> usize {
        self.index_at(self.top(), elem) as usize
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let mut out = vec![0u32; a.len()];
        self.mul_at(self.top(), a, b, &mut out);
        out
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        let mut out = vec![0u32; a.len()];
        self.inv_at(self.top(), a, &mut out);
        out
    }

    fn identity(&self) -> Vec<u32> {
        vec![0u32; self.lens[self.top()]]
    }

    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }

    fn label(&self) -> String {
        self.spec.label()
    }
}

pub fn build_wreath(spec: WreathSpec, budget: usize) -> Result<Group<WreathGroup>> {
    Group::new(WreathGroup::new(spec, budget)?, budget)
}

/// Outcome of comparing `J(P wr C_p)` with the base copy of `J(P)^p`.
#[derive(Clone, Debug)]
pub enum WreathJReport {
    /// `P` is trivial, so the statement does not apply.
    Skipped { reason: String },
    /// `P wr C_p` exceeds the budget; the predicted order is reported only.
    Unverified {
        lower_j_order: usize,
        predicted_order: u128,
        reason: String,
    },
    Checked(WreathJCheck),
}

#[derive(Clone, Debug)]
pub struct WreathJCheck {
    pub lower_j_order: usize,
    pub lower_j_elementary_abelian: bool,
    pub j_order: usize,
    pub j_elementary_abelian: bool,
    pub j_equals_base_copy: bool,
    pub rank: u32,
}

impl WreathJReport {
    pub fn passed(&self) -> Option<bool> {
        match self {
            WreathJReport::Checked(c) => Some(
                c.j_equals_base_copy && (!c.lower_j_elementary_abelian || c.j_elementary_abelian),
            ),
            _ => None,
        }
    }
}

/// Compares `J(P wr C_p)` with the copy of `J(P)^p` in the base, where `P` is
/// the tower one layer down.
pub fn verify_wreath_j(spec: WreathSpec, budget: usize) -> Result<WreathJReport> {
    let lower = match spec.lower() {
        Some(l) => l,
        None => {
            return Ok(WreathJReport::Skipped {
                reason: "height 0 has no wreath layer".into(),
            })
        }
    };
    if lower.order() == Some(1) {
        return Ok(WreathJReport::Skipped {
            reason: "the bottom group is trivial".into(),
        });
    }
    let p_group = build_wreath(lower, budget)?;
    let (lower_j, _) = p_group.thompson()?;
    let full_order = spec.order().unwrap_or(u128::MAX);
    if full_order > budget as u128 || full_order > crate::group::THOMPSON_LIMIT as u128 {
        return Ok(WreathJReport::Unverified {
            lower_j_order: lower_j.order(),
            predicted_order: (lower_j.order() as u128).pow(spec.p),
            reason: format!("{} has order {full_order}, beyond the budget", spec.label()),
        });
    }
    let g = build_wreath(spec, budget)?;
    let (j, report) = g.thompson()?;
    let base_copy = g.repr().base_power(lower_j.members());
    Ok(WreathJReport::Checked(WreathJCheck {
        lower_j_order: lower_j.order(),
        lower_j_elementary_abelian: p_group.is_elementary_abelian(&lower_j),
        j_order: j.order(),
        j_elementary_abelian: g.is_elementary_abelian(&j),
        j_equals_base_copy: j.members() == &base_copy[..],
        rank: report.rank,
    }))
}

#[derive(Clone, Debug)]
pub struct CoprimeVerdict {
    pub verdict: ConjectureVerdict,
    pub j_elementary_abelian: bool,
    pub j_normal: bool,
    /// Whether `1 <= J` is itself a passing Q-series.
    pub j_chain_passes: bool,
}

impl CoprimeVerdict {
    pub fn passed(&self) -> bool {
        self.verdict.holds && self.j_elementary_abelian && self.j_normal && self.j_chain_passes
    }
}

/// Runs the conjecture check on the tower and examines `1 <= J(S)` as a
/// Q-series in its own right.
pub fn coprime_conjecture_check(spec: WreathSpec, budget: usize, seed: u64) -> Result<CoprimeVerdict> {
    let g = build_wreath(spec, budget)?;
    let verdict = check_conjecture(&g, seed)?;
    let j = &verdict.j;
    let chain = crate::oliver::verify_qseries(&g, &[g.trivial_subgroup(), j.clone()])?;
    Ok(CoprimeVerdict {
        j_elementary_abelian: g.is_elementary_abelian(j),
        j_normal: g.is_normal(j),
        j_chain_passes: chain.passed(),
        verdict,
    })
}

/// The base subgroup as a [`Subgroup`].
pub fn base_subgroup(g: &Group<WreathGroup>) -> Subgroup {
    g.subgroup_from_members(g.repr().base_members())
}

/// [`build_wreath`] with the default budget.
pub fn wreath(p: u32, r: u32, height: u32) -> Result<Group<WreathGroup>> {
    build_wreath(WreathSpec::new(p, r, height)?, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_closed_form() {
        for (p, r, h) in [(5, 1, 0), (5, 2, 0), (5, 1, 1), (3, 1, 1), (2, 1, 2), (3, 0, 2), (3, 2, 1), (5, 0, 1)] {
            let spec = WreathSpec::any_prime(p, r, h).unwrap();
            let g = build_wreath(spec, 1 << 24).unwrap();
            assert_eq!(g.order() as u128, spec.order().unwrap(), "{}", spec.label());
            let gen = g.generated_subgroup(g.generators()).unwrap();
            assert_eq!(gen.order(), g.order(), "generators of {}", spec.label());
        }
    }

    #[test]
    fn element_codec_and_inverses() {
        let g = build_wreath(WreathSpec::any_prime(2, 1, 2).unwrap(), 1 << 24).unwrap();
        let r = g.repr();
        for i in 0..g.order() {
            let e = r.element(i);
            assert_eq!(r.index_of(&e), Some(i));
            assert_eq!(g.mul(i as u32, g.inv(i as u32)), g.identity());
        }
        assert_eq!(r.index_of(&vec![0; 3]), None);
    }

    #[test]
    fn associativity_sampled() {
        let g = build_wreath(WreathSpec::any_prime(2, 1, 2).unwrap(), 1 << 24).unwrap();
        let n = g.order() as u32;
        for a in (0..n).step_by(7) {
            for b in (0..n).step_by(11) {
                for c in (0..n).step_by(13) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn base_is_normal_with_trivial_top_intersection() {
        let g = wreath(5, 1, 1).unwrap();
        let base = base_subgroup(&g);
        assert_eq!(base.order(), 3125);
        assert!(g.is_normal(&base));
        let top = g.generated_subgroup(&[*g.generators().last().unwrap()]).unwrap();
        assert_eq!(top.order(), 5);
        assert_eq!(top.intersection_order(&base), 1);
        assert!(!g.is_abelian(&g.whole()));
    }

    #[test]
    fn budget_and_prime_checks() {
        assert!(WreathSpec::new(3, 1, 1).is_err());
        assert!(WreathSpec::new(6, 1, 1).is_err());
        let spec = WreathSpec::new(5, 2, 1).unwrap();
        assert_eq!(spec.order_exponent(), 11);
        assert!(matches!(build_wreath(spec, 1 << 24), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn trivial_bottom_is_skipped() {
        let spec = WreathSpec::new(5, 0, 1).unwrap();
        assert!(matches!(verify_wreath_j(spec, 1 << 24).unwrap(), WreathJReport::Skipped { .. }));
        let spec = WreathSpec::new(5, 1, 0).unwrap();
        assert!(matches!(verify_wreath_j(spec, 1 << 24).unwrap(), WreathJReport::Skipped { .. }));
    }

    #[test]
    fn c25_wreath_prediction_is_flagged() {
        let spec = WreathSpec::new(5, 2, 1).unwrap();
        match verify_wreath_j(spec, 1 << 24).unwrap() {
            WreathJReport::Unverified {
                lower_j_order,
                predicted_order,
                ..
            } => {
                assert_eq!(lower_j_order, 5);
                assert_eq!(predicted_order, 3125);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
