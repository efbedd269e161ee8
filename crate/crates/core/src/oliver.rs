//! Q-series certificates and the Oliver subgroup.
//!
//! A Q-series of `S` is a chain `1 = Q_0 <= Q_1 <= ... <= Q_n` of normal
//! subgroups with `[Omega_1(C_S(Q_{i-1})), Q_i; p-1] = 1` at every step. The
//! Oliver subgroup is the largest normal subgroup admitting one.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{CommutatorStrategy, Group, GroupRepr, Subgroup, SubgroupBuilder};

/// Largest group order accepted by [`oliver_bruteforce`].
pub const ORACLE_LIMIT: usize = 625;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeriesStep {
    /// Order of `Q_i`.
    pub order: usize,
    pub normal: bool,
    /// Order of `Omega_1(C_S(Q_{i-1}))`.
    pub omega_order: usize,
    /// Orders of `[Omega, Q_i; 1], ..., [Omega, Q_i; p-1]`.
    pub commutator_orders: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct QSeries {
    pub chain: Vec<Subgroup>,
    /// One entry per `i >= 1`.
    pub steps: Vec<QSeriesStep>,
}

impl QSeries {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    pub fn top(&self) -> &Subgroup {
        self.chain.last().expect("chains are non-empty")
    }
}

/// Evaluates the Q-series condition with `t = p - 1` at every step.
pub fn verify_qseries<R: GroupRepr>(s: &Group<R>, chain: &[Subgroup]) -> Result<QSeries> {
    let first = chain
        .first()
        .ok_or_else(|| Error::InvalidChain("chain is empty".into()))?;
    if let Some(bad) = chain.iter().find(|q| q.parent_order() != s.order()) {
        return Err(Error::InvalidChain(format!(
            "entry of parent order {} is not a subgroup of a group of order {}",
            bad.parent_order(),
            s.order()
        )));
    }
    if !first.is_trivial() {
        return Err(Error::InvalidChain("chain must start at the trivial subgroup".into()));
    }
    if let Some(i) = chain.windows(2).position(|w| !w[0].is_subgroup_of(&w[1])) {
        return Err(Error::InvalidChain(format!("entry {} is not contained in entry {}", i, i + 1)));
    }
    let t = s.prime() - 1;
    let mut steps = Vec::with_capacity(chain.len() - 1);
    for w in chain.windows(2) {
        let omega = s.omega1(&s.centralizer(&w[0]));
        let series = s.commutator_series(&omega, &w[1], t, CommutatorStrategy::Auto);
        let normal = s.is_normal(&w[1]);
        let trivial = series.last().is_some_and(|k| k.is_trivial());
        steps.push(QSeriesStep {
            order: w[1].order(),
            normal,
            omega_order: omega.order(),
            commutator_orders: series.iter().map(Subgroup::order).collect(),
            passed: normal && trivial,
        });
    }
    Ok(QSeries {
        chain: chain.to_vec(),
        steps,
    })
}

/// Joins two passing series: `c1` followed by `K R_1 <= ... <= K R_m`, where
/// `K` is the top of `c1` and `R_i` runs over `c2`. Repeated terms are
/// dropped and the result is verified from scratch.
pub fn concat_qseries<R: GroupRepr>(s: &Group<R>, c1: &QSeries, c2: &QSeries) -> Result<QSeries> {
    if !c1.passed() || !c2.passed() {
        return Err(Error::InvalidChain("both inputs must be passing Q-series".into()));
    }
    let k = c1.top();
    let mut chain = c1.chain.clone();
    for r in c2.chain.iter().skip(1) {
        let kr = s.product_subgroup(k, r).subgroup;
        if chain.last() != Some(&kr) {
            chain.push(kr);
        }
    }
    verify_qseries(s, &chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOrder {
    Canonical,
    Shuffled(u64),
}

#[derive(Clone, Debug)]
pub struct OliverResult {
    pub subgroup: Subgroup,
    pub certificate: QSeries,
    /// Candidates rejected in the last round, one per coset of the result.
    pub maximality_evidence: Vec<u32>,
    pub rounds: usize,
    pub oracle_agreement: Option<bool>,
}

/// Greedy fixed point: grow `X` by normal closures `<X, g^S>` that pass the
/// one-step condition against `Omega_1(C_S(X))`, until a full round adds
/// nothing. The accepted closures form the certificate.
pub fn compute_oliver<R: GroupRepr>(s: &Group<R>, order: CandidateOrder) -> Result<OliverResult> {
    let t = s.prime() - 1;
    let mut candidates: Vec<u32> = (0..s.order() as u32).collect();
    if let CandidateOrder::Shuffled(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut x = s.trivial_subgroup();
    let mut chain = vec![x.clone()];
    let mut c = s.omega1(&s.centralizer(&x));
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut progress = false;
        let mut rejected = Vec::new();
        let mut seen = FixedBitSet::with_capacity(s.order());
        for &g in &candidates {
            if x.contains(g) || seen.contains(g as usize) {
                continue;
            }
            let mut gens = x.witness().to_vec();
            gens.push(g);
            let n = s.normal_closure(&gens, s.generators());
            let k = s.iterated_commutator(&c, &n, t, CommutatorStrategy::Auto);
            if k.is_trivial() {
                x = n;
                chain.push(x.clone());
                c = s.omega1(&s.centralizer(&x));
                progress = true;
                seen.clear();
            } else {
                // <X, (gy)^S> = <X, g^S> for y in X.
                for &y in x.members() {
                    seen.insert(s.mul(g, y) as usize);
                }
                rejected.push(g);
            }
        }
        if !progress {
            let certificate = verify_qseries(s, &chain)?;
            return Ok(OliverResult {
                subgroup: x,
                certificate,
                maximality_evidence: rejected,
                rounds,
                oracle_agreement: None,
            });
        }
    }
}

#[derive(Clone, Debug)]
pub struct BruteForceResult {
    pub subgroup: Subgroup,
    pub subgroup_count: usize,
    pub normal_count: usize,
    pub admitting_count: usize,
    /// Every admitting normal subgroup lies in the returned one.
    pub contains_all_admitting: bool,
}

/// Exhaustive oracle: enumerates every subgroup by cyclic extension, keeps the
/// normal ones, and decides by dynamic programming over inclusion which of
/// them carry a Q-series.
pub fn oliver_bruteforce<R: GroupRepr>(s: &Group<R>) -> Result<BruteForceResult> {
    if s.order() > ORACLE_LIMIT {
        return Err(Error::budget("exhaustive Oliver oracle", s.order() as u128, ORACLE_LIMIT));
    }
    let subgroups = all_subgroups(s);
    let mut normal: Vec<Subgroup> = subgroups.iter().filter(|h| s.is_normal(h)).cloned().collect();
    normal.sort_by_key(|h| (h.order(), h.members().to_vec()));
    let t = s.prime() - 1;
    let omegas: Vec<Subgroup> = normal.iter().map(|m| s.omega1(&s.centralizer(m))).collect();
    let mut admits = vec![false; normal.len()];
    for i in 0..normal.len() {
        if normal[i].is_trivial() {
            admits[i] = true;
            continue;
        }
        // Larger predecessors have smaller centralizers, so try them first.
        admits[i] = (0..i).rev().any(|j| {
            admits[j]
                && normal[j].order() < normal[i].order()
                && normal[j].is_subgroup_of(&normal[i])
                && s
                    .iterated_commutator(&omegas[j], &normal[i], t, CommutatorStrategy::Auto)
                    .is_trivial()
        });
    }
    let best = (0..normal.len())
        .filter(|&i| admits[i])
        .max_by_key(|&i| normal[i].order())
        .expect("the trivial subgroup admits a series");
    let contains_all_admitting = (0..normal.len())
        .filter(|&i| admits[i])
        .all(|i| normal[i].is_subgroup_of(&normal[best]));
    Ok(BruteForceResult {
        subgroup: normal[best].clone(),
        subgroup_count: subgroups.len(),
        normal_count: normal.len(),
        admitting_count: admits.iter().filter(|&&a| a).count(),
        contains_all_admitting,
    })
}

/// Every subgroup, reached from the trivial one by adding one cyclic subgroup
/// at a time and deduplicated by member set.
pub fn all_subgroups<R: GroupRepr>(s: &Group<R>) -> Vec<Subgroup> {
    let mut cyclic_reps = Vec::new();
    let mut seen_cyclic = FixedBitSet::with_capacity(s.order());
    for g in 0..s.order() as u32 {
        if g == s.identity() || seen_cyclic.contains(g as usize) {
            continue;
        }
        let cyc = s.generated_subgroup(&[g]).expect("g is a member");
        // Every generator of <g> yields the same subgroup.
        for &h in cyc.members() {
            if s.generated_subgroup(&[h]).expect("member").order() == cyc.order() {
                seen_cyclic.insert(h as usize);
            }
        }
        cyclic_reps.push(g);
    }
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut all = vec![s.trivial_subgroup()];
    index.insert(all[0].members().to_vec(), 0);
    let mut i = 0;
    while i < all.len() {
        let h = all[i].clone();
        for &g in &cyclic_reps {
            if h.contains(g) {
                continue;
            }
            let mut b = SubgroupBuilder::from_subgroup(s, &h);
            b.add_generator(g);
            let k = b.finish();
            if !index.contains_key(k.members()) {
                index.insert(k.members().to_vec(), all.len());
                all.push(k);
            }
        }
        i += 1;
    }
    all
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub centralizer_order: usize,
    pub center_order: usize,
    /// `C_S(X) = Z(X)`.
    pub centralizer_is_center: bool,
    /// Normal closures `<g^S>` examined, one per orbit of generators.
    pub scanned: usize,
    /// Elements `g` whose closure `Q` satisfies `[Omega_1(Z(X)), Q; p-1] = 1`
    /// without lying in `X`.
    pub violations: Vec<u32>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.centralizer_is_center && self.violations.is_empty()
    }
}

/// Checks `C_S(X) = Z(X)`, and that every normal closure `Q = <g^S>` with
/// `[Omega_1(Z(X)), Q; p-1] = 1` lies in `X`. Closures of elements of `X`
/// lie in `X` because `X` is normal, so only `g` outside `X` are examined,
/// one per conjugacy class up to generators of `<g>`.
pub fn lemma_checks<R: GroupRepr>(s: &Group<R>, x: &Subgroup) -> LemmaReport {
    let cent = s.centralizer(x);
    let center = s.center_of(x);
    let z = s.omega1(&center);
    let t = s.prime() - 1;
    let mut seen = FixedBitSet::with_capacity(s.order());
    let mut scanned = 0;
    let mut violations = Vec::new();
    for g in 0..s.order() as u32 {
        if x.contains(g) || seen.contains(g as usize) {
            continue;
        }
        mark_same_closure(s, g, &mut seen);
        scanned += 1;
        let q = s.normal_closure_of(g);
        if s.iterated_commutator(&z, &q, t, CommutatorStrategy::Auto).is_trivial() && !q.is_subgroup_of(x) {
            violations.push(g);
        }
    }
    LemmaReport {
        centralizer_order: cent.order(),
        center_order: center.order(),
        centralizer_is_center: cent == center,
        scanned,
        violations,
    }
}

/// Marks the conjugacy class of every generator of `<g>`; they all share the
/// normal closure of `g`.
fn mark_same_closure<R: GroupRepr>(s: &Group<R>, g: u32, seen: &mut FixedBitSet) {
    let e = s.order_log(g);
    let ord = (s.prime() as u64).pow(e);
    let mut power = g;
    for k in 1..ord {
        if k % s.prime() as u64 != 0 && !seen.contains(power as usize) {
            let mut stack = vec![power];
            seen.insert(power as usize);
            while let Some(y) = stack.pop() {
                for &h in s.generators() {
                    let c = s.conjugate(y, h);
                    if !seen.put(c as usize) {
                        stack.push(c);
                    }
                }
            }
        }
        power = s.mul(power, g);
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureVerdict {
    pub j: Subgroup,
    pub rank: u32,
    pub maximal_elementary_abelian: usize,
    pub oliver: OliverResult,
    /// `J(S) <= X(S)`.
    pub holds: bool,
}

/// Computes `J(S)` and the Oliver subgroup and compares them. The greedy
/// computation runs in shuffled order with `seed`; its certificate must pass.
pub fn check_conjecture<R: GroupRepr>(s: &Group<R>, seed: u64) -> Result<ConjectureVerdict> {
    let (j, report) = s.thompson()?;
    let oliver = compute_oliver(s, CandidateOrder::Shuffled(seed))?;
    let holds = j.is_subgroup_of(&oliver.subgroup) && oliver.certificate.passed();
    Ok(ConjectureVerdict {
        rank: report.rank,
        maximal_elementary_abelian: report.maximal_subgroups.len(),
        j,
        oliver,
        holds,
    })
}

/// A family of passing Q-series on `s` used to exercise concatenation: the
/// prefixes of the Oliver certificate and up to `limit` distinct one-step
/// chains `1 <= <g^S>`, in canonical order.
pub fn passing_chain_family<R: GroupRepr>(s: &Group<R>, limit: usize) -> Result<Vec<QSeries>> {
    let cert = compute_oliver(s, CandidateOrder::Canonical)?.certificate;
    let mut family = Vec::new();
    for len in 1..=cert.chain.len() {
        family.push(verify_qseries(s, &cert.chain[..len])?);
    }
    let mut seen: Vec<Subgroup> = Vec::new();
    for g in 0..s.order() as u32 {
        if seen.len() >= limit {
            break;
        }
        let q = s.normal_closure_of(g);
        if q.is_trivial() || seen.contains(&q) {
            continue;
        }
        let chain = verify_qseries(s, &[s.trivial_subgroup(), q.clone()])?;
        seen.push(q);
        if chain.passed() {
            family.push(chain);
        }
    }
    Ok(family)
}
