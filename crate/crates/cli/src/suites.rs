//! The checks behind each command. Every function appends records in a
//! fixed order and draws randomness only from the run's single generator.

use std::time::Instant;

use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use sylowkit::algebra::{is_unitary, satisfies, FlipIdentity, FormKind};
use sylowkit::group::{CommutatorStrategy, Group, GroupRepr, Subgroup, TableGroup, DEFAULT_BUDGET};
use sylowkit::oliver::{
    check_conjecture, compute_oliver, concat_qseries, lemma_checks, oliver_bruteforce,
    passing_chain_family, verify_qseries, CandidateOrder, QSeries, ORACLE_LIMIT,
};
use sylowkit::unitary::{
    centralizer_condition, comm_formula, enumerate_sylow, inverse_formula, mul_formula, Parity,
    SubgroupTag, UnitaryParams, UnitarySylow,
};
use sylowkit::wreath::{coprime_conjecture_check, verify_wreath_j, WreathJReport, WreathSpec};
use sylowkit::{Error, Fe, Field, Mat, Result};

use crate::report::Record;

/// Domains smaller than this are checked exhaustively instead of sampled.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

/// Largest Sylow subgroup whose closure is checked element by element.
pub const CLOSURE_LIMIT: usize = 15625;

/// Pairs of chains per corpus group used for the concatenation property.
pub const CHAIN_FAMILY_LIMIT: usize = 4;

pub struct Ctx {
    pub rng: ChaCha8Rng,
    pub samples: usize,
    pub budget: usize,
}

fn timed(f: impl FnOnce() -> Result<Record>) -> Result<Record> {
    let t = Instant::now();
    let mut r = f()?;
    r.elapsed = Some(t.elapsed());
    Ok(r)
}

fn random_mat(f: &Field, m: usize, rng: &mut ChaCha8Rng) -> Mat {
    let entries: Vec<Fe> = (0..m * m).map(|_| Fe(rng.random_range(0..f.size()) as u16)).collect();
    Mat::from_entries(m, &entries).expect("entry count matches")
}

fn mat_from_code(f: &Field, m: usize, mut code: u128) -> Mat {
    let size = f.size() as u128;
    let entries: Vec<Fe> = (0..m * m)
        .map(|_| {
            let e = Fe((code % size) as u16);
            code /= size;
            e
        })
        .collect();
    Mat::from_entries(m, &entries).expect("entry count matches")
}

fn sizes(chain: &[Subgroup]) -> String {
    chain.iter().map(|h| h.order().to_string()).collect::<Vec<_>>().join(",")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// The five flip-transpose identities on `m x m` matrices over `F_{q^2}`.
pub fn prop31(ctx: &mut Ctx, p: u32, k: u32, m: usize, out: &mut Vec<Record>) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("--m must be at least 1".into()));
    }
    let f = Field::new(p, k)?;
    let domain = (f.size() as u128).checked_pow(2 * (m * m) as u32);
    let exhaustive = domain.is_some_and(|d| d < EXHAUSTIVE_LIMIT);
    let pairs: Vec<(Mat, Mat)> = if exhaustive {
        let per = (f.size() as u128).pow((m * m) as u32);
        (0..per)
            .flat_map(|a| (0..per).map(move |b| (a, b)))
            .map(|(a, b)| (mat_from_code(&f, m, a), mat_from_code(&f, m, b)))
            .collect()
    } else {
        (0..ctx.samples)
            .map(|_| (random_mat(&f, m, &mut ctx.rng), random_mat(&f, m, &mut ctx.rng)))
            .collect()
    };
    for id in FlipIdentity::ALL {
        out.push(timed(|| {
            let mut applicable = 0usize;
            let mut failures = 0usize;
            for (b, c) in &pairs {
                match id.check(b, c, &f) {
                    Some(true) => applicable += 1,
                    Some(false) => {
                        applicable += 1;
                        failures += 1
                    }
                    None => {}
                }
            }
            Ok(Record::new(format!("prop31.{}", id.name()), format!("flip-transpose calculus: {}", id.statement()))
                .field("q", f.q())
                .field("m", m)
                .field("mode", if exhaustive { "exhaustive" } else { "sampled" })
                .field("pairs", pairs.len())
                .field("applicable", applicable)
                .field("failures", failures)
                .require(failures == 0 && applicable > 0))
        })?);
    }
    Ok(())
}

fn closed_form_unitary_order(q: u128, n: u32) -> u128 {
    let mut order = q.pow(n * (n - 1) / 2);
    for i in 1..=n {
        let qi = q.pow(i);
        order *= if i % 2 == 0 { qi - 1 } else { qi + 1 };
    }
    order
}

/// Counts `2 x 2` unitary matrices over `F_{p^2}` by testing every matrix.
pub fn count_unitary_2x2(p: u32) -> Result<u64> {
    let f = Field::new(p, 1)?;
    let size = f.size() as u128;
    Ok((0..size.pow(4))
        .filter(|&code| is_unitary(&mat_from_code(&f, 2, code), &f))
        .count() as u64)
}

fn random_index(g: &Group<UnitarySylow>, rng: &mut ChaCha8Rng) -> u32 {
    rng.random_range(0..g.order() as u32)
}

pub fn sylow_suite(ctx: &mut Ctx, params: UnitaryParams, out: &mut Vec<Record>) -> Result<Group<UnitarySylow>> {
    let g = enumerate_sylow(params, ctx.budget)?;
    let s = g.repr();
    out.push(
        Record::new("sylow.order", "|S| = q^(n(n-1)/2)")
            .field("order", g.order())
            .field("expected", params.sylow_order())
            .require(g.order() as u128 == params.sylow_order()),
    );

    out.push(timed(|| {
        if g.order() <= CLOSURE_LIMIT {
            let c = g.verify_closure();
            Ok(Record::new("sylow.closure", "the parametrized elements form a group")
                .field("mode", "exhaustive")
                .field("elements", c.elements)
                .field("codec_bijective", c.codec_bijective)
                .field("inverses", c.inverses)
                .field("closed_under_generators", c.closed_under_generators)
                .field("generated_order", c.generated_order)
                .require(c.passed()))
        } else {
            let f = s.field();
            let mut failures = 0;
            for _ in 0..ctx.samples {
                let x = s.embed(&s.decode(random_index(&g, &mut ctx.rng) as u64));
                let y = s.embed(&s.decode(random_index(&g, &mut ctx.rng) as u64));
                let inv = x.inverse(f)?;
                let ok = s.decompose(&x.mul(&y, f)).is_ok() && s.decompose(&inv).is_ok();
                failures += !ok as usize;
            }
            Ok(Record::new("sylow.closure", "the parametrized elements form a group")
                .field("mode", "sampled")
                .field("samples", ctx.samples)
                .field("failures", failures)
                .require(failures == 0))
        }
    })?);

    out.push(timed(|| {
        let f = s.field();
        let exhaustive = (g.order() as u128) < EXHAUSTIVE_LIMIT;
        let indices: Vec<u64> = if exhaustive {
            (0..g.order() as u64).collect()
        } else {
            (0..ctx.samples).map(|_| random_index(&g, &mut ctx.rng) as u64).collect()
        };
        let mut failures = 0;
        for &i in &indices {
            let e = s.decode(i);
            let x = s.embed(&e);
            let ok = is_unitary(&x, f)
                && x.is_lower_unitriangular()
                && s.decompose(&x).ok().as_ref() == Some(&e)
                && s.encode(&e).ok() == Some(i);
            failures += !ok as usize;
        }
        Ok(Record::new("sylow.codec", "every index decodes to a unitary lower unitriangular matrix and back")
            .field("mode", if exhaustive { "exhaustive" } else { "sampled" })
            .field("checked", indices.len())
            .field("failures", failures)
            .require(failures == 0))
    })?);

    out.push(timed(|| {
        let mut r = Record::new("unitary.order_small", "|U_2(F_q)| = q * (q + 1) * (q^2 - 1) by exhaustive count");
        for p in [2u32, 3] {
            let count = count_unitary_2x2(p)?;
            let expected = closed_form_unitary_order(p as u128, 2);
            r.push(&format!("u2_f{p}"), count);
            r.push(&format!("u2_f{p}_expected"), expected);
            r = r.require(count as u128 == expected);
        }
        Ok(r)
    })?);
    Ok(g)
}

/// `x^{-1} y^{-1} x y` by Gaussian elimination and plain products.
fn matrix_commutator(x: &Mat, y: &Mat, f: &Field) -> Result<Mat> {
    Ok(x.inverse(f)?.mul(&y.inverse(f)?, f).mul(x, f).mul(y, f))
}

pub fn formulas_suite(ctx: &mut Ctx, params: UnitaryParams, out: &mut Vec<Record>) -> Result<()> {
    let g = enumerate_sylow(params, ctx.budget)?;
    let s = g.repr();
    let f = s.field();
    let a_count = s.d_trivial_count() as u32;
    let a0_count = s.alpha_free_count() as u32;
    let pick = |rng: &mut ChaCha8Rng, bound: u32| s.decode(rng.random_range(0..bound) as u64);
    let order = g.order() as u32;
    match params.parity() {
        Parity::Even => {
            out.push(timed(|| {
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let (x, y) = (pick(&mut ctx.rng, order), pick(&mut ctx.rng, order));
                    let z = mul_formula(s, &x, &y)?;
                    failures += (s.embed(&z) != s.embed(&x).mul(&s.embed(&y), f)) as usize;
                }
                Ok(Record::new("formulas.product", "X_{D,P} X_{D',P'} = X_{DD', D'^-1 P (conj(D')^F)^-1 + P'}")
                    .field("samples", ctx.samples)
                    .field("failures", failures)
                    .require(failures == 0))
            })?);
            out.push(timed(|| {
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let x = pick(&mut ctx.rng, order);
                    let z = inverse_formula(s, &x)?;
                    failures += (s.embed(&z) != s.embed(&x).inverse(f)?) as usize;
                }
                Ok(Record::new("formulas.inverse", "X_{D,P}^-1 = X_{D^-1, -D P conj(D)^F}")
                    .field("samples", ctx.samples)
                    .field("failures", failures)
                    .require(failures == 0))
            })?);
            out.push(timed(|| {
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let (x, y) = (pick(&mut ctx.rng, a_count), pick(&mut ctx.rng, order));
                    let z = comm_formula(s, &x, &y)?;
                    failures += (s.embed(&z) != matrix_commutator(&s.embed(&x), &s.embed(&y), f)?) as usize;
                }
                Ok(Record::new("formulas.commutator", "[X_{1,P}, X_{D,P'}] = X_{1, D^-1 P (conj(D)^F)^-1 - P}")
                    .field("samples", ctx.samples)
                    .field("failures", failures)
                    .require(failures == 0))
            })?);
        }
        Parity::Odd => {
            out.push(timed(|| {
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let (x, y) = (pick(&mut ctx.rng, a_count), pick(&mut ctx.rng, a_count));
                    let z = comm_formula(s, &x, &y)?;
                    failures += (s.embed(&z) != matrix_commutator(&s.embed(&x), &s.embed(&y), f)?) as usize;
                }
                Ok(Record::new(
                    "formulas.commutator_alpha",
                    "[X_{1,P,a}, X_{1,P',a'}] = X_{1, Q conj(a')^T a - Q conj(a)^T a', 0}",
                )
                .field("samples", ctx.samples)
                .field("failures", failures)
                .require(failures == 0))
            })?);
            out.push(timed(|| {
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let (x, y) = (pick(&mut ctx.rng, a0_count), pick(&mut ctx.rng, order));
                    let z = comm_formula(s, &x, &y)?;
                    failures += (s.embed(&z) != matrix_commutator(&s.embed(&x), &s.embed(&y), f)?) as usize;
                }
                Ok(Record::new(
                    "formulas.commutator_alpha_free",
                    "[X_{1,P,0}, X_{D,P',a'}] = X_{1, D^-1 P (conj(D)^F)^-1 - P, 0}",
                )
                .field("samples", ctx.samples)
                .field("failures", failures)
                .require(failures == 0))
            })?);
            out.push(timed(|| {
                // The twisted form holds for every decoded P, so the products
                // computed by matrices land back in the parametrization.
                let mut failures = 0;
                for _ in 0..ctx.samples {
                    let (i, j) = (ctx.rng.random_range(0..order), ctx.rng.random_range(0..order));
                    let z = s.decode(g.mul(i, j) as u64);
                    let ok = satisfies(&z.p, FormKind::AlphaConjSkewPersymmetric(&z.alpha), f)?;
                    failures += !ok as usize;
                }
                Ok(Record::new("formulas.odd_form", "P + conj(P)^F = -Q conj(a)^T a for every product")
                    .field("samples", ctx.samples)
                    .field("failures", failures)
                    .require(failures == 0))
            })?);
        }
    }
    Ok(())
}

pub fn centralizer_suite(ctx: &mut Ctx, params: UnitaryParams, out: &mut Vec<Record>) -> Result<()> {
    let g = enumerate_sylow(params, ctx.budget)?;
    let a = g.distinguished_subgroup(SubgroupTag::A)?;
    let target_tag = match params.parity() {
        Parity::Even => SubgroupTag::A,
        Parity::Odd => SubgroupTag::A0,
    };
    let target = g.distinguished_subgroup(target_tag)?;
    out.push(timed(|| {
        let c = g.centralizer(&a);
        Ok(Record::new("centralizer.scan", format!("C_S(A) = {target_tag}"))
            .field("scanned", g.order())
            .field("a_order", a.order())
            .field("centralizer_order", c.order())
            .field("target_order", target.order())
            .field("equal", c == target)
            .require(c == target))
    })?);
    out.push(timed(|| {
        let abelian = g.is_abelian(&target);
        let centralizes = target
            .witness()
            .iter()
            .all(|&t| a.witness().iter().all(|&x| g.commutes(t, x)));
        Ok(Record::new("centralizer.reverse_inclusion", format!("{target_tag} is abelian and centralizes A"))
            .field("abelian", abelian)
            .field("centralizes", centralizes)
            .require(abelian && centralizes))
    })?);
    if params.parity() == Parity::Even {
        let s = g.repr();
        let f = s.field();
        out.push(timed(|| {
            let mut disagreements = 0;
            let mut commuting = 0;
            for _ in 0..ctx.samples {
                let i = ctx.rng.random_range(0..a.order() as u32);
                let j = ctx.rng.random_range(0..g.order() as u32);
                let (x, y) = (s.decode(i as u64), s.decode(j as u64));
                let u = y.d.sub(&Mat::identity(y.d.dim()), f);
                let predicted = centralizer_condition(&u, &x.p, f)?;
                let actual = g.commutes(i, j);
                commuting += actual as usize;
                disagreements += (predicted != actual) as usize;
            }
            Ok(Record::new(
                "centralizer.condition",
                "X_{1+U,P'} commutes with X_{1,P} iff U P + P conj(U)^F + U P conj(U)^F = 0",
            )
            .field("samples", ctx.samples)
            .field("commuting", commuting)
            .field("disagreements", disagreements)
            .require(disagreements == 0))
        })?);
    }
    Ok(())
}

fn chain_record(name: &str, anchor: &str, q: &QSeries) -> Record {
    let mut r = Record::new(name, anchor).field("chain", sizes(&q.chain));
    for (i, step) in q.steps.iter().enumerate() {
        r.push(&format!("step{}_normal", i + 1), step.normal);
        r.push(&format!("step{}_omega_order", i + 1), step.omega_order);
        r.push(&format!("step{}_commutators", i + 1), join(&step.commutator_orders));
    }
    r.require(q.passed())
}

pub fn qseries_suite(ctx: &mut Ctx, params: UnitaryParams, out: &mut Vec<Record>) -> Result<()> {
    let g = enumerate_sylow(params, ctx.budget)?;
    let a = g.distinguished_subgroup(SubgroupTag::A)?;
    let top_tag = if params.m() >= 2 {
        SubgroupTag::Ntilde(2, 1)
    } else {
        SubgroupTag::Full
    };
    let top = g.distinguished_subgroup(top_tag)?;
    let chain = timed(|| {
        let q = verify_qseries(&g, &[g.trivial_subgroup(), a.clone(), top.clone()])?;
        Ok(chain_record("qseries.chain", &format!("1 <= A <= {top_tag} is a Q-series for p >= 5"), &q))
    })?;
    out.push(chain);
    out.push(timed(|| {
        let omega = g.omega1(&g.centralizer(&a));
        let series = g.commutator_series(&omega, &top, 3, CommutatorStrategy::Auto);
        let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
        Ok(Record::new("qseries.triple_commutator", format!("[Omega_1(C_S(A)), {top_tag}; 3] = 1"))
            .field("omega_order", omega.order())
            .field("top_order", top.order())
            .field("commutators", join(&orders))
            .require(series.last().is_some_and(Subgroup::is_trivial)))
    })?);
    out.push(timed(|| {
        let q = verify_qseries(&g, &[g.trivial_subgroup(), a.clone(), top.clone()])?;
        if !q.passed() {
            return Ok(Record::new("qseries.concat_idempotent", "a passing chain joined with itself passes").require(false));
        }
        let joined = concat_qseries(&g, &q, &q)?;
        Ok(Record::new("qseries.concat_idempotent", "a passing chain joined with itself passes")
            .field("chain", sizes(&joined.chain))
            .field("ends_at_top", joined.top() == &top)
            .require(joined.passed() && joined.top() == &top))
    })?);
    Ok(())
}

/// Concatenation over chain families of every corpus group, then one
/// synthetic join of two distinct normal subgroups.
pub fn qseries_corpus(out: &mut Vec<Record>) -> Result<()> {
    for g in sylowkit::corpus::corpus()? {
        out.push(timed(|| {
            let family = passing_chain_family(&g, CHAIN_FAMILY_LIMIT)?;
            let mut pairs = 0;
            let mut failures = 0;
            for c1 in &family {
                for c2 in &family {
                    pairs += 1;
                    failures += !concat_qseries(&g, c1, c2)?.passed() as usize;
                }
            }
            Ok(Record::new(format!("qseries.concat.{}", g.label()), "joining two passing chains gives a passing chain")
                .field("order", g.order())
                .field("chains", family.len())
                .field("pairs", pairs)
                .field("failures", failures)
                .require(failures == 0))
        })?);
    }
    out.push(timed(|| {
        let ut = sylowkit::corpus::unitriangular3(5)?;
        let ut = TableGroup::from_group(&ut, "UT3(F5)")?;
        let c5 = TableGroup::cyclic(5, 1)?;
        let g = Group::new(TableGroup::direct_product(&ut, &c5)?, DEFAULT_BUDGET)?;
        // Pairs are numbered a * |C5| + b.
        let left = g.subgroup_from_members((0..125u32).map(|a| a * 5).collect());
        let right = g.subgroup_from_members((0..5u32).collect());
        let c1 = verify_qseries(&g, &[g.trivial_subgroup(), left.clone()])?;
        let c2 = verify_qseries(&g, &[g.trivial_subgroup(), right.clone()])?;
        let joined = concat_qseries(&g, &c1, &c2)?;
        Ok(Record::new(
            "qseries.concat.synthetic",
            "chains to two distinct normal subgroups join into a chain to their product",
        )
        .field("group", g.label())
        .field("synthetic", true)
        .field("left_order", left.order())
        .field("right_order", right.order())
        .field("chain", sizes(&joined.chain))
        .require(c1.passed() && c2.passed() && joined.passed() && joined.top().order() == g.order()))
    })?);
    Ok(())
}

pub fn thm26_suite(ctx: &mut Ctx, spec: WreathSpec, out: &mut Vec<Record>) -> Result<()> {
    out.push(timed(|| {
        let anchor = "J(P wr C_p) is the base copy of J(P)^p and elementary abelian when J(P) is";
        let r = Record::new("thm26.wreath_j", anchor).field("group", spec.label());
        Ok(match verify_wreath_j(spec, ctx.budget)? {
            WreathJReport::Skipped { reason } => r.field("outcome", "skipped").field("reason", reason),
            WreathJReport::Unverified {
                lower_j_order,
                predicted_order,
                reason,
            } => r
                .field("outcome", "unverified")
                .field("lower_j_order", lower_j_order)
                .field("predicted_j_order", predicted_order)
                .field("reason", reason),
            report @ WreathJReport::Checked(_) => {
                let passed = report.passed() == Some(true);
                let WreathJReport::Checked(c) = report else { unreachable!() };
                r.field("outcome", "checked")
                    .field("lower_j_order", c.lower_j_order)
                    .field("lower_j_elementary_abelian", c.lower_j_elementary_abelian)
                    .field("j_order", c.j_order)
                    .field("j_rank", c.rank)
                    .field("j_elementary_abelian", c.j_elementary_abelian)
                    .field("j_equals_base_copy", c.j_equals_base_copy)
                    .require(passed)
            }
        })
    })?);
    Ok(())
}

/// Thompson subgroup, Oliver subgroup with certificate, a shuffled rerun,
/// the exhaustive oracle when small enough, and the post-hoc lemma checks.
pub fn compute_group<R: GroupRepr>(ctx: &mut Ctx, g: &Group<R>, prefix: &str, out: &mut Vec<Record>) -> Result<()> {
    out.push(timed(|| {
        let (j, report) = g.thompson()?;
        Ok(Record::new(format!("{prefix}.thompson"), "J(S) is generated by the elementary abelian subgroups of maximal rank")
            .field("order", g.order())
            .field("j_order", j.order())
            .field("rank", report.rank)
            .field("maximal_subgroups", report.maximal_subgroups.len())
            .field("j_elementary_abelian", g.is_elementary_abelian(&j)))
    })?);
    let seed = ctx.rng.next_u64();
    let mut oliver = None;
    out.push(timed(|| {
        let r = compute_oliver(g, CandidateOrder::Canonical)?;
        let shuffled = compute_oliver(g, CandidateOrder::Shuffled(seed))?;
        let agree = shuffled.subgroup == r.subgroup;
        let rec = chain_record(
            &format!("{prefix}.oliver"),
            "X(S) is the largest normal subgroup admitting a Q-series",
            &r.certificate,
        )
        .field("oliver_order", r.subgroup.order())
        .field("normal", g.is_normal(&r.subgroup))
        .field("rounds", r.rounds)
        .field("rejected_last_round", r.maximality_evidence.len())
        .field("shuffle_seed", seed)
        .field("shuffled_agrees", agree)
        .require(agree && g.is_normal(&r.subgroup));
        oliver = Some(r);
        Ok(rec)
    })?);
    let x = oliver.expect("set above").subgroup;
    if g.order() <= ORACLE_LIMIT {
        out.push(timed(|| {
            let b = oliver_bruteforce(g)?;
            Ok(Record::new(format!("{prefix}.oracle"), "exhaustive search over normal subgroups agrees")
                .field("subgroups", b.subgroup_count)
                .field("normal_subgroups", b.normal_count)
                .field("admitting", b.admitting_count)
                .field("oracle_order", b.subgroup.order())
                .field("agrees", b.subgroup == x)
                .require(b.subgroup == x && b.contains_all_admitting))
        })?);
    }
    out.push(timed(|| {
        let l = lemma_checks(g, &x);
        Ok(Record::new(
            format!("{prefix}.lemmas"),
            "C_S(X) = Z(X), and every normal closure Q with [Omega_1(Z(X)), Q; p-1] = 1 lies in X",
        )
        .field("centralizer_order", l.centralizer_order)
        .field("center_order", l.center_order)
        .field("closures_scanned", l.scanned)
        .field("violations", l.violations.len())
        .require(l.passed()))
    })?);
    Ok(())
}

pub fn conjecture_group<R: GroupRepr>(ctx: &mut Ctx, g: &Group<R>, prefix: &str, out: &mut Vec<Record>) -> Result<()> {
    let seed = ctx.rng.next_u64();
    out.push(timed(|| {
        let v = check_conjecture(g, seed)?;
        Ok(Record::new(format!("{prefix}.verdict"), "J(S) <= X(S)")
            .field("order", g.order())
            .field("j_order", v.j.order())
            .field("rank", v.rank)
            .field("oliver_order", v.oliver.subgroup.order())
            .field("certificate", sizes(&v.oliver.certificate.chain))
            .field("shuffle_seed", seed)
            .field("holds", v.holds)
            .require(v.holds))
    })?);
    Ok(())
}

pub fn conjecture_wreath(ctx: &mut Ctx, spec: WreathSpec, out: &mut Vec<Record>) -> Result<()> {
    let seed = ctx.rng.next_u64();
    out.push(timed(|| {
        let v = coprime_conjecture_check(spec, ctx.budget, seed)?;
        Ok(Record::new("conjecture.verdict", "J(S) <= X(S), with J(S) elementary abelian and normal")
            .field("group", spec.label())
            .field("j_order", v.verdict.j.order())
            .field("rank", v.verdict.rank)
            .field("oliver_order", v.verdict.oliver.subgroup.order())
            .field("j_elementary_abelian", v.j_elementary_abelian)
            .field("j_normal", v.j_normal)
            .field("j_chain_passes", v.j_chain_passes)
            .field("shuffle_seed", seed)
            .field("holds", v.verdict.holds)
            .require(v.passed()))
    })?);
    Ok(())
}
