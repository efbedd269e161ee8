//! Command-line front end: builds groups, runs verification suites and
//! writes deterministic `key=value` reports.

pub mod args;
pub mod report;
pub mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use sylowkit::cache::{unitary_elements, wreath_elements, CacheFile, CacheHeader};
use sylowkit::group::Group;
use sylowkit::unitary::{enumerate_sylow, UnitaryParams};
use sylowkit::wreath::{build_wreath, WreathSpec};
use sylowkit::Error;

use args::{Command, GroupArgs, Suite};
use report::{Record, Report};
use suites::Ctx;

/// Groups above this order are never written to the cache.
pub const CACHE_LIMIT: usize = 1 << 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Budget = 3,
    Io = 4,
    Cache = 5,
}

/// A run that could not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit(&self) -> Exit {
        match self {
            Failure::Usage(_) => Exit::Usage,
            Failure::Core(e) => match e {
                Error::BudgetExceeded { .. } => Exit::Budget,
                Error::Io(_) => Exit::Io,
                Error::CacheMismatch(_) | Error::CacheFormat(_) => Exit::Cache,
                Error::NotPrime(_)
                | Error::InvalidParams(_)
                | Error::FieldTooLarge(_)
                | Error::NoIrreducible { .. } => Exit::Usage,
                _ => Exit::Fail,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage: {m}"),
            Failure::Core(e) => e.to_string(),
        }
    }
}

pub enum Target {
    Unitary(UnitaryParams),
    Wreath(WreathSpec),
    Corpus,
}

impl Target {
    pub fn from_args(g: &GroupArgs) -> Result<Self, Failure> {
        if g.corpus {
            return Ok(Target::Corpus);
        }
        let p = g.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
        let wreath = g.r.is_some() || g.height.is_some();
        if wreath {
            if g.n.is_some() || g.q.is_some() || g.k.is_some() {
                return Err(Failure::Usage("--r/--height cannot be combined with --q, --k or --n".into()));
            }
            let (Some(r), Some(h)) = (g.r, g.height) else {
                return Err(Failure::Usage("wreath towers need both --r and --height".into()));
            };
            return Ok(Target::Wreath(WreathSpec::new(p, r, h)?));
        }
        let n = g.n.ok_or_else(|| Failure::Usage("--n is required (or --r and --height, or --corpus)".into()))?;
        Ok(Target::Unitary(UnitaryParams::new(p, field_q(g, p)?, n)?))
    }

    fn describe(&self) -> String {
        match self {
            Target::Unitary(u) => format!("p={} q={} n={}", u.p(), u.q(), u.n()),
            Target::Wreath(w) => format!("p={} r={} height={}", w.p(), w.r(), w.height()),
            Target::Corpus => "corpus".into(),
        }
    }

    fn cache_name(&self) -> Option<String> {
        match self {
            Target::Unitary(u) => Some(format!("sylow-p{}-q{}-n{}.cache", u.p(), u.q(), u.n())),
            Target::Wreath(w) => Some(format!("wreath-p{}-r{}-h{}.cache", w.p(), w.r(), w.height())),
            Target::Corpus => None,
        }
    }
}

/// `q` from `--q`, or `p^k` from `--k`.
fn field_q(g: &GroupArgs, p: u32) -> Result<u32, Failure> {
    match (g.q, g.k) {
        (Some(q), None) => Ok(q),
        (None, Some(k)) => p
            .checked_pow(k)
            .ok_or_else(|| Failure::Usage(format!("p^k = {p}^{k} overflows"))),
        (None, None) => Err(Failure::Usage("one of --q or --k is required".into())),
        (Some(_), Some(_)) => Err(Failure::Usage("--q and --k are exclusive".into())),
    }
}

pub struct Outcome {
    pub report: Report,
    pub exit: Exit,
}

impl Outcome {
    pub fn text(&self, timing: bool) -> String {
        self.report.render(timing)
    }
}

/// Runs one command. Errors end the run with the records gathered so far.
pub fn run(command: &Command) -> Outcome {
    let common = command.common();
    let mut report = Report::default();
    report.header("tool", format!("sylowkit {}", env!("CARGO_PKG_VERSION")));
    report.header("command", command.name());
    if let Command::Verify { suite, m, .. } = command {
        report.header("suite", suite.name());
        if let Some(m) = m {
            report.header("m", m);
        }
    }
    report.header("samples", common.samples);
    report.header("seed", common.seed);
    report.header("budget", common.budget);
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(common.seed),
        samples: common.samples,
        budget: common.budget,
    };
    let result = execute(command, &mut ctx, &mut report);
    let exit = match result {
        Ok(()) if report.passed() => Exit::Pass,
        Ok(()) => Exit::Fail,
        Err(f) => {
            report.error = Some(f.message());
            f.exit()
        }
    };
    Outcome { report, exit }
}

fn execute(command: &Command, ctx: &mut Ctx, report: &mut Report) -> Result<(), Failure> {
    let common = command.common();
    // prop31 only needs a field.
    if let Command::Verify {
        suite: Suite::Prop31,
        m,
        group,
        ..
    } = command
    {
        let p = group.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
        let k = match (group.k, group.q) {
            (Some(k), _) => k,
            (None, Some(q)) => exponent_of(q, p)?,
            (None, None) => return Err(Failure::Usage("one of --q or --k is required".into())),
        };
        let m = m.ok_or_else(|| Failure::Usage("--m is required for prop31".into()))?;
        report.header("params", format!("p={p} k={k} m={m}"));
        return Ok(suites::prop31(ctx, p, k, m, &mut report.records)?);
    }

    let target = Target::from_args(command.group())?;
    report.header("params", target.describe());
    let cache_path = match command {
        Command::Construct { .. } => common
            .out
            .clone()
            .or_else(|| Some(common.cache_dir.as_ref()?.join(target.cache_name()?))),
        _ => common
            .cache_dir
            .as_ref()
            .and_then(|d| Some(d.join(target.cache_name()?))),
    };
    if let Some(path) = &cache_path {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(Error::Io)?;
        }
    }

    match (command, &target) {
        (Command::Construct { .. }, Target::Corpus) => {
            return Err(Failure::Usage("construct needs a unitary or wreath group".into()))
        }
        (Command::Construct { .. }, _) => {
            report.records.push(cache_record(&target, cache_path.as_deref(), ctx.budget, true)?);
        }
        (Command::Verify { suite, .. }, _) => {
            if let Some(path) = &cache_path {
                report.records.push(cache_record(&target, Some(path), ctx.budget, false)?);
            }
            verify(*suite, &target, ctx, &mut report.records)?;
        }
        (Command::Compute { .. }, _) | (Command::Conjecture { .. }, _) => {
            if let Some(path) = &cache_path {
                report.records.push(cache_record(&target, Some(path), ctx.budget, false)?);
            }
            let compute = matches!(command, Command::Compute { .. });
            let out = &mut report.records;
            match &target {
                Target::Unitary(u) => {
                    let g = enumerate_sylow(*u, ctx.budget)?;
                    if compute {
                        suites::compute_group(ctx, &g, "compute", out)?;
                    } else {
                        suites::conjecture_group(ctx, &g, "conjecture", out)?;
                    }
                }
                Target::Wreath(w) => {
                    if compute {
                        let g = build_wreath(*w, ctx.budget)?;
                        suites::compute_group(ctx, &g, "compute", out)?;
                    } else {
                        suites::conjecture_wreath(ctx, *w, out)?;
                    }
                }
                Target::Corpus => {
                    for g in sylowkit::corpus::corpus()? {
                        let prefix = format!("{}.{}", command.name(), g.label());
                        if compute {
                            suites::compute_group(ctx, &g, &prefix, out)?;
                        } else {
                            suites::conjecture_group(ctx, &g, &prefix, out)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn exponent_of(q: u32, p: u32) -> Result<u32, Failure> {
    let mut k = 0;
    let mut x = 1u64;
    while x < q as u64 {
        x *= p as u64;
        k += 1;
    }
    if x == q as u64 && k > 0 {
        Ok(k)
    } else {
        Err(Failure::Usage(format!("q = {q} is not a power of p = {p}")))
    }
}

fn verify(suite: Suite, target: &Target, ctx: &mut Ctx, out: &mut Vec<Record>) -> Result<(), Failure> {
    match (suite, target) {
        (Suite::Sylow, Target::Unitary(u)) => {
            suites::sylow_suite(ctx, *u, out)?;
        }
        (Suite::Formulas, Target::Unitary(u)) => suites::formulas_suite(ctx, *u, out)?,
        (Suite::Centralizer, Target::Unitary(u)) => suites::centralizer_suite(ctx, *u, out)?,
        (Suite::Qseries, Target::Unitary(u)) => suites::qseries_suite(ctx, *u, out)?,
        (Suite::Qseries, Target::Corpus) => suites::qseries_corpus(out)?,
        (Suite::Thm26, Target::Wreath(w)) => suites::thm26_suite(ctx, *w, out)?,
        (suite, _) => {
            return Err(Failure::Usage(format!(
                "suite {} does not apply to {}",
                suite.name(),
                target.describe()
            )))
        }
    }
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(2 * bytes.len()), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// Enumerates the target, then writes its cache or checks an existing file
/// against the fresh element section. `always` reports a record even
/// without a path.
fn cache_record(target: &Target, path: Option<&Path>, budget: usize, always: bool) -> Result<Record, Failure> {
    let (header, elements, label) = match target {
        Target::Unitary(u) => {
            let order = u.sylow_order();
            if order > CACHE_LIMIT as u128 && !always {
                return Ok(Record::new("cache", "cached elements match a fresh enumeration")
                    .field("cache_status", "skipped")
                    .field("reason", format!("order {order} exceeds the cache limit {CACHE_LIMIT}")));
            }
            if order > CACHE_LIMIT as u128 {
                return Err(Error::BudgetExceeded {
                    what: format!("cache of {}", u.label()),
                    required: order,
                    budget: CACHE_LIMIT,
                }
                .into());
            }
            let g = enumerate_sylow(*u, budget)?;
            (CacheHeader::for_unitary(&g), unitary_elements(&g), g.label())
        }
        Target::Wreath(w) => {
            let order = w.order().unwrap_or(u128::MAX);
            if order > CACHE_LIMIT as u128 {
                if !always {
                    return Ok(Record::new("cache", "cached elements match a fresh enumeration")
                        .field("cache_status", "skipped")
                        .field("reason", format!("order {order} exceeds the cache limit {CACHE_LIMIT}")));
                }
                return Err(Error::BudgetExceeded {
                    what: format!("cache of {}", w.label()),
                    required: order,
                    budget: CACHE_LIMIT,
                }
                .into());
            }
            let g: Group<_> = build_wreath(*w, budget)?;
            (CacheHeader::for_wreath(&g), wreath_elements(&g), g.label())
        }
        Target::Corpus => unreachable!("corpus groups are not cached"),
    };
    let digest = hex(&Sha256::digest(&elements));
    let mut r = Record::new("cache", "cached elements match a fresh enumeration")
        .field("group", label)
        .field("element_bytes", elements.len())
        .field("element_sha256", digest);
    let Some(path) = path else {
        return Ok(r.field("cache_status", "not_written"));
    };
    let fresh = CacheFile { header, elements };
    match CacheFile::read_compatible(path, &fresh.header)? {
        Some(existing) => {
            if existing.elements != fresh.elements {
                return Err(Error::CacheMismatch(format!(
                    "{} has the expected header but a different element section",
                    path.display()
                ))
                .into());
            }
            r.push("cache_status", "hit");
            r.push("identical", true);
        }
        None => {
            fresh.write_to(path)?;
            r.push("cache_status", "written");
        }
    }
    r.push("path", display_path(path));
    Ok(r)
}

fn display_path(p: &Path) -> String {
    p.file_name().map(PathBuf::from).unwrap_or_else(|| p.to_path_buf()).display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_of_powers() {
        assert_eq!(exponent_of(25, 5).unwrap(), 2);
        assert!(exponent_of(24, 5).is_err());
        assert!(exponent_of(1, 5).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Usage("x".into()).exit() as i32, 2);
        assert_eq!(Failure::Core(Error::CacheMismatch("x".into())).exit() as i32, 5);
        assert_eq!(Failure::Core(Error::InvalidParams("x".into())).exit() as i32, 2);
        let budget = Error::BudgetExceeded {
            what: "x".into(),
            required: 2,
            budget: 1,
        };
        assert_eq!(Failure::Core(budget).exit() as i32, 3);
    }
}
