//! Acceptance gate. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use clap::Parser;
use sylowkit_cli::args::Cli;
use sylowkit_cli::report::{Record, Report};
use sylowkit_cli::suites::count_unitary_2x2;
use sylowkit_cli::{run, Exit};

const SEED: &str = "20240601";

/// Runs the CLI in-process and memoizes by argument string, so criteria
/// that read the same report share one run.
struct Runner {
    done: HashMap<String, (Report, Exit, String)>,
}

impl Runner {
    fn run(&mut self, args: &str) -> &Report {
        let key = args.to_string();
        if !self.done.contains_key(&key) {
            let argv = std::iter::once("sylowkit")
                .chain(args.split_whitespace())
                .chain(["--seed", SEED]);
            let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| panic!("{args}: {e}"));
            let outcome = run(&cli.command);
            let text = outcome.text(false);
            self.done.insert(key.clone(), (outcome.report, outcome.exit, text));
        }
        &self.done[&key].0
    }

    fn text(&self, args: &str) -> &str {
        &self.done[args].2
    }

    fn exit(&self, args: &str) -> Exit {
        self.done[args].1
    }
}

struct Check {
    problems: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { problems: Vec::new() }
    }

    fn that(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    fn report_passes(&mut self, args: &str, r: &Report) {
        let failing: Vec<&str> = r.records.iter().filter(|x| !x.passed).map(|x| x.name.as_str()).collect();
        self.that(r.passed(), || format!("`{args}` failed: {failing:?} {:?}", r.error));
    }

    fn field(&mut self, args: &str, r: &Report, record: &str, key: &str, expected: &str) {
        let got = r.record(record).and_then(|x: &Record| x.get(key)).map(str::to_string);
        self.that(got.as_deref() == Some(expected), || {
            format!("`{args}`: {record}.{key} = {got:?}, expected {expected}")
        });
    }
}

fn criterion(id: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut check = Check::new();
    body(&mut check);
    let elapsed = start.elapsed();
    check.that(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"));
    let ok = check.problems.is_empty();
    println!(
        "{} criterion {id:>2}: {title} ({:.1}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for p in &check.problems {
        println!("       {p}");
    }
    ok
}

fn main() {
    // `cargo test -- --list` and filters pass arguments; this gate always
    // runs in full.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut r = Runner { done: HashMap::new() };
    let secs = Duration::from_secs;
    let mut results = Vec::new();

    results.push(criterion(1, "flip-transpose identities on seeded matrices", secs(10), |c| {
        for (k, m) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)] {
            let args = format!("verify --suite prop31 --p 5 --k {k} --m {m} --samples 1000");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            c.that(rep.records.len() == 5, || format!("`{args}`: {} records", rep.records.len()));
            for rec in &rep.records {
                let pairs: usize = rec.get("pairs").unwrap_or("0").parse().unwrap();
                c.that(pairs >= 625, || format!("`{args}`: {} checked {pairs} pairs", rec.name));
            }
        }
    }));

    results.push(criterion(2, "Sylow orders and exhaustive closure", secs(60), |c| {
        for (q, n, order) in [(5, 2, "5"), (5, 3, "125"), (5, 4, "15625"), (25, 2, "25"), (25, 3, "15625")] {
            let args = format!("verify --suite sylow --p 5 --q {q} --n {n}");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            c.field(&args, &rep, "sylow.order", "order", order);
            c.field(&args, &rep, "sylow.closure", "mode", "exhaustive");
            c.field(&args, &rep, "sylow.closure", "generated_order", order);
        }
    }));

    results.push(criterion(3, "full unitary group orders by exhaustive count", secs(10), |c| {
        let u2 = count_unitary_2x2(2).unwrap();
        let u3 = count_unitary_2x2(3).unwrap();
        c.that(u2 == 18, || format!("|U_2(F_2)| = {u2}"));
        c.that(u3 == 96, || format!("|U_2(F_3)| = {u3}"));
    }));

    results.push(criterion(4, "closed forms agree with matrix arithmetic", secs(10), |c| {
        for (q, n) in [(5, 2), (5, 4), (25, 2), (5, 3), (25, 3), (5, 5)] {
            let args = format!("verify --suite formulas --p 5 --q {q} --n {n} --samples 1000");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            let expected = if n % 2 == 0 {
                ["formulas.product", "formulas.inverse", "formulas.commutator"]
            } else {
                ["formulas.commutator_alpha", "formulas.commutator_alpha_free", "formulas.odd_form"]
            };
            for name in expected {
                c.field(&args, &rep, name, "samples", "1000");
                c.field(&args, &rep, name, "failures", "0");
            }
        }
    }));

    results.push(criterion(5, "centralizer of A by exhaustive scan", secs(600), |c| {
        let start = Instant::now();
        let args = "verify --suite centralizer --p 5 --q 5 --n 4";
        let rep = r.run(args).clone();
        let small = start.elapsed();
        c.that(small <= secs(10), || format!("(5,5,4) scan took {small:.1?}"));
        c.report_passes(args, &rep);
        c.field(args, &rep, "centralizer.scan", "scanned", "15625");
        c.field(args, &rep, "centralizer.scan", "centralizer_order", "625");
        let args = "verify --suite centralizer --p 5 --q 5 --n 5";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        c.field(args, &rep, "centralizer.scan", "scanned", "9765625");
        c.field(args, &rep, "centralizer.scan", "centralizer_order", "625");
        c.field(args, &rep, "centralizer.scan", "target_order", "625");
        c.field(args, &rep, "centralizer.scan", "equal", "true");
    }));

    results.push(criterion(6, "triple commutators vanish", secs(300), |c| {
        for (n, top) in [(4, "15625"), (5, "9765625")] {
            let args = format!("verify --suite qseries --p 5 --q 5 --n {n}");
            let rep = r.run(&args).clone();
            c.field(&args, &rep, "qseries.triple_commutator", "top_order", top);
            let last = rep
                .record("qseries.triple_commutator")
                .and_then(|x| x.get("commutators"))
                .and_then(|s| s.rsplit(',').next())
                .map(str::to_string);
            c.that(last.as_deref() == Some("1"), || format!("`{args}`: last commutator {last:?}"));
        }
    }));

    results.push(criterion(7, "Q-series chains and concatenation", secs(300), |c| {
        for n in [4, 5] {
            let args = format!("verify --suite qseries --p 5 --q 5 --n {n}");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            c.that(rep.record("qseries.chain").is_some_and(|x| x.passed), || format!("`{args}`: chain"));
        }
        let args = "verify --suite qseries --corpus";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        c.that(rep.records.len() >= 10, || format!("only {} corpus records", rep.records.len()));
    }));

    results.push(criterion(8, "Oliver subgroups, oracle agreement and lemma scans", secs(600), |c| {
        for (n, order) in [(2, "5"), (3, "125"), (4, "15625")] {
            let args = format!("compute --p 5 --q 5 --n {n}");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            c.field(&args, &rep, "compute.oliver", "oliver_order", order);
            c.that(rep.record("compute.lemmas").is_some_and(|x| x.passed), || format!("`{args}`: lemmas"));
        }
        let args = "compute --corpus";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        let oracles = rep.records.iter().filter(|x| x.name.ends_with(".oracle")).count();
        let lemmas = rep.records.iter().filter(|x| x.name.ends_with(".lemmas")).count();
        c.that(oracles == lemmas && oracles >= 10, || format!("{oracles} oracle and {lemmas} lemma records"));
    }));

    results.push(criterion(9, "J(S) lies in the Oliver subgroup", secs(300), |c| {
        for (q, n) in [(5, 2), (5, 3), (5, 4), (25, 2), (25, 3)] {
            let args = format!("conjecture --p 5 --q {q} --n {n}");
            let rep = r.run(&args).clone();
            c.report_passes(&args, &rep);
            c.field(&args, &rep, "conjecture.verdict", "holds", "true");
        }
        let args = "conjecture --corpus";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        let args = "conjecture --p 5 --r 1 --height 1";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        c.field(args, &rep, "conjecture.verdict", "j_elementary_abelian", "true");
        let args = "verify --suite thm26 --p 5 --r 1 --height 1";
        let rep = r.run(args).clone();
        c.report_passes(args, &rep);
        c.field(args, &rep, "thm26.wreath_j", "j_order", "3125");
        c.field(args, &rep, "thm26.wreath_j", "j_elementary_abelian", "true");
        c.field(args, &rep, "thm26.wreath_j", "j_equals_base_copy", "true");
    }));

    results.push(criterion(10, "byte-identical reruns and order-independent Oliver subgroups", secs(300), |c| {
        let reruns = [
            "verify --suite prop31 --p 5 --k 1 --m 4 --samples 1000",
            "verify --suite sylow --p 5 --q 5 --n 4",
            "verify --suite formulas --p 5 --q 5 --n 5 --samples 1000",
            "verify --suite centralizer --p 5 --q 5 --n 4",
            "verify --suite qseries --p 5 --q 5 --n 4",
            "verify --suite qseries --corpus",
            "verify --suite thm26 --p 5 --r 1 --height 1",
            "compute --corpus",
            "conjecture --p 5 --q 5 --n 4",
        ];
        for args in reruns {
            let first = {
                r.run(args);
                r.text(args).to_string()
            };
            c.that(r.exit(args) == Exit::Pass, || format!("`{args}` exit {:?}", r.exit(args)));
            let argv = std::iter::once("sylowkit")
                .chain(args.split_whitespace())
                .chain(["--seed", SEED]);
            let again = run(&Cli::try_parse_from(argv).unwrap().command).text(false);
            c.that(first == again, || format!("`{args}` differs between runs"));
        }
        let rep = r.run("compute --corpus").clone();
        for rec in rep.records.iter().filter(|x| x.name.ends_with(".oliver")) {
            c.that(rec.get("shuffled_agrees") == Some("true"), || format!("{}: shuffled run differs", rec.name));
        }
    }));

    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
