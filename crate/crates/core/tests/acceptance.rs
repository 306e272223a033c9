//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eigencoin::harness::{analyze_document, run_suite, ClaimResult, Report, SuiteConfig};
use eigencoin::korbits::enumerate_orbits;
use eigencoin::liealg::{make_algebra, Kind};

const SEED: u64 = 20_240_617;
const SO3_WITNESS: &str = include_str!("fixtures/so3_sreg_witness.json");

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            detail: String::new(),
        }
    }

    fn require(&mut self, cond: bool, what: impl AsRef<str>) {
        if !cond {
            self.ok = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(what.as_ref());
        }
    }

    fn note(&mut self, what: impl AsRef<str>) {
        if self.ok {
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(what.as_ref());
        }
    }
}

fn suite(name: &str) -> SuiteConfig {
    SuiteConfig::new(name).with_seed(SEED)
}

fn run(cfg: &SuiteConfig, out: &mut Outcome) -> Option<Report> {
    match run_suite(cfg) {
        Ok(r) => {
            for c in r.failed_claims() {
                out.require(false, format!("{} on {} failed", c.id, c.algebra));
            }
            let trials: usize = r.claims.iter().map(|c| c.trials).sum();
            out.note(format!("{}: {} claims, {trials} checks", cfg.suite, r.claims.len()));
            Some(r)
        }
        Err(e) => {
            out.require(false, format!("{} did not run: {e}", cfg.suite));
            None
        }
    }
}

fn claims<'a>(r: &'a Report, prefix: &'a str) -> impl Iterator<Item = &'a ClaimResult> + 'a {
    r.claims.iter().filter(move |c| c.id.starts_with(prefix))
}

/// Sum the trials of matching claims per algebra label.
fn trials_by_algebra(r: &Report, prefix: &str) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for c in claims(r, prefix) {
        *m.entry(c.algebra.clone()).or_insert(0) += c.trials;
    }
    m
}

fn require_trials(out: &mut Outcome, r: &Report, prefix: &str, algebras: &[String], min: usize) {
    let by = trials_by_algebra(r, prefix);
    for a in algebras {
        let t = by.get(a).copied().unwrap_or(0);
        out.require(t >= min, format!("{prefix} on {a}: {t} trials < {min}"));
    }
}

fn labels(kind: Kind, ns: impl IntoIterator<Item = usize>) -> Vec<String> {
    let tag = match kind {
        Kind::GL => "gl",
        Kind::SO => "so",
    };
    ns.into_iter().map(|n| format!("{tag}({n})")).collect()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut tables = Vec::new();
    for n in 3..=12 {
        match make_algebra(Kind::SO, n).and_then(|g| enumerate_orbits(&g)) {
            Ok(t) => tables.push((n, t)),
            Err(e) => out.require(false, format!("so({n}): {e}")),
        }
    }
    let elapsed = start.elapsed();
    for (n, t) in &tables {
        let l = n / 2;
        let (count, closed, mut expected) = if n % 2 == 1 {
            let mut e: Vec<usize> = (0..=l).collect();
            e.push(l);
            (l + 2, 2, e)
        } else {
            (l, 1, (0..l).collect())
        };
        let mut codims: Vec<usize> = t.orbits.iter().map(|q| q.codim).collect();
        codims.sort_unstable();
        expected.sort_unstable();
        out.require(t.orbits.len() == count, format!("so({n}): {} orbits", t.orbits.len()));
        out.require(codims == expected, format!("so({n}): codims {codims:?}"));
        out.require(t.closed().count() == closed, format!("so({n}): closed count"));
    }
    out.require(
        elapsed < Duration::from_secs(1),
        format!("enumeration took {elapsed:?}"),
    );
    run(&suite("orbit-tables"), &mut out);
    out.note(format!("so(3..12) enumerated in {} ms", elapsed.as_millis()));
    out
}

fn criterion_2(kostant: &Option<Report>, mut out: Outcome) -> Outcome {
    let Some(r) = kostant else { return out };
    let mut algebras = labels(Kind::GL, 3..=5);
    algebras.extend(labels(Kind::SO, 4..=7));
    require_trials(&mut out, r, "kostant-equivalence/nsreg-iff-full-rank", &algebras, 200);
    let mut families = BTreeSet::new();
    for c in claims(r, "kostant-equivalence/nsreg-iff-full-rank") {
        families.extend(
            c.metrics
                .keys()
                .filter_map(|k| k.strip_prefix("family."))
                .map(str::to_string),
        );
    }
    for f in ["generic", "borel", "parabolic", "xi", "nilfibre"] {
        out.require(families.contains(f), format!("family {f} never drawn"));
    }
    out.require(r.wall_time_ms < 120_000, format!("took {} ms", r.wall_time_ms));
    out.note(format!("{} ms, families {:?}", r.wall_time_ms, families));
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    if let Some(r) = run(&suite("gzero-nsreg"), &mut out) {
        let mut algebras = labels(Kind::GL, 3..=5);
        algebras.extend(labels(Kind::SO, 4..=7));
        require_trials(&mut out, &r, "gzero-nsreg/nsreg", &algebras, 100);
        require_trials(&mut out, &r, "gzero-nsreg/trivial-stabilizer", &algebras, 100);
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let Some(r) = run(&suite("yq-strata"), &mut out) else {
        return out;
    };
    for n in 5..=7 {
        let label = format!("so({n})");
        let g = make_algebra(Kind::SO, n).and_then(|g| enumerate_orbits(&g));
        let Ok(table) = g else {
            out.require(false, format!("{label}: no orbit table"));
            continue;
        };
        for q in &table.orbits {
            let find = |id: &str| {
                r.claims
                    .iter()
                    .find(|c| c.algebra == label && c.id == format!("yq-strata/{id}[{}]", q.id))
            };
            match (find("lower-bound"), find("exact-majority")) {
                (Some(lb), Some(ex)) => {
                    out.require(lb.trials >= 50, format!("{label} {}: {} trials", q.id, lb.trials));
                    out.require(lb.passes == lb.trials, format!("{label} {}: lower bound", q.id));
                    let frac = ex.passes as f64 / ex.trials.max(1) as f64;
                    out.require(frac > 0.5, format!("{label} {}: exact fraction {frac:.2}", q.id));
                    out.note(format!("{label} {} exact {}/{}", q.id, ex.passes, ex.trials));
                }
                _ => out.require(false, format!("{label} {}: claims missing", q.id)),
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let Some(r) = run(&suite("xi-families"), &mut out) else {
        return out;
    };
    for (n, max_i) in [(5usize, 2usize), (6, 2)] {
        let label = format!("so({n})");
        for i in 0..=max_i {
            // Patterns with at least one L slot: every pattern but all-U.
            let with_l = (1usize << i) - 1;
            for (id, min) in [("parabolic-membership", 1), ("l-to-u", with_l), ("lower-bound", 1 << i)] {
                let full = format!("xi-families/{id}[i={i}]");
                let found = r.claims.iter().find(|c| c.algebra == label && c.id == full);
                match found {
                    Some(c) => out.require(c.trials >= min, format!("{label} {full}: {} trials", c.trials)),
                    None => out.require(false, format!("{label} {full} missing")),
                }
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    if let Some(r) = run(&suite("nilfibre").with_range(5, 8), &mut out) {
        for n in 5..=8 {
            let label = format!("so({n})");
            let closed = if n % 2 == 1 { 2 } else { 1 };
            for id in ["nilfibre/partial-map-zero", "nilfibre/not-nsreg"] {
                let per_orbit: Vec<usize> = claims(&r, id)
                    .filter(|c| c.algebra == label)
                    .map(|c| c.trials)
                    .collect();
                out.require(
                    per_orbit.len() == closed,
                    format!("{label} {id}: {} orbits", per_orbit.len()),
                );
                out.require(
                    per_orbit.iter().all(|&t| t >= 50),
                    format!("{label} {id}: {per_orbit:?}"),
                );
            }
        }
    }
    if let Some(r) = run(&suite("overlaps"), &mut out) {
        for n in 4..=8 {
            let label = format!("so({n})");
            for id in ["overlaps/nonzero", "overlaps/highest-root"] {
                let any = claims(&r, id).any(|c| c.algebra == label && c.trials > 0);
                out.require(any, format!("{label} {id} missing"));
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    if let Some(r) = run(&suite("nilfibre").with_range(3, 3), &mut out) {
        let found = claims(&r, "nilfibre/lowdim-sreg-witness").any(|c| c.trials > 0 && c.passed());
        out.require(found, "search found no witness");
    }
    match analyze_document(SO3_WITNESS) {
        Ok(a) => {
            out.require(a.sreg, "stored witness is not strongly regular");
            out.require(
                a.partial.values.iter().all(|v| v.is_zero()),
                "stored witness is off the zero fibre",
            );
        }
        Err(e) => out.require(false, format!("stored witness: {e}")),
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    if let Some(r) = run(&suite("sreg-chain"), &mut out) {
        let mut algebras = labels(Kind::GL, 2..=6);
        algebras.extend(labels(Kind::SO, 3..=6));
        require_trials(&mut out, &r, "sreg-chain/theta-sreg", &algebras, 100);
        require_trials(&mut out, &r, "sreg-chain/disjoint-implies-regular", &algebras, 1);
    }
    out
}

fn criterion_9(kostant: &Option<Report>) -> Outcome {
    let mut out = Outcome::new();
    if let Some(r) = run(&suite("dimension-identities"), &mut out) {
        let mut algebras = labels(Kind::GL, 2..=12);
        algebras.extend(labels(Kind::SO, 3..=12));
        for id in ["dimension-identities/flag-varieties", "dimension-identities/quotient"] {
            let have: BTreeSet<&str> = claims(&r, id).map(|c| c.algebra.as_str()).collect();
            for a in &algebras {
                out.require(have.contains(a.as_str()), format!("{id} missing for {a}"));
            }
        }
    }
    match kostant {
        Some(k) => {
            let cert: Vec<&ClaimResult> = claims(k, "kostant-equivalence/fibre-dimension").collect();
            out.require(!cert.is_empty(), "no fibre-dimension certificate");
            out.require(cert.iter().all(|c| c.passed()), "fibre-dimension certificate failed");
        }
        None => out.require(false, "fibre-dimension certificate unavailable"),
    }
    out
}

fn main() -> ExitCode {
    let total = Instant::now();
    let mut results = Vec::new();
    let mut report = |n: usize, title: &str, o: Outcome| {
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {n}: {title} ({})", o.detail);
        results.push(o.ok);
    };

    report(1, "orbit tables", criterion_1());
    let mut pre = Outcome::new();
    let kostant = run(&suite("kostant-equivalence"), &mut pre);
    report(2, "nsreg iff full Jacobian rank", criterion_2(&kostant, pre));
    report(3, "coincidence-free elements are nsreg", criterion_3());
    report(4, "Y_Q coincidence strata", criterion_4());
    report(5, "Ξ families", criterion_5());
    report(6, "nilfibre and overlaps", criterion_6());
    report(7, "so(3) strongly regular nilfibre witness", criterion_7());
    report(8, "strong-regularity chain", criterion_8());
    report(9, "dimension identities", criterion_9(&kostant));

    let passed = results.iter().filter(|&&ok| ok).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1} s",
        results.len(),
        total.elapsed().as_secs_f64()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
