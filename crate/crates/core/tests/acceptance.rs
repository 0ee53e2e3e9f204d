//! One PASS/FAIL line per acceptance criterion; the test fails if any line is FAIL.
//!
//! The lines are printed even when test output is captured.

use std::io::Write;
use std::time::{Duration, Instant};

use qzero::fock::{build_module, check_module};
use qzero::qfield::{verify_q_identities, FieldCtx};
use qzero::qops::{build_q, check_lemma1, check_lemma2, check_nilpotency, conjecture_scan, diag_sector, n2_suite};
use qzero::qtensor::{eps_contract_residual, verify_rmatrix_structure};
use qzero::report::{validate_report_json, Report, Status};
use qzero::zmodes::{check_confluence_samples, check_genex, check_rmatrix_equivalence, Chirality, GenexPlacement};

struct Verdict {
    ok: bool,
    note: String,
}

fn verdict(ok: bool, note: impl Into<String>) -> Verdict {
    Verdict { ok, note: note.into() }
}

/// Failing check names of `rep`, or `None` if it passed.
fn failures(rep: &Report) -> Option<String> {
    let f = rep.failures();
    (!f.is_empty()).then(|| {
        f.iter()
            .map(|c| format!("{} [{}]", c.name, c.witness.as_deref().unwrap_or("")))
            .collect::<Vec<_>>()
            .join("; ")
    })
}

fn all_pass(reps: &[Report]) -> Verdict {
    let bad: Vec<String> = reps.iter().filter_map(failures).collect();
    let checks: usize = reps.iter().map(|r| r.checks.len()).sum();
    if bad.is_empty() {
        verdict(true, format!("{checks} checks"))
    } else {
        verdict(false, bad.join(" | "))
    }
}

fn status(rep: &Report, name: &str) -> Option<Status> {
    rep.get(name).map(|c| c.status)
}

fn criterion_1() -> Verdict {
    let mut notes = Vec::new();
    for h in 3..=6u32 {
        let t = Instant::now();
        let m = match build_module(FieldCtx::get(2, h), Chirality::Left, None) {
            Ok(m) => m,
            Err(e) => return verdict(false, format!("h = {h}: {e}")),
        };
        let el = t.elapsed();
        let want = (h * h) as usize;
        if m.dim() != want || !m.basis().complete || el > Duration::from_secs(30) {
            return verdict(false, format!("h = {h}: dim {} complete {} in {el:?}", m.dim(), m.basis().complete));
        }
        notes.push(format!("h={h}: {want}"));
    }
    verdict(true, notes.join(", "))
}

fn criteria_2_and_8() -> (Verdict, Verdict) {
    let mut reps = Vec::new();
    for h in [4u32, 5] {
        match build_q(FieldCtx::get(2, h), None).and_then(|s| n2_suite(&s)) {
            Ok(r) => reps.push(r),
            Err(e) => {
                let v = verdict(false, format!("h = {h}: {e}"));
                return (verdict(false, v.note.clone()), v);
            }
        }
    }
    let c2 = all_pass(&reps);
    let oracle = reps.iter().all(|r| {
        status(r, "n2.oracle") == Some(Status::Pass) && status(r, "n2.commutator_eigenvalue") == Some(Status::Pass)
    });
    let gram = reps.iter().all(|r| status(r, "gram.float") == Some(Status::Pass));
    let c2 = verdict(c2.ok && gram, format!("h = 4, 5: {}", c2.note));
    let c8 = verdict(oracle, "closed-form matrices and [A,D] eigenvalues agree at h = 4, 5");
    (c2, c8)
}

fn criteria_3_and_4() -> (Verdict, Verdict) {
    let space = match build_q(FieldCtx::get(3, 4), None) {
        Ok(s) => s,
        Err(e) => return (verdict(false, e.to_string()), verdict(false, e.to_string())),
    };
    let nil = check_nilpotency(&space);
    let needed = ["nilpotency.Qhn.power", "nilpotency.Qrh", "nilpotency.qbin.m=4"];
    let present = needed.iter().all(|n| status(&nil, n) == Some(Status::Pass));
    let c3 = all_pass(std::slice::from_ref(&nil));
    let mut c3 = verdict(c3.ok && present, format!("n = 3, h = 4: {}", c3.note));
    let t5 = Instant::now();
    match build_q(FieldCtx::get(3, 5), None) {
        Ok(s5) => {
            let nil5 = check_nilpotency(&s5);
            let v = all_pass(std::slice::from_ref(&nil5));
            let ok = v.ok && status(&nil5, "nilpotency.qbin.m=5") == Some(Status::Pass);
            c3.ok &= ok;
            c3.note.push_str(&format!("; n = 3, h = 5: {} in {:.0?}", v.note, t5.elapsed()));
        }
        Err(e) => {
            c3.ok = false;
            c3.note.push_str(&format!("; n = 3, h = 5: {e}"));
        }
    }
    let t = Instant::now();
    let c4 = match check_lemma2(&space) {
        Ok(l2) => {
            let v = all_pass(&[check_lemma1(&space), l2]);
            verdict(v.ok, format!("n = 3, h = 4: {}, {:.0?}", v.note, t.elapsed()))
        }
        Err(e) => verdict(false, e.to_string()),
    };
    (c3, c4)
}

fn criterion_5() -> Verdict {
    let mut reps = Vec::new();
    for n in [2u32, 3] {
        let ctx = FieldCtx::get(n, n + 2);
        reps.push(verify_q_identities(ctx));
        for chir in [Chirality::Left, Chirality::Right] {
            reps.push(check_genex(ctx, &[1, 2, 3, 4], chir, GenexPlacement::Left));
        }
    }
    all_pass(&reps)
}

fn criterion_6() -> Verdict {
    for n in [2u32, 3, 4] {
        let r = eps_contract_residual(FieldCtx::get(n, n + 1));
        if !r.is_zero() {
            return verdict(false, format!("n = {n}: contraction minus [n]! = {r}"));
        }
    }
    let mut reps = Vec::new();
    for n in [2u32, 3] {
        let ctx = FieldCtx::get(n, 5);
        reps.push(verify_rmatrix_structure(ctx));
        reps.push(check_rmatrix_equivalence(ctx));
    }
    all_pass(&reps)
}

fn criterion_7() -> Verdict {
    let mut reps = Vec::new();
    for n in [2u32, 3] {
        for chir in [Chirality::Left, Chirality::Right] {
            match build_module(FieldCtx::get(n, 4), chir, None) {
                Ok(m) => reps.push(check_module(&m)),
                Err(e) => return verdict(false, format!("n = {n}: {e}")),
            }
        }
    }
    let named = reps
        .iter()
        .all(|r| ["fock.det", "fock.nilpotent", "fock.pij0"].iter().all(|c| status(r, c) == Some(Status::Pass)));
    let v = all_pass(&reps);
    verdict(v.ok && named, v.note)
}

fn schema_valid(rep: &Report) -> Result<(), String> {
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).map_err(|e| e.to_string())?;
    validate_report_json(&v)
}

fn criterion_9() -> Verdict {
    let t = Instant::now();
    let run = || -> qzero::Result<(Report, Report, Report)> {
        let s3 = build_q(FieldCtx::get(3, 4), None)?;
        let scan = conjecture_scan(&s3, 4)?;
        let (_, diag) = diag_sector(&s3, 4)?;
        let s2 = build_q(FieldCtx::get(2, 4), None)?;
        Ok((scan, diag, conjecture_scan(&s2, 6)?))
    };
    let (scan, diag, scan2) = match run() {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    for r in [&scan, &diag, &scan2] {
        if let Err(e) = schema_valid(r) {
            return verdict(false, format!("{}: {e}", r.command));
        }
    }
    let flags = diag
        .get("diag.dimension")
        .and_then(|c| c.detail.as_ref())
        .is_some_and(|d| d.get("stabilized").is_some() && d.get("fprime_equals_fdiag").is_some());
    let n2_ok = status(&scan2, "conjecture.scan") == Some(Status::Pass);
    let fast = t.elapsed() < Duration::from_secs(15 * 60);
    verdict(
        flags && n2_ok && fast && !scan.complete,
        format!("n = 3 reports flagged incomplete, n = 2 scan confirmed, {:.1?}", t.elapsed()),
    )
}

fn criterion_10() -> Verdict {
    let twice = |f: &dyn Fn() -> String| f() == f();
    let ctx = FieldCtx::get(3, 4);
    let cli = |args: &[&str]| {
        let r = qzero::cli::run(args.iter().copied());
        r.report.map(|r| r.to_json_untimed()).unwrap_or_default()
    };
    type Case<'a> = (&'static str, Box<dyn Fn() -> String + 'a>);
    let cases: [Case; 4] = [
        ("confluence", Box::new(|| check_confluence_samples(ctx, 24, 7).to_json_untimed())),
        ("relations", Box::new(move || cli(&["qzero", "qcheck", "relations", "--n", "2", "--h", "4", "--seed", "3"]))),
        ("conjecture", Box::new(move || cli(&["qzero", "conjecture", "--n", "3", "--h", "4", "--max-len", "3"]))),
        ("plactic", Box::new(move || cli(&["qzero", "plactic", "--n", "2", "--h", "4"]))),
    ];
    for (name, f) in &cases {
        if !twice(f.as_ref()) {
            return verdict(false, format!("{name} report differs between runs"));
        }
    }
    verdict(true, "confluence, relations, conjecture and plactic reports are byte-identical")
}

#[test]
fn acceptance() {
    let mut lines: Vec<(usize, Verdict)> = Vec::new();
    lines.push((1, criterion_1()));
    let (c2, c8) = criteria_2_and_8();
    let (c3, c4) = criteria_3_and_4();
    lines.push((2, c2));
    lines.push((3, c3));
    lines.push((4, c4));
    lines.push((5, criterion_5()));
    lines.push((6, criterion_6()));
    lines.push((7, criterion_7()));
    lines.push((8, c8));
    lines.push((9, criterion_9()));
    lines.push((10, criterion_10()));
    let mut failed = Vec::new();
    for (k, v) in &lines {
        // written past the test harness capture so the lines land in the log
        let line = format!("criterion {k}: {} ({})\n", if v.ok { "PASS" } else { "FAIL" }, v.note);
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
        if !v.ok {
            failed.push(*k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
