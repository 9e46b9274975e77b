//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use peisert_core::ffield::{FieldCtx, PrimePower, DEFAULT_MAX_Q};
use peisert_core::peisert::{
    asymptotic_row, brute_bound, build_graph, h_subgraph_checks, hyper_q2, k3_formula, k4_formula,
    structural_checks, AsymptoticRow,
};
use peisert_core::report::{CheckRecord, Status};
use peisert_core::verify::{
    deviation_decreasing, hyper_crosscheck, hyper_magnitude_decreasing, lemma_suite, orbit_suite,
    table1_row, weil_suite, VerifyOptions,
};

const TABLE1_QS: [u64; 6] = [9, 49, 81, 121, 361, 529];
const EXTENDED_QS: [u64; 5] = [729, 961, 1849, 2209, 2401];
const SUPPORTED_QS: [u64; 13] = [
    9, 49, 81, 121, 361, 529, 729, 961, 1849, 2209, 2401, 3481, 6561,
];
const LEMMA_QS: [u64; 4] = [9, 49, 81, 121];

fn field(q: u64) -> FieldCtx {
    FieldCtx::new(PrimePower::from_q(q, DEFAULT_MAX_Q).expect("supported q")).expect("field builds")
}

fn fields(qs: &[u64]) -> Vec<FieldCtx> {
    qs.iter().map(|&q| field(q)).collect()
}

fn runtime(check: &str, limit: Duration, elapsed: Duration) -> CheckRecord {
    CheckRecord::new(
        check,
        0,
        elapsed <= limit,
        format!("<= {}s", limit.as_secs()),
        format!("{:.1}s", elapsed.as_secs_f64()),
        None,
    )
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    records: Vec<CheckRecord>,
    info: Vec<String>,
}

impl From<Vec<CheckRecord>> for Outcome {
    fn from(records: Vec<CheckRecord>) -> Self {
        Outcome {
            records,
            info: Vec::new(),
        }
    }
}

fn timed(limit: Duration, body: impl FnOnce() -> Outcome) -> Outcome {
    let t0 = Instant::now();
    let mut o = body();
    o.records.push(runtime("runtime", limit, t0.elapsed()));
    o
}

fn criterion1() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut out = Vec::new();
        for ctx in fields(&TABLE1_QS) {
            let row = table1_row(&ctx, 961).expect("table row");
            out.push(CheckRecord::new(
                "table1.k4_brute_present",
                ctx.q(),
                row.k4_brute.is_some(),
                true,
                row.k4_brute.is_some(),
                None,
            ));
            out.extend(row.checks());
        }
        out.into()
    })
}

fn criterion2() -> Outcome {
    timed(Duration::from_secs(300), || {
        let mut out = Vec::new();
        for ctx in fields(&SUPPORTED_QS) {
            let q = ctx.q();
            let brute = build_graph(&ctx)
                .brute_cliques(3)
                .expect("within the m = 3 bound");
            out.push(CheckRecord::compare(
                "k3.brute_vs_closed_form",
                q,
                k3_formula(q).expect("k3"),
                brute,
            ));
        }
        out.into()
    })
}

fn criterion3() -> Outcome {
    timed(Duration::from_secs(600), || {
        let mut out = Vec::new();
        for ctx in fields(&[9, 49, 81, 121, 361, 529, 729, 961]) {
            let brute = build_graph(&ctx)
                .brute_cliques(4)
                .expect("within the m = 4 bound");
            out.push(CheckRecord::compare(
                "k4.brute_vs_closed_form",
                ctx.q(),
                k4_formula(&ctx).expect("k4").k4,
                brute,
            ));
        }
        out.into()
    })
}

fn criterion4() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut out = Vec::new();
        for ctx in fields(&LEMMA_QS) {
            out.extend(lemma_suite(&ctx).expect("lemma suite"));
        }
        out.into()
    })
}

fn criterion5() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut out = Vec::new();
        for ctx in fields(&[9, 49, 81]) {
            out.extend(orbit_suite(&ctx).expect("orbit suite"));
        }
        out.into()
    })
}

fn criterion6() -> Outcome {
    timed(Duration::from_secs(120), || {
        fields(&[9, 49])
            .iter()
            .map(|c| hyper_crosscheck(c, 1e-9))
            .collect::<Vec<_>>()
            .into()
    })
}

fn criterion7() -> Outcome {
    let mut out = Vec::new();
    for ctx in fields(&[9, 49, 81, 121, 361]) {
        out.extend(structural_checks(&build_graph(&ctx), 121));
    }
    out.into()
}

fn criterion8() -> Outcome {
    let mut out = Vec::new();
    for ctx in fields(&SUPPORTED_QS) {
        out.extend(h_subgraph_checks(&build_graph(&ctx)).expect("h checks"));
    }
    out.into()
}

fn rows(ctxs: &[FieldCtx], m: usize) -> Vec<AsymptoticRow> {
    ctxs.iter()
        .map(|c| asymptotic_row(c, m).expect("asymptotic row"))
        .collect()
}

fn criterion9() -> Outcome {
    let mut out = Vec::new();
    let mut info = Vec::new();
    let all = fields(&SUPPORTED_QS);

    for r in rows(&all, 3) {
        let bound = BigRational::new(1.into(), BigInt::from(8 * r.q));
        out.push(CheckRecord::new(
            "m3.deviation_bound",
            r.q,
            r.deviation <= bound,
            format!("<= {bound}"),
            format!("{:.6e}", ratio_f64(&r.deviation)),
            None,
        ));
    }

    let ladder4: Vec<FieldCtx> = all
        .iter()
        .filter(|c| c.q() <= brute_bound(4).unwrap())
        .map(|c| field(c.q()))
        .collect();
    let ladder5: Vec<FieldCtx> = all
        .iter()
        .filter(|c| c.q() <= brute_bound(5).unwrap())
        .map(|c| field(c.q()))
        .collect();
    for (m, ladder) in [(4, &ladder4), (5, &ladder5)] {
        let rs = rows(ladder, m);
        for r in &rs {
            out.push(CheckRecord::new(
                format!("m{m}.envelope"),
                r.q,
                r.within_envelope(),
                "inside",
                if r.within_envelope() {
                    "inside"
                } else {
                    "outside"
                },
                None,
            ));
        }
        out.push(deviation_decreasing(&rs));
    }
    let beyond: Vec<u64> = TABLE1_QS.iter().chain(&EXTENDED_QS).copied().collect();
    let extended = deviation_decreasing(&rows(&fields(&beyond), 4));
    info.push(format!(
        "m4 deviation over the extended list: {} {}",
        extended.actual,
        extended.witness.unwrap_or_default()
    ));

    let values: Vec<(u64, BigRational)> = fields(&beyond)
        .iter()
        .map(|c| {
            (
                c.q(),
                hyper_q2(c)
                    .expect("3F2")
                    .1
                    .as_rational()
                    .expect("rational 3F2"),
            )
        })
        .collect();
    out.push(hyper_magnitude_decreasing(&values));
    Outcome { records: out, info }
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn criterion10() -> Outcome {
    timed(Duration::from_secs(60), || {
        let seed = VerifyOptions::default().seed;
        fields(&[9, 49, 121])
            .iter()
            .flat_map(|c| weil_suite(c, 1000, seed ^ c.q()))
            .collect::<Vec<_>>()
            .into()
    })
}

fn main() -> ExitCode {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Criterion; 10] = [
        ("1 table reproduction", criterion1),
        ("2 triangle closed form", criterion2),
        ("3 k4 closed form", criterion3),
        ("4 lemma suite", criterion4),
        ("5 transformation group", criterion5),
        ("6 definition cross-check", criterion6),
        ("7 structure suite", criterion7),
        ("8 proof-pipeline identities", criterion8),
        ("9 asymptotics", criterion9),
        ("10 weil bound", criterion10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.as_ref().is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let t0 = Instant::now();
        let o = run();
        let bad: Vec<&CheckRecord> = o
            .records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .collect();
        let (num, title) = name.split_once(' ').unwrap();
        println!(
            "criterion {num}: {} ({title}; {} checks; {} failed; {:.1}s)",
            if bad.is_empty() { "PASS" } else { "FAIL" },
            o.records.len(),
            bad.len(),
            t0.elapsed().as_secs_f64()
        );
        for r in &bad {
            println!(
                "    fail {} q={} expected={} actual={}{}",
                r.check,
                r.q,
                r.expected,
                r.actual,
                r.witness
                    .as_ref()
                    .map(|w| format!(" ({w})"))
                    .unwrap_or_default()
            );
        }
        for line in &o.info {
            println!("    info {line}");
        }
        if !bad.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
