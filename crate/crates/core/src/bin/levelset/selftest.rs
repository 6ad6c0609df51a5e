//! The built-in regression suite behind `levelset selftest`: the
//! example measures with their known ranges, bully sets, verdicts, and
//! witnesses, cross-checked against the brute-force decision path.

use serde::Serialize;

use levelset_core::constructions::{builtin_example, ExampleId, ExampleMeasure};
use levelset_core::measure::absolute_measure;
use levelset_core::range::{bullies, is_arithmetic_progression, range, signed_range, subset_sums};
use levelset_core::rational::{int, ratio, Rational};
use levelset_core::uniqueness::{
    check_l, check_o, decide_l_unique, decide_l_unique_exhaustive, Verdict,
};
use levelset_core::{EnumerationConfig, Result};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> std::result::Result<(), String>) -> Check {
    match run() {
        Ok(()) => Check {
            name,
            pass: true,
            detail: String::new(),
        },
        Err(detail) => Check {
            name,
            pass: false,
            detail,
        },
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn positive(id: ExampleId) -> levelset_core::measure::AtomicMeasure {
    match builtin_example(id) {
        ExampleMeasure::Positive(m) => m,
        ExampleMeasure::Signed(_) => unreachable!(),
    }
}

fn signed(depth: usize) -> levelset_core::measure::SignedAtomicMeasure {
    match builtin_example(ExampleId::Ex4 { depth }) {
        ExampleMeasure::Signed(m) => m,
        ExampleMeasure::Positive(_) => unreachable!(),
    }
}

pub fn run(json: bool) -> Result<u8> {
    let cfg = EnumerationConfig::default();
    let checks = vec![
        check("ex1 unique with rank 8", || {
            let cert = decide_l_unique(&positive(ExampleId::Ex1), &cfg).map_err(|e| e.to_string())?;
            expect("verdict", cert.verdict, Verdict::Unique)?;
            expect("rank", cert.rank, 8)
        }),
        check("ex1 range misses 4 and is no progression", || {
            let sums = subset_sums(&positive(ExampleId::Ex1), &cfg).map_err(|e| e.to_string())?;
            for v in [1, 2, 3] {
                if !sums.contains(&int(v)) {
                    return Err(format!("{v} missing from the range"));
                }
            }
            expect("contains 4", sums.contains(&int(4)), false)?;
            expect("arithmetic progression", is_arithmetic_progression(&sums), false)
        }),
        check("ex2 five-atom measure unique with rank 4", || {
            let cert =
                decide_l_unique(&positive(ExampleId::Ex2Mu), &cfg).map_err(|e| e.to_string())?;
            expect("verdict", cert.verdict, Verdict::Unique)?;
            expect("rank", cert.rank, 4)
        }),
        check("ex2 four-atom measure yields the classic witness", || {
            let m = positive(ExampleId::Ex2MuPrime);
            let cert = decide_l_unique(&m, &cfg).map_err(|e| e.to_string())?;
            expect("verdict", cert.verdict, Verdict::NonUnique)?;
            expect("rank", cert.rank, 2)?;
            let basis: Vec<String> = cert.basis.vectors.iter().map(|v| v.to_string()).collect();
            expect("basis", basis, vec!["+--+".into(), "+-0-".into()])?;
            let w = cert.witness.as_ref().ok_or("no witness")?;
            expect(
                "witness atoms",
                w.atom_values.clone(),
                vec![int(7), int(6), int(2), int(1)],
            )?;
            expect("check L", check_l(&m, w, &cfg).map_err(|e| e.to_string())?, true)?;
            expect("check O", check_o(&m, w, &cfg).map_err(|e| e.to_string())?, true)
        }),
        check("ex3 both ranges are the shared interval union", || {
            let expected: Vec<(Rational, Rational)> = vec![
                (int(0), int(1)),
                (int(2), int(3)),
                (int(4), int(8)),
                (int(9), int(10)),
                (int(11), int(12)),
            ];
            for id in [ExampleId::Ex3Mu, ExampleId::Ex3MuPrime] {
                let r = range(&positive(id), &cfg).map_err(|e| e.to_string())?;
                expect("intervals", r.intervals().to_vec(), expected.clone())?;
            }
            Ok(())
        }),
        check("ex3 verdicts split on the augmented criterion", || {
            let cert =
                decide_l_unique(&positive(ExampleId::Ex3Mu), &cfg).map_err(|e| e.to_string())?;
            expect("mu verdict", cert.verdict, Verdict::Unique)?;
            expect("mu rank", cert.rank, 4)?;
            let m = positive(ExampleId::Ex3MuPrime);
            let cert = decide_l_unique(&m, &cfg).map_err(|e| e.to_string())?;
            expect("mu-prime verdict", cert.verdict, Verdict::NonUnique)?;
            let w = cert.witness.as_ref().ok_or("no witness")?;
            expect(
                "witness atoms",
                w.atom_values.clone(),
                vec![int(7), int(6), int(2)],
            )?;
            expect("witness slope", w.continuous_slope.clone(), int(1))
        }),
        check("ex4 truncations: every atom of each part bullies", || {
            for depth in 1..=4usize {
                let m = signed(depth);
                let all: Vec<usize> = (0..depth).collect();
                expect("positive part", bullies(&m.part(false)), all.clone())?;
                expect("negative part", bullies(&m.part(true)), all)?;
            }
            Ok(())
        }),
        check("ex4 signed sums tile a uniform grid", || {
            for depth in 1..=4usize {
                let m = signed(depth);
                let spacing = ratio(2, 3i64.pow(depth as u32));
                let half = (3i64.pow(depth as u32) - 1) / 2;
                let expected: Vec<Rational> =
                    (-half..=half).map(|k| &spacing * int(k)).collect();
                expect("grid", signed_range(&m, &cfg).map_err(|e| e.to_string())?, expected)?;
            }
            Ok(())
        }),
        check("ex4 total-variation verdicts at each depth", || {
            for depth in 1..=4usize {
                let abs = absolute_measure(&signed(depth));
                let cert = decide_l_unique(&abs, &cfg).map_err(|e| e.to_string())?;
                let expected = if depth == 1 {
                    Verdict::Unique
                } else {
                    Verdict::NonUnique
                };
                expect("verdict", cert.verdict, expected)?;
                let oracle = decide_l_unique_exhaustive(&abs).map_err(|e| e.to_string())?;
                expect("oracle verdict", oracle.verdict, cert.verdict)?;
                expect("oracle rank", oracle.rank, cert.rank)?;
            }
            Ok(())
        }),
    ];

    let failed = checks.iter().filter(|c| !c.pass).count();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&checks).expect("serializable")
        );
    } else {
        for c in &checks {
            if c.pass {
                println!("PASS {}", c.name);
            } else {
                println!("FAIL {}: {}", c.name, c.detail);
            }
        }
        println!("{} checks, {} failed", checks.len(), failed);
    }
    Ok(if failed == 0 { 0 } else { 70 })
}
