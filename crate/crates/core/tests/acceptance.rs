//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Expected values come from the built-in fixtures and from
//! independent oracles computed here (plain rational elimination,
//! brute-force scans), never from the code paths under test.

use std::time::{Duration, Instant};

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use levelset_core::constructions::{builtin_example, select_blocks, ExampleId, ExampleMeasure};
use levelset_core::measure::{absolute_measure, AtomicMeasure, CandidateMeasure, MeasureInput};
use levelset_core::range::{bullies, is_arithmetic_progression, range, signed_range, subset_sums};
use levelset_core::rational::{int, ratio, Rational};
use levelset_core::relations::{
    brute_force_relations, enumerate_relations, relation_rank, SignVector,
};
use levelset_core::report::{analyze, AnalysisOptions};
use levelset_core::uniqueness::{
    check_l, check_l_exhaustive, check_o, decide_l_unique, proportional, Verdict,
};
use levelset_core::{EnumerationConfig, Strategy};

fn cfg() -> EnumerationConfig {
    EnumerationConfig::default()
}

fn mitm() -> EnumerationConfig {
    EnumerationConfig::with_strategy(Strategy::MeetInMiddle)
}

fn direct() -> EnumerationConfig {
    EnumerationConfig::with_strategy(Strategy::Direct)
}

fn positive_example(id: ExampleId) -> AtomicMeasure {
    match builtin_example(id) {
        ExampleMeasure::Positive(m) => m,
        ExampleMeasure::Signed(_) => unreachable!(),
    }
}

fn signed_example(depth: usize) -> levelset_core::measure::SignedAtomicMeasure {
    match builtin_example(ExampleId::Ex4 { depth }) {
        ExampleMeasure::Signed(m) => m,
        ExampleMeasure::Positive(_) => unreachable!(),
    }
}

/// Builds the canonical sign vector that adds the `plus` masses and
/// subtracts the `minus` masses, located within the measure's sorted
/// atom list. Only usable when the named masses are unambiguous.
fn relation_of(m: &AtomicMeasure, plus: &[i64], minus: &[i64]) -> SignVector {
    let mut entries = vec![0i8; m.atom_count()];
    for &mass in plus {
        let i = m.atoms().iter().position(|a| *a == int(mass)).unwrap();
        assert_eq!(entries[i], 0, "mass {mass} reused");
        entries[i] = 1;
    }
    for &mass in minus {
        let i = m.atoms().iter().position(|a| *a == int(mass)).unwrap();
        assert_eq!(entries[i], 0, "mass {mass} reused");
        entries[i] = -1;
    }
    SignVector::canonicalize(entries).unwrap()
}

/// Independent oracle: dimension of the solution space of the relation
/// system, by plain rational Gauss elimination over the brute-force
/// relation list.
fn solution_space_dim(width: usize, relations: &[SignVector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = relations.iter().map(|v| v.to_rational_row()).collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= lead.clone();
        }
        let lead = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (value, lead_value) in row.iter_mut().zip(&lead) {
                    *value -= lead_value * &factor;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    width - rank
}

fn random_measure(rng: &mut ChaCha8Rng, max_n: usize, kappa: bool) -> AtomicMeasure {
    let n = rng.gen_range(1..=max_n);
    let atoms: Vec<Rational> = (0..n)
        .map(|_| ratio(rng.gen_range(1..=50), rng.gen_range(1..=50)))
        .collect();
    let kappa = if kappa {
        ratio(rng.gen_range(1..=20), rng.gen_range(1..=10))
    } else {
        Rational::zero()
    };
    AtomicMeasure::new(atoms, kappa).unwrap()
}

fn report(criterion: &str, detail: &str) {
    println!("ACCEPTANCE {criterion}: PASS ({detail})");
}

#[test]
fn c1_nine_atom_regression() {
    let started = Instant::now();
    let m = positive_example(ExampleId::Ex1);
    let cert = decide_l_unique(&m, &cfg()).unwrap();
    assert_eq!(cert.verdict, Verdict::Unique);
    assert_eq!(cert.rank, 8);

    let found = enumerate_relations(m.atoms(), &cfg()).unwrap();
    let published = [
        relation_of(&m, &[1, 5], &[6]),
        relation_of(&m, &[1, 6], &[7]),
        relation_of(&m, &[1, 7], &[8]),
        relation_of(&m, &[1, 8], &[9]),
        relation_of(&m, &[1, 9], &[10]),
        relation_of(&m, &[1, 10], &[11]),
        relation_of(&m, &[2, 5], &[7]),
        relation_of(&m, &[5, 6], &[11]),
    ];
    for r in &published {
        assert!(found.contains(r), "missing {r}");
    }
    let rows: Vec<Vec<Rational>> = published.iter().map(|v| v.to_rational_row()).collect();
    assert_eq!(relation_rank(&rows).unwrap(), 8);

    let sums = subset_sums(&m, &cfg()).unwrap();
    for v in [1, 2, 3] {
        assert!(sums.contains(&int(v)));
    }
    assert!(!sums.contains(&int(4)));
    assert!(!is_arithmetic_progression(&sums));

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    report("c1", &format!("unique rank 8, {elapsed:?}"));
}

#[test]
fn c2_four_and_five_atom_regression() {
    let started = Instant::now();

    let five = positive_example(ExampleId::Ex2Mu);
    let cert = decide_l_unique(&five, &cfg()).unwrap();
    assert_eq!(cert.verdict, Verdict::Unique);
    assert_eq!(cert.rank, 4);

    let four = positive_example(ExampleId::Ex2MuPrime);
    let cert = decide_l_unique(&four, &cfg()).unwrap();
    assert_eq!(cert.verdict, Verdict::NonUnique);
    assert_eq!(cert.rank, 2);

    // The full canonical relation set, exactly: masses (5, 4, 2, 1).
    let relations = enumerate_relations(four.atoms(), &cfg()).unwrap();
    let expected = vec![
        relation_of(&four, &[1, 5], &[4, 2]),
        relation_of(&four, &[4, 1], &[5]),
    ];
    let mut expected_sorted = expected.clone();
    expected_sorted.sort();
    assert_eq!(relations, expected_sorted);

    // Witness proportional to masses (1, 2, 6, 7); aligned with the
    // stored order (5, 4, 2, 1) and normalized, that is (7, 6, 2, 1).
    let w = cert.witness.as_ref().unwrap();
    assert_eq!(
        w.atom_values,
        vec![int(7), int(6), int(2), int(1)]
    );
    assert!(check_l(&four, w, &cfg()).unwrap());
    assert!(check_o(&four, w, &cfg()).unwrap());

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    report("c2", &format!("verdicts, relation set, witness, {elapsed:?}"));
}

#[test]
fn c3_mixed_measure_regression() {
    let unique = positive_example(ExampleId::Ex3Mu);
    let cert = decide_l_unique(&unique, &cfg()).unwrap();
    assert_eq!(cert.verdict, Verdict::Unique);
    assert_eq!(cert.required_rank, 4);

    let non_unique = positive_example(ExampleId::Ex3MuPrime);
    let cert = decide_l_unique(&non_unique, &cfg()).unwrap();
    assert_eq!(cert.verdict, Verdict::NonUnique);
    let w = cert.witness.as_ref().unwrap();
    assert_eq!(w.atom_values, vec![int(7), int(6), int(2)]);
    assert_eq!(w.continuous_slope, int(1));

    let expected = [
        (int(0), int(1)),
        (int(2), int(3)),
        (int(4), int(8)),
        (int(9), int(10)),
        (int(11), int(12)),
    ];
    for m in [&unique, &non_unique] {
        let r = range(m, &cfg()).unwrap();
        assert_eq!(r.intervals(), &expected[..]);
    }
    report("c3", "augmented verdicts and bit-exact shared range");
}

#[test]
fn c4_alternating_truncations() {
    for depth in 1..=6usize {
        let m = signed_example(depth);

        // Every atom of each part is a bully (strict tail comparison).
        let all: Vec<usize> = (0..depth).collect();
        assert_eq!(bullies(&m.part(false)), all, "depth {depth}");
        assert_eq!(bullies(&m.part(true)), all, "depth {depth}");

        // The signed sums form the uniform grid of spacing 2/3^depth
        // over [-(1 - 3^-depth), 1 - 3^-depth].
        let spacing = ratio(2, 3i64.pow(depth as u32));
        let half = (3i64.pow(depth as u32) - 1) / 2;
        let grid: Vec<Rational> = (-half..=half).map(|k| &spacing * int(k)).collect();
        assert_eq!(signed_range(&m, &cfg()).unwrap(), grid, "depth {depth}");

        // The total-variation truncation stops being uniquely
        // determined as soon as two scales coexist.
        let abs = absolute_measure(&m);
        let cert = decide_l_unique(&abs, &cfg()).unwrap();
        let expected = if depth == 1 {
            Verdict::Unique
        } else {
            Verdict::NonUnique
        };
        assert_eq!(cert.verdict, expected, "depth {depth}");
        // Cross-check against the independent solution-space oracle.
        let dim = solution_space_dim(
            abs.atom_count(),
            &brute_force_relations(abs.atoms()).unwrap(),
        );
        assert_eq!(dim == 1, cert.verdict == Verdict::Unique, "depth {depth}");
    }
    report("c4", "bullies, grids, and verdicts for depths 1..=6");
}

#[test]
fn c5_oracle_equivalence_on_random_corpus() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    let mut non_unique = 0usize;
    for trial in 0..200 {
        let m = random_measure(&mut rng, 12, false);

        let fast = enumerate_relations(m.atoms(), &mitm()).unwrap();
        let brute = brute_force_relations(m.atoms()).unwrap();
        assert_eq!(fast, brute, "trial {trial}: relation sets differ");

        let cert = decide_l_unique(&m, &mitm()).unwrap();
        let dim = solution_space_dim(m.atom_count(), &brute);
        assert_eq!(
            cert.verdict == Verdict::Unique,
            dim == 1,
            "trial {trial}: verdict disagrees with solution-space dimension {dim}"
        );
        if cert.verdict == Verdict::NonUnique {
            non_unique += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    report(
        "c5",
        &format!("200 instances, {non_unique} non-unique, zero mismatches, {elapsed:?}"),
    );
}

#[test]
fn c6_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0002);

    // No bullies iff the range is the single interval [0, total],
    // for measures with a nonatomic part.
    for _ in 0..150 {
        let m = random_measure(&mut rng, 10, true);
        let r = range(&m, &cfg()).unwrap();
        let single = r.intervals() == [(Rational::zero(), m.total())];
        assert_eq!(bullies(&m).is_empty(), single, "atoms {:?}", m.atoms());
    }

    // Order compatibility implies level compatibility, exercised on
    // multiples, witness blends, and raw random candidates.
    for trial in 0..120 {
        let m = random_measure(&mut rng, 8, false);
        let n = m.atom_count();
        let nu = match trial % 3 {
            0 => {
                let c = ratio(rng.gen_range(0..=6), rng.gen_range(1..=4));
                CandidateMeasure::new(
                    m.atoms().iter().map(|a| a * &c).collect(),
                    Rational::zero(),
                )
            }
            1 => {
                let cert = decide_l_unique(&m, &cfg()).unwrap();
                match cert.witness {
                    Some(w) => w,
                    None => continue,
                }
            }
            _ => CandidateMeasure::new(
                (0..n)
                    .map(|_| ratio(rng.gen_range(0..=30), rng.gen_range(1..=4)))
                    .collect(),
                Rational::zero(),
            ),
        };
        if check_o(&m, &nu, &cfg()).unwrap() {
            assert!(check_l(&m, &nu, &cfg()).unwrap(), "atoms {:?}", m.atoms());
        }
    }

    // Witness soundness over the criterion-5 corpus.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    let mut witnesses = 0usize;
    for _ in 0..200 {
        let m = random_measure(&mut rng, 12, false);
        let cert = decide_l_unique(&m, &cfg()).unwrap();
        if let Some(w) = &cert.witness {
            witnesses += 1;
            assert!(w.atom_values.iter().all(|v| v.is_positive()));
            assert!(check_l(&m, w, &cfg()).unwrap());
            assert!(check_l_exhaustive(&m, w).unwrap().holds);
            assert!(!proportional(&m, w));
        }
    }
    assert!(witnesses > 0, "the corpus never exercised a witness");

    // Verdicts are invariant under scaling the measure (kappa alike).
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    for _ in 0..60 {
        let with_kappa = rng.gen_bool(0.5);
        let m = random_measure(&mut rng, 8, with_kappa);
        let c = ratio(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let scaled = m.scaled(&c).unwrap();
        let a = decide_l_unique(&m, &cfg()).unwrap();
        let b = decide_l_unique(&scaled, &cfg()).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.rank, b.rank);
    }

    report("c6", "interval equivalence, order implies level, witness soundness, scaling");
}

#[test]
fn c7_second_atom_bully_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let half = ratio(1, 2);
    for trial in 0..20 {
        // Tail of small atoms, then a second atom heavier than the
        // whole tail, then a first atom at least as heavy.
        let tail_len = rng.gen_range(1..=7);
        let tail: Vec<Rational> = (0..tail_len)
            .map(|_| ratio(rng.gen_range(1..=12), rng.gen_range(1..=6)))
            .collect();
        let tail_sum: Rational = tail.iter().sum();
        let second = &tail_sum + ratio(rng.gen_range(1..=10), rng.gen_range(1..=4));
        let first = &second + ratio(rng.gen_range(0..=10), 1);
        let mut atoms = vec![first.clone(), second.clone()];
        atoms.extend(tail.iter().cloned());
        let m = AtomicMeasure::purely_atomic(atoms).unwrap();

        assert!(
            bullies(&m).contains(&1),
            "trial {trial}: second atom is not a bully"
        );
        let cert = decide_l_unique(&m, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::NonUnique, "trial {trial}");

        // The explicit order-compatible witness: keep the first atom,
        // blend the second toward it, halve the rest.
        let mut values = vec![
            m.atoms()[0].clone(),
            (Rational::one() - &half) * &m.atoms()[0] + &half * &m.atoms()[1],
        ];
        values.extend(m.atoms()[2..].iter().map(|a| a * &half));
        let nu = CandidateMeasure::new(values, Rational::zero());
        assert!(check_o(&m, &nu, &cfg()).unwrap(), "trial {trial}");
        assert!(!proportional(&m, &nu), "trial {trial}");
    }
    report("c7", "20 fixtures: non-unique with an order-compatible witness");
}

#[test]
fn c8a_block_invariants_on_the_harmonic_prefix() {
    let started = Instant::now();
    let masses: Vec<Rational> = (1..=100_000i64).map(|k| ratio(1, k)).collect();
    let selection = select_blocks(&masses, &int(3)).unwrap();

    // Shortest prefix of the harmonic series with sum above 3.
    assert_eq!(selection.blocks[0], (0..11).collect::<Vec<usize>>());

    let four_thirds = ratio(4, 3);
    let mut threshold = ratio(1, 2);
    let mut last_index = selection.blocks[0].last().copied();
    for (j, block) in selection.blocks.iter().enumerate().skip(1) {
        assert!(!block.is_empty(), "block {j} empty");
        for &i in block {
            assert!(
                selection.masses[i] <= threshold,
                "block {j}: mass {} above {}",
                selection.masses[i],
                threshold
            );
            if let Some(prev) = last_index {
                assert!(i > prev, "block {j} overlaps its predecessor");
            }
        }
        let sum = selection.block_sum(j);
        assert!(
            sum >= threshold && sum <= &four_thirds * &threshold,
            "block {j}: sum {sum} outside [{threshold}, 4/3 * {threshold}]"
        );
        last_index = block.last().copied();
        threshold *= ratio(1, 2);
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    report(
        "c8a",
        &format!("{} blocks, invariants verbatim, {elapsed:?}", selection.blocks.len()),
    );
}

#[test]
fn c8b_flattened_block_measure_has_no_bullies() {
    // As stated this requires the flattened dyadic blocks (leading
    // block excluded, incomplete trailing block already discarded by
    // construction) to contain no bully at all. A finite purely
    // atomic measure always bullies at its minimum atom, so this is
    // expected to fail; see the analysis accompanying the build.
    let masses: Vec<Rational> = (1..=100_000i64).map(|k| ratio(1, k)).collect();
    let selection = select_blocks(&masses, &int(3)).unwrap();
    let flattened = selection.tail_measure();
    let bully_list = bullies(&flattened);
    assert!(
        bully_list.is_empty(),
        "the flattened block measure has bullies at indices {bully_list:?} \
(of {} atoms): a finite purely atomic measure always bullies at its minimum \
atom, so the no-bullies clause cannot hold for any truncation",
        flattened.atom_count()
    );
    report("c8b", "no bullies in the flattened block measure");
}

#[test]
fn c9_meet_in_the_middle_performance() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);

    // Full analyses at n = 26, where the direct 3^26 scan is out of
    // reach, must complete comfortably.
    for trial in 0..3 {
        let atoms: Vec<Rational> = (0..26)
            .map(|_| ratio(rng.gen_range(1..=50), rng.gen_range(1..=50)))
            .collect();
        let m = AtomicMeasure::purely_atomic(atoms).unwrap();
        let opts = AnalysisOptions {
            config: mitm(),
            oracle: false,
            candidate: None,
        };
        let report = analyze(&MeasureInput::Positive(m), &opts).unwrap();
        assert_eq!(report.meta.strategy, "mitm");
        assert!(report.range.point_count > 0, "trial {trial}");
    }

    // Both strategies agree wherever the direct scan is feasible.
    for _ in 0..20 {
        let m = random_measure(&mut rng, 14, false);
        let d = decide_l_unique(&m, &direct()).unwrap();
        let v = decide_l_unique(&m, &mitm()).unwrap();
        assert_eq!(d.verdict, v.verdict);
        assert_eq!(d.rank, v.rank);
        assert_eq!(d.basis.vectors, v.basis.vectors);
        assert_eq!(
            d.witness.map(|w| w.atom_values),
            v.witness.map(|w| w.atom_values)
        );
        assert_eq!(
            enumerate_relations(m.atoms(), &direct()).unwrap(),
            enumerate_relations(m.atoms(), &mitm()).unwrap()
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    report("c9", &format!("3 analyses at n=26 plus strategy agreement, {elapsed:?}"));
}
