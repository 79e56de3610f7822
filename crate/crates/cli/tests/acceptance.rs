//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line (visible under `--nocapture`). A criterion
//! failing its assertion fails the test.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use octarank::completion::{
    build_system, gram_construct, min_rank_search, sample, solve_space, var_index, GramForm,
    SearchConfig,
};
use octarank::complex::{
    coboundary_census, disjoint_face_pairs, verify_pair_product_identity, DecompositionTable,
    Indexer, OctIndex,
};
use octarank::gf2::Gf2Matrix;
use octarank::k1::{
    block_indicator_rank_bound, certify_k1, check_block_sum_diagonality,
    check_first_block_row_tournament, diag_tournament_certify, tournament_rank_check, BlockMatrix,
    CertificateStep, RemovalWitness,
};
use octarank::nkmatrix::{heredity_reduce, OctMatrix, PropertyChecker};
use octarank::vankampen::{
    alternation_intersects, geometric_intersection, moment_map, van_kampen_number, Intersection,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: u32, message: &str) {
    println!("criterion {criterion:02}: PASS - {message}");
}

#[test]
fn criterion_01_pair_product_identity() {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for k in 0..=3usize {
        let r = verify_pair_product_identity(k);
        assert!(r.holds, "identity fails at k={k}: {:?}", r.witness);
        sizes.push((k, r.disjoint_pairs, r.product_sum_size));
    }
    assert_eq!(sizes[0].1, 6);
    assert_eq!(sizes[0].2, 6);
    assert_eq!(sizes[1].1, 36);
    assert_eq!(sizes[1].2, 36);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    pass(
        1,
        "disjoint-pair identity holds for k in 0..=3 (6 and 36 ordered pairs at k=0,1)",
    );
}

#[test]
fn criterion_02_van_kampen_counts_and_oracle() {
    let start = Instant::now();
    for k in 1..=6usize {
        let r = van_kampen_number(k).unwrap();
        assert_eq!(r.intersecting_pairs, 3u64.pow(k as u32 + 1), "k={k}");
        assert!(r.parity, "k={k}");
    }
    for k in 1..=2usize {
        let map = moment_map(k).unwrap();
        for (a, b) in disjoint_face_pairs(k) {
            let alt = alternation_intersects(&a, &b).unwrap();
            let geo = geometric_intersection(&map, &a, &b).unwrap();
            assert_eq!(
                geo == Intersection::Interior,
                alt,
                "oracle disagrees at k={k}: {a:?} vs {b:?}"
            );
            assert_ne!(geo, Intersection::Boundary);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        2,
        "count = 3^(k+1) with parity 1 for k in 1..=6; exact oracle agrees on all pairs at k=1,2",
    );
}

#[test]
fn criterion_03_xor_decompositions_one_coordinate_only() {
    for (n, k) in [(4usize, 1usize), (5, 1), (4, 2)] {
        let indexer = Indexer::new(n, k).unwrap();
        let table = DecompositionTable::build(&indexer);
        assert!(
            table.beyond_one_coordinate.is_empty(),
            "extra decomposition at (n={n}, k={k}): {:?}; \
             the additivity system would silently change",
            table.beyond_one_coordinate
        );
    }
    pass(
        3,
        "exhaustive XOR search finds only one-coordinate decompositions at (4,1), (5,1), (4,2)",
    );
}

#[test]
fn criterion_04_constraint_space_4_1() {
    let sys = build_system(4, 1).unwrap();
    let space = solve_space(&sys).unwrap();
    let checker = PropertyChecker::new(4, 1).unwrap();

    let samples = sample(&space, 2026, 100).unwrap();
    assert_eq!(samples.len(), 100);
    for (i, m) in samples.iter().enumerate() {
        let report = checker.check(m).unwrap();
        assert!(
            report.all_pass(),
            "sample {i} failed {:?}",
            report.first_failed()
        );
        assert!(m.rank() >= 1, "sample {i} has rank below 1");
    }

    let result = min_rank_search(&space, &SearchConfig::default()).unwrap();
    assert!(result.best_rank >= 1);
    let method = format!("{:?}", result.method).to_lowercase();
    pass(
        4,
        &format!(
            "(4,1) space feasible (dim {}); 100/100 seeded samples pass all checks with rank >= 1; \
             min-rank search best {} via {method}",
            space.dimension(),
            result.best_rank
        ),
    );
}

#[test]
fn criterion_05_heredity_on_4_2_samples() {
    let sys = build_system(4, 2).unwrap();
    let space = solve_space(&sys).unwrap();
    let checker = PropertyChecker::new(4, 1).unwrap();
    let two = octarank::complex::VertexPair::new(1, 2).unwrap();
    let three = octarank::complex::VertexPair::new(1, 3).unwrap();

    for (i, m) in sample(&space, 5, 20).unwrap().iter().enumerate() {
        let z = heredity_reduce(m).unwrap();
        let report = checker.check(&z).unwrap();
        assert!(
            report.all_pass(),
            "reduction of sample {i} failed {:?}",
            report.first_failed()
        );
        let b23 = octarank::nkmatrix::coordinate_block(m, two, three).unwrap();
        let b32 = octarank::nkmatrix::coordinate_block(m, three, two).unwrap();
        let (ra, r23, r32, rz) = (m.rank(), b23.rank(), b32.rank(), z.rank());
        assert!(2 * ra >= r23 + r32, "sample {i}: halving step fails");
        assert!(r23 + r32 >= rz, "sample {i}: subadditivity step fails");
    }
    pass(
        5,
        "20 sampled (4,2)-matrices reduce to passing (4,1)-matrices; rank chain holds on each",
    );
}

#[test]
fn criterion_06_k1_pipeline_on_5_1_samples() {
    let start = Instant::now();
    let sys = build_system(5, 1).unwrap();
    let space = solve_space(&sys).unwrap();
    for (i, m) in sample(&space, 6, 20).unwrap().iter().enumerate() {
        let sums = check_block_sum_diagonality(m).unwrap();
        assert!(
            sums.holds,
            "sample {i}: block-sum scan fails: {:?}",
            sums.witness
        );
        let tb = check_first_block_row_tournament(m).unwrap();
        assert!(
            tb.holds,
            "sample {i}: tournament-block scan fails: {:?}",
            tb.witness
        );

        let chain = certify_k1(m).unwrap();
        assert!(chain.a_to_b_ok && chain.b_to_c_ok, "sample {i}");
        assert!(chain.subadditivity_ok, "sample {i}");
        // rk D - rk(C+D) >= (5-2)^2/2 - 2 = 5/2, compared exactly.
        assert!(chain.middle_bound_ok, "sample {i}");
        assert!(chain.pass, "sample {i}: {chain:?}");
        assert!(chain.rank_a >= 2, "sample {i}: rank below 2");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        6,
        "20 sampled (5,1)-matrices: structural scans pass, full chain certifies rank >= 2",
    );
}

#[test]
fn criterion_07_tournament_rank_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let m = rng.gen_range(1..=64);
        let mut y = Gf2Matrix::zeros(m, m);
        for a in 0..m {
            if rng.gen::<bool>() {
                y.set(a, a, true);
            }
            for b in a + 1..m {
                if rng.gen::<bool>() {
                    y.set(a, b, true);
                } else {
                    y.set(b, a, true);
                }
            }
        }
        let r = tournament_rank_check(&y).unwrap();
        assert!(r.is_tournament, "trial {trial}");
        assert!(r.pass, "trial {trial}: rank {} below {}", r.rank, r.bound);
        let sum_rank = y.add(&y.transpose()).unwrap().rank();
        let expected = if m % 2 == 1 { m - 1 } else { m };
        assert_eq!(sum_rank, expected, "trial {trial}: Y+Yt rank");
    }
    pass(
        7,
        "1000 random tournaments (m <= 64): rank >= ceil((m-1)/2) and rk(Y+Yt) = m-1 / m",
    );
}

#[test]
fn criterion_08_block_indicator_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..1000 {
        let ell = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=8);
        let mut mat = Gf2Matrix::zeros(ell * m, ell * m);
        for i in 0..ell {
            for j in 0..i {
                if rng.gen::<bool>() {
                    for a in 0..m {
                        for b in 0..m {
                            mat.set(i * m + a, j * m + b, true);
                        }
                    }
                }
            }
        }
        let n = BlockMatrix::uniform(mat, ell, m).unwrap();
        let r = block_indicator_rank_bound(&n).unwrap();
        assert!(r.pass, "trial {trial}: rank {} above {}", r.rank, r.bound);
    }
    pass(
        8,
        "1000 random pattern-conforming block matrices: rank <= blocks - 1, zero failures",
    );
}

fn random_tournament(rng: &mut ChaCha8Rng, m: usize) -> Gf2Matrix {
    let mut y = Gf2Matrix::zeros(m, m);
    for a in 0..m {
        if rng.gen::<bool>() {
            y.set(a, a, true);
        }
        for b in a + 1..m {
            if rng.gen::<bool>() {
                y.set(a, b, true);
            } else {
                y.set(b, a, true);
            }
        }
    }
    y
}

#[test]
fn criterion_09_diag_tournament_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..500 {
        let ell = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let mut parent = Gf2Matrix::zeros(ell * m, ell * m);
        for i in 0..ell {
            let t = random_tournament(&mut rng, m);
            for a in 0..m {
                for b in 0..m {
                    if t.get(a, b) {
                        parent.set(i * m + a, i * m + b, true);
                    }
                }
            }
            for j in 0..i {
                for a in 0..m {
                    if rng.gen::<bool>() {
                        parent.set(i * m + a, j * m + a, true);
                    }
                }
            }
            for j in i + 1..ell {
                for a in 0..m {
                    for b in 0..m {
                        if rng.gen::<bool>() {
                            parent.set(i * m + a, j * m + b, true);
                        }
                    }
                }
            }
        }
        let parent = BlockMatrix::uniform(parent, ell, m).unwrap();

        // Keep a random nonempty subset of each block, symmetrically.
        let kept: Vec<Vec<usize>> = (0..ell)
            .map(|_| {
                let mut keep: Vec<usize> = (0..m).filter(|_| rng.gen::<bool>()).collect();
                if keep.is_empty() {
                    keep.push(rng.gen_range(0..m));
                }
                keep
            })
            .collect();
        let globals: Vec<usize> = kept
            .iter()
            .enumerate()
            .flat_map(|(i, ks)| ks.iter().map(move |&x| i * m + x))
            .collect();
        let sub = parent.matrix().block(&globals, &globals).unwrap();
        let d = BlockMatrix::new(sub, kept.iter().map(Vec::len).collect()).unwrap();
        let witness = RemovalWitness { parent, kept };

        let r = diag_tournament_certify(&d, Some(&witness)).unwrap();
        assert!(
            r.steps.iter().all(CertificateStep::ok),
            "trial {trial}: a step failed to lower the rank"
        );
        assert!(
            r.rank >= r.claimed_bound,
            "trial {trial}: rank {} below claimed {}",
            r.rank,
            r.claimed_bound
        );
        assert!(r.pass, "trial {trial}: {r:?}");
    }
    pass(
        9,
        "500 random tournament-like diagonal-like matrices certified, zero failures",
    );
}

#[test]
fn criterion_10_coboundary_sizes() {
    for k in 1..=3usize {
        let census = coboundary_census(k).unwrap();
        assert!(census.all_size_two, "k={k}");
        assert!(census.checked > 0);
    }
    pass(
        10,
        "every elementary coboundary has size exactly 2 for k in 1..=3",
    );
}

#[test]
fn criterion_11_gamma_inequality_scan() {
    use num_bigint::BigInt;
    use octarank::bounds::{binomial, scan_gamma_inequalities};

    for k in 1..=5u64 {
        let scan = scan_gamma_inequalities(k, 200).unwrap();
        assert!(
            scan.threshold.is_some(),
            "k={k}: no trailing threshold up to n=200"
        );
    }
    // Sample point k=1, n=10: 15 < 22 < 28 with exact integers.
    let left = binomial(10, 2) - BigInt::from(3) * binomial(10, 1);
    let mid = binomial(11, 2) - BigInt::from(3) * binomial(11, 1);
    let right = binomial(8, 2);
    assert_eq!(left, BigInt::from(15));
    assert_eq!(mid, BigInt::from(22));
    assert_eq!(right, BigInt::from(28));
    assert!(left < mid && mid < right);
    pass(
        11,
        "both inequalities verified exactly for k in 1..=5, n <= 200; 15 < 22 < 28 at k=1, n=10",
    );
}

#[test]
fn criterion_12_gram_rank_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for beta in [2usize, 4] {
        for form in [GramForm::Identity, GramForm::Hyperbolic] {
            for trial in 0..100 {
                let mut y = Gf2Matrix::zeros(beta, 36);
                for i in 0..beta {
                    for j in 0..36 {
                        if rng.gen() {
                            y.set(i, j, true);
                        }
                    }
                }
                let g = gram_construct(beta, form, &y, 4, 1).unwrap();
                assert!(
                    g.rank() <= beta,
                    "beta={beta}, {form:?}, trial {trial}: rank {}",
                    g.rank()
                );
            }
        }
    }
    let y = Gf2Matrix::zeros(3, 36);
    assert!(gram_construct(3, GramForm::Hyperbolic, &y, 4, 1).is_err());
    pass(12, "100 random Y per form at (4,1): rank <= beta for beta in {2,4}; odd hyperbolic beta rejected");
}

#[test]
fn criterion_13_completeness_at_4_0() {
    // Brute force every symmetric assignment on the 21 pair variables and
    // keep those passing the four checks.
    let checker = PropertyChecker::new(4, 0).unwrap();
    let total = 6usize;
    let num_vars = total * (total + 1) / 2;
    let mut brute: BTreeSet<u32> = BTreeSet::new();
    for assignment in 0u32..1 << num_vars {
        let mut m = OctMatrix::zeros(4, 0).unwrap();
        let mut idx = 0;
        for p in 0..total {
            for q in p..total {
                if assignment >> idx & 1 == 1 {
                    m.set_symmetric(OctIndex(p), OctIndex(q), true);
                }
                idx += 1;
            }
        }
        if checker.check(&m).unwrap().all_pass() {
            brute.insert(assignment);
        }
    }

    let sys = build_system(4, 0).unwrap();
    let space = solve_space(&sys).unwrap();
    let dim = space.dimension();
    assert!(dim <= 21);
    let mut decoded: BTreeSet<u32> = BTreeSet::new();
    for combo in 0u32..1 << dim {
        let coeffs: Vec<bool> = (0..dim).map(|i| combo >> i & 1 == 1).collect();
        let m = space.decode(&coeffs).unwrap();
        let mut assignment = 0u32;
        for p in 0..total {
            for q in p..total {
                if m.entry(OctIndex(p), OctIndex(q)) {
                    assignment |= 1 << var_index(total, OctIndex(p), OctIndex(q));
                }
            }
        }
        decoded.insert(assignment);
    }

    assert_eq!(decoded.len(), 1 << dim, "decoding must be injective");
    assert_eq!(
        brute, decoded,
        "brute-force solution set differs from the decoded constraint space"
    );
    pass(
        13,
        &format!(
            "brute force over 2^21 symmetric assignments equals the decoded space ({} solutions)",
            brute.len()
        ),
    );
}

#[test]
fn criterion_14_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_octarank");
    let tmp = std::env::temp_dir().join("octarank-acceptance");
    std::fs::create_dir_all(&tmp).unwrap();

    let invocations: Vec<Vec<String>> = vec![
        vec![
            "verify".into(),
            "combinatorial".into(),
            "--k".into(),
            "2".into(),
        ],
        vec![
            "verify".into(),
            "vankampen".into(),
            "--k".into(),
            "2".into(),
            "--geometric".into(),
        ],
        vec![
            "space".into(),
            "sample".into(),
            "--n".into(),
            "4".into(),
            "--k".into(),
            "1".into(),
            "--seed".into(),
            "5".into(),
            "--count".into(),
            "5".into(),
        ],
        vec![
            "bounds".into(),
            "--n".into(),
            "10".into(),
            "--k".into(),
            "2".into(),
            "--beta".into(),
            "7".into(),
        ],
    ];

    for (ci, args) in invocations.iter().enumerate() {
        let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for threads in ["1", "4", "8"] {
            let json_path = tmp.join(format!("rep-{ci}-{threads}.json"));
            let mut full = args.clone();
            full.push("--json".into());
            full.push(json_path.display().to_string());
            let out = Command::new(bin)
                .args(&full)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .unwrap();
            assert!(
                out.status.success(),
                "invocation {ci} failed under {threads} threads: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let json = std::fs::read(&json_path).unwrap();
            outputs.push((out.stdout, json));
        }
        for w in outputs.windows(2) {
            assert_eq!(w[0].0, w[1].0, "stdout differs for invocation {ci}");
            assert_eq!(w[0].1, w[1].1, "json differs for invocation {ci}");
        }
    }
    pass(
        14,
        "identical reports (stdout and JSON) under 1, 4 and 8 worker threads",
    );
}
