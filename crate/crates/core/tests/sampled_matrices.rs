//! Cross-module behavior on matrices drawn from the constraint space:
//! the checkers, the swap and strong non-triviality scans, the heredity
//! reduction, and the k = 1 chain all run on real solutions rather than
//! hand-built examples.

use octarank::completion::{build_system, sample, solve_space, var_index, Equation};
use octarank::complex::{one_coordinate_decompositions, Indexer, OctIndex};
use octarank::k1::{certify_k1, check_block_sum_diagonality};
use octarank::nkmatrix::{
    check_one_coordinate_swap, check_strong_nontriviality, heredity_reduce, verify_rank_bound,
    OctMatrix, PropertyChecker,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn samples_4_1(seed: u64, count: usize) -> Vec<OctMatrix> {
    let sys = build_system(4, 1).unwrap();
    let space = solve_space(&sys).unwrap();
    sample(&space, seed, count).unwrap()
}

#[test]
fn sampled_4_1_pass_everything() {
    let checker = PropertyChecker::new(4, 1).unwrap();
    for m in samples_4_1(11, 10) {
        let report = checker.check(&m).unwrap();
        assert!(report.all_pass(), "failed: {:?}", report.first_failed());

        let strong = check_strong_nontriviality(&m).unwrap();
        assert!(strong.holds_everywhere, "{:?}", strong.first_failure);

        let swap = check_one_coordinate_swap(&m).unwrap();
        assert!(swap.holds, "{:?}", swap.witness);

        let bound = verify_rank_bound(&m).unwrap();
        assert!(bound.pass, "rank {} below {}", bound.rank, bound.bound);
        assert!(bound.chain_ok);
    }
}

#[test]
fn swap_scan_catches_random_symmetric_junk() {
    // A random symmetric matrix without additivity will, with
    // overwhelming probability, violate the swap identity somewhere;
    // the seed pins one such matrix.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut a = OctMatrix::zeros(4, 1).unwrap();
    for i in 0..a.size() {
        for j in i..a.size() {
            if rng.gen() {
                a.set_symmetric(OctIndex(i), OctIndex(j), true);
            }
        }
    }
    let report = check_one_coordinate_swap(&a).unwrap();
    assert!(!report.holds);
    assert!(report.witness.is_some());
}

#[test]
fn block_sum_scan_catches_planted_violation() {
    let mut m = samples_4_1(23, 1).remove(0);
    let before = check_block_sum_diagonality(&m).unwrap();
    assert!(before.holds);

    // Flip one off-diagonal entry of one block: the block sums through
    // that entry stop being constant.
    let indexer = m.indexer();
    let row = indexer
        .index(&octarank::complex::Octahedron::from_labels(&[(1, 2), (1, 2)]).unwrap())
        .unwrap();
    let col = indexer
        .index(&octarank::complex::Octahedron::from_labels(&[(1, 3), (1, 4)]).unwrap())
        .unwrap();
    let v = m.entry(row, col);
    m.set_entry(row, col, !v);

    let after = check_block_sum_diagonality(&m).unwrap();
    assert!(!after.holds);
    assert!(after.witness.is_some());
}

#[test]
fn heredity_4_2_to_4_1() {
    let sys = build_system(4, 2).unwrap();
    let space = solve_space(&sys).unwrap();
    let checker = PropertyChecker::new(4, 1).unwrap();
    for m in sample(&space, 5, 3).unwrap() {
        assert!(m.rank() >= 1, "non-trivial matrices are nonzero");
        let z = heredity_reduce(&m).unwrap();
        assert_eq!(z.k(), 1);
        let report = checker.check(&z).unwrap();
        assert!(report.all_pass(), "failed: {:?}", report.first_failed());
    }
}

#[test]
fn k1_chain_on_sampled_matrices() {
    for (n, count) in [(4usize, 2usize), (5, 2), (6, 2)] {
        let sys = build_system(n, 1).unwrap();
        let space = solve_space(&sys).unwrap();
        let final_bound = ((n - 3) * (n - 3)).div_ceil(2);
        for m in sample(&space, 9, count).unwrap() {
            let chain = certify_k1(&m).unwrap();
            assert!(chain.pass, "n={n}: {chain:?}");
            assert!(chain.rank_a >= final_bound, "n={n}");
        }
    }
}

#[test]
fn heredity_output_has_forced_off_diagonal_ones() {
    // For any matrix passing all four checks at k = 1, the reduced
    // matrix has entry 1 at every pair ({1,x}, {1,y}) with 1 < x < y.
    let sys = build_system(5, 1).unwrap();
    let space = solve_space(&sys).unwrap();
    for m in sample(&space, 14, 3).unwrap() {
        let z = heredity_reduce(&m).unwrap();
        let indexer = z.indexer();
        for x in 2..=5u16 {
            for y in x + 1..=5u16 {
                let p = indexer
                    .index(&octarank::complex::Octahedron::from_labels(&[(1, x)]).unwrap())
                    .unwrap();
                let q = indexer
                    .index(&octarank::complex::Octahedron::from_labels(&[(1, y)]).unwrap())
                    .unwrap();
                assert!(z.entry(p, q), "Z[{{1,{x}}},{{1,{y}}}] must be 1");
            }
        }
    }
}

#[test]
fn four_term_sa_at_k2() {
    use octarank::complex::Octahedron;
    use octarank::nkmatrix::compute_sa;
    let mut a = OctMatrix::zeros(4, 2).unwrap();
    let indexer = a.indexer();
    let terms = [
        ([(1, 2), (1, 2), (1, 2)], [(1, 3), (1, 3), (1, 3)]),
        ([(1, 2), (1, 3), (1, 2)], [(1, 3), (1, 2), (1, 3)]),
        ([(1, 3), (1, 2), (1, 2)], [(1, 2), (1, 3), (1, 3)]),
        ([(1, 2), (1, 2), (1, 3)], [(1, 3), (1, 3), (1, 2)]),
    ];
    // Setting the terms one at a time toggles the sum each time.
    let mut expected = false;
    for (p, q) in terms {
        let p = indexer
            .index(&Octahedron::from_labels(&p).unwrap())
            .unwrap();
        let q = indexer
            .index(&Octahedron::from_labels(&q).unwrap())
            .unwrap();
        a.set_symmetric(p, q, true);
        expected = !expected;
        assert_eq!(compute_sa(&a).unwrap(), expected);
    }
}

#[test]
fn zero_dimensional_space_samples_repeat() {
    // Pinning every variable leaves a single solution; sampling repeats it.
    let total = Indexer::new(4, 0).unwrap().count();
    let num_vars = total * (total + 1) / 2;
    let sys = octarank::completion::ConstraintSystem {
        n: 4,
        k: 0,
        num_vars,
        equations: (0..num_vars)
            .map(|v| Equation {
                vars: vec![v],
                rhs: false,
            })
            .collect(),
    };
    let space = solve_space(&sys).unwrap();
    assert_eq!(space.dimension(), 0);
    let samples = sample(&space, 3, 4).unwrap();
    assert!(samples.iter().all(|m| m == &samples[0]));
    assert!(samples[0].matrix().is_zero());
}

#[test]
fn one_coordinate_fast_path_builds_identical_system() {
    // Once the exhaustive search confirms only one-coordinate
    // decompositions exist at (4,1), generating additivity equations from
    // that family alone must reproduce the very same system.
    let n = 4;
    let k = 1;
    let sys = build_system(n, k).unwrap();

    let indexer = Indexer::new(n, k).unwrap();
    let total = indexer.count();
    let mut fast: std::collections::BTreeSet<Equation> = std::collections::BTreeSet::new();
    let octs: Vec<_> = indexer.iter().collect();
    for (i, p) in octs.iter().enumerate() {
        for (j, q) in octs.iter().enumerate().skip(i + 1) {
            if p.disjoint(q) {
                fast.insert(Equation {
                    vars: vec![var_index(total, OctIndex(i), OctIndex(j))],
                    rhs: false,
                });
            }
        }
    }
    for (t, target) in octs.iter().enumerate() {
        for (x, y) in one_coordinate_decompositions(target, n) {
            let xi = indexer.index(&x).unwrap();
            let yi = indexer.index(&y).unwrap();
            for q in 0..total {
                let mut vars = vec![
                    var_index(total, OctIndex(t), OctIndex(q)),
                    var_index(total, xi, OctIndex(q)),
                    var_index(total, yi, OctIndex(q)),
                ];
                vars.sort_unstable();
                fast.insert(Equation { vars, rhs: false });
            }
        }
    }
    let mut sa_vars: Vec<usize> = octarank::complex::sa_pairs(k)
        .iter()
        .map(|(p, q)| var_index(total, indexer.index(p).unwrap(), indexer.index(q).unwrap()))
        .collect();
    sa_vars.sort_unstable();
    fast.insert(Equation {
        vars: sa_vars,
        rhs: true,
    });

    let fast: Vec<Equation> = fast.into_iter().collect();
    assert_eq!(sys.equations, fast);
}

#[test]
fn canonical_indexing_bijective_at_scale() {
    // Close to the practical ceiling: C(45,2)^2 = 980,100 octahedra.
    for (n, k) in [(7usize, 2usize), (45, 1)] {
        let indexer = Indexer::new(n, k).unwrap();
        for i in 0..indexer.count() {
            let o = indexer.octahedron(OctIndex(i)).unwrap();
            assert_eq!(indexer.index(&o).unwrap(), OctIndex(i));
        }
    }
}

#[test]
fn solver_dimension_matches_plain_elimination() {
    // Plain echelon insertion over the raw equations, written
    // independently of the production solver path.
    for (n, k) in [(4usize, 0usize), (4, 1)] {
        let sys = build_system(n, k).unwrap();
        let width = sys.num_vars + 1;
        let words = width.div_ceil(64);
        let mut pivot_of: Vec<Option<usize>> = vec![None; sys.num_vars];
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut rank = 0usize;
        for eq in &sys.equations {
            let mut row = vec![0u64; words];
            for &v in &eq.vars {
                row[v / 64] ^= 1 << (v % 64);
            }
            if eq.rhs {
                row[sys.num_vars / 64] ^= 1 << (sys.num_vars % 64);
            }
            loop {
                let lead = row
                    .iter()
                    .enumerate()
                    .find(|(_, &w)| w != 0)
                    .map(|(i, w)| i * 64 + w.trailing_zeros() as usize);
                match lead {
                    None => break,
                    Some(l) if l == sys.num_vars => panic!("system must be feasible"),
                    Some(l) => match pivot_of[l] {
                        Some(r) => {
                            let other = rows[r].clone();
                            for (a, b) in row.iter_mut().zip(other) {
                                *a ^= b;
                            }
                        }
                        None => {
                            pivot_of[l] = Some(rows.len());
                            rows.push(row);
                            rank += 1;
                            break;
                        }
                    },
                }
            }
        }
        let space = solve_space(&sys).unwrap();
        assert_eq!(space.dimension(), sys.num_vars - rank, "(n={n}, k={k})");
    }
}
