//! Implementations behind the subcommands: each builds a [`Report`] and
//! leaves exit-code policy to `main`.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use octarank::bounds::{evaluate_bounds, scan_gamma_inequalities};
use octarank::completion::{
    build_system, gram_construct, min_rank_search, sample, solve_space, write_nksys, GramForm,
    SearchConfig, SearchMethod,
};
use octarank::complex::{coboundary_census, DecompositionTable, Indexer};
use octarank::gf2::{read_gf2m, write_gf2m, Gf2Matrix, Gf2mMeta};
use octarank::k1::certify_k1;
use octarank::nkmatrix::{
    check_properties, check_strong_nontriviality, heredity_reduce, verify_rank_bound, OctMatrix,
};
use octarank::vankampen::{
    alternation_intersects, geometric_intersection, moment_map, van_kampen_number, Intersection,
};
use octarank::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

pub fn verify_combinatorial(k_max: usize) -> Result<Report> {
    let mut report = Report::new("verify combinatorial");
    report.param("k", k_max);

    for k in 0..=k_max {
        let r = octarank::complex::verify_pair_product_identity(k);
        report.number(&format!("disjoint-pairs[k={k}]"), r.disjoint_pairs);
        report.number(&format!("product-sum-size[k={k}]"), r.product_sum_size);
        report.verdict(
            &format!("pair-product-identity[k={k}]"),
            r.holds,
            r.witness.map(|w| format!("{w:?}")),
        );
    }

    for k in 1..=k_max {
        let census = coboundary_census(k)?;
        report.number(&format!("coboundaries[k={k}]"), census.checked);
        report.verdict(
            &format!("coboundary-size-two[k={k}]"),
            census.all_size_two,
            None,
        );
    }

    for (n, k) in [(4usize, 1usize), (5, 1), (4, 2)] {
        let indexer = Indexer::new(n, k)?;
        let table = DecompositionTable::build(&indexer);
        let total: usize = table.by_target.iter().map(Vec::len).sum();
        report.number(&format!("xor-decompositions[n={n},k={k}]"), total);
        report.verdict(
            &format!("xor-one-coordinate-only[n={n},k={k}]"),
            table.beyond_one_coordinate.is_empty(),
            table
                .beyond_one_coordinate
                .first()
                .map(|t| format!("target index {}", t.0)),
        );
    }

    Ok(report)
}

pub fn verify_vankampen(k: usize, geometric: bool) -> Result<Report> {
    let mut report = Report::new("verify vankampen");
    report.param("k", k);
    report.param("geometric", geometric);

    let vk = van_kampen_number(k)?;
    report.number(&format!("count[k={k}]"), vk.intersecting_pairs);
    report.number(&format!("disjoint-pairs[k={k}]"), vk.disjoint_pairs);
    report.number(&format!("parity[k={k}]"), u8::from(vk.parity));
    let expected = 3u64.pow(k as u32 + 1);
    report.verdict(
        &format!("count-is-3^(k+1)[k={k}]"),
        vk.intersecting_pairs == expected,
        (vk.intersecting_pairs != expected).then(|| format!("expected {expected}")),
    );
    report.verdict(&format!("parity-is-one[k={k}]"), vk.parity, None);

    if geometric {
        let map = moment_map(k)?;
        let mut agree = true;
        let mut boundary = 0usize;
        let mut first_disagreement = None;
        let pairs = octarank::complex::disjoint_face_pairs(k);
        for (a, b) in &pairs {
            let alt = alternation_intersects(a, b)?;
            let geo = geometric_intersection(&map, a, b)?;
            if geo == Intersection::Boundary {
                boundary += 1;
            }
            if (geo == Intersection::Interior) != alt {
                agree = false;
                if first_disagreement.is_none() {
                    first_disagreement = Some(format!("{a:?} vs {b:?}"));
                }
            }
        }
        report.number(&format!("oracle-pairs[k={k}]"), pairs.len());
        report.number(&format!("boundary-contacts[k={k}]"), boundary);
        report.verdict(
            &format!("geometric-agrees-with-alternation[k={k}]"),
            agree,
            first_disagreement,
        );
        report.verdict(&format!("no-boundary-contact[k={k}]"), boundary == 0, None);
    }

    Ok(report)
}

pub fn verify_bounds(k_max: u64, n_max: u64) -> Result<Report> {
    let mut report = Report::new("verify bounds");
    report.param("k", k_max);
    report.param("n", n_max);

    for k in 1..=k_max {
        let scan = scan_gamma_inequalities(k, n_max)?;
        match scan.threshold {
            Some(t) => {
                report.number(&format!("gamma-threshold[k={k}]"), t);
                report.verdict(&format!("gamma-chain-eventually-holds[k={k}]"), true, None);
            }
            None => {
                report.verdict(
                    &format!("gamma-chain-eventually-holds[k={k}]"),
                    false,
                    Some(format!("still failing at n={n_max}")),
                );
            }
        }
    }

    // Sample point of the scan at k=1, n=10: 15 < 22 < 28.
    if k_max >= 1 && n_max >= 10 {
        let scan = scan_gamma_inequalities(1, n_max)?;
        let v = scan.verdicts.iter().find(|v| v.n == 10);
        report.verdict(
            "gamma-sample-point[k=1,n=10]",
            v.is_some_and(|v| v.first_holds && v.second_holds),
            None,
        );
    }

    // Skeleton bound consistency against the join-power bound through the
    // contained join power on s labels.
    let mut consistent = true;
    let mut first_violation = None;
    for k in 1..=k_max.min(3) {
        for n in (5 * k + 3)..=n_max.min(100) {
            let sp = octarank::complex::skeleton_partition(n as usize, k as usize)?;
            let r_n = evaluate_bounds(n, k, None)?;
            let r_s = evaluate_bounds(sp.s as u64, k, None)?;
            if r_n.skeleton_bound > r_s.joinpower_bound {
                consistent = false;
                if first_violation.is_none() {
                    first_violation = Some(format!("n={n}, k={k}, s={}", sp.s));
                }
            }
        }
    }
    report.verdict(
        "skeleton-bound-below-joinpower-at-s",
        consistent,
        first_violation,
    );

    Ok(report)
}

/// Loads a GF2M file and resolves `(n, k)` from the meta line and flags,
/// refusing contradictions.
fn load_oct_matrix(path: &Path, n: Option<usize>, k: Option<usize>) -> Result<OctMatrix> {
    let file = File::open(path)?;
    let (matrix, meta) = read_gf2m(&mut BufReader::new(file))?;
    let (n, k) = match (meta, n, k) {
        (Some(meta), n_flag, k_flag) => {
            if n_flag.is_some_and(|v| v != meta.n) || k_flag.is_some_and(|v| v != meta.k) {
                return Err(Error::Format(format!(
                    "flags (n={n_flag:?}, k={k_flag:?}) contradict the file meta \
                     (n={}, k={})",
                    meta.n, meta.k
                )));
            }
            (meta.n, meta.k)
        }
        (None, Some(n), Some(k)) => (n, k),
        (None, _, _) => {
            return Err(Error::Format(
                "the file has no meta line; pass both --n and --k".into(),
            ));
        }
    };
    let total = Indexer::new(n, k)?.count();
    if matrix.rows() != total || matrix.cols() != total {
        return Err(Error::Format(format!(
            "file is {}x{}, but (n={n}, k={k}) indexes {total} octahedra",
            matrix.rows(),
            matrix.cols()
        )));
    }
    OctMatrix::new(n, k, matrix)
}

fn property_verdicts(
    report: &mut Report,
    a: &OctMatrix,
) -> Result<octarank::nkmatrix::PropertyReport> {
    let r = check_properties(a)?;
    report.verdict(
        "symmetric",
        r.symmetric,
        r.symmetry_witness
            .map(|(i, j)| format!("({},{})", i.0, j.0)),
    );
    report.verdict(
        "independent",
        r.independent,
        r.independence_witness
            .map(|(i, j)| format!("({},{})", i.0, j.0)),
    );
    report.verdict(
        "additive",
        r.additivity_witness.is_none(),
        r.additivity_witness.map(|w| {
            format!(
                "(target={}, x={}, y={}, q={})",
                w.target.0, w.x.0, w.y.0, w.q.0
            )
        }),
    );
    report.verdict("nontrivial", r.nontrivial, None);
    report.number("sa", u8::from(r.sa_value));
    Ok(r)
}

pub fn check_file(path: &Path, n: Option<usize>, k: Option<usize>, strong: bool) -> Result<Report> {
    let mut report = Report::new("check");
    report.param("file", path.display());
    let a = load_oct_matrix(path, n, k)?;
    report.param("n", a.n());
    report.param("k", a.k());
    let r = property_verdicts(&mut report, &a)?;
    // The strong scan is defined whenever the first three properties
    // hold; a zero matrix reaches it and fails everywhere.
    if strong && r.symmetric && r.independent && r.additive {
        let s = check_strong_nontriviality(&a)?;
        report.number("strong-configurations", s.checked);
        report.verdict(
            "strong-nontrivial",
            s.holds_everywhere,
            s.first_failure
                .map(|(lines, face)| format!("lines {lines:?}, face {face:?}")),
        );
    }
    Ok(report)
}

pub fn rank_file(path: &Path, n: Option<usize>, k: Option<usize>) -> Result<Report> {
    let mut report = Report::new("rank");
    report.param("file", path.display());
    let a = load_oct_matrix(path, n, k)?;
    report.param("n", a.n());
    report.param("k", a.k());
    report.number("rank", a.rank());
    let all = property_verdicts(&mut report, &a)?.all_pass();
    if all && a.k() >= 1 && a.n() >= 4 {
        let r = verify_rank_bound(&a)?;
        report.number("bound", r.bound);
        report.number("bound-real", format!("{}/{}", r.bound_numer, r.bound_denom));
        for step in &r.chain {
            let lk = step.level_k;
            report.number(&format!("chain-rank[k={lk}]"), step.rank_current);
            report.number(&format!("chain-rank-block23[k={lk}]"), step.rank_block_23);
            report.number(&format!("chain-rank-block32[k={lk}]"), step.rank_block_32);
            report.number(&format!("chain-rank-z[k={lk}]"), step.rank_z);
        }
        report.verdict("rank-bound", r.pass, None);
        report.verdict("heredity-chain", r.chain_ok, None);
    }
    Ok(report)
}

pub fn heredity_file(
    path: &Path,
    out: &Path,
    n: Option<usize>,
    k: Option<usize>,
) -> Result<Report> {
    let mut report = Report::new("heredity");
    report.param("file", path.display());
    report.param("out", out.display());
    let a = load_oct_matrix(path, n, k)?;
    report.param("n", a.n());
    report.param("k", a.k());

    let z = heredity_reduce(&a)?;
    let two = octarank::complex::VertexPair::new(1, 2)?;
    let three = octarank::complex::VertexPair::new(1, 3)?;
    let b23 = octarank::nkmatrix::coordinate_block(&a, two, three)?;
    let b32 = octarank::nkmatrix::coordinate_block(&a, three, two)?;
    let (ra, r23, r32, rz) = (a.rank(), b23.rank(), b32.rank(), z.rank());
    report.number("rank", ra);
    report.number("rank-block23", r23);
    report.number("rank-block32", r32);
    report.number("rank-z", rz);
    report.verdict("rank-chain-halving", 2 * ra >= r23 + r32, None);
    report.verdict("rank-chain-subadditivity", r23 + r32 >= rz, None);

    let zr = check_properties(&z)?;
    report.verdict(
        "reduction-passes-checks",
        zr.all_pass(),
        zr.first_failed().map(str::to_string),
    );

    let file = File::create(out)?;
    let mut w = BufWriter::new(file);
    write_gf2m(&mut w, z.matrix(), Some(&Gf2mMeta { n: z.n(), k: z.k() }))?;
    Ok(report)
}

pub fn k1_certify(path: &Path, n: Option<usize>, k: Option<usize>) -> Result<Report> {
    let mut report = Report::new("k1 certify");
    report.param("file", path.display());
    let a = load_oct_matrix(path, n, k)?;
    report.param("n", a.n());
    report.param("k", a.k());

    let r = certify_k1(&a)?;
    report.number("rank-a", r.rank_a);
    report.number("rank-b", r.rank_b);
    report.number("rank-c", r.rank_c);
    report.number("rank-d", r.rank_d);
    report.number("rank-c-plus-d", r.rank_c_plus_d);
    report.number("middle-bound", r.middle_bound_ceil);
    report.number("final-bound", r.final_bound);
    report.number("certified-bound", r.certificate.certified_bound);
    report.number("certificate-steps", r.certificate.steps.len());
    report.verdict("a-to-b", r.a_to_b_ok, None);
    report.verdict("b-to-c", r.b_to_c_ok, None);
    report.verdict("c-against-d", r.subadditivity_ok, None);
    report.verdict("middle-bound", r.middle_bound_ok, None);
    report.verdict("d-certificate", r.certificate.pass, None);
    report.verdict("c-plus-d-indicator", r.indicator.pass, None);
    report.verdict("final-bound", r.rank_a >= r.final_bound, None);
    report.verdict("cross-check", r.cross_check.pass, None);
    Ok(report)
}

pub fn space_build(n: usize, k: usize, out: Option<&Path>) -> Result<Report> {
    let mut report = Report::new("space build");
    report.param("n", n);
    report.param("k", k);
    let sys = build_system(n, k)?;
    report.number("variables", sys.num_vars);
    report.number("equations", sys.equations.len());
    let affine = sys.equations.iter().filter(|e| e.rhs).count();
    report.number("affine-equations", affine);
    report.verdict("single-affine-equation", affine == 1, None);
    if let Some(path) = out {
        report.param("out", path.display());
        let file = File::create(path)?;
        write_nksys(&mut BufWriter::new(file), &sys)?;
    }
    Ok(report)
}

pub fn space_sample(
    n: usize,
    k: usize,
    seed: u64,
    count: usize,
    out: Option<&Path>,
) -> Result<Report> {
    let mut report = Report::new("space sample");
    report.param("n", n);
    report.param("k", k);
    report.param("count", count);
    report.seed = Some(seed);

    let sys = build_system(n, k)?;
    let space = solve_space(&sys)?;
    report.number("dimension", space.dimension());

    let samples = sample(&space, seed, count)?;
    let mut all_ok = true;
    let mut bound_ok = true;
    let bound = if k >= 1 {
        (((n - 3) * (n - 3)) as u64).div_ceil(1 << k) as usize
    } else {
        1
    };
    report.number("rank-bound", bound);
    for (i, m) in samples.iter().enumerate() {
        let r = check_properties(m)?;
        if !r.all_pass() {
            all_ok = false;
        }
        let rank = m.rank();
        if rank < bound {
            bound_ok = false;
        }
        report.number(&format!("rank[{i}]"), rank);
    }
    report.verdict("samples-pass-checks", all_ok, None);
    report.verdict("samples-meet-rank-bound", bound_ok, None);

    if let Some(dir) = out {
        report.param("out", dir.display());
        std::fs::create_dir_all(dir)?;
        for (i, m) in samples.iter().enumerate() {
            let path = dir.join(format!("sample-{i:03}.gf2m"));
            let file = File::create(path)?;
            write_gf2m(
                &mut BufWriter::new(file),
                m.matrix(),
                Some(&Gf2mMeta { n, k }),
            )?;
        }
    }
    Ok(report)
}

pub fn space_minrank(
    n: usize,
    k: usize,
    seed: u64,
    budget: u64,
    threshold: u32,
    out: Option<&Path>,
) -> Result<Report> {
    let mut report = Report::new("space minrank");
    report.param("n", n);
    report.param("k", k);
    report.param("budget", budget);
    report.param("threshold", threshold);
    report.seed = Some(seed);

    let sys = build_system(n, k)?;
    let space = solve_space(&sys)?;
    report.number("dimension", space.dimension());

    let config = SearchConfig {
        seed,
        budget,
        exhaustive_threshold: threshold,
    };
    let result = min_rank_search(&space, &config)?;
    report.number("best-rank", result.best_rank);
    report.number("evaluations", result.evaluations);
    report.number("lower-bound", result.lower_bound);
    report.param(
        "method",
        match result.method {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Heuristic => "heuristic",
        },
    );
    report.verdict(
        "best-rank-meets-lower-bound",
        result.best_rank >= result.lower_bound,
        None,
    );

    if let Some(path) = out {
        report.param("out", path.display());
        let file = File::create(path)?;
        write_gf2m(
            &mut BufWriter::new(file),
            result.witness.matrix(),
            Some(&Gf2mMeta { n, k }),
        )?;
    }
    Ok(report)
}

pub fn gram_command(
    n: usize,
    k: usize,
    beta: usize,
    form: GramForm,
    seed: u64,
    out: Option<&Path>,
) -> Result<Report> {
    let mut report = Report::new("gram");
    report.param("n", n);
    report.param("k", k);
    report.param("beta", beta);
    report.param(
        "form",
        match form {
            GramForm::Identity => "identity",
            GramForm::Hyperbolic => "hyperbolic",
        },
    );
    report.seed = Some(seed);

    let total = Indexer::new(n, k)?.count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = Gf2Matrix::zeros(beta, total);
    for i in 0..beta {
        for j in 0..total {
            if rng.gen() {
                y.set(i, j, true);
            }
        }
    }
    let g = gram_construct(beta, form, &y, n, k)?;
    report.number("rank", g.rank());
    report.verdict("rank-at-most-beta", g.rank() <= beta, None);
    report.verdict("symmetric", g.matrix().is_symmetric(), None);

    if let Some(path) = out {
        report.param("out", path.display());
        let file = File::create(path)?;
        write_gf2m(
            &mut BufWriter::new(file),
            g.matrix(),
            Some(&Gf2mMeta { n, k }),
        )?;
    }
    Ok(report)
}

pub fn bounds_command(n: u64, k: u64, beta: Option<u64>) -> Result<Report> {
    let mut report = Report::new("bounds");
    report.param("n", n);
    report.param("k", k);
    if let Some(b) = beta {
        report.param("beta", b);
    }
    let r = evaluate_bounds(n, k, beta)?;
    report.number("heawood", &r.heawood);
    report.number("skeleton-bound", &r.skeleton_bound);
    report.number("skeleton-valid", r.skeleton_valid);
    report.number("joinpower-bound", &r.joinpower_bound);
    report.number("joinpower-valid", r.joinpower_valid);
    report.number("kuhnel-lhs-coefficient", &r.kuhnel_lhs_coefficient);
    report.number("kuhnel-rhs", &r.kuhnel_rhs);
    report.number("gamma", &r.gamma);
    report.number("gamma-negative", r.gamma_negative);
    report.number("crossing-bound", &r.crossing_bound);
    if let Some((lo, hi)) = &r.helly_r_threshold {
        report.number("helly-r-low", lo);
        report.number("helly-r-high", hi);
    }
    Ok(report)
}

/// Shared output plumbing: print the text report, write JSON if asked.
pub fn emit(report: &Report, json: Option<&PathBuf>) -> Result<()> {
    print!("{}", report.render_text());
    if let Some(path) = json {
        std::fs::write(path, report.render_json())?;
    }
    Ok(())
}
