//! The rank-minimization side: the linear-affine system over GF(2) whose
//! solutions are exactly the (n,k)-matrices, its affine solution space,
//! seeded sampling, minimum-rank search over the coset, and the Gram
//! construction `YᵀΩY`.
//!
//! One variable per unordered octahedron pair (diagonal included), so
//! symmetry is structural and never an equation. Independence fixes
//! variables to zero, every exhaustive XOR decomposition contributes a
//! three-variable parity equation per column, and the SA sum is the
//! single affine equation with right-hand side 1.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{sa_pairs, DecompositionTable, Indexer, OctIndex, Octahedron};
use crate::gf2::{gram, Gf2Matrix};
use crate::nkmatrix::{check_properties, OctMatrix};
use crate::{Error, Result};

/// A parity equation: the XOR of the listed variables equals `rhs`.
/// Variable indices are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Equation {
    pub vars: Vec<usize>,
    pub rhs: bool,
}

/// The deduplicated equation system at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub n: usize,
    pub k: usize,
    /// Unordered octahedron pairs including the diagonal:
    /// `T(T+1)/2` for `T = C(n,2)^{k+1}`.
    pub num_vars: usize,
    pub equations: Vec<Equation>,
}

/// Variable index of the unordered pair `{p, q}` among `total` octahedra.
pub fn var_index(total: usize, p: OctIndex, q: OctIndex) -> usize {
    let (a, b) = if p.0 <= q.0 { (p.0, q.0) } else { (q.0, p.0) };
    a * (2 * total - a + 1) / 2 + (b - a)
}

/// Inverse of [`var_index`].
pub fn variable_pair(total: usize, mut idx: usize) -> (OctIndex, OctIndex) {
    for a in 0..total {
        let row_len = total - a;
        if idx < row_len {
            return (OctIndex(a), OctIndex(a + idx));
        }
        idx -= row_len;
    }
    panic!("variable index out of range");
}

/// Assembles the full system: independence zeros, additivity parities
/// from the exhaustive decomposition table, and the single SA equation.
/// Deterministic and deduplicated. Needs `n >= 4`.
pub fn build_system(n: usize, k: usize) -> Result<ConstraintSystem> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "constraint systems are built for n >= 4, got n={n}"
        )));
    }
    let indexer = Indexer::new(n, k)?;
    let total = indexer.count();
    let num_vars = total * (total + 1) / 2;
    let octs: Vec<Octahedron> = indexer.iter().collect();

    let mut set: BTreeSet<Equation> = BTreeSet::new();

    for (i, p) in octs.iter().enumerate() {
        for (j, q) in octs.iter().enumerate().skip(i + 1) {
            if p.disjoint(q) {
                set.insert(Equation {
                    vars: vec![var_index(total, OctIndex(i), OctIndex(j))],
                    rhs: false,
                });
            }
        }
    }

    let table = DecompositionTable::build(&indexer);
    for (t, decomps) in table.by_target.iter().enumerate() {
        for &(x, y) in decomps {
            for q in 0..total {
                let mut vars = vec![
                    var_index(total, OctIndex(t), OctIndex(q)),
                    var_index(total, x, OctIndex(q)),
                    var_index(total, y, OctIndex(q)),
                ];
                vars.sort_unstable();
                debug_assert!(vars.windows(2).all(|w| w[0] != w[1]));
                set.insert(Equation { vars, rhs: false });
            }
        }
    }

    let mut sa_vars: Vec<usize> = sa_pairs(k)
        .iter()
        .map(|(p, q)| Ok(var_index(total, indexer.index(p)?, indexer.index(q)?)))
        .collect::<Result<_>>()?;
    sa_vars.sort_unstable();
    set.insert(Equation {
        vars: sa_vars,
        rhs: true,
    });

    Ok(ConstraintSystem {
        n,
        k,
        num_vars,
        equations: set.into_iter().collect(),
    })
}

/// Writes the NKSYS text format: `NKSYS 1`, `n <n> k <k>`, `vars <V>`,
/// then one equation per line as sorted variable indices and `= 0|1`.
pub fn write_nksys<W: Write>(w: &mut W, sys: &ConstraintSystem) -> Result<()> {
    writeln!(w, "NKSYS 1")?;
    writeln!(w, "n {} k {}", sys.n, sys.k)?;
    writeln!(w, "vars {}", sys.num_vars)?;
    for eq in &sys.equations {
        let vars: Vec<String> = eq.vars.iter().map(usize::to_string).collect();
        writeln!(w, "{} = {}", vars.join(" "), u8::from(eq.rhs))?;
    }
    Ok(())
}

/// Reads the NKSYS text format back.
pub fn read_nksys<R: BufRead>(r: &mut R) -> Result<ConstraintSystem> {
    let mut lines = r.lines();
    let mut next = || -> Result<String> {
        match lines.next() {
            Some(l) => Ok(l?),
            None => Err(Error::Format("unexpected end of NKSYS file".into())),
        }
    };
    if next()?.trim() != "NKSYS 1" {
        return Err(Error::Format("bad NKSYS header".into()));
    }
    let nk_line = next()?;
    let parts: Vec<&str> = nk_line.split_whitespace().collect();
    let (n, k) = match parts.as_slice() {
        ["n", n, "k", k] => (
            n.parse()
                .map_err(|_| Error::Format(format!("bad n value {n:?}")))?,
            k.parse()
                .map_err(|_| Error::Format(format!("bad k value {k:?}")))?,
        ),
        _ => return Err(Error::Format(format!("bad parameter line {nk_line:?}"))),
    };
    let vars_line = next()?;
    let parts: Vec<&str> = vars_line.split_whitespace().collect();
    let num_vars = match parts.as_slice() {
        ["vars", v] => v
            .parse()
            .map_err(|_| Error::Format(format!("bad vars value {v:?}")))?,
        _ => return Err(Error::Format(format!("bad vars line {vars_line:?}"))),
    };
    let mut equations = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .rsplit_once('=')
            .ok_or_else(|| Error::Format(format!("equation without '=': {line:?}")))?;
        let rhs = match rhs.trim() {
            "0" => false,
            "1" => true,
            other => return Err(Error::Format(format!("bad right-hand side {other:?}"))),
        };
        let vars: Vec<usize> = lhs
            .split_whitespace()
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad variable index {v:?}")))
            })
            .collect::<Result<_>>()?;
        if vars.iter().any(|&v| v >= num_vars) {
            return Err(Error::Format(format!(
                "variable index above vars bound in {line:?}"
            )));
        }
        if !vars.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Format(format!(
                "variable indices must be strictly increasing in {line:?}"
            )));
        }
        equations.push(Equation { vars, rhs });
    }
    Ok(ConstraintSystem {
        n,
        k,
        num_vars,
        equations,
    })
}

// ---------------------------------------------------------------------------
// Affine solving
// ---------------------------------------------------------------------------

/// Packed bit vector used for assignments and echelon rows.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    fn xor_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn leading(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }
}

/// Union-find with parity: each variable carries its offset to the class
/// root, and one extra node represents the constant zero.
struct ParityDsu {
    parent: Vec<usize>,
    offset: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            offset: vec![false; n],
        }
    }

    /// Returns the class root and the parity of `x` relative to it.
    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut root = x;
        let mut parity = false;
        while self.parent[root] != root {
            parity ^= self.offset[root];
            root = self.parent[root];
        }
        let mut cur = x;
        let mut cur_parity = parity;
        while cur != root {
            let next = self.parent[cur];
            let next_parity = cur_parity ^ self.offset[cur];
            self.parent[cur] = root;
            self.offset[cur] = cur_parity;
            cur = next;
            cur_parity = next_parity;
        }
        (root, parity)
    }

    /// Enforces `a + b = parity`. Returns false on contradiction.
    fn union(&mut self, a: usize, b: usize, parity: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == parity;
        }
        // Smaller index becomes the root, for determinism.
        let (keep, absorb, extra) = if ra < rb {
            (ra, rb, pa ^ pb ^ parity)
        } else {
            (rb, ra, pa ^ pb ^ parity)
        };
        self.parent[absorb] = keep;
        self.offset[absorb] = extra;
        true
    }
}

/// The affine solution space: a particular assignment plus a kernel
/// basis over the pair variables. Every combination decodes to a matrix
/// passing all four property checks.
pub struct SolutionSpace {
    n: usize,
    k: usize,
    num_vars: usize,
    particular: Bits,
    kernel: Vec<Bits>,
}

impl SolutionSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Kernel dimension of the affine space.
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    pub fn particular_assignment(&self) -> Vec<bool> {
        (0..self.num_vars).map(|i| self.particular.get(i)).collect()
    }

    pub fn kernel_assignment(&self, i: usize) -> Vec<bool> {
        (0..self.num_vars).map(|v| self.kernel[i].get(v)).collect()
    }

    fn assignment_to_matrix(&self, bits: &Bits) -> Result<OctMatrix> {
        let indexer = Indexer::new(self.n, self.k)?;
        let total = indexer.count();
        let mut m = OctMatrix::zeros(self.n, self.k)?;
        let mut idx = 0usize;
        for p in 0..total {
            for q in p..total {
                if bits.get(idx) {
                    m.set_symmetric(OctIndex(p), OctIndex(q), true);
                }
                idx += 1;
            }
        }
        debug_assert_eq!(idx, self.num_vars);
        Ok(m)
    }

    /// Decodes `particular + Σ coeffs[i]·kernel[i]`.
    pub fn decode(&self, coeffs: &[bool]) -> Result<OctMatrix> {
        if coeffs.len() != self.kernel.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for kernel dimension {}",
                coeffs.len(),
                self.kernel.len()
            )));
        }
        let mut bits = self.particular.clone();
        for (c, v) in coeffs.iter().zip(&self.kernel) {
            if *c {
                bits.xor_assign(v);
            }
        }
        self.assignment_to_matrix(&bits)
    }

    /// The particular solution as a matrix.
    pub fn particular_matrix(&self) -> Result<OctMatrix> {
        self.assignment_to_matrix(&self.particular)
    }

    /// One kernel basis vector as a (homogeneous) matrix.
    pub fn kernel_matrix(&self, i: usize) -> Result<OctMatrix> {
        self.assignment_to_matrix(&self.kernel[i])
    }
}

/// Solves the system into its affine solution space, or reports the
/// system infeasible. Infeasibility at any `n >= 4` contradicts the
/// existence results upstream, so callers treat it as fatal.
pub fn solve_space(sys: &ConstraintSystem) -> Result<SolutionSpace> {
    // DSU node 0 is the constant zero; variable v is node v+1. Roots are
    // chosen by smallest index, so node 0 always stays the root of its
    // class and class parities are absolute values there.
    let mut dsu = ParityDsu::new(sys.num_vars + 1);

    // Propagate unit and binary relations to a fixpoint; keep the rest.
    let mut pending: Vec<(Vec<usize>, bool)> = sys
        .equations
        .iter()
        .map(|e| (e.vars.iter().map(|&v| v + 1).collect(), e.rhs))
        .collect();
    loop {
        let mut progressed = false;
        let mut remaining = Vec::with_capacity(pending.len());
        for (nodes, rhs) in pending {
            let mut roots: Vec<usize> = Vec::with_capacity(nodes.len());
            let mut parity = rhs;
            for v in nodes {
                let (r, p) = dsu.find(v);
                parity ^= p;
                roots.push(r);
            }
            roots.sort_unstable();
            // Duplicate roots cancel in pairs.
            let mut reduced: Vec<usize> = Vec::with_capacity(roots.len());
            for r in roots {
                if reduced.last() == Some(&r) {
                    reduced.pop();
                } else {
                    reduced.push(r);
                }
            }
            // The constant root contributes nothing (its value is zero).
            reduced.retain(|&r| r != 0);
            match reduced.len() {
                0 => {
                    if parity {
                        return Err(Error::Infeasible(
                            "derived 1 = 0 while propagating equations".into(),
                        ));
                    }
                }
                1 => {
                    if !dsu.union(reduced[0], 0, parity) {
                        return Err(Error::Infeasible(
                            "contradictory fixed value for a variable".into(),
                        ));
                    }
                    progressed = true;
                }
                2 => {
                    if !dsu.union(reduced[0], reduced[1], parity) {
                        return Err(Error::Infeasible(
                            "contradictory relation between two variables".into(),
                        ));
                    }
                    progressed = true;
                }
                _ => remaining.push((reduced, parity)),
            }
        }
        pending = remaining;
        if !progressed {
            break;
        }
    }

    // Re-normalize the survivors against the final classes and compact
    // the free roots.
    let mut final_pending: Vec<(Vec<usize>, bool)> = Vec::with_capacity(pending.len());
    for (nodes, rhs) in pending {
        let mut roots: Vec<usize> = Vec::with_capacity(nodes.len());
        let mut parity = rhs;
        for v in nodes {
            let (r, p) = dsu.find(v);
            parity ^= p;
            roots.push(r);
        }
        roots.sort_unstable();
        let mut reduced: Vec<usize> = Vec::with_capacity(roots.len());
        for r in roots {
            if reduced.last() == Some(&r) {
                reduced.pop();
            } else {
                reduced.push(r);
            }
        }
        reduced.retain(|&r| r != 0);
        if reduced.is_empty() {
            if parity {
                return Err(Error::Infeasible("derived 1 = 0 in final pass".into()));
            }
            continue;
        }
        final_pending.push((reduced, parity));
    }
    // Equations from different decompositions often collapse to the same
    // relation between class roots.
    final_pending.sort_unstable();
    final_pending.dedup();

    let mut root_of_var = vec![0usize; sys.num_vars];
    let mut parity_of_var = vec![false; sys.num_vars];
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..sys.num_vars {
        let (r, p) = dsu.find(v + 1);
        root_of_var[v] = r;
        parity_of_var[v] = p;
        if r != 0 {
            roots.push(r);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    let compact: std::collections::HashMap<usize, usize> =
        roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let r_count = roots.len();

    // Dense echelon over the compact roots (plus the affine column).
    let width = r_count + 1;
    let mut pivot_row_of: Vec<Option<usize>> = vec![None; r_count];
    let mut echelon: Vec<Bits> = Vec::new();
    for (vars, parity) in final_pending {
        let mut row = Bits::zeros(width);
        for v in vars {
            let c = compact[&v];
            row.set(c, !row.get(c));
        }
        if parity {
            row.set(r_count, true);
        }
        loop {
            match row.leading() {
                None => break,
                Some(lead) if lead == r_count => {
                    return Err(Error::Infeasible("derived 1 = 0 during elimination".into()));
                }
                Some(lead) => match pivot_row_of[lead] {
                    Some(existing) => {
                        let other = echelon[existing].clone();
                        row.xor_assign(&other);
                    }
                    None => {
                        pivot_row_of[lead] = Some(echelon.len());
                        echelon.push(row);
                        break;
                    }
                },
            }
        }
    }

    // Back-substitution for the particular solution and every kernel
    // vector at once: each root column carries a value vector with one
    // bit per free root (kernel coefficients) plus one bit for the
    // affine right-hand side.
    let free_cols: Vec<usize> = (0..r_count)
        .filter(|&c| pivot_row_of[c].is_none())
        .collect();
    let dim = free_cols.len();
    let vwidth = dim + 1;
    let mut values: Vec<Bits> = vec![Bits::zeros(vwidth); r_count];
    for (ki, &f) in free_cols.iter().enumerate() {
        values[f].set(ki, true);
    }
    let mut pivots: Vec<(usize, usize)> = pivot_row_of
        .iter()
        .enumerate()
        .filter_map(|(c, r)| r.map(|r| (c, r)))
        .collect();
    pivots.sort_unstable();
    for &(col, row) in pivots.iter().rev() {
        let bits = &echelon[row];
        let mut acc = Bits::zeros(vwidth);
        if bits.get(r_count) {
            acc.set(dim, true);
        }
        // XOR the value vectors of every set column past the pivot.
        for (w, &word) in bits.words.iter().enumerate().skip(col / 64) {
            let mut word = word;
            if w == col / 64 {
                let drop = col % 64 + 1;
                word = if drop == 64 {
                    0
                } else {
                    word & !((1u64 << drop) - 1)
                };
            }
            if w == r_count / 64 {
                word &= !(1u64 << (r_count % 64));
            }
            while word != 0 {
                let c = w * 64 + word.trailing_zeros() as usize;
                acc.xor_assign(&values[c]);
                word &= word - 1;
            }
        }
        values[col] = acc;
    }

    let mut particular = Bits::zeros(sys.num_vars);
    let mut kernel = vec![Bits::zeros(sys.num_vars); dim];
    for v in 0..sys.num_vars {
        let r = root_of_var[v];
        if r == 0 {
            particular.set(v, parity_of_var[v]);
            continue;
        }
        let value = &values[compact[&r]];
        particular.set(v, value.get(dim) ^ parity_of_var[v]);
        for (ki, vec) in kernel.iter_mut().enumerate() {
            if value.get(ki) {
                vec.set(v, true);
            }
        }
    }

    Ok(SolutionSpace {
        n: sys.n,
        k: sys.k,
        num_vars: sys.num_vars,
        particular,
        kernel,
    })
}

/// Seeded, reproducible sampling of the coset. Identical seeds give
/// identical lists.
pub fn sample(space: &SolutionSpace, seed: u64, count: usize) -> Result<Vec<OctMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let coeffs: Vec<bool> = (0..space.dimension()).map(|_| rng.gen()).collect();
        out.push(space.decode(&coeffs)?);
    }
    Ok(out)
}

/// Knobs for the minimum-rank search.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub seed: u64,
    /// Maximum rank evaluations for the heuristic path.
    pub budget: u64,
    /// Exhaustive enumeration when the kernel dimension is at most this.
    pub exhaustive_threshold: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            budget: 10_000,
            exhaustive_threshold: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    Heuristic,
}

#[derive(Debug, Clone)]
pub struct MinRankResult {
    pub best_rank: usize,
    pub witness: OctMatrix,
    pub method: SearchMethod,
    pub evaluations: u64,
    /// The proven lower bound the result was checked against.
    pub lower_bound: usize,
}

/// Searches the coset for a minimum-rank member: exhaustively (Gray-code
/// walk) when the kernel dimension is within the threshold, otherwise by
/// seeded bit-flip descent with restarts. The heuristic path reports the
/// best found and never claims optimality.
pub fn min_rank_search(space: &SolutionSpace, config: &SearchConfig) -> Result<MinRankResult> {
    // rank >= ceil((n-3)^2 / 2^k) is proven for k >= 1; at k = 0 the SA
    // equation still forces a nonzero matrix.
    let lower_bound = if space.k >= 1 {
        (((space.n - 3) * (space.n - 3)) as u64).div_ceil(1 << space.k) as usize
    } else {
        1
    };

    let dim = space.dimension();
    let kernel_matrices: Vec<Gf2Matrix> = (0..dim)
        .map(|i| Ok(space.kernel_matrix(i)?.into_matrix()))
        .collect::<Result<_>>()?;

    let mut evaluations = 0u64;
    let exhaustive = dim < 63 && dim as u32 <= config.exhaustive_threshold;
    let (best_rank, best_coeffs, method) = if exhaustive {
        let mut current = space.particular_matrix()?.into_matrix();
        let mut coeffs = vec![false; dim];
        let mut best = current.rank();
        evaluations += 1;
        let mut best_coeffs = coeffs.clone();
        for step in 1u64..1u64 << dim {
            let flip = step.trailing_zeros() as usize;
            current = current.add(&kernel_matrices[flip])?;
            coeffs[flip] = !coeffs[flip];
            let r = current.rank();
            evaluations += 1;
            if r < best {
                best = r;
                best_coeffs = coeffs.clone();
            }
        }
        (best, best_coeffs, SearchMethod::Exhaustive)
    } else {
        if config.budget == 0 {
            return Err(Error::Budget(
                "kernel dimension above the exhaustive threshold and budget is zero".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut best: Option<(usize, Vec<bool>)> = None;
        'outer: loop {
            let coeffs: Vec<bool> = (0..dim).map(|_| rng.gen()).collect();
            let mut current = space.decode(&coeffs)?.into_matrix();
            let mut coeffs = coeffs;
            let mut rank = current.rank();
            evaluations += 1;
            if best.as_ref().is_none_or(|(b, _)| rank < *b) {
                best = Some((rank, coeffs.clone()));
            }
            if evaluations >= config.budget {
                break;
            }
            loop {
                let mut improved = false;
                let mut order: Vec<usize> = (0..dim).collect();
                for i in (1..order.len()).rev() {
                    order.swap(i, rng.gen_range(0..=i));
                }
                for &flip in &order {
                    let candidate = current.add(&kernel_matrices[flip])?;
                    let r = candidate.rank();
                    evaluations += 1;
                    if r <= rank {
                        if r < rank {
                            improved = true;
                        }
                        current = candidate;
                        rank = r;
                        coeffs[flip] = !coeffs[flip];
                        if best.as_ref().is_none_or(|(b, _)| rank < *b) {
                            best = Some((rank, coeffs.clone()));
                        }
                    }
                    if evaluations >= config.budget {
                        break 'outer;
                    }
                }
                if !improved {
                    break;
                }
            }
        }
        let (rank, coeffs) = best.expect("at least one evaluation");
        (rank, coeffs, SearchMethod::Heuristic)
    };

    let witness = space.decode(&best_coeffs)?;
    let report = check_properties(&witness)?;
    if !report.all_pass() {
        return Err(Error::Structure(format!(
            "search produced a matrix failing the {} check; \
             the solution space is corrupt",
            report.first_failed().unwrap_or("unknown")
        )));
    }
    if best_rank < lower_bound {
        return Err(Error::Structure(format!(
            "search found rank {best_rank} below the proven lower bound \
             {lower_bound}; this indicates a bug"
        )));
    }

    Ok(MinRankResult {
        best_rank,
        witness,
        method,
        evaluations,
        lower_bound,
    })
}

/// Bilinear form for the Gram construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramForm {
    Identity,
    /// Direct sum of `β/2` hyperbolic 2×2 blocks; needs even β.
    Hyperbolic,
}

/// Builds `YᵀΩY` as an octahedron-indexed matrix: `Ω` is the identity or
/// a direct sum of hyperbolic blocks, `Y` is `β × C(n,2)^{k+1}`. The
/// result is symmetric of rank at most β.
pub fn gram_construct(
    beta: usize,
    form: GramForm,
    y: &Gf2Matrix,
    n: usize,
    k: usize,
) -> Result<OctMatrix> {
    if y.rows() != beta {
        return Err(Error::DimensionMismatch(format!(
            "Y has {} rows, expected beta = {beta}",
            y.rows()
        )));
    }
    let total = Indexer::new(n, k)?.count();
    if y.cols() != total {
        return Err(Error::DimensionMismatch(format!(
            "Y has {} columns, expected C(n,2)^(k+1) = {total}",
            y.cols()
        )));
    }
    let omega = match form {
        GramForm::Identity => Gf2Matrix::identity(beta),
        GramForm::Hyperbolic => {
            if beta % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "the hyperbolic form needs even beta, got {beta}"
                )));
            }
            let mut m = Gf2Matrix::zeros(beta, beta);
            for b in 0..beta / 2 {
                m.set(2 * b, 2 * b + 1, true);
                m.set(2 * b + 1, 2 * b, true);
            }
            m
        }
    };
    OctMatrix::new(n, k, gram(y, &omega)?)
}
