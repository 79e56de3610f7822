//! The k = 1 rank-certification pipeline: block matrices with uniform or
//! ragged structure, the B/C/D constructions, the diagonal-or-inversed
//! block-sum scan, tournament blocks, the block-indicator rank bound, the
//! recursive tournament-diagonal certificate, and the full chain
//! `rk A >= rk B >= rk C >= rk D − rk(C+D) >= (n−2)²/2 − (n−3)`.

use crate::gf2::Gf2Matrix;
use crate::nkmatrix::{check_properties, verify_rank_bound, OctMatrix, RankBoundReport};
use crate::{Error, Result};

/// A square GF(2) matrix with a block structure on its rows and columns:
/// block `i` spans `sizes[i]` consecutive indices. Uniform structure
/// means all block sizes equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    matrix: Gf2Matrix,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockMatrix {
    pub fn new(matrix: Gf2Matrix, sizes: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "block matrices are square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let total: usize = sizes.iter().sum();
        if total != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "block sizes sum to {total}, matrix has {} rows",
                matrix.rows()
            )));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &s in &sizes {
            acc += s;
            offsets.push(acc);
        }
        Ok(BlockMatrix {
            matrix,
            sizes,
            offsets,
        })
    }

    /// Uniform structure: `blocks` blocks of `m` rows each.
    pub fn uniform(matrix: Gf2Matrix, blocks: usize, m: usize) -> Result<Self> {
        Self::new(matrix, vec![m; blocks])
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn is_uniform(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }

    /// Block index of a global row/column.
    pub fn block_of(&self, global: usize) -> usize {
        debug_assert!(global < self.matrix.rows());
        // offsets is sorted; the block is the last offset <= global.
        match self.offsets.binary_search(&global) {
            Ok(mut i) => {
                while self.sizes.get(i) == Some(&0) {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        }
    }

    /// The `sizes[i] × sizes[j]` block at block position `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> Result<Gf2Matrix> {
        if i >= self.sizes.len() || j >= self.sizes.len() {
            return Err(Error::IndexOutOfRange(format!(
                "block ({i},{j}) of {} blocks",
                self.sizes.len()
            )));
        }
        let rows: Vec<usize> = (self.offsets[i]..self.offsets[i + 1]).collect();
        let cols: Vec<usize> = (self.offsets[j]..self.offsets[j + 1]).collect();
        self.matrix.block(&rows, &cols)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// True when every off-diagonal entry is 0 (diagonal entries are free).
pub fn is_diagonal_matrix(m: &Gf2Matrix) -> bool {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && m.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// True when every off-diagonal entry is 1 (diagonal entries are free).
pub fn is_inversed_diagonal_matrix(m: &Gf2Matrix) -> bool {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// Tournament test: `Y[a,b] + Y[b,a] = 1` for all `a != b`; the diagonal
/// is unconstrained.
pub fn is_tournament(m: &Gf2Matrix) -> bool {
    if !m.is_square() {
        return false;
    }
    for a in 0..m.rows() {
        for b in a + 1..m.rows() {
            if m.get(a, b) == m.get(b, a) {
                return false;
            }
        }
    }
    true
}

/// Builds the `(n−1)² × (n−1)²` block matrix `B` from a matrix at k = 1:
/// `B[(i,a),(j,b)] = A[{1,i+1}*{1,a+1}, {1,j+1}*{1,b+1}]`, indices
/// `i, a, j, b ∈ [n−1]`, block-major layout.
pub fn build_b(a: &OctMatrix) -> Result<BlockMatrix> {
    if a.k() != 1 {
        return Err(Error::InvalidArgument(format!(
            "the B construction works at k = 1, got k = {}",
            a.k()
        )));
    }
    if a.n() < 3 {
        return Err(Error::InvalidArgument(format!(
            "the B construction needs n >= 3, got n = {}",
            a.n()
        )));
    }
    let n = a.n();
    let m = n - 1;
    let indexer = a.indexer();
    let mut b = Gf2Matrix::zeros(m * m, m * m);
    for i in 1..=m {
        for aa in 1..=m {
            let row_oct = crate::complex::Octahedron::from_labels(&[
                (1, (i + 1) as u16),
                (1, (aa + 1) as u16),
            ])?;
            let row = indexer.index(&row_oct)?;
            for j in 1..=m {
                for bb in 1..=m {
                    let col_oct = crate::complex::Octahedron::from_labels(&[
                        (1, (j + 1) as u16),
                        (1, (bb + 1) as u16),
                    ])?;
                    let col = indexer.index(&col_oct)?;
                    if a.entry(row, col) {
                        b.set((i - 1) * m + (aa - 1), (j - 1) * m + (bb - 1), true);
                    }
                }
            }
        }
    }
    BlockMatrix::uniform(b, m, m)
}

/// A block-sum triple on which the scan failed: the off-diagonal entries
/// of `B_{i,j} + B_{s,j}` are not all equal; positions are 1-based block
/// labels and 0-based entries within the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSumWitness {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub entry_a: (usize, usize),
    pub entry_b: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct BlockSumReport {
    pub holds: bool,
    pub witness: Option<BlockSumWitness>,
    pub triples_checked: usize,
}

/// For every triple of pairwise distinct block labels `i, j, s`, checks
/// that `B_{i,j} + B_{s,j}` is a diagonal or inversed diagonal matrix
/// (all off-diagonal entries equal). Holds for every independent and
/// additive matrix; a witness flags an input violating those properties.
pub fn check_block_sum_diagonality(a: &OctMatrix) -> Result<BlockSumReport> {
    if a.n() < 4 {
        return Err(Error::InvalidArgument(format!(
            "the block-sum scan needs n >= 4, got n = {}",
            a.n()
        )));
    }
    let b = build_b(a)?;
    let blocks = b.block_count();
    let mut triples_checked = 0usize;
    for i in 1..=blocks {
        for j in 1..=blocks {
            for s in 1..=blocks {
                if i == j || i == s || j == s {
                    continue;
                }
                triples_checked += 1;
                let sum = b.block(i - 1, j - 1)?.add(&b.block(s - 1, j - 1)?)?;
                let mut first: Option<((usize, usize), bool)> = None;
                for aa in 0..sum.rows() {
                    for bb in 0..sum.cols() {
                        if aa == bb {
                            continue;
                        }
                        let v = sum.get(aa, bb);
                        match first {
                            None => first = Some(((aa, bb), v)),
                            Some((pos, fv)) if fv != v => {
                                return Ok(BlockSumReport {
                                    holds: false,
                                    witness: Some(BlockSumWitness {
                                        i,
                                        j,
                                        s,
                                        entry_a: pos,
                                        entry_b: (aa, bb),
                                    }),
                                    triples_checked,
                                });
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok(BlockSumReport {
        holds: true,
        witness: None,
        triples_checked,
    })
}

#[derive(Debug, Clone)]
pub struct TournamentBlocksReport {
    pub holds: bool,
    /// 1-based block column `j > 1` and entry pair where `B_{1,j}` fails
    /// the tournament test.
    pub witness: Option<(usize, (usize, usize))>,
}

/// Checks that every off-diagonal block `B_{1,j}`, `j > 1`, is a
/// tournament matrix. The input must pass all four property checks.
pub fn check_first_block_row_tournament(a: &OctMatrix) -> Result<TournamentBlocksReport> {
    if a.n() < 4 {
        return Err(Error::InvalidArgument(format!(
            "the tournament-block scan needs n >= 4, got n = {}",
            a.n()
        )));
    }
    let report = check_properties(a)?;
    if let Some(failed) = report.first_failed() {
        return Err(Error::Precondition(format!(
            "tournament blocks are guaranteed only for (n,1)-matrices; \
             the {failed} check failed"
        )));
    }
    let b = build_b(a)?;
    for j in 2..=b.block_count() {
        let block = b.block(0, j - 1)?;
        for aa in 0..block.rows() {
            for bb in aa + 1..block.cols() {
                if block.get(aa, bb) == block.get(bb, aa) {
                    return Ok(TournamentBlocksReport {
                        holds: false,
                        witness: Some((j, (aa, bb))),
                    });
                }
            }
        }
    }
    Ok(TournamentBlocksReport {
        holds: true,
        witness: None,
    })
}

/// `C_{i,j} = B_{i+1,j+1} + B_{1,j+1}`: row additions on `B` followed by
/// dropping the first block row and column. `(n−2)` blocks of size `n−1`.
pub fn build_c(b: &BlockMatrix, n: usize) -> Result<BlockMatrix> {
    let m = n - 1;
    if !b.is_uniform() || b.block_count() != m || b.size(0) != m {
        return Err(Error::DimensionMismatch(format!(
            "expected {m} uniform blocks of size {m} from the B construction"
        )));
    }
    let ell = n - 2;
    let mut c = Gf2Matrix::zeros(ell * m, ell * m);
    for i in 0..ell {
        for j in 0..ell {
            let upper = b.block(i + 1, j + 1)?;
            let first = b.block(0, j + 1)?;
            let sum = upper.add(&first)?;
            for aa in 0..m {
                for bb in 0..m {
                    if sum.get(aa, bb) {
                        c.set(i * m + aa, j * m + bb, true);
                    }
                }
            }
        }
    }
    BlockMatrix::uniform(c, ell, m)
}

/// `D` agrees with `C` on and above the block diagonal and wherever the
/// block is diagonal; an inversed-diagonal block below the diagonal gets
/// `J` added, making it diagonal. Errors when some under-diagonal block
/// is neither.
pub fn build_d(c: &BlockMatrix) -> Result<BlockMatrix> {
    if !c.is_uniform() {
        return Err(Error::DimensionMismatch(
            "the D construction expects uniform blocks".into(),
        ));
    }
    let ell = c.block_count();
    let m = if ell > 0 { c.size(0) } else { 0 };
    let mut d = c.matrix().clone();
    for i in 0..ell {
        for j in 0..i {
            let block = c.block(i, j)?;
            if is_diagonal_matrix(&block) {
                continue;
            }
            if is_inversed_diagonal_matrix(&block) {
                for aa in 0..m {
                    for bb in 0..m {
                        let r = c.offset(i) + aa;
                        let cc = c.offset(j) + bb;
                        let v = d.get(r, cc);
                        d.set(r, cc, !v);
                    }
                }
            } else {
                return Err(Error::Structure(format!(
                    "under-diagonal block ({},{}) is neither diagonal nor \
                     inversed diagonal; the input is not from a valid pipeline",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    BlockMatrix::uniform(d, ell, m)
}

#[derive(Debug, Clone)]
pub struct IndicatorBoundReport {
    pub pattern_ok: bool,
    pub blocks: usize,
    pub rank: usize,
    /// `blocks − 1`.
    pub bound: usize,
    pub pass: bool,
}

/// Rank bound for matrices whose blocks vanish on and above the diagonal
/// and are `0` or all-ones below: the rank equals the rank of the ℓ×ℓ
/// indicator, whose first row is zero, so it is at most `ℓ − 1`.
pub fn block_indicator_rank_bound(n: &BlockMatrix) -> Result<IndicatorBoundReport> {
    if !n.is_uniform() {
        return Err(Error::DimensionMismatch(
            "the indicator bound expects uniform blocks".into(),
        ));
    }
    let ell = n.block_count();
    for i in 0..ell {
        for j in 0..ell {
            let block = n.block(i, j)?;
            let ok = if i <= j {
                block.is_zero()
            } else {
                block.is_zero() || block == Gf2Matrix::ones(block.rows(), block.cols())
            };
            if !ok {
                return Err(Error::Structure(format!(
                    "block ({},{}) violates the zero/all-ones pattern",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let rank = n.rank();
    let bound = ell.saturating_sub(1);
    Ok(IndicatorBoundReport {
        pattern_ok: true,
        blocks: ell,
        rank,
        bound,
        pass: rank <= bound,
    })
}

#[derive(Debug, Clone)]
pub struct TournamentRankReport {
    pub is_tournament: bool,
    pub m: usize,
    pub rank: usize,
    /// `⌈(m−1)/2⌉`.
    pub bound: usize,
    pub pass: bool,
}

/// Tournament test plus the rank bound `rk Y >= ⌈(m−1)/2⌉`.
pub fn tournament_rank_check(y: &Gf2Matrix) -> Result<TournamentRankReport> {
    if !y.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "tournament matrices are square, got {}x{}",
            y.rows(),
            y.cols()
        )));
    }
    let m = y.rows();
    let rank = y.rank();
    let bound = if m == 0 { 0 } else { m / 2 };
    Ok(TournamentRankReport {
        is_tournament: is_tournament(y),
        m,
        rank,
        bound,
        pass: rank >= bound,
    })
}

/// Exhibits a ragged matrix as a symmetric row/column selection from a
/// uniform parent whose under-diagonal blocks are diagonal matrices.
#[derive(Debug, Clone)]
pub struct RemovalWitness {
    pub parent: BlockMatrix,
    /// `kept[i]` lists the within-block indices kept from parent block `i`,
    /// strictly increasing.
    pub kept: Vec<Vec<usize>>,
}

/// One pivot step of the certificate recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateStep {
    /// Pivot row as (block, within-block index) at the time of the step.
    pub row: (usize, usize),
    /// Pivot column likewise; always in an earlier block than the row.
    pub col: (usize, usize),
    pub rank_before: usize,
    pub rank_after: usize,
}

impl CertificateStep {
    /// Deleting the pivot cross removes an isolated unit plus one more
    /// row and column, so the rank drops by at least one. Each step
    /// contributes exactly one to the certified bound.
    pub fn ok(&self) -> bool {
        self.rank_before > self.rank_after
    }
}

#[derive(Debug, Clone)]
pub struct DiagTournamentReport {
    pub steps: Vec<CertificateStep>,
    /// Block sizes at the base of the recursion.
    pub base_sizes: Vec<usize>,
    /// Blockwise tournament bound at the base, `Σ ⌈(m_i−1)/2⌉`.
    pub base_bound: usize,
    /// `steps + base_bound`; a verified lower bound for the rank.
    pub certified_bound: usize,
    /// `⌈Σ(m_i−1)/2⌉` over the original sizes.
    pub claimed_bound: usize,
    pub rank: usize,
    pub pass: bool,
}

/// Certifies `rk D >= ⌈Σ(m_i−1)/2⌉` for a tournament-like diagonal-like
/// matrix by running the pivot recursion: take the lowest row meeting the
/// under-diagonal region, its leftmost nonzero column, clear the cross by
/// row and column additions, delete the two indices, and recurse. Every
/// step's rank drop and the base-case blockwise bound are verified with
/// the rank oracle.
///
/// Ragged inputs must carry a [`RemovalWitness`]; uniform inputs are
/// checked directly. Recognizing diagonal-likeness without a witness is
/// a search problem this certifier does not attempt.
pub fn diag_tournament_certify(
    d: &BlockMatrix,
    witness: Option<&RemovalWitness>,
) -> Result<DiagTournamentReport> {
    validate_diagonal_like(d, witness)?;
    for (i, _) in d.sizes().iter().enumerate() {
        let diag = d.block(i, i)?;
        if !is_tournament(&diag) {
            return Err(Error::Structure(format!(
                "diagonal block {} is not a tournament matrix",
                i + 1
            )));
        }
    }

    let original_sizes = d.sizes().to_vec();
    let mut work = d.matrix().clone();
    let mut sizes = original_sizes.clone();
    let mut steps = Vec::new();

    loop {
        let offsets = prefix_sums(&sizes);
        let block_of = |global: usize| -> usize {
            let mut b = 0;
            while offsets[b + 1] <= global {
                b += 1;
            }
            b
        };

        // Lowest row whose leftmost set bit falls in an earlier block.
        let mut pivot = None;
        for r in (0..work.rows()).rev() {
            if let Some(c) = work.row_leading(r) {
                if c < offsets[block_of(r)] {
                    pivot = Some((r, c));
                    break;
                }
            }
        }
        let Some((r, c)) = pivot else { break };
        let rank_before = work.rank();

        for rr in 0..work.rows() {
            if rr != r && work.get(rr, c) {
                work.add_row_into(rr, r);
            }
        }
        for cc in 0..work.cols() {
            if cc != c && work.get(r, cc) {
                work.add_col_into(cc, c);
            }
        }
        debug_assert!((0..work.cols()).all(|cc| work.get(r, cc) == (cc == c)));
        debug_assert!((0..work.rows()).all(|rr| work.get(rr, c) == (rr == r)));

        let (rb, cb) = (block_of(r), block_of(c));
        let step_row = (rb, r - offsets[rb]);
        let step_col = (cb, c - offsets[cb]);
        let keep: Vec<usize> = (0..work.rows()).filter(|&x| x != r && x != c).collect();
        work = work.block(&keep, &keep)?;
        sizes[rb] -= 1;
        sizes[cb] -= 1;

        let rank_after = work.rank();
        steps.push(CertificateStep {
            row: step_row,
            col: step_col,
            rank_before,
            rank_after,
        });
    }

    let base = BlockMatrix::new(work, sizes.clone())?;
    let mut base_bound = 0usize;
    for i in 0..base.block_count() {
        let diag = base.block(i, i)?;
        if !is_tournament(&diag) {
            return Err(Error::Structure(format!(
                "recursion base: diagonal block {} is not a tournament matrix",
                i + 1
            )));
        }
        base_bound += base.size(i) / 2;
    }
    let base_rank = base.rank();
    let base_rank_ok = base_rank >= base_bound;

    let certified_bound = steps.len() + base_bound;
    let original_sum: i64 = original_sizes.iter().map(|&m| m as i64 - 1).sum();
    let claimed_bound = if original_sum <= 0 {
        0
    } else {
        (original_sum as u64).div_ceil(2) as usize
    };
    let rank = d.matrix().rank();
    let steps_ok = steps.iter().all(CertificateStep::ok);
    let pass =
        steps_ok && base_rank_ok && certified_bound >= claimed_bound && rank >= claimed_bound;

    Ok(DiagTournamentReport {
        steps,
        base_sizes: sizes,
        base_bound,
        certified_bound,
        claimed_bound,
        rank,
        pass,
    })
}

fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

fn validate_diagonal_like(d: &BlockMatrix, witness: Option<&RemovalWitness>) -> Result<()> {
    match witness {
        None => {
            if !d.is_uniform() {
                return Err(Error::Structure(
                    "ragged input needs a parent-plus-kept-indices witness".into(),
                ));
            }
            for i in 0..d.block_count() {
                for j in 0..i {
                    if !is_diagonal_matrix(&d.block(i, j)?) {
                        return Err(Error::Structure(format!(
                            "under-diagonal block ({},{}) is not diagonal",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            Ok(())
        }
        Some(w) => {
            if !w.parent.is_uniform() {
                return Err(Error::Structure(
                    "the removal parent must be uniform".into(),
                ));
            }
            if w.kept.len() != w.parent.block_count() || w.kept.len() != d.block_count() {
                return Err(Error::DimensionMismatch(format!(
                    "witness covers {} blocks, parent has {}, input has {}",
                    w.kept.len(),
                    w.parent.block_count(),
                    d.block_count()
                )));
            }
            let m = if w.parent.block_count() > 0 {
                w.parent.size(0)
            } else {
                0
            };
            let mut globals = Vec::new();
            for (i, kept) in w.kept.iter().enumerate() {
                if kept.len() != d.size(i) {
                    return Err(Error::DimensionMismatch(format!(
                        "witness keeps {} indices in block {}, input block has {}",
                        kept.len(),
                        i + 1,
                        d.size(i)
                    )));
                }
                if !kept.windows(2).all(|x| x[0] < x[1]) || kept.iter().any(|&x| x >= m) {
                    return Err(Error::Structure(format!(
                        "kept indices of block {} must be strictly increasing and below {m}",
                        i + 1
                    )));
                }
                globals.extend(kept.iter().map(|&x| w.parent.offset(i) + x));
            }
            let restricted = w.parent.matrix().block(&globals, &globals)?;
            if &restricted != d.matrix() {
                return Err(Error::Structure(
                    "input does not equal the parent restricted to the kept indices".into(),
                ));
            }
            for i in 0..w.parent.block_count() {
                for j in 0..i {
                    if !is_diagonal_matrix(&w.parent.block(i, j)?) {
                        return Err(Error::Structure(format!(
                            "parent under-diagonal block ({},{}) is not diagonal",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            Ok(())
        }
    }
}

/// The fully evaluated k = 1 chain on one matrix.
#[derive(Debug, Clone)]
pub struct K1ChainReport {
    pub n: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_c: usize,
    pub rank_d: usize,
    pub rank_c_plus_d: usize,
    /// `rk A >= rk B`.
    pub a_to_b_ok: bool,
    /// `rk B >= rk C`.
    pub b_to_c_ok: bool,
    /// `rk C >= rk D − rk(C+D)`.
    pub subadditivity_ok: bool,
    /// `2(rk D − rk(C+D)) >= (n−2)² − 2(n−3)`, the exact comparison with
    /// the real middle bound.
    pub middle_bound_ok: bool,
    /// `⌈(n−2)²/2 − (n−3)⌉`.
    pub middle_bound_ceil: usize,
    /// `⌈(n−3)²/2⌉`.
    pub final_bound: usize,
    pub certificate: DiagTournamentReport,
    pub indicator: IndicatorBoundReport,
    pub cross_check: RankBoundReport,
    pub pass: bool,
}

/// Runs the whole k = 1 pipeline on an (n,1)-matrix: builds B, C and D,
/// verifies the two structural scans, certifies `rk D` with the pivot
/// recursion and `rk(C+D)` with the indicator bound, checks every chain
/// inequality numerically, and cross-checks the final verdict against the
/// generic rank-bound checker.
pub fn certify_k1(a: &OctMatrix) -> Result<K1ChainReport> {
    if a.k() != 1 {
        return Err(Error::InvalidArgument(format!(
            "the chain certifies k = 1 matrices, got k = {}",
            a.k()
        )));
    }
    if a.n() < 4 {
        return Err(Error::InvalidArgument(format!(
            "the chain needs n >= 4, got n = {}",
            a.n()
        )));
    }
    let properties = check_properties(a)?;
    if let Some(failed) = properties.first_failed() {
        return Err(Error::Precondition(format!(
            "the chain needs an (n,1)-matrix; the {failed} check failed"
        )));
    }

    let sums = check_block_sum_diagonality(a)?;
    if !sums.holds {
        return Err(Error::Structure(format!(
            "block-sum scan failed at {:?}",
            sums.witness
        )));
    }
    let tournaments = check_first_block_row_tournament(a)?;
    if !tournaments.holds {
        return Err(Error::Structure(format!(
            "tournament-block scan failed at {:?}",
            tournaments.witness
        )));
    }

    let n = a.n();
    let b = build_b(a)?;
    let c = build_c(&b, n)?;
    let d = build_d(&c)?;
    let c_plus_d = BlockMatrix::uniform(
        c.matrix().add(d.matrix())?,
        c.block_count(),
        if c.block_count() > 0 { c.size(0) } else { 0 },
    )?;

    let rank_a = a.rank();
    let rank_b = b.rank();
    let rank_c = c.rank();
    let rank_d = d.rank();
    let rank_c_plus_d = c_plus_d.rank();

    let certificate = diag_tournament_certify(&d, None)?;
    let indicator = block_indicator_rank_bound(&c_plus_d)?;

    let a_to_b_ok = rank_a >= rank_b;
    let b_to_c_ok = rank_b >= rank_c;
    let diff = rank_d as i64 - rank_c_plus_d as i64;
    let subadditivity_ok = rank_c as i64 >= diff;
    // (n−2)²/2 − (n−3) compared exactly: 2·diff >= (n−2)² − 2(n−3).
    let mid_twice = (n as i64 - 2).pow(2) - 2 * (n as i64 - 3);
    let middle_bound_ok = 2 * diff >= mid_twice;
    let middle_bound_ceil = (mid_twice.max(0) as u64).div_ceil(2) as usize;
    let final_bound = ((n - 3) * (n - 3)).div_ceil(2);

    let cross_check = verify_rank_bound(a)?;
    debug_assert_eq!(cross_check.bound, final_bound);

    // (n−2)²/2 − (n−3) >= (n−3)²/2 reduces to 10 >= 9.
    let pass = a_to_b_ok
        && b_to_c_ok
        && subadditivity_ok
        && middle_bound_ok
        && certificate.pass
        && indicator.pass
        && rank_a >= final_bound
        && cross_check.pass;

    Ok(K1ChainReport {
        n,
        rank_a,
        rank_b,
        rank_c,
        rank_d,
        rank_c_plus_d,
        a_to_b_ok,
        b_to_c_ok,
        subadditivity_ok,
        middle_bound_ok,
        middle_bound_ceil,
        final_bound,
        certificate,
        indicator,
        cross_check,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{OctIndex, Octahedron};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn strictly_upper_ones(m: usize) -> Gf2Matrix {
        let mut y = Gf2Matrix::zeros(m, m);
        for a in 0..m {
            for b in a + 1..m {
                y.set(a, b, true);
            }
        }
        y
    }

    pub(crate) fn random_tournament(rng: &mut ChaCha8Rng, m: usize) -> Gf2Matrix {
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
    fn build_b_index_arithmetic() {
        // B[(1,1),(2,3)] = A[{1,2}*{1,2}, {1,3}*{1,4}] at n = 4.
        let mut a = OctMatrix::zeros(4, 1).unwrap();
        let indexer = a.indexer();
        let row = indexer
            .index(&Octahedron::from_labels(&[(1, 2), (1, 2)]).unwrap())
            .unwrap();
        let col = indexer
            .index(&Octahedron::from_labels(&[(1, 3), (1, 4)]).unwrap())
            .unwrap();
        a.set_entry(row, col, true);
        let b = build_b(&a).unwrap();
        assert_eq!(b.matrix().rows(), 9);
        // (i,a) = (1,1) -> global 0; (j,b) = (2,3) -> global 1*3 + 2 = 5.
        assert!(b.matrix().get(0, 5));
        assert_eq!(
            b.matrix()
                .block(&(0..9).collect::<Vec<_>>(), &(0..9).collect::<Vec<_>>())
                .unwrap()
                .rank(),
            1
        );
    }

    #[test]
    fn build_b_symmetry() {
        let mut a = OctMatrix::zeros(4, 1).unwrap();
        for i in 0..a.size() {
            for j in i..a.size() {
                if (i * 7 + j * 13) % 3 == 0 {
                    a.set_symmetric(OctIndex(i), OctIndex(j), true);
                }
            }
        }
        let b = build_b(&a).unwrap();
        assert!(b.matrix().is_symmetric());
    }

    #[test]
    fn build_b_rejects_wrong_k() {
        let a = OctMatrix::zeros(4, 2).unwrap();
        assert!(matches!(build_b(&a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn block_sum_scan_zero_matrix() {
        let a = OctMatrix::zeros(4, 1).unwrap();
        let report = check_block_sum_diagonality(&a).unwrap();
        assert!(report.holds, "all sums are zero matrices");
        assert!(report.triples_checked > 0);
    }

    #[test]
    fn indicator_bound_cases() {
        // All-zero: rank 0 <= 2.
        let n = BlockMatrix::uniform(Gf2Matrix::zeros(6, 6), 3, 2).unwrap();
        let r = block_indicator_rank_bound(&n).unwrap();
        assert!(r.pass);
        assert_eq!(r.rank, 0);

        // Two blocks with the under-diagonal block all-ones: rank 1 <= 1.
        let mut m = Gf2Matrix::zeros(4, 4);
        for a in 2..4 {
            for b in 0..2 {
                m.set(a, b, true);
            }
        }
        let n = BlockMatrix::uniform(m, 2, 2).unwrap();
        let r = block_indicator_rank_bound(&n).unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.pass);

        // Pattern violation is an error.
        let mut m = Gf2Matrix::zeros(4, 4);
        m.set(0, 3, true);
        let n = BlockMatrix::uniform(m, 2, 2).unwrap();
        assert!(matches!(
            block_indicator_rank_bound(&n),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn indicator_bound_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
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
            assert!(r.pass, "rank {} above {}", r.rank, r.bound);
        }
    }

    #[test]
    fn tournament_examples() {
        // Strictly-upper-ones is a tournament of rank m−1.
        for m in 2..=8 {
            let y = strictly_upper_ones(m);
            let r = tournament_rank_check(&y).unwrap();
            assert!(r.is_tournament);
            assert_eq!(r.rank, m - 1);
            assert!(r.pass);
        }

        // The cyclic 3x3 tournament has full rank.
        let y = Gf2Matrix::from_str_rows(&["010", "001", "100"]).unwrap();
        let r = tournament_rank_check(&y).unwrap();
        assert!(r.is_tournament);
        assert_eq!(r.rank, 3);

        // m = 1 passes vacuously.
        let r = tournament_rank_check(&Gf2Matrix::zeros(1, 1)).unwrap();
        assert!(r.is_tournament);
        assert_eq!(r.bound, 0);
        assert!(r.pass);
    }

    #[test]
    fn tournament_sum_identity() {
        // Y + Yᵀ = I + J for every tournament, so the ranks agree.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = rng.gen_range(1..=20);
            let y = random_tournament(&mut rng, m);
            let sum = y.add(&y.transpose()).unwrap();
            let ij = Gf2Matrix::identity(m).add(&Gf2Matrix::ones(m, m)).unwrap();
            assert_eq!(sum, ij);
        }
    }

    #[test]
    fn certify_single_cyclic_block() {
        let y = Gf2Matrix::from_str_rows(&["010", "001", "100"]).unwrap();
        let d = BlockMatrix::uniform(y, 1, 3).unwrap();
        let r = diag_tournament_certify(&d, None).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.claimed_bound, 1);
        assert_eq!(r.rank, 3);
        assert!(r.pass);
    }

    #[test]
    fn certify_block_diagonal() {
        // Two strictly-upper-ones blocks, zero under-diagonal: rank 4 >= 2.
        let mut m = Gf2Matrix::zeros(6, 6);
        for blk in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    m.set(blk * 3 + a, blk * 3 + b, true);
                }
            }
        }
        // Fill the over-diagonal block with junk; it does not matter.
        m.set(0, 5, true);
        let d = BlockMatrix::uniform(m, 2, 3).unwrap();
        let r = diag_tournament_certify(&d, None).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.claimed_bound, 2);
        assert!(r.rank >= 2);
        assert!(r.pass);
    }

    #[test]
    fn certify_trivial_blocks() {
        // All m_i = 1: claimed bound 0, passes vacuously.
        let d = BlockMatrix::uniform(Gf2Matrix::zeros(3, 3), 3, 1).unwrap();
        let r = diag_tournament_certify(&d, None).unwrap();
        assert_eq!(r.claimed_bound, 0);
        assert!(r.pass);
    }

    #[test]
    fn certify_with_under_diagonal_units() {
        // Two blocks of size 2, diagonal under-diagonal block with units.
        let mut m = Gf2Matrix::zeros(4, 4);
        // Diagonal blocks: tournaments.
        m.set(0, 1, true);
        m.set(2, 3, true);
        // Under-diagonal block: the identity (diagonal with units).
        m.set(2, 0, true);
        m.set(3, 1, true);
        let d = BlockMatrix::uniform(m, 2, 2).unwrap();
        let r = diag_tournament_certify(&d, None).unwrap();
        assert!(!r.steps.is_empty());
        assert!(r.steps.iter().all(CertificateStep::ok));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn certify_rejects_ragged_without_witness() {
        let d = BlockMatrix::new(Gf2Matrix::zeros(3, 3), vec![1, 2]).unwrap();
        assert!(matches!(
            diag_tournament_certify(&d, None),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn certify_with_removal_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // Parent: 3 uniform blocks of size 4.
        let ell = 3;
        let m = 4;
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
        let kept = vec![vec![0, 2, 3], vec![1, 2], vec![0, 1, 2, 3]];
        let globals: Vec<usize> = kept
            .iter()
            .enumerate()
            .flat_map(|(i, ks)| ks.iter().map(move |&x| i * m + x))
            .collect();
        let sub = parent.matrix().block(&globals, &globals).unwrap();
        let d = BlockMatrix::new(sub, kept.iter().map(Vec::len).collect()).unwrap();
        let witness = RemovalWitness { parent, kept };
        let r = diag_tournament_certify(&d, Some(&witness)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.claimed_bound, ((2u64 + 1 + 3).div_ceil(2)) as usize);
    }

    #[test]
    fn chain_arithmetic_n4() {
        // (n−2)²/2 − (n−3) = 1 at n = 4, matching the final bound 1.
        let n = 4u64;
        let mid_twice = (n - 2).pow(2) - 2 * (n - 3);
        assert_eq!(mid_twice.div_ceil(2), 1);
        assert_eq!(((n - 3) * (n - 3)).div_ceil(2), 1);
    }

    #[test]
    fn chain_rejects_trivial_input() {
        let a = OctMatrix::zeros(4, 1).unwrap();
        assert!(matches!(certify_k1(&a), Err(Error::Precondition(_))));
    }
}
