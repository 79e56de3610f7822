//! The (n,k)-matrix model: symmetric GF(2) matrices indexed by
//! k-octahedra, the four defining property checks (symmetric,
//! independent, additive, non-trivial), coordinate blocks, the heredity
//! reduction to `(n, k−1)`, the one-coordinate-swap consequence, and the
//! rank-bound verdict.

use crate::complex::{
    sa_pairs, DecompositionTable, Face, Indexer, OctIndex, Octahedron, Vertex, VertexPair,
};
use crate::gf2::Gf2Matrix;
use crate::{Error, Result};

/// A square GF(2) matrix whose rows and columns run over all k-octahedra
/// of `[n]^{*k+1}` in canonical index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctMatrix {
    n: usize,
    k: usize,
    matrix: Gf2Matrix,
}

impl OctMatrix {
    pub fn new(n: usize, k: usize, matrix: Gf2Matrix) -> Result<Self> {
        let indexer = Indexer::new(n, k)?;
        let size = indexer.count();
        if matrix.rows() != size || matrix.cols() != size {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, but (n={n}, k={k}) indexes {size} octahedra",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(OctMatrix { n, k, matrix })
    }

    pub fn zeros(n: usize, k: usize) -> Result<Self> {
        let size = Indexer::new(n, k)?.count();
        Self::new(n, k, Gf2Matrix::zeros(size, size))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Gf2Matrix {
        self.matrix
    }

    pub fn indexer(&self) -> Indexer {
        Indexer::new(self.n, self.k).expect("validated at construction")
    }

    pub fn entry(&self, p: OctIndex, q: OctIndex) -> bool {
        self.matrix.get(p.0, q.0)
    }

    pub fn set_entry(&mut self, p: OctIndex, q: OctIndex, value: bool) {
        self.matrix.set(p.0, q.0, value);
    }

    /// Sets both `(p, q)` and `(q, p)`.
    pub fn set_symmetric(&mut self, p: OctIndex, q: OctIndex, value: bool) {
        self.matrix.set(p.0, q.0, value);
        self.matrix.set(q.0, p.0, value);
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Verdicts and witnesses for the four defining properties. A failed
/// property carries the lexicographically smallest violating
/// configuration; a passed property carries none.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub symmetric: bool,
    pub independent: bool,
    pub additive: bool,
    pub nontrivial: bool,
    /// The SA sum itself (non-triviality means this is 1).
    pub sa_value: bool,
    pub symmetry_witness: Option<(OctIndex, OctIndex)>,
    pub independence_witness: Option<(OctIndex, OctIndex)>,
    pub additivity_witness: Option<AdditivityWitness>,
}

/// A decomposition triple and column on which additivity fails:
/// `A[target, q] != A[x, q] + A[y, q]` although
/// `faces(x) ⊕ faces(y) = faces(target)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditivityWitness {
    pub target: OctIndex,
    pub x: OctIndex,
    pub y: OctIndex,
    pub q: OctIndex,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.symmetric && self.independent && self.additive && self.nontrivial
    }

    /// Name of the first failed property in the canonical order, if any.
    pub fn first_failed(&self) -> Option<&'static str> {
        if !self.symmetric {
            Some("symmetric")
        } else if !self.independent {
            Some("independent")
        } else if !self.additive {
            Some("additive")
        } else if !self.nontrivial {
            Some("nontrivial")
        } else {
            None
        }
    }
}

/// Reusable context for checking many matrices at the same `(n, k)`:
/// the canonical indexer, the vertex-disjoint index pairs, the exhaustive
/// XOR-decomposition table, and the SA index pairs.
#[derive(Debug, Clone)]
pub struct PropertyChecker {
    indexer: Indexer,
    /// Ordered disjoint index pairs `(i, j)`, row-major.
    disjoint_ordered: Vec<(usize, usize)>,
    decompositions: DecompositionTable,
    sa_index_pairs: Vec<(OctIndex, OctIndex)>,
}

impl PropertyChecker {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "the SA sum needs three labels, got n={n}"
            )));
        }
        let indexer = Indexer::new(n, k)?;
        let octs: Vec<Octahedron> = indexer.iter().collect();
        let mut disjoint_ordered = Vec::new();
        for (i, p) in octs.iter().enumerate() {
            for (j, q) in octs.iter().enumerate() {
                if i != j && p.disjoint(q) {
                    disjoint_ordered.push((i, j));
                }
            }
        }
        let decompositions = DecompositionTable::build(&indexer);
        let sa_index_pairs = sa_pairs(k)
            .iter()
            .map(|(p, q)| Ok((indexer.index(p)?, indexer.index(q)?)))
            .collect::<Result<_>>()?;
        Ok(PropertyChecker {
            indexer,
            disjoint_ordered,
            decompositions,
            sa_index_pairs,
        })
    }

    pub fn indexer(&self) -> &Indexer {
        &self.indexer
    }

    pub fn decompositions(&self) -> &DecompositionTable {
        &self.decompositions
    }

    /// Ordered vertex-disjoint octahedron index pairs, row-major.
    pub fn disjoint_ordered_pairs(&self) -> &[(usize, usize)] {
        &self.disjoint_ordered
    }

    /// The SA sum of `a`.
    pub fn sa(&self, a: &OctMatrix) -> bool {
        self.sa_index_pairs
            .iter()
            .fold(false, |acc, &(p, q)| acc ^ a.entry(p, q))
    }

    /// Runs all four property scans.
    pub fn check(&self, a: &OctMatrix) -> Result<PropertyReport> {
        if a.n != self.indexer.n() || a.k != self.indexer.k() {
            return Err(Error::DimensionMismatch(format!(
                "checker built for (n={}, k={}), matrix is (n={}, k={})",
                self.indexer.n(),
                self.indexer.k(),
                a.n,
                a.k
            )));
        }

        let mut symmetry_witness = None;
        'sym: for i in 0..a.size() {
            for j in i + 1..a.size() {
                if a.matrix.get(i, j) != a.matrix.get(j, i) {
                    symmetry_witness = Some((OctIndex(i), OctIndex(j)));
                    break 'sym;
                }
            }
        }

        let mut independence_witness = None;
        for &(i, j) in &self.disjoint_ordered {
            if a.matrix.get(i, j) {
                independence_witness = Some((OctIndex(i), OctIndex(j)));
                break;
            }
        }

        let mut additivity_witness = None;
        'add: for t in 0..a.size() {
            for &(x, y) in &self.decompositions.by_target[t] {
                for q in 0..a.size() {
                    let lhs = a.matrix.get(t, q);
                    let rhs = a.entry(x, OctIndex(q)) ^ a.entry(y, OctIndex(q));
                    if lhs != rhs {
                        additivity_witness = Some(AdditivityWitness {
                            target: OctIndex(t),
                            x,
                            y,
                            q: OctIndex(q),
                        });
                        break 'add;
                    }
                }
            }
        }

        let sa_value = self.sa(a);
        Ok(PropertyReport {
            symmetric: symmetry_witness.is_none(),
            independent: independence_witness.is_none(),
            additive: additivity_witness.is_none(),
            nontrivial: sa_value,
            sa_value,
            symmetry_witness,
            independence_witness,
            additivity_witness,
        })
    }
}

/// One-shot form of [`PropertyChecker::check`].
pub fn check_properties(a: &OctMatrix) -> Result<PropertyReport> {
    PropertyChecker::new(a.n, a.k)?.check(a)
}

/// The SA sum of `a`: the XOR of entries over the canonical pair set.
pub fn compute_sa(a: &OctMatrix) -> Result<bool> {
    if a.n < 3 {
        return Err(Error::InvalidArgument(format!(
            "the SA sum needs three labels, got n={}",
            a.n
        )));
    }
    let indexer = a.indexer();
    let mut sa = false;
    for (p, q) in sa_pairs(a.k) {
        sa ^= a.entry(indexer.index(&p)?, indexer.index(&q)?);
    }
    Ok(sa)
}

/// Outcome of the strong non-triviality scan.
#[derive(Debug, Clone)]
pub struct StrongNontrivialityReport {
    pub holds_everywhere: bool,
    /// Lines of the first failing subcomplex (one sorted label triple per
    /// line) and the face at which the localized sum is 0.
    pub first_failure: Option<(Vec<[Vertex; 3]>, Face)>,
    /// Number of (subcomplex, face) configurations checked.
    pub checked: usize,
}

/// For every subcomplex determined by a choice of three labels per line
/// and every k-face `α` of it, checks that the sum of `A[P, Q]` over
/// unordered octahedron pairs of the subcomplex meeting exactly at `α`
/// equals 1. Requires `a` to be symmetric, independent and additive.
pub fn check_strong_nontriviality(a: &OctMatrix) -> Result<StrongNontrivialityReport> {
    let checker = PropertyChecker::new(a.n, a.k)?;
    let report = checker.check(a)?;
    if !report.symmetric {
        return Err(Error::Precondition(
            "strong non-triviality needs a symmetric matrix; the symmetric check failed".into(),
        ));
    }
    if !report.independent {
        return Err(Error::Precondition(
            "strong non-triviality needs an independent matrix; the independent check failed"
                .into(),
        ));
    }
    if !report.additive {
        return Err(Error::Precondition(
            "strong non-triviality needs an additive matrix; the additive check failed".into(),
        ));
    }

    let indexer = checker.indexer();
    let triples = label_triples(a.n);
    let lines = a.k + 1;
    let mut line_choice = vec![0usize; lines];
    let mut checked = 0usize;
    let mut first_failure = None;

    'outer: loop {
        let complex_lines: Vec<[Vertex; 3]> = line_choice.iter().map(|&c| triples[c]).collect();
        let mut face_choice = vec![0usize; lines];
        loop {
            let alpha: Vec<Vertex> = face_choice
                .iter()
                .zip(&complex_lines)
                .map(|(&f, t)| t[f])
                .collect();
            let mut sum = false;
            // Per line the two octahedra split the spare labels; fixing
            // line 0 enumerates each unordered pair exactly once.
            for mask in 0..1usize << a.k {
                let mut p = Vec::with_capacity(lines);
                let mut q = Vec::with_capacity(lines);
                for (i, t) in complex_lines.iter().enumerate() {
                    let spare: Vec<Vertex> = t.iter().copied().filter(|&v| v != alpha[i]).collect();
                    let flip = i > 0 && mask >> (i - 1) & 1 == 1;
                    let (to_p, to_q) = if flip {
                        (spare[1], spare[0])
                    } else {
                        (spare[0], spare[1])
                    };
                    p.push(VertexPair::new(alpha[i], to_p)?);
                    q.push(VertexPair::new(alpha[i], to_q)?);
                }
                let p = indexer.index(&Octahedron::new(p)?)?;
                let q = indexer.index(&Octahedron::new(q)?)?;
                sum ^= a.entry(p, q);
            }
            checked += 1;
            if !sum {
                first_failure = Some((complex_lines.clone(), Face::full(alpha)?));
                break 'outer;
            }

            if !advance(&mut face_choice, 3) {
                break;
            }
        }
        if !advance(&mut line_choice, triples.len()) {
            break;
        }
    }

    Ok(StrongNontrivialityReport {
        holds_everywhere: first_failure.is_none(),
        first_failure,
        checked,
    })
}

fn label_triples(n: usize) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for a in 1..=n as Vertex {
        for b in a + 1..=n as Vertex {
            for c in b + 1..=n as Vertex {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Advances a mixed-radix counter; returns false on wrap-around.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// The coordinate block `A_{U,V}`: entry `(P, Q)` is `A[U*P, V*Q]` over
/// (k−1)-octahedra `P, Q` in canonical order. Needs `k >= 1`.
pub fn coordinate_block(a: &OctMatrix, u: VertexPair, v: VertexPair) -> Result<Gf2Matrix> {
    if a.k == 0 {
        return Err(Error::InvalidArgument(
            "coordinate blocks need k >= 1".into(),
        ));
    }
    let indexer = a.indexer();
    let pu = indexer.pair_index(&u)?;
    let pv = indexer.pair_index(&v)?;
    let sub = indexer.count() / indexer.pair_count();
    // The first coordinate is most significant, so the block is contiguous.
    let rows: Vec<usize> = (pu * sub..(pu + 1) * sub).collect();
    let cols: Vec<usize> = (pv * sub..(pv + 1) * sub).collect();
    a.matrix.block(&rows, &cols)
}

/// The heredity reduction `A ↦ A_{2̄,3̄} + A_{3̄,2̄}`, mapping an
/// (n,k)-matrix to an (n,k−1)-matrix. Needs `n >= 4`, `k >= 1`.
pub fn heredity_reduce(a: &OctMatrix) -> Result<OctMatrix> {
    if a.n < 4 || a.k < 1 {
        return Err(Error::InvalidArgument(format!(
            "heredity reduction needs n >= 4 and k >= 1, got (n={}, k={})",
            a.n, a.k
        )));
    }
    let two = VertexPair::new(1, 2)?;
    let three = VertexPair::new(1, 3)?;
    let z = coordinate_block(a, two, three)?.add(&coordinate_block(a, three, two)?)?;
    OctMatrix::new(a.n, a.k - 1, z)
}

/// A configuration on which the one-coordinate-swap identity fails:
/// `A[p, q] != A[p_swapped, q]` although `p` and `q` share exactly one
/// vertex (on line `line`) and `p_swapped` differs from `p` only there,
/// keeping the common vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapWitness {
    pub p: OctIndex,
    pub q: OctIndex,
    pub p_swapped: OctIndex,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct SwapReport {
    pub holds: bool,
    pub witness: Option<SwapWitness>,
    /// Number of `(P, Q, P')` configurations scanned.
    pub checked: usize,
}

/// Scans every configuration of the one-coordinate-swap identity. On an
/// independent and additive matrix this always holds; a witness on such
/// input signals a checker or input bug.
pub fn check_one_coordinate_swap(a: &OctMatrix) -> Result<SwapReport> {
    let indexer = a.indexer();
    let octs: Vec<Octahedron> = indexer.iter().collect();
    let mut checked = 0usize;
    let mut witness = None;

    'outer: for (pi, p) in octs.iter().enumerate() {
        for (qi, q) in octs.iter().enumerate() {
            // Exactly one line with one common vertex, all others disjoint.
            let mut common_line = None;
            let mut ok = true;
            for (line, (pp, qq)) in p.parts().iter().zip(q.parts()).enumerate() {
                match pp.intersection(qq).len() {
                    0 => {}
                    1 if common_line.is_none() => common_line = Some(line),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            let Some(line) = common_line else { continue };
            if !ok {
                continue;
            }
            let shared = p.parts()[line].intersection(&q.parts()[line])[0];
            let other_q = if q.parts()[line].lo() == shared {
                q.parts()[line].hi()
            } else {
                q.parts()[line].lo()
            };
            for w in 1..=a.n as Vertex {
                if w == shared || w == other_q {
                    continue;
                }
                let mut parts = p.parts().to_vec();
                parts[line] = VertexPair::new(shared, w)?;
                let swapped = Octahedron::new(parts)?;
                let si = indexer.index(&swapped)?;
                checked += 1;
                if a.matrix.get(pi, qi) != a.entry(si, OctIndex(qi)) {
                    witness = Some(SwapWitness {
                        p: OctIndex(pi),
                        q: OctIndex(qi),
                        p_swapped: si,
                        line,
                    });
                    break 'outer;
                }
            }
        }
    }

    Ok(SwapReport {
        holds: witness.is_none(),
        witness,
        checked,
    })
}

/// One level of the iterated heredity chain, with the numerically
/// verified inequalities at that level.
#[derive(Debug, Clone)]
pub struct HeredityStep {
    /// Dimension parameter before this reduction.
    pub level_k: usize,
    pub rank_current: usize,
    pub rank_block_23: usize,
    pub rank_block_32: usize,
    pub rank_z: usize,
    /// `rk A >= rk A_{U,V}` for both blocks.
    pub submatrix_ok: bool,
    /// `2·rk A >= rk A_{2̄,3̄} + rk A_{3̄,2̄}`.
    pub halving_ok: bool,
    /// `rk A_{2̄,3̄} + rk A_{3̄,2̄} >= rk Z`.
    pub subadditivity_ok: bool,
}

#[derive(Debug, Clone)]
pub struct RankBoundReport {
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    /// Integer bound `⌈(n−3)²/2^k⌉`; rank is an integer, so this is the
    /// effective form of the real bound.
    pub bound: usize,
    /// The real bound as an exact fraction `(n−3)² / 2^k`.
    pub bound_numer: u64,
    pub bound_denom: u64,
    pub pass: bool,
    pub chain: Vec<HeredityStep>,
    pub chain_ok: bool,
}

/// Checks `rk A >= ⌈(n−3)²/2^k⌉` on a matrix passing all four property
/// checks, and logs the iterated heredity chain with each step's
/// inequalities verified numerically. Needs `n >= 4`, `k >= 1`.
pub fn verify_rank_bound(a: &OctMatrix) -> Result<RankBoundReport> {
    if a.n < 4 {
        return Err(Error::InvalidArgument(format!(
            "rank bound needs n >= 4, got n={}",
            a.n
        )));
    }
    if a.k < 1 {
        return Err(Error::InvalidArgument(
            "the rank bound concerns k >= 1".into(),
        ));
    }
    let report = check_properties(a)?;
    if let Some(failed) = report.first_failed() {
        return Err(Error::Precondition(format!(
            "rank bound needs an (n,k)-matrix; the {failed} check failed"
        )));
    }

    let rank = a.rank();
    let bound_numer = ((a.n - 3) * (a.n - 3)) as u64;
    let bound_denom = 1u64 << a.k;
    let bound = bound_numer.div_ceil(bound_denom) as usize;

    let mut chain = Vec::new();
    let mut current = a.clone();
    while current.k() >= 1 {
        let rank_current = current.rank();
        let two = VertexPair::new(1, 2)?;
        let three = VertexPair::new(1, 3)?;
        let b23 = coordinate_block(&current, two, three)?;
        let b32 = coordinate_block(&current, three, two)?;
        let z = b23.add(&b32)?;
        let rank_block_23 = b23.rank();
        let rank_block_32 = b32.rank();
        let rank_z = z.rank();
        chain.push(HeredityStep {
            level_k: current.k(),
            rank_current,
            rank_block_23,
            rank_block_32,
            rank_z,
            submatrix_ok: rank_current >= rank_block_23 && rank_current >= rank_block_32,
            halving_ok: 2 * rank_current >= rank_block_23 + rank_block_32,
            subadditivity_ok: rank_block_23 + rank_block_32 >= rank_z,
        });
        current = OctMatrix::new(a.n, current.k() - 1, z)?;
    }
    let chain_ok = chain
        .iter()
        .all(|s| s.submatrix_ok && s.halving_ok && s.subadditivity_ok);

    Ok(RankBoundReport {
        n: a.n,
        k: a.k,
        rank,
        bound,
        bound_numer,
        bound_denom,
        pass: rank >= bound,
        chain,
        chain_ok,
    })
}
