//! The moment-curve general-position map, the alternation intersection
//! criterion, an independent exact-rational geometric intersection
//! oracle, and the van Kampen number of `[3]^{*k+1}` in 2k-space.
//!
//! All geometry is exact: vertex coordinates are arbitrary-precision
//! rationals, so intersection parity is bit-exact. Coordinate lines are
//! 0-based here, `i ∈ {0, …, k}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::{Face, Vertex};
use crate::{Error, Result};

/// Exact vertex coordinates in 2k-space for the vertices `(line, label)`
/// of `[3]^{*k+1}`, `line ∈ {0, …, k}`, `label ∈ [3]`.
#[derive(Debug, Clone)]
pub struct GeneralPositionMap {
    k: usize,
    /// `coords[line][label-1]` is a point with `2k` rational coordinates.
    coords: Vec<Vec<Vec<BigRational>>>,
}

impl GeneralPositionMap {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient dimension, `2k`.
    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn point(&self, line: usize, label: Vertex) -> Result<&[BigRational]> {
        self.coords
            .get(line)
            .and_then(|l| l.get(label as usize - 1))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::IndexOutOfRange(format!("vertex (line {line}, label {label})")))
    }

    /// All image points, line-major.
    pub fn points(&self) -> Vec<&[BigRational]> {
        self.coords
            .iter()
            .flat_map(|l| l.iter().map(Vec::as_slice))
            .collect()
    }
}

/// Places vertex `(i, a)` at `(t, t², …, t^{2k})` with `t = a + 3i`.
/// Any at most `2k+1` points of that curve are affinely independent, so
/// the map is in general position. Rejected for `k = 0` (the ambient
/// dimension would be 0).
pub fn moment_map(k: usize) -> Result<GeneralPositionMap> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the moment map needs k >= 1; ambient dimension 0 is degenerate".into(),
        ));
    }
    let mut coords = Vec::with_capacity(k + 1);
    for line in 0..=k {
        let mut per_line = Vec::with_capacity(3);
        for label in 1..=3u64 {
            let t = BigInt::from(label + 3 * line as u64);
            let mut point = Vec::with_capacity(2 * k);
            let mut power = BigInt::one();
            for _ in 0..2 * k {
                power *= &t;
                point.push(BigRational::from_integer(power.clone()));
            }
            per_line.push(point);
        }
        coords.push(per_line);
    }
    Ok(GeneralPositionMap { k, coords })
}

/// True when the points are affinely independent (their differences from
/// the first point are linearly independent), decided exactly.
pub fn affinely_independent(points: &[&[BigRational]]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let dim = points[0].len();
    let mut rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| {
            (0..dim)
                .map(|d| p[d].clone() - points[0][d].clone())
                .collect()
        })
        .collect();
    rational_rank(&mut rows) == points.len() - 1
}

fn rational_rank(rows: &mut [Vec<BigRational>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..nrows {
            if !rows[r][col].is_zero() {
                let factor = rows[r][col].clone() / rows[rank][col].clone();
                for c in col..ncols {
                    let sub = factor.clone() * rows[rank][c].clone();
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn require_disjoint_full_faces(sigma: &Face, tau: &Face) -> Result<()> {
    if !sigma.is_full() || !tau.is_full() {
        return Err(Error::InvalidArgument(format!(
            "need two k-faces, got {sigma:?} and {tau:?}"
        )));
    }
    if sigma.len() != tau.len() {
        return Err(Error::DimensionMismatch(format!(
            "faces on {} vs {} lines",
            sigma.len(),
            tau.len()
        )));
    }
    if !sigma.vertex_disjoint(tau) {
        return Err(Error::NotDisjoint(format!("{sigma:?} and {tau:?}")));
    }
    Ok(())
}

/// The alternation criterion: under the moment map, the images of two
/// vertex-disjoint k-faces intersect exactly when one face strictly
/// dominates the other coordinatewise.
pub fn alternation_intersects(sigma: &Face, tau: &Face) -> Result<bool> {
    require_disjoint_full_faces(sigma, tau)?;
    let s = sigma.coords();
    let t = tau.coords();
    let sigma_below = s.iter().zip(t).all(|(a, b)| a.unwrap() < b.unwrap());
    let tau_below = s.iter().zip(t).all(|(a, b)| a.unwrap() > b.unwrap());
    Ok(sigma_below || tau_below)
}

/// How two mapped closed simplices meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intersection {
    /// A single common point, interior to both simplices.
    Interior,
    /// No common point.
    Disjoint,
    /// A common point with some zero barycentric coordinate. General
    /// position should rule this out for the moment map; callers treat it
    /// as non-intersection but it is reported distinctly.
    Boundary,
}

/// Brute-force geometric oracle: solves the exact rational affine system
/// for a common point of the two closed k-simplices in 2k-space. The two
/// faces must be vertex-disjoint; a singular system with more than one
/// solution is reported as degenerate input.
pub fn geometric_intersection(
    map: &GeneralPositionMap,
    sigma: &Face,
    tau: &Face,
) -> Result<Intersection> {
    require_disjoint_full_faces(sigma, tau)?;
    if sigma.len() != map.k + 1 {
        return Err(Error::DimensionMismatch(format!(
            "faces on {} lines, map on {}",
            sigma.len(),
            map.k + 1
        )));
    }

    let k = map.k;
    let dim = 2 * k;
    let vars = 2 * (k + 1);

    // Unknowns: k+1 barycentric weights for sigma, then k+1 for tau.
    // Equations: Σ λ_j·P_j − Σ μ_j·Q_j = 0 (one per ambient coordinate),
    // Σ λ_j = 1, Σ μ_j = 1.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 2);
    for d in 0..dim {
        let mut row = Vec::with_capacity(vars + 1);
        for j in 0..=k {
            let p = map.point(j, sigma.coords()[j].unwrap())?;
            row.push(p[d].clone());
        }
        for j in 0..=k {
            let q = map.point(j, tau.coords()[j].unwrap())?;
            row.push(-q[d].clone());
        }
        row.push(BigRational::zero());
        rows.push(row);
    }
    let mut sum_sigma = vec![BigRational::zero(); vars + 1];
    let mut sum_tau = vec![BigRational::zero(); vars + 1];
    for j in 0..=k {
        sum_sigma[j] = BigRational::one();
        sum_tau[k + 1 + j] = BigRational::one();
    }
    sum_sigma[vars] = BigRational::one();
    sum_tau[vars] = BigRational::one();
    rows.push(sum_sigma);
    rows.push(sum_tau);

    match solve_exact(rows, vars)? {
        None => Ok(Intersection::Disjoint),
        Some(solution) => {
            if solution.iter().any(|x| x.is_negative()) {
                Ok(Intersection::Disjoint)
            } else if solution.iter().any(|x| x.is_zero()) {
                Ok(Intersection::Boundary)
            } else {
                Ok(Intersection::Interior)
            }
        }
    }
}

/// Boolean form of [`geometric_intersection`]: true only for a proper
/// interior intersection point.
pub fn geometric_intersects(map: &GeneralPositionMap, sigma: &Face, tau: &Face) -> Result<bool> {
    Ok(geometric_intersection(map, sigma, tau)? == Intersection::Interior)
}

/// Gaussian elimination over the rationals on an augmented system.
/// Returns the unique solution, `None` when inconsistent, and an error
/// when the system is consistent but underdetermined.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, vars: usize) -> Result<Option<Vec<BigRational>>> {
    let nrows = rows.len();
    let mut pivot_row_of_col = vec![None; vars];
    let mut rank = 0;
    for col in 0..vars {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for c in col..=vars {
            rows[rank][c] = rows[rank][c].clone() / inv.clone();
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=vars {
                    let sub = factor.clone() * rows[rank][c].clone();
                    rows[r][c] -= sub;
                }
            }
        }
        pivot_row_of_col[col] = Some(rank);
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    // Any zero row with non-zero right-hand side is a contradiction.
    for row in rows.iter().skip(rank) {
        if !row[vars].is_zero() {
            return Ok(None);
        }
    }
    if rank < vars {
        return Err(Error::Degenerate(
            "intersection system is consistent but underdetermined; \
             the map is not in general position"
                .into(),
        ));
    }

    let mut solution = vec![BigRational::zero(); vars];
    for (col, row) in pivot_row_of_col.iter().enumerate() {
        if let Some(r) = row {
            solution[col] = rows[*r][vars].clone();
        }
    }
    Ok(Some(solution))
}

/// Count report for the van Kampen number.
#[derive(Debug, Clone)]
pub struct VanKampenReport {
    /// Unordered vertex-disjoint k-face pairs meeting the alternation
    /// criterion. Equals `3^{k+1}`.
    pub intersecting_pairs: u64,
    /// Unordered vertex-disjoint pairs examined, `6^{k+1}/2`.
    pub disjoint_pairs: u64,
    /// Parity of `intersecting_pairs`; always 1 here.
    pub parity: bool,
}

/// Counts the unordered vertex-disjoint k-face pairs of `[3]^{*k+1}`
/// whose moment-map images intersect, via the alternation criterion.
pub fn van_kampen_number(k: usize) -> Result<VanKampenReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the van Kampen count needs k >= 1".into(),
        ));
    }
    let pairs = crate::complex::disjoint_face_pairs(k);
    let mut intersecting = 0u64;
    for (a, b) in &pairs {
        if alternation_intersects(a, b)? {
            intersecting += 1;
        }
    }
    Ok(VanKampenReport {
        intersecting_pairs: intersecting,
        disjoint_pairs: pairs.len() as u64,
        parity: intersecting % 2 == 1,
    })
}
