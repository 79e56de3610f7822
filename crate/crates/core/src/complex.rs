//! Combinatorics of the join power `[n]^{*k+1}`: k-faces, k-octahedra,
//! the canonical row/column indexing, vertex-disjointness, the pair sets
//! behind the SA sum, XOR decompositions of octahedra, and elementary
//! coboundaries.
//!
//! Vertex labels are 1-based, matching the usual `[n] = {1, …, n}`
//! convention. Coordinate positions run over the `k+1` lines of the join
//! power.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{Error, Result};

/// 1-based vertex label in `[n]`.
pub type Vertex = u16;

/// A 2-element subset of `[n]`, stored with the smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    lo: Vertex,
    hi: Vertex,
}

impl VertexPair {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "a vertex pair needs two distinct labels, got {{{a},{b}}}"
            )));
        }
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument("vertex labels are 1-based".into()));
        }
        Ok(if a < b {
            VertexPair { lo: a, hi: b }
        } else {
            VertexPair { lo: b, hi: a }
        })
    }

    pub fn lo(&self) -> Vertex {
        self.lo
    }

    pub fn hi(&self) -> Vertex {
        self.hi
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn disjoint(&self, other: &VertexPair) -> bool {
        !self.contains(other.lo) && !self.contains(other.hi)
    }

    /// The common labels of two pairs, in increasing order.
    pub fn intersection(&self, other: &VertexPair) -> Vec<Vertex> {
        [self.lo, self.hi]
            .into_iter()
            .filter(|&v| other.contains(v))
            .collect()
    }

    /// Symmetric difference, as a pair when it has exactly two elements.
    pub fn xor(&self, other: &VertexPair) -> Option<VertexPair> {
        let mut diff: Vec<Vertex> = [self.lo, self.hi]
            .into_iter()
            .filter(|&v| !other.contains(v))
            .chain(
                [other.lo, other.hi]
                    .into_iter()
                    .filter(|&v| !self.contains(v)),
            )
            .collect();
        diff.sort_unstable();
        match diff.as_slice() {
            [a, b] => Some(VertexPair { lo: *a, hi: *b }),
            _ => None,
        }
    }
}

impl fmt::Debug for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// A k-octahedron: a `(k+1)`-tuple of vertex pairs, one per line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Octahedron {
    parts: Vec<VertexPair>,
}

impl Octahedron {
    pub fn new(parts: Vec<VertexPair>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "an octahedron needs at least one coordinate".into(),
            ));
        }
        Ok(Octahedron { parts })
    }

    /// Builds from `(a, b)` label pairs; test-friendly.
    pub fn from_labels(parts: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .map(|&(a, b)| VertexPair::new(a, b))
                .collect::<Result<_>>()?,
        )
    }

    pub fn parts(&self) -> &[VertexPair] {
        &self.parts
    }

    /// Dimension `k`; the tuple has `k+1` coordinates.
    pub fn k(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn max_label(&self) -> Vertex {
        self.parts.iter().map(|p| p.hi()).max().unwrap_or(0)
    }

    /// True when the two octahedra share no vertex on any line.
    pub fn disjoint(&self, other: &Octahedron) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(p, q)| p.disjoint(q))
    }

    /// True when the intersection is exactly the given face, i.e.
    /// `P_i ∩ Q_i = {face_i}` on every line.
    pub fn meets_exactly_at(&self, other: &Octahedron, face: &Face) -> bool {
        if self.parts.len() != other.parts.len() || face.len() != self.parts.len() {
            return false;
        }
        self.parts
            .iter()
            .zip(&other.parts)
            .zip(face.coords())
            .all(|((p, q), c)| match c {
                Some(v) => p.intersection(q) == [*v],
                None => false,
            })
    }
}

impl fmt::Debug for Octahedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{p:?}")?;
            first = false;
        }
        Ok(())
    }
}

/// A face of the join power: one vertex label per line, with at most one
/// empty coordinate. A full tuple is a k-face; a tuple with exactly one
/// empty coordinate is a (k−1)-face.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    coords: Vec<Option<Vertex>>,
}

impl Face {
    /// A k-face with every coordinate present.
    pub fn full(coords: Vec<Vertex>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a face needs coordinates".into()));
        }
        if coords.contains(&0) {
            return Err(Error::InvalidArgument("vertex labels are 1-based".into()));
        }
        Ok(Face {
            coords: coords.into_iter().map(Some).collect(),
        })
    }

    /// A (k−1)-face: the coordinate at `gap` is empty.
    pub fn with_gap(coords: Vec<Vertex>, gap: usize) -> Result<Self> {
        if gap > coords.len() {
            return Err(Error::IndexOutOfRange(format!(
                "gap position {gap} in a face with {} lines",
                coords.len() + 1
            )));
        }
        let mut out: Vec<Option<Vertex>> = coords.into_iter().map(Some).collect();
        out.insert(gap, None);
        Ok(Face { coords: out })
    }

    pub fn coords(&self) -> &[Option<Vertex>] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// True when no coordinate is empty.
    pub fn is_full(&self) -> bool {
        self.coords.iter().all(Option::is_some)
    }

    /// Position of the unique empty coordinate, if there is exactly one.
    pub fn gap(&self) -> Option<usize> {
        let gaps: Vec<usize> = self
            .coords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.is_none().then_some(i))
            .collect();
        match gaps.as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// Vertex-disjointness: no line carries the same label in both faces.
    /// Works for any mix of k-faces and (k−1)-faces on the same lines.
    pub fn vertex_disjoint(&self, other: &Face) -> bool {
        self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| match (a, b) {
                    (Some(x), Some(y)) => x != y,
                    _ => true,
                })
    }

    /// True when `self` is contained in `other` as a subface: every
    /// present coordinate of `self` equals the one of `other`.
    pub fn subface_of(&self, other: &Face) -> bool {
        self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| match (a, b) {
                    (Some(x), Some(y)) => x == y,
                    (None, _) => true,
                    (Some(_), None) => false,
                })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for c in &self.coords {
            if !first {
                write!(f, ",")?;
            }
            match c {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "_")?,
            }
            first = false;
        }
        write!(f, ")")
    }
}

/// Canonical position of an octahedron in the row/column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OctIndex(pub usize);

/// The canonical indexing of k-octahedra at a given `(n, k)`.
///
/// Vertex pairs `{a,b}`, `a < b`, are ordered lexicographically by
/// `(a, b)`; an octahedron's index is big-endian mixed-radix over its
/// `k+1` pair indices, first coordinate most significant. The indexing is
/// a bijection onto `[0, C(n,2)^{k+1})` and is what ties matrices to
/// files.
#[derive(Debug, Clone)]
pub struct Indexer {
    n: usize,
    k: usize,
    pairs: Vec<VertexPair>,
    count: usize,
}

impl Indexer {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "need n >= 2 to form vertex pairs, got n={n}"
            )));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("n={n} too large")));
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for a in 1..=n as Vertex {
            for b in a + 1..=n as Vertex {
                pairs.push(VertexPair { lo: a, hi: b });
            }
        }
        let count = pairs
            .len()
            .checked_pow(k as u32 + 1)
            .ok_or_else(|| Error::InvalidArgument(format!("C({n},2)^{} overflows", k + 1)))?;
        Ok(Indexer { n, k, pairs, count })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertex pairs, `C(n,2)`.
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Number of octahedra, `C(n,2)^{k+1}`.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn pair_index(&self, p: &VertexPair) -> Result<usize> {
        let n = self.n;
        let (a, b) = (p.lo as usize, p.hi as usize);
        if b > n {
            return Err(Error::IndexOutOfRange(format!(
                "pair {p:?} has a label above n={n}"
            )));
        }
        Ok((a - 1) * n - (a - 1) * a / 2 + (b - a - 1))
    }

    pub fn pair_at(&self, idx: usize) -> Result<VertexPair> {
        self.pairs
            .get(idx)
            .copied()
            .ok_or_else(|| Error::IndexOutOfRange(format!("pair index {idx}")))
    }

    pub fn index(&self, oct: &Octahedron) -> Result<OctIndex> {
        if oct.parts.len() != self.k + 1 {
            return Err(Error::DimensionMismatch(format!(
                "octahedron has {} coordinates, indexing expects {}",
                oct.parts.len(),
                self.k + 1
            )));
        }
        let mut idx = 0usize;
        for p in &oct.parts {
            idx = idx * self.pairs.len() + self.pair_index(p)?;
        }
        Ok(OctIndex(idx))
    }

    pub fn octahedron(&self, idx: OctIndex) -> Result<Octahedron> {
        if idx.0 >= self.count {
            return Err(Error::IndexOutOfRange(format!(
                "octahedron index {} of {}",
                idx.0, self.count
            )));
        }
        let base = self.pairs.len();
        let mut parts = vec![self.pairs[0]; self.k + 1];
        let mut rest = idx.0;
        for i in (0..=self.k).rev() {
            parts[i] = self.pairs[rest % base];
            rest /= base;
        }
        Ok(Octahedron { parts })
    }

    /// All octahedra in canonical index order.
    pub fn iter(&self) -> impl Iterator<Item = Octahedron> + '_ {
        (0..self.count).map(move |i| self.octahedron(OctIndex(i)).expect("index in range"))
    }
}

/// All k-octahedra of `[n]^{*k+1}` in canonical index order.
pub fn enumerate_octahedra(n: usize, k: usize) -> Result<Vec<Octahedron>> {
    let indexer = Indexer::new(n, k)?;
    Ok(indexer.iter().collect())
}

/// The `2^{k+1}` k-faces of an octahedron: the Cartesian products of its
/// parts, in binary-counter order (low bit = last line).
pub fn faces_of(oct: &Octahedron) -> Vec<Face> {
    let lines = oct.parts.len();
    let mut out = Vec::with_capacity(1 << lines);
    for mask in 0..1usize << lines {
        let coords = oct
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if mask >> (lines - 1 - i) & 1 == 0 {
                    Some(p.lo)
                } else {
                    Some(p.hi)
                }
            })
            .collect();
        out.push(Face { coords });
    }
    out
}

fn all_ones_face(k: usize) -> Face {
    Face {
        coords: vec![Some(1); k + 1],
    }
}

/// Unordered pairs `{P, Q}` of k-octahedra of `[3]^{*k+1}` whose
/// intersection is exactly the all-ones face; these index the SA sum.
/// There are `2^l` of them.
pub fn sa_pairs(l: usize) -> Vec<(Octahedron, Octahedron)> {
    let two = VertexPair { lo: 1, hi: 2 };
    let three = VertexPair { lo: 1, hi: 3 };
    let mut set = BTreeSet::new();
    for mask in 0..1usize << (l + 1) {
        let mut p = Vec::with_capacity(l + 1);
        let mut q = Vec::with_capacity(l + 1);
        for i in 0..=l {
            if mask >> i & 1 == 0 {
                p.push(two);
                q.push(three);
            } else {
                p.push(three);
                q.push(two);
            }
        }
        let (p, q) = (Octahedron { parts: p }, Octahedron { parts: q });
        set.insert(if p <= q { (p, q) } else { (q, p) });
    }
    set.into_iter().collect()
}

fn all_faces(k: usize) -> Vec<Face> {
    let mut out = Vec::with_capacity(3usize.pow(k as u32 + 1));
    let mut coords = vec![1 as Vertex; k + 1];
    loop {
        out.push(Face {
            coords: coords.iter().map(|&c| Some(c)).collect(),
        });
        let mut i = k + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if coords[i] < 3 {
                coords[i] += 1;
                break;
            }
            coords[i] = 1;
        }
    }
}

/// All unordered pairs of vertex-disjoint k-faces of `[3]^{*k+1}`.
pub fn disjoint_face_pairs(k: usize) -> Vec<(Face, Face)> {
    let faces = all_faces(k);
    let mut out = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for b in &faces[i + 1..] {
            if a.vertex_disjoint(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Unordered pairs `{α, β}` with `α ∈ P`, `β ∈ Q` or vice versa, for
/// octahedra meeting exactly at the all-ones face (`α = β` is possible).
pub fn product_pairs(p: &Octahedron, q: &Octahedron) -> Result<Vec<(Face, Face)>> {
    let k = p.k();
    if !p.meets_exactly_at(q, &all_ones_face(k)) {
        return Err(Error::Precondition(format!(
            "product_pairs needs P ∩ Q = the all-ones face, got {p:?} and {q:?}"
        )));
    }
    let mut set = BTreeSet::new();
    for a in faces_of(p) {
        for b in faces_of(q) {
            set.insert(if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            });
        }
    }
    Ok(set.into_iter().collect())
}

/// Outcome of [`verify_pair_product_identity`].
#[derive(Debug, Clone)]
pub struct PairProductReport {
    pub holds: bool,
    /// Ordered vertex-disjoint k-face pairs of `[3]^{*k+1}`.
    pub disjoint_pairs: usize,
    /// Size of the mod-2 sum of the products `P × Q`.
    pub product_sum_size: usize,
    /// An ordered face pair on which the two sides differ, when they do.
    pub witness: Option<(Face, Face)>,
}

/// Checks by brute force that the ordered vertex-disjoint k-face pairs of
/// `[3]^{*k+1}` coincide with the mod-2 sum of the products `P × Q` over
/// ordered octahedron pairs meeting exactly at the all-ones face.
pub fn verify_pair_product_identity(k: usize) -> PairProductReport {
    let faces = all_faces(k);
    let mut lhs: BTreeSet<(Face, Face)> = BTreeSet::new();
    for a in &faces {
        for b in &faces {
            if a.vertex_disjoint(b) {
                lhs.insert((a.clone(), b.clone()));
            }
        }
    }

    let mut rhs: BTreeSet<(Face, Face)> = BTreeSet::new();
    for (p, q) in sa_pairs(k) {
        for (x, y) in [(&p, &q), (&q, &p)] {
            for a in faces_of(x) {
                for b in faces_of(y) {
                    let key = (a.clone(), b.clone());
                    if !rhs.remove(&key) {
                        rhs.insert(key);
                    }
                }
            }
        }
    }

    let witness = lhs
        .symmetric_difference(&rhs)
        .next()
        .map(|(a, b)| (a.clone(), b.clone()));
    PairProductReport {
        holds: witness.is_none(),
        disjoint_pairs: lhs.len(),
        product_sum_size: rhs.len(),
        witness,
    }
}

/// Result of the exhaustive XOR-decomposition search for one octahedron.
#[derive(Debug, Clone)]
pub struct XorDecompositions {
    /// All unordered pairs `{X, Y}` of distinct octahedra whose face-set
    /// symmetric difference equals the faces of the target.
    pub pairs: Vec<(Octahedron, Octahedron)>,
    /// Members of `pairs` outside the one-coordinate family. Empty in
    /// every case checked so far.
    pub beyond_one_coordinate: Vec<(Octahedron, Octahedron)>,
}

/// The one-coordinate decompositions of `p`: replace part `P_i = {a,b}`
/// by `{a,c}` and `{b,c}` for each spare label `c` and each line `i`.
pub fn one_coordinate_decompositions(p: &Octahedron, n: usize) -> Vec<(Octahedron, Octahedron)> {
    let mut out = BTreeSet::new();
    for i in 0..p.parts.len() {
        let part = p.parts[i];
        for c in 1..=n as Vertex {
            if part.contains(c) {
                continue;
            }
            let mut x = p.clone();
            let mut y = p.clone();
            x.parts[i] = VertexPair::new(part.lo, c).expect("distinct");
            y.parts[i] = VertexPair::new(part.hi, c).expect("distinct");
            out.insert(if x <= y { (x, y) } else { (y, x) });
        }
    }
    out.into_iter().collect()
}

fn face_key(faces: &[Face]) -> Vec<Face> {
    let mut sorted = faces.to_vec();
    sorted.sort();
    sorted
}

fn face_set_xor(a: &[Face], b: &[Face]) -> Vec<Face> {
    let sa: BTreeSet<&Face> = a.iter().collect();
    let sb: BTreeSet<&Face> = b.iter().collect();
    sa.symmetric_difference(&sb).map(|f| (*f).clone()).collect()
}

/// Exhaustively finds every unordered pair `{X, Y}` of distinct
/// k-octahedra of `[n]^{*k+1}` with `faces(X) ⊕ faces(Y) = faces(p)`,
/// and reports any decomposition outside the one-coordinate family.
pub fn xor_decompositions(p: &Octahedron, n: usize) -> Result<XorDecompositions> {
    let k = p.k();
    let indexer = Indexer::new(n, k)?;
    if p.max_label() as usize > n {
        return Err(Error::IndexOutOfRange(format!(
            "octahedron {p:?} has labels above n={n}"
        )));
    }
    let target = face_key(&faces_of(p));
    let octs: Vec<Octahedron> = indexer.iter().collect();
    let face_sets: Vec<Vec<Face>> = octs.iter().map(|o| face_key(&faces_of(o))).collect();

    let mut pairs = Vec::new();
    for i in 0..octs.len() {
        for j in i + 1..octs.len() {
            let mut diff = face_set_xor(&face_sets[i], &face_sets[j]);
            diff.sort();
            if diff == target {
                pairs.push((octs[i].clone(), octs[j].clone()));
            }
        }
    }
    pairs.sort();

    let family = one_coordinate_decompositions(p, n);
    let family_set: BTreeSet<&(Octahedron, Octahedron)> = family.iter().collect();
    let all_set: BTreeSet<&(Octahedron, Octahedron)> = pairs.iter().collect();
    debug_assert!(
        family_set.is_subset(&all_set),
        "one-coordinate decompositions must appear in the exhaustive search"
    );
    let beyond = pairs
        .iter()
        .filter(|pair| !family_set.contains(pair))
        .cloned()
        .collect();
    Ok(XorDecompositions {
        pairs,
        beyond_one_coordinate: beyond,
    })
}

/// Every XOR decomposition of every octahedron at `(n, k)`, found in one
/// exhaustive pass and keyed by the canonical index of the target.
#[derive(Debug, Clone)]
pub struct DecompositionTable {
    /// `by_target[p]` lists unordered index pairs `{x, y}` with
    /// `faces(x) ⊕ faces(y) = faces(p)`, sorted.
    pub by_target: Vec<Vec<(OctIndex, OctIndex)>>,
    /// Targets with a decomposition outside the one-coordinate family.
    pub beyond_one_coordinate: Vec<OctIndex>,
}

impl DecompositionTable {
    pub fn build(indexer: &Indexer) -> Self {
        let octs: Vec<Octahedron> = indexer.iter().collect();
        let face_sets: Vec<Vec<Face>> = octs.iter().map(|o| face_key(&faces_of(o))).collect();
        let lookup: BTreeMap<&[Face], usize> = face_sets
            .iter()
            .enumerate()
            .map(|(i, fs)| (fs.as_slice(), i))
            .collect();

        let face_count = face_sets.first().map_or(0, Vec::len);
        let mut by_target: Vec<Vec<(OctIndex, OctIndex)>> = vec![Vec::new(); octs.len()];
        for i in 0..octs.len() {
            for j in i + 1..octs.len() {
                let mut diff = face_set_xor(&face_sets[i], &face_sets[j]);
                if diff.len() != face_count {
                    continue;
                }
                diff.sort();
                if let Some(&t) = lookup.get(diff.as_slice()) {
                    by_target[t].push((OctIndex(i), OctIndex(j)));
                }
            }
        }
        for list in &mut by_target {
            list.sort();
        }

        let mut beyond = Vec::new();
        for (t, list) in by_target.iter().enumerate() {
            let target = indexer.octahedron(OctIndex(t)).expect("in range");
            let family: BTreeSet<(OctIndex, OctIndex)> =
                one_coordinate_decompositions(&target, indexer.n())
                    .into_iter()
                    .map(|(x, y)| {
                        let xi = indexer.index(&x).expect("valid");
                        let yi = indexer.index(&y).expect("valid");
                        if xi <= yi {
                            (xi, yi)
                        } else {
                            (yi, xi)
                        }
                    })
                    .collect();
            debug_assert!(
                family.iter().all(|pair| list.binary_search(pair).is_ok()),
                "one-coordinate decompositions must appear in the exhaustive table"
            );
            if list.iter().any(|pair| !family.contains(pair)) {
                beyond.push(OctIndex(t));
            }
        }
        DecompositionTable {
            by_target,
            beyond_one_coordinate: beyond,
        }
    }
}

/// The elementary coboundary of a k-face `alpha` and a vertex-disjoint
/// (k−1)-face `e` inside `[3]^{*k+1}`: all pairs `{alpha, beta}` with
/// `beta` a k-face containing `e` and vertex-disjoint from `alpha`.
/// Always has exactly two elements here.
pub fn elementary_coboundary(alpha: &Face, e: &Face) -> Result<Vec<(Face, Face)>> {
    if alpha.len() < 2 {
        return Err(Error::InvalidArgument(
            "elementary coboundaries need at least two lines (k >= 1)".into(),
        ));
    }
    if !alpha.is_full() {
        return Err(Error::InvalidArgument(format!(
            "alpha must be a k-face, got {alpha:?}"
        )));
    }
    let Some(gap) = e.gap() else {
        return Err(Error::InvalidArgument(format!(
            "e must have exactly one empty coordinate, got {e:?}"
        )));
    };
    if alpha.len() != e.len() {
        return Err(Error::DimensionMismatch(format!(
            "alpha has {} lines, e has {}",
            alpha.len(),
            e.len()
        )));
    }
    let in_range = |f: &Face| f.coords.iter().flatten().all(|&v| (1..=3).contains(&v));
    if !in_range(alpha) || !in_range(e) {
        return Err(Error::IndexOutOfRange(
            "elementary coboundaries live in the join power on three labels".into(),
        ));
    }
    if !alpha.vertex_disjoint(e) {
        return Err(Error::NotDisjoint(format!("alpha={alpha:?}, e={e:?}")));
    }

    let mut out = Vec::new();
    for v in 1..=3 as Vertex {
        let mut beta = e.clone();
        beta.coords[gap] = Some(v);
        if beta.vertex_disjoint(alpha) {
            let pair = if *alpha <= beta {
                (alpha.clone(), beta)
            } else {
                (beta, alpha.clone())
            };
            out.push(pair);
        }
    }
    out.sort();
    Ok(out)
}

/// Exhaustive count of elementary coboundaries in `[3]^{*k+1}`.
#[derive(Debug, Clone, Copy)]
pub struct CoboundaryCensus {
    /// Valid `(alpha, e)` configurations visited.
    pub checked: usize,
    pub all_size_two: bool,
}

/// Enumerates every k-face `alpha` and vertex-disjoint (k−1)-face `e` of
/// `[3]^{*k+1}` and confirms each elementary coboundary has exactly two
/// elements. Needs `k >= 1`.
pub fn coboundary_census(k: usize) -> Result<CoboundaryCensus> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "elementary coboundaries need k >= 1".into(),
        ));
    }
    let faces = all_faces(k);
    let sub_faces = all_faces(k - 1);
    let mut checked = 0usize;
    let mut all_size_two = true;
    for alpha in &faces {
        for gap in 0..=k {
            for src in &sub_faces {
                let vals: Vec<Vertex> = src.coords().iter().map(|c| c.unwrap()).collect();
                let e = Face::with_gap(vals, gap)?;
                if !alpha.vertex_disjoint(&e) {
                    continue;
                }
                checked += 1;
                if elementary_coboundary(alpha, &e)?.len() != 2 {
                    all_size_two = false;
                }
            }
        }
    }
    Ok(CoboundaryCensus {
        checked,
        all_size_two,
    })
}

/// Parameters of the join power contained in the k-skeleton of the
/// n-simplex: the `n+1` simplex vertices split into `k+1` lines of size
/// at least `s = ⌊(n+1)/(k+1)⌋`.
#[derive(Debug, Clone)]
pub struct SkeletonPartition {
    pub s: usize,
    /// Disjoint groups of simplex vertices (labelled `0..=n`), one per line.
    pub groups: Vec<Vec<usize>>,
}

pub fn skeleton_partition(n: usize, k: usize) -> Result<SkeletonPartition> {
    if n < k || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "need n >= k >= 1, got n={n}, k={k}"
        )));
    }
    let s = (n + 1) / (k + 1);
    let mut groups = vec![Vec::new(); k + 1];
    for v in 0..=n {
        groups[v % (k + 1)].push(v);
    }
    debug_assert!(groups.iter().all(|g| g.len() >= s));
    Ok(SkeletonPartition { s, groups })
}
