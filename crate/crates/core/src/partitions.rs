//! Partitions, partition tuples, multiplicity matrices, bounded-part
//! enumeration, weight fibers, and the level embedding of tuples.
//!
//! A partition is stored as its weakly decreasing part list; the empty
//! partition prints as `"[0]"` to match table notation. A tuple holds one
//! partition per quiver vertex. The multiplicity matrix of a tuple records
//! in entry (i,k) how many parts of the i-th partition equal k.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part {part} exceeds the maximal allowed part {max}")]
    PartExceedsMax { part: u32, max: u32 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

fn perr(position: usize, message: impl Into<String>) -> PartitionError {
    PartitionError::Parse {
        position,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parts must be weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(perr(
                    0,
                    format!(
                        "parts must be weakly decreasing, got {} before {}",
                        w[0], w[1]
                    ),
                ));
            }
        }
        if parts.contains(&0) {
            return Err(perr(0, "parts must be positive".to_string()));
        }
        Ok(Partition(parts))
    }

    /// The partition [1^r] with r parts equal to 1.
    pub fn ones(r: u32) -> Self {
        Partition(vec![1; r as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The weight |lambda|, the sum of all parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The largest part; 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// The number of parts equal to k (k >= 1).
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    /// The multiplicity vector (m^(1), ..., m^(r)) with r = largest part;
    /// empty for the empty partition.
    pub fn multiplicity_vector(&self) -> Vec<u32> {
        let r = self.max_part();
        (1..=r).map(|k| self.multiplicity(k)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "[0]");
        }
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `"[2,1]"`, `"[]"` and `"[0]"` (the empty partition).
    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| perr(0, format!("expected a bracketed partition, got `{t}`")))?;
        let inner = inner.trim();
        if inner.is_empty() || inner == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece.trim().parse().map_err(|_| {
                perr(
                    0,
                    format!("`{}` is not a positive integer part", piece.trim()),
                )
            })?;
            parts.push(p);
        }
        Partition::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionTuple(Vec<Partition>);

impl PartitionTuple {
    pub fn new(components: Vec<Partition>) -> Self {
        PartitionTuple(components)
    }

    /// The tuple of n empty partitions.
    pub fn empty(n: usize) -> Self {
        PartitionTuple(vec![Partition::empty(); n])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff every component is the empty partition.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Partition::is_empty)
    }

    /// The componentwise weights (|lambda^1|, ..., |lambda^n|).
    pub fn weight_vector(&self) -> Vec<u32> {
        self.0.iter().map(Partition::weight).collect()
    }

    pub fn total_weight(&self) -> u32 {
        self.0.iter().map(Partition::weight).sum()
    }

    /// The largest part across all components.
    pub fn max_part(&self) -> u32 {
        self.0.iter().map(Partition::max_part).max().unwrap_or(0)
    }

    /// True iff every part of every component equals 1.
    pub fn all_parts_ones(&self) -> bool {
        self.max_part() <= 1
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for PartitionTuple {
    type Err = PartitionError;

    /// Accepts the CLI form `"[2,1];[1]"` and the table form
    /// `"([2,1],[1])"`. A single partition `"[2,1]"` is a 1-tuple.
    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let t = s.trim();
        let pieces: Vec<&str> =
            if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                split_top_level(inner, ',')
            } else {
                t.split(';').collect()
            };
        let mut components = Vec::new();
        for piece in pieces {
            components.push(piece.parse::<Partition>()?);
        }
        if components.is_empty() {
            return Err(perr(0, "empty partition tuple"));
        }
        Ok(PartitionTuple(components))
    }
}

/// Splits on `sep` at bracket depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// The multiplicity matrix of a partition tuple: entry (i,k) counts the
/// parts of the i-th component equal to k, for k = 1..=cols where cols is
/// the largest part across the tuple (so the last column is nonzero unless
/// the matrix is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MultiplicityMatrix {
    pub fn from_tuple(t: &PartitionTuple) -> Self {
        let rows = t.len();
        let cols = t.max_part() as usize;
        let mut entries = vec![0u32; rows * cols];
        for (i, p) in t.components().iter().enumerate() {
            for k in 1..=cols {
                entries[i * cols + (k - 1)] = p.multiplicity(k as u32);
            }
        }
        MultiplicityMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry (i, k) with i a 0-based row and k a 1-based part size.
    pub fn entry(&self, i: usize, k: usize) -> u32 {
        self.entries[i * self.cols + (k - 1)]
    }

    /// The order-k multiplicity vector (column k, 1-based).
    pub fn column(&self, k: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.entry(i, k)).collect()
    }

    /// Reconstructs the source tuple.
    pub fn to_tuple(&self) -> PartitionTuple {
        let components = (0..self.rows)
            .map(|i| {
                let mut parts = Vec::new();
                for k in (1..=self.cols).rev() {
                    for _ in 0..self.entry(i, k) {
                        parts.push(k as u32);
                    }
                }
                Partition::new(parts).expect("descending by construction")
            })
            .collect();
        PartitionTuple::new(components)
    }
}

impl fmt::Display for MultiplicityMatrix {
    /// One vertex renders flat, "(2,1)"; several render as the tuple of
    /// order-k columns, "((0,1),(1,0))".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 1 {
            write!(f, "(")?;
            for k in 1..=self.cols {
                if k > 1 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(0, k))?;
            }
            return write!(f, ")");
        }
        write!(f, "(")?;
        for k in 1..=self.cols {
            if k > 1 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for i in 0..self.rows {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, k))?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

/// The multiplicity vector of a single partition.
pub fn multiplicity_vector(p: &Partition) -> Vec<u32> {
    p.multiplicity_vector()
}

/// The multiplicity matrix of a tuple.
pub fn tuple_multiplicity_matrix(t: &PartitionTuple) -> MultiplicityMatrix {
    MultiplicityMatrix::from_tuple(t)
}

/// All partitions of exactly `weight` with every part <= `max_part`
/// (unbounded when None), in ascending lexicographic order of part lists.
pub fn partitions_of(weight: u32, max_part: Option<u32>) -> Vec<Partition> {
    let cap = max_part.unwrap_or(weight).min(weight);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_partitions(weight, cap, &mut stack, &mut out);
    out
}

fn gen_partitions(rem: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for part in 1..=cap.min(rem) {
        prefix.push(part);
        gen_partitions(rem - part, part, prefix, out);
        prefix.pop();
    }
}

/// The number of partitions of `weight` with parts <= `max_part`.
pub fn partition_count(weight: u32, max_part: Option<u32>) -> u64 {
    let cap = max_part.unwrap_or(weight).min(weight) as usize;
    let w = weight as usize;
    let mut table = vec![0u64; w + 1];
    table[0] = 1;
    for part in 1..=cap {
        for total in part..=w {
            table[total] += table[total - part];
        }
    }
    table[w]
}

/// Every n-tuple with total weight <= `weight_bound` and all parts <=
/// `max_part`, each exactly once, graded by total weight and lexicographic
/// within a grade. Includes the tuple of empty partitions at weight 0.
pub fn enumerate_tuples(n: usize, weight_bound: u32, max_part: Option<u32>) -> Vec<PartitionTuple> {
    let mut out = Vec::new();
    for w in 0..=weight_bound {
        let mut grade = Vec::new();
        let mut alpha = vec![0u32; n];
        gen_weight_splits(w, 0, &mut alpha, &mut |alpha| {
            grade.extend(tuples_with_weights(alpha, max_part));
        });
        grade.sort();
        out.extend(grade);
    }
    out
}

fn gen_weight_splits(rem: u32, i: usize, alpha: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if i + 1 == alpha.len() {
        alpha[i] = rem;
        emit(alpha);
        return;
    }
    for v in 0..=rem {
        alpha[i] = v;
        gen_weight_splits(rem - v, i + 1, alpha, emit);
    }
}

fn tuples_with_weights(alpha: &[u32], max_part: Option<u32>) -> Vec<PartitionTuple> {
    let choices: Vec<Vec<Partition>> = alpha.iter().map(|&w| partitions_of(w, max_part)).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(alpha.len());
    cartesian(&choices, &mut current, &mut out);
    out
}

fn cartesian(
    choices: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    out: &mut Vec<PartitionTuple>,
) {
    if current.len() == choices.len() {
        out.push(PartitionTuple::new(current.clone()));
        return;
    }
    for p in &choices[current.len()] {
        current.push(p.clone());
        cartesian(choices, current, out);
        current.pop();
    }
}

/// All tuples whose componentwise weights equal `alpha` exactly: the fiber
/// over a dimension vector.
pub fn lambda_fiber(alpha: &[u32]) -> Vec<PartitionTuple> {
    let mut out = tuples_with_weights(alpha, None);
    out.sort();
    out
}

/// Sends an n-tuple with parts <= m to the nm-tuple of all-ones partitions
/// recording multiplicities, ordered level-major to match the enlarged
/// quiver's vertex order: component (k-1)*n + i is [1^(m_{lambda^i}^{(k)})].
pub fn tau_m(t: &PartitionTuple, m: u32) -> Result<PartitionTuple, PartitionError> {
    assert!(m >= 1, "level count must be positive");
    let largest = t.max_part();
    if largest > m {
        return Err(PartitionError::PartExceedsMax {
            part: largest,
            max: m,
        });
    }
    let mut components = Vec::with_capacity(t.len() * m as usize);
    for k in 1..=m {
        for p in t.components() {
            components.push(Partition::ones(p.multiplicity(k)));
        }
    }
    Ok(PartitionTuple::new(components))
}
