//! Quiver data: the companion matrix, the Euler form, the representation
//! space dimension, and the enlarged quiver construction.
//!
//! A quiver on vertices v_1..v_n is fully captured by its companion matrix,
//! whose (i,j) entry counts the arrows v_i -> v_j.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::qfield::parse_uint;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("dimension vector has length {got}, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has no loop; the construction needs a loop at every vertex")]
    MissingLoop { vertex: String },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

fn perr(position: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Parse {
        position,
        message: message.into(),
    }
}

/// A dimension vector: one non-negative integer per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// The total dimension (sum of entries).
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum; both vectors must have equal length.
    pub fn plus(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for DimVector {
    type Err = QuiverError;

    /// Accepts "1,2" and "(1,2)".
    fn from_str(s: &str) -> Result<Self, QuiverError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(perr(0, "empty dimension vector"));
        }
        let mut entries = Vec::new();
        for piece in inner.split(',') {
            entries.push(parse_uint(piece, 0).map_err(|e| match e {
                crate::qfield::QFieldError::Parse { position, message } => perr(position, message),
                _ => perr(0, "invalid entry"),
            })?);
        }
        Ok(DimVector(entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    companion: Vec<Vec<u32>>,
    labels: Vec<String>,
}

impl Quiver {
    pub fn new(companion: Vec<Vec<u32>>) -> Result<Self, QuiverError> {
        let n = companion.len();
        if n == 0 {
            return Err(perr(0, "a quiver needs at least one vertex"));
        }
        for row in &companion {
            if row.len() != n {
                return Err(perr(
                    0,
                    format!(
                        "companion matrix is not square: row of length {} in a {}-vertex quiver",
                        row.len(),
                        n
                    ),
                ));
            }
        }
        let labels = (1..=n).map(|i| format!("v{i}")).collect();
        Ok(Quiver { companion, labels })
    }

    pub fn with_labels(companion: Vec<Vec<u32>>, labels: Vec<String>) -> Result<Self, QuiverError> {
        let mut q = Quiver::new(companion)?;
        assert_eq!(labels.len(), q.vertex_count());
        q.labels = labels;
        Ok(q)
    }

    /// The quiver with a single vertex and g loops.
    pub fn g_loop(g: u32) -> Self {
        Quiver::new(vec![vec![g]]).expect("1x1 matrix")
    }

    pub fn vertex_count(&self) -> usize {
        self.companion.len()
    }

    pub fn companion(&self) -> &[Vec<u32>] {
        &self.companion
    }

    /// Arrow count v_i -> v_j (0-based indices).
    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.companion[i][j]
    }

    pub fn vertex_label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn check_len(&self, v: &DimVector) -> Result<(), QuiverError> {
        if v.len() != self.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.vertex_count(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The Euler form <a,b> = sum_i a_i b_i - sum_{i,j} c_ij a_i b_j.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut acc: i64 = 0;
        for (i, (&ai, &bi)) in a.entries().iter().zip(b.entries()).enumerate() {
            acc += ai as i64 * bi as i64;
            for (j, &bj) in b.entries().iter().enumerate() {
                acc -= self.companion[i][j] as i64 * ai as i64 * bj as i64;
            }
        }
        Ok(acc)
    }

    /// log_q |R(a, F_q)| = a C a^t, the dimension of the representation space.
    pub fn rep_space_exponent(&self, a: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(a)?;
        let mut acc: i64 = 0;
        for (i, &ai) in a.entries().iter().enumerate() {
            for (j, &aj) in a.entries().iter().enumerate() {
                acc += self.companion[i][j] as i64 * ai as i64 * aj as i64;
            }
        }
        Ok(acc)
    }

    /// True iff every vertex carries at least one loop.
    pub fn has_enough_loops(&self) -> bool {
        (0..self.vertex_count()).all(|i| self.companion[i][i] >= 1)
    }

    /// The enlarged quiver on n*m vertices v_i^k, ordered level-major (all
    /// level-1 vertices first). Loop count at v_i^k is 1 + (c_ii - 1)k; the
    /// arrow count from v_i^a to v_s^b for v_i^a strictly below v_s^b is
    /// (d_is + d_si) * min(a,b) with D = C - I, and 0 on the lower triangle.
    pub fn gamma_m(&self, m: u32) -> Result<Quiver, QuiverError> {
        assert!(m >= 1, "level count must be positive");
        for i in 0..self.vertex_count() {
            if self.companion[i][i] == 0 {
                return Err(QuiverError::MissingLoop {
                    vertex: self.labels[i].clone(),
                });
            }
        }
        let n = self.vertex_count();
        let nm = n * m as usize;
        let flat = |i: usize, k: u32| (k as usize - 1) * n + i;
        let mut companion = vec![vec![0u32; nm]; nm];
        let mut labels = Vec::with_capacity(nm);
        for k in 1..=m {
            for i in 0..n {
                labels.push(format!("v{}^{}", i + 1, k));
            }
        }
        for a in 1..=m {
            for i in 0..n {
                let v = flat(i, a);
                companion[v][v] = 1 + (self.companion[i][i] - 1) * a;
                for b in a..=m {
                    for s in 0..n {
                        let w = flat(s, b);
                        if w <= v {
                            continue;
                        }
                        let d_is = self.companion[i][s] - u32::from(i == s);
                        let d_si = self.companion[s][i] - u32::from(s == i);
                        companion[v][w] = (d_is + d_si) * a.min(b);
                    }
                }
            }
        }
        Quiver::with_labels(companion, labels)
    }

    /// Inline matrix form, e.g. `"[[1,1],[0,1]]"`.
    pub fn render_matrix(&self) -> String {
        let rows: Vec<String> = self
            .companion
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// File form with explicit fields.
    pub fn render_file(&self) -> String {
        format!(
            "vertices: {}\narrows: {}\n",
            self.vertex_count(),
            self.render_matrix()
        )
    }

    /// Parses either the inline matrix form or the two-field file form.
    pub fn parse(text: &str) -> Result<Quiver, QuiverError> {
        let t = text.trim_start();
        if t.starts_with('[') {
            return Quiver::parse_matrix(text);
        }
        Quiver::parse_file(text)
    }

    pub fn parse_matrix(text: &str) -> Result<Quiver, QuiverError> {
        let (matrix, rest) = parse_matrix_at(text, skip_ws(text, 0))?;
        let tail = skip_ws(text, rest);
        if tail != text.len() {
            return Err(perr(tail, "unexpected trailing input after matrix"));
        }
        Quiver::new(matrix)
    }

    fn parse_file(text: &str) -> Result<Quiver, QuiverError> {
        let mut vertices: Option<u32> = None;
        let mut arrows: Option<Vec<Vec<u32>>> = None;
        let mut offset = 0;
        for line in text.lines() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                offset += line.len() + 1;
                continue;
            }
            if let Some(v) = trimmed.strip_prefix("vertices:") {
                vertices = Some(parse_uint(v, offset).map_err(|e| match e {
                    crate::qfield::QFieldError::Parse { position, message } => {
                        perr(position.max(offset), message)
                    }
                    _ => perr(offset, "invalid vertex count"),
                })?);
            } else if let Some(v) = trimmed.strip_prefix("arrows:") {
                let inner = v.trim();
                let start = offset + line.len() - line.trim_start().len();
                let (matrix, _) =
                    parse_matrix_at(inner, skip_ws(inner, 0)).map_err(|e| shift_err(e, start))?;
                arrows = Some(matrix);
            } else {
                return Err(perr(
                    offset,
                    format!("unknown field in quiver file: `{trimmed}`"),
                ));
            }
            offset += line.len() + 1;
        }
        let arrows = arrows.ok_or_else(|| perr(0, "missing `arrows:` field"))?;
        let q = Quiver::new(arrows)?;
        if let Some(v) = vertices {
            if v as usize != q.vertex_count() {
                return Err(perr(
                    0,
                    format!(
                        "`vertices: {v}` disagrees with a {}x{} arrow matrix",
                        q.vertex_count(),
                        q.vertex_count()
                    ),
                ));
            }
        }
        Ok(q)
    }
}

fn shift_err(e: QuiverError, by: usize) -> QuiverError {
    match e {
        QuiverError::Parse { position, message } => perr(position + by, message),
        other => other,
    }
}

fn skip_ws(s: &str, mut i: usize) -> usize {
    let b = s.as_bytes();
    while i < b.len() && (b[i] as char).is_whitespace() {
        i += 1;
    }
    i
}

/// Parses "[[1,2],[0,1]]" starting at byte i; returns the matrix and the
/// position just past it.
fn parse_matrix_at(s: &str, i: usize) -> Result<(Vec<Vec<u32>>, usize), QuiverError> {
    let b = s.as_bytes();
    if i >= b.len() || b[i] != b'[' {
        return Err(perr(i, "expected `[` to open the matrix"));
    }
    let mut pos = skip_ws(s, i + 1);
    let mut rows = Vec::new();
    if pos < b.len() && b[pos] == b']' {
        return Err(perr(pos, "matrix has no rows"));
    }
    loop {
        let (row, next) = parse_row_at(s, pos)?;
        rows.push(row);
        pos = skip_ws(s, next);
        if pos >= b.len() {
            return Err(perr(pos, "unterminated matrix, expected `,` or `]`"));
        }
        match b[pos] {
            b',' => pos = skip_ws(s, pos + 1),
            b']' => return Ok((rows, pos + 1)),
            _ => return Err(perr(pos, "expected `,` or `]` between rows")),
        }
    }
}

fn parse_row_at(s: &str, i: usize) -> Result<(Vec<u32>, usize), QuiverError> {
    let b = s.as_bytes();
    if i >= b.len() || b[i] != b'[' {
        return Err(perr(i, "expected `[` to open a row"));
    }
    let mut pos = skip_ws(s, i + 1);
    let mut row = Vec::new();
    if pos < b.len() && b[pos] == b']' {
        return Ok((row, pos + 1));
    }
    loop {
        if pos < b.len() && b[pos] == b'-' {
            return Err(perr(pos, "arrow counts must be non-negative"));
        }
        let start = pos;
        while pos < b.len() && b[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(perr(pos, "expected a non-negative integer entry"));
        }
        let value: u32 = s[start..pos]
            .parse()
            .map_err(|_| perr(start, "entry out of range"))?;
        row.push(value);
        pos = skip_ws(s, pos);
        if pos >= b.len() {
            return Err(perr(pos, "unterminated row, expected `,` or `]`"));
        }
        match b[pos] {
            b',' => pos = skip_ws(s, pos + 1),
            b']' => return Ok((row, pos + 1)),
            _ => return Err(perr(pos, "expected `,` or `]` in a row")),
        }
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    /// A quiver together with two dimension vectors of matching length.
    fn arb_instance(
        max_n: usize,
        max_arrows: u32,
        max_dim: u32,
    ) -> impl Strategy<Value = (Quiver, DimVector, DimVector)> {
        (1..=max_n).prop_flat_map(move |n| {
            (
                prop::collection::vec(prop::collection::vec(0..=max_arrows, n), n),
                prop::collection::vec(0..=max_dim, n),
                prop::collection::vec(0..=max_dim, n),
            )
                .prop_map(|(m, a, b)| {
                    (
                        Quiver::new(m).unwrap(),
                        DimVector::new(a),
                        DimVector::new(b),
                    )
                })
        })
    }

    /// Matrix evaluation a (I - C) b^t, the second route to the Euler form.
    fn euler_by_matrix(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
        let n = q.vertex_count();
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                let m = i64::from(i == j) - q.arrows(i, j) as i64;
                acc += a.entries()[i] as i64 * m * b.entries()[j] as i64;
            }
        }
        acc
    }

    proptest! {
        #[test]
        fn euler_form_two_routes_agree((q, a, b) in arb_instance(3, 3, 4)) {
            prop_assert_eq!(q.euler_form(&a, &b).unwrap(), euler_by_matrix(&q, &a, &b));
        }

        #[test]
        fn euler_diagonal_vs_rep_exponent((q, a, _b) in arb_instance(3, 3, 4)) {
            let squares: i64 = a.entries().iter().map(|&x| (x as i64).pow(2)).sum();
            prop_assert_eq!(
                q.euler_form(&a, &a).unwrap(),
                squares - q.rep_space_exponent(&a).unwrap()
            );
        }
    }
}
