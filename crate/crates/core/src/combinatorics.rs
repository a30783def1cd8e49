//! Pivot subsets, partitions in the `k x (n-k)` box, semistandard tableaux
//! and fixed-point weights of `Gr(k, n)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::LinearForm;

/// The Grassmannian `Gr(k, n)` of `k`-planes in `C^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannianShape {
    n: usize,
    k: usize,
}

impl GrassmannianShape {
    pub fn new(n: usize, k: usize) -> Result<GrassmannianShape> {
        if k == 0 || k >= n {
            return Err(Error::InvalidShape { n, k });
        }
        Ok(GrassmannianShape { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of columns of the box, `n - k`.
    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    /// Complex dimension `k(n-k)`.
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Number of fixed points, `C(n, k)`.
    pub fn num_fixed_points(&self) -> usize {
        binomial(self.n, self.k)
    }

    /// All pivot subsets in lexicographic order.
    pub fn subsets(&self) -> Vec<PivotSubset> {
        let mut out = Vec::with_capacity(self.num_fixed_points());
        let mut cur: Vec<usize> = (1..=self.k).collect();
        loop {
            out.push(PivotSubset { elements: cur.clone() });
            // advance to the next k-combination of 1..=n
            let mut i = self.k;
            while i > 0 && cur[i - 1] == self.n - self.k + i {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            cur[i - 1] += 1;
            for j in i..self.k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }

    /// All partitions fitting in the box, ordered by size then lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = self
            .subsets()
            .iter()
            .map(|s| subset_to_partition(s, self))
            .collect();
        out.sort();
        out
    }

    pub fn fits(&self, lambda: &Partition) -> bool {
        lambda.len() <= self.k && lambda.first() <= self.cols()
    }

    pub fn check_fits(&self, lambda: &Partition) -> Result<()> {
        if self.fits(lambda) {
            Ok(())
        } else {
            Err(Error::DoesNotFitBox {
                partition: lambda.to_string(),
                rows: self.k,
                cols: self.cols(),
            })
        }
    }

    /// The full `k x (n-k)` rectangle.
    pub fn full_box(&self) -> Partition {
        Partition::new(vec![self.cols(); self.k]).expect("rectangle")
    }
}

impl fmt::Display for GrassmannianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({}, {})", self.k, self.n)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A `k`-element subset `i_1 < ... < i_k` of `{1..n}`, indexing a fixed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PivotSubset {
    elements: Vec<usize>,
}

impl PivotSubset {
    pub fn new(mut elements: Vec<usize>, shape: &GrassmannianShape) -> Result<PivotSubset> {
        elements.sort_unstable();
        let before = elements.len();
        elements.dedup();
        if elements.len() != before {
            return Err(Error::InvalidSubset(format!("{elements:?} has repeated elements")));
        }
        if elements.len() != shape.k {
            return Err(Error::InvalidSubset(format!(
                "{} elements given, {shape} needs {}",
                elements.len(),
                shape.k
            )));
        }
        if elements.iter().any(|&e| e == 0 || e > shape.n) {
            return Err(Error::InvalidSubset(format!(
                "elements must lie in 1..={}",
                shape.n
            )));
        }
        Ok(PivotSubset { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    /// `{1..n}` minus this subset, ascending.
    pub fn complement(&self, shape: &GrassmannianShape) -> Vec<usize> {
        (1..=shape.n).filter(|&j| !self.contains(j)).collect()
    }

    /// `I \ {out} ∪ {inn}`.
    pub fn exchange(&self, out: usize, inn: usize) -> PivotSubset {
        let mut elements: Vec<usize> = self.elements.iter().copied().filter(|&e| e != out).collect();
        elements.push(inn);
        elements.sort_unstable();
        PivotSubset { elements }
    }

    /// Image under `i -> n + 1 - i`.
    pub fn reversed(&self, shape: &GrassmannianShape) -> PivotSubset {
        let mut elements: Vec<usize> = self.elements.iter().map(|&i| shape.n + 1 - i).collect();
        elements.sort_unstable();
        PivotSubset { elements }
    }
}

impl fmt::Display for PivotSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parses `{2,4,5}` (braces optional) for the given shape.
pub fn parse_subset(s: &str, shape: &GrassmannianShape) -> Result<PivotSubset> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let elements = inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidSubset(s.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    PivotSubset::new(elements, shape)
}

/// A partition `λ_1 >= λ_2 >= ... > 0`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` (1-based), zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|i| self.parts.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Diagram containment `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Boxes `(i, j)` in matrix coordinates, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }
}

/// Size first, then lexicographic on the parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `3,2,2`; the empty partition renders as `0`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// `λ_j = (n-k) - i_j + j`.
pub fn subset_to_partition(subset: &PivotSubset, shape: &GrassmannianShape) -> Partition {
    let parts = subset
        .elements
        .iter()
        .enumerate()
        .map(|(j, &i)| shape.cols() + j + 1 - i)
        .collect();
    Partition::new(parts).expect("pivot subsets give partitions")
}

/// `i_j = (n-k) + j - λ_j`.
pub fn partition_to_subset(lambda: &Partition, shape: &GrassmannianShape) -> Result<PivotSubset> {
    shape.check_fits(lambda)?;
    let elements = (1..=shape.k)
        .map(|j| shape.cols() + j - lambda.part(j))
        .collect();
    Ok(PivotSubset { elements })
}

/// Bruhat order on pivot subsets: `J <= I` iff `j_m <= i_m` for all `m`.
/// Equivalent to `λ(J) ⊇ λ(I)`.
pub fn bruhat_leq(j: &PivotSubset, i: &PivotSubset) -> bool {
    j.elements.len() == i.elements.len()
        && j.elements.iter().zip(&i.elements).all(|(a, b)| a <= b)
}

/// A semistandard filling of a partition's diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entry `S(i, j)` in 1-based matrix coordinates.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[i - 1][j - 1]
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("tableau rows")
    }

    /// `((i, j), S(i, j))` for every box.
    pub fn boxes(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, &v)| ((i + 1, j + 1), v))
        })
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above)
        });
        rows_ok && cols_ok
    }
}

/// One row per line, entries separated by spaces.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let entries: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", entries.join(" "))?;
        }
        Ok(())
    }
}

/// All semistandard tableaux of shape `lambda` with entries in `1..=k`,
/// lexicographically ordered by row-reading word.
pub fn ssyt_enumerate(lambda: &Partition, k: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    if lambda.len() > k {
        return out;
    }
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let columns = lambda.conjugate();
    let mut rows: Vec<Vec<usize>> = lambda.parts.iter().map(|&l| Vec::with_capacity(l)).collect();
    fill(&cells, columns.parts(), 0, k, &mut rows, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    column_lengths: &[usize],
    pos: usize,
    k: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    let Some(&(i, j)) = cells.get(pos) else {
        out.push(Tableau { rows: rows.clone() });
        return;
    };
    let left = if j > 1 { rows[i - 1][j - 2] } else { 1 };
    let above = if i > 1 { rows[i - 2][j - 1] + 1 } else { 1 };
    // leave room for the strictly increasing entries below in this column
    let lo = left.max(above);
    let hi = k.saturating_sub(column_lengths[j - 1] - i);
    for v in lo..=hi {
        rows[i - 1].push(v);
        fill(cells, column_lengths, pos + 1, k, rows, out);
        rows[i - 1].pop();
    }
}

/// Tangent weights `t_j - t_i` at `p_I` for `i ∈ I`, `j ∉ I`.
pub fn tangent_weights(subset: &PivotSubset, shape: &GrassmannianShape) -> Vec<LinearForm> {
    weights_where(subset, shape, |_, _| true)
}

/// Weights on the tangent space of the Schubert cell: `i > j`.
pub fn cell_weights(subset: &PivotSubset, shape: &GrassmannianShape) -> Vec<LinearForm> {
    weights_where(subset, shape, |i, j| i > j)
}

/// Weights on the normal space to the Schubert variety: `i < j`.
pub fn normal_weights(subset: &PivotSubset, shape: &GrassmannianShape) -> Vec<LinearForm> {
    weights_where(subset, shape, |i, j| i < j)
}

fn weights_where(
    subset: &PivotSubset,
    shape: &GrassmannianShape,
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<LinearForm> {
    let outside = subset.complement(shape);
    subset
        .elements
        .iter()
        .flat_map(|&i| outside.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .map(|(i, j)| LinearForm::weight(j, i))
        .collect()
}

/// Littlewood-Richardson coefficient `c^ν_{λμ}`, by counting skew tableaux
/// of shape `ν/λ` and content `μ` whose reverse reading word is a lattice word.
pub fn littlewood_richardson(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = nu
        .cells()
        .filter(|&(i, j)| j > lambda.part(i))
        .collect();
    let mut filling = vec![vec![0usize; nu.first() + 1]; nu.len() + 1];
    let mut remaining: Vec<usize> = mu.parts.clone();
    let mut count = 0;
    lr_fill(lambda, nu, &cells, 0, &mut filling, &mut remaining, &mut count);
    count
}

fn lr_fill(
    lambda: &Partition,
    nu: &Partition,
    cells: &[(usize, usize)],
    pos: usize,
    filling: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    count: &mut u64,
) {
    let Some(&(i, j)) = cells.get(pos) else {
        if is_lattice(lambda, nu, filling) {
            *count += 1;
        }
        return;
    };
    let left = if j > lambda.part(i) + 1 { filling[i][j - 1] } else { 1 };
    let above = if i > 1 && j > lambda.part(i - 1) { filling[i - 1][j] + 1 } else { 1 };
    for v in left.max(above)..=remaining.len() {
        if remaining[v - 1] == 0 {
            continue;
        }
        remaining[v - 1] -= 1;
        filling[i][j] = v;
        lr_fill(lambda, nu, cells, pos + 1, filling, remaining, count);
        remaining[v - 1] += 1;
    }
    filling[i][j] = 0;
}

/// Reading rows top to bottom, each right to left, every prefix has at
/// least as many `m` as `m + 1`.
fn is_lattice(lambda: &Partition, nu: &Partition, filling: &[Vec<usize>]) -> bool {
    let mut seen = vec![0usize; nu.size() + 2];
    for (i, row) in filling.iter().enumerate().take(nu.len() + 1).skip(1) {
        for j in (lambda.part(i) + 1..=nu.part(i)).rev() {
            let v = row[j];
            seen[v] += 1;
            if v > 1 && seen[v] > seen[v - 1] {
                return false;
            }
        }
    }
    true
}
