//! Exact integer matrices, Smith normal form, and finitely generated abelian
//! group invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; `cols` fixes the width
    /// when `rows` is empty.
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i][j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i][j] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entries[i][j].is_zero()))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `left · M · right = D` with `D` diagonal and `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// The diagonal of `D`, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Recomputes `left · m · right` and compares it with the diagonal.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let d = self.left.mul(m).mul(&self.right);
        let diag_ok = (0..self.diagonal.len()).all(|i| d.entries[i][i] == self.diagonal[i]);
        d.is_diagonal() && diag_ok && divisibility_chain_holds(&self.diagonal)
    }
}

pub fn divisibility_chain_holds(diagonal: &[BigInt]) -> bool {
    diagonal.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        }
    })
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work = m.entries.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let diagonal = reduce(
        &mut work,
        m.rows,
        m.cols,
        Some(&mut left.entries),
        Some(&mut right.entries),
    );
    let form = SmithForm {
        diagonal,
        left,
        right,
    };
    debug_assert!(m.rows * m.cols > 4096 || form.verify(m));
    form
}

/// Diagonal of the Smith normal form only; skips the transforms, which matter
/// for the large boundary matrices.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut work = m.entries.clone();
    reduce(&mut work, m.rows, m.cols, None, None)
}

type Rows = Vec<Vec<BigInt>>;

fn reduce(
    a: &mut Rows,
    rows: usize,
    cols: usize,
    mut left: Option<&mut Rows>,
    mut right: Option<&mut Rows>,
) -> Vec<BigInt> {
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_abs_entry(a, t, rows, cols) else {
            break;
        };
        swap_rows(a, left.as_deref_mut(), t, pi);
        swap_cols(a, right.as_deref_mut(), t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    row_axpy(a, left.as_deref_mut(), i, t, &q, t);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    col_axpy(a, right.as_deref_mut(), j, t, &q, t, rows);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot is left in row or column t.
                let (i, j) = min_abs_in_cross(a, t, rows, cols);
                swap_rows(a, left.as_deref_mut(), t, i);
                swap_cols(a, right.as_deref_mut(), t, j);
                continue;
            }
            if a[t][t].abs().is_one() {
                break;
            }
            match non_multiple(a, t, rows, cols) {
                Some(i) => {
                    let one = BigInt::from(-1);
                    // row_t += row_i
                    row_axpy(a, left.as_deref_mut(), t, i, &one, t);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for v in a[t].iter_mut() {
                *v = -&*v;
            }
            if let Some(l) = left.as_deref_mut() {
                for v in l[t].iter_mut() {
                    *v = -&*v;
                }
            }
        }
        t += 1;
    }
    (0..n).map(|i| a[i][i].clone()).collect()
}

fn min_abs_entry(a: &Rows, t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().take(rows).skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if av.is_one() {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_in_cross(a: &Rows, t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for i in t + 1..rows {
        if !a[i][t].is_zero() && a[i][t].abs() < best.2 {
            best = (i, t, a[i][t].abs());
        }
    }
    for j in t + 1..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < best.2 {
            best = (t, j, a[t][j].abs());
        }
    }
    (best.0, best.1)
}

/// A row below `t` holding an entry not divisible by the pivot.
fn non_multiple(a: &Rows, t: usize, rows: usize, cols: usize) -> Option<usize> {
    let p = &a[t][t];
    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_zero() && !(&a[i][j] % p).is_zero()))
}

fn swap_rows(a: &mut Rows, left: Option<&mut Rows>, i: usize, k: usize) {
    if i != k {
        a.swap(i, k);
        if let Some(l) = left {
            l.swap(i, k);
        }
    }
}

fn swap_cols(a: &mut Rows, right: Option<&mut Rows>, j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        if let Some(r) = right {
            for row in r.iter_mut() {
                row.swap(j, k);
            }
        }
    }
}

/// `row_i -= q · row_src`, touching only columns `≥ from` in the work matrix.
fn row_axpy(a: &mut Rows, left: Option<&mut Rows>, i: usize, src: usize, q: &BigInt, from: usize) {
    let src_row: Vec<(usize, BigInt)> = a[src]
        .iter()
        .enumerate()
        .skip(from)
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect();
    for (j, v) in src_row {
        a[i][j] -= q * v;
    }
    if let Some(l) = left {
        let src_row = l[src].clone();
        for (j, v) in src_row.iter().enumerate() {
            if !v.is_zero() {
                l[i][j] -= q * v;
            }
        }
    }
}

/// `col_j -= q · col_src`, touching only rows `≥ from` in the work matrix.
fn col_axpy(
    a: &mut Rows,
    right: Option<&mut Rows>,
    j: usize,
    src: usize,
    q: &BigInt,
    from: usize,
    rows: usize,
) {
    for row in a.iter_mut().take(rows).skip(from) {
        if !row[src].is_zero() {
            let d = q * &row[src];
            row[j] -= d;
        }
    }
    if let Some(r) = right {
        for row in r.iter_mut() {
            if !row[src].is_zero() {
                let d = q * &row[src];
                row[j] -= d;
            }
        }
    }
}

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with
/// `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    #[serde(rename = "rank")]
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    /// Cokernel of a relation matrix: columns are generators, rows relations.
    pub fn from_relation_matrix(m: &IntMatrix) -> Self {
        let diag = invariant_factors(m);
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        AbelianInvariants {
            torsion,
            free_rank: m.cols() - rank,
        }
    }

    /// Normal form of `ℤ^rank ⊕ ⊕ ℤ/cᵢ` for arbitrary cyclic orders `cᵢ ≥ 1`.
    pub fn from_cyclic_orders(orders: &[u64], free_rank: usize) -> Self {
        let rows: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut r = vec![0; orders.len()];
                r[i] = c as i64;
                r
            })
            .collect();
        let mut inv = Self::from_relation_matrix(&IntMatrix::from_i64_rows(orders.len(), &rows));
        inv.free_rank += free_rank;
        inv
    }

    /// A relation matrix presenting this group (one generator per factor).
    pub fn relation_matrix(&self) -> IntMatrix {
        let k = self.generator_count();
        let rows: Vec<Vec<i64>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut r = vec![0; k];
                r[i] = d as i64;
                r
            })
            .collect();
        IntMatrix::from_i64_rows(k, &rows)
    }

    /// Torsion generators first, then free ones.
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// `A ⊗_ℤ B` via the Kronecker relation matrix.
    pub fn tensor(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let a = self.relation_matrix();
        let b = other.relation_matrix();
        let (na, nb) = (a.cols(), b.cols());
        let mut m = IntMatrix::zeros(a.rows() * nb + na * b.rows(), na * nb);
        let mut r = 0;
        for ra in 0..a.rows() {
            for j in 0..nb {
                for i in 0..na {
                    m.set(r, i * nb + j, a.get(ra, i).clone());
                }
                r += 1;
            }
        }
        for i in 0..na {
            for rb in 0..b.rows() {
                for j in 0..nb {
                    m.set(r, i * nb + j, b.get(rb, j).clone());
                }
                r += 1;
            }
        }
        AbelianInvariants::from_relation_matrix(&m)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
