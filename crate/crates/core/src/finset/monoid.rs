use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::fnenc::permutations;
use crate::fincat::{Verdict, Witness};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table has {rows} rows, expected {expected}")]
    Rows { rows: usize, expected: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("cell ({row},{col}) holds {value}, outside 0..{bound}")]
    OutOfRange { row: usize, col: usize, value: u32, bound: usize },
    #[error("empty monoid table")]
    Empty,
}

fn flatten(rows: &[Vec<u32>], expected_rows: usize, cols: usize, bound: usize) -> Result<Vec<u32>, TableError> {
    if rows.len() != expected_rows {
        return Err(TableError::Rows { rows: rows.len(), expected: expected_rows });
    }
    let mut flat = Vec::with_capacity(expected_rows * cols);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(TableError::RowLength { row, len: r.len(), expected: cols });
        }
        for (col, &value) in r.iter().enumerate() {
            if value as usize >= bound {
                return Err(TableError::OutOfRange { row, col, value, bound });
            }
            flat.push(value);
        }
    }
    Ok(flat)
}

/// A multiplication table on `{0..k-1}` meant to have `0` as its identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonoidTable {
    order: usize,
    table: Vec<u32>,
}

impl fmt::Debug for MonoidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid{:?}", self.rows())
    }
}

impl MonoidTable {
    /// Validates shape and range only; laws are checked by [`MonoidTable::check`].
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, TableError> {
        let order = rows.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        Ok(MonoidTable { order, table: flatten(rows, order, order, order)? })
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u32>) -> Self {
        MonoidTable { order, table }
    }

    pub fn trivial() -> Self {
        MonoidTable::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        MonoidTable::from_flat(n, (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect())
    }

    /// `{1, a}` with `a·a = a`.
    pub fn idem2() -> Self {
        MonoidTable::from_flat(2, vec![0, 1, 1, 1])
    }

    /// `Z2 × Z2`, elements as bit pairs under xor.
    pub fn klein_four() -> Self {
        MonoidTable::from_flat(4, (0..16).map(|i| ((i / 4) ^ (i % 4)) as u32).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn flat(&self) -> &[u32] {
        &self.table
    }

    /// Identity and associativity; the witness names the first bad cell or triple.
    pub fn check(&self) -> Verdict {
        let k = self.order;
        for a in 0..k {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Verdict::fail(Witness::unequal(
                    "0 is a two-sided identity",
                    format!("element {a}"),
                    vec![self.mul(0, a) as u32, self.mul(a, 0) as u32],
                    vec![a as u32, a as u32],
                ));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let lhs = self.mul(self.mul(a, b), c);
                    let rhs = self.mul(a, self.mul(b, c));
                    if lhs != rhs {
                        return Verdict::fail(Witness::unequal(
                            "associativity",
                            format!("({a},{b},{c})"),
                            vec![lhs as u32],
                            vec![rhs as u32],
                        ));
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Every row and every column of the table is a permutation.
    pub fn is_group(&self) -> bool {
        let k = self.order;
        let perm = |cells: Vec<usize>| cells.into_iter().collect::<BTreeSet<_>>().len() == k;
        (0..k).all(|a| perm((0..k).map(|b| self.mul(a, b)).collect()) && perm((0..k).map(|b| self.mul(b, a)).collect()))
    }

    /// Two-sided inverses found by search, independently of [`MonoidTable::is_group`].
    pub fn inverse_table(&self) -> Option<Vec<u32>> {
        (0..self.order)
            .map(|a| (0..self.order).find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0).map(|b| b as u32))
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// The table relabelled along a permutation fixing `0`.
    pub fn relabel(&self, perm: &[u32]) -> MonoidTable {
        let k = self.order;
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[perm[a] as usize * k + perm[b] as usize] = perm[self.mul(a, b)];
            }
        }
        MonoidTable { order: k, table }
    }

    /// Least relabelled table over permutations fixing the identity.
    pub fn canonical(&self) -> MonoidTable {
        identity_fixing_permutations(self.order)
            .iter()
            .map(|p| self.relabel(p))
            .min()
            .expect("at least one permutation")
    }

    pub fn is_isomorphic(&self, other: &MonoidTable) -> bool {
        self.order == other.order && self.canonical() == other.canonical()
    }
}

fn identity_fixing_permutations(k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    permutations(k - 1)
        .into_iter()
        .map(|p| std::iter::once(0).chain(p.values().iter().map(|&v| v + 1)).collect())
        .collect()
}

/// All monoids of order `k` with identity `0`, one per isomorphism class, in canonical order.
pub fn monoids_of_order(k: usize) -> Vec<MonoidTable> {
    assert!(k >= 1, "monoids are nonempty");
    let free = (k - 1) * (k - 1);
    let total = k.checked_pow(free as u32).expect("order too large to enumerate");
    let mut classes = BTreeSet::new();
    for code in 0..total {
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            table[a] = a as u32;
            table[a * k] = a as u32;
        }
        let mut rest = code;
        for a in 1..k {
            for b in 1..k {
                table[a * k + b] = (rest % k) as u32;
                rest /= k;
            }
        }
        let m = MonoidTable::from_flat(k, table);
        if m.check().is_pass() {
            classes.insert(m.canonical());
        }
    }
    classes.into_iter().collect()
}

/// A left action `M × c -> c` stored row by row: `table[m·|c| + x] = m·x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ActionTable {
    monoid: MonoidTable,
    size: usize,
    table: Vec<u32>,
}

impl fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Action{:?}", self.table.chunks(self.size.max(1)).collect::<Vec<_>>())
    }
}

impl ActionTable {
    pub fn from_rows(monoid: MonoidTable, size: usize, rows: &[Vec<u32>]) -> Result<Self, TableError> {
        let table = flatten(rows, monoid.order(), size, size)?;
        Ok(ActionTable { monoid, size, table })
    }

    pub(crate) fn from_flat(monoid: MonoidTable, size: usize, table: Vec<u32>) -> Self {
        ActionTable { monoid, size, table }
    }

    pub fn regular(monoid: &MonoidTable) -> Self {
        ActionTable { monoid: monoid.clone(), size: monoid.order(), table: monoid.flat().to_vec() }
    }

    pub fn trivial(monoid: &MonoidTable, size: usize) -> Self {
        let table = (0..monoid.order() * size).map(|i| (i % size.max(1)) as u32).collect();
        ActionTable { monoid: monoid.clone(), size, table }
    }

    pub fn monoid(&self) -> &MonoidTable {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, m: usize, x: usize) -> usize {
        self.table[m * self.size + x] as usize
    }

    pub fn flat(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.monoid.order()).map(|m| self.table[m * self.size..(m + 1) * self.size].to_vec()).collect()
    }

    /// `e·x = x` and `(mn)·x = m·(n·x)`.
    pub fn check(&self) -> Verdict {
        for x in 0..self.size {
            if self.act(0, x) != x {
                return Verdict::fail(Witness::unequal(
                    "unit acts trivially",
                    format!("point {x}"),
                    vec![self.act(0, x) as u32],
                    vec![x as u32],
                ));
            }
        }
        let k = self.monoid.order();
        for m in 0..k {
            for n in 0..k {
                for x in 0..self.size {
                    let lhs = self.act(self.monoid.mul(m, n), x);
                    let rhs = self.act(m, self.act(n, x));
                    if lhs != rhs {
                        return Verdict::fail(Witness::unequal(
                            "action associativity",
                            format!("({m},{n},{x})"),
                            vec![lhs as u32],
                            vec![rhs as u32],
                        ));
                    }
                }
            }
        }
        Verdict::pass()
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.monoid.elements().filter(|&m| self.act(m, x) == x).collect()
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.monoid.elements().map(|m| self.act(m, x)).collect()
    }

    /// Some point generates everything: `M·x = c`.
    pub fn is_transitive(&self) -> bool {
        (0..self.size).any(|x| self.orbit(x).len() == self.size)
    }

    /// For each pair `(c, c')` exactly one `m` with `m·c = c'`.
    pub fn is_free_transitive(&self) -> bool {
        (0..self.size)
            .all(|c| (0..self.size).all(|d| self.monoid.elements().filter(|&m| self.act(m, c) == d).count() == 1))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.monoid.order()).all(|m| (0..self.size).all(|x| self.act(m, x) == x))
    }

    /// Copy with one cell replaced.
    pub fn with_cell(&self, m: usize, x: usize, value: u32) -> Self {
        let mut out = self.clone();
        out.table[m * self.size + x] = value;
        out
    }
}
