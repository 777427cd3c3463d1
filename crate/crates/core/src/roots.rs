//! Positive systems of the classical root systems.
//!
//! Roots are stored in two coordinate systems: the orthonormal basis
//! `e_1, ..., e_n` and the simple-root basis `a_1, ..., a_l`. The simple roots are
//!
//! | type | `a_i` (i < l)   | `a_l`             |
//! |------|-----------------|-------------------|
//! | A    | `e_i - e_{i+1}` | `e_l - e_{l+1}`   |
//! | B    | `e_i - e_{i+1}` | `e_l`             |
//! | C    | `e_i - e_{i+1}` | `2e_l`            |
//! | D    | `e_i - e_{i+1}` | `e_{l-1} + e_l`   |
//!
//! Type A of rank `l` lives on `l + 1` orthonormal coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Largest number of positive roots a system may have (ideals are `u128` bitsets).
pub const MAX_ROOTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl RootType {
    pub const ALL: [RootType; 4] = [RootType::A, RootType::B, RootType::C, RootType::D];

    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
        }
    }

    /// Smallest rank accepted by [`build_positive_system`].
    pub fn min_rank(self) -> usize {
        match self {
            RootType::A => 1,
            RootType::B | RootType::C => 2,
            RootType::D => 3,
        }
    }

    /// Largest rank whose positive system fits in [`MAX_ROOTS`].
    pub fn max_rank(self) -> usize {
        match self {
            RootType::A => 15,
            _ => 11,
        }
    }

    /// Smallest rank for which the construction is well defined at all.
    /// Reductions produce such degenerate subsystems (`B_1`, `C_1`, `D_2`).
    fn min_internal_rank(self) -> usize {
        match self {
            RootType::D => 2,
            _ => 1,
        }
    }

    pub fn positive_root_count(self, rank: usize) -> usize {
        match self {
            RootType::A => rank * (rank + 1) / 2,
            RootType::B | RootType::C => rank * rank,
            RootType::D => rank * (rank - 1),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootType::A),
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            "D" | "d" => Ok(RootType::D),
            other => Err(Error::Parse(format!("unknown root system type {other:?}"))),
        }
    }
}

/// The shape of a positive root; indices are 1-based with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    /// `e_i - e_j`
    Diff(usize, usize),
    /// `e_i + e_j`
    Sum(usize, usize),
    /// `e_i`, type B only
    Short(usize),
    /// `2e_i`, type C only
    Long(usize),
}

impl RootKind {
    /// The row of the signed graph this root is attributed to.
    pub fn first_index(self) -> usize {
        match self {
            RootKind::Diff(i, _) | RootKind::Sum(i, _) | RootKind::Short(i) | RootKind::Long(i) => {
                i
            }
        }
    }

    pub fn is_sum(self) -> bool {
        matches!(self, RootKind::Sum(..))
    }

    pub fn is_loop(self) -> bool {
        matches!(self, RootKind::Short(_) | RootKind::Long(_))
    }

    fn sort_key(self) -> (usize, usize, u8) {
        match self {
            RootKind::Diff(i, j) => (i, j, 0),
            RootKind::Sum(i, j) => (i, j, 1),
            RootKind::Short(i) => (i, 0, 2),
            RootKind::Long(i) => (i, 0, 3),
        }
    }

    /// Shifts every index down by `by` (used when re-housing a root in a subsystem).
    pub(crate) fn shift_down(self, by: usize) -> RootKind {
        match self {
            RootKind::Diff(i, j) => RootKind::Diff(i - by, j - by),
            RootKind::Sum(i, j) => RootKind::Sum(i - by, j - by),
            RootKind::Short(i) => RootKind::Short(i - by),
            RootKind::Long(i) => RootKind::Long(i - by),
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootKind::Diff(i, j) => write!(f, "e{i}-e{j}"),
            RootKind::Sum(i, j) => write!(f, "e{i}+e{j}"),
            RootKind::Short(i) => write!(f, "e{i}"),
            RootKind::Long(i) => write!(f, "2e{i}"),
        }
    }
}

impl FromStr for RootKind {
    type Err = Error;

    /// Parses `e<i>-e<j>`, `e<i>+e<j>`, `e<i>` or `2e<i>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad root literal {s:?}"));
        let index = |t: &str| -> Result<usize> {
            let n = t.strip_prefix('e').ok_or_else(bad)?;
            if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            match n.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(bad()),
            }
        };
        if s.is_empty() || !s.is_ascii() {
            return Err(bad());
        }
        if let Some(rest) = s.strip_prefix("2e") {
            return Ok(RootKind::Long(index(&format!("e{rest}"))?));
        }
        if let Some(p) = s[1..].find(['+', '-']).map(|p| p + 1) {
            let (i, j) = (index(&s[..p])?, index(&s[p + 1..])?);
            if i >= j {
                return Err(Error::Parse(format!("{s:?}: need i < j")));
            }
            return Ok(if &s[p..=p] == "+" {
                RootKind::Sum(i, j)
            } else {
                RootKind::Diff(i, j)
            });
        }
        Ok(RootKind::Short(index(s)?))
    }
}

/// A positive root with both coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub kind: RootKind,
    pub rs_type: RootType,
    pub rank: usize,
    pub eps_coords: Vec<i64>,
    pub simple_coords: Vec<i64>,
    pub height: u32,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// Which coordinates [`coefficient_matrix`] reads off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Coefficients over the simple roots.
    Simple,
    /// Coefficients over `e_1, ..., e_n`.
    Orthonormal,
}

/// A classical positive system with its dominance order.
#[derive(Debug, Clone)]
pub struct PositiveSystem {
    rs_type: RootType,
    rank: usize,
    roots: Vec<Root>,
    index: HashMap<RootKind, usize>,
    // below[i]: bitset of roots r with roots[i] >= r, including i itself
    below: Vec<u128>,
}

/// Builds `Phi^+` of the given type and rank.
pub fn build_positive_system(rs_type: RootType, rank: usize) -> Result<PositiveSystem> {
    if rank < rs_type.min_rank() || rank > rs_type.max_rank() {
        return Err(range_error(rs_type, rank, rs_type.min_rank()));
    }
    Ok(PositiveSystem::construct(rs_type, rank))
}

fn range_error(rs_type: RootType, rank: usize, min: usize) -> Error {
    let need = match (min, rs_type.max_rank()) {
        (1, 15) => "1..=15",
        (1, _) => "1..=11",
        (2, _) => "2..=11",
        _ => "3..=11",
    };
    Error::Range {
        rs_type: rs_type.letter(),
        rank,
        need,
    }
}

impl PositiveSystem {
    /// Like [`build_positive_system`] but also accepts the degenerate ranks
    /// `B_1`, `C_1` and `D_2` that appear as reduced subsystems.
    pub fn subsystem(rs_type: RootType, rank: usize) -> Result<PositiveSystem> {
        if rank < rs_type.min_internal_rank() || rank > rs_type.max_rank() {
            return Err(range_error(rs_type, rank, rs_type.min_internal_rank()));
        }
        Ok(Self::construct(rs_type, rank))
    }

    fn construct(rs_type: RootType, rank: usize) -> PositiveSystem {
        let l = rank;
        let mut kinds = Vec::new();
        let n = if rs_type == RootType::A { l + 1 } else { l };
        for i in 1..=n {
            for j in i + 1..=n {
                kinds.push(RootKind::Diff(i, j));
                if rs_type != RootType::A {
                    kinds.push(RootKind::Sum(i, j));
                }
            }
            match rs_type {
                RootType::B => kinds.push(RootKind::Short(i)),
                RootType::C => kinds.push(RootKind::Long(i)),
                _ => {}
            }
        }
        let mut roots: Vec<Root> = kinds
            .into_iter()
            .map(|kind| {
                let eps_coords = eps_coords(kind, n);
                let simple_coords = simple_coords(rs_type, l, kind);
                let height = simple_coords.iter().sum::<i64>() as u32;
                Root {
                    kind,
                    rs_type,
                    rank,
                    eps_coords,
                    simple_coords,
                    height,
                }
            })
            .collect();
        roots.sort_by_key(|r| (r.height, r.kind.sort_key()));
        let index = roots.iter().enumerate().map(|(k, r)| (r.kind, k)).collect();
        let below = roots
            .iter()
            .map(|hi| {
                roots
                    .iter()
                    .enumerate()
                    .filter(|(_, lo)| dominates_coords(&hi.simple_coords, &lo.simple_coords))
                    .fold(0u128, |m, (k, _)| m | (1u128 << k))
            })
            .collect();
        PositiveSystem {
            rs_type,
            rank,
            roots,
            index,
            below,
        }
    }

    pub fn rs_type(&self) -> RootType {
        self.rs_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of orthonormal coordinates (`rank + 1` for type A).
    pub fn ambient_dim(&self) -> usize {
        match self.rs_type {
            RootType::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn index_of(&self, kind: RootKind) -> Option<usize> {
        self.index.get(&kind).copied()
    }

    /// Parses a root literal and looks it up in this system.
    pub fn parse_root(&self, literal: &str) -> Result<usize> {
        let kind: RootKind = literal.parse()?;
        self.index_of(kind).ok_or_else(|| {
            Error::Parse(format!(
                "{literal} is not a positive root of {}{}",
                self.rs_type, self.rank
            ))
        })
    }

    /// `roots[a] >= roots[b]`: the difference has nonnegative simple coordinates.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.below[a] >> b & 1 == 1
    }

    /// Bitset of all roots dominated by `roots[idx]`, itself included.
    pub fn below_mask(&self, idx: usize) -> u128 {
        self.below[idx]
    }

    /// Bitset of all roots.
    pub fn full_mask(&self) -> u128 {
        if self.roots.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.roots.len()) - 1
        }
    }

    /// Indices of the simple roots (height 1).
    pub fn simple_roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.roots[k].height == 1).collect()
    }

    /// Roots covered by `roots[idx]` in the Hasse diagram.
    pub fn lower_covers(&self, idx: usize) -> Vec<usize> {
        let h = self.roots[idx].height;
        (0..self.len())
            .filter(|&k| self.roots[k].height + 1 == h && self.dominates(idx, k))
            .collect()
    }

    /// Matrix `P` with `T = P S`: column `k` is the orthonormal expansion of `a_k`.
    pub fn basis_change_matrix(&self) -> IntegerMatrix {
        basis_change(self.rs_type, self.rank)
    }
}

fn dominates_coords(hi: &[i64], lo: &[i64]) -> bool {
    hi.iter().zip(lo).all(|(a, b)| a >= b)
}

fn eps_coords(kind: RootKind, n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    match kind {
        RootKind::Diff(i, j) => {
            v[i - 1] = 1;
            v[j - 1] = -1;
        }
        RootKind::Sum(i, j) => {
            v[i - 1] = 1;
            v[j - 1] = 1;
        }
        RootKind::Short(i) => v[i - 1] = 1,
        RootKind::Long(i) => v[i - 1] = 2,
    }
    v
}

fn simple_coords(rs_type: RootType, l: usize, kind: RootKind) -> Vec<i64> {
    let mut v = vec![0i64; l];
    // 1-based inclusive range fill
    let mut fill = |from: usize, to: usize, c: i64| {
        for k in from..=to {
            v[k - 1] += c;
        }
    };
    match (rs_type, kind) {
        (RootType::D, RootKind::Diff(i, j)) if j == l => fill(i, l - 1, 1),
        (RootType::D, RootKind::Sum(i, j)) if j == l => {
            if i + 2 <= l {
                fill(i, l - 2, 1);
            }
            fill(l, l, 1);
        }
        (RootType::D, RootKind::Sum(i, j)) => {
            fill(i, j - 1, 1);
            if j + 1 < l {
                fill(j, l - 2, 2);
            }
            fill(l - 1, l, 1);
        }
        (_, RootKind::Diff(i, j)) => fill(i, j - 1, 1),
        (RootType::B, RootKind::Short(i)) => fill(i, l, 1),
        (RootType::B, RootKind::Sum(i, j)) => {
            fill(i, j - 1, 1);
            fill(j, l, 2);
        }
        (RootType::C, RootKind::Long(i)) => {
            if i < l {
                fill(i, l - 1, 2);
            }
            fill(l, l, 1);
        }
        (RootType::C, RootKind::Sum(i, j)) => {
            fill(i, j - 1, 1);
            if j < l {
                fill(j, l - 1, 2);
            }
            fill(l, l, 1);
        }
        (t, k) => unreachable!("{k} is not a root of type {t}"),
    }
    v
}

fn basis_change(rs_type: RootType, l: usize) -> IntegerMatrix {
    let n = if rs_type == RootType::A { l + 1 } else { l };
    let mut p = IntegerMatrix::zeros(n, l);
    for k in 1..l {
        p.set(k - 1, k - 1, 1);
        p.set(k, k - 1, -1);
    }
    match rs_type {
        RootType::A => {
            p.set(l - 1, l - 1, 1);
            p.set(l, l - 1, -1);
        }
        RootType::B => p.set(l - 1, l - 1, 1),
        RootType::C => p.set(l - 1, l - 1, 2),
        RootType::D => {
            p.set(l - 2, l - 1, 1);
            p.set(l - 1, l - 1, 1);
        }
    }
    p
}

/// Matrix whose j-th column is the chosen coordinate vector of the j-th root.
///
/// All roots must come from one positive system.
pub fn coefficient_matrix<'a, I>(roots: I, basis: Basis) -> Result<IntegerMatrix>
where
    I: IntoIterator<Item = &'a Root>,
{
    let roots: Vec<&Root> = roots.into_iter().collect();
    let Some(first) = roots.first() else {
        return Err(Error::Domain(
            "empty root list: the system (and so the row count) is unknown".into(),
        ));
    };
    if let Some(r) = roots
        .iter()
        .find(|r| r.rs_type != first.rs_type || r.rank != first.rank)
    {
        return Err(Error::Domain(format!(
            "mixed systems: {}{} and {}{}",
            first.rs_type, first.rank, r.rs_type, r.rank
        )));
    }
    let cols: Vec<Vec<i64>> = roots
        .iter()
        .map(|r| match basis {
            Basis::Simple => r.simple_coords.clone(),
            Basis::Orthonormal => r.eps_coords.clone(),
        })
        .collect();
    IntegerMatrix::from_columns(cols[0].len(), &cols)
}

/// `P` with `T_Psi = P S_Psi` for every root list of the system.
pub fn basis_change_matrix(rs_type: RootType, rank: usize) -> Result<IntegerMatrix> {
    build_positive_system(rs_type, rank).map(|s| s.basis_change_matrix())
}
