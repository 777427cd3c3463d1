//! Order ideals of a positive system and the data the closed forms are built from:
//! height distributions, dual partitions, signed-graph row counts, the B-partition,
//! the rank reductions and the auxiliary B-ideals attached to a D-ideal.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::counting::{contraction, Oracle};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::roots::{PositiveSystem, RootKind, RootType};

/// Enumeration guard for [`collect_ideals`].
pub const MAX_IDEALS: usize = 10_000_000;

/// Lattice a root list is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Orthonormal coefficients (matrix `T`).
    Integer,
    /// Simple-root coefficients (matrix `S`).
    Root,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Integer => "T",
            Lattice::Root => "S",
        })
    }
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" | "integer" => Ok(Lattice::Integer),
            "S" | "s" | "root" => Ok(Lattice::Root),
            _ => Err(Error::Parse(format!("unknown lattice {s:?} (expected T or S)"))),
        }
    }
}

/// A downward-closed subset of a positive system.
#[derive(Clone)]
pub struct Ideal {
    system: Arc<PositiveSystem>,
    members: u128,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.system.rs_type() == other.system.rs_type()
            && self.system.rank() == other.system.rank()
            && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({}{} {})", self.system.rs_type(), self.system.rank(), self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.kinds().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// `true` iff `mask` is downward closed under the dominance order.
pub fn is_ideal(system: &PositiveSystem, mask: u128) -> bool {
    bits(mask).all(|k| system.below_mask(k) & !mask == 0)
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&k| mask >> k & 1 == 1)
}

/// Per-row incidence counts of the signed graph; row `i` owns the roots whose
/// smaller index is `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraphSummary {
    pub p: Vec<usize>,
    pub p_plus: Vec<usize>,
    pub p_minus: Vec<usize>,
    pub p_zero: Vec<usize>,
}

/// Dual partition, stored sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualPartition(Vec<usize>);

impl DualPartition {
    /// Builds a dual partition from any ordering of its parts.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        DualPartition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }
}

/// Loops, negative (difference) roots and positive (sum) roots of a B-ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPartition {
    pub loops: Vec<RootKind>,
    pub negative: Vec<RootKind>,
    pub positive: Vec<RootKind>,
}

/// Result of stripping the leading rows of an ideal with a sum root.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// The remaining ideal, re-indexed into the smaller system.
    pub reduced: Ideal,
    /// Values `d` of the stripped linear factors `(q - d)`.
    pub prefix: Vec<usize>,
    /// `s` for types B and C, `r` for type D.
    pub parameter: usize,
}

/// The B-ideals a D-ideal with `e_1 +- e_l` splits into.
#[derive(Debug, Clone)]
pub struct DerivedIdeals {
    /// `I` plus every short root, in `B_l`.
    pub k: Ideal,
    /// `U_1, ..., U_l` in `B_{l-1}`.
    pub u: Vec<Ideal>,
    /// The D-parameter `s` used to classify the `U_k`.
    pub s: usize,
}

impl Ideal {
    /// Wraps `mask` after checking downward closure.
    pub fn from_mask(system: Arc<PositiveSystem>, mask: u128) -> Result<Ideal> {
        if mask & !system.full_mask() != 0 {
            return Err(Error::Domain("mask has bits beyond the root list".into()));
        }
        if !is_ideal(&system, mask) {
            return Err(Error::Domain("subset is not downward closed".into()));
        }
        Ok(Ideal {
            system,
            members: mask,
        })
    }

    /// The ideal consisting of exactly the given roots.
    pub fn from_kinds(system: Arc<PositiveSystem>, kinds: &[RootKind]) -> Result<Ideal> {
        let mut mask = 0u128;
        for &k in kinds {
            let idx = system.index_of(k).ok_or_else(|| {
                Error::Domain(format!(
                    "{k} is not in {}{}",
                    system.rs_type(),
                    system.rank()
                ))
            })?;
            mask |= 1 << idx;
        }
        Self::from_mask(system, mask)
    }

    /// Smallest ideal containing the given roots.
    pub fn generated_by(system: Arc<PositiveSystem>, generators: &[usize]) -> Ideal {
        let members = generators
            .iter()
            .fold(0u128, |m, &g| m | system.below_mask(g));
        Ideal { system, members }
    }

    /// All roots of height at most `h`.
    pub fn height_cut(system: Arc<PositiveSystem>, h: u32) -> Ideal {
        let members = system
            .roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.height <= h)
            .fold(0u128, |m, (k, _)| m | 1 << k);
        Ideal { system, members }
    }

    pub fn empty(system: Arc<PositiveSystem>) -> Ideal {
        Ideal { system, members: 0 }
    }

    pub fn full(system: Arc<PositiveSystem>) -> Ideal {
        let members = system.full_mask();
        Ideal { system, members }
    }

    /// Parses `ht<=H`, `gen:<root>,<root>,...`, `full` or `empty`.
    pub fn parse_spec(system: Arc<PositiveSystem>, spec: &str) -> Result<Ideal> {
        match spec {
            "full" => return Ok(Self::full(system)),
            "empty" => return Ok(Self::empty(system)),
            _ => {}
        }
        if let Some(h) = spec.strip_prefix("ht<=") {
            let h: u32 = h
                .parse()
                .map_err(|_| Error::Parse(format!("bad height bound in {spec:?}")))?;
            return Ok(Self::height_cut(system, h));
        }
        if let Some(list) = spec.strip_prefix("gen:") {
            let gens = list
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|lit| system.parse_root(lit))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::generated_by(system, &gens));
        }
        Err(Error::Parse(format!(
            "ideal spec {spec:?} must be ht<=H, gen:<roots>, full or empty"
        )))
    }

    pub fn system(&self) -> &Arc<PositiveSystem> {
        &self.system
    }

    pub fn rs_type(&self) -> RootType {
        self.system.rs_type()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn mask(&self) -> u128 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members >> idx & 1 == 1
    }

    pub fn contains_kind(&self, kind: RootKind) -> bool {
        self.system.index_of(kind).is_some_and(|k| self.contains(k))
    }

    /// Member indices in system order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        bits(self.members).take_while(|&k| k < self.system.len())
    }

    pub fn kinds(&self) -> impl Iterator<Item = RootKind> + '_ {
        self.indices().map(|k| self.system.root(k).kind)
    }

    pub fn has_sum_root(&self) -> bool {
        self.kinds().any(RootKind::is_sum)
    }

    /// `(i_1, ..., i_M)`: members per height, empty for the empty ideal.
    pub fn height_distribution(&self) -> Vec<usize> {
        let mut dist: Vec<usize> = Vec::new();
        for k in self.indices() {
            let h = self.system.root(k).height as usize;
            if dist.len() < h {
                dist.resize(h, 0);
            }
            dist[h - 1] += 1;
        }
        dist
    }

    /// Conjugate of the height distribution, padded with zeros to `rank` parts.
    pub fn dual_partition(&self) -> DualPartition {
        let dist = self.height_distribution();
        let parts = (1..=self.rank())
            .map(|j| dist.iter().filter(|&&c| c >= j).count())
            .collect();
        DualPartition::from_parts(parts)
    }

    /// Signed-graph row counts. Not defined for type A.
    pub fn signed_graph(&self) -> Result<SignedGraphSummary> {
        if self.rs_type() == RootType::A {
            return Err(Error::Unsupported(
                "signed graphs are defined for types B, C and D".into(),
            ));
        }
        let l = self.rank();
        let mut sg = SignedGraphSummary {
            p: vec![0; l],
            p_plus: vec![0; l],
            p_minus: vec![0; l],
            p_zero: vec![0; l],
        };
        for kind in self.kinds() {
            let i = kind.first_index() - 1;
            match kind {
                RootKind::Sum(..) => sg.p_plus[i] += 1,
                RootKind::Diff(..) => sg.p_minus[i] += 1,
                RootKind::Short(_) | RootKind::Long(_) => sg.p_zero[i] += 1,
            }
            sg.p[i] += 1;
        }
        Ok(sg)
    }

    /// Splits a B-ideal into loops, differences and sums.
    pub fn b_partition(&self) -> Result<BPartition> {
        self.expect_type(RootType::B, "B-partition")?;
        let mut part = BPartition {
            loops: vec![],
            negative: vec![],
            positive: vec![],
        };
        for kind in self.kinds() {
            match kind {
                RootKind::Short(_) => part.loops.push(kind),
                RootKind::Diff(..) => part.negative.push(kind),
                RootKind::Sum(..) => part.positive.push(kind),
                RootKind::Long(_) => unreachable!(),
            }
        }
        Ok(part)
    }

    /// For a B-ideal containing `e_1`: drops the short roots and re-houses the rest in `D_l`.
    pub fn strip_loops(&self) -> Result<Ideal> {
        self.expect_type(RootType::B, "strip_loops")?;
        if !self.contains_kind(RootKind::Short(1)) {
            return Err(Error::Domain("strip_loops needs e1 in the ideal".into()));
        }
        let d = Arc::new(PositiveSystem::subsystem(RootType::D, self.rank())?);
        let kinds: Vec<RootKind> = self.kinds().filter(|k| !k.is_loop()).collect();
        Ideal::from_kinds(d, &kinds)
            .map_err(|e| Error::Mismatch(format!("stripped B-ideal is not a D-ideal: {e}")))
    }

    /// `s = min{k : e_k in I}` (B) or `min{k : 2e_k in I}` (C), when defined.
    pub fn loop_parameter(&self) -> Option<usize> {
        self.kinds()
            .filter(|k| k.is_loop())
            .map(RootKind::first_index)
            .min()
    }

    /// `s = min{2 <= k <= l : e_{k-1} + e_k in I}` for a D-ideal.
    pub fn d_parameter_s(&self) -> Option<usize> {
        if self.rs_type() != RootType::D {
            return None;
        }
        (2..=self.rank()).find(|&k| self.contains_kind(RootKind::Sum(k - 1, k)))
    }

    /// `r = min{k : e_k + e_l in I and e_k - e_l in I}` for a D-ideal.
    pub fn d_parameter_r(&self) -> Option<usize> {
        if self.rs_type() != RootType::D {
            return None;
        }
        let l = self.rank();
        (1..l).find(|&k| {
            self.contains_kind(RootKind::Sum(k, l)) && self.contains_kind(RootKind::Diff(k, l))
        })
    }

    /// Strips the rows before `s` (B, C) or `r` (D).
    ///
    /// Returns [`Error::TypeACase`] when the ideal has no sum root (for C: no
    /// long root), and for a D-ideal missing `e_{l-1} - e_l`; in both cases
    /// the count is the product over the dual partition.
    pub fn reduction(&self) -> Result<Reduction> {
        let sg = match self.rs_type() {
            RootType::A => return Err(Error::TypeACase),
            _ => self.signed_graph()?,
        };
        let parameter = match self.rs_type() {
            RootType::B if self.has_sum_root() => self.loop_parameter(),
            RootType::C => self.loop_parameter(),
            RootType::D if self.has_sum_root() => self.d_parameter_r(),
            _ => None,
        }
        .ok_or(Error::TypeACase)?;
        let shift = parameter - 1;
        let sub = Arc::new(PositiveSystem::subsystem(
            self.rs_type(),
            self.rank() - shift,
        )?);
        let kinds: Vec<RootKind> = self
            .kinds()
            .filter(|k| k.first_index() > shift)
            .map(|k| k.shift_down(shift))
            .collect();
        let reduced = Ideal::from_kinds(sub, &kinds)?;
        Ok(Reduction {
            reduced,
            prefix: sg.p[..shift].to_vec(),
            parameter,
        })
    }

    /// The ideals `K` and `U_1, ..., U_l` for a D-ideal containing `e_1 +- e_l`.
    ///
    /// Each `U_k` is rebuilt from its signed-graph vector and then checked
    /// against the contraction of `T_{I + {e_l, ..., e_k}}` by `e_k`, by
    /// point counts at `q = 3, 4, 5`.
    pub fn derived_ideals_d(&self) -> Result<DerivedIdeals> {
        self.expect_type(RootType::D, "derived_ideals_d")?;
        let l = self.rank();
        if !(self.contains_kind(RootKind::Sum(1, l)) && self.contains_kind(RootKind::Diff(1, l)))
        {
            return Err(Error::Domain(
                "derived ideals need e1+el and e1-el in the ideal (reduce first)".into(),
            ));
        }
        let p = self.signed_graph()?.p;
        let s = self
            .d_parameter_s()
            .expect("e1+el in I forces e_(l-1)+e_l in I");

        let b_l = Arc::new(PositiveSystem::subsystem(RootType::B, l)?);
        let mut k_kinds: Vec<RootKind> = self.kinds().collect();
        k_kinds.extend((1..=l).map(RootKind::Short));
        let k = Ideal::from_kinds(b_l, &k_kinds)
            .map_err(|e| Error::Mismatch(format!("K is not an ideal: {e}")))?;

        let b_sub = Arc::new(PositiveSystem::subsystem(RootType::B, l - 1)?);
        let mut u = Vec::with_capacity(l);
        for kk in 1..=l {
            let sg: Vec<usize> = if kk + 2 <= s {
                (1..=l)
                    .filter(|&i| i != kk)
                    .map(|i| if i < kk { p[i - 1] } else { p[i - 1] + 1 })
                    .collect()
            } else {
                let tau = |n: usize| usize::from(self.contains_kind(RootKind::Sum(n, kk)));
                (1..s - 1)
                    .map(|n| p[n - 1] - tau(n))
                    .chain((s - 1..l).map(|i| p[i - 1] - 1))
                    .collect()
            };
            let ideal = b_ideal_from_rows(b_sub.clone(), &sg)
                .map_err(|e| Error::Mismatch(format!("U_{kk} from {sg:?}: {e}")))?;
            u.push(ideal);
        }
        let derived = DerivedIdeals { k, u, s };
        self.check_contractions(&derived)?;
        Ok(derived)
    }

    /// Compares each rebuilt `U_k` with its contraction list by point counts.
    fn check_contractions(&self, derived: &DerivedIdeals) -> Result<()> {
        let oracle = Oracle::default();
        for (kk, u) in (1..=self.rank()).zip(&derived.u) {
            let a_k = contraction_list(self, kk)?;
            let u_t = u.lattice_matrix(Lattice::Integer);
            for q in [3u64, 4, 5] {
                let (lhs, rhs) = (oracle.count(&a_k, q)?, oracle.count(&u_t, q)?);
                if lhs != rhs {
                    return Err(Error::Mismatch(format!(
                        "U_{kk} = {u} counts {rhs} at q={q}, contraction list counts {lhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coefficient matrix (rank rows) of the members in the chosen lattice.
    ///
    /// For type A the orthonormal matrix drops the last coordinate, which is
    /// an isomorphism from the root lattice onto `Z^l`.
    pub fn lattice_matrix(&self, lattice: Lattice) -> IntegerMatrix {
        let l = self.rank();
        let cols: Vec<Vec<i64>> = self
            .indices()
            .map(|k| {
                let r = self.system.root(k);
                match lattice {
                    Lattice::Root => r.simple_coords.clone(),
                    Lattice::Integer => r.eps_coords[..l].to_vec(),
                }
            })
            .collect();
        IntegerMatrix::from_columns(l, &cols).expect("uniform column length")
    }

    /// Last row of `S`: the offsets `g . S` with `g = (0, ..., 0, 1)`.
    pub fn last_simple_row(&self) -> Vec<i64> {
        let l = self.rank();
        self.indices()
            .map(|k| self.system.root(k).simple_coords[l - 1])
            .collect()
    }

    fn expect_type(&self, t: RootType, op: &str) -> Result<()> {
        if self.rs_type() == t {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{op} needs a type {t} ideal, got {}{}",
                self.rs_type(),
                self.rank()
            )))
        }
    }
}

/// `T_{I + {e_l, ..., e_k}}` contracted by `e_k`, for a D-ideal `I`.
pub fn contraction_list(ideal: &Ideal, k: usize) -> Result<IntegerMatrix> {
    let l = ideal.rank();
    if !(1..=l).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, max: l });
    }
    let mut cols: Vec<Vec<i64>> = ideal
        .indices()
        .map(|idx| ideal.system().root(idx).eps_coords.clone())
        .collect();
    for j in (k..=l).rev() {
        let mut e = vec![0; l];
        e[j - 1] = 1;
        cols.push(e);
    }
    let t = IntegerMatrix::from_columns(l, &cols)?;
    contraction(&t, t.cols() - 1)
}

/// Row `i` of `Phi^+(B_m)` in increasing height:
/// `e_i - e_{i+1}, ..., e_i - e_m, e_i, e_i + e_m, ..., e_i + e_{i+1}`.
pub fn b_row_chain(m: usize, i: usize) -> Vec<RootKind> {
    (i + 1..=m)
        .map(|j| RootKind::Diff(i, j))
        .chain(std::iter::once(RootKind::Short(i)))
        .chain((i + 1..=m).rev().map(|j| RootKind::Sum(i, j)))
        .collect()
}

/// The subset of `Phi^+(B_m)` taking the first `rows[i]` roots of each row chain,
/// provided it is an ideal.
pub fn b_ideal_from_rows(system: Arc<PositiveSystem>, rows: &[usize]) -> Result<Ideal> {
    let m = system.rank();
    if system.rs_type() != RootType::B || rows.len() != m {
        return Err(Error::Domain(format!(
            "need {} row lengths for B{m}, got {}",
            m,
            rows.len()
        )));
    }
    let mut kinds = Vec::new();
    for (i, &len) in (1..=m).zip(rows) {
        let chain = b_row_chain(m, i);
        if len > chain.len() {
            return Err(Error::Domain(format!(
                "row {i} of B{m} has {} roots, asked for {len}",
                chain.len()
            )));
        }
        kinds.extend_from_slice(&chain[..len]);
    }
    Ideal::from_kinds(system, &kinds)
}

/// Depth-first enumeration of all ideals; each appears exactly once.
pub struct IdealIter {
    system: Arc<PositiveSystem>,
    stack: Vec<(usize, u128)>,
}

impl Iterator for IdealIter {
    type Item = Ideal;

    fn next(&mut self) -> Option<Ideal> {
        let n = self.system.len();
        while let Some((pos, mask)) = self.stack.pop() {
            if pos == n {
                return Some(Ideal {
                    system: self.system.clone(),
                    members: mask,
                });
            }
            // roots are height-sorted, so everything below `pos` is already decided
            let strictly_below = self.system.below_mask(pos) & !(1u128 << pos);
            if strictly_below & !mask == 0 {
                self.stack.push((pos + 1, mask | 1u128 << pos));
            }
            self.stack.push((pos + 1, mask));
        }
        None
    }
}

pub fn enumerate_ideals(system: &Arc<PositiveSystem>) -> IdealIter {
    IdealIter {
        system: system.clone(),
        stack: vec![(0, 0)],
    }
}

/// All ideals, failing once more than [`MAX_IDEALS`] are produced.
pub fn collect_ideals(system: &Arc<PositiveSystem>) -> Result<Vec<Ideal>> {
    collect_ideals_limited(system, MAX_IDEALS)
}

pub fn collect_ideals_limited(system: &Arc<PositiveSystem>, limit: usize) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for ideal in enumerate_ideals(system) {
        if out.len() == limit {
            return Err(Error::Capacity {
                estimate: limit as u128 + 1,
                budget: limit as u128,
            });
        }
        out.push(ideal);
    }
    Ok(out)
}

/// Every downward-closed subset by scanning all `2^n` subsets; for small systems only.
pub fn brute_force_ideal_masks(system: &PositiveSystem) -> Result<Vec<u128>> {
    let n = system.len();
    if n > 24 {
        return Err(Error::Capacity {
            estimate: 1u128 << n,
            budget: 1 << 24,
        });
    }
    Ok((0..1u128 << n).filter(|&m| is_ideal(system, m)).collect())
}
