//! Brute-force counting of nonattacking configurations and the census of their
//! combinatorial types. Everything symbolic elsewhere in the crate is checked
//! against the numbers produced here.
//!
//! The counter enumerates unordered placements of all but the last two pieces
//! as increasing index sequences over the lexicographically sorted cells, keeping
//! for every cell the number of placed pieces attacking it and for every move
//! line its number of free cells. The last two pieces are then counted in closed
//! form: a pair of distinct free cells attacks iff both lie on one move line, and
//! non-parallel lines meet at most once, so
//!
//! ```text
//! free pairs = C(|F|, 2) - sum over lines L of C(|L ∩ F|, 2).
//! ```
//!
//! Each `q`-set is reached once per choice of its final pair, so the sum over
//! `(q-2)`-sets is divided by `C(q, 2)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combin::{factorial, permutations};
use crate::error::{Error, Result};
use crate::geometry::{interior_lattice_points, BoardPolygon, Configuration, MoveSet, Point};

/// Work cap for the enumerators, in elementary attack tests. The search is
/// refused when `N^min(q,3)` exceeds it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000_000);
    pub const UNLIMITED: Budget = Budget(u128::MAX);

    pub fn check(&self, what: &str, points: usize, q: u64) -> Result<()> {
        let needed = (points as u128).saturating_pow(q.min(3) as u32);
        if needed > self.0 {
            return Err(Error::Capacity { what: what.into(), needed, budget: self.0 });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// How the rows of a [`CountTable`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    BruteForce,
    Reconstruction,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::Reconstruction => "reconstruction",
        }
    }
}

/// Labelled and unlabelled counts at one dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count {
    pub labelled: BigUint,
    pub unlabelled: BigUint,
}

impl Count {
    pub fn from_unlabelled(q: u64, unlabelled: BigUint) -> Self {
        Count { labelled: &unlabelled * factorial(q), unlabelled }
    }
}

/// `o_P(q;n)` and `u_P(q;n)` over a range of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub piece: String,
    pub moves: MoveSet,
    pub board: BoardPolygon,
    pub q: u64,
    pub rows: BTreeMap<u64, Count>,
    pub method: Method,
}

impl CountTable {
    pub fn new(moves: &MoveSet, board: &BoardPolygon, q: u64, method: Method) -> Self {
        CountTable {
            piece: moves.label(),
            moves: moves.clone(),
            board: board.clone(),
            q,
            rows: BTreeMap::new(),
            method,
        }
    }

    pub fn insert(&mut self, n: u64, count: Count) {
        self.rows.insert(n, count);
    }

    pub fn unlabelled(&self, n: u64) -> Option<&BigUint> {
        self.rows.get(&n).map(|c| &c.unlabelled)
    }

    pub fn labelled(&self, n: u64) -> Option<&BigUint> {
        self.rows.get(&n).map(|c| &c.labelled)
    }

    /// `labelled = q!·unlabelled` in every row.
    pub fn is_consistent(&self) -> bool {
        let f = factorial(self.q);
        self.rows.values().all(|c| c.labelled == &c.unlabelled * &f)
    }
}

/// Precomputed cell and line structure of one dilated board for one piece.
#[derive(Debug, Clone)]
pub struct Kernel {
    points: Vec<Point>,
    moves: usize,
    /// `line_of[p * moves + r]` is the global id of the `r`-line through cell `p`.
    line_of: Vec<u32>,
    line_start: Vec<u32>,
    line_cells: Vec<u32>,
}

/// Mutable search state: attack multiplicities per cell and free cells per line.
#[derive(Debug, Clone)]
pub struct SearchState {
    attacked: Vec<u16>,
    line_free: Vec<u32>,
    free: u64,
    /// Sum over lines of `C(free cells on line, 2)`.
    attacking_free_pairs: u128,
}

impl SearchState {
    #[inline]
    pub fn is_free(&self, p: usize) -> bool {
        self.attacked[p] == 0
    }

    /// Unordered nonattacking pairs of free cells.
    #[inline]
    pub fn free_pairs(&self) -> u128 {
        let f = self.free as u128;
        f * f.saturating_sub(1) / 2 - self.attacking_free_pairs
    }

    pub fn free_cells(&self) -> u64 {
        self.free
    }
}

impl Kernel {
    /// Cells of `t·B°` and their move lines.
    pub fn new(ms: &MoveSet, board: &BoardPolygon, t: u64) -> Self {
        Self::from_points(ms, interior_lattice_points(board, t))
    }

    pub fn from_points(ms: &MoveSet, points: Vec<Point>) -> Self {
        let m = ms.len();
        let mut line_of = alloc::vec![0u32; points.len() * m];
        let mut next_id = 0u32;
        for (r, mv) in ms.moves().iter().enumerate() {
            let mut ids: BTreeMap<i64, u32> = BTreeMap::new();
            for (p, &pt) in points.iter().enumerate() {
                let id = *ids.entry(mv.key(pt)).or_insert_with(|| {
                    next_id += 1;
                    next_id - 1
                });
                line_of[p * m + r] = id;
            }
        }
        let lines = next_id as usize;
        let mut len = alloc::vec![0u32; lines];
        for &l in &line_of {
            len[l as usize] += 1;
        }
        let mut line_start = alloc::vec![0u32; lines + 1];
        for l in 0..lines {
            line_start[l + 1] = line_start[l] + len[l];
        }
        let mut fill = line_start.clone();
        let mut line_cells = alloc::vec![0u32; line_of.len()];
        for p in 0..points.len() {
            for r in 0..m {
                let l = line_of[p * m + r] as usize;
                line_cells[fill[l] as usize] = p as u32;
                fill[l] += 1;
            }
        }
        Kernel { points, moves: m, line_of, line_start, line_cells }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lines(&self) -> usize {
        self.line_start.len() - 1
    }

    #[inline]
    fn cells(&self, line: u32) -> &[u32] {
        let l = line as usize;
        &self.line_cells[self.line_start[l] as usize..self.line_start[l + 1] as usize]
    }

    #[inline]
    pub fn line_of(&self, p: usize, r: usize) -> u32 {
        self.line_of[p * self.moves + r]
    }

    /// Whether cells `a` and `b` share a move line (or coincide).
    #[inline]
    pub fn attack(&self, a: usize, b: usize) -> bool {
        let m = self.moves;
        (0..m).any(|r| self.line_of[a * m + r] == self.line_of[b * m + r])
    }

    pub fn state(&self) -> SearchState {
        let line_free: Vec<u32> = (0..self.lines()).map(|l| self.line_start[l + 1] - self.line_start[l]).collect();
        let attacking_free_pairs = line_free.iter().map(|&f| (f as u128) * (f as u128).saturating_sub(1) / 2).sum();
        SearchState {
            attacked: alloc::vec![0; self.points.len()],
            line_free,
            free: self.points.len() as u64,
            attacking_free_pairs,
        }
    }

    /// Puts a piece on cell `p`, updating cell and line bookkeeping.
    #[inline]
    pub fn place(&self, st: &mut SearchState, p: usize) {
        let m = self.moves;
        for r in 0..m {
            for &c in self.cells(self.line_of[p * m + r]) {
                let c = c as usize;
                st.attacked[c] += 1;
                if st.attacked[c] == 1 {
                    st.free -= 1;
                    for &l in &self.line_of[c * m..c * m + m] {
                        let f = &mut st.line_free[l as usize];
                        st.attacking_free_pairs -= (*f - 1) as u128;
                        *f -= 1;
                    }
                }
            }
        }
    }

    /// Inverse of [`Kernel::place`].
    #[inline]
    pub fn unplace(&self, st: &mut SearchState, p: usize) {
        let m = self.moves;
        for r in 0..m {
            for &c in self.cells(self.line_of[p * m + r]) {
                let c = c as usize;
                st.attacked[c] -= 1;
                if st.attacked[c] == 0 {
                    st.free += 1;
                    for &l in &self.line_of[c * m..c * m + m] {
                        let f = &mut st.line_free[l as usize];
                        st.attacking_free_pairs += *f as u128;
                        *f += 1;
                    }
                }
            }
        }
    }

    /// Sum of free pairs over nonattacking `depth`-sets drawn from cells `start..`.
    fn pair_sum(&self, st: &mut SearchState, depth: u64, start: usize) -> u128 {
        if depth == 0 {
            return st.free_pairs();
        }
        let mut total = 0u128;
        for p in start..self.points.len() {
            if st.attacked[p] == 0 {
                self.place(st, p);
                total += self.pair_sum(st, depth - 1, p + 1);
                self.unplace(st, p);
            }
        }
        total
    }

    /// Number of independent work units for `q` pieces (one per first cell when `q >= 3`).
    pub fn units(&self, q: u64) -> usize {
        if q >= 3 {
            self.points.len()
        } else {
            1
        }
    }

    /// Contribution of work unit `unit` to `C(q,2)·u(q)`, or to `u(q)` itself when `q <= 2`.
    /// Summing all units and calling [`Kernel::finish`] yields the unlabelled count.
    pub fn partial(&self, q: u64, unit: usize) -> u128 {
        match q {
            0 => 1,
            1 => self.points.len() as u128,
            2 => self.state().free_pairs(),
            _ => {
                let mut st = self.state();
                self.place(&mut st, unit);
                self.pair_sum(&mut st, q - 3, unit + 1)
            }
        }
    }

    /// Turns the sum of all partial contributions into `u(q)`.
    pub fn finish(&self, q: u64, total: u128) -> BigUint {
        if q <= 2 {
            return BigUint::from(total);
        }
        let c = (q as u128) * (q as u128 - 1) / 2;
        debug_assert_eq!(total % c, 0, "pair decomposition must divide evenly");
        BigUint::from(total / c)
    }

    /// Serial unlabelled count for `q` pieces.
    pub fn count_unlabelled(&self, q: u64) -> BigUint {
        let total: u128 = (0..self.units(q)).map(|u| self.partial(q, u)).sum();
        self.finish(q, total)
    }

    /// Visits every nonattacking `q`-set as an increasing index list.
    pub fn for_each_configuration(&self, q: usize, mut f: impl FnMut(&[usize])) {
        let mut st = self.state();
        let mut chosen = Vec::with_capacity(q);
        self.visit(&mut st, q, 0, &mut chosen, &mut f);
    }

    fn visit(&self, st: &mut SearchState, q: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if chosen.len() == q {
            f(chosen);
            return;
        }
        for p in start..self.points.len() {
            if st.attacked[p] == 0 {
                self.mark(st, p, 1);
                chosen.push(p);
                self.visit(st, q, p + 1, chosen, f);
                chosen.pop();
                self.mark(st, p, -1);
            }
        }
    }

    // Attack multiplicities only; used where line statistics are not needed.
    fn mark(&self, st: &mut SearchState, p: usize, delta: i16) {
        let m = self.moves;
        for r in 0..m {
            for &c in self.cells(self.line_of[p * m + r]) {
                let a = &mut st.attacked[c as usize];
                *a = (*a as i16 + delta) as u16;
            }
        }
    }
}

/// Exact `(o_P(q;n), u_P(q;n))` on the board dilated by `t = n + 1`.
pub fn count_nonattacking(ms: &MoveSet, board: &BoardPolygon, q: u64, n: u64, budget: Budget) -> Result<Count> {
    let kernel = Kernel::new(ms, board, n + 1);
    budget.check("count_nonattacking", kernel.len(), q)?;
    Ok(Count::from_unlabelled(q, kernel.count_unlabelled(q)))
}

/// One row per `n` in `n_from..=n_to`.
pub fn count_series(ms: &MoveSet, board: &BoardPolygon, q: u64, n_from: u64, n_to: u64, budget: Budget) -> Result<CountTable> {
    if n_from > n_to {
        return Err(Error::InvalidArgument(format!("empty range {n_from}..={n_to}")));
    }
    let mut table = CountTable::new(ms, board, q, Method::BruteForce);
    for n in n_from..=n_to {
        let c = count_nonattacking(ms, board, q, n, budget)
            .map_err(|e| Error::CapacityAt { n, source: alloc::boxed::Box::new(e) })?;
        table.insert(n, c);
    }
    Ok(table)
}

/// The left-side lists `L_ir = { j : (z_j - z_i)·m_r⊥ > 0 }` of a nonattacking configuration,
/// stored as one bitmask per `(i, r)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigType {
    q: usize,
    moves: usize,
    left: Vec<u64>,
}

impl ConfigType {
    pub fn q(&self) -> usize {
        self.q
    }

    /// `L_ir` as a sorted index list.
    pub fn left_list(&self, i: usize, r: usize) -> Vec<usize> {
        let mask = self.left[i * self.moves + r];
        (0..self.q).filter(|j| mask >> j & 1 == 1).collect()
    }

    /// The type of the configuration with piece `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> ConfigType {
        let mut left = alloc::vec![0u64; self.left.len()];
        for i in 0..self.q {
            for r in 0..self.moves {
                let mask = self.left[i * self.moves + r];
                let mut out = 0u64;
                for (j, &pj) in perm.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        out |= 1 << pj;
                    }
                }
                left[perm[i] * self.moves + r] = out;
            }
        }
        ConfigType { q: self.q, moves: self.moves, left }
    }

    /// Representative of the relabelling orbit. Along the first move's normal the
    /// pieces are totally ordered, so renaming each piece by the size of its first
    /// left list gives the same result for every member of the orbit.
    pub fn canonical(&self) -> ConfigType {
        if self.moves == 0 {
            return self.clone();
        }
        let perm: Vec<usize> = (0..self.q).map(|i| self.left[i * self.moves].count_ones() as usize).collect();
        self.relabel(&perm)
    }

    /// Number of distinct types obtained by relabelling.
    pub fn orbit_size(&self) -> usize {
        let orbit: BTreeSet<ConfigType> = permutations(self.q).iter().map(|p| self.relabel(p)).collect();
        orbit.len()
    }

    /// Invariant: for `i != j`, `j ∈ L_ir` iff `i ∉ L_jr`.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.moves).all(|r| {
            (0..self.q).all(|i| {
                (0..self.q).filter(|&j| j != i).all(|j| {
                    let ij = self.left[i * self.moves + r] >> j & 1 == 1;
                    let ji = self.left[j * self.moves + r] >> i & 1 == 1;
                    ij != ji
                })
            })
        })
    }
}

fn type_of_points(points: &[Point], ms: &MoveSet) -> ConfigType {
    let m = ms.len();
    let q = points.len();
    let mut left = alloc::vec![0u64; q * m];
    for (i, &zi) in points.iter().enumerate() {
        for (r, mv) in ms.moves().iter().enumerate() {
            let ki = mv.key(zi);
            for (j, &zj) in points.iter().enumerate() {
                if mv.key(zj) > ki {
                    left[i * m + r] |= 1 << j;
                }
            }
        }
    }
    ConfigType { q, moves: m, left }
}

/// The labelled combinatorial type of a nonattacking configuration.
pub fn labelled_type_of(cfg: &Configuration, ms: &MoveSet) -> Result<ConfigType> {
    if cfg.len() > 64 {
        return Err(Error::InvalidArgument(format!("at most 64 pieces supported, got {}", cfg.len())));
    }
    if let Some((i, j)) = cfg.attacking_pair(ms) {
        return Err(Error::Attacking(i, j));
    }
    Ok(type_of_points(&cfg.positions, ms))
}

/// Distinct configuration types realized at one dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub labelled: BigUint,
    pub unlabelled: BigUint,
    /// Canonical representatives of the unlabelled types.
    pub types: BTreeSet<ConfigType>,
    pub configurations: BigUint,
}

/// Enumerates every nonattacking configuration at size `n` and collects their types.
pub fn census_types(ms: &MoveSet, board: &BoardPolygon, q: u64, n: u64, budget: Budget) -> Result<TypeCensus> {
    if q == 0 || q > 12 {
        return Err(Error::InvalidArgument(format!("census needs 1 <= q <= 12, got {q}")));
    }
    let kernel = Kernel::new(ms, board, n + 1);
    budget.check("census_types", kernel.len(), q)?;
    let mut types = BTreeSet::new();
    let mut configurations = 0u128;
    let mut buf = Vec::with_capacity(q as usize);
    kernel.for_each_configuration(q as usize, |idx| {
        configurations += 1;
        buf.clear();
        buf.extend(idx.iter().map(|&i| kernel.points()[i]));
        types.insert(type_of_points(&buf, ms).canonical());
    });
    let labelled: usize = types.iter().map(|t| t.orbit_size()).sum();
    Ok(TypeCensus {
        labelled: BigUint::from(labelled),
        unlabelled: BigUint::from(types.len()),
        types,
        configurations: BigUint::from(configurations),
    })
}

/// `u` as a machine integer, for callers that know it is small.
pub fn small(u: &BigUint) -> u64 {
    u.to_u64().expect("value exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(ms: &MoveSet, q: u64, n: u64) -> u64 {
        small(&count_nonattacking(ms, &BoardPolygon::square(), q, n, Budget::DEFAULT).unwrap().unlabelled)
    }

    #[test]
    fn two_queens_small() {
        let q = MoveSet::queen();
        assert_eq!(u(&q, 2, 3), 8);
        assert_eq!(u(&q, 2, 4), 44);
        let c = count_nonattacking(&q, &BoardPolygon::square(), 2, 3, Budget::DEFAULT).unwrap();
        assert_eq!(c.labelled, BigUint::from(16u32));
    }

    #[test]
    fn nightriders_on_two_by_two() {
        assert_eq!(u(&MoveSet::nightrider(), 2, 2), 6);
    }

    #[test]
    fn single_piece_and_empty() {
        for n in 0..6 {
            assert_eq!(u(&MoveSet::queen(), 1, n), n * n);
            assert_eq!(u(&MoveSet::rook(), 0, n), 1);
        }
    }

    #[test]
    fn series() {
        let t = count_series(&MoveSet::queen(), &BoardPolygon::square(), 2, 1, 4, Budget::DEFAULT).unwrap();
        let col: Vec<u64> = t.rows.values().map(|c| small(&c.unlabelled)).collect();
        assert_eq!(col, [0, 0, 8, 44]);
        assert!(t.is_consistent());
        assert!(count_series(&MoveSet::queen(), &BoardPolygon::square(), 2, 4, 1, Budget::DEFAULT).is_err());
    }

    #[test]
    fn capacity_is_reported() {
        let err = count_nonattacking(&MoveSet::queen(), &BoardPolygon::square(), 3, 30, Budget(1000)).unwrap_err();
        assert!(err.is_capacity());
        let err = count_series(&MoveSet::queen(), &BoardPolygon::square(), 3, 1, 30, Budget(100_000)).unwrap_err();
        assert!(matches!(err, Error::CapacityAt { n: 7, .. }), "{err:?}");
    }

    #[test]
    fn types_of_two_queens() {
        let q = MoveSet::queen();
        let a = labelled_type_of(&Configuration::new(alloc::vec![Point::new(1, 1), Point::new(2, 3)]), &q).unwrap();
        // m = (1,0), m⊥ = (0,-1): (1,2)·(0,-1) < 0, so piece 1 is not left of piece 0's row.
        assert!(a.left_list(0, 0).is_empty());
        assert_eq!(a.left_list(1, 0), [0]);
        let b = labelled_type_of(&Configuration::new(alloc::vec![Point::new(1, 3), Point::new(2, 1)]), &q).unwrap();
        assert_ne!(a, b);
        assert!(a.is_antisymmetric() && b.is_antisymmetric());
        let bad = labelled_type_of(&Configuration::new(alloc::vec![Point::new(1, 1), Point::new(3, 3)]), &q);
        assert_eq!(bad, Err(Error::Attacking(0, 1)));
        let one = labelled_type_of(&Configuration::new(alloc::vec![Point::new(4, 4)]), &q).unwrap();
        assert!(one.left_list(0, 2).is_empty());
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let q = MoveSet::queen();
        let cfg = Configuration::new(alloc::vec![Point::new(1, 1), Point::new(2, 3), Point::new(5, 2)]);
        let t = labelled_type_of(&cfg, &q).unwrap();
        let c = t.canonical();
        for p in permutations(3) {
            assert_eq!(t.relabel(&p).canonical(), c);
        }
        assert_eq!(t.orbit_size(), 6);
    }

    #[test]
    fn census_two_pieces() {
        let sq = BoardPolygon::square();
        let c = census_types(&MoveSet::queen(), &sq, 2, 10, Budget::DEFAULT).unwrap();
        assert_eq!(c.unlabelled, BigUint::from(4u32));
        assert_eq!(c.labelled, BigUint::from(8u32));
        let c = census_types(&MoveSet::rook(), &sq, 3, 10, Budget::DEFAULT).unwrap();
        assert_eq!(c.unlabelled, BigUint::from(6u32));
        let c = census_types(&MoveSet::bishop(), &sq, 1, 3, Budget::DEFAULT).unwrap();
        assert_eq!(c.unlabelled, BigUint::from(1u32));
    }
}
