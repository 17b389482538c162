//! The move arrangement in configuration space and its intersection semilattice.
//!
//! For `q` labelled pieces with coordinates `(x_1, y_1, ..., x_q, y_q)`, pieces
//! `i < j` attack along move `r` exactly on the hyperplane
//! `(z_j - z_i)·m_r⊥ = 0`. Every intersection of such hyperplanes is a flat; the
//! flats ordered by reverse inclusion form the semilattice whose Möbius function
//! weights the inclusion–exclusion
//!
//! ```text
//! o(q;n) = sum over flats U of mu(0,U) · alpha(U;n) · N^(q - kappa(U))
//! ```
//!
//! where `alpha(U;n)` counts the lattice points of the flat restricted to the
//! `kappa(U)` pieces it involves and `N` is the number of board cells.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combin::{binomial, factorial, permutations};
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::geometry::{interior_lattice_points, BoardPolygon, MoveSet, Point};
use crate::linalg::{in_row_space, rref};

/// `H_ij^r`: pieces `i < j` on a common line of move `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub move_index: usize,
}

impl Hyperplane {
    /// Coefficients of `(z_j - z_i)·m_r⊥` over `(x_1, y_1, ..., x_q, y_q)`.
    pub fn equation(&self, ms: &MoveSet, q: usize) -> Vec<BigRational> {
        let (d, minus_c) = ms.moves()[self.move_index].perp();
        let mut v = alloc::vec![BigRational::zero(); 2 * q];
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        v[2 * self.i] = r(-d);
        v[2 * self.i + 1] = r(-minus_c);
        v[2 * self.j] = r(d);
        v[2 * self.j + 1] = r(minus_c);
        v
    }
}

/// All `C(q,2)·|M|` move hyperplanes, ordered by pair then move.
pub fn build_move_arrangement(ms: &MoveSet, q: usize) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            for r in 0..ms.len() {
                out.push(Hyperplane { i, j, move_index: r });
            }
        }
    }
    out
}

/// A labelled slope-graph edge `(i, j, r)` with `i < j`.
pub type Edge = (usize, usize, usize);

/// One intersection subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Bitmask over the arrangement of every hyperplane containing the flat.
    pub hyperplanes: u128,
    /// Reduced row-echelon basis of the defining equations.
    pub equations: Vec<Vec<BigRational>>,
    pub codim: usize,
    /// Bitmask of pieces the equations involve.
    pub involved: u64,
    pub mobius: i64,
    pub iso_class: usize,
}

impl Flat {
    pub fn kappa(&self) -> usize {
        self.involved.count_ones() as usize
    }

    pub fn involved_pieces(&self) -> Vec<usize> {
        (0..64).filter(|i| self.involved >> i & 1 == 1).collect()
    }

    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.hyperplanes >> h & 1 == 1
    }
}

/// Flats of one isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub kappa: usize,
    pub codim: usize,
    pub mobius: i64,
    pub aut_order: u64,
    /// Canonical labelled edge list on nodes `0..kappa`.
    pub canonical_edges: Vec<Edge>,
    pub members: Vec<usize>,
}

impl IsoClass {
    /// `C(q,kappa)·kappa!/|Aut|`.
    pub fn expected_size(&self, q: usize) -> BigUint {
        binomial(q as u64, self.kappa as u64) * factorial(self.kappa as u64) / self.aut_order
    }
}

/// The intersection semilattice `L(A_P)` for `q` pieces.
#[derive(Debug, Clone)]
pub struct Semilattice {
    q: usize,
    moves: MoveSet,
    hyperplanes: Vec<Hyperplane>,
    equations: Vec<Vec<BigRational>>,
    flats: Vec<Flat>,
    index: BTreeMap<u128, usize>,
    classes: Vec<IsoClass>,
}

/// Default cap on the number of flats.
pub const DEFAULT_MAX_FLATS: usize = 200_000;

/// Breadth-first closure: intersect flats with single hyperplanes until nothing new appears.
/// Layers come out in order of codimension.
pub fn intersection_semilattice(hyps: &[Hyperplane], ms: &MoveSet, q: usize, max_flats: usize) -> Result<Semilattice> {
    if hyps.len() > 128 {
        return Err(Error::ArrangementTooLarge(hyps.len()));
    }
    if q > 64 {
        return Err(Error::InvalidArgument(format!("at most 64 pieces supported, got {q}")));
    }
    let equations: Vec<Vec<BigRational>> = hyps.iter().map(|h| h.equation(ms, q)).collect();
    let mut sl = Semilattice {
        q,
        moves: ms.clone(),
        hyperplanes: hyps.to_vec(),
        equations,
        flats: Vec::new(),
        index: BTreeMap::new(),
        classes: Vec::new(),
    };
    let bottom = Flat { hyperplanes: 0, equations: Vec::new(), codim: 0, involved: 0, mobius: 1, iso_class: 0 };
    sl.index.insert(0, 0);
    sl.flats.push(bottom);
    let mut head = 0;
    while head < sl.flats.len() {
        let mut covered = sl.flats[head].hyperplanes;
        for h in 0..hyps.len() {
            if covered >> h & 1 == 1 {
                continue;
            }
            let mut rows = sl.flats[head].equations.clone();
            rows.push(sl.equations[h].clone());
            let child = sl.make_flat(rows);
            // Every hyperplane of the child meets this flat in the same child.
            covered |= child.hyperplanes;
            if !sl.index.contains_key(&child.hyperplanes) {
                if sl.flats.len() >= max_flats {
                    return Err(Error::Capacity {
                        what: "intersection_semilattice".into(),
                        needed: sl.flats.len() as u128 + 1,
                        budget: max_flats as u128,
                    });
                }
                sl.index.insert(child.hyperplanes, sl.flats.len());
                sl.flats.push(child);
            }
        }
        head += 1;
    }
    sl.compute_mobius();
    sl.compute_classes();
    Ok(sl)
}

impl Semilattice {
    fn make_flat(&self, mut rows: Vec<Vec<BigRational>>) -> Flat {
        let codim = rref(&mut rows);
        let mut hyperplanes = 0u128;
        let mut involved = 0u64;
        for (h, eq) in self.equations.iter().enumerate() {
            if in_row_space(&rows, eq) {
                hyperplanes |= 1 << h;
                involved |= 1 << self.hyperplanes[h].i | 1 << self.hyperplanes[h].j;
            }
        }
        Flat { hyperplanes, equations: rows, codim, involved, mobius: 0, iso_class: 0 }
    }

    fn compute_mobius(&mut self) {
        for u in 1..self.flats.len() {
            let mu = &self.flats[u];
            let mut sum = 0i64;
            for v in 0..u {
                let fv = &self.flats[v];
                if fv.codim < mu.codim && fv.hyperplanes & !mu.hyperplanes == 0 {
                    sum += fv.mobius;
                }
            }
            self.flats[u].mobius = -sum;
        }
    }

    /// Canonical labelled edge list over all relabellings of the involved pieces, and
    /// the number of relabellings that fix the edge set.
    fn canonical_form(&self, id: usize) -> (Vec<Edge>, u64) {
        let pieces = self.flats[id].involved_pieces();
        let edges = self.slope_graph(id);
        let k = pieces.len();
        let pos = |p: usize| pieces.iter().position(|&x| x == p).unwrap();
        let local: Vec<Edge> = edges.iter().map(|&(i, j, r)| (pos(i), pos(j), r)).collect();
        let mut identity = local.clone();
        identity.sort_unstable();
        let mut best: Option<Vec<Edge>> = None;
        let mut aut = 0u64;
        for perm in permutations(k) {
            let mut mapped: Vec<Edge> = local
                .iter()
                .map(|&(i, j, r)| {
                    let (a, b) = (perm[i], perm[j]);
                    (a.min(b), a.max(b), r)
                })
                .collect();
            mapped.sort_unstable();
            if mapped == identity {
                aut += 1;
            }
            if best.as_ref().is_none_or(|b| mapped < *b) {
                best = Some(mapped);
            }
        }
        (best.unwrap_or_default(), aut)
    }

    fn compute_classes(&mut self) {
        let mut by_form: BTreeMap<(usize, Vec<Edge>), usize> = BTreeMap::new();
        for id in 0..self.flats.len() {
            let (form, aut) = self.canonical_form(id);
            let key = (self.flats[id].kappa(), form.clone());
            let class = *by_form.entry(key).or_insert_with(|| {
                self.classes.push(IsoClass {
                    kappa: self.flats[id].kappa(),
                    codim: self.flats[id].codim,
                    mobius: self.flats[id].mobius,
                    aut_order: aut,
                    canonical_edges: form,
                    members: Vec::new(),
                });
                self.classes.len() - 1
            });
            self.classes[class].members.push(id);
            self.flats[id].iso_class = class;
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn moves(&self) -> &MoveSet {
        &self.moves
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, id: usize) -> Result<&Flat> {
        self.flats.get(id).ok_or(Error::UnknownFlat(id))
    }

    pub fn iso_classes(&self) -> &[IsoClass] {
        &self.classes
    }

    /// Whether every class has `C(q,kappa)·kappa!/|Aut|` members.
    pub fn class_sizes_hold(&self) -> bool {
        self.classes.iter().all(|c| BigUint::from(c.members.len()) == c.expected_size(self.q))
    }

    /// `mu(0, U)`.
    pub fn mobius(&self, id: usize) -> Result<i64> {
        Ok(self.flat(id)?.mobius)
    }

    /// Edges `(i, j, r)` of the slope graph, one per hyperplane containing the flat.
    pub fn slope_graph(&self, id: usize) -> Vec<Edge> {
        let f = &self.flats[id];
        (0..self.hyperplanes.len())
            .filter(|&h| f.contains_hyperplane(h))
            .map(|h| {
                let hp = self.hyperplanes[h];
                (hp.i, hp.j, hp.move_index)
            })
            .collect()
    }

    /// Position of `H_ij^r` in the arrangement.
    pub fn hyperplane_index(&self, i: usize, j: usize, r: usize) -> Option<usize> {
        let (i, j) = (i.min(j), i.max(j));
        self.hyperplanes.iter().position(|h| (h.i, h.j, h.move_index) == (i, j, r))
    }

    /// The flat spanned by the given hyperplanes.
    pub fn closure_of(&self, hyps: &[usize]) -> Result<usize> {
        if let Some(&h) = hyps.iter().find(|&&h| h >= self.hyperplanes.len()) {
            return Err(Error::IndexOutOfRange { index: h, max: self.hyperplanes.len() - 1 });
        }
        let rows: Vec<Vec<BigRational>> = hyps.iter().map(|&h| self.equations[h].clone()).collect();
        let f = self.make_flat(rows);
        self.index.get(&f.hyperplanes).copied().ok_or(Error::UnknownFlat(usize::MAX))
    }

    /// The meet (intersection) of two flats.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        let set = self.flat(a)?.hyperplanes | self.flat(b)?.hyperplanes;
        let hyps: Vec<usize> = (0..self.hyperplanes.len()).filter(|h| set >> h & 1 == 1).collect();
        self.closure_of(&hyps)
    }

    /// `W^{r}_{pieces}`: all listed pieces on one line of move `r`.
    pub fn collinear(&self, pieces: &[usize], r: usize) -> Result<usize> {
        let mut hyps = Vec::new();
        for (a, &i) in pieces.iter().enumerate() {
            for &j in &pieces[a + 1..] {
                hyps.push(self.hyperplane_index(i, j, r).ok_or(Error::InvalidArgument(format!("no hyperplane H_{i}{j}^{r}")))?);
            }
        }
        self.closure_of(&hyps)
    }

    /// `W^=_{pieces}`: all listed pieces on one square.
    pub fn coincident(&self, pieces: &[usize]) -> Result<usize> {
        let mut hyps = Vec::new();
        for r in 0..self.moves.len() {
            for (a, &i) in pieces.iter().enumerate() {
                for &j in &pieces[a + 1..] {
                    hyps.push(self.hyperplane_index(i, j, r).ok_or(Error::InvalidArgument(format!("no hyperplane H_{i}{j}^{r}")))?);
                }
            }
        }
        self.closure_of(&hyps)
    }

    /// Splits a flat along the connected components of its slope graph.
    pub fn decompose(&self, id: usize) -> Result<Vec<usize>> {
        let f = self.flat(id)?;
        let pieces = f.involved_pieces();
        let edges = self.slope_graph(id);
        let mut comp: Vec<usize> = (0..self.q).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for &(i, j, _) in &edges {
            let (a, b) = (root(&mut comp, i), root(&mut comp, j));
            comp[a.max(b)] = a.min(b);
        }
        let mut roots: Vec<usize> = pieces.iter().map(|&p| root(&mut comp, p)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() <= 1 {
            return Ok(alloc::vec![id]);
        }
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let hyps: Vec<usize> = (0..self.hyperplanes.len())
                .filter(|&h| f.contains_hyperplane(h) && root(&mut comp, self.hyperplanes[h].i) == r)
                .collect();
            out.push(self.closure_of(&hyps)?);
        }
        Ok(out)
    }

    /// `alpha(U;n)` by joint enumeration of the involved pieces.
    pub fn alpha(&self, id: usize, board: &BoardPolygon, n: u64, budget: Budget) -> Result<BigUint> {
        let f = self.flat(id)?;
        if f.involved == 0 {
            return Ok(BigUint::one());
        }
        let cells = interior_lattice_points(board, n + 1);
        AlphaCounter::new(&self.moves, &cells, &f.involved_pieces(), &self.slope_graph(id)).count(budget)
    }

    /// `alpha(U;n)` as the product of its components' counts.
    pub fn alpha_factored(&self, id: usize, board: &BoardPolygon, n: u64, budget: Budget) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for c in self.decompose(id)? {
            acc *= self.alpha(c, board, n, budget)?;
        }
        Ok(acc)
    }
}

/// How to seed one piece (earlier piece and move to bucket by), and the `(piece, move)` checks after.
type Step = (Option<(usize, usize)>, Vec<(usize, usize)>);

/// Counts `kappa`-tuples of cells satisfying a set of pairwise collinearity constraints.
struct AlphaCounter<'a> {
    cells: &'a [Point],
    /// One step per piece in placement order.
    plan: Vec<Step>,
    keys: Vec<Vec<i64>>,
    buckets: Vec<BTreeMap<i64, Vec<u32>>>,
}

impl<'a> AlphaCounter<'a> {
    fn new(ms: &MoveSet, cells: &'a [Point], pieces: &[usize], edges: &[Edge]) -> Self {
        let keys: Vec<Vec<i64>> = ms.moves().iter().map(|m| cells.iter().map(|&p| m.key(p)).collect()).collect();
        let mut buckets: Vec<BTreeMap<i64, Vec<u32>>> = alloc::vec![BTreeMap::new(); ms.len()];
        for (r, ks) in keys.iter().enumerate() {
            for (c, &k) in ks.iter().enumerate() {
                buckets[r].entry(k).or_default().push(c as u32);
            }
        }
        // Order pieces so each one after the first of its component has an edge back.
        let mut order: Vec<usize> = Vec::new();
        let mut seen = alloc::vec![false; pieces.len()];
        let pos = |p: usize| pieces.iter().position(|&x| x == p).unwrap();
        for start in 0..pieces.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            order.push(start);
            let mut head = order.len() - 1;
            while head < order.len() {
                let cur = order[head];
                for &(i, j, _) in edges {
                    let (a, b) = (pos(i), pos(j));
                    let other = if a == cur { b } else if b == cur { a } else { continue };
                    if !seen[other] {
                        seen[other] = true;
                        order.push(other);
                    }
                }
                head += 1;
            }
        }
        let slot = |p: usize| order.iter().position(|&x| x == p).unwrap();
        let mut plan = Vec::with_capacity(order.len());
        for (s, &p) in order.iter().enumerate() {
            let mut checks = Vec::new();
            for &(i, j, r) in edges {
                let (a, b) = (pos(i), pos(j));
                let other = if a == p { b } else if b == p { a } else { continue };
                if slot(other) < s {
                    checks.push((slot(other), r));
                }
            }
            let seed = checks.first().copied();
            plan.push((seed, checks));
        }
        AlphaCounter { cells, plan, keys, buckets }
    }

    fn count(&self, budget: Budget) -> Result<BigUint> {
        let mut placed = alloc::vec![0usize; self.plan.len()];
        let mut work = 0u128;
        let total = self.rec(0, &mut placed, &mut work, budget.0)?;
        Ok(BigUint::from(total))
    }

    fn rec(&self, s: usize, placed: &mut [usize], work: &mut u128, budget: u128) -> Result<u128> {
        if s == self.plan.len() {
            return Ok(1);
        }
        let (seed, checks) = &self.plan[s];
        let all: Vec<u32>;
        let candidates: &[u32] = match seed {
            Some((other, r)) => {
                let k = self.keys[*r][placed[*other]];
                self.buckets[*r].get(&k).map_or(&[], |v| v.as_slice())
            }
            None => {
                all = (0..self.cells.len() as u32).collect();
                &all
            }
        };
        *work += candidates.len() as u128;
        if *work > budget {
            return Err(Error::Capacity { what: "alpha".into(), needed: *work, budget });
        }
        let mut total = 0u128;
        for &c in candidates {
            let c = c as usize;
            if checks.iter().all(|&(other, r)| self.keys[r][c] == self.keys[r][placed[other]]) {
                placed[s] = c;
                total += self.rec(s + 1, placed, work, budget)?;
            }
        }
        Ok(total)
    }
}

/// Labelled count `o(q;n)` from the semilattice:
/// `sum_U mu(0,U)·alpha(U;n)·N^(q-kappa(U))`. Isomorphic flats share `alpha`, so it
/// is computed once per class (as a product over components).
pub fn reconstruct_count(sl: &Semilattice, board: &BoardPolygon, n: u64, budget: Budget) -> Result<BigInt> {
    let cells = BigInt::from(interior_lattice_points(board, n + 1).len());
    let mut alpha_by_class: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut total = BigInt::zero();
    for (id, f) in sl.flats().iter().enumerate() {
        let alpha = match alpha_by_class.get(&f.iso_class) {
            Some(a) => a.clone(),
            None => {
                let a = BigInt::from(sl.alpha_factored(id, board, n, budget)?);
                alpha_by_class.insert(f.iso_class, a.clone());
                a
            }
        };
        let rest = num_traits::pow(cells.clone(), sl.q() - f.kappa());
        total += BigInt::from(f.mobius) * alpha * rest;
    }
    Ok(total)
}
