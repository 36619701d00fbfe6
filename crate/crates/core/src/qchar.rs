//! q-characters of snake modules as sums over non-overlapping path
//! tuples, and an independent verifier for the thin/special criteria.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Kind, LieType, Weight};
use crate::error::{Error, Result};
use crate::lattice::{a_monomial, factor_as_a, factor_sorted, weight_of, AExponent, LatticePoint, YMonomial};
use crate::paths::{gen_paths, Direction, MoveError, Path};
use crate::sl2::{Sl2, Sl2Monomial};
use crate::snakes::Snake;

/// A finite multiset of monomials with a distinguished highest term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    pub terms: BTreeMap<YMonomial, u64>,
    pub highest: YMonomial,
}

impl QCharacter {
    pub fn new(highest: YMonomial, terms: BTreeMap<YMonomial, u64>) -> Self {
        QCharacter { terms, highest }
    }

    /// A multiplicity-one character on the given monomials.
    pub fn from_monomials<I: IntoIterator<Item = YMonomial>>(highest: YMonomial, monos: I) -> Self {
        let mut terms = BTreeMap::new();
        for m in monos {
            *terms.entry(m).or_insert(0) += 1;
        }
        QCharacter { terms, highest }
    }

    /// Number of terms counted with multiplicity.
    pub fn dimension(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &YMonomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> {
        self.terms.keys()
    }

    pub fn is_thin(&self) -> bool {
        self.terms.values().all(|&n| n == 1)
    }

    pub fn dominant_terms(&self) -> Vec<&YMonomial> {
        self.terms.keys().filter(|m| m.is_dominant()).collect()
    }

    pub fn anti_dominant_terms(&self) -> Vec<&YMonomial> {
        self.terms.keys().filter(|m| m.is_anti_dominant()).collect()
    }

    pub fn is_special(&self) -> bool {
        self.dominant_terms() == vec![&self.highest] && self.terms[&self.highest] == 1
    }

    pub fn is_anti_special(&self) -> bool {
        let anti = self.anti_dominant_terms();
        anti.len() == 1 && self.terms[anti[0]] == 1
    }

    /// One monomial per line, with a multiplicity prefix when it exceeds 1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (m, &n) in &self.terms {
            if n > 1 {
                out.push_str(&format!("{n} * "));
            }
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }
}

/// One path per snake point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathTuple {
    pub paths: Vec<Path>,
}

impl PathTuple {
    pub fn monomial(&self) -> YMonomial {
        self.paths.iter().fold(YMonomial::one(), |acc, p| &acc * &p.monomial())
    }

    /// `p_s` strictly above `p_t` for all `s < t`.
    pub fn is_non_overlapping(&self) -> bool {
        self.paths
            .iter()
            .enumerate()
            .all(|(s, p)| self.paths[s + 1..].iter().all(|q| p.strictly_above(q)))
    }

    /// Applies the move to the unique component that admits it.
    pub fn try_move(&self, j: usize, l: i64, dir: Direction) -> Result<PathTuple, MoveError> {
        let mut movable = self
            .paths
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.try_move(j, l, dir).ok().map(|q| (t, q)));
        let (t, q) = movable.next().ok_or(MoveError::CannotMove)?;
        debug_assert!(movable.next().is_none(), "two components admit the same move");
        let mut out = self.clone();
        out.paths[t] = q;
        if out.is_non_overlapping() {
            Ok(out)
        } else {
            Err(MoveError::WouldOverlap)
        }
    }
}

/// Per-column extent of a path, as `(column, min key, max key)`.
fn profile(p: &Path) -> Vec<(usize, i64, i64)> {
    let mut cols: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    for q in &p.points {
        let key = q.y.key();
        let slot = cols.entry(q.x as usize).or_insert((key, key));
        slot.0 = slot.0.min(key);
        slot.1 = slot.1.max(key);
    }
    cols.into_iter().map(|(c, (lo, hi))| (c, lo, hi)).collect()
}

fn column_count(t: LieType) -> usize {
    let n = t.rank();
    match t.kind() {
        Kind::A => n + 2,
        Kind::B => 4 * n - 1,
    }
}

/// The path sets `P_{i_t,k_t}` of the snake points.
pub fn path_sets(snake: &Snake) -> Result<Vec<Vec<Path>>> {
    let t = snake.lie_type();
    snake.points().iter().map(|p| gen_paths(t, p.i, p.k)).collect()
}

/// Depth-first search over tuples whose component `t` lies strictly below
/// components `0..t` in every shared column. `floor[c]` is the lowest key
/// taken so far in column `c`.
struct TupleSearch {
    profiles: Vec<Vec<Vec<(usize, i64, i64)>>>,
    ncols: usize,
}

impl TupleSearch {
    fn new(t: LieType, sets: &[Vec<Path>]) -> Self {
        let profiles = sets.iter().map(|set| set.iter().map(profile).collect()).collect();
        TupleSearch { profiles, ncols: column_count(t) }
    }

    fn run_from(&self, first: usize, visit: &mut dyn FnMut(&[u32])) {
        let mut floor = vec![i64::MIN; self.ncols];
        for &(c, _, hi) in &self.profiles[0][first] {
            floor[c] = hi;
        }
        self.dfs(1, &mut floor, &mut vec![first as u32], visit);
    }

    fn dfs(&self, depth: usize, floor: &mut [i64], chosen: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if depth == self.profiles.len() {
            visit(chosen);
            return;
        }
        for (idx, prof) in self.profiles[depth].iter().enumerate() {
            if prof.iter().any(|&(c, lo, _)| lo <= floor[c]) {
                continue;
            }
            let saved: Vec<i64> = prof.iter().map(|&(c, _, _)| floor[c]).collect();
            for &(c, _, hi) in prof {
                floor[c] = hi;
            }
            chosen.push(idx as u32);
            self.dfs(depth + 1, floor, chosen, visit);
            chosen.pop();
            for (&(c, _, _), s) in prof.iter().zip(saved) {
                floor[c] = s;
            }
        }
    }
}

/// Streams the non-overlapping index tuples into `sets`, in lexicographic
/// order, without storing them.
pub fn for_each_tuple(t: LieType, sets: &[Vec<Path>], mut visit: impl FnMut(&[u32])) {
    if sets.is_empty() {
        return;
    }
    let search = TupleSearch::new(t, sets);
    for first in 0..sets[0].len() {
        search.run_from(first, &mut visit);
    }
}

/// The path sets of the snake points and the non-overlapping index tuples.
type Indexed = (Vec<Vec<Path>>, Vec<Vec<u32>>);

fn tuple_indices(snake: &Snake) -> Result<Indexed> {
    let sets = path_sets(snake)?;
    let search = TupleSearch::new(snake.lie_type(), &sets);
    let tuples: Vec<Vec<u32>> = (0..sets[0].len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            search.run_from(first, &mut |idx| out.push(idx.to_vec()));
            out
        })
        .collect();
    Ok((sets, tuples))
}

/// All non-overlapping tuples, in lexicographic order of path indices.
pub fn enumerate_tuples(snake: &Snake) -> Result<Vec<PathTuple>> {
    let (sets, tuples) = tuple_indices(snake)?;
    Ok(tuples
        .into_iter()
        .map(|idx| PathTuple {
            paths: idx.iter().enumerate().map(|(t, &i)| sets[t][i as usize].clone()).collect(),
        })
        .collect())
}

/// Number of non-overlapping tuples, without building them.
pub fn count_tuples(snake: &Snake) -> Result<usize> {
    let sets = path_sets(snake)?;
    let mut n = 0;
    for_each_tuple(snake.lie_type(), &sets, |_| n += 1);
    Ok(n)
}

/// The q-character of the snake module: one term per non-overlapping tuple.
///
/// Panics if two tuples share a monomial, which the path model rules out.
pub fn snake_qchar(snake: &Snake) -> Result<QCharacter> {
    let (sets, tuples) = tuple_indices(snake)?;
    let monos: Vec<Vec<YMonomial>> =
        sets.iter().map(|set| set.par_iter().map(Path::monomial).collect()).collect();
    let products: Vec<YMonomial> = tuples
        .par_iter()
        .map(|idx| {
            idx.iter()
                .enumerate()
                .fold(YMonomial::one(), |acc, (t, &i)| &acc * &monos[t][i as usize])
        })
        .collect();
    let count = products.len();
    let qc = QCharacter::from_monomials(snake.highest_monomial(), products);
    assert_eq!(qc.len(), count, "tuple to monomial map is not injective for {snake}");
    Ok(qc)
}

/// A failure of the one-way-back condition: `m A[i,a]^{-1} A[j,b]` lies in
/// the set while `m A[i,a]^{-1}` does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneWayBackViolation {
    pub m: YMonomial,
    pub lowered: LatticePoint,
    pub raised: LatticePoint,
}

/// A failure of the sl2-slice condition at `m` and `node`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceViolation {
    pub m: YMonomial,
    pub node: usize,
    /// The node-`node` parts of the slice, with multiplicity.
    pub actual: Vec<String>,
    /// The best candidate's simple sl2 character, empty when the slice has
    /// no node-dominant member.
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAReport {
    pub multiplicity_free: bool,
    pub cond_i: bool,
    pub dominant: Vec<YMonomial>,
    pub cond_ii: bool,
    pub cond_ii_violation: Option<OneWayBackViolation>,
    pub cond_iii: bool,
    /// One violation per failing node, in node order.
    pub cond_iii_violations: Vec<SliceViolation>,
}

impl TheoremAReport {
    pub fn all_pass(&self) -> bool {
        self.multiplicity_free && self.cond_i && self.cond_ii && self.cond_iii
    }
}

impl fmt::Display for TheoremAReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "distinct monomials: {}", flag(self.multiplicity_free))?;
        write!(f, "(i) unique dominant: {}", flag(self.cond_i))?;
        if !self.cond_i {
            let d: Vec<String> = self.dominant.iter().map(|m| m.to_string()).collect();
            write!(f, " [dominant: {}]", d.join(", "))?;
        }
        writeln!(f)?;
        write!(f, "(ii) one way back: {}", flag(self.cond_ii))?;
        if let Some(v) = &self.cond_ii_violation {
            write!(f, " [m = {}, lower at {}, raise at {}]", v.m, v.lowered, v.raised)?;
        }
        writeln!(f)?;
        writeln!(f, "(iii) sl2 slices: {}", flag(self.cond_iii))?;
        for v in &self.cond_iii_violations {
            writeln!(
                f,
                "    node {}: m = {}, slice {{{}}} vs {{{}}}",
                v.node,
                v.m,
                v.actual.join(", "),
                v.expected.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Sparse A-exponents `(id, n)` sorted by id.
type Sparse = Vec<(u32, i32)>;

/// `A`-exponents of every monomial relative to a representative of its
/// `Q`-coset, as sparse vectors over dense ids `(l - lmin) * N + (i - 1)`,
/// with an additive hash so that `e ± δ_p` can be looked up without
/// building it.
struct Encoded {
    rank: usize,
    lmin: i64,
    coset: Vec<u32>,
    exps: Vec<Vec<(u32, i32)>>,
    hash: Vec<u64>,
    salt: Vec<u64>,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Encoded {
    fn new(cd: &CartanData, m_plus: &YMonomial, monos: &[&YMonomial]) -> Self {
        let rank = cd.rank();
        let bounds = monos.iter().chain([&m_plus]).filter_map(|m| Some((m.min_k()?, m.max_k()?)));
        let (lmin, lmax) = bounds.fold((0, 0), |(a, b), (lo, hi)| (a.min(lo), b.max(hi)));
        let ids = ((lmax - lmin + 1) as usize) * rank;
        let salt: Vec<u64> = (0..ids as u64).map(mix).collect();

        let first: Vec<Option<Vec<(LatticePoint, i64)>>> =
            monos.par_iter().map(|m| factor_sorted(cd, &(*m / m_plus))).collect();
        let mut reps: Vec<YMonomial> = vec![m_plus.clone()];
        let mut coset = Vec::with_capacity(monos.len());
        let mut exps = Vec::with_capacity(monos.len());
        for (m, f) in monos.iter().zip(first) {
            let (c, f) = match f {
                Some(f) => (0, f),
                None => reps[1..]
                    .iter()
                    .enumerate()
                    .find_map(|(c, r)| factor_sorted(cd, &(*m / r)).map(|f| (c + 1, f)))
                    .unwrap_or_else(|| {
                        reps.push((*m).clone());
                        (reps.len() - 1, Vec::new())
                    }),
            };
            coset.push(c as u32);
            let mut enc: Vec<(u32, i32)> = f
                .into_iter()
                .map(|(p, e)| (((p.k - lmin) as usize * rank + p.i - 1) as u32, e as i32))
                .collect();
            enc.sort_unstable();
            exps.push(enc);
        }
        let hash = exps
            .iter()
            .map(|e| e.iter().fold(0u64, |h, &(id, x)| h.wrapping_add(salt[id as usize].wrapping_mul(x as u64))))
            .collect();
        Encoded { rank, lmin, coset, exps, hash, salt }
    }

    fn point(&self, id: u32) -> LatticePoint {
        let id = id as usize;
        LatticePoint::new(id % self.rank + 1, (id / self.rank) as i64 + self.lmin)
    }

    fn node(&self, id: u32) -> usize {
        id as usize % self.rank + 1
    }

    fn in_cone(&self) -> bool {
        self.coset.iter().all(|&c| c == 0) && self.exps.iter().all(|e| e.iter().all(|&(_, x)| x < 0))
    }
}

/// `e + Σ shifts` as a sparse vector.
fn shifted(e: &[(u32, i32)], shifts: &[(u32, i32)]) -> Vec<(u32, i32)> {
    let mut map: BTreeMap<u32, i32> = e.iter().copied().collect();
    for &(id, d) in shifts {
        let slot = map.entry(id).or_insert(0);
        *slot += d;
        if *slot == 0 {
            map.remove(&id);
        }
    }
    map.into_iter().collect()
}

fn one_way_back_fast(enc: &Encoded, monos: &[&YMonomial]) -> Option<OneWayBackViolation> {
    // Everything lies in m_+ Q^-, so for m' = m A[i,a]^{-1} A[j,b] the point
    // (j,b) is in the support of e(m), (i,a) is in that of e(m'), and
    // e(m) + δ(j,b) = e(m') + δ(i,a).
    let mut raised: Vec<(u64, u32, u32)> = Vec::new();
    for (n, e) in enc.exps.iter().enumerate() {
        for &(id, _) in e {
            raised.push((enc.hash[n].wrapping_add(enc.salt[id as usize]), n as u32, id));
        }
    }
    raised.par_sort_unstable();
    let mut by_hash: Vec<(u64, u32)> = enc.hash.iter().enumerate().map(|(n, &h)| (h, n as u32)).collect();
    by_hash.par_sort_unstable();

    // In the cone every lowering m A[i,a]^{-1} ∈ M of m shows up as a raised
    // entry of the lower monomial, since e(m) - δ(i,a) is negative at (i,a).
    // A merge of the two sorted lists gives all ids lowerable within M.
    let mut lower: Vec<(u32, u32)> = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < raised.len() && y < by_hash.len() {
        let h = raised[x].0;
        match h.cmp(&by_hash[y].0) {
            Ordering::Less => x += 1,
            Ordering::Greater => y += 1,
            Ordering::Equal => {
                let xe = x + raised[x..].iter().take_while(|r| r.0 == h).count();
                let ye = y + by_hash[y..].iter().take_while(|r| r.0 == h).count();
                for &(_, c, id) in &raised[x..xe] {
                    for &(_, n) in &by_hash[y..ye] {
                        if eq_plus(&enc.exps[n as usize], &enc.exps[c as usize], &[(id, 1)]) {
                            lower.push((n, id));
                        }
                    }
                }
                (x, y) = (xe, ye);
            }
        }
    }
    drop(by_hash);
    lower.par_sort_unstable();
    let mut offsets = vec![0usize; enc.exps.len() + 1];
    for &(n, _) in &lower {
        offsets[n as usize + 1] += 1;
    }
    for n in 0..enc.exps.len() {
        offsets[n + 1] += offsets[n];
    }
    let lowerable = |n: u32, id: u32| {
        let ids = &lower[offsets[n as usize]..offsets[n as usize + 1]];
        ids.binary_search_by_key(&id, |&(_, i)| i).is_ok()
    };

    let pair_violation = |same: &[(u32, u32)]| {
        for &(n, jb) in same {
            for &(n2, ia) in same {
                if n != n2 && ia != jb && !lowerable(n, ia) {
                    return Some(OneWayBackViolation {
                        m: monos[n as usize].clone(),
                        lowered: enc.point(ia),
                        raised: enc.point(jb),
                    });
                }
            }
        }
        None
    };
    let runs: Vec<&[(u64, u32, u32)]> = raised.chunk_by(|a, b| a.0 == b.0).filter(|r| r.len() > 1).collect();
    runs.par_iter().find_map_first(|run| {
        let (_, n0, id0) = run[0];
        // e(n) + δ(id) = e(n0) + δ(id0) for every entry, barring collisions.
        let same_raise = |&(_, n, id): &(u64, u32, u32)| {
            let (e, e0) = (&enc.exps[n as usize], &enc.exps[n0 as usize]);
            match id.cmp(&id0) {
                Ordering::Equal => e == e0,
                Ordering::Less => eq_plus(e, e0, &[(id, -1), (id0, 1)]),
                Ordering::Greater => eq_plus(e, e0, &[(id0, 1), (id, -1)]),
            }
        };
        let groups: Vec<Vec<(u32, u32)>> = if run.iter().all(same_raise) {
            vec![run.iter().map(|&(_, n, id)| (n, id)).collect()]
        } else {
            // Hash collision: split by the exact raised vector.
            let mut split: BTreeMap<Sparse, Vec<(u32, u32)>> = BTreeMap::new();
            for &(_, n, id) in run.iter() {
                split.entry(shifted(&enc.exps[n as usize], &[(id, 1)])).or_default().push((n, id));
            }
            split.into_values().collect()
        };
        groups.iter().find_map(|same| pair_violation(same))
    })
}

/// `a == b + Σ shifts` for sparse vectors sorted by id; `shifts` is sorted
/// with distinct ids.
fn eq_plus(a: &[(u32, i32)], b: &[(u32, i32)], shifts: &[(u32, i32)]) -> bool {
    let mut a = a.iter().copied();
    let mut b = b.iter().copied().peekable();
    let mut s = shifts.iter().copied().peekable();
    loop {
        // Next entry of b + Σ shifts in id order.
        let next = match (b.peek().copied(), s.peek().copied()) {
            (None, None) => return a.next().is_none(),
            (Some(x), None) => {
                b.next();
                x
            }
            (None, Some(y)) => {
                s.next();
                y
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                b.next();
                x
            }
            (Some(x), Some(y)) if y.0 < x.0 => {
                s.next();
                y
            }
            (Some(x), Some(y)) => {
                b.next();
                s.next();
                (x.0, x.1 + y.1)
            }
        };
        if next.1 != 0 && a.next() != Some(next) {
            return false;
        }
    }
}

fn one_way_back_pairs(
    cd: &CartanData,
    monos: &[&YMonomial],
    set: &HashSet<&YMonomial>,
) -> Option<OneWayBackViolation> {
    (0..monos.len()).into_par_iter().find_map_first(|a| {
        for b in 0..monos.len() {
            if a == b {
                continue;
            }
            let Some(e) = factor_sorted(cd, &(monos[b] / monos[a])) else { continue };
            let [(p, x), (q, y)] = e[..] else { continue };
            let (ia, jb) = match (x, y) {
                (-1, 1) => (p, q),
                (1, -1) => (q, p),
                _ => continue,
            };
            let lowered = monos[a] / &a_monomial(cd, ia.i, ia.k).ok()?;
            if !set.contains(&lowered) {
                return Some(OneWayBackViolation { m: monos[a].clone(), lowered: ia, raised: jb });
            }
        }
        None
    })
}

fn sl2_strings(ch: &BTreeMap<Sl2Monomial, u64>) -> Vec<String> {
    ch.iter()
        .flat_map(|(m, &n)| std::iter::repeat_n(m.to_string(), n as usize))
        .collect()
}

/// Checks one slice `m Z[A[i,·]^{±1}] ∩ M` against the simple sl2
/// characters of its node-dominant members.
fn check_slice(sl2: Sl2, i: usize, monos: &[&YMonomial], members: &[u32]) -> Option<SliceViolation> {
    if let [n] = members {
        // A one-term simple character is the trivial one.
        let b = monos[*n as usize].beta_project(i);
        if b.is_one() {
            return None;
        }
    }
    let mut actual: BTreeMap<Sl2Monomial, u64> = BTreeMap::new();
    for &n in members {
        *actual.entry(monos[n as usize].beta_project(i)).or_default() += 1;
    }
    let mut expected = BTreeMap::new();
    for b in actual.keys().filter(|b| b.is_dominant()) {
        let ch = sl2.simple_qchar(b).expect("dominant");
        if ch == actual {
            return None;
        }
        expected = ch;
    }
    Some(SliceViolation {
        m: monos[members[0] as usize].clone(),
        node: i,
        actual: sl2_strings(&actual),
        expected: sl2_strings(&expected),
    })
}

/// The first slice violation at each failing node.
fn slice_check(cd: &CartanData, enc: &Encoded, monos: &[&YMonomial]) -> Vec<SliceViolation> {
    // Bit i-1 set when some Y[i,·] occurs.
    let nodes: Vec<u64> = monos.par_iter().map(|m| m.iter().fold(0, |b, (p, _)| b | 1 << (p.i - 1))).collect();
    let mut out = Vec::new();
    for i in 1..=cd.rank() {
        let sl2 = Sl2::new(cd.r[i - 1]);
        let rest = |n: u32| enc.exps[n as usize].iter().filter(move |&&(id, _)| enc.node(id) != i);
        let key = |n: usize| {
            let own = enc.exps[n]
                .iter()
                .filter(|&&(id, _)| enc.node(id) == i)
                .fold(0u64, |h, &(id, x)| h.wrapping_add(enc.salt[id as usize].wrapping_mul(x as u64)));
            enc.hash[n].wrapping_sub(own).wrapping_add(mix(u64::MAX - enc.coset[n] as u64))
        };
        let mut order: Vec<(u64, u32)> = (0..monos.len()).into_par_iter().map(|n| (key(n), n as u32)).collect();
        order.par_sort_unstable();
        let runs: Vec<&[(u64, u32)]> = order.chunk_by(|a, b| a.0 == b.0).collect();
        let bad = runs.par_iter().find_map_first(|run| {
            let n0 = run[0].1;
            if run.len() == 1 {
                // A one-term simple character is the trivial one.
                if nodes[n0 as usize] & 1 << (i - 1) == 0 {
                    return None;
                }
                return check_slice(sl2, i, monos, &[n0]);
            }
            let exact = run.iter().all(|&(_, n)| enc.coset[n as usize] == enc.coset[n0 as usize] && rest(n).eq(rest(n0)));
            if exact {
                let members: Vec<u32> = run.iter().map(|&(_, n)| n).collect();
                return check_slice(sl2, i, monos, &members);
            }
            // Hash collision: split exactly.
            let mut slices: BTreeMap<(u32, Sparse), Vec<u32>> = BTreeMap::new();
            for &(_, n) in run.iter() {
                slices.entry((enc.coset[n as usize], rest(n).copied().collect())).or_default().push(n);
            }
            slices.values().find_map(|members| check_slice(sl2, i, monos, members))
        });
        out.extend(bad);
    }
    out
}

/// Checks the three sufficient conditions for `Σ_{m ∈ M} m` to be the
/// q-character of `L(m_+)`.
pub fn verify_theorem_a(cd: &CartanData, m_plus: &YMonomial, set: &QCharacter) -> TheoremAReport {
    let monos: Vec<&YMonomial> = set.terms.keys().collect();
    let dominant: Vec<YMonomial> = monos.iter().filter(|m| m.is_dominant()).map(|m| (*m).clone()).collect();
    let cond_i = dominant.len() == 1 && dominant[0] == *m_plus;

    let enc = Encoded::new(cd, m_plus, &monos);
    let cond_ii_violation = if enc.in_cone() {
        one_way_back_fast(&enc, &monos)
    } else {
        let lookup: HashSet<&YMonomial> = monos.iter().copied().collect();
        one_way_back_pairs(cd, &monos, &lookup)
    };
    let cond_iii_violations = slice_check(cd, &enc, &monos);

    TheoremAReport {
        multiplicity_free: set.is_thin(),
        cond_i,
        dominant,
        cond_ii: cond_ii_violation.is_none(),
        cond_ii_violation,
        cond_iii: cond_iii_violations.is_empty(),
        cond_iii_violations,
    }
}

/// The ordinary character: the multiset of weights of the terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCharacter {
    pub weights: BTreeMap<Weight, u64>,
    pub weyl_invariant: bool,
}

pub fn restricted_character(cd: &CartanData, qc: &QCharacter) -> RestrictedCharacter {
    let mut weights: BTreeMap<Weight, u64> = BTreeMap::new();
    for (m, &n) in &qc.terms {
        *weights.entry(weight_of(cd, m)).or_default() += n;
    }
    let weyl_invariant = (1..=cd.rank()).all(|i| {
        weights.iter().all(|(w, &n)| {
            let s = cd.simple_reflection(i, w).expect("node in range");
            weights.get(&s) == Some(&n)
        })
    });
    RestrictedCharacter { weights, weyl_invariant }
}

/// JSON form of a q-character:
/// `{"type":"B","rank":4,"snake":[[4,1],[4,3]],"terms":[{"m":[[i,k,e],...],"mult":1},...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCharJson {
    #[serde(rename = "type")]
    pub kind: Kind,
    pub rank: usize,
    pub snake: Vec<[i64; 2]>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub m: YMonomial,
    pub mult: u64,
}

impl QCharJson {
    pub fn new(snake: &Snake, qc: &QCharacter) -> Self {
        let t = snake.lie_type();
        QCharJson {
            kind: t.kind(),
            rank: t.rank(),
            snake: snake.points().iter().map(|p| [p.i as i64, p.k]).collect(),
            terms: qc.terms.iter().map(|(m, &mult)| TermJson { m: m.clone(), mult }).collect(),
        }
    }

    /// Rebuilds the snake and character.
    pub fn decode(&self) -> Result<(Snake, QCharacter)> {
        let t = LieType::new(self.kind, self.rank)?;
        let pts: Vec<LatticePoint> = self
            .snake
            .iter()
            .map(|&[i, k]| {
                usize::try_from(i)
                    .map(|i| LatticePoint::new(i, k))
                    .map_err(|_| Error::Parse(format!("bad node {i}")))
            })
            .collect::<Result<_>>()?;
        let snake = Snake::new(t, pts)?;
        let terms = self.terms.iter().map(|t| (t.m.clone(), t.mult)).collect();
        Ok((snake.clone(), QCharacter::new(snake.highest_monomial(), terms)))
    }
}

/// Canonical `A`-exponents of every term relative to the highest one, or
/// `None` for terms outside `m_+ Q`.
pub fn a_exponents(cd: &CartanData, qc: &QCharacter) -> BTreeMap<YMonomial, Option<AExponent>> {
    qc.terms
        .keys()
        .map(|m| (m.clone(), factor_as_a(cd, &(m / &qc.highest))))
        .collect()
}

/// Monomials shared by two characters, and those in only one of them.
pub fn compare(a: &QCharacter, b: &QCharacter) -> (usize, Vec<YMonomial>, Vec<YMonomial>) {
    let ka: BTreeSet<_> = a.terms.iter().collect();
    let kb: BTreeSet<_> = b.terms.iter().collect();
    let only_a = ka.difference(&kb).map(|(m, _)| (*m).clone()).collect();
    let only_b = kb.difference(&ka).map(|(m, _)| (*m).clone()).collect();
    (ka.intersection(&kb).count(), only_a, only_b)
}
