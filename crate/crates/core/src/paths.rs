//! The path model: the sets `P[i,k]`, their corners, the monomial of a
//! path, lowering and raising moves, and the strictly-above relation.
//!
//! Plane coordinates grow downwards: a path is "higher" when its `y`
//! values are smaller. Type B paths visit the column `x = 2N-1` at
//! heights offset by a formal infinitesimal, see [`EpsRational`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::cartan::{Kind, LieType};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, YMonomial};

/// `m + e·ε` for a fixed infinitesimal `0 < ε < 1/2`, ordered
/// lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsRational {
    pub m: i64,
    pub e: i64,
}

impl EpsRational {
    pub const fn new(m: i64, e: i64) -> Self {
        EpsRational { m, e }
    }

    pub const fn int(m: i64) -> Self {
        EpsRational { m, e: 0 }
    }

    /// An integer with the same order as `self`, valid while `|e| <= 1`.
    pub fn key(&self) -> i64 {
        debug_assert!(self.e.abs() <= 1);
        4 * self.m + self.e
    }
}

impl Add for EpsRational {
    type Output = EpsRational;

    fn add(self, rhs: EpsRational) -> EpsRational {
        EpsRational { m: self.m + rhs.m, e: self.e + rhs.e }
    }
}

impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e.cmp(&0) {
            Ordering::Equal => write!(f, "{}", self.m),
            Ordering::Greater if self.e == 1 => write!(f, "{}+ε", self.m),
            Ordering::Less if self.e == -1 => write!(f, "{}-ε", self.m),
            Ordering::Greater => write!(f, "{}+{}ε", self.m, self.e),
            Ordering::Less => write!(f, "{}{}ε", self.m, self.e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: i64,
    pub y: EpsRational,
}

impl PlanePoint {
    pub const fn new(x: i64, y: EpsRational) -> Self {
        PlanePoint { x, y }
    }
}

/// A path of `P[i,k]`.
///
/// For type B with `i < N` the points are `a_0..a_N` followed by
/// `ā_N..ā_0`, and `split = Some(N+1)` marks where `ā` begins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub lie_type: LieType,
    pub origin: LatticePoint,
    pub points: Vec<PlanePoint>,
    pub split: Option<usize>,
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.origin, &self.points).cmp(&(other.origin, &other.points))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CornerSet {
    pub upper: BTreeSet<LatticePoint>,
    pub lower: BTreeSet<LatticePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Raise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ThisError)]
pub enum MoveError {
    #[error("no move possible at this point")]
    CannotMove,
    #[error("the move would create an overlap")]
    WouldOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Highest,
    Lowest,
}

/// Spin half-paths of `P[N,ℓ]` in type B, `ℓ` odd.
fn spin_paths(n: i64, l: i64) -> Vec<Vec<PlanePoint>> {
    let left = l.rem_euclid(4) == 3;
    let x_at = |r: i64| if left { 2 * r } else { 4 * n - 2 - 2 * r };
    let mut out = Vec::with_capacity(1 << n);
    for signs in 0u32..(1 << n) {
        let mut y = EpsRational::int(l + 2 * n - 1);
        let mut pts = vec![PlanePoint::new(x_at(0), y)];
        for r in 1..n {
            y = y + EpsRational::int(if signs >> (r - 1) & 1 == 1 { 2 } else { -2 });
            pts.push(PlanePoint::new(x_at(r), y));
        }
        let last = if signs >> (n - 1) & 1 == 1 { EpsRational::new(1, 1) } else { EpsRational::new(-1, -1) };
        pts.push(PlanePoint::new(2 * n - 1, y + last));
        out.push(pts);
    }
    out
}

/// All paths of `P[i,k]`, sorted.
pub fn gen_paths(t: LieType, i: usize, k: i64) -> Result<Vec<Path>> {
    t.check_node(i)?;
    t.check_x(LatticePoint::new(i, k))?;
    let n = t.rank() as i64;
    let origin = LatticePoint::new(i, k);
    let mut out = Vec::new();
    match t.kind() {
        Kind::A => {
            let steps = (n + 1) as u32;
            for mask in 0u64..(1 << steps) {
                if mask.count_ones() as usize != i {
                    continue;
                }
                let mut y = i as i64 + k;
                let mut pts = vec![PlanePoint::new(0, EpsRational::int(y))];
                for r in 0..steps {
                    y += if mask >> r & 1 == 1 { -1 } else { 1 };
                    pts.push(PlanePoint::new(r as i64 + 1, EpsRational::int(y)));
                }
                out.push(Path { lie_type: t, origin, points: pts, split: None });
            }
        }
        Kind::B if i as i64 == n => {
            for pts in spin_paths(n, k) {
                out.push(Path { lie_type: t, origin, points: pts, split: None });
            }
        }
        Kind::B => {
            let d = 2 * n - 2 * i as i64 - 1;
            let tops = spin_paths(n, k - d);
            let bottoms = spin_paths(n, k + d);
            for a in &tops {
                for b in &bottoms {
                    if a[n as usize].y <= b[n as usize].y {
                        continue;
                    }
                    let mut pts = a.clone();
                    pts.extend(b.iter().rev());
                    out.push(Path { lie_type: t, origin, points: pts, split: Some(n as usize + 1) });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

impl Path {
    fn n(&self) -> i64 {
        self.lie_type.rank() as i64
    }

    /// Whether column `x` is a boundary column where no ordinary corner sits.
    fn is_boundary(&self, x: i64) -> bool {
        match self.lie_type.kind() {
            Kind::A => x == 0 || x == self.n() + 1,
            Kind::B => x == 0 || x == 2 * self.n() - 1 || x == 4 * self.n() - 2,
        }
    }

    fn contains(&self, x: i64, y: EpsRational) -> bool {
        self.points.iter().any(|p| p.x == x && p.y == y)
    }

    /// Index of the interior local minimum (`sign = -1`) or maximum
    /// (`sign = 1`) at plane point `(x, y)`.
    fn extremum_at(&self, x: i64, y: i64, sign: i64) -> Option<usize> {
        let target = EpsRational::int(y);
        (1..self.points.len().saturating_sub(1)).find(|&r| {
            let p = self.points[r];
            p.x == x
                && p.y == target
                && !self.is_boundary(x)
                && self.points[r - 1].y.cmp(&p.y) == (-sign).cmp(&0)
                && self.points[r + 1].y.cmp(&p.y) == (-sign).cmp(&0)
        })
    }

    pub fn corners(&self) -> CornerSet {
        let t = self.lie_type;
        let mut out = CornerSet::default();
        let pts = &self.points;
        for r in 1..pts.len().saturating_sub(1) {
            let (prev, cur, next) = (pts[r - 1].y, pts[r], pts[r + 1].y);
            if self.is_boundary(cur.x) {
                continue;
            }
            let set = if prev > cur.y && next > cur.y {
                &mut out.upper
            } else if prev < cur.y && next < cur.y {
                &mut out.lower
            } else {
                continue;
            };
            let lp = t
                .iota_inverse(cur.x, cur.y.m)
                .unwrap_or_else(|| panic!("corner at ({}, {}) off the image of iota", cur.x, cur.y));
            set.insert(lp);
        }
        if t.kind() == Kind::B {
            let col = 2 * self.n() - 1;
            for p in pts.iter().filter(|p| p.x == col) {
                let l = p.y.m;
                if p.y.e == -1 && !self.contains(col, EpsRational::new(l, 1)) {
                    out.upper.insert(LatticePoint::new(t.rank(), l));
                }
                if p.y.e == 1 && !self.contains(col, EpsRational::new(l, -1)) {
                    out.lower.insert(LatticePoint::new(t.rank(), l));
                }
            }
        }
        out
    }

    /// `m(p)`: `Y` over upper corners times `Y^{-1}` over lower corners.
    pub fn monomial(&self) -> YMonomial {
        let c = self.corners();
        YMonomial::from_triples(
            c.upper
                .iter()
                .map(|p| (p.i, p.k, 1))
                .chain(c.lower.iter().map(|p| (p.i, p.k, -1))),
        )
    }

    pub fn can_lower(&self, j: usize, l: i64) -> bool {
        let t = self.lie_type;
        let r = t.r(j);
        if !t.in_w(j, l) {
            return false;
        }
        let c = self.corners();
        c.upper.contains(&LatticePoint::new(j, l - r)) && !c.upper.contains(&LatticePoint::new(j, l + r))
    }

    pub fn can_raise(&self, j: usize, l: i64) -> bool {
        let t = self.lie_type;
        let r = t.r(j);
        if !t.in_w(j, l) {
            return false;
        }
        let c = self.corners();
        c.lower.contains(&LatticePoint::new(j, l + r)) && !c.lower.contains(&LatticePoint::new(j, l - r))
    }

    /// `p A[j,l]^{-1}` or `p A[j,l]`.
    pub fn try_move(&self, j: usize, l: i64, dir: Direction) -> Result<Path, MoveError> {
        let ok = match dir {
            Direction::Lower => self.can_lower(j, l),
            Direction::Raise => self.can_raise(j, l),
        };
        if !ok {
            return Err(MoveError::CannotMove);
        }
        let t = self.lie_type;
        let n = self.n();
        // Lowering moves the corner at l - r_j down; raising moves the one
        // at l + r_j up by the same amounts.
        let (sign, corner_k) = match dir {
            Direction::Lower => (1, l - t.r(j)),
            Direction::Raise => (-1, l + t.r(j)),
        };
        let mut out = self.clone();
        match t.kind() {
            Kind::A => {
                let r = self
                    .extremum_at(j as i64, corner_k, -sign)
                    .expect("corner point present");
                out.points[r].y.m += 2 * sign;
            }
            Kind::B if j as i64 == n => {
                let from = EpsRational::new(corner_k, -sign);
                let r = self
                    .points
                    .iter()
                    .position(|p| p.x == 2 * n - 1 && p.y == from)
                    .expect("spin corner point present");
                out.points[r].y = EpsRational::new(corner_k + 2 * sign, sign);
            }
            Kind::B => {
                let (x, _) = t.iota(j, corner_k).expect("corner in X");
                let r = self.extremum_at(x, corner_k, -sign).expect("corner point present");
                out.points[r].y.m += 4 * sign;
                if j as i64 == n - 1 {
                    let s = [r - 1, r + 1]
                        .into_iter()
                        .find(|&s| self.points[s].x == 2 * n - 1)
                        .expect("spin column adjacent to node N-1");
                    out.points[s].y = out.points[s].y + EpsRational::new(2 * sign, -2 * sign);
                }
            }
        }
        debug_assert!(out.is_valid(), "move left P[{}]: {:?}", self.origin, out.points);
        Ok(out)
    }

    /// Checks the defining step and endpoint constraints of `P[i,k]`.
    pub fn is_valid(&self) -> bool {
        gen_paths(self.lie_type, self.origin.i, self.origin.k)
            .map(|all| all.binary_search(self).is_ok())
            .unwrap_or(false)
    }

    /// `(x,y) ∈ p` and `(x,z) ∈ p'` imply `y < z`.
    pub fn strictly_above(&self, other: &Path) -> bool {
        self.points
            .iter()
            .all(|p| other.points.iter().filter(|q| q.x == p.x).all(|q| p.y < q.y))
    }

    /// Pointwise minimum of two paths of the same set.
    pub fn top(&self, other: &Path) -> Result<Path> {
        if self.origin != other.origin || self.lie_type != other.lie_type {
            return Err(Error::Domain(format!(
                "top of paths from P{} and P{}",
                self.origin, other.origin
            )));
        }
        let mut out = self.clone();
        for (p, q) in out.points.iter_mut().zip(&other.points) {
            p.y = p.y.min(q.y);
        }
        Ok(out)
    }

    /// The path as a polyline for plotting: `[[x, m, e], ...]`.
    pub fn to_polyline(&self) -> Vec<[i64; 3]> {
        self.points.iter().map(|p| [p.x, p.y.m, p.y.e]).collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| format!("({},{})", p.x, p.y)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The highest (no lower corners) or lowest (no upper corners) path.
pub fn extremal_path(t: LieType, i: usize, k: i64, which: Extremal) -> Result<Path> {
    let mut found = gen_paths(t, i, k)?.into_iter().filter(|p| {
        let c = p.corners();
        match which {
            Extremal::Highest => c.lower.is_empty(),
            Extremal::Lowest => c.upper.is_empty(),
        }
    });
    let p = found.next().expect("extremal path exists");
    debug_assert!(found.next().is_none());
    Ok(p)
}

/// All `(j, l) ∈ W` at which some move could apply to paths of `P[i,k]`:
/// the corner positions shifted by `±r_j`.
pub fn move_sites(p: &Path) -> Vec<(usize, i64, Direction)> {
    let t = p.lie_type;
    let c = p.corners();
    let mut out: Vec<_> = c
        .upper
        .iter()
        .map(|q| (q.i, q.k + t.r(q.i), Direction::Lower))
        .chain(c.lower.iter().map(|q| (q.i, q.k - t.r(q.i), Direction::Raise)))
        .collect();
    out.sort_by_key(|&(j, l, d)| (j, l, d == Direction::Raise));
    out
}
