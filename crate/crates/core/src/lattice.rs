//! The monomial lattice: Laurent monomials in the variables `Y[i,k]`, the
//! simple-root monomials `A[j,l]`, and the index sets `X`, `W` with the
//! plane embedding `ι`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{CartanData, Kind, LieType, Weight};
use crate::error::{Error, Result};
use crate::sl2::Sl2Monomial;

/// A point `(i, k)` of `I × Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub i: usize,
    pub k: i64,
}

impl LatticePoint {
    pub const fn new(i: usize, k: i64) -> Self {
        LatticePoint { i, k }
    }
}

impl From<(usize, i64)> for LatticePoint {
    fn from((i, k): (usize, i64)) -> Self {
        LatticePoint { i, k }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.k)
    }
}

impl LieType {
    /// Membership in `X`: type A needs `i - k` odd; type B needs `k` odd on
    /// the short node and even elsewhere.
    pub fn in_x(&self, i: usize, k: i64) -> bool {
        if i == 0 || i > self.rank() {
            return false;
        }
        match self.kind() {
            Kind::A => (i as i64 - k).rem_euclid(2) == 1,
            Kind::B if i == self.rank() => k.rem_euclid(2) == 1,
            Kind::B => k.rem_euclid(2) == 0,
        }
    }

    /// `(i,k) ∈ W` iff `(i, k - r_i) ∈ X`.
    pub fn in_w(&self, i: usize, k: i64) -> bool {
        i >= 1 && i <= self.rank() && self.in_x(i, k - self.r(i))
    }

    /// The subset of `X` whose snakes correspond to skew diagrams.
    pub fn in_x_prime(&self, i: usize, k: i64) -> bool {
        match self.kind() {
            Kind::A => self.in_x(i, k),
            Kind::B => i >= 1 && i < self.rank() && (2 * i as i64 - k).rem_euclid(4) == 2,
        }
    }

    pub fn check_x(&self, p: LatticePoint) -> Result<()> {
        if self.in_x(p.i, p.k) {
            Ok(())
        } else {
            Err(Error::NotInX(p.i, p.k))
        }
    }

    /// The injective map `ι: X → Z × Z` used to draw points (and to place
    /// path corners).
    pub fn iota(&self, i: usize, k: i64) -> Result<(i64, i64)> {
        if !self.in_x(i, k) {
            return Err(Error::NotInX(i, k));
        }
        let n = self.rank() as i64;
        let i = i as i64;
        Ok(match self.kind() {
            Kind::A => (i, k),
            Kind::B if i == n => (2 * n - 1, k),
            Kind::B if (2 * n + k - 2 * i).rem_euclid(4) == 2 => (2 * i, k),
            Kind::B => (4 * n - 2 - 2 * i, k),
        })
    }

    /// Inverse of [`LieType::iota`] on its image.
    pub fn iota_inverse(&self, x: i64, y: i64) -> Option<LatticePoint> {
        let n = self.rank() as i64;
        let i = match self.kind() {
            Kind::A => x,
            Kind::B if x == 2 * n - 1 => n,
            Kind::B if x.rem_euclid(2) == 1 => return None,
            Kind::B if x < 2 * n - 1 => x / 2,
            Kind::B => (4 * n - 2 - x) / 2,
        };
        if i < 1 || i > n {
            return None;
        }
        let p = LatticePoint::new(i as usize, y);
        match self.iota(p.i, p.k) {
            Ok(xy) if xy == (x, y) => Some(p),
            _ => None,
        }
    }
}

/// A Laurent monomial in the `Y[i,k]`, kept as a list of `((i,k), e)`
/// sorted by `(i,k)` with no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    exps: Vec<(LatticePoint, i64)>,
}

impl YMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The single variable `Y[i,k]`.
    pub fn y(i: usize, k: i64) -> Self {
        YMonomial { exps: vec![(LatticePoint::new(i, k), 1)] }
    }

    /// Builds a monomial from `(i, k, e)` triples; repeated keys accumulate.
    pub fn from_triples<I>(triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64, i64)>,
    {
        let mut acc: BTreeMap<LatticePoint, i64> = BTreeMap::new();
        for (i, k, e) in triples {
            *acc.entry(LatticePoint::new(i, k)).or_default() += e;
        }
        YMonomial { exps: acc.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// `u_{i,k}(m)`: the exponent of `Y[i,k]`.
    pub fn exponent(&self, i: usize, k: i64) -> i64 {
        let key = LatticePoint::new(i, k);
        self.exps
            .binary_search_by(|(p, _)| p.cmp(&key))
            .map(|idx| self.exps[idx].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.exps.iter().map(|(p, e)| [p.i as i64, p.k, *e]).collect()
    }

    pub fn inverse(&self) -> Self {
        YMonomial { exps: self.exps.iter().map(|&(p, e)| (p, -e)).collect() }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        YMonomial { exps: self.exps.iter().map(|&(p, e)| (p, e * n)).collect() }
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ea)), Some(&&(pb, eb))) => {
                    if pa < pb {
                        out.push((pa, ea));
                        a.next();
                    } else if pb < pa {
                        out.push((pb, sign * eb));
                        b.next();
                    } else {
                        let e = ea + sign * eb;
                        if e != 0 {
                            out.push((pa, e));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&(pb, eb))) => {
                    out.push((pb, sign * eb));
                    b.next();
                }
                (None, None) => break,
            }
        }
        YMonomial { exps: out }
    }

    pub fn is_dominant(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e > 0)
    }

    pub fn is_anti_dominant(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e < 0)
    }

    /// `j`-dominant: no negative exponent on node `j`.
    pub fn is_node_dominant(&self, j: usize) -> bool {
        self.exps.iter().all(|&(p, e)| p.i != j || e > 0)
    }

    pub fn classify(&self, rank: usize) -> Classification {
        Classification {
            dominant: self.is_dominant(),
            anti_dominant: self.is_anti_dominant(),
            node_dominant: (1..=rank).map(|j| self.is_node_dominant(j)).collect(),
        }
    }

    /// Restriction to node `i`: every `Y[j,k]` with `j != i` is sent to 1.
    pub fn beta_project(&self, i: usize) -> Sl2Monomial {
        Sl2Monomial::from_pairs(self.exps.iter().filter(|(p, _)| p.i == i).map(|&(p, e)| (p.k, e)))
    }

    pub fn min_k(&self) -> Option<i64> {
        self.exps.iter().map(|(p, _)| p.k).min()
    }

    pub fn max_k(&self) -> Option<i64> {
        self.exps.iter().map(|(p, _)| p.k).max()
    }
}

impl Mul for &YMonomial {
    type Output = YMonomial;

    fn mul(self, rhs: &YMonomial) -> YMonomial {
        self.merge(rhs, 1)
    }
}

impl Div for &YMonomial {
    type Output = YMonomial;

    fn div(self, rhs: &YMonomial) -> YMonomial {
        self.merge(rhs, -1)
    }
}

impl<'a> std::iter::Product<&'a YMonomial> for YMonomial {
    fn product<I: Iterator<Item = &'a YMonomial>>(iter: I) -> Self {
        iter.fold(YMonomial::one(), |acc, m| &acc * m)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (n, (p, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Y[{},{}]^{}", p.i, p.k, e)?;
        }
        Ok(())
    }
}

impl FromStr for YMonomial {
    type Err = Error;

    /// Parses the text form produced by `Display`, e.g. `Y[2,1]^1 Y[1,4]^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Self::one());
        }
        let bad = || Error::Parse(format!("bad monomial {s:?}"));
        let mut triples = Vec::new();
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix("Y[").ok_or_else(bad)?;
            let (idx, exp) = body.split_once(']').ok_or_else(bad)?;
            let (i, k) = idx.split_once(',').ok_or_else(bad)?;
            let e = match exp.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if exp.is_empty() => 1,
                None => return Err(bad()),
            };
            let i = i.trim().parse().map_err(|_| bad())?;
            let k = k.trim().parse().map_err(|_| bad())?;
            triples.push((i, k, e));
        }
        Ok(Self::from_triples(triples))
    }
}

impl Serialize for YMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for YMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(d)?;
        if triples.iter().any(|t| t[0] < 1) {
            return Err(D::Error::custom("node index must be positive"));
        }
        Ok(Self::from_triples(triples.into_iter().map(|[i, k, e]| (i as usize, k, e))))
    }
}

/// Dominance flags of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub dominant: bool,
    pub anti_dominant: bool,
    /// Entry `j - 1` is true when the monomial is `j`-dominant.
    pub node_dominant: Vec<bool>,
}

/// The exponents `n_{j,l}` of a product `∏ A[j,l]^{n_{j,l}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AExponent(BTreeMap<LatticePoint, i64>);

impl AExponent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (LatticePoint, i64)>>(pairs: I) -> Self {
        let mut out = Self::new();
        for (p, e) in pairs {
            out.add(p, e);
        }
        out
    }

    pub fn add(&mut self, p: LatticePoint, e: i64) {
        let slot = self.0.entry(p).or_default();
        *slot += e;
        if *slot == 0 {
            self.0.remove(&p);
        }
    }

    pub fn get(&self, p: LatticePoint) -> i64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `v`, the homomorphism sending every `A[j,l]` to `-1`.
    pub fn v(&self) -> i64 {
        -self.0.values().sum::<i64>()
    }

    /// All exponents are `<= 0`, i.e. the product lies in `Q^-`.
    pub fn is_negative(&self) -> bool {
        self.0.values().all(|&e| e < 0)
    }

    /// Every variable involved sits on node `i`.
    pub fn only_node(&self, i: usize) -> bool {
        self.0.keys().all(|p| p.i == i)
    }

    /// The exponents with node `i` removed.
    pub fn without_node(&self, i: usize) -> AExponent {
        AExponent(self.0.iter().filter(|(p, _)| p.i != i).map(|(&p, &e)| (p, e)).collect())
    }

    pub fn difference(&self, other: &AExponent) -> AExponent {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.add(p, -e);
        }
        out
    }

    pub fn to_monomial(&self, cd: &CartanData) -> YMonomial {
        self.iter().fold(YMonomial::one(), |acc, (p, e)| &acc * &a_expansion(cd, p.i, p.k).pow(e))
    }
}

/// `A[j,l]` in terms of the `Y`s, for any integer `l`.
fn a_expansion(cd: &CartanData, j: usize, l: i64) -> YMonomial {
    let rj = cd.r[j - 1];
    let mut triples = vec![(j, l + rj, 1), (j, l - rj, 1)];
    for i in 1..=cd.rank() {
        match cd.c(i, j) {
            -1 => triples.push((i, l, -1)),
            -2 => {
                triples.push((i, l + 1, -1));
                triples.push((i, l - 1, -1));
            }
            _ => {}
        }
    }
    YMonomial::from_triples(triples)
}

/// The monomial `A[j,l]` for `(j,l) ∈ W`.
pub fn a_monomial(cd: &CartanData, j: usize, l: i64) -> Result<YMonomial> {
    cd.lie_type.check_node(j)?;
    if !cd.lie_type.in_w(j, l) {
        return Err(Error::NotInW(j, l));
    }
    Ok(a_expansion(cd, j, l))
}

/// `wt`, sending `Y[i,k]` to the fundamental weight `ω_i`.
pub fn weight_of(cd: &CartanData, m: &YMonomial) -> Weight {
    let mut w = Weight::zero(cd.rank());
    for (p, e) in m.iter() {
        w.0[p.i - 1] += e;
    }
    w
}

/// Writes `ratio` as a product of `A[j,l]^{±1}`, or returns `None` when it
/// is not in the subgroup they generate.
///
/// Each `A[j,l]` has a unique factor of maximal spectral index, namely
/// `Y[j, l + r_j]`, so the exponents can be read off level by level from
/// the top; dually the minimal index bounds how far down a genuine
/// factorization can reach.
pub fn factor_as_a(cd: &CartanData, ratio: &YMonomial) -> Option<AExponent> {
    factor_sorted(cd, ratio).map(AExponent::from_pairs)
}

/// [`factor_as_a`] returning `((j,l), n)` sorted by `(j,l)`.
pub fn factor_sorted(cd: &CartanData, ratio: &YMonomial) -> Option<Vec<(LatticePoint, i64)>> {
    let (Some(lo), Some(hi)) = (ratio.min_k(), ratio.max_k()) else {
        return Some(Vec::new());
    };
    let n = cd.rank();
    if ratio.iter().any(|(p, _)| p.i == 0 || p.i > n) {
        return None;
    }
    let width = (hi - lo + 1) as usize;
    // grid[k - lo][i - 1]
    let mut grid = vec![0i64; width * n];
    for (p, e) in ratio.iter() {
        grid[(p.k - lo) as usize * n + p.i - 1] = e;
    }
    let mut out = Vec::new();
    for k in (lo..=hi).rev() {
        let row = (k - lo) as usize;
        for i in 1..=n {
            let e = grid[row * n + i - 1];
            if e == 0 {
                continue;
            }
            let r = cd.r[i - 1];
            if k - 2 * r < lo {
                return None;
            }
            let l = k - r;
            out.push((LatticePoint::new(i, l), e));
            let mut sub = |kk: i64, ii: usize, x: i64| grid[(kk - lo) as usize * n + ii - 1] -= x * e;
            sub(l + r, i, 1);
            sub(l - r, i, 1);
            for other in 1..=n {
                match cd.c(other, i) {
                    -1 => sub(l, other, -1),
                    -2 => {
                        sub(l + 1, other, -1);
                        sub(l - 1, other, -1);
                    }
                    _ => {}
                }
            }
        }
    }
    debug_assert!(grid.iter().all(|&x| x == 0));
    out.sort();
    Some(out)
}
