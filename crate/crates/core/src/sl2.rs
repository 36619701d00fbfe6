//! Exact q-characters of simple modules and Weyl modules of quantum affine
//! sl2, used as the local model for every node of the larger algebra.
//!
//! A node `i` with `r_i = s` restricts to an sl2 copy whose spectral
//! indices move in steps of `s`: there `A_a = Y_{a+s} Y_{a-s}` and the
//! fundamental character is `Y_a + Y_{a+2s}^{-1}`. [`Sl2`] carries that step.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A Laurent monomial in the variables `Y_k` of a single node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Monomial(BTreeMap<i64, i64>);

/// A multiset of sl2 monomials.
pub type Sl2Character = BTreeMap<Sl2Monomial, u64>;

impl Sl2Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (k, e) in pairs {
            out.add(k, e);
        }
        out
    }

    fn add(&mut self, k: i64, e: i64) {
        let slot = self.0.entry(k).or_default();
        *slot += e;
        if *slot == 0 {
            self.0.remove(&k);
        }
    }

    pub fn exponent(&self, k: i64) -> i64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&k, &e)| (k, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.values().all(|&e| e > 0)
    }

    pub fn mul(&self, other: &Sl2Monomial) -> Sl2Monomial {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.add(k, e);
        }
        out
    }
}

impl fmt::Display for Sl2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.iter().map(|(k, e)| format!("Y[{k}]^{e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The q-string `{c-(r-1)s, c-(r-3)s, ..., c+(r-1)s}` of length `r`
/// centred on `c`, for the step `s` of the ambient [`Sl2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QString {
    pub center: i64,
    pub length: u32,
}

/// Which of the five local situations holds at a spectral index `a` for a
/// monomial of a thin simple module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Case {
    /// `u_a = 1`, `u_{a+2s} = 0`: `m A_{a+s}^{-1}` is in the simple module.
    Lowerable,
    /// `u_a = u_{a+2s} = 1`: `m A_{a+s}^{-1}` is in the Weyl module only.
    LowerableInWeylOnly,
    /// `u_a = -1`, `u_{a-2s} = 0`: `m A_{a-s}` is in the simple module.
    Raisable,
    /// `u_a = u_{a-2s} = -1`: `m A_{a-s}` is in the Weyl module only.
    RaisableInWeylOnly,
    /// `u_a = 0`: neither neighbour is in the Weyl module.
    Inert,
}

/// The sl2 model at a given spectral step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2 {
    step: i64,
}

impl Sl2 {
    pub const STANDARD: Sl2 = Sl2 { step: 1 };

    pub fn new(step: i64) -> Self {
        assert!(step > 0, "sl2 step must be positive");
        Sl2 { step }
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn string_points(&self, s: QString) -> impl Iterator<Item = i64> {
        let (c, r, step) = (s.center, s.length as i64, self.step);
        (0..r).map(move |t| c + (2 * t - r + 1) * step)
    }

    /// `A_a = Y_{a+s} Y_{a-s}`.
    pub fn a(&self, a: i64) -> Sl2Monomial {
        Sl2Monomial::from_pairs([(a + self.step, 1), (a - self.step, 1)])
    }

    /// Two strings are in general position when one contains the other or
    /// their union is not a string.
    pub fn general_position(&self, x: QString, y: QString) -> bool {
        let (xs, ys): (BTreeSet<i64>, BTreeSet<i64>) =
            (self.string_points(x).collect(), self.string_points(y).collect());
        if xs.is_subset(&ys) || ys.is_subset(&xs) {
            return true;
        }
        !self.is_string(&xs.union(&ys).copied().collect())
    }

    fn is_string(&self, pts: &BTreeSet<i64>) -> bool {
        pts.iter().zip(pts.iter().skip(1)).all(|(a, b)| b - a == 2 * self.step)
    }

    /// The unique multiset of q-strings in pairwise general position whose
    /// product is `m`.
    ///
    /// Repeatedly peels the longest downward run starting at the largest
    /// remaining index.
    pub fn qstring_decompose(&self, m: &Sl2Monomial) -> Result<Vec<QString>> {
        if !m.is_dominant() {
            return Err(Error::NotDominant(m.to_string()));
        }
        let mut left: BTreeMap<i64, i64> = m.0.clone();
        let mut out = Vec::new();
        while let Some((&top, _)) = left.iter().next_back() {
            let mut bottom = top;
            loop {
                let slot = left.get_mut(&bottom).expect("run point present");
                *slot -= 1;
                if *slot == 0 {
                    left.remove(&bottom);
                }
                if left.contains_key(&(bottom - 2 * self.step)) {
                    bottom -= 2 * self.step;
                } else {
                    break;
                }
            }
            let length = ((top - bottom) / (2 * self.step) + 1) as u32;
            out.push(QString { center: (top + bottom) / 2, length });
        }
        out.sort();
        debug_assert!(out
            .iter()
            .enumerate()
            .all(|(n, &x)| out[n + 1..].iter().all(|&y| self.general_position(x, y))));
        Ok(out)
    }

    /// The evaluation-module character of a single string.
    pub fn string_qchar(&self, s: QString) -> Sl2Character {
        let mut term = Sl2Monomial::from_pairs(self.string_points(s).map(|k| (k, 1)));
        let mut out = Sl2Character::new();
        out.insert(term.clone(), 1);
        let r = s.length as i64;
        for t in 0..r {
            let at = s.center + (r - 2 * t) * self.step;
            term = term.mul(&invert(&self.a(at)));
            *out.entry(term.clone()).or_default() += 1;
        }
        out
    }

    /// `χ_q(L(M))` as a product of evaluation-module characters.
    pub fn simple_qchar(&self, m: &Sl2Monomial) -> Result<Sl2Character> {
        let strings = self.qstring_decompose(m)?;
        Ok(strings
            .iter()
            .fold(unit(), |acc, &s| multiply(&acc, &self.string_qchar(s))))
    }

    /// `χ_q(W(M)) = ∏ (Y_a + Y_{a+2s}^{-1})` over the points of `M`.
    pub fn weyl_qchar(&self, m: &Sl2Monomial) -> Result<Sl2Character> {
        if !m.is_dominant() {
            return Err(Error::NotDominant(m.to_string()));
        }
        let mut acc = unit();
        for (a, e) in m.iter() {
            let mut factor = Sl2Character::new();
            factor.insert(Sl2Monomial::from_pairs([(a, 1)]), 1);
            factor.insert(Sl2Monomial::from_pairs([(a + 2 * self.step, -1)]), 1);
            for _ in 0..e {
                acc = multiply(&acc, &factor);
            }
        }
        Ok(acc)
    }

    /// `L(M)` is thin iff its strings are pairwise disjoint.
    pub fn is_thin(&self, m: &Sl2Monomial) -> Result<bool> {
        let strings = self.qstring_decompose(m)?;
        let mut seen = BTreeSet::new();
        Ok(strings.iter().flat_map(|&s| self.string_points(s)).all(|k| seen.insert(k)))
    }

    /// Whether `m` occurs in some thin simple module: `|u_a(m)| <= 1` and
    /// `u_a(m) - u_{a+2s}(m) != 2` everywhere.
    pub fn admits_thin_module(&self, m: &Sl2Monomial) -> bool {
        m.iter().all(|(a, e)| {
            e.abs() <= 1 && !(e == 1 && m.exponent(a + 2 * self.step) == -1)
        })
    }

    /// Classifies `m`, a monomial of the thin simple module `L(M)`, at `a`.
    pub fn case_at(&self, m: &Sl2Monomial, highest: &Sl2Monomial, a: i64) -> Result<Sl2Case> {
        if !self.is_thin(highest)? {
            return Err(Error::Domain(format!("L({highest}) is not thin")));
        }
        if !self.simple_qchar(highest)?.contains_key(m) {
            return Err(Error::Domain(format!("{m} is not a monomial of L({highest})")));
        }
        let s2 = 2 * self.step;
        Ok(match (m.exponent(a), m.exponent(a + s2), m.exponent(a - s2)) {
            (1, 0, _) => Sl2Case::Lowerable,
            (1, 1, _) => Sl2Case::LowerableInWeylOnly,
            (-1, _, 0) => Sl2Case::Raisable,
            (-1, _, -1) => Sl2Case::RaisableInWeylOnly,
            (0, _, _) => Sl2Case::Inert,
            _ => return Err(Error::Domain(format!("{m} violates the thin-module bounds at {a}"))),
        })
    }

    /// Closure of the highest monomial under the ball-and-box moves: a
    /// black ball at `a` with `a+2s` empty becomes a white ball at `a+2s`,
    /// and back.
    pub fn ball_box_closure(&self, highest: &Sl2Monomial) -> BTreeSet<Sl2Monomial> {
        let s = self.step;
        let mut seen = BTreeSet::from([highest.clone()]);
        let mut queue = VecDeque::from([highest.clone()]);
        while let Some(m) = queue.pop_front() {
            let mut next = Vec::new();
            for (a, e) in m.iter() {
                if e == 1 && m.exponent(a + 2 * s) == 0 {
                    next.push(m.mul(&invert(&self.a(a + s))));
                }
                if e == -1 && m.exponent(a - 2 * s) == 0 {
                    next.push(m.mul(&self.a(a - s)));
                }
            }
            for n in next {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }
}

fn invert(m: &Sl2Monomial) -> Sl2Monomial {
    Sl2Monomial(m.0.iter().map(|(&k, &e)| (k, -e)).collect())
}

fn unit() -> Sl2Character {
    Sl2Character::from([(Sl2Monomial::one(), 1)])
}

fn multiply(x: &Sl2Character, y: &Sl2Character) -> Sl2Character {
    let mut out = Sl2Character::new();
    for (a, ma) in x {
        for (b, mb) in y {
            *out.entry(a.mul(b)).or_default() += ma * mb;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(pairs: &[(i64, i64)]) -> Sl2Monomial {
        Sl2Monomial::from_pairs(pairs.iter().copied())
    }

    fn chr(terms: &[(&[(i64, i64)], u64)]) -> Sl2Character {
        terms.iter().map(|(p, n)| (y(p), *n)).collect()
    }

    /// Every decomposition of `m` into q-strings in pairwise general
    /// position, found by exhaustive search.
    fn brute_force_decompositions(sl2: Sl2, m: &Sl2Monomial) -> BTreeSet<Vec<QString>> {
        fn go(
            sl2: Sl2,
            left: &BTreeMap<i64, i64>,
            chosen: &mut Vec<QString>,
            out: &mut BTreeSet<Vec<QString>>,
        ) {
            let Some((&low, _)) = left.iter().next() else {
                let mut v = chosen.clone();
                v.sort();
                let ok = v.iter().enumerate().all(|(n, &x)| {
                    v[n + 1..].iter().all(|&y| sl2.general_position(x, y))
                });
                if ok {
                    out.insert(v);
                }
                return;
            };
            // The lowest remaining point starts some string.
            let mut r = 1u32;
            loop {
                let top = low + 2 * sl2.step() * (r as i64 - 1);
                if !left.contains_key(&top) {
                    break;
                }
                let mut rest = left.clone();
                for t in 0..r as i64 {
                    let k = low + 2 * sl2.step() * t;
                    let slot = rest.get_mut(&k).unwrap();
                    *slot -= 1;
                    if *slot == 0 {
                        rest.remove(&k);
                    }
                }
                chosen.push(QString { center: (low + top) / 2, length: r });
                go(sl2, &rest, chosen, out);
                chosen.pop();
                r += 1;
            }
        }
        let mut out = BTreeSet::new();
        go(sl2, &m.0, &mut Vec::new(), &mut out);
        out
    }

    /// All dominant monomials supported on `width` consecutive lattice
    /// sites with exponents `<= max_e`.
    fn dominant_window(sl2: Sl2, width: i64, max_e: i64) -> Vec<Sl2Monomial> {
        let mut out = vec![Sl2Monomial::one()];
        for site in 0..width {
            let k = 2 * sl2.step() * site;
            out = out
                .into_iter()
                .flat_map(|m| (0..=max_e).map(move |e| m.mul(&Sl2Monomial::from_pairs([(k, e)]))))
                .collect();
        }
        out.retain(|m| !m.is_one());
        out
    }

    #[test]
    fn decompose_examples() {
        let sl2 = Sl2::STANDARD;
        assert_eq!(
            sl2.qstring_decompose(&y(&[(0, 1), (2, 1)])).unwrap(),
            vec![QString { center: 1, length: 2 }]
        );
        assert_eq!(
            sl2.qstring_decompose(&y(&[(0, 1), (4, 1)])).unwrap(),
            vec![QString { center: 0, length: 1 }, QString { center: 4, length: 1 }]
        );
        assert_eq!(
            sl2.qstring_decompose(&y(&[(0, 1)])).unwrap(),
            vec![QString { center: 0, length: 1 }]
        );
        assert!(sl2.qstring_decompose(&y(&[(0, -1)])).is_err());
    }

    #[test]
    fn decompose_matches_brute_force() {
        for step in [1, 2] {
            let sl2 = Sl2::new(step);
            for m in dominant_window(sl2, 6, 2) {
                let all = brute_force_decompositions(sl2, &m);
                assert_eq!(all.len(), 1, "{m}: {all:?}");
                assert_eq!(all.into_iter().next().unwrap(), sl2.qstring_decompose(&m).unwrap());
            }
        }
    }

    #[test]
    fn simple_examples() {
        let sl2 = Sl2::STANDARD;
        assert_eq!(
            sl2.simple_qchar(&y(&[(0, 1)])).unwrap(),
            chr(&[(&[(0, 1)], 1), (&[(2, -1)], 1)])
        );
        assert_eq!(
            sl2.simple_qchar(&y(&[(0, 1), (2, 1)])).unwrap(),
            chr(&[(&[(0, 1), (2, 1)], 1), (&[(0, 1), (4, -1)], 1), (&[(2, -1), (4, -1)], 1)])
        );
        let disjoint = sl2.simple_qchar(&y(&[(0, 1), (4, 1)])).unwrap();
        assert_eq!(disjoint.len(), 4);
        assert_eq!(disjoint, sl2.weyl_qchar(&y(&[(0, 1), (4, 1)])).unwrap());
    }

    #[test]
    fn weyl_examples() {
        let sl2 = Sl2::STANDARD;
        assert_eq!(
            sl2.weyl_qchar(&y(&[(0, 1), (2, 1)])).unwrap(),
            chr(&[
                (&[(0, 1), (2, 1)], 1),
                (&[(0, 1), (4, -1)], 1),
                (&[], 1),
                (&[(2, -1), (4, -1)], 1)
            ])
        );
        assert_eq!(sl2.weyl_qchar(&y(&[(0, 1)])).unwrap(), sl2.simple_qchar(&y(&[(0, 1)])).unwrap());
        // Coinciding terms keep their multiplicity.
        let doubled = sl2.weyl_qchar(&y(&[(0, 2)])).unwrap();
        assert_eq!(doubled[&y(&[(0, 1), (2, -1)])], 2);
    }

    #[test]
    fn window_properties() {
        for step in [1, 2] {
            let sl2 = Sl2::new(step);
            for m in dominant_window(sl2, 6, 2) {
                let strings = sl2.qstring_decompose(&m).unwrap();
                let simple = sl2.simple_qchar(&m).unwrap();
                let weyl = sl2.weyl_qchar(&m).unwrap();
                let expected: u64 = strings.iter().map(|s| s.length as u64 + 1).product();
                assert_eq!(simple.values().sum::<u64>(), expected, "{m}");
                for (t, n) in &simple {
                    assert!(weyl.get(t).copied().unwrap_or(0) >= *n, "{m}: {t}");
                }
                let thin = sl2.is_thin(&m).unwrap();
                assert_eq!(thin, simple.values().all(|&n| n == 1), "{m}");
                // Thin implies special.
                let dominant = simple.keys().filter(|t| t.is_dominant()).count();
                assert!(!thin || dominant == 1, "{m}");
                if thin {
                    let closure = sl2.ball_box_closure(&m);
                    assert_eq!(closure, simple.keys().cloned().collect(), "{m}");
                    assert!(simple.keys().all(|t| sl2.admits_thin_module(t)));
                }
            }
        }
    }

    #[test]
    fn case_examples() {
        let sl2 = Sl2::STANDARD;
        let y0 = y(&[(0, 1)]);
        assert_eq!(sl2.case_at(&y0, &y0, 0).unwrap(), Sl2Case::Lowerable);
        assert_eq!(sl2.case_at(&y0, &y0, 4).unwrap(), Sl2Case::Inert);
        let y02 = y(&[(0, 1), (2, 1)]);
        assert_eq!(sl2.case_at(&y02, &y02, 0).unwrap(), Sl2Case::LowerableInWeylOnly);
        assert!(sl2.case_at(&y(&[(6, 1)]), &y0, 0).is_err());
        assert!(sl2.case_at(&y(&[(0, 2)]), &y(&[(0, 2)]), 0).is_err());
    }

    #[test]
    fn cases_agree_with_membership() {
        for step in [1, 2] {
            let sl2 = Sl2::new(step);
            for big in dominant_window(sl2, 5, 1) {
                if !sl2.is_thin(&big).unwrap() {
                    continue;
                }
                let simple = sl2.simple_qchar(&big).unwrap();
                let weyl = sl2.weyl_qchar(&big).unwrap();
                for m in simple.keys() {
                    for site in -2..8 {
                        let a = step * site;
                        let down = m.mul(&invert(&sl2.a(a + step)));
                        let up = m.mul(&sl2.a(a - step));
                        let (in_l, in_w) = (
                            |x: &Sl2Monomial| simple.contains_key(x),
                            |x: &Sl2Monomial| weyl.contains_key(x),
                        );
                        match sl2.case_at(m, &big, a).unwrap() {
                            Sl2Case::Lowerable => assert!(in_l(&down)),
                            Sl2Case::LowerableInWeylOnly => assert!(in_w(&down) && !in_l(&down)),
                            Sl2Case::Raisable => assert!(in_l(&up)),
                            Sl2Case::RaisableInWeylOnly => assert!(in_w(&up) && !in_l(&up)),
                            Sl2Case::Inert => assert!(!in_w(&down) && !in_w(&up), "{big} {m} {a}"),
                        }
                    }
                }
            }
        }
    }
}
