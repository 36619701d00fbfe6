//! Skew diagrams and skew tableaux for snakes in `X'`.
//!
//! Rows grow downwards and may be negative; columns start at 1. Diagrams
//! are never normalised by vertical shifts, since the shift is visible in
//! the spectral parameters of the box monomials.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cartan::{Kind, LieType};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, YMonomial};
use crate::qchar::QCharacter;
use crate::snakes::Snake;

/// A letter of the alphabet `1 < 2 < ... < N < 0 < N̄ < ... < 1̄` (type B) or
/// `1 < ... < N+1` (type A, plain letters only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    Plain(usize),
    Zero,
    Bar(usize),
}

impl Letter {
    fn key(self) -> (u8, i64) {
        match self {
            Letter::Plain(i) => (0, i as i64),
            Letter::Zero => (1, 0),
            Letter::Bar(i) => (2, -(i as i64)),
        }
    }

    /// The alphabet in increasing order.
    pub fn alphabet(t: LieType) -> Vec<Letter> {
        let n = t.rank();
        match t.kind() {
            Kind::A => (1..=n + 1).map(Letter::Plain).collect(),
            Kind::B => (1..=n)
                .map(Letter::Plain)
                .chain([Letter::Zero])
                .chain((1..=n).rev().map(Letter::Bar))
                .collect(),
        }
    }

    /// `⌊a⌋_k`, with `Y_{0,·} = Y_{N+1,·} = 1`.
    pub fn box_monomial(self, t: LieType, k: i64) -> YMonomial {
        let n = t.rank();
        let mut out = Vec::new();
        let mut push = |i: usize, kk: i64, e: i64| {
            if (1..=n).contains(&i) {
                out.push((i, kk, e));
            }
        };
        match (t.kind(), self) {
            (Kind::A, Letter::Plain(i)) => {
                let ii = i as i64;
                push(i - 1, ii + k, -1);
                push(i, ii - 1 + k, 1);
            }
            (Kind::B, Letter::Plain(i)) if i < n => {
                let ii = i as i64;
                push(i - 1, 2 * ii + k, -1);
                push(i, 2 * ii - 2 + k, 1);
            }
            (Kind::B, Letter::Plain(_)) => {
                let nn = n as i64;
                push(n - 1, 2 * nn + k, -1);
                push(n, 2 * nn - 3 + k, 1);
                push(n, 2 * nn - 1 + k, 1);
            }
            (Kind::B, Letter::Zero) => {
                let nn = n as i64;
                push(n, 2 * nn + 1 + k, -1);
                push(n, 2 * nn - 3 + k, 1);
            }
            (Kind::B, Letter::Bar(i)) if i == n => {
                let nn = n as i64;
                push(n, 2 * nn - 1 + k, -1);
                push(n, 2 * nn + 1 + k, -1);
                push(n - 1, 2 * nn - 2 + k, 1);
            }
            (Kind::B, Letter::Bar(i)) => {
                let (ii, nn) = (i as i64, n as i64);
                push(i, 4 * nn - 2 * ii + k, -1);
                push(i - 1, 4 * nn - 2 - 2 * ii + k, 1);
            }
            (Kind::A, other) => panic!("letter {other} is not in the type A alphabet"),
        }
        YMonomial::from_triples(out)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Plain(i) => write!(f, "{i}"),
            Letter::Zero => f.write_str("0"),
            Letter::Bar(i) => write!(f, "b{i}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let bad = || Error::Parse(format!("bad letter {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Letter::Zero);
        }
        let (bar, digits) = match s.strip_prefix('b') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let i: usize = digits.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(if bar { Letter::Bar(i) } else { Letter::Plain(i) })
    }
}

/// A column of a skew diagram: `height` boxes starting at row `top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Column {
    pub top: i64,
    pub height: usize,
}

impl Column {
    pub fn bottom(&self) -> i64 {
        self.top + self.height as i64 - 1
    }

    pub fn rows(&self) -> impl Iterator<Item = i64> {
        self.top..self.top + self.height as i64
    }
}

/// A skew diagram, stored column by column; `columns[j - 1]` is column `j`
/// and may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewDiagram {
    columns: Vec<Option<Column>>,
}

impl SkewDiagram {
    /// Builds a diagram from a set of `(row, col)` boxes.
    pub fn from_boxes<I: IntoIterator<Item = (i64, usize)>>(boxes: I) -> Result<SkewDiagram> {
        let boxes: BTreeSet<(usize, i64)> = boxes.into_iter().map(|(r, c)| (c, r)).collect();
        if boxes.iter().any(|&(c, _)| c == 0) {
            return Err(Error::Domain("columns are numbered from 1".into()));
        }
        let width = boxes.iter().map(|&(c, _)| c).max().unwrap_or(0);
        let mut columns = vec![None; width];
        for (j, slot) in columns.iter_mut().enumerate() {
            let rows: Vec<i64> = boxes.range((j + 1, i64::MIN)..=(j + 1, i64::MAX)).map(|&(_, r)| r).collect();
            if let (Some(&top), Some(&bottom)) = (rows.first(), rows.last()) {
                if bottom - top + 1 != rows.len() as i64 {
                    return Err(Error::Domain(format!("column {} is not contiguous", j + 1)));
                }
                *slot = Some(Column { top, height: rows.len() });
            }
        }
        SkewDiagram::new(columns)
    }

    pub fn new(columns: Vec<Option<Column>>) -> Result<SkewDiagram> {
        let d = SkewDiagram { columns };
        d.validate()?;
        Ok(d)
    }

    /// Parses `"col:topRow:height;..."`.
    pub fn parse(s: &str) -> Result<SkewDiagram> {
        let mut boxes = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let bad = || Error::Parse(format!("bad column {part:?}, expected col:topRow:height"));
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let [c, top, h] = fields[..] else { return Err(bad()) };
            let c: usize = c.parse().map_err(|_| bad())?;
            let top: i64 = top.parse().map_err(|_| bad())?;
            let h: i64 = h.parse().map_err(|_| bad())?;
            if boxes.iter().any(|&(_, cc)| cc == c) {
                return Err(Error::Parse(format!("column {c} given twice")));
            }
            boxes.extend((top..top + h).map(|r| (r, c)));
        }
        SkewDiagram::from_boxes(boxes)
    }

    fn validate(&self) -> Result<()> {
        if self.columns.iter().all(Option::is_none) {
            return if self.columns.is_empty() {
                Ok(())
            } else {
                Err(Error::Domain("trailing empty columns".into()))
            };
        }
        if self.columns[0].is_none() || self.columns.last().is_some_and(Option::is_none) {
            return Err(Error::Domain("the first and last columns must be occupied".into()));
        }
        if self.columns.iter().flatten().any(|c| c.height == 0) {
            return Err(Error::Domain("zero-height column".into()));
        }
        // For each missing box, everything weakly south-east or everything
        // weakly north-west of it must be missing too. Only boxes inside the
        // bounding rectangle can fail.
        let (lo, hi) = self.row_range().expect("nonempty");
        for j in 1..=self.width() {
            for i in lo..=hi {
                if self.contains(i, j) {
                    continue;
                }
                let se = self.boxes().any(|(r, c)| r >= i && c >= j);
                let nw = self.boxes().any(|(r, c)| r <= i && c <= j);
                if se && nw {
                    return Err(Error::Domain(format!("not a skew diagram: hole at row {i}, column {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> Option<Column> {
        self.columns.get(j.wrapping_sub(1)).copied().flatten()
    }

    pub fn columns(&self) -> &[Option<Column>] {
        &self.columns
    }

    pub fn contains(&self, row: i64, col: usize) -> bool {
        self.column(col).is_some_and(|c| (c.top..=c.bottom()).contains(&row))
    }

    /// Boxes as `(row, col)`, column by column.
    pub fn boxes(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().flat_map(move |c| c.rows().map(move |r| (r, j + 1))))
    }

    pub fn len(&self) -> usize {
        self.columns.iter().flatten().map(|c| c.height).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row_range(&self) -> Option<(i64, i64)> {
        let tops = self.columns.iter().flatten().map(|c| c.top).min()?;
        let bottoms = self.columns.iter().flatten().map(|c| c.bottom()).max()?;
        Some((tops, bottoms))
    }

    /// Collapses empty columns, moving everything to their right one step up
    /// and to the left per removed column. This describes the same module.
    pub fn collapse_empty_columns(&self) -> SkewDiagram {
        let mut shift = 0;
        let mut columns = Vec::new();
        for c in &self.columns {
            match c {
                None => shift += 1,
                Some(c) => columns.push(Some(Column { top: c.top - shift, height: c.height })),
            }
        }
        SkewDiagram { columns }
    }

    /// The `col:topRow:height` form.
    pub fn shape_string(&self) -> String {
        let parts: Vec<String> = self
            .columns
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.map(|c| format!("{}:{}:{}", j + 1, c.top, c.height)))
            .collect();
        parts.join(";")
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((lo, hi)) = self.row_range() else { return Ok(()) };
        for i in lo..=hi {
            let cells: Vec<&str> =
                (1..=self.width()).map(|j| if self.contains(i, j) { "#" } else { "." }).collect();
            writeln!(f, "{i:>4} | {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The skew diagram of a snake in `X'`: column `t` is a stack of `i_t` boxes
/// whose top row is `t - k_t/2r' - (i_t - 1)/2`.
pub fn diagram_from_snake(snake: &Snake) -> Result<SkewDiagram> {
    let t = snake.lie_type();
    let rc = t.r_check();
    let mut columns = Vec::new();
    for (idx, p) in snake.points().iter().enumerate() {
        if !t.in_x_prime(p.i, p.k) {
            return Err(Error::NotInXPrime(p.i, p.k));
        }
        let col = idx as i64 + 1;
        // 2(t - k/2r') - (i - 1) is even on X'.
        let twice_top = 2 * col - p.k / rc - (p.i as i64 - 1);
        columns.push(Some(Column { top: twice_top / 2, height: p.i }));
    }
    SkewDiagram::new(columns)
}

/// Inverse of [`diagram_from_snake`].
pub fn snake_from_diagram(t: LieType, d: &SkewDiagram) -> Result<Snake> {
    let bound = match t.kind() {
        Kind::A => t.rank(),
        Kind::B => t.rank() - 1,
    };
    let rc = t.r_check();
    let mut points = Vec::new();
    for (j, c) in d.columns().iter().enumerate() {
        let c = c.ok_or_else(|| Error::Domain(format!("column {} is empty", j + 1)))?;
        if c.height > bound {
            return Err(Error::Domain(format!(
                "column {} has {} boxes, more than {bound} allowed in {t}",
                j + 1,
                c.height
            )));
        }
        let col = j as i64 + 1;
        let k = 2 * rc * (col - c.top) - rc * (c.height as i64 - 1);
        points.push(LatticePoint::new(c.height, k));
    }
    if points.is_empty() {
        return Err(Error::Domain("empty diagram".into()));
    }
    Snake::new(t, points)
}

/// A filling of a skew diagram obeying rules (H) and (V).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewTableau {
    pub lie_type: LieType,
    pub shape: SkewDiagram,
    /// Letters of each column from top to bottom; empty for empty columns.
    pub fill: Vec<Vec<Letter>>,
}

fn vertical_ok(t: LieType, upper: Letter, lower: Letter) -> bool {
    upper < lower || (t.kind() == Kind::B && upper == Letter::Zero && lower == Letter::Zero)
}

fn horizontal_ok(t: LieType, left: Letter, right: Letter) -> bool {
    left <= right && !(t.kind() == Kind::B && left == Letter::Zero && right == Letter::Zero)
}

/// Whether column `right` may follow column `left` under rule (H).
fn columns_compatible(t: LieType, left: (Column, &[Letter]), right: (Column, &[Letter])) -> bool {
    let (lc, lf) = left;
    let (rc, rf) = right;
    let from = lc.top.max(rc.top);
    let to = lc.bottom().min(rc.bottom());
    (from..=to).all(|row| horizontal_ok(t, lf[(row - lc.top) as usize], rf[(row - rc.top) as usize]))
}

/// All fillings of a column of the given height allowed by rule (V), in
/// lexicographic order.
pub fn column_fillings(t: LieType, height: usize) -> Vec<Vec<Letter>> {
    let alphabet = Letter::alphabet(t);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(height);
    fn rec(t: LieType, alphabet: &[Letter], h: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for &a in alphabet {
            if cur.last().is_none_or(|&p| vertical_ok(t, p, a)) {
                cur.push(a);
                rec(t, alphabet, h, cur, out);
                cur.pop();
            }
        }
    }
    rec(t, &alphabet, height, &mut cur, &mut out);
    out
}

impl SkewTableau {
    /// Checks a filling against the shape and both rules.
    pub fn new(t: LieType, shape: SkewDiagram, fill: Vec<Vec<Letter>>) -> Result<SkewTableau> {
        if fill.len() != shape.width() {
            return Err(Error::Domain("fill has the wrong number of columns".into()));
        }
        let alphabet: BTreeSet<Letter> = Letter::alphabet(t).into_iter().collect();
        for (j, col) in fill.iter().enumerate() {
            let height = shape.column(j + 1).map_or(0, |c| c.height);
            if col.len() != height {
                return Err(Error::Domain(format!("column {} needs {height} letters", j + 1)));
            }
            if let Some(bad) = col.iter().find(|a| !alphabet.contains(a)) {
                return Err(Error::Domain(format!("letter {bad} is not in the alphabet of {t}")));
            }
            if !col.windows(2).all(|w| vertical_ok(t, w[0], w[1])) {
                return Err(Error::Domain(format!("column {} breaks the vertical rule", j + 1)));
            }
            if j > 0 {
                if let (Some(l), Some(r)) = (shape.column(j), shape.column(j + 1)) {
                    if !columns_compatible(t, (l, &fill[j - 1]), (r, col)) {
                        return Err(Error::Domain(format!("columns {j} and {} break the horizontal rule", j + 1)));
                    }
                }
            }
        }
        Ok(SkewTableau { lie_type: t, shape, fill })
    }

    pub fn get(&self, row: i64, col: usize) -> Option<Letter> {
        let c = self.shape.column(col)?;
        c.rows().position(|r| r == row).map(|p| self.fill[col - 1][p])
    }

    /// `∏ ⌊T(i,j)⌋_{2r'(j - i)}`.
    pub fn monomial(&self) -> YMonomial {
        tableau_monomial(self.lie_type, &self.shape, &self.fill)
    }

    /// Reads a filling in the text format of [`fmt::Display`] (row labels
    /// optional) into the given shape.
    pub fn parse(t: LieType, shape: SkewDiagram, text: &str) -> Result<SkewTableau> {
        let Some((lo, hi)) = shape.row_range() else {
            return SkewTableau::new(t, shape, Vec::new());
        };
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.len() as i64 != hi - lo + 1 {
            return Err(Error::Parse(format!("expected {} rows", hi - lo + 1)));
        }
        let mut fill: Vec<Vec<Letter>> = vec![Vec::new(); shape.width()];
        for (line, row) in lines.iter().zip(lo..) {
            let body = line.split_once('|').map_or(*line, |(_, b)| b);
            let cells: Vec<&str> = body.split_whitespace().collect();
            if cells.len() != shape.width() {
                return Err(Error::Parse(format!("row {row} needs {} cells", shape.width())));
            }
            for (j, cell) in cells.iter().enumerate() {
                match (shape.contains(row, j + 1), *cell) {
                    (false, ".") => {}
                    (true, cell) if cell != "." => fill[j].push(cell.parse()?),
                    _ => return Err(Error::Parse(format!("cell {cell:?} at row {row}, column {} mismatches the shape", j + 1))),
                }
            }
        }
        SkewTableau::new(t, shape, fill)
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((lo, hi)) = self.shape.row_range() else { return Ok(()) };
        for i in lo..=hi {
            let cells: Vec<String> = (1..=self.shape.width())
                .map(|j| self.get(i, j).map_or(".".to_string(), |a| a.to_string()))
                .collect();
            let line: Vec<String> = cells.iter().map(|c| format!("{c:>2}")).collect();
            writeln!(f, "{i:>4} |{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Box monomials multiplied over the shape.
pub fn tableau_monomial(t: LieType, shape: &SkewDiagram, fill: &[Vec<Letter>]) -> YMonomial {
    let rc = t.r_check();
    let mut out = YMonomial::one();
    for (j, col) in fill.iter().enumerate() {
        let Some(c) = shape.column(j + 1) else { continue };
        for (row, &a) in c.rows().zip(col) {
            out = &out * &a.box_monomial(t, 2 * rc * (j as i64 + 1 - row));
        }
    }
    out
}

/// Calls `visit` on every tableau of shape `d`, column-major, in
/// lexicographic order of the column fillings.
pub fn for_each_tableau(t: LieType, d: &SkewDiagram, mut visit: impl FnMut(&[Vec<Letter>])) {
    let per_column: Vec<Vec<Vec<Letter>>> = d
        .columns()
        .iter()
        .map(|c| c.map_or_else(|| vec![Vec::new()], |c| column_fillings(t, c.height)))
        .collect();
    let mut chosen: Vec<Vec<Letter>> = Vec::with_capacity(d.width());
    fn rec(
        t: LieType,
        d: &SkewDiagram,
        per_column: &[Vec<Vec<Letter>>],
        chosen: &mut Vec<Vec<Letter>>,
        visit: &mut dyn FnMut(&[Vec<Letter>]),
    ) {
        let j = chosen.len();
        if j == per_column.len() {
            visit(chosen);
            return;
        }
        for fill in &per_column[j] {
            let left = if j > 0 { d.column(j) } else { None };
            let ok = match (left, d.column(j + 1)) {
                (Some(l), Some(r)) => columns_compatible(t, (l, &chosen[j - 1]), (r, fill)),
                _ => true,
            };
            if ok {
                chosen.push(fill.clone());
                rec(t, d, per_column, chosen, visit);
                chosen.pop();
            }
        }
    }
    rec(t, d, &per_column, &mut chosen, &mut visit);
}

pub fn enumerate_tableaux(t: LieType, d: &SkewDiagram) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    for_each_tableau(t, d, |fill| {
        out.push(SkewTableau { lie_type: t, shape: d.clone(), fill: fill.to_vec() });
    });
    out
}

/// Number of tableaux, by a column-to-column transfer count.
pub fn count_tableaux(t: LieType, d: &SkewDiagram) -> usize {
    let mut prev: Option<(Column, Vec<Vec<Letter>>, Vec<usize>)> = None;
    let mut total: usize = 1;
    for col in d.columns() {
        let Some(c) = *col else {
            // An empty column splits the diagram into independent parts.
            if let Some((_, _, ways)) = prev.take() {
                total *= ways.iter().sum::<usize>();
            }
            continue;
        };
        let fills = column_fillings(t, c.height);
        let ways = match &prev {
            None => vec![1; fills.len()],
            Some((pc, pf, pw)) => fills
                .iter()
                .map(|f| {
                    pf.iter()
                        .zip(pw)
                        .filter(|(g, _)| columns_compatible(t, (*pc, g), (c, f)))
                        .map(|(_, w)| w)
                        .sum()
                })
                .collect(),
        };
        prev = Some((c, fills, ways));
    }
    if let Some((_, _, ways)) = prev {
        total *= ways.iter().sum::<usize>();
    }
    total
}

/// `Σ_T M(T)`. The highest term is that of the tableau whose columns read
/// `1, 2, ..., height`.
pub fn tableaux_qchar(t: LieType, d: &SkewDiagram) -> QCharacter {
    let top: Vec<Vec<Letter>> = d
        .columns()
        .iter()
        .map(|c| c.map_or_else(Vec::new, |c| (1..=c.height).map(Letter::Plain).collect()))
        .collect();
    let mut monos = Vec::new();
    for_each_tableau(t, d, |fill| monos.push(tableau_monomial(t, d, fill)));
    QCharacter::from_monomials(tableau_monomial(t, d, &top), monos)
}

/// Outcome of [`cross_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub tuples: usize,
    pub tableaux: usize,
    pub equal: bool,
    /// First reason for inequality, if any.
    pub mismatch: Option<String>,
}

/// Exact multiset comparison of the tableau sum and the path sum without
/// storing either side.
///
/// Each path of `P_{i_t,k_t}` is matched to the column filling with the same
/// monomial. If that matching is a bijection in every column, every
/// non-overlapping tuple maps to a tableau, and the two counts agree, then
/// tuple ↦ tableau is a monomial-preserving bijection and the sums coincide.
pub fn cross_check(t: LieType, d: &SkewDiagram) -> Result<CrossCheck> {
    let snake = snake_from_diagram(t, d)?;
    let sets = crate::qchar::path_sets(&snake)?;
    let tableaux = count_tableaux(t, d);
    let mut out = CrossCheck { tuples: 0, tableaux, equal: false, mismatch: None };

    let mut fillings: Vec<Vec<Vec<Letter>>> = Vec::new();
    let mut to_filling: Vec<Vec<u32>> = Vec::new();
    for (j, set) in sets.iter().enumerate() {
        let c = d.column(j + 1).expect("no empty columns");
        let fills = column_fillings(t, c.height);
        let mut shape = vec![None; j + 1];
        shape[j] = Some(c);
        let shape = SkewDiagram { columns: shape };
        let mut pad: Vec<Vec<Letter>> = vec![Vec::new(); j + 1];
        let mut by_mono: HashMap<YMonomial, u32> = HashMap::new();
        for (n, f) in fills.iter().enumerate() {
            pad[j] = f.clone();
            by_mono.insert(tableau_monomial(t, &shape, &pad), n as u32);
        }
        let mut seen = vec![false; fills.len()];
        let mut map = Vec::with_capacity(set.len());
        for p in set {
            match by_mono.get(&p.monomial()) {
                Some(&n) if !seen[n as usize] => {
                    seen[n as usize] = true;
                    map.push(n);
                }
                _ => {
                    out.mismatch = Some(format!("column {}: path {} has no unused filling", j + 1, p.monomial()));
                    return Ok(out);
                }
            }
        }
        if set.len() != fills.len() {
            out.mismatch = Some(format!("column {}: {} paths but {} fillings", j + 1, set.len(), fills.len()));
            return Ok(out);
        }
        fillings.push(fills);
        to_filling.push(map);
    }

    let mut bad: Option<Vec<u32>> = None;
    crate::qchar::for_each_tuple(t, &sets, |idx| {
        out.tuples += 1;
        if bad.is_some() {
            return;
        }
        let ok = (1..idx.len()).all(|j| {
            let l = &fillings[j - 1][to_filling[j - 1][idx[j - 1] as usize] as usize];
            let r = &fillings[j][to_filling[j][idx[j] as usize] as usize];
            columns_compatible(t, (d.column(j).unwrap(), l), (d.column(j + 1).unwrap(), r))
        });
        if !ok {
            bad = Some(idx.to_vec());
        }
    });
    if let Some(idx) = bad {
        out.mismatch = Some(format!("tuple {idx:?} gives a filling that breaks the horizontal rule"));
    } else if out.tuples != out.tableaux {
        out.mismatch = Some(format!("{} tuples but {} tableaux", out.tuples, out.tableaux));
    } else {
        out.equal = true;
    }
    Ok(out)
}

/// A random snake in `X'` with between 1 and `max_columns` points, returned
/// as its skew diagram. Gaps between columns exceed the minimal snake
/// distance by up to two steps.
pub fn random_diagram<R: Rng + ?Sized>(t: LieType, max_columns: usize, rng: &mut R) -> SkewDiagram {
    let max_height = match t.kind() {
        Kind::A => t.rank(),
        Kind::B => t.rank() - 1,
    };
    assert!(max_height >= 1 && max_columns >= 1, "no diagrams for {t} with {max_columns} columns");
    let rc = t.r_check();
    let columns = rng.random_range(1..=max_columns);
    let mut points: Vec<LatticePoint> = Vec::new();
    for _ in 0..columns {
        let i = rng.random_range(1..=max_height);
        let k = match points.last() {
            None => (0..4).find(|&k| t.in_x_prime(i, k)).expect("X' meets every residue class mod 4"),
            Some(p) => {
                let delta = (i as i64 - p.i as i64).abs();
                p.k + rc * (delta + 2) + 2 * rc * rng.random_range(0..=2)
            }
        };
        points.push(LatticePoint::new(i, k));
    }
    let snake = Snake::new(t, points).expect("constructed in snake position");
    diagram_from_snake(&snake).expect("points lie in X'")
}
