//! The Steiner system S(5,8,24) in Curtis MOG coordinates.
//!
//! Positions are the 24 cells of the 4x6 MOG box, numbered row-major
//! (`row * 6 + col`). Octads are 24-bit masks over that numbering. The code is
//! built from the hexacode description of the MOG (column parities agree with
//! the top-row parity, column scores form a hexacode word) and everything else
//! (plane lines, ovals, Sylvester labels) is read off from it and re-checked.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Mask = u32;

pub const ALL: Mask = (1 << 24) - 1;

/// Element of F4 = {0, 1, w, wb} with w^2 = wb = w + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const W: F4 = F4(2);
    pub const WB: F4 = F4(3);
    pub const ELEMENTS: [F4; 4] = [F4::ZERO, F4::ONE, F4::W, F4::WB];

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }

    pub fn mul(self, o: F4) -> F4 {
        if self.0 == 0 || o.0 == 0 {
            return F4::ZERO;
        }
        // 1, w, wb are w^0, w^1, w^2
        let e = (self.0 as usize - 1 + o.0 as usize - 1) % 3;
        F4(e as u8 + 1)
    }

    pub fn name(self) -> &'static str {
        ["0", "1", "w", "wb"][self.0 as usize]
    }

    pub fn parse(s: &str) -> Option<F4> {
        match s {
            "0" => Some(F4::ZERO),
            "1" => Some(F4::ONE),
            "w" => Some(F4::W),
            "wb" => Some(F4::WB),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Roman {
    I,
    II,
    III,
}

impl Roman {
    pub const ALL: [Roman; 3] = [Roman::I, Roman::II, Roman::III];

    pub fn position(self) -> Position {
        match self {
            Roman::I => Position(6),
            Roman::II => Position(12),
            Roman::III => Position(18),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Roman::I => "I",
            Roman::II => "II",
            Roman::III => "III",
        }
    }
}

/// Slope of a point at infinity, an element of P^1(F4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Inf,
    Fin(F4),
}

impl Slope {
    pub fn name(self) -> String {
        match self {
            Slope::Inf => "inf".into(),
            Slope::Fin(a) => a.name().into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionKind {
    Roman(Roman),
    Infinity(Slope),
    Affine(F4, F4),
}

/// Cell labels of the box in the fixed-oval (Sylvester) naming, row-major.
/// `i` stands for the symbol infinity.
const SYLVESTER: [&str; 24] = [
    "i0.14.23", "i0.13.24", "i4.03.12", "i2.01.34", "i3.02.14", "i1.04.23", //
    "I", "i0.12.34", "i1.02.34", "i3.04.12", "i2.03.14", "i4.01.23", //
    "II", "i", "i2.04.13", "i4.02.13", "1", "3", //
    "III", "0", "i3.01.24", "i1.03.24", "4", "2",
];

/// The six symbols of the fixed oval, in label order.
pub const OVAL_SYMBOLS: [char; 6] = ['i', '0', '1', '2', '3', '4'];

/// The points at infinity sit in the first two columns: slope inf at the top
/// left, then slopes 0, 1, w, wb down the second column.
const INFINITY_CELLS: [(Slope, usize); 5] = [
    (Slope::Inf, 0),
    (Slope::Fin(F4::ZERO), 1),
    (Slope::Fin(F4::ONE), 7),
    (Slope::Fin(F4::W), 13),
    (Slope::Fin(F4::WB), 19),
];

/// Row labels used both for hexacode scores and for the y-coordinate of the
/// affine part; column `2 + i` carries x-coordinate `F4::ELEMENTS[i]`.
const ROW_LABELS: [F4; 4] = [F4::ZERO, F4::ONE, F4::W, F4::WB];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub u8);

impl Position {
    pub fn all() -> impl Iterator<Item = Position> {
        (0..24u8).map(Position)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bit(self) -> Mask {
        1 << self.0
    }

    pub fn row(self) -> usize {
        self.index() / 6
    }

    pub fn col(self) -> usize {
        self.index() % 6
    }

    pub fn kind(self) -> PositionKind {
        let i = self.index();
        if let Some(r) = Roman::ALL.iter().find(|r| r.position() == self) {
            return PositionKind::Roman(*r);
        }
        if let Some((s, _)) = INFINITY_CELLS.iter().find(|(_, c)| *c == i) {
            return PositionKind::Infinity(*s);
        }
        PositionKind::Affine(F4::ELEMENTS[self.col() - 2], ROW_LABELS[self.row()])
    }

    pub fn affine(a: F4, b: F4) -> Position {
        let row = ROW_LABELS.iter().position(|r| *r == b).unwrap();
        Position((row * 6 + 2 + a.index()) as u8)
    }

    pub fn infinity(s: Slope) -> Position {
        Position(INFINITY_CELLS.iter().find(|(t, _)| *t == s).unwrap().1 as u8)
    }

    /// Coordinate label: `I`, `inf_w`, `(0,1)` and so on.
    pub fn coord_label(self) -> String {
        match self.kind() {
            PositionKind::Roman(r) => r.name().into(),
            PositionKind::Infinity(s) => format!("inf_{}", s.name()),
            PositionKind::Affine(a, b) => format!("({},{})", a.name(), b.name()),
        }
    }

    /// Label in the fixed-oval naming (`I`, `i`, `3`, `i0.14.23`, ...).
    pub fn sylvester(self) -> &'static str {
        SYLVESTER[self.index()]
    }

    pub fn is_roman(self) -> bool {
        matches!(self.kind(), PositionKind::Roman(_))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.sylvester())
    }
}

pub fn romans_mask() -> Mask {
    Roman::ALL.iter().fold(0, |m, r| m | r.position().bit())
}

pub fn plane_mask() -> Mask {
    ALL & !romans_mask()
}

pub fn positions(mask: Mask) -> impl Iterator<Item = Position> {
    (0..24u8).filter(move |i| mask >> i & 1 == 1).map(Position)
}

pub fn weight(mask: Mask) -> u32 {
    mask.count_ones()
}

/// Basis of the nullspace of the F2 matrix whose rows are `rows` (bit j of a
/// row is column j), over `n` columns.
fn f2_nullspace(rows: &[u64], n: usize) -> Vec<u64> {
    let mut m: Vec<u64> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i] >> c & 1 == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i] >> c & 1 == 1 {
                m[i] ^= m[r];
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = 1u64 << f;
            for (i, &c) in pivots.iter().enumerate() {
                if m[i] >> f & 1 == 1 {
                    v |= 1 << c;
                }
            }
            v
        })
        .collect()
}

/// The 64 words of the hexacode: (a, b, c, p(1), p(w), p(wb)) for p(x) = ax^2 + bx + c.
pub fn hexacode() -> Vec<[F4; 6]> {
    let mut out = Vec::with_capacity(64);
    for a in F4::ELEMENTS {
        for b in F4::ELEMENTS {
            for c in F4::ELEMENTS {
                let p = |x: F4| a.mul(x).mul(x).add(b.mul(x)).add(c);
                out.push([a, b, c, p(F4::ONE), p(F4::W), p(F4::WB)]);
            }
        }
    }
    out
}

fn f4_bits(word: &[F4; 6]) -> u64 {
    word.iter().enumerate().fold(0, |acc, (i, v)| acc | (v.0 as u64) << (2 * i))
}

/// Column scores of a word: sum of the row labels of its entries in each column.
pub fn scores(w: Mask) -> [F4; 6] {
    let mut s = [F4::ZERO; 6];
    for p in positions(w) {
        s[p.col()] = s[p.col()].add(ROW_LABELS[p.row()]);
    }
    s
}

/// Membership in the MOG Golay code by the hexacode rule.
pub fn in_golay(w: Mask) -> bool {
    let top = (w & 0x3f).count_ones() & 1;
    let cols_ok = (0..6).all(|c| (0..4).map(|r| w >> (r * 6 + c) & 1).sum::<u32>() & 1 == top);
    cols_ok && hexacode().contains(&scores(w))
}

/// Basis (12 words) of the binary Golay code as the kernel of the MOG rules.
pub fn golay_basis() -> Vec<Mask> {
    let hexa_rows: Vec<u64> = hexacode().iter().map(f4_bits).collect();
    let annihilator = f2_nullspace(&hexa_rows, 12);
    let mut constraints: Vec<u64> = Vec::new();
    for c in 0..6 {
        let mut row = 0u64;
        for r in 0..4 {
            row ^= 1 << (r * 6 + c);
        }
        row ^= 0x3f;
        constraints.push(row);
    }
    for f in &annihilator {
        let mut row = 0u64;
        for i in 0..24 {
            let s = f4_bits(&scores(1 << i));
            if (s & f).count_ones() & 1 == 1 {
                row |= 1 << i;
            }
        }
        constraints.push(row);
    }
    f2_nullspace(&constraints, 24).into_iter().map(|v| v as Mask).collect()
}

/// All 4096 codewords spanned by `basis`.
pub fn span(basis: &[Mask]) -> Vec<Mask> {
    let mut words = vec![0];
    for &b in basis {
        let more: Vec<Mask> = words.iter().map(|w| w ^ b).collect();
        words.extend(more);
    }
    words.sort_unstable();
    words
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OctadClass {
    /// All three Romans and a line.
    Line(Mask),
    /// Two Romans and an oval.
    Oval { oval: Mask, romans: [Roman; 2] },
    /// One Roman and a Baer subplane over F2.
    Subplane { points: Mask, roman: Roman },
    /// No Romans; symmetric difference of two lines.
    LinePair(Mask, Mask),
}

impl OctadClass {
    pub fn tag(&self) -> &'static str {
        match self {
            OctadClass::Line(_) => "3+5",
            OctadClass::Oval { .. } => "2+6",
            OctadClass::Subplane { .. } => "1+7",
            OctadClass::LinePair(..) => "0+8",
        }
    }
}

/// A named line of the plane in the fixed-oval naming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledLine {
    pub label: String,
    pub points: Mask,
}

#[derive(Clone, Debug)]
pub struct SteinerSystem {
    octads: Vec<Mask>,
    octad_set: HashSet<Mask>,
    code: Vec<Mask>,
    lines: Vec<Mask>,
}

impl SteinerSystem {
    /// Builds the system from the MOG rules and runs the self-checks
    /// (759 octads, 5-design property, closure, coordinate lines).
    pub fn build() -> Result<SteinerSystem> {
        let basis = golay_basis();
        if basis.len() != 12 {
            return Err(Error::Construction(format!("code dimension {} != 12", basis.len())));
        }
        let code = span(&basis);
        let octads: Vec<Mask> = code.iter().copied().filter(|w| weight(*w) == 8).collect();
        let octad_set: HashSet<Mask> = octads.iter().copied().collect();
        let rm = romans_mask();
        let mut lines: Vec<Mask> = octads.iter().filter(|o| *o & rm == rm).map(|o| o & !rm).collect();
        lines.sort_unstable();
        let s = SteinerSystem { octads, octad_set, code, lines };
        s.self_check()?;
        Ok(s)
    }

    fn self_check(&self) -> Result<()> {
        if self.octads.len() != 759 {
            return Err(Error::Construction(format!("{} octads", self.octads.len())));
        }
        let mut seen = HashSet::with_capacity(42504);
        for &o in &self.octads {
            for five in subsets(o, 5) {
                if !seen.insert(five) {
                    return Err(Error::Construction(format!("5-set {five:#x} covered twice")));
                }
            }
        }
        if seen.len() != 42504 {
            return Err(Error::Construction("5-design property fails".into()));
        }
        if self.lines.len() != 21 {
            return Err(Error::Construction(format!("{} lines", self.lines.len())));
        }
        let mut coord: Vec<Mask> = coordinate_lines().into_iter().map(|(_, m)| m).collect();
        coord.sort_unstable();
        if coord != self.lines {
            return Err(Error::Construction("coordinate lines disagree with octads".into()));
        }
        Ok(())
    }

    pub fn octads(&self) -> &[Mask] {
        &self.octads
    }

    pub fn codewords(&self) -> &[Mask] {
        &self.code
    }

    pub fn is_codeword(&self, m: Mask) -> bool {
        self.code.binary_search(&m).is_ok()
    }

    pub fn is_octad(&self, m: Mask) -> bool {
        self.octad_set.contains(&m)
    }

    pub fn lines(&self) -> &[Mask] {
        &self.lines
    }

    /// The unique octad containing a 5-set (or any set of 5..8 positions).
    pub fn octad_containing(&self, m: Mask) -> Result<Mask> {
        if weight(m) < 5 {
            return Err(Error::InvalidPayload(format!("{} positions do not determine an octad", weight(m))));
        }
        self.octads
            .iter()
            .copied()
            .find(|o| o & m == m)
            .ok_or_else(|| Error::InvalidPayload(format!("no octad contains {m:#x}")))
    }

    pub fn weight_enumerator(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for w in &self.code {
            *out.entry(weight(*w)).or_insert(0) += 1;
        }
        out
    }

    pub fn is_line(&self, m: Mask) -> bool {
        self.lines.binary_search(&m).is_ok()
    }

    /// Line through two distinct plane points.
    pub fn line_through(&self, p: Position, q: Position) -> Option<Mask> {
        let m = p.bit() | q.bit();
        self.lines.iter().copied().find(|l| l & m == m)
    }

    /// A 6-arc: six plane points, no three on a line.
    pub fn is_oval(&self, m: Mask) -> bool {
        m & romans_mask() == 0 && weight(m) == 6 && self.lines.iter().all(|l| weight(l & m) <= 2)
    }

    pub fn is_subplane(&self, m: Mask) -> bool {
        m & romans_mask() == 0
            && weight(m) == 7
            && self.lines.iter().all(|l| matches!(weight(l & m), 1 | 3))
    }

    pub fn classify(&self, o: Mask) -> Result<OctadClass> {
        if !self.is_octad(o) {
            return Err(Error::NotAnOctad(o));
        }
        let romans: Vec<Roman> = Roman::ALL.iter().copied().filter(|r| o & r.position().bit() != 0).collect();
        let plane = o & plane_mask();
        let class = match romans.len() {
            3 if self.is_line(plane) => OctadClass::Line(plane),
            2 if self.is_oval(plane) => OctadClass::Oval { oval: plane, romans: [romans[0], romans[1]] },
            1 if self.is_subplane(plane) => OctadClass::Subplane { points: plane, roman: romans[0] },
            0 => {
                let pair = self.lines.iter().enumerate().find_map(|(i, &a)| {
                    self.lines[i + 1..].iter().find(|&&b| a ^ b == plane).map(|&b| (a, b))
                });
                match pair {
                    Some((a, b)) => OctadClass::LinePair(a, b),
                    None => return Err(Error::Construction(format!("octad {o:#x} is not a line pair"))),
                }
            }
            _ => return Err(Error::Construction(format!("octad {o:#x} fails its class test"))),
        };
        Ok(class)
    }

    pub fn class_histogram(&self) -> Result<BTreeMap<&'static str, usize>> {
        let mut h = BTreeMap::new();
        for &o in &self.octads {
            *h.entry(self.classify(o)?.tag()).or_insert(0) += 1;
        }
        Ok(h)
    }

    /// All ovals with their Roman pairs.
    pub fn ovals(&self) -> Vec<(Mask, [Roman; 2])> {
        self.octads
            .iter()
            .filter_map(|&o| match self.classify(o) {
                Ok(OctadClass::Oval { oval, romans }) => Some((oval, romans)),
                _ => None,
            })
            .collect()
    }

    /// The Roman pair that completes an oval to an octad.
    pub fn oval_romans(&self, oval: Mask) -> Result<[Roman; 2]> {
        if !self.is_oval(oval) {
            return Err(Error::InvalidPayload(format!("{} is not an oval", mask_label(oval))));
        }
        match self.classify(self.octad_containing(oval)?)? {
            OctadClass::Oval { romans, .. } => Ok(romans),
            _ => Err(Error::Construction("oval octad misclassified".into())),
        }
    }

    /// The fixed oval {i,0,1,2,3,4}.
    pub fn fixed_oval(&self) -> Mask {
        OVAL_SYMBOLS.iter().fold(0, |m, c| m | sylvester_position(&c.to_string()).unwrap().bit())
    }

    /// The two ovals meeting the fixed oval exactly in `t`, with their Roman pairs.
    pub fn ovals_through_triple(&self, t: Mask) -> Result<Vec<(Mask, [Roman; 2])>> {
        let q0 = self.fixed_oval();
        if weight(t) != 3 || t & !q0 != 0 {
            return Err(Error::InvalidPayload("triple must be three points of the fixed oval".into()));
        }
        let mut out: Vec<(Mask, [Roman; 2])> = self.ovals().into_iter().filter(|(q, _)| q & q0 == t).collect();
        out.sort_by_key(|(_, r)| *r);
        out.reverse();
        Ok(out)
    }

    /// The 15 duad lines and 6 total axes of the fixed oval, labelled.
    pub fn lines_meeting_oval(&self) -> (Vec<LabeledLine>, Vec<LabeledLine>) {
        let q0 = self.fixed_oval();
        let mut duads = Vec::new();
        let mut axes = Vec::new();
        for &l in &self.lines {
            let meet = l & q0;
            match weight(meet) {
                2 => {
                    let syms: String = positions(meet).map(|p| p.sylvester().chars().next().unwrap()).collect();
                    duads.push(LabeledLine { label: canonical_duad(&syms), points: l });
                }
                0 => axes.push(LabeledLine { label: total_label(l), points: l }),
                _ => {}
            }
        }
        duads.sort_by(|a, b| a.label.cmp(&b.label));
        axes.sort_by(|a, b| a.label.cmp(&b.label));
        (duads, axes)
    }

    /// Whether a labelled line (duad, total, or coordinate line) passes through a point.
    pub fn incidence(&self, line: &str, point: &str) -> Result<bool> {
        let l = self.parse_line(line)?;
        let p = parse_point(point)?;
        Ok(l & p.bit() != 0)
    }

    /// Parses a line label: `x=a`, `y=b`, `y=mx+c`, `L_inf`, a duad such as
    /// `i0` or `14`, or a total `a|bcdef`.
    pub fn parse_line(&self, s: &str) -> Result<Mask> {
        let s = s.trim();
        if let Some(m) = coordinate_lines().into_iter().find(|(n, _)| n == s).map(|(_, m)| m) {
            return Ok(m);
        }
        if let Some(m) = parse_coordinate_line(s) {
            return Ok(m);
        }
        let (duads, axes) = self.lines_meeting_oval();
        if s.contains('|') {
            let set = total_from_label(s)?;
            return axes
                .iter()
                .find(|a| syntheme_set(a.points) == set)
                .map(|a| a.points)
                .ok_or_else(|| Error::UnknownLabel(s.into()));
        }
        let key = canonical_duad(s);
        duads
            .iter()
            .find(|d| d.label == key)
            .map(|d| d.points)
            .ok_or_else(|| Error::UnknownLabel(s.into()))
    }
}

/// The shared Steiner system. A failed self-check is a bug in the
/// construction, so it aborts with the diagnostic.
pub fn steiner() -> &'static SteinerSystem {
    static S: OnceLock<SteinerSystem> = OnceLock::new();
    S.get_or_init(|| SteinerSystem::build().unwrap_or_else(|e| panic!("{e}")))
}

/// All `k`-subsets of the bits of `m`.
pub fn subsets(m: Mask, k: usize) -> Vec<Mask> {
    let bits: Vec<Mask> = positions(m).map(|p| p.bit()).collect();
    let mut out = Vec::new();
    fn rec(bits: &[Mask], k: usize, start: usize, acc: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..bits.len() {
            if bits.len() - i < k {
                break;
            }
            rec(bits, k - 1, i + 1, acc | bits[i], out);
        }
    }
    rec(&bits, k, 0, 0, &mut out);
    out
}

/// The 21 lines in affine coordinates, with labels `x=a`, `y=mx+c`, `L_inf`.
pub fn coordinate_lines() -> Vec<(String, Mask)> {
    let mut out = Vec::new();
    for m in F4::ELEMENTS {
        for c in F4::ELEMENTS {
            let mut mask = Position::infinity(Slope::Fin(m)).bit();
            for a in F4::ELEMENTS {
                mask |= Position::affine(a, m.mul(a).add(c)).bit();
            }
            out.push((slope_line_label(m, c), mask));
        }
    }
    for c in F4::ELEMENTS {
        let mut mask = Position::infinity(Slope::Inf).bit();
        for b in F4::ELEMENTS {
            mask |= Position::affine(c, b).bit();
        }
        out.push((format!("x={}", c.name()), mask));
    }
    let inf = INFINITY_CELLS.iter().fold(0, |m, (_, c)| m | 1 << c);
    out.push(("L_inf".into(), inf));
    out
}

fn slope_line_label(m: F4, c: F4) -> String {
    let mx = match m {
        F4::ZERO => String::new(),
        F4::ONE => "x".into(),
        _ => format!("{}x", m.name()),
    };
    match (mx.is_empty(), c) {
        (true, _) => format!("y={}", c.name()),
        (false, F4::ZERO) => format!("y={mx}"),
        (false, _) => format!("y={mx}+{}", c.name()),
    }
}

fn parse_coordinate_line(s: &str) -> Option<Mask> {
    let rhs = s.strip_prefix("y=")?;
    let (lin, c) = match rhs.split_once('+') {
        Some((l, c)) => (l, F4::parse(c)?),
        None if rhs.ends_with('x') => (rhs, F4::ZERO),
        None => return None,
    };
    let m = match lin.strip_suffix('x')? {
        "" => F4::ONE,
        k => F4::parse(k)?,
    };
    let name = slope_line_label(m, c);
    coordinate_lines().into_iter().find(|(n, _)| *n == name).map(|(_, mask)| mask)
}

/// Position of a fixed-oval label (`I`, `i`, `0`, `i0.14.23`, `14.23.i0`, ...).
pub fn sylvester_position(label: &str) -> Option<Position> {
    let key = if label.contains('.') { canonical_syntheme(label)? } else { label.to_string() };
    SYLVESTER.iter().position(|s| *s == key).map(|i| Position(i as u8))
}

/// Parses any point label: Roman, coordinate (`(a,b)`, `inf_s`) or fixed-oval label.
pub fn parse_point(s: &str) -> Result<Position> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::UnknownLabel(s.into()))?;
        let a = F4::parse(a.trim()).ok_or_else(|| Error::UnknownLabel(s.into()))?;
        let b = F4::parse(b.trim()).ok_or_else(|| Error::UnknownLabel(s.into()))?;
        return Ok(Position::affine(a, b));
    }
    if let Some(sl) = s.strip_prefix("inf_") {
        let slope = if sl == "inf" { Slope::Inf } else { Slope::Fin(F4::parse(sl).ok_or_else(|| Error::UnknownLabel(s.into()))?) };
        return Ok(Position::infinity(slope));
    }
    sylvester_position(s).ok_or_else(|| Error::UnknownLabel(s.into()))
}

/// Parses `{p1,p2,...}` or `p1 p2 ...` into a position mask; `Q0` is the fixed oval.
pub fn parse_point_set(s: &str) -> Result<Mask> {
    let s = s.trim();
    if s == "Q0" {
        return Ok(OVAL_SYMBOLS.iter().fold(0, |m, c| m | sylvester_position(&c.to_string()).unwrap().bit()));
    }
    let inner = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    let mut mask = 0;
    let mut depth = 0;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ' ' if depth == 0 => {
                if !cur.trim().is_empty() {
                    mask |= parse_point(&cur)?.bit();
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        mask |= parse_point(&cur)?.bit();
    }
    Ok(mask)
}

pub fn mask_label(m: Mask) -> String {
    let parts: Vec<&str> = positions(m).map(|p| p.sylvester()).collect();
    format!("{{{}}}", parts.join(","))
}

fn symbol_rank(c: char) -> usize {
    OVAL_SYMBOLS.iter().position(|s| *s == c).unwrap_or(usize::MAX)
}

fn canonical_duad(s: &str) -> String {
    let mut cs: Vec<char> = s.chars().collect();
    cs.sort_by_key(|c| symbol_rank(*c));
    cs.into_iter().collect()
}

fn canonical_syntheme(s: &str) -> Option<String> {
    let mut duads: Vec<String> = s.split('.').map(canonical_duad).collect();
    if duads.len() != 3 || duads.iter().any(|d| d.chars().count() != 2) {
        return None;
    }
    let all: HashSet<char> = duads.iter().flat_map(|d| d.chars()).collect();
    if all.len() != 6 || all.iter().any(|c| symbol_rank(*c) == usize::MAX) {
        return None;
    }
    duads.sort_by_key(|d| symbol_rank(d.chars().next().unwrap()));
    Some(duads.join("."))
}

fn syntheme_set(points: Mask) -> Vec<String> {
    let mut v: Vec<String> = positions(points).map(|p| p.sylvester().to_string()).collect();
    v.sort();
    v
}

/// The five synthemes of the total `a|bcdef`: ad.ce.bf, ae.bc.df, af.be.cd, ab.cf.de, ac.bd.ef.
pub fn total_from_label(s: &str) -> Result<Vec<String>> {
    let (a, rest) = s.split_once('|').ok_or_else(|| Error::UnknownLabel(s.into()))?;
    let a: Vec<char> = a.chars().collect();
    let r: Vec<char> = rest.chars().collect();
    if a.len() != 1 || r.len() != 5 {
        return Err(Error::UnknownLabel(s.into()));
    }
    let (a, b, c, d, e, f) = (a[0], r[0], r[1], r[2], r[3], r[4]);
    let pick = |x: [char; 6]| format!("{}{}.{}{}.{}{}", x[0], x[1], x[2], x[3], x[4], x[5]);
    let raw = [
        pick([a, d, c, e, b, f]),
        pick([a, e, b, c, d, f]),
        pick([a, f, b, e, c, d]),
        pick([a, b, c, f, d, e]),
        pick([a, c, b, d, e, f]),
    ];
    let mut out = Vec::new();
    for t in raw {
        out.push(canonical_syntheme(&t).ok_or_else(|| Error::UnknownLabel(s.into()))?);
    }
    out.sort();
    Ok(out)
}

/// Smallest `a|bcdef` label whose expansion is the syntheme set of the axis.
fn total_label(axis: Mask) -> String {
    let want = syntheme_set(axis);
    let mut best: Option<String> = None;
    for &a in &OVAL_SYMBOLS {
        let rest: Vec<char> = OVAL_SYMBOLS.iter().copied().filter(|c| *c != a).collect();
        for perm in permutations(&rest) {
            let label: String = std::iter::once(a).chain(std::iter::once('|')).chain(perm.iter().copied()).collect();
            if total_from_label(&label).map(|t| t == want).unwrap_or(false)
                && best.as_ref().is_none_or(|b| label < *b)
            {
                best = Some(label);
            }
        }
    }
    best.unwrap_or_default()
}

fn permutations(items: &[char]) -> Vec<Vec<char>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_field() {
        for a in F4::ELEMENTS {
            assert_eq!(a.mul(F4::ONE), a);
            assert_eq!(a.add(a), F4::ZERO);
        }
        assert_eq!(F4::W.mul(F4::W), F4::WB);
        assert_eq!(F4::W.add(F4::ONE), F4::WB);
        assert_eq!(F4::W.mul(F4::WB), F4::ONE);
    }

    #[test]
    fn position_kinds() {
        let count = |f: fn(PositionKind) -> bool| Position::all().filter(|p| f(p.kind())).count();
        assert_eq!(count(|k| matches!(k, PositionKind::Roman(_))), 3);
        assert_eq!(count(|k| matches!(k, PositionKind::Infinity(_))), 5);
        assert_eq!(count(|k| matches!(k, PositionKind::Affine(..))), 16);
        for p in Position::all() {
            assert_eq!(parse_point(&p.coord_label()).unwrap(), p);
            assert_eq!(parse_point(p.sylvester()).unwrap(), p);
        }
    }

    #[test]
    fn syntheme_spelling() {
        assert_eq!(sylvester_position("14.23.i0"), sylvester_position("i0.14.23"));
        assert_eq!(canonical_syntheme("32.41.0i").unwrap(), "i0.14.23");
    }

    #[test]
    fn hexacode_has_64_words() {
        let h = hexacode();
        let set: HashSet<_> = h.iter().collect();
        assert_eq!(set.len(), 64);
    }

    #[test]
    fn line_labels_parse() {
        let s = SteinerSystem::build().unwrap();
        assert_eq!(s.parse_line("y=x").unwrap(), s.parse_line("y=1x+0").unwrap());
        assert!(s.incidence("y=x", "(w,w)").unwrap());
        assert!(s.incidence("y=x", "inf_1").unwrap());
        assert!(!s.incidence("y=x", "inf_0").unwrap());
        assert!(s.incidence("y=wx+1", "(1,wb)").unwrap());
        assert!(s.incidence("0i", "i0.13.24").unwrap());
    }
}
