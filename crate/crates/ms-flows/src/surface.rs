//! CW-complex models of the Boy's and Girl's surfaces.
//!
//! Each surface is stored as literal gluing tables: for every 1-cell the
//! list of angle pairs it connects, and for every 2-cell its boundary word
//! (alternating angles and 1-cell traversals). The two encodings are
//! cross-validated against each other on construction.

use crate::error::DomainError;
use crate::symmetry::{Generator, SymmetryGroup};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceName {
    Boys,
    Girls,
}

impl SurfaceName {
    pub fn parse(s: &str) -> Result<Self, DomainError> {
        match s.to_ascii_lowercase().as_str() {
            "boys" | "boy" | "boy's" => Ok(SurfaceName::Boys),
            "girls" | "girl" | "girl's" => Ok(SurfaceName::Girls),
            other => Err(DomainError::UnknownSurface(other.to_string())),
        }
    }
}

impl fmt::Display for SurfaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceName::Boys => write!(f, "boys"),
            SurfaceName::Girls => write!(f, "girls"),
        }
    }
}

/// One of the twelve sectors around the triple point, numbered 1..=12.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Angle(pub u8);

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A double-point loop of the immersion (a 1-cell of the image complex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CellLoop {
    A,
    B,
    C,
}

impl CellLoop {
    pub const ALL: [CellLoop; 3] = [CellLoop::A, CellLoop::B, CellLoop::C];
}

impl fmt::Display for CellLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLoop::A => write!(f, "A"),
            CellLoop::B => write!(f, "B"),
            CellLoop::C => write!(f, "C"),
        }
    }
}

/// One of the two edges of the projective-plane complex lying over a loop.
/// The primed/unprimed decoration of the boundary words distinguishes the
/// two sheet branches along each double-point loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lift {
    pub cell: CellLoop,
    pub primed: bool,
}

impl Lift {
    pub const fn new(cell: CellLoop, primed: bool) -> Self {
        Lift { cell, primed }
    }

    /// Fixed enumeration order A, A', B, B', C, C'.
    pub const ALL: [Lift; 6] = [
        Lift::new(CellLoop::A, false),
        Lift::new(CellLoop::A, true),
        Lift::new(CellLoop::B, false),
        Lift::new(CellLoop::B, true),
        Lift::new(CellLoop::C, false),
        Lift::new(CellLoop::C, true),
    ];

    pub fn index(&self) -> usize {
        Lift::ALL.iter().position(|l| l == self).unwrap()
    }
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.cell, if self.primed { "'" } else { "" })
    }
}

/// The four 2-cells. On the Girl's surface these are the left disk, right
/// disk, boundary region and central region; on the Boy's surface `LD`,
/// `RD`, `BR` are the three small cells and `CR` is the large cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Region {
    LD,
    RD,
    BR,
    CR,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::LD, Region::RD, Region::BR, Region::CR];

    pub fn parse(s: &str) -> Result<Self, DomainError> {
        match s.to_ascii_uppercase().as_str() {
            "LD" => Ok(Region::LD),
            "RD" => Ok(Region::RD),
            "BR" => Ok(Region::BR),
            "CR" => Ok(Region::CR),
            other => Err(DomainError::RegionNotOnSurface(other.to_string())),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::LD => write!(f, "LD"),
            Region::RD => write!(f, "RD"),
            Region::BR => write!(f, "BR"),
            Region::CR => write!(f, "CR"),
        }
    }
}

pub type MarkLabel = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordToken {
    Angle(Angle),
    Cell { cell: CellLoop, primed: bool },
}

/// Cyclic boundary word of a 2-cell, alternating angle and cell tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryWord(pub Vec<WordToken>);

impl BoundaryWord {
    /// Parses a compact word such as `"1A6C'5C'8B11C"`.
    pub fn parse(text: &str) -> Self {
        let mut tokens = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_digit() {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let n: u8 = text[i..j].parse().unwrap();
                tokens.push(WordToken::Angle(Angle(n)));
                i = j;
            } else {
                let cell = match c {
                    'A' => CellLoop::A,
                    'B' => CellLoop::B,
                    'C' => CellLoop::C,
                    other => panic!("bad cell letter {other}"),
                };
                let primed = i + 1 < bytes.len() && bytes[i + 1] == b'\'';
                tokens.push(WordToken::Cell { cell, primed });
                i += if primed { 2 } else { 1 };
            }
        }
        BoundaryWord(tokens)
    }

    pub fn display(&self) -> String {
        let mut s = String::new();
        for t in &self.0 {
            match t {
                WordToken::Angle(a) => s.push_str(&a.0.to_string()),
                WordToken::Cell { cell, primed } => {
                    s.push_str(&cell.to_string());
                    if *primed {
                        s.push('\'');
                    }
                }
            }
        }
        s
    }
}

/// One traversal of a lifted 1-cell by a 2-cell boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub region: Region,
    /// Index of this side among the region's sides, in word order.
    pub index: usize,
    pub lift: Lift,
    pub from: Angle,
    pub to: Angle,
    /// Marked-point label carried by this side of the lift.
    pub mark: MarkLabel,
    /// Direction relative to the loop's reference orientation: `+1` runs
    /// with the loop, `-1` against it. Known for the Girl's surface only.
    pub sign: Option<i8>,
}

/// A lifted 1-cell together with its two traversals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftInfo {
    pub lift: Lift,
    /// Global side indices of the two traversals.
    pub sides: [usize; 2],
    /// Whether the two traversals run the same direction along the edge.
    pub same_direction: bool,
}

/// Raw gluing tables for one surface, prior to validation.
#[derive(Debug, Clone)]
pub struct Tables {
    pub name: SurfaceName,
    pub one_cells: BTreeMap<CellLoop, Vec<(u8, u8)>>,
    pub words: Vec<(Region, BoundaryWord)>,
    /// Marked-point label per (region, side index).
    pub marks: Vec<(Region, Vec<String>)>,
    /// Loop-direction sign per (region, side index), when known.
    pub signs: Option<Vec<(Region, Vec<i8>)>>,
}

fn mark_table(entries: &[(Region, &[&str])]) -> Vec<(Region, Vec<String>)> {
    entries
        .iter()
        .map(|(r, ls)| (*r, ls.iter().map(|s| s.to_string()).collect()))
        .collect()
}

fn girls_tables() -> Tables {
    let mut one_cells = BTreeMap::new();
    one_cells.insert(CellLoop::A, vec![(9, 9), (1, 6), (12, 10), (4, 7)]);
    one_cells.insert(CellLoop::B, vec![(3, 3), (7, 10), (4, 2), (8, 11)]);
    one_cells.insert(CellLoop::C, vec![(5, 6), (12, 2), (8, 5), (11, 1)]);
    Tables {
        name: SurfaceName::Girls,
        one_cells,
        words: vec![
            (Region::LD, BoundaryWord::parse("9A'")),
            (Region::RD, BoundaryWord::parse("3B'")),
            (Region::BR, BoundaryWord::parse("1A6C'5C'8B11C")),
            (Region::CR, BoundaryWord::parse("2C12A'10B7A4B'")),
        ],
        // Marked-point labels a..g, placed side by side with the boundary
        // words. The two planar-boundary copies of the point on C' are c
        // and d; the copy on C is g; a, e sit on the lifts of A and b, f
        // on the lifts of B.
        marks: mark_table(&[
            (Region::LD, &["e"]),
            (Region::RD, &["f"]),
            (Region::BR, &["a", "c", "d", "b", "g"]),
            (Region::CR, &["g", "e", "b", "a", "f"]),
        ]),
        // Traversal directions relative to the reference orientations of
        // the loops (the arrows of the angle-numbering figure). These are
        // pinned by the corner-role facts of the one-fixed-point case
        // analysis, which the orientation tests assert verbatim.
        signs: Some(vec![
            (Region::LD, vec![-1]),
            (Region::RD, vec![-1]),
            (Region::BR, vec![1, -1, -1, 1, 1]),
            (Region::CR, vec![-1, 1, -1, -1, 1]),
        ]),
    }
}

fn boys_tables() -> Tables {
    let mut one_cells = BTreeMap::new();
    one_cells.insert(CellLoop::A, vec![(9, 9), (1, 6), (4, 7), (10, 12)]);
    one_cells.insert(CellLoop::B, vec![(3, 3), (8, 11), (2, 4), (7, 10)]);
    one_cells.insert(CellLoop::C, vec![(5, 5), (6, 8), (11, 2), (12, 1)]);
    Tables {
        name: SurfaceName::Boys,
        one_cells,
        words: vec![
            (Region::LD, BoundaryWord::parse("9A'")),
            (Region::RD, BoundaryWord::parse("3B'")),
            (Region::BR, BoundaryWord::parse("5C'")),
            (Region::CR, BoundaryWord::parse("1A6C'8B11C2B'4A7B10A'12C")),
        ],
        marks: mark_table(&[
            (Region::LD, &["a3"]),
            (Region::RD, &["b3"]),
            (Region::BR, &["c3"]),
            (
                Region::CR,
                &["a1", "c3", "b1", "c1", "b3", "a2", "b2", "a3", "c2"],
            ),
        ]),
        signs: None,
    }
}

/// Union-find over the twelve angles.
struct AngleClasses {
    parent: Vec<usize>,
}

impl AngleClasses {
    fn new() -> Self {
        AngleClasses {
            parent: (0..12).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
    fn classes(&mut self) -> Vec<Vec<u8>> {
        let mut map: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
        for i in 0..12 {
            let r = self.find(i);
            map.entry(r).or_default().push(i as u8 + 1);
        }
        map.into_values().collect()
    }
}

/// Germ of a lifted edge at the vertex: `(lift index, 0 = tail / 1 = head)`.
type Germ = (usize, u8);

fn side_end_germs(
    lifts: &[LiftInfo],
    sides: &[Side],
    flags: &[bool],
) -> (Vec<Germ>, Vec<Germ>) {
    // For each side: the germ its start touches and the germ its end touches.
    let mut start = vec![(0usize, 0u8); sides.len()];
    let mut end = vec![(0usize, 0u8); sides.len()];
    for (li, info) in lifts.iter().enumerate() {
        let [s0, s1] = info.sides;
        let same = flags[li];
        start[s0] = (li, 0);
        end[s0] = (li, 1);
        if same {
            start[s1] = (li, 0);
            end[s1] = (li, 1);
        } else {
            start[s1] = (li, 1);
            end[s1] = (li, 0);
        }
    }
    (start, end)
}

/// Computes angle classes obtained by gluing every lifted edge under the
/// given direction flags (`true` = the two traversals run the same way).
fn vertex_classes_for_flags(lifts: &[LiftInfo], sides: &[Side], flags: &[bool]) -> Vec<Vec<u8>> {
    let mut uf = AngleClasses::new();
    for (li, info) in lifts.iter().enumerate() {
        let t = &sides[info.sides[0]];
        let u = &sides[info.sides[1]];
        if flags[li] {
            uf.union(t.from.0 as usize - 1, u.from.0 as usize - 1);
            uf.union(t.to.0 as usize - 1, u.to.0 as usize - 1);
        } else {
            uf.union(t.from.0 as usize - 1, u.to.0 as usize - 1);
            uf.union(t.to.0 as usize - 1, u.from.0 as usize - 1);
        }
    }
    uf.classes()
}

/// Checks that every glued vertex has a single-cycle link (a manifold
/// point) under the given flags.
fn links_are_manifold(
    lifts: &[LiftInfo],
    sides: &[Side],
    flags: &[bool],
    in_side: &BTreeMap<u8, usize>,
    out_side: &BTreeMap<u8, usize>,
    classes: &[Vec<u8>],
) -> bool {
    let (start, end) = side_end_germs(lifts, sides, flags);
    for class in classes {
        // Link graph: nodes are germs, edges are the class's angles.
        let mut adj: BTreeMap<Germ, Vec<Germ>> = BTreeMap::new();
        for &a in class {
            let g_in = end[in_side[&a]];
            let g_out = start[out_side[&a]];
            adj.entry(g_in).or_default().push(g_out);
            adj.entry(g_out).or_default().push(g_in);
        }
        if adj.values().any(|v| v.len() != 2) {
            return false;
        }
        // Single cycle: walk from an arbitrary node and count edges seen.
        let nodes: Vec<Germ> = adj.keys().copied().collect();
        let first = nodes[0];
        let mut visited: BTreeSet<Germ> = BTreeSet::new();
        let mut cur = first;
        let mut prev: Option<Germ> = None;
        loop {
            visited.insert(cur);
            let nbrs = &adj[&cur];
            let next = if Some(nbrs[0]) != prev || nbrs[0] == nbrs[1] {
                nbrs[0]
            } else {
                nbrs[1]
            };
            prev = Some(cur);
            cur = next;
            if cur == first {
                break;
            }
            if visited.contains(&cur) && cur != first {
                return false;
            }
        }
        if visited.len() != nodes.len() {
            return false;
        }
    }
    true
}

/// The validated stratified surface with all derived structure.
#[derive(Debug, Clone)]
pub struct StratifiedSurface {
    pub name: SurfaceName,
    pub one_cells: BTreeMap<CellLoop, Vec<(u8, u8)>>,
    pub words: Vec<(Region, BoundaryWord)>,
    /// All twelve traversals, grouped by region in word order.
    pub sides: Vec<Side>,
    pub lifts: Vec<LiftInfo>,
    /// The three angle classes of the projective-plane complex.
    pub vertex_classes: Vec<Vec<u8>>,
    /// Marked-point identification classes, one per loop.
    pub mark_classes: Vec<(CellLoop, Vec<MarkLabel>)>,
    pub symmetry: SymmetryGroup,
    /// Global side index arriving at / leaving each angle.
    pub in_side: BTreeMap<u8, usize>,
    pub out_side: BTreeMap<u8, usize>,
}

impl StratifiedSurface {
    pub fn region_word(&self, region: Region) -> &BoundaryWord {
        &self.words.iter().find(|(r, _)| *r == region).unwrap().1
    }

    pub fn region_sides(&self, region: Region) -> Vec<&Side> {
        self.sides.iter().filter(|s| s.region == region).collect()
    }

    pub fn side(&self, region: Region, index: usize) -> &Side {
        self.sides
            .iter()
            .find(|s| s.region == region && s.index == index)
            .unwrap()
    }

    pub fn mark_class_of(&self, label: &str) -> &(CellLoop, Vec<MarkLabel>) {
        self.mark_classes
            .iter()
            .find(|(_, ls)| ls.iter().any(|l| l == label))
            .unwrap()
    }

    /// The two sides of the given lift, in global-side order.
    pub fn lift_info(&self, lift: Lift) -> &LiftInfo {
        self.lifts.iter().find(|l| l.lift == lift).unwrap()
    }

    /// Serializes the surface to the versioned JSON document.
    pub fn to_json(&self) -> serde_json::Value {
        let one_cells: BTreeMap<String, Vec<[u8; 2]>> = self
            .one_cells
            .iter()
            .map(|(c, ps)| (c.to_string(), ps.iter().map(|&(a, b)| [a, b]).collect()))
            .collect();
        serde_json::json!({
            "schemaVersion": 1,
            "name": self.name.to_string(),
            "angles": (1..=12).collect::<Vec<u8>>(),
            "oneCells": one_cells,
            "twoCells": self.words.iter()
                .map(|(r, w)| serde_json::json!({"region": r.to_string(), "word": w.display()}))
                .collect::<Vec<_>>(),
            "markedPointClasses": self.mark_classes.iter()
                .map(|(_, ls)| ls.clone()).collect::<Vec<_>>(),
            "symmetry": self.symmetry.to_json(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(ValidationCheck {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn derive_sides(tables: &Tables) -> Result<Vec<Side>, String> {
    let mut sides = Vec::new();
    for (region, word) in &tables.words {
        let toks = &word.0;
        if toks.len() % 2 != 0 {
            return Err(format!("word of {region} has odd length"));
        }
        let marks = tables
            .marks
            .iter()
            .find(|(r, _)| r == region)
            .map(|(_, m)| m.clone())
            .unwrap_or_default();
        let signs = tables.signs.as_ref().map(|sg| {
            sg.iter()
                .find(|(r, _)| r == region)
                .map(|(_, s)| s.clone())
                .unwrap_or_default()
        });
        let mut index = 0usize;
        for i in (0..toks.len()).step_by(2) {
            let from = match toks[i] {
                WordToken::Angle(a) => a,
                _ => return Err(format!("word of {region}: expected angle at {i}")),
            };
            let (cell, primed) = match toks[i + 1] {
                WordToken::Cell { cell, primed } => (cell, primed),
                _ => return Err(format!("word of {region}: expected cell at {}", i + 1)),
            };
            let to = match toks[(i + 2) % toks.len()] {
                WordToken::Angle(a) => a,
                _ => return Err(format!("word of {region}: expected angle")),
            };
            sides.push(Side {
                region: *region,
                index,
                lift: Lift::new(cell, primed),
                from,
                to,
                mark: marks.get(index).map(|m| m.to_string()).unwrap_or_default(),
                sign: signs.as_ref().and_then(|s| s.get(index).copied()),
            });
            index += 1;
        }
    }
    Ok(sides)
}

fn group_lifts(sides: &[Side]) -> Result<Vec<LiftInfo>, String> {
    let mut infos = Vec::new();
    for lift in Lift::ALL {
        let ix: Vec<usize> = sides
            .iter()
            .enumerate()
            .filter(|(_, s)| s.lift == lift)
            .map(|(i, _)| i)
            .collect();
        if ix.len() != 2 {
            return Err(format!("lift {lift} has {} traversals, expected 2", ix.len()));
        }
        infos.push(LiftInfo {
            lift,
            sides: [ix[0], ix[1]],
            same_direction: false, // resolved below
        });
    }
    Ok(infos)
}

/// Resolves the direction flags of the lifted edges. Flags on non-leaf
/// lifts are forced by requiring three manifold vertices upstairs; a lift
/// whose flag is not observable (one of its sides lies on a monogon cell)
/// is canonicalized, preferring opposite directions. When a stored sign
/// table exists it takes precedence.
fn resolve_flags(
    tables: &Tables,
    lifts: &[LiftInfo],
    sides: &[Side],
    in_side: &BTreeMap<u8, usize>,
    out_side: &BTreeMap<u8, usize>,
) -> Result<(Vec<bool>, Vec<Vec<u8>>), String> {
    if tables.signs.is_some() {
        let flags: Vec<bool> = lifts
            .iter()
            .map(|info| {
                let s0 = sides[info.sides[0]].sign.unwrap();
                let s1 = sides[info.sides[1]].sign.unwrap();
                s0 == s1
            })
            .collect();
        let classes = vertex_classes_for_flags(lifts, sides, &flags);
        if classes.len() != 3 {
            return Err(format!(
                "sign table yields {} vertex classes, expected 3",
                classes.len()
            ));
        }
        if !links_are_manifold(lifts, sides, &flags, in_side, out_side, &classes) {
            return Err("sign table yields a non-manifold vertex".to_string());
        }
        return Ok((flags, classes));
    }
    let mut admissible: Vec<(Vec<bool>, Vec<Vec<u8>>)> = Vec::new();
    for bits in 0..(1u32 << lifts.len()) {
        let flags: Vec<bool> = (0..lifts.len()).map(|i| bits >> i & 1 == 1).collect();
        let classes = vertex_classes_for_flags(lifts, sides, &flags);
        if classes.len() == 3
            && links_are_manifold(lifts, sides, &flags, in_side, out_side, &classes)
        {
            admissible.push((flags, classes));
        }
    }
    let first = admissible
        .first()
        .ok_or_else(|| "no direction flags give three manifold vertices".to_string())?;
    if admissible.iter().any(|(_, c)| c != &first.1) {
        return Err("vertex classes are not determined by the gluing data".to_string());
    }
    Ok(first.clone())
}

/// Runs the structural checks on a set of gluing tables.
pub fn validate_tables(tables: &Tables) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };

    // Each angle appears exactly twice across the one-cell gluing pairs.
    let mut counts = [0usize; 13];
    for pairs in tables.one_cells.values() {
        for &(a, b) in pairs {
            if (1..=12).contains(&a) {
                counts[a as usize] += 1;
            }
            if (1..=12).contains(&b) {
                counts[b as usize] += 1;
            }
        }
    }
    let bad: Vec<u8> = (1u8..=12).filter(|&a| counts[a as usize] != 2).collect();
    report.push(
        "angle-double-occurrence",
        bad.is_empty(),
        if bad.is_empty() {
            "every angle 1..12 appears exactly twice".to_string()
        } else {
            format!("angles with wrong multiplicity: {bad:?}")
        },
    );

    // Boundary words induce the same gluing pairs as the one-cell tables.
    let consistency = (|| -> Result<(), String> {
        let sides = derive_sides(tables)?;
        for cell in CellLoop::ALL {
            let mut from_words: Vec<(u8, u8)> = sides
                .iter()
                .filter(|s| s.lift.cell == cell)
                .map(|s| {
                    let (a, b) = (s.from.0, s.to.0);
                    (a.min(b), a.max(b))
                })
                .collect();
            from_words.sort_unstable();
            let mut from_table: Vec<(u8, u8)> = tables
                .one_cells
                .get(&cell)
                .map(|ps| ps.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect())
                .unwrap_or_default();
            from_table.sort_unstable();
            if from_words != from_table {
                return Err(format!(
                    "loop {cell}: word pairs {from_words:?} != table pairs {from_table:?}"
                ));
            }
        }
        Ok(())
    })();
    report.push(
        "word-gluing-consistency",
        consistency.is_ok(),
        consistency.err().unwrap_or_else(|| "boundary words match gluing pairs".to_string()),
    );

    // Image complex: one vertex, three edges, four faces.
    let faces = tables.words.len();
    let chi_image = 1i64 - 3 + faces as i64;
    report.push(
        "image-euler-characteristic",
        chi_image == 2,
        format!("1 - 3 + {faces} = {chi_image}"),
    );

    // Pullback complex: three vertices, six edges, four faces.
    let pullback = (|| -> Result<i64, String> {
        let sides = derive_sides(tables)?;
        let lifts = group_lifts(&sides)?;
        let (in_side, out_side) = angle_incidence(&sides)?;
        let (_, classes) = resolve_flags(tables, &lifts, &sides, &in_side, &out_side)?;
        Ok(classes.len() as i64 - 6 + faces as i64)
    })();
    match pullback {
        Ok(chi) => report.push(
            "pullback-euler-characteristic",
            chi == 1,
            format!("3 vertices - 6 edges + {faces} faces = {chi}"),
        ),
        Err(e) => report.push("pullback-euler-characteristic", false, e),
    }

    report
}

fn angle_incidence(sides: &[Side]) -> Result<(BTreeMap<u8, usize>, BTreeMap<u8, usize>), String> {
    let mut in_side = BTreeMap::new();
    let mut out_side = BTreeMap::new();
    for (i, s) in sides.iter().enumerate() {
        if in_side.insert(s.to.0, i).is_some() {
            return Err(format!("angle {} is entered by two sides", s.to.0));
        }
        if out_side.insert(s.from.0, i).is_some() {
            return Err(format!("angle {} is left by two sides", s.from.0));
        }
    }
    if in_side.len() != 12 || out_side.len() != 12 {
        return Err("every angle must be entered and left exactly once".to_string());
    }
    Ok((in_side, out_side))
}

fn build_from_tables(tables: Tables) -> Result<StratifiedSurface, DomainError> {
    let report = validate_tables(&tables);
    if !report.all_passed() {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(DomainError::InvalidSurface(failed.join(", ")));
    }
    let sides = derive_sides(&tables).map_err(DomainError::InvalidSurface)?;
    let (in_side, out_side) = angle_incidence(&sides).map_err(DomainError::InvalidSurface)?;
    let mut lifts = group_lifts(&sides).map_err(DomainError::InvalidSurface)?;
    let (flags, vertex_classes) = resolve_flags(&tables, &lifts, &sides, &in_side, &out_side)
        .map_err(DomainError::InvalidSurface)?;
    for (info, flag) in lifts.iter_mut().zip(&flags) {
        info.same_direction = *flag;
    }

    // Identification classes: the marks on the two lifts of one loop are
    // copies of a single surface point.
    let mut mark_classes = Vec::new();
    for cell in CellLoop::ALL {
        let mut labels: Vec<MarkLabel> = Vec::new();
        for s in &sides {
            if s.lift.cell == cell && !labels.contains(&s.mark) {
                labels.push(s.mark.clone());
            }
        }
        labels.sort();
        mark_classes.push((cell, labels));
    }

    let symmetry = match tables.name {
        SurfaceName::Girls => crate::symmetry::girls_group(),
        SurfaceName::Boys => crate::symmetry::boys_group(),
    };

    let surface = StratifiedSurface {
        name: tables.name,
        one_cells: tables.one_cells,
        words: tables.words,
        sides,
        lifts,
        vertex_classes,
        mark_classes,
        symmetry,
        in_side,
        out_side,
    };
    for gen in &surface.symmetry.generators {
        gen.check_automorphism(&surface)
            .map_err(DomainError::InvalidSurface)?;
    }
    Ok(surface)
}

/// Constructs the named surface from its literal gluing tables.
pub fn build_surface(name: SurfaceName) -> StratifiedSurface {
    let tables = match name {
        SurfaceName::Girls => girls_tables(),
        SurfaceName::Boys => boys_tables(),
    };
    build_from_tables(tables).expect("built-in tables validate")
}

/// Validates a built surface (re-running the table checks).
pub fn validate_complex(surface: &StratifiedSurface) -> ValidationReport {
    validate_tables(&tables_of(surface))
}

pub(crate) fn tables_of(surface: &StratifiedSurface) -> Tables {
    let marks = Region::ALL
        .iter()
        .map(|&r| {
            let labels: Vec<String> = surface
                .region_sides(r)
                .iter()
                .map(|s| s.mark.clone())
                .collect();
            (r, labels)
        })
        .collect();
    Tables {
        name: surface.name,
        one_cells: surface.one_cells.clone(),
        words: surface.words.clone(),
        marks,
        signs: if surface.sides.iter().all(|s| s.sign.is_some()) {
            Some(
                Region::ALL
                    .iter()
                    .map(|&r| {
                        (
                            r,
                            surface
                                .region_sides(r)
                                .iter()
                                .map(|s| s.sign.unwrap())
                                .collect(),
                        )
                    })
                    .collect(),
            )
        } else {
            None
        },
    }
}

/// The CW-complex induced on the projective plane: the triple point lifts
/// to three vertices, every loop to two edges, the 2-cells bijectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CwComplex {
    pub vertices: Vec<Vec<u8>>,
    pub edges: Vec<PullbackEdge>,
    pub faces: usize,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackEdge {
    pub lift: Lift,
    /// Indices into `vertices` of tail and head.
    pub endpoints: (usize, usize),
}

pub fn pullback_complex(surface: &StratifiedSurface) -> CwComplex {
    let class_of = |a: u8| -> usize {
        surface
            .vertex_classes
            .iter()
            .position(|c| c.contains(&a))
            .unwrap()
    };
    let edges: Vec<PullbackEdge> = surface
        .lifts
        .iter()
        .map(|info| {
            let t = &surface.sides[info.sides[0]];
            PullbackEdge {
                lift: info.lift,
                endpoints: (class_of(t.from.0), class_of(t.to.0)),
            }
        })
        .collect();
    let chi = surface.vertex_classes.len() as i64 - edges.len() as i64 + surface.words.len() as i64;
    CwComplex {
        vertices: surface.vertex_classes.clone(),
        edges,
        faces: surface.words.len(),
        chi,
    }
}

/// Test access to the raw tables, so defects can be injected.
pub mod raw {
    pub use super::{boys_tables_pub as boys_tables, girls_tables_pub as girls_tables};
}

pub fn girls_tables_pub() -> Tables {
    girls_tables()
}

pub fn boys_tables_pub() -> Tables {
    boys_tables()
}

#[allow(unused)]
pub(crate) fn generator_side_image(
    surface: &StratifiedSurface,
    gen: &Generator,
    side: &Side,
) -> Option<Side> {
    gen.side_image(surface, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girls_builds_and_validates() {
        let s = build_surface(SurfaceName::Girls);
        assert_eq!(s.sides.len(), 12);
        assert_eq!(s.vertex_classes.len(), 3);
        assert_eq!(
            s.vertex_classes,
            vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]]
        );
        assert!(validate_complex(&s).all_passed());
        let cr_word = s.region_word(Region::CR).display();
        assert_eq!(cr_word, "2C12A'10B7A4B'");
    }

    #[test]
    fn boys_builds_and_validates() {
        let s = build_surface(SurfaceName::Boys);
        assert!(validate_complex(&s).all_passed());
        assert_eq!(
            s.vertex_classes,
            vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]]
        );
        let words: Vec<String> = s.words.iter().map(|(_, w)| w.display()).collect();
        assert!(words.contains(&"9A'".to_string()));
        assert!(words.contains(&"3B'".to_string()));
        assert!(words.contains(&"5C'".to_string()));
    }

    #[test]
    fn pullback_counts() {
        for name in [SurfaceName::Girls, SurfaceName::Boys] {
            let s = build_surface(name);
            let c = pullback_complex(&s);
            assert_eq!(c.vertices.len(), 3);
            assert_eq!(c.edges.len(), 6);
            assert_eq!(c.faces, 4);
            assert_eq!(c.chi, 1);
        }
    }

    #[test]
    fn defective_tables_fail_angle_check() {
        let mut t = girls_tables();
        // Drop angle 7 from one of B's pairs.
        let pairs = t.one_cells.get_mut(&CellLoop::B).unwrap();
        let pos = pairs.iter().position(|&(a, b)| a == 7 || b == 7).unwrap();
        pairs[pos] = (11, 11);
        let report = validate_tables(&t);
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "angle-double-occurrence")
            .unwrap();
        assert!(!check.passed);
    }

    #[test]
    fn girls_marks_and_classes() {
        let s = build_surface(SurfaceName::Girls);
        let classes: Vec<Vec<String>> = s.mark_classes.iter().map(|(_, l)| l.clone()).collect();
        assert!(classes.contains(&vec!["a".to_string(), "e".to_string()]));
        assert!(classes.contains(&vec!["b".to_string(), "f".to_string()]));
        assert!(classes.contains(&vec!["c".to_string(), "d".to_string(), "g".to_string()]));
    }

    #[test]
    fn word_parse_round_trip() {
        let w = BoundaryWord::parse("1A6C'5C'8B11C");
        assert_eq!(w.display(), "1A6C'5C'8B11C");
        assert_eq!(w.0.len(), 10);
    }
}
