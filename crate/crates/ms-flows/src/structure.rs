//! Flow-structure values: colorings, per-region separatrix diagrams and
//! whole-surface flow structures.

use crate::error::DomainError;
use crate::surface::{CellLoop, Lift, Region, StratifiedSurface, SurfaceName};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Color of a marked-point class: green points are potential sources
/// (both 1-cell arcs leave them), red points potential sinks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkColor {
    Green,
    Red,
}

impl MarkColor {
    pub fn flipped(self) -> Self {
        match self {
            MarkColor::Green => MarkColor::Red,
            MarkColor::Red => MarkColor::Green,
        }
    }
}

impl fmt::Display for MarkColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkColor::Green => write!(f, "G"),
            MarkColor::Red => write!(f, "R"),
        }
    }
}

/// Assignment of a color to every marked-point identification class.
/// Classes are in bijection with the loops, so the map is keyed by loop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    pub by_loop: BTreeMap<CellLoop, MarkColor>,
}

impl Coloring {
    pub fn new(a: MarkColor, b: MarkColor, c: MarkColor) -> Self {
        let mut by_loop = BTreeMap::new();
        by_loop.insert(CellLoop::A, a);
        by_loop.insert(CellLoop::B, b);
        by_loop.insert(CellLoop::C, c);
        Coloring { by_loop }
    }

    pub fn partial(entries: &[(CellLoop, MarkColor)]) -> Self {
        Coloring {
            by_loop: entries.iter().copied().collect(),
        }
    }

    pub fn validate_complete(&self, surface: &StratifiedSurface) -> Result<(), DomainError> {
        for (cell, labels) in &surface.mark_classes {
            if !self.by_loop.contains_key(cell) {
                return Err(DomainError::IncompleteColoring(format!("{{{}}}", labels.join(","))));
            }
        }
        Ok(())
    }

    pub fn color_of_loop(&self, cell: CellLoop) -> MarkColor {
        self.by_loop[&cell]
    }

    pub fn flipped(&self) -> Coloring {
        Coloring {
            by_loop: self
                .by_loop
                .iter()
                .map(|(&c, &col)| (c, col.flipped()))
                .collect(),
        }
    }
}

/// Whether a marked point, seen from one region, absorbs an open sector
/// (node) or carries a transversal separatrix (saddle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointStatus {
    Node,
    Saddle,
}

/// Fixed points allowed in region interiors (projective family only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InteriorKind {
    Sink,
    Source,
    Saddle,
}

/// Endpoint of a separatrix chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagEnd {
    /// Index into the region's boundary item list.
    Boundary(usize),
    /// Index into the diagram's interior node list.
    Interior(usize),
}

/// A directed separatrix: the flow runs `from -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    pub from: DiagEnd,
    pub to: DiagEnd,
}

/// The flow structure inside one region: marked-point statuses, interior
/// fixed points, and the separatrix chords between them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegionDiagram {
    pub region: Region,
    /// Status per boundary item (None at corners).
    pub statuses: Vec<Option<PointStatus>>,
    pub interior: Vec<InteriorKind>,
    pub chords: Vec<Chord>,
}

impl RegionDiagram {
    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    /// Canonical form: interior nodes sorted by their fingerprint, chords
    /// sorted. Two diagrams are equal iff their normal forms are equal.
    pub fn normalize(&mut self) {
        let n = self.interior.len();
        if n > 0 {
            let mut fingerprints: Vec<(InteriorKind, Vec<(bool, DiagEnd)>, usize)> = (0..n)
                .map(|i| {
                    let mut ends: Vec<(bool, DiagEnd)> = self
                        .chords
                        .iter()
                        .flat_map(|ch| {
                            let mut v = Vec::new();
                            if ch.from == DiagEnd::Interior(i) {
                                v.push((false, ch.to));
                            }
                            if ch.to == DiagEnd::Interior(i) {
                                v.push((true, ch.from));
                            }
                            v
                        })
                        .collect();
                    ends.sort();
                    (self.interior[i], ends, i)
                })
                .collect();
            fingerprints.sort();
            let mut remap = vec![0usize; n];
            for (new_idx, (_, _, old_idx)) in fingerprints.iter().enumerate() {
                remap[*old_idx] = new_idx;
            }
            let interior_old = self.interior.clone();
            for (new_idx, (_, _, old_idx)) in fingerprints.iter().enumerate() {
                self.interior[new_idx] = interior_old[*old_idx];
            }
            for ch in &mut self.chords {
                if let DiagEnd::Interior(i) = ch.from {
                    ch.from = DiagEnd::Interior(remap[i]);
                }
                if let DiagEnd::Interior(i) = ch.to {
                    ch.to = DiagEnd::Interior(remap[i]);
                }
            }
        }
        self.chords.sort();
    }

    /// Reverses time: chords flip, sinks become sources.
    pub fn flipped(&self) -> RegionDiagram {
        let mut d = RegionDiagram {
            region: self.region,
            statuses: self.statuses.clone(),
            interior: self
                .interior
                .iter()
                .map(|k| match k {
                    InteriorKind::Sink => InteriorKind::Source,
                    InteriorKind::Source => InteriorKind::Sink,
                    InteriorKind::Saddle => InteriorKind::Saddle,
                })
                .collect(),
            chords: self
                .chords
                .iter()
                .map(|c| Chord {
                    from: c.to,
                    to: c.from,
                })
                .collect(),
        };
        d.normalize();
        d
    }
}

/// The flow families the crate enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    OneFixedPoint,
    MsOptimal,
    Projective,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self, DomainError> {
        match s.to_ascii_lowercase().as_str() {
            "one-fixed-point" | "1fp" => Ok(Family::OneFixedPoint),
            "ms-optimal" | "ms" => Ok(Family::MsOptimal),
            "projective" | "opms" => Ok(Family::Projective),
            other => Err(DomainError::Unsupported(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::OneFixedPoint => write!(f, "one-fixed-point"),
            Family::MsOptimal => write!(f, "ms-optimal"),
            Family::Projective => write!(f, "projective"),
        }
    }
}

/// RP^2-level type of a marked point (projective family). Marked points
/// upstairs are in bijection with the lifted edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkType {
    Sink,
    Source,
    Saddle,
}

/// A complete labeled flow structure on one surface.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlowStructure {
    pub surface: SurfaceName,
    pub family: Family,
    /// Option tag within the family ("1", "2", "3").
    pub option: String,
    /// Marked-point coloring; absent for the one-fixed-point family.
    pub coloring: Option<Coloring>,
    /// Loop directions, one-fixed-point family only (+1 keeps the
    /// reference orientation of the loop).
    pub orientations: Option<BTreeMap<CellLoop, i8>>,
    /// RP^2 mark types, projective family only.
    pub mark_types: Option<BTreeMap<Lift, MarkType>>,
    pub regions: BTreeMap<Region, RegionDiagram>,
}

impl FlowStructure {
    /// Deterministic compact serialization used for canonical codes.
    pub fn canonical_string(&self) -> String {
        serde_json::to_string(self).expect("flow structures serialize")
    }

    /// Applies a symmetry generator, producing the image labeled structure.
    pub fn apply_generator(
        &self,
        surface: &StratifiedSurface,
        gen: &crate::symmetry::Generator,
    ) -> FlowStructure {
        let coloring = self.coloring.as_ref().map(|c| Coloring {
            by_loop: c
                .by_loop
                .iter()
                .map(|(&cell, &col)| (gen.cell_map[&cell].0, col))
                .collect(),
        });
        let orientations = self.orientations.as_ref().map(|o| gen.apply_orientations(o));
        let mark_types = self.mark_types.as_ref().map(|mt| {
            mt.iter()
                .map(|(&lift, &t)| (gen.apply_lift(lift), t))
                .collect()
        });
        let mut regions = BTreeMap::new();
        for (&region, diagram) in &self.regions {
            let target = gen.apply_region(region);
            let item_map = region_item_map(surface, gen, region, target);
            let mut statuses = vec![None; item_map.len()];
            for (old_idx, status) in diagram.statuses.iter().enumerate() {
                statuses[item_map[old_idx]] = *status;
            }
            let map_end = |e: DiagEnd| match e {
                DiagEnd::Boundary(i) => DiagEnd::Boundary(item_map[i]),
                DiagEnd::Interior(i) => DiagEnd::Interior(i),
            };
            let mut d = RegionDiagram {
                region: target,
                statuses,
                interior: diagram.interior.clone(),
                chords: diagram
                    .chords
                    .iter()
                    .map(|c| Chord {
                        from: map_end(c.from),
                        to: map_end(c.to),
                    })
                    .collect(),
            };
            d.normalize();
            regions.insert(target, d);
        }
        FlowStructure {
            surface: self.surface,
            family: self.family,
            option: self.option.clone(),
            coloring,
            orientations,
            mark_types,
            regions,
        }
    }

    /// Global color flip (time reversal): produces the mirror-count family.
    pub fn flipped(&self) -> FlowStructure {
        FlowStructure {
            surface: self.surface,
            family: self.family,
            option: self.option.clone(),
            coloring: self.coloring.as_ref().map(|c| c.flipped()),
            orientations: self.orientations.clone(),
            mark_types: self.mark_types.as_ref().map(|mt| {
                mt.iter()
                    .map(|(&l, &t)| {
                        let t = match t {
                            MarkType::Sink => MarkType::Source,
                            MarkType::Source => MarkType::Sink,
                            MarkType::Saddle => MarkType::Saddle,
                        };
                        (l, t)
                    })
                    .collect()
            }),
            regions: self
                .regions
                .iter()
                .map(|(&r, d)| (r, d.flipped()))
                .collect(),
        }
    }
}

/// Item-index map of a region's boundary under a generator: item `k` of
/// `region` goes to the returned index in `target`'s canonical item list.
fn region_item_map(
    surface: &StratifiedSurface,
    gen: &crate::symmetry::Generator,
    region: Region,
    target: Region,
) -> Vec<usize> {
    let items = crate::region::boundary_item_keys(surface, region);
    let target_items = crate::region::boundary_item_keys(surface, target);
    items
        .iter()
        .map(|key| {
            let image = match key {
                crate::region::ItemKey::Corner(a) => {
                    crate::region::ItemKey::Corner(gen.apply_angle(*a))
                }
                crate::region::ItemKey::Mark(m) => {
                    crate::region::ItemKey::Mark(gen.apply_mark(m))
                }
            };
            target_items
                .iter()
                .position(|k| *k == image)
                .expect("generator maps boundary items onto boundary items")
        })
        .collect()
}
