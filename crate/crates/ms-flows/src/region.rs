//! Region boundaries: the cyclic sequence of corners and marked points
//! around one 2-cell, with corner roles derived from an orientation
//! choice or a coloring.

use crate::error::DomainError;
use crate::orientation::OrientationAssignment;
use crate::structure::{Coloring, MarkColor};
use crate::surface::{Region, StratifiedSurface};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CornerRole {
    SourceCorner,
    SinkCorner,
    Transit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryItem {
    Corner { angle: u8, role: CornerRole },
    Mark { label: String, color: MarkColor },
}

impl BoundaryItem {
    pub fn is_mark(&self) -> bool {
        matches!(self, BoundaryItem::Mark { .. })
    }
}

impl fmt::Display for BoundaryItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryItem::Corner { angle, role } => {
                let r = match role {
                    CornerRole::SourceCorner => "+",
                    CornerRole::SinkCorner => "-",
                    CornerRole::Transit => "",
                };
                write!(f, "{angle}{r}")
            }
            BoundaryItem::Mark { label, color } => write!(f, "{label}:{color}"),
        }
    }
}

/// Identity of a boundary item irrespective of roles and colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemKey {
    Corner(u8),
    Mark(String),
}

/// The canonical item keys of a region: corners and marks interleaved in
/// word order, starting at the word's first angle.
pub fn boundary_item_keys(surface: &StratifiedSurface, region: Region) -> Vec<ItemKey> {
    let mut keys = Vec::new();
    for side in surface.region_sides(region) {
        keys.push(ItemKey::Corner(side.from.0));
        keys.push(ItemKey::Mark(side.mark.clone()));
    }
    keys
}

/// Cyclic boundary of one region with derived corner roles; marked points
/// are present exactly when a coloring was supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionBoundary {
    pub region: Region,
    pub items: Vec<BoundaryItem>,
}

impl RegionBoundary {
    pub fn corner_indices(&self) -> Vec<usize> {
        self.items
            .iter()
            .enumerate()
            .filter(|(_, it)| !it.is_mark())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Assembles the boundary of `region` under the given orientation data.
/// With a coloring the marks are included and corner roles come from the
/// colors; without one the 1-cells are whole trajectories and roles come
/// from the loop directions.
pub fn region_boundary(
    surface: &StratifiedSurface,
    region: Region,
    orientation: &OrientationAssignment,
    coloring: Option<&Coloring>,
) -> Result<RegionBoundary, DomainError> {
    if !surface.words.iter().any(|(r, _)| *r == region) {
        return Err(DomainError::RegionNotOnSurface(region.to_string()));
    }
    let roles = crate::orientation::corner_roles(surface, orientation)?;
    let mut items = Vec::new();
    for side in surface.region_sides(region) {
        items.push(BoundaryItem::Corner {
            angle: side.from.0,
            role: roles[&side.from.0],
        });
        if let Some(col) = coloring {
            col.validate_complete(surface)?;
            items.push(BoundaryItem::Mark {
                label: side.mark.clone(),
                color: col.color_of_loop(side.lift.cell),
            });
        }
    }
    Ok(RegionBoundary { region, items })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleRegionClass {
    Elliptic,
    Polar,
    RequiresSeparatrix,
}

/// Classifies a region with no internal structure: elliptic when every
/// boundary element is passing, polar when there is exactly one source
/// element and one sink element.
pub fn classify_simple_region(rb: &RegionBoundary) -> SimpleRegionClass {
    let mut sources = 0usize;
    let mut sinks = 0usize;
    for item in &rb.items {
        match item {
            BoundaryItem::Corner { role, .. } => match role {
                CornerRole::SourceCorner => sources += 1,
                CornerRole::SinkCorner => sinks += 1,
                CornerRole::Transit => {}
            },
            BoundaryItem::Mark { color, .. } => match color {
                MarkColor::Green => sources += 1,
                MarkColor::Red => sinks += 1,
            },
        }
    }
    match (sources, sinks) {
        (0, 0) => SimpleRegionClass::Elliptic,
        (1, 1) => SimpleRegionClass::Polar,
        _ => SimpleRegionClass::RequiresSeparatrix,
    }
}
