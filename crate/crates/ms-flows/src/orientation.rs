//! Flow-relevant combinatorics of orientation choices: arc directions,
//! corner roles, and the flows with one fixed point and no separatrices.

use crate::error::DomainError;
use crate::region::{region_boundary, classify_simple_region, CornerRole, SimpleRegionClass};
use crate::structure::{Coloring, Family, FlowStructure};
use crate::surface::{CellLoop, Region, StratifiedSurface, SurfaceName};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Direction data for the 1-cell arcs. With whole-loop directions the
/// 1-cells are single trajectories; with a coloring each half-arc flows
/// away from a green point and toward a red one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrientationAssignment {
    /// `+1` keeps the reference orientation of the loop, `-1` reverses it.
    Loops(BTreeMap<CellLoop, i8>),
    /// Half-arc directions induced by the marked-point colors.
    HalfArcs(Coloring),
}

impl OrientationAssignment {
    pub fn loops(a: i8, b: i8, c: i8) -> Self {
        let mut m = BTreeMap::new();
        m.insert(CellLoop::A, a);
        m.insert(CellLoop::B, b);
        m.insert(CellLoop::C, c);
        OrientationAssignment::Loops(m)
    }
}

/// Direction of a boundary arc at the null point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcAtNull {
    Into,
    OutOf,
}

/// Derives the half-arc orientation data from a coloring: arcs flow away
/// from green points toward the null point, and from the null point
/// toward red points.
pub fn derive_orientations(
    surface: &StratifiedSurface,
    coloring: &Coloring,
) -> Result<OrientationAssignment, DomainError> {
    coloring.validate_complete(surface)?;
    Ok(OrientationAssignment::HalfArcs(coloring.clone()))
}

/// Role of every angle under the given orientation data: a corner whose
/// two flanking arcs both leave the null point is a source corner, both
/// entering makes a sink corner, mixed is transit.
pub fn corner_roles(
    surface: &StratifiedSurface,
    orientation: &OrientationAssignment,
) -> Result<BTreeMap<u8, CornerRole>, DomainError> {
    let mut roles = BTreeMap::new();
    for angle in 1..=12u8 {
        let in_side = &surface.sides[surface.in_side[&angle]];
        let out_side = &surface.sides[surface.out_side[&angle]];
        let (in_flow, out_flow) = match orientation {
            OrientationAssignment::Loops(dirs) => {
                let flow_of = |side: &crate::surface::Side, at_end: bool| -> Result<ArcAtNull, DomainError> {
                    let sign = side.sign.ok_or_else(|| {
                        DomainError::Unsupported(format!(
                            "loop-orientation flows are only modelled on the {} surface",
                            SurfaceName::Girls
                        ))
                    })?;
                    let d = sign * dirs[&side.lift.cell];
                    // d = +1: the side runs from its `from` corner to its
                    // `to` corner.
                    Ok(if at_end {
                        if d > 0 { ArcAtNull::Into } else { ArcAtNull::OutOf }
                    } else if d > 0 {
                        ArcAtNull::OutOf
                    } else {
                        ArcAtNull::Into
                    })
                };
                (flow_of(in_side, true)?, flow_of(out_side, false)?)
            }
            OrientationAssignment::HalfArcs(coloring) => {
                coloring.validate_complete(surface)?;
                let flow_of = |side: &crate::surface::Side| match coloring.color_of_loop(side.lift.cell) {
                    crate::structure::MarkColor::Green => ArcAtNull::Into,
                    crate::structure::MarkColor::Red => ArcAtNull::OutOf,
                };
                (flow_of(in_side), flow_of(out_side))
            }
        };
        let role = match (in_flow, out_flow) {
            (ArcAtNull::OutOf, ArcAtNull::OutOf) => CornerRole::SourceCorner,
            (ArcAtNull::Into, ArcAtNull::Into) => CornerRole::SinkCorner,
            _ => CornerRole::Transit,
        };
        roles.insert(angle, role);
    }
    Ok(roles)
}

/// A flow with a single fixed point: a direction per loop and the
/// resulting region classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFixedPointFlow {
    pub orientations: BTreeMap<CellLoop, i8>,
    pub region_classes: BTreeMap<Region, SimpleRegionClass>,
}

impl OneFixedPointFlow {
    /// The case number by the (A, B) direction pattern: 1 = (A, B),
    /// 2 = (-A, B), 3 = (A, -B), 4 = (-A, -B).
    pub fn case_number(&self) -> u8 {
        match (self.orientations[&CellLoop::A], self.orientations[&CellLoop::B]) {
            (1, 1) => 1,
            (-1, 1) => 2,
            (1, -1) => 3,
            _ => 4,
        }
    }

    pub fn to_flow_structure(&self, surface: &StratifiedSurface) -> FlowStructure {
        FlowStructure {
            surface: surface.name,
            family: Family::OneFixedPoint,
            option: self.case_number().to_string(),
            coloring: None,
            orientations: Some(self.orientations.clone()),
            mark_types: None,
            regions: BTreeMap::new(),
        }
    }
}

fn evaluate_case(
    surface: &StratifiedSurface,
    da: i8,
    db: i8,
    dc: i8,
) -> Result<Option<OneFixedPointFlow>, DomainError> {
    let o = OrientationAssignment::loops(da, db, dc);
    let mut region_classes = BTreeMap::new();
    for region in Region::ALL {
        let rb = region_boundary(surface, region, &o, None)?;
        let class = classify_simple_region(&rb);
        if class == SimpleRegionClass::RequiresSeparatrix {
            return Ok(None);
        }
        region_classes.insert(region, class);
    }
    let OrientationAssignment::Loops(orientations) = o else {
        unreachable!()
    };
    Ok(Some(OneFixedPointFlow {
        orientations,
        region_classes,
    }))
}

/// Enumerates the flows with one fixed point and no separatrices, with
/// the direction of C normalized (from angle 12 to angle 2).
pub fn enumerate_one_fixed_point(
    surface: &StratifiedSurface,
) -> Result<Vec<OneFixedPointFlow>, DomainError> {
    if surface.name != SurfaceName::Girls {
        return Err(DomainError::Unsupported(
            "one-fixed-point enumeration is modelled on the Girl's surface only".to_string(),
        ));
    }
    let mut flows = Vec::new();
    // Case order (A,B), (-A,B), (A,-B), (-A,-B); C fixed to 12 -> 2.
    for (da, db) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        if let Some(flow) = evaluate_case(surface, da, db, 1)? {
            flows.push(flow);
        }
    }
    Ok(flows)
}

/// Enumerates both directions of C (no normalization); used as the
/// cross-check path that reflection-deduplication halves the count.
pub fn enumerate_all_labeled_one_fixed_point(
    surface: &StratifiedSurface,
) -> Result<Vec<OneFixedPointFlow>, DomainError> {
    if surface.name != SurfaceName::Girls {
        return Err(DomainError::Unsupported(
            "one-fixed-point enumeration is modelled on the Girl's surface only".to_string(),
        ));
    }
    let mut flows = Vec::new();
    for dc in [1, -1] {
        for (da, db) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            if let Some(flow) = evaluate_case(surface, da, db, dc)? {
                flows.push(flow);
            }
        }
    }
    Ok(flows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;

    fn girls() -> StratifiedSurface {
        build_surface(SurfaceName::Girls)
    }

    fn roles_for(da: i8, db: i8) -> BTreeMap<u8, CornerRole> {
        let s = girls();
        corner_roles(&s, &OrientationAssignment::loops(da, db, 1)).unwrap()
    }

    /// The corner-role facts of the four orientation cases, which pin the
    /// stored traversal directions.
    #[test]
    fn case_one_roles() {
        let roles = roles_for(1, 1);
        assert_eq!(roles[&8], CornerRole::SourceCorner);
        assert_eq!(roles[&6], CornerRole::SinkCorner);
        assert_eq!(roles[&4], CornerRole::SourceCorner);
        assert_eq!(roles[&12], CornerRole::SourceCorner);
        assert_eq!(roles[&2], CornerRole::SinkCorner);
        assert_eq!(roles[&10], CornerRole::SinkCorner);
    }

    #[test]
    fn case_two_roles() {
        let roles = roles_for(-1, 1);
        assert_eq!(roles[&8], CornerRole::SourceCorner);
        assert_eq!(roles[&1], CornerRole::SinkCorner);
        assert_eq!(roles[&7], CornerRole::SourceCorner);
        assert_eq!(roles[&2], CornerRole::SinkCorner);
    }

    #[test]
    fn case_three_roles() {
        let roles = roles_for(1, -1);
        assert_eq!(roles[&11], CornerRole::SourceCorner);
        assert_eq!(roles[&6], CornerRole::SinkCorner);
        assert_eq!(roles[&12], CornerRole::SourceCorner);
        assert_eq!(roles[&7], CornerRole::SinkCorner);
    }

    #[test]
    fn case_four_roles() {
        let roles = roles_for(-1, -1);
        assert_eq!(roles[&11], CornerRole::SourceCorner);
        assert_eq!(roles[&1], CornerRole::SinkCorner);
        assert_eq!(roles[&10], CornerRole::SourceCorner);
        assert_eq!(roles[&4], CornerRole::SinkCorner);
    }

    #[test]
    fn three_flows_with_one_fixed_point() {
        let s = girls();
        let flows = enumerate_one_fixed_point(&s).unwrap();
        assert_eq!(flows.len(), 3);
        let cases: Vec<u8> = flows.iter().map(|f| f.case_number()).collect();
        assert_eq!(cases, vec![2, 3, 4]);
        for f in &flows {
            assert_eq!(f.region_classes[&Region::LD], SimpleRegionClass::Elliptic);
            assert_eq!(f.region_classes[&Region::RD], SimpleRegionClass::Elliptic);
            assert_eq!(f.region_classes[&Region::BR], SimpleRegionClass::Polar);
            assert_eq!(f.region_classes[&Region::CR], SimpleRegionClass::Polar);
        }
    }

    #[test]
    fn six_labeled_flows_before_dedup() {
        let s = girls();
        let flows = enumerate_all_labeled_one_fixed_point(&s).unwrap();
        assert_eq!(flows.len(), 6);
    }

    #[test]
    fn all_green_coloring_points_arcs_at_null() {
        use crate::structure::MarkColor::*;
        let s = girls();
        let col = Coloring::new(Green, Green, Green);
        let o = derive_orientations(&s, &col).unwrap();
        let roles = corner_roles(&s, &o).unwrap();
        // Every arc flows into the null point, so every corner is a sink.
        assert!(roles.values().all(|r| *r == CornerRole::SinkCorner));
    }

    #[test]
    fn incomplete_coloring_is_rejected() {
        use crate::structure::MarkColor::*;
        let s = girls();
        let col = Coloring::partial(&[(CellLoop::A, Red), (CellLoop::C, Green)]);
        assert!(matches!(
            derive_orientations(&s, &col),
            Err(DomainError::IncompleteColoring(_))
        ));
    }
}
