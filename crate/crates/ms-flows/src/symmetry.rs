//! Symmetry groups of the two surfaces, acting simultaneously on angles,
//! 1-cells (with orientation flips), lifted edges, 2-cells and marked
//! points.

use crate::surface::{CellLoop, Lift, Region, Side, StratifiedSurface};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    pub name: String,
    /// Image of each angle; slot 0 unused.
    pub angle_perm: [u8; 13],
    /// Image loop and whether the generator reverses its direction.
    pub cell_map: BTreeMap<CellLoop, (CellLoop, bool)>,
    /// Image of each lifted edge.
    pub lift_map: BTreeMap<Lift, Lift>,
    pub region_map: BTreeMap<Region, Region>,
    pub mark_map: BTreeMap<String, String>,
    /// Whether the generator reverses the boundary orientation of the
    /// 2-cells it fixes (true for the axial reflections).
    pub reverses_faces: bool,
}

impl Generator {
    pub fn apply_angle(&self, a: u8) -> u8 {
        self.angle_perm[a as usize]
    }

    pub fn apply_region(&self, r: Region) -> Region {
        self.region_map[&r]
    }

    pub fn apply_lift(&self, l: Lift) -> Lift {
        self.lift_map[&l]
    }

    pub fn apply_mark(&self, m: &str) -> String {
        self.mark_map[m].clone()
    }

    /// Pushforward of a choice of loop directions (`+1`/`-1` per loop).
    pub fn apply_orientations(&self, dirs: &BTreeMap<CellLoop, i8>) -> BTreeMap<CellLoop, i8> {
        let mut out = BTreeMap::new();
        for (&cell, &d) in dirs {
            let (img, reversed) = self.cell_map[&cell];
            out.insert(img, if reversed { -d } else { d });
        }
        out
    }

    /// Image of one traversal, looked up among the target surface's sides.
    pub fn side_image<'a>(&self, surface: &'a StratifiedSurface, side: &Side) -> Option<&'a Side> {
        let (from, to) = if self.reverses_faces {
            (self.apply_angle(side.to.0), self.apply_angle(side.from.0))
        } else {
            (self.apply_angle(side.from.0), self.apply_angle(side.to.0))
        };
        let region = self.apply_region(side.region);
        let lift = self.apply_lift(side.lift);
        surface
            .sides
            .iter()
            .find(|s| s.region == region && s.lift == lift && s.from.0 == from && s.to.0 == to)
    }

    /// Verifies that the generator maps the gluing data to itself.
    pub fn check_automorphism(&self, surface: &StratifiedSurface) -> Result<(), String> {
        // Angle permutation must be a bijection of 1..=12.
        let mut seen = [false; 13];
        for a in 1..=12u8 {
            let img = self.apply_angle(a);
            if !(1..=12).contains(&img) || seen[img as usize] {
                return Err(format!("generator {}: bad angle image of {a}", self.name));
            }
            seen[img as usize] = true;
        }
        for side in &surface.sides {
            let img = self.side_image(surface, side).ok_or_else(|| {
                format!(
                    "generator {}: side {}[{}] {}->{} has no image",
                    self.name, side.region, side.index, side.from, side.to
                )
            })?;
            if img.mark != self.apply_mark(&side.mark) {
                return Err(format!(
                    "generator {}: mark {} maps to {} but image side carries {}",
                    self.name,
                    side.mark,
                    self.apply_mark(&side.mark),
                    img.mark
                ));
            }
            // With stored traversal directions, the image sign must match
            // the composition of face reversal and loop reversal.
            if let (Some(sign), Some(img_sign)) = (side.sign, img.sign) {
                let (_, cell_reversed) = self.cell_map[&side.lift.cell];
                let face_factor = if self.reverses_faces { -1 } else { 1 };
                let cell_factor = if cell_reversed { -1 } else { 1 };
                if img_sign != sign * face_factor * cell_factor {
                    return Err(format!(
                        "generator {}: sign mismatch on side {}[{}]",
                        self.name, side.region, side.index
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryGroup {
    pub order: usize,
    pub generators: Vec<Generator>,
}

impl SymmetryGroup {
    /// The reflection generator (every surface here has exactly one).
    pub fn reflection(&self) -> &Generator {
        self.generators
            .iter()
            .find(|g| g.reverses_faces)
            .expect("group has a reflection")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .generators
            .iter()
            .map(|g| {
                serde_json::json!({
                    "name": g.name,
                    "angles": (1..=12u8).map(|a| g.apply_angle(a)).collect::<Vec<u8>>(),
                    "cells": g.cell_map.iter()
                        .map(|(c, (img, rev))| {
                            (c.to_string(), serde_json::json!({
                                "image": img.to_string(), "reversed": rev }))
                        })
                        .collect::<BTreeMap<String, serde_json::Value>>(),
                    "regions": g.region_map.iter()
                        .map(|(r, i)| (r.to_string(), i.to_string()))
                        .collect::<BTreeMap<String, String>>(),
                    "marks": g.mark_map.clone(),
                    "reversesFaces": g.reverses_faces,
                })
            })
            .collect::<Vec<_>>())
    }
}

fn perm(pairs: &[(u8, u8)], cycles3: &[(u8, u8, u8)]) -> [u8; 13] {
    let mut p = [0u8; 13];
    for a in 1..=12u8 {
        p[a as usize] = a;
    }
    for &(a, b) in pairs {
        p[a as usize] = b;
        p[b as usize] = a;
    }
    for &(a, b, c) in cycles3 {
        p[a as usize] = b;
        p[b as usize] = c;
        p[c as usize] = a;
    }
    p
}

fn lift_swap_ab() -> BTreeMap<Lift, Lift> {
    let mut m = BTreeMap::new();
    m.insert(Lift::new(CellLoop::A, false), Lift::new(CellLoop::B, false));
    m.insert(Lift::new(CellLoop::B, false), Lift::new(CellLoop::A, false));
    m.insert(Lift::new(CellLoop::A, true), Lift::new(CellLoop::B, true));
    m.insert(Lift::new(CellLoop::B, true), Lift::new(CellLoop::A, true));
    m.insert(Lift::new(CellLoop::C, false), Lift::new(CellLoop::C, false));
    m.insert(Lift::new(CellLoop::C, true), Lift::new(CellLoop::C, true));
    m
}

fn marks(pairs: &[(&str, &str)], fixed: &[&str]) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for &(a, b) in pairs {
        m.insert(a.to_string(), b.to_string());
        m.insert(b.to_string(), a.to_string());
    }
    for &f in fixed {
        m.insert(f.to_string(), f.to_string());
    }
    m
}

/// The Girl's surface symmetry: the vertical-axis reflection. It swaps
/// the two disks and the loops A and B (reversing them), reverses C, and
/// exchanges the marked points a/b, c/d, e/f.
pub fn girls_group() -> SymmetryGroup {
    let mut cell_map = BTreeMap::new();
    cell_map.insert(CellLoop::A, (CellLoop::B, true));
    cell_map.insert(CellLoop::B, (CellLoop::A, true));
    cell_map.insert(CellLoop::C, (CellLoop::C, true));
    let mut region_map = BTreeMap::new();
    region_map.insert(Region::LD, Region::RD);
    region_map.insert(Region::RD, Region::LD);
    region_map.insert(Region::BR, Region::BR);
    region_map.insert(Region::CR, Region::CR);
    SymmetryGroup {
        order: 2,
        generators: vec![Generator {
            name: "reflection".to_string(),
            angle_perm: perm(&[(1, 11), (2, 12), (3, 9), (4, 10), (6, 8)], &[]),
            cell_map,
            lift_map: lift_swap_ab(),
            region_map,
            mark_map: marks(&[("a", "b"), ("c", "d"), ("e", "f")], &["g"]),
            reverses_faces: true,
        }],
    }
}

/// The Boy's surface symmetry: the order-3 rotation cycling the loops
/// plus the axial reflection; together they generate a group of order 6.
pub fn boys_group() -> SymmetryGroup {
    let rotation = {
        let mut cell_map = BTreeMap::new();
        cell_map.insert(CellLoop::A, (CellLoop::B, false));
        cell_map.insert(CellLoop::B, (CellLoop::C, false));
        cell_map.insert(CellLoop::C, (CellLoop::A, false));
        let mut lift_map = BTreeMap::new();
        for primed in [false, true] {
            lift_map.insert(
                Lift::new(CellLoop::A, primed),
                Lift::new(CellLoop::B, primed),
            );
            lift_map.insert(
                Lift::new(CellLoop::B, primed),
                Lift::new(CellLoop::C, primed),
            );
            lift_map.insert(
                Lift::new(CellLoop::C, primed),
                Lift::new(CellLoop::A, primed),
            );
        }
        let mut region_map = BTreeMap::new();
        region_map.insert(Region::LD, Region::RD);
        region_map.insert(Region::RD, Region::BR);
        region_map.insert(Region::BR, Region::LD);
        region_map.insert(Region::CR, Region::CR);
        let mut mark_map = BTreeMap::new();
        for (a, b) in [
            ("a1", "b2"),
            ("b2", "c1"),
            ("c1", "a1"),
            ("a2", "b1"),
            ("b1", "c2"),
            ("c2", "a2"),
            ("a3", "b3"),
            ("b3", "c3"),
            ("c3", "a3"),
        ] {
            mark_map.insert(a.to_string(), b.to_string());
        }
        Generator {
            name: "rotation".to_string(),
            angle_perm: perm(&[], &[(1, 7, 11), (2, 6, 10), (4, 8, 12), (9, 3, 5)]),
            cell_map,
            lift_map,
            region_map,
            mark_map,
            reverses_faces: false,
        }
    };
    let reflection = {
        let mut cell_map = BTreeMap::new();
        cell_map.insert(CellLoop::A, (CellLoop::B, true));
        cell_map.insert(CellLoop::B, (CellLoop::A, true));
        cell_map.insert(CellLoop::C, (CellLoop::C, true));
        let mut region_map = BTreeMap::new();
        region_map.insert(Region::LD, Region::RD);
        region_map.insert(Region::RD, Region::LD);
        region_map.insert(Region::BR, Region::BR);
        region_map.insert(Region::CR, Region::CR);
        Generator {
            name: "reflection".to_string(),
            angle_perm: perm(&[(1, 11), (2, 12), (3, 9), (4, 10), (6, 8)], &[]),
            cell_map,
            lift_map: lift_swap_ab(),
            region_map,
            mark_map: marks(
                &[("a1", "b1"), ("a2", "b2"), ("a3", "b3"), ("c1", "c2")],
                &["c3"],
            ),
            reverses_faces: true,
        }
    };
    SymmetryGroup {
        order: 6,
        generators: vec![rotation, reflection],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, SurfaceName};

    #[test]
    fn girls_reflection_is_involution() {
        let g = girls_group();
        let r = &g.generators[0];
        for a in 1..=12u8 {
            assert_eq!(r.apply_angle(r.apply_angle(a)), a);
        }
        for m in ["a", "b", "c", "d", "e", "f", "g"] {
            assert_eq!(r.apply_mark(&r.apply_mark(m)), m);
        }
    }

    #[test]
    fn boys_rotation_has_order_three() {
        let g = boys_group();
        let rho = &g.generators[0];
        for a in 1..=12u8 {
            let b = rho.apply_angle(rho.apply_angle(rho.apply_angle(a)));
            assert_eq!(b, a);
            assert_ne!(rho.apply_angle(a), a);
        }
    }

    #[test]
    fn generators_are_automorphisms() {
        for name in [SurfaceName::Girls, SurfaceName::Boys] {
            let s = build_surface(name);
            for gen in &s.symmetry.generators {
                gen.check_automorphism(&s).unwrap();
            }
        }
    }
}
