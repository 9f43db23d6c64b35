//! The consistency-checking pipeline for basic networks, maximal canonical
//! solution construction, the simple-region transform, and backtracking
//! search for disjunctive networks.
//!
//! Pipeline for a basic network:
//! 1. build the two projective interval networks,
//! 2. take their canonical interval solutions, fixing the frame and one
//!    bounding rectangle per variable,
//! 3. remove every pixel lying in a zero tile of some reference rectangle
//!    (sparse difference columns + accumulation keep this quadratic per
//!    variable),
//! 4. keep the component matching the bounding rectangle (connected models)
//!    or the whole remainder (disconnected model),
//! 5. re-check the one-entries, scanning only boundary pixels of each tile
//!    intersection (connected) or constant-time prefix-sum queries
//!    (disconnected).
//!
//! A candidate surviving step 5 is the maximal canonical solution: every
//! canonical solution is contained in it pixel-wise.

use std::fmt;

use crate::grid::{rect_has_pixel, tile_rect, ContactKind, Frame, IntGrid, IntRect, PixelRegion};
use crate::matrix::{
    dir_of_digital, projective_networks, Axis, CdcBasicNetwork, CdcDisjunctiveNetwork, Model,
};
use crate::{ia::meet_free_refine, matrix::projective_pair_relation};

/// Failure exits of the pipeline, in stage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    ProjectiveX,
    ProjectiveY,
    ComponentMissing(usize),
    VerificationFailed(usize, usize, u8),
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::ProjectiveX => write!(f, "projective-x"),
            Stage::ProjectiveY => write!(f, "projective-y"),
            Stage::ComponentMissing(i) => write!(f, "component-missing(v{})", i + 1),
            Stage::VerificationFailed(i, j, phi) => {
                write!(f, "verification-failed(v{}, v{}, tile {})", i + 1, j + 1, phi)
            }
        }
    }
}

/// Why a network is inconsistent: the failing stage plus a human-readable
/// witness description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub stage: Stage,
    pub detail: String,
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inconsistent at {}: {}", self.stage, self.detail)
    }
}

/// A realization of a consistent basic network in the canonical frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub frame: Frame,
    pub mbrs: Vec<IntRect>,
    pub regions: Vec<PixelRegion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Consistent(Solution),
    Inconsistent(Inconsistency),
}

impl SolveOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, SolveOutcome::Consistent(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Consistent(s) => Some(s),
            SolveOutcome::Inconsistent(_) => None,
        }
    }
}

/// Decides consistency of a basic network and returns the maximal canonical
/// solution on success.
pub fn solve_basic(net: &CdcBasicNetwork, model: Model) -> SolveOutcome {
    let candidate = match candidate_solution(net, model) {
        Ok(c) => c,
        Err(inc) => return SolveOutcome::Inconsistent(inc),
    };
    match check_one_entries(&candidate, net, model) {
        Ok(()) => SolveOutcome::Consistent(candidate),
        Err(inc) => SolveOutcome::Inconsistent(inc),
    }
}

/// Steps 1 through 4: the candidate regions prior to the final relation
/// check. Exposed so the optimized final check can be validated against the
/// full recomputation.
pub fn candidate_solution(net: &CdcBasicNetwork, model: Model) -> Result<Solution, Inconsistency> {
    debug_assert!(net.is_valid(match model {
        Model::CdcS => Model::Cdc,
        m => m,
    }));
    let n = net.var_count();

    // Step 1: projective interval networks.
    let (nx, ny) = projective_networks(net).map_err(|e| {
        let (stage, axis) = match e.axis {
            Axis::X => (Stage::ProjectiveX, "x"),
            Axis::Y => (Stage::ProjectiveY, "y"),
        };
        Inconsistency {
            stage,
            detail: format!(
                "constraints between v{} and v{} admit no {axis}-interval arrangement",
                e.i + 1,
                e.j + 1
            ),
        }
    })?;

    // Step 2: canonical interval solutions fix the frame and the mbrs.
    let xs = nx.solve().ok_or_else(|| Inconsistency {
        stage: Stage::ProjectiveX,
        detail: "x-projective interval network has no solution".into(),
    })?;
    let ys = ny.solve().ok_or_else(|| Inconsistency {
        stage: Stage::ProjectiveY,
        detail: "y-projective interval network has no solution".into(),
    })?;
    let frame = Frame::new(
        xs.iter().map(|iv| iv.hi).max().unwrap(),
        ys.iter().map(|iv| iv.hi).max().unwrap(),
    );
    let mbrs: Vec<IntRect> = xs
        .iter()
        .zip(&ys)
        .map(|(ix, iy)| IntRect::new(ix.lo, ix.hi, iy.lo, iy.hi))
        .collect();

    // Steps 3 and 4: drop disallowed pixels, then pick the admissible part.
    let mut regions = Vec::with_capacity(n);
    for i in 0..n {
        let disallowed = disallowed_pixels(i, net, &mbrs, frame);
        let mut remainder = PixelRegion::from_rect(mbrs[i], frame);
        remainder.subtract(&disallowed);
        let chosen = match model {
            Model::Cdc | Model::CdcS => remainder
                .connected_components()
                .into_iter()
                .find(|c| c.mbr() == Some(mbrs[i]))
                .ok_or_else(|| Inconsistency {
                    stage: Stage::ComponentMissing(i),
                    detail: format!(
                        "no connected component of the allowed pixels of v{} spans {}",
                        i + 1,
                        mbrs[i]
                    ),
                })?,
            Model::CdcD => {
                if remainder.mbr() == Some(mbrs[i]) {
                    remainder
                } else {
                    return Err(Inconsistency {
                        stage: Stage::ComponentMissing(i),
                        detail: format!(
                            "allowed pixels of v{} do not span {}",
                            i + 1,
                            mbrs[i]
                        ),
                    });
                }
            }
        };
        regions.push(chosen);
    }
    Ok(Solution { frame, mbrs, regions })
}

/// Number of zero-tile rectangles covering each pixel, for variable `i`:
/// the accumulation of the summed sparse difference columns of every tile
/// `m_j^phi` with a zero entry.
pub fn disallowed_counts(
    i: usize,
    net: &CdcBasicNetwork,
    mbrs: &[IntRect],
    frame: Frame,
) -> IntGrid {
    let mut diff_sum = IntGrid::zeros(frame);
    for j in 0..net.var_count() {
        if j == i {
            continue;
        }
        let delta = net.relation(i, j);
        for phi in 1..=9 {
            if delta.tile(phi) {
                continue;
            }
            let tile = tile_rect(mbrs[j], phi, frame);
            if tile.is_pixel_empty() {
                continue;
            }
            // The difference grid of a rectangle is a +1 column at its west
            // edge and a -1 column one past its east edge.
            for l in tile.y_lo..tile.y_hi {
                *diff_sum.at_mut(tile.x_lo, l) += 1;
                if tile.x_hi < frame.n_x {
                    *diff_sum.at_mut(tile.x_hi, l) -= 1;
                }
            }
        }
    }
    diff_sum.accumulate()
}

/// Pixels of `mbrs[i]` forbidden for variable `i` by some zero entry.
pub fn disallowed_pixels(
    i: usize,
    net: &CdcBasicNetwork,
    mbrs: &[IntRect],
    frame: Frame,
) -> PixelRegion {
    let counts = disallowed_counts(i, net, mbrs, frame);
    let mut out = PixelRegion::empty(frame);
    for k in mbrs[i].x_lo..mbrs[i].x_hi {
        for l in mbrs[i].y_lo..mbrs[i].y_hi {
            if counts.get(k, l) > 0 {
                out.set(k, l, true);
            }
        }
    }
    out
}

/// Step 5: every one-entry must be witnessed by a pixel of region `i` inside
/// the corresponding tile of `mbrs[j]`.
fn check_one_entries(
    sol: &Solution,
    net: &CdcBasicNetwork,
    model: Model,
) -> Result<(), Inconsistency> {
    let n = net.var_count();
    let prefixes: Option<Vec<IntGrid>> = match model {
        Model::CdcD => Some(sol.regions.iter().map(|r| r.prefix_counts()).collect()),
        _ => None,
    };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let delta = net.relation(i, j);
            for phi in 1..=9 {
                if !delta.tile(phi) {
                    continue;
                }
                let tile = tile_rect(sol.mbrs[j], phi, sol.frame);
                let target = sol.mbrs[i].intersect(&tile).filter(|r| !r.is_pixel_empty());
                let hit = match target {
                    None => false,
                    Some(r) => match &prefixes {
                        Some(p) => rect_has_pixel(&p[i], r),
                        None => boundary_pixel_hit(&sol.regions[i], r),
                    },
                };
                if !hit {
                    return Err(Inconsistency {
                        stage: Stage::VerificationFailed(i, j, phi),
                        detail: format!(
                            "v{} has no pixel in tile {} of v{}",
                            i + 1,
                            phi,
                            j + 1
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Scans only the boundary ring of `r`: a connected region with full-frame
/// reach inside its mbr meets `r` iff it occupies a boundary pixel of `r`.
fn boundary_pixel_hit(region: &PixelRegion, r: IntRect) -> bool {
    for l in r.y_lo..r.y_hi {
        if region.get(r.x_lo, l) || region.get(r.x_hi - 1, l) {
            return true;
        }
    }
    for k in r.x_lo..r.x_hi {
        if region.get(k, r.y_lo) || region.get(k, r.y_hi - 1) {
            return true;
        }
    }
    false
}

/// Full recomputation oracle: do the regions realize exactly the network's
/// matrices?
pub fn verify_solution(regions: &[PixelRegion], net: &CdcBasicNetwork) -> bool {
    let n = net.var_count();
    assert_eq!(regions.len(), n);
    let mbrs: Vec<IntRect> = match regions.iter().map(|r| r.mbr()).collect() {
        Some(m) => m,
        None => return false,
    };
    for i in 0..n {
        for j in 0..n {
            if i != j && dir_of_digital(&regions[i], mbrs[j]) != net.relation(i, j) {
                return false;
            }
        }
    }
    true
}

/// Simple-region transform of a maximal canonical solution: on a 5x-refined
/// frame, removes every contact point by deleting the corner sub-pixel of
/// the designated diagonal neighbor, then opens each remaining hole with a
/// one-sub-pixel-wide slot cut upward through the pixel column above the
/// hole's top-left pixel. Direction matrices are unchanged because every
/// original pixel keeps interior sub-pixels and no bounding rectangle moves.
///
/// Panics when the input is not a maximal canonical solution of a connected
/// model (detectably: a disconnected region, or a contact point whose empty
/// neighbors are not exactly one hole pixel and one exterior pixel).
pub fn simplify_solution(sol: &Solution) -> Vec<PixelRegion> {
    const F: i32 = 5;
    let mut out = Vec::with_capacity(sol.regions.len());
    for (idx, region) in sol.regions.iter().enumerate() {
        assert!(
            region.is_connected() && !region.is_empty(),
            "region {} is not a connected nonempty region",
            idx + 1
        );
        let mut refined = region.upscale(F);
        for contact in region.contact_points() {
            let (k, l) = contact.point;
            // Corner sub-pixel incident to the contact point, inside the
            // region pixel that follows the hole pixel clockwise.
            let (sk, sl) = match contact.kind {
                ContactKind::HoleNw => (F * k, F * l),
                ContactKind::HoleNe => (F * k, F * l - 1),
                ContactKind::HoleSe => (F * k - 1, F * l - 1),
                ContactKind::HoleSw => (F * k - 1, F * l),
                ContactKind::Separating => panic!(
                    "region {} has a separating contact point at ({k},{l}); \
                     input is not a maximal canonical solution",
                    idx + 1
                ),
            };
            refined.set(sk, sl, false);
        }

        // Open the remaining holes one at a time, re-detecting after each
        // cut so that holes merged by a slot are handled once.
        let max_cuts = refined.frame().rect().x_hi as usize * refined.frame().rect().y_hi as usize;
        for _ in 0..max_cuts {
            let holes = refined.holes();
            let target = holes
                .iter()
                .map(|h| {
                    let pixels = h.pixels();
                    let top = pixels.iter().map(|&(_, l)| l).max().unwrap();
                    let left = pixels
                        .iter()
                        .filter(|&&(_, l)| l == top)
                        .map(|&(k, _)| k)
                        .min()
                        .unwrap();
                    (left, top)
                })
                .min();
            let (pk, pl) = match target {
                Some(p) => p,
                None => break,
            };
            // Slot through the middle sub-column of the original pixel
            // column holding the hole's top-left pixel.
            debug_assert!(pk % F == 0 && (pl + 1) % F == 0, "hole not pixel-aligned");
            let cut_k = (pk / F) * F + F / 2;
            let mut l = pl + 1;
            while refined.get(cut_k, l) {
                refined.set(cut_k, l, false);
                l += 1;
            }
        }

        debug_assert!(refined.holes().is_empty());
        debug_assert_eq!(refined.mbr(), Some(sol.mbrs[idx].scaled(F)));
        out.push(refined);
    }
    out
}

/// Chronological backtracking over the candidate matrices of every ordered
/// pair in lexicographic order, pruning a partial assignment as soon as an
/// assigned pair projects to an empty interval relation on either axis. A
/// complete assignment is accepted when the basic solver finds it
/// consistent.
pub fn solve_disjunctive(
    net: &CdcDisjunctiveNetwork,
    model: Model,
) -> Option<(CdcBasicNetwork, Solution)> {
    let n = net.var_count();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let reverse_index: Vec<Option<usize>> = pairs
        .iter()
        .map(|&(i, j)| pairs.iter().position(|&p| p == (j, i)))
        .collect();

    let mut assignment = CdcBasicNetwork::new(n);
    search(net, model, &pairs, &reverse_index, 0, &mut assignment)
}

fn search(
    net: &CdcDisjunctiveNetwork,
    model: Model,
    pairs: &[(usize, usize)],
    reverse_index: &[Option<usize>],
    depth: usize,
    assignment: &mut CdcBasicNetwork,
) -> Option<(CdcBasicNetwork, Solution)> {
    if depth == pairs.len() {
        return match solve_basic(assignment, model) {
            SolveOutcome::Consistent(sol) => Some((assignment.clone(), sol)),
            SolveOutcome::Inconsistent(_) => None,
        };
    }
    let (i, j) = pairs[depth];
    let reverse_assigned = reverse_index[depth].filter(|&r| r < depth).is_some();
    for &candidate in net.candidates(i, j) {
        assignment.set(i, j, candidate);
        if reverse_assigned {
            let reverse = assignment.relation(j, i);
            let empty_axis = [Axis::X, Axis::Y].into_iter().any(|axis| {
                meet_free_refine(projective_pair_relation(candidate, reverse, axis)).is_empty()
            });
            if empty_axis {
                continue;
            }
        }
        if let Some(found) = search(net, model, pairs, reverse_index, depth + 1, assignment) {
            return Some(found);
        }
    }
    None
}
