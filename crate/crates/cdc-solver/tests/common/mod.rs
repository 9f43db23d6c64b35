//! Instance generators shared by the integration suites.

use cdc_solver::grid::{tile_rect, Frame, IntRect, PixelRegion};
use cdc_solver::matrix::{CdcBasicNetwork, DirectionMatrix, Model};
use rand::prelude::*;
use rand::rngs::StdRng;

/// Random 4-connected region grown from a seed pixel.
pub fn random_connected_blob(rng: &mut StdRng, frame: Frame, target: usize) -> PixelRegion {
    let mut region = PixelRegion::empty(frame);
    let seed = (rng.gen_range(0..frame.n_x), rng.gen_range(0..frame.n_y));
    region.set(seed.0, seed.1, true);
    let mut cells = vec![seed];
    for _ in 1..target {
        let &(k, l) = cells.choose(rng).unwrap();
        let &(dk, dl) = [(-1, 0), (1, 0), (0, -1), (0, 1)].choose(rng).unwrap();
        let (nk, nl) = (k + dk, l + dl);
        if nk >= 0 && nk < frame.n_x && nl >= 0 && nl < frame.n_y && !region.get(nk, nl) {
            region.set(nk, nl, true);
            cells.push((nk, nl));
        }
    }
    region
}

/// Random nonempty region, possibly disconnected.
pub fn random_any_region(rng: &mut StdRng, frame: Frame) -> PixelRegion {
    loop {
        let mut region = PixelRegion::empty(frame);
        for k in 0..frame.n_x {
            for l in 0..frame.n_y {
                if rng.gen_bool(0.3) {
                    region.set(k, l, true);
                }
            }
        }
        if !region.is_empty() {
            return region;
        }
    }
}

fn random_subrect(rng: &mut StdRng, frame: Frame, min_side: i32) -> IntRect {
    let x_lo = rng.gen_range(0..=frame.n_x - min_side);
    let x_hi = rng.gen_range(x_lo + min_side..=frame.n_x);
    let y_lo = rng.gen_range(0..=frame.n_y - min_side);
    let y_hi = rng.gen_range(y_lo + min_side..=frame.n_y);
    IntRect::new(x_lo, x_hi, y_lo, y_hi)
}

/// Scene of connected regions witnessing a consistent network. Half the
/// time the first region is a one-pixel-thick rectangular ring with another
/// region placed inside its cavity, which drives holes (and occasionally
/// contact points) into the maximal canonical solution.
pub fn random_cdc_scene(rng: &mut StdRng, n: usize, frame: Frame) -> Vec<PixelRegion> {
    assert!(n >= 1 && frame.n_x >= 4 && frame.n_y >= 4);
    let mut regions = Vec::with_capacity(n);
    if n >= 2 && rng.gen_bool(0.5) {
        let outer = random_subrect(rng, frame, 3);
        let mut ring = PixelRegion::from_rect(outer, frame);
        let cavity = IntRect::new(outer.x_lo + 1, outer.x_hi - 1, outer.y_lo + 1, outer.y_hi - 1);
        ring.subtract(&PixelRegion::from_rect(cavity, frame));
        regions.push(ring);
        let mut inner = PixelRegion::empty(frame);
        let k = rng.gen_range(cavity.x_lo..cavity.x_hi);
        let l = rng.gen_range(cavity.y_lo..cavity.y_hi);
        inner.set(k, l, true);
        regions.push(inner);
    }
    while regions.len() < n {
        if rng.gen_bool(0.4) {
            regions.push(PixelRegion::from_rect(random_subrect(rng, frame, 1), frame));
        } else {
            let target = rng.gen_range(1..=(frame.n_x * frame.n_y / 3).max(2)) as usize;
            regions.push(random_connected_blob(rng, frame, target));
        }
    }
    regions
}

/// Scene of arbitrary nonempty regions.
pub fn random_cdcd_scene(rng: &mut StdRng, n: usize, frame: Frame) -> Vec<PixelRegion> {
    (0..n).map(|_| random_any_region(rng, frame)).collect()
}

/// Replaces one randomly chosen constraint with a different random valid
/// matrix; the result is frequently (not always) inconsistent.
pub fn perturb_network(rng: &mut StdRng, net: &CdcBasicNetwork, model: Model) -> CdcBasicNetwork {
    let n = net.var_count();
    let basics = model.basic_relations();
    let mut out = net.clone();
    let (i, j) = loop {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            break (i, j);
        }
    };
    let replacement = loop {
        let m = *basics.choose(rng).unwrap();
        if m != net.relation(i, j) {
            break m;
        }
    };
    out.set(i, j, replacement);
    out
}

/// Network of full-rectangle regions, computed from rectangle geometry
/// alone (no pixel scans), for large consistent instances.
pub fn network_of_rects(rects: &[IntRect], frame: Frame) -> CdcBasicNetwork {
    let n = rects.len();
    let mut net = CdcBasicNetwork::new(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut m = DirectionMatrix::ZERO;
            for phi in 1..=9 {
                let tile = tile_rect(rects[j], phi, frame);
                let occupied = rects[i]
                    .intersect(&tile)
                    .map(|r| !r.is_pixel_empty())
                    .unwrap_or(false);
                m = m.with_tile(phi, occupied);
            }
            net.set(i, j, m);
        }
    }
    net
}

/// Random rectangles in a `2n x 2n` frame plus their induced network.
pub fn random_rect_instance(rng: &mut StdRng, n: usize) -> (CdcBasicNetwork, Frame) {
    let side = 2 * n as i32;
    let frame = Frame::new(side, side);
    let rects: Vec<IntRect> = (0..n).map(|_| random_subrect(rng, frame, 1)).collect();
    (network_of_rects(&rects, frame), frame)
}
