//! Digital-plane machinery: pixel regions, integer grids, tile rectangles,
//! difference/cumulative matrices, prefix-sum counting, connected components,
//! holes, and contact points.
//!
//! A pixel `(k, l)` is the unit square `[k, k+1] x [l, l+1]`. Grids are
//! addressed `[k][l]` with `k` along x and `l` along y, origin at the lower
//! left. Rendering flips vertically for display only.

use std::fmt;

/// Axis-aligned rectangle with integer corners `[x_lo, x_hi] x [y_lo, y_hi]`.
///
/// Contains pixels iff both sides have positive length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntRect {
    pub x_lo: i32,
    pub x_hi: i32,
    pub y_lo: i32,
    pub y_hi: i32,
}

impl IntRect {
    pub fn new(x_lo: i32, x_hi: i32, y_lo: i32, y_hi: i32) -> Self {
        assert!(x_lo <= x_hi && y_lo <= y_hi, "degenerate rectangle");
        IntRect { x_lo, x_hi, y_lo, y_hi }
    }

    /// True when the rectangle contains no whole pixel.
    pub fn is_pixel_empty(&self) -> bool {
        self.x_lo == self.x_hi || self.y_lo == self.y_hi
    }

    pub fn intersect(&self, other: &IntRect) -> Option<IntRect> {
        let x_lo = self.x_lo.max(other.x_lo);
        let x_hi = self.x_hi.min(other.x_hi);
        let y_lo = self.y_lo.max(other.y_lo);
        let y_hi = self.y_hi.min(other.y_hi);
        if x_lo <= x_hi && y_lo <= y_hi {
            Some(IntRect { x_lo, x_hi, y_lo, y_hi })
        } else {
            None
        }
    }

    /// Pixel membership: pixel `(k, l)` lies inside the rectangle.
    pub fn contains_pixel(&self, k: i32, l: i32) -> bool {
        self.x_lo <= k && k < self.x_hi && self.y_lo <= l && l < self.y_hi
    }

    pub fn scaled(&self, factor: i32) -> IntRect {
        IntRect {
            x_lo: self.x_lo * factor,
            x_hi: self.x_hi * factor,
            y_lo: self.y_lo * factor,
            y_hi: self.y_hi * factor,
        }
    }
}

impl fmt::Display for IntRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x_lo, self.x_hi, self.y_lo, self.y_hi)
    }
}

/// Region of discourse `T = [0, n_x] x [0, n_y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frame {
    pub n_x: i32,
    pub n_y: i32,
}

impl Frame {
    pub fn new(n_x: i32, n_y: i32) -> Self {
        assert!(n_x > 0 && n_y > 0, "frame sides must be positive");
        Frame { n_x, n_y }
    }

    pub fn rect(&self) -> IntRect {
        IntRect::new(0, self.n_x, 0, self.n_y)
    }

    pub fn contains(&self, r: &IntRect) -> bool {
        r.x_lo >= 0 && r.y_lo >= 0 && r.x_hi <= self.n_x && r.y_hi <= self.n_y
    }

    fn len(&self) -> usize {
        (self.n_x as usize) * (self.n_y as usize)
    }

    fn index(&self, k: i32, l: i32) -> usize {
        debug_assert!(k >= 0 && k < self.n_x && l >= 0 && l < self.n_y);
        (k as usize) * (self.n_y as usize) + l as usize
    }
}

/// Boolean occupancy grid over a frame; the digital region it encodes is the
/// union of the occupied pixels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PixelRegion {
    frame: Frame,
    occ: Vec<bool>,
}

/// Integer grid over a frame, same addressing as `PixelRegion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGrid {
    frame: Frame,
    vals: Vec<i32>,
}

impl PixelRegion {
    pub fn empty(frame: Frame) -> Self {
        PixelRegion { frame, occ: vec![false; frame.len()] }
    }

    /// Region of all whole pixels inside `r` (clipped to the frame).
    pub fn from_rect(r: IntRect, frame: Frame) -> Self {
        let mut region = Self::empty(frame);
        if let Some(c) = r.intersect(&frame.rect()) {
            for k in c.x_lo..c.x_hi {
                for l in c.y_lo..c.y_hi {
                    region.set(k, l, true);
                }
            }
        }
        region
    }

    pub fn from_pixels(frame: Frame, pixels: &[(i32, i32)]) -> Self {
        let mut region = Self::empty(frame);
        for &(k, l) in pixels {
            region.set(k, l, true);
        }
        region
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Occupancy of pixel `(k, l)`; coordinates outside the frame read as empty.
    pub fn get(&self, k: i32, l: i32) -> bool {
        if k < 0 || k >= self.frame.n_x || l < 0 || l >= self.frame.n_y {
            return false;
        }
        self.occ[self.frame.index(k, l)]
    }

    pub fn set(&mut self, k: i32, l: i32, v: bool) {
        let idx = self.frame.index(k, l);
        self.occ[idx] = v;
    }

    pub fn is_empty(&self) -> bool {
        !self.occ.iter().any(|&b| b)
    }

    pub fn pixel_count(&self) -> usize {
        self.occ.iter().filter(|&&b| b).count()
    }

    /// Occupied pixels in `(k, l)`-lexicographic order.
    pub fn pixels(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::new();
        for k in 0..self.frame.n_x {
            for l in 0..self.frame.n_y {
                if self.occ[self.frame.index(k, l)] {
                    out.push((k, l));
                }
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &PixelRegion) -> bool {
        assert_eq!(self.frame, other.frame);
        self.occ.iter().zip(&other.occ).all(|(&a, &b)| !a || b)
    }

    pub fn subtract(&mut self, other: &PixelRegion) {
        assert_eq!(self.frame, other.frame);
        for (a, &b) in self.occ.iter_mut().zip(&other.occ) {
            if b {
                *a = false;
            }
        }
    }

    /// Tightest rectangle containing every occupied pixel; `None` when empty.
    pub fn mbr(&self) -> Option<IntRect> {
        let mut bounds: Option<(i32, i32, i32, i32)> = None;
        for k in 0..self.frame.n_x {
            for l in 0..self.frame.n_y {
                if self.occ[self.frame.index(k, l)] {
                    let b = bounds.get_or_insert((k, k + 1, l, l + 1));
                    b.0 = b.0.min(k);
                    b.1 = b.1.max(k + 1);
                    b.2 = b.2.min(l);
                    b.3 = b.3.max(l + 1);
                }
            }
        }
        bounds.map(|(x_lo, x_hi, y_lo, y_hi)| IntRect::new(x_lo, x_hi, y_lo, y_hi))
    }

    /// Maximal 4-connected groups of occupied pixels, ordered by their
    /// smallest `(k, l)`-lexicographic seed pixel.
    pub fn connected_components(&self) -> Vec<PixelRegion> {
        let mut seen = vec![false; self.frame.len()];
        let mut components = Vec::new();
        for k in 0..self.frame.n_x {
            for l in 0..self.frame.n_y {
                let idx = self.frame.index(k, l);
                if !self.occ[idx] || seen[idx] {
                    continue;
                }
                let mut comp = PixelRegion::empty(self.frame);
                let mut queue = std::collections::VecDeque::new();
                seen[idx] = true;
                queue.push_back((k, l));
                while let Some((ck, cl)) = queue.pop_front() {
                    comp.set(ck, cl, true);
                    for (nk, nl) in [(ck - 1, cl), (ck + 1, cl), (ck, cl - 1), (ck, cl + 1)] {
                        if self.get(nk, nl) {
                            let nidx = self.frame.index(nk, nl);
                            if !seen[nidx] {
                                seen[nidx] = true;
                                queue.push_back((nk, nl));
                            }
                        }
                    }
                }
                components.push(comp);
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Holes: 4-connected components of unoccupied pixels that cannot reach
    /// the frame boundary through unoccupied pixels. Ordered by seed pixel.
    pub fn holes(&self) -> Vec<PixelRegion> {
        // Flood the complement from every boundary pixel of the frame.
        let mut exterior = vec![false; self.frame.len()];
        let mut queue = std::collections::VecDeque::new();
        let push = |k: i32, l: i32, ext: &mut Vec<bool>, q: &mut std::collections::VecDeque<(i32, i32)>| {
            if k < 0 || k >= self.frame.n_x || l < 0 || l >= self.frame.n_y {
                return;
            }
            let idx = self.frame.index(k, l);
            if !self.occ[idx] && !ext[idx] {
                ext[idx] = true;
                q.push_back((k, l));
            }
        };
        for k in 0..self.frame.n_x {
            push(k, 0, &mut exterior, &mut queue);
            push(k, self.frame.n_y - 1, &mut exterior, &mut queue);
        }
        for l in 0..self.frame.n_y {
            push(0, l, &mut exterior, &mut queue);
            push(self.frame.n_x - 1, l, &mut exterior, &mut queue);
        }
        while let Some((ck, cl)) = queue.pop_front() {
            for (nk, nl) in [(ck - 1, cl), (ck + 1, cl), (ck, cl - 1), (ck, cl + 1)] {
                push(nk, nl, &mut exterior, &mut queue);
            }
        }
        let mut enclosed = PixelRegion::empty(self.frame);
        for k in 0..self.frame.n_x {
            for l in 0..self.frame.n_y {
                let idx = self.frame.index(k, l);
                if !self.occ[idx] && !exterior[idx] {
                    enclosed.set(k, l, true);
                }
            }
        }
        enclosed.connected_components()
    }

    /// Grid points where exactly one diagonal pair of the four incident
    /// pixels belongs to the region, classified by which empty neighbor lies
    /// in a hole.
    pub fn contact_points(&self) -> Vec<ContactPoint> {
        let holes = self.holes();
        let in_hole = |k: i32, l: i32| holes.iter().any(|h| h.get(k, l));
        let mut out = Vec::new();
        for k in 1..self.frame.n_x {
            for l in 1..self.frame.n_y {
                let ne = self.get(k, l);
                let sw = self.get(k - 1, l - 1);
                let nw = self.get(k - 1, l);
                let se = self.get(k, l - 1);
                // Either both diagonal pixels of one pair and neither of the
                // other, in both orientations.
                let case_main = ne && sw && !nw && !se;
                let case_anti = !ne && !sw && nw && se;
                if !case_main && !case_anti {
                    continue;
                }
                let (empty_a, empty_b) = if case_main {
                    ((k - 1, l), (k, l - 1)) // nw, se
                } else {
                    ((k, l), (k - 1, l - 1)) // ne, sw
                };
                let a_hole = in_hole(empty_a.0, empty_a.1);
                let b_hole = in_hole(empty_b.0, empty_b.1);
                let kind = match (case_main, a_hole, b_hole) {
                    (true, true, false) => ContactKind::HoleNw,
                    (true, false, true) => ContactKind::HoleSe,
                    (false, true, false) => ContactKind::HoleNe,
                    (false, false, true) => ContactKind::HoleSw,
                    _ => ContactKind::Separating,
                };
                out.push(ContactPoint { point: (k, l), kind });
            }
        }
        out
    }

    /// Scale by an integer factor: each pixel becomes a `factor x factor` block.
    pub fn upscale(&self, factor: i32) -> PixelRegion {
        assert!(factor > 0);
        let frame = Frame::new(self.frame.n_x * factor, self.frame.n_y * factor);
        let mut out = PixelRegion::empty(frame);
        for (k, l) in self.pixels() {
            for dk in 0..factor {
                for dl in 0..factor {
                    out.set(k * factor + dk, l * factor + dl, true);
                }
            }
        }
        out
    }

    /// 0/1 grid of the occupancy.
    pub fn to_int_grid(&self) -> IntGrid {
        let vals = self.occ.iter().map(|&b| i32::from(b)).collect();
        IntGrid { frame: self.frame, vals }
    }

    /// 2-D inclusive prefix sums: entry `[k, l]` counts the occupied pixels
    /// inside `[0, k+1] x [0, l+1]`.
    pub fn prefix_counts(&self) -> IntGrid {
        let mut grid = self.to_int_grid();
        // Sum along x, then along y.
        for k in 1..self.frame.n_x {
            for l in 0..self.frame.n_y {
                let prev = grid.get(k - 1, l);
                *grid.at_mut(k, l) += prev;
            }
        }
        for l in 1..self.frame.n_y {
            for k in 0..self.frame.n_x {
                let prev = grid.get(k, l - 1);
                *grid.at_mut(k, l) += prev;
            }
        }
        grid
    }
}

/// A contact point with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactPoint {
    pub point: (i32, i32),
    pub kind: ContactKind,
}

/// Which of the two empty pixels at a contact point lies in a hole.
///
/// Regions pinched between two holes, or between the exterior and itself,
/// fall outside the four hole-adjacent kinds and are reported as
/// `Separating`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactKind {
    HoleNw,
    HoleNe,
    HoleSe,
    HoleSw,
    Separating,
}

impl IntGrid {
    pub fn zeros(frame: Frame) -> Self {
        IntGrid { frame, vals: vec![0; frame.len()] }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn get(&self, k: i32, l: i32) -> i32 {
        self.vals[self.frame.index(k, l)]
    }

    pub fn at_mut(&mut self, k: i32, l: i32) -> &mut i32 {
        let idx = self.frame.index(k, l);
        &mut self.vals[idx]
    }

    /// First-index difference: row `k = 0` is copied, row `k > 0` holds
    /// `N[k, l] - N[k-1, l]`.
    pub fn diff(&self) -> IntGrid {
        let mut out = IntGrid::zeros(self.frame);
        for l in 0..self.frame.n_y {
            for k in 0..self.frame.n_x {
                let v = if k == 0 {
                    self.get(0, l)
                } else {
                    self.get(k, l) - self.get(k - 1, l)
                };
                *out.at_mut(k, l) = v;
            }
        }
        out
    }

    /// Running sum along the first index; inverse of `diff`.
    pub fn accumulate(&self) -> IntGrid {
        let mut out = IntGrid::zeros(self.frame);
        for l in 0..self.frame.n_y {
            let mut sum = 0;
            for k in 0..self.frame.n_x {
                sum += self.get(k, l);
                *out.at_mut(k, l) = sum;
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &IntGrid) {
        assert_eq!(self.frame, other.frame);
        for (a, &b) in self.vals.iter_mut().zip(&other.vals) {
            *a += b;
        }
    }

    pub fn count_nonzero(&self) -> usize {
        self.vals.iter().filter(|&&v| v != 0).count()
    }
}

/// The `phi`-th tile (1..=9, row-major from NW) of `mbr`, clipped to the
/// frame. Tile 5 is the rectangle itself. The result may be pixel-empty.
pub fn tile_rect(mbr: IntRect, phi: u8, frame: Frame) -> IntRect {
    assert!((1..=9).contains(&phi), "tile index out of range");
    assert!(frame.contains(&mbr), "mbr must lie inside the frame");
    let (s, t) = ((phi - 1) / 3, (phi - 1) % 3);
    // Row 0 is the north band, column 0 the west band.
    let (y_lo, y_hi) = match s {
        0 => (mbr.y_hi, frame.n_y),
        1 => (mbr.y_lo, mbr.y_hi),
        _ => (0, mbr.y_lo),
    };
    let (x_lo, x_hi) = match t {
        0 => (0, mbr.x_lo),
        1 => (mbr.x_lo, mbr.x_hi),
        _ => (mbr.x_hi, frame.n_x),
    };
    IntRect::new(x_lo, x_hi, y_lo, y_hi)
}

/// Constant-time pixel test against a prefix-count grid: true iff the counted
/// region has at least one pixel inside `r`.
pub fn rect_has_pixel(prefix: &IntGrid, r: IntRect) -> bool {
    let frame = prefix.frame();
    let r = match r.intersect(&frame.rect()) {
        Some(c) => c,
        None => return false,
    };
    if r.is_pixel_empty() {
        return false;
    }
    let read = |k: i32, l: i32| -> i32 {
        if k < 0 || l < 0 {
            0
        } else {
            prefix.get(k, l)
        }
    };
    read(r.x_lo - 1, r.y_lo - 1) + read(r.x_hi - 1, r.y_hi - 1)
        > read(r.x_hi - 1, r.y_lo - 1) + read(r.x_lo - 1, r.y_hi - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid_from_rows(frame: Frame, rows: &[&[i32]]) -> IntGrid {
        // rows are given top-down for readability
        assert_eq!(rows.len() as i32, frame.n_y);
        let mut g = IntGrid::zeros(frame);
        for (row_idx, row) in rows.iter().enumerate() {
            assert_eq!(row.len() as i32, frame.n_x);
            let l = frame.n_y - 1 - row_idx as i32;
            for (k, &v) in row.iter().enumerate() {
                *g.at_mut(k as i32, l) = v;
            }
        }
        g
    }

    #[test]
    fn diff_of_zero_grid_is_zero() {
        let g = IntGrid::zeros(Frame::new(4, 3));
        assert_eq!(g.diff(), g);
        assert_eq!(g.accumulate(), g);
    }

    #[test]
    fn diff_of_rectangle_grid() {
        let frame = Frame::new(5, 5);
        let b = PixelRegion::from_rect(IntRect::new(1, 3, 1, 3), frame).to_int_grid();
        let d = b.diff();
        for l in 0..5 {
            for k in 0..5 {
                let expected = if (l == 1 || l == 2) && k == 1 {
                    1
                } else if (l == 1 || l == 2) && k == 3 {
                    -1
                } else {
                    0
                };
                assert_eq!(d.get(k, l), expected, "at ({k},{l})");
            }
        }
    }

    #[test]
    fn diff_of_west_tile_matches_worked_example() {
        // West tile of [3,5]x[0,4] in a 5x5 frame.
        let frame = Frame::new(5, 5);
        let tile = tile_rect(IntRect::new(3, 5, 0, 4), 4, frame);
        assert_eq!(tile, IntRect::new(0, 3, 0, 4));
        let d = PixelRegion::from_rect(tile, frame).to_int_grid().diff();
        let expected = grid_from_rows(
            frame,
            &[
                &[0, 0, 0, 0, 0],
                &[1, 0, 0, -1, 0],
                &[1, 0, 0, -1, 0],
                &[1, 0, 0, -1, 0],
                &[1, 0, 0, -1, 0],
            ],
        );
        assert_eq!(d, expected);
    }

    #[test]
    fn tile_rects_of_worked_examples() {
        let frame = Frame::new(5, 5);
        let m2 = IntRect::new(0, 2, 1, 3);
        assert_eq!(tile_rect(m2, 9, frame), IntRect::new(2, 5, 0, 1));
        assert!(tile_rect(m2, 1, frame).is_pixel_empty());
        assert_eq!(tile_rect(m2, 5, frame), m2);
        let m3 = IntRect::new(3, 5, 0, 4);
        assert_eq!(tile_rect(m3, 4, frame), IntRect::new(0, 3, 0, 4));
    }

    #[test]
    fn rasterize_rect_examples() {
        let frame = Frame::new(5, 5);
        assert!(PixelRegion::from_rect(IntRect::new(2, 2, 0, 3), frame).is_empty());
        let single = PixelRegion::from_rect(IntRect::new(0, 1, 0, 1), frame);
        assert_eq!(single.pixels(), vec![(0, 0)]);
        let strip = PixelRegion::from_rect(IntRect::new(2, 5, 0, 1), frame);
        assert_eq!(strip.pixel_count(), 3);
    }

    #[test]
    fn connected_components_split_diagonal() {
        let frame = Frame::new(3, 3);
        let region = PixelRegion::from_pixels(frame, &[(0, 0), (1, 1)]);
        let comps = region.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].pixels(), vec![(0, 0)]);
        assert_eq!(comps[1].pixels(), vec![(1, 1)]);
        assert!(PixelRegion::empty(frame).connected_components().is_empty());
    }

    #[test]
    fn mbr_examples() {
        let frame = Frame::new(5, 5);
        let single = PixelRegion::from_pixels(frame, &[(2, 3)]);
        assert_eq!(single.mbr(), Some(IntRect::new(2, 3, 3, 4)));
        let two = PixelRegion::from_pixels(frame, &[(0, 0), (2, 1)]);
        assert_eq!(two.mbr(), Some(IntRect::new(0, 3, 0, 2)));
        let full = PixelRegion::from_rect(frame.rect(), frame);
        assert_eq!(full.mbr(), Some(frame.rect()));
        assert_eq!(PixelRegion::empty(frame).mbr(), None);
    }

    #[test]
    fn prefix_counts_small() {
        let frame = Frame::new(2, 2);
        let full = PixelRegion::from_rect(frame.rect(), frame);
        let p = full.prefix_counts();
        assert_eq!(p.get(0, 0), 1);
        assert_eq!(p.get(0, 1), 2);
        assert_eq!(p.get(1, 0), 2);
        assert_eq!(p.get(1, 1), 4);
        assert!(PixelRegion::empty(frame).prefix_counts().count_nonzero() == 0);
    }

    #[test]
    fn rect_has_pixel_agrees_with_scan() {
        let frame = Frame::new(5, 5);
        let mut rng_state = 0x9e3779b9u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng_state >> 33) as u32
        };
        for _ in 0..50 {
            let mut region = PixelRegion::empty(frame);
            for k in 0..5 {
                for l in 0..5 {
                    if next() % 3 == 0 {
                        region.set(k, l, true);
                    }
                }
            }
            let prefix = region.prefix_counts();
            for x_lo in 0..=5 {
                for x_hi in x_lo..=5 {
                    for y_lo in 0..=5 {
                        for y_hi in y_lo..=5 {
                            let r = IntRect::new(x_lo, x_hi, y_lo, y_hi);
                            let direct = region
                                .pixels()
                                .iter()
                                .any(|&(k, l)| r.contains_pixel(k, l));
                            assert_eq!(rect_has_pixel(&prefix, r), direct, "rect {r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn holes_of_solid_rect_and_ring() {
        let frame = Frame::new(5, 5);
        let solid = PixelRegion::from_rect(IntRect::new(0, 4, 0, 4), frame);
        assert!(solid.holes().is_empty());

        let mut ring = PixelRegion::from_rect(IntRect::new(0, 3, 0, 3), frame);
        ring.set(1, 1, false);
        let holes = ring.holes();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].pixels(), vec![(1, 1)]);
    }

    #[test]
    fn two_holes_and_two_contact_points() {
        // 7x7 block with two enclosed single-pixel holes stacked diagonally
        // around the pinch pixel (5,5), and a channel opening the column
        // below it to the exterior. The region pinches at exactly the grid
        // points (5,5) (hole vs exterior) and (5,6) (hole vs hole).
        let frame = Frame::new(9, 9);
        let mut region = PixelRegion::from_rect(IntRect::new(1, 8, 1, 8), frame);
        for (k, l) in [(4, 5), (5, 6), (5, 1), (5, 2), (5, 3), (5, 4)] {
            region.set(k, l, false);
        }
        assert!(region.is_connected());
        let holes = region.holes();
        assert_eq!(holes.len(), 2);
        assert_eq!(holes[0].pixels(), vec![(4, 5)]);
        assert_eq!(holes[1].pixels(), vec![(5, 6)]);

        let contacts = region.contact_points();
        assert_eq!(contacts.len(), 2);
        assert_eq!(contacts[0], ContactPoint { point: (5, 5), kind: ContactKind::HoleNw });
        assert_eq!(contacts[1], ContactPoint { point: (5, 6), kind: ContactKind::Separating });
    }

    #[test]
    fn bare_diagonal_pair_is_separating_contact() {
        let frame = Frame::new(3, 3);
        let region = PixelRegion::from_pixels(frame, &[(0, 0), (1, 1)]);
        let contacts = region.contact_points();
        assert_eq!(contacts.len(), 1);
        assert_eq!(contacts[0].point, (1, 1));
        assert_eq!(contacts[0].kind, ContactKind::Separating);
        assert!(PixelRegion::from_rect(IntRect::new(0, 2, 0, 2), frame)
            .contact_points()
            .is_empty());
    }

    #[test]
    fn hole_pixels_stay_strictly_inside_mbr() {
        let frame = Frame::new(6, 6);
        let mut region = PixelRegion::from_rect(IntRect::new(0, 5, 0, 5), frame);
        region.set(2, 2, false);
        region.set(3, 2, false);
        region.set(4, 4, false); // touches mbr edge row, escapes? no: corner pixel inside
        let mbr = region.mbr().unwrap();
        for hole in region.holes() {
            assert!(hole.is_subset_of(&PixelRegion::from_rect(mbr, frame)));
            for (k, l) in hole.pixels() {
                assert!(k > mbr.x_lo && k < mbr.x_hi - 1);
                assert!(l > mbr.y_lo && l < mbr.y_hi - 1);
                assert!(!region.get(k, l));
            }
        }
    }

    fn arb_grid_pair() -> impl Strategy<Value = (IntGrid, IntGrid)> {
        ((1i32..16), (1i32..16)).prop_flat_map(|(nx, ny)| {
            let frame = Frame::new(nx, ny);
            let cells = (nx * ny) as usize;
            (
                proptest::collection::vec(-20i32..20, cells),
                proptest::collection::vec(-20i32..20, cells),
            )
                .prop_map(move |(a, b)| {
                    (IntGrid { frame, vals: a }, IntGrid { frame, vals: b })
                })
        })
    }

    proptest! {
        #[test]
        fn acc_inverts_diff((g, _) in arb_grid_pair()) {
            prop_assert_eq!(g.diff().accumulate(), g.clone());
            prop_assert_eq!(g.accumulate().diff(), g);
        }

        #[test]
        fn diff_is_additive((a, b) in arb_grid_pair()) {
            let mut sum = a.clone();
            sum.add_assign(&b);
            let mut diff_sum = a.diff();
            diff_sum.add_assign(&b.diff());
            prop_assert_eq!(sum.diff(), diff_sum);
        }
    }

    #[test]
    fn diff_of_tile_grid_is_sparse() {
        // Bound on nonzero entries of a tile rectangle's difference grid:
        // fewer than 4n when the frame respects the canonical bound.
        for n in 2..8 {
            let frame = Frame::new(2 * n - 1, 2 * n - 1);
            let mbr = IntRect::new(1, n, 1, n);
            for phi in 1..=9 {
                let tile = tile_rect(mbr, phi, frame);
                let d = PixelRegion::from_rect(tile, frame).to_int_grid().diff();
                assert!((d.count_nonzero() as i32) < 4 * n);
            }
        }
    }
}
