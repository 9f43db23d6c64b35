//! Direction relation matrices and constraint networks: validity per model,
//! enumeration of the basic relations, axis projections, and construction of
//! the two projective interval networks from a basic network.
//!
//! A matrix is nine Boolean flags over the tiles of a reference rectangle,
//! row 1 = the north row (NW N NE / W O E / SW S SE), column 1 = west. The
//! flat tile index is `phi = 3(s-1) + t` for row `s`, column `t`.

use std::fmt;
use std::str::FromStr;

use crate::grid::{tile_rect, Frame, IntRect, PixelRegion};
use crate::ia::{
    meet_free_refine, vector_pair_relation, DirectionVector, IaBasicNetwork, IaRelationSet,
};

/// 3x3 Boolean direction relation matrix, packed into nine bits with tile
/// `phi` at bit `phi - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionMatrix(u16);

impl DirectionMatrix {
    /// The relation of any region to its own bounding rectangle.
    pub const CENTER: DirectionMatrix = DirectionMatrix(1 << 4);

    pub const ZERO: DirectionMatrix = DirectionMatrix(0);

    pub fn from_bits(bits: u16) -> Self {
        assert!(bits < 512, "direction matrix uses nine bits");
        DirectionMatrix(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Entry at row `s`, column `t` (both 1-based, row 1 = north).
    pub fn get(self, s: u8, t: u8) -> bool {
        assert!((1..=3).contains(&s) && (1..=3).contains(&t));
        self.tile(3 * (s - 1) + t)
    }

    /// Entry at flat tile index `phi` in `1..=9`.
    pub fn tile(self, phi: u8) -> bool {
        assert!((1..=9).contains(&phi));
        self.0 & (1 << (phi - 1)) != 0
    }

    pub fn with_tile(self, phi: u8, v: bool) -> Self {
        assert!((1..=9).contains(&phi));
        let bit = 1 << (phi - 1);
        DirectionMatrix(if v { self.0 | bit } else { self.0 & !bit })
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn tile_count(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Entrywise union.
    pub fn join(self, other: DirectionMatrix) -> DirectionMatrix {
        DirectionMatrix(self.0 | other.0)
    }

    /// Entrywise containment.
    pub fn is_submatrix_of(self, other: DirectionMatrix) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when the nonzero tiles form one 4-connected group.
    pub fn is_four_connected(self) -> bool {
        if self.0 == 0 {
            return true;
        }
        let start = self.0.trailing_zeros() as u8 + 1;
        let mut seen = 0u16;
        let mut stack = vec![start];
        seen |= 1 << (start - 1);
        while let Some(phi) = stack.pop() {
            let (s, t) = ((phi - 1) / 3 + 1, (phi - 1) % 3 + 1);
            let mut push = |s2: i8, t2: i8| {
                if (1..=3).contains(&s2) && (1..=3).contains(&t2) {
                    let nphi = 3 * (s2 as u8 - 1) + t2 as u8;
                    let bit = 1 << (nphi - 1);
                    if self.0 & bit != 0 && seen & bit == 0 {
                        seen |= bit;
                        stack.push(nphi);
                    }
                }
            };
            push(s as i8 - 1, t as i8);
            push(s as i8 + 1, t as i8);
            push(s as i8, t as i8 - 1);
            push(s as i8, t as i8 + 1);
        }
        seen == self.0
    }

    /// Legal basic relation of the given model.
    pub fn is_valid(self, model: Model) -> bool {
        match model {
            Model::Cdc | Model::CdcS => !self.is_zero() && self.is_four_connected(),
            Model::CdcD => !self.is_zero(),
        }
    }

    /// Column-OR vector (column 1 = west). Both outer columns occupied forces
    /// the middle band: the x-extent of any region spanning both sides covers
    /// the reference interval.
    pub fn x_projection(self) -> DirectionVector {
        let col = |t: u8| (1..=3).any(|s| self.get(s, t));
        normalize_projection(col(1), col(2), col(3))
    }

    /// Row-OR vector with the south row in slot 1, same normalization as
    /// `x_projection`.
    pub fn y_projection(self) -> DirectionVector {
        let row = |s: u8| (1..=3).any(|t| self.get(s, t));
        normalize_projection(row(3), row(2), row(1))
    }
}

fn normalize_projection(low: bool, mid: bool, high: bool) -> DirectionVector {
    let mid = mid || (low && high);
    DirectionVector::new(low, mid, high)
}

impl fmt::Display for DirectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 1..=3 {
            if s > 1 {
                write!(f, "/")?;
            }
            for t in 1..=3 {
                write!(f, "{}", u8::from(self.get(s, t)))?;
            }
        }
        Ok(())
    }
}

impl FromStr for DirectionMatrix {
    type Err = String;

    /// Parses nine `0`/`1` characters in row-major order from the north-west
    /// tile; `/` separators are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<char> = s.chars().filter(|&c| c != '/').collect();
        if digits.len() != 9 {
            return Err(format!("expected 9 matrix bits, got {}", digits.len()));
        }
        let mut m = DirectionMatrix::ZERO;
        for (idx, c) in digits.iter().enumerate() {
            match c {
                '0' => {}
                '1' => m = m.with_tile(idx as u8 + 1, true),
                _ => return Err(format!("invalid matrix character {c:?}")),
            }
        }
        Ok(m)
    }
}

/// The three calculi sharing the matrix representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Connected regions; 218 basic relations.
    Cdc,
    /// Possibly disconnected regions; 511 basic relations.
    CdcD,
    /// Simple regions; same 218 basic relations as `Cdc`.
    CdcS,
}

impl Model {
    /// All valid matrices of the model in ascending nine-bit order.
    pub fn basic_relations(self) -> Vec<DirectionMatrix> {
        (1u16..512)
            .map(DirectionMatrix::from_bits)
            .filter(|m| m.is_valid(self))
            .collect()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Cdc => "cdc",
            Model::CdcD => "cdc-d",
            Model::CdcS => "cdc-s",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cdc" => Ok(Model::Cdc),
            "cdc-d" | "cdc_d" => Ok(Model::CdcD),
            "cdc-s" | "cdc_s" => Ok(Model::CdcS),
            other => Err(format!("unknown model {other:?}")),
        }
    }
}

/// Basic constraint network: one direction matrix per ordered pair of
/// distinct variables. The diagonal is implicitly the center-only matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdcBasicNetwork {
    n: usize,
    delta: Vec<Option<DirectionMatrix>>,
}

impl CdcBasicNetwork {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        CdcBasicNetwork { n, delta: vec![None; n * n] }
    }

    /// Network read off a concrete configuration of regions sharing a frame.
    pub fn from_regions(regions: &[PixelRegion]) -> Self {
        let n = regions.len();
        let mbrs: Vec<IntRect> = regions
            .iter()
            .map(|r| r.mbr().expect("regions must be nonempty"))
            .collect();
        let mut net = CdcBasicNetwork::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    net.set(i, j, dir_of_digital(&regions[i], mbrs[j]));
                }
            }
        }
        net
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, m: DirectionMatrix) {
        assert!(i != j, "diagonal relations are implicit");
        assert!(i < self.n && j < self.n);
        self.delta[i * self.n + j] = Some(m);
    }

    /// Relation of `i` to `j`; the diagonal reads as center-only.
    pub fn relation(&self, i: usize, j: usize) -> DirectionMatrix {
        assert!(i < self.n && j < self.n);
        if i == j {
            return DirectionMatrix::CENTER;
        }
        self.delta[i * self.n + j].expect("unassigned constraint")
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.delta[i * self.n + j].is_some()))
    }

    pub fn is_valid(&self, model: Model) -> bool {
        self.is_complete()
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| i == j || self.relation(i, j).is_valid(model))
            })
    }
}

/// Disjunctive network: a nonempty candidate set per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdcDisjunctiveNetwork {
    n: usize,
    rel: Vec<Vec<DirectionMatrix>>,
}

impl CdcDisjunctiveNetwork {
    /// Starts with every pair unconstrained, i.e. carrying the full basic
    /// relation set of the model.
    pub fn new(n: usize, model: Model) -> Self {
        assert!(n >= 1);
        let full = model.basic_relations();
        let rel = (0..n * n).map(|_| full.clone()).collect();
        CdcDisjunctiveNetwork { n, rel }
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    /// Replaces the candidate set of `(i, j)`; kept sorted and deduplicated.
    pub fn set_candidates(&mut self, i: usize, j: usize, mut candidates: Vec<DirectionMatrix>) {
        assert!(i != j && i < self.n && j < self.n);
        assert!(!candidates.is_empty(), "candidate sets must be nonempty");
        candidates.sort();
        candidates.dedup();
        self.rel[i * self.n + j] = candidates;
    }

    pub fn candidates(&self, i: usize, j: usize) -> &[DirectionMatrix] {
        assert!(i != j && i < self.n && j < self.n);
        &self.rel[i * self.n + j]
    }

    pub fn is_basic(&self) -> bool {
        (0..self.n)
            .all(|i| (0..self.n).all(|j| i == j || self.rel[i * self.n + j].len() == 1))
    }
}

/// Axis selector for the projective constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// The interval relation constraining the projections of two regions related
/// by `delta_ij` and `delta_ji` on the chosen axis: the projection of the
/// first intersected with the converse of the projection of the second.
pub fn projective_pair_relation(
    delta_ij: DirectionMatrix,
    delta_ji: DirectionMatrix,
    axis: Axis,
) -> IaRelationSet {
    let (v_ij, v_ji) = match axis {
        Axis::X => (delta_ij.x_projection(), delta_ji.x_projection()),
        Axis::Y => (delta_ij.y_projection(), delta_ji.y_projection()),
    };
    vector_pair_relation(v_ij, v_ji)
}

/// Constraint pair whose projective relation came out empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectiveInconsistency {
    pub axis: Axis,
    pub i: usize,
    pub j: usize,
}

/// Builds the two projective interval networks of a basic network, applying
/// meet-free refinement per pair. Reports the first pair whose refined
/// relation is empty.
pub fn projective_networks(
    net: &CdcBasicNetwork,
) -> Result<(IaBasicNetwork, IaBasicNetwork), ProjectiveInconsistency> {
    let n = net.var_count();
    let mut nx = IaBasicNetwork::new(n);
    let mut ny = IaBasicNetwork::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for (axis, axis_net) in [(Axis::X, &mut nx), (Axis::Y, &mut ny)] {
                let rel = projective_pair_relation(net.relation(i, j), net.relation(j, i), axis);
                let refined = meet_free_refine(rel);
                match refined.single() {
                    Some(basic) => axis_net.set(i, j, basic),
                    None => return Err(ProjectiveInconsistency { axis, i, j }),
                }
            }
        }
    }
    Ok((nx, ny))
}

/// Direction relation matrix of a digital region to a reference rectangle,
/// by direct tile membership: tile `phi` is occupied iff the region has a
/// pixel inside it. All tile boundaries are integers, so pixel granularity
/// is exact.
pub fn dir_of_digital(a: &PixelRegion, mbr_b: IntRect) -> DirectionMatrix {
    assert!(!a.is_empty());
    let frame: Frame = a.frame();
    assert!(frame.contains(&mbr_b), "reference mbr must lie in the frame");
    let mut m = DirectionMatrix::ZERO;
    let pixels = a.pixels();
    for phi in 1..=9 {
        let tile = tile_rect(mbr_b, phi, frame);
        if tile.is_pixel_empty() {
            continue;
        }
        if pixels.iter().any(|&(k, l)| tile.contains_pixel(k, l)) {
            m = m.with_tile(phi, true);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ia::{direction_vector, IaBasic, IntInterval};

    pub(crate) fn dm(s: &str) -> DirectionMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(DirectionMatrix::CENTER.is_valid(Model::Cdc));
        assert!(!DirectionMatrix::ZERO.is_valid(Model::Cdc));
        assert!(!DirectionMatrix::ZERO.is_valid(Model::CdcD));
        let split = dm("101/000/000");
        assert!(!split.is_valid(Model::Cdc));
        assert!(split.is_valid(Model::CdcD));
        assert!(DirectionMatrix::CENTER.is_valid(Model::CdcS));
    }

    #[test]
    fn enumeration_counts() {
        let cdc = Model::Cdc.basic_relations();
        let cdc_d = Model::CdcD.basic_relations();
        assert_eq!(cdc.len(), 218);
        assert_eq!(cdc_d.len(), 511);
        assert!(cdc.iter().all(|m| cdc_d.contains(m)));
        assert!(cdc.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Model::CdcS.basic_relations(), cdc);
    }

    #[test]
    fn display_parse_round_trip() {
        for m in Model::CdcD.basic_relations() {
            let s = m.to_string();
            assert_eq!(s.parse::<DirectionMatrix>().unwrap(), m);
            let compact: String = s.chars().filter(|&c| c != '/').collect();
            assert_eq!(compact.parse::<DirectionMatrix>().unwrap(), m);
        }
        assert!("0110010".parse::<DirectionMatrix>().is_err());
        assert!("011001002".parse::<DirectionMatrix>().is_err());
    }

    #[test]
    fn projection_examples() {
        let v = DirectionVector::new;
        assert_eq!(dm("011/001/000").x_projection(), v(false, true, true));
        assert_eq!(dm("000/100/000").x_projection(), v(true, false, false));
        assert_eq!(DirectionMatrix::CENTER.x_projection(), v(false, true, false));
        assert_eq!(dm("011/001/000").y_projection(), v(false, true, true));
        assert_eq!(dm("001/001/001").y_projection(), v(true, true, true));
        assert_eq!(DirectionMatrix::CENTER.y_projection(), v(false, true, false));
    }

    #[test]
    fn split_projection_normalizes_to_full_span() {
        // A region occupying only the NW and SE tiles spans the reference
        // interval on both axes.
        let v = DirectionVector::new;
        assert_eq!(dm("100/000/001").x_projection(), v(true, true, true));
        assert_eq!(dm("100/000/001").y_projection(), v(true, true, true));
    }

    #[test]
    fn projective_pair_examples() {
        use IaBasic::*;
        let rel = projective_pair_relation(dm("011/001/000"), dm("000/110/110"), Axis::X);
        assert_eq!(rel, IaRelationSet::singleton(Oi));
        let rel = projective_pair_relation(dm("000/100/000"), dm("001/001/001"), Axis::X);
        assert_eq!(rel, IaRelationSet::from_basics(&[P, M]));
        let rel = projective_pair_relation(dm("110/010/000"), dm("000/001/011"), Axis::Y);
        assert_eq!(rel, IaRelationSet::singleton(Oi));
    }

    #[test]
    fn projective_pair_relation_respects_converse() {
        let basics = Model::Cdc.basic_relations();
        // Sampled pairs: full cross product is covered by the table builder.
        for (idx, &a) in basics.iter().enumerate() {
            let b = basics[(idx * 37) % basics.len()];
            for axis in [Axis::X, Axis::Y] {
                assert_eq!(
                    projective_pair_relation(a, b, axis),
                    projective_pair_relation(b, a, axis).converse()
                );
            }
        }
    }

    fn demo_network() -> CdcBasicNetwork {
        let mut net = CdcBasicNetwork::new(3);
        net.set(0, 1, dm("011/001/000"));
        net.set(1, 0, dm("000/110/110"));
        net.set(0, 2, dm("110/010/000"));
        net.set(2, 0, dm("000/001/011"));
        net.set(1, 2, dm("000/100/000"));
        net.set(2, 1, dm("001/001/001"));
        net
    }

    #[test]
    fn projective_networks_of_demo() {
        use IaBasic::*;
        let net = demo_network();
        let (nx, ny) = projective_networks(&net).unwrap();
        assert_eq!(nx.get(0, 1), Some(Oi));
        assert_eq!(nx.get(0, 2), Some(O));
        assert_eq!(nx.get(1, 2), Some(P));
        assert_eq!(ny.get(0, 1), Some(Oi));
        assert_eq!(ny.get(0, 2), Some(Oi));
        assert_eq!(ny.get(1, 2), Some(D));
    }

    #[test]
    fn projective_networks_trivial_and_inconsistent() {
        let single = CdcBasicNetwork::new(1);
        assert!(projective_networks(&single).is_ok());

        // Both x-vectors pointing west admits no interval pair.
        let mut net = CdcBasicNetwork::new(2);
        net.set(0, 1, dm("000/100/000"));
        net.set(1, 0, dm("000/100/000"));
        let err = projective_networks(&net).unwrap_err();
        assert_eq!(err, ProjectiveInconsistency { axis: Axis::X, i: 0, j: 1 });
    }

    #[test]
    fn dir_of_digital_examples() {
        let frame = Frame::new(3, 3);
        let region = PixelRegion::from_pixels(frame, &[(0, 1), (1, 1), (1, 2)]);
        let own = region.mbr().unwrap();
        assert_eq!(dir_of_digital(&region, own), DirectionMatrix::CENTER);

        let single = PixelRegion::from_pixels(frame, &[(0, 0)]);
        assert_eq!(dir_of_digital(&single, IntRect::new(1, 2, 1, 2)), dm("000/000/100"));

        let frame2 = Frame::new(2, 1);
        let strip = PixelRegion::from_rect(IntRect::new(0, 2, 0, 1), frame2);
        assert_eq!(dir_of_digital(&strip, IntRect::new(1, 2, 0, 1)), dm("000/110/000"));
    }

    #[test]
    fn projection_agrees_with_interval_vector() {
        // Column/row ORs of the digital relation match the direction vector
        // of the projections, for rectangles and for arbitrary (possibly
        // disconnected) regions.
        let frame = Frame::new(4, 4);
        let mut rects = Vec::new();
        for x_lo in 0..4 {
            for x_hi in (x_lo + 1)..=4 {
                for y_lo in 0..4 {
                    for y_hi in (y_lo + 1)..=4 {
                        rects.push(IntRect::new(x_lo, x_hi, y_lo, y_hi));
                    }
                }
            }
        }
        let check = |a: &PixelRegion, b: &PixelRegion| {
            let (ma, mb) = (a.mbr().unwrap(), b.mbr().unwrap());
            let m = dir_of_digital(a, mb);
            let ix = |r: IntRect| IntInterval::new(r.x_lo, r.x_hi);
            let iy = |r: IntRect| IntInterval::new(r.y_lo, r.y_hi);
            assert_eq!(m.x_projection(), direction_vector(ix(ma), ix(mb)), "{a:?} vs {b:?}");
            assert_eq!(m.y_projection(), direction_vector(iy(ma), iy(mb)), "{a:?} vs {b:?}");
        };
        for &ra in &rects {
            for &rb in &rects {
                check(&PixelRegion::from_rect(ra, frame), &PixelRegion::from_rect(rb, frame));
            }
        }
        // Deterministic pseudo-random multi-pixel regions.
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let random_region = |next: &mut dyn FnMut() -> u64| loop {
            let mask = next() & 0xffff;
            if mask != 0 {
                let mut r = PixelRegion::empty(frame);
                for bit in 0..16 {
                    if mask & (1 << bit) != 0 {
                        r.set(bit % 4, bit / 4, true);
                    }
                }
                return r;
            }
        };
        for _ in 0..200 {
            let a = random_region(&mut next);
            let b = random_region(&mut next);
            check(&a, &b);
        }
    }

    #[test]
    fn center_relation_to_own_mbr_for_random_regions() {
        let frame = Frame::new(5, 5);
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mask = (state >> 20) & 0x1ffffff;
            if mask == 0 {
                continue;
            }
            let mut region = PixelRegion::empty(frame);
            for bit in 0..25 {
                if mask & (1 << bit) != 0 {
                    region.set(bit % 5, bit / 5, true);
                }
            }
            assert_eq!(
                dir_of_digital(&region, region.mbr().unwrap()),
                DirectionMatrix::CENTER
            );
        }
    }
}
