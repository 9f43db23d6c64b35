//! Solution rendering: ASCII overviews and per-region portable bitmaps.

use crate::grid::{Frame, PixelRegion};

/// One character per pixel, top row first: `.` empty, the region's letter,
/// or `#` where regions overlap.
pub fn render_ascii(regions: &[PixelRegion]) -> String {
    assert!(!regions.is_empty());
    let frame = regions[0].frame();
    assert!(regions.iter().all(|r| r.frame() == frame));
    let letter = |idx: usize| (b'a' + (idx % 26) as u8) as char;
    let mut out = String::new();
    for l in (0..frame.n_y).rev() {
        for k in 0..frame.n_x {
            let mut occupants = regions
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(k, l))
                .map(|(idx, _)| idx);
            let ch = match (occupants.next(), occupants.next()) {
                (None, _) => '.',
                (Some(idx), None) => letter(idx),
                (Some(_), Some(_)) => '#',
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

/// Plain PBM (`P1`) encoding, top row = highest pixel row.
pub fn to_pbm(region: &PixelRegion) -> String {
    let frame = region.frame();
    let mut out = format!("P1\n{} {}\n", frame.n_x, frame.n_y);
    for l in (0..frame.n_y).rev() {
        for k in 0..frame.n_x {
            if k > 0 {
                out.push(' ');
            }
            out.push(if region.get(k, l) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Parses a plain PBM produced by `to_pbm` (or any whitespace layout of it).
pub fn parse_pbm(text: &str) -> Result<PixelRegion, String> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(|line| line.split_whitespace().map(str::to_owned))
        .collect::<Vec<_>>()
        .into_iter();
    if tokens.next().as_deref() != Some("P1") {
        return Err("not a plain PBM file (missing P1 magic)".into());
    }
    let mut dim = || -> Result<i32, String> {
        tokens
            .next()
            .ok_or("missing dimensions")?
            .parse::<i32>()
            .map_err(|_| "invalid dimension".to_string())
    };
    let width = dim()?;
    let height = dim()?;
    if width <= 0 || height <= 0 {
        return Err("dimensions must be positive".into());
    }
    let frame = Frame::new(width, height);
    let mut region = PixelRegion::empty(frame);
    let mut bits = tokens.flat_map(|t| t.chars().collect::<Vec<_>>());
    for l in (0..height).rev() {
        for k in 0..width {
            match bits.next() {
                Some('1') => region.set(k, l, true),
                Some('0') => {}
                other => return Err(format!("unexpected PBM token {other:?}")),
            }
        }
    }
    if bits.next().is_some() {
        return Err("trailing data after bitmap".into());
    }
    Ok(region)
}
