//! Path and lozenge renderings of walker configurations.
//!
//! A configuration is drawn either as its walker trajectories on the square
//! lattice, or as the corresponding rhombus tiling. The combinatorics stays
//! on integer coordinates throughout: lattice points are
//! `T(t, x) = x*a + (t - x)*u` with `a = (1, 0)` and `u = (1/2, sqrt(3)/2)`,
//! so a stay-step travels along `u`, a jump-step along `a`, and the affine
//! 60-degree geometry only appears when SVG coordinates are emitted.
//!
//! Tile rule: each walker step owns one rhombus (stay or jump type anchored
//! at its source site), and every unoccupied column at an interior time
//! carries one flat rhombus. For the order-`n` half-hexagon this yields
//! `n(n+1)` step tiles plus `n(n+1)/2` flat tiles, and the per-tile unit
//! triangles partition a region independent of the configuration.

use std::fmt::Write as _;

use crate::ensemble::Configuration;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Paths,
    Lozenges,
}

/// The three rhombus orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LozengeKind {
    /// A walker kept its position during tick `t` (spanned by `u` and `a - u`).
    Stay,
    /// A walker stepped right during tick `t` (spanned by `a` and `a - u`).
    Jump,
    /// No walker passed through column `x` at interior time `t` (spanned by
    /// `a` and `u`).
    Flat,
}

/// One rhombus: its orientation plus the anchor cell. Step tiles are
/// anchored at (tick, source position); flat tiles at (interior time,
/// column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lozenge {
    pub kind: LozengeKind,
    pub t: usize,
    pub x: i64,
}

/// Half of a rhombus: the unit triangle below or above the `a`-diagonal of
/// the band-`band`, column-`col` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitTriangle {
    pub lower: bool,
    pub band: usize,
    pub col: i64,
}

/// Width of the reachable strip at time `t`: columns `1..=strip_width`.
fn strip_width(config: &Configuration, t: usize) -> i64 {
    let n = config.walkers() as i64;
    (n + t as i64).min(*config.ends().last().unwrap())
}

/// The full tile list of a configuration, deterministically ordered: step
/// tiles by (tick, walker), then flat tiles by (time, column).
pub fn lozenges(config: &Configuration) -> Vec<Lozenge> {
    let mut tiles = Vec::new();
    for t in 0..config.steps() {
        for w in 0..config.walkers() {
            let x = config.slice(t)[w];
            let kind = if config.slice(t + 1)[w] == x {
                LozengeKind::Stay
            } else {
                LozengeKind::Jump
            };
            tiles.push(Lozenge { kind, t, x });
        }
    }
    for t in 1..config.steps() {
        for x in 1..=strip_width(config, t) {
            if !config.occupied(t, x) {
                tiles.push(Lozenge {
                    kind: LozengeKind::Flat,
                    t,
                    x,
                });
            }
        }
    }
    tiles
}

/// The two unit triangles a tile covers. Distinctness of these across a
/// whole tiling is what "each rhombus emitted once" means.
pub fn unit_triangles(tile: &Lozenge) -> [UnitTriangle; 2] {
    let up = |band: usize, col: i64| UnitTriangle {
        lower: false,
        band,
        col,
    };
    let down = |band: usize, col: i64| UnitTriangle {
        lower: true,
        band,
        col,
    };
    match tile.kind {
        LozengeKind::Stay => [up(tile.t, tile.x), down(tile.t, tile.x)],
        LozengeKind::Jump => [down(tile.t, tile.x), up(tile.t, tile.x + 1)],
        LozengeKind::Flat => [up(tile.t - 1, tile.x), down(tile.t, tile.x)],
    }
}

pub fn render_ascii(config: &Configuration, mode: RenderMode) -> String {
    match mode {
        RenderMode::Paths => paths_ascii(config),
        RenderMode::Lozenges => lozenges_ascii(config),
    }
}

pub fn render_svg(config: &Configuration, mode: RenderMode) -> String {
    match mode {
        RenderMode::Paths => paths_svg(config),
        RenderMode::Lozenges => lozenges_svg(config),
    }
}

fn paths_ascii(config: &Configuration) -> String {
    let width = *config.ends().last().unwrap();
    let mut out = String::new();
    for t in 0..=config.steps() {
        for x in 1..=width {
            out.push(if config.occupied(t, x) { 'o' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Inverse of the path-mode ASCII rendering: one row per time, `o` marks a
/// walker.
pub fn parse_paths_ascii(text: &str) -> Result<Configuration> {
    let mut positions = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<i64> = line
            .chars()
            .enumerate()
            .filter_map(|(idx, c)| (c == 'o').then_some(idx as i64 + 1))
            .collect();
        if row.is_empty() {
            return Err(Error::Parse(format!("row without walkers: {line:?}")));
        }
        positions.push(row);
    }
    Configuration::new(positions)
}

fn lozenges_ascii(config: &Configuration) -> String {
    let mut out = String::new();
    for t in 0..config.steps() {
        // step row: what each column of the strip does during tick t
        for x in 1..=strip_width(config, t) {
            let c = match config.slice(t).iter().position(|&p| p == x) {
                Some(w) if config.slice(t + 1)[w] == x => '|',
                Some(_) => '/',
                None => '.',
            };
            out.push(c);
        }
        out.push('\n');
        // occupation row at the interior time t + 1; '=' marks a flat tile
        if t + 1 < config.steps() {
            for x in 1..=strip_width(config, t + 1) {
                out.push(if config.occupied(t + 1, x) { 'o' } else { '=' });
            }
            out.push('\n');
        }
    }
    out
}

const SVG_SCALE: f64 = 24.0;
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Triangular-lattice point of `T(t, x)`, y-axis flipped for SVG.
fn lattice_point(t: usize, x: i64) -> (f64, f64) {
    let t = t as f64;
    let x = x as f64;
    (0.5 * SVG_SCALE * (x + t), 0.5 * SVG_SCALE * SQRT3 * (x - t))
}

fn tile_corners(tile: &Lozenge) -> [(f64, f64); 4] {
    let (t, x) = (tile.t, tile.x);
    match tile.kind {
        LozengeKind::Stay => [
            lattice_point(t, x),
            lattice_point(t, x + 1),
            lattice_point(t + 1, x + 1),
            lattice_point(t + 1, x),
        ],
        LozengeKind::Jump => [
            lattice_point(t, x),
            lattice_point(t, x + 1),
            lattice_point(t + 1, x + 2),
            lattice_point(t + 1, x + 1),
        ],
        LozengeKind::Flat => [
            lattice_point(t - 1, x),
            lattice_point(t, x),
            lattice_point(t + 1, x + 1),
            lattice_point(t, x + 1),
        ],
    }
}

fn fill_color(kind: LozengeKind) -> &'static str {
    match kind {
        LozengeKind::Stay => "#4e79a7",
        LozengeKind::Jump => "#f2b04b",
        LozengeKind::Flat => "#76b7b2",
    }
}

fn svg_document(polygons: &[String], bbox: (f64, f64, f64, f64)) -> String {
    let (min_x, min_y, max_x, max_y) = bbox;
    let margin = SVG_SCALE;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">",
        min_x - margin,
        min_y - margin,
        max_x - min_x + 2.0 * margin,
        max_y - min_y + 2.0 * margin
    );
    for p in polygons {
        out.push_str(p);
        out.push('\n');
    }
    out.push_str("</svg>\n");
    out
}

fn lozenges_svg(config: &Configuration) -> String {
    let tiles = lozenges(config);
    let mut bbox = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    let mut polygons = Vec::with_capacity(tiles.len());
    for tile in &tiles {
        let corners = tile_corners(tile);
        let mut points = String::new();
        for (px, py) in corners {
            bbox.0 = bbox.0.min(px);
            bbox.1 = bbox.1.min(py);
            bbox.2 = bbox.2.max(px);
            bbox.3 = bbox.3.max(py);
            let _ = write!(points, "{px:.2},{py:.2} ");
        }
        polygons.push(format!(
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.8\"/>",
            points.trim_end(),
            fill_color(tile.kind)
        ));
    }
    svg_document(&polygons, bbox)
}

fn paths_svg(config: &Configuration) -> String {
    let width = *config.ends().last().unwrap() as f64 * SVG_SCALE;
    let height = config.steps() as f64 * SVG_SCALE;
    let mut shapes = Vec::new();
    for w in 0..config.walkers() {
        let mut points = String::new();
        for t in 0..=config.steps() {
            let _ = write!(
                points,
                "{:.2},{:.2} ",
                config.slice(t)[w] as f64 * SVG_SCALE,
                t as f64 * SVG_SCALE
            );
        }
        shapes.push(format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#4e79a7\" stroke-width=\"2\"/>",
            points.trim_end()
        ));
    }
    for t in 0..=config.steps() {
        for &x in config.slice(t) {
            shapes.push(format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#333333\"/>",
                x as f64 * SVG_SCALE,
                t as f64 * SVG_SCALE
            ));
        }
    }
    svg_document(&shapes, (SVG_SCALE, 0.0, width, height))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{EnsembleSpec, DEFAULT_ENUM_CAP};
    use std::collections::BTreeSet;

    fn triangle_set(config: &Configuration) -> BTreeSet<UnitTriangle> {
        let tiles = lozenges(config);
        let mut set = BTreeSet::new();
        for tile in &tiles {
            for tri in unit_triangles(tile) {
                assert!(set.insert(tri), "triangle covered twice: {tri:?} in {tile:?}");
            }
        }
        set
    }

    #[test]
    fn order_one_strip_has_three_tiles() {
        let spec = EnsembleSpec::half_hexagon(1);
        for config in spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap() {
            let tiles = lozenges(&config);
            assert_eq!(tiles.len(), 3);
            let mut kinds: Vec<LozengeKind> = tiles.iter().map(|t| t.kind).collect();
            kinds.sort_by_key(|k| format!("{k:?}"));
            assert_eq!(
                kinds,
                vec![LozengeKind::Flat, LozengeKind::Jump, LozengeKind::Stay]
            );
        }
    }

    #[test]
    fn tile_counts_and_region_are_configuration_independent() {
        for n in 1..=3usize {
            let spec = EnsembleSpec::half_hexagon(n);
            let configs = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap();
            let expected_tiles = 3 * n * (n + 1) / 2;
            let reference = triangle_set(&configs[0]);
            assert_eq!(reference.len(), 3 * n * (n + 1));
            for config in &configs {
                assert_eq!(lozenges(config).len(), expected_tiles, "order {n}");
                // every configuration tiles the same region, with no overlap
                assert_eq!(triangle_set(config), reference, "order {n}");
            }
        }
    }

    #[test]
    fn general_ensembles_tile_a_fixed_region_too() {
        for spec in [
            EnsembleSpec::new(2, vec![2, 3]).unwrap(),
            EnsembleSpec::new(4, vec![3, 5]).unwrap(),
        ] {
            let configs = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap();
            let reference = triangle_set(&configs[0]);
            for config in &configs {
                assert_eq!(triangle_set(config), reference);
            }
        }
    }

    #[test]
    fn paths_ascii_round_trip() {
        let spec = EnsembleSpec::half_hexagon(3);
        for seed in 0..6 {
            let config = spec.sample(seed);
            let text = render_ascii(&config, RenderMode::Paths);
            assert_eq!(parse_paths_ascii(&text).unwrap(), config);
        }
    }

    #[test]
    fn lozenge_ascii_shape() {
        let spec = EnsembleSpec::half_hexagon(1);
        let config = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap()[0].clone();
        // config (1, 1, 2): stay tick 0, occupation row at t=1, jump tick 1.
        assert_eq!(render_ascii(&config, RenderMode::Lozenges), "|\no=\n/.\n");
    }

    #[test]
    fn svg_emits_one_polygon_per_tile() {
        let spec = EnsembleSpec::half_hexagon(2);
        let config = spec.sample(5);
        let svg = render_svg(&config, RenderMode::Lozenges);
        assert_eq!(svg.matches("<polygon").count(), 9); // 3*2*3/2
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        let paths = render_svg(&config, RenderMode::Paths);
        assert_eq!(paths.matches("<polyline").count(), 2);
    }

    #[test]
    fn renders_are_deterministic() {
        let config = EnsembleSpec::half_hexagon(4).sample(9);
        assert_eq!(
            render_svg(&config, RenderMode::Lozenges),
            render_svg(&config, RenderMode::Lozenges)
        );
        assert_eq!(
            render_ascii(&config, RenderMode::Paths),
            render_ascii(&config, RenderMode::Paths)
        );
    }
}
