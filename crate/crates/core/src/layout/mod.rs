//! City geometry.
//!
//! [`plan_city`] turns the folder tree into blocks (one per folder, stacked
//! as plinths by depth) and building footprints (one per file). The plan is
//! computed once from the full history; [`render_scene`] only attaches
//! heights and colors derived from filtered metrics.

pub mod treemap;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::metrics::{FileMetrics, FilterState, FolderTree};

pub const BUILDING_FOOTPRINT: f64 = 1.0;
pub const BUILDING_GAP: f64 = 0.25;
pub const BLOCK_PADDING: f64 = 0.75;
pub const PLINTH_HEIGHT: f64 = 0.25;
pub const HEIGHT_UNIT: f64 = 1.0;
pub const AREA_SLACK: f64 = 1.2;

const CELL: f64 = BUILDING_FOOTPRINT + BUILDING_GAP;
/// Smallest side a file region may be squeezed to before its folder's
/// treemap is re-weighted.
const MIN_REGION_SIDE: f64 = BUILDING_GAP;
const MAX_REWEIGHT_ROUNDS: usize = 200;
/// A folder always asks for at least a square this many times the side its
/// nested padding rings need.
const SIDE_HEADROOM: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayoutError {
    #[error("badness ratio {0} outside [0, 1]")]
    RatioOutOfRange(f64),
    #[error("no metrics for planned building {0}")]
    MissingMetrics(String),
}

/// Axis-aligned rectangle in world units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub const fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn top(&self) -> f64 {
        self.y + self.h
    }

    /// `max(w/h, h/w)`.
    pub fn aspect(&self) -> f64 {
        (self.w / self.h).max(self.h / self.w)
    }

    /// Shrinks every side by `by`, clamping to a zero-size center.
    pub fn inset(&self, by: f64) -> Rect {
        let dx = by.min(self.w / 2.0);
        let dy = by.min(self.h / 2.0);
        Rect::new(
            self.x + dx,
            self.y + dy,
            self.w - 2.0 * dx,
            self.h - 2.0 * dy,
        )
    }
}

/// 24-bit color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const GRAY: Rgb = Rgb(0x80, 0x80, 0x80);
    pub const GREEN: Rgb = Rgb(0x00, 0xFF, 0x00);
    pub const YELLOW: Rgb = Rgb(0xFF, 0xFF, 0x00);
    pub const RED: Rgb = Rgb(0xFF, 0x00, 0x00);

    /// Parses `#RRGGBB`.
    pub fn from_hex(s: &str) -> Option<Rgb> {
        let hex = s.strip_prefix('#')?;
        if hex.len() != 6 || !hex.is_ascii() {
            return None;
        }
        let ch = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).ok();
        Some(Rgb(ch(0)?, ch(2)?, ch(4)?))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

/// Ground plate of one folder.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub path: String,
    pub rect: Rect,
    pub depth: usize,
    pub elevation: f64,
}

/// Filter-independent part of a building: where it stands.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildingSite {
    pub path: String,
    pub rect: Rect,
    pub base: f64,
}

/// Immutable city geometry. Blocks and sites are sorted by path.
#[derive(Debug, Clone, PartialEq)]
pub struct CityPlan {
    pub bounds: Rect,
    pub blocks: Vec<Block>,
    pub sites: Vec<BuildingSite>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Building {
    pub path: String,
    pub rect: Rect,
    pub base: f64,
    pub height: f64,
    pub color: Rgb,
    pub metrics: FileMetrics,
}

/// Plan geometry joined with the heights and colors of one filter.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub bounds: Rect,
    pub blocks: Vec<Block>,
    pub buildings: Vec<Building>,
    pub filter: FilterState,
}

/// `HEIGHT_UNIT * log2(1 + n)`; zero commits give a flat building.
pub fn building_height(active_commit_count: u64) -> f64 {
    if active_commit_count == 0 {
        0.0
    } else {
        HEIGHT_UNIT * libm::log2(1.0 + active_commit_count as f64)
    }
}

/// Green at 0, yellow at 0.5, red at 1, linear in between; gray when the
/// ratio is undefined. Channels are rounded half-up.
pub fn badness_color(ratio: Option<f64>) -> Result<Rgb, LayoutError> {
    let Some(r) = ratio else {
        return Ok(Rgb::GRAY);
    };
    if !(0.0..=1.0).contains(&r) {
        return Err(LayoutError::RatioOutOfRange(r));
    }
    let round = |v: f64| libm::floor(v + 0.5) as u8;
    Ok(if r <= 0.5 {
        Rgb(round(255.0 * r / 0.5), 0xFF, 0)
    } else {
        Rgb(0xFF, round(255.0 * (1.0 - r) / 0.5), 0)
    })
}

/// Side lengths of the nominal building grid for `k` files.
fn grid_dims(k: usize) -> (usize, usize) {
    let cols = libm::ceil(libm::sqrt(k as f64)) as usize;
    let cols = cols.max(1);
    (cols, k.div_ceil(cols))
}

fn files_demand(k: usize) -> f64 {
    let (cols, rows) = grid_dims(k);
    (cols as f64 * CELL) * (rows as f64 * CELL)
}

/// Slot of a treemap child: a subfolder or the folder's own files.
#[derive(Clone, Copy)]
enum Slot {
    Folder(usize),
    Files,
}

struct Planner<'t> {
    tree: &'t FolderTree,
    demand: Vec<f64>,
    min_side: Vec<f64>,
    blocks: Vec<Block>,
    sites: Vec<BuildingSite>,
}

/// Plans the whole city from the folder tree.
///
/// Each folder asks for `AREA_SLACK` times the summed demand of its children
/// plus a `BLOCK_PADDING` ring, but never less than a square `SIDE_HEADROOM`
/// times the side its nested rings need. The root becomes a square of that
/// area and every block's padded interior is split among its subfolders and
/// one file region by squarified treemap; a child left thinner than its
/// rings need is re-weighted and the split redone. Files sit row-major on a
/// near-square grid inside their region, shrinking uniformly when the region
/// is too small.
pub fn plan_city(tree: &FolderTree) -> CityPlan {
    let order = tree.preorder();
    let mut demand = alloc::vec![0.0; tree.folder_count()];
    let mut min_side = alloc::vec![0.0; tree.folder_count()];
    for &i in order.iter().rev() {
        let node = tree.node(i);
        let mut sum: f64 = node.children.iter().map(|&c| demand[c]).sum();
        let mut inner_min: f64 = node
            .children
            .iter()
            .map(|&c| min_side[c])
            .fold(0.0, f64::max);
        if !node.files.is_empty() {
            sum += files_demand(node.files.len());
            inner_min = inner_min.max(MIN_REGION_SIDE);
        }
        min_side[i] = inner_min + 2.0 * BLOCK_PADDING;
        let side =
            (libm::sqrt(AREA_SLACK * sum) + 2.0 * BLOCK_PADDING).max(SIDE_HEADROOM * min_side[i]);
        demand[i] = side * side;
    }
    let side = libm::sqrt(demand[0]);
    let bounds = Rect::new(0.0, 0.0, side, side);
    let mut planner = Planner {
        tree,
        demand,
        min_side,
        blocks: Vec::with_capacity(tree.folder_count()),
        sites: Vec::with_capacity(tree.file_count()),
    };
    planner.place_folder(0, bounds);
    let Planner {
        mut blocks,
        mut sites,
        ..
    } = planner;
    blocks.sort_by(|a, b| a.path.cmp(&b.path));
    sites.sort_by(|a, b| a.path.cmp(&b.path));
    CityPlan {
        bounds,
        blocks,
        sites,
    }
}

impl Planner<'_> {
    fn place_folder(&mut self, index: usize, rect: Rect) {
        let node = self.tree.node(index);
        let elevation = node.depth as f64 * PLINTH_HEIGHT;
        self.blocks.push(Block {
            path: node.path.clone(),
            rect,
            depth: node.depth,
            elevation,
        });

        let mut slots: Vec<(f64, &str, Slot)> = node
            .children
            .iter()
            .map(|&c| {
                (
                    self.demand[c],
                    self.tree.node(c).path.as_str(),
                    Slot::Folder(c),
                )
            })
            .collect();
        if !node.files.is_empty() {
            slots.push((
                files_demand(node.files.len()),
                node.path.as_str(),
                Slot::Files,
            ));
        }
        let inner = rect.inset(BLOCK_PADDING);
        let mut rects;
        let mut round = 0;
        loop {
            slots.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
            let weights: Vec<f64> = slots.iter().map(|s| s.0).collect();
            rects = treemap::squarify(&weights, inner);
            // The child most squeezed below the side its own padding rings
            // need gets more weight and the rows are laid out again.
            let mut worst: Option<(usize, f64)> = None;
            for (k, (slot, r)) in slots.iter().zip(&rects).enumerate() {
                let need = match slot.2 {
                    Slot::Folder(c) => self.min_side[c],
                    Slot::Files => MIN_REGION_SIDE,
                };
                let deficit = need / r.w.min(r.h);
                if deficit > 1.0 && worst.is_none_or(|(_, d)| deficit > d) {
                    worst = Some((k, deficit));
                }
            }
            round += 1;
            match worst {
                Some((k, deficit)) if round < MAX_REWEIGHT_ROUNDS => {
                    slots[k].0 *= (deficit * deficit).clamp(1.1, 4.0);
                }
                _ => break,
            }
        }
        for ((_, _, slot), r) in slots.into_iter().zip(rects) {
            match slot {
                Slot::Folder(c) => self.place_folder(c, r),
                Slot::Files => self.place_files(index, r, elevation),
            }
        }
    }

    fn place_files(&mut self, index: usize, region: Rect, base: f64) {
        let files = &self.tree.node(index).files;
        let (cols, rows) = grid_dims(files.len());
        let cell = CELL.min(region.w / cols as f64).min(region.h / rows as f64);
        let footprint = cell * (BUILDING_FOOTPRINT / CELL);
        let margin = (cell - footprint) / 2.0;
        let x0 = region.x + (region.w - cols as f64 * cell) / 2.0;
        let y0 = region.y + (region.h - rows as f64 * cell) / 2.0;
        for (j, path) in files.iter().enumerate() {
            let (row, col) = (j / cols, j % cols);
            self.sites.push(BuildingSite {
                path: path.clone(),
                rect: Rect::new(
                    x0 + col as f64 * cell + margin,
                    y0 + row as f64 * cell + margin,
                    footprint,
                    footprint,
                ),
                base,
            });
        }
    }
}

/// Attaches heights and colors for one filter to the plan's geometry.
pub fn render_scene(
    plan: &CityPlan,
    file_metrics: &BTreeMap<String, FileMetrics>,
    filter: &FilterState,
) -> Result<Scene, LayoutError> {
    let buildings = plan
        .sites
        .iter()
        .map(|site| {
            let m = file_metrics
                .get(&site.path)
                .ok_or_else(|| LayoutError::MissingMetrics(site.path.clone()))?;
            Ok(Building {
                path: site.path.clone(),
                rect: site.rect,
                base: site.base,
                height: building_height(m.commit_count),
                color: badness_color(m.badness().map(|b| b.to_f64()))?,
                metrics: m.clone(),
            })
        })
        .collect::<Result<Vec<_>, LayoutError>>()?;
    Ok(Scene {
        bounds: plan.bounds,
        blocks: plan.blocks.clone(),
        buildings,
        filter: filter.clone(),
    })
}
