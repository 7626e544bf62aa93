//! Rectangle subdivision: squarified treemap and the slice-and-dice
//! baseline it is measured against.

use alloc::vec::Vec;

use super::Rect;

/// Splits `rect` into one rectangle per weight, areas proportional to the
/// weights. Weights are laid out in the given order (callers sort them
/// descending); the result is index-aligned with `weights`.
///
/// Rows are filled along the shorter side of the remaining space for as long
/// as adding the next item does not worsen the row's worst aspect ratio.
pub fn squarify(weights: &[f64], rect: Rect) -> Vec<Rect> {
    let total: f64 = weights.iter().sum();
    if weights.is_empty() {
        return Vec::new();
    }
    if total.is_nan() || total <= 0.0 {
        return slice_and_dice(weights, rect);
    }
    let scale = rect.area() / total;
    let areas: Vec<f64> = weights.iter().map(|w| w * scale).collect();

    let mut out = Vec::with_capacity(areas.len());
    let mut free = rect;
    let mut start = 0;
    while start < areas.len() {
        let side = free.w.min(free.h);
        let mut end = start + 1;
        let mut current = worst(&areas[start..end], side);
        while end < areas.len() {
            let next = worst(&areas[start..=end], side);
            if next > current {
                break;
            }
            current = next;
            end += 1;
        }
        let rest: f64 = weights[start..].iter().sum();
        free = lay_row(&weights[start..end], rest, free, &mut out);
        start = end;
    }
    out
}

/// Worst aspect ratio of a row of `areas` laid along a side of length `side`.
fn worst(areas: &[f64], side: f64) -> f64 {
    let sum: f64 = areas.iter().sum();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &a in areas {
        lo = lo.min(a);
        hi = hi.max(a);
    }
    let s2 = sum * sum;
    let side2 = side * side;
    (side2 * hi / s2).max(s2 / (side2 * lo))
}

/// Places one row against the shorter side of `free` and returns the space
/// left over. `rest` is the weight still to be placed, this row included;
/// the row takes that share of the free space so rounding never runs it dry.
fn lay_row(row: &[f64], rest: f64, free: Rect, out: &mut Vec<Rect>) -> Rect {
    let row_weight: f64 = row.iter().sum();
    let share = if row_weight >= rest {
        1.0
    } else {
        row_weight / rest
    };
    let n = row.len();
    if free.w >= free.h {
        // Column on the left edge, items stacked bottom to top.
        let thick = free.w * share;
        let mut y = free.y;
        for (i, w) in row.iter().enumerate() {
            let y1 = if i + 1 == n {
                free.y + free.h
            } else {
                y + free.h * w / row_weight
            };
            out.push(Rect::new(free.x, y, thick, y1 - y));
            y = y1;
        }
        Rect::new(free.x + thick, free.y, free.w - thick, free.h)
    } else {
        // Row on the bottom edge, items left to right.
        let thick = free.h * share;
        let mut x = free.x;
        for (i, w) in row.iter().enumerate() {
            let x1 = if i + 1 == n {
                free.x + free.w
            } else {
                x + free.w * w / row_weight
            };
            out.push(Rect::new(x, free.y, x1 - x, thick));
            x = x1;
        }
        Rect::new(free.x, free.y + thick, free.w, free.h - thick)
    }
}

/// One-level slice-and-dice: parallel strips across the longer side.
pub fn slice_and_dice(weights: &[f64], rect: Rect) -> Vec<Rect> {
    let total: f64 = weights.iter().sum();
    let n = weights.len();
    let share = |w: f64| {
        if total > 0.0 {
            w / total
        } else {
            1.0 / n as f64
        }
    };
    let mut out = Vec::with_capacity(n);
    let mut at = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        let next = if i + 1 == n { 1.0 } else { at + share(w) };
        if rect.w >= rect.h {
            let x0 = rect.x + rect.w * at;
            let x1 = if i + 1 == n {
                rect.x + rect.w
            } else {
                rect.x + rect.w * next
            };
            out.push(Rect::new(x0, rect.y, x1 - x0, rect.h));
        } else {
            let y0 = rect.y + rect.h * at;
            let y1 = if i + 1 == n {
                rect.y + rect.h
            } else {
                rect.y + rect.h * next
            };
            out.push(Rect::new(rect.x, y0, rect.w, y1 - y0));
        }
        at = next;
    }
    out
}

/// Mean of `max(w/h, h/w)` over `rects`.
pub fn mean_aspect(rects: &[Rect]) -> f64 {
    if rects.is_empty() {
        return 1.0;
    }
    rects.iter().map(|r| r.aspect()).sum::<f64>() / rects.len() as f64
}
