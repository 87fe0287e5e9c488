//! Axis-aligned pixel rectangles, the unit of all localization.
//!
//! Boxes are half-open: `[x_min, x_max) × [y_min, y_max)`, origin top-left.
//! This makes `area == (x_max - x_min) * (y_max - y_min)` exact and keeps
//! rasterized mask sums integer for integer-coordinate boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl BBox {
    /// Validates finiteness, non-negativity and `min < max` on both axes.
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        let vals = [x_min, y_min, x_max, y_max];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::invariant(None, "box coordinates must be finite"));
        }
        if vals.iter().any(|v| *v < 0.0) {
            return Err(Error::invariant(None, "box coordinates must be >= 0"));
        }
        if x_min >= x_max || y_min >= y_max {
            return Err(Error::invariant(
                None,
                format!("degenerate box ({x_min},{y_min},{x_max},{y_max}): min must be < max"),
            ));
        }
        Ok(BBox {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Center point `(cx, cy)`.
    pub fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    pub fn from_center(cx: f64, cy: f64, w: f64, h: f64) -> Result<Self> {
        BBox::new(cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h)
    }

    /// Intersection area with `other`; 0 when the interiors are disjoint.
    pub fn intersection_area(&self, other: &BBox) -> f64 {
        let w = (self.x_max.min(other.x_max) - self.x_min.max(other.x_min)).max(0.0);
        let h = (self.y_max.min(other.y_max) - self.y_min.max(other.y_min)).max(0.0);
        w * h
    }

    /// True when the box lies fully inside an image of the given dimensions.
    pub fn within(&self, width: u32, height: u32) -> bool {
        self.x_min >= 0.0
            && self.y_min >= 0.0
            && self.x_max <= f64::from(width)
            && self.y_max <= f64::from(height)
    }

    /// Clamp to image bounds. `None` when the clamped box is degenerate
    /// (no interior left inside the image).
    pub fn clamp_to(&self, width: u32, height: u32) -> Option<BBox> {
        let x_min = self.x_min.max(0.0);
        let y_min = self.y_min.max(0.0);
        let x_max = self.x_max.min(f64::from(width));
        let y_max = self.y_max.min(f64::from(height));
        if x_min < x_max && y_min < y_max {
            Some(BBox {
                x_min,
                y_min,
                x_max,
                y_max,
            })
        } else {
            None
        }
    }

    /// Scale both axes (maps between image resolutions).
    pub fn scaled(&self, sx: f64, sy: f64) -> BBox {
        BBox {
            x_min: self.x_min * sx,
            y_min: self.y_min * sy,
            x_max: self.x_max * sx,
            y_max: self.y_max * sy,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_and_negative() {
        assert!(BBox::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(BBox::new(5.0, 0.0, 4.0, 1.0).is_err());
        assert!(BBox::new(-1.0, 0.0, 4.0, 1.0).is_err());
        assert!(BBox::new(f64::NAN, 0.0, 4.0, 1.0).is_err());
        assert!(BBox::new(0.0, 0.0, 4.0, f64::INFINITY).is_err());
    }

    #[test]
    fn area_is_exact_for_half_open_boxes() {
        let b = BBox::new(2.0, 2.0, 4.0, 4.0).unwrap();
        assert_eq!(b.area(), 4.0);
        assert_eq!(b.center(), (3.0, 3.0));
    }

    #[test]
    fn intersection_of_touching_boxes_is_zero() {
        let a = BBox::new(0.0, 0.0, 10.0, 10.0).unwrap();
        let b = BBox::new(10.0, 0.0, 20.0, 10.0).unwrap();
        assert_eq!(a.intersection_area(&b), 0.0);
    }

    #[test]
    fn clamp_drops_boxes_outside_image() {
        let b = BBox::new(50.0, 50.0, 60.0, 60.0).unwrap();
        assert!(b.clamp_to(40, 40).is_none());
        let c = BBox::new(30.0, 30.0, 60.0, 60.0).unwrap();
        let clamped = c.clamp_to(40, 40).unwrap();
        assert_eq!(clamped.x_max, 40.0);
        assert_eq!(clamped.y_max, 40.0);
    }
}
