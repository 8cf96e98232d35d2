//! A unit-step enumeration of the half-plane grid Z × N that fills each
//! ℓ^∞-ball around the origin before leaving it.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("a path needs at least one cell")]
    EmptyPath,
}

pub type Cell = (i64, u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPath {
    cells: Vec<Cell>,
}

impl GridPath {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn into_cells(self) -> Vec<Cell> {
        self.cells
    }
}

/// Number of cells with max(|x|, y) ≤ r.
pub fn ball_size(r: u64) -> u64 {
    (2 * r + 1) * (r + 1)
}

/// Infinite enumeration. Shell r is the U of cells at ℓ^∞-distance r: up
/// one side, across the top, down the other. Odd shells run left to right,
/// even shells right to left, so each shell starts next to where the last
/// one ended.
#[derive(Clone, Debug, Default)]
pub struct Snake {
    r: u64,
    step: u64,
}

impl Snake {
    pub fn new() -> Self {
        Snake::default()
    }
}

impl Iterator for Snake {
    type Item = Cell;

    fn next(&mut self) -> Option<Cell> {
        if self.step == 4 * self.r + 1 {
            self.r += 1;
            self.step = 0;
        }
        let (r, s) = (self.r as i64, self.step as i64);
        self.step += 1;
        // walk the U from the left foot to the right foot
        let (x, y) = if s <= r {
            (-r, s)
        } else if s < 3 * r {
            (s - 2 * r, r)
        } else {
            (r, 4 * r - s)
        };
        let x = if self.r.is_multiple_of(2) { -x } else { x };
        Some((x, y as u64))
    }
}

pub fn snake_bijection(count: usize) -> Result<GridPath, ConstructionError> {
    if count == 0 {
        return Err(ConstructionError::EmptyPath);
    }
    Ok(GridPath {
        cells: Snake::new().take(count).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_cells() {
        assert_eq!(snake_bijection(1).unwrap().cells(), &[(0, 0)]);
        assert_eq!(
            snake_bijection(7).unwrap().cells(),
            &[(0, 0), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (2, 0)]
        );
        assert!(snake_bijection(0).is_err());
    }

    #[test]
    fn shells_fill_balls() {
        let path = snake_bijection(ball_size(3) as usize).unwrap();
        for r in 0..=3u64 {
            let n = ball_size(r) as usize;
            assert!(path.cells()[..n]
                .iter()
                .all(|&(x, y)| x.unsigned_abs().max(y) <= r));
        }
    }
}
