//! Complex-valued grid functions on the unit disk: uniform Cartesian grid
//! over [-1,1]², samples at cell centers, zero outside the disk.
//!
//! Binary layout: header {n: u32 LE, support_radius: f64 LE}, then the
//! row-major samples as little-endian f64 pairs (re, im).

use super::DiskError;
use rustfft::num_complex::Complex64;
use std::io::{Read, Write};

#[derive(Clone, Debug)]
pub struct GridFunction {
    n: usize,
    support_radius: f64,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Cell width.
    pub fn h(&self) -> f64 {
        2.0 / self.n as f64
    }

    /// Center of cell (row, col) as a complex point; rows run along the
    /// imaginary axis.
    pub fn point(&self, row: usize, col: usize) -> Complex64 {
        let h = self.h();
        Complex64::new(-1.0 + (col as f64 + 0.5) * h, -1.0 + (row as f64 + 0.5) * h)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.values[row * self.n + col]
    }

    /// Sample a function on the grid, zeroing everything outside the unit
    /// disk and outside the stated support radius.
    pub fn sample(n: usize, support_radius: f64, f: impl Fn(Complex64) -> Complex64) -> Self {
        assert!(n >= 16, "grid must have at least 16 cells per side");
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        let h = 2.0 / n as f64;
        for row in 0..n {
            for col in 0..n {
                let t =
                    Complex64::new(-1.0 + (col as f64 + 0.5) * h, -1.0 + (row as f64 + 0.5) * h);
                let r = t.norm();
                if r <= 1.0 && r <= support_radius {
                    values[row * n + col] = f(t);
                }
            }
        }
        GridFunction {
            n,
            support_radius,
            values,
        }
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 16);
        GridFunction {
            n,
            support_radius: 1.0,
            values: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub(crate) fn from_values(n: usize, support_radius: f64, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), n * n);
        GridFunction {
            n,
            support_radius,
            values,
        }
    }

    /// L² norm with the cell measure h².
    pub fn l2_norm(&self) -> f64 {
        let h2 = self.h() * self.h();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h2).sqrt()
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction, DiskError> {
        if self.n != other.n {
            return Err(DiskError::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GridFunction {
            n: self.n,
            support_radius: self.support_radius.max(other.support_radius),
            values,
        })
    }

    /// Largest |t| over cells carrying a nonzero sample.
    pub fn support_extent(&self) -> f64 {
        let mut ext: f64 = 0.0;
        for row in 0..self.n {
            for col in 0..self.n {
                if self.get(row, col).norm_sqr() > 0.0 {
                    ext = ext.max(self.point(row, col).norm());
                }
            }
        }
        ext
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), DiskError> {
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.support_radius.to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self, DiskError> {
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let n = u32::from_le_bytes(b4) as usize;
        if !(16..=1 << 20).contains(&n) {
            return Err(DiskError::Malformed(format!(
                "grid size {} out of range",
                n
            )));
        }
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let support_radius = f64::from_le_bytes(b8);
        let mut values = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            r.read_exact(&mut b8)?;
            let re = f64::from_le_bytes(b8);
            r.read_exact(&mut b8)?;
            let im = f64::from_le_bytes(b8);
            values.push(Complex64::new(re, im));
        }
        Ok(GridFunction {
            n,
            support_radius,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_masked_to_the_disk() {
        let g = GridFunction::sample(32, 1.0, |_| Complex64::new(1.0, 0.0));
        for row in 0..32 {
            for col in 0..32 {
                let inside = g.point(row, col).norm() <= 1.0;
                assert_eq!(g.get(row, col).norm() > 0.0, inside);
            }
        }
    }

    #[test]
    fn l2_norm_of_indicator_approximates_disk_area() {
        let g = GridFunction::sample(256, 1.0, |_| Complex64::new(1.0, 0.0));
        let area = g.l2_norm().powi(2);
        assert!((area - std::f64::consts::PI).abs() < 0.05);
    }

    #[test]
    fn binary_roundtrip() {
        let g = GridFunction::sample(16, 0.5, |t| t * t + Complex64::new(0.25, -1.0));
        let mut buf = Vec::new();
        g.write_to(&mut buf).unwrap();
        let back = GridFunction::read_from(&buf[..]).unwrap();
        assert_eq!(back.n(), 16);
        assert_eq!(back.support_radius(), 0.5);
        assert_eq!(back.values(), g.values());
    }

    #[test]
    fn rejects_malformed_header() {
        let buf = [0u8; 8];
        assert!(GridFunction::read_from(&buf[..]).is_err());
    }
}
