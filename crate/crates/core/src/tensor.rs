//! Dense 4-D float tensors, the universal value type.
//!
//! Layout is row-major (N, C, H, W). Gradients do not live here: activation
//! gradients are owned by the autograd tape during backward, parameter
//! gradients by [`crate::params::Parameter`].

use crate::error::{FmError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: [usize; 4],
    data: Vec<f32>,
}

impl Tensor {
    pub fn new(shape: [usize; 4], data: Vec<f32>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if data.len() != numel {
            return Err(FmError::config(format!(
                "tensor data length {} does not match shape {:?} (expects {})",
                data.len(),
                shape,
                numel
            )));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: [usize; 4]) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; numel],
        }
    }

    pub fn full(shape: [usize; 4], value: f32) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape,
            data: vec![value; numel],
        }
    }

    pub fn from_fn(shape: [usize; 4], mut f: impl FnMut(usize) -> f32) -> Self {
        let numel: usize = shape.iter().product();
        Tensor {
            shape,
            data: (0..numel).map(&mut f).collect(),
        }
    }

    #[inline]
    pub fn shape(&self) -> [usize; 4] {
        self.shape
    }

    #[inline]
    pub fn numel(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn data(&self) -> &[f32] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn idx(&self, n: usize, c: usize, h: usize, w: usize) -> usize {
        let [_, cs, hs, ws] = self.shape;
        ((n * cs + c) * hs + h) * ws + w
    }

    #[inline]
    pub fn at(&self, n: usize, c: usize, h: usize, w: usize) -> f32 {
        self.data[self.idx(n, c, h, w)]
    }

    #[inline]
    pub fn set(&mut self, n: usize, c: usize, h: usize, w: usize, v: f32) {
        let i = self.idx(n, c, h, w);
        self.data[i] = v;
    }

    /// NaN/Inf anywhere is a numeric error; `what` names the producing op.
    pub fn check_finite(&self, what: &str) -> Result<()> {
        // Exponent bits all-ones <=> Inf or NaN.
        for (i, v) in self.data.iter().enumerate() {
            if (v.to_bits() >> 23) & 0xff == 0xff {
                return Err(FmError::numeric(format!(
                    "{what} produced non-finite value {v} at flat index {i}"
                )));
            }
        }
        Ok(())
    }

    /// Scalar view of a (1,1,1,1) tensor.
    pub fn scalar(&self) -> f32 {
        debug_assert_eq!(self.numel(), 1);
        self.data[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_length_mismatch() {
        assert!(Tensor::new([1, 2, 2, 2], vec![0.0; 7]).is_err());
        assert!(Tensor::new([1, 2, 2, 2], vec![0.0; 8]).is_ok());
    }

    #[test]
    fn indexing_is_row_major() {
        let t = Tensor::from_fn([2, 3, 4, 5], |i| i as f32);
        assert_eq!(t.at(0, 0, 0, 0), 0.0);
        assert_eq!(t.at(0, 0, 0, 1), 1.0);
        assert_eq!(t.at(0, 0, 1, 0), 5.0);
        assert_eq!(t.at(0, 1, 0, 0), 20.0);
        assert_eq!(t.at(1, 0, 0, 0), 60.0);
    }

    #[test]
    fn finite_check_catches_nan_and_inf() {
        let mut t = Tensor::zeros([1, 1, 2, 2]);
        assert!(t.check_finite("x").is_ok());
        t.data_mut()[3] = f32::NAN;
        assert!(t.check_finite("x").is_err());
        t.data_mut()[3] = f32::INFINITY;
        assert!(t.check_finite("x").is_err());
        t.data_mut()[3] = f32::MAX;
        assert!(t.check_finite("x").is_ok());
    }
}
