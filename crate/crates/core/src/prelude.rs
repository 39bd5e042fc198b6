#[allow(unused_imports)]
pub(crate) use alloc::{boxed::Box, format, string::String, vec, vec::Vec};
#[allow(unused_imports)]
pub(crate) use core::f64::consts::PI;
pub(crate) use num_complex::Complex64;
#[allow(unused_imports)]
pub(crate) use num_traits::Float;

pub(crate) use crate::error::{Error, Result};

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub(crate) fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
