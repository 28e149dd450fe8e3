//! Float math that resolves to `std` intrinsics or `libm`, depending on the
//! build. Modules import `FloatExt as _` under `no_std` so call sites keep
//! ordinary method syntax.

#![allow(dead_code)]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt {
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn ceil(self) -> Self;
    fn hypot(self, other: Self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    #[inline]
    fn ceil(self) -> f64 {
        libm::ceil(self)
    }
    #[inline]
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
}
