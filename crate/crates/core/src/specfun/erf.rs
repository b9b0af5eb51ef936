use crate::real::Real;

// 1/√2 split as hi + lo with hi = fl(1/√2) for f64.
const INV_SQRT2_LO_F64: f64 = -4.833_646_656_726_457e-17;

/// Gauss Q-function `Q(z) = ½ erfc(z/√2)`.
///
/// The scaling by `1/√2` is carried in two parts and the rounding residue is
/// fed back through `d erfc/dx`, which keeps the relative error near one ulp
/// deep in the tail where `erfc` amplifies argument error by `2x²`.
pub fn gauss_q<T: Real>(z: T) -> T {
    let hi = T::FRAC_1_SQRT_2();
    let lo = T::lit(std::f64::consts::FRAC_1_SQRT_2 - hi.as_f64() + INV_SQRT2_LO_F64);
    let x = z * hi;
    let dx = z.mul_add(hi, -x) + z * lo;
    let two_over_sqrt_pi = T::FRAC_2_SQRT_PI();
    let erfc = x.erfc_kernel() - two_over_sqrt_pi * (-x * x).exp() * dx;
    T::lit(0.5) * erfc
}
