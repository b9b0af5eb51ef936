use crate::real::Real;

// 21-point Kronrod abscissae on [-1, 1] (non-negative half). Odd indices are
// the embedded 10-point Gauss nodes; the last entry is the centre.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// One application of the 10/21-point Gauss-Kronrod pair to a panel.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate<T> {
    pub value: T,
    pub error: T,
    /// Integral of |f| over the panel.
    pub abs_value: T,
    /// Integral of |f - mean| over the panel.
    pub asc_value: T,
}

pub(crate) fn gk21<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> PanelEstimate<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_length = half * (b - a);
    let abs_half_length = half_length.abs();

    let fc = f(center);
    let mut result_gauss = T::zero();
    let mut result_kronrod = fc * T::lit(WGK[10]);
    let mut result_abs = result_kronrod.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let abscissa = half_length * T::lit(XGK[jtw]);
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        let fsum = f1 + f2;
        result_gauss = result_gauss + T::lit(WG[j]) * fsum;
        result_kronrod = result_kronrod + T::lit(WGK[jtw]) * fsum;
        result_abs = result_abs + T::lit(WGK[jtw]) * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let abscissa = half_length * T::lit(XGK[jtwm1]);
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod = result_kronrod + T::lit(WGK[jtwm1]) * (f1 + f2);
        result_abs = result_abs + T::lit(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }

    let mean = result_kronrod * half;
    let mut result_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        result_asc = result_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (result_kronrod - result_gauss) * half_length;
    let value = result_kronrod * half_length;
    let abs_value = result_abs * abs_half_length;
    let asc_value = result_asc * abs_half_length;
    PanelEstimate {
        value,
        error: rescale_error(err, abs_value, asc_value),
        abs_value,
        asc_value,
    }
}

/// QUADPACK-style scaling of the raw Kronrod-minus-Gauss difference.
fn rescale_error<T: Real>(err: T, abs_value: T, asc_value: T) -> T {
    let mut scaled = err.abs();
    if asc_value != T::zero() && scaled != T::zero() {
        let scale = (T::lit(200.0) * scaled / asc_value).powf(T::lit(1.5));
        scaled = if scale < T::one() { asc_value * scale } else { asc_value };
    }
    let fifty_eps = T::lit(50.0) * T::epsilon();
    if abs_value > T::min_positive_value() / fifty_eps {
        let floor = fifty_eps * abs_value;
        if floor > scaled {
            scaled = floor;
        }
    }
    scaled
}
