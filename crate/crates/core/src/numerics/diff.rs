//! Central finite differences.

/// Five-point central difference, truncation error `O(h^4)`.
pub fn five_point<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Five-point central difference with one Richardson step (`h` and `h/2`).
///
/// The leading `h^4` term cancels, so the truncation error is `O(h^6)`.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let coarse = five_point(&f, x, h);
    let fine = five_point(&f, x, 0.5 * h);
    (16.0 * fine - coarse) / 15.0
}
