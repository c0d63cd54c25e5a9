//! Kronecker symbol (a|n), the full extension of the Jacobi symbol to all
//! integer pairs.
//!
//! Conventions: (a|0) = 1 if a = +-1 and 0 otherwise; (a|-1) = sign-dependent;
//! (a|2) = 0 for even a and +-1 according to a mod 8. For a fundamental
//! discriminant a the map n -> (a|n) is the real primitive character of
//! conductor |a|.

/// Kronecker symbol (a|n) in {-1, 0, +1}. Total function.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    // (a|2) factor table: 0 for even a, chi_8(a) otherwise.
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign; // (a|-1) = -1 for a < 0
        }
    }
    // Strip the even part of n, each factor contributing (a|2) = chi_8(a).
    let e = n.trailing_zeros();
    n >>= e;
    if e % 2 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => sign = -sign,
            _ => unreachable!("a odd here"),
        }
    }
    // Jacobi symbol (a|n) with n odd positive, by binary reciprocity.
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 {
            let r = n & 7;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        // Both odd: quadratic reciprocity.
        if a & 3 == 3 && n & 3 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
