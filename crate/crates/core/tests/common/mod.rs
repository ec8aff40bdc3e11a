//! Independent reference values shared by the integration tests.
#![allow(dead_code)]

use rug::ops::Pow;
use rug::{Integer, Rational};

pub fn q(p: i64, d: i64) -> Rational {
    Rational::from((p, d))
}

pub fn fact(n: u32) -> Integer {
    Integer::factorial(n).into()
}

/// Integer polynomial in ascending order evaluated at `k`.
pub fn poly(coeffs: &[i64], k: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= k;
        acc += *c;
    }
    acc
}

/// `prod (a k + b)` over the listed linear factors.
pub fn linear(factors: &[(i64, i64)], k: &Rational) -> Rational {
    factors.iter().fold(Rational::from(1), |acc, &(a, b)| {
        acc * (Rational::from(a * k) + b)
    })
}

/// `x (x + 1) ... (x + m - 1)` by plain repeated multiplication.
pub fn poch(x: &Rational, m: u32) -> Rational {
    (0..m).fold(Rational::from(1), |acc, i| acc * Rational::from(x + i))
}

/// `Gamma(m)` for a positive integer argument.
pub fn gamma_int(m: u32) -> Rational {
    Rational::from(fact(m - 1))
}

/// `945 * 4^(3 - 2k) Gamma(2k + 2) Gamma(2k + 4) / Gamma(4k + 10)`.
pub fn rebit_det_moment(k: u32) -> Rational {
    let g = gamma_int(2 * k + 2) * gamma_int(2 * k + 4) / gamma_int(4 * k + 10);
    let four = if 2 * k <= 3 {
        Rational::from(Integer::from(4).pow(3 - 2 * k))
    } else {
        Rational::from((1, Integer::from(4).pow(2 * k - 3)))
    };
    g * four * 945
}

/// `108972864000 Gamma(k+1) Gamma(k+2) Gamma(k+3) Gamma(k+4) / Gamma(4k+16)`.
pub fn qubit_det_moment(k: u32) -> Rational {
    (1..=4).fold(Rational::from(108_972_864_000u64), |acc, i| {
        acc * gamma_int(k + i)
    }) / gamma_int(4 * k + 16)
}

/// Rebit numerator columns, ascending powers of `k`, `n = 1..6`.
pub const REBIT_COLUMNS: [&[i64]; 6] = [
    &[-16, 5, 9, 2],
    &[4860, 2940, 709, 368, 203, 48, 4],
    &[
        -3612816, -2516616, -401334, 136801, 84291, 29493, 8559, 1674, 180, 8,
    ],
    &[
        6610161600, 5496485760, 1636873812, 166748972, 6212189, 13904508, 7805462, 2389416, 525681, 84496,
        9112, 576, 16,
    ],
    &[
        -23680812672000,
        -21644930613600,
        -7755993054000,
        -1199508017652,
        -4378482660,
        29246867605,
        7876634465,
        2649513956,
        883461210,
        219916945,
        40679505,
        5660714,
        575800,
        40000,
        1680,
        32,
    ],
    &[
        147885533254368000,
        144374531813568000,
        58524043784903280,
        11977854861441312,
        1052189083196640,
        -30302414250528,
        -6899036908859,
        3583820785224,
        1632448582425,
        477741210624,
        118164517947,
        23817008856,
        3786901675,
        469728096,
        44685468,
        3143808,
        153360,
        4608,
        64,
    ],
];

/// Qubit numerator columns, `n = 1..4`.
pub const QUBIT_COLUMNS: [&[i64]; 4] = [
    &[-42, -1, 6, 1],
    &[10944, 4260, 220, 45, 67, 15, 1],
    &[-6929280, -3684384, -456948, 80168, 27783, 5373, 1458, 282, 27, 1],
    &[
        9247219200, 6039653760, 1342859616, 64072440, -13235252, 1080858, 1160375, 278478, 50991, 7542, 749,
        42, 1,
    ],
];

/// The printed adjustment factors `<|rho|^k |rho^PT|^n> / <|rho|^k>`.
pub fn rebit_n1(k: &Rational) -> Rational {
    Rational::from(k - 1u32) * poly(&[16, 11, 2], k) / linear(&[(0, 32), (1, 3), (4, 11), (4, 13)], k)
}

pub fn rebit_n2(k: &Rational) -> Rational {
    poly(REBIT_COLUMNS[1], k)
        / linear(
            &[(0, 1024), (1, 3), (1, 4), (4, 11), (4, 13), (4, 15), (4, 17)],
            k,
        )
}

pub fn rebit_n3(k: &Rational) -> Rational {
    let a3 = poly(
        &[
            -3612816, -2516616, -401334, 136801, 84291, 29493, 8559, 1674, 180, 8,
        ],
        k,
    );
    let b3 = linear(
        &[
            (0, 32768),
            (1, 3),
            (1, 4),
            (1, 5),
            (4, 11),
            (4, 13),
            (4, 15),
            (4, 17),
            (4, 19),
            (4, 21),
        ],
        k,
    );
    a3 / b3
}

pub fn rebit_n4(k: &Rational) -> Rational {
    let a4 = poly(
        &[
            6610161600, 5496485760, 1636873812, 166748972, 6212189, 13904508, 7805462, 2389416, 525681,
            84496, 9112, 576, 16,
        ],
        k,
    );
    let b4 = Rational::from(Integer::from(128).pow(4))
        * poch(&Rational::from(k + 3u32), 4)
        * poch(&(Rational::from(2 * k) + q(11, 2)), 8);
    a4 / b4
}

pub fn qubit_n1(k: &Rational) -> Rational {
    poly(&[-42, -1, 6, 1], k) / linear(&[(0, 8), (2, 9), (4, 17), (4, 19)], k)
}

pub fn qubit_n2(k: &Rational) -> Rational {
    poly(&[10944, 4260, 220, 45, 67, 15, 1], k)
        / linear(&[(0, 64), (2, 9), (2, 11), (4, 17), (4, 19), (4, 21), (4, 23)], k)
}

/// Unit-interval forms of the first two rebit factors.
pub fn rebit_unit_n1(k: &Rational) -> Rational {
    poly(&[842, 867, 297, 34], k) * 8u32 / linear(&[(0, 17), (1, 3), (4, 11), (4, 13)], k)
}

pub fn rebit_unit_n2(k: &Rational) -> Rational {
    poly(&[1689900, 3048904, 2279781, 904492, 200835, 23664, 1156], k) * 64u32
        / linear(&[(0, 289), (1, 3), (1, 4), (4, 11), (4, 13), (4, 15), (4, 17)], k)
}

/// Conjectured separability probabilities at alpha = 1/2, 1 and 2.
pub fn conjecture(alpha: &Rational) -> Option<Rational> {
    if *alpha == q(1, 2) {
        Some(q(29, 64))
    } else if *alpha == 1 {
        Some(q(8, 33))
    } else if *alpha == 2 {
        Some(q(26, 323))
    } else {
        None
    }
}

/// Reference Gauss rule for `16 |rho^PT|` with 20 nodes.
pub const NODE_TABLE: [(f64, f64); 20] = [
    (-0.9501, 0.2714e-10),
    (-0.9081, 0.1397e-8),
    (-0.8587, 0.2416e-7),
    (-0.8024, 0.2337e-6),
    (-0.7402, 0.1553e-5),
    (-0.6734, 0.7908e-5),
    (-0.6032, 0.3293e-4),
    (-0.5309, 0.1171e-3),
    (-0.4581, 0.3669e-3),
    (-0.3860, 0.1034e-2),
    (-0.3160, 0.2671e-2),
    (-0.2495, 0.6408e-2),
    (-0.1877, 0.1446e-1),
    (-0.1317, 0.3111e-1),
    (-0.08248, 0.6499e-1),
    (-0.04104, 0.1372),
    (-0.008293, 0.3467),
    (0.01040, 0.3440),
    (0.02973, 0.4894e-1),
    (0.04698, 0.1994e-2),
];
