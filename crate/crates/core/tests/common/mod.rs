#![allow(dead_code)]

use std::path::PathBuf;

pub const N_GRID: [usize; 7] = [10, 20, 30, 40, 50, 80, 100];
pub const M_GRID: [usize; 11] = [2, 3, 4, 5, 9, 14, 19, 24, 30, 39, 49];

/// Published critical values at α = 0.05, rows by `M_GRID`, columns by `N_GRID`.
pub const REFERENCE_CRITICAL: [[Option<f64>; 7]; 11] = [
    [
        Some(4.7570),
        Some(3.1388),
        Some(2.2838),
        Some(1.9478),
        Some(1.6402),
        Some(1.1355),
        Some(1.0451),
    ],
    [
        Some(1.4909),
        Some(1.2126),
        Some(0.7925),
        Some(0.6502),
        Some(0.5729),
        Some(0.4235),
        Some(0.3559),
    ],
    [
        Some(0.7064),
        Some(0.6089),
        Some(0.4724),
        Some(0.3841),
        Some(0.3434),
        Some(0.2541),
        Some(0.2121),
    ],
    [
        Some(0.4074),
        Some(0.4252),
        Some(0.3525),
        Some(0.2881),
        Some(0.2396),
        Some(0.1800),
        Some(0.1541),
    ],
    [
        None,
        Some(0.1551),
        Some(0.1703),
        Some(0.1542),
        Some(0.1399),
        Some(0.1039),
        Some(0.0947),
    ],
    [
        None,
        None,
        Some(0.0869),
        Some(0.0973),
        Some(0.1006),
        Some(0.0829),
        Some(0.0731),
    ],
    [
        None,
        None,
        None,
        Some(0.0637),
        Some(0.0722),
        Some(0.0722),
        Some(0.0665),
    ],
    [
        None,
        None,
        None,
        None,
        Some(0.0528),
        Some(0.0639),
        Some(0.0619),
    ],
    [None, None, None, None, None, Some(0.0514), Some(0.0546)],
    [None, None, None, None, None, Some(0.0380), Some(0.0436)],
    [None, None, None, None, None, None, Some(0.0336)],
];

/// Published power against Beta(1, 2) at α = 0.05, same layout.
pub const REFERENCE_POWER_BETA_1_2: [[Option<f64>; 7]; 11] = [
    [
        Some(0.0817),
        Some(0.0966),
        Some(0.0960),
        Some(0.1038),
        Some(0.1137),
        Some(0.1492),
        Some(0.1746),
    ],
    [
        Some(0.1197),
        Some(0.1343),
        Some(0.1558),
        Some(0.1689),
        Some(0.1836),
        Some(0.2522),
        Some(0.2924),
    ],
    [
        Some(0.1546),
        Some(0.1882),
        Some(0.2082),
        Some(0.2302),
        Some(0.2570),
        Some(0.3536),
        Some(0.4467),
    ],
    [
        Some(0.1786),
        Some(0.2370),
        Some(0.2621),
        Some(0.2874),
        Some(0.3359),
        Some(0.4451),
        Some(0.5483),
    ],
    [
        None,
        Some(0.3962),
        Some(0.4360),
        Some(0.4654),
        Some(0.5072),
        Some(0.6540),
        Some(0.7211),
    ],
    [
        None,
        None,
        Some(0.5991),
        Some(0.6221),
        Some(0.6566),
        Some(0.7380),
        Some(0.8187),
    ],
    [
        None,
        None,
        None,
        Some(0.7752),
        Some(0.7734),
        Some(0.8311),
        Some(0.8700),
    ],
    [
        None,
        None,
        None,
        None,
        Some(0.8875),
        Some(0.8829),
        Some(0.9128),
    ],
    [None, None, None, None, None, Some(0.9397), Some(0.9459)],
    [None, None, None, None, None, Some(0.9883), Some(0.9850)],
    [None, None, None, None, None, None, Some(0.9983)],
];

/// Iterates the populated `(n, m, value)` cells of a reference table.
pub fn populated(table: &[[Option<f64>; 7]; 11]) -> Vec<(usize, usize, f64)> {
    let mut cells = Vec::new();
    for (row, &m) in M_GRID.iter().enumerate() {
        for (col, &n) in N_GRID.iter().enumerate() {
            if let Some(v) = table[row][col] {
                cells.push((n, m, v));
            }
        }
    }
    cells
}

pub fn dataset1_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/dataset1.txt")
}

pub fn dataset1() -> Vec<f64> {
    std::fs::read_to_string(dataset1_path())
        .unwrap()
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Direct transcription of the spacing estimator with 1-based order-statistic
/// indices and the raw-moment form. Shares no code with the library.
pub fn brute_force_delta(values: &[f64], m: usize) -> f64 {
    let mut x = values.to_vec();
    // insertion sort, to stay independent of the library's sorting
    for i in 1..x.len() {
        let mut j = i;
        while j > 0 && x[j - 1] > x[j] {
            x.swap(j - 1, j);
            j -= 1;
        }
    }
    let n = x.len();
    let order = |k: i64| -> f64 {
        let k = if k > n as i64 {
            n as i64
        } else if k < 1 {
            1
        } else {
            k
        };
        x[(k - 1) as usize]
    };
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 1..=n as i64 {
        let term = (2.0 * m as f64 / n as f64) / (order(i + m as i64) - order(i - m as i64));
        sum += term;
        sum_sq += term * term;
    }
    sum_sq / (4.0 * n as f64) - 0.25 * (sum / n as f64).powi(2)
}
