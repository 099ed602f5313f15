//! Reference tables used by checks and tests.

/// (i, j, numerator minors, denominator minors): ratios equal to x_{i,j} / P_i on BCFW, (3,6).
pub const ROOT_RATIOS_36: &[(usize, usize, &str, &str)] = &[
    (1, 1, "156 234", "134 256"),
    (1, 2, "124 156 345", "134 145 256"),
    (1, 3, "125 456", "145 256"),
    (2, 1, "126 134", "124 136"),
    (2, 2, "123 126 145", "124 125 136"),
    (2, 3, "123 156", "125 136"),
];

/// Same for (4,8).
pub const ROOT_RATIOS_48: &[(usize, usize, &str, &str)] = &[
    (1, 1, "1678 2345", "1345 2678"),
    (1, 2, "1245 1678 3456", "1345 1456 2678"),
    (1, 3, "1256 1678 4567", "1456 1567 2678"),
    (1, 4, "1267 5678", "1567 2678"),
    (2, 1, "1278 1345", "1245 1378"),
    (2, 2, "1235 1278 1456", "1245 1256 1378"),
    (2, 3, "1236 1278 1567", "1256 1267 1378"),
    (2, 4, "1237 1678", "1267 1378"),
    (3, 1, "1238 1245", "1235 1248"),
    (3, 2, "1234 1238 1256", "1235 1236 1248"),
    (3, 3, "1234 1238 1267", "1236 1237 1248"),
    (3, 4, "1234 1278", "1237 1248"),
];

/// Prime-valued planar invariants on K(3,6), lex order of nonfrozen J.
pub const PRIME_ETA_36: &[(&str, i64)] = &[
    ("124", 8087),
    ("125", 8537),
    ("134", 9227),
    ("135", 10247),
    ("136", 11657),
    ("145", 13259),
    ("146", 15277),
    ("235", 17599),
    ("236", 20333),
    ("245", 23321),
    ("246", 26737),
    ("256", 30637),
    ("346", 34679),
    ("356", 39293),
];

/// NC-sum of the shifted prime point.
pub const PRIME_AMPLITUDE_36: &str = "123056338102581409136850198886105885604358154/117823347678612917535483161041113226062939619903306798191335";

/// Shifted invariants on K(3,6): hat(J) = sum c * eta_I.
pub const SHIFT_TABLE_36: &[&str] = &[
    "124 +124 -246 +346 +256 -356",
    "145 +145 -135 +235 +136 -236",
];

/// Shifted invariants on K(3,8), one row per shifted J.
pub const SHIFT_TABLE_38: &[&str] = &[
    "124 +124 -248 +278 +348 -378",
    "125 +125 -258 +278 +358 -378",
    "126 +126 -268 +278 +368 -378",
    "135 +135 -358 +378 +458 -478",
    "136 +136 +278 -368 +468 -578",
    "145 -135 +138 +145 +235 -238",
    "146 -136 +138 +146 +236 -238 -468 +478 +568 -578",
    "147 -137 +138 +147 +237 -238",
    "156 -136 -146 +2*148 +156 +236 -238 +346 -348",
    "157 -137 -147 +2*148 +157 +237 -238 +347 -348",
    "167 -137 -147 +2*148 -157 +158 +167 +237 -238 +347 -348 +457 -458",
    "235 +235 -358 +378 +458 -478",
    "236 +236 -368 +378 +468 -478",
    "246 +246 -468 +478 +568 -578",
    "256 -246 +248 +256 +346 -348",
    "257 -247 +248 +257 +347 -348",
    "267 -247 +248 -257 +258 +267 +347 -348 +457 -458",
    "346 +346 -468 +478 +568 -578",
    "367 -357 +358 +367 +457 -458",
];

/// Lower bounds gamma_J >= c_J cutting out Newt(prod tau) for (3,6), with row sum 7.
pub const TAU_FACETS_36: &[(&str, i64)] = &[
    ("124", 0),
    ("125", 2),
    ("134", 0),
    ("135", 1),
    ("136", 5),
    ("145", 3),
    ("146", 5),
    ("235", 0),
    ("236", 3),
    ("245", 0),
    ("246", 1),
    ("256", 2),
    ("346", 0),
    ("356", 0),
];
pub const TAU_ROW_SUM_36: i64 = 7;

/// Parses one shift-table row into (J, [(coefficient, I)]).
pub fn parse_shift_row(row: &str) -> (Vec<usize>, Vec<(i64, Vec<usize>)>) {
    let mut it = row.split_whitespace();
    let digits = |s: &str| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect::<Vec<_>>();
    let j = digits(it.next().unwrap());
    let terms = it
        .map(|t| {
            let (sign, rest) = t.split_at(1);
            let s = if sign == "-" { -1 } else { 1 };
            match rest.split_once('*') {
                Some((c, i)) => (s * c.parse::<i64>().unwrap(), digits(i)),
                None => (s, digits(rest)),
            }
        })
        .collect();
    (j, terms)
}
