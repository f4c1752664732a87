//! Reference values published for specific fields, used by `verify-lemmas`
//! and the test suites.

/// `(m, r_Q(m), a_E(m))` over `Q(sqrt 17)`, with `w = (1 + sqrt 17) / 2`.
pub const SQRT17_ROWS: [(&str, u64, &str); 7] = [
    ("1", 8, "4/3"),
    ("2", 24, "12"),
    ("2+w", 0, "4"),
    ("11+7*w", 0, "4"),
    ("3", 32, "40/3"),
    ("5", 48, "104/3"),
    ("6", 96, "120"),
];

/// `a_E(1)` over `Q(sqrt 13)`.
pub const SQRT13_A_E_ONE: &str = "8/5";

/// `(a_E(1), a_C(1))` over `Q(sqrt 3)`.
pub const SQRT3_ONE: (&str, &str) = ("4", "4");
