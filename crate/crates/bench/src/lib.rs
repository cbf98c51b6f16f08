//! Shared inputs for the benchmarks: representative braids on three to
//! five strands.

use hzknot::{BraidWord, Result};

/// `(label, strands, letters)` for the benchmarked closures.
pub const BRAIDS: &[(&str, usize, &[i32])] = &[
    ("4_1", 3, &[1, -2, 1, -2]),
    ("8_17", 3, &[1, 1, -2, 1, -2, 1, -2, -2]),
    ("6_1", 4, &[-1, 2, -3, -1, 2, 3, 3]),
    ("10_132", 4, &[1, 1, 1, -2, -1, -1, -2, -3, 2, -3, -3]),
    ("8_3", 5, &[1, 1, 2, -1, -3, 2, -3, -4, 3, -4]),
];

/// The benchmark braids, parsed.
pub fn braids() -> Result<Vec<(&'static str, BraidWord)>> {
    BRAIDS
        .iter()
        .map(|&(name, m, letters)| Ok((name, BraidWord::new(m, letters.to_vec())?)))
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn benchmark_braids_are_knots() {
        for (name, b) in super::braids().unwrap() {
            assert!(b.is_knot(), "{name}");
        }
    }
}
