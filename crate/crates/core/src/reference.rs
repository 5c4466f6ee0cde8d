//! Published reference values, used where recomputation is too slow and as
//! fixtures for tests.

use crate::numeric::ExactInt;

/// `q_7(i, j)`, row `i - 1`, column `j - 1`.
pub const Q7: [[u64; 7]; 7] = [
    [65536, 48729, 40953, 35328, 30208, 24583, 16807],
    [53248, 41243, 35627, 31502, 27662, 23287, 16807],
    [43008, 32728, 29869, 27406, 24924, 21866, 16807],
    [34496, 24660, 22967, 22788, 21866, 20256, 16807],
    [27440, 17712, 16055, 16608, 18138, 18312, 16807],
    [21609, 12096, 10125, 10240, 11875, 15552, 16807],
    [16807, 7776, 5625, 5120, 5625, 7776, 16807],
];

/// Weakly-decreasing `q^d_7(i, j)`.
pub const Q7_DECREASING: [[u64; 7]; 7] = [
    [1, 6, 20, 48, 90, 132, 132],
    [6, 25, 56, 84, 84, 42, 0],
    [20, 56, 81, 70, 28, 0, 0],
    [48, 84, 70, 25, 0, 0, 0],
    [90, 84, 28, 0, 0, 0, 0],
    [132, 42, 0, 0, 0, 0, 0],
    [132, 0, 0, 0, 0, 0, 0],
];

/// Parking functions of length `n` with spot `j` lucky, for `j <= min(n, 6)`.
/// Row `n - 1`.
pub const SPOT_LUCKY: [&[u64]; 10] = [
    &[1],
    &[3, 2],
    &[16, 11, 9],
    &[125, 87, 74, 64],
    &[1296, 908, 783, 708, 625],
    &[16807, 11824, 10266, 9421, 8733, 7776],
    &[262144, 184944, 161221, 148992, 140298, 131632],
    &[4782969, 3381341, 2955366, 2742090, 2600879, 2480787],
    &[100000000, 70805696, 61999923, 57671104, 54921875, 52779840],
    &[
        2357947691, 1671605646, 1465709426, 1365730231, 1303885965, 1258181726,
    ],
];

/// Spot `n - 1` lucky, for `n = 2..=10`.
pub const SUBDIAGONAL: [u64; 9] = [
    3, 11, 74, 708, 8733, 131632, 2342820, 48068672, 1116809255,
];

pub fn spot_lucky_reference(n: usize, j: usize) -> Option<ExactInt> {
    SPOT_LUCKY
        .get(n.checked_sub(1)?)
        .and_then(|row| row.get(j.checked_sub(1)?))
        .map(|&v| ExactInt::from(v))
}

pub fn subdiagonal_reference(n: usize) -> Option<ExactInt> {
    SUBDIAGONAL
        .get(n.checked_sub(2)?)
        .map(|&v| ExactInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(spot_lucky_reference(5, 4), Some(ExactInt::from(708)));
        assert_eq!(spot_lucky_reference(5, 6), None);
        assert_eq!(spot_lucky_reference(0, 1), None);
        assert_eq!(spot_lucky_reference(11, 1), None);
        assert_eq!(subdiagonal_reference(10), Some(ExactInt::from(1116809255u64)));
        assert_eq!(subdiagonal_reference(1), None);
    }

    #[test]
    fn tables_agree_where_they_overlap() {
        let col_sums: Vec<u64> = (0..7).map(|j| Q7.iter().map(|r| r[j]).sum()).collect();
        assert_eq!(&col_sums[..6], SPOT_LUCKY[6]);
        assert_eq!(col_sums[5], SUBDIAGONAL[5]);
        for n in 2..=6 {
            assert_eq!(SPOT_LUCKY[n - 1][n - 2], SUBDIAGONAL[n - 2]);
        }
    }
}
