//! Bag-size bounds of the chordal and perfect families, and the clique order
//! they force for a given tree-width budget. Integer arithmetic only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Chordal,
    Perfect,
    General,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Chordal => "chordal",
            Family::Perfect => "perfect",
            Family::General => "general",
        }
    }
}

fn check_kr(k: u64, r: u64) -> Result<()> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidParameters(format!(
            "k = {k}, r = {r}; both must be at least 1"
        )));
    }
    Ok(())
}

/// `(k^3 - k)/3 + (r-1)k + 4`, the bag-size bound of the chordal family.
pub fn s_bound(k: u64, r: u64) -> Result<u64> {
    check_kr(k, r)?;
    // k^3 - k = (k-1)k(k+1) is a product of three consecutive integers
    Ok((k * k * k - k) / 3 + (r - 1) * k + 4)
}

/// `2(k^3 - k)/3 + (r-1)k + 6`, the bag-size bound of the perfect family.
pub fn t_bound(k: u64, r: u64) -> Result<u64> {
    check_kr(k, r)?;
    Ok(2 * (k * k * k - k) / 3 + (r - 1) * k + 6)
}

/// Largest `k` with `k^3 <= x`, by binary search.
pub fn integer_cube_root(x: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 2_642_246u64); // 2642246^3 > u64::MAX / 8
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid.checked_pow(3).is_some_and(|c| c <= x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Clique order guaranteed in some part of every chordal (resp. perfect)
/// partition of a graph of tree-width below `t`:
/// `floor((3t - 11)^(1/3))` for chordal (`t >= 4`) and
/// `floor((3t/2 - 8)^(1/3))` for perfect (`t >= 6`).
pub fn theorem_clique_order(family: Family, t: u64) -> Result<u64> {
    let k = match family {
        Family::Chordal => {
            if t < 4 {
                return Err(Error::InvalidParameters(format!(
                    "chordal bound needs t >= 4, got {t}"
                )));
            }
            integer_cube_root(3 * t - 11)
        }
        Family::Perfect => {
            if t < 6 {
                return Err(Error::InvalidParameters(format!(
                    "perfect bound needs t >= 6, got {t}"
                )));
            }
            // k^3 <= 3t/2 - 8  <=>  2k^3 <= 3t - 16
            let mut k = integer_cube_root((3 * t - 16) / 2);
            while 2 * (k + 1).pow(3) <= 3 * t - 16 {
                k += 1;
            }
            k
        }
        Family::General => {
            return Err(Error::InvalidParameters(
                "the general family has no tree-width bound".into(),
            ))
        }
    };
    let bag = match family {
        Family::Chordal => s_bound(k, 1)?,
        _ => t_bound(k, 1)?,
    };
    if bag > t {
        return Err(Error::BadCertificate(format!(
            "k = {k} needs bags of size {bag} > {t}"
        )));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(s_bound(1, 1).unwrap(), 4);
        assert_eq!(s_bound(2, 1).unwrap(), 6);
        assert_eq!(s_bound(2, 2).unwrap(), 8);
        assert_eq!(t_bound(1, 1).unwrap(), 6);
        assert_eq!(t_bound(2, 1).unwrap(), 10);
        assert_eq!(t_bound(2, 2).unwrap(), 12);
        assert!(s_bound(0, 1).is_err());
        assert!(t_bound(1, 0).is_err());
    }

    #[test]
    fn chain_identities_small() {
        for k in 2..=6 {
            for r in 1..=6 {
                assert_eq!(s_bound(k, r + 1).unwrap(), s_bound(k, r).unwrap() + k);
                assert_eq!(t_bound(k, r + 1).unwrap(), t_bound(k, r).unwrap() + k);
            }
            assert_eq!(s_bound(k, 1).unwrap(), s_bound(k - 1, k + 1).unwrap());
            assert_eq!(t_bound(k, 1).unwrap(), t_bound(k - 1, 2 * k + 1).unwrap());
        }
    }

    #[test]
    fn cube_root() {
        assert_eq!(integer_cube_root(0), 0);
        assert_eq!(integer_cube_root(7), 1);
        assert_eq!(integer_cube_root(8), 2);
        assert_eq!(integer_cube_root(103), 4);
        assert_eq!(integer_cube_root(u64::MAX), 2_642_245);
    }

    #[test]
    fn clique_order_examples() {
        assert_eq!(theorem_clique_order(Family::Chordal, 4).unwrap(), 1);
        assert_eq!(theorem_clique_order(Family::Chordal, 38).unwrap(), 4);
        assert_eq!(theorem_clique_order(Family::Perfect, 6).unwrap(), 1);
        assert!(theorem_clique_order(Family::Chordal, 3).is_err());
        assert!(theorem_clique_order(Family::Perfect, 5).is_err());
        // 3t/2 - 8 = 8 exactly at t = 32/3, first integer t with k = 2 is 11 (8.5)
        assert_eq!(theorem_clique_order(Family::Perfect, 10).unwrap(), 1);
        assert_eq!(theorem_clique_order(Family::Perfect, 11).unwrap(), 2);
    }
}
