//! Small named inputs used by tests, presets and the self-check suite.

use crate::horo::HoroDatum;
use crate::linalg::LatticeVector;
use crate::lv;
use crate::sphrank1::RankOneDatum;
use crate::toricalg::WeightMonoid;

/// `Z^n_{>=0}`, the weight monoid of affine space.
pub fn orthant(n: usize) -> WeightMonoid {
    WeightMonoid::new(n, (0..n).map(|i| LatticeVector::unit(n, i)).collect()).expect("valid generators")
}

/// Monoid generated by `(1, -1)` and `(0, -2)` in coordinates where the
/// first entry is the multiple of `alpha/2`; it spans the lattice of even
/// coordinate sum.
pub fn so3_monoid() -> WeightMonoid {
    WeightMonoid::new(2, vec![lv![1, -1], lv![0, -2]]).expect("valid generators")
}

/// Rank-three datum with `alpha = (2, 0, 0)` and generators `(1, 1, 0)`,
/// `(0, 0, 1)`; it has exactly one G-stable divisor.
pub fn f1() -> RankOneDatum {
    RankOneDatum::new(lv![2, 0, 0], lv![1, 0, 0], vec![lv![1, 1, 0], lv![0, 0, 1]]).expect("toric datum")
}

pub fn f1_horo() -> HoroDatum {
    HoroDatum::from_rank_one(&f1())
}

/// Rank-two datum with `alpha = (2, 0)` and the single generator `(1, 1)`.
pub fn rank_one_line() -> RankOneDatum {
    RankOneDatum::new(lv![2, 0], lv![1, 0], vec![lv![1, 1]]).expect("toric datum")
}
