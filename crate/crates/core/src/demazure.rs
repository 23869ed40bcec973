//! Demazure roots of a full-dimensional lattice cone.
//!
//! For a cone `G` of full dimension in `M_Q`, a lattice point `e` of `M` is a
//! Demazure root for the dual ray `rho` when `<rho, e> = -1` and `e` pairs
//! nonnegatively with every other dual ray. Root sets are infinite as soon as
//! `rk M >= 2`, so [`RootCone::roots_in_box`] only lists the part inside a
//! sup-norm box; membership via [`RootCone::classify`] is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{primitive, IntegerMatrix, LatticeVector, Sublattice};

/// Sup-norm bound used to truncate root enumeration.
///
/// Coordinates are the ambient ones in which the weights are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SearchBox {
    bound: u32,
}

impl SearchBox {
    pub const DEFAULT_BOUND: u32 = 5;

    pub fn new(bound: u32) -> Self {
        SearchBox { bound }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.sup_norm() <= BigInt::from(self.bound)
    }

    /// All points of `[-bound, bound]^rank` in lexicographic order.
    pub fn points(&self, rank: usize) -> BoxPoints {
        BoxPoints {
            bound: self.bound as i64,
            current: (rank > 0).then(|| vec![-(self.bound as i64); rank]),
            empty_rank: rank == 0,
        }
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox::new(Self::DEFAULT_BOUND)
    }
}

/// Odometer over the lattice points of a box.
pub struct BoxPoints {
    bound: i64,
    current: Option<Vec<i64>>,
    empty_rank: bool,
}

impl Iterator for BoxPoints {
    type Item = LatticeVector;

    fn next(&mut self) -> Option<LatticeVector> {
        if self.empty_rank {
            self.empty_rank = false;
            return Some(LatticeVector::zero(0));
        }
        let cur = self.current.as_mut()?;
        let out = LatticeVector::from_i64s(cur);
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -self.bound;
        }
        Some(out)
    }
}

/// A Demazure root together with its distinguished dual ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DemazureRoot {
    /// The root in ambient coordinates.
    pub weight: LatticeVector,
    /// The root in coordinates of the lattice basis.
    pub coords: LatticeVector,
    /// Dual ray with `<rho, coords> = -1`, in the dual basis.
    pub rho: LatticeVector,
}

/// A full-dimensional cone in a lattice `M` embedded in an ambient lattice,
/// with its dual rays precomputed.
#[derive(Clone, Debug)]
pub struct RootCone {
    lattice: Sublattice,
    cone: Cone,
    rays: Vec<LatticeVector>,
}

impl RootCone {
    /// `cone` is given in coordinates of the lattice basis and must be
    /// full-dimensional there.
    pub fn new(lattice: Sublattice, cone: Cone) -> Result<Self> {
        check_dim(lattice.rank(), cone.ambient_rank())?;
        let rays = cone.dual_rays()?.into_vec();
        Ok(RootCone { lattice, cone, rays })
    }

    /// Builds the root cone from a cone and a basis of `M`, both in ambient
    /// coordinates.
    pub fn from_ambient(g_cone: &Cone, m_basis: &IntegerMatrix) -> Result<Self> {
        check_dim(g_cone.ambient_rank(), m_basis.col_count())?;
        let lattice = Sublattice::new(m_basis.clone())?;
        let mut gens = Vec::with_capacity(g_cone.generators().len());
        for g in g_cone.generators() {
            let c = lattice
                .rational_coords(g)
                .and_then(|c| c.ray_representative())
                .ok_or_else(|| Error::Structure(format!("generator {g} is outside the span of {m_basis}")))?;
            gens.push(c);
        }
        let cone = Cone::new(lattice.rank(), gens)?;
        if !cone.is_full_dimensional() {
            return Err(Error::Structure(format!("{g_cone} is not full-dimensional in the span of {m_basis}")));
        }
        Self::new(lattice, cone)
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    /// The cone in lattice coordinates.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Dual rays in the dual basis, sorted lexicographically.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn has_ray(&self, rho: &LatticeVector) -> bool {
        self.rays.binary_search(rho).is_ok()
    }

    /// Classifies a point given in lattice coordinates.
    pub fn classify_coords(&self, coords: &LatticeVector) -> Option<DemazureRoot> {
        if coords.rank() != self.lattice.rank() {
            return None;
        }
        let minus_one = -BigInt::one();
        let mut found: Option<&LatticeVector> = None;
        for rho in &self.rays {
            let p = rho.dot(coords);
            if p == minus_one && found.is_none() {
                found = Some(rho);
            } else if p.is_negative() {
                return None;
            }
        }
        found.map(|rho| DemazureRoot { weight: self.lattice.embed(coords), coords: coords.clone(), rho: rho.clone() })
    }

    /// Classifies an ambient point; `None` if it is outside `M` or not a root.
    pub fn classify(&self, e: &LatticeVector) -> Option<DemazureRoot> {
        self.lattice.coords(e).and_then(|c| self.classify_coords(&c))
    }

    /// All roots inside the box, grouped by dual ray; each group sorted by weight.
    pub fn roots_in_box(&self, bx: SearchBox) -> BTreeMap<LatticeVector, Vec<DemazureRoot>> {
        let mut out: BTreeMap<LatticeVector, Vec<DemazureRoot>> =
            self.rays.iter().map(|r| (r.clone(), Vec::new())).collect();
        for p in bx.points(self.lattice.ambient_rank()) {
            if let Some(root) = self.classify(&p) {
                out.get_mut(&root.rho).expect("ray listed").push(root);
            }
        }
        out
    }

    /// Roots for one dual ray inside the box, sorted by weight.
    pub fn roots_for_ray(&self, rho: &LatticeVector, bx: SearchBox) -> Result<Vec<DemazureRoot>> {
        if !self.has_ray(rho) {
            return Err(Error::Domain(format!("{rho} is not a dual ray")));
        }
        Ok(bx.points(self.lattice.ambient_rank()).filter_map(|p| self.classify(&p)).filter(|r| &r.rho == rho).collect())
    }

    /// The pairing of a dual-basis form with an ambient point of `M_Q`, if integral.
    pub fn pair(&self, rho: &LatticeVector, v: &LatticeVector) -> Option<BigInt> {
        self.lattice.coords(v).map(|c| rho.dot(&c))
    }
}

/// Classifies `e` as a Demazure root of the dual of `g_cone`.
///
/// `g_cone`, `m_basis` and `e` are in ambient coordinates; `g_cone` must be
/// full-dimensional in the span of `m_basis`. Points outside `M` and
/// non-roots yield `None`.
pub fn classify_root(g_cone: &Cone, m_basis: &IntegerMatrix, e: &LatticeVector) -> Result<Option<DemazureRoot>> {
    check_dim(g_cone.ambient_rank(), e.rank())?;
    Ok(RootCone::from_ambient(g_cone, m_basis)?.classify(e))
}

/// Demazure roots inside the box, grouped by dual ray.
///
/// Complete only within the box: every root set is infinite when `rk M >= 2`.
pub fn enumerate_roots(
    g_cone: &Cone,
    m_basis: &IntegerMatrix,
    bx: SearchBox,
) -> Result<BTreeMap<LatticeVector, Vec<LatticeVector>>> {
    let rc = RootCone::from_ambient(g_cone, m_basis)?;
    Ok(rc
        .roots_in_box(bx)
        .into_iter()
        .map(|(rho, roots)| (rho, roots.into_iter().map(|r| r.weight).collect()))
        .collect())
}

/// Witness for the infinitude of `R_rho(E) ∩ G~` when `G ⊆ G~` and `rho` is
/// a dual ray of `G` outside the dual of `G~`.
///
/// Both cones live in the same lattice coordinates (`M = Z^r`). Returns a
/// lattice point `v` of `G` on the facet of `rho`, strictly positive on the
/// other dual rays, and the least `k0 >= 0` with `e0 + k v ∈ G~` for all
/// `k >= k0`.
pub fn subcone_witness(
    g: &Cone,
    g_tilde: &Cone,
    rho: &LatticeVector,
    e0: &DemazureRoot,
) -> Result<(LatticeVector, u64)> {
    let r = g.ambient_rank();
    check_dim(r, g_tilde.ambient_rank())?;
    check_dim(r, rho.rank())?;
    check_dim(r, e0.coords.rank())?;
    if !g.is_full_dimensional() || !g_tilde.is_full_dimensional() {
        return Err(Error::Domain("both cones must be full-dimensional".into()));
    }
    if !g_tilde.contains_cone(g)? {
        return Err(Error::Domain(format!("{g} is not contained in {g_tilde}")));
    }
    let rays = g.dual_rays()?;
    if !rays.contains(rho) {
        return Err(Error::Domain(format!("{rho} is not a dual ray of {g}")));
    }
    let tilde_dual = g_tilde.dual_cone();
    if tilde_dual.contains_point(rho)? {
        return Err(Error::Domain(format!("{rho} lies in the dual of {g_tilde}")));
    }
    let rc = RootCone::new(Sublattice::full(r), g.clone())?;
    match rc.classify_coords(&e0.coords) {
        Some(root) if &root.rho == rho => {}
        _ => return Err(Error::Domain(format!("{} is not a Demazure root for {rho}", e0.coords))),
    }

    let facet: Vec<&LatticeVector> = g.generators().iter().filter(|x| rho.dot(x).is_zero()).collect();
    let facet_sum = facet.iter().fold(LatticeVector::zero(r), |acc, x| &acc + *x);
    // A zero sum means the facet is a linear subspace, so `g` is a half-space
    // and any facet direction will do.
    let v = match primitive(&facet_sum) {
        Ok(v) => v,
        Err(_) => facet.first().map(|x| (*x).clone()).unwrap_or_else(|| LatticeVector::zero(r)),
    };
    for other in rays.iter().filter(|x| *x != rho) {
        if !other.dot(&v).is_positive() {
            return Err(Error::Consistency(format!("{v} is not interior to the facet of {rho}")));
        }
    }

    // Upper bound from the inequalities of G~, then the exact smallest k.
    let mut bound = BigInt::zero();
    for q in tilde_dual.generators() {
        let qe = q.dot(&e0.coords);
        let qv = q.dot(&v);
        if qe.is_negative() {
            if !qv.is_positive() {
                return Err(Error::Consistency(format!("{v} does not push {} into {g_tilde}", e0.coords)));
            }
            let need = (-qe + &qv - 1u32) / &qv;
            bound = bound.max(need);
        }
    }
    let bound = bound.to_u64().ok_or_else(|| Error::Consistency("witness shift does not fit in u64".into()))?;
    let at = |k: u64| e0.coords.add_scaled(&BigInt::from(k), &v);
    let k0 = (0..=bound)
        .find(|&k| g_tilde.contains_point(&at(k)).unwrap_or(false))
        .ok_or_else(|| Error::Consistency("no shift found below the analytic bound".into()))?;
    for k in [k0, k0 + 1] {
        let p = at(k);
        let ok = g_tilde.contains_point(&p)? && rc.classify_coords(&p).is_some_and(|x| &x.rho == rho);
        if !ok {
            return Err(Error::Consistency(format!("{p} fails the witness check")));
        }
    }
    Ok((v, k0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    fn so3_cone() -> (Cone, IntegerMatrix) {
        let gens = vec![lv![1, -1], lv![0, -2]];
        let basis = Sublattice::from_generators(&gens, 2).unwrap().basis().clone();
        (Cone::new(2, gens).unwrap(), basis)
    }

    #[test]
    fn box_points_are_lexicographic() {
        let pts: Vec<_> = SearchBox::new(1).points(2).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], lv![-1, -1]);
        assert_eq!(pts[1], lv![-1, 0]);
        assert_eq!(pts[8], lv![1, 1]);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SearchBox::new(0).points(3).collect::<Vec<_>>(), vec![lv![0, 0, 0]]);
        assert_eq!(SearchBox::new(2).points(0).count(), 1);
    }

    #[test]
    fn classify_in_orthant() {
        let g = Cone::orthant(2);
        let id = IntegerMatrix::identity(2);
        let r = classify_root(&g, &id, &lv![-1, 3]).unwrap().unwrap();
        assert_eq!(r.rho, lv![1, 0]);
        assert_eq!(classify_root(&g, &id, &lv![-1, -1]).unwrap(), None);
        assert_eq!(classify_root(&g, &id, &lv![0, 0]).unwrap(), None);
    }

    #[test]
    fn classify_so3() {
        let (g, basis) = so3_cone();
        let r = classify_root(&g, &basis, &lv![0, 2]).unwrap().unwrap();
        assert_eq!(r.coords, lv![0, 1]);
        // not in M
        assert_eq!(classify_root(&g, &basis, &lv![0, 1]).unwrap(), None);
    }

    #[test]
    fn non_full_dimensional_rejected() {
        let g = Cone::new(2, vec![lv![1, 0]]).unwrap();
        let id = IntegerMatrix::identity(2);
        assert!(matches!(classify_root(&g, &id, &lv![0, -1]), Err(Error::Structure(_))));
    }

    #[test]
    fn enumerate_orthant() {
        let roots = enumerate_roots(&Cone::orthant(2), &IntegerMatrix::identity(2), SearchBox::new(2)).unwrap();
        assert_eq!(roots[&lv![1, 0]], vec![lv![-1, 0], lv![-1, 1], lv![-1, 2]]);
        assert_eq!(roots[&lv![0, 1]], vec![lv![0, -1], lv![1, -1], lv![2, -1]]);
    }

    #[test]
    fn enumerate_rank_one() {
        let roots = enumerate_roots(&Cone::orthant(1), &IntegerMatrix::identity(1), SearchBox::new(4)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[&lv![1]], vec![lv![-1]]);
    }

    #[test]
    fn so3_dominant_roots() {
        let (g, basis) = so3_cone();
        let roots = enumerate_roots(&g, &basis, SearchBox::new(4)).unwrap();
        let dominant: Vec<LatticeVector> =
            roots.values().flatten().filter(|e| !e.coords()[0].is_negative()).cloned().collect();
        let expected: Vec<LatticeVector> = (0..=4).map(|k| lv![k, 2 - k]).collect();
        assert_eq!(dominant, expected);
    }

    #[test]
    fn witness_trivial_shift() {
        // G = orthant, G~ = half-plane x1 >= 0 (dual of the ray rho_1)
        let g = Cone::orthant(2);
        let g_tilde = Cone::new(2, vec![lv![1, 0], lv![0, 1], lv![0, -1]]).unwrap();
        let rc = RootCone::new(Sublattice::full(2), g.clone()).unwrap();
        let e0 = rc.classify(&lv![0, -1]).unwrap();
        let (v, k0) = subcone_witness(&g, &g_tilde, &lv![0, 1], &e0).unwrap();
        assert_eq!(v, lv![1, 0]);
        assert_eq!(k0, 0);
    }

    #[test]
    fn witness_needs_shift() {
        let g = Cone::orthant(2);
        // G~ = {x >= 0, x + y >= 0}
        let g_tilde = Cone::new(2, vec![lv![0, 1], lv![1, -1]]).unwrap();
        let rc = RootCone::new(Sublattice::full(2), g.clone()).unwrap();
        let e0 = rc.classify(&lv![0, -1]).unwrap();
        let (v, k0) = subcone_witness(&g, &g_tilde, &lv![0, 1], &e0).unwrap();
        assert_eq!(v, lv![1, 0]);
        assert_eq!(k0, 1);
        let e0 = rc.classify(&lv![3, -1]).unwrap();
        assert_eq!(subcone_witness(&g, &g_tilde, &lv![0, 1], &e0).unwrap().1, 0);
    }

    #[test]
    fn witness_preconditions() {
        let g = Cone::orthant(2);
        let g_tilde = Cone::new(2, vec![lv![1, 0], lv![0, 1], lv![0, -1]]).unwrap();
        let fake = DemazureRoot { weight: lv![-1, -1], coords: lv![-1, -1], rho: lv![0, 1] };
        assert!(matches!(subcone_witness(&g, &g_tilde, &lv![0, 1], &fake), Err(Error::Domain(_))));
        // rho_1 lies in the dual of G~
        let rc = RootCone::new(Sublattice::full(2), g.clone()).unwrap();
        let e1 = rc.classify(&lv![-1, 0]).unwrap();
        assert!(matches!(subcone_witness(&g, &g_tilde, &lv![1, 0], &e1), Err(Error::Domain(_))));
    }
}
