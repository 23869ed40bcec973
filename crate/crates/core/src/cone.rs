//! Finitely generated rational cones: duality, rays, facets, membership.
//!
//! A [`Cone`] is the set of nonnegative rational combinations of finitely
//! many lattice generators. The dual cone is computed with an exact
//! incremental double description and cached inside the cone value.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{primitive, rank, rref, LatticeVector, RationalVector};

/// Lines and extreme rays of `{q : <q, g> >= 0 for every generator g}`.
#[derive(Debug)]
struct DualData {
    lines: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
}

#[derive(Clone)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<LatticeVector>,
    dual: OnceLock<Arc<DualData>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone").field("ambient_rank", &self.ambient_rank).field("generators", &self.generators).finish()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Primitive extreme rays of a strictly convex cone, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySet {
    rays: Vec<LatticeVector>,
}

impl RaySet {
    pub fn as_slice(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, rho: &LatticeVector) -> bool {
        self.rays.binary_search(rho).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticeVector> {
        self.rays.iter()
    }

    pub fn into_vec(self) -> Vec<LatticeVector> {
        self.rays
    }
}

impl<'a> IntoIterator for &'a RaySet {
    type Item = &'a LatticeVector;
    type IntoIter = std::slice::Iter<'a, LatticeVector>;
    fn into_iter(self) -> Self::IntoIter {
        self.rays.iter()
    }
}

impl Cone {
    /// Generators are made primitive, zero vectors dropped, then sorted and deduplicated.
    pub fn new(ambient_rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_dim(ambient_rank, g.rank())?;
            if !g.is_zero() {
                gens.push(primitive(&g)?);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(Cone { ambient_rank, generators: gens, dual: OnceLock::new() })
    }

    /// The nonnegative orthant of rank `n`.
    pub fn orthant(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| LatticeVector::unit(n, i)).collect()).expect("unit vectors have rank n")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    fn dual_data(&self) -> &DualData {
        self.dual.get_or_init(|| Arc::new(double_description(&self.generators, self.ambient_rank)))
    }

    /// Generators of the dual cone: its extreme rays together with both
    /// directions of every lineality basis vector.
    pub fn dual_cone(&self) -> Cone {
        let d = self.dual_data();
        let mut gens = d.rays.clone();
        for l in &d.lines {
            gens.push(l.clone());
            gens.push(-l);
        }
        Cone::new(self.ambient_rank, gens).expect("dual generators have the ambient rank")
    }

    /// Extreme rays of the dual cone. Requires the cone to be full-dimensional.
    pub fn dual_rays(&self) -> Result<RaySet> {
        if !self.is_full_dimensional() {
            return Err(Error::Structure(format!("{self} is not full-dimensional; its dual is not strictly convex")));
        }
        Ok(RaySet { rays: self.dual_data().rays.clone() })
    }

    pub fn is_full_dimensional(&self) -> bool {
        rank(&self.generators) == self.ambient_rank
    }

    /// True iff the cone contains no line. A cone is strictly convex exactly
    /// when its dual is full-dimensional.
    pub fn is_strictly_convex(&self) -> bool {
        let d = self.dual_data();
        let all: Vec<LatticeVector> = d.rays.iter().chain(&d.lines).cloned().collect();
        rank(&all) == self.ambient_rank
    }

    /// The extreme rays of a strictly convex cone.
    pub fn rays(&self) -> Result<RaySet> {
        if !self.is_strictly_convex() {
            return Err(Error::Structure(format!("{self} is not strictly convex")));
        }
        let d = self.dual_data();
        let target = self.ambient_rank.saturating_sub(1);
        let rays = self
            .generators
            .iter()
            .filter(|g| {
                let tight: Vec<LatticeVector> =
                    d.rays.iter().filter(|q| q.dot(g).is_zero()).chain(&d.lines).cloned().collect();
                rank(&tight) == target
            })
            .cloned()
            .collect();
        Ok(RaySet { rays })
    }

    /// The facet `self ∩ Ker rho` for a ray `rho` of the dual cone.
    pub fn facet_of(&self, rho: &LatticeVector) -> Result<Cone> {
        check_dim(self.ambient_rank, rho.rank())?;
        let rays = self.dual_rays()?;
        if !rays.contains(rho) {
            return Err(Error::Domain(format!("{rho} is not a ray of the dual of {self}")));
        }
        let gens = self.generators.iter().filter(|g| rho.dot(g).is_zero()).cloned().collect();
        Cone::new(self.ambient_rank, gens)
    }

    /// Membership of a rational point.
    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        check_dim(self.ambient_rank, v.rank())?;
        let d = self.dual_data();
        let nonneg = d.rays.iter().all(|q| !v.pair_lattice(q).unwrap().is_negative());
        let on_lines = d.lines.iter().all(|l| v.pair_lattice(l).unwrap().is_zero());
        Ok(nonneg && on_lines)
    }

    /// Membership of a lattice point.
    pub fn contains_point(&self, v: &LatticeVector) -> Result<bool> {
        check_dim(self.ambient_rank, v.rank())?;
        let d = self.dual_data();
        Ok(d.rays.iter().all(|q| !q.dot(v).is_negative()) && d.lines.iter().all(|l| l.dot(v).is_zero()))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        check_dim(self.ambient_rank, other.ambient_rank)?;
        for g in &other.generators {
            if !self.contains_point(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as point sets, independent of the generating sets.
    pub fn same_set(&self, other: &Cone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }
}

/// Exact double description of `{q : <a, q> >= 0 for all a in constraints}`.
fn double_description(constraints: &[LatticeVector], dim: usize) -> DualData {
    let mut lines: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut seen: Vec<LatticeVector> = Vec::new();

    for a in constraints {
        seen.push(a.clone());
        if let Some(idx) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            // A line leaves the lineality space and becomes a ray.
            let mut pivot = lines.remove(idx);
            let mut s = a.dot(&pivot);
            if s.is_negative() {
                pivot = -pivot;
                s = -s;
            }
            let project = |v: LatticeVector| {
                let t = a.dot(&v);
                if t.is_zero() {
                    v
                } else {
                    primitive(&v.scale(&s).add_scaled(&-t, &pivot)).expect("projection of an independent vector")
                }
            };
            lines = lines.into_iter().map(project).collect();
            rays = rays.into_iter().map(project).collect();
            rays.push(pivot);
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let mut next: Vec<LatticeVector> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&vals) {
                if !vp.is_positive() {
                    continue;
                }
                for (n, vn) in rays.iter().zip(&vals) {
                    if !vn.is_negative() {
                        continue;
                    }
                    let combo = n.scale(vp).add_scaled(&-vn, p);
                    if let Ok(c) = primitive(&combo) {
                        next.push(c);
                    }
                }
            }
            rays = next;
        }
        rays = extreme_only(rays, &seen);
    }

    DualData { lines: canonical_lines(&lines, dim), rays: canonical_rays(rays, &lines) }
}

/// Keeps one representative of every minimal proper face of `{q : Aq >= 0}`.
fn extreme_only(candidates: Vec<LatticeVector>, constraints: &[LatticeVector]) -> Vec<LatticeVector> {
    let full = rank(constraints);
    let mut seen_tight: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::new();
    for r in candidates {
        let tight_mask: Vec<bool> = constraints.iter().map(|a| a.dot(&r).is_zero()).collect();
        if seen_tight.contains(&tight_mask) {
            continue;
        }
        let tight: Vec<LatticeVector> =
            constraints.iter().zip(&tight_mask).filter(|(_, &t)| t).map(|(a, _)| a.clone()).collect();
        if full >= 1 && rank(&tight) == full - 1 {
            seen_tight.push(tight_mask);
            out.push(r);
        }
    }
    out
}

fn canonical_lines(lines: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    if lines.is_empty() {
        return Vec::new();
    }
    let rows = lines.iter().map(|l| l.to_rational().coords().to_vec()).collect();
    let (red, _) = rref(rows, dim);
    let mut out: Vec<LatticeVector> =
        red.into_iter().filter_map(|row| RationalVector::new(row).ray_representative()).collect();
    out.sort();
    out
}

/// Projects each ray orthogonally off the lineality space and normalizes it.
fn canonical_rays(rays: Vec<LatticeVector>, lines: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = if lines.is_empty() {
        rays
    } else {
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let k = lines.len();
        rays.into_iter()
            .filter_map(|r| {
                // Solve Gram * c = L r, then r - L^T c.
                let mut sys: Vec<Vec<BigRational>> =
                    (0..k).map(|i| (0..k).map(|j| q(&lines[i].dot(&lines[j]))).collect()).collect();
                for (i, row) in sys.iter_mut().enumerate() {
                    row.push(q(&lines[i].dot(&r)));
                }
                let (red, _) = rref(sys, k + 1);
                let coeffs: Vec<BigRational> = red.iter().map(|row| row[k].clone()).collect();
                let proj: Vec<BigRational> = (0..r.rank())
                    .map(|a| {
                        let shift: BigRational = coeffs.iter().zip(lines).map(|(c, l)| c * q(&l.coords()[a])).sum();
                        q(&r.coords()[a]) - shift
                    })
                    .collect();
                RationalVector::new(proj).ray_representative()
            })
            .collect()
    };
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    fn cone(n: usize, gens: Vec<LatticeVector>) -> Cone {
        Cone::new(n, gens).unwrap()
    }

    fn bar_f1() -> Cone {
        cone(3, vec![lv![1, 0, 0], lv![0, 1, 0], lv![1, 0, -1]])
    }

    #[test]
    fn generators_are_canonical() {
        let c = cone(2, vec![lv![0, 2], lv![3, 0], lv![0, 1], lv![0, 0]]);
        assert_eq!(c.generators(), &[lv![0, 1], lv![1, 0]]);
        assert!(Cone::new(2, vec![lv![1, 0, 0]]).is_err());
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = Cone::orthant(2);
        assert_eq!(c.dual_cone(), Cone::orthant(2));
        assert_eq!(c.rays().unwrap().as_slice(), &[lv![0, 1], lv![1, 0]]);
    }

    #[test]
    fn dual_of_bar_cone() {
        let d = bar_f1().dual_cone();
        assert_eq!(d.generators(), &[lv![0, 0, -1], lv![0, 1, 0], lv![1, 0, 1]]);
        assert_eq!(d.rays().unwrap().as_slice(), &[lv![0, 0, -1], lv![0, 1, 0], lv![1, 0, 1]]);
    }

    #[test]
    fn dual_of_whole_space_is_zero() {
        let c = cone(2, vec![lv![1, 0], lv![0, 1], lv![-1, 0], lv![0, -1]]);
        let d = c.dual_cone();
        assert!(d.generators().is_empty());
        assert!(!c.is_strictly_convex());
        assert!(d.is_strictly_convex());
    }

    #[test]
    fn redundant_generator_is_not_a_ray() {
        let c = cone(2, vec![lv![1, 0], lv![1, 1], lv![0, 1]]);
        assert_eq!(c.rays().unwrap().as_slice(), &[lv![0, 1], lv![1, 0]]);
    }

    #[test]
    fn rays_reject_lines() {
        let c = cone(2, vec![lv![1, 0], lv![-1, 0], lv![0, 1]]);
        assert!(matches!(c.rays(), Err(Error::Structure(_))));
    }

    #[test]
    fn facets() {
        let c = Cone::orthant(2);
        assert_eq!(c.facet_of(&lv![1, 0]).unwrap(), cone(2, vec![lv![0, 1]]));
        let g = bar_f1();
        assert_eq!(g.facet_of(&lv![0, 0, -1]).unwrap(), cone(3, vec![lv![1, 0, 0], lv![0, 1, 0]]));
        assert_eq!(g.facet_of(&lv![0, 1, 0]).unwrap(), cone(3, vec![lv![1, 0, 0], lv![1, 0, -1]]));
        assert!(matches!(g.facet_of(&lv![1, 0, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn membership() {
        let c = Cone::orthant(2);
        assert!(c.contains(&lv![3, 5].to_rational()).unwrap());
        assert!(!c.contains(&lv![-1, 0].to_rational()).unwrap());
        // alpha in bar coordinates pairs to -1 with rho_0
        assert!(!bar_f1().contains_point(&lv![0, 0, 1]).unwrap());
    }

    #[test]
    fn dimension_flags() {
        let c = Cone::orthant(2);
        assert!(c.is_full_dimensional() && c.is_strictly_convex());
        let line = cone(2, vec![lv![1, 0], lv![-1, 0]]);
        assert!(!line.is_full_dimensional());
        assert!(!line.is_strictly_convex());
    }

    #[test]
    fn lower_dimensional_cone_has_dual_lines() {
        let c = cone(3, vec![lv![1, 1, 0], lv![1, -1, 0]]);
        let d = c.dual_cone();
        assert!(d.generators().contains(&lv![0, 0, 1]));
        assert!(d.generators().contains(&lv![0, 0, -1]));
        assert_eq!(c.rays().unwrap().len(), 2);
        assert!(d.dual_cone().same_set(&c).unwrap());
    }

    #[test]
    fn zero_cone() {
        let c = cone(2, vec![]);
        assert!(c.is_strictly_convex());
        assert!(c.rays().unwrap().is_empty());
        assert!(c.contains_point(&lv![0, 0]).unwrap());
        assert!(!c.contains_point(&lv![1, 0]).unwrap());
    }
}
