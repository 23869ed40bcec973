//! Root subgroups for a reductive group of semisimple rank one acting on an
//! affine spherical variety that is toric for the maximal torus `T`.
//!
//! With `G = SL2 × T'`, simple root `alpha` and coroot `alpha_dual`, the
//! variety is toric for `T` exactly when `alpha ∉ QΓ`. Then the toric weight
//! monoid lives in `M̄ = M ⊕ Zα` and its cone `Ḡ` is spanned by `G ∪ w(G)`.
//! Internally `M̄` is coordinatised by the basis `(m_1, ..., m_r, alpha)` where
//! `m_i` is the Hermite basis of `M`; a form on `M̄` pairs with `alpha` through
//! its last coordinate.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::demazure::{DemazureRoot, RootCone, SearchBox};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{solve_rational, IntegerMatrix, LatticeVector, Sublattice};
use crate::toricalg::{Saturation, ToricLND, WeightMonoid};

/// Outcome of the toric criterion `alpha ∉ QΓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricCheck {
    pub is_toric: bool,
    /// When not toric: rational coefficients writing `alpha` in the generators.
    #[serde(serialize_with = "crate::serde_num::weighted_vectors")]
    pub combination: Vec<(LatticeVector, BigRational)>,
}

impl ToricCheck {
    /// Human-readable combination such as `1*(1, -1) + 1*(1, 1)`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> =
            self.combination.iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| format!("{c}*{g}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Root datum of `SL2 × T'` together with the weight monoid of the variety.
#[derive(Clone, Debug)]
pub struct RankOneDatum {
    ambient_rank: usize,
    alpha: LatticeVector,
    alpha_dual: LatticeVector,
    gamma: WeightMonoid,
}

impl RankOneDatum {
    /// Checks the root datum and dominance of the generators, but not the
    /// toric criterion.
    pub fn unchecked(alpha: LatticeVector, alpha_dual: LatticeVector, generators: Vec<LatticeVector>) -> Result<Self> {
        let n = alpha.rank();
        check_dim(n, alpha_dual.rank())?;
        if alpha_dual.dot(&alpha) != BigInt::from(2) {
            return Err(Error::Domain(format!("<alpha_dual, alpha> = {} but must be 2", alpha_dual.dot(&alpha))));
        }
        for g in &generators {
            check_dim(n, g.rank())?;
            if alpha_dual.dot(g).is_negative() {
                return Err(Error::Domain(format!("generator {g} is not dominant")));
            }
        }
        let gamma = WeightMonoid::new(n, generators)?;
        Ok(RankOneDatum { ambient_rank: n, alpha, alpha_dual, gamma })
    }

    /// As [`RankOneDatum::unchecked`], and additionally requires `alpha ∉ QΓ`.
    pub fn new(alpha: LatticeVector, alpha_dual: LatticeVector, generators: Vec<LatticeVector>) -> Result<Self> {
        let datum = Self::unchecked(alpha, alpha_dual, generators)?;
        let check = datum.check_toric();
        if !check.is_toric {
            return Err(Error::NotToric { combination: check.describe() });
        }
        Ok(datum)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn alpha(&self) -> &LatticeVector {
        &self.alpha
    }

    pub fn alpha_dual(&self) -> &LatticeVector {
        &self.alpha_dual
    }

    pub fn gamma(&self) -> &WeightMonoid {
        &self.gamma
    }

    pub fn check_toric(&self) -> ToricCheck {
        let gens = self.gamma.generators();
        match solve_rational(gens, &self.alpha).expect("dimensions checked at construction") {
            None => ToricCheck { is_toric: true, combination: Vec::new() },
            Some(coeffs) => ToricCheck { is_toric: false, combination: gens.iter().cloned().zip(coeffs).collect() },
        }
    }

    /// `d_λ = <alpha_dual, λ>`.
    pub fn d(&self, lambda: &LatticeVector) -> Result<BigInt> {
        self.alpha_dual.pair(lambda)
    }

    /// `λ ∈ Λ⁺`.
    pub fn is_dominant(&self, lambda: &LatticeVector) -> Result<bool> {
        Ok(!self.d(lambda)?.is_negative())
    }

    /// The simple reflection `λ - <alpha_dual, λ> alpha`.
    pub fn weyl_reflect(&self, lambda: &LatticeVector) -> Result<LatticeVector> {
        let d = self.d(lambda)?;
        Ok(lambda.add_scaled(&-d, &self.alpha))
    }

    /// Builds `M̄`, `Ḡ` and the classified rays of its dual.
    pub fn build_bar(&self) -> Result<BarStructure> {
        BarStructure::new(self.clone())
    }
}

/// Role of a dual ray of `Ḡ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RayRole {
    /// Facet `G`; pairs to -1 with alpha.
    Rho0,
    /// Facet `w(G)`; pairs to +1 with alpha.
    Rho0Prime,
    /// Facet spanned by a w-stable facet of `G`; pairs to 0 with alpha.
    GStable,
}

/// `M̄`, `Ḡ` and the rays of `Ē` with their roles.
#[derive(Clone, Debug)]
pub struct BarStructure {
    datum: RankOneDatum,
    roots: RootCone,
    /// `alpha_dual` in the dual of the bar basis.
    alpha_dual_bar: LatticeVector,
    rho0: LatticeVector,
    rho0p: LatticeVector,
    gstable: Vec<LatticeVector>,
    gbar_monoid: OnceLock<WeightMonoid>,
}

impl BarStructure {
    fn new(datum: RankOneDatum) -> Result<Self> {
        let m = datum.gamma.lattice();
        let r = m.rank();
        let mut rows: Vec<LatticeVector> = m.basis().rows().to_vec();
        rows.push(datum.alpha.clone());
        let lattice = Sublattice::new(IntegerMatrix::new(rows, datum.ambient_rank)?)
            .map_err(|_| Error::Domain("alpha lies in the span of the weight monoid".into()))?;
        let alpha_dual_bar = lattice.restrict_form(&datum.alpha_dual)?;

        let mut base = Vec::new();
        let mut reflected = Vec::new();
        for g in datum.gamma.generators() {
            let c = m.coords(g).expect("generator lies in M");
            let d = datum.d(g)?;
            base.push(c.extend(&[BigInt::zero()]));
            reflected.push(c.extend(&[-d]));
        }
        let g_in_bar = Cone::new(r + 1, base.clone())?;
        let wg_in_bar = Cone::new(r + 1, reflected.clone())?;
        let gbar = Cone::new(r + 1, base.into_iter().chain(reflected).collect())?;
        if !gbar.is_full_dimensional() {
            return Err(Error::Structure(
                "the cone spanned by the weights and their reflections is not full-dimensional; \
                 the weights are all fixed by the reflection"
                    .into(),
            ));
        }
        let roots = RootCone::new(lattice, gbar)?;

        let last = |rho: &LatticeVector| rho.coords()[r].clone();
        let neg: Vec<_> = roots.rays().iter().filter(|x| last(x).is_negative()).cloned().collect();
        let pos: Vec<_> = roots.rays().iter().filter(|x| last(x).is_positive()).cloned().collect();
        let gstable: Vec<_> = roots.rays().iter().filter(|x| last(x).is_zero()).cloned().collect();
        let (rho0, rho0p) = match (neg.as_slice(), pos.as_slice()) {
            ([a], [b]) => (a.clone(), b.clone()),
            _ => {
                return Err(Error::Consistency(format!(
                    "expected one ray negative and one positive on alpha, found {} and {}",
                    neg.len(),
                    pos.len()
                )))
            }
        };
        if last(&rho0) != -BigInt::one() || last(&rho0p) != BigInt::one() {
            return Err(Error::Consistency("distinguished rays do not pair to -1 and +1 with alpha".into()));
        }

        let bar = BarStructure { datum, roots, alpha_dual_bar, rho0, rho0p, gstable, gbar_monoid: OnceLock::new() };
        let gbar = bar.roots.cone();
        if !gbar.facet_of(&bar.rho0)?.same_set(&g_in_bar)? {
            return Err(Error::Consistency("the facet of rho0 differs from the weight cone".into()));
        }
        if !gbar.facet_of(&bar.rho0p)?.same_set(&wg_in_bar)? {
            return Err(Error::Consistency("the facet of rho0' differs from the reflected weight cone".into()));
        }
        let e_rays = bar.datum.gamma.rays();
        for rho in &bar.gstable {
            let facet = gbar.facet_of(rho)?;
            let image: Vec<_> = facet.generators().iter().map(|x| bar.reflect_coords(x)).collect();
            if !Cone::new(r + 1, image)?.same_set(&facet)? {
                return Err(Error::Consistency(format!("the facet of {rho} is not stable under the reflection")));
            }
            let restricted = LatticeVector::new(rho.coords()[..r].to_vec());
            if !e_rays.contains(&restricted) {
                return Err(Error::Consistency(format!("{rho} does not restrict to a ray of the dual weight cone")));
            }
        }
        // rho0' agrees with alpha_dual on M.
        if bar.rho0p.coords()[..r] != bar.alpha_dual_bar.coords()[..r] {
            return Err(Error::Consistency("rho0' does not restrict to alpha_dual on M".into()));
        }
        Ok(bar)
    }

    pub fn datum(&self) -> &RankOneDatum {
        &self.datum
    }

    /// Basis `(m_1, ..., m_r, alpha)` of `M̄` in ambient coordinates.
    pub fn mbar_basis(&self) -> &IntegerMatrix {
        self.roots.lattice().basis()
    }

    pub fn lattice(&self) -> &Sublattice {
        self.roots.lattice()
    }

    /// `Ḡ` in bar coordinates.
    pub fn gbar(&self) -> &Cone {
        self.roots.cone()
    }

    pub fn root_cone(&self) -> &RootCone {
        &self.roots
    }

    /// All rays of `Ē`, sorted.
    pub fn ebar_rays(&self) -> &[LatticeVector] {
        self.roots.rays()
    }

    pub fn rho0(&self) -> &LatticeVector {
        &self.rho0
    }

    pub fn rho0p(&self) -> &LatticeVector {
        &self.rho0p
    }

    pub fn gstable_rays(&self) -> &[LatticeVector] {
        &self.gstable
    }

    pub fn role(&self, rho: &LatticeVector) -> Option<RayRole> {
        if rho == &self.rho0 {
            Some(RayRole::Rho0)
        } else if rho == &self.rho0p {
            Some(RayRole::Rho0Prime)
        } else if self.gstable.contains(rho) {
            Some(RayRole::GStable)
        } else {
            None
        }
    }

    /// The reflection on bar coordinates: `x - <alpha_dual, x> alpha`.
    pub fn reflect_coords(&self, x: &LatticeVector) -> LatticeVector {
        let r = self.lattice().rank() - 1;
        let d = self.alpha_dual_bar.dot(x);
        let mut c = x.clone().into_coords();
        c[r] -= d;
        LatticeVector::new(c)
    }

    /// `R_{rho0}(Ē)` inside the box: weights of vertical root subgroups.
    pub fn vertical_weights(&self, bx: SearchBox) -> Vec<DemazureRoot> {
        self.roots.roots_for_ray(&self.rho0, bx).expect("rho0 is a ray")
    }

    /// `R(E) ∩ Λ⁺` inside the box: weights of horizontal root subgroups.
    ///
    /// Each weight is cross-checked to be a Demazure root of `Ē` whose ray is
    /// orthogonal to alpha, with `<rho0, e> = 0`.
    pub fn horizontal_weights(&self, bx: SearchBox) -> Result<Vec<DemazureRoot>> {
        let gamma = &self.datum.gamma;
        let mut out = Vec::new();
        for roots in gamma.root_cone().roots_in_box(bx).into_values() {
            for root in roots {
                if self.datum.is_dominant(&root.weight)? {
                    self.check_horizontal(&root)?;
                    out.push(root);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn check_horizontal(&self, root: &DemazureRoot) -> Result<DemazureRoot> {
        let r = self.lattice().rank() - 1;
        let bar_root = self
            .roots
            .classify(&root.weight)
            .ok_or_else(|| Error::Consistency(format!("{} is not a Demazure root of the bar cone", root.weight)))?;
        if !self.rho0.dot(&bar_root.coords).is_zero() || !bar_root.rho.coords()[r].is_zero() {
            return Err(Error::Consistency(format!("{} fails the commuting criterion", root.weight)));
        }
        if bar_root.rho.coords()[..r] != root.rho.coords()[..] {
            return Err(Error::Consistency(format!("{} has mismatched rays in M and the bar lattice", root.weight)));
        }
        Ok(bar_root)
    }

    /// `R_{rho0'}(Ē)` inside the box intersected with the vertical and
    /// horizontal weights; the intersection is always empty.
    pub fn rho0p_exclusion(&self, bx: SearchBox) -> Result<Vec<LatticeVector>> {
        let excluded: Vec<LatticeVector> =
            self.roots.roots_for_ray(&self.rho0p, bx)?.into_iter().map(|x| x.weight).collect();
        let mut hits: Vec<LatticeVector> = self
            .vertical_weights(bx)
            .into_iter()
            .chain(self.horizontal_weights(bx)?)
            .map(|x| x.weight)
            .filter(|w| excluded.contains(w))
            .collect();
        hits.sort();
        hits.dedup();
        if !hits.is_empty() {
            let list: Vec<String> = hits.iter().map(|h| h.to_string()).collect();
            return Err(Error::TheoremViolation(format!(
                "weights {} are attached to rho0' yet classified as root subgroups",
                list.join(", ")
            )));
        }
        Ok(hits)
    }

    /// The toric weight monoid generated by `λ - iα` for generators `λ` and
    /// `0 <= i <= d_λ`.
    pub fn gbar_monoid(&self) -> &WeightMonoid {
        self.gbar_monoid.get_or_init(|| {
            let mut gens = Vec::new();
            for g in self.datum.gamma.generators() {
                let d = self.datum.d(g).expect("dimension checked");
                let mut i = BigInt::zero();
                while i <= d {
                    gens.push(g.add_scaled(&-&i, &self.datum.alpha));
                    i += 1;
                }
            }
            WeightMonoid::new(self.datum.ambient_rank, gens).expect("generators have the ambient rank")
        })
    }

    /// Shifts a root `e'` of a G-stable ray to `e = e' + q alpha` with
    /// `q = <rho0, e'>`, which is a horizontal weight for the same ray.
    pub fn lift_to_horizontal(&self, e_prime: &LatticeVector) -> Result<MovingRoot> {
        check_dim(self.datum.ambient_rank, e_prime.rank())?;
        let root_prime = self
            .roots
            .classify(e_prime)
            .ok_or_else(|| Error::Domain(format!("{e_prime} is not a Demazure root of the bar cone")))?;
        let rho = root_prime.rho.clone();
        if self.role(&rho) != Some(RayRole::GStable) {
            return Err(Error::Domain(format!("{e_prime} belongs to {rho}, which is not a G-stable ray")));
        }
        let q = self.rho0.dot(&root_prime.coords);
        if q.is_negative() {
            return Err(Error::Consistency(format!("<rho0, {e_prime}> is negative")));
        }
        let weight = e_prime.add_scaled(&q, &self.datum.alpha);
        let root_bar = self
            .roots
            .classify(&weight)
            .filter(|x| x.rho == rho)
            .ok_or_else(|| Error::Consistency(format!("{weight} is not a root for {rho}")))?;
        if !self.rho0.dot(&root_bar.coords).is_zero() {
            return Err(Error::Consistency(format!("{weight} is not in M")));
        }
        let root = self
            .datum
            .gamma
            .root_cone()
            .classify(&weight)
            .ok_or_else(|| Error::Consistency(format!("{weight} is not a Demazure root of the weight cone")))?;
        if !self.datum.is_dominant(&weight)? {
            return Err(Error::Consistency(format!("{weight} is not dominant")));
        }
        self.check_horizontal(&root)?;

        let monoid = self.gbar_monoid();
        let moved = ToricLND::new(monoid, &weight)?.moved_divisor()?;
        let moved_bar = monoid.lattice().transfer_form(&moved, self.lattice())?;
        if moved_bar != rho {
            return Err(Error::Consistency(format!("{weight} moves {moved_bar} instead of {rho}")));
        }
        Ok(MovingRoot { rho, e_prime: root_prime, q, root_bar, root })
    }

    /// A horizontal weight moving the G-stable divisor of `rho`, from the
    /// lexicographically first root of `rho` in bar coordinates inside the box.
    pub fn gstable_moving_root(&self, rho: &LatticeVector, bx: SearchBox) -> Result<MovingRoot> {
        if self.role(rho) != Some(RayRole::GStable) {
            return Err(Error::Domain(format!("{rho} is not a G-stable ray")));
        }
        let first = self
            .roots
            .roots_for_ray(rho, bx)?
            .into_iter()
            .min_by(|a, b| a.coords.cmp(&b.coords))
            .ok_or(Error::BoxTooSmall { bound: bx.bound() })?;
        self.lift_to_horizontal(&first.weight)
    }
}

/// A horizontal weight for a G-stable ray, with the root it was lifted from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MovingRoot {
    /// The G-stable ray, in the dual of the bar basis.
    pub rho: LatticeVector,
    /// The root found in the box, before the shift.
    pub e_prime: DemazureRoot,
    #[serde(serialize_with = "crate::serde_num::bigint")]
    pub q: BigInt,
    /// `e' + q alpha` as a root of the bar cone.
    pub root_bar: DemazureRoot,
    /// `e' + q alpha` as a root of the weight cone.
    pub root: DemazureRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayReport {
    pub rho: LatticeVector,
    pub role: RayRole,
    #[serde(serialize_with = "crate::serde_num::bigint")]
    pub pairing_with_alpha: BigInt,
}

/// Everything computed for one rank-one datum, in a stable order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ambient_rank: usize,
    pub alpha: LatticeVector,
    pub alpha_dual: LatticeVector,
    pub generators: Vec<LatticeVector>,
    pub saturation: Saturation,
    pub box_bound: u32,
    pub m_basis: Vec<LatticeVector>,
    pub mbar_basis: Vec<LatticeVector>,
    pub rays: Vec<RayReport>,
    pub vertical: Vec<DemazureRoot>,
    pub horizontal: Vec<DemazureRoot>,
    pub g_stable_divisors: Vec<MovingRoot>,
    pub notes: Vec<String>,
}

pub const UNIQUENESS_NOTE: &str = "each B-root subgroup is determined by its weight";

/// Full classification of root subgroups inside the box.
pub fn classification_report(datum: &RankOneDatum, bx: SearchBox) -> Result<ClassificationReport> {
    let check = datum.check_toric();
    if !check.is_toric {
        return Err(Error::NotToric { combination: check.describe() });
    }
    let bar = datum.build_bar()?;
    let r = bar.lattice().rank() - 1;
    let rays = bar
        .ebar_rays()
        .iter()
        .map(|rho| RayReport {
            rho: rho.clone(),
            role: bar.role(rho).expect("every ray has a role"),
            pairing_with_alpha: rho.coords()[r].clone(),
        })
        .collect();
    bar.rho0p_exclusion(bx)?;
    let g_stable_divisors =
        bar.gstable_rays().iter().map(|rho| bar.gstable_moving_root(rho, bx)).collect::<Result<Vec<_>>>()?;
    let mut notes = vec![UNIQUENESS_NOTE.to_string()];
    if let Saturation::NotSaturated { witness } = datum.gamma().saturation() {
        notes.push(format!("weight monoid is not saturated ({witness} is missing); results refer to its saturation"));
    }
    Ok(ClassificationReport {
        ambient_rank: datum.ambient_rank(),
        alpha: datum.alpha().clone(),
        alpha_dual: datum.alpha_dual().clone(),
        generators: datum.gamma().generators().to_vec(),
        saturation: datum.gamma().saturation().clone(),
        box_bound: bx.bound(),
        m_basis: datum.gamma().lattice().basis().rows().to_vec(),
        mbar_basis: bar.mbar_basis().rows().to_vec(),
        rays,
        vertical: bar.vertical_weights(bx),
        horizontal: bar.horizontal_weights(bx)?,
        g_stable_divisors,
        notes,
    })
}
