//! Horizontal root subgroups of affine horospherical varieties.
//!
//! Only the algebra of `U`-invariants is modelled: it has basis `f_λ`,
//! `λ ∈ Γ`, with `f_λ f_μ = f_{λ+μ}`, which is the semigroup algebra of `Γ`.
//! A horizontal weight `μ` with ray `rho` acts there by
//! `f_λ ↦ <rho, λ> f_{λ+μ}`.
//!
//! Dominance is tested against user-supplied coroots `alpha_i^∨`. The cone
//! `Ẽ` is generated by their restrictions to `M`; its dual `G~` is the cone of
//! `ZΓ ∩ Λ⁺`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::demazure::{subcone_witness, DemazureRoot, SearchBox};
use crate::error::{check_dim, Error, Result};
use crate::linalg::LatticeVector;
use crate::sphrank1::RankOneDatum;
use crate::toricalg::{AlgebraElement, WeightMonoid};

/// Element of the `U`-invariant algebra, `Σ c_λ f_λ`; products follow
/// `f_λ f_μ = f_{λ+μ}`.
pub type ShadowElement = AlgebraElement;

#[derive(Clone, Debug)]
pub struct HoroDatum {
    gamma: WeightMonoid,
    coroots: Vec<LatticeVector>,
    /// `Ẽ` in the dual basis of `M`.
    e_tilde: Cone,
    horospherical: bool,
}

impl HoroDatum {
    /// Fails with a domain error if a generator is not dominant.
    pub fn new(ambient_rank: usize, generators: Vec<LatticeVector>, coroots: Vec<LatticeVector>) -> Result<Self> {
        for c in &coroots {
            check_dim(ambient_rank, c.rank())?;
        }
        for g in &generators {
            check_dim(ambient_rank, g.rank())?;
            if let Some(c) = coroots.iter().find(|c| c.dot(g).is_negative()) {
                return Err(Error::Domain(format!("generator {g} pairs negatively with coroot {c}")));
            }
        }
        let gamma = WeightMonoid::new(ambient_rank, generators)?;
        let restricted = coroots.iter().map(|c| gamma.lattice().restrict_form(c)).collect::<Result<Vec<_>>>()?;
        let e_tilde = Cone::new(gamma.lattice().rank(), restricted)?;
        Ok(HoroDatum { gamma, coroots, e_tilde, horospherical: true })
    }

    /// The datum of a rank-one toric variety, which is horospherical.
    pub fn from_rank_one(datum: &RankOneDatum) -> Self {
        let e_tilde = Cone::new(
            datum.gamma().lattice().rank(),
            vec![datum.gamma().lattice().restrict_form(datum.alpha_dual()).expect("same rank")],
        )
        .expect("same rank");
        HoroDatum {
            gamma: datum.gamma().clone(),
            coroots: vec![datum.alpha_dual().clone()],
            e_tilde,
            horospherical: true,
        }
    }

    /// Drops the horospherical assumption: horizontal weight sets are then
    /// only upper bounds.
    pub fn with_horospherical(mut self, horospherical: bool) -> Self {
        self.horospherical = horospherical;
        self
    }

    pub fn is_horospherical(&self) -> bool {
        self.horospherical
    }

    pub fn gamma(&self) -> &WeightMonoid {
        &self.gamma
    }

    pub fn coroots(&self) -> &[LatticeVector] {
        &self.coroots
    }

    pub fn ambient_rank(&self) -> usize {
        self.gamma.ambient_rank()
    }

    /// `Ẽ` in the dual basis of `M`.
    pub fn e_tilde(&self) -> &Cone {
        &self.e_tilde
    }

    /// The cone of `ZΓ ∩ Λ⁺` in coordinates of `M`.
    pub fn g_tilde(&self) -> Cone {
        self.e_tilde.dual_cone()
    }

    pub fn is_dominant(&self, lambda: &LatticeVector) -> Result<bool> {
        check_dim(self.ambient_rank(), lambda.rank())?;
        Ok(self.coroots.iter().all(|c| !c.dot(lambda).is_negative()))
    }

    /// `λ ∈ ZΓ ∩ Λ⁺`, tested pointwise.
    pub fn in_open_orbit_monoid(&self, lambda: &LatticeVector) -> Result<bool> {
        Ok(self.gamma.lattice().contains(lambda) && self.is_dominant(lambda)?)
    }

    /// A point of `ZΓ ∩ Λ⁺` inside the box that is not in `Γ`, if any.
    pub fn g_saturation_witness(&self, bx: SearchBox) -> Option<LatticeVector> {
        bx.points(self.ambient_rank())
            .find(|p| self.in_open_orbit_monoid(p).expect("rank matches") && !self.gamma.contains(p))
    }

    /// `Γ = ZΓ ∩ Λ⁺`, verified inside the box only.
    pub fn is_g_saturated(&self, bx: SearchBox) -> bool {
        self.g_saturation_witness(bx).is_none()
    }

    /// `R(E) ∩ Λ⁺` inside the box, sorted by weight. The exact set of
    /// horizontal weights when the variety is horospherical, an upper bound
    /// otherwise.
    pub fn horizontal_weight_set(&self, bx: SearchBox) -> Vec<DemazureRoot> {
        let mut out: Vec<DemazureRoot> = self
            .gamma
            .root_cone()
            .roots_in_box(bx)
            .into_values()
            .flatten()
            .filter(|r| self.is_dominant(&r.weight).expect("rank matches"))
            .collect();
        out.sort();
        out
    }

    /// Dual rays of `G` outside `Ẽ`: the divisors that are `G`-stable.
    pub fn g_stable_divisor_rays(&self) -> Vec<LatticeVector> {
        self.gamma
            .rays()
            .iter()
            .filter(|rho| !self.e_tilde.contains_point(rho).expect("rank matches"))
            .cloned()
            .collect()
    }

    /// The derivation `∂_μ` of the `U`-invariants; `mu` must be a dominant
    /// Demazure root of `G`.
    pub fn lnd(&self, mu: &LatticeVector) -> Result<HoroLND> {
        check_dim(self.ambient_rank(), mu.rank())?;
        let root = self
            .gamma
            .root_cone()
            .classify(mu)
            .ok_or_else(|| Error::Domain(format!("{mu} is not a Demazure root of the weight cone")))?;
        if !self.is_dominant(mu)? {
            return Err(Error::Domain(format!("{mu} is not dominant")));
        }
        Ok(HoroLND { datum: self.clone(), root })
    }

    /// Dominant roots of `rho` in the box, ordered lexicographically by their
    /// coordinates in `M`.
    pub fn moving_witness_candidates(&self, rho: &LatticeVector, bx: SearchBox) -> Result<Vec<DemazureRoot>> {
        let mut out: Vec<DemazureRoot> = self
            .gamma
            .root_cone()
            .roots_for_ray(rho, bx)?
            .into_iter()
            .filter(|r| self.is_dominant(&r.weight).expect("rank matches"))
            .collect();
        out.sort_by(|a, b| a.coords.cmp(&b.coords));
        Ok(out)
    }

    /// A horizontal weight moving the `G`-stable divisor of `rho`.
    ///
    /// Takes the first candidate in the box. Failing that, shifts a
    /// non-dominant root of `rho` from the box along its facet into `G~`; the
    /// shifted weight may leave the box.
    pub fn moving_witness(&self, rho: &LatticeVector, bx: SearchBox) -> Result<MovingWitness> {
        if !self.g_stable_divisor_rays().contains(rho) {
            return Err(Error::Domain(format!("{rho} is not the ray of a G-stable divisor")));
        }
        let witness = match self.moving_witness_candidates(rho, bx)?.into_iter().next() {
            Some(root) => MovingWitness { root, construction: None },
            None => {
                let base = self
                    .gamma
                    .root_cone()
                    .roots_for_ray(rho, bx)?
                    .into_iter()
                    .min_by(|a, b| a.coords.cmp(&b.coords))
                    .ok_or(Error::BoxTooSmall { bound: bx.bound() })?;
                let (v, k) = subcone_witness(self.gamma.cone(), &self.g_tilde(), rho, &base)?;
                let coords = base.coords.add_scaled(&BigInt::from(k), &v);
                let weight = self.gamma.lattice().embed(&coords);
                let root = self
                    .gamma
                    .root_cone()
                    .classify(&weight)
                    .ok_or_else(|| Error::Consistency(format!("shifted weight {weight} is not a root")))?;
                MovingWitness { root, construction: Some(WitnessConstruction { base, shift: v, k }) }
            }
        };
        self.verify_moving(rho, &witness.root)?;
        Ok(witness)
    }

    fn verify_moving(&self, rho: &LatticeVector, root: &DemazureRoot) -> Result<()> {
        if &root.rho != rho || rho.dot(&root.coords) != BigInt::from(-1) {
            return Err(Error::Consistency(format!("{} is not a root of {rho}", root.weight)));
        }
        for other in self.gamma.rays().iter().filter(|x| *x != rho) {
            if other.dot(&root.coords).is_negative() {
                return Err(Error::Consistency(format!("{} pairs negatively with {other}", root.weight)));
            }
        }
        if !self.is_dominant(&root.weight)? {
            return Err(Error::Consistency(format!("{} is not dominant", root.weight)));
        }
        // Some f_λ in the ideal of the divisor is carried out of it.
        let d = self.lnd(&root.weight)?;
        for lambda in self.gamma.generators() {
            let p = self.gamma.pair(rho, lambda).expect("generator lies in M");
            if !p.is_positive() {
                continue;
            }
            let steps = p.to_u64().ok_or_else(|| Error::Consistency("pairing too large".into()))?;
            let mut f = ShadowElement::monomial(lambda.clone());
            for _ in 0..steps {
                f = d.apply(&f)?;
            }
            let escaped = !f.is_zero()
                && f.support().all(|u| self.gamma.contains(u) && self.gamma.pair(rho, u).is_some_and(|x| x.is_zero()));
            if escaped {
                return Ok(());
            }
        }
        Err(Error::Consistency(format!("{} does not move the divisor of {rho}", root.weight)))
    }
}

/// `∂_μ` on the `U`-invariants of the open orbit.
#[derive(Clone, Debug)]
pub struct HoroLND {
    datum: HoroDatum,
    root: DemazureRoot,
}

impl HoroLND {
    pub fn root(&self) -> &DemazureRoot {
        &self.root
    }

    /// `f_λ ↦ <rho, λ> f_{λ+μ}`, extended linearly. The support must lie in
    /// `ZΓ ∩ Λ⁺`.
    pub fn apply(&self, f: &ShadowElement) -> Result<ShadowElement> {
        let mut out = ShadowElement::zero();
        for (lambda, c) in f.terms() {
            if !self.datum.in_open_orbit_monoid(lambda)? {
                return Err(Error::Domain(format!("{lambda} is not in ZΓ ∩ Λ⁺")));
            }
            let p = self.datum.gamma.pair(&self.root.rho, lambda).expect("lambda lies in M");
            if p.is_zero() {
                continue;
            }
            let term = ShadowElement::term(c * num_rational::BigRational::from_integer(p), lambda + &self.root.weight);
            out = &out + &term;
        }
        Ok(out)
    }
}

/// How a witness outside the box search was produced: `base + k * shift` in
/// coordinates of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessConstruction {
    pub base: DemazureRoot,
    pub shift: LatticeVector,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MovingWitness {
    pub root: DemazureRoot,
    pub construction: Option<WitnessConstruction>,
}
