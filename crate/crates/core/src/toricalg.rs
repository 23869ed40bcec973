//! The semigroup algebra of an affine toric variety and its homogeneous
//! locally nilpotent derivations.
//!
//! `A = ⊕_{u ∈ Γ} Q χ^u` where `Γ = M ∩ G` is the weight monoid. A Demazure
//! root `e` with ray `rho` defines the derivation `∂_e(χ^u) = <rho, u> χ^{u+e}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::demazure::{DemazureRoot, RootCone};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{LatticeVector, Sublattice};

/// Outcome of the bounded saturation check run at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Saturation {
    /// Every point of `G ∩ M` in the checked region is a sum of generators.
    Verified { checked_points: usize },
    /// `witness` lies in `G ∩ M` but is not a sum of generators; cone-level
    /// answers refer to the saturation.
    NotSaturated { witness: LatticeVector },
}

#[derive(Debug)]
struct MonoidInner {
    ambient_rank: usize,
    generators: Vec<LatticeVector>,
    roots: RootCone,
    saturation: Saturation,
}

/// A finitely generated weight monoid `Γ` with `M = ZΓ` and `G = Q≥0 Γ`.
///
/// Cheap to clone; clones share the derived data.
#[derive(Clone, Debug)]
pub struct WeightMonoid(Arc<MonoidInner>);

impl PartialEq for WeightMonoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient_rank == other.0.ambient_rank && self.0.generators == other.0.generators)
    }
}

impl Eq for WeightMonoid {}

impl WeightMonoid {
    pub fn new(ambient_rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_dim(ambient_rank, g.rank())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        gens.sort();
        gens.dedup();
        let lattice = Sublattice::from_generators(&gens, ambient_rank)?;
        let coords: Vec<LatticeVector> =
            gens.iter().map(|g| lattice.coords(g).expect("generator lies in its own span")).collect();
        let cone = Cone::new(lattice.rank(), coords)?;
        let roots = RootCone::new(lattice, cone)?;
        let saturation = check_saturation(&roots, &gens);
        Ok(WeightMonoid(Arc::new(MonoidInner { ambient_rank, generators: gens, roots, saturation })))
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.ambient_rank
    }

    /// Sorted, deduplicated nonzero generators in ambient coordinates.
    pub fn generators(&self) -> &[LatticeVector] {
        &self.0.generators
    }

    /// The lattice `M = ZΓ` with its Hermite normal form basis.
    pub fn lattice(&self) -> &Sublattice {
        self.0.roots.lattice()
    }

    /// The weight cone `G` and its dual rays, in lattice coordinates.
    pub fn root_cone(&self) -> &RootCone {
        &self.0.roots
    }

    /// The weight cone in lattice coordinates.
    pub fn cone(&self) -> &Cone {
        self.0.roots.cone()
    }

    /// Dual rays of `G` (the set `E^1`) in the dual basis.
    pub fn rays(&self) -> &[LatticeVector] {
        self.0.roots.rays()
    }

    pub fn saturation(&self) -> &Saturation {
        &self.0.saturation
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self.0.saturation, Saturation::Verified { .. })
    }

    pub fn coords(&self, u: &LatticeVector) -> Option<LatticeVector> {
        self.lattice().coords(u)
    }

    /// `u ∈ M ∩ G`; this is the saturation of the generated monoid.
    pub fn contains(&self, u: &LatticeVector) -> bool {
        self.coords(u).is_some_and(|c| self.cone().contains_point(&c).unwrap_or(false))
    }

    /// `<rho, u>` for `u ∈ M`.
    pub fn pair(&self, rho: &LatticeVector, u: &LatticeVector) -> Option<BigInt> {
        self.0.roots.pair(rho, u)
    }

    fn require_member(&self, u: &LatticeVector) -> Result<LatticeVector> {
        check_dim(self.ambient_rank(), u.rank())?;
        match self.coords(u) {
            Some(c) if self.cone().contains_point(&c)? => Ok(c),
            _ => Err(Error::Domain(format!("{u} is not in the weight monoid"))),
        }
    }

    fn require_ray(&self, rho: &LatticeVector) -> Result<()> {
        if self.0.roots.has_ray(rho) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{rho} is not a ray of the dual weight cone")))
        }
    }

    /// `u` lies in the ideal of the divisor `D_rho`, i.e. `<rho, u> > 0`.
    pub fn divisor_ideal_contains(&self, rho: &LatticeVector, u: &LatticeVector) -> Result<bool> {
        self.require_ray(rho)?;
        let c = self.require_member(u)?;
        Ok(rho.dot(&c).is_positive())
    }

    /// Points of `Γ` inside the sup-norm box, in lexicographic order.
    pub fn points_in_box(&self, bx: crate::demazure::SearchBox) -> Vec<LatticeVector> {
        bx.points(self.ambient_rank()).filter(|p| self.contains(p)).collect()
    }
}

/// Checks that every point of `G ∩ M` in the bounding box of the generators
/// and their pairwise sums is a sum of generators.
fn check_saturation(roots: &RootCone, gens: &[LatticeVector]) -> Saturation {
    let n = roots.lattice().ambient_rank();
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    let mut widen = |v: &LatticeVector| {
        for (i, c) in v.coords().iter().enumerate() {
            if *c < lo[i] {
                lo[i] = c.clone();
            }
            if *c > hi[i] {
                hi[i] = c.clone();
            }
        }
    };
    for (i, a) in gens.iter().enumerate() {
        widen(a);
        for b in &gens[i..] {
            widen(&(a + b));
        }
    }

    let lattice = roots.lattice();
    let coord_gens: Vec<LatticeVector> = gens.iter().map(|g| lattice.coords(g).expect("in lattice")).collect();
    let mut oracle = GeneratedMembership::new(roots, &coord_gens, &lo, &hi);
    let mut checked = 0;
    for p in region_points(&lo, &hi) {
        let Some(c) = lattice.coords(&p) else { continue };
        if !roots.cone().contains_point(&c).unwrap_or(false) {
            continue;
        }
        checked += 1;
        if !oracle.contains(&c) {
            return Saturation::NotSaturated { witness: p };
        }
    }
    Saturation::Verified { checked_points: checked }
}

fn region_points(lo: &[BigInt], hi: &[BigInt]) -> Vec<LatticeVector> {
    let mut out = vec![Vec::<BigInt>::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for prefix in &out {
            let mut x = l.clone();
            while x <= *h {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
                x += 1;
            }
        }
        out = next;
    }
    out.into_iter().map(LatticeVector::new).collect()
}

/// Membership in the monoid generated by `gens` (lattice coordinates).
///
/// Exact for strictly convex cones via a positive grading; for cones with a
/// lineality space it falls back to a breadth-first closure inside an
/// enlarged box.
enum GeneratedMembership<'a> {
    Graded { gens: &'a [LatticeVector], cone: &'a Cone, grading: LatticeVector, memo: HashMap<LatticeVector, bool> },
    Closure(HashSet<LatticeVector>),
}

impl<'a> GeneratedMembership<'a> {
    fn new(roots: &'a RootCone, gens: &'a [LatticeVector], lo: &[BigInt], hi: &[BigInt]) -> Self {
        let cone = roots.cone();
        let r = roots.lattice().rank();
        if cone.is_strictly_convex() {
            let grading = roots.rays().iter().fold(LatticeVector::zero(r), |acc, x| &acc + x);
            return GeneratedMembership::Graded { gens, cone, grading, memo: HashMap::new() };
        }
        let lattice = roots.lattice();
        let reach = gens.iter().map(|g| lattice.embed(g).sup_norm()).max().unwrap_or_default() * 2;
        let lo: Vec<BigInt> = lo.iter().map(|x| x - &reach).collect();
        let hi: Vec<BigInt> = hi.iter().map(|x| x + &reach).collect();
        let inside = |c: &LatticeVector| {
            let p = lattice.embed(c);
            p.coords().iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h)
        };
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        let zero = LatticeVector::zero(r);
        seen.insert(zero.clone());
        queue.push_back(zero);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = &p + g;
                if inside(&q) && !seen.contains(&q) {
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        GeneratedMembership::Closure(seen)
    }

    fn contains(&mut self, c: &LatticeVector) -> bool {
        match self {
            GeneratedMembership::Closure(set) => set.contains(c),
            GeneratedMembership::Graded { gens, cone, grading, memo } => graded_member(c, gens, cone, grading, memo),
        }
    }
}

fn graded_member(
    c: &LatticeVector,
    gens: &[LatticeVector],
    cone: &Cone,
    grading: &LatticeVector,
    memo: &mut HashMap<LatticeVector, bool>,
) -> bool {
    if c.is_zero() {
        return true;
    }
    if let Some(&known) = memo.get(c) {
        return known;
    }
    let mut found = false;
    for g in gens {
        let rest = c - g;
        if grading.dot(&rest).is_negative() || !cone.contains_point(&rest).unwrap_or(false) {
            continue;
        }
        if graded_member(&rest, gens, cone, grading, memo) {
            found = true;
            break;
        }
    }
    memo.insert(c.clone(), found);
    found
}

/// A finitely supported element `Σ c_u χ^u` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<LatticeVector, BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(u: LatticeVector) -> Self {
        Self::term(BigRational::one(), u)
    }

    pub fn term(coefficient: BigRational, u: LatticeVector) -> Self {
        let mut out = Self::zero();
        out.add_term(u, coefficient);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticeVector, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (u, c) in terms {
            out.add_term(u, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, u: LatticeVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, u: &LatticeVector) -> BigRational {
        self.terms.get(u).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeVector> {
        self.terms.keys()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(u, c)| (u.clone(), c * k)).collect() }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (u, c) in &rhs.terms {
            out.add_term(u.clone(), c.clone());
        }
        out
    }
}

/// Product by convolution of supports: `χ^u χ^v = χ^{u+v}`.
impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u + v, a * b);
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (u, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{u}")?;
        }
        Ok(())
    }
}

/// The homogeneous LND `∂_e` on the algebra of a weight monoid.
#[derive(Clone, Debug)]
pub struct ToricLND {
    monoid: WeightMonoid,
    root: DemazureRoot,
}

impl ToricLND {
    /// Fails with a domain error if `e` is not a Demazure root of the dual weight cone.
    pub fn new(monoid: &WeightMonoid, e: &LatticeVector) -> Result<Self> {
        check_dim(monoid.ambient_rank(), e.rank())?;
        let root = monoid.root_cone().classify(e).ok_or_else(|| {
            let detail = match monoid.coords(e) {
                None => "it is not in the lattice spanned by the weight monoid".to_string(),
                Some(c) => {
                    let pairings: Vec<String> =
                        monoid.rays().iter().map(|r| format!("<{r}, e> = {}", r.dot(&c))).collect();
                    pairings.join(", ")
                }
            };
            Error::Domain(format!("{e} is not a Demazure root: {detail}"))
        })?;
        Ok(ToricLND { monoid: monoid.clone(), root })
    }

    pub fn monoid(&self) -> &WeightMonoid {
        &self.monoid
    }

    pub fn root(&self) -> &DemazureRoot {
        &self.root
    }

    fn pairing_on(&self, u: &LatticeVector) -> Result<BigInt> {
        let c = self.monoid.require_member(u)?;
        Ok(self.root.rho.dot(&c))
    }

    /// `∂_e(f)` extended linearly from `∂_e(χ^u) = <rho, u> χ^{u+e}`.
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (u, c) in f.terms() {
            let p = self.pairing_on(u)?;
            if p.is_zero() {
                continue;
            }
            let w = u + &self.root.weight;
            if !self.monoid.contains(&w) {
                return Err(Error::Consistency(format!("{w} left the weight monoid")));
            }
            out.add_term(w, c * BigRational::from_integer(p));
        }
        Ok(out)
    }

    /// Least `k` with `∂_e^k(χ^u) = 0`, found by iteration.
    pub fn nilpotency_index(&self, u: &LatticeVector) -> Result<u64> {
        let expected = self.pairing_on(u)? + 1;
        let mut f = AlgebraElement::monomial(u.clone());
        let mut k = 0u64;
        while !f.is_zero() {
            f = self.apply(&f)?;
            k += 1;
        }
        if BigInt::from(k) != expected {
            return Err(Error::Consistency(format!("nilpotency index {k} differs from <rho, u> + 1 = {expected}")));
        }
        Ok(k)
    }

    /// `exp(s ∂_e)(f) = Σ s^k/k! ∂_e^k(f)`; the sum is finite.
    pub fn exp_action(&self, s: &BigRational, f: &AlgebraElement) -> Result<AlgebraElement> {
        let mut acc = f.clone();
        let mut term = f.clone();
        let mut k = 1u64;
        loop {
            term = self.apply(&term)?.scale(&(s / BigRational::from_integer(BigInt::from(k))));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
            k += 1;
        }
        Ok(acc)
    }

    /// `χ^u ∈ Ker ∂_e`, i.e. `<rho, u> = 0`.
    pub fn kernel_contains(&self, u: &LatticeVector) -> Result<bool> {
        Ok(self.pairing_on(u)?.is_zero())
    }

    /// Two root subgroups are equivalent iff their derivations share a ray.
    pub fn is_equivalent(&self, other: &ToricLND) -> Result<bool> {
        if self.monoid != other.monoid {
            return Err(Error::Domain("derivations live on different weight monoids".into()));
        }
        let same_ray = self.root.rho == other.root.rho;
        let mut kernels_agree = true;
        for g in self.monoid.generators() {
            if self.kernel_contains(g)? != other.kernel_contains(g)? {
                kernels_agree = false;
                break;
            }
        }
        if kernels_agree != same_ray {
            return Err(Error::Consistency("kernel comparison disagrees with the ray comparison".into()));
        }
        Ok(same_ray)
    }

    /// The ray `rho` of the divisor `D_rho` moved by the root subgroup, after
    /// checking that the exponential action does not preserve its ideal.
    pub fn moved_divisor(&self) -> Result<LatticeVector> {
        let rho = &self.root.rho;
        let one = BigRational::one();
        for u in self.monoid.generators() {
            if !self.monoid.divisor_ideal_contains(rho, u)? {
                continue;
            }
            let image = self.exp_action(&one, &AlgebraElement::monomial(u.clone()))?;
            for w in image.support() {
                if !self.monoid.divisor_ideal_contains(rho, w)? {
                    return Ok(rho.clone());
                }
            }
        }
        Err(Error::Consistency(format!("the ideal of D_{rho} is stable under the action")))
    }
}
