//! The `dual`, `roots`, `classify` and `act` commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::One;
use rootsub_core::horo::{HoroDatum, MovingWitness};
use rootsub_core::sphrank1::{classification_report, ClassificationReport, RayRole};
use rootsub_core::toricalg::Saturation;
use rootsub_core::{
    AlgebraElement, Cone, DemazureRoot, LatticeVector, RankOneDatum, RootCone, SearchBox, Sublattice, ToricLND,
    WeightMonoid,
};
use serde::Serialize;

use crate::input::{InputDescription, Kind};
use crate::report::{Report, TOOL, VERSION};
use crate::CliError;

/// Flags shared by the commands.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Overrides the bound given in the input.
    pub box_bound: Option<u32>,
    pub filter_dominant: bool,
}

impl Options {
    fn search_box(&self, input: &InputDescription) -> SearchBox {
        SearchBox::new(self.box_bound.or(input.box_bound).unwrap_or(SearchBox::DEFAULT_BOUND))
    }
}

fn envelope<T: Serialize>(
    command: &'static str,
    input: &InputDescription,
    box_bound: Option<u32>,
    warnings: Vec<String>,
    results: T,
    text: String,
) -> Report<T> {
    Report { tool: TOOL, version: VERSION, command, input: input.render(), box_bound, warnings, results, text }
}

fn require(command: &'static str, input: &InputDescription, kinds: &[Kind]) -> Result<(), CliError> {
    if kinds.contains(&input.kind) {
        Ok(())
    } else {
        Err(CliError::WrongKind { command, kind: input.kind })
    }
}

fn saturation_warnings(monoid: &WeightMonoid) -> Vec<String> {
    match monoid.saturation() {
        Saturation::Verified { .. } => Vec::new(),
        Saturation::NotSaturated { witness } => vec![format!(
            "the generators do not generate a saturated monoid ({witness} is missing); \
             results refer to the saturation"
        )],
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Serialize)]
pub struct Facet {
    pub rho: LatticeVector,
    pub generators: Vec<LatticeVector>,
}

#[derive(Debug, Serialize)]
pub struct DualResults {
    pub generators: Vec<LatticeVector>,
    pub full_dimensional: bool,
    pub strictly_convex: bool,
    /// Extremal rays of the cone itself, when it is strictly convex.
    pub cone_rays: Option<Vec<LatticeVector>>,
    pub dual_rays: Vec<LatticeVector>,
    pub facets: Vec<Facet>,
}

/// Rays of the dual cone and the facet each one cuts out.
pub fn dual(input: &InputDescription) -> Result<Report<DualResults>, CliError> {
    require("dual", input, &[Kind::Cone])?;
    let cone = Cone::new(input.rank, input.generators.clone())?;
    let dual_rays = cone.dual_rays()?.into_vec();
    let facets = dual_rays
        .iter()
        .map(|rho| Ok(Facet { rho: rho.clone(), generators: cone.facet_of(rho)?.generators().to_vec() }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let strictly_convex = cone.is_strictly_convex();
    let cone_rays = if strictly_convex { Some(cone.rays()?.into_vec()) } else { None };

    let mut text = String::new();
    let _ = writeln!(text, "generators: {}", join(cone.generators()));
    let _ = writeln!(text, "strictly convex: {strictly_convex}");
    if let Some(r) = &cone_rays {
        let _ = writeln!(text, "rays: {}", join(r));
    }
    let _ = writeln!(text, "dual rays: {}", dual_rays.len());
    for f in &facets {
        let _ = writeln!(text, "  {}  facet: {}", f.rho, join(&f.generators));
    }
    let results = DualResults {
        generators: cone.generators().to_vec(),
        full_dimensional: true,
        strictly_convex,
        cone_rays,
        dual_rays,
        facets,
    };
    Ok(envelope("dual", input, None, Vec::new(), results, text))
}

#[derive(Debug, Serialize)]
pub struct RayRoots {
    pub rho: LatticeVector,
    pub roots: Vec<DemazureRoot>,
}

#[derive(Debug, Serialize)]
pub struct RootsResults {
    pub lattice_basis: Vec<LatticeVector>,
    pub dominant_only: bool,
    pub rays: Vec<RayRoots>,
    /// Picture of the box for ambient rank 2, top row first.
    pub grid: Option<Vec<String>>,
}

/// Demazure roots inside the box, grouped by dual ray.
pub fn roots(input: &InputDescription, opts: Options) -> Result<Report<RootsResults>, CliError> {
    require("roots", input, &[Kind::Cone, Kind::ToricMonoid])?;
    let bx = opts.search_box(input);
    let (rc, warnings) = match input.kind {
        Kind::Cone => {
            let cone = Cone::new(input.rank, input.generators.clone())?;
            (RootCone::new(Sublattice::full(input.rank), cone)?, Vec::new())
        }
        _ => {
            let m = WeightMonoid::new(input.rank, input.generators.clone())?;
            let w = saturation_warnings(&m);
            (m.root_cone().clone(), w)
        }
    };
    let coroots = if opts.filter_dominant {
        Some(
            input
                .coroots
                .clone()
                .ok_or_else(|| CliError::Parse("--filter-dominant needs a 'coroots:' section in the input".into()))?,
        )
    } else {
        None
    };
    let dominant = |e: &LatticeVector| {
        coroots.as_ref().is_none_or(|cs| cs.iter().all(|c| c.pair(e).map(|x| x >= 0.into()).unwrap_or(false)))
    };
    let rays: Vec<RayRoots> = rc
        .roots_in_box(bx)
        .into_iter()
        .map(|(rho, roots)| RayRoots { rho, roots: roots.into_iter().filter(|r| dominant(&r.weight)).collect() })
        .collect();

    let grid = (input.rank == 2).then(|| grid(&rc, &rays, bx));
    let mut text = String::new();
    let _ = writeln!(text, "lattice basis: {}", join(rc.lattice().basis().rows()));
    if opts.filter_dominant {
        let _ = writeln!(text, "dominant roots only");
    }
    for (i, r) in rays.iter().enumerate() {
        let _ = writeln!(text, "ray {} {}: {} root(s)", marker(i), r.rho, r.roots.len());
        for root in &r.roots {
            let _ = writeln!(text, "  {}", root.weight);
        }
    }
    if let Some(g) = &grid {
        let _ = writeln!(text, "grid ('+' weight cone, 'o' origin, letters mark the rays' roots):");
        for row in g {
            let _ = writeln!(text, "  {row}");
        }
    }
    let results = RootsResults {
        lattice_basis: rc.lattice().basis().rows().to_vec(),
        dominant_only: opts.filter_dominant,
        rays,
        grid,
    };
    Ok(envelope("roots", input, Some(bx.bound()), warnings, results, text))
}

fn marker(i: usize) -> char {
    if i < 26 {
        (b'a' + i as u8) as char
    } else {
        '#'
    }
}

fn grid(rc: &RootCone, rays: &[RayRoots], bx: SearchBox) -> Vec<String> {
    let mut marks: BTreeMap<LatticeVector, char> = BTreeMap::new();
    for (i, r) in rays.iter().enumerate() {
        for root in &r.roots {
            marks.insert(root.weight.clone(), marker(i));
        }
    }
    let b = bx.bound() as i64;
    (-b..=b)
        .rev()
        .map(|y| {
            (-b..=b)
                .map(|x| {
                    let p = LatticeVector::from_i64s(&[x, y]);
                    if let Some(c) = marks.get(&p) {
                        *c
                    } else if x == 0 && y == 0 {
                        'o'
                    } else if rc.lattice().coords(&p).is_some_and(|c| rc.cone().contains_point(&c).unwrap_or(false)) {
                        '+'
                    } else {
                        '.'
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct HoroRay {
    pub rho: LatticeVector,
    pub g_stable: bool,
    pub witness: Option<MovingWitness>,
}

#[derive(Debug, Serialize)]
pub struct HoroResults {
    pub m_basis: Vec<LatticeVector>,
    /// Generators of the cone of restricted coroots, in the dual basis of `M`.
    pub e_tilde: Vec<LatticeVector>,
    pub g_saturated_in_box: bool,
    pub g_saturation_witness: Option<LatticeVector>,
    /// Whether `horizontal` is the exact set (horospherical input) or an upper bound.
    pub horizontal_exact: bool,
    pub horizontal: Vec<DemazureRoot>,
    pub rays: Vec<HoroRay>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifyResults {
    RankOne(ClassificationReport),
    Horospherical(HoroResults),
}

/// Full classification for rank-one and horospherical inputs.
pub fn classify(input: &InputDescription, opts: Options) -> Result<Report<ClassifyResults>, CliError> {
    require("classify", input, &[Kind::RankOne, Kind::Horospherical])?;
    let bx = opts.search_box(input);
    let mut text = String::new();
    if input.kind == Kind::RankOne {
        let alpha = input.alpha.clone().expect("validated");
        let alpha_dual = input.alpha_dual.clone().expect("validated");
        let datum = RankOneDatum::new(alpha, alpha_dual, input.generators.clone())?;
        let report = classification_report(&datum, bx)?;
        let warnings = saturation_warnings(datum.gamma());
        let _ = writeln!(text, "M basis: {}", join(&report.m_basis));
        let _ = writeln!(text, "extended basis (M, alpha): {}", join(&report.mbar_basis));
        let _ = writeln!(text, "rays of the extended dual cone:");
        for r in &report.rays {
            let role = match r.role {
                RayRole::Rho0 => "rho0 (moved by U)",
                RayRole::Rho0Prime => "rho0' (moved by U-)",
                RayRole::GStable => "G-stable",
            };
            let _ = writeln!(text, "  {}  <rho, alpha> = {}  {role}", r.rho, r.pairing_with_alpha);
        }
        let _ = writeln!(text, "vertical weights: {}", join(&weights(&report.vertical)));
        let _ = writeln!(text, "horizontal weights: {}", join(&weights(&report.horizontal)));
        let _ = writeln!(text, "G-stable divisors: {}", report.g_stable_divisors.len());
        for m in &report.g_stable_divisors {
            let _ = writeln!(
                text,
                "  {}: moved by weight {} (from {} shifted by {} alpha)",
                m.rho, m.root.weight, m.e_prime.weight, m.q
            );
        }
        for n in &report.notes {
            let _ = writeln!(text, "note: {n}");
        }
        return Ok(envelope("classify", input, Some(bx.bound()), warnings, ClassifyResults::RankOne(report), text));
    }

    let h = HoroDatum::new(input.rank, input.generators.clone(), input.coroots.clone().expect("validated"))?;
    let warnings = saturation_warnings(h.gamma());
    let stable = h.g_stable_divisor_rays();
    let rays = h
        .gamma()
        .rays()
        .iter()
        .map(|rho| {
            let g_stable = stable.contains(rho);
            let witness = if g_stable { Some(h.moving_witness(rho, bx)?) } else { None };
            Ok(HoroRay { rho: rho.clone(), g_stable, witness })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let witness = h.g_saturation_witness(bx);
    let results = HoroResults {
        m_basis: h.gamma().lattice().basis().rows().to_vec(),
        e_tilde: h.e_tilde().generators().to_vec(),
        g_saturated_in_box: witness.is_none(),
        g_saturation_witness: witness,
        horizontal_exact: h.is_horospherical(),
        horizontal: h.horizontal_weight_set(bx),
        rays,
    };
    let _ = writeln!(text, "M basis: {}", join(&results.m_basis));
    let _ = writeln!(text, "restricted coroots: {}", join(&results.e_tilde));
    match &results.g_saturation_witness {
        None => {
            let _ = writeln!(text, "G-saturated within the box: every root subgroup is vertical");
        }
        Some(w) => {
            let _ = writeln!(text, "not G-saturated: {w} is dominant and in ZΓ but not in Γ");
        }
    }
    let _ = writeln!(text, "horizontal weights: {}", join(&weights(&results.horizontal)));
    for r in &results.rays {
        match &r.witness {
            Some(w) => {
                let _ = writeln!(text, "  {}: G-stable, moved by weight {}", r.rho, w.root.weight);
            }
            None => {
                let _ = writeln!(text, "  {}: not G-stable", r.rho);
            }
        }
    }
    Ok(envelope("classify", input, Some(bx.bound()), warnings, ClassifyResults::Horospherical(results), text))
}

fn weights(roots: &[DemazureRoot]) -> Vec<LatticeVector> {
    roots.iter().map(|r| r.weight.clone()).collect()
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub weight: LatticeVector,
    #[serde(serialize_with = "rootsub_core::serde_num::rational")]
    pub coefficient: BigRational,
}

fn terms(f: &AlgebraElement) -> Vec<Term> {
    f.terms().iter().map(|(u, c)| Term { weight: u.clone(), coefficient: c.clone() }).collect()
}

#[derive(Debug, Serialize)]
pub struct Nilpotency {
    pub weight: LatticeVector,
    pub index: u64,
}

#[derive(Debug, Serialize)]
pub struct ActResults {
    pub root: DemazureRoot,
    pub element: Vec<Term>,
    pub derivative: Vec<Term>,
    pub nilpotency: Vec<Nilpotency>,
    #[serde(serialize_with = "rootsub_core::serde_num::rational")]
    pub parameter: BigRational,
    pub exponential: Vec<Term>,
}

/// `∂_e(f)`, nilpotency indices of the support and `exp(s ∂_e)(f)`.
pub fn act(input: &InputDescription) -> Result<Report<ActResults>, CliError> {
    require("act", input, &[Kind::ToricMonoid])?;
    let e = input.root.clone().ok_or_else(|| CliError::Parse("act needs a root ('root:' or --root)".into()))?;
    let terms_in = input
        .element
        .clone()
        .ok_or_else(|| CliError::Parse("act needs an element ('element:' or --element)".into()))?;
    let s = input.parameter.clone().unwrap_or_else(BigRational::one);
    let m = WeightMonoid::new(input.rank, input.generators.clone())?;
    let d = ToricLND::new(&m, &e)?;
    let f = AlgebraElement::from_terms(terms_in);
    let derivative = d.apply(&f)?;
    let nilpotency = f
        .support()
        .map(|u| Ok(Nilpotency { weight: u.clone(), index: d.nilpotency_index(u)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let exponential = d.exp_action(&s, &f)?;

    let mut text = String::new();
    let _ = writeln!(text, "root {} of ray {}", d.root().weight, d.root().rho);
    let _ = writeln!(text, "f = {f}");
    let _ = writeln!(text, "derivative: {derivative}");
    for n in &nilpotency {
        let _ = writeln!(text, "nilpotency index at {}: {}", n.weight, n.index);
    }
    let _ = writeln!(text, "exp({s} * derivation)(f) = {exponential}");
    let results = ActResults {
        root: d.root().clone(),
        element: terms(&f),
        derivative: terms(&derivative),
        nilpotency,
        parameter: s,
        exponential: terms(&exponential),
    };
    Ok(envelope("act", input, None, saturation_warnings(&m), results, text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rootsub_core::Error;

    fn parse(text: &str) -> InputDescription {
        InputDescription::parse(text).unwrap()
    }

    #[test]
    fn dual_orthant_and_degenerate() {
        let r = dual(&parse("kind: cone\nrank: 2\ngenerators:\n1 0\n0 1\n")).unwrap();
        assert_eq!(r.results.dual_rays, vec![LatticeVector::from_i64s(&[0, 1]), LatticeVector::from_i64s(&[1, 0])]);
        let err = dual(&parse("kind: cone\nrank: 2\ngenerators:\n1 0\n")).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::Structure(_))));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn roots_rank_one_lattice() {
        let r = roots(&parse("kind: cone\nrank: 1\ngenerators:\n1\n"), Options::default()).unwrap();
        assert_eq!(r.results.rays.len(), 1);
        assert_eq!(r.results.rays[0].roots.len(), 1);
        assert_eq!(r.results.rays[0].roots[0].weight, LatticeVector::from_i64s(&[-1]));
    }

    #[test]
    fn roots_dominant_filter() {
        let input = parse("kind: toric-monoid\nrank: 2\ngenerators:\n1 -1\n0 -2\ncoroots:\n1 0\n");
        let r = roots(&input, Options { box_bound: Some(4), filter_dominant: true }).unwrap();
        let all: Vec<LatticeVector> =
            r.results.rays.iter().flat_map(|x| x.roots.iter().map(|r| r.weight.clone())).collect();
        assert_eq!(all, (0..=4).map(|k| LatticeVector::from_i64s(&[k, 2 - k])).collect::<Vec<_>>());
        let grid = r.results.grid.unwrap();
        assert_eq!(grid.len(), 9);
        let no_coroots = parse("kind: toric-monoid\nrank: 2\ngenerators:\n1 -1\n0 -2\n");
        assert!(roots(&no_coroots, Options { box_bound: None, filter_dominant: true }).is_err());
    }

    #[test]
    fn classify_exit_codes() {
        let bad = parse("kind: rank-one\nrank: 2\nalpha: 2 0\nalpha_dual: 1 0\ngenerators:\n1 1\n1 -1\n");
        assert_eq!(classify(&bad, Options::default()).unwrap_err().exit_code(), 3);
        let f1 = parse("kind: rank-one\nrank: 3\nalpha: 2 0 0\nalpha_dual: 1 0 0\ngenerators:\n1 1 0\n0 0 1\n");
        assert_eq!(classify(&f1, Options { box_bound: Some(0), filter_dominant: false }).unwrap_err().exit_code(), 4);
        let r = classify(&f1, Options::default()).unwrap();
        match r.results {
            ClassifyResults::RankOne(rep) => assert_eq!(rep.g_stable_divisors.len(), 1),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn act_example() {
        let input = parse("kind: toric-monoid\nrank: 2\nroot: -1 2\ngenerators:\n1 0\n0 1\nelement:\n1 3 1\n");
        let r = act(&input).unwrap();
        assert_eq!(r.results.derivative.len(), 1);
        assert_eq!(r.results.derivative[0].weight, LatticeVector::from_i64s(&[2, 3]));
        assert_eq!(r.results.nilpotency[0].index, 4);
        let bad = parse("kind: toric-monoid\nrank: 2\nroot: -1 -1\ngenerators:\n1 0\n0 1\nelement:\n1 3 1\n");
        assert_eq!(act(&bad).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn act_kernel_and_zero_parameter() {
        let base = "kind: toric-monoid\nrank: 2\nroot: -1 2\ngenerators:\n1 0\n0 1\n";
        let kernel = act(&parse(&format!("{base}parameter: 7\nelement:\n2 0 5\n"))).unwrap();
        assert!(kernel.results.derivative.is_empty());
        assert_eq!(kernel.results.exponential[0].weight, kernel.results.element[0].weight);
        assert_eq!(kernel.results.exponential[0].coefficient, kernel.results.element[0].coefficient);
        let zero = act(&parse(&format!("{base}parameter: 0\nelement:\n1 3 1\n-1 1 1\n"))).unwrap();
        let pairs = |t: &[Term]| t.iter().map(|t| (t.weight.clone(), t.coefficient.clone())).collect::<Vec<_>>();
        assert_eq!(pairs(&zero.results.exponential), pairs(&zero.results.element));
    }
}
