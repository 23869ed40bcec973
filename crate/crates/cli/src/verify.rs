//! Built-in self-checks on small inputs with known answers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rootsub_core::fixtures::{f1, f1_horo, orthant, rank_one_line, so3_monoid};
use rootsub_core::lv;
use rootsub_core::{AlgebraElement, Cone, Error, LatticeVector, RankOneDatum, SearchBox, ToricLND};
use serde::Serialize;

use crate::report::{TOOL, VERSION};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TOOL} {VERSION} verify\n");
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.summary.passed, self.summary.failed));
        out
    }
}

type Outcome = Result<String, String>;
type NamedCheck = (&'static str, fn() -> Outcome);

trait Show {
    fn show(&self) -> String;
}

macro_rules! show_display {
    ($($t:ty),*) => {
        $(impl Show for $t {
            fn show(&self) -> String {
                self.to_string()
            }
        })*
    };
}

show_display!(bool, u64, usize, BigInt, LatticeVector, AlgebraElement);

impl<T: Show> Show for Vec<T> {
    fn show(&self) -> String {
        format!("[{}]", self.iter().map(Show::show).collect::<Vec<_>>().join(", "))
    }
}

fn expect<T: PartialEq + Show>(what: &str, found: T, expected: T) -> Outcome {
    if found == expected {
        Ok(format!("{what}: {}", found.show()))
    } else {
        Err(format!("{what}: expected {}, found {}", expected.show(), found.show()))
    }
}

fn core<T>(r: rootsub_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn weights(roots: &[rootsub_core::DemazureRoot]) -> Vec<LatticeVector> {
    roots.iter().map(|r| r.weight.clone()).collect()
}

/// Roots of the orthant for ray `e_i^*`: `-e_i` plus a point of the facet.
fn orthant_roots(n: usize, bound: i64) -> Outcome {
    let m = orthant(n);
    let found: BTreeSet<LatticeVector> =
        m.root_cone().roots_in_box(SearchBox::new(bound as u32)).into_values().flatten().map(|r| r.weight).collect();
    let mut expected = BTreeSet::new();
    for p in SearchBox::new(bound as u32).points(n) {
        let c = p.coords();
        let neg: Vec<usize> = (0..n).filter(|&i| c[i] < BigInt::from(0)).collect();
        if neg.len() == 1 && c[neg[0]] == BigInt::from(-1) {
            expected.insert(p.clone());
        }
    }
    if found == expected {
        Ok(format!("{} roots", found.len()))
    } else {
        Err(format!("expected {} roots, found {}", expected.len(), found.len()))
    }
}

fn derivation() -> Outcome {
    let d = core(ToricLND::new(&orthant(2), &lv![-1, 2]))?;
    let f = AlgebraElement::monomial(lv![3, 1]);
    let got = core(d.apply(&f))?;
    expect("derivative of x^(3, 1)", got, AlgebraElement::term(q(3), lv![2, 3]))
}

fn exponential() -> Outcome {
    let d = core(ToricLND::new(&orthant(2), &lv![-1, 2]))?;
    let f = AlgebraElement::monomial(lv![3, 1]);
    let s = BigRational::new(BigInt::from(1), BigInt::from(2));
    let got = core(d.exp_action(&s, &f))?;
    // (x + s y^2)^3 y with s = 1/2.
    let expected = AlgebraElement::from_terms([
        (lv![3, 1], q(1)),
        (lv![2, 3], BigRational::new(BigInt::from(3), BigInt::from(2))),
        (lv![1, 5], BigRational::new(BigInt::from(3), BigInt::from(4))),
        (lv![0, 7], BigRational::new(BigInt::from(1), BigInt::from(8))),
    ]);
    expect("exp(s d)(x^(3, 1)) at s = 1/2", got, expected)
}

fn nilpotency() -> Outcome {
    let d = core(ToricLND::new(&orthant(2), &lv![-1, 2]))?;
    expect("index at (3, 1)", core(d.nilpotency_index(&lv![3, 1]))?, 4)
}

fn so3_membership() -> Outcome {
    let m = so3_monoid();
    let probes = [lv![1, -1], lv![0, -2], lv![2, -4], lv![1, 0], lv![0, -1], lv![2, 0]];
    let found: Vec<bool> = probes.iter().map(|p| m.contains(p)).collect();
    expect("membership of (1,-1) (0,-2) (2,-4) (1,0) (0,-1) (2,0)", found, vec![true, true, true, false, false, false])
}

fn so3_dominant_roots() -> Outcome {
    let m = so3_monoid();
    let coroot = lv![1, 0];
    let mut found: Vec<LatticeVector> = m
        .root_cone()
        .roots_in_box(SearchBox::new(4))
        .into_values()
        .flatten()
        .map(|r| r.weight)
        .filter(|w| coroot.pair(w).map(|x| x >= BigInt::from(0)).unwrap_or(false))
        .collect();
    found.sort();
    let expected: Vec<LatticeVector> = (0..=4).map(|k| lv![k, 2 - k]).collect();
    expect("dominant roots at bound 4", found, expected)
}

fn line() -> Outcome {
    let bar = core(rank_one_line().build_bar())?;
    let bx = SearchBox::new(3);
    let v = weights(&bar.vertical_weights(bx));
    expect("vertical weights", v, vec![lv![1, -1], lv![2, 0], lv![3, 1]])?;
    let h = weights(&core(bar.horizontal_weights(bx))?);
    expect("horizontal weights", h, vec![])
}

fn f1_rays() -> Outcome {
    let bar = core(f1().build_bar())?;
    let r = bar.lattice().rank() - 1;
    let mut pairings: Vec<BigInt> = bar.ebar_rays().iter().map(|x| x.coords()[r].clone()).collect();
    pairings.sort();
    expect("pairings of the rays with alpha", pairings, vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)])
}

fn f1_horizontal() -> Outcome {
    let bar = core(f1().build_bar())?;
    let h = weights(&core(bar.horizontal_weights(SearchBox::new(5)))?);
    expect("horizontal weights", h, (0..=5).map(|c| lv![c, c, -1]).collect())
}

fn f1_exclusion() -> Outcome {
    let bar = core(f1().build_bar())?;
    expect("weights excluded by rho0'", core(bar.rho0p_exclusion(SearchBox::new(5)))?, vec![])
}

fn f1_moving_root() -> Outcome {
    let bar = core(f1().build_bar())?;
    let rays = bar.gstable_rays().to_vec();
    expect("G-stable rays", rays.len(), 1)?;
    let m = core(bar.gstable_moving_root(&rays[0], SearchBox::new(5)))?;
    expect("moving weight", m.root.weight, lv![0, 0, -1])
}

fn f1_agreement() -> Outcome {
    let bx = SearchBox::new(5);
    let bar = core(f1().build_bar())?;
    let a = weights(&core(bar.horizontal_weights(bx))?);
    let b = weights(&f1_horo().horizontal_weight_set(bx));
    expect("horizontal sets agree", a == b, true)
}

fn f1_gstable() -> Outcome {
    let h = f1_horo();
    let rays = h.g_stable_divisor_rays();
    expect("G-stable rays", rays.len(), 1)?;
    let w = core(h.moving_witness(&rays[0], SearchBox::new(5)))?;
    expect("witness weight", w.root.weight, lv![0, 0, -1])
}

fn f1_not_g_saturated() -> Outcome {
    match f1_horo().g_saturation_witness(SearchBox::new(5)) {
        Some(w) => Ok(format!("witness {w}")),
        None => Err("no witness found".into()),
    }
}

fn toric_rejection() -> Outcome {
    match RankOneDatum::new(lv![2, 0], lv![1, 0], vec![lv![1, 1], lv![1, -1]]) {
        Err(Error::NotToric { combination }) => Ok(format!("alpha = {combination}")),
        Err(e) => Err(format!("unexpected error: {e}")),
        Ok(_) => Err("accepted".into()),
    }
}

fn degenerate_rejection() -> Outcome {
    let cone = core(Cone::new(2, vec![lv![1, 0]]))?;
    match cone.dual_rays() {
        Err(Error::Structure(_)) => {}
        other => return Err(format!("dual of a half-line: {other:?}")),
    }
    let datum = core(RankOneDatum::new(lv![2, 0], lv![1, 0], vec![lv![0, 1]]))?;
    match datum.build_bar() {
        Err(Error::Structure(_)) => Ok("half-line and reflection-fixed weights rejected".into()),
        Err(e) => Err(format!("unexpected error: {e}")),
        Ok(_) => Err("accepted".into()),
    }
}

/// Runs every check in a fixed order.
pub fn run() -> VerifyReport {
    let checks: [NamedCheck; 18] = [
        ("orthant-2-roots", || orthant_roots(2, 3)),
        ("orthant-3-roots", || orthant_roots(3, 3)),
        ("derivation", derivation),
        ("exponential", exponential),
        ("nilpotency", nilpotency),
        ("so3-membership", so3_membership),
        ("so3-dominant-roots", so3_dominant_roots),
        ("line-vertical-horizontal", line),
        ("f1-rays", f1_rays),
        ("f1-horizontal", f1_horizontal),
        ("f1-rho0-prime-exclusion", f1_exclusion),
        ("f1-moving-root", f1_moving_root),
        ("f1-agreement", f1_agreement),
        ("f1-g-stable-witness", f1_gstable),
        ("f1-not-g-saturated", f1_not_g_saturated),
        ("toric-criterion", toric_rejection),
        ("degenerate-cones", degenerate_rejection),
        ("unit-parameter", unit_parameter),
    ];
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check { name, passed, detail }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    VerifyReport { tool: TOOL, version: VERSION, checks, summary: Summary { passed, failed } }
}

/// `exp(d)` maps `x^(1, 0)` to `x^(1, 0) + x^(0, 2)`.
fn unit_parameter() -> Outcome {
    let d = core(ToricLND::new(&orthant(2), &lv![-1, 2]))?;
    let got = core(d.exp_action(&BigRational::one(), &AlgebraElement::monomial(lv![1, 0])))?;
    expect("exp(d)(x^(1, 0))", got, AlgebraElement::from_terms([(lv![1, 0], q(1)), (lv![0, 2], q(1))]))
}
