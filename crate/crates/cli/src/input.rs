//! Line-oriented input descriptions.
//!
//! ```text
//! # comments start with '#'
//! kind: rank-one
//! rank: 3
//! box: 5
//! alpha: 2 0 0
//! alpha_dual: 1 0 0
//! generators:
//!   1 1 0
//!   0 0 1
//! ```
//!
//! Scalar keys are `kind`, `rank`, `box`, `alpha`, `alpha_dual`, `root` and
//! `parameter`. The sections `generators:`, `coroots:` and `element:` take one
//! vector per line; `element:` lines are `coefficient exponents...` with an
//! optional rational coefficient such as `-3/2`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rootsub_core::LatticeVector;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cone,
    ToricMonoid,
    RankOne,
    Horospherical,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cone => "cone",
            Kind::ToricMonoid => "toric-monoid",
            Kind::RankOne => "rank-one",
            Kind::Horospherical => "horospherical",
        }
    }
}

impl FromStr for Kind {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "cone" => Ok(Kind::Cone),
            "toric-monoid" => Ok(Kind::ToricMonoid),
            "rank-one" => Ok(Kind::RankOne),
            "horospherical" => Ok(Kind::Horospherical),
            other => Err(CliError::Parse(format!(
                "unknown kind '{other}' (expected cone, toric-monoid, rank-one or horospherical)"
            ))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDescription {
    pub kind: Kind,
    pub rank: usize,
    pub generators: Vec<LatticeVector>,
    pub alpha: Option<LatticeVector>,
    pub alpha_dual: Option<LatticeVector>,
    pub coroots: Option<Vec<LatticeVector>>,
    pub box_bound: Option<u32>,
    pub root: Option<LatticeVector>,
    pub element: Option<Vec<(LatticeVector, BigRational)>>,
    pub parameter: Option<BigRational>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Generators,
    Coroots,
    Element,
}

/// Parses space-separated integers; `at` locates the text in error messages.
pub fn parse_vector(text: &str, rank: Option<usize>, at: &str) -> Result<LatticeVector, CliError> {
    let coords = text
        .split_whitespace()
        .map(|t| BigInt::from_str(t).map_err(|_| CliError::Parse(format!("{at}: '{t}' is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(r) = rank {
        if coords.len() != r {
            return Err(CliError::Parse(format!("{at}: expected {r} coordinates, found {}", coords.len())));
        }
    }
    Ok(LatticeVector::new(coords))
}

pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Parse(format!("'{text}' is not a rational number"));
    match text.split_once('/') {
        None => BigInt::from_str(text).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Parses `coefficient exponents...`.
pub fn parse_term(text: &str, rank: Option<usize>, at: &str) -> Result<(LatticeVector, BigRational), CliError> {
    let text = text.trim();
    let (coef, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let c = parse_rational(coef).map_err(|e| CliError::Parse(format!("{at}: {e}")))?;
    Ok((parse_vector(rest, rank, at)?, c))
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(CliError::Parse(format!("line {line}: duplicate key '{key}'")));
    }
    *slot = Some(value);
    Ok(())
}

impl InputDescription {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut kind = None;
        let mut rank = None;
        let mut box_bound = None;
        let mut alpha_text = None;
        let mut alpha_dual_text = None;
        let mut root_text = None;
        let mut parameter = None;
        let mut generators: Option<Vec<(usize, String)>> = None;
        let mut coroots: Option<Vec<(usize, String)>> = None;
        let mut element: Option<Vec<(usize, String)>> = None;
        let mut section = Section::None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some((key, value)) = content.split_once(':') {
                let key = key.trim();
                let value = value.trim();
                section = Section::None;
                match key {
                    "kind" => set_once(&mut kind, Kind::from_str(value)?, key, line)?,
                    "rank" => {
                        let r = value
                            .parse::<usize>()
                            .map_err(|_| CliError::Parse(format!("line {line}: rank must be a nonnegative integer")))?;
                        set_once(&mut rank, r, key, line)?
                    }
                    "box" => {
                        let b = value
                            .parse::<u32>()
                            .map_err(|_| CliError::Parse(format!("line {line}: box must be a nonnegative integer")))?;
                        set_once(&mut box_bound, b, key, line)?
                    }
                    "alpha" => set_once(&mut alpha_text, (line, value.to_string()), key, line)?,
                    "alpha_dual" => set_once(&mut alpha_dual_text, (line, value.to_string()), key, line)?,
                    "root" => set_once(&mut root_text, (line, value.to_string()), key, line)?,
                    "parameter" => set_once(
                        &mut parameter,
                        parse_rational(value).map_err(|e| CliError::Parse(format!("line {line}: {e}")))?,
                        key,
                        line,
                    )?,
                    "generators" | "coroots" | "element" => {
                        if !value.is_empty() {
                            return Err(CliError::Parse(format!("line {line}: section '{key}' takes no inline value")));
                        }
                        let (slot, s) = match key {
                            "generators" => (&mut generators, Section::Generators),
                            "coroots" => (&mut coroots, Section::Coroots),
                            _ => (&mut element, Section::Element),
                        };
                        set_once(slot, Vec::new(), key, line)?;
                        section = s;
                    }
                    other => return Err(CliError::Parse(format!("line {line}: unknown key '{other}'"))),
                }
                continue;
            }
            let target = match section {
                Section::Generators => generators.as_mut(),
                Section::Coroots => coroots.as_mut(),
                Section::Element => element.as_mut(),
                Section::None => None,
            };
            match target {
                Some(list) => list.push((line, content.to_string())),
                None => return Err(CliError::Parse(format!("line {line}: data outside a section"))),
            }
        }

        let kind = kind.ok_or_else(|| CliError::Parse("missing 'kind'".into()))?;
        let rank = rank.ok_or_else(|| CliError::Parse("missing 'rank'".into()))?;
        let r = Some(rank);
        let vectors = |rows: Option<Vec<(usize, String)>>| -> Result<Option<Vec<LatticeVector>>, CliError> {
            rows.map(|rows| rows.iter().map(|(l, t)| parse_vector(t, r, &format!("line {l}"))).collect()).transpose()
        };
        let single = |v: Option<(usize, String)>| v.map(|(l, t)| parse_vector(&t, r, &format!("line {l}"))).transpose();
        let desc = InputDescription {
            kind,
            rank,
            generators: vectors(generators)?.unwrap_or_default(),
            alpha: single(alpha_text)?,
            alpha_dual: single(alpha_dual_text)?,
            coroots: vectors(coroots)?,
            box_bound,
            root: single(root_text)?,
            element: element
                .map(|rows| rows.iter().map(|(l, t)| parse_term(t, r, &format!("line {l}"))).collect())
                .transpose()?,
            parameter,
        };
        desc.validate()?;
        Ok(desc)
    }

    fn validate(&self) -> Result<(), CliError> {
        match self.kind {
            Kind::RankOne => {
                if self.alpha.is_none() || self.alpha_dual.is_none() {
                    return Err(CliError::Parse("kind rank-one requires 'alpha' and 'alpha_dual'".into()));
                }
            }
            Kind::Horospherical => {
                if self.coroots.is_none() {
                    return Err(CliError::Parse("kind horospherical requires a 'coroots:' section".into()));
                }
            }
            Kind::Cone | Kind::ToricMonoid => {}
        }
        Ok(())
    }

    /// Canonical text form; parsing it gives back `self`.
    pub fn render(&self) -> String {
        let vec = |v: &LatticeVector| v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "kind: {}", self.kind);
        let _ = writeln!(out, "rank: {}", self.rank);
        if let Some(b) = self.box_bound {
            let _ = writeln!(out, "box: {b}");
        }
        if let Some(a) = &self.alpha {
            let _ = writeln!(out, "alpha: {}", vec(a));
        }
        if let Some(a) = &self.alpha_dual {
            let _ = writeln!(out, "alpha_dual: {}", vec(a));
        }
        if let Some(e) = &self.root {
            let _ = writeln!(out, "root: {}", vec(e));
        }
        if let Some(s) = &self.parameter {
            let _ = writeln!(out, "parameter: {s}");
        }
        let _ = writeln!(out, "generators:");
        for g in &self.generators {
            let _ = writeln!(out, "  {}", vec(g));
        }
        if let Some(cs) = &self.coroots {
            let _ = writeln!(out, "coroots:");
            for c in cs {
                let _ = writeln!(out, "  {}", vec(c));
            }
        }
        if let Some(terms) = &self.element {
            let _ = writeln!(out, "element:");
            for (u, c) in terms {
                let _ = writeln!(out, "  {c} {}", vec(u));
            }
        }
        out
    }
}
