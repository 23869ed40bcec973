//! Report envelope shared by all commands.

use serde::Serialize;

pub const TOOL: &str = "rootsub";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A command result with the canonical echo of its input.
///
/// Every list inside is in a canonical order and nothing depends on time or
/// environment, so identical inputs give byte-identical JSON.
#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Canonical text of the input; parses back to the same description.
    pub input: String,
    pub box_bound: Option<u32>,
    pub warnings: Vec<String>,
    pub results: T,
    /// Human-readable rendering, omitted from JSON.
    #[serde(skip)]
    pub text: String,
}

impl<T: Serialize> Report<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{TOOL} {VERSION} {}\n", self.command));
        if let Some(b) = self.box_bound {
            out.push_str(&format!("box bound: {b}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&self.text);
        out
    }
}
