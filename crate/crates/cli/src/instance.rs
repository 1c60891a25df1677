//! Instance files: TOML documents describing two generators, four discs
//! and run options.
//!
//! ```toml
//! version = 1
//!
//! [[generators]]
//! matrix = [["t^2 - t^8", "-t^6 + t^10"], ["1 - t^4", "-t^4 + t^6"]]
//!
//! [[discs]]
//! label = "B1"
//! center = "t^4"
//! log_radius = "-5"
//!
//! [options]
//! precision = 32
//! grid = "1/16"
//! words = 4
//! join_edges = [{ labels = ["S1", "T3"], length = "1/2" }]
//! ```

use std::ops::Range;

use mumford_trop::faithful_trop::{JoinEdge, Label};
use mumford_trop::moebius_schottky::{Disc, MoebiusMap, SchottkyRank2};
use mumford_trop::valued_field::{format_puiseux, parse_puiseux, parse_rat};
use mumford_trop::{PuiseuxNumber, Rat};
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::CliError;

pub const FORMAT_VERSION: i64 = 1;
const DISC_LABELS: [&str; 4] = ["B1", "C1", "B2", "C2"];

/// The raw document as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: i64,
    pub generators: Vec<GeneratorEntry>,
    pub discs: Vec<DiscEntry>,
    #[serde(default, skip_serializing_if = "OptionsEntry::is_empty")]
    pub options: OptionsEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub matrix: [[Spanned<String>; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscEntry {
    pub label: Spanned<String>,
    pub center: Spanned<String>,
    pub log_radius: Spanned<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub join_edges: Vec<JoinEntry>,
}

impl OptionsEntry {
    fn is_empty(&self) -> bool {
        *self == OptionsEntry::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JoinEntry {
    pub labels: [Spanned<String>; 2],
    pub length: Spanned<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub precision: Option<i64>,
    pub grid: Option<Rat>,
    pub words: Option<usize>,
    pub join_edges: Vec<JoinEdge>,
}

/// A parsed and type-checked instance. The fundamental domain is not
/// verified here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub schottky: SchottkyRank2,
    pub options: RunOptions,
}

/// 1-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn error_at(&self, offset: usize, message: impl Into<String>) -> CliError {
        let (line, column) = line_column(self.text, offset);
        CliError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error_in(&self, span: Range<usize>, message: impl Into<String>) -> CliError {
        self.error_at(span.start, message)
    }

    /// Byte offset in the source of character `pos` of a string value.
    fn inner_offset(&self, s: &Spanned<String>, pos: usize) -> usize {
        let start = s.span().start;
        let quote = match self.text.get(start..) {
            Some(rest) if rest.starts_with("\"\"\"") || rest.starts_with("'''") => 3,
            Some(rest) if rest.starts_with('"') || rest.starts_with('\'') => 1,
            _ => 0,
        };
        let byte: usize = s.get_ref().chars().take(pos).map(char::len_utf8).sum();
        start + quote + byte
    }

    fn puiseux(&self, s: &Spanned<String>) -> Result<PuiseuxNumber, CliError> {
        parse_puiseux(s.get_ref()).map_err(|e| {
            self.error_at(self.inner_offset(s, e.position), format!("series: {}", e.message))
        })
    }

    fn rational(&self, s: &Spanned<String>) -> Result<Rat, CliError> {
        parse_rat(s.get_ref()).map_err(|e| {
            self.error_at(self.inner_offset(s, e.position), format!("rational: {}", e.message))
        })
    }
}

/// Parses an instance document, reporting problems with 1-based line and
/// column numbers.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let src = Source { text };
    let file: InstanceFile = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        src.error_at(offset, e.message().to_string())
    })?;
    if file.version != FORMAT_VERSION {
        return Err(src.error_at(
            text.find("version").unwrap_or(0),
            format!("unsupported version {} (expected {FORMAT_VERSION})", file.version),
        ));
    }
    if file.generators.len() != 2 {
        return Err(src.error_at(
            text.find("generators").unwrap_or(0),
            format!("expected 2 generators, found {}", file.generators.len()),
        ));
    }
    let mut gens = Vec::with_capacity(2);
    for g in &file.generators {
        let [[a, b], [c, d]] = &g.matrix;
        let m = MoebiusMap::new(src.puiseux(a)?, src.puiseux(b)?, src.puiseux(c)?, src.puiseux(d)?)
            .map_err(|e| src.error_in(a.span(), e.to_string()))?;
        gens.push(m);
    }

    let mut discs: [Option<Disc>; 4] = Default::default();
    for d in &file.discs {
        let Some(k) = DISC_LABELS.iter().position(|l| l == d.label.get_ref()) else {
            return Err(src.error_in(
                d.label.span(),
                format!("unknown disc label '{}' (expected B1, C1, B2 or C2)", d.label.get_ref()),
            ));
        };
        if discs[k].is_some() {
            return Err(src.error_in(d.label.span(), format!("duplicate disc {}", DISC_LABELS[k])));
        }
        discs[k] = Some(Disc::new(src.puiseux(&d.center)?, src.rational(&d.log_radius)?));
    }
    let missing: Vec<&str> = (0..4)
        .filter(|k| discs[*k].is_none())
        .map(|k| DISC_LABELS[k])
        .collect();
    if !missing.is_empty() {
        return Err(src.error_at(
            text.find("discs").unwrap_or(0),
            format!("missing discs: {}", missing.join(", ")),
        ));
    }
    let [b1, c1, b2, c2] = discs.map(|d| d.expect("checked"));
    let [g1, g2]: [MoebiusMap; 2] = gens.try_into().expect("two generators");
    let schottky = SchottkyRank2::new([g1, g2], [b1, b2], [c1, c2]);

    let opts = &file.options;
    if let Some(p) = opts.precision {
        if p < 1 {
            return Err(src.error_at(
                text.find("precision").unwrap_or(0),
                format!("precision must be positive, got {p}"),
            ));
        }
    }
    let grid = match &opts.grid {
        Some(g) => {
            let step = src.rational(g)?;
            if step <= Rat::from_integer(0.into()) {
                return Err(src.error_in(g.span(), "grid step must be positive"));
            }
            Some(step)
        }
        None => None,
    };
    let mut join_edges = Vec::new();
    for j in &opts.join_edges {
        let label = |s: &Spanned<String>| -> Result<Label, CliError> {
            s.get_ref().parse().map_err(|e: String| src.error_in(s.span(), e))
        };
        let length = src.rational(&j.length)?;
        if length < Rat::from_integer(0.into()) {
            return Err(src.error_in(j.length.span(), "join edge length must be nonnegative"));
        }
        join_edges.push(JoinEdge {
            labels: (label(&j.labels[0])?, label(&j.labels[1])?),
            length,
        });
    }
    Ok(Instance {
        schottky,
        options: RunOptions {
            precision: opts.precision,
            grid,
            words: opts.words,
            join_edges,
        },
    })
}

fn plain(s: String) -> Spanned<String> {
    Spanned::new(0..0, s)
}

fn series(x: &PuiseuxNumber) -> Spanned<String> {
    plain(format_puiseux(x))
}

/// Writes an instance back in file form.
pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    let s = &inst.schottky;
    let generators = s
        .gens
        .iter()
        .map(|m| GeneratorEntry {
            matrix: [[series(&m.a), series(&m.b)], [series(&m.c), series(&m.d)]],
        })
        .collect();
    let discs = s
        .discs()
        .iter()
        .map(|(label, d)| DiscEntry {
            label: plain(label.to_string()),
            center: series(&d.center),
            log_radius: plain(d.log_radius.to_string()),
        })
        .collect();
    let o = &inst.options;
    InstanceFile {
        version: FORMAT_VERSION,
        generators,
        discs,
        options: OptionsEntry {
            precision: o.precision,
            grid: o.grid.as_ref().map(|g| plain(g.to_string())),
            words: o.words,
            join_edges: o
                .join_edges
                .iter()
                .map(|j| JoinEntry {
                    labels: [plain(j.labels.0.to_string()), plain(j.labels.1.to_string())],
                    length: plain(j.length.to_string()),
                })
                .collect(),
        },
    }
}

pub fn instance_to_toml(inst: &Instance) -> String {
    toml::to_string(&instance_to_file(inst)).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use mumford_trop::moebius_schottky::reference;

    const SE1: &str = include_str!("../../../instances/se1.toml");

    #[test]
    fn reference_file_matches_library_instance() {
        let inst = parse_instance(SE1).unwrap();
        assert_eq!(inst.schottky, reference::se1());
        assert_eq!(inst.options.grid, Some(Rat::new(1.into(), 16.into())));
    }

    #[test]
    fn round_trip() {
        let inst = parse_instance(SE1).unwrap();
        let again = parse_instance(&instance_to_toml(&inst)).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn series_error_position() {
        let text = SE1.replacen("center = \"t^4\"", "center = \"t^4 + *\"", 1);
        let line = text.lines().position(|l| l.contains("t^4 + *")).unwrap() + 1;
        let col = text.lines().nth(line - 1).unwrap().find('*').unwrap() + 1;
        match parse_instance(&text) {
            Err(CliError::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, col)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toml_syntax_error_position() {
        let err = parse_instance("version = 1\ngenerators = [\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2 | 3, .. }), "{err:?}");
    }

    #[test]
    fn structural_errors() {
        let text = SE1.replacen("label = \"C2\"", "label = \"D2\"", 1);
        assert!(matches!(parse_instance(&text), Err(CliError::Parse { .. })));
        let text = SE1.replacen("version = 1", "version = 7", 1);
        let line = text.lines().position(|l| l.starts_with("version")).unwrap() + 1;
        match parse_instance(&text) {
            Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn line_column_counts_characters() {
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
        assert_eq!(line_column("ab", 0), (1, 1));
    }
}
