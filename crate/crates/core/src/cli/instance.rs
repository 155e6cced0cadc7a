use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::suite::Suite;
use crate::finset::{corpus, monoid_name, ActionTable, MonoidTable, TableError};

const BUILTIN: &str = "builtin:";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("field `{field}`: {source}")]
    Table { field: &'static str, source: TableError },
    #[error("field `{field}`: {law} fails at {at}")]
    Law { field: &'static str, law: String, at: String },
}

/// Size bounds for the enumerations behind each suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest base set.
    pub base: usize,
    /// Largest carrier of a (co)module, Hopf module included.
    pub em: usize,
    /// Largest carrier of a module over sets over `c`.
    pub comma: usize,
}

impl Budgets {
    /// Largest default EM budget: hom-sets between free modules are enumerated map by map,
    /// and `8^8` maps already take seconds.
    pub const EM_CAP: usize = 6;

    /// Largest default comma budget: sets over a four-element set on seven points take tens of seconds.
    pub const COMMA_CAP: usize = 6;

    /// Defaults that keep the free objects of the instance within reach, up to the caps.
    /// A base above a cap raises that cap to the base.
    pub fn derived(base: usize, monoid: &MonoidTable, action: &ActionTable) -> Self {
        let em = (base * monoid.order()).min(Self::EM_CAP.max(base));
        let comma = (base * action.size().max(1)).min(Self::COMMA_CAP.max(base));
        Budgets { base, em, comma }
    }
}

/// A validated instance: one monoid, one action of it, a point of the action and budgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub name: String,
    pub monoid_name: String,
    pub monoid: MonoidTable,
    pub action: ActionTable,
    pub point: usize,
    pub budgets: Budgets,
    /// `None` runs every suite.
    pub suites: Option<Vec<Suite>>,
}

impl InstanceSpec {
    pub fn new(name: impl Into<String>, action: ActionTable, base: usize) -> Self {
        let monoid = action.monoid().clone();
        InstanceSpec {
            name: name.into(),
            monoid_name: monoid_name(&monoid),
            budgets: Budgets::derived(base, &monoid, &action),
            monoid,
            action,
            point: 0,
            suites: None,
        }
    }

    /// The requested suites, in canonical order.
    pub fn selected(&self) -> Vec<Suite> {
        let mut suites = self.suites.clone().unwrap_or_else(Suite::all);
        suites.sort();
        suites.dedup();
        suites
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableSource {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBudget {
    base: Option<usize>,
    em: Option<usize>,
    comma: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: String,
    monoid: TableSource,
    action: Option<TableSource>,
    point: Option<usize>,
    budget: Option<RawBudget>,
    suites: Option<Vec<String>>,
}

pub fn parse_instance(path: &Path, default_base: usize) -> Result<InstanceSpec, ParseError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_instance_str(&text, default_base)
}

/// Parses the TOML instance grammar; `default_base` applies when `budget.base` is absent.
pub fn parse_instance_str(text: &str, default_base: usize) -> Result<InstanceSpec, ParseError> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        ParseError::Syntax { line, column, message: e.message().trim().to_string() }
    })?;

    let (monoid_name, monoid) = resolve_monoid(&raw.monoid)?;
    let action = match &raw.action {
        None => ActionTable::regular(&monoid),
        Some(source) => resolve_action(source, &monoid_name, &monoid)?,
    };
    let point = raw.point.unwrap_or(0);
    if point >= action.size() {
        return Err(ParseError::Field {
            field: "point",
            message: format!("{point} is not a point of a {}-element action", action.size()),
        });
    }
    let base = raw.budget.as_ref().and_then(|b| b.base).unwrap_or(default_base);
    if base == 0 {
        return Err(ParseError::Field { field: "budget.base", message: "must be positive".into() });
    }
    let mut budgets = Budgets::derived(base, &monoid, &action);
    if let Some(b) = &raw.budget {
        budgets.em = b.em.unwrap_or(budgets.em);
        budgets.comma = b.comma.unwrap_or(budgets.comma);
    }
    let suites = raw
        .suites
        .map(|names| {
            names
                .iter()
                .map(|n| n.parse::<Suite>().map_err(|message| ParseError::Field { field: "suites", message }))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(InstanceSpec { name: raw.name, monoid_name, monoid, action, point, budgets, suites })
}

fn to_rows(field: &'static str, rows: &[Vec<i64>]) -> Result<Vec<Vec<u32>>, ParseError> {
    rows.iter()
        .enumerate()
        .map(|(row, r)| {
            r.iter()
                .enumerate()
                .map(|(col, &v)| {
                    u32::try_from(v).map_err(|_| ParseError::Field {
                        field,
                        message: format!("cell ({row},{col}) holds {v}, not a table entry"),
                    })
                })
                .collect()
        })
        .collect()
}

fn resolve_monoid(source: &TableSource) -> Result<(String, MonoidTable), ParseError> {
    let field = "monoid";
    match source {
        TableSource::Named(name) => {
            let key = name.strip_prefix(BUILTIN).ok_or_else(|| ParseError::Field {
                field,
                message: format!("expected `{BUILTIN}NAME` or a table, got {name:?}"),
            })?;
            let table = corpus()
                .monoid(key)
                .cloned()
                .ok_or_else(|| ParseError::Field { field, message: format!("no built-in monoid {key:?}") })?;
            Ok((key.to_string(), table))
        }
        TableSource::Rows(rows) => {
            let table =
                MonoidTable::from_rows(&to_rows(field, rows)?).map_err(|source| ParseError::Table { field, source })?;
            lawful(field, table.check())?;
            Ok((monoid_name(&table), table))
        }
    }
}

fn resolve_action(source: &TableSource, monoid_name: &str, monoid: &MonoidTable) -> Result<ActionTable, ParseError> {
    let field = "action";
    match source {
        TableSource::Named(name) => {
            let key = name.strip_prefix(BUILTIN).ok_or_else(|| ParseError::Field {
                field,
                message: format!("expected `{BUILTIN}NAME` or a table, got {name:?}"),
            })?;
            let named = corpus()
                .action(key)
                .cloned()
                .ok_or_else(|| ParseError::Field { field, message: format!("no built-in action {key:?}") })?;
            if named.monoid != monoid_name || named.action.monoid() != monoid {
                return Err(ParseError::Field {
                    field,
                    message: format!("{key} is an action of {}, not of {monoid_name}", named.monoid),
                });
            }
            Ok(named.action)
        }
        TableSource::Rows(rows) => {
            let size = rows.first().map_or(0, Vec::len);
            let action = ActionTable::from_rows(monoid.clone(), size, &to_rows(field, rows)?)
                .map_err(|source| ParseError::Table { field, source })?;
            lawful(field, action.check())?;
            Ok(action)
        }
    }
}

fn lawful(field: &'static str, v: crate::fincat::Verdict) -> Result<(), ParseError> {
    match v.witness {
        Some(w) if !v.is_pass() => Err(ParseError::Law { field, law: w.law, at: w.at }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_z2() {
        let spec = parse_instance_str("name = \"z2\"\nmonoid = [[0, 1], [1, 0]]\n[budget]\nbase = 6\n", 2).unwrap();
        assert_eq!(spec.monoid, MonoidTable::cyclic(2));
        assert_eq!(spec.monoid_name, "Z2");
        assert_eq!(spec.budgets, Budgets { base: 6, em: 6, comma: 6 });
        assert_eq!(spec.action, ActionTable::regular(&spec.monoid));
    }

    #[test]
    fn builtin_shorthand() {
        let spec = parse_instance_str(
            "name = \"i\"\nmonoid = \"builtin:Idem2\"\naction = \"builtin:Idem2.trivial2\"\npoint = 1\n",
            2,
        )
        .unwrap();
        assert_eq!(spec.monoid, MonoidTable::idem2());
        assert_eq!(spec.action, ActionTable::trivial(&MonoidTable::idem2(), 2));
        assert_eq!(spec.point, 1);
        assert_eq!(spec.budgets.base, 2);
    }

    #[test]
    fn out_of_range_cell() {
        let err = parse_instance_str("name = \"x\"\nmonoid = [[0, 1], [1, 2]]\n", 2).unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Table {
                    field: "monoid",
                    source: TableError::OutOfRange { row: 1, col: 1, value: 2, bound: 2 }
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn non_associative_table() {
        // 1·(1·2) = 1·0 = 1 but (1·1)·2 = 0·2 = 2.
        let err = parse_instance_str("name = \"x\"\nmonoid = [[0, 1, 2], [1, 0, 0], [2, 2, 2]]\n", 2).unwrap_err();
        assert!(matches!(err, ParseError::Law { field: "monoid", .. }), "{err}");
    }

    #[test]
    fn syntax_error_names_the_line() {
        let err = parse_instance_str("name = \"x\"\nmonoid = [[0, 1]\n", 2).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. } | ParseError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn unknown_suite_and_field() {
        assert!(matches!(
            parse_instance_str("name = \"x\"\nmonoid = \"builtin:Z2\"\nsuites = [\"nope\"]\n", 2),
            Err(ParseError::Field { field: "suites", .. })
        ));
        assert!(matches!(
            parse_instance_str("name = \"x\"\nmonoid = \"builtin:Z2\"\ncolour = 1\n", 2),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance_str("name = \"x\"\nmonoid = \"Z2\"\n", 2),
            Err(ParseError::Field { field: "monoid", .. })
        ));
    }

    #[test]
    fn mismatched_builtin_action() {
        let err = parse_instance_str("name = \"x\"\nmonoid = \"builtin:Z2\"\naction = \"builtin:Z3.regular\"\n", 2)
            .unwrap_err();
        assert!(matches!(err, ParseError::Field { field: "action", .. }));
    }

    #[test]
    fn point_must_exist() {
        let err = parse_instance_str("name = \"x\"\nmonoid = \"builtin:Z2\"\npoint = 2\n", 2).unwrap_err();
        assert!(matches!(err, ParseError::Field { field: "point", .. }));
    }

    #[test]
    fn empty_suite_list_is_kept() {
        let spec = parse_instance_str("name = \"x\"\nmonoid = \"builtin:Z1\"\nsuites = []\n", 2).unwrap();
        assert!(spec.selected().is_empty());
    }
}
