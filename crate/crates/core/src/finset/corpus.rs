use serde::Serialize;

use super::monoid::{monoids_of_order, ActionTable, MonoidTable};
use super::mset::MSetsOver;
use crate::fincat::Category;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedMonoid {
    pub name: String,
    pub table: MonoidTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedAction {
    pub name: String,
    pub monoid: String,
    pub action: ActionTable,
}

/// The built-in battery of monoids and actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub monoids: Vec<NamedMonoid>,
    pub actions: Vec<NamedAction>,
}

impl Corpus {
    pub fn monoid(&self, name: &str) -> Option<&MonoidTable> {
        self.monoids.iter().find(|m| m.name == name).map(|m| &m.table)
    }

    pub fn action(&self, name: &str) -> Option<&NamedAction> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn actions_of<'a>(&'a self, monoid: &'a str) -> impl Iterator<Item = &'a NamedAction> + 'a {
        self.actions.iter().filter(move |a| a.monoid == monoid)
    }
}

/// Name of a monoid of order at most four, following the corpus conventions.
pub fn monoid_name(m: &MonoidTable) -> String {
    let named = [
        ("Z1", MonoidTable::trivial()),
        ("Z2", MonoidTable::cyclic(2)),
        ("Idem2", MonoidTable::idem2()),
        ("Z3", MonoidTable::cyclic(3)),
        ("Z4", MonoidTable::cyclic(4)),
        ("V4", MonoidTable::klein_four()),
    ];
    if let Some((name, _)) = named.iter().find(|(_, t)| t.is_isomorphic(m)) {
        return (*name).to_string();
    }
    let c = m.canonical();
    let k = c.order();
    let code: String =
        (1..k).flat_map(|a| (1..k).map(move |b| (a, b))).map(|(a, b)| char::from(b'0' + c.mul(a, b) as u8)).collect();
    format!("M{k}_{code}")
}

/// Klein four acting on the cosets of the subgroup `{0, 1}`.
pub fn klein_on_cosets() -> ActionTable {
    let v4 = MonoidTable::klein_four();
    ActionTable::from_rows(v4, 2, &[vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]).expect("well-formed table")
}

pub fn corpus() -> Corpus {
    let mut monoids: Vec<NamedMonoid> = (1..=3)
        .flat_map(monoids_of_order)
        .map(|table| NamedMonoid { name: monoid_name(&table), table: canonical_presentation(table) })
        .collect();
    monoids.push(NamedMonoid { name: "V4".into(), table: MonoidTable::klein_four() });

    let mut actions = Vec::new();
    for m in &monoids {
        let mut add = |suffix: String, action: ActionTable| {
            actions.push(NamedAction { name: format!("{}.{suffix}", m.name), monoid: m.name.clone(), action });
        };
        add("regular".into(), ActionTable::regular(&m.table));
        add("trivial1".into(), ActionTable::trivial(&m.table, 1));
        add("trivial2".into(), ActionTable::trivial(&m.table, 2));
    }
    for name in ["Z2", "Z3"] {
        let table = monoids.iter().find(|m| m.name == name).expect("corpus group").table.clone();
        let plain = MSetsOver::plain(&table, 4);
        for n in 1..=4 {
            for class in plain.classes_on(n) {
                let action = class.action_table(&table);
                if !action.is_transitive() {
                    continue;
                }
                let known = actions
                    .iter()
                    .filter(|a: &&NamedAction| a.monoid == name)
                    .any(|a| a.action.size() == n && plain.find_iso(&as_plain(&a.action), &class).is_some());
                if !known {
                    actions.push(NamedAction { name: format!("{name}.transitive{n}"), monoid: name.into(), action });
                }
            }
        }
    }
    actions.push(NamedAction { name: "V4.cosets2".into(), monoid: "V4".into(), action: klein_on_cosets() });
    Corpus { monoids, actions }
}

fn as_plain(action: &ActionTable) -> super::mset::MSet {
    super::mset::MSet::from_action(action, vec![0; action.size()])
}

/// Prefers the familiar tables for the named groups over their canonical relabelling.
fn canonical_presentation(table: MonoidTable) -> MonoidTable {
    [MonoidTable::cyclic(2), MonoidTable::idem2(), MonoidTable::cyclic(3)]
        .into_iter()
        .find(|t| t.is_isomorphic(&table))
        .unwrap_or(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_contents() {
        let c = corpus();
        let names: Vec<&str> = c.monoids.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names.len(), 11);
        for n in ["Z1", "Z2", "Idem2", "Z3", "V4"] {
            assert!(names.contains(&n), "{n} missing from {names:?}");
        }
        assert_eq!(c.monoids.iter().filter(|m| m.table.order() == 2).count(), 2);
        assert!(c.monoids.iter().any(|m| !m.table.is_group()));
    }

    #[test]
    fn every_entry_is_lawful() {
        let c = corpus();
        assert!(c.monoids.iter().all(|m| m.table.check().is_pass()));
        assert!(c.actions.iter().all(|a| a.action.check().is_pass()));
    }

    #[test]
    fn transitive_actions_of_small_groups() {
        let c = corpus();
        // Z2 has orbits of size 1 and 2, Z3 of size 1 and 3; all already covered.
        assert!(c.actions_of("Z2").all(|a| !a.name.contains("transitive")));
        let z3_transitive = c.actions_of("Z3").filter(|a| a.action.is_transitive()).count();
        assert_eq!(z3_transitive, 2);
    }
}
