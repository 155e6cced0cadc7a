use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// A concrete location where a check went one way or the other.
///
/// For failures `lhs`/`rhs` hold the two unequal composites as value arrays.
/// For passes that construct something (an inverse, a splitting) `lhs` holds it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub law: String,
    pub at: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<u32>>,
}

impl Witness {
    pub fn new(law: impl Into<String>, at: impl Into<String>) -> Self {
        Witness { law: law.into(), at: at.into(), lhs: None, rhs: None }
    }

    pub fn unequal(law: impl Into<String>, at: impl Into<String>, lhs: Vec<u32>, rhs: Vec<u32>) -> Self {
        Witness { law: law.into(), at: at.into(), lhs: Some(lhs), rhs: Some(rhs) }
    }

    pub fn with_data(mut self, data: Vec<u32>) -> Self {
        self.lhs = Some(data);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { outcome: Outcome::Pass, witness: None }
    }

    pub fn pass_with(witness: Witness) -> Self {
        Verdict { outcome: Outcome::Pass, witness: Some(witness) }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict { outcome: Outcome::Fail, witness: Some(witness) }
    }

    pub fn inconclusive(witness: Witness) -> Self {
        Verdict { outcome: Outcome::Inconclusive, witness: Some(witness) }
    }

    pub fn check(ok: bool, witness: impl FnOnce() -> Witness) -> Self {
        if ok {
            Verdict::pass()
        } else {
            Verdict::fail(witness())
        }
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn is_inconclusive(&self) -> bool {
        self.outcome == Outcome::Inconclusive
    }

    /// Keeps the first non-passing verdict; `next` only runs after a pass.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_pass() {
            next()
        } else {
            self
        }
    }

    /// Fallible variant of [`Verdict::and_then`].
    pub fn and_then_try<E>(self, next: impl FnOnce() -> Result<Verdict, E>) -> Result<Verdict, E> {
        if self.is_pass() {
            next()
        } else {
            Ok(self)
        }
    }

    /// Combines verdicts in order: the first failure wins, otherwise the first inconclusive.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut pending = None;
        for v in verdicts {
            match v.outcome {
                Outcome::Fail => return v,
                Outcome::Inconclusive if pending.is_none() => pending = Some(v),
                _ => {}
            }
        }
        pending.unwrap_or_else(Verdict::pass)
    }

    /// Verdict for a claimed equivalence `left ⟺ right` between two independent decisions.
    pub fn agreement(law: &str, at: &str, left: Verdict, right: Verdict) -> Verdict {
        if left.is_inconclusive() || right.is_inconclusive() {
            let blocking = if left.is_inconclusive() { left } else { right };
            let mut w = blocking.witness.unwrap_or_else(|| Witness::new(law, at));
            w.law = format!("{law}: {}", w.law);
            return Verdict::inconclusive(w);
        }
        let code = |v: &Verdict| u32::from(v.is_pass());
        Verdict::check(left.outcome == right.outcome, || {
            Witness::unequal(law, at, vec![code(&left)], vec![code(&right)])
        })
    }
    /// Verdict for `premise ⟹ conclusion`; vacuous when the premise fails.
    pub fn implies(law: &str, premise: &Verdict, conclusion: &Verdict) -> Verdict {
        match (premise.outcome, conclusion.outcome) {
            (Outcome::Fail, _) | (Outcome::Pass, Outcome::Pass) => Verdict::pass(),
            (Outcome::Inconclusive, _) => Verdict::inconclusive(Witness::new(law, "premise undecided")),
            (Outcome::Pass, Outcome::Inconclusive) => Verdict::inconclusive(Witness::new(law, "conclusion undecided")),
            (Outcome::Pass, Outcome::Fail) => {
                let mut w = conclusion.witness.clone().unwrap_or_else(|| Witness::new(law, ""));
                w.law = format!("{law}: {}", w.law);
                Verdict::fail(w)
            }
        }
    }
}

/// Malformed input, as opposed to a law that fails on well-formed input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructuralError {
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("ill-typed morphism {what}: expected {expected}")]
    IllTyped { what: String, expected: String },
    #[error("missing component at {0}")]
    MissingComponent(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("object of size {needed} exceeds budget {budget}")]
    OutOfBudget { needed: usize, budget: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type CheckResult = Result<Verdict, StructuralError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_prefers_failures_over_inconclusive() {
        let inc = Verdict::inconclusive(Witness::new("budget", "x"));
        let fail = Verdict::fail(Witness::new("law", "y"));
        assert_eq!(Verdict::all([Verdict::pass(), inc.clone(), fail.clone()]), fail);
        assert_eq!(Verdict::all([inc.clone(), Verdict::pass()]), inc);
        assert!(Verdict::all([]).is_pass());
    }

    #[test]
    fn agreement_compares_outcomes() {
        let f = || Verdict::fail(Witness::new("a", "b"));
        assert!(Verdict::agreement("iff", "here", f(), f()).is_pass());
        assert!(Verdict::agreement("iff", "here", Verdict::pass(), f()).is_fail());
    }

    #[test]
    fn implication_is_vacuous_on_failed_premise() {
        let f = Verdict::fail(Witness::new("a", "b"));
        assert!(Verdict::implies("⟹", &f, &f).is_pass());
        assert!(Verdict::implies("⟹", &Verdict::pass(), &f).is_fail());
        assert!(Verdict::implies("⟹", &Verdict::pass(), &Verdict::pass()).is_pass());
    }

    #[test]
    fn serializes_lowercase_outcomes() {
        let json = serde_json::to_string(&Verdict::pass()).unwrap();
        assert_eq!(json, r#"{"outcome":"pass"}"#);
    }
}
