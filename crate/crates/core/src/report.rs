//! Assertion lists and verdicts shared by the verification pipelines.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One checked step: what was expected and what was computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Assertion {
    /// Passes when the two sides serialize to the same JSON.
    pub fn equal(name: impl Into<String>, expected: impl Serialize, computed: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).expect("serializable");
        let computed = serde_json::to_value(computed).expect("serializable");
        let pass = expected == computed;
        Assertion { name: name.into(), expected, computed, pass }
    }

    pub fn holds(name: impl Into<String>, computed: bool) -> Self {
        Self::equal(name, true, computed)
    }
}

/// Ordered list of assertions; the verdict passes iff all of them do.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Assertions(pub Vec<Assertion>);

impl Assertions {
    pub fn push(&mut self, a: Assertion) -> bool {
        let pass = a.pass;
        self.0.push(a);
        pass
    }

    pub fn verdict(&self) -> Verdict {
        if self.0.iter().all(|a| a.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.0.iter().filter(|a| !a.pass).map(|a| a.name.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Assertion> {
        self.0.iter()
    }
}
