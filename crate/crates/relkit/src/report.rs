use serde::Serialize;

/// A counterexample attached to the law it refutes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub law: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub holds: bool,
}

/// Outcome of a law check: per-law verdicts, witnesses for every failure, and
/// free-form observations that are not verdicts.
///
/// A law can only be marked failing through [`Report::fail`], which also
/// stores a witness, so `verdict()` is true exactly when there are no witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    laws: Vec<LawResult>,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, law: &str) -> &mut LawResult {
        if let Some(i) = self.laws.iter().position(|l| l.law == law) {
            &mut self.laws[i]
        } else {
            self.laws.push(LawResult {
                law: law.to_string(),
                holds: true,
            });
            self.laws.last_mut().unwrap()
        }
    }

    /// Registers `law` as checked. It stays passing unless a failure is recorded.
    pub fn pass(&mut self, law: &str) {
        self.entry(law);
    }

    pub fn fail(&mut self, law: &str, detail: impl Into<String>) {
        self.entry(law).holds = false;
        self.witnesses.push(Witness {
            law: law.to_string(),
            detail: detail.into(),
        });
    }

    /// `pass` or `fail` depending on `ok`; the detail is only built on failure.
    pub fn check(&mut self, law: &str, ok: bool, detail: impl FnOnce() -> String) -> bool {
        if ok {
            self.pass(law);
        } else {
            self.fail(law, detail());
        }
        ok
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn verdict(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn holds(&self, law: &str) -> Option<bool> {
        self.laws.iter().find(|l| l.law == law).map(|l| l.holds)
    }

    pub fn laws(&self) -> &[LawResult] {
        &self.laws
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn witnesses_for<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Witness> + 'a {
        self.witnesses.iter().filter(move |w| w.law == law)
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Comma-separated names of failing laws, or `"none"`.
    pub fn failed_laws(&self) -> String {
        let failed: Vec<&str> = self
            .laws
            .iter()
            .filter(|l| !l.holds)
            .map(|l| l.law.as_str())
            .collect();
        if failed.is_empty() {
            "none".to_string()
        } else {
            failed.join(", ")
        }
    }

    pub fn merge(&mut self, other: Report) {
        for l in other.laws {
            let holds = l.holds;
            let e = self.entry(&l.law);
            e.holds &= holds;
        }
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
    }
}
